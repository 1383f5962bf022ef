"""Optimal approximate interconversion of pure states by invariant unitaries.

The best achievable overlap |<phi| V |psi>| over all unitaries V commuting
with the representation equals the sum over irreducible sectors of the
Uhlmann fidelities of the two reductions,

    max_V |<phi|V|psi>|  =  sum_mu Fid(F_psi_mu, F_phi_mu),
    Fid(A, B)            =  || sqrt(A) sqrt(B) ||_1 ,

and the maximizer is constructed explicitly: per sector, the multiplicity
space unitary is read off the singular value decomposition of the cross
matrix between the two sector coefficient matrices (which simultaneously
makes every sector overlap real nonnegative, i.e. aligns all sector phases).

Two cheaper lower bounds on the optimum are provided, one from the trace
distance of the reductions and one from the distance of the characteristic
functions (global and per-component variants).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, PureStateRequiredError
from .linalg import assert_psd, psd_sqrt, scaled_tol, trace_norm
from .reps import IrrepDecomposition
from .states import CharFunction, QuantumState, charfunc, convolve

#: Sectors with less weight than this in both states are left out of the
#: characteristic-function bounds.
_SECTOR_WEIGHT_CUTOFF = 1e-12


@dataclass(eq=False)
class OverlapReport:
    """Optimal overlap, its witness, and the cheaper lower bounds."""

    optimal: float
    per_mu_fidelity: dict[int, float]
    witness: np.ndarray
    bound_trace: float
    bound_charfunc_global: float
    bound_charfunc_per_mu: float


def fidelity(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> float:
    """Uhlmann fidelity of two PSD matrices: trace norm of sqrt(a) sqrt(b)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError("fidelity requires equally sized matrices")
    if tol is None:
        tol = scaled_tol(a, b, base=1e-8)
    assert_psd(a, tol, what="fidelity argument")
    assert_psd(b, tol, what="fidelity argument")
    return trace_norm(psd_sqrt(a, tol) @ psd_sqrt(b, tol))


def _sector_data(psi: QuantumState, phi: QuantumState, dec: IrrepDecomposition):
    if not (psi.is_pure and phi.is_pure):
        raise PureStateRequiredError("approximate interconversion is defined for pure states")
    if psi.dim != phi.dim or psi.dim != dec.rep.dim:
        raise DimensionMismatchError("states and decomposition must share one dimension")
    return dec.vector_sectors(psi.vec), dec.vector_sectors(phi.vec)


def max_overlap(psi1: QuantumState, psi2: QuantumState, dec: IrrepDecomposition) -> OverlapReport:
    """Best overlap achievable by an invariant unitary, with its achiever.

    Per sector, the overlap contributed by a multiplicity rotation Q is
    tr(B^dag A Q); choosing Q as the unitary polar-like factor from the SVD of
    B^dag A makes that trace the trace norm ||B^dag A||_1, which equals the
    Uhlmann fidelity of the two sector reductions and is real nonnegative,
    so no extra sector phases are needed.
    """
    sect1, sect2 = _sector_data(psi1, psi2, dec)
    fidelities: dict[int, float] = {}
    mult_blocks = []
    for blk, a, b in zip(dec.blocks, sect1, sect2):
        m = b.conj().T @ a
        u, s, vh = np.linalg.svd(m)
        q = vh.conj().T @ u.conj().T
        mult_blocks.append(q.T)
        fidelities[blk.label] = fidelity(a @ a.conj().T, b @ b.conj().T)
    v = dec.invariant_unitary(mult_blocks)
    optimal = float(sum(fidelities.values()))
    bound_global, bound_per_mu = bound_from_charfunc(psi1, psi2, dec)
    return OverlapReport(
        optimal=optimal,
        per_mu_fidelity=fidelities,
        witness=v,
        bound_trace=bound_from_trace_distance(psi1, psi2, dec),
        bound_charfunc_global=bound_global,
        bound_charfunc_per_mu=bound_per_mu,
    )


def bound_from_trace_distance(
    psi1: QuantumState, psi2: QuantumState, dec: IrrepDecomposition
) -> float:
    """Lower bound 1 - (1/2) sum_mu ||F1_mu - F2_mu||_1 on the optimal overlap."""
    sect1, sect2 = _sector_data(psi1, psi2, dec)
    total = sum(
        trace_norm(a @ a.conj().T - b @ b.conj().T) for a, b in zip(sect1, sect2)
    )
    return 1.0 - 0.5 * float(total)


def irrep_component(f: CharFunction, dec: IrrepDecomposition, index: int) -> CharFunction:
    """Component of a group function living on one irreducible block.

    chi_mu = d_mu * (phi_mu conv chi) with phi_mu the block's character; the
    components of a state's characteristic function sum back to it and
    vanish on every block the state does not occupy.
    """
    blk = dec.blocks[index]
    character = CharFunction(dec.rep.group, blk.character_per_element())
    out = convolve(character, f)
    out.values = blk.dim * out.values
    return out


def bound_from_charfunc(
    psi1: QuantumState, psi2: QuantumState, dec: IrrepDecomposition
) -> tuple[float, float]:
    """Characteristic-function lower bounds on the optimal overlap.

    Returns (global, per_component):

      global         1 - (1/2) (sum_mu d_mu^2) avg_g |chi1(g) - chi2(g)|
      per_component  1 - (1/2) sum_mu d_mu^2 avg_g |chi1_mu(g) - chi2_mu(g)|

    The sums run over blocks where either state has nonzero weight; adding
    the union's extra blocks only subtracts more, so the bound stays valid.
    """
    sect1, sect2 = _sector_data(psi1, psi2, dec)
    chi1 = charfunc(psi1, dec.rep)
    chi2 = charfunc(psi2, dec.rep)
    active = [
        i
        for i, (a, b) in enumerate(zip(sect1, sect2))
        if np.linalg.norm(a) ** 2 > _SECTOR_WEIGHT_CUTOFF
        or np.linalg.norm(b) ** 2 > _SECTOR_WEIGHT_CUTOFF
    ]
    d2 = sum(dec.blocks[i].dim ** 2 for i in active)
    avg = float(np.mean(np.abs(chi1.values - chi2.values)))
    bound_global = 1.0 - 0.5 * d2 * avg
    per_total = 0.0
    for i in active:
        c1 = irrep_component(chi1, dec, i)
        c2 = irrep_component(chi2, dec, i)
        per_total += dec.blocks[i].dim ** 2 * float(np.mean(np.abs(c1.values - c2.values)))
    return bound_global, 1.0 - 0.5 * per_total


def trace_distance_fidelity_check(a: np.ndarray, b: np.ndarray) -> bool:
    """Whether ||A - B||_1 >= tr A + tr B - 2 Fid(A, B) holds (it always does).

    Kept as an executable sanity check: the characteristic-function and
    trace-distance bounds above lean on this inequality.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    tol = scaled_tol(a, b, base=1e-8)
    assert_psd(a, tol, what="inequality argument")
    assert_psd(b, tol, what="inequality argument")
    lhs = trace_norm(a - b)
    rhs = float(np.trace(a).real + np.trace(b).real) - 2.0 * fidelity(a, b, tol)
    return lhs >= rhs - 10 * tol

"""Deciding when two pure states are interconvertible by symmetric dynamics.

Two notions are implemented, both with explicit witnesses:

* unitary equivalence under the group: some unitary commuting with the whole
  representation maps one state to the other.  Holds iff the two reductions
  onto irreps coincide, and the witness is assembled sector by sector from
  the multiplicity-space alignment of the two states.
* full equivalence under symmetric channels: holds iff the characteristic
  functions agree up to a one-dimensional representation, with the caveat
  that for finite groups the "only if" direction is proven only when both
  characteristic functions vanish nowhere; outside that regime the verdict
  is Inconclusive rather than a guess.

Mixed states are rejected by both deciders: reductions and characteristic
functions do not determine the equivalence class of a mixed state (a pure
and a mixed state can share the same characteristic function yet lie in
different classes), so answering would be wrong, not just unproven.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotInvariantIsometryError,
    PureStateRequiredError,
    ValidationError,
)
from .linalg import assert_psd, frob, polar_unitary, scaled_tol, trace_norm
from .reps import IrrepDecomposition, UnitaryRep, decompose, one_dim_reps, regular_rep
from .states import QuantumState, WeightState, charfunc

#: Per-element absolute tolerance for characteristic-function equality.
CHI_MATCH_TOL = 1e-8
#: Elements where |chi| falls below this are treated as vanishing.
CHI_ZERO_THRESHOLD = 1e-6


class EquivalenceStatus(enum.Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    INCONCLUSIVE = "inconclusive"


@dataclass(eq=False)
class EquivalenceVerdict:
    """Outcome of an equivalence decision.

    witness       unitary commuting with the representation (unitary case).
    one_dim_rep   per-element phase vector omega with chi_phi = omega * chi_psi
                  (full equivalence case).
    certificate   group element where the characteristic functions differ in
                  modulus, which no unimodular factor can repair.
    """

    status: EquivalenceStatus
    witness: np.ndarray | None = None
    one_dim_rep: np.ndarray | None = None
    certificate: int | None = None

    def __bool__(self) -> bool:
        return self.status is EquivalenceStatus.EQUIVALENT


def _require_pure(*states: QuantumState) -> None:
    for s in states:
        if not s.is_pure:
            raise PureStateRequiredError(
                "equivalence deciders accept pure states only: reductions and "
                "characteristic functions do not determine mixed-state classes"
            )


def gram(states: list[QuantumState]) -> np.ndarray:
    """Gram matrix X[i,j] = <psi_i|psi_j> of a list of pure states."""
    _require_pure(*states)
    dims = {s.dim for s in states}
    if len(dims) > 1:
        raise DimensionMismatchError("all states in a Gram matrix must share a dimension")
    vecs = np.array([s.vec for s in states])
    x = vecs.conj() @ vecs.T
    assert_psd(x, scaled_tol(x), what="Gram matrix")
    return x


def unitary_set_interconversion(
    a: list[QuantumState], b: list[QuantumState], tol: float = 1e-8
) -> np.ndarray | None:
    """A unitary V with V psi_i = phi_i for all i, or None.

    Such a V exists iff the two Gram matrices agree.  Construction: factor the
    common Gram matrix, map the orthonormalized column spans onto each other,
    and extend arbitrarily on the orthogonal complements.
    """
    if len(a) != len(b):
        raise DimensionMismatchError("both sets must contain the same number of states")
    xa = gram(a)
    xb = gram(b)
    if np.max(np.abs(xa - xb)) > tol:
        return None
    va = np.array([s.vec for s in a]).T  # d x n, columns psi_i
    vb = np.array([s.vec for s in b]).T
    dim = va.shape[0]
    vals, vecs = np.linalg.eigh(xa)
    keep = vals > max(tol, 1e-12) * max(vals[-1], 1.0)
    m = vecs[:, keep]
    lam = vals[keep]
    ea = va @ (m / np.sqrt(lam))  # orthonormal basis of span(a)
    eb = vb @ (m / np.sqrt(lam))
    v = eb @ ea.conj().T + _complement_basis(eb) @ _complement_basis(ea).conj().T
    v = polar_unitary(v)
    worst = max(np.linalg.norm(v @ va[:, i] - vb[:, i]) for i in range(va.shape[1]))
    if worst > max(100 * tol, 1e-7) * max(1.0, np.sqrt(dim)):
        raise ValidationError(
            f"interconversion witness failed its mapping bound: residual {worst:.3e}"
        )
    return v


def _complement_basis(e: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the columns of e.

    e must have orthonormal columns; the trailing left singular vectors of
    the full SVD then span the complement exactly.
    """
    d, r = e.shape
    if r >= d:
        return np.zeros((d, 0), dtype=complex)
    u, _, _ = np.linalg.svd(e, full_matrices=True)
    return u[:, r:]


def _solve_multiplicity_unitary(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unitary Q with A Q = B, given A A^dag = B B^dag.

    Singular-value alignment: from the SVD of the cross matrix B^dag A the
    unitary Q = V U^dag maximizes Re tr(B^dag A Q); with equal reductions the
    maximum saturates the Cauchy-Schwarz bound, which forces A Q = B.  Zero
    singular values leave Q free on the kernel and the SVD's completion is
    kept.
    """
    u, _, vh = np.linalg.svd(b.conj().T @ a)
    return vh.conj().T @ u.conj().T


def decide_unitary_g_equivalence(
    psi: QuantumState,
    phi: QuantumState,
    dec: IrrepDecomposition,
    tol: float = 1e-8,
) -> EquivalenceVerdict:
    """Decide whether an invariant unitary maps psi to phi, and build one.

    Equivalent iff every sector satisfies ||F_psi_mu - F_phi_mu||_1 <= tol.
    On success the witness acts as the identity across irrep rows and aligns
    the two states' multiplicity-space coefficient matrices sector by sector;
    its global phase is fixed by making the largest component of V psi real
    positive relative to phi.
    """
    _require_pure(psi, phi)
    if psi.dim != phi.dim or psi.dim != dec.rep.dim:
        raise DimensionMismatchError("states and decomposition must share one dimension")
    sect_psi = dec.vector_sectors(psi.vec)
    sect_phi = dec.vector_sectors(phi.vec)
    equal = all(
        trace_norm(a @ a.conj().T - b @ b.conj().T) <= tol
        for a, b in zip(sect_psi, sect_phi)
    )
    if not equal:
        cert = _modulus_certificate(
            charfunc(psi, dec.rep).values, charfunc(phi, dec.rep).values, tol
        )
        return EquivalenceVerdict(EquivalenceStatus.NOT_EQUIVALENT, certificate=cert)
    mult_blocks = [
        _solve_multiplicity_unitary(a, b).T for a, b in zip(sect_psi, sect_phi)
    ]
    v = dec.invariant_unitary(mult_blocks)
    mapped = v @ psi.vec
    j = int(np.argmax(np.abs(phi.vec)))
    ratio = phi.vec[j] / mapped[j]
    v = v * (ratio / abs(ratio))
    return EquivalenceVerdict(EquivalenceStatus.EQUIVALENT, witness=v)


def _modulus_certificate(chi1: np.ndarray, chi2: np.ndarray, tol: float) -> int | None:
    gap = np.abs(np.abs(chi1) - np.abs(chi2))
    g = int(np.argmax(gap))
    return g if gap[g] > tol else None


def _chi_matches(target: np.ndarray, base: np.ndarray, omega: np.ndarray) -> bool:
    big = np.abs(base) > CHI_ZERO_THRESHOLD
    if np.any(np.abs(target[big] - omega[big] * base[big]) > CHI_MATCH_TOL):
        return False
    return not np.any(np.abs(target[~big]) > CHI_ZERO_THRESHOLD)


def decide_g_equivalence(
    psi: QuantumState,
    phi: QuantumState,
    r: UnitaryRep,
    dec_regular: IrrepDecomposition | None = None,
) -> EquivalenceVerdict:
    """Decide reversible interconvertibility under symmetric channels.

    Scans every one-dimensional representation omega of the group for
    chi_phi(g) = omega(g) chi_psi(g).  A match proves equivalence.  If no
    omega matches and both characteristic functions vanish nowhere, the
    states are provably inequivalent; if either vanishes somewhere, the
    inequivalence argument does not apply and the verdict is Inconclusive.
    """
    _require_pure(psi, phi)
    chi_psi = charfunc(psi, r).values
    chi_phi = charfunc(phi, r).values
    if dec_regular is None:
        dec_regular = decompose(regular_rep(r.group), seed=0)
    omegas = one_dim_reps(r.group, dec_regular)
    for om in omegas:
        if _chi_matches(chi_phi, chi_psi, om):
            return EquivalenceVerdict(EquivalenceStatus.EQUIVALENT, one_dim_rep=om)
    cert = _modulus_certificate(chi_psi, chi_phi, CHI_MATCH_TOL)
    nonvanishing = (
        np.min(np.abs(chi_psi)) > CHI_ZERO_THRESHOLD
        and np.min(np.abs(chi_phi)) > CHI_ZERO_THRESHOLD
    )
    if nonvanishing:
        return EquivalenceVerdict(EquivalenceStatus.NOT_EQUIVALENT, certificate=cert)
    return EquivalenceVerdict(EquivalenceStatus.INCONCLUSIVE, certificate=cert)


def u1_shift_equivalence(
    w_psi: WeightState, w_phi: WeightState, tol: float = 1e-9
) -> int | None:
    """Integer Delta with p_psi(n) = p_phi(n + Delta) for all n, or None.

    Weight distributions that are rigid shifts of each other are exactly the
    phase-symmetry-equivalent pure states of the weight model; the matching
    one-dimensional representation is the pure phase of weight Delta.
    """
    supp_psi = sorted(w_psi.weights)
    supp_phi = sorted(w_phi.weights)
    if len(supp_psi) != len(supp_phi):
        return None
    delta = supp_phi[0] - supp_psi[0]
    for n, p in w_psi.weights.items():
        if abs(w_phi.weights.get(n + delta, 0.0) - p) > tol:
            return None
    return delta


def covariant_map_from_plain_map(e, r: UnitaryRep):
    """Symmetrize an arbitrary endomorphic channel by group averaging.

    Produces (1/|G|) sum_g U(g)^dag o E o U(g), always covariant.  If E maps
    the whole orbit of rho onto the orbit of sigma pointwise, the average
    still maps rho to sigma, so nothing is lost for orbit-to-orbit maps.
    """
    from .channels import twirl_channel

    return twirl_channel(e, r)


def extend_isometry_to_ginv_unitary(
    w: np.ndarray,
    proj: np.ndarray,
    r: UnitaryRep,
    dec: IrrepDecomposition | None = None,
    tol: float = 1e-8,
) -> np.ndarray:
    """Complete an invariant partial isometry to an invariant unitary.

    Requires proj to be a projector with W isometric on its support
    (proj W^dag W proj = proj) and W proj commuting with the whole
    representation.  Both the projector and the partial isometry are then
    block-diagonal over the isotypic sectors, acting only on multiplicity
    spaces; each multiplicity-space piece is completed to a unitary there,
    which assembles into an invariant unitary V with V proj = W proj.
    """
    w = np.asarray(w, dtype=complex)
    proj = np.asarray(proj, dtype=complex)
    d = r.dim
    if w.shape != (d, d) or proj.shape != (d, d):
        raise DimensionMismatchError("isometry and projector must be d x d for the rep")
    wp = w @ proj
    if frob(proj @ w.conj().T @ wp - proj) > max(tol, scaled_tol(proj)):
        raise NotInvariantIsometryError(
            "precondition violated: proj W^dag W proj = proj (W is not isometric on the support)"
        )
    worst = max(frob(wp @ r.mats[g] - r.mats[g] @ wp) for g in r.group.elements())
    if worst > max(tol, scaled_tol(wp)):
        raise NotInvariantIsometryError(
            f"precondition violated: [W proj, U(g)] = 0 fails with residual {worst:.3e}"
        )
    if dec is None:
        dec = decompose(r, seed=0)
    pj = dec.basis @ proj @ dec.basis.conj().T
    xj = dec.basis @ wp @ dec.basis.conj().T
    mult_blocks = []
    for i, blk in enumerate(dec.blocks):
        sl = dec.sector_slice(i)
        p_mu = _multiplicity_factor(pj[sl, sl], blk.dim, blk.mult)
        t_mu = _multiplicity_factor(xj[sl, sl], blk.dim, blk.mult)
        u, _, vh = np.linalg.svd(t_mu)
        full = u @ vh
        # On the kernel of p_mu the completion is free; keep the SVD's choice.
        if frob(full @ p_mu - t_mu) > 1e-6:
            raise NotInvariantIsometryError(
                f"sector {blk.label}: completion failed; input is not an invariant isometry"
            )
        mult_blocks.append(full)
    v = dec.invariant_unitary(mult_blocks)
    return v


def _multiplicity_factor(block: np.ndarray, d_mu: int, n_mu: int) -> np.ndarray:
    """Extract M from a sector operator of the form I_{d_mu} kron M."""
    sector = block.reshape(d_mu, n_mu, d_mu, n_mu)
    return np.einsum("mnmk->nk", sector) / d_mu

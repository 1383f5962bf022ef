"""Quantum channels in Kraus form, covariance checks, twirls, and embeddings.

Covariance of a channel with respect to a group action is decided on the
Choi matrix: conjugating the channel by the group action permutes nothing if
and only if the Choi matrix is fixed by the corresponding rotations, which is
an exact finite check (no state sampling).  Vectorization is row-major
throughout: vec(A B C) = (A kron C^T) vec(B).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .groups import SubgroupRef, subgroup
from .linalg import frob, scaled_tol
from .reps import UnitaryRep, direct_sum_rep
from .states import QuantumState


class QuantumChannel:
    """Completely positive trace-preserving map, stored as Kraus operators.

    ``kraus`` has shape (k, d_out, d_in).  Trace preservation
    sum_k K^dag K = I is verified on construction; complete positivity is
    automatic from the Kraus form.
    """

    __slots__ = ("kraus", "d_in", "d_out")

    def __init__(self, kraus, *, tol: float | None = None):
        kraus = np.asarray(kraus, dtype=complex)
        if kraus.ndim != 3:
            raise DimensionMismatchError("kraus must have shape (k, d_out, d_in)")
        self.kraus = kraus
        self.d_out = int(kraus.shape[1])
        self.d_in = int(kraus.shape[2])
        if tol is None:
            tol = scaled_tol(kraus, base=1e-8)
        total = np.einsum("kij,kil->jl", kraus.conj(), kraus)
        if frob(total - np.eye(self.d_in)) > tol:
            raise ValidationError(
                "trace preservation invariant violated: sum K^dag K != I "
                f"(residual {frob(total - np.eye(self.d_in)):.3e})"
            )
        self.kraus.setflags(write=False)

    @property
    def is_endomorphic(self) -> bool:
        return self.d_in == self.d_out

    def apply_to_density(self, rho: np.ndarray) -> np.ndarray:
        return np.einsum("kij,jl,kml->im", self.kraus, rho, self.kraus.conj())

    def choi(self) -> np.ndarray:
        """Unnormalized Choi matrix sum_k vec(K_k) vec(K_k)^dag (row-major vec)."""
        flat = self.kraus.reshape(self.kraus.shape[0], -1)
        return np.einsum("ki,kj->ij", flat, flat.conj())

    def __repr__(self):
        return f"QuantumChannel(d_in={self.d_in}, d_out={self.d_out}, kraus={self.kraus.shape[0]})"


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel(np.eye(dim, dtype=complex)[None, :, :])


def channel_from_unitary(u: np.ndarray) -> QuantumChannel:
    u = np.asarray(u, dtype=complex)
    return QuantumChannel(u[None, :, :])


def shift_channel(dim: int, shift: int) -> QuantumChannel:
    """Conjugation by the cyclic basis shift |n> -> |n + shift mod dim>."""
    perm = np.zeros((dim, dim), dtype=complex)
    perm[(np.arange(dim) + shift) % dim, np.arange(dim)] = 1.0
    return channel_from_unitary(perm)


def random_channel(dim: int, kraus_count: int, rng) -> QuantumChannel:
    """A Haar-flavoured random channel: Gaussian Kraus set, renormalized."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    ks = rng.normal(size=(kraus_count, dim, dim)) + 1j * rng.normal(size=(kraus_count, dim, dim))
    total = np.einsum("kij,kil->jl", ks.conj(), ks)
    vals, vecs = np.linalg.eigh(total)
    correction = (vecs / np.sqrt(vals)) @ vecs.conj().T
    return QuantumChannel(ks @ correction)


def apply(c: QuantumChannel, s: QuantumState) -> QuantumState:
    """Send a state through the channel; the output is kept as a density matrix."""
    if s.dim != c.d_in:
        raise DimensionMismatchError(
            f"state dimension {s.dim} does not match channel input {c.d_in}"
        )
    return QuantumState.mixed(c.apply_to_density(s.density()))


@dataclass(eq=False)
class CovarianceCheck:
    """Boolean verdict plus the worst Choi-level residual over the group."""

    covariant: bool
    residual: float

    def __bool__(self) -> bool:
        return self.covariant


def is_g_covariant(
    c: QuantumChannel, r_in: UnitaryRep, r_out: UnitaryRep, tol: float = 1e-8
) -> CovarianceCheck:
    """Choi-level covariance test of E against the in/out group actions.

    Measures max_g || Choi(U_out(g) o E o U_in(g)^dag) - Choi(E) ||_F; the
    channel is covariant iff the residual vanishes.
    """
    if c.d_in != r_in.dim or c.d_out != r_out.dim:
        raise DimensionMismatchError("channel dimensions must match the representations")
    j = c.choi()
    worst = 0.0
    for g in r_in.group.elements():
        m = np.kron(r_out.mats[g], r_in.mats[g].conj())
        worst = max(worst, frob(m @ j @ m.conj().T - j))
    return CovarianceCheck(covariant=bool(worst <= tol * max(1.0, frob(j))), residual=worst)


def twirl_channel(c: QuantumChannel, r: UnitaryRep) -> QuantumChannel:
    """Group average (1/|G|) sum_g U(g)^dag o E o U(g); always covariant.

    A channel that was already covariant is reproduced exactly (as a
    superoperator; the Kraus list is expanded but equivalent).
    """
    if not c.is_endomorphic:
        raise DimensionMismatchError(
            "twirl needs an endomorphic channel; embed the channel into the "
            "direct-sum space first"
        )
    if c.d_in != r.dim:
        raise DimensionMismatchError("channel and representation dimensions differ")
    n = r.group.order
    out = np.einsum("gji,kjl,glm->gkim", r.mats.conj(), c.kraus, r.mats) / np.sqrt(n)
    return QuantumChannel(out.reshape(n * c.kraus.shape[0], r.dim, r.dim))


def uniform_twirl_over_subgroup(r: UnitaryRep, k: SubgroupRef | object) -> QuantumChannel:
    """rho -> (1/|K|) sum_{k in K} U(k) rho U(k)^dag for a subgroup K.

    Covariant under the whole group whenever K is normal in it.
    """
    if not isinstance(k, SubgroupRef):
        k = subgroup(r.group, k)
    mats = r.mats[list(k.elements)] / np.sqrt(len(k))
    return QuantumChannel(mats)


def embed_channel(c: QuantumChannel, r_in: UnitaryRep, r_out: UnitaryRep) -> QuantumChannel:
    """Extend an in->out channel to an endomorphism of the direct-sum space.

    On the input sector the embedded channel acts as E (output placed in the
    out sector); everything fed into the out sector is dumped to the
    maximally mixed state of the whole sum space.  Preserves covariance: if E
    is covariant for (U_in, U_out), the embedding is covariant for
    U_in directsum U_out, which is asserted in that case.
    """
    if c.d_in != r_in.dim or c.d_out != r_out.dim:
        raise DimensionMismatchError("channel dimensions must match the representations")
    was_covariant = bool(is_g_covariant(c, r_in, r_out))
    d_in, d_out = c.d_in, c.d_out
    d = d_in + d_out
    inject = np.zeros((d, d_out), dtype=complex)
    inject[d_in:, :] = np.eye(d_out)
    restrict = np.zeros((d_in, d), dtype=complex)
    restrict[:, :d_in] = np.eye(d_in)
    kraus = [inject @ k @ restrict for k in c.kraus]
    # Junk branch: measure the out sector, emit the maximally mixed state.
    for j in range(d_out):
        bra = np.zeros((1, d), dtype=complex)
        bra[0, d_in + j] = 1.0
        for i in range(d):
            ket = np.zeros((d, 1), dtype=complex)
            ket[i, 0] = 1.0 / np.sqrt(d)
            kraus.append(ket @ bra)
    embedded = QuantumChannel(np.array(kraus))
    if was_covariant:
        combined = direct_sum_rep(r_in, r_out)
        check = is_g_covariant(embedded, combined, combined)
        if not check:
            raise ValidationError(
                f"embedding lost covariance (residual {check.residual:.3e}); "
                "this indicates an inconsistent input"
            )
    return embedded

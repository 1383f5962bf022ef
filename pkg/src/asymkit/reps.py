"""Unitary representations of finite groups and their irreducible decomposition.

The central object is :class:`IrrepDecomposition`: a unitary change of basis W
and an ordered list of irreducible blocks such that

    W U(g) W^dag  =  directsum_mu  U_mu(g) (x) I_{n_mu}      for every g,

with d_mu the block dimension and n_mu its multiplicity.  Within one block the
basis is ordered so that index m * n_mu + n means (irrep row m, copy n); all
sector bookkeeping in the package leans on that layout.

Block ordering is canonical - ascending d_mu, ties broken on the character
vector over the canonical conjugacy-class order - so decompositions of the
same representation are comparable across runs and seeds.  The irrep basis
inside a class is fixed only up to a simultaneous unitary conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    GroupMismatchError,
    NumericalDegeneracyError,
    ValidationError,
)
from .groups import GroupTable, same_group
from .linalg import (
    frob,
    haar_unitary,
    polar_unitary,
    random_complex,
    random_hermitian,
    scaled_tol,
)

_MAX_DECOMPOSE_RETRIES = 5

# Loose thresholds used while carving out candidate invariant subspaces; the
# final decomposition is always re-verified at the strict tolerance.
_CLUSTER_GAP = 1e-6
_CHARACTER_MATCH = 1e-6


class UnitaryRep:
    """Per-element unitary matrices forming a homomorphism of the group.

    Construction verifies mats[0] = I, unitarity of every matrix, and the
    homomorphism property mats[a] @ mats[b] = mats[a*b] for all pairs, each
    within a tolerance relative to the matrix norms.  Instances are immutable.
    """

    __slots__ = ("group", "dim", "mats")

    def __init__(self, group: GroupTable, mats, *, tol: float | None = None):
        mats = np.asarray(mats, dtype=complex)
        if mats.ndim != 3 or mats.shape[0] != group.order or mats.shape[1] != mats.shape[2]:
            raise DimensionMismatchError(
                "mats must have shape (|G|, d, d) matching the group order"
            )
        self.group = group
        self.dim = int(mats.shape[1])
        self.mats = mats
        if tol is None:
            tol = scaled_tol(mats)
        _validate_rep(group, mats, tol)
        self.mats.setflags(write=False)

    def matrix(self, g: int) -> np.ndarray:
        return self.mats[g]

    def character(self) -> np.ndarray:
        """Per-element trace vector tr U(g)."""
        return np.einsum("gii->g", self.mats)

    def __repr__(self):
        return f"UnitaryRep(order={self.group.order}, dim={self.dim})"


def _validate_rep(group: GroupTable, mats: np.ndarray, tol: float) -> None:
    n, d = mats.shape[0], mats.shape[1]
    eye = np.eye(d)
    if frob(mats[0] - eye) > tol:
        raise ValidationError("representation invariant violated: mats[0] must be the identity")
    gram = mats @ mats.conj().transpose(0, 2, 1)
    worst = max(frob(gram[g] - eye) for g in range(n))
    if worst > tol:
        raise ValidationError(
            f"unitarity invariant violated: max ||U U^dag - I|| = {worst:.3e} > {tol:.3e}"
        )
    # Homomorphism check, one batched row of products per element.
    for a in range(n):
        diff = mats[a] @ mats - mats[group.mul[a]]
        worst = np.linalg.norm(diff.reshape(n, -1), axis=1).max()
        if worst > tol:
            raise ValidationError(
                f"homomorphism invariant violated at element {a}: residual {worst:.3e} > {tol:.3e}"
            )


def trivial_rep(group: GroupTable) -> UnitaryRep:
    """The one-dimensional all-ones representation."""
    return UnitaryRep(group, np.ones((group.order, 1, 1), dtype=complex))


def regular_rep(group: GroupTable) -> UnitaryRep:
    """Left-regular representation: permutation matrix of left multiplication."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        mats[g, group.mul[g], np.arange(n)] = 1.0
    return UnitaryRep(group, mats)


def number_rep(group: GroupTable, weights) -> UnitaryRep:
    """Diagonal phase representation of a cyclic group Z_N.

    Basis state j carries weight w_j, so element g acts as the phase
    exp(2 pi i g w_j / N).  This is the finite sampling of a U(1) phase
    rotation generated by a number operator with spectrum ``weights``.
    """
    n = group.order
    w = np.asarray(list(weights), dtype=float)
    phases = np.exp(2j * np.pi * np.outer(np.arange(n), w) / n)
    mats = np.zeros((n, w.size, w.size), dtype=complex)
    step = np.arange(w.size)
    mats[:, step, step] = phases
    return UnitaryRep(group, mats)


def tensor_rep(a: UnitaryRep, b: UnitaryRep) -> UnitaryRep:
    """Collective action on a composite system: g -> a(g) kron b(g)."""
    if not same_group(a.group, b.group):
        raise GroupMismatchError("tensor_rep requires both factors over the same group")
    mats = np.einsum("gij,gkl->gikjl", a.mats, b.mats).reshape(
        a.group.order, a.dim * b.dim, a.dim * b.dim
    )
    return UnitaryRep(a.group, mats)


def direct_sum_rep(a: UnitaryRep, b: UnitaryRep) -> UnitaryRep:
    """Block-diagonal sum g -> a(g) directsum b(g)."""
    if not same_group(a.group, b.group):
        raise GroupMismatchError("direct_sum_rep requires both summands over the same group")
    n = a.group.order
    d = a.dim + b.dim
    mats = np.zeros((n, d, d), dtype=complex)
    mats[:, : a.dim, : a.dim] = a.mats
    mats[:, a.dim :, a.dim :] = b.mats
    return UnitaryRep(a.group, mats)


def twirl_operator(r: UnitaryRep, x: np.ndarray) -> np.ndarray:
    """Group average (1/|G|) sum_g U(g) x U(g)^dag.

    The result commutes with every U(g); averaging a Hermitian input yields a
    Hermitian output with the same trace.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (r.dim, r.dim):
        raise DimensionMismatchError(
            f"twirl_operator needs a {r.dim}x{r.dim} matrix, got {x.shape}"
        )
    return np.einsum("gij,jk,glk->il", r.mats, x, r.mats.conj()) / r.group.order


@dataclass(eq=False)
class IrrepBlock:
    """One inequivalent irreducible constituent of a decomposition.

    ``mats`` holds the reference copy's d_mu x d_mu unitaries (one per group
    element); all other copies in the sector were rotated to match it.
    ``character`` is the trace vector over conjugacy classes in canonical
    class order.
    """

    label: int
    dim: int
    mult: int
    mats: np.ndarray
    character: np.ndarray

    def character_per_element(self) -> np.ndarray:
        return np.einsum("gii->g", self.mats)


class IrrepDecomposition:
    """Basis change W plus the ordered irreducible blocks it exposes."""

    __slots__ = ("rep", "basis", "blocks", "offsets")

    def __init__(self, rep: UnitaryRep, basis: np.ndarray, blocks: list[IrrepBlock]):
        self.rep = rep
        self.basis = basis
        self.blocks = blocks
        offsets = []
        at = 0
        for blk in blocks:
            offsets.append(at)
            at += blk.dim * blk.mult
        if at != rep.dim:
            raise ValidationError(
                "decomposition invariant violated: sum of d_mu * n_mu must equal dim"
            )
        self.offsets = offsets

    def multiset(self) -> list[tuple[int, int]]:
        """The (dimension, multiplicity) pairs, in block order."""
        return [(b.dim, b.mult) for b in self.blocks]

    def sector_slice(self, index: int) -> slice:
        blk = self.blocks[index]
        start = self.offsets[index]
        return slice(start, start + blk.dim * blk.mult)

    def block_matrix(self, g: int) -> np.ndarray:
        """directsum_mu U_mu(g) kron I_{n_mu} in the decomposed basis."""
        out = np.zeros((self.rep.dim, self.rep.dim), dtype=complex)
        for i, blk in enumerate(self.blocks):
            sl = self.sector_slice(i)
            out[sl, sl] = np.kron(blk.mats[g], np.eye(blk.mult))
        return out

    def vector_sectors(self, vec: np.ndarray) -> list[np.ndarray]:
        """Coefficient matrix (d_mu x n_mu) of a vector in each sector."""
        x = self.basis @ np.asarray(vec, dtype=complex)
        out = []
        for i, blk in enumerate(self.blocks):
            out.append(x[self.sector_slice(i)].reshape(blk.dim, blk.mult))
        return out

    def invariant_unitary(self, mult_unitaries: list[np.ndarray]) -> np.ndarray:
        """Assemble directsum_mu I_{d_mu} kron V_mu back in the original basis.

        Every unitary commuting with the whole representation has this shape,
        with V_mu acting on the multiplicity space of block mu.
        """
        if len(mult_unitaries) != len(self.blocks):
            raise DimensionMismatchError("need one multiplicity-space unitary per block")
        out = np.zeros((self.rep.dim, self.rep.dim), dtype=complex)
        for i, blk in enumerate(self.blocks):
            v = np.asarray(mult_unitaries[i], dtype=complex)
            if v.shape != (blk.mult, blk.mult):
                raise DimensionMismatchError(
                    f"block {blk.label} needs a {blk.mult}x{blk.mult} unitary, got {v.shape}"
                )
            sl = self.sector_slice(i)
            out[sl, sl] = np.kron(np.eye(blk.dim), v)
        return self.basis.conj().T @ out @ self.basis

    def reconstruction_residual(self) -> float:
        """max_g || W U(g) W^dag - blocks(g) ||_F."""
        w = self.basis
        return max(
            frob(w @ self.rep.mats[g] @ w.conj().T - self.block_matrix(g))
            for g in self.rep.group.elements()
        )


class _Retry(Exception):
    """Internal: current random splitting ran into a degeneracy; reseed."""


def decompose(r: UnitaryRep, seed: int = 0, *, tol: float | None = None) -> IrrepDecomposition:
    """Decompose a unitary representation into irreducible blocks.

    Strategy: the group average of a random Hermitian matrix lies in the
    commutant, so for a generic draw each of its eigenspaces is a single
    irreducible invariant subspace.  Eigenspaces are extracted, the carried
    subrepresentations are grouped into equivalence classes by character,
    copies within a class are aligned to the first copy with Schur
    intertwiners (unitarized through their polar factor), and the blocks are
    sorted canonically.

    Deterministic for a fixed seed.  Eigenvalue collisions across
    inequivalent irreps are detected by the built-in verification and
    resolved by reseeding; five failures raise NumericalDegeneracyError.

    Parameters
    ----------
    r : UnitaryRep
        The representation to split.
    seed : int
        Seed for the random probes; the only source of randomness.
    tol : float, optional
        Acceptance tolerance for the final verification; defaults to the
        package-wide relative tolerance.
    """
    if tol is None:
        tol = max(scaled_tol(r.mats), 1e-10 * r.dim)
    last_error = "no attempt made"
    for attempt in range(_MAX_DECOMPOSE_RETRIES):
        rng = np.random.default_rng((int(seed), attempt))
        try:
            dec = _decompose_once(r, rng)
        except _Retry as exc:
            last_error = str(exc)
            continue
        residual = dec.reconstruction_residual()
        if residual > max(tol, 1e-8):
            last_error = f"reconstruction residual {residual:.3e}"
            continue
        return dec
    raise NumericalDegeneracyError(
        f"decompose failed after {_MAX_DECOMPOSE_RETRIES} reseeds: {last_error}"
    )


def _decompose_once(r: UnitaryRep, rng: np.random.Generator) -> IrrepDecomposition:
    d = r.dim
    group = r.group
    t = twirl_operator(r, random_hermitian(d, rng))
    evals, evecs = np.linalg.eigh(t)
    spread = max(1.0, float(evals[-1] - evals[0]))
    clusters = _cluster_indices(evals, _CLUSTER_GAP * spread)

    copies = []  # (basis Q, submats) for each candidate irreducible subspace
    for idx in clusters:
        q = evecs[:, idx]
        sub = np.einsum("ji,gjk,kl->gil", q.conj(), r.mats, q)
        k = len(idx)
        uni = max(frob(sub[g] @ sub[g].conj().T - np.eye(k)) for g in range(group.order))
        if uni > 1e-7:
            raise _Retry(f"eigenspace of size {k} is not invariant (residual {uni:.3e})")
        char = np.einsum("gii->g", sub)
        norm = float(np.mean(np.abs(char) ** 2))
        if abs(norm - 1.0) > 1e-6:
            raise _Retry(f"subspace carries character norm {norm:.6f}, not irreducible")
        copies.append((q, sub, char))

    # Group equivalent copies by their characters.
    classes: list[list[int]] = []
    for i, (_, _, char) in enumerate(copies):
        for cls in classes:
            ref_char = copies[cls[0]][2]
            if char.shape == ref_char.shape and np.max(np.abs(char - ref_char)) < _CHARACTER_MATCH:
                cls.append(i)
                break
        else:
            classes.append([i])

    class_order = sorted(range(len(classes)), key=lambda ci: _block_sort_key(group, copies[classes[ci][0]]))
    basis_cols = []
    blocks = []
    for label, ci in enumerate(class_order):
        members = classes[ci]
        q_ref, ref_mats, _ = copies[members[0]]
        d_mu = q_ref.shape[1]
        aligned = [q_ref]
        for i in members[1:]:
            aligned.append(_align_copy(r, ref_mats, copies[i], rng))
        n_mu = len(aligned)
        for m in range(d_mu):
            for q in aligned:
                basis_cols.append(q[:, m])
        char_by_class = np.array(
            [np.trace(ref_mats[rep_el]) for rep_el in group.class_representatives()]
        )
        blocks.append(
            IrrepBlock(label=label, dim=d_mu, mult=n_mu, mats=ref_mats, character=char_by_class)
        )

    w = np.array(basis_cols).conj()  # rows are conj of new basis vectors: W = B^dag
    return IrrepDecomposition(r, w, blocks)


def _cluster_indices(evals: np.ndarray, gap: float) -> list[list[int]]:
    clusters = [[0]]
    for i in range(1, evals.size):
        if evals[i] - evals[i - 1] > gap:
            clusters.append([i])
        else:
            clusters[-1].append(i)
    return clusters


def _block_sort_key(group: GroupTable, copy) -> tuple:
    _, mats, _ = copy
    char = [complex(np.trace(mats[rep_el])) for rep_el in group.class_representatives()]
    # Descending real part first, so the trivial block sorts ahead of its peers.
    return (mats.shape[1], tuple((-round(c.real, 9), round(c.imag, 9)) for c in char))


def _align_copy(r: UnitaryRep, ref_mats: np.ndarray, copy, rng: np.random.Generator) -> np.ndarray:
    """Rotate one equivalent copy so its subrepresentation equals the reference.

    The group average S = avg_g U_ref(g) X U_i(g)^dag of a random X intertwines
    the copy with the reference; by Schur's lemma S is a scalar multiple of a
    unitary, recovered stably as the polar factor.
    """
    q, sub, _ = copy
    d_mu = sub.shape[1]
    for _ in range(4):
        x = random_complex((d_mu, d_mu), rng)
        s = np.einsum("gij,jk,glk->il", ref_mats, x, sub.conj()) / r.group.order
        smin = np.linalg.svd(s, compute_uv=False)[-1]
        if smin > 1e-6:
            break
    else:
        raise _Retry("could not find a nonsingular intertwiner between equivalent copies")
    u = polar_unitary(s)
    aligned_q = q @ u.conj().T
    residual = max(
        frob(u @ sub[g] @ u.conj().T - ref_mats[g]) for g in r.group.elements()
    )
    if residual > 1e-8:
        raise _Retry(f"intertwiner alignment residual {residual:.3e}")
    return aligned_q


def one_dim_reps(group: GroupTable, dec: IrrepDecomposition | None = None) -> np.ndarray:
    """All one-dimensional representations, as unit-modulus vectors over G.

    Row k of the result is one homomorphism omega: G -> U(1) with omega(e)=1.
    Extracted from the regular representation, which contains every irrep;
    the list always includes the all-ones (trivial) row.
    """
    if dec is None:
        dec = decompose(regular_rep(group), seed=0)
    rows = [blk.mats[:, 0, 0] for blk in dec.blocks if blk.dim == 1]
    return np.array(rows)


def random_invariant_unitary(dec: IrrepDecomposition, rng) -> np.ndarray:
    """Sample a unitary commuting with the whole representation.

    Haar-random on each multiplicity space, identity across irrep rows: the
    generic element of the commutant's unitary group.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    vs = [haar_unitary(blk.mult, rng) for blk in dec.blocks]
    return dec.invariant_unitary(vs)

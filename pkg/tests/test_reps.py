"""Representation construction, twirling, and irreducible decomposition."""

import numpy as np
import pytest

import asymkit as ak
from asymkit.linalg import frob, random_hermitian


def irrep_dims_oracle(order: int, num_classes: int) -> list[int] | None:
    """Brute-force the irrep dimension multiset from |G| and the class count.

    Searches all nondecreasing k-tuples with sum of squares |G|; returns the
    multiset when it is unique, which it is for every group used in tests.
    """
    solutions = []

    def search(prefix, remaining, minimum):
        k = num_classes - len(prefix)
        if k == 0:
            if remaining == 0:
                solutions.append(list(prefix))
            return
        d = minimum
        while d * d * k <= remaining:
            search(prefix + [d], remaining - d * d, d)
            d += 1

    search([], order, 1)
    return solutions[0] if len(solutions) == 1 else None


def test_dimension_oracle_unique_for_test_groups(groups):
    for name in ("z2", "z3", "z6", "klein", "s3", "s4", "d4"):
        g = groups[name]
        assert irrep_dims_oracle(g.order, len(g.conjugacy_classes())) is not None


class TestRegularRep:
    def test_z2_matrices(self):
        r = ak.regular_rep(ak.make_cyclic(2))
        assert np.allclose(r.mats[0], np.eye(2))
        assert np.allclose(r.mats[1], np.array([[0, 1], [1, 0]]))

    def test_character_is_delta(self, regular_reps):
        for name, r in regular_reps.items():
            char = r.character()
            assert abs(char[0] - r.group.order) < 1e-12
            assert np.all(np.abs(char[1:]) < 1e-12)

    def test_s3_block_structure(self, decompositions):
        dec = decompositions["s3"]
        assert dec.multiset() == [(1, 1), (1, 1), (2, 2)]


class TestTensorAndSum:
    def test_trivial_tensor_preserves_character(self, groups, rng):
        s3 = groups["s3"]
        r = ak.regular_rep(s3)
        t = ak.tensor_rep(ak.trivial_rep(s3), r)
        assert np.allclose(t.character(), r.character())

    def test_character_multiplies(self, groups):
        g = groups["d4"]
        r = ak.regular_rep(g)
        t = ak.tensor_rep(r, r)
        assert np.allclose(t.character(), r.character() ** 2)

    def test_z3_weights_add(self, groups):
        z3 = groups["z3"]
        w1 = ak.number_rep(z3, [1])
        w2 = ak.number_rep(z3, [2])
        t = ak.tensor_rep(w1, w2)
        assert np.allclose(t.mats[:, 0, 0], 1.0)  # weight 1+2 = 0 mod 3

    def test_direct_sum_of_trivials(self, groups):
        s = ak.direct_sum_rep(ak.trivial_rep(groups["z2"]), ak.trivial_rep(groups["z2"]))
        assert s.dim == 2
        assert np.allclose(s.mats, np.eye(2))

    def test_direct_sum_weights(self, groups):
        z16 = groups["z16"]
        s = ak.direct_sum_rep(ak.number_rep(z16, [1]), ak.number_rep(z16, [2]))
        expected = np.exp(2j * np.pi * np.outer(np.arange(16), [1, 2]) / 16)
        assert np.allclose(np.diagonal(s.mats, axis1=1, axis2=2), expected)

    def test_doubling_doubles_multiplicities(self, regular_reps):
        r = regular_reps["s3"]
        doubled = ak.decompose(ak.direct_sum_rep(r, r), seed=3)
        base = ak.decompose(r, seed=3)
        assert sorted(doubled.multiset()) == sorted((d, 2 * n) for d, n in base.multiset())

    def test_group_mismatch(self, groups):
        with pytest.raises(ak.GroupMismatchError):
            ak.tensor_rep(ak.trivial_rep(groups["z2"]), ak.trivial_rep(groups["z3"]))


class TestTwirl:
    def test_identity_fixed(self, regular_reps):
        r = regular_reps["s3"]
        assert np.allclose(ak.twirl_operator(r, np.eye(6)), np.eye(6))

    def test_hermitian_trace_preserved(self, regular_reps, rng):
        r = regular_reps["d4"]
        h = random_hermitian(8, rng)
        t = ak.twirl_operator(r, h)
        assert frob(t - t.conj().T) < 1e-12
        assert abs(np.trace(t) - np.trace(h)) < 1e-10

    def test_commutes_with_rep(self, regular_reps, rng):
        r = regular_reps["s3"]
        t = ak.twirl_operator(r, random_hermitian(6, rng))
        worst = max(frob(t @ r.mats[g] - r.mats[g] @ t) for g in range(6))
        assert worst <= 1e-10

    def test_schur_on_irreducible_block(self, decompositions, rng):
        two_dim = next(b for b in decompositions["s3"].blocks if b.dim == 2)
        sub = ak.UnitaryRep(decompositions["s3"].rep.group, two_dim.mats)
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        t = ak.twirl_operator(sub, x)
        assert np.allclose(t, np.trace(x) / 2 * np.eye(2), atol=1e-10)

    def test_dimension_mismatch(self, regular_reps):
        with pytest.raises(ak.DimensionMismatchError):
            ak.twirl_operator(regular_reps["z2"], np.eye(3))


class TestDecompose:
    def test_z3_characters_are_cube_roots(self, decompositions):
        dec = decompositions["z3"]
        assert dec.multiset() == [(1, 1)] * 3
        key = lambda z: (round(z.real, 9), round(z.imag, 9))
        got = sorted((complex(b.mats[1, 0, 0]) for b in dec.blocks), key=key)
        expected = sorted(np.exp(2j * np.pi * np.arange(3) / 3), key=key)
        assert np.allclose(got, expected)

    def test_one_dim_rep_basis(self, groups):
        r = ak.number_rep(groups["z16"], [3])
        dec = ak.decompose(r, seed=0)
        assert dec.multiset() == [(1, 1)]
        assert np.allclose(np.abs(dec.basis), [[1.0]])

    def test_dft_oracle_z3(self, groups, decompositions):
        # Explicit discrete Fourier change of basis block-diagonalizes the
        # regular action of Z3; characters must match as multisets.
        omega = np.exp(2j * np.pi / 3)
        f = np.array([[omega ** (j * k) for j in range(3)] for k in range(3)]) / np.sqrt(3)
        r = ak.regular_rep(groups["z3"])
        oracle_chars = set()
        for g in range(3):
            diag = f @ r.mats[g] @ f.conj().T
            assert np.allclose(diag, np.diag(np.diagonal(diag)), atol=1e-12)
            oracle_chars.add(tuple(np.round(np.diagonal(diag), 9)))
        dec_chars = {
            tuple(np.round([b.mats[g, 0, 0] for g in range(3)], 9))
            for b in decompositions["z3"].blocks
        }
        assert dec_chars == oracle_chars

    def test_dims_match_oracle(self, groups, decompositions):
        for name in ("z2", "z3", "z6", "klein", "s3", "s4", "d4"):
            g = groups[name]
            dims = sorted(d for d, _ in decompositions[name].multiset())
            assert dims == irrep_dims_oracle(g.order, len(g.conjugacy_classes()))

    def test_regular_multiplicity_equals_dimension(self, decompositions):
        for name in ("s3", "s4", "d4", "z6"):
            for d, n in decompositions[name].multiset():
                assert d == n

    def test_reconstruction_residual(self, decompositions):
        for dec in decompositions.values():
            assert dec.reconstruction_residual() <= 1e-8

    def test_character_orthogonality(self, decompositions):
        for dec in decompositions.values():
            chars = np.array([b.character_per_element() for b in dec.blocks])
            grammat = chars @ chars.conj().T / dec.rep.group.order
            assert np.max(np.abs(grammat - np.eye(len(dec.blocks)))) <= 1e-8

    def test_block_character_norm_one(self, decompositions):
        for dec in decompositions.values():
            for b in dec.blocks:
                norm = np.mean(np.abs(b.character_per_element()) ** 2)
                assert abs(norm - 1.0) <= 1e-8

    def test_deterministic_given_seed(self, regular_reps):
        a = ak.decompose(regular_reps["s3"], seed=5)
        b = ak.decompose(regular_reps["s3"], seed=5)
        assert np.array_equal(a.basis, b.basis)

    def test_seed_independent_structure(self, regular_reps):
        a = ak.decompose(regular_reps["d4"], seed=1)
        b = ak.decompose(regular_reps["d4"], seed=2)
        assert a.multiset() == b.multiset()

    def test_idempotent_on_block_diagonal_input(self, decompositions):
        dec = decompositions["s3"]
        mats = np.array([dec.block_matrix(g) for g in range(6)])
        again = ak.decompose(ak.UnitaryRep(dec.rep.group, mats), seed=0)
        assert sorted(again.multiset()) == sorted(dec.multiset())

    def test_block_count_equals_class_count_for_regular(self, groups, decompositions):
        for name in ("z2", "z3", "z6", "klein", "s3", "s4", "d4"):
            assert len(decompositions[name].blocks) == len(groups[name].conjugacy_classes())


class TestOneDimReps:
    def test_cyclic_characters(self, groups, decompositions):
        n = 6
        om = ak.one_dim_reps(groups["z6"], decompositions["z6"])
        assert om.shape == (6, 6)
        expected = {
            tuple(np.round(np.exp(2j * np.pi * k * np.arange(n) / n), 9)) for k in range(n)
        }
        got = {tuple(np.round(row, 9)) for row in om}
        assert got == expected

    def test_s3_has_two(self, groups, decompositions):
        om = ak.one_dim_reps(groups["s3"], decompositions["s3"])
        assert om.shape[0] == 2

    def test_contains_trivial(self, groups, decompositions):
        for name in ("z2", "s3", "d4", "klein"):
            om = ak.one_dim_reps(groups[name], decompositions[name])
            assert any(np.allclose(row, 1.0) for row in om)


class TestInvariantUnitary:
    def test_commutes(self, decompositions, rng):
        for name in ("s3", "d4"):
            dec = decompositions[name]
            v = ak.random_invariant_unitary(dec, rng)
            assert frob(v @ v.conj().T - np.eye(dec.rep.dim)) < 1e-10
            worst = max(
                frob(v @ dec.rep.mats[g] - dec.rep.mats[g] @ v)
                for g in dec.rep.group.elements()
            )
            assert worst < 1e-10


class TestRepValidation:
    def test_non_unitary_rejected(self, groups):
        mats = np.array([np.eye(2), 2.0 * np.eye(2)])
        with pytest.raises(ak.ValidationError):
            ak.UnitaryRep(groups["z2"], mats)

    def test_non_homomorphism_rejected(self, groups):
        # unitary per element but not a homomorphism for Z2: U(1)^2 != U(0)
        u = np.array([[0, 1j], [1j, 0]])
        with pytest.raises(ak.ValidationError):
            ak.UnitaryRep(groups["z2"], np.array([np.eye(2), u]))

    def test_identity_slot_enforced(self, groups):
        u = np.array([[0, 1], [1, 0]])
        with pytest.raises(ak.ValidationError):
            ak.UnitaryRep(groups["z2"], np.array([u, np.eye(2)]))


class TestDegeneracyPath:
    def test_retries_then_raises(self, regular_reps, monkeypatch):
        import asymkit.reps as reps_mod

        calls = {"n": 0}

        def always_retry(r, rng):
            calls["n"] += 1
            raise reps_mod._Retry("forced")

        monkeypatch.setattr(reps_mod, "_decompose_once", always_retry)
        with pytest.raises(ak.NumericalDegeneracyError):
            ak.decompose(regular_reps["z2"], seed=0)
        assert calls["n"] == 5


class TestDecomposeCompositeReps:
    """Multiplicities of built-up representations against a character oracle."""

    @staticmethod
    def multiplicity_oracle(rep, dec_regular):
        # n_mu = avg_g chi_rep(g) conj(chi_mu(g)), independent of decompose(rep)
        chi = rep.character()
        out = []
        for blk in dec_regular.blocks:
            n = np.mean(chi * blk.character_per_element().conj())
            assert abs(n.imag) < 1e-9
            assert abs(n.real - round(n.real)) < 1e-9
            out.append((blk.dim, int(round(n.real))))
        return sorted((d, n) for d, n in out if n > 0)

    def test_tensor_square_of_two_dim_block(self, decompositions):
        dec_reg = decompositions["s3"]
        blk = next(b for b in dec_reg.blocks if b.dim == 2)
        sub = ak.UnitaryRep(dec_reg.rep.group, blk.mats)
        squared = ak.tensor_rep(sub, sub)
        got = sorted(ak.decompose(squared, seed=0).multiset())
        assert got == self.multiplicity_oracle(squared, dec_reg)

    def test_mixed_sums_and_tensors(self, groups, decompositions):
        g = groups["d4"]
        dec_reg = decompositions["d4"]
        r = ak.regular_rep(g)
        triv = ak.trivial_rep(g)
        composites = [
            ak.direct_sum_rep(triv, triv),
            ak.direct_sum_rep(ak.tensor_rep(triv, triv), triv),
        ]
        two_dim = next(b for b in dec_reg.blocks if b.dim == 2)
        sub = ak.UnitaryRep(g, two_dim.mats)
        composites.append(ak.tensor_rep(sub, sub))
        composites.append(ak.direct_sum_rep(sub, ak.direct_sum_rep(sub, triv)))
        for rep in composites:
            got = sorted(ak.decompose(rep, seed=1).multiset())
            assert got == self.multiplicity_oracle(rep, dec_reg)

    def test_scrambled_basis_recovered(self, regular_reps, rng):
        # conjugating by a fixed unitary must not change the block content
        from asymkit.linalg import haar_unitary

        r = regular_reps["s3"]
        u = haar_unitary(6, rng)
        scrambled = ak.UnitaryRep(r.group, u @ r.mats @ u.conj().T)
        dec = ak.decompose(scrambled, seed=0)
        assert sorted(dec.multiset()) == [(1, 1), (1, 1), (2, 2)]
        assert dec.reconstruction_residual() <= 1e-8

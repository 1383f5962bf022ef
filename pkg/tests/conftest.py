"""Shared fixtures: groups, regular representations, and their decompositions.

Decomposing a regular representation is the expensive step most tests lean
on, so everything here is session-scoped and computed once.
"""

from __future__ import annotations

import numpy as np
import pytest

import asymkit as ak


def _build_groups():
    return {
        "z2": ak.make_cyclic(2),
        "z3": ak.make_cyclic(3),
        "z4": ak.make_cyclic(4),
        "z6": ak.make_cyclic(6),
        "z16": ak.make_cyclic(16),
        "klein": ak.direct_product(ak.make_cyclic(2), ak.make_cyclic(2)),
        "s3": ak.make_symmetric(3),
        "s4": ak.make_symmetric(4),
        "d3": ak.make_dihedral(3),
        "d4": ak.make_dihedral(4),
    }


@pytest.fixture(scope="session")
def groups():
    return _build_groups()


@pytest.fixture(scope="session")
def regular_reps(groups):
    return {name: ak.regular_rep(g) for name, g in groups.items()}


@pytest.fixture(scope="session")
def decompositions(regular_reps):
    return {name: ak.decompose(rep, seed=0) for name, rep in regular_reps.items()}


@pytest.fixture(scope="session")
def z16_number_rep(groups):
    return ak.number_rep(groups["z16"], range(16))


@pytest.fixture(scope="session")
def z16_number_dec(z16_number_rep):
    return ak.decompose(z16_number_rep, seed=0)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)

import time

import pytest

from preproj.atlas import enumerate_indecomposables
from preproj.linalg import PrimeField
from preproj.rigidgraph import enumerate_maximal_rigid, mutation_graph

_ATLASES: dict = {}
_RIGIDS: dict = {}
BUILD_SECONDS: dict = {}
CLIQUE_SECONDS: dict = {}


def shared_atlas(qtype: str, p: int = 32003):
    key = (qtype, p)
    if key not in _ATLASES:
        t0 = time.perf_counter()
        _ATLASES[key] = enumerate_indecomposables(qtype, PrimeField(p))
        BUILD_SECONDS[key] = time.perf_counter() - t0
    return _ATLASES[key]


def shared_rigids(qtype: str, p: int = 32003):
    key = (qtype, p)
    if key not in _RIGIDS:
        atlas = shared_atlas(qtype, p)
        t0 = time.perf_counter()
        rigids = enumerate_maximal_rigid(atlas)
        CLIQUE_SECONDS[key] = time.perf_counter() - t0
        _RIGIDS[key] = (rigids, mutation_graph(rigids, atlas.dq.nv))
    return _RIGIDS[key]


@pytest.fixture(scope="session")
def field():
    return PrimeField(32003)


@pytest.fixture(scope="session")
def atlas_a2():
    return shared_atlas("A2")


@pytest.fixture(scope="session")
def atlas_a3():
    return shared_atlas("A3")


@pytest.fixture(scope="session")
def atlas_a4():
    return shared_atlas("A4")


@pytest.fixture(scope="session")
def rigids_a2():
    return shared_rigids("A2")


@pytest.fixture(scope="session")
def rigids_a3():
    return shared_rigids("A3")


@pytest.fixture(scope="session")
def rigids_a4():
    return shared_rigids("A4")

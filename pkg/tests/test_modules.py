import numpy as np
import pytest

from preproj.errors import InputError
from preproj.linalg import PrimeField
from preproj.modules import (
    ModuleMap,
    Representation,
    check_relations,
    cosyzygy,
    decompose,
    direct_sum,
    dual_twist,
    hom_dim,
    is_isomorphic,
    projective_module,
    radical,
    simple,
    socle_dims,
    syzygy,
    top,
    zero_rep,
)
from preproj.quivers import PreprojectiveBasis, double, dynkin_a


@pytest.fixture(scope="module")
def f():
    return PrimeField(32003)


@pytest.fixture(scope="module")
def a3(f):
    dq = double(dynkin_a(3))
    return dq, PreprojectiveBasis(dq, f)


@pytest.fixture(scope="module")
def a2(f):
    dq = double(dynkin_a(2))
    return dq, PreprojectiveBasis(dq, f)


def base_change(rep, seed=0):
    """Conjugate by a random invertible change of basis at every vertex."""
    fld = rep.field
    rng = np.random.default_rng(seed)
    gs = []
    for d in rep.dims:
        while True:
            g = rng.integers(0, fld.p, size=(d, d))
            if fld.is_invertible(g % fld.p):
                gs.append(g % fld.p)
                break
    mats = []
    for k, a in enumerate(rep.dq.arrows):
        s, t = a.source - 1, a.target - 1
        mats.append(fld.mulchain(gs[t], rep.mats[k], fld.inv(gs[s])))
    return Representation(rep.dq, fld, rep.dims, mats)


def test_simples_satisfy_relations(a3, f):
    for i in (1, 2, 3):
        assert check_relations(simple(a3[0], f, i))


def test_relation_violation_detected(a2, f):
    dq, _ = a2
    # alpha then alpha-star nonzero on a (1,1) space breaks the relation
    mats = [f.mat([[1]]), f.mat([[1]])]
    bad = Representation(dq, f, (1, 1), mats, validate=False)
    assert not check_relations(bad)
    with pytest.raises(InputError):
        Representation(dq, f, (1, 1), mats)


def test_projective_dim_vectors(a3):
    dq, basis = a3
    assert projective_module(basis, 1).dims == (1, 1, 1)
    assert projective_module(basis, 2).dims == (1, 2, 1)
    assert check_relations(projective_module(basis, 2))


def test_a2_projective_has_no_long_paths(a2):
    _, basis = a2
    assert projective_module(basis, 1).dims == (1, 1)


def test_hom_examples(a3, f):
    dq, basis = a3
    s1 = simple(dq, f, 1)
    p1 = projective_module(basis, 1)
    p2 = projective_module(basis, 2)
    assert hom_dim(s1, p1) == 0
    assert hom_dim(p2, p2) == 2 == p2.dims[1]


def test_hom_from_projective_counts_fibre(atlas_a3):
    for v in atlas_a3.dq.vertices:
        p = atlas_a3.modules[atlas_a3.id_by_alias(f"P{v}")]
        for m in atlas_a3.modules:
            assert hom_dim(p, m) == m.dims[v - 1]


def test_direct_sum(a3, f):
    dq, basis = a3
    s1, s2 = simple(dq, f, 1), simple(dq, f, 2)
    assert direct_sum(dq, f, [s1, s2]).dims == (1, 1, 0)
    assert direct_sum(dq, f, []).dims == (0, 0, 0)
    p1 = projective_module(basis, 1)
    assert direct_sum(dq, f, [p1, p1]).dims == (2, 2, 2)


def test_hom_additivity(a3, f):
    dq, basis = a3
    x = projective_module(basis, 2)
    xs = simple(dq, f, 1)
    y = projective_module(basis, 1)
    assert hom_dim(direct_sum(dq, f, [x, xs]), y) == hom_dim(x, y) + hom_dim(xs, y)


def test_hom_invariant_under_base_change(a3, f):
    dq, basis = a3
    x = projective_module(basis, 2)
    y = projective_module(basis, 1)
    assert hom_dim(base_change(x, 5), y) == hom_dim(x, y)
    assert hom_dim(x, base_change(y, 6)) == hom_dim(x, y)


def test_decompose_block_diagonal(a3, f):
    dq, basis = a3
    p1 = projective_module(basis, 1)
    s2 = simple(dq, f, 2)
    parts = decompose(direct_sum(dq, f, [p1, s2]))
    assert sorted((x.dims, k) for x, k in parts) == [((0, 1, 0), 1), ((1, 1, 1), 1)]
    doubled = decompose(direct_sum(dq, f, [p1, p1]))
    assert len(doubled) == 1 and doubled[0][1] == 2


def test_decompose_is_a_partition(a3, f):
    dq, basis = a3
    mix = direct_sum(
        dq, f, [projective_module(basis, 2), simple(dq, f, 1), simple(dq, f, 1)]
    )
    hidden = base_change(mix, 9)
    parts = decompose(hidden)
    rebuilt = direct_sum(dq, f, [x for x, k in parts for _ in range(k)])
    assert is_isomorphic(rebuilt, hidden)


def test_extension_module_is_indecomposable(a3, f):
    dq, _ = a3
    mats = [f.mat([[1]]), f.zeros(0, 1), f.zeros(1, 1), f.zeros(1, 0)]
    e = Representation(dq, f, (1, 1, 0), mats)
    assert hom_dim(e, e) == 1
    parts = decompose(e)
    assert len(parts) == 1 and parts[0][1] == 1


def test_is_isomorphic_basics(a3, f):
    dq, basis = a3
    assert not is_isomorphic(simple(dq, f, 1), simple(dq, f, 2))
    p2 = projective_module(basis, 2)
    assert is_isomorphic(p2, p2)
    assert is_isomorphic(p2, base_change(p2, 17))


def test_dual_twist_convention(a3):
    dq, basis = a3
    p1, p2, p3 = (projective_module(basis, i) for i in (1, 2, 3))
    assert is_isomorphic(dual_twist(p2), p2)
    assert is_isomorphic(dual_twist(p1), p3)
    assert not is_isomorphic(dual_twist(p1), p1)


def test_radical_top_socle(a3, f):
    dq, basis = a3
    p1 = projective_module(basis, 1)
    p2 = projective_module(basis, 2)
    assert radical(p1)[0].dims == (0, 1, 1)
    assert top(p2)[0].dims == (0, 1, 0)
    assert socle_dims(p1) == (0, 0, 1)


def test_syzygy_a2(a2, f):
    dq, basis = a2
    assert syzygy(simple(dq, f, 1), basis).dims == (0, 1)
    assert syzygy(projective_module(basis, 1), basis).total_dim == 0


def test_cosyzygy_inverts_syzygy(a3, f):
    dq, basis = a3
    s2 = simple(dq, f, 2)
    omega = syzygy(s2, basis)
    back = cosyzygy(omega, basis)
    assert is_isomorphic(back, s2)


def test_zero_representation(a3, f):
    z = zero_rep(a3[0], f)
    assert z.total_dim == 0
    assert decompose(z) == []


def test_module_map_validation(a3, f):
    dq, _ = a3
    s1, s2 = simple(dq, f, 1), simple(dq, f, 2)
    with pytest.raises(InputError):
        ModuleMap(s1, s2, tuple(f.eye(1) for _ in range(3)))

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from qdslab import autgroup as A
from qdslab import groups, incidence as I
from qdslab import qds as Q

from conftest import FIXTURES, S3_TABLE, fixture_structure

S3 = groups.make_group({"type": "cayley", "table": S3_TABLE})
S3xC2 = groups.direct_sum(S3, groups.cyclic(2))
SETTINGS = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def cyclic_subset(draw, max_n=13, min_size=1, max_size=5):
    n = draw(st.integers(3, max_n))
    rest = draw(st.sets(st.integers(1, n - 1), min_size=min_size - 1, max_size=max_size - 1))
    return groups.cyclic(n), sorted({0} | rest)


@st.composite
def small_qds(draw):
    G, D = draw(cyclic_subset(max_n=12, min_size=2, max_size=4))
    assume(Q.is_qds(G, D))
    return G, D


@given(st.sampled_from([S3, S3xC2]), st.data())
def test_cayley_axioms(G, data):
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.op(G.op(a, b), c) == G.op(a, G.op(b, c))
    assert G.op(a, G.identity) == a == G.op(G.identity, a)
    assert G.op(a, G.inv(a)) == G.identity


@given(cyclic_subset(max_n=24, max_size=8))
def test_left_stabilizer_is_subgroup(GD):
    G, D = GD
    s = groups.left_stabilizer(G, D)
    assert G.order % len(s) == 0 and len(D) % len(s) == 0
    for a in s:
        assert G.inv(a) in s
        for b in s:
            assert G.op(a, b) in s


@given(st.integers(2, 30), st.lists(st.integers(0, 29), max_size=4))
def test_subgroup_generated_idempotent(n, S):
    G = groups.cyclic(n)
    S = [x % n for x in S]
    H = groups.subgroup_generated(G, S)
    assert groups.subgroup_generated(G, H) == H


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3), st.lists(st.integers(2, 6), min_size=1, max_size=3), st.data())
def test_embed_project_roundtrip(m1, m2, data):
    A_, B_ = groups.cyclic_product(m1), groups.cyclic_product(m2)
    fac = [A_, B_]
    S = groups.direct_sum(A_, B_)
    a = data.draw(st.integers(0, A_.order - 1))
    b = data.draw(st.integers(0, B_.order - 1))
    assert groups.project_index(fac, 0, groups.embed_index(fac, 0, a)) == a
    assert groups.project_index(fac, 1, groups.embed_index(fac, 1, b)) == b
    x = S.op(groups.embed_index(fac, 0, a), groups.embed_index(fac, 1, b))
    assert groups.project_index(fac, 0, x) == a and groups.project_index(fac, 1, x) == b


@SETTINGS
@given(small_qds(), small_qds())
def test_qds_sum_is_qds(p1, p2):
    D1 = Q.make_qds(*p1)
    D2 = Q.make_qds(*p2)
    s = Q.qds_sum(D1, D2)
    assert Q.is_qds(s.group, s)
    assert len(s) == len(D1) + len(D2) - 1


@given(cyclic_subset(max_n=21, max_size=5))
def test_perfect_implies_qds(GD):
    G, D = GD
    if Q.is_perfect_difference_set(G, D):
        assert Q.is_qds(G, D)


@given(cyclic_subset(max_n=21, max_size=6))
def test_diff_profile_invariants(GD):
    G, D = GD
    p = Q.diff_profile(G, D)
    assert 0 in p.negD and len(p.negD) == len(D)
    assert {G.inv(x) for x in p.diffDD} == set(p.diffDD)
    assert set(p.size4_admissible) <= set(D) and set(p.size3_admissible) <= set(D)
    assert not set(p.size4_admissible) & set(p.size3_admissible)


@given(cyclic_subset(max_n=15, max_size=4))
def test_normalization_keeps_lines(GD):
    G, D = GD
    shifted = [G.op(3 % G.order, d) for d in D]
    a, b = I.build(G, D), I.build(G, shifted)
    assert {frozenset(l) for l in a.lines} == {frozenset(l) for l in b.lines}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FIXTURES)), st.data())
def test_neighborhood_transported_by_automorphisms(name, data):
    S = fixture_structure(name)
    G = A.automorphism_group(S)
    f = data.draw(st.sampled_from(G.elements()))
    a = data.draw(st.integers(0, S.n_points - 1))
    nb = I.neighborhood(S, a)
    nb2 = I.neighborhood(S, f.point_perm[a])
    assert sorted(f.point_perm[p] for p in nb.points) == list(nb2.points)
    assert sorted(f.line_perm[l] for l, _ in nb.lines) == [l for l, _ in nb2.lines]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(FIXTURES)))
def test_double_dual(name):
    S = fixture_structure(name)
    assert A.isomorphism(S, I.dual(I.dual(S))) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(FIXTURES)), st.randoms(use_true_random=False))
def test_relabeling_invariance(name, rnd):
    S = fixture_structure(name)
    perm = list(range(S.n_points))
    rnd.shuffle(perm)
    inv = {p: i for i, p in enumerate(perm)}
    T = I.from_lines(list(range(S.n_points)), [sorted(inv[p] for p in l) for l in S.lines])
    assert A.automorphism_group(T).order == A.automorphism_group(S).order
    iso = A.isomorphism(S, T)
    assert iso is not None and A.pair_from_point_map(S, iso.point_map, T) is not None


@settings(max_examples=50, deadline=None)
@given(small_qds())
def test_self_duality_witness(GD):
    S = I.build(*GD)
    if len(S.provenance.stabilizer) == 1:
        k = I.standard_correlation(S)
        for l, pts in enumerate(S.lines):
            for p in pts:
                assert k.line_to_point[l] in S.line_sets[k.point_to_line[p]]


@settings(max_examples=50, deadline=None)
@given(small_qds(), st.data())
def test_translations_compose(GD, data):
    S = I.build(*GD)
    G = S.provenance.group
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    assert A.translation(S, a).compose(A.translation(S, b)) == A.translation(S, G.op(a, b))

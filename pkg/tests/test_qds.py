import itertools

import pytest

from qdslab import groups
from qdslab import qds as Q
from qdslab.errors import EmptyDelta, NotAbelian, NotAQds, SearchCapExceeded

from conftest import S3_TABLE
from oracles import differences

C7, C13 = groups.cyclic(7), groups.cyclic(13)


def test_is_qds_examples():
    assert Q.is_qds(C7, [0, 1, 3])
    assert not Q.is_qds(groups.cyclic(5), [0, 1, 2])
    assert Q.is_qds(C7, [0])


def test_is_qds_matches_difference_count():
    for n in range(2, 12):
        G = groups.cyclic(n)
        for r in range(1, 5):
            for D in itertools.combinations(range(n), r):
                expect = all(v <= 1 for v in differences(G, D).values())
                assert Q.is_qds(G, D) == expect


def test_perfect_examples():
    assert Q.is_perfect_difference_set(C7, [0, 1, 3])
    assert Q.is_perfect_difference_set(C13, [0, 1, 3, 9])
    assert not Q.is_perfect_difference_set(C7, [0, 1, 2])
    assert not Q.is_perfect_difference_set(groups.cyclic(8), [0, 1, 3])


def test_make_qds_normalizes():
    D = Q.make_qds(C7, [2, 3, 5])
    assert D.elements == (0, 1, 3)
    assert D.normalization_shift == 5
    assert {(x + D.normalization_shift) % 7 for x in [2, 3, 5]} == set(D.elements)
    with pytest.raises(EmptyDelta):
        Q.make_qds(C7, [])


def test_star_examples():
    G4 = groups.cyclic_product([4, 4])
    assert Q.satisfies_star(G4, Q.canonical_set([4, 4]))
    assert not Q.satisfies_star(groups.cyclic_product([3, 3]), Q.canonical_set([3, 3]))
    assert not Q.satisfies_star(C7, [0, 1, 3])
    with pytest.raises(NotAQds):
        Q.satisfies_star(groups.cyclic(5), [0, 1, 2])


def _star_oracle(G, D):
    quot = {G.op(a, G.inv(b)) for a in D for b in D}
    for d1, d2, d3, d4 in itertools.product(D, repeat=4):
        if G.op(G.op(d1, G.inv(d2)), G.op(d3, G.inv(d4))) in quot:
            if not (d1 == d2 or d3 == d4 or d1 == d4 or d3 == d2):
                return False
    return True


def test_star_witness_is_valid():
    G, D = C7, [0, 1, 3]
    w = Q.star_witness(G, D)
    d1, d2, d3, d4 = w
    x = (d1 - d2 + d3 - d4) % 7
    assert x in {(a - b) % 7 for a in D for b in D}
    assert d1 != d2 and d3 != d4 and d1 != d4 and d3 != d2
    # the quadruple (1, 0, 3, 0) is another valid witness
    assert (1 - 0 + 3 - 0) % 7 == 4 and 4 in {(a - b) % 7 for a in D for b in D}


def test_star_against_oracle():
    for n in range(3, 14):
        G = groups.cyclic(n)
        for D in itertools.combinations(range(n), 3):
            if 0 in D and Q.is_qds(G, D):
                assert Q.satisfies_star(G, D) == _star_oracle(G, D)


@pytest.mark.parametrize("k", range(2, 8))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_star_iff_k_greater_than_3(k, n):
    if k ** n > 400:
        pytest.skip("large")
    D = Q.canonical_set([k] * n)
    if k == 2:
        # {0, 1} in C2 repeats the difference 1 = -1, so (*) is undefined
        with pytest.raises(NotAQds):
            Q.satisfies_star(D.group, D)
        return
    assert Q.satisfies_star(D.group, D) == (k > 3)


def test_canonical_set():
    D = Q.canonical_set([3, 3])
    assert sorted(D.labels) == [(0, 0), (0, 1), (1, 0)]
    assert len(Q.canonical_set([3, 3, 3])) == 4
    assert Q.canonical_set([2]).labels == [0, 1]
    for m in ([3, 3], [4, 5], [3, 3, 3]):
        D = Q.canonical_set(m)
        assert Q.is_qds(D.group, D)


def test_canonical_equals_iterated_sum():
    for m in ([3, 3], [4, 5, 6], [3, 3, 3]):
        parts = [Q.make_qds(groups.cyclic(k), [0, 1]) for k in m]
        assert Q.qds_sum(*parts) == Q.canonical_set(m)


def test_qds_sum_examples():
    a = Q.make_qds(groups.cyclic(3), [0, 1])
    b = Q.make_qds(C7, [0, 1, 3])
    s = Q.qds_sum(a, b)
    assert s.group.moduli == (3, 7)
    assert sorted(s.labels) == [(0, 0), (0, 1), (0, 3), (1, 0)]
    z = Q.make_qds(groups.cyclic(2), [0])
    s2 = Q.qds_sum(z, b)
    assert sorted(s2.labels) == [(0, 0), (0, 1), (0, 3)]
    with pytest.raises(NotAQds):
        Q.qds_sum(Q.make_qds(groups.cyclic(5), [0, 1, 2]), b)


def test_singer_q2():
    reps = [r.elements for r in Q.singer_search(2)]
    assert (0, 1, 3) in reps
    # every class is a perfect difference set and classes are translation-distinct
    classes = Q.singer_classes(2)
    for c in classes:
        assert all(Q.is_perfect_difference_set(C7, m) for m in c.members)
    assert len({frozenset(c.sets[0]) for c in classes}) == len(classes)


def _all_pds(n, k):
    return [D for D in itertools.combinations(range(n), k)
            if 0 in D and Q.is_perfect_difference_set(groups.cyclic(n), D)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_singer_classes_partition_all_sets(q):
    n = q * q + q + 1
    found = set()
    for c in Q.singer_classes(q):
        for m in c.members:
            found.add(tuple(m.elements))
    assert found == set(_all_pds(n, q + 1))


def test_singer_q3_members():
    classes = Q.singer_classes(3)
    assert [c.representative.elements for c in classes] == [(0, 1, 3, 9), (0, 1, 4, 6), (0, 1, 5, 11), (0, 1, 8, 10)]
    first = classes[0]
    assert sorted(first.sets) == [(0, 1, 3, 9), (0, 2, 8, 12), (0, 4, 5, 7), (0, 6, 10, 11)]
    # all four classes are related by multipliers
    assert {c.multiplier_class for c in classes} == {0}


def test_multiplier_3_on_singer_sets():
    mul = lambda D: tuple(sorted(3 * x % 13 for x in D))
    assert mul((0, 2, 8, 12)) == (0, 6, 10, 11)
    assert mul((0, 6, 10, 11)) == (0, 4, 5, 7)
    assert mul((0, 4, 5, 7)) == (0, 2, 8, 12)
    assert mul((0, 1, 3, 9)) == (0, 1, 3, 9)


def test_singer_cap():
    with pytest.raises(SearchCapExceeded):
        Q.singer_classes(400, cap=1000)
    with pytest.raises(SearchCapExceeded):
        Q.singer_classes(5, max_steps=10)


def test_pappus_condition():
    G = groups.cyclic_product([3, 3])
    assert Q.pappus_condition(G, Q.canonical_set([3, 3])) == ((0, 1), (0, 1), (1, 0), (1, 0))
    assert Q.pappus_condition(C7, [0, 1, 3]) is None
    assert Q.pappus_condition(C13, [0, 1, 3, 9]) is None
    with pytest.raises(NotAbelian):
        Q.pappus_condition(groups.make_group({"type": "cayley", "table": S3_TABLE}), [0, 1])


def test_pappus_condition_witness_valid():
    for moduli in ([3, 3], [3, 7], [3, 3, 3]):
        G = groups.cyclic_product(moduli)
        D = Q.canonical_set(moduli) if len(set(moduli)) == 1 else Q.qds_sum(
            Q.make_qds(groups.cyclic(3), [0, 1]), Q.make_qds(C7, [0, 1, 3]))
        w = Q.pappus_condition(G, D)
        d1, d2, d3, d4 = (G.index(x) for x in w)
        assert d1 != d3 and G.op(d1, d1) == G.inv(d2) and G.op(d3, d3) == G.inv(d4)


def test_triangle_condition():
    assert Q.triangle_condition(C13, [0, 1, 3, 9]).kind == "all"
    t = Q.triangle_condition(C13, [0, 2, 8, 12])
    assert t.kind == "all_but_one" and t.exception == 8
    assert Q.triangle_condition(C7, [0, 1, 3]).kind == "all"
    assert Q.triangle_condition(groups.cyclic(11), [0, 1, 3]).kind == "fails"


def test_diff_profile_c7():
    p = Q.diff_profile(C7, [0, 1, 3])
    assert p.negD == (0, 4, 6)
    assert p.neg2D == (0, 1, 5)
    assert p.size4_admissible == (3,)
    assert p.size3_admissible == (1,)
    assert sorted(set(p.neg2D) | set(p.negD)) == [0, 1, 4, 5, 6]


def test_diff_profile_c13():
    p = Q.diff_profile(C13, [0, 1, 3, 9])
    assert p.size4_admissible == (1, 3, 9)
    assert p.size3_admissible == ()


def test_diff_profile_trivial():
    p = Q.diff_profile(C7, [0])
    assert p.negD == (0,) and p.D_plus_D == (0,) and p.diffDD == (0,)
    assert p.size4_admissible == () and p.size3_admissible == ()


def test_supp():
    G = groups.cyclic_product([7, 7, 7])
    assert Q.supp(G, G.encode([0, 3, 0])) == (1,)
    assert Q.supp(G, G.identity) == ()

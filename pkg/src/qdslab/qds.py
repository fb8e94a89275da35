"""Quasi difference sets and the set arithmetic around them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from . import groups
from .errors import EmptyDelta, InputError, NotAQds, SearchCapExceeded
from .groups import GroupSpec


@dataclass(frozen=True)
class QDSet:
    """A subset of ``group`` translated so that it contains the identity.

    ``elements`` holds sorted element indices; ``normalization_shift`` is the
    index ``s`` with ``elements == s * original``.
    """

    group: GroupSpec
    elements: tuple
    normalization_shift: int = 0

    @property
    def labels(self) -> list:
        return [self.group.label(i) for i in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, i):
        return i in self._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)


def _index_list(G: GroupSpec, D) -> list:
    if isinstance(D, QDSet):
        return list(D.elements)
    return sorted({G.index(d) for d in D})


def make_qds(G: GroupSpec, D, normalize: bool = True) -> QDSet:
    """Wrap a subset of G; translate it onto the identity if needed.

    This does not check the QDS condition, see :func:`is_qds`.
    """
    if isinstance(D, QDSet):
        return D
    idx = _index_list(G, D)
    if not idx:
        raise EmptyDelta("the set D is empty")
    shift = G.identity
    if normalize and G.identity not in idx:
        shift = G.inv(idx[0])
        idx = sorted(G.op(shift, d) for d in idx)
    return QDSet(G, tuple(idx), shift)


# ---------------------------------------------------------------------------
# predicates


def is_qds(G: GroupSpec, D) -> bool:
    return _is_qds(G, _index_list(G, D))


def _is_qds(G, idx):
    seen = set()
    for a in idx:
        for b in idx:
            if a == b:
                continue
            c = G.op(a, G.inv(b))
            if c in seen:
                return False
            seen.add(c)
    return True


def is_perfect_difference_set(G: GroupSpec, D) -> bool:
    idx = _index_list(G, D)
    if len(idx) * (len(idx) - 1) != G.order - 1:
        return False
    return _is_qds(G, idx)


def star_witness(G: GroupSpec, D):
    """First quadruple breaking condition (*) in index order, or None."""
    idx = _index_list(G, D)
    if not _is_qds(G, idx):
        raise NotAQds("condition (*) is only defined for quasi difference sets")
    quot = {G.op(a, G.inv(b)) for a in idx for b in idx}
    for d1 in idx:
        for d2 in idx:
            if d1 == d2:
                continue
            u = G.op(d1, G.inv(d2))
            for d3 in idx:
                if d3 == d2:
                    continue
                for d4 in idx:
                    if d4 == d3 or d4 == d1:
                        continue
                    if G.op(u, G.op(d3, G.inv(d4))) in quot:
                        return tuple(G.label(x) for x in (d1, d2, d3, d4))
    return None


def satisfies_star(G: GroupSpec, D) -> bool:
    return star_witness(G, D) is None


# ---------------------------------------------------------------------------
# constructors


def canonical_set(moduli) -> QDSet:
    """The set {e0, e1, ..., er} of the zero and the unit vectors."""
    G = groups.cyclic_product(moduli)
    r = len(G.moduli)
    elems = [G.identity]
    for i in range(r):
        v = [0] * r
        v[i] = 1
        elems.append(G.encode(v))
    return QDSet(G, tuple(sorted(elems)), G.identity)


def qds_sum(*parts: QDSet) -> QDSet:
    """Union of the embedded summands inside the direct sum of their groups."""
    if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
        parts = tuple(parts[0])
    if not parts:
        raise InputError("qds_sum needs at least one summand")
    for p in parts:
        if not is_qds(p.group, p):
            raise NotAQds(f"summand {p.labels} is not a quasi difference set")
        if p.group.identity not in p.elements:
            raise NotAQds("summands must contain the identity")
    factors = [p.group for p in parts]
    total = groups.direct_sum(*factors)
    elems = set()
    for i, p in enumerate(parts):
        for d in p.elements:
            elems.add(groups.embed_index(factors, i, d))
    return QDSet(total, tuple(sorted(elems)), total.identity)


def qds_power(D: QDSet, n: int) -> QDSet:
    return qds_sum(*([D] * n))


# ---------------------------------------------------------------------------
# Singer sets


@dataclass(frozen=True)
class SingerClass:
    """One translation class of perfect difference sets in C_n."""

    representative: QDSet
    members: tuple
    multiplier_class: int = 0

    @property
    def sets(self):
        return [tuple(m.elements) for m in self.members]


def _translation_members(n, S):
    return sorted(tuple(sorted((x - d) % n for x in S)) for d in S)


def singer_classes(q: int, cap: int = 100_000, max_steps: int = 10_000_000) -> list:
    """All translation classes of perfect difference sets of size q+1 in C_{q^2+q+1}.

    Every class has exactly one member containing both 0 and 1, so a
    backtracking search over such sets visits each class once.
    """
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise InputError("q must be an integer >= 2")
    n = q * q + q + 1
    if n > cap:
        raise SearchCapExceeded(f"n = {n} exceeds the search cap {cap}")
    size = q + 1
    found = []
    steps = 0
    chosen = [0, 1]
    used = [False] * n
    used[1] = used[n - 1] = True

    def extend(start):
        nonlocal steps
        if len(chosen) == size:
            found.append(tuple(chosen))
            return
        for x in range(start, n):
            steps += 1
            if steps > max_steps:
                raise SearchCapExceeded(f"singer search exceeded {max_steps} steps")
            diffs = []
            ok = True
            for y in chosen:
                a, b = (x - y) % n, (y - x) % n
                if used[a] or used[b] or a == b:
                    ok = False
                    break
                diffs.append(a)
                diffs.append(b)
            if not ok or len(set(diffs)) != len(diffs):
                continue
            for dd in diffs:
                used[dd] = True
            chosen.append(x)
            extend(x + 1)
            chosen.pop()
            for dd in diffs:
                used[dd] = False

    extend(2)
    G = groups.cyclic(n)
    classes = []
    for S in found:
        members = _translation_members(n, S)
        classes.append(members)
    classes.sort(key=lambda m: m[0])
    # group classes into orbits of the unit group acting by multiplication
    keys = {m[0]: i for i, m in enumerate(classes)}
    orbit_id = [-1] * len(classes)
    nxt = 0
    for i, members in enumerate(classes):
        if orbit_id[i] >= 0:
            continue
        for u in range(1, n):
            if math.gcd(u, n) != 1:
                continue
            img = [(u * x) % n for x in members[0]]
            j = keys[_translation_members(n, img)[0]]
            orbit_id[j] = nxt
        nxt += 1
    out = []
    for i, members in enumerate(classes):
        qs = tuple(QDSet(G, m, 0) for m in members)
        out.append(SingerClass(qs[0], qs, orbit_id[i]))
    return out


def singer_search(q: int, cap: int = 100_000, max_steps: int = 10_000_000) -> list:
    """Lexicographically least representative of every translation class."""
    return [c.representative for c in singer_classes(q, cap, max_steps)]


# ---------------------------------------------------------------------------
# auxiliary conditions


def pappus_condition(G: GroupSpec, D):
    """Least (d1, d2, d3, d4) in D minus the identity with d1 != d3,
    d1^2 = d2^-1 and d3^2 = d4^-1, or None."""
    groups.require_abelian(G)
    idx = [d for d in _index_list(G, D) if d != G.identity]
    for d1 in idx:
        for d2 in idx:
            if G.op(d1, d1) != G.inv(d2):
                continue
            for d3 in idx:
                if d3 == d1:
                    continue
                for d4 in idx:
                    if G.op(d3, d3) == G.inv(d4):
                        return tuple(G.label(x) for x in (d1, d2, d3, d4))
    return None


@dataclass(frozen=True)
class TriangleReport:
    kind: str  # "all", "all_but_one" or "fails"
    exceptions: tuple = ()

    @property
    def exception(self):
        return self.exceptions[0] if self.kind == "all_but_one" else None


def triangle_condition(G: GroupSpec, D) -> TriangleReport:
    """Which d in D admit d + d' + d'' = 0 with d', d'' in D (d' = d'' allowed)."""
    groups.require_abelian(G)
    idx = _index_list(G, D)
    sums = {G.op(a, b) for a in idx for b in idx}
    bad = [d for d in idx if G.inv(d) not in sums]
    labels = tuple(G.label(d) for d in bad)
    if not bad:
        return TriangleReport("all")
    if len(bad) == 1:
        return TriangleReport("all_but_one", labels)
    return TriangleReport("fails", labels)


@dataclass(frozen=True)
class DiffProfile:
    negD: tuple
    D_plus_D: tuple
    neg2D: tuple
    diffDD: tuple
    size4_admissible: tuple
    size3_admissible: tuple
    group: GroupSpec = field(repr=False, compare=False, default=None)

    def labels(self, name):
        return [self.group.label(i) for i in getattr(self, name)]


def diff_profile(G: GroupSpec, D) -> DiffProfile:
    groups.require_abelian(G)
    idx = _index_list(G, D)
    dset = set(idx)
    neg = {G.inv(d) for d in idx}
    plus = {G.op(a, b) for a in idx for b in idx}
    neg_plus = {G.inv(x) for x in plus}
    neg2 = {G.inv(G.op(d, d)) for d in idx}
    diff = {G.op(a, G.inv(b)) for a in idx for b in idx}
    base = neg_plus & dset
    size4 = base - (neg2 | neg)
    size3 = (base & neg2) - neg
    return DiffProfile(
        tuple(sorted(neg)),
        tuple(sorted(plus)),
        tuple(sorted(neg2)),
        tuple(sorted(diff)),
        tuple(sorted(size4)),
        tuple(sorted(size3)),
        G,
    )


def supp(G: GroupSpec, x: int) -> tuple:
    """Coordinate positions where the residue vector of x is nonzero."""
    return tuple(i for i, r in enumerate(G.residues(x)) if r)

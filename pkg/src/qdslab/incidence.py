"""Coset incidence structures D(G, D) and their combinatorial anatomy.

Points are the group elements (point index == element index).  Lines are
the distinct left cosets b.D, each stored once with its least representative
as label, and ordered by that label.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import groups
from .errors import (
    BadCoordinates,
    DuplicateLine,
    InputError,
    NoProvenance,
    NotAbelian,
    NotPls,
    UnknownFormat,
)
from .groups import GroupSpec
from .qds import QDSet, make_qds


@dataclass(frozen=True)
class Provenance:
    group: GroupSpec
    qds: QDSet
    stabilizer: tuple
    line_of: tuple  # element index b -> index of the line b.D
    blocks: Optional[tuple] = None  # coordinate blocks of a sum decomposition


class IncidenceStructure:
    def __init__(self, points, lines, line_labels=None, provenance=None, name=None):
        self.points = tuple(points)
        self.lines = tuple(tuple(sorted(l)) for l in lines)
        if line_labels is None:
            line_labels = range(len(self.lines))
        self.line_labels = tuple(line_labels)
        self.provenance = provenance
        self.name = name
        n = len(self.points)
        for l in self.lines:
            for p in l:
                if not 0 <= p < n:
                    raise InputError(f"line refers to unknown point {p}")

    def __repr__(self):
        return f"IncidenceStructure({self.name or '?'}: {self.n_points} points, {self.n_lines} lines)"

    @property
    def n_points(self):
        return len(self.points)

    @property
    def n_lines(self):
        return len(self.lines)

    @cached_property
    def line_sets(self):
        return tuple(frozenset(l) for l in self.lines)

    @cached_property
    def point_lines(self):
        out = [[] for _ in self.points]
        for li, l in enumerate(self.lines):
            for p in l:
                out[p].append(li)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _point_index(self):
        return {lab: i for i, lab in enumerate(self.points)}

    @cached_property
    def _line_index(self):
        return {lab: i for i, lab in enumerate(self.line_labels)}

    @cached_property
    def joins(self):
        """Per point: dict other point -> list of common lines."""
        out = [dict() for _ in self.points]
        for li, l in enumerate(self.lines):
            for p in l:
                d = out[p]
                for q in l:
                    if q != p:
                        d.setdefault(q, []).append(li)
        return out

    def point_index(self, a) -> int:
        if isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n_points:
            return a
        key = tuple(a) if isinstance(a, list) else a
        try:
            return self._point_index[key]
        except (KeyError, TypeError):
            raise InputError(f"unknown point {a!r}") from None

    def line_index(self, label) -> int:
        """Index of the line with the given label (any coset representative)."""
        key = tuple(label) if isinstance(label, list) else label
        if self.provenance is not None:
            G = self.provenance.group
            return self.provenance.line_of[G.index(key)]
        try:
            return self._line_index[key]
        except (KeyError, TypeError):
            raise InputError(f"unknown line {label!r}") from None

    def incident(self, p: int, l: int) -> bool:
        return p in self.line_sets[l]

    def degrees(self):
        return [len(x) for x in self.point_lines]

    def sizes(self):
        return [len(l) for l in self.lines]

    def counts(self) -> dict:
        deg = sorted(set(self.degrees()))
        size = sorted(set(self.sizes()))
        return {
            "points": self.n_points,
            "lines": self.n_lines,
            "line_sizes": size,
            "point_degrees": deg,
        }


# ---------------------------------------------------------------------------
# construction


def coordinate_blocks(G: GroupSpec, D: Sequence[int]):
    """Finest partition of the coordinates of a cyclic product such that every
    element of D is supported inside one part."""
    if G.kind != "cyclic_product":
        return None
    r = len(G.moduli)
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in D:
        s = [i for i, v in enumerate(G.residues(d)) if v]
        for i in s[1:]:
            parent[find(i)] = find(s[0])
    comps = {}
    for i in range(r):
        comps.setdefault(find(i), []).append(i)
    return tuple(sorted(tuple(c) for c in comps.values()))


def build(G: GroupSpec, D, name=None) -> IncidenceStructure:
    """The structure whose points are G and whose lines are the cosets b.D."""
    G = groups.make_group(G)
    Dq = make_qds(G, D)
    stab = groups.stabilizer_indices(G, Dq.elements)
    line_of = [-1] * G.order
    lines, labels = [], []
    for b in range(G.order):
        if line_of[b] >= 0:
            continue
        li = len(lines)
        for g in stab:
            line_of[G.op(b, g)] = li
        lines.append([G.op(b, d) for d in Dq.elements])
        labels.append(G.label(b))
    prov = Provenance(G, Dq, tuple(stab), tuple(line_of), coordinate_blocks(G, Dq.elements))
    points = [G.label(i) for i in range(G.order)]
    return IncidenceStructure(points, lines, labels, prov, name)


def from_lines(points, lines, line_labels=None, name=None) -> IncidenceStructure:
    """Free-standing structure; ``points`` is a count or a list of labels."""
    if isinstance(points, int):
        points = range(points)
    return IncidenceStructure(points, lines, line_labels, None, name)


def _need_prov(S):
    if S.provenance is None:
        raise NoProvenance("this operation needs a structure built from a group")
    return S.provenance


# ---------------------------------------------------------------------------
# basic predicates


def is_pls(S: IncidenceStructure) -> bool:
    for p, nb in enumerate(S.joins):
        for q, ls in nb.items():
            if len(ls) > 1:
                return False
    return True


def is_configuration(S: IncidenceStructure) -> bool:
    if not is_pls(S):
        return False
    deg = set(S.degrees())
    size = set(S.sizes())
    return len(deg) == 1 and deg == size and min(deg) >= 2


def pencil(S: IncidenceStructure, a) -> list:
    return list(S.point_lines[S.point_index(a)])


def collinear(S: IncidenceStructure, a, b) -> bool:
    a, b = S.point_index(a), S.point_index(b)
    return a == b or b in S.joins[a]


def join(S: IncidenceStructure, a, b):
    """The line through two distinct points, or None."""
    a, b = S.point_index(a), S.point_index(b)
    if a == b:
        raise InputError("join needs two distinct points")
    ls = S.joins[a].get(b)
    if not ls:
        return None
    if len(ls) > 1:
        raise NotPls(f"points {a} and {b} share {len(ls)} lines")
    return ls[0]


def meet(S: IncidenceStructure, l1: int, l2: int):
    """The common point of two distinct lines, or None."""
    if l1 == l2:
        raise DuplicateLine("meet needs two distinct lines")
    common = S.line_sets[l1] & S.line_sets[l2]
    if not common:
        return None
    if len(common) > 1:
        raise NotPls(f"lines {l1} and {l2} share {len(common)} points")
    return next(iter(common))


# algebraic counterparts, valid for structures built from a group


def incident_formula(S, a: int, l: int) -> bool:
    """a lies on [b] iff b^-1 a is in D (b any representative of l)."""
    P = _need_prov(S)
    G = P.group
    b = G.index(S.line_labels[l])
    return G.op(G.inv(b), a) in P.qds


def pencil_formula(S, a: int) -> list:
    P = _need_prov(S)
    G = P.group
    return sorted({P.line_of[G.op(a, G.inv(d))] for d in P.qds.elements})


def collinear_formula(S, a: int, b: int) -> bool:
    P = _need_prov(S)
    G = P.group
    x = G.op(G.inv(a), b)
    return any(G.op(G.inv(d1), d2) == x for d1 in P.qds for d2 in P.qds)


def join_formula(S, a: int, b: int):
    """If a^-1 b = d1^-1 d2 then the join is [a d1^-1]."""
    P = _need_prov(S)
    G = P.group
    x = G.op(G.inv(a), b)
    for d1 in P.qds:
        for d2 in P.qds:
            if d1 != d2 and G.op(G.inv(d1), d2) == x:
                return P.line_of[G.op(a, G.inv(d1))]
    return None


def meets_formula(S, l1: int, l2: int) -> bool:
    """[a] and [b] meet iff a^-1 b lies in D D^-1."""
    P = _need_prov(S)
    G = P.group
    a, b = G.index(S.line_labels[l1]), G.index(S.line_labels[l2])
    x = G.op(G.inv(a), b)
    return any(G.op(d1, G.inv(d2)) == x for d1 in P.qds for d2 in P.qds)


def meet_formula(S, l1: int, l2: int):
    """If a^-1 b = d1 d2^-1 the common point is a d1."""
    P = _need_prov(S)
    G = P.group
    a, b = G.index(S.line_labels[l1]), G.index(S.line_labels[l2])
    x = G.op(G.inv(a), b)
    for d1 in P.qds:
        for d2 in P.qds:
            if G.op(d1, G.inv(d2)) == x:
                return G.op(a, d1)
    return None


# ---------------------------------------------------------------------------
# substructures


def restrict(S: IncidenceStructure, pts, min_size: int = 2, name=None) -> IncidenceStructure:
    """Points ``pts`` with the traces of all lines meeting them in >= min_size points."""
    pts = sorted(set(pts))
    local = {p: i for i, p in enumerate(pts)}
    seen = set()
    lines, labels = [], []
    for li, l in enumerate(S.lines):
        tr = [local[p] for p in l if p in local]
        if len(tr) >= min_size:
            key = tuple(sorted(tr))
            if key in seen:
                continue
            seen.add(key)
            lines.append(key)
            labels.append(S.line_labels[li])
    return IncidenceStructure([S.points[p] for p in pts], lines, labels, None, name)


@dataclass
class Component:
    points: tuple
    structure: IncidenceStructure


def _collinearity_bfs(S, a):
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in S.joins[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def component(S: IncidenceStructure, a) -> Component:
    a = S.point_index(a)
    pts = tuple(sorted(_collinearity_bfs(S, a)))
    if S.provenance is not None:
        G = S.provenance.group
        expected = len(groups.generated_indices(G, S.provenance.qds.elements))
        assert len(pts) == expected, "component size differs from the generated subgroup"
    return Component(pts, restrict(S, pts, min_size=1))


def components(S: IncidenceStructure) -> list:
    out, done = [], set()
    for p in range(S.n_points):
        if p not in done:
            c = component(S, p)
            done.update(c.points)
            out.append(c)
    return out


@dataclass
class Neighborhood:
    center: int
    points: tuple
    lines: tuple  # (line, local points) with >= 2 local points
    meeting: tuple  # (line, local points) with >= 1 local point

    @property
    def local_size(self) -> dict:
        return {l: len(pts) for l, pts in self.meeting}

    def as_structure(self, S) -> IncidenceStructure:
        return restrict(S, self.points, min_size=2)


def neighborhood(S: IncidenceStructure, a) -> Neighborhood:
    """Points collinear with ``a`` (``a`` included) and the lines meeting them."""
    a = S.point_index(a)
    pts = {a}
    for l in S.point_lines[a]:
        pts.update(S.lines[l])
    touched = {}
    for p in pts:
        for l in S.point_lines[p]:
            touched.setdefault(l, []).append(p)
    meeting = tuple((l, tuple(sorted(touched[l]))) for l in sorted(touched))
    main = tuple(x for x in meeting if len(x[1]) >= 2)
    return Neighborhood(a, tuple(sorted(pts)), main, meeting)


# ---------------------------------------------------------------------------
# duality


def dual(S: IncidenceStructure) -> IncidenceStructure:
    return IncidenceStructure(S.line_labels, S.point_lines, S.points, None,
                              f"dual({S.name})" if S.name else None)


@dataclass(frozen=True)
class Correlation:
    point_to_line: tuple
    line_to_point: tuple


def standard_correlation(S: IncidenceStructure) -> Correlation:
    """(a) -> [-a] and [a] -> (-a); verified to reverse incidence."""
    P = _need_prov(S)
    G = P.group
    if not G.is_abelian:
        raise NotAbelian("the standard correlation needs an abelian group")
    if len(P.stabilizer) != 1:
        raise InputError("lines and points are not equinumerous (nontrivial stabilizer)")
    p2l = tuple(P.line_of[G.inv(a)] for a in range(G.order))
    l2p = tuple(G.inv(G.index(lab)) for lab in S.line_labels)
    for l, pts in enumerate(S.lines):
        for p in pts:
            if l2p[l] not in S.line_sets[p2l[p]]:
                raise AssertionError("standard correlation failed to reverse incidence")
    return Correlation(p2l, l2p)


def selfconjugate_points(S: IncidenceStructure) -> list:
    """Indices of points a with a.a in D, i.e. a incident with its image."""
    P = _need_prov(S)
    G = P.group
    return [a for a in range(G.order) if G.op(a, a) in P.qds]


# ---------------------------------------------------------------------------
# sums and parts


def sum_structure(*parts: IncidenceStructure, name=None) -> IncidenceStructure:
    if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
        parts = tuple(parts[0])
    provs = [_need_prov(S) for S in parts]
    from .qds import qds_sum

    D = qds_sum(*[p.qds for p in provs])
    return build(D.group, D, name=name)


def power(S: IncidenceStructure, n: int, name=None) -> IncidenceStructure:
    if n < 1:
        raise InputError("power needs n >= 1")
    return sum_structure(*([S] * n), name=name)


def block_structure(S: IncidenceStructure, block: Sequence[int]) -> IncidenceStructure:
    """D(prod of the block's cyclic factors, D projected to the block)."""
    P = _need_prov(S)
    G = P.group
    block = tuple(block)
    H = groups.cyclic_product([G.moduli[i] for i in block])
    elems = set()
    for d in P.qds.elements:
        r = G.residues(d)
        if all(r[i] == 0 for i in range(len(r)) if i not in block):
            elems.add(H.encode([r[i] for i in block]))
    return build(H, sorted(H.label(e) for e in elems))


def factor_structures(S: IncidenceStructure) -> list:
    P = _need_prov(S)
    if P.blocks is None:
        raise BadCoordinates("structure is not over a product of cyclic groups")
    return [block_structure(S, b) for b in P.blocks]


@dataclass
class JPart:
    points: tuple  # point indices of S
    structure: IncidenceStructure
    target: IncidenceStructure
    point_map: tuple  # local point index -> target point index
    line_map: tuple  # local line index -> target line index


def j_part(S: IncidenceStructure, J, c=()) -> JPart:
    """Freeze the coordinates outside J at ``c`` and return the induced part
    with its isomorphism onto the structure of the J-coordinates."""
    P = _need_prov(S)
    G = P.group
    if G.kind != "cyclic_product":
        raise BadCoordinates("parts need a product of cyclic groups")
    r = len(G.moduli)
    J = sorted(set(J))
    if not J or any(not isinstance(j, int) or not 0 <= j < r for j in J):
        raise BadCoordinates(f"J must be a nonempty subset of 0..{r - 1}")
    rest = [i for i in range(r) if i not in J]
    c = tuple(c)
    if len(c) != len(rest) or any(not 0 <= v < G.moduli[i] for v, i in zip(c, rest)):
        raise BadCoordinates(f"c must give values for coordinates {rest}")
    for d in P.qds.elements:
        s = {i for i, v in enumerate(G.residues(d)) if v}
        if not (s <= set(J) or not (s & set(J))):
            raise BadCoordinates(f"element {G.label(d)} straddles J and its complement")
    target = block_structure(S, J)
    if len(target.provenance.qds) < 2:
        raise BadCoordinates("the part has no lines of size >= 2")
    H = target.provenance.group
    pts = []
    for x in range(G.order):
        res = G.residues(x)
        if all(res[i] == v for i, v in zip(rest, c)):
            pts.append(x)
    sub = restrict(S, pts, min_size=2)
    pmap = tuple(H.encode([G.residues(x)[j] for j in J]) for x in pts)
    lmap = []
    for l in sub.lines:
        img = frozenset(pmap[p] for p in l)
        cand = [tl for tl in target.point_lines[next(iter(img))] if target.line_sets[tl] == img]
        if len(cand) != 1:
            raise AssertionError("part is not isomorphic to the coordinate structure")
        lmap.append(cand[0])
    if sorted(lmap) != list(range(target.n_lines)):
        raise AssertionError("part is not isomorphic to the coordinate structure")
    return JPart(tuple(pts), sub, target, pmap, tuple(lmap))


# ---------------------------------------------------------------------------
# export


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def export(S: IncidenceStructure, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "points": [_jsonable(p) for p in S.points],
            "lines": [
                {"label": _jsonable(lab), "points": list(l)}
                for lab, l in zip(S.line_labels, S.lines)
            ],
        }
        if S.provenance is not None:
            G = S.provenance.group
            doc["group"] = G.to_description()
            doc["qds"] = [_jsonable(x) for x in S.provenance.qds.labels]
        return (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode()
    if fmt == "matrix":
        rows = []
        for p in range(S.n_points):
            on = set(S.point_lines[p])
            rows.append("".join("1" if l in on else "0" for l in range(S.n_lines)))
        return ("\n".join(rows) + "\n").encode() if rows else b""
    if fmt == "levi-dot":
        out = ["graph levi {"]
        out += [f"  p{i};" for i in range(S.n_points)]
        out += [f"  L{j};" for j in range(S.n_lines)]
        for p in range(S.n_points):
            for l in S.point_lines[p]:
                out.append(f"  p{p} -- L{l};")
        out.append("}")
        return ("\n".join(out) + "\n").encode()
    raise UnknownFormat(f"unknown export format {fmt!r}")

"""Automorphisms and isomorphisms of incidence structures.

The engine works on the Levi graph (points 0..P-1, lines P..P+L-1) with
colour refinement and individualization.  Refinement gives every vertex the
signature (colour, multiset of neighbour colours), the multiset being
summarized by a sum of 64-bit mixed colour hashes.  New colours are ranks of
the sorted distinct signatures, so two isomorphic colourings refine to
colourings that correspond under the isomorphism; a per-round digest of the
signatures (the trace) lets the two sides of a search be compared cheaply.

Automorphism groups are found bottom-up along one base path: at each level
every vertex of the target cell that is not yet in the known orbit is tested
by an exhaustive extension search, so the orbit lengths, and hence the order,
are exact.  Known automorphisms (translations) may be supplied as seeds;
they only speed up the orbit bookkeeping.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import groups
from .errors import (
    BadProvenance,
    InputError,
    LabelMapUnavailable,
    NoProvenance,
    NotGroupAutomorphism,
    OrderCapExceeded,
    SearchBudgetExceeded,
)
from .incidence import IncidenceStructure, build, sum_structure, factor_structures

DEFAULT_MAX_NODES = 1_000_000
ENUMERATION_CAP = 1_000_000  # group orders up to this are checked by enumeration
ENUMERATION_MEMORY = 20_000_000  # ... provided order * (points + lines) stays below this

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLD = np.uint64(0x9E3779B97F4A7C15)


def _mix(x):
    z = x.astype(np.uint64) * _GOLD + _GOLD
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class AutPair:
    point_perm: tuple
    line_perm: tuple

    def __call__(self, p):
        return self.point_perm[p]

    def compose(self, other: "AutPair") -> "AutPair":
        """self after other."""
        return AutPair(
            tuple(self.point_perm[x] for x in other.point_perm),
            tuple(self.line_perm[x] for x in other.line_perm),
        )

    def inverse(self) -> "AutPair":
        pp = [0] * len(self.point_perm)
        for i, x in enumerate(self.point_perm):
            pp[x] = i
        lp = [0] * len(self.line_perm)
        for i, x in enumerate(self.line_perm):
            lp[x] = i
        return AutPair(tuple(pp), tuple(lp))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.point_perm)) and all(
            i == x for i, x in enumerate(self.line_perm)
        )


def identity_pair(S: IncidenceStructure) -> AutPair:
    return AutPair(tuple(range(S.n_points)), tuple(range(S.n_lines)))


def is_automorphism(S: IncidenceStructure, f: AutPair, T: IncidenceStructure = None) -> bool:
    """True iff f maps the incidences of S bijectively onto those of T (default S)."""
    T = S if T is None else T
    if len(f.point_perm) != S.n_points or len(f.line_perm) != S.n_lines:
        return False
    if S.n_points != T.n_points or S.n_lines != T.n_lines:
        return False
    if sorted(f.point_perm) != list(range(T.n_points)) or sorted(f.line_perm) != list(range(T.n_lines)):
        return False
    for l, pts in enumerate(S.lines):
        img = T.line_sets[f.line_perm[l]]
        if len(img) != len(pts) or any(f.point_perm[p] not in img for p in pts):
            return False
    return True


def pair_from_point_map(S: IncidenceStructure, pmap, T: IncidenceStructure = None) -> Optional[AutPair]:
    """Line permutation induced by a point bijection, or None if lines are not mapped to lines."""
    T = S if T is None else T
    index = {}
    for l, s in enumerate(T.line_sets):
        index.setdefault(s, l)
    lp = []
    for pts in S.lines:
        l = index.get(frozenset(pmap[p] for p in pts))
        if l is None:
            return None
        lp.append(l)
    if len(set(lp)) != len(lp):
        return None
    return AutPair(tuple(pmap), tuple(lp))


# ---------------------------------------------------------------------------
# refinement engine


class _Levi:
    def __init__(self, S: IncidenceStructure):
        self.S = S
        P, L = S.n_points, S.n_lines
        self.P, self.L, self.V = P, L, P + L
        nbrs = [[P + l for l in S.point_lines[p]] for p in range(P)]
        nbrs += [list(l) for l in S.lines]
        self.indptr = np.zeros(self.V + 1, dtype=np.int64)
        self.indptr[1:] = np.cumsum([len(x) for x in nbrs])
        self.indices = np.fromiter((v for x in nbrs for v in x), dtype=np.int64, count=int(self.indptr[-1]))
        pts = np.repeat(np.arange(P, dtype=np.int64), [len(x) for x in S.point_lines])
        lns = np.array([l for p in range(P) for l in S.point_lines[p]], dtype=np.int64)
        self.edge_codes = np.sort(pts * max(L, 1) + lns)
        self.edge_pts, self.edge_lns = pts, lns
        self.is_point = np.zeros(self.V, dtype=bool)
        self.is_point[:P] = True

    def initial(self):
        c = np.zeros(self.V, dtype=np.int64)
        c[self.P:] = 1
        return c, (2 if self.L and self.P else 1)

    def refine(self, colours, ncol, expect=None):
        """Refine to an equitable colouring.  Returns (colours, ncol, trace), or
        None if ``expect`` is given and the trace deviates from it."""
        trace = []
        V = self.V
        while True:
            h = _mix(colours)
            cs = np.zeros(len(self.indices) + 1, dtype=np.uint64)
            np.cumsum(h[self.indices], dtype=np.uint64, out=cs[1:])
            nb = cs[self.indptr[1:]] - cs[self.indptr[:-1]]
            order = np.lexsort((nb, colours))
            kc, kn = colours[order], nb[order]
            new = np.empty(V, dtype=bool)
            new[0] = True
            new[1:] = (kc[1:] != kc[:-1]) | (kn[1:] != kn[:-1])
            ranks = np.cumsum(new) - 1
            starts = np.flatnonzero(new)
            sizes = np.diff(np.append(starts, V))
            dig = hashlib.blake2b(kc[new].tobytes() + kn[new].tobytes() + sizes.tobytes(), digest_size=16).digest()
            if expect is not None and (len(trace) >= len(expect) or expect[len(trace)] != dig):
                return None
            trace.append(dig)
            n2 = int(ranks[-1]) + 1
            out = np.empty(V, dtype=np.int64)
            out[order] = ranks
            if n2 == ncol:
                if expect is not None and len(trace) != len(expect):
                    return None
                return out, n2, trace
            colours, ncol = out, n2

    @staticmethod
    def individualize(colours, ncol, v):
        c = colours.copy()
        c[v] = ncol
        return c, ncol + 1

    def target_cell(self, colours, ncol):
        counts = np.bincount(colours, minlength=ncol)
        size = counts[colours]
        for mask in (self.is_point, ~self.is_point):
            cand = mask & (size > 1)
            if cand.any():
                cs = colours[cand]
                sz = size[cand]
                best = sz.min()
                col = cs[sz == best].min()
                return int(col), np.flatnonzero(colours == col)
        return None, None

    def leaf_map(self, ca, other, cb):
        inv = np.empty(other.V, dtype=np.int64)
        inv[cb] = np.arange(other.V)
        return inv[ca]

    def check_map(self, perm, other):
        """perm: vertex map self -> other.  True iff it is an incidence isomorphism."""
        P = self.P
        if not (perm[:P] < P).all():
            return False
        pp = perm[self.edge_pts]
        lp = perm[P + self.edge_lns] - other.P
        codes = np.sort(pp * max(other.L, 1) + lp)
        return np.array_equal(codes, other.edge_codes)


class _Budget:
    def __init__(self, max_nodes):
        self.max_nodes = max_nodes
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SearchBudgetExceeded(f"search exceeded {self.max_nodes} nodes")


def _extend(A, ca, na, ta, B, cb, nb, budget, b_gens=None):
    """Search for an isomorphism A -> B extending the (trace-equal) colourings."""
    if na == A.V:
        perm = A.leaf_map(ca, B, cb)
        return perm if A.check_map(perm, B) else None
    col, cell = A.target_cell(ca, na)
    va = int(cell[0])
    budget.tick()
    ca2, na2, ta2 = A.refine(*A.individualize(ca, na, va))
    cands = np.flatnonzero(cb == col)
    tried_orbits = None
    if b_gens:
        tried_orbits = _UnionFind(B.V)
        for g in b_gens:
            tried_orbits.union_perm(g)
        seen_roots = set()
    for vb in cands:
        vb = int(vb)
        if tried_orbits is not None:
            r = tried_orbits.find(vb)
            if r in seen_roots:
                continue
            seen_roots.add(r)
        budget.tick()
        res = B.refine(*B.individualize(cb, nb, vb), expect=ta2)
        if res is None:
            continue
        perm = _extend(A, ca2, na2, ta2, B, res[0], res[1], budget)
        if perm is not None:
            return perm
    return None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def union_perm(self, g):
        for v, w in enumerate(g.tolist() if hasattr(g, "tolist") else g):
            if v != w:
                self.union(v, w)


# ---------------------------------------------------------------------------
# groups of automorphisms


@dataclass
class PermGroup:
    generators: list
    order: int
    base: tuple = ()
    orbit_sizes: tuple = ()
    verified_by: str = "stabilizer chain"
    nodes: int = 0
    n_points: int = 0
    n_lines: int = 0

    def elements(self, cap: int = ENUMERATION_CAP) -> list:
        """All group elements as AutPairs (only for small groups)."""
        if self.order > cap:
            raise OrderCapExceeded(f"group order {self.order} exceeds enumeration cap {cap}")
        vs = _enumerate([_to_vec(g) for g in self.generators], self.n_points + self.n_lines, cap)
        return [_to_pair(v, self.n_points) for v in vs]

    def point_orbits(self) -> list:
        uf = _UnionFind(self.n_points)
        for g in self.generators:
            uf.union_perm(g.point_perm)
        orbits = {}
        for p in range(self.n_points):
            orbits.setdefault(uf.find(p), []).append(p)
        return sorted(orbits.values())


def _to_vec(g: AutPair):
    P = len(g.point_perm)
    return np.array(list(g.point_perm) + [P + x for x in g.line_perm], dtype=np.int64)


def _to_pair(v, P):
    v = v.tolist() if hasattr(v, "tolist") else list(v)
    return AutPair(tuple(v[:P]), tuple(x - P for x in v[P:]))


def _enumerate(gens, V, cap):
    ident = np.arange(V, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                k = y.tobytes()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrderCapExceeded(f"group has more than {cap} elements")
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def _group_generators(G):
    if G.kind == "cyclic_product":
        out = []
        for i in range(len(G.moduli)):
            v = [0] * len(G.moduli)
            v[i] = 1
            out.append(G.encode(v))
        return out
    return groups._generating_set(G.table, G.identity)


def translation(S: IncidenceStructure, a) -> AutPair:
    """The left translation x -> a.x as an automorphism (``a`` an element index or a tuple label)."""
    P = S.provenance
    if P is None:
        raise NoProvenance("translations need a structure built from a group")
    G = P.group
    a = int(a) if isinstance(a, (int, np.integer)) else G.index(a)
    pp = tuple(G.op(a, x) for x in range(G.order))
    lp = tuple(P.line_of[G.op(a, G.index(lab))] for lab in S.line_labels)
    return AutPair(pp, lp)


def translations(S: IncidenceStructure) -> list:
    P = S.provenance
    if P is None:
        raise NoProvenance("translations need a structure built from a group")
    return [translation(S, i) for i in range(P.group.order)]


def _seed_translations(S):
    if S.provenance is None:
        return []
    return [translation(S, g) for g in _group_generators(S.provenance.group)]


def automorphism_group(
    S: IncidenceStructure,
    fixed=(),
    seeds=None,
    max_nodes: int = DEFAULT_MAX_NODES,
    enumeration_cap: int = ENUMERATION_CAP,
) -> PermGroup:
    """Exact automorphism group (optionally the pointwise stabilizer of ``fixed``)."""
    E = _Levi(S)
    budget = _Budget(max_nodes)
    fixed = [S.point_index(p) for p in fixed]
    c, n = E.initial()
    for p in fixed:
        c, n = E.individualize(c, n, p)
    c, n, _ = E.refine(c, n)
    # first path down to a discrete colouring
    path = []
    while n < E.V:
        col, cell = E.target_cell(c, n)
        v = int(cell[0])
        budget.tick()
        c2, n2, t2 = E.refine(*E.individualize(c, n, v))
        path.append((c, n, cell, v, c2, n2, t2))
        c, n = c2, n2

    if seeds is None:
        seeds = _seed_translations(S) if not fixed else []
    gens = []
    for g in seeds:
        if not is_automorphism(S, g):
            raise InputError("a seed is not an automorphism")
        vec = _to_vec(g)
        if all(vec[p] == p for p in fixed) and not g.is_identity():
            gens.append(vec)

    base = tuple(step[3] for step in path)
    orbit_sizes = [0] * len(path)
    for level in range(len(path) - 1, -1, -1):
        c, n, cell, v, c2, n2, t2 = path[level]
        prefix = base[:level]

        def level_gens():
            return [g for g in gens if all(g[b] == b for b in prefix)]

        uf = _UnionFind(E.V)
        for g in level_gens():
            uf.union_perm(g)
        excluded = set()
        for w in cell:
            w = int(w)
            r = uf.find(w)
            if r == uf.find(v) or r in excluded:
                continue
            budget.tick()
            res = E.refine(*E.individualize(c, n, w), expect=t2)
            perm = None
            if res is not None:
                perm = _extend(E, c2, n2, t2, E, res[0], res[1], budget)
            if perm is None:
                excluded.add(r)
            else:
                gens.append(perm)
                uf.union_perm(perm)
                excluded = {uf.find(x) for x in excluded}
        root = uf.find(v)
        orbit_sizes[level] = sum(1 for w in cell if uf.find(int(w)) == root)

    order = math.prod(orbit_sizes) if orbit_sizes else 1
    pairs = sorted({_to_pair(g, E.P) for g in gens}, key=lambda g: (g.point_perm, g.line_perm))
    group = PermGroup(pairs, order, base, tuple(orbit_sizes), "stabilizer chain", budget.nodes, E.P, E.L)
    if order <= enumeration_cap and order * E.V <= ENUMERATION_MEMORY:
        count = len(_enumerate([_to_vec(g) for g in pairs], E.V, enumeration_cap))
        if count != order:
            raise AssertionError(f"enumeration found {count} elements, chain gave {order}")
        group.verified_by = "enumeration"
    return group


def stabilizer(S: IncidenceStructure, point, **kw) -> PermGroup:
    return automorphism_group(S, fixed=(point,), **kw)


@dataclass(frozen=True)
class Isomorphism:
    point_map: tuple
    line_map: tuple


def isomorphism(S1: IncidenceStructure, S2: IncidenceStructure, max_nodes: int = DEFAULT_MAX_NODES):
    """An isomorphism S1 -> S2, or None when none exists (search is exhaustive)."""
    if (S1.n_points, S1.n_lines) != (S2.n_points, S2.n_lines):
        return None
    if sorted(S1.degrees()) != sorted(S2.degrees()) or sorted(S1.sizes()) != sorted(S2.sizes()):
        return None
    A, B = _Levi(S1), _Levi(S2)
    budget = _Budget(max_nodes)
    ca, na, ta = A.refine(*A.initial())
    res = B.refine(*B.initial(), expect=ta)
    if res is None:
        return None
    b_gens = [_to_vec(g) for g in _seed_translations(S2)]
    perm = _extend(A, ca, na, ta, B, res[0], res[1], budget, b_gens)
    if perm is None:
        return None
    pair = _to_pair(perm, A.P)
    return Isomorphism(pair.point_perm, pair.line_perm)


# ---------------------------------------------------------------------------
# constructions on structures built from groups


def _need(S):
    if S.provenance is None:
        raise NoProvenance("this operation needs a structure built from a group")
    return S.provenance


def _as_map(G, f):
    """Index map of a user map given as callable, dict or sequence of labels."""
    out = []
    for x in range(G.order):
        lab = G.label(x)
        if callable(f):
            y = f(lab)
        elif isinstance(f, dict):
            y = f[lab]
        else:
            y = f[x]
        out.append(G.index(y))
    return out


@dataclass
class Lift:
    pair: AutPair
    q: object
    structure: IncidenceStructure = field(repr=False, default=None)


def lift_group_automorphism(G, f, D) -> Optional[Lift]:
    """Induced automorphism of D(G, D) when f(D) = q.D, with the witness q."""
    G = groups.make_group(G)
    fm = _as_map(G, f)
    if sorted(fm) != list(range(G.order)):
        raise NotGroupAutomorphism("map is not a bijection")
    for g in _group_generators(G):
        for a in range(G.order):
            if fm[G.op(a, g)] != G.op(fm[a], fm[g]):
                raise NotGroupAutomorphism("map is not a homomorphism")
    S = build(G, D)
    Dq = S.provenance.qds
    img = sorted(fm[d] for d in Dq.elements)
    img_set = set(img)
    for d in Dq.elements:
        q = G.op(img[0], G.inv(d))
        if {G.op(q, x) for x in Dq.elements} == img_set:
            break
    else:
        return None
    # [a] -> [q f(a)]
    lp = tuple(S.provenance.line_of[G.op(q, fm[G.index(lab)])] for lab in S.line_labels)
    pair = AutPair(tuple(fm), lp)
    if not is_automorphism(S, pair):
        raise AssertionError("lifted map is not an automorphism")
    return Lift(pair, G.label(q), S)


def _power_blocks(S):
    P = _need(S)
    G = P.group
    if P.blocks is None or G.kind != "cyclic_product":
        raise BadProvenance("structure is not a sum over cyclic products")
    facs = factor_structures(S)
    first = facs[0].provenance
    for F in facs[1:]:
        if F.provenance.group.moduli != first.group.moduli or F.provenance.qds.elements != first.qds.elements:
            raise BadProvenance("structure is not a power of a single factor")
    return P.blocks


def coordinate_permutation_aut(S: IncidenceStructure, beta) -> AutPair:
    """Automorphism of a power moving block i to block beta[i]."""
    blocks = _power_blocks(S)
    beta = list(beta)
    if sorted(beta) != list(range(len(blocks))):
        raise InputError("beta must be a permutation of the blocks")
    G = S.provenance.group

    def h(x):
        r = G.residues(x)
        out = [0] * len(r)
        for i, b in enumerate(blocks):
            for pos_from, pos_to in zip(b, blocks[beta[i]]):
                out[pos_to] = r[pos_from]
        return G.encode(out)

    pp = tuple(h(x) for x in range(G.order))
    lp = tuple(S.provenance.line_of[h(G.index(lab))] for lab in S.line_labels)
    pair = AutPair(pp, lp)
    if not is_automorphism(S, pair):
        raise AssertionError("coordinate permutation failed to be an automorphism")
    return pair


def product_automorphism(S: IncidenceStructure, fs) -> Optional[AutPair]:
    """Product of per-factor automorphisms, or None when some factor has
    a line map that disagrees with its point map on coset labels."""
    P = _need(S)
    G = P.group
    if P.blocks is None:
        raise BadProvenance("structure is not a sum over cyclic products")
    facs = factor_structures(S)
    if len(fs) != len(facs):
        raise BadProvenance(f"expected {len(facs)} factor maps")
    for F, f in zip(facs, fs):
        if not is_automorphism(F, f):
            raise InputError("factor map is not an automorphism of its factor")
        lo = F.provenance.line_of
        for a in range(F.n_points):
            if f.line_perm[lo[a]] != lo[f.point_perm[a]]:
                return None

    def h(x):
        r = list(G.residues(x))
        out = [0] * len(r)
        for F, f, b in zip(facs, fs, P.blocks):
            H = F.provenance.group
            y = H.residues(f.point_perm[H.encode([r[i] for i in b])])
            for pos, v in zip(b, y):
                out[pos] = v
        return G.encode(out)

    pp = tuple(h(x) for x in range(G.order))
    lp = tuple(P.line_of[h(G.index(lab))] for lab in S.line_labels)
    pair = AutPair(pp, lp)
    if not is_automorphism(S, pair):
        raise AssertionError("product map failed to be an automorphism")
    return pair


@dataclass
class CyclicLift:
    closes: bool
    fails_at: Optional[int]
    point_maps: list  # f'_0, f'_1, ... as index tuples
    automorphism: Optional[AutPair] = None
    structure: Optional[IncidenceStructure] = field(repr=False, default=None)


def _label_map(S0, f: AutPair):
    """The map b -> f''(b) with f([b]) = [f''(b)]."""
    P = S0.provenance
    G = P.group
    return tuple(G.index(S0.line_labels[f.line_perm[P.line_of[b]]]) for b in range(G.order))


def cyclic_lift(S0: IncidenceStructure, f: AutPair, k: int, build_structure: bool = True) -> CyclicLift:
    """Iterate f'_{i+1} = f''_i on D(G0, D0) and test whether it closes after k steps."""
    P = _need(S0)
    if len(P.stabilizer) != 1:
        raise LabelMapUnavailable("line labels are not unique (nontrivial stabilizer)")
    if not is_automorphism(S0, f):
        raise InputError("f is not an automorphism")
    seq = [f]
    maps = [f.point_perm]
    for i in range(1, k + 1):
        nxt = pair_from_point_map(S0, _label_map(S0, seq[-1]))
        if nxt is None:
            return CyclicLift(False, i, maps)
        seq.append(nxt)
        maps.append(nxt.point_perm)
    if maps[k] != maps[0]:
        return CyclicLift(False, k, maps)
    if not build_structure:
        return CyclicLift(True, None, maps[:k])
    G0 = P.group
    Ck = groups.cyclic(k)
    M = sum_structure(build(Ck, [0, 1]), S0)
    GM = M.provenance.group
    n0 = G0.order
    pp = tuple(i * n0 + maps[i][a] for i in range(k) for a in range(n0))
    lmaps = [_label_map(S0, seq[i]) for i in range(k)]
    lp = []
    for lab in M.line_labels:
        x = GM.index(lab)
        i, b = divmod(x, n0)
        lp.append(M.provenance.line_of[i * n0 + lmaps[i][b]])
    pair = AutPair(pp, tuple(lp))
    if not is_automorphism(M, pair):
        raise AssertionError("lifted sequence is not an automorphism")
    return CyclicLift(True, None, maps[:k], pair, M)


@dataclass
class TranslationReport:
    translations_are_automorphisms: bool
    transitive: bool
    normal: bool
    order_factorizes: bool
    stabilizer_matches: bool
    trivial_intersection: bool
    aut_order: int
    group_order: int
    stabilizer_order: int

    @property
    def passed(self) -> bool:
        return all((self.translations_are_automorphisms, self.transitive, self.normal,
                    self.order_factorizes, self.stabilizer_matches, self.trivial_intersection))

    def as_dict(self):
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def verify_translation_structure(S: IncidenceStructure, expected_stabilizer_order=None,
                                 aut: PermGroup = None, stab: PermGroup = None, **kw) -> TranslationReport:
    """Structural check of Aut(S) = (stabilizer of a point) . (translations)."""
    P = _need(S)
    G = P.group
    aut = aut or automorphism_group(S, **kw)
    stab = stab or stabilizer(S, 0, **kw)
    tgens = _seed_translations(S)
    ok_aut = all(is_automorphism(S, t) for t in tgens)
    uf = _UnionFind(S.n_points)
    for t in tgens:
        uf.union_perm(t.point_perm)
    transitive = len({uf.find(p) for p in range(S.n_points)}) == 1
    normal = True
    for g in aut.generators:
        gi = g.inverse()
        for t in tgens:
            c = g.compose(t).compose(gi)
            a = c.point_perm[G.identity]
            # a translation is determined by the image of the identity
            tau = tuple(G.op(a, x) for x in range(G.order))
            if c.point_perm != tau:
                normal = False
    # translations act regularly, so only the identity fixes a point
    trivial = all(G.op(a, G.identity) != G.identity for a in range(G.order) if a != G.identity)
    return TranslationReport(
        ok_aut,
        transitive,
        normal,
        aut.order == G.order * stab.order,
        expected_stabilizer_order is None or stab.order == expected_stabilizer_order,
        trivial,
        aut.order,
        G.order,
        stab.order,
    )

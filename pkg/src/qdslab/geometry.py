"""Axiom checks (Veblen, Desargues, Pappus, triangle completion) and the
line-size profiles of neighborhoods in powers of cyclic planes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import groups
from .errors import BadProvenance, NotPls, SearchBudgetExceeded
from .incidence import IncidenceStructure, build, is_pls, neighborhood, sum_structure
from .qds import canonical_set, diff_profile, pappus_condition

DEFAULT_MAX_STEPS = 10_000_000


class _Steps:
    def __init__(self, cap):
        self.cap = cap
        self.n = 0

    def tick(self, k=1):
        self.n += k
        if self.n > self.cap:
            raise SearchBudgetExceeded(f"check exceeded {self.cap} steps")


def _require_pls(S):
    if not is_pls(S):
        raise NotPls("structure is not a partial linear space")


def _meeting_lines(S):
    out = []
    for l, pts in enumerate(S.lines):
        m = set()
        for p in pts:
            m.update(S.point_lines[p])
        m.discard(l)
        out.append(m)
    return out


def _meet(S, l1, l2):
    c = S.line_sets[l1] & S.line_sets[l2]
    return next(iter(c)) if c else None


def _join(S, a, b):
    ls = S.joins[a].get(b)
    return ls[0] if ls else None


def _on_common_line(S, pts):
    pts = sorted(set(pts))
    if len(pts) <= 1:
        return True
    l = _join(S, pts[0], pts[1])
    return l is not None and all(p in S.line_sets[l] for p in pts[2:])


# ---------------------------------------------------------------------------
# Veblen


@dataclass
class VeblenReport:
    holds: bool
    counterexample: Optional[tuple] = None  # (a, b1, b2, g1, g2)

    def __bool__(self):
        return self.holds


def veblen_check(S: IncidenceStructure, max_steps: int = DEFAULT_MAX_STEPS) -> VeblenReport:
    """Two lines b1, b2 through a point a; any two lines missing a that cross
    both b1 and b2 must meet."""
    _require_pls(S)
    steps = _Steps(max_steps)
    meets = _meeting_lines(S)
    for a in range(S.n_points):
        through = S.point_lines[a]
        for b1, b2 in combinations(through, 2):
            T = sorted(g for g in meets[b1] & meets[b2] if a not in S.line_sets[g])
            for g1, g2 in combinations(T, 2):
                steps.tick()
                if g2 not in meets[g1]:
                    return VeblenReport(False, (a, b1, b2, g1, g2))
    return VeblenReport(True)


def replay_veblen(S, cex) -> bool:
    """True iff ``cex`` really violates the Veblen condition."""
    a, b1, b2, g1, g2 = cex
    ok = a in S.line_sets[b1] and a in S.line_sets[b2] and b1 != b2 and g1 != g2
    for g in (g1, g2):
        ok = ok and a not in S.line_sets[g]
        ok = ok and _meet(S, g, b1) is not None and _meet(S, g, b2) is not None
    return ok and _meet(S, g1, g2) is None


# ---------------------------------------------------------------------------
# Desargues


@dataclass
class DesarguesReport:
    holds: bool
    counterexample: Optional[dict] = None
    checked: int = 0

    def __bool__(self):
        return self.holds


def _is_triangle(S, x, y, z):
    lxy, lyz, lzx = _join(S, x, y), _join(S, y, z), _join(S, z, x)
    if lxy is None or lyz is None or lzx is None:
        return None
    if len({lxy, lyz, lzx}) != 3:
        return None
    return lxy, lyz, lzx


def desargues_check(S: IncidenceStructure, max_steps: int = DEFAULT_MAX_STEPS) -> DesarguesReport:
    """Centrally perspective triangles whose corresponding sides all meet
    must have collinear meeting points."""
    _require_pls(S)
    steps = _Steps(max_steps)
    checked = 0
    for o in range(S.n_points):
        for A, B, C in combinations(S.point_lines[o], 3):
            pa = [p for p in S.lines[A] if p != o]
            pb = [p for p in S.lines[B] if p != o]
            pc = [p for p in S.lines[C] if p != o]
            tris = []
            for x in pa:
                for y in pb:
                    for z in pc:
                        steps.tick()
                        sides = _is_triangle(S, x, y, z)
                        if sides is not None:
                            tris.append(((x, y, z), sides))
            for (t1, s1), (t2, s2) in combinations(tris, 2):
                if t1[0] == t2[0] or t1[1] == t2[1] or t1[2] == t2[2]:
                    continue
                steps.tick()
                m = [_meet(S, u, v) for u, v in zip(s1, s2)]
                if None in m:
                    continue
                checked += 1
                if not _on_common_line(S, m):
                    cex = {"center": o, "lines": (A, B, C), "triangles": (t1, t2), "meets": tuple(m)}
                    return DesarguesReport(False, cex, checked)
    return DesarguesReport(True, None, checked)


# ---------------------------------------------------------------------------
# Pappus


def pappus_configuration() -> IncidenceStructure:
    D = canonical_set([3, 3])
    return build(D.group, D, name="pappus")


# image of each Pappus point / line, as a function of d1..d4 (additive notation)
_TABLE_POINTS = {
    (0, 0): lambda d1, d2, d3, d4, G: G.identity,
    (1, 0): lambda d1, d2, d3, d4, G: d1,
    (0, 1): lambda d1, d2, d3, d4, G: d3,
    (1, 2): lambda d1, d2, d3, d4, G: G.inv(d2),
    (2, 1): lambda d1, d2, d3, d4, G: G.inv(d4),
    (1, 1): lambda d1, d2, d3, d4, G: G.op(G.inv(d2), G.inv(d4)),
    (2, 2): lambda d1, d2, d3, d4, G: G.op(d1, d3),
    (0, 2): lambda d1, d2, d3, d4, G: G.op(G.inv(d2), d3),
    (2, 0): lambda d1, d2, d3, d4, G: G.op(G.inv(d4), d1),
}
_TABLE_LINES = {
    (0, 0): lambda d1, d2, d3, d4, G: G.identity,
    (1, 1): lambda d1, d2, d3, d4, G: G.op(G.inv(d2), G.inv(d4)),
    (2, 2): lambda d1, d2, d3, d4, G: G.op(d1, d3),
    (0, 2): lambda d1, d2, d3, d4, G: G.inv(d2),
    (2, 0): lambda d1, d2, d3, d4, G: G.inv(d4),
    (1, 2): lambda d1, d2, d3, d4, G: d1,
    (1, 0): lambda d1, d2, d3, d4, G: G.op(d1, G.inv(d4)),
    (2, 1): lambda d1, d2, d3, d4, G: d3,
    (0, 1): lambda d1, d2, d3, d4, G: G.op(d3, G.inv(d2)),
}


@dataclass
class PappusEmbedding:
    point_map: tuple  # Pappus point index -> point index
    line_map: tuple  # Pappus line index -> line index
    method: str  # "table" or "search"
    witness: Optional[tuple] = None


def _embedding_ok(Pp, S, pm, lm):
    if len(set(pm)) != 9 or len(set(lm)) != 9:
        return False
    for l in range(Pp.n_lines):
        for p in range(Pp.n_points):
            if (p in Pp.line_sets[l]) != (pm[p] in S.line_sets[lm[l]]):
                return False
    return True


def table_embedding(S: IncidenceStructure, witness=None) -> Optional[PappusEmbedding]:
    """Explicit embedding from d1..d4 with 2 d1 = -d2, 2 d3 = -d4."""
    prov = S.provenance
    if prov is None or not prov.group.is_abelian:
        return None
    G = prov.group
    if witness is None:
        witness = pappus_condition(G, prov.qds)
    if witness is None:
        return None
    d = [G.index(x) for x in witness]
    Pp = pappus_configuration()
    PG = Pp.provenance.group
    pm = [0] * 9
    for lab, f in _TABLE_POINTS.items():
        pm[Pp.point_index(lab)] = f(*d, G)
    lm = [0] * 9
    for lab, f in _TABLE_LINES.items():
        lm[Pp.provenance.line_of[PG.index(lab)]] = prov.line_of[f(*d, G)]
    if not _embedding_ok(Pp, S, pm, lm):
        return None
    return PappusEmbedding(tuple(pm), tuple(lm), "table", tuple(witness))


def pappus_embed(S: IncidenceStructure, max_steps: int = DEFAULT_MAX_STEPS, use_table: bool = True):
    """An embedding of the Pappus 9_3 configuration (incidence and
    non-incidence preserved), or None."""
    _require_pls(S)
    if use_table and S.provenance is not None and S.provenance.group.is_abelian:
        emb = table_embedding(S)
        if emb is not None:
            return emb
    return _search_pappus(S, max_steps)


def _search_pappus(S, max_steps):
    Pp = pappus_configuration()
    steps = _Steps(max_steps)
    # BFS order over Pappus points so each new point is collinear with an earlier one
    order = [0]
    while len(order) < 9:
        for p in order:
            for q in sorted(Pp.joins[p]):
                if q not in order:
                    order.append(q)
        order = order[:9]
    pm = [-1] * 9
    lm = [-1] * 9
    used_pts = set()
    used_lines = set()
    transitive = S.provenance is not None

    def consistent(p):
        # lines of the Pappus point p: fix their images where possible
        newly = []
        x = pm[p]
        for l in Pp.point_lines[p]:
            others = [q for q in Pp.lines[l] if q != p and pm[q] >= 0]
            if lm[l] >= 0:
                if x not in S.line_sets[lm[l]]:
                    return False, newly
                continue
            if not others:
                continue
            ll = _join(S, x, pm[others[0]])
            if ll is None or ll in used_lines:
                return False, newly
            if any(pm[q] not in S.line_sets[ll] for q in others):
                return False, newly
            lm[l] = ll
            used_lines.add(ll)
            newly.append(l)
        # non-incidence against all fixed line images
        for l in range(9):
            if lm[l] < 0:
                continue
            for q in range(9):
                if pm[q] >= 0 and (q in Pp.line_sets[l]) != (pm[q] in S.line_sets[lm[l]]):
                    return False, newly
        return True, newly

    def rec(k):
        if k == 9:
            return True
        p = order[k]
        cands = None
        for l in Pp.point_lines[p]:
            if lm[l] >= 0:
                c = set(S.lines[lm[l]])
                cands = c if cands is None else cands & c
        if cands is None:
            for q in order[:k]:
                if q in Pp.joins[p]:
                    c = set(S.joins[pm[q]])
                    cands = c if cands is None else cands & c
        if cands is None:
            cands = {0} if (k == 0 and transitive) else set(range(S.n_points))
        for x in sorted(cands - used_pts):
            steps.tick()
            pm[p] = x
            used_pts.add(x)
            ok, newly = consistent(p)
            if ok and rec(k + 1):
                return True
            for l in newly:
                used_lines.discard(lm[l])
                lm[l] = -1
            used_pts.discard(x)
            pm[p] = -1
        return False

    if not rec(0):
        return None
    if not _embedding_ok(Pp, S, pm, lm):
        raise AssertionError("Pappus search produced an invalid embedding")
    return PappusEmbedding(tuple(pm), tuple(lm), "search")


# ---------------------------------------------------------------------------
# triangle completion


def completion_points(S: IncidenceStructure, o: int, L2: int, p: int) -> list:
    """Points q != o on L2 collinear with p."""
    return [q for q in S.lines[L2] if q != o and q != p and q in S.joins[p]]


@dataclass
class CompletionReport:
    holds: bool
    exact: bool
    counts: dict  # 0, 1 and 2 (meaning two or more) -> number of triples
    first_failure: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def unique_completion_check(S: IncidenceStructure) -> CompletionReport:
    """For o, lines L1 != L2 through o and p != o on L1 count the points
    q != o on L2 collinear with p.  ``holds`` allows one uncompletable p per
    (o, L1, L2); ``exact`` requires exactly one completion everywhere."""
    counts = {0: 0, 1: 0, 2: 0}
    holds, first = True, None
    for o in range(S.n_points):
        for L1 in S.point_lines[o]:
            for L2 in S.point_lines[o]:
                if L1 == L2:
                    continue
                zeros = 0
                for p in S.lines[L1]:
                    if p == o:
                        continue
                    c = min(len(completion_points(S, o, L2, p)), 2)
                    counts[c] += 1
                    if c == 2 or (c == 0 and zeros == 1):
                        if holds:
                            first = (o, L1, L2, p)
                        holds = False
                    zeros += c == 0
    return CompletionReport(holds, counts[0] == 0 and counts[2] == 0, counts, first)


def multipappus_completion(n: int, k: int, i: int, j: int):
    """Predicted residue vector of the unique completion point in
    D((C3)^n, {e0..en}) for theta, lines [-e_i], [-e_k] and point -e_k + e_j."""

    def e(t):
        v = [0] * n
        if t:
            v[t - 1] = 1
        return v

    a = e(i)
    b = e(j) if i != j else e(k)
    return tuple((y - x) % 3 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# neighborhoods of multiplied configurations


def multiplied_neighborhood_prediction(k: int, G, D) -> set:
    """Line labels (as element indices of C_k + G) with at least two points
    in the neighborhood of (0, theta) in D(C_k,{0,1}) + D(G, D)."""
    G = groups.make_group(G)
    base = build(G, D)
    Dq = base.provenance.qds
    n = G.order
    d = list(Dq.elements)

    def lab(level, b):
        return (level % k) * n + b

    pred = set()
    nb = neighborhood(base, G.identity)
    for l, _ in nb.lines:
        pred.add(lab(0, G.index(base.line_labels[l])))
    pred.add(lab(-1, G.identity))
    for di in d:
        for dj in d:
            if di == dj:
                continue
            pred.add(lab(-1, G.op(G.inv(dj), di)))
            pred.add(lab(1, G.inv(G.op(di, dj))))
    if k == 3:
        for di in d:
            for dj in d:
                for dr in d:
                    if G.op(G.op(di, dj), dr) == G.identity:
                        pred.add(lab(1, dr))
    return pred


def multiplied_neighborhood_lines(k: int, G, D) -> set:
    """The same set computed from the built structure."""
    G = groups.make_group(G)
    M = sum_structure(build(groups.cyclic(k), [0, 1]), build(G, D))
    GM = M.provenance.group
    nb = neighborhood(M, GM.identity)
    out = set()
    for l, _ in nb.lines:
        out.add(GM.index(M.line_labels[l]))
    return out


# ---------------------------------------------------------------------------
# powers of cyclic planes


@dataclass
class PowerProfile:
    k: int
    n: int
    base: tuple
    size4_admissible: tuple
    size3_admissible: tuple
    size4_lines: list = field(default_factory=list)  # residue labels
    size3_lines: list = field(default_factory=list)
    size4_per_pair: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    kroski_ok: bool = True
    diff_supp_ok: bool = True
    local_sizes: dict = field(default_factory=dict)  # size -> count among |supp| = 2 lines

    @property
    def matches(self) -> bool:
        return not self.mismatches and self.kroski_ok and self.diff_supp_ok


def _power_base(S):
    prov = S.provenance
    if prov is None or prov.group.kind != "cyclic_product" or prov.blocks is None:
        raise BadProvenance("need a power of a cyclic plane")
    G = prov.group
    if any(len(b) != 1 for b in prov.blocks) or len(set(G.moduli)) != 1:
        raise BadProvenance("need a power of a structure over a cyclic group")
    k = G.moduli[0]
    n = len(G.moduli)
    sets = []
    for i in range(n):
        s = set()
        for x in prov.qds.elements:
            r = G.residues(x)
            if all(v == 0 for j, v in enumerate(r) if j != i):
                s.add(r[i])
        sets.append(tuple(sorted(s)))
    if len(set(sets)) != 1:
        raise BadProvenance("the factors differ")
    return k, n, sets[0]


def power_line_profile(S: IncidenceStructure) -> PowerProfile:
    """Local sizes, in the neighborhood of theta, of the lines [y] of a power
    of a cyclic plane, compared with the predictions from D's set arithmetic."""
    k, n, base = _power_base(S)
    G = S.provenance.group
    Ck = groups.cyclic(k)
    prof = diff_profile(Ck, base)
    s4, s3 = set(prof.size4_admissible), set(prof.size3_admissible)
    out = PowerProfile(k, n, base, tuple(sorted(s4)), tuple(sorted(s3)))
    nb = neighborhood(S, G.identity)
    local = nb.local_size
    for l, lab in enumerate(S.line_labels):
        y = G.residues(G.index(lab))
        sup = [i for i, v in enumerate(y) if v]
        size = local.get(l, 0)
        if size and len(sup) > 3:
            out.kroski_ok = False
        if len(sup) == 3 and size and size != 2:
            out.kroski_ok = False
        if len(sup) != 2:
            continue
        out.local_sizes[size] = out.local_sizes.get(size, 0) + 1
        a, b = y[sup[0]], y[sup[1]]
        pred4 = a in s4 and b in s4
        pred3 = (a in s4 and b in s3) or (a in s3 and b in s4)
        if size == 4:
            out.size4_lines.append(y)
            key = tuple(sup)
            out.size4_per_pair[key] = out.size4_per_pair.get(key, 0) + 1
        if size == 3:
            out.size3_lines.append(y)
        if (size == 4) != pred4 or (size == 3) != pred3:
            out.mismatches.append((y, size))
    # every element of D - D (D the full power set) has support of size <= 2
    D = S.provenance.qds.elements
    for a in D:
        for b in D:
            if len([v for v in G.residues(G.op(a, G.inv(b))) if v]) > 2:
                out.diff_supp_ok = False
    return out

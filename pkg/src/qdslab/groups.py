"""Finite groups: products of cyclic groups natively, anything else by Cayley table.

Elements are handled internally as integer indices ``0 .. order-1``.  For a
cyclic product the index is the mixed-radix encoding of the residue vector
(first coordinate most significant), so numeric order on indices coincides
with lexicographic order on residues.  The user-facing *label* of an element
is an ``int`` for a single cyclic factor or a Cayley table, and a tuple of
residues otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    ElementOutOfRange,
    InputError,
    NonGroupTable,
    NotAbelian,
    NotCyclic,
    OrderCapExceeded,
)

CYCLIC_ORDER_CAP = 1_000_000
CAYLEY_ORDER_CAP = 4096


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    moduli: tuple = ()
    table: tuple = ()
    identity_index: int = 0
    order: int = field(default=0, compare=False)

    # -- encoding -------------------------------------------------------

    @cached_property
    def _strides(self):
        strides = []
        s = 1
        for m in reversed(self.moduli):
            strides.append(s)
            s *= m
        return tuple(reversed(strides))

    @cached_property
    def _residue_table(self):
        # only materialized for small groups; big ones decode on the fly
        if self.kind != "cyclic_product" or self.order > 200_000:
            return None
        return [self._decode(i) for i in range(self.order)]

    def _decode(self, i):
        out = []
        for m, s in zip(self.moduli, self._strides):
            out.append((i // s) % m)
        return tuple(out)

    def residues(self, i: int) -> tuple:
        tab = self._residue_table
        return tab[i] if tab is not None else self._decode(i)

    def encode(self, residues: Sequence[int]) -> int:
        return sum((r % m) * s for r, m, s in zip(residues, self.moduli, self._strides))

    def label(self, i: int):
        if self.kind == "cayley" or len(self.moduli) == 1:
            return i
        return self.residues(i)

    def index(self, label) -> int:
        """Index of a user-facing label; raises ElementOutOfRange."""
        if self.kind == "cayley":
            if isinstance(label, bool) or not isinstance(label, int) or not 0 <= label < self.order:
                raise ElementOutOfRange(f"{label!r} is not an element of a group of order {self.order}")
            return label
        if isinstance(label, int) and not isinstance(label, bool):
            if len(self.moduli) != 1:
                raise ElementOutOfRange(f"expected {len(self.moduli)} residues, got {label!r}")
            label = (label,)
        try:
            label = tuple(label)
        except TypeError:
            raise ElementOutOfRange(f"bad element {label!r}") from None
        if len(label) != len(self.moduli):
            raise ElementOutOfRange(f"expected {len(self.moduli)} residues, got {label!r}")
        for r, m in zip(label, self.moduli):
            if isinstance(r, bool) or not isinstance(r, int) or not 0 <= r < m:
                raise ElementOutOfRange(f"{label!r} out of range for moduli {list(self.moduli)}")
        return self.encode(label)

    # -- arithmetic on indices ------------------------------------------

    def op(self, a: int, b: int) -> int:
        if self.kind == "cayley":
            return self.table[a][b]
        ra, rb = self.residues(a), self.residues(b)
        return self.encode([x + y for x, y in zip(ra, rb)])

    def inv(self, a: int) -> int:
        if self.kind == "cayley":
            return self._inverses[a]
        return self.encode([-x for x in self.residues(a)])

    def power(self, a: int, k: int) -> int:
        if self.kind == "cyclic_product":
            return self.encode([k * x for x in self.residues(a)])
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity_index
        for _ in range(k):
            out = self.op(out, a)
        return out

    @cached_property
    def _inverses(self):
        e = self.identity_index
        return tuple(row.index(e) for row in self.table)

    @property
    def identity(self) -> int:
        return self.identity_index

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        if self.kind == "cyclic_product":
            return True
        n = self.order
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    @property
    def is_cyclic_group(self) -> bool:
        return self.kind == "cyclic_product" and len(self.moduli) == 1

    def describe(self) -> str:
        if self.kind == "cyclic_product":
            return "+".join(f"C{m}" for m in self.moduli)
        return f"Cayley({self.order})"

    def to_description(self) -> dict:
        if self.kind == "cyclic_product":
            return {"type": "cyclic_product", "moduli": list(self.moduli)}
        return {"type": "cayley", "table": [list(r) for r in self.table]}


# ---------------------------------------------------------------------------
# construction


def cyclic_product(moduli: Iterable[int], cap: int = CYCLIC_ORDER_CAP) -> GroupSpec:
    moduli = tuple(moduli)
    if not moduli:
        raise InputError("at least one modulus is required")
    for m in moduli:
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise InputError(f"moduli must be integers >= 2, got {m!r}")
    order = math.prod(moduli)
    if order > cap:
        raise OrderCapExceeded(f"group order {order} exceeds cap {cap}")
    return GroupSpec("cyclic_product", moduli=moduli, order=order)


def cyclic(n: int) -> GroupSpec:
    return cyclic_product([n])


def _generating_set(table, e):
    n = len(table)
    gens = []
    span = {e}
    for g in range(n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = table[x][s]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == n:
            break
    return gens


def cayley_group(table, cap: int = CAYLEY_ORDER_CAP) -> GroupSpec:
    """Validate a Cayley table and wrap it.

    Associativity is checked exactly with Light's test over a generating set,
    which costs O(n^2 |gens|) instead of O(n^3).
    """
    try:
        rows = tuple(tuple(int(x) for x in row) for row in table)
    except (TypeError, ValueError):
        raise NonGroupTable("table must be a list of integer rows") from None
    n = len(rows)
    if n == 0:
        raise NonGroupTable("empty table")
    if n > cap:
        raise OrderCapExceeded(f"Cayley table of order {n} exceeds cap {cap}")
    full = set(range(n))
    for row in rows:
        if len(row) != n:
            raise NonGroupTable("table is not square")
        if set(row) != full:
            raise NonGroupTable("table is not a Latin square")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NonGroupTable("table is not a Latin square")
    ident = [e for e in range(n) if rows[e] == tuple(range(n)) and all(rows[i][e] == i for i in range(n))]
    if not ident:
        raise NonGroupTable("no two-sided identity")
    e = ident[0]
    for a in range(n):
        b = rows[a].index(e)
        if rows[b][a] != e:
            raise NonGroupTable(f"element {a} has no two-sided inverse")
    for g in _generating_set(rows, e):
        for x in range(n):
            xg = rows[x][g]
            for y in range(n):
                if rows[xg][y] != rows[x][rows[g][y]]:
                    raise NonGroupTable(f"not associative: ({x}*{g})*{y} != {x}*({g}*{y})")
    return GroupSpec("cayley", table=rows, identity_index=e, order=n)


def make_group(description) -> GroupSpec:
    """Build a group from ``{"type": ..., ...}``, a list of moduli, or a GroupSpec."""
    if isinstance(description, GroupSpec):
        return description
    if isinstance(description, dict):
        kind = description.get("type")
        if kind == "cyclic_product":
            return cyclic_product(description.get("moduli") or [])
        if kind == "cayley":
            return cayley_group(description.get("table") or [])
        raise InputError(f"unknown group type {kind!r}")
    if isinstance(description, int):
        return cyclic_product([description])
    return cyclic_product(description)


def as_cayley(G: GroupSpec) -> GroupSpec:
    if G.kind == "cayley":
        return G
    if G.order > CAYLEY_ORDER_CAP:
        raise OrderCapExceeded(f"order {G.order} too large for a Cayley table")
    table = tuple(tuple(G.op(a, b) for b in range(G.order)) for a in range(G.order))
    return GroupSpec("cayley", table=table, identity_index=G.identity, order=G.order)


# ---------------------------------------------------------------------------
# label-level arithmetic


def op(G: GroupSpec, a, b):
    return G.label(G.op(G.index(a), G.index(b)))


def inverse(G: GroupSpec, a):
    return G.label(G.inv(G.index(a)))


def identity(G: GroupSpec):
    return G.label(G.identity)


def _indices(G, S):
    return [G.index(s) for s in S]


def generated_indices(G: GroupSpec, S: Iterable[int]) -> set:
    gens = set()
    for s in S:
        gens.add(s)
        gens.add(G.inv(s))
    span = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.op(x, s)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def subgroup_generated(G: GroupSpec, S) -> list:
    """Sorted labels of the subgroup generated by ``S``."""
    return [G.label(i) for i in sorted(generated_indices(G, _indices(G, S)))]


def stabilizer_indices(G: GroupSpec, D: Sequence[int]) -> list:
    D = sorted(set(D))
    if not D:
        return list(G.elements())
    dset = set(D)
    d0inv = G.inv(D[0])
    out = []
    for d in D:
        g = G.op(d, d0inv)
        if all(G.op(g, x) in dset for x in D):
            out.append(g)
    return sorted(out)


def left_stabilizer(G: GroupSpec, D) -> list:
    """Sorted labels of ``{g : g.D = D}``."""
    return [G.label(i) for i in stabilizer_indices(G, _indices(G, D))]


# ---------------------------------------------------------------------------
# direct sums


def direct_sum(*groups: GroupSpec) -> GroupSpec:
    if len(groups) == 1 and isinstance(groups[0], (list, tuple)):
        groups = tuple(groups[0])
    if not groups:
        raise InputError("direct_sum needs at least one group")
    if all(g.kind == "cyclic_product" for g in groups):
        return cyclic_product([m for g in groups for m in g.moduli])
    order = math.prod(g.order for g in groups)
    if order > CAYLEY_ORDER_CAP:
        raise OrderCapExceeded(f"direct sum of order {order} exceeds Cayley cap")
    strides = _strides([g.order for g in groups])

    def split(x):
        return [(x // s) % g.order for g, s in zip(groups, strides)]

    table = []
    parts = [split(x) for x in range(order)]
    for x in range(order):
        px = parts[x]
        row = []
        for y in range(order):
            py = parts[y]
            row.append(sum(g.op(a, b) * s for g, a, b, s in zip(groups, px, py, strides)))
        table.append(tuple(row))
    e = sum(g.identity * s for g, s in zip(groups, strides))
    return GroupSpec("cayley", table=tuple(table), identity_index=e, order=order)


def _strides(orders):
    strides = []
    s = 1
    for o in reversed(orders):
        strides.append(s)
        s *= o
    return tuple(reversed(strides))


def embed_index(factors: Sequence[GroupSpec], i: int, a: int) -> int:
    strides = _strides([g.order for g in factors])
    out = 0
    for j, (g, s) in enumerate(zip(factors, strides)):
        out += (a if j == i else g.identity) * s
    return out


def project_index(factors: Sequence[GroupSpec], i: int, x: int) -> int:
    strides = _strides([g.order for g in factors])
    return (x // strides[i]) % factors[i].order


def embed(factors: Sequence[GroupSpec], i: int, a):
    """Label of the standard inclusion of ``a`` from factor ``i`` into the sum."""
    total = direct_sum(*factors)
    return total.label(embed_index(factors, i, factors[i].index(a)))


def project(factors: Sequence[GroupSpec], i: int, x):
    total = direct_sum(*factors)
    return factors[i].label(project_index(factors, i, total.index(x)))


# ---------------------------------------------------------------------------
# multipliers


def multiplier_maps(G: GroupSpec, D) -> list:
    """All ``(alpha, q)`` with ``alpha`` a unit of Z_n and ``alpha*D == q + D``.

    ``q`` is the least witness.  Only defined for a single cyclic factor.
    """
    if not G.is_cyclic_group:
        raise NotCyclic(f"{G.describe()} is not a cyclic group")
    n = G.order
    D = sorted({G.index(d) % n for d in D})
    dset = frozenset(D)
    out = []
    for alpha in range(1, n):
        if math.gcd(alpha, n) != 1:
            continue
        image = frozenset(alpha * d % n for d in D)
        for q in sorted({(a - D[0]) % n for a in image}) if D else [0]:
            if frozenset((q + d) % n for d in dset) == image:
                out.append((alpha, q))
                break
    return out


def require_abelian(G: GroupSpec) -> None:
    if not G.is_abelian:
        raise NotAbelian(f"{G.describe()} is not abelian")

#!/usr/bin/env python3
"""Recompute the headline numbers: automorphism orders, geometric properties,
power profiles and Singer classes.  Prints plain text, one fact per line."""

import argparse
import time

from qdslab import autgroup as A
from qdslab import geometry as geo
from qdslab import groups, incidence as I
from qdslab import qds as Q


def canonical(moduli):
    D = Q.canonical_set(moduli)
    return I.build(D.group, D)


def cyc(n, D):
    return I.build(groups.cyclic(n), D)


def orders():
    fano = cyc(7, [0, 1, 3])
    pg23 = cyc(13, [0, 1, 3, 9])
    yield "fano", fano
    yield "pappus C3^2", canonical([3, 3])
    yield "C3^3", canonical([3, 3, 3])
    yield "C4^2", canonical([4, 4])
    for k in (3, 4, 7):
        yield f"multi-fano k={k}", I.sum_structure(cyc(k, [0, 1]), fano)
    yield "C3^2 + C13{0,1,3,9}", I.sum_structure(canonical([3, 3]), pg23)
    yield "C3^2 + C13{0,2,8,12}", I.sum_structure(canonical([3, 3]), cyc(13, [0, 2, 8, 12]))
    yield "C3^2 + fano", I.sum_structure(canonical([3, 3]), fano)
    yield "fano^2", I.power(fano, 2)
    yield "pg23^2", I.power(pg23, 2)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-geometry", action="store_true")
    args = ap.parse_args()

    for name, S in orders():
        t = time.perf_counter()
        aut = A.automorphism_group(S)
        st = A.stabilizer(S, 0)
        print(f"{name:24s} points={S.n_points:4d} |Aut|={aut.order:6d} stab={st.order:3d} "
              f"({time.perf_counter() - t:.2f}s)")

    if not args.skip_geometry:
        for moduli in ([3, 3], [3, 3, 3], [4, 4]):
            S = canonical(moduli)
            v, d = geo.veblen_check(S), geo.desargues_check(S)
            p = geo.pappus_embed(S)
            print(f"C{moduli}: veblen={v.holds} cex={v.counterexample} desargues={d.holds} "
                  f"checked={d.checked} pappus={'yes' if p else 'no'}")

    for base in ((7, [0, 1, 3]), (13, [0, 1, 3, 9])):
        p = geo.power_line_profile(I.power(cyc(*base), 2))
        print(f"C{base[0]}^2 profile: size4={sorted(p.size4_lines)} size3={sorted(p.size3_lines)} matches={p.matches}")

    for q in (2, 3, 4):
        cls = Q.singer_classes(q)
        print(f"singer q={q}: {len(cls)} translation classes, reps {[tuple(c.representative.elements) for c in cls]}")


if __name__ == "__main__":
    main()

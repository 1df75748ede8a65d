"""
Recovering a Galois group on labelled roots: the GL2(F3) octic
===============================================================

The library takes the Galois group as input, given as permutations of the
canonically ordered complex roots.  For f below (the 3-torsion field of
y^2 + y = x^3 - x^2) the group is GL2(F3), acting on the 8 nonzero vectors of
F3^2.  This script finds that action on our root labels:

1. The sums a_i + a_j over unordered pairs are roots of an integer polynomial
   of degree 28.  Its degree-4 factor picks out the pairs {v, -v}.
2. G then sits in C2 wr S4 (swap within a pair, permute the four pairs) and
   meets the base group only in the central element v -> -v.  A lift of
   S4 = <(1234), (12)> is fixed by choosing lifts of the two generators,
   64 choices up to the centre.
3. Exactly one choice gives resolvents with integer coefficients.
"""

import itertools

import sympy

from frobid import perm as P
from frobid.gamma import InconsistentGroup, build_gamma
from frobid.poly import IntPolynomial
from frobid.roots import roots_at

F = IntPolynomial((-27, -36, -23, -15, -93, 33, 18, -9, 1))


def partner_pairs(rs):
    from mpmath import mp
    X = sympy.Symbol("X")
    vals = {}
    with mp.workprec(rs.precision_bits):
        r = rs.values()
        pairs = list(itertools.combinations(range(8), 2))
        for i, j in pairs:
            vals[(i, j)] = r[i] + r[j]
        prod = [mp.mpc(1)]
        for v in vals.values():
            nxt = [mp.mpc(0)] * (len(prod) + 1)
            for k, c in enumerate(prod):
                nxt[k + 1] += c
                nxt[k] -= c * v
            prod = nxt
        coeffs = [int(mp.nint(c.real)) for c in prod]
    poly = sympy.Poly(list(reversed(coeffs)), X)
    quartic = [g for g, _ in poly.factor_list()[1] if g.degree() == 4][0]
    q = [int(c) for c in reversed(quartic.all_coeffs())]
    found = []
    with mp.workprec(rs.precision_bits):
        for key, v in vals.items():
            if abs(sum(c * v ** k for k, c in enumerate(q))) < mp.mpf(10) ** -20:
                found.append(key)
    return found


def lifts(blocks, pi):
    """All permutations of 8 points mapping block b to block pi[b]."""
    out = []
    for flips in itertools.product((0, 1), repeat=4):
        img = [0] * 8
        for b, (u, v) in enumerate(blocks):
            tu, tv = blocks[pi[b]]
            if flips[b]:
                tu, tv = tv, tu
            img[u], img[v] = tu, tv
        out.append(tuple(img))
    return out


def find_group(rs):
    blocks = partner_pairs(rs)
    assert len(blocks) == 4 and sorted(sum(blocks, ())) == list(range(8)), blocks
    z = lifts(blocks, (0, 1, 2, 3))[-1]
    h = IntPolynomial.x(2)
    for a, b in itertools.product(lifts(blocks, (1, 2, 3, 0))[:8], lifts(blocks, (1, 0, 2, 3))[:8]):
        try:
            G = P.closure(8, [a, b, z], cap=48)
        except P.GroupTooLarge:
            continue
        if G.order != 48:
            continue
        try:
            build_gamma(F, G, h, rs)
        except InconsistentGroup:
            continue
        return G
    raise RuntimeError("no consistent lift found")


if __name__ == "__main__":
    rs = roots_at(F)
    for k, r in enumerate(rs.values(), 1):
        print(f"a_{k} = {complex(r):.6f}")
    G = find_group(rs)
    print("generators:", ";".join(P.format_perm(g) for g in G.generators))
    table = build_gamma(F, G, IntPolynomial.x(2), rs)
    for c in table.classes:
        print(f"{c.label:24s} size {c.size:2d}  Gamma = {c.gamma}")

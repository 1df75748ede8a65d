"""
Frobenius at 2 for a dihedral quintic
=====================================

f = x^5 + 2x^4 - 3x^3 + 1 has Galois group D10 of order 10.  We label the
roots by rough approximations, build the class resolvents for h = x and
h = x^2, and read off the Frobenius class at a few small primes.

With h = x both 5-cycle classes have squared resolvents, (X - 2)^2 and
(X + 5)^2.  Those are still coprime mod 2, so the prime 2 is classified.
"""

from frobid import perm as P
from frobid.frobenius import classify
from frobid.gamma import analyze
from frobid.poly import IntPolynomial

F = IntPolynomial((1, 0, 0, -3, 2, 1))
APPROX = [-3.01, complex(-0.35, -0.53), complex(0.85, -0.31), complex(0.85, 0.31), complex(-0.35, 0.53)]
GENS = P.parse_generators("(1,2,3,4,5);(2,5)(3,4)", 5)


def show(table):
    print(f"h = {table.h}")
    for c in table.classes:
        print(f"  {c.label:14s} size {c.size}  Gamma = {c.gamma}")
    print("  bad primes:", table.bad_primes)


if __name__ == "__main__":
    t1 = analyze(F, GENS, h=IntPolynomial.x(1), user_roots=APPROX)
    show(t1)
    show(analyze(F, GENS, h=IntPolynomial.x(2), user_roots=APPROX))

    print("\nFrobenius classes with h = x:")
    for p in (2, 3, 11, 13, 17, 19, 23):
        r = classify(t1, p)
        if r.good:
            # a trace is only computed when the cycle type alone is ambiguous
            extra = "" if r.trace is None else f"  trace {r.trace}"
            print(f"  p = {p:3d}  {r.class_label:14s} cycle type {r.cycle_type}{extra}")
        else:
            print(f"  p = {p:3d}  bad ({r.reason})")

"""
Chebotarev frequencies for the dihedral quintic
===============================================

Classify every prime below 10^5 and compare the share of each class with
|C|/|G|.  The z-scores use a binomial model, so values within a few units of
zero are what a correct table should give.  A wrong table shows up quickly as
a class with a huge |z| or as a failed cross-check.
"""

import time

from frobid import perm as P
from frobid.frobenius import chebotarev_check, classify_range, cross_check
from frobid.gamma import analyze
from frobid.poly import IntPolynomial

F = IntPolynomial((1, 0, 0, -3, 2, 1))
GENS = P.parse_generators("(1,2,4,5,3);(2,3)(4,5)", 5)  # on canonically ordered roots

if __name__ == "__main__":
    table = analyze(F, GENS)
    print(f"h = {table.h}, bad primes {table.bad_primes}")
    t0 = time.perf_counter()
    reports = list(classify_range(table, 2, 10 ** 5, workers=2))
    print(f"{len(reports)} primes in {time.perf_counter() - t0:.1f}s")

    for c in chebotarev_check(reports, table):
        print(f"  {c.label:14s} count {c.count:5d}  observed {c.observed:.4f}  "
              f"expected {c.expected:.4f}  z = {c.z:+.2f}")

    # spot-check against factorisation mod p and companion-matrix traces
    sample = [r for r in reports if r.good][::50]
    problems = [m for r in sample for m in cross_check(table, r)]
    print(f"cross-checked {len(sample)} primes, {len(problems)} problems")

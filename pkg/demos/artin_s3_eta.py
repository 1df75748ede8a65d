"""
An Artin L-series from Frobenius classes
========================================

x^3 - x - 1 has Galois group S3 and discriminant -23.  Its 2-dimensional
representation has an L-series whose coefficients are those of the weight 1
form q prod (1 - q^n)(1 - q^{23n}).  Good primes get their Euler factor from
the class of Frob_p; the one bad prime 23 needs a local factor, here 1 - T.
"""

from frobid import perm as P
from frobid.artin import CharacterTable, dirichlet_coefficients, euler_factor, power_map_for
from frobid.frobenius import classify_range
from frobid.gamma import analyze
from frobid.poly import IntPolynomial

N = 60

if __name__ == "__main__":
    table = analyze(IntPolynomial((-1, -1, 0, 1)), P.parse_generators("(1,2,3);(1,2)", 3))
    chi = CharacterTable.from_dict(
        {"dimension": 2, "values": {"()": [2, 0], "(2,3)": [0, 0], "(1,2,3)": [-1, 0]}})
    pm = power_map_for(table)
    for c in table.classes:
        print(f"  {c.label:8s} Euler factor {list(map(str, euler_factor(chi, c.label, pm).coeffs))}")

    reports = list(classify_range(table, 2, N))
    a = dirichlet_coefficients(table, chi, reports, N, local_factors={23: [1, -1]})

    eta = [0] * (N + 1)
    eta[1] = 1
    for n in range(1, N + 1):
        for step in (n, 23 * n):
            for k in range(N, step - 1, -1):
                eta[k] -= eta[k - step]
    print("a_n       :", [int(x) for x in a])
    print("eta series:", eta[1:])
    print("equal:", [int(x) for x in a] == eta[1:])

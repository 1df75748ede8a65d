"""Worked examples and independent oracles shared by the test modules.

Tables are cached per process; building them is the slow part of most tests.
"""

import cmath
import functools
import math

import sympy

from frobid import perm as P
from frobid.gamma import analyze, build_gamma, validate
from frobid.poly import IntPolynomial
from frobid.roots import match_user_order, roots_at

# x^5 + 2x^4 - 3x^3 + 1 with Galois group D10; the labelling of the worked
# example comes from these printed approximations.
D10_F = IntPolynomial((1, 0, 0, -3, 2, 1))
D10_GENS = "(1,2,3,4,5);(2,5)(3,4)"
D10_APPROX = [complex(-3.01, 0), complex(-0.35, -0.53), complex(0.85, -0.31),
              complex(0.85, 0.31), complex(-0.35, 0.53)]
D10_ROOTS_FILE = "# worked-example labelling\n" + "".join(
    f"{z.real},{z.imag}\n" for z in D10_APPROX)

S3_F = IntPolynomial((-1, -1, 0, 1))  # x^3 - x - 1
S3_GENS = "(1,2,3);(1,2)"
S3_CHAR2 = {"dimension": 2, "values": {"()": [2, 0], "(2,3)": [0, 0], "(1,2,3)": [-1, 0]}}

# 3-torsion field of y^2 + y = x^3 - x^2; generators on canonically ordered
# roots were recovered by demos/gl2f3_labelling.py
GL23_F = IntPolynomial((-27, -36, -23, -15, -93, 33, 18, -9, 1))
GL23_GENS = "(1,2,4,5,6,3,8,7);(1,2)(3,6)(5,7);(1,6)(2,3)(4,8)(5,7)"
GL23_PRINTED = [
    [-144, 1],
    [-3, 1],
    [-24290099658154516203, -2946247136394353892, -187604198442957555, 26747700562448082,
     566948224573848, -145234777501584, 7340079612456, -196600821903, 3212225793,
     -32922129, 204666, -699, 1],
    [167939769912993, -21583664066961, 1248800990265, -43566817716, 989228043,
     -14088342, 120102, -546, 1],
    [2926293624, -445164021, 34859664, -1344378, 26448, -258, 1],
    [7299371089503, -277935306777, 3360584547, -654852960, 51288993, -1698042, 29292, -264, 1],
    [2707751520, -477465444, 35700471, -1336755, 26250, -258, 1],
    [9616023198, -1097286921, 57362760, -1674048, 28230, -258, 1],
]


def gens(text, n):
    return P.parse_generators(text, n)


@functools.lru_cache(maxsize=None)
def d10_table(h_degree=1):
    h = IntPolynomial.x(h_degree)
    return analyze(D10_F, gens(D10_GENS, 5), h=h, user_roots=D10_APPROX)


@functools.lru_cache(maxsize=None)
def d10_canonical():
    """D10 table on canonical labels with the automatically chosen h."""
    rs = roots_at(D10_F)
    user = match_user_order(rs, D10_APPROX)
    # canonical slot of each worked-example root
    where = [next(k for k in range(5) if rs.roots[k].v == r.v) for r in user.roots]
    tau = tuple(where)
    G = P.conjugate_group(P.closure(5, gens(D10_GENS, 5)), tau)
    return analyze(D10_F, G.generators)


@functools.lru_cache(maxsize=None)
def s3_table():
    return analyze(S3_F, gens(S3_GENS, 3))


@functools.lru_cache(maxsize=None)
def gl23_table():
    return analyze(GL23_F, gens(GL23_GENS, 8), h=IntPolynomial.x(2))


def cyclotomic(n):
    x = sympy.Symbol("x")
    c = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return IntPolynomial(tuple(int(a) for a in reversed(c)))


@functools.lru_cache(maxsize=None)
def cyclotomic_setup(n):
    """(table, sigma) with sigma[k] the permutation zeta -> zeta^k on canonical labels."""
    f = cyclotomic(n)
    rs = roots_at(f)
    expo = [round(cmath.phase(complex(z)) / (2 * math.pi) * n) % n for z in rs.values()]
    slot = {e: i for i, e in enumerate(expo)}
    units = [k for k in range(1, n) if math.gcd(k, n) == 1]
    sigma = {k: tuple(slot[e * k % n] for e in expo) for k in units}
    table = analyze(f, [sigma[k] for k in units])
    return table, sigma


@functools.lru_cache(maxsize=None)
def quadratic_table(d):
    return analyze(IntPolynomial((-d, 0, 1)), [(1, 0)])


def kronecker(d, p):
    return sympy.jacobi_symbol(d % p, p) if p > 2 else None


def cubic_closed_form(b, c):
    """Resolvents for x^3 + bx + c, h = x, keyed by cycle type."""
    X = lambda *cs: IntPolynomial(cs)  # noqa: E731
    return {
        (1, 1, 1): X(2 * b, 1),
        (2, 1): X(-2 * b ** 3 - 27 * c ** 2, -3 * b ** 2, 0, 1),
        (3,): X(-b, 1) ** 2,
    }


def quartic_closed_form(b, c, d):
    """Resolvents for x^4 + bx^2 + cx + d with G = S4, h = x, keyed by cycle type.

    The 3-cycle and 4-cycle polynomials are printed without multiplicity;
    sigma and its inverse give the same value, so the full resolvent is the square.
    """
    X = lambda *cs: IntPolynomial(cs)  # noqa: E731
    g6 = X(-4 * b ** 6 + 48 * b ** 4 * d - 56 * b ** 3 * c ** 2 - 192 * b ** 2 * d ** 2
           - 288 * b * c ** 2 * d - 27 * c ** 4 + 256 * d ** 3,
           -(16 * b ** 5 - 128 * b ** 3 * d + 138 * b ** 2 * c ** 2 + 256 * b * d ** 2 + 216 * c ** 2 * d),
           -(23 * b ** 4 - 120 * b ** 2 * d + 108 * b * c ** 2 + 112 * d ** 2),
           -12 * b ** 3 + 48 * b * d - 26 * c ** 2,
           2 * b ** 2 + 8 * d, 4 * b, 1)
    return {
        (1, 1, 1, 1): X(2 * b, 1),
        (2, 2): X(32 * b * d - 8 * c ** 2, -16 * d, -2 * b, 1),
        (2, 1, 1): g6,
        (3, 1): X(b ** 4 - 8 * b ** 2 * d + 8 * b * c ** 2 + 16 * d ** 2, -8 * c ** 2,
                  -2 * b ** 2 + 8 * d, 0, 1) ** 2,
        (4,): X(c ** 2, b ** 2 - 4 * d, -2 * b, 1) ** 2,
    }


def galois_order(f: IntPolynomial):
    x = sympy.Symbol("x")
    G, _ = sympy.polys.numberfields.galoisgroups.galois_group(
        sympy.Poly(list(reversed(f.coeffs)), x))
    return G.order()


def build_unvalidated(f, gen_text, h):
    rs = roots_at(f)
    return build_gamma(f, P.closure(f.degree, gens(gen_text, f.degree)), h, rs)


__all__ = [n for n in dir() if not n.startswith("_")] + ["validate"]

"""Class resolvents Gamma_C and the persisted table.

For a conjugacy class C of the Galois group (as permutations of the ordered
complex roots a_1..a_n) and an integer polynomial h,

    Gamma_C(X) = prod_{s in C} (X - sum_j h(a_j) a_{s(j)}).

The products are formed in error-tracked multiprecision arithmetic and rounded
to integers.  A coefficient that cannot be an integer is how a wrong group (or
a group listed against the wrong root labelling) shows up.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp, mpf
from sympy import factorint

from . import perm as P
from .poly import IntPolynomial, discriminant, resultant
from .roots import (
    DEFAULT_CEILING,
    BigComplex,
    PrecisionError,
    RootSystem,
    escalate,
    match_user_order,
    roots_at,
)

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
RESIDUAL_LIMIT = mpf(2) ** -32
TRIAL_DIVISION_LIMIT = 10 ** 6
H_SEARCH_SEED = 20110420
H_SEARCH_ATTEMPTS = 32


class NeedsPrecision(PrecisionError):
    """Rounding to integers is not yet certain; retry with more bits."""


class InconsistentGroup(ValueError):
    """The group (or root ordering) does not match the roots of f."""


class UnsuitableH(ValueError):
    """Two classes share a resolvent factor for this h."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NoSuitableH(UnsuitableH):
    pass


@dataclass(frozen=True)
class ClassEntry:
    label: str
    cycle_type: Tuple[int, ...]
    size: int
    gamma: IntPolynomial
    symmetry_exponents: Tuple[int, ...] = (1,)


@dataclass(frozen=True)
class GammaTable:
    f: IntPolynomial
    h: IntPolynomial
    n: int
    generators: Tuple[P.Perm, ...]
    order: int
    classes: Tuple[ClassEntry, ...]
    bad_primes: Tuple[int, ...] = ()
    disc: int = 0
    disc_sqrt: Optional[int] = None
    max_residual: float = 0.0
    format_version: int = FORMAT_VERSION

    @property
    def reduced(self) -> bool:
        return any(len(c.symmetry_exponents) > 1 for c in self.classes)

    def entry(self, label: str) -> ClassEntry:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    def group(self, cap: int = P.DEFAULT_CAP) -> P.PermGroup:
        return P.closure(self.n, self.generators, cap)

    def is_bad(self, p: int) -> bool:
        """True when p divides a stored bad prime or unfactored cofactor."""
        return any(b % p == 0 for b in self.bad_primes)


# ---------------------------------------------------------------------------
# construction

def _eval_h(h: IntPolynomial, z: BigComplex) -> BigComplex:
    acc = BigComplex(0)
    for c in reversed(h.coeffs):
        acc = acc * z + c
    return acc


def _poly_from_roots(values: Sequence[BigComplex]) -> List[BigComplex]:
    """Coefficients (ascending) of prod (X - v)."""
    coeffs = [BigComplex(1)]
    for v in values:
        nv = -v
        nxt = [BigComplex(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] + c * nv
        coeffs = nxt
    return coeffs


def _round_integral(coeffs: Sequence[BigComplex], what: str) -> Tuple[IntPolynomial, mpf]:
    out = []
    worst = mpf(0)
    for c in coeffs:
        k = int(mpmath.nint(c.real))
        residual = abs(c.v - k)
        tol = max(4 * c.err, mpf(2) ** (-(mp.prec // 2)))
        if residual > tol:
            raise InconsistentGroup(
                f"{what}: coefficient {mpmath.nstr(c.v, 20)} is not an integer "
                f"(residual {mpmath.nstr(residual, 5)}); group/ordering inconsistent with roots")
        if tol >= RESIDUAL_LIMIT:
            raise NeedsPrecision(f"{what}: error window {mpmath.nstr(tol, 5)} too wide")
        worst = max(worst, residual)
        out.append(k)
    return IntPolynomial(tuple(out)), worst


def _class_values(h_at: Sequence[BigComplex], roots: Sequence[BigComplex],
                  sigmas: Iterable[P.Perm]) -> List[BigComplex]:
    vals = []
    for s in sigmas:
        acc = BigComplex(0)
        for j, hj in enumerate(h_at):
            acc = acc + hj * roots[s[j]]
        vals.append(acc)
    return vals


def build_gamma(f: IntPolynomial, G: P.PermGroup, h: IntPolynomial, rs: RootSystem,
                classes: Optional[Sequence[P.ConjClass]] = None) -> GammaTable:
    """Candidate table (bad primes not yet computed).

    Raises NeedsPrecision when the rounding is not yet certain and
    InconsistentGroup when a coefficient is certainly not an integer.
    """
    if not f.is_monic():
        raise ValueError("f must be monic with integer coefficients")
    if G.n != f.degree or rs.n != f.degree:
        raise ValueError("degrees of f, group and root system disagree")
    if classes is None:
        classes = P.conjugacy_classes(G)
    entries = []
    worst = mpf(0)
    with mp.workprec(rs.precision_bits):
        h_at = [_eval_h(h, a) for a in rs.roots]
        for c in classes:
            vals = _class_values(h_at, rs.roots, c.members)
            gamma, res = _round_integral(_poly_from_roots(vals), f"class {c.label}")
            worst = max(worst, res)
            entries.append(ClassEntry(c.label, c.cycle_type, c.size, gamma))
    return GammaTable(f=f, h=h, n=G.n, generators=G.generators, order=G.order,
                      classes=tuple(entries), disc=discriminant(f),
                      max_residual=float(worst))


# ---------------------------------------------------------------------------
# validation and bad primes

def prime_divisors(N: int) -> List[int]:
    """Prime factors of |N| by trial division to 10^6; a composite cofactor is kept whole."""
    N = abs(N)
    if N < 2:
        return []
    fac = factorint(N, limit=TRIAL_DIVISION_LIMIT, use_trial=True,
                    use_rho=False, use_pm1=False, use_ecm=False)
    # a key above the limit that fails isprime is an unsplit cofactor; it is
    # kept whole and bad-prime queries test divisibility against it
    return sorted(fac)


def _pairs_to_check(table: GammaTable):
    cls = table.classes
    for i in range(len(cls)):
        for j in range(i + 1, len(cls)):
            a, b = cls[i], cls[j]
            if table.reduced and (a.symmetry_exponents != (1,) or b.symmetry_exponents != (1,)):
                if a.cycle_type != b.cycle_type:
                    continue
            yield a, b


def validate(table: GammaTable) -> GammaTable:
    """Check pairwise coprimality and fill in the bad-prime set."""
    bad = set(prime_divisors(table.disc))
    for a, b in _pairs_to_check(table):
        r = resultant(a.gamma, b.gamma)
        if r == 0:
            raise UnsuitableH(f"h unsuitable: Gamma for {a.label} and {b.label} share a factor",
                              pair=(a.label, b.label))
        bad.update(prime_divisors(r))
    if table.reduced:
        bad.update(table.bad_primes)
    return replace(table, bad_primes=tuple(sorted(bad)))


# ---------------------------------------------------------------------------
# driving the build

def _build_escalating(f, G, h, rs, classes, ceiling) -> Tuple[GammaTable, RootSystem]:
    while True:
        try:
            return build_gamma(f, G, h, rs, classes), rs
        except NeedsPrecision:
            log.info("escalating precision beyond %d bits", rs.precision_bits)
            rs = escalate(f, rs, ceiling)


def candidate_hs(n: int, seed: int = H_SEARCH_SEED,
                 attempts: int = H_SEARCH_ATTEMPTS) -> List[IntPolynomial]:
    """x^2, x^3, x, then seeded random integer h of degree <= n-1."""
    fixed = [IntPolynomial.x(2), IntPolynomial.x(3), IntPolynomial.x(1)]
    rng = random.Random(seed)
    out = list(fixed)
    while len(out) < attempts:
        c = [rng.randint(-9, 9) for _ in range(max(n, 2))]
        h = IntPolynomial(tuple(c))
        if h.degree >= 1 and h not in out:
            out.append(h)
    return out[:attempts]


def choose_h(f: IntPolynomial, G: P.PermGroup, rs: RootSystem,
             ceiling: int = DEFAULT_CEILING,
             attempts: int = H_SEARCH_ATTEMPTS) -> Tuple[IntPolynomial, GammaTable, RootSystem]:
    """First candidate h whose resolvents are pairwise coprime."""
    classes = P.conjugacy_classes(G)
    for h in candidate_hs(f.degree, attempts=attempts):
        table, rs = _build_escalating(f, G, h, rs, classes, ceiling)
        try:
            return h, validate(table), rs
        except UnsuitableH as exc:
            log.debug("h = %s rejected: %s", h, exc)
    raise NoSuitableH(
        f"no suitable h found in {attempts} attempts; perturb f "
        "(replace f by the minimal polynomial of B(a) for a random integer polynomial B, "
        "which has the same splitting field)")


def reduce_by_symmetry(table: GammaTable, symmetries: Sequence[P.SymmetryGroup],
                       rs: RootSystem, ceiling: int = DEFAULT_CEILING) -> GammaTable:
    """Replace Gamma_C by the product over H-orbit representatives of
    (X - sum_j h(a_j) sum_{k in H} a_{s^k(j)}) for every family with nontrivial H.

    The input must be validated; the result keeps its bad primes and adds the
    primes of the reduced same-family resultants.
    """
    G = table.group()
    classes = {c.label: c for c in P.conjugacy_classes(G)}
    H_of = {(s.order, s.cycle_type): s.exponents for s in symmetries}
    while True:
        try:
            entries = []
            with mp.workprec(rs.precision_bits):
                h_at = [_eval_h(table.h, a) for a in rs.roots]
                for e in table.classes:
                    c = classes[e.label]
                    H = H_of.get((c.order, c.cycle_type), (1,))
                    if len(H) <= 1:
                        entries.append(e)
                        continue
                    seen = set()
                    vals = []
                    for s in c.members:
                        if s in seen:
                            continue
                        powers = [P.power(s, k) for k in H]
                        seen.update(powers)
                        acc = BigComplex(0)
                        for j, hj in enumerate(h_at):
                            inner = BigComplex(0)
                            for t in powers:
                                inner = inner + rs.roots[t[j]]
                            acc = acc + hj * inner
                        vals.append(acc)
                    gamma, _ = _round_integral(_poly_from_roots(vals), f"reduced class {e.label}")
                    entries.append(replace(e, gamma=gamma, symmetry_exponents=tuple(H)))
            break
        except NeedsPrecision:
            rs = escalate(table.f, rs, ceiling)
    return validate(replace(table, classes=tuple(entries)))


def sqrt_disc(f: IntPolynomial, rs: RootSystem, G: P.PermGroup) -> Optional[int]:
    """prod_{i<j}(a_i - a_j) as an integer when G lies in A_n, else None."""
    if not all(P.is_even(g) for g in G.generators):
        return None
    with mp.workprec(rs.precision_bits):
        acc = BigComplex(1)
        r = rs.roots
        for i in range(rs.n):
            for j in range(i + 1, rs.n):
                acc = acc * (r[i] - r[j])
        k = int(mpmath.nint(acc.real))
        if abs(acc.v - k) > max(4 * acc.err, mpf(2) ** -32):
            return None
    return k if k * k == discriminant(f) else None


def analyze(f: IntPolynomial, generators: Sequence[P.Perm], h: Optional[IntPolynomial] = None,
            user_roots: Optional[Sequence[complex]] = None, symmetry: bool = False,
            ceiling: int = DEFAULT_CEILING, group_cap: int = P.DEFAULT_CAP) -> GammaTable:
    """Roots, group, resolvents and validation in one call."""
    if not f.is_monic():
        raise ValueError("f must be monic; normalise with IntPolynomial.compose_scale")
    G = P.closure(f.degree, generators, group_cap)
    rs = roots_at(f, ceiling=ceiling)
    if user_roots is not None:
        rs = match_user_order(rs, user_roots)
    if h is None:
        h, table, rs = choose_h(f, G, rs, ceiling)
    else:
        table, rs = _build_escalating(f, G, h, rs, P.conjugacy_classes(G), ceiling)
        table = validate(table)
    if symmetry:
        table = reduce_by_symmetry(table, P.detect_symmetries(P.conjugacy_classes(G)), rs, ceiling)
    return replace(table, disc_sqrt=sqrt_disc(f, rs, G))


# ---------------------------------------------------------------------------
# persistence

def table_to_dict(t: GammaTable) -> dict:
    d = {
        "format_version": t.format_version,
        "f": [str(c) for c in t.f.coeffs],
        "h": [str(c) for c in t.h.coeffs],
        "group": {
            "n": t.n,
            "generators": [P.format_perm(g) for g in t.generators],
            "order": t.order,
        },
        "classes": [
            {
                "label": c.label,
                "cycle_type": list(c.cycle_type),
                "size": c.size,
                "gamma": [str(a) for a in c.gamma.coeffs],
                "symmetry_exponents": list(c.symmetry_exponents),
            }
            for c in t.classes
        ],
        "bad_primes": [str(b) for b in t.bad_primes],
        "disc": str(t.disc),
    }
    if t.disc_sqrt is not None:
        d["disc_sqrt"] = str(t.disc_sqrt)
    return d


def dumps(t: GammaTable) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(table_to_dict(t), sort_keys=True, indent=1) + "\n"


class CorruptTable(ValueError):
    pass


def table_from_dict(d: dict) -> GammaTable:
    try:
        if d["format_version"] != FORMAT_VERSION:
            raise CorruptTable(f"unsupported format_version {d['format_version']}")
        n = int(d["group"]["n"])
        gens = tuple(P.parse_perm(s, n) for s in d["group"]["generators"])
        classes = tuple(
            ClassEntry(
                label=c["label"],
                cycle_type=tuple(int(k) for k in c["cycle_type"]),
                size=int(c["size"]),
                gamma=IntPolynomial(tuple(int(a) for a in c["gamma"])),
                symmetry_exponents=tuple(int(k) for k in c.get("symmetry_exponents", [1])),
            )
            for c in d["classes"]
        )
        t = GammaTable(
            f=IntPolynomial(tuple(int(a) for a in d["f"])),
            h=IntPolynomial(tuple(int(a) for a in d["h"])),
            n=n,
            generators=gens,
            order=int(d["group"]["order"]),
            classes=classes,
            bad_primes=tuple(int(b) for b in d["bad_primes"]),
            disc=int(d["disc"]),
            disc_sqrt=int(d["disc_sqrt"]) if "disc_sqrt" in d else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CorruptTable):
            raise
        raise CorruptTable(f"malformed table: {exc}") from exc
    check_invariants(t)
    return t


def loads(text: str) -> GammaTable:
    return table_from_dict(json.loads(text))


def check_invariants(t: GammaTable) -> None:
    if t.f.degree != t.n or not t.f.is_monic():
        raise CorruptTable("f must be monic of degree n")
    if sum(c.size for c in t.classes) != t.order:
        raise CorruptTable("class sizes do not sum to the group order")
    for c in t.classes:
        if sum(c.cycle_type) != t.n:
            raise CorruptTable(f"bad cycle type for {c.label}")
        if c.gamma.degree * len(c.symmetry_exponents) != c.size or not c.gamma.is_monic():
            raise CorruptTable(f"Gamma for {c.label} has the wrong degree")
    ident = [c for c in t.classes if c.label == "()"]
    if len(ident) != 1 or ident[0].gamma.degree != 1:
        raise CorruptTable("identity class missing or its Gamma is not linear")
    if discriminant(t.f) != t.disc:
        raise CorruptTable("stored discriminant does not match f")
    if t.disc_sqrt is not None and t.disc_sqrt ** 2 != t.disc:
        raise CorruptTable("disc_sqrt^2 != disc")

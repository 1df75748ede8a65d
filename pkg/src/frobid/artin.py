"""Euler factors and Dirichlet coefficients of Artin L-series at unramified primes.

The local factor at a good prime p is det(1 - rho(Frob_p) T).  It is built from
the power traces chi(Frob_p^k), k = 1..dim, with Newton's identities.
Characters are supplied by the user; nothing here computes character tables.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Union

import mpmath
from mpmath import mp, mpc, mpf

from . import perm as P
from .frobenius import FrobReport
from .gamma import GammaTable

log = logging.getLogger(__name__)

Number = Union[Fraction, mpc]
RATIONAL_TOL = mpf(10) ** -20
WORKING_PREC = 160


class CharacterError(ValueError):
    pass


class MissingPrime(ValueError):
    pass


def _parse_part(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except ValueError as exc:
        raise CharacterError(f"not a decimal or rational number: {s!r}") from exc


@dataclass(frozen=True)
class CharacterTable:
    """Character values per class label, as exact decimal (or a/b) pairs."""

    dimension: int
    values: Mapping[str, tuple]  # label -> (re: Fraction, im: Fraction)

    @property
    def class_labels(self) -> List[str]:
        return list(self.values)

    @classmethod
    def from_dict(cls, d: dict) -> "CharacterTable":
        try:
            dim = int(d["dimension"])
            vals = {}
            for label, v in d["values"].items():
                if isinstance(v, (list, tuple)):
                    re_, im_ = (v[0], v[1]) if len(v) == 2 else (v[0], 0)
                else:
                    re_, im_ = v, 0
                vals[label] = (_parse_part(re_), _parse_part(im_))
        except (KeyError, TypeError) as exc:
            raise CharacterError(f"malformed character file: {exc}") from exc
        return cls(dim, vals)

    @classmethod
    def loads(cls, text: str) -> "CharacterTable":
        return cls.from_dict(json.loads(text))

    def is_rational(self) -> bool:
        """True when every value is (within 1e-20 of) a rational integer."""
        return all(im == 0 and abs(re - round(re)) < Fraction(1, 10 ** 20)
                   for re, im in self.values.values())

    def value(self, label: str, exact: bool) -> Number:
        try:
            re_, im_ = self.values[label]
        except KeyError:
            raise CharacterError(f"no character value for class {label}") from None
        if exact:
            return Fraction(round(re_))
        return mpc(mpf(re_.numerator) / re_.denominator, mpf(im_.numerator) / im_.denominator)

    def check(self, table: GammaTable) -> None:
        labels = {c.label for c in table.classes}
        if set(self.values) != labels:
            missing = sorted(labels - set(self.values))
            extra = sorted(set(self.values) - labels)
            raise CharacterError(f"class labels differ from table: missing {missing}, unknown {extra}")
        exact = self.is_rational()
        if self.value("()", exact) != self.dimension:
            raise CharacterError("character at the identity must equal the dimension")
        with mp.workprec(WORKING_PREC):
            for label in labels:
                if abs(self.value(label, False)) > self.dimension + RATIONAL_TOL:
                    raise CharacterError(f"|chi({label})| exceeds the dimension")


@dataclass(frozen=True)
class EulerFactor:
    """Coefficients (ascending) of P_p(T), constant term 1."""

    p: Optional[int]
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


PowerMap = Callable[[str, int], str]


def power_map_for(table: GammaTable) -> PowerMap:
    """label, k -> label of the class of g^k, with all maps cached."""
    G = table.group()
    classes = P.conjugacy_classes(G)
    cache: Dict[int, Dict[str, str]] = {}

    def pm(label: str, k: int) -> str:
        if k not in cache:
            cache[k] = P.power_class_map(G, classes, k)
        return cache[k][label]

    return pm


def euler_factor(chi: CharacterTable, class_label: str, power_map: PowerMap,
                 p: Optional[int] = None, exact: Optional[bool] = None) -> EulerFactor:
    """det(1 - rho(g) T) for g in the class, from power traces via Newton's identities.

    ``exact`` forces the rational route (an error if the character is not
    rational) or the complex route; by default rational characters give
    Fraction coefficients and the rest mpc.
    """
    rational = chi.is_rational()
    if exact is None:
        exact = rational
    if exact and not rational:
        raise CharacterError("rational output requested for a non-rational character")
    d = chi.dimension
    with mp.workprec(WORKING_PREC):
        traces = [chi.value(power_map(class_label, k), exact) for k in range(1, d + 1)]
        e = [Fraction(1) if exact else mpc(1)]
        for k in range(1, d + 1):
            acc = 0
            for i in range(1, k + 1):
                term = e[k - i] * traces[i - 1]
                acc = acc + term if i % 2 else acc - term
            e.append(acc / k)
        coeffs = tuple(ek if k % 2 == 0 else -ek for k, ek in enumerate(e))
        if exact:
            for c in coeffs:
                if c.denominator != 1:
                    raise CharacterError(f"non-integral Euler factor coefficient {c}")
    return EulerFactor(p, coeffs)


def _inverse_series(coeffs: Sequence[Number], kmax: int, exact: bool) -> List[Number]:
    """Power series of 1/P(T) to T^kmax."""
    b = [Fraction(1) if exact else mpc(1)]
    for k in range(1, kmax + 1):
        acc = 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            acc = acc + coeffs[i] * b[k - i]
        b.append(-acc)
    return b


def _spf(N: int) -> List[int]:
    spf = list(range(N + 1))
    i = 2
    while i * i <= N:
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def dirichlet_coefficients(table: GammaTable, chi: CharacterTable, reports: Sequence[FrobReport],
                           N: int, local_factors: Optional[Mapping[int, Sequence]] = None,
                           exact: Optional[bool] = None) -> List[Number]:
    """a_1..a_N of prod_p 1/P_p(p^-s) from Frobenius reports.

    Bad primes use ``local_factors[p]`` when given; otherwise their factor is
    omitted (taken as 1, so a_{p^k} = 0) and a warning is logged.
    """
    chi.check(table)
    if exact is None:
        exact = chi.is_rational()
    by_p = {r.p: r for r in reports}
    spf = _spf(N)
    primes = [q for q in range(2, N + 1) if spf[q] == q]
    missing = [q for q in primes if q not in by_p]
    if missing:
        raise MissingPrime(f"no Frobenius report for primes {missing[:10]}")
    pm = power_map_for(table)
    one = Fraction(1) if exact else mpc(1)
    zero = Fraction(0) if exact else mpc(0)
    omitted = []
    local: Dict[int, List[Number]] = {}
    with mp.workprec(WORKING_PREC):
        for q in primes:
            kmax = 1
            while q ** (kmax + 1) <= N:
                kmax += 1
            r = by_p[q]
            if r.good:
                coeffs = euler_factor(chi, r.class_label, pm, q, exact).coeffs
            elif local_factors and q in local_factors:
                coeffs = [Fraction(str(c)) if exact else mpc(mpmath.mpmathify(str(c)))
                          for c in local_factors[q]]
            else:
                omitted.append(q)
                coeffs = [one]
            local[q] = _inverse_series(coeffs, kmax, exact)
        if omitted:
            log.warning("Euler factors omitted (taken as 1) at bad primes %s", omitted)
        a = [zero] * (N + 1)
        if N >= 1:
            a[1] = one
        for m in range(2, N + 1):
            q = spf[m]
            k, rest = 0, m
            while rest % q == 0:
                rest //= q
                k += 1
            a[m] = local[q][k] * a[rest]
    return a[1:]


def format_number(x: Number):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return [mpmath.nstr(x.real, 30), mpmath.nstr(x.imag, 30)]


def coefficients_json(a: Sequence[Number]) -> str:
    return json.dumps([format_number(x) for x in a]) + "\n"

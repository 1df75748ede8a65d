"""Certified multiprecision complex roots of integer polynomials.

Roots come from Aberth-Ehrlich iteration in mpmath, first at double-ish
precision and then polished at the working precision.  Each root carries an
inclusion radius ``n |f(z)| / |f'(z)|`` (inflated for rounding in the
evaluation of f); pairwise disjoint disks certify that every disk holds exactly
one root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp, mpc, mpf

from .poly import IntPolynomial, discriminant

DEFAULT_CEILING = 1 << 20


class PrecisionError(RuntimeError):
    """The requested precision does not certify what was asked of it."""


class PrecisionCeiling(PrecisionError):
    """Escalation would exceed the configured precision ceiling."""


def starting_precision(n: int) -> int:
    return 64 + 32 * n


class BigComplex:
    """An mpc value with an absolute error radius.

    Every arithmetic step adds its own rounding error (relative 2^(1-prec))
    to the propagated radius, so ``err`` bounds the distance to the exact value.
    """

    __slots__ = ("v", "err")

    def __init__(self, v, err=0):
        self.v = mpc(v)
        self.err = mpf(err)

    @staticmethod
    def _ulp(x) -> mpf:
        return abs(x) * mpf(2) ** (2 - mp.prec)

    def __add__(self, o):
        if not isinstance(o, BigComplex):
            o = BigComplex(o)
        v = self.v + o.v
        return BigComplex(v, self.err + o.err + self._ulp(v))

    __radd__ = __add__

    def __neg__(self):
        return BigComplex(-self.v, self.err)

    def __sub__(self, o):
        if not isinstance(o, BigComplex):
            o = BigComplex(o)
        return self + (-o)

    def __rsub__(self, o):
        return BigComplex(o) - self

    def __mul__(self, o):
        if not isinstance(o, BigComplex):
            o = BigComplex(o)
        v = self.v * o.v
        err = abs(self.v) * o.err + abs(o.v) * self.err + self.err * o.err
        return BigComplex(v, err + self._ulp(v))

    __rmul__ = __mul__

    @property
    def real(self):
        return self.v.real

    @property
    def imag(self):
        return self.v.imag

    def __repr__(self):
        return f"BigComplex({mpmath.nstr(self.v, 15)}, err={mpmath.nstr(self.err, 3)})"


@dataclass(frozen=True)
class RootSystem:
    f: IntPolynomial
    roots: Tuple[BigComplex, ...]
    precision_bits: int
    ordering_tag: str = "canonical"

    @property
    def n(self) -> int:
        return len(self.roots)

    def values(self) -> List[mpc]:
        return [r.v for r in self.roots]

    def certified(self) -> bool:
        rs = self.roots
        return all(abs(rs[i].v - rs[j].v) > rs[i].err + rs[j].err
                   for i in range(len(rs)) for j in range(i + 1, len(rs)))

    def reorder(self, perm: Sequence[int], tag: str) -> "RootSystem":
        """New system whose i-th root is the old root ``perm[i]``."""
        return RootSystem(self.f, tuple(self.roots[k] for k in perm), self.precision_bits, tag)


def _horner(coeffs, z):
    acc = mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _aberth(coeffs: List[int], zs: List[mpc], tol, max_iter: int) -> List[mpc]:
    n = len(coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    zs = list(zs)
    for _ in range(max_iter):
        biggest = mpf(0)
        for i in range(n):
            z = zs[i]
            fz = _horner(coeffs, z)
            if fz == 0:
                continue
            ratio = fz / _horner(dcoeffs, z)
            s = mpc(0)
            for j in range(n):
                if j != i:
                    d = z - zs[j]
                    if d != 0:
                        s += 1 / d
            denom = 1 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            zs[i] = z - w
            aw = abs(w)
            if aw > biggest:
                biggest = aw
        if biggest <= tol:
            break
    return zs


def _inclusion_radius(coeffs: List[int], z: mpc) -> mpf:
    n = len(coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    fz = abs(_horner(coeffs, z))
    dfz = abs(_horner(dcoeffs, z))
    az = abs(z)
    scale = sum(abs(c) * az ** k for k, c in enumerate(coeffs))
    rounding = 4 * (n + 1) * scale * mpf(2) ** (-mp.prec)
    dscale = sum(abs(c) * az ** k for k, c in enumerate(dcoeffs))
    drounding = 4 * n * dscale * mpf(2) ** (-mp.prec)
    if dfz <= drounding:
        return mpf("inf")
    return n * (fz + rounding) / (dfz - drounding)


def _initial_points(coeffs: List[int]) -> List[mpc]:
    n = len(coeffs) - 1
    lc = coeffs[-1]
    radius = 1 + max(abs(mpf(c) / lc) for c in coeffs[:-1])
    offset = mpf("0.4")
    return [radius * mpmath.expjpi(2 * mpf(k) / n + offset / mpmath.pi) for k in range(n)]


def _check_squarefree(f: IntPolynomial) -> None:
    if f.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if f.degree > 1 and discriminant(f) == 0:
        raise ValueError("polynomial is not squarefree over Q")


def _solve(f: IntPolynomial, prec: int, start: Optional[List[mpc]]) -> RootSystem:
    coeffs = list(f.coeffs)
    n = f.degree
    with mp.workprec(max(53, min(prec, 80))):
        zs = [mpc(z) for z in start] if start else _initial_points(coeffs)
        zs = _aberth(coeffs, zs, mpf(2) ** -45, 500 + 50 * n)
    with mp.workprec(prec):
        zs = [mpc(z) for z in zs]
        zs = _aberth(coeffs, zs, mpf(2) ** (-prec + 8), 60)
        roots = tuple(BigComplex(z, _inclusion_radius(coeffs, z)) for z in zs)
    return RootSystem(f, roots, prec, "canonical")


def find_roots(f: IntPolynomial, precision_bits: Optional[int] = None) -> RootSystem:
    """All complex roots of a squarefree f, canonically ordered.

    Raises PrecisionError when the inclusion disks do not separate at this
    precision (the caller escalates).
    """
    _check_squarefree(f)
    prec = precision_bits or starting_precision(f.degree)
    rs = _solve(f, prec, None)
    if not rs.certified():
        raise PrecisionError(f"root disks overlap at {prec} bits")
    return canonical_order(rs)


def _sort_key_cmp(a: BigComplex, b: BigComplex) -> int:
    """-1/0/1 by (re, im); a real-part tie is one the disks cannot separate."""
    if abs(a.real - b.real) > a.err + b.err:
        return -1 if a.real < b.real else 1
    if abs(a.imag - b.imag) > a.err + b.err:
        return -1 if a.imag < b.imag else 1
    return 0


def canonical_order(rs: RootSystem) -> RootSystem:
    """Sort roots by real part, then imaginary part.

    Real parts closer than the sum of the disk radii count as equal (this is
    how conjugate pairs tie); the imaginary parts must then separate.
    """
    import functools

    idx = list(range(rs.n))
    for i in range(rs.n):
        for j in range(i + 1, rs.n):
            if _sort_key_cmp(rs.roots[i], rs.roots[j]) == 0:
                raise PrecisionError("cannot order roots at this precision")
    idx.sort(key=functools.cmp_to_key(lambda i, j: _sort_key_cmp(rs.roots[i], rs.roots[j])))
    return rs.reorder(idx, "canonical")


def escalate(f: IntPolynomial, rs: RootSystem, ceiling: int = DEFAULT_CEILING) -> RootSystem:
    """Recompute at twice the precision, starting from the current roots.

    The new system keeps the old labelling: each refined root stays in the slot
    of the root it came from, and the canonical order is checked to agree.
    """
    prec = rs.precision_bits * 2
    if prec > ceiling:
        raise PrecisionCeiling(f"precision {prec} exceeds ceiling {ceiling} bits")
    new = _solve(f, prec, rs.values())
    if not new.certified():
        raise PrecisionError(f"root disks overlap at {prec} bits")
    # match refined roots back to the old slots
    perm = []
    for old in rs.roots:
        best = min(range(new.n), key=lambda k: abs(new.roots[k].v - old.v))
        perm.append(best)
    if sorted(perm) != list(range(new.n)):
        raise PrecisionError("refined roots do not match previous roots one-to-one")
    out = RootSystem(f, tuple(new.roots[k] for k in perm), prec, rs.ordering_tag)
    if rs.ordering_tag == "canonical" and canonical_order(out).values() != out.values():
        raise PrecisionError("canonical order changed under escalation")
    return out


def roots_at(f: IntPolynomial, precision_bits: Optional[int] = None,
             ceiling: int = DEFAULT_CEILING) -> RootSystem:
    """find_roots with automatic escalation up to ``ceiling`` bits."""
    prec = precision_bits or starting_precision(f.degree)
    if prec > ceiling:
        raise PrecisionCeiling(f"starting precision {prec} exceeds ceiling {ceiling} bits")
    while True:
        try:
            return find_roots(f, prec)
        except PrecisionError:
            prec *= 2
            if prec > ceiling:
                raise PrecisionCeiling(f"could not separate roots below {ceiling} bits")


def parse_roots_file(text: str) -> List[complex]:
    """One ``re,im`` decimal pair per line; blank lines and # comments ignored."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [t for t in line.replace(" ", "").split(",") if t]
        if len(parts) != 2:
            raise ValueError(f"expected 're,im' on line {line!r}")
        out.append(complex(float(parts[0]), float(parts[1])))
    return out


def match_user_order(rs: RootSystem, approx: Sequence[complex]) -> RootSystem:
    """Relabel roots to follow a user-supplied list of approximations.

    Each approximation goes to its nearest computed root.  Matching fails if
    an approximation is not clearly nearer one root than any other (distance
    under half the smallest root separation) or two approximations hit the
    same root.
    """
    if len(approx) != rs.n:
        raise ValueError(f"expected {rs.n} approximate roots, got {len(approx)}")
    vals = [complex(r.v) for r in rs.roots]
    sep = min((abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:]), default=math.inf)
    perm = []
    for z in approx:
        k = min(range(rs.n), key=lambda i: abs(vals[i] - z))
        if abs(vals[k] - z) >= sep / 2:
            raise ValueError(f"approximation {z} is not within any root's neighbourhood")
        perm.append(k)
    if len(set(perm)) != rs.n:
        raise ValueError("two approximations matched the same root")
    return rs.reorder(perm, "user")

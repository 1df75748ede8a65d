"""Exact polynomial arithmetic over Z and Z/pZ.

Polynomials are dense coefficient lists in ascending degree order: the list
``[c0, c1, ..., cn]`` stands for ``c0 + c1 x + ... + cn x^n``.  The zero
polynomial is the empty list.  ``IntPolynomial`` and ``ModPolynomial`` are thin
immutable wrappers; the hot paths (powering, traces, distinct-degree profiles)
work on plain lists so per-prime work stays cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

__all__ = [
    "IntPolynomial",
    "ModPolynomial",
    "DegreeProfile",
    "NotSquarefree",
    "gcd_mod",
    "powmod_x",
    "resultant",
    "discriminant",
    "power_sums",
    "trace_of",
    "distinct_degree_profile",
    "parse_coeffs",
]


class NotSquarefree(ValueError):
    """f is not squarefree modulo p (p is a bad prime for f)."""


def _strip(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def parse_coeffs(text: str) -> List[int]:
    """Parse ``"1,0,-3,2,1"`` (ascending) into a list of ints."""
    parts = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not parts:
        raise ValueError("empty coefficient list")
    return [int(t) for t in parts]


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        c = _strip([int(a) for a in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls, k: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        return IntPolynomial(tuple(_mul(list(self.coeffs), list(other.coeffs))))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def mod(self, p: int) -> "ModPolynomial":
        return ModPolynomial(self.coeffs, p)

    def compose_scale(self, c: int) -> "IntPolynomial":
        """``c^(n-1) f(x / c)`` for a polynomial with leading coefficient ``c``.

        This is the usual trick for making a rational-root polynomial monic
        and integral without changing its splitting field.
        """
        n = self.degree
        if n < 1 or self.lc != c:
            raise ValueError("compose_scale expects c = leading coefficient")
        out = [self.coeffs[i] * c ** (n - 1 - i) for i in range(n)] + [1]
        return IntPolynomial(tuple(out))

    def __str__(self) -> str:
        return _format(self.coeffs, "x")


@dataclass(frozen=True)
class ModPolynomial:
    coeffs: Tuple[int, ...]
    modulus: int

    def __post_init__(self):
        p = int(self.modulus)
        if p < 2:
            raise ValueError("modulus must be >= 2")
        c = _strip([int(a) % p for a in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "modulus", p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "ModPolynomial":
        return ModPolynomial(tuple(_monic(list(self.coeffs), self.modulus)), self.modulus)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def __mul__(self, other: "ModPolynomial") -> "ModPolynomial":
        _same_modulus(self, other)
        p = self.modulus
        return ModPolynomial(tuple(c % p for c in _mul(list(self.coeffs), list(other.coeffs))), p)

    def __str__(self) -> str:
        return _format(self.coeffs, "x") + f" (mod {self.modulus})"


@dataclass(frozen=True)
class DegreeProfile:
    """Number of monic irreducible factors of each degree."""

    counts: Dict[int, int]

    def partition(self) -> Tuple[int, ...]:
        """Factor degrees as a partition, largest first."""
        out: List[int] = []
        for e in sorted(self.counts, reverse=True):
            out.extend([e] * self.counts[e])
        return tuple(out)

    @property
    def degree(self) -> int:
        return sum(e * m for e, m in self.counts.items())


def _format(coeffs: Sequence[int], var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        terms.append(("-" if c < 0 else "+") + body)
    s = " ".join(t[0] + " " + t[1:] for t in terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _same_modulus(a: ModPolynomial, b: ModPolynomial) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"moduli differ: {a.modulus} vs {b.modulus}")


# ---------------------------------------------------------------------------
# list-level kernels

def _mul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _monic(a: List[int], p: int) -> List[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _rem(a: List[int], m: List[int], p: int) -> List[int]:
    """a mod m over F_p; m need not be monic."""
    a = [c % p for c in a]
    _strip(a)
    dm = len(m) - 1
    if len(a) - 1 < dm:
        return a
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        q = a[i] * inv % p
        if q:
            off = i - dm
            for j in range(dm + 1):
                a[off + j] = (a[off + j] - q * m[j]) % p
    return _strip(a[:dm])


def _divexact(a: List[int], m: List[int], p: int) -> List[int]:
    """Quotient a // m over F_p."""
    a = [c % p for c in a]
    dm = len(m) - 1
    if len(a) - 1 < dm:
        return []
    inv = pow(m[-1], -1, p)
    quo = [0] * (len(a) - dm)
    for i in range(len(a) - 1, dm - 1, -1):
        q = a[i] * inv % p
        quo[i - dm] = q
        if q:
            off = i - dm
            for j in range(dm + 1):
                a[off + j] = (a[off + j] - q * m[j]) % p
    return _strip(quo)


def _gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a = _strip([c % p for c in a])
    b = _strip([c % p for c in b])
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _mulmod(a: List[int], b: List[int], f: List[int], p: int) -> List[int]:
    """a*b mod monic f over F_p; inputs reduced, output has length deg f."""
    n = len(f) - 1
    if not a or not b:
        return [0] * n
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    # f monic: x^n = -sum f[j] x^j
    for i in range(len(prod) - 1, n - 1, -1):
        q = prod[i] % p
        if q:
            off = i - n
            for j in range(n):
                prod[off + j] -= q * f[j]
    out = [c % p for c in prod[:n]]
    if len(out) < n:
        out.extend([0] * (n - len(out)))
    return out


def _powmod(base: List[int], e: int, f: List[int], p: int) -> List[int]:
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    b = _rem(base, f, p) + [0] * n
    b = b[:n]
    for bit in bin(e)[2:]:
        result = _mulmod(result, result, f, p)
        if bit == "1":
            result = _mulmod(result, b, f, p)
    return result


def _powmod_x(f: List[int], e: int, p: int) -> List[int]:
    """x^e mod monic f, squaring with a cheap shift for the multiply-by-x step."""
    n = len(f) - 1
    if n == 0:
        return []
    result = [1] + [0] * (n - 1)
    for bit in bin(e)[2:] if e else "":
        result = _mulmod(result, result, f, p)
        if bit == "1":
            top = result[-1]
            result = [0] + result[:-1]
            if top:
                result = [(result[j] - top * f[j]) % p for j in range(n)]
    return result


def _frobenius_matrix(xp: List[int], f: List[int], p: int) -> List[List[int]]:
    """Rows are x^(i*p) mod f for i < n, given xp = x^p mod f."""
    n = len(f) - 1
    rows = [[1] + [0] * (n - 1)]
    for _ in range(1, n):
        rows.append(_mulmod(rows[-1], xp, f, p))
    return rows


def _apply_frobenius(g: List[int], Q: List[List[int]], p: int) -> List[int]:
    """g(x)^p = g(x^p) mod f, via the Frobenius matrix."""
    n = len(Q)
    out = [0] * n
    for i, gi in enumerate(g):
        if gi:
            row = Q[i]
            for j in range(n):
                out[j] += gi * row[j]
    return [c % p for c in out]


def _power_sums(f: List[int], k_max: int, p: int) -> List[int]:
    """Newton power sums s_0..s_kmax for monic f over F_p."""
    n = len(f) - 1
    # f = x^n + c_{n-1} x^{n-1} + ... ; Newton: s_k = -(k c_{n-k} + sum_{i=1}^{k-1} c_{n-i} s_{k-i}) for k<=n
    # and s_k = -sum_{i=1}^{n} c_{n-i} s_{k-i} for k>n
    s = [n % p]
    for k in range(1, k_max + 1):
        acc = 0
        for i in range(1, min(k, n + 1)):
            acc += f[n - i] * s[k - i]
        if k <= n:
            acc += k * f[n - k]
        s.append(-acc % p)
    return s


# ---------------------------------------------------------------------------
# public operations

def gcd_mod(a: ModPolynomial, b: ModPolynomial) -> ModPolynomial:
    """Monic gcd over F_p (the modulus is assumed prime, not checked)."""
    _same_modulus(a, b)
    p = a.modulus
    return ModPolynomial(tuple(_gcd(list(a.coeffs), list(b.coeffs), p)), p)


def powmod_x(f: ModPolynomial, e: int) -> ModPolynomial:
    """x^e reduced modulo the monic polynomial f."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("powmod_x needs a monic modulus of degree >= 1")
    if e < 0:
        raise ValueError("negative exponent")
    return ModPolynomial(tuple(_powmod_x(list(f.coeffs), e, f.modulus)), f.modulus)


def power_sums(f: ModPolynomial, k_max: int) -> List[int]:
    """Power sums s_k of the roots of monic f, for k = 0..k_max, as residues."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("power_sums needs a monic polynomial of degree >= 1")
    return _power_sums(list(f.coeffs), k_max, f.modulus)


def trace_of(g: ModPolynomial, f: ModPolynomial) -> int:
    """Trace of multiplication by g on F_p[x]/f; g must already be reduced."""
    _same_modulus(g, f)
    if not f.is_monic():
        raise ValueError("trace_of needs a monic modulus")
    if len(g.coeffs) > f.degree:
        raise ValueError("g must be reduced modulo f")
    s = _power_sums(list(f.coeffs), max(len(g.coeffs) - 1, 0), f.modulus)
    return sum(c * sk for c, sk in zip(g.coeffs, s)) % f.modulus


def _ddf(f: List[int], p: int, xp: List[int] = None) -> Dict[int, int]:
    """Distinct-degree profile of a monic squarefree f over F_p."""
    n = len(f) - 1
    if xp is None:
        xp = _powmod_x(f, p, p)
    counts: Dict[int, int] = {}
    g = f
    Q = None
    h = xp  # x^(p^d) mod f
    d = 1
    while 2 * d <= len(g) - 1:
        hg = _rem(h, g, p)
        diff = list(hg) + [0] * max(0, 2 - len(hg))
        diff[1] = (diff[1] - 1) % p
        common = _gcd(g, diff, p)
        k = len(common) - 1
        if k > 0:
            counts[d] = k // d
            g = _divexact(g, common, p)
        d += 1
        if 2 * d > len(g) - 1:
            break
        if Q is None:
            Q = _frobenius_matrix(xp, f, p)
        h = _apply_frobenius(h, Q, p)
    rest = len(g) - 1
    if rest > 0:
        counts[rest] = counts.get(rest, 0) + 1
    assert sum(e * m for e, m in counts.items()) == n
    return counts


def is_squarefree_mod(f: List[int], p: int) -> bool:
    df = [(i * c) % p for i, c in enumerate(f)][1:]
    _strip(df)
    if not df:
        return False
    return len(_gcd(f, df, p)) == 1


def distinct_degree_profile(f: ModPolynomial) -> DegreeProfile:
    """Counts of irreducible factors by degree, from gcd(x^(p^d) - x, f).

    Raises NotSquarefree when f has a repeated factor modulo p.
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError("distinct_degree_profile needs a monic polynomial")
    p = f.modulus
    c = list(f.coeffs)
    if not is_squarefree_mod(c, p):
        raise NotSquarefree(f"f is not squarefree modulo {p}")
    return DegreeProfile(_ddf(c, p))


# ---------------------------------------------------------------------------
# resultants over Z

def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while a and len(a) - 1 >= db:
        q = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j in range(db + 1):
            a[shift + j] -= q * b[j]
        a.pop()
        _strip(a)
        e -= 1
    if e > 0:
        a = [c * lb ** e for c in a]
    return a


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Res(a, b) via the subresultant PRS, Sylvester-determinant sign convention."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    A, B = list(a.coeffs), list(b.coeffs)
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    sign = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA * dB % 2:
            sign = -1
    g = h = 1
    while True:
        delta = dA - dB
        if dA % 2 and dB % 2:
            sign = -sign
        R = _prem(A, B)
        if not R:
            return 0
        dR = len(R) - 1
        A = B
        B = [c // (g * h ** delta) for c in R]
        g = A[-1]
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
        dA, dB = len(A) - 1, dR
        if dB == 0:
            lcB = B[0]
            if dA == 1:
                return sign * lcB
            return sign * lcB ** dA // h ** (dA - 1)


def discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r // f.lc

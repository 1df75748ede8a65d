"""Frobenius classes at good primes.

The cycle type comes from the distinct-degree profile of f mod p.  Only when
several classes share that cycle type is the trace T = tr(h(x) x^p) on
F_p[x]/f computed; the class is the one whose Gamma_C vanishes at T.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime, primerange

from .gamma import GammaTable
from .poly import (
    _apply_frobenius,
    _ddf,
    _frobenius_matrix,
    _mulmod,
    _power_sums,
    _powmod_x,
    _rem,
    is_squarefree_mod,
    resultant,
)


class TableInconsistency(RuntimeError):
    """Zero or several resolvents vanish at a good prime: the table is wrong."""


@dataclass(frozen=True)
class FrobReport:
    p: int
    status: str  # "good" or "bad"
    cycle_type: Tuple[int, ...] = ()
    trace: Optional[int] = None
    class_label: Optional[str] = None
    gammas_vanishing: Optional[int] = None
    reason: Optional[str] = None

    @property
    def good(self) -> bool:
        return self.status == "good"

    def to_dict(self) -> dict:
        d = {"p": str(self.p), "status": self.status}
        if self.good:
            d["cycle_type"] = list(self.cycle_type)
            if self.trace is not None:
                d["trace"] = str(self.trace)
            d["class"] = self.class_label
        else:
            d["reason"] = self.reason
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class _Compiled:
    """Table data flattened for the per-prime loop."""

    def __init__(self, table: GammaTable):
        self.table = table
        self.f = list(table.f.coeffs)
        self.h = list(table.h.coeffs)
        self.n = table.n
        self.by_type: Dict[Tuple[int, ...], List[Tuple[str, List[int], Tuple[int, ...]]]] = {}
        for c in table.classes:
            self.by_type.setdefault(c.cycle_type, []).append(
                (c.label, list(c.gamma.coeffs), c.symmetry_exponents))
        self.type_resultants = same_type_resultants(table)


def same_type_resultants(table: GammaTable) -> Dict[Tuple[int, ...], List[int]]:
    """Pairwise resultants among the resolvents of each cycle type.

    Once f mod p is squarefree the cycle type of Frobenius is exact, so only
    these resultants decide whether the trace test is conclusive at p.
    """
    by_type: Dict[Tuple[int, ...], list] = {}
    for c in table.classes:
        by_type.setdefault(c.cycle_type, []).append(c.gamma)
    out = {}
    for ct, gammas in by_type.items():
        out[ct] = [abs(resultant(a, b)) for i, a in enumerate(gammas) for b in gammas[i + 1:]]
    return out


RAMIFIED = "divides disc(f) (f not squarefree mod p); ramified primes require a p-adic method"
RESULTANT = "divides a resultant of two class resolvents of this cycle type"


def frobenius_trace(f: List[int], h: List[int], p: int, exponents: Sequence[int] = (1,),
                    xp: Optional[List[int]] = None) -> int:
    """sum over k in exponents of tr(h(x) x^(p^k)) on F_p[x]/f, by power sums."""
    fp = [c % p for c in f]
    n = len(fp) - 1
    if xp is None:
        xp = _powmod_x(fp, p, p)
    hx = _rem(h, fp, p)
    hx = hx + [0] * (n - len(hx))
    s = _power_sums(fp, n - 1, p)
    total = 0
    Q = None
    cur = xp
    done = 1
    for k in sorted(exponents):
        while done < k:
            if Q is None:
                Q = _frobenius_matrix(xp, fp, p)
            cur = _apply_frobenius(cur, Q, p)
            done += 1
        g = _mulmod(hx, cur, fp, p)
        total += sum(a * b for a, b in zip(g, s))
    return total % p


def _horner_mod(coeffs: List[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _classify(cp: _Compiled, p: int) -> FrobReport:
    fp = [c % p for c in cp.f]
    if cp.table.disc % p == 0 or not is_squarefree_mod(fp, p):
        return FrobReport(p, "bad", reason=RAMIFIED)
    xp = _powmod_x(fp, p, p)
    counts = _ddf(fp, p, xp)
    ct = tuple(sorted((e for e, m in counts.items() for _ in range(m)), reverse=True))
    cands = cp.by_type.get(ct, [])
    if not cands:
        raise TableInconsistency(f"p={p}: no class of cycle type {ct}")
    if len(cands) == 1:
        return FrobReport(p, "good", ct, class_label=cands[0][0])
    if any(r % p == 0 for r in cp.type_resultants[ct]):
        return FrobReport(p, "bad", cycle_type=ct, reason=RESULTANT)
    exps = cands[0][2]
    T = frobenius_trace(cp.f, cp.h, p, exps, xp)
    hits = [label for label, g, _ in cands if _horner_mod(g, T, p) == 0]
    if len(hits) != 1:
        raise TableInconsistency(f"p={p}: {len(hits)} resolvents vanish at trace {T}")
    return FrobReport(p, "good", ct, trace=T, class_label=hits[0], gammas_vanishing=1)


def classify(table: GammaTable, p: int) -> FrobReport:
    """Frobenius class at the prime p (a bad prime gives status "bad")."""
    if p < 2 or not isprime(p):
        raise ValueError(f"{p} is not prime")
    return _classify(_Compiled(table), p)


def _classify_chunk(args) -> List[FrobReport]:
    table, primes = args
    cp = _Compiled(table)
    return [_classify(cp, p) for p in primes]


def classify_range(table: GammaTable, lo: int, hi: int,
                   workers: Optional[int] = 1) -> Iterator[FrobReport]:
    """Reports for every prime in [lo, hi], in increasing order of p."""
    if lo > hi:
        raise ValueError("empty range: lo > hi")
    primes = list(primerange(max(lo, 2), hi + 1))
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(primes) < 64:
        cp = _Compiled(table)
        for p in primes:
            yield _classify(cp, p)
        return
    size = max(16, math.ceil(len(primes) / (workers * 8)))
    chunks = [(table, primes[i:i + size]) for i in range(0, len(primes), size)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for batch in ex.map(_classify_chunk, chunks):
            yield from batch


@dataclass(frozen=True)
class ClassFrequency:
    label: str
    count: int
    observed: float
    expected: float
    z: Optional[float]


def chebotarev_check(reports: Iterable[FrobReport], table: GammaTable,
                     min_reports: int = 100) -> List[ClassFrequency]:
    """Observed class frequencies over good primes against |C|/|G|.

    z-scores use the binomial model and are None below ``min_reports`` good primes.
    """
    good = [r for r in reports if r.good]
    N = len(good)
    counts: Dict[str, int] = {}
    for r in good:
        counts[r.class_label] = counts.get(r.class_label, 0) + 1
    out = []
    for c in table.classes:
        exp = c.size / table.order
        k = counts.get(c.label, 0)
        obs = k / N if N else 0.0
        z = None
        if N >= min_reports and 0 < exp < 1:
            z = (k - N * exp) / math.sqrt(N * exp * (1 - exp))
        out.append(ClassFrequency(c.label, k, obs, exp, z))
    return out


# ---------------------------------------------------------------------------
# independent cross-checks

def _matmul(A, B, p):
    n = len(A)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]


def companion_matrix(f: Sequence[int], p: int) -> List[List[int]]:
    """Companion matrix of monic f: ones below the diagonal, -c_i in the last column."""
    n = len(f) - 1
    M = [[0] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = 1
    for i in range(n):
        M[i][n - 1] = -f[i] % p
    return M


def _matpow(M, e, p):
    n = len(M)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    B = M
    while e:
        if e & 1:
            R = _matmul(R, B, p)
        B = _matmul(B, B, p)
        e >>= 1
    return R


def euler_trace_fast_path(table: GammaTable, p: int, exponents: Sequence[int] = (1,)) -> int:
    """tr(h(M) M^(p^k)) summed over exponents k, M the companion matrix of f mod p.

    An independent route to the trace used by ``classify``.
    """
    f = list(table.f.coeffs)
    n = len(f) - 1
    M = companion_matrix(f, p)
    hM = [[0] * n for _ in range(n)]
    for c in reversed(table.h.coeffs):
        hM = _matmul(hM, M, p)
        for i in range(n):
            hM[i][i] = (hM[i][i] + c) % p
    total = 0
    for k in exponents:
        Mk = _matpow(M, p ** k, p)
        prod = _matmul(hM, Mk, p)
        total += sum(prod[i][i] for i in range(n))
    return total % p


def factor_degrees(f: Sequence[int], p: int) -> Tuple[int, ...]:
    """Degrees of the irreducible factors of a squarefree f mod p, from sympy's
    distinct-degree factorization (independent of the one used by ``classify``)."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_ddf_zassenhaus, gf_monic

    dense = [int(c) % p for c in reversed(f)]
    _, monic = gf_monic(dense, p, ZZ)
    degs = []
    for g, d in gf_ddf_zassenhaus(monic, p, ZZ):
        degs.extend([d] * ((len(g) - 1) // d))
    return tuple(sorted(degs, reverse=True))


def cross_check(table: GammaTable, report: FrobReport, G=None, classes=None) -> List[str]:
    """Problems found by recomputing a good report along independent routes."""
    from . import perm as P

    if not report.good:
        return []
    p = report.p
    problems = []
    degs = factor_degrees(table.f.coeffs, p)
    if degs != report.cycle_type:
        problems.append(f"p={p}: cycle type {report.cycle_type} but factor degrees {degs}")
    entry = table.entry(report.class_label)
    if entry.cycle_type != degs:
        problems.append(f"p={p}: class {entry.label} has cycle type {entry.cycle_type}")
    rep = P.parse_perm(entry.label, table.n)
    if P.order(rep) != math.lcm(*degs):
        problems.append(f"p={p}: class order {P.order(rep)} != lcm of factor degrees")
    if p > 2:
        even = pow(table.disc % p, (p - 1) // 2, p) == 1
        if P.is_even(rep) != even:
            problems.append(f"p={p}: parity of {entry.label} disagrees with disc(f) mod p")
    exps = entry.symmetry_exponents
    t_power = frobenius_trace(list(table.f.coeffs), list(table.h.coeffs), p, exps)
    t_matrix = euler_trace_fast_path(table, p, exps)
    if t_power != t_matrix:
        problems.append(f"p={p}: power-sum trace {t_power} != companion trace {t_matrix}")
    if report.trace is not None and report.trace != t_power:
        problems.append(f"p={p}: reported trace {report.trace} != recomputed {t_power}")
    return problems

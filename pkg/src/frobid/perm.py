"""Permutation groups given by generators: closure, conjugacy classes, power maps.

A permutation of {1..n} is stored as a tuple of 0-based images, so
``p[i] == j`` means the point i+1 goes to j+1.  Products compose right to
left: ``mul(s, t)(i) == s(t(i))``.  Cycle strings use 1-based points, e.g.
``"(1,2,3,4,5)(6,7)"``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]

DEFAULT_CAP = 200_000


class GroupTooLarge(RuntimeError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(s: Perm, t: Perm) -> Perm:
    return tuple(s[i] for i in t)


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def power(s: Perm, k: int) -> Perm:
    n = len(s)
    if k < 0:
        s, k = inverse(s), -k
    out = identity(n)
    base = s
    while k:
        if k & 1:
            out = mul(base, out)
        base = mul(base, base)
        k >>= 1
    return out


def cycles(s: Perm) -> List[Tuple[int, ...]]:
    """Disjoint cycles (0-based), fixed points included."""
    seen = [False] * len(s)
    out = []
    for i in range(len(s)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = s[j]
            out.append(tuple(cyc))
    return out


def cycle_type(s: Perm) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(s)), reverse=True))


def order(s: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles(s))) if s else 1


def is_even(s: Perm) -> bool:
    return sum(len(c) - 1 for c in cycles(s)) % 2 == 0


def format_perm(s: Perm) -> str:
    """Cycle notation with 1-based points; the identity is ``"()"``."""
    parts = ["(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles(s) if len(c) > 1]
    return "".join(parts) or "()"


def parse_perm(text: str, n: int) -> Perm:
    """Parse disjoint-cycle notation such as ``"(1,2,3)(4,5)"`` or ``"(1 2 3)"``."""
    body = re.sub(r"\s+", " ", text.strip())
    if not re.fullmatch(r"(\([\d ,]*\))*", body.replace(" ", "")):
        raise ValueError(f"malformed cycle string: {text!r}")
    images = list(range(n))
    seen = set()
    for grp in re.findall(r"\(([^)]*)\)", body):
        pts = [int(t) for t in re.split(r"[,\s]+", grp.strip()) if t]
        for pt in pts:
            if not 1 <= pt <= n:
                raise ValueError(f"point {pt} out of range 1..{n}")
            if pt in seen:
                raise ValueError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def parse_generators(text: str, n: int) -> List[Perm]:
    """Semicolon-separated generator list, e.g. ``"(1,2,3,4,5);(2,5)(3,4)"``."""
    return [parse_perm(t, n) for t in text.split(";") if t.strip()]


@dataclass(frozen=True)
class PermGroup:
    n: int
    generators: Tuple[Perm, ...]
    elements: Tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, s: Perm) -> bool:
        return s in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.elements)
            object.__setattr__(self, "_idx", idx)
        return idx


@dataclass(frozen=True)
class ConjClass:
    representative: Perm
    size: int
    cycle_type: Tuple[int, ...]
    members: Tuple[Perm, ...]
    order: int

    @property
    def label(self) -> str:
        return format_perm(self.representative)


@dataclass(frozen=True)
class SymmetryGroup:
    """Exponents k, prime to the element order, fixing every class of one family."""

    order: int
    cycle_type: Tuple[int, ...]
    exponents: Tuple[int, ...] = field(default=(1,))


def closure(n: int, generators: Sequence[Perm], cap: int = DEFAULT_CAP) -> PermGroup:
    """Materialise the group generated by ``generators`` by breadth-first search."""
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != n or sorted(g) != list(range(n)):
            raise ValueError(f"not a permutation of {n} points: {g}")
        if g != identity(n) and g not in gens:
            gens.append(g)
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLarge(f"group order exceeds cap {cap}")
                queue.append(y)
    return PermGroup(n, tuple(gens), tuple(sorted(seen)))


def conjugacy_classes(G: PermGroup) -> List[ConjClass]:
    """Classes ordered by element order, then cycle type, then representative."""
    gens = [(g, inverse(g)) for g in G.generators]
    assigned = set()
    out = []
    for x in G.elements:
        if x in assigned:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g, gi in gens:
                z = mul(mul(g, y), gi)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        assigned |= orbit
        members = tuple(sorted(orbit))
        rep = members[0]
        out.append(ConjClass(rep, len(members), cycle_type(rep), members, order(rep)))
    out.sort(key=lambda c: (c.order, tuple(-k for k in c.cycle_type), c.representative))
    return out


def class_index(classes: Sequence[ConjClass]) -> Dict[Perm, int]:
    return {m: i for i, c in enumerate(classes) for m in c.members}


def power_class_map(G: PermGroup, classes: Sequence[ConjClass], k: int) -> Dict[str, str]:
    """Label of the class of g^k for each class label; checked over all members."""
    if k < 0:
        raise ValueError("k must be non-negative")
    where = class_index(classes)
    out = {}
    for c in classes:
        targets = {where[power(m, k)] for m in c.members}
        if len(targets) != 1:
            raise AssertionError(f"power map of {c.label} depends on representative")
        out[c.label] = classes[targets.pop()].label
    return out


def _units(o: int) -> List[int]:
    return [k for k in range(1, max(o, 2)) if math.gcd(k, o) == 1] if o > 1 else [1]


def detect_symmetries(classes: Sequence[ConjClass]) -> List[SymmetryGroup]:
    """Largest exponent subgroup H of (Z/o)^x closing every class of each family.

    A family is the set of classes sharing an element order and a cycle type.
    The stabiliser of each class under the power action is a subgroup, so the
    largest valid H is their intersection.
    """
    families: Dict[Tuple[int, Tuple[int, ...]], List[ConjClass]] = {}
    for c in classes:
        families.setdefault((c.order, c.cycle_type), []).append(c)
    out = []
    for (o, ct), fam in sorted(families.items(), key=lambda kv: (kv[0][0], [-a for a in kv[0][1]])):
        H = []
        for k in _units(o):
            if all(power(c.representative, k) in set(c.members) for c in fam):
                H.append(k)
        out.append(SymmetryGroup(o, ct, tuple(H)))
    return out


def conjugate_group(G: PermGroup, tau: Perm) -> PermGroup:
    """The group tau G tau^-1 (relabel points by tau)."""
    ti = inverse(tau)
    gens = [mul(mul(tau, g), ti) for g in G.generators]
    return closure(G.n, gens, cap=max(G.order, 1))

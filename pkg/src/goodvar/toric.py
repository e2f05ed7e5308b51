"""Smooth complete fans, stellar subdivision and Chern numbers by localization.

Each maximal cone of a smooth fan is a torus-fixed point of the toric
variety.  The tangent weights there are the dual basis of the cone's rays,
and every Chern number is a sum over fixed points of a symmetric function
of the weights divided by their product (Atiyah-Bott / Bott residue
formula).  The sum is computed with exact rationals after specializing the
weights at an integer point that avoids every zero denominator.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, prod
from typing import Sequence

from .chern import ChernVector
from .errors import InvalidFan, LocalizationError
from .partitions import Partition, m_to_e_matrix, partitions

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(int(i) for i in c) for c in self.max_cones))

    def to_json(self) -> str:
        return json.dumps(
            {"rank": self.rank, "rays": [list(r) for r in self.rays],
             "max_cones": [list(c) for c in self.max_cones]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        data = json.loads(text)
        try:
            return cls(data["rank"], data["rays"], data["max_cones"])
        except KeyError as exc:
            raise InvalidFan(f"fan file is missing key {exc}") from None


def _det(m: Sequence[Sequence[int]]) -> int:
    # Bareiss fraction-free elimination
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _cone_matrix(fan: Fan, cone: Sequence[int]) -> list[list[int]]:
    # rays as columns
    return [[fan.rays[r][i] for r in cone] for i in range(fan.rank)]


def validate_fan(fan: Fan) -> list[str]:
    """Return the list of violated fan invariants; empty means valid.

    Completeness is checked combinatorially: each facet of a maximal cone
    must lie in exactly two maximal cones.  Projectivity is not checked.
    """
    problems: list[str] = []
    n = fan.rank
    if n < 1:
        return [f"rank must be >= 1, got {n}"]
    seen: dict[Vector, int] = {}
    for idx, ray in enumerate(fan.rays):
        if len(ray) != n:
            problems.append(f"ray {idx} has length {len(ray)}, expected {n}")
            continue
        if gcd(*ray) != 1:
            problems.append(f"ray {idx} {list(ray)} is not primitive")
        if ray in seen:
            problems.append(f"duplicate ray {idx} (same as ray {seen[ray]})")
        else:
            seen[ray] = idx
    if problems:
        return problems
    cone_sets: dict[frozenset, int] = {}
    for ci, cone in enumerate(fan.max_cones):
        if len(cone) != n or len(set(cone)) != n:
            problems.append(f"cone {ci} {list(cone)} does not have {n} distinct rays")
            continue
        if any(not 0 <= r < len(fan.rays) for r in cone):
            problems.append(f"cone {ci} {list(cone)} references a missing ray")
            continue
        key = frozenset(cone)
        if key in cone_sets:
            problems.append(f"duplicate cone {ci} (same as cone {cone_sets[key]})")
            continue
        cone_sets[key] = ci
        d = _det(_cone_matrix(fan, cone))
        if abs(d) != 1:
            problems.append(f"cone {ci} {list(cone)} is not smooth (determinant {d})")
    if problems:
        return problems
    facets: dict[frozenset, list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for facet in combinations(sorted(cone), n - 1):
            facets.setdefault(frozenset(facet), []).append(ci)
    for facet, cones in sorted(facets.items(), key=lambda kv: sorted(kv[0])):
        if len(cones) == 1:
            problems.append(f"facet {sorted(facet)} with one incident cone ({cones[0]})")
        elif len(cones) > 2:
            problems.append(f"facet {sorted(facet)} shared by {len(cones)} cones {cones}")
    used = {r for cone in fan.max_cones for r in cone}
    for idx in range(len(fan.rays)):
        if idx not in used:
            problems.append(f"ray {idx} lies in no maximal cone")
    return problems


def check_fan(fan: Fan) -> None:
    problems = validate_fan(fan)
    if problems:
        raise InvalidFan("; ".join(problems))


def projective_space_fan(n: int) -> Fan:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rays = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    rays.append(tuple([-1] * n))
    cones = [tuple(r for r in range(n + 1) if r != omit) for omit in range(n, -1, -1)]
    return Fan(n, tuple(rays), tuple(cones))


def blow_up(fan: Fan, cone: int | Sequence[int]) -> Fan:
    """Blow up the fixed point of a maximal cone (stellar subdivision).

    ``cone`` is an index into ``fan.max_cones`` or the set of ray indices
    of the cone.  The new ray is the sum of the cone's rays; the cone is
    removed and the ``n`` new cones are appended at the end, so the indices
    of the untouched cones below it shift down by one.  In rank 1 the fan
    is returned unchanged.
    """
    if isinstance(cone, int):
        if not 0 <= cone < len(fan.max_cones):
            raise IndexError(f"cone index {cone} out of range (fan has {len(fan.max_cones)} cones)")
        index = cone
    else:
        wanted = frozenset(cone)
        index = next((i for i, c in enumerate(fan.max_cones) if frozenset(c) == wanted), None)
        if index is None:
            raise InvalidFan(f"no maximal cone with rays {sorted(wanted)}")
    if fan.rank == 1:
        # a point of a curve is a divisor: blowing it up changes nothing
        return fan
    old = fan.max_cones[index]
    new_ray = tuple(sum(fan.rays[r][i] for r in old) for i in range(fan.rank))
    new_idx = len(fan.rays)
    new_cones = [tuple(new_idx if r == omit else r for r in old) for omit in old]
    cones = fan.max_cones[:index] + fan.max_cones[index + 1:] + tuple(new_cones)
    return Fan(fan.rank, fan.rays + (new_ray,), cones)


def star_subdivide(fan: Fan, rays: Sequence[int]) -> Fan:
    """Stellar subdivision of an arbitrary cone (blow-up along its orbit closure).

    Every maximal cone containing ``rays`` is split into one cone per ray of
    ``rays``, with that ray replaced by the new ray (the sum of ``rays``).
    Untouched cones keep their order; split cones are appended in order.
    """
    face = frozenset(rays)
    if not face or any(not 0 <= r < len(fan.rays) for r in face):
        raise InvalidFan(f"bad cone {sorted(face)}")
    new_ray = tuple(sum(fan.rays[r][i] for r in sorted(face)) for i in range(fan.rank))
    new_idx = len(fan.rays)
    kept, split = [], []
    for cone in fan.max_cones:
        if face <= set(cone):
            split.extend(tuple(new_idx if r == omit else r for r in cone) for omit in sorted(face))
        else:
            kept.append(cone)
    if not split:
        raise InvalidFan(f"rays {sorted(face)} do not span a cone of the fan")
    return Fan(fan.rank, fan.rays + (new_ray,), tuple(kept + split))


def _inverse_unimodular(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InvalidFan("cone matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inv = [row[n:] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise InvalidFan("cone is not unimodular")
    return [[int(x) for x in row] for row in inv]


def fixed_point_weights(fan: Fan) -> list[list[Vector]]:
    """Tangent weights at each fixed point: rows of the inverse ray matrix."""
    out = []
    for ci, cone in enumerate(fan.max_cones):
        try:
            inv = _inverse_unimodular(_cone_matrix(fan, cone))
        except InvalidFan as exc:
            raise InvalidFan(f"cone {ci}: {exc}") from None
        out.append([tuple(row) for row in inv])
    return out


def _elementary(values: Sequence[Fraction | int]) -> list:
    e = [1] + [0] * len(values)
    for v in values:
        for k in range(len(values), 0, -1):
            e[k] += e[k - 1] * v
    return e


def localization_sum(weights: list[list[Vector]], point: Sequence[int]) -> dict[Partition, Fraction]:
    """m-coordinates as rational sums over fixed points, weights evaluated at ``point``.

    Raises ``ZeroDivisionError`` if ``point`` annihilates some weight.
    """
    n = len(point)
    parts = partitions(n)
    m_to_e = m_to_e_matrix(n)
    totals = [Fraction(0)] * len(parts)
    for cone_weights in weights:
        vals = [sum(w_i * t_i for w_i, t_i in zip(w, point)) for w in cone_weights]
        denom = prod(vals)
        if denom == 0:
            raise ZeroDivisionError("evaluation point kills a tangent weight")
        e = _elementary(vals)
        e_vals = [prod(e[p] for p in lam) for lam in parts]
        for k, row in enumerate(m_to_e):
            num = sum(c * ev for c, ev in zip(row, e_vals) if c)
            totals[k] += Fraction(num, denom)
    return dict(zip(parts, totals))


def generic_point(weights: list[list[Vector]], rank: int, seed: int = 0, tries: int = 200) -> tuple[int, ...]:
    """An integer point on which no tangent weight vanishes."""
    rng = random.Random(seed)
    bound = 2 * rank + 2
    all_weights = {w for cone in weights for w in cone}
    for attempt in range(tries):
        point = tuple(rng.randint(-bound, bound) for _ in range(rank))
        if all(sum(a * b for a, b in zip(w, point)) for w in all_weights):
            return point
        if attempt % 10 == 9:
            bound *= 2
    raise LocalizationError(f"no generic point found after {tries} tries")


def toric_chern_vector(fan: Fan, seed: int = 0) -> ChernVector:
    """Chern data of the smooth complete toric variety of ``fan`` by localization."""
    check_fan(fan)
    weights = fixed_point_weights(fan)
    point = generic_point(weights, fan.rank, seed)
    sums = localization_sum(weights, point)
    bad = [lam for lam, v in sums.items() if v.denominator != 1]
    if bad:
        raise LocalizationError(
            "localization sum is not integral at " + ", ".join(str(lam) for lam in bad)
        )
    return ChernVector(fan.rank, {lam: int(v) for lam, v in sums.items()})


def blown_up_projective_space(n: int, k: int) -> Fan:
    """Fan of ``CP^n`` blown up at ``k`` distinct torus-fixed points."""
    if not 0 <= k <= n + 1:
        raise ValueError(f"CP^{n} has {n + 1} fixed points, cannot blow up {k}")
    fan = projective_space_fan(n)
    for _ in range(k):
        # blow_up appends new cones, so index 0 is always an original fixed point
        fan = blow_up(fan, 0)
    return fan


@lru_cache(maxsize=None)
def blcp_chern(n: int, k: int) -> ChernVector:
    return toric_chern_vector(blown_up_projective_space(n, k))


def blown_up_along_subspace(n: int, r: int) -> Fan:
    """Fan of ``CP^n`` blown up along a coordinate ``CP^(n-r)`` (codimension ``r``)."""
    if not 2 <= r <= n:
        raise ValueError(f"codimension must satisfy 2 <= r <= n, got r={r}, n={n}")
    return star_subdivide(projective_space_fan(n), range(r))


@lru_cache(maxsize=None)
def blsub_chern(n: int, r: int) -> ChernVector:
    return toric_chern_vector(blown_up_along_subspace(n, r))

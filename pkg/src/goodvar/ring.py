"""Generator systems for the complex cobordism ring and exact coordinates.

In each complex dimension ``d`` a generator is a formal integer combination
of named varieties whose Milnor number is ``+-eta(d)``.  Products of
generators indexed by partitions form a basis of the degree-``d`` part of
the ring, and :func:`decompose` solves for integer coordinates in it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping

from .chern import ChernVector, add, milnor_number, point, product, scale, zero
from .errors import DimensionMismatch, NonIntegral, Singular, StrictModeGap
from .numbertheory import eta
from .partitions import Partition, format_partition, parse_partition, partitions
from .varieties import (
    RELAXED_H_MIN,
    STRICT_H_MIN,
    BlCP,
    BlSub,
    CP,
    GoodVariety,
    H,
    chern_of,
)

MODES = ("strict", "relaxed")
BLOWUP_POOLS = ("points", "subspaces")
DEFAULT_MAX_DIM = 8


def eta_for_dim(d: int) -> int:
    return eta(d)


def candidate_pool(d: int, mode: str = "strict", blowups: str = "subspaces") -> list[GoodVariety]:
    """Varieties of dimension ``d`` that may enter a generator, in search order."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if blowups not in BLOWUP_POOLS:
        raise ValueError(f"blowups must be one of {BLOWUP_POOLS}, got {blowups!r}")
    i_min = STRICT_H_MIN if mode == "strict" else RELAXED_H_MIN
    pool = [CP(d)]
    pool += [H(i, d + 1 - i) for i in range(i_min, (d + 1) // 2 + 1)]
    if d >= 2:
        pool += [BlCP(d, k) for k in range(1, d + 2)]
    if blowups == "subspaces":
        pool += [BlSub(d, r) for r in range(2, d)]
    return pool


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(values: list[int]) -> tuple[int, list[int]]:
    """``(g, coeffs)`` with ``sum(c * v) = g = gcd(values) >= 0``."""
    g, coeffs = values[0], [1]
    if g < 0:
        g, coeffs = -g, [-1]
    for v in values[1:]:
        g, u, w = _extended_gcd(g, v)
        coeffs = [u * c for c in coeffs] + [w]
    return g, coeffs


@dataclass(frozen=True)
class Generator:
    dim: int
    terms: tuple[tuple[GoodVariety, int], ...]
    milnor: int

    @property
    def chern(self) -> ChernVector:
        out = zero(self.dim)
        for gv, c in self.terms:
            out = add(out, scale(c, chern_of(gv)))
        return out

    def describe(self) -> str:
        parts = []
        for gv, c in self.terms:
            if not parts:
                lead = "" if c == 1 else "-" if c == -1 else f"{c}*"
                parts.append(f"{lead}{gv}")
            else:
                sign = "+" if c > 0 else "-"
                parts.append(f"{sign} {gv}" if abs(c) == 1 else f"{sign} {abs(c)}*{gv}")
        return " ".join(parts)


def find_generator(d: int, mode: str = "strict", blowups: str = "subspaces") -> Generator | None:
    """Smallest-support combination from the pool with ``|s_d| = eta(d)``.

    Single varieties come first, then pairs, and so on, each in pool order.
    Relaxed mode only reaches for hypersurfaces with ``i < 4`` when the strict
    pool fails.  Returns ``None`` when the gcd of the whole pool exceeds
    ``eta(d)``.
    """
    if mode == "relaxed":
        found = find_generator(d, "strict", blowups)
        if found is not None:
            return found
    target = eta(d)
    pool = candidate_pool(d, mode, blowups)
    s = {gv: milnor_number(chern_of(gv)) for gv in pool}
    overall = 0
    for gv in pool:
        overall = gcd(overall, s[gv])
    if overall != target:
        return None
    for size in range(1, len(pool) + 1):
        for subset in combinations(pool, size):
            values = [s[gv] for gv in subset]
            if size == 1:
                if abs(values[0]) == target:
                    return Generator(d, ((subset[0], 1),), values[0])
                continue
            g, coeffs = bezout(values)
            if g == target:
                terms = tuple((gv, c) for gv, c in zip(subset, coeffs) if c)
                return Generator(d, terms, g)
    raise AssertionError("unreachable: the full pool attains eta")


@dataclass(frozen=True)
class ClassCoordinates:
    dim: int
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for lam, c in self.coeffs.items():
            lam = Partition(lam)
            if lam.weight != self.dim:
                raise DimensionMismatch(f"partition {lam} has weight {lam.weight}, expected {self.dim}")
            clean[lam] = int(c)
        object.__setattr__(self, "coeffs", {lam: clean.get(lam, 0) for lam in partitions(self.dim)})

    def to_text(self) -> str:
        lines = [f"dim: {self.dim}"]
        lines += [f"{format_partition(lam)}: {c}" for lam, c in self.coeffs.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ClassCoordinates":
        dim = None
        coeffs: dict[Partition, int] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: expected 'key: value', got {raw!r}")
            if key.strip() == "dim":
                dim = int(val)
            else:
                coeffs[parse_partition(key)] = int(val)
        if dim is None:
            raise ValueError("missing 'dim:' header")
        return cls(dim, coeffs)


class GeneratorSystem:
    """Generators in dimensions ``1..max_dim``; immutable after construction."""

    def __init__(self, max_dim: int, mode: str, blowups: str, generators: dict[int, Generator], gaps: Iterable[int]):
        self.max_dim = max_dim
        self.mode = mode
        self.blowups = blowups
        self._generators = dict(generators)
        self.gaps = tuple(sorted(gaps))
        self._chern: dict[int, ChernVector] = {}
        self._inverse: dict[int, list[list[Fraction]]] = {}

    def __repr__(self) -> str:
        return f"GeneratorSystem(max_dim={self.max_dim}, mode={self.mode!r}, blowups={self.blowups!r}, gaps={self.gaps})"

    def generator(self, d: int) -> Generator:
        if not 1 <= d <= self.max_dim:
            raise ValueError(f"dimension {d} outside the system's range 1..{self.max_dim}")
        if d in self._generators:
            return self._generators[d]
        raise StrictModeGap([d])

    def require(self, dim: int) -> None:
        if dim > self.max_dim:
            raise ValueError(f"dimension {dim} exceeds the generator system bound {self.max_dim}")
        missing = [d for d in self.gaps if d <= dim]
        if missing:
            raise StrictModeGap(missing)

    def generator_chern(self, d: int) -> ChernVector:
        if d not in self._chern:
            self._chern[d] = self.generator(d).chern
        return self._chern[d]

    def report(self) -> str:
        lines = [f"mode: {self.mode}", f"blowups: {self.blowups}", f"max-dim: {self.max_dim}"]
        for d in range(1, self.max_dim + 1):
            if d in self._generators:
                g = self._generators[d]
                lines.append(f"{d}: {g.describe()}  s={g.milnor} eta={eta(d)}")
            else:
                lines.append(f"{d}: none  eta={eta(d)}")
        return "\n".join(lines) + "\n"


def build_generator_system(max_dim: int = DEFAULT_MAX_DIM, mode: str = "relaxed", blowups: str = "subspaces") -> GeneratorSystem:
    """Search every dimension; dimensions without a generator are listed in ``gaps``."""
    if max_dim < 1:
        raise ValueError(f"max_dim must be >= 1, got {max_dim}")
    generators, gaps = {}, []
    for d in range(1, max_dim + 1):
        g = find_generator(d, mode, blowups)
        if g is None:
            gaps.append(d)
        else:
            assert abs(g.milnor) == eta(d) == abs(milnor_number(g.chern))
            generators[d] = g
    return GeneratorSystem(max_dim, mode, blowups, generators, gaps)


def monomial_chern(gs: GeneratorSystem, lam) -> ChernVector:
    out = point(1)
    for part in Partition(lam):
        out = product(out, gs.generator_chern(part))
    return out


def _solve_matrix(gs: GeneratorSystem, n: int) -> list[list[Fraction]]:
    if n in gs._inverse:
        return gs._inverse[n]
    parts = partitions(n)
    cols = [monomial_chern(gs, lam).mcoords for lam in parts]
    k = len(parts)
    # augmented [A | I] with A[mu][lam] = m_mu coordinate of generator monomial lam
    a = [[Fraction(cols[j][mu]) for j in range(k)] + [Fraction(int(i == j)) for j in range(k)]
         for i, mu in enumerate(parts)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            raise Singular(f"generator monomials of dimension {n} are linearly dependent")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    gs._inverse[n] = [row[k:] for row in a]
    return gs._inverse[n]


def decompose(v: ChernVector, gs: GeneratorSystem) -> ClassCoordinates:
    """Integer coordinates of ``v`` over the generator monomials of its dimension."""
    n = v.dim
    if n == 0:
        return ClassCoordinates(0, {(): v.mcoords[()]})
    gs.require(n)
    inverse = _solve_matrix(gs, n)
    parts = partitions(n)
    rhs = [v.mcoords[mu] for mu in parts]
    sol = [sum((c * x for c, x in zip(row, rhs) if x), Fraction(0)) for row in inverse]
    bad = [(lam, x) for lam, x in zip(parts, sol) if x.denominator != 1]
    if bad:
        detail = ", ".join(f"{format_partition(lam)}={x}" for lam, x in bad)
        raise NonIntegral(f"class is not an integral combination of generator monomials ({detail})")
    return ClassCoordinates(n, {lam: int(x) for lam, x in zip(parts, sol)})


def compose(c: ClassCoordinates, gs: GeneratorSystem) -> ChernVector:
    out = zero(c.dim)
    for lam, k in c.coeffs.items():
        if k:
            out = add(out, scale(k, monomial_chern(gs, lam)))
    return out


def is_decomposable(v: ChernVector) -> bool:
    """True iff ``s_n(v) = 0``, i.e. ``v`` lies in the ideal of lower-degree classes."""
    return milnor_number(v) == 0

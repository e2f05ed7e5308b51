"""Cobordism classes as complete sets of Chern numbers.

A :class:`ChernVector` stores, for every partition ``mu`` of the complex
dimension, the integral of the monomial symmetric function ``m_mu`` of the
Chern roots.  The Milnor number is the coordinate at ``(n,)``.  The usual
Chern numbers ``c_lam[M]`` live in a :class:`ChernNumberTable`; the two are
related by the integer e/m basis change.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Mapping

from .errors import DimensionMismatch
from .partitions import (
    Partition,
    format_partition,
    pair_e_with_m_values,
    pair_m_with_e_values,
    parse_partition,
    partitions,
)


def _normalize(dim: int, coords: Mapping) -> dict[Partition, int]:
    out = {}
    for lam, v in coords.items():
        lam = Partition(lam)
        if lam.weight != dim:
            raise DimensionMismatch(f"partition {lam} has weight {lam.weight}, expected {dim}")
        out[lam] = int(v)
    return {lam: out.get(lam, 0) for lam in partitions(dim)}


@dataclass(frozen=True, eq=False)
class ChernVector:
    """A complex cobordism class of complex dimension ``dim``, in m-coordinates."""

    dim: int
    mcoords: Mapping[Partition, int]

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"dimension must be non-negative, got {self.dim}")
        object.__setattr__(self, "mcoords", _normalize(self.dim, self.mcoords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChernVector):
            return NotImplemented
        return self.dim == other.dim and self.mcoords == other.mcoords

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.mcoords.values())))

    def __repr__(self) -> str:
        body = ", ".join(f"{format_partition(k)}: {v}" for k, v in self.mcoords.items())
        return f"ChernVector(dim={self.dim}, m={{{body}}})"

    def __add__(self, other: "ChernVector") -> "ChernVector":
        return add(self, other)

    def __sub__(self, other: "ChernVector") -> "ChernVector":
        return add(self, scale(-1, other))

    def __neg__(self) -> "ChernVector":
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, ChernVector):
            return product(self, other)
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.mcoords.values())


@dataclass(frozen=True)
class ChernNumberTable:
    """Chern numbers ``c_lam[M]`` for every partition of ``dim``."""

    dim: int
    values: Mapping[Partition, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _normalize(self.dim, self.values))

    def __getitem__(self, lam) -> int:
        return self.values[Partition(lam)]


def zero(dim: int) -> ChernVector:
    return ChernVector(dim, {})


def point(count: int = 1) -> ChernVector:
    return ChernVector(0, {(): count})


def add(a: ChernVector, b: ChernVector) -> ChernVector:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot add classes of dimension {a.dim} and {b.dim}")
    return ChernVector(a.dim, {k: a.mcoords[k] + b.mcoords[k] for k in a.mcoords})


def scale(k: int, a: ChernVector) -> ChernVector:
    return ChernVector(a.dim, {lam: k * v for lam, v in a.mcoords.items()})


def product(a: ChernVector, b: ChernVector) -> ChernVector:
    """Class of the product manifold.

    Uses ``m_lam(x, y) = sum over mu + nu = lam of m_mu(x) m_nu(y)``; only
    the terms with ``|mu| = dim a`` and ``|nu| = dim b`` integrate nonzero.
    """
    out: dict[Partition, int] = {}
    for mu, x in a.mcoords.items():
        if not x:
            continue
        for nu, y in b.mcoords.items():
            if y:
                lam = Partition.sorted(mu + nu)
                out[lam] = out.get(lam, 0) + x * y
    return ChernVector(a.dim + b.dim, out)


def milnor_number(v: ChernVector) -> int:
    if v.dim < 1:
        raise DimensionMismatch("the Milnor number needs dimension >= 1")
    return v.mcoords[Partition((v.dim,))]


def to_table(v: ChernVector) -> ChernNumberTable:
    return ChernNumberTable(v.dim, pair_e_with_m_values(v.dim, v.mcoords))


def from_table(t: ChernNumberTable) -> ChernVector:
    return ChernVector(t.dim, pair_m_with_e_values(t.dim, t.values))


def chern_number(v: ChernVector, lam) -> int:
    lam = Partition(lam)
    if lam.weight != v.dim:
        raise DimensionMismatch(f"partition {lam} has weight {lam.weight}, class has dimension {v.dim}")
    return to_table(v).values[lam]


# -- closed forms ---------------------------------------------------------


@lru_cache(maxsize=None)
def cp_chern(n: int) -> ChernVector:
    """``CP^n``: total Chern class ``(1 + x)^(n+1)``, so ``c_lam = prod binom(n+1, lam_i)``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    table = {lam: prod(comb(n + 1, p) for p in lam) for lam in partitions(n)}
    return from_table(ChernNumberTable(n, table))


def curve_chern(g: int) -> ChernVector:
    """Genus-``g`` curve; ``c_1 = 2 - 2g`` is the complete invariant in dimension 1."""
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    return ChernVector(1, {(1,): 2 - 2 * g})


class TruncatedBivariate:
    """Dense polynomials in ``Z[x, y] / (x^(a+1), y^(b+1))``."""

    def __init__(self, a: int, b: int):
        self.a, self.b = a, b

    def zero(self) -> list[list[int]]:
        return [[0] * (self.b + 1) for _ in range(self.a + 1)]

    def monomial(self, c: int, i: int, j: int) -> list[list[int]]:
        p = self.zero()
        if i <= self.a and j <= self.b:
            p[i][j] = c
        return p

    def mul(self, p, q):
        r = self.zero()
        for i, row in enumerate(p):
            for j, c in enumerate(row):
                if not c:
                    continue
                for k in range(self.a + 1 - i):
                    qrow = q[k]
                    rrow = r[i + k]
                    for l in range(self.b + 1 - j):
                        if qrow[l]:
                            rrow[j + l] += c * qrow[l]
        return r

    def add(self, p, q):
        return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(p, q)]

    def homogeneous_part(self, p, d: int):
        r = self.zero()
        for i in range(self.a + 1):
            j = d - i
            if 0 <= j <= self.b:
                r[i][j] = p[i][j]
        return r


@lru_cache(maxsize=None)
def milnor_hypersurface_chern(i: int, j: int) -> ChernVector:
    """Milnor hypersurface ``H_{i,j}``, a degree (1,1) divisor in ``CP^i x CP^j``.

    Total Chern class ``(1+x)^(i+1) (1+y)^(j+1) / (1+x+y)`` in the ambient
    truncated ring; integration over ``H`` multiplies by ``x + y`` and reads
    off the coefficient of ``x^i y^j``.
    """
    if not 1 <= i <= j:
        raise ValueError(f"Milnor hypersurface needs 1 <= i <= j, got ({i}, {j})")
    n = i + j - 1
    ring = TruncatedBivariate(i, j)
    total = ring.zero()
    for a in range(i + 1):
        for b in range(j + 1):
            total[a][b] = comb(i + 1, a) * comb(j + 1, b)
    x_plus_y = ring.add(ring.monomial(1, 1, 0), ring.monomial(1, 0, 1))
    inverse = ring.monomial(1, 0, 0)
    power = ring.monomial(1, 0, 0)
    for k in range(1, n + 1):
        power = ring.mul(power, x_plus_y)
        inverse = ring.add(inverse, [[(-1) ** k * c for c in row] for row in power])
    total = ring.mul(total, inverse)
    classes = [ring.homogeneous_part(total, d) for d in range(n + 1)]

    table = {}
    for lam in partitions(n):
        alpha = x_plus_y
        for part in lam:
            alpha = ring.mul(alpha, classes[part])
        table[lam] = alpha[i][j]
    return from_table(ChernNumberTable(n, table))


# -- text format ----------------------------------------------------------


def format_class(v: ChernVector, basis: str = "c") -> str:
    """``dim: n`` / ``basis: c|m`` header, then one ``lam: value`` line per partition."""
    if basis == "c":
        values = to_table(v).values
    elif basis == "m":
        values = v.mcoords
    else:
        raise ValueError(f"unknown basis {basis!r}")
    lines = [f"dim: {v.dim}", f"basis: {basis}"]
    lines += [f"{format_partition(lam)}: {values[lam]}" for lam in partitions(v.dim)]
    return "\n".join(lines) + "\n"


def parse_class(text: str) -> ChernVector:
    dim = None
    basis = "c"
    values: dict[Partition, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, val = key.strip(), val.strip()
        if key == "dim":
            dim = int(val)
        elif key == "basis":
            if val not in ("c", "m"):
                raise ValueError(f"line {lineno}: unknown basis {val!r}")
            basis = val
        else:
            lam = parse_partition(key)
            if lam in values:
                raise ValueError(f"line {lineno}: duplicate entry for {key}")
            values[lam] = int(val)
    if dim is None:
        raise ValueError("missing 'dim:' header")
    if basis == "m":
        return ChernVector(dim, values)
    return from_table(ChernNumberTable(dim, values))

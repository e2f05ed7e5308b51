"""Partitions and exact conversions between e-, m- and p-symmetric functions.

All symmetric functions here are homogeneous of a fixed degree ``n``.  A
coordinate vector over the monomial basis ``m_mu`` or the elementary basis
``e_lam`` is a dict keyed by :class:`Partition`.  Chern classes are the
elementary symmetric functions of the Chern roots, so ``e_lam`` is the
Chern monomial ``c_{lam_1} ... c_{lam_k}``.

Partitions of ``n`` are always listed in reverse lexicographic order,
``(4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)``; every matrix and every
text file uses that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted(parts, reverse=True))

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(lam: Partition) -> str:
    """Text form ``"2,1,1"``; the empty partition is written ``"()"``."""
    return ",".join(str(p) for p in lam) if lam else "()"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "()"):
        return Partition()
    try:
        return Partition(int(t) for t in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad partition {text!r}: {exc}") from None


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + rest))
    return tuple(out)


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    ``partitions(0)`` is ``[()]`` so that points (dimension 0) fit the same
    machinery.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return list(_partitions(n, n))


def partition_index(n: int) -> dict[Partition, int]:
    return {lam: k for k, lam in enumerate(_partitions(n, n))}


@dataclass(frozen=True)
class SymPolynomial:
    """Integer polynomial in ``c_1, ..., c_n`` homogeneous of ``degree``.

    ``coeffs[lam]`` is the coefficient of ``c_{lam_1} ... c_{lam_k}``.
    """

    degree: int
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for lam, c in self.coeffs.items():
            lam = Partition(lam)
            if lam.weight != self.degree:
                raise ValueError(f"{lam} has weight {lam.weight}, expected {self.degree}")
            if c:
                clean[lam] = int(c)
        object.__setattr__(self, "coeffs", clean)

    def evaluate(self, table: Mapping[Partition, int]) -> int:
        """Evaluate on Chern numbers: replace each monomial by its value in ``table``."""
        return sum(c * table[lam] for lam, c in self.coeffs.items())

    def to_text(self) -> str:
        return "".join(
            f"{format_partition(lam)}: {self.coeffs[lam]}\n"
            for lam in partitions(self.degree)
            if lam in self.coeffs
        )


def _count_01_matrices(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of 0-1 matrices with the given row and column sums."""

    @lru_cache(maxsize=None)
    def count(r: int, remaining: tuple[int, ...]) -> int:
        if r == len(rows):
            return int(not any(remaining))
        total = 0
        need = rows[r]
        # choose which columns receive a 1 in row r
        def place(c: int, left: int, current: list[int]) -> None:
            nonlocal total
            if left == 0:
                total += count(r + 1, tuple(sorted(current, reverse=True)))
                return
            if len(current) - c < left:
                return
            for k in range(c, len(current)):
                if current[k] > 0:
                    current[k] -= 1
                    place(k + 1, left - 1, current)
                    current[k] += 1

        place(0, need, list(remaining))
        return total

    return count(0, tuple(sorted(cols, reverse=True)))


BasisMatrix = list[list[int]]


@lru_cache(maxsize=None)
def _e_to_m(n: int) -> tuple[tuple[int, ...], ...]:
    parts = partitions(n)
    return tuple(
        tuple(_count_01_matrices(tuple(lam), tuple(mu)) for mu in parts) for lam in parts
    )


def e_to_m_matrix(n: int) -> BasisMatrix:
    """Row ``lam`` holds the m-coordinates of ``e_lam``.

    The coefficient of ``m_mu`` in ``e_lam`` counts 0-1 matrices with row
    sums ``lam`` and column sums ``mu``.
    """
    return [list(row) for row in _e_to_m(n)]


def invert_integer_matrix(a: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a square integer matrix; raises if not unimodular.

    Pivots of absolute value 1 are preferred so the elimination stays in
    integers; otherwise it falls back to rationals.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        candidates = [r for r in range(col, n) if m[r][col] != 0]
        if not candidates:
            raise ValueError("matrix is singular")
        piv = next((r for r in candidates if abs(m[r][col]) == 1), candidates[0])
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        if p != 1:
            m[col] = [x / p for x in m[col]]
        pivot_row = m[col]
        nz = [j for j in range(col, 2 * n) if pivot_row[j] != 0]
        for r in range(n):
            f = m[r][col]
            if r != col and f != 0:
                row = m[r]
                for j in nz:
                    row[j] -= f * pivot_row[j]
    inv = [row[n:] for row in m]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not invertible over the integers")
    return [[int(x) for x in row] for row in inv]


@lru_cache(maxsize=None)
def _m_to_e(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in invert_integer_matrix(e_to_m_matrix(n)))


def m_to_e_matrix(n: int) -> BasisMatrix:
    """Row ``mu`` holds the e-coordinates of ``m_mu``; inverse of :func:`e_to_m_matrix`."""
    return [list(row) for row in _m_to_e(n)]


def _apply(matrix: tuple[tuple[int, ...], ...], n: int, vec: Mapping[Partition, int]) -> dict[Partition, int]:
    # vec is expressed against the row basis; returns coordinates in the column basis
    parts = partitions(n)
    out = [0] * len(parts)
    for k, lam in enumerate(parts):
        c = vec.get(lam, 0)
        if c:
            row = matrix[k]
            for j in range(len(parts)):
                out[j] += c * row[j]
    return {mu: v for mu, v in zip(parts, out)}


def e_coords_to_m(n: int, vec: Mapping[Partition, int]) -> dict[Partition, int]:
    return _apply(_e_to_m(n), n, vec)


def m_coords_to_e(n: int, vec: Mapping[Partition, int]) -> dict[Partition, int]:
    return _apply(_m_to_e(n), n, vec)


def _transpose_apply(matrix: tuple[tuple[int, ...], ...], n: int, vals: Mapping[Partition, int]) -> dict[Partition, int]:
    parts = partitions(n)
    return {
        lam: sum(matrix[k][j] * vals[mu] for j, mu in enumerate(parts))
        for k, lam in enumerate(parts)
    }


def pair_e_with_m_values(n: int, m_values: Mapping[Partition, int]) -> dict[Partition, int]:
    """Given the values of every ``m_mu``, return the values of every ``e_lam``."""
    return _transpose_apply(_e_to_m(n), n, m_values)


def pair_m_with_e_values(n: int, e_values: Mapping[Partition, int]) -> dict[Partition, int]:
    """Given the values of every ``e_lam``, return the values of every ``m_mu``."""
    return _transpose_apply(_m_to_e(n), n, e_values)


@lru_cache(maxsize=None)
def _newton(n: int) -> tuple[tuple[Partition, int], ...]:
    # p_n = e_1 p_{n-1} - e_2 p_{n-2} + ... + (-1)^(n-1) n e_n
    acc: dict[Partition, int] = {Partition((n,)): (-1) ** (n - 1) * n}
    for k in range(1, n):
        sign = (-1) ** (k - 1)
        for lam, c in _newton(n - k):
            key = Partition.sorted(lam + (k,))
            acc[key] = acc.get(key, 0) + sign * c
    return tuple((lam, c) for lam, c in acc.items() if c)


def newton_polynomial(n: int) -> SymPolynomial:
    """The power sum ``p_n`` written in elementary symmetric functions ``c_i``.

    Evaluated on Chern numbers this is the Milnor number ``s_n``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return SymPolynomial(n, dict(_newton(n)))

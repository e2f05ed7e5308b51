"""Number theory used by the generator and obstruction arguments.

``eta(n)`` is the absolute Milnor number a polynomial generator of the
cobordism ring must have in complex dimension ``n``.  Binomial divisibility
is handled through Kummer's carry count, the gcd scan checks which
dimensions admit a generator built from ``CP^n`` and Milnor hypersurfaces,
and the Bott periodicity rule decides when the almost complex structure on
a fiber connected sum extends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd, isqrt

_TRIVIAL_PI_O = frozenset({2, 4, 5, 6})


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, isqrt(p) + 1, 2))


def prime_power_base(m: int) -> int | None:
    """Return ``p`` if ``m = p^k`` with ``p`` prime and ``k >= 1``, else ``None``."""
    if m < 2:
        return None
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            return d if m == 1 else None
        d += 1
    return m


def eta(n: int) -> int:
    """``p`` if ``n + 1`` is a power of the prime ``p``, otherwise 1."""
    if n < 1:
        raise ValueError(f"eta needs n >= 1, got {n}")
    return prime_power_base(n + 1) or 1


def p_adic_valuation(m: int, p: int) -> int:
    if m == 0:
        raise ValueError("valuation of 0 is infinite")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def kummer_carries(i: int, j: int, p: int) -> int:
    """Carries when adding ``i`` and ``j`` in base ``p``; equals ``v_p(binom(i+j, i))``."""
    if i < 0 or j < 0:
        raise ValueError("kummer_carries needs non-negative arguments")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    carries = carry = 0
    while i or j or carry:
        s = i % p + j % p + carry
        carry = int(s >= p)
        carries += carry
        i //= p
        j //= p
    return carries


@dataclass
class GcdReport:
    n: int
    i_min: int
    gcd: int
    eta: int
    witnesses: list[tuple[int, int]] = field(default_factory=list)
    empty_range: bool = False

    @property
    def passed(self) -> bool:
        return self.gcd == self.eta

    def to_line(self) -> str:
        return f"n={self.n} gcd={self.gcd} eta={self.eta}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "i_min": self.i_min,
            "gcd": self.gcd,
            "eta": self.eta,
            "pass": self.passed,
            "empty_range": self.empty_range,
            "witnesses": [list(w) for w in self.witnesses],
        }


def gcd_generator_check(n: int, i_min: int = 2) -> GcdReport:
    """gcd of ``n + 1`` and ``binom(n+1, i)`` for ``i_min <= i <= (n+1)/2``.

    These are, up to sign, the Milnor numbers of ``CP^n`` and of the
    hypersurfaces ``H_{i, n+1-i}``.  The scan stops early once the gcd reaches
    ``eta(n)``, which always divides it.  ``witnesses`` lists the pairs
    ``(i, binom(n+1, i))`` consumed, with ``i = 0`` standing for ``n + 1``.
    """
    if n < 2:
        raise ValueError(f"gcd_generator_check needs n >= 2, got {n}")
    if i_min not in (2, 4):
        raise ValueError(f"i_min must be 2 or 4, got {i_min}")
    target = eta(n)
    g = n + 1
    witnesses = [(0, n + 1)]
    top = (n + 1) // 2
    for i in range(i_min, top + 1):
        if g == target:
            break
        b = comb(n + 1, i)
        witnesses.append((i, b))
        g = gcd(g, b)
    return GcdReport(n, i_min, g, target, witnesses, empty_range=i_min > top)


def scan_gcd_exceptions(n_max: int, i_min: int = 2, parity: str = "even") -> list[GcdReport]:
    """All ``n <= n_max`` of the given parity for which the gcd exceeds ``eta(n)``."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    start = {"even": 2, "odd": 3, "all": 2}[parity]
    step = 1 if parity == "all" else 2
    failures = []
    for n in range(start, n_max + 1, step):
        report = gcd_generator_check(n, i_min)
        if not report.passed:
            failures.append(report)
    return failures


def pi_O_trivial(j: int) -> bool:
    """Bott periodicity: the stable group ``pi_j(O)`` vanishes iff ``j = 2, 4, 5, 6 mod 8``."""
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    return j % 8 in _TRIVIAL_PI_O


@dataclass(frozen=True)
class TorusRankChoice:
    n: int
    k: int
    obstruction_dim: int
    trivial: bool

    def to_text(self) -> str:
        return (
            f"n={self.n} k={self.k} obstruction=pi_{self.obstruction_dim}(O) "
            f"trivial={'yes' if self.trivial else 'no'}\n"
        )


def choose_torus_rank(n: int) -> TorusRankChoice:
    """Torus rank for the fiber connected sum in complex dimension ``n >= 3``.

    ``k = 4`` when ``n = 1 mod 4`` and ``k = 2`` otherwise; the obstruction
    group is ``pi_{2n-k-1}(SO/U) = pi_{2n-k}(O)``.
    """
    if n < 3:
        raise ValueError(f"choose_torus_rank needs n >= 3, got {n}")
    k = 4 if n % 4 == 1 else 2
    return TorusRankChoice(n, k, 2 * n - k, pi_O_trivial(2 * n - k))

"""Realize a cobordism class as a disjoint union of good-variety products.

The construction follows the induction on dimension:

* dimension 1: ``k [CP^1]`` is ``k`` copies of ``CP^1`` for ``k > 0`` and a
  single curve of genus ``1 - k`` for ``k < 0``;
* if ``s_n(v) != 0`` split off ``c`` copies of the dimension-``n``
  generator, leaving a class with vanishing Milnor number;
* a class with ``s_n = 0`` is a polynomial in lower generators; each
  monomial is expanded into concrete products of varieties;
* negative multiples are turned into honest disjoint unions.  For a product
  the sign moves into a factor of least dimension.  For a single variety
  ``M`` with ``s(M) != 0`` use a toric partner ``N`` with Milnor number of
  opposite sign and ``a s(M) + b s(N) = 0``:
  ``-[M] = (-a[M] - b[N]) + b[N] + (a - 1)[M]``, where the first summand
  has ``s = 0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Mapping

from .chern import ChernVector, add, milnor_number, scale, to_table, zero
from .errors import DimensionMismatch, NonIntegral
from .numbertheory import choose_torus_rank
from .partitions import format_partition, partitions
from .ring import GeneratorSystem, build_generator_system, decompose
from .toric import Fan
from .varieties import (
    RELAXED_H_MIN,
    STRICT_H_MIN,
    BlCP,
    CP,
    GoodVariety,
    Sigma,
    chern_of,
    chern_of_product,
    make_variety,
)


@dataclass(frozen=True)
class GoodProduct:
    factors: tuple[GoodVariety, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=GoodVariety.sort_key)))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def curve_count(self) -> int:
        return sum(f.kind == "Sigma" for f in self.factors)

    def __str__(self) -> str:
        return " * ".join(str(f) for f in self.factors)


def torus_rank(p: GoodProduct | Iterable[GoodVariety]) -> int:
    """Rank of the product torus action: ``T^n`` for toric, ``T^i`` for ``H(i,j)``, none for curves."""
    factors = p.factors if isinstance(p, GoodProduct) else tuple(p)
    return sum(f.torus_rank for f in factors)


def required_torus_rank(n: int) -> int:
    return min(4, n - 1)


@dataclass
class Realization:
    dim: int
    mode: str = "strict"
    components: Counter = field(default_factory=Counter)
    max_depth: int = 0

    def items(self) -> list[tuple[GoodProduct, int]]:
        return sorted(
            ((p, m) for p, m in self.components.items() if m),
            key=lambda pm: (tuple(f.sort_key() for f in pm[0].factors), pm[1]),
        )

    def total_class(self) -> ChernVector:
        out = zero(self.dim)
        for p, m in self.items():
            out = add(out, scale(m, chern_of_product(p.factors)))
        return out

    def component_count(self) -> int:
        return sum(m for _, m in self.items())

    def to_text(self, verified: bool | None = None) -> str:
        lines = [f"dim: {self.dim}", f"mode: {self.mode}"]
        lines += [f"{m} x {p}" for p, m in self.items()]
        if verified is not None:
            lines.append(f"verified: {'yes' if verified else 'no'}")
        return "\n".join(lines) + "\n"


class _Realizer:
    def __init__(self, gs: GeneratorSystem):
        self.gs = gs
        self.max_depth = 0

    def _track(self, depth: int) -> None:
        self.max_depth = max(self.max_depth, depth)

    def add_product(self, out: Counter, factors: Iterable[GoodVariety], count: int) -> None:
        factors = list(factors)
        sigmas = [f for f in factors if f.kind == "Sigma"]
        if len(sigmas) >= 2:
            # [Sigma_g x Sigma_h] = (g-1)(h-1) [CP^1 x CP^1]
            g, h = sigmas[0].args[0], sigmas[1].args[0]
            factors.remove(sigmas[0])
            factors.remove(sigmas[1])
            self.add_product(out, factors + [CP(1), CP(1)], count * (g - 1) * (h - 1))
            return
        out[GoodProduct(tuple(factors))] += count

    def emit(self, out: Counter, factors: tuple[GoodVariety, ...], coef: int, depth: int) -> None:
        if coef > 0:
            self.add_product(out, factors, coef)
        elif coef < 0:
            for p, m in self.negate(factors, -coef, depth + 1).items():
                self.add_product(out, p.factors, m)

    def realize(self, v: ChernVector, depth: int = 0) -> Counter:
        self._track(depth)
        out: Counter = Counter()
        n = v.dim
        if v.is_zero():
            return out
        if n == 0:
            raise DimensionMismatch("cannot realize a dimension-0 class by good varieties")
        if n == 1:
            c1 = v.mcoords[(1,)]
            if c1 % 2:
                raise NonIntegral(f"c_1 = {c1} is odd; not a complex cobordism class")
            k = c1 // 2
            if k > 0:
                out[GoodProduct((CP(1),))] += k
            else:
                out[GoodProduct((Sigma(1 - k),))] += 1
            return out

        s = milnor_number(v)
        if s:
            gen = self.gs.generator(n)
            if s % gen.milnor:
                raise NonIntegral(f"s_{n} = {s} is not divisible by eta({n}) = {abs(gen.milnor)}")
            c = s // gen.milnor
            for gv, a in gen.terms:
                self.emit(out, (gv,), c * a, depth)
            v = add(v, scale(-c, gen.chern))
            assert milnor_number(v) == 0, "Milnor number bookkeeping failed"

        coords = decompose(v, self.gs)
        assert coords.coeffs[(n,)] == 0
        for lam, q in coords.coeffs.items():
            if not q:
                continue
            expansions = [((), q)]
            for part in lam:
                terms = self.gs.generator(part).terms
                expansions = [(fs + (gv,), c * a) for fs, c in expansions for gv, a in terms]
            for factors, coef in expansions:
                self.emit(out, factors, coef, depth)
        return out

    def negate(self, factors: tuple[GoodVariety, ...], count: int, depth: int) -> Counter:
        """Disjoint union representing ``-count`` times the product of ``factors``."""
        self._track(depth)
        out: Counter = Counter()
        if len(factors) >= 2:
            k = min(range(len(factors)), key=lambda i: factors[i].dim)
            rest = factors[:k] + factors[k + 1:]
            for p, m in self.negate((factors[k],), count, depth + 1).items():
                self.add_product(out, p.factors + rest, m)
            return out

        (gv,) = factors
        if gv.kind == "Sigma":
            out[GoodProduct((CP(1),))] += count * (gv.args[0] - 1)
            return out
        if gv.dim == 1:
            out[GoodProduct((Sigma(1 + count),))] += 1
            return out
        d = gv.dim
        s_m = milnor_number(chern_of(gv))
        if s_m == 0:
            return self.realize(scale(-count, chern_of(gv)), depth + 1)
        partner = BlCP(d, 3) if s_m > 0 else CP(d)
        s_n = milnor_number(chern_of(partner))
        assert s_m * s_n < 0
        g = gcd(s_m, s_n)
        a, b = abs(s_n) // g, abs(s_m) // g
        rest_class = scale(-count, add(scale(a, chern_of(gv)), scale(b, chern_of(partner))))
        out.update(self.realize(rest_class, depth + 1))
        out[GoodProduct((partner,))] += count * b
        if a > 1:
            out[GoodProduct((gv,))] += count * (a - 1)
        return out


def realize(v: ChernVector, mode: str = "strict", gs: GeneratorSystem | None = None, blowups: str = "subspaces") -> Realization:
    """A disjoint union of good products whose total class is ``v``.

    ``mode="auto"`` uses strict mode when it has generators in every needed
    dimension and falls back to relaxed mode otherwise; the returned
    realization records the mode actually used.

    Raises :class:`~goodvar.errors.StrictModeGap` when some dimension up to
    ``v.dim`` has no generator in ``mode`` and
    :class:`~goodvar.errors.NonIntegral` when ``v`` is not a cobordism class.
    """
    if v.dim < 1:
        raise DimensionMismatch("realize needs dimension >= 1")
    if mode == "auto" and gs is None:
        strict = build_generator_system(v.dim, "strict", blowups)
        mode = "relaxed" if strict.gaps else "strict"
        gs = None if strict.gaps else strict
    if gs is None:
        gs = build_generator_system(max(v.dim, 1), mode, blowups)
    gs.require(v.dim)
    worker = _Realizer(gs)
    components = worker.realize(v)
    components = Counter({p: m for p, m in components.items() if m})
    return Realization(v.dim, gs.mode, components, worker.max_depth)


@dataclass
class VerificationReport:
    dim: int
    chern_match: bool
    mismatches: list[tuple[str, int, int]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    torus_choice: str | None = None

    @property
    def ok(self) -> bool:
        return self.chern_match and not self.violations

    def to_text(self) -> str:
        lines = [f"dim: {self.dim}", f"chern-numbers: {'match' if self.chern_match else 'MISMATCH'}"]
        for lam, got, want in self.mismatches:
            lines.append(f"  c[{lam}]: realization {got}, target {want}")
        lines += [f"violation: {v}" for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        if self.torus_choice:
            lines.append(f"fiber-sum: {self.torus_choice}")
        lines.append(f"verified: {'yes' if self.ok else 'no'}")
        return "\n".join(lines) + "\n"


def verify_realization(r: Realization, v: ChernVector) -> VerificationReport:
    """Recompute the realization's class from scratch and check every constraint."""
    report = VerificationReport(dim=v.dim, chern_match=True)
    n = v.dim
    if r.dim != n:
        report.violations.append(f"realization has dimension {r.dim}, target has {n}")
    h_min = STRICT_H_MIN if r.mode == "strict" else RELAXED_H_MIN
    total = zero(n)
    for p, m in r.components.items():
        if m < 1:
            report.violations.append(f"multiplicity {m} of {p} is not positive")
        if p.dim != n:
            report.violations.append(f"{p} has dimension {p.dim}, expected {n}")
            continue
        if p.curve_count > 1:
            report.violations.append(f"{p} has {p.curve_count} curve factors")
        for f in p.factors:
            if f.kind == "H" and f.args[0] < h_min:
                report.violations.append(f"{f} in {p} needs 4 <= i <= j in strict mode")
            elif f.kind == "H" and f.args[0] < STRICT_H_MIN:
                report.warnings.append(f"{f} in {p} is outside the good-variety range (relaxed mode)")
        need = required_torus_rank(n)
        if torus_rank(p) < need:
            message = f"{p} has torus rank {torus_rank(p)} < min(4, n-1) = {need}"
            relaxed_h = any(f.kind == "H" and f.args[0] < STRICT_H_MIN for f in p.factors)
            if r.mode == "relaxed" and relaxed_h:
                report.warnings.append(message)
            else:
                report.violations.append(message)
        total = add(total, scale(m, chern_of_product(p.factors)))
    if total != v:
        report.chern_match = False
        got, want = to_table(total).values, to_table(v).values
        report.mismatches = [
            (format_partition(lam), got[lam], want[lam]) for lam in partitions(n) if got[lam] != want[lam]
        ]
    if n >= 3:
        choice = choose_torus_rank(n)
        report.torus_choice = (
            f"k={choice.k} obstruction=pi_{choice.obstruction_dim}(O) "
            f"{'trivial' if choice.trivial else 'NONTRIVIAL'}"
        )
        if not choice.trivial:
            report.violations.append(f"obstruction group pi_{choice.obstruction_dim}(O) is nontrivial")
        short = [p for p in r.components if torus_rank(p) < choice.k]
        if short and r.mode == "strict":
            report.violations.append(f"{short[0]} admits no T^{choice.k} action")
        elif short:
            report.warnings.append(f"{short[0]} admits no T^{choice.k} action")
    return report


# -- text format ----------------------------------------------------------


def parse_product(text: str, fans: Mapping[str, Fan] | None = None) -> GoodProduct:
    from .expr import parse_product_text

    return GoodProduct(tuple(make_variety(k, a, fans) for k, a in parse_product_text(text)))


def parse_realization(text: str, fans: Mapping[str, Fan] | None = None) -> Realization:
    dim, mode = None, "strict"
    comps: Counter = Counter()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if sep and key.strip() in ("dim", "mode", "verified"):
            key, val = key.strip(), val.strip()
            if key == "dim":
                dim = int(val)
            elif key == "mode":
                mode = val
            continue
        mult, sep, rest = line.partition(" x ")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<multiplicity> x <product>', got {raw!r}")
        comps[parse_product(rest, fans)] += int(mult)
    if dim is None:
        raise ValueError("missing 'dim:' header")
    return Realization(dim, mode, comps)

"""Named building blocks: the varieties that may appear in a good product.

Kinds and arguments::

    CP(n)        complex projective space, n >= 1
    H(i,j)       Milnor hypersurface in CP^i x CP^j, i <= j
    Sigma(g)     compact curve of genus g > 1
    BlCP(n,k)    CP^n blown up at k distinct torus-fixed points, 1 <= k <= n+1
    BlSub(n,r)   CP^n blown up along a coordinate CP^(n-r), 2 <= r <= n-1
    Toric(name)  smooth projective toric variety given by a registered fan
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .chern import ChernVector, cp_chern, curve_chern, milnor_hypersurface_chern, product, point
from .errors import InvalidVariety
from .toric import Fan, blcp_chern, blsub_chern, toric_chern_vector

STRICT_H_MIN = 4
RELAXED_H_MIN = 2

# factor order inside a printed product
_KIND_ORDER = {"Sigma": 0, "CP": 1, "BlCP": 2, "BlSub": 3, "H": 4, "Toric": 5}


@dataclass(frozen=True)
class GoodVariety:
    kind: str
    args: tuple = ()
    fan: Fan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        kind, args = self.kind, self.args
        if kind not in _KIND_ORDER:
            raise InvalidVariety(f"unknown variety {kind!r}")
        if kind == "Toric":
            if len(args) != 1 or not isinstance(args[0], str) or self.fan is None:
                raise InvalidVariety("Toric(name) needs a name and a fan")
            return
        if not all(isinstance(a, int) for a in args):
            raise InvalidVariety(f"{kind} takes integer arguments, got {args}")
        arity = 1 if kind in ("CP", "Sigma") else 2
        if len(args) != arity:
            raise InvalidVariety(f"{kind} takes {arity} argument(s), got {len(args)}")
        if kind == "CP" and args[0] < 1:
            raise InvalidVariety(f"CP(n) needs n >= 1, got {args[0]}")
        if kind == "Sigma" and args[0] <= 1:
            raise InvalidVariety(f"Sigma(g) needs genus g > 1, got {args[0]}")
        if kind == "H" and not 1 <= args[0] <= args[1]:
            raise InvalidVariety(f"H(i,j) needs 1 <= i <= j, got {args}")
        if kind == "BlCP":
            n, k = args
            if n < 2 or not 1 <= k <= n + 1:
                raise InvalidVariety(f"BlCP(n,k) needs n >= 2 and 1 <= k <= n+1, got {args}")
        if kind == "BlSub":
            n, r = args
            if not 2 <= r <= n - 1:
                raise InvalidVariety(f"BlSub(n,r) needs 2 <= r <= n-1, got {args}")

    @property
    def dim(self) -> int:
        if self.kind == "H":
            return self.args[0] + self.args[1] - 1
        if self.kind == "Sigma":
            return 1
        if self.kind == "Toric":
            return self.fan.rank
        return self.args[0]

    @property
    def torus_rank(self) -> int:
        """Rank of the natural faithful torus action."""
        if self.kind == "H":
            return self.args[0]
        if self.kind == "Sigma":
            return 0
        return self.dim

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], tuple(str(a) if isinstance(a, str) else a for a in self.args))

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


def CP(n: int) -> GoodVariety:
    return GoodVariety("CP", (n,))


def H(i: int, j: int) -> GoodVariety:
    return GoodVariety("H", (i, j))


def Sigma(g: int) -> GoodVariety:
    return GoodVariety("Sigma", (g,))


def BlCP(n: int, k: int) -> GoodVariety:
    return GoodVariety("BlCP", (n, k))


def BlSub(n: int, r: int) -> GoodVariety:
    return GoodVariety("BlSub", (n, r))


def Toric(name: str, fan: Fan) -> GoodVariety:
    return GoodVariety("Toric", (name,), fan)


def chern_of(gv: GoodVariety) -> ChernVector:
    kind, args = gv.kind, gv.args
    if kind == "CP":
        return cp_chern(args[0])
    if kind == "H":
        return milnor_hypersurface_chern(*args)
    if kind == "Sigma":
        return curve_chern(args[0])
    if kind == "BlCP":
        return blcp_chern(*args)
    if kind == "BlSub":
        return blsub_chern(*args)
    return toric_chern_vector(gv.fan)


def chern_of_product(factors) -> ChernVector:
    out = point(1)
    for gv in factors:
        out = product(out, chern_of(gv))
    return out


def make_variety(kind: str, args: tuple, fans: Mapping[str, Fan] | None = None) -> GoodVariety:
    if kind == "Toric":
        (name,) = args
        if not fans or name not in fans:
            raise InvalidVariety(f"no fan registered under the name {name!r}")
        return Toric(name, fans[name])
    return GoodVariety(kind, tuple(args))

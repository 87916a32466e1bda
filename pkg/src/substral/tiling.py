"""One-dimensional self-similar tilings with exact endpoints in Q(lambda)."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement, NumberField, left_pf_eigenvector, pf_field
from .substitution import (
    Substitution,
    SubstitutionError,
    abelianization,
    factors,
    is_primitive,
    power,
)


@dataclass(frozen=True)
class Prototile:
    type_index: int
    length: FieldElement


@dataclass(frozen=True)
class Tile:
    """Tile of type ``type_index`` with support [left, right]."""

    type_index: int
    left: FieldElement
    right: FieldElement

    def shifted(self, t) -> Tile:
        """The tile minus t, i.e. moved left by t."""
        return Tile(self.type_index, self.left - t, self.right - t)

    def key(self):
        return self.type_index, self.left.coords


class Patch(tuple):
    """Tiles sorted by left endpoint with pairwise disjoint interiors."""

    def __new__(cls, tiles=()):
        tiles = list(tiles)
        tiles.sort(key=lambda t: t.left)  # exact comparisons
        return super().__new__(cls, tiles)

    @classmethod
    def _sorted(cls, tiles) -> Patch:
        return super().__new__(cls, tiles)

    @property
    def support(self):
        if not self:
            return None
        return self[0].left, self[-1].right

    @property
    def contiguous(self) -> bool:
        return all(a.right == b.left for a, b in zip(self, self[1:]))

    def shifted(self, t) -> Patch:
        return Patch._sorted([tile.shifted(t) for tile in self])

    def tiles_between(self, lo, hi) -> Patch:
        """Tiles whose closed support meets [lo, hi]."""
        return Patch._sorted([t for t in self if t.left <= hi and t.right >= lo])

    def keys(self):
        return frozenset(t.key() for t in self)


class TileSet:
    """Prototile geometry for a substitution: lengths omega and inflation factor.

    ``power(k)`` keeps the field and lengths and inflates by lambda^k, so
    tiles built for phi and phi^k share coordinates.
    """

    def __init__(self, phi: Substitution, field: NumberField, lengths, inflation: FieldElement | None = None):
        self.phi = phi
        self.field = field
        self.lengths = tuple(lengths)
        self.inflation = field.gen if inflation is None else inflation
        self.max_length = max(self.lengths)

    @classmethod
    def from_substitution(cls, phi: Substitution) -> TileSet:
        a = abelianization(phi)
        ok, _ = is_primitive(a)
        if not ok:
            raise SubstitutionError("tile geometry requires a primitive substitution")
        field = pf_field(a)
        return cls(phi, field, left_pf_eigenvector(a, field))

    def power(self, k: int) -> TileSet:
        return TileSet(power(self.phi, k), self.field, self.lengths, self.inflation**k)

    def length(self, i: int) -> FieldElement:
        return self.lengths[i - 1]

    def tile(self, i: int, left) -> Tile:
        if not isinstance(left, FieldElement):
            left = self.field.rational(left)
        return Tile(i, left, left + self.lengths[i - 1])

    def inflate_tile(self, tile: Tile) -> list[Tile]:
        pos = self.inflation * tile.left
        out = []
        for a in self.phi(tile.type_index):
            nxt = pos + self.lengths[a - 1]
            out.append(Tile(a, pos, nxt))
            pos = nxt
        return out

    def inflate(self, patch) -> Patch:
        out = []
        for t in patch:
            out.extend(self.inflate_tile(t))
        return Patch._sorted(out) if isinstance(patch, Patch) else Patch(out)

    def to_field(self, x) -> FieldElement:
        return x if isinstance(x, FieldElement) else self.field.rational(Fraction(x))


def prototiles(tileset: TileSet) -> list[Prototile]:
    return [Prototile(i, w) for i, w in enumerate(tileset.lengths, 1)]


def inflate_patch(patch: Patch, tileset: TileSet) -> Patch:
    """Replace each tile by the patch following its image, positions scaled by lambda."""
    return tileset.inflate(patch)


# -- tilings ----------------------------------------------------------------


class Tiling:
    """A bi-infinite tiling that answers window queries."""

    tileset: TileSet

    def tiles_between(self, lo, hi) -> Patch:
        raise NotImplementedError

    def window(self, radius) -> Patch:
        r = self.tileset.to_field(radius)
        if r.sign() < 0:
            raise ValueError("radius must be nonnegative")
        return self.tiles_between(-r, r)

    def __sub__(self, shift) -> Tiling:
        return TranslatedTiling(self, self.tileset.to_field(shift))


def window(tiling: Tiling, radius) -> Patch:
    """Tiles meeting the closed ball of the given radius at 0."""
    return tiling.window(radius)


class FixedTiling(Tiling):
    """Union of the inflations Phi^(mk) of the seed {rho_b - omega_b, rho_a}."""

    def __init__(self, tileset: TileSet, k: int, a: int, b: int):
        self.tileset = tileset
        self.k, self.a, self.b = k, a, b
        self._step = tileset.power(k)
        seed = Patch._sorted([tileset.tile(b, -tileset.length(b)), tileset.tile(a, 0)])
        self._levels = [seed]
        self._lock = threading.Lock()

    @property
    def levels(self) -> int:
        return len(self._levels)

    def _cover(self, lo, hi) -> Patch:
        margin = self.tileset.max_length
        lo, hi = lo - margin, hi + margin
        with self._lock:
            patch = self._levels[-1]
            while not (patch[0].left <= lo and patch[-1].right >= hi):
                patch = self._step.inflate(patch)
                self._levels.append(patch)
            return patch

    def tiles_between(self, lo, hi) -> Patch:
        lo, hi = self.tileset.to_field(lo), self.tileset.to_field(hi)
        patch = self._cover(lo, hi)
        return Patch._sorted(_slice(patch, lo, hi))


def _slice(patch, lo, hi) -> list[Tile]:
    """Tiles of a contiguous sorted patch meeting [lo, hi], by bisection."""
    n = len(patch)
    a, b = 0, n
    while a < b:  # first tile with right >= lo
        m = (a + b) // 2
        if patch[m].right < lo:
            a = m + 1
        else:
            b = m
    start = a
    a, b = start, n
    while a < b:  # first tile with left > hi
        m = (a + b) // 2
        if patch[m].left <= hi:
            a = m + 1
        else:
            b = m
    return list(patch[start:a])


def fixed_tiling(tileset: TileSet, k: int, a: int, b: int) -> FixedTiling:
    """The Phi^k-invariant tiling grown from the seed (k, a, b), after verifying it."""
    phik = power(tileset.phi, k)
    if phik(a)[0] != a:
        raise SubstitutionError(f"phi^{k}({a}) does not start with {a}")
    if phik(b)[-1] != b:
        raise SubstitutionError(f"phi^{k}({b}) does not end with {b}")
    if (b, a) not in factors(tileset.phi, 2):
        raise SubstitutionError(f"the word {b}{a} is not in the language")
    return FixedTiling(tileset, k, a, b)


class PeriodicTiling(Tiling):
    """The union of Q + m(b - a) over all integers m, for Q with support [a, b]."""

    def __init__(self, tileset: TileSet, generator: Patch):
        if not generator:
            raise ValueError("periodic tiling needs a nonempty generating patch")
        if not generator.contiguous:
            raise ValueError("generating patch must be contiguous")
        self.tileset = tileset
        self.generator = generator
        self.start = generator[0].left
        self.end = generator[-1].right
        self.period = self.end - self.start
        self._inv_period = self.period.inverse()

    def tiles_between(self, lo, hi) -> Patch:
        lo, hi = self.tileset.to_field(lo), self.tileset.to_field(hi)
        first = ((lo - self.end) * self._inv_period).floor()
        last = ((hi - self.start) * self._inv_period).floor() + 1
        out = []
        for m in range(first, last + 1):
            shift = self.period * m
            for t in self.generator:
                tile = t.shifted(-shift)
                if tile.left <= hi and tile.right >= lo:
                    out.append(tile)
        return Patch._sorted(out)


def periodic_tiling(tileset: TileSet, generator: Patch) -> PeriodicTiling:
    return PeriodicTiling(tileset, generator)


class TranslatedTiling(Tiling):
    """``base - shift``: every tile of the base moved left by ``shift``."""

    def __init__(self, base: Tiling, shift: FieldElement):
        self.tileset = base.tileset
        self.base = base
        self.shift = shift

    def tiles_between(self, lo, hi) -> Patch:
        lo, hi = self.tileset.to_field(lo), self.tileset.to_field(hi)
        return self.base.tiles_between(lo + self.shift, hi + self.shift).shifted(self.shift)


class PatchTiling(Tiling):
    """A finite patch queried like a tiling, for probing isolated tiles."""

    def __init__(self, tileset: TileSet, patch: Patch):
        self.tileset = tileset
        self.patch = patch

    def tiles_between(self, lo, hi) -> Patch:
        return self.patch.tiles_between(self.tileset.to_field(lo), self.tileset.to_field(hi))


# -- rendering --------------------------------------------------------------

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def render_patch(patch: Patch, mode: str = "text", digits: int = 20) -> str:
    """``type:[left,right)`` segments on one line, or an SVG 1.1 document."""
    if mode == "text":
        return " ".join(f"{t.type_index}:[{t.left.decimal(digits)},{t.right.decimal(digits)})" for t in patch)
    if mode != "svg":
        raise ValueError(f"unknown render mode {mode!r}")
    if not patch:
        return ""
    lo = float(patch[0].left.decimal(digits))
    hi = float(patch[-1].right.decimal(digits))
    scale = 800.0 / max(hi - lo, 1e-12)
    rects = []
    for t in patch:
        x0 = (float(t.left.decimal(digits)) - lo) * scale + 10
        x1 = (float(t.right.decimal(digits)) - lo) * scale + 10
        colour = PALETTE[(t.type_index - 1) % len(PALETTE)]
        rects.append(
            f'  <rect x="{x0:.4f}" y="10" width="{x1 - x0:.4f}" height="30" '
            f'fill="{colour}" stroke="#000" stroke-width="0.5"><title>{t.type_index}</title></rect>'
        )
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="820" height="50">\n'
        + "\n".join(rects)
        + "\n</svg>\n"
    )

"""Color palettes for the color channel.

A palette is a list of entries, each mapping either an exact value or a
closed numeric interval to a hex color. Values inside an entry always get
that entry's color verbatim (demonstrated assignments are honored exactly);
quantitative values outside any interval are interpolated between the entry
anchors, and categorical values without an entry fall back to the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_MARK_COLOR = "#4e79a7"
FALLBACK_COLOR = "#cccccc"

# First cycle color is the green used for uncustomized categories so that a
# red/blue demonstration leaves the remaining classes visibly distinct.
CYCLE = (
    "#59a14f",
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b4",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)

RAMP_LIGHT = "#cfe1f2"
RAMP_DARK = "#08306b"


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    c = color.lstrip("#")
    return int(c[0:2], 16), int(c[2:4], 16), int(c[4:6], 16)


def _rgb_to_hex(rgb: tuple[float, float, float]) -> str:
    return "#%02x%02x%02x" % tuple(int(round(max(0.0, min(255.0, v)))) for v in rgb)


def blend(color_a: str, color_b: str, t: float) -> str:
    """Linear RGB interpolation, t in [0, 1]."""
    a = _hex_to_rgb(color_a)
    b = _hex_to_rgb(color_b)
    return _rgb_to_hex(tuple(a[i] + (b[i] - a[i]) * t for i in range(3)))


@dataclass(frozen=True)
class PaletteEntry:
    color: str
    value: object | None = None
    interval: tuple[float, float] | None = None

    def contains(self, v: object) -> bool:
        if self.interval is not None:
            try:
                return self.interval[0] <= float(v) <= self.interval[1]  # type: ignore[arg-type]
            except (TypeError, ValueError):
                return False
        return v == self.value

    @property
    def anchor(self) -> float | None:
        if self.interval is None:
            return None
        return (self.interval[0] + self.interval[1]) / 2.0


@dataclass(frozen=True)
class ColorPalette:
    """Value/interval to color assignments plus a fallback.

    ``customized`` marks palettes whose assignments came from a user
    demonstration; only those are kept in palette memory.
    """

    entries: tuple[PaletteEntry, ...] = field(default_factory=tuple)
    default_color: str = FALLBACK_COLOR
    customized: bool = False

    def color_for(self, value: object) -> str:
        if value is None:
            return self.default_color
        for entry in self.entries:
            if entry.contains(value):
                return entry.color
        anchors = [
            (e.anchor, e.color) for e in self.entries if e.anchor is not None
        ]
        if anchors:
            try:
                v = float(value)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                return self.default_color
            anchors.sort(key=lambda a: a[0])
            if v <= anchors[0][0]:
                return anchors[0][1]
            if v >= anchors[-1][0]:
                return anchors[-1][1]
            for (lo, lo_color), (hi, hi_color) in zip(anchors, anchors[1:]):
                if lo <= v <= hi:
                    if hi == lo:
                        return lo_color
                    return blend(lo_color, hi_color, (v - lo) / (hi - lo))
        return self.default_color


def default_categorical_palette(categories: tuple) -> ColorPalette:
    """Cycle palette over the category list, in category order."""
    entries = tuple(
        PaletteEntry(color=CYCLE[i % len(CYCLE)], value=v)
        for i, v in enumerate(categories)
    )
    return ColorPalette(entries=entries, customized=False)


def default_ramp_palette(extent: tuple[float, float]) -> ColorPalette:
    """Light-to-dark sequential ramp anchored at the column extent."""
    lo, hi = extent
    entries = (
        PaletteEntry(color=RAMP_LIGHT, interval=(lo, lo)),
        PaletteEntry(color=RAMP_DARK, interval=(hi, hi)),
    )
    return ColorPalette(entries=entries, customized=False)


def demonstrated_categorical_palette(
    assignments: list[tuple[object, str]], categories: tuple
) -> ColorPalette:
    """Demonstrated value colors verbatim, cycle colors for the rest."""
    assigned = {v: c for v, c in assignments}
    entries = [PaletteEntry(color=c, value=v) for v, c in assignments]
    i = 0
    for v in categories:
        if v in assigned:
            continue
        entries.append(PaletteEntry(color=CYCLE[i % len(CYCLE)], value=v))
        i += 1
    return ColorPalette(entries=tuple(entries), customized=True)


def demonstrated_ramp_palette(
    anchors: list[tuple[tuple[float, float], str]]
) -> ColorPalette:
    """Interval anchors from demonstrated groups; values in between blend."""
    ordered = sorted(anchors, key=lambda a: a[0])
    entries = tuple(
        PaletteEntry(color=c, interval=(lo, hi)) for (lo, hi), c in ordered
    )
    return ColorPalette(entries=entries, customized=True)

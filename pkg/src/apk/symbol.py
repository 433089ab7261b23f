"""Symbol grids: one line per row, triangles for l, alternating circles."""

from __future__ import annotations

from .ems import ExtendedMultiSegment, ExtendedSegment
from .halfint import HalfInt

UNICODE = {"left": "⊲", "right": "⊳", "plus": "⊕", "minus": "⊖"}
ASCII = {"left": "<", "right": ">", "plus": "+", "minus": "-"}


def row_glyphs(row: ExtendedSegment, glyphs=UNICODE) -> list[str]:
    """Glyphs at columns B, B+1, ..., A."""
    b, l = row.b, row.l
    out = [glyphs["left"]] * l
    sign = row.eta
    for _ in range(b - 2 * l):
        out.append(glyphs["plus"] if sign > 0 else glyphs["minus"])
        sign = -sign
    out += [glyphs["right"]] * l
    return out


def count_minus(E: ExtendedMultiSegment) -> int:
    return sum(g == UNICODE["minus"] for _, _, row in E.all_rows() for g in row_glyphs(row))


def _block_grid(rows, glyphs) -> list[str]:
    if not rows:
        return []
    lo = min(r.B for r in rows)
    hi = max(r.A for r in rows)
    cols = [lo + k for k in range(int(hi - lo) + 1)]
    width = max(len(str(c)) for c in cols) + 1
    header = "".join(str(c).rjust(width) for c in cols)
    lines = [header]
    for r in rows:
        cells = [" "] * len(cols)
        start = int(r.B - lo)
        for k, g in enumerate(row_glyphs(r, glyphs)):
            cells[start + k] = g
        lines.append("".join(c.rjust(width) for c in cells).rstrip())
    return lines


def render_symbol(E: ExtendedMultiSegment, ascii: bool = False) -> str:
    """Text grid per block: a header of column coordinates, then one line per row
    in stored order, minimal row on top."""
    glyphs = ASCII if ascii else UNICODE
    parts = []
    for blk in E.blocks:
        lines = [f"{blk.rho.id}:"] + _block_grid(blk.rows, glyphs)
        parts.append("\n".join(lines))
    return "\n\n".join(parts)


def row_strings(E: ExtendedMultiSegment, rho_id=None) -> list[tuple[HalfInt, str]]:
    """(starting column, glyph string) per row; handy for comparisons."""
    return [(r.B, "".join(row_glyphs(r))) for r in E.rows(rho_id)]

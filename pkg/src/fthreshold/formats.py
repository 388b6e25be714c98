"""Serialisation of grid data: CSV tables and PGM images."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

__all__ = ["cells_to_csv", "cells_to_json", "pgm_bytes", "grid_image", "staircase_image", "parse_box"]

WHITE = 255
BLACK = 0
GRAY = 128


def parse_box(text: str):
    """``"0:1,0:3/2"`` -> [(Fraction(0), Fraction(1)), (Fraction(0), Fraction(3, 2))]."""
    sides = []
    for part in text.split(","):
        part = part.strip()
        if ":" not in part:
            raise DomainError("box sides look like lo:hi, got %r" % (part,))
        lo, hi = part.split(":", 1)
        try:
            lo, hi = Fraction(lo.strip()), Fraction(hi.strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError("bad box side %r" % (part,)) from None
        if lo < 0 or hi < lo:
            raise DomainError("bad box side %r" % (part,))
        sides.append((lo, hi))
    return sides


def cells_to_csv(cells, n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a%d" % (i + 1) for i in range(n)] + ["q", "delta_num", "delta_den", "region"])
    for c in cells:
        d = c.delta
        w.writerow(list(c.a) + [c.q, "" if d is None else d.numerator, "" if d is None else d.denominator, c.region])
    return buf.getvalue()


def cells_to_json(cells) -> list:
    out = []
    for c in cells:
        out.append(
            {
                "a": list(c.a),
                "q": c.q,
                "delta": None if c.delta is None else "%d/%d" % (c.delta.numerator, c.delta.denominator),
                "region": c.region,
            }
        )
    return out


def pgm_bytes(rows: Sequence[Sequence[int]], variant: str = "P5", maxval: int = 255) -> bytes:
    """Encode a grayscale raster; rows are listed top to bottom."""
    if variant not in ("P2", "P5"):
        raise DomainError("PGM variant must be P2 or P5")
    h = len(rows)
    w = len(rows[0]) if h else 0
    if any(len(r) != w for r in rows):
        raise DomainError("ragged raster")
    head = "%s\n%d %d\n%d\n" % (variant, w, h, maxval)
    if variant == "P5":
        return head.encode("ascii") + bytes(v for r in rows for v in r)
    lines = [" ".join(str(v) for v in r) for r in rows]
    return (head + "\n".join(lines) + "\n").encode("ascii")


def _shade(cell, render: str, dmax: Fraction) -> int:
    if render == "region":
        return WHITE if cell.upper else BLACK
    if cell.delta is None:
        raise DomainError("delta rendering needs delta values")
    if dmax == 0:
        return BLACK
    return int(round(255 * cell.delta / dmax))


def grid_image(cells, ranges, render: str = "region"):
    """Raster for a 1-, 2- or 3-dimensional sweep.

    Rows follow the first coordinate and columns the second, origin at the
    top-left.  Three-dimensional grids become a strip of layers (one per
    value of the third coordinate) separated by a gray column.
    """
    n = len(ranges)
    dmax = max((c.delta for c in cells if c.delta is not None), default=Fraction(0))
    lookup = {c.a: c for c in cells}
    if n == 1:
        return [[_shade(lookup[(i,)], render, dmax) for i in ranges[0]]]
    if n == 2:
        return [[_shade(lookup[(i, j)], render, dmax) for j in ranges[1]] for i in ranges[0]]
    if n == 3:
        rows = []
        for i in ranges[0]:
            row = []
            for k_idx, k in enumerate(ranges[2]):
                if k_idx:
                    row.append(GRAY)
                row.extend(_shade(lookup[(i, j, k)], render, dmax) for j in ranges[1])
            rows.append(row)
        return rows
    raise DomainError("images are available for up to three coordinates, got %d" % n)


def staircase_image(cells, ranges):
    """Slice raster: rows a1, columns a2, the third coordinate implied.

    Boundary cells are black, cells strictly inside the upper region are
    white and positions with no cell on the slice are gray.
    """
    lookup = {c.a[:2]: c for c in cells}
    rows = []
    for i in ranges[0]:
        row = []
        for j in ranges[1]:
            c = lookup.get((i, j))
            row.append(GRAY if c is None else (BLACK if c.region == "B" else WHITE))
        rows.append(row)
    return rows

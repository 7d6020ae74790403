"""Covers, borders and primitive roots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Block, Coord, LazyPicture, Window, _match_mask, evaluate

BL_TR = "BL-TR"
TL_BR = "TL-BR"
CORNER_PAIRS = (BL_TR, TL_BR)


@dataclass(frozen=True)
class CoverCertificate:
    q: Block
    region: Window
    anchors: tuple[Coord, ...]

    def __bool__(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "q": self.q.rows(),
            "region": self.region.as_list(),
            "anchors": [list(a) for a in self.anchors],
        }


@dataclass(frozen=True)
class Uncovered:
    """Report of a region cell not inside any occurrence of ``q``."""

    q: Block
    region: Window
    cell: Coord

    def __bool__(self) -> bool:
        return False


def occ_map(q: np.ndarray, ext: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical covering occurrence of every cell of ``ext``.

    Returns ``(anchor_mask, occ_x, occ_y)`` where ``occ_x/occ_y`` hold, per
    cell, the local anchor of the lowest (then leftmost) occurrence of ``q``
    covering it, or ``-1`` for uncovered cells.
    """
    qh, qw = q.shape
    mask = _match_mask(q, ext)
    H, W = ext.shape
    occ_x = np.full((H, W), -1, dtype=np.int64)
    occ_y = np.full((H, W), -1, dtype=np.int64)
    if mask.size == 0:
        return mask, occ_x, occ_y
    mh, mw = mask.shape
    ys, xs = np.mgrid[0:mh, 0:mw]
    # lowest anchor first (largest dy), then leftmost (largest dx)
    for dy in range(qh - 1, -1, -1):
        for dx in range(qw - 1, -1, -1):
            tgt_x = occ_x[dy : dy + mh, dx : dx + mw]
            tgt_y = occ_y[dy : dy + mh, dx : dx + mw]
            sel = mask & (tgt_x < 0)
            tgt_x[sel] = xs[sel]
            tgt_y[sel] = ys[sel]
    return mask, occ_x, occ_y


def coverage(mask: np.ndarray, qw: int, qh: int) -> np.ndarray:
    """Cells of the ``(mh + qh - 1) x (mw + qw - 1)`` area covered by some anchor of ``mask``."""
    mh, mw = mask.shape
    H, W = mh + qh - 1, mw + qw - 1
    cs = np.zeros((H + 1, W + 1), dtype=np.int32)
    cs[1 : mh + 1, 1 : mw + 1] = mask.cumsum(0, dtype=np.int32).cumsum(1, dtype=np.int32)
    cs[mh + 1 :, 1:] = cs[mh : mh + 1, 1:]
    cs[:, mw + 1 :] = cs[:, mw : mw + 1]
    # anchors in [x - qw + 1, x] x [y - qh + 1, y]
    y1 = np.arange(1, H + 1)
    y0 = np.maximum(y1 - qh, 0)
    x1 = np.arange(1, W + 1)
    x0 = np.maximum(x1 - qw, 0)
    tot = cs[np.ix_(y1, x1)] - cs[np.ix_(y0, x1)] - cs[np.ix_(y1, x0)] + cs[np.ix_(y0, x0)]
    return tot > 0


def is_cover(q: Block, p: LazyPicture, region: Window) -> CoverCertificate | Uncovered:
    """Check that every cell of ``region`` lies inside an occurrence of ``q`` in ``p``.

    Occurrences may spill outside the region, so ``p`` is evaluated on the
    region grown by ``(width(q) - 1, height(q) - 1)``.  The certificate lists,
    deduplicated and sorted, the canonical occurrence (lowest, then leftmost)
    covering each region cell.
    """
    if q.is_empty():
        raise ValueError("the empty block covers nothing")
    mx, my = q.width - 1, q.height - 1
    ext_win = region.grow(mx, my)
    ext = evaluate(p, ext_win).cells
    return _cover_from_cells(q, ext, ext_win, region)


def is_cover_block(q: Block, block: Block, margin: tuple[int, int], origin: Coord = (0, 0)) -> CoverCertificate | Uncovered:
    """``is_cover`` over an already evaluated block whose border of ``margin`` cells is context only."""
    mx, my = margin
    ext_win = Window(origin[0], origin[1], block.width, block.height)
    region = ext_win.shrink(mx, my)
    return _cover_from_cells(q, block.cells, ext_win, region)


def _cover_from_cells(q: Block, ext: np.ndarray, ext_win: Window, region: Window):
    ox, oy = region.x0 - ext_win.x0, region.y0 - ext_win.y0
    mask = _match_mask(q.cells, ext)
    if mask.size == 0:
        return Uncovered(q, region, (region.x0, region.y0))
    cov = coverage(mask, q.width, q.height)[oy : oy + region.height, ox : ox + region.width]
    if not cov.all():
        xs, ys = np.nonzero((~cov).T)
        return Uncovered(q, region, (region.x0 + int(xs[0]), region.y0 + int(ys[0])))
    _, occ_x, occ_y = occ_map(q.cells, ext)
    rx = occ_x[oy : oy + region.height, ox : ox + region.width]
    ry = occ_y[oy : oy + region.height, ox : ox + region.width]
    bad = rx < 0
    if bad.any():
        xs, ys = np.nonzero(bad.T)
        return Uncovered(q, region, (region.x0 + int(xs[0]), region.y0 + int(ys[0])))
    pairs = np.unique(np.stack([rx.ravel(), ry.ravel()], axis=1), axis=0)
    anchors = tuple((int(x) + ext_win.x0, int(y) + ext_win.y0) for x, y in pairs)
    return CoverCertificate(q, region, anchors)


def verify_certificate(cert: CoverCertificate, p: LazyPicture) -> Coord | None:
    """Replay a certificate; return the first failing cell or ``None`` when valid."""
    q = cert.q
    region = cert.region
    covered = np.zeros((region.height, region.width), dtype=bool)
    for ax, ay in cert.anchors:
        got = evaluate(p, Window(ax, ay, q.width, q.height))
        if got != q:
            return (ax, ay)
        x0, y0 = max(ax, region.x0), max(ay, region.y0)
        x1 = min(ax + q.width, region.x0 + region.width)
        y1 = min(ay + q.height, region.y0 + region.height)
        if x0 < x1 and y0 < y1:
            covered[y0 - region.y0 : y1 - region.y0, x0 - region.x0 : x1 - region.x0] = True
    if not covered.all():
        xs, ys = np.nonzero((~covered).T)
        return (region.x0 + int(xs[0]), region.y0 + int(ys[0]))
    return None


def covers_block(q: np.ndarray, v: np.ndarray) -> bool:
    """True when occurrences of ``q`` lying inside ``v`` cover all of ``v``."""
    qh, qw = q.shape
    mask = _match_mask(q, v)
    if not mask.any():
        return False
    return bool(coverage(mask, qw, qh).all())


def enumerate_covers(v: Block) -> list[Block]:
    """All proper covers of the finite block ``v``, by area then lexicographically.

    A cover of a finite block must occur at each of its corners, so the
    candidates are the bottom-left corner sub-blocks that also match the
    other three corners.
    """
    if v.is_empty():
        raise ValueError("empty block")
    c = v.cells
    H, W = c.shape
    found = []
    for ch in range(1, H + 1):
        for cw in range(1, W + 1):
            if (cw, ch) == (W, H):
                continue
            cand = c[:ch, :cw]
            if not (
                np.array_equal(cand, c[H - ch :, W - cw :])
                and np.array_equal(cand, c[H - ch :, :cw])
                and np.array_equal(cand, c[:ch, W - cw :])
            ):
                continue
            if covers_block(cand, c):
                found.append(Block(cand))
    return sorted(found, key=Block.sort_key)


@dataclass(frozen=True)
class BorderInfo:
    border: Block
    kind: str  # "horizontal" | "vertical" | "diagonal"
    corner_pair: str

    def to_json(self) -> dict:
        return {
            "border": self.border.rows(),
            "width": self.border.width,
            "height": self.border.height,
            "class": self.kind,
            "corner_pair": self.corner_pair,
        }


def borders(q: Block) -> list[BorderInfo]:
    """Proper non-empty blocks occurring in two opposite corners of ``q``.

    One entry per (dimensions, corner pair).  A full-width or full-height
    border sits on the same two placements for both corner pairs, so it is
    reported once, under BL-TR.
    """
    if q.is_empty():
        raise ValueError("empty block")
    c = q.cells
    h, w = c.shape
    out = []
    for bh in range(1, h + 1):
        for bw in range(1, w + 1):
            if (bw, bh) == (w, h):
                continue
            kind = "horizontal" if bw == w else "vertical" if bh == h else "diagonal"
            bl = c[:bh, :bw]
            if np.array_equal(bl, c[h - bh :, w - bw :]):
                out.append(BorderInfo(Block(bl), kind, BL_TR))
            if kind == "diagonal":
                tl = c[h - bh :, :bw]
                if np.array_equal(tl, c[:bh, w - bw :]):
                    out.append(BorderInfo(Block(tl), kind, TL_BR))
    out.sort(key=lambda b: (b.border.area, b.border.width, b.corner_pair))
    return out


def _failure(seq: Sequence) -> list[int]:
    """Border array: ``f[i]`` is the longest proper border of ``seq[:i+1]``."""
    f = [0] * len(seq)
    k = 0
    for i in range(1, len(seq)):
        while k and seq[i] != seq[k]:
            k = f[k - 1]
        if seq[i] == seq[k]:
            k += 1
        f[i] = k
    return f


def smallest_root_length(seq: Sequence) -> int:
    n = len(seq)
    if n == 0:
        raise ValueError("empty word")
    p = n - _failure(seq)[-1]
    return p if n % p == 0 else n


def primitive_root_1d(w):
    """Shortest ``r`` with ``w = r^k`` (works on ``str`` or any sequence)."""
    return w[: smallest_root_length(w)]


def primitive_root_2d(q: Block) -> Block:
    if q.is_empty():
        raise ValueError("empty block")
    c = q.cells
    cols = [c[:, x].tobytes() for x in range(c.shape[1])]
    rows = [c[y, :].tobytes() for y in range(c.shape[0])]
    pw = smallest_root_length(cols)
    ph = smallest_root_length(rows)
    r = Block(c[:ph, :pw])
    assert q.width % pw == 0 and q.height % ph == 0
    return r


def border_1d(w) -> int:
    """Length of the longest proper border of a 1D word (0 when unbordered)."""
    return _failure(w)[-1] if len(w) else 0


def smallest_border_1d(w) -> int:
    f = _failure(w)
    k = f[-1] if f else 0
    if k == 0:
        return 0
    while f[k - 1]:
        k = f[k - 1]
    return k


def admits_aperiodic_1d(q) -> bool:
    if not len(q):
        raise ValueError("empty word")
    return border_1d(primitive_root_1d(q)) > 0


def diagonal_borders(q: Block) -> list[BorderInfo]:
    return [b for b in borders(q) if b.kind == "diagonal"]


def admits_aperiodic_2d(q: Block) -> bool:
    return bool(diagonal_borders(primitive_root_2d(q)))


@dataclass(frozen=True)
class CornerReport:
    free_pairs: frozenset[str]
    full_width_border: bool
    full_height_border: bool

    @property
    def entropy_hypothesis(self) -> bool:
        """Some corner pair is border-free and no border spans a full side."""
        return bool(self.free_pairs) and not self.full_width_border and not self.full_height_border

    def to_json(self) -> dict:
        return {
            "free_pairs": sorted(self.free_pairs),
            "full_width_border": self.full_width_border,
            "full_height_border": self.full_height_border,
        }


def border_free_corner(q: Block) -> CornerReport:
    bs = borders(q)
    used = set()
    for b in bs:
        used.add(b.corner_pair)
        if b.kind != "diagonal":
            used.update(CORNER_PAIRS)
    return CornerReport(
        frozenset(p for p in CORNER_PAIRS if p not in used),
        any(b.kind == "horizontal" for b in bs),
        any(b.kind == "vertical" for b in bs),
    )

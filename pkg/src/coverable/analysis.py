"""Measurements on finite windows of pictures.

Block complexity, entropy approximants, frequency profiles, recurrence
radii, multi-scale coverability, frontier walks and the counting bounds.
Every report carries the window it was measured on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Block, Coord, LazyPicture, Placed, Window, _match_mask, evaluate, occurrences_in_union
from .covers import (
    BL_TR,
    TL_BR,
    _cover_from_cells,
    border_free_corner,
    borders,
    is_cover,
    occ_map,
)


class InsufficientDataError(ValueError):
    """The window is too small for the requested measurement."""


class InconsistentWalkError(ValueError):
    def __init__(self, message: str, position: Coord | None = None):
        super().__init__(message if position is None else f"{message} at {position}")
        self.position = position


# ---------------------------------------------------------------------------
# hashing of sub-blocks

_B1 = (np.uint64(0x100000001B3), np.uint64(0x9E3779B97F4A7C15))
_B2 = (np.uint64(0xC2B2AE3D27D4EB4F), np.uint64(0x165667B19E3779F9))


def block_ids(cells: np.ndarray, n: int, m: int) -> np.ndarray:
    """Integer id per anchor of an ``n x m`` sub-block (equal ids iff equal blocks).

    Two independent 64-bit polynomial hashes, made dense with ``np.unique``.
    """
    H, W = cells.shape
    if n > W or m > H or n < 1 or m < 1:
        raise InsufficientDataError(f"window {W}x{H} smaller than {n}x{m}")
    c = cells.astype(np.uint64) + np.uint64(1)
    keys = []
    with np.errstate(over="ignore"):
        for b1, b2 in zip(_B1, _B2):
            row = np.zeros((H, W - n + 1), dtype=np.uint64)
            for dx in range(n):
                row = row * b1 + c[:, dx : dx + W - n + 1]
            col = np.zeros((H - m + 1, W - n + 1), dtype=np.uint64)
            for dy in range(m):
                col = col * b2 + row[dy : dy + H - m + 1]
            keys.append(col.ravel())
    _, inv = np.unique(np.stack(keys, axis=1), axis=0, return_inverse=True)
    return inv.reshape(H - m + 1, W - n + 1)


# ---------------------------------------------------------------------------
# complexity and entropy


@dataclass(frozen=True)
class ComplexityEntry:
    n: int
    m: int
    count: int
    anchors: int


@dataclass
class ComplexityReport:
    window: Window
    entries: dict[tuple[int, int], ComplexityEntry] = field(default_factory=dict)

    def __getitem__(self, nm: tuple[int, int]) -> int:
        return self.entries[nm].count

    def to_json(self) -> dict:
        return {
            "window": self.window.as_list(),
            "entries": [
                {"n": e.n, "m": e.m, "count": e.count, "anchors": e.anchors}
                for _, e in sorted(self.entries.items())
            ],
        }


def block_complexity(p: LazyPicture, win: Window, n: int, m: int | None = None) -> ComplexityEntry:
    """Distinct ``n x m`` blocks over all anchors of ``win``."""
    m = n if m is None else m
    if n > win.width or m > win.height:
        raise InsufficientDataError(f"window {win.width}x{win.height} smaller than {n}x{m}")
    ids = block_ids(evaluate(p, win).cells, n, m)
    return ComplexityEntry(n, m, int(ids.max()) + 1, int(ids.size))


def complexity_report(p: LazyPicture, win: Window, sizes: Iterable[tuple[int, int]]) -> ComplexityReport:
    cells = evaluate(p, win).cells
    rep = ComplexityReport(win)
    for n, m in sizes:
        ids = block_ids(cells, n, m)
        rep.entries[(n, m)] = ComplexityEntry(n, m, int(ids.max()) + 1, int(ids.size))
    return rep


@dataclass(frozen=True)
class EntropyProfile:
    window: Window
    alphabet_size: int
    counts: tuple[int, ...]
    values: tuple[float, ...]  # log_|alphabet| c(n,n) / n^2, n = 1..n_max
    values_base2: tuple[float, ...]

    @property
    def decreasing(self) -> bool:
        return all(b <= a + 1e-12 for a, b in zip(self.values, self.values[1:]))

    def to_json(self) -> dict:
        return {
            "window": self.window.as_list(),
            "alphabet_size": self.alphabet_size,
            "n": list(range(1, len(self.values) + 1)),
            "counts": list(self.counts),
            "entropy": list(self.values),
            "entropy_base2": list(self.values_base2),
            "decreasing": self.decreasing,
        }


def entropy_profile(p: LazyPicture, win: Window, n_max: int) -> EntropyProfile:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > min(win.width, win.height):
        raise InsufficientDataError(f"window {win.width}x{win.height} too small for n = {n_max}")
    cells = evaluate(p, win).cells
    k = len(p.alphabet)
    counts, vals, vals2 = [], [], []
    for n in range(1, n_max + 1):
        c = int(block_ids(cells, n, n).max()) + 1
        counts.append(c)
        vals2.append(math.log2(c) / n**2)
        vals.append(math.log(c, k) / n**2 if k > 1 else 0.0)
    return EntropyProfile(win, k, tuple(counts), tuple(vals), tuple(vals2))


# ---------------------------------------------------------------------------
# frequencies


@dataclass(frozen=True)
class FrequencyProfile:
    u: Block
    ns: tuple[int, ...]
    counts: tuple[int, ...]  # |B_n|_u

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(c / (2 * n + 1) ** 2 for n, c in zip(self.ns, self.counts))

    def _tail(self) -> tuple[float, ...]:
        v = self.values
        return v[len(v) // 2 :] if len(v) > 1 else v

    @property
    def oscillation(self) -> float:
        """``max - min`` over the larger half of the measured ``n``."""
        t = self._tail()
        return max(t) - min(t)

    @property
    def tail_mean(self) -> float:
        t = self._tail()
        return sum(t) / len(t)

    @property
    def full_oscillation(self) -> float:
        return max(self.values) - min(self.values)

    @property
    def mean(self) -> float:
        return sum(self.values) / len(self.values)

    def to_json(self) -> dict:
        return {
            "u": self.u.rows(),
            "n": list(self.ns),
            "count": list(self.counts),
            "frequency": list(self.values),
            "oscillation": self.oscillation,
            "tail_mean": self.tail_mean,
        }


def _count_direct(p: LazyPicture, u: Block, n: int) -> int:
    side = 2 * n + 1
    if u.width > side or u.height > side:
        return 0
    return int(_match_mask(u.cells, evaluate(p, Window.centered(n)).cells).sum())


def _counts_sheared(p: LazyPicture, u: Block, ns: Sequence[int], period: Coord) -> list[int]:
    # p(x + px, y + py) = p(x, y) with py > 0: anchor rows y = rho + k py read
    # the base strip shifted by k px, so per-row counts are prefix-sum lookups.
    px, py = period
    if py < 0:
        px, py = -px, -py
    uw, uh = u.width, u.height
    n_max = max(ns)
    kmax = n_max // py + 2
    span = abs(px) * kmax
    x_lo = -n_max - span
    x_hi = n_max + span + uw
    strip = p.fill(x_lo, 0, x_hi - x_lo, py + uh - 1)
    mask = _match_mask(u.cells, strip)  # anchors (x_lo + i, rho)
    csum = np.zeros((py, mask.shape[1] + 1), dtype=np.int64)
    csum[:, 1:] = np.cumsum(mask[:py], axis=1)
    out = []
    for n in ns:
        side = 2 * n + 1
        if uw > side or uh > side:
            out.append(0)
            continue
        ys = np.arange(-n, n - uh + 2)
        k = np.floor_divide(ys, py)
        rho = ys - k * py
        lo = -n - k * px - x_lo
        hi = n - uw + 1 - k * px - x_lo + 1
        out.append(int((csum[rho, hi] - csum[rho, lo]).sum()))
    return out


def frequency_profile(p: LazyPicture, u: Block, n_list: Sequence[int]) -> FrequencyProfile:
    """``f_u(B_n) = |B_n|_u / (2n + 1)^2`` with ``B_n`` the centered window of radius ``n``.

    Pictures invariant under a translation with a vertical component use an
    exact strip computation, so large radii stay cheap.
    """
    if u.is_empty():
        raise ValueError("empty block")
    ns = tuple(int(n) for n in n_list)
    if p.period is not None and p.period[1] != 0 and max(ns) > 64:
        counts = _counts_sheared(p, u, ns, p.period)
    else:
        counts = [_count_direct(p, u, n) for n in ns]
    return FrequencyProfile(u, ns, tuple(counts))


def toroidal_frequency(q: Block, u: Block) -> float:
    """Occurrences of ``u`` per cell in the ``q``-periodic picture."""
    ext = np.tile(q.cells, (-(-(q.height + u.height) // q.height), -(-(q.width + u.width) // q.width)))
    mask = _match_mask(u.cells, ext)[: q.height, : q.width]
    return float(mask.sum()) / q.area


# ---------------------------------------------------------------------------
# recurrence


@dataclass(frozen=True)
class RecurrenceResult:
    k: int
    window: Window
    radius: int | None
    witness_block: Block | None = None
    witness_window: Window | None = None

    @property
    def found(self) -> bool:
        return self.radius is not None

    def to_json(self) -> dict:
        d = {"k": self.k, "window": self.window.as_list(), "found": self.found, "radius": self.radius}
        if self.witness_block is not None:
            d["witness_block"] = self.witness_block.rows()
            d["witness_window"] = self.witness_window.as_list()
        return d


def _missing(ids: np.ndarray, order: np.ndarray, span: int):
    """First (id, anchor) such that the ``span x span`` anchor square lacks ``id``."""
    A, B = ids.shape
    for b in order:
        ind = (ids == b).astype(np.int32)
        cs = np.zeros((A + 1, B + 1), dtype=np.int32)
        cs[1:, 1:] = ind.cumsum(0).cumsum(1)
        tot = cs[span:, span:] - cs[:-span, span:] - cs[span:, :-span] + cs[:-span, :-span]
        if (tot == 0).any():
            xs, ys = np.nonzero((tot == 0).T)
            return int(b), (int(xs[0]), int(ys[0]))
    return None


def recurrence_radius(p: LazyPicture, win: Window, k: int, l_max: int | None = None) -> RecurrenceResult:
    """Smallest ``l`` such that every ``k x k`` block of ``win`` occurs in every ``l x l`` sub-window."""
    l_max = min(win.width, win.height) // 2 if l_max is None else l_max
    if l_max < k or k < 1:
        raise InsufficientDataError(f"window {win.width}x{win.height} too small for k = {k}")
    cells = evaluate(p, win).cells
    ids = block_ids(cells, k, k)
    freq = np.bincount(ids.ravel())
    order = np.argsort(freq, kind="stable")
    fail = _missing(ids, order, l_max - k + 1)
    if fail is not None:
        b, (x, y) = fail
        ay, ax = np.argwhere(ids == b)[0]
        block = Block(cells[ay : ay + k, ax : ax + k])
        return RecurrenceResult(k, win, None, block, Window(win.x0 + x, win.y0 + y, l_max, l_max))
    lo, hi = k, l_max
    while lo < hi:
        mid = (lo + hi) // 2
        if _missing(ids, order, mid - k + 1) is None:
            hi = mid
        else:
            lo = mid + 1
    return RecurrenceResult(k, win, lo)


# ---------------------------------------------------------------------------
# multi-scale coverability


@dataclass(frozen=True)
class ScaleEntry:
    n: int
    cover: Block | None
    source: str  # "hint" | "search" | "reused" | "none"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "found": self.cover is not None,
            "cover": None if self.cover is None else self.cover.rows(),
            "size": None if self.cover is None else [self.cover.width, self.cover.height],
            "source": self.source,
        }


@dataclass(frozen=True)
class MultiscaleProfile:
    window: Window
    entries: tuple[ScaleEntry, ...]

    @property
    def complete(self) -> bool:
        return all(e.cover is not None for e in self.entries)

    def covers(self) -> list[Block]:
        seen, out = set(), []
        for e in self.entries:
            if e.cover is not None and e.cover not in seen:
                seen.add(e.cover)
                out.append(e.cover)
        return out

    def to_json(self) -> dict:
        return {"window": self.window.as_list(), "complete": self.complete, "entries": [e.to_json() for e in self.entries]}


def _hint_candidates(p: LazyPicture, n: int, extra: int) -> list[Block]:
    out = []
    if "covers" in p.hints:
        out.extend(p.hints["covers"](n))
    if "tileset" in p.hints:
        from .construct import tile_power_candidates

        out.extend(tile_power_candidates(p.hints["tileset"], n))
    return out


class _CoverTester:
    """Cover tests against one evaluated neighbourhood of a region."""

    def __init__(self, p: LazyPicture, region: Window, margin: int):
        self.region = region
        self.margin = margin
        self.ext_win = region.grow(margin, margin)
        self.ext = evaluate(p, self.ext_win).cells

    def test(self, q: Block) -> bool:
        mx, my = q.width - 1, q.height - 1
        if mx > self.margin or my > self.margin:
            return False
        ox, oy = self.margin - mx, self.margin - my
        sub = self.ext[oy : oy + self.region.height + 2 * my, ox : ox + self.region.width + 2 * mx]
        win = Window(self.ext_win.x0 + ox, self.ext_win.y0 + oy, sub.shape[1], sub.shape[0])
        return bool(_cover_from_cells(q, sub, win, self.region))


def multiscale_profile(
    p: LazyPicture,
    win: Window,
    n_max: int,
    use_hints: bool = True,
    search: bool = True,
    max_dim: int | None = None,
) -> MultiscaleProfile:
    """For each ``n <= n_max``, a cover of ``win`` with both dimensions ``>= n``.

    Generator hints are tried first.  The fallback search takes the blocks
    anchored at the window's bottom-left corner, dimensions from ``n`` up to
    a quarter of the window, in increasing area.  A cover found for ``n`` is
    reused for smaller ``n`` when its dimensions allow it.
    """
    max_dim = max(n_max, min(win.width, win.height) // 4) if max_dim is None else max_dim
    tester = _CoverTester(p, win, max_dim + 4 * n_max)
    base = evaluate(p, Window(win.x0, win.y0, max_dim, max_dim)).cells
    entries: list[ScaleEntry] = []
    found: list[Block] = []
    # search candidates for n + 1 are a subset of those for n
    search_failed = False
    for n in range(1, n_max + 1):
        reuse = next((c for c in found if min(c.width, c.height) >= n), None)
        if reuse is not None:
            entries.append(ScaleEntry(n, reuse, "reused"))
            continue
        hit, source = None, "none"
        if use_hints:
            for cand in _hint_candidates(p, n, max_dim):
                if min(cand.width, cand.height) >= n and tester.test(cand):
                    hit, source = cand, "hint"
                    break
        if hit is None and search and not search_failed:
            dims = sorted(
                ((a, b) for a in range(n, max_dim + 1) for b in range(n, max_dim + 1)),
                key=lambda d: (d[0] * d[1], d[0], d[1]),
            )
            for a, b in dims:
                cand = Block(base[:b, :a])
                if tester.test(cand):
                    hit, source = cand, "search"
                    break
            search_failed = hit is None
        if hit is not None:
            found.append(hit)
        entries.append(ScaleEntry(n, hit, source))
    return MultiscaleProfile(win, tuple(entries))


@dataclass(frozen=True)
class StrongMscResult:
    holds: bool
    witness: Block | None
    witness_anchor: Coord | None
    profile: MultiscaleProfile
    reason: str

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.rows(),
            "witness_anchor": None if self.witness_anchor is None else list(self.witness_anchor),
            "profile": self.profile.to_json(),
        }


def _block_keys(cells: np.ndarray, k: int) -> set[bytes]:
    H, W = cells.shape
    if k > H or k > W:
        return set()
    ids = block_ids(cells, k, k)
    _, first = np.unique(ids.ravel(), return_index=True)
    out = set()
    for f in first:
        y, x = divmod(int(f), W - k + 1)
        out.add(cells[y : y + k, x : x + k].tobytes())
    return out


def strong_msc_check(p: LazyPicture, win: Window, block_size_max: int, n_max: int, **kw) -> StrongMscResult:
    """Every ``k x k`` block of the window (``k <= block_size_max``) occurs inside a found cover."""
    prof = multiscale_profile(p, win, n_max, **kw)
    if not prof.complete:
        return StrongMscResult(False, None, None, prof, "not multi-scale coverable at this window")
    covers = prof.covers()
    cells = evaluate(p, win).cells
    for k in range(1, block_size_max + 1):
        known = set()
        for c in covers:
            known |= _block_keys(c.cells, k)
        ids = block_ids(cells, k, k)
        _, first = np.unique(ids.ravel(), return_index=True)
        for f in sorted(first):
            y, x = divmod(int(f), cells.shape[1] - k + 1)
            blk = cells[y : y + k, x : x + k]
            if blk.tobytes() not in known:
                return StrongMscResult(False, Block(blk), (win.x0 + x, win.y0 + y), prof, f"{k}x{k} block outside every cover")
    return StrongMscResult(True, None, None, prof, "ok")


# ---------------------------------------------------------------------------
# frontier walks


@dataclass(frozen=True)
class FrontierWalk:
    """Occurrences of ``q`` along the bottom and left frontiers of a covering region.

    Coordinates are relative to ``u[0] == v[0] == (0, 0)`` and expressed in
    the canonical orientation, where the BL-TR corner pair of the (possibly
    mirrored) cover carries no border.  ``offset`` locates the target
    ``n x n`` block.  ``d_R[i]`` / ``d_A[i]`` are the offsets of ``u[i]`` /
    ``v[i]``; for ``u`` only ``d_R`` matters to the chain, and vice versa.
    """

    q: Block
    n: int
    flipped: bool
    offset: Coord
    u: tuple[Coord, ...]
    v: tuple[Coord, ...]
    d_R: tuple[int, ...]
    d_A: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "q": self.q.rows(),
            "n": self.n,
            "flipped": self.flipped,
            "offset": list(self.offset),
            "u": [list(a) for a in self.u],
            "v": [list(a) for a in self.v],
            "d_R": list(self.d_R),
            "d_A": list(self.d_A),
        }

    @classmethod
    def from_json(cls, d: dict) -> FrontierWalk:
        return cls(
            Block.from_rows(d["q"]),
            int(d["n"]),
            bool(d["flipped"]),
            tuple(d["offset"]),
            tuple(tuple(a) for a in d["u"]),
            tuple(tuple(a) for a in d["v"]),
            tuple(d["d_R"]),
            tuple(d["d_A"]),
        )


def canonical_orientation(q: Block) -> bool:
    """Whether ``q`` must be mirrored so that BL-TR is the border-free pair.

    Raises ``ValueError`` when ``q`` violates the hypotheses of the entropy
    bound (no free pair, or a full-width / full-height border).
    """
    rep = border_free_corner(q)
    if not rep.entropy_hypothesis:
        raise ValueError("cover has no border-free corner pair, or a full-width/full-height border")
    return BL_TR not in rep.free_pairs


def _grid(u: Sequence[Coord], v: Sequence[Coord], w: int, h: int) -> np.ndarray:
    k, l = len(u), len(v)
    gx = np.zeros((k, l), dtype=np.int64)
    gy = np.zeros((k, l), dtype=np.int64)
    for i, (x, y) in enumerate(u):
        gx[i, 0], gy[i, 0] = x, y
    for j, (x, y) in enumerate(v):
        gx[0, j], gy[0, j] = x, y
    for i in range(1, k):
        for j in range(1, l):
            gx[i, j] = gx[i - 1, j] + w
            gy[i, j] = gy[i, j - 1] + h
    return gx, gy


def _paint(q: np.ndarray, gx: np.ndarray, gy: np.ndarray, win: Window) -> np.ndarray:
    h, w = q.shape
    canvas = np.zeros((win.height, win.width), dtype=np.uint32)
    for x, y in zip(gx.ravel(), gy.ravel()):
        x0, y0 = max(x, win.x0), max(y, win.y0)
        x1, y1 = min(x + w, win.x0 + win.width), min(y + h, win.y0 + win.height)
        if x0 >= x1 or y0 >= y1:
            continue
        src = q[y0 - y : y1 - y, x0 - x : x1 - x]
        dst = canvas[y0 - win.y0 : y1 - win.y0, x0 - win.x0 : x1 - win.x0]
        clash = (dst != 0) & (dst != src)
        if clash.any():
            yy, xx = np.argwhere(clash)[0]
            raise InconsistentWalkError("conflicting letters", (int(x0 + xx), int(y0 + yy)))
        dst[...] = src
    return canvas


def frontier_extract(p: LazyPicture, q: Block, origin: Coord, n: int) -> FrontierWalk:
    """Walk of the ``n x n`` block at ``origin`` of a ``q``-coverable picture.

    The walk starts from the canonical occurrence of a cell below and to the
    left of the block, far enough that the occurrence grid spanned by the two
    frontier chains covers the block.
    """
    flipped = canonical_orientation(q)
    qc = q.flip_vertical() if flipped else q
    w, h = qc.width, qc.height
    X, Y = origin
    if flipped:
        Y = -Y - n  # mirrored frame: rows y -> -1 - y
    a, b = (h - 1) / w, (w - 1) / h
    D = E = 0.0
    for _ in range(200):
        E2 = a * (D + n) + 2 * h
        D2 = b * (E2 + n) + 2 * w
        if abs(D2 - D) < 1e-9 and abs(E2 - E) < 1e-9:
            break
        D, E = D2, E2
    D, E = int(math.ceil(D)), int(math.ceil(E))
    for _attempt in range(4):
        sx, sy = X - D, Y - E
        k = (X + n - sx) // w + 2
        l = (Y + n - sy) // h + 2
        reach_x = sx + (k + l + 2) * w
        reach_y = sy + (k + l + 2) * h
        win = Window(sx - w, sy - h, reach_x - sx + 2 * w, reach_y - sy + 2 * h)
        if flipped:
            src = evaluate(p, Window(win.x0, -win.y0 - win.height, win.width, win.height)).cells[::-1]
        else:
            src = evaluate(p, win).cells
        _, ox, oy = occ_map(qc.cells, src)

        def occ(x, y):
            ax, ay = ox[y - win.y0, x - win.x0], oy[y - win.y0, x - win.x0]
            if ax < 0:
                raise ValueError(f"cell {(x, y)} is not covered by q")
            return (int(ax) + win.x0, int(ay) + win.y0)

        u = [occ(sx, sy)]
        for _ in range(k - 1):
            x, y = u[-1]
            u.append(occ(x + w, y + h - 1))
        v = [u[0]]
        for _ in range(l - 1):
            x, y = v[-1]
            v.append(occ(x + w - 1, y + h))
        d_R = [u[i + 1][1] - u[i][1] for i in range(k - 1)]
        d_A = [v[j + 1][0] - v[j][0] for j in range(l - 1)]
        x0, y0 = u[0]
        walk = FrontierWalk(
            q,
            n,
            flipped,
            (X - x0, Y - y0),
            tuple((x - x0, y - y0) for x, y in u),
            tuple((x - x0, y - y0) for x, y in v),
            tuple(d_R),
            tuple(d_A),
        )
        try:
            frontier_reconstruct(walk)
            return walk
        except InconsistentWalkError as e:
            if "uncovered" not in str(e):
                raise
            D, E = 2 * D + w, 2 * E + h
    raise InconsistentWalkError("walk grid does not reach the block")


def _check_steps(walk: FrontierWalk, w: int, h: int) -> None:
    diag = {(b.border.width, b.border.height) for b in borders(walk.q.flip_vertical() if walk.flipped else walk.q) if b.corner_pair == TL_BR}
    for i in range(len(walk.u) - 1):
        (x, y), (x2, y2) = walk.u[i], walk.u[i + 1]
        if (x2 - x, y2 - y) != (w, walk.d_R[i]) or not 0 <= walk.d_R[i] < h:
            raise InconsistentWalkError(f"bottom frontier step {i} is not a right step", (x2, y2))
    for j in range(len(walk.v) - 1):
        (x, y), (x2, y2) = walk.v[j], walk.v[j + 1]
        if (x2 - x, y2 - y) != (walk.d_A[j], h) or not 0 <= walk.d_A[j] < w:
            raise InconsistentWalkError(f"left frontier step {j} is not an up step", (x2, y2))
    # the corner occurrence has both offsets; they must fall in one of the three cases
    if walk.d_R and walk.d_A:
        dA, dR = walk.d_A[0], walk.d_R[0]
        if dA > 0 and dR > 0 and (dA, dR) not in diag:
            raise InconsistentWalkError(f"offsets {(dA, dR)} are not the dimensions of a border", walk.u[0])


def frontier_reconstruct(walk: FrontierWalk) -> Block:
    """Rebuild the target block from its frontier walk alone."""
    if not walk.u or walk.u[0] != (0, 0) or walk.v[0] != walk.u[0]:
        raise InconsistentWalkError("frontiers must start at the same occurrence", None)
    qc = walk.q.flip_vertical() if walk.flipped else walk.q
    w, h = qc.width, qc.height
    _check_steps(walk, w, h)
    gx, gy = _grid(walk.u, walk.v, w, h)
    win = Window(walk.offset[0], walk.offset[1], walk.n, walk.n)
    canvas = _paint(qc.cells, gx, gy, win)
    if (canvas == 0).any():
        yy, xx = np.argwhere(canvas == 0)[0]
        raise InconsistentWalkError("uncovered cell", (int(win.x0 + xx), int(win.y0 + yy)))
    return Block(canvas[::-1] if walk.flipped else canvas)


# ---------------------------------------------------------------------------
# counting bounds


@dataclass(frozen=True)
class BoundCheck:
    n: int
    measured: int
    bounds: dict
    window: Window

    @property
    def ok(self) -> bool:
        return all(self.measured <= b for b in self.bounds.values())

    def to_json(self) -> dict:
        return {"n": self.n, "measured": self.measured, "bounds": dict(self.bounds), "ok": self.ok, "window": self.window.as_list()}


class CoverFailure(ValueError):
    pass


def count_bound_check(p: LazyPicture, win: Window, q: Block, n: int) -> BoundCheck:
    """Measured ``c(n, n)`` against the bounds that apply to ``q``.

    ``thm1``: ``|q| * 2^(2n)`` when ``q`` has a border-free corner pair and no
    full-width / full-height border.  ``msc``: ``m^(4m)`` when ``n`` equals the
    larger dimension ``m`` of ``q``.
    """
    cert = is_cover(q, p, win)
    if not cert:
        raise CoverFailure(f"{cert.cell} not covered by q")
    measured = block_complexity(p, win, n, n).count
    bounds = {}
    if border_free_corner(q).entropy_hypothesis:
        bounds["thm1"] = q.area * 4**n
    m = max(q.width, q.height)
    if n == m:
        bounds["msc"] = m ** (4 * m)
    bounds["trivial"] = len(p.alphabet) ** (n * n)
    return BoundCheck(n, measured, bounds, win)


def msc_entropy_bound_check(p: LazyPicture, win: Window, cover: Block) -> BoundCheck:
    m = max(cover.width, cover.height)
    return count_bound_check(p, win, cover, m)


# ---------------------------------------------------------------------------
# counting inequalities


@dataclass(frozen=True)
class CountDecomposition:
    occurrences: int  # |v|_u
    occurrences_v1: int  # |v1|_u
    area_v1: int
    area_v2: int
    split_lower: bool  # |v1|_u <= |v|_u
    split_upper: bool  # |v|_u <= |v1|_u + |v2|
    parts_upper: bool | None  # |v|_u <= sum(|v_i|_u + w_i h_u + h_i w_u)

    @property
    def all_true(self) -> bool:
        return self.split_lower and self.split_upper and self.parts_upper is not False

    def as_tuple(self) -> tuple:
        return (self.split_lower, self.split_upper, self.parts_upper)


def _check_partition(v: Block, rects: Sequence[Window]) -> None:
    seen = np.zeros((v.height, v.width), dtype=np.int32)
    for r in rects:
        if r.x0 < 0 or r.y0 < 0 or r.x0 + r.width > v.width or r.y0 + r.height > v.height:
            raise ValueError(f"part {r.as_list()} leaves the block")
        seen[r.y0 : r.y0 + r.height, r.x0 : r.x0 + r.width] += 1
    if not (seen == 1).all():
        raise ValueError("parts do not partition the block")


def verify_count_decomposition(v: Block, split: tuple[Sequence[Window], Sequence[Window]], u: Block) -> CountDecomposition:
    """Both counting inequalities with exact integers.

    ``split = (v1_parts, v2_parts)``: rectangles (in ``v``'s coordinates)
    whose unions are ``v1`` and ``v2``.  The per-part bound is evaluated over
    all parts when each strictly exceeds ``u`` in both dimensions, else
    reported as ``None``.

    ``split_upper`` is guaranteed when ``v1`` is closed under moving down
    and left: an occurrence not inside ``v1`` then has its top-right cell in
    ``v2``, which charges it to a distinct ``v2`` cell.  For other splits it
    can fail (a ring around a single cell of a constant block).
    """
    v1_parts, v2_parts = list(split[0]), list(split[1])
    parts = v1_parts + v2_parts
    _check_partition(v, parts)
    total = int(_match_mask(u.cells, v.cells).sum()) if u.width <= v.width and u.height <= v.height else 0

    def placed(rs):
        return [Placed(v.sub(r.x0, r.y0, r.width, r.height), r.x0, r.y0) for r in rs]

    in_v1 = occurrences_in_union(u, placed(v1_parts)) if v1_parts else 0
    a1 = sum(r.width * r.height for r in v1_parts)
    a2 = sum(r.width * r.height for r in v2_parts)
    per_part = None
    if all(r.width > u.width and r.height > u.height for r in parts):
        rhs = 0
        for r in parts:
            own = occurrences_in_union(u, placed([r]))
            rhs += own + r.width * u.height + r.height * u.width
        per_part = total <= rhs
    return CountDecomposition(total, in_v1, a1, a2, in_v1 <= total, total <= in_v1 + a2, per_part)


# ---------------------------------------------------------------------------
# experiment preset


def conjecture_probe(n_max: int = 6, side: int = 160, seeds: Sequence[int] = (0, 1, 2)) -> list[dict]:
    """Entropy approximants for covers with borders in every corner pair.

    Records data only: the zero-entropy statement for this case is open.
    """
    from .construct import random_coverable_picture

    qs = [Block.from_rows(["bba", "bbb", "abb"]), Block.from_rows(["aba", "bab", "aba"])]
    out = []
    win = Window(0, 0, side, side)
    for q in qs:
        rep = border_free_corner(q)
        for s in seeds:
            p = random_coverable_picture(q, s)
            prof = entropy_profile(p, win, n_max)
            out.append({"q": q.rows(), "free_pairs": sorted(rep.free_pairs), "seed": s, "mode": p.descriptor["mode"], "profile": prof.to_json()})
    return out

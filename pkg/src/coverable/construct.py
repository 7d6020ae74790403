"""Generators for coverable pictures.

Covers the periodic picture, the 8x1 morphism ``nu``, one-dimensional
aperiodic coverable words, the four-tile ``mu`` assembly (aperiodic,
non-recurrent and frequency-free variants), the bi-infinite line word and a
seeded sampler of random coverings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import sequences as sq
from .core import (
    Alphabet,
    Block,
    ConflictError,
    Coord,
    _match_mask,
    LazyPicture,
    PartialPicture,
    Window,
    evaluate,
    power,
    superpose,
)
from .covers import (
    BL_TR,
    TL_BR,
    admits_aperiodic_1d,
    admits_aperiodic_2d,
    diagonal_borders,
    primitive_root_1d,
    primitive_root_2d,
    smallest_border_1d,
)


class PreconditionError(ValueError):
    """A generator was called on a cover that does not satisfy its predicate."""

    def __init__(self, predicate: str, message: str):
        super().__init__(f"{predicate}: {message}")
        self.predicate = predicate


class TileConstructionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# simple pictures


def gen_periodic(q: Block) -> LazyPicture:
    """``p(x, y) = q(x mod width, y mod height)``."""
    if q.is_empty():
        raise ValueError("empty block")
    c = q.cells
    w, h = q.width, q.height

    def fill(x0, y0, ww, hh):
        xs = np.arange(x0, x0 + ww) % w
        ys = np.arange(y0, y0 + hh) % h
        return c[np.ix_(ys, xs)]

    def covers(n):
        return [power(q, -(-n // w), -(-n // h))]

    return LazyPicture(
        fill,
        Alphabet.of(q.letters()),
        {"kind": "periodic", "q": q.rows()},
        period=(w, 0),
        hints={"covers": covers},
    )


def random_picture(letters: Sequence[str], seed: int) -> LazyPicture:
    """Uniformly random picture, deterministic in ``(seed, x, y)``."""
    codes = np.array([ord(c) for c in letters], dtype=np.uint32)
    k = np.uint64(len(codes))

    def fill(x0, y0, w, h):
        ys, xs = np.mgrid[y0 : y0 + h, x0 : x0 + w]
        return codes[(sq.hash_coords(seed, xs, ys) % k).astype(np.int64)]

    return LazyPicture(fill, Alphabet.of(letters), {"kind": "random", "letters": "".join(letters), "seed": seed})


NU = {"a": "ababaaba", "b": "abaababa"}


def nu_image(src: LazyPicture) -> LazyPicture:
    """Apply the morphism ``a -> ababaaba``, ``b -> abaababa`` (8x1 images)."""
    if not set(src.alphabet) <= {"a", "b"}:
        raise ValueError("nu is defined on pictures over {a, b}")
    table = np.array([[ord(c) for c in NU["a"]], [ord(c) for c in NU["b"]]], dtype=np.uint32)

    def fill(x0, y0, w, h):
        sx0 = x0 // 8
        sx1 = (x0 + w - 1) // 8
        s = src.fill(sx0, y0, sx1 - sx0 + 1, h)
        xs = np.arange(x0, x0 + w)
        col = xs // 8 - sx0
        phase = xs % 8
        which = (s[:, col] == ord("b")).astype(np.int64)
        return table[which, phase[None, :]]

    return LazyPicture(fill, Alphabet.of("ab"), {"kind": "nu", "source": dict(src.descriptor)})


def msc_line_letter(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    is_a = np.where(x < 0, x % 2 == 0, np.where(x == 0, True, x % 2 == 1))
    return np.where(is_a, ord("a"), ord("b")).astype(np.uint32)


def gen_msc_line_word() -> LazyPicture:
    """Every row is ``...ababab a ababab...`` with the ``aa`` factor at ``x = 0, 1``."""

    def fill(x0, y0, w, h):
        row = msc_line_letter(np.arange(x0, x0 + w))
        return np.broadcast_to(row, (h, w)).copy()

    def covers(n):
        # aba(ba)^j with length >= n, repeated over >= n rows
        length = max(3, n + (1 - n % 2))
        word = ("ab" * length)[:length]
        return [Block.from_rows([word] * max(n, 1))]

    return LazyPicture(fill, Alphabet.of("ab"), {"kind": "msc_line"}, period=(0, 1), hints={"covers": covers})


# ---------------------------------------------------------------------------
# one dimension


def coverable_word_1d(q: str, driver: Sequence[int] | sq.Seq, length: int) -> str:
    """A ``q``-coverable word of length ``>= length`` whose shape follows ``driver``.

    With ``r = uvu`` the primitive root of ``q = r^k`` (``u`` its smallest
    border), the word starts with ``q`` and then appends ``r^k`` for a 0 bit
    and ``vu r^(k-1)`` for a 1 bit.  Each chunk closes a new occurrence of
    ``q`` ending at the end of the word.
    """
    if not admits_aperiodic_1d(q):
        raise PreconditionError("admits_aperiodic_1d", f"primitive root of {q!r} has no non-empty border")
    r = primitive_root_1d(q)
    k = len(q) // len(r)
    u = smallest_border_1d(r)
    vu = r[u:]
    chunks = (r * k, vu + r * (k - 1))
    out = [q]
    total = len(q)
    it = itertools.count() if isinstance(driver, sq.Seq) else iter(driver)
    while total < length:
        try:
            bit = next(it)
        except StopIteration:
            raise ValueError("driver exhausted before reaching the requested length") from None
        if isinstance(driver, sq.Seq):
            bit = driver(bit)
        c = chunks[int(bit) & 1]
        out.append(c)
        total += len(c)
    return "".join(out)


# ---------------------------------------------------------------------------
# the four tiles

TILE_NAMES = ("alpha", "beta", "delta", "gamma")
SUITABLE_LETTERS = "1234"  # a1..a4


@dataclass(frozen=True)
class SuitableSpec:
    """Column types ``X`` and row types ``Y``; the picture is ``a_{1 + X(i) + 2 Y(j)}``."""

    X: sq.Seq
    Y: sq.Seq

    def to_json(self) -> dict:
        return {"X": self.X.to_json(), "Y": self.Y.to_json()}

    def types(self, I: np.ndarray, J: np.ndarray) -> np.ndarray:
        return self.X(I) + 2 * self.Y(J)


def suitable_from_sequences(X: sq.Seq, Y: sq.Seq) -> LazyPicture:
    base = ord(SUITABLE_LETTERS[0])

    def fill(x0, y0, w, h):
        xs = X(np.arange(x0, x0 + w))
        ys = Y(np.arange(y0, y0 + h))
        return (base + xs[None, :] + 2 * ys[:, None]).astype(np.uint32)

    return LazyPicture(
        fill,
        Alphabet.of(SUITABLE_LETTERS),
        {"kind": "suitable", "X": X.to_json(), "Y": Y.to_json()},
    )


def is_suitable(block: Block) -> bool:
    """Rows on {a1, a2} or {a3, a4}; columns on {a1, a3} or {a2, a4}."""
    t = block.cells.astype(np.int64) - ord(SUITABLE_LETTERS[0])
    if ((t < 0) | (t > 3)).any():
        return False
    row_type = t >> 1
    col_type = t & 1
    return bool((row_type == row_type[:, :1]).all() and (col_type == col_type[:1, :]).all())


@dataclass(eq=False)
class TileSet:
    """Four tiles built from occurrences of ``q`` plus their assembly lattice.

    Tiles live in a native frame where the chosen border ``b`` sits at the
    TL-BR corners of ``r``; when the border was found at BL-TR the whole
    construction runs on the vertically mirrored cover and ``flipped`` is set,
    so assembled pictures are mirrored back.  Tile ``(i, j)`` of an assembly
    has its anchor at ``(4w i + w_b j, 4h j + h_b i)`` (native frame).
    """

    q: Block
    r: Block
    b: Block
    corner_pair: str
    layout: tuple[int, int]
    occurrence_lists: dict[str, tuple[Coord, ...]]
    tiles: dict[str, PartialPicture]
    _arrays: list = field(default_factory=list, repr=False)

    @property
    def flipped(self) -> bool:
        return self.corner_pair == BL_TR

    @property
    def native_q(self) -> Block:
        return self.q.flip_vertical() if self.flipped else self.q

    @property
    def native_b(self) -> Block:
        return self.b.flip_vertical() if self.flipped else self.b

    @property
    def h_step(self) -> Coord:
        return (4 * self.q.width, self.b.height)

    @property
    def v_step(self) -> Coord:
        return (self.b.width, 4 * self.q.height)

    @property
    def anchors(self) -> dict[str, tuple[Coord, Coord, Coord]]:
        """Per tile: left anchor, right anchor, top anchor (native frame)."""
        return {name: ((0, 0), self.h_step, self.v_step) for name in TILE_NAMES}

    def anchor(self, i: int, j: int) -> Coord:
        (hx, hy), (vx, vy) = self.h_step, self.v_step
        return (hx * i + vx * j, hy * i + vy * j)

    def placement(self, i: int, j: int, tile: str) -> PartialPicture:
        """Cells of ``tile`` placed at lattice position ``(i, j)``, in picture coordinates."""
        ax, ay = self.anchor(i, j)
        pp = self.tiles[tile].shifted(ax, ay)
        if self.flipped:
            pp = PartialPicture({(x, -1 - y): c for (x, y), c in pp})
        return pp

    def to_json(self) -> dict:
        return {
            "q": self.q.rows(),
            "r": self.r.rows(),
            "b": self.b.rows(),
            "corner_pair": self.corner_pair,
            "layout": list(self.layout),
            "occurrences": {k: [list(a) for a in v] for k, v in self.occurrence_lists.items()},
        }

    # -- assembly ---------------------------------------------------------

    def _prepare(self):
        self._arrays = []
        for name in TILE_NAMES:
            items = sorted(self.tiles[name])
            xs = np.array([x for (x, _), _ in items], dtype=np.int64)
            ys = np.array([y for (_, y), _ in items], dtype=np.int64)
            cs = np.array([ord(c) for _, c in items], dtype=np.uint32)
            self._arrays.append((xs, ys, cs))

    def index_range(self, x0: int, y0: int, w: int, h: int) -> tuple[range, range]:
        """Lattice indices whose tiles may meet the native window."""
        (hx, hy), (vx, vy) = self.h_step, self.v_step
        det = hx * vy - vx * hy
        tw, th = hx + vx, vy + hy
        xs = (x0 - tw, x0 + w)
        ys = (y0 - th, y0 + h)
        iis, jjs = [], []
        for x in xs:
            for y in ys:
                iis.append((vy * x - vx * y) / det)
                jjs.append((-hy * x + hx * y) / det)
        return (
            range(int(np.floor(min(iis))) - 1, int(np.ceil(max(iis))) + 2),
            range(int(np.floor(min(jjs))) - 1, int(np.ceil(max(jjs))) + 2),
        )

    def stamp(self, I: np.ndarray, J: np.ndarray, T: np.ndarray, x0: int, y0: int, w: int, h: int) -> np.ndarray:
        """Assemble tiles ``T`` at lattice positions ``(I, J)`` onto a native window.

        Unassigned cells are 0.  Raises ``ConflictError`` when two tiles
        disagree on a cell.
        """
        if not self._arrays:
            self._prepare()
        (hx, hy), (vx, vy) = self.h_step, self.v_step
        idx_parts, code_parts = [], []
        for t in range(4):
            sel = T == t
            if not sel.any():
                continue
            ax = hx * I[sel] + vx * J[sel] - x0
            ay = hy * I[sel] + vy * J[sel] - y0
            lx, ly, lc = self._arrays[t]
            X = ax[:, None] + lx[None, :]
            Y = ay[:, None] + ly[None, :]
            ok = (X >= 0) & (X < w) & (Y >= 0) & (Y < h)
            idx_parts.append((Y * w + X)[ok])
            code_parts.append(np.broadcast_to(lc, X.shape)[ok])
        canvas = np.zeros(w * h, dtype=np.uint32)
        if not idx_parts:
            return canvas.reshape(h, w)
        idx = np.concatenate(idx_parts)
        codes = np.concatenate(code_parts)
        order = np.argsort(idx, kind="stable")
        idx, codes = idx[order], codes[order]
        clash = (idx[1:] == idx[:-1]) & (codes[1:] != codes[:-1])
        if clash.any():
            k = int(np.argmax(clash))
            cell = (x0 + int(idx[k] % w), y0 + int(idx[k] // w))
            raise ConflictError(cell, chr(codes[k]), chr(codes[k + 1]))
        canvas[idx] = codes
        return canvas.reshape(h, w)


def _tile_occurrences(w: int, h: int, bw: int, bh: int, S: int, T: int) -> dict[str, tuple[Coord, ...]]:
    out = {}
    for name in TILE_NAMES:
        col_shift = name in ("beta", "gamma")
        row_shift = name in ("delta", "gamma")
        occ = []
        for t in range(4):
            for s in range(4):
                x = s * w + (bw if row_shift and t >= T else 0)
                y = t * h + (bh if col_shift and s >= S else 0)
                occ.append((x, y))
        out[name] = tuple(occ)
    return out


LAYOUTS = ((2, 2), (1, 1), (3, 3), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))


def _make_tileset(q: Block, r: Block, border, layout) -> TileSet:
    flipped = border.corner_pair == BL_TR
    qn = q.flip_vertical() if flipped else q
    b = border.border
    occs = _tile_occurrences(q.width, q.height, b.width, b.height, *layout)
    tiles = {}
    for name, anchors in occs.items():
        pp = PartialPicture()
        for ax, ay in anchors:
            pp = superpose(pp, PartialPicture.from_block(qn, ax, ay))
        tiles[name] = pp
    ts = TileSet(q, r, b, border.corner_pair, tuple(layout), occs, tiles)
    ts._prepare()
    return ts


def validate_tileset(ts: TileSet) -> list[str]:
    """Machine check of every tile invariant; returns the violated ones."""
    problems = []
    q = ts.native_q
    w, h = q.width, q.height
    bw, bh = ts.b.width, ts.b.height
    for name in TILE_NAMES:
        occ = ts.occurrence_lists[name]
        tile = ts.tiles[name]
        for ax, ay in occ:
            for yy in range(h):
                for xx in range(w):
                    if tile.get((ax + xx, ay + yy)) != chr(q.cells[yy, xx]):
                        problems.append(f"{name}: occurrence at {(ax, ay)} does not read q")
                        break
        for (x1, y1), (x2, y2) in itertools.combinations(occ, 2):
            if abs(x1 - x2) >= w or abs(y1 - y2) >= h:
                continue
            d = (x2 - x1, y2 - y1)
            if d not in ((w - bw, -(h - bh)), (-(w - bw), h - bh)):
                problems.append(f"{name}: occurrences {(x1, y1)} and {(x2, y2)} overlap off a border corner")
        if len(tile) > 16 * w * h:
            problems.append(f"{name}: {len(tile)} cells exceeds 16|q|")

    hx, hy = ts.h_step
    vx, vy = ts.v_step
    rows = (("alpha", "beta"), ("delta", "gamma"))
    cols = (("alpha", "delta"), ("beta", "gamma"))
    for cls in rows:
        for a, b in itertools.product(cls, repeat=2):
            try:
                superpose(ts.tiles[a], ts.tiles[b].shifted(hx, hy))
            except ConflictError as e:
                problems.append(f"horizontal fit {a}-{b}: {e}")
    for cls in cols:
        for a, b in itertools.product(cls, repeat=2):
            try:
                superpose(ts.tiles[a], ts.tiles[b].shifted(vx, vy))
            except ConflictError as e:
                problems.append(f"vertical fit {a} under {b}: {e}")
    for a, b in itertools.combinations(TILE_NAMES, 2):
        try:
            superpose(ts.tiles[a], ts.tiles[b])
        except ConflictError:
            continue
        problems.append(f"cannot-overlap: {a} and {b} agree at coinciding anchors")

    # every local neighbourhood of a suitable picture assembles without clash or hole
    I, J = np.meshgrid(np.arange(-1, 2), np.arange(-1, 2))
    I, J = I.ravel(), J.ravel()
    bx0, by0, bw_, bh_ = 0, 0, hx + vx, vy + hy
    for xbits in itertools.product((0, 1), repeat=3):
        for ybits in itertools.product((0, 1), repeat=3):
            T = np.array(xbits)[I + 1] + 2 * np.array(ybits)[J + 1]
            try:
                canvas = ts.stamp(I, J, T, bx0, by0, bw_, bh_)
            except ConflictError as e:
                problems.append(f"assembly clash for X={xbits} Y={ybits}: {e}")
                continue
            if (canvas == 0).any():
                problems.append(f"assembly hole for X={xbits} Y={ybits}")
    return problems


@lru_cache(maxsize=64)
def build_tiles(q: Block) -> TileSet:
    """Build and validate the four tiles for ``q``.

    ``b`` is a minimal-area diagonal border of the primitive root of ``q``
    (ties by smaller width, then height, then TL-BR first).  Seam positions are
    searched until every invariant checked by ``validate_tileset`` holds.
    """
    if q.is_empty() or not admits_aperiodic_2d(q):
        raise PreconditionError("admits_aperiodic_2d", "primitive root of q has no non-empty diagonal border")
    r = primitive_root_2d(q)
    cands = sorted(
        diagonal_borders(r),
        key=lambda bi: (bi.border.area, bi.border.width, bi.border.height, bi.corner_pair != TL_BR),
    )
    last = []
    for border in cands:
        for layout in LAYOUTS:
            ts = _make_tileset(q, r, border, layout)
            last = validate_tileset(ts)
            if not last:
                return ts
    raise TileConstructionError("no tile layout passed validation: " + "; ".join(last[:5]))


def compositional_anchor(ts: TileSet, i: int, j: int) -> Coord:
    """Anchor of tile ``(i, j)`` obtained by applying the concatenation shifts one at a time."""
    x = y = 0
    hx, hy = ts.h_step
    vx, vy = ts.v_step
    step = 1 if i >= 0 else -1
    for _ in range(abs(i)):
        x, y = x + step * hx, y + step * hy
    step = 1 if j >= 0 else -1
    for _ in range(abs(j)):
        x, y = x + step * vx, y + step * vy
    return (x, y)


def mu_of_word(ts: TileSet, word: Sequence[Sequence[int]]) -> PartialPicture:
    """``mu`` of a finite suitable word given bottom row first, letters 0..3.

    Built with the two concatenation rules: a row is its first tile united
    with the shifted image of the rest; a stack of rows is its bottom row
    united with the shifted image of the rows above.
    """
    hx, hy = ts.h_step
    vx, vy = ts.v_step

    def row_image(row):
        if not row:
            return PartialPicture()
        return superpose(ts.tiles[TILE_NAMES[row[0]]], row_image(row[1:]).shifted(hx, hy))

    def stack_image(rows):
        if not rows:
            return PartialPicture()
        return superpose(row_image(list(rows[0])), stack_image(rows[1:]).shifted(vx, vy))

    return stack_image(list(word))


def weakly_convex(pp: PartialPicture) -> bool:
    """No holes along any row or column of the domain."""
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for (x, y), _ in pp:
        rows.setdefault(y, []).append(x)
        cols.setdefault(x, []).append(y)
    for line in itertools.chain(rows.values(), cols.values()):
        if max(line) - min(line) + 1 != len(line):
            return False
    return True


def mu(ts: TileSet, spec: SuitableSpec, descriptor: dict | None = None, period: Coord | None = None) -> LazyPicture:
    """The picture ``mu(w)`` for the suitable picture described by ``spec``."""
    flipped = ts.flipped

    def native(x0, y0, w, h):
        ir, jr = ts.index_range(x0, y0, w, h)
        I, J = np.meshgrid(np.array(ir), np.array(jr))
        I, J = I.ravel(), J.ravel()
        canvas = ts.stamp(I, J, spec.types(I, J), x0, y0, w, h)
        if (canvas == 0).any():
            ys, xs = np.nonzero(canvas == 0)
            raise RuntimeError(f"mu assembly left a hole at {(x0 + int(xs[0]), y0 + int(ys[0]))}")
        return canvas

    def fill(x0, y0, w, h):
        if flipped:
            return native(x0, -y0 - h, w, h)[::-1].copy()
        return native(x0, y0, w, h)

    desc = descriptor or {"kind": "mu", "q": ts.q.rows(), "spec": spec.to_json()}
    return LazyPicture(fill, Alphabet.of(ts.q.letters()), desc, period=period, hints={"tileset": ts, "spec": spec})


def mu_window(ts: TileSet, spec: SuitableSpec, win: Window) -> Block:
    return evaluate(mu(ts, spec), win)


def gen_aperiodic(q: Block) -> LazyPicture:
    ts = build_tiles(q)
    return mu(ts, SuitableSpec(sq.tm(), sq.tm()), {"kind": "mu_aperiodic", "q": q.rows()})


def gen_non_ur(q: Block) -> LazyPicture:
    """``mu`` of the suitable picture with a4 at the origin, a2 / a3 on the axes, a1 elsewhere."""
    ts = build_tiles(q)
    d0 = sq.indicator_at_zero()
    return mu(ts, SuitableSpec(d0, d0), {"kind": "non_ur", "q": q.rows()})


def _column_period(ts: TileSet) -> Coord:
    vx, vy = ts.v_step
    return (vx, -vy) if ts.flipped else (vx, vy)


def gen_non_freq(q: Block, driver: sq.Seq | None = None) -> LazyPicture:
    """``mu`` of ``w'[i, j] = a_{t[i]}`` for a driver ``t`` without frequencies.

    The default driver makes the density of alpha-to-beta boundaries
    oscillate, which is what the assembled picture can see.
    """
    ts = build_tiles(q)
    X = driver or sq.transition_free_bits()
    return mu(
        ts,
        SuitableSpec(X, sq.zeros()),
        {"kind": "non_freq", "q": q.rows(), "driver": X.to_json()},
        period=_column_period(ts),
    )


def tile_power_candidates(ts: TileSet, n: int, limit: int = 12) -> list[Block]:
    """Blocks ``q^(k x l)`` read off the all-alpha assembly at each grid occurrence of an alpha tile.

    Used as cover candidates by the multi-scale search, smallest first.
    """
    q = ts.q
    w, h = q.width, q.height
    pa = mu(ts, SuitableSpec(sq.zeros(), sq.zeros()))
    dims = sorted(
        ((k * w, l * h) for k in range(1, 9) for l in range(1, 9) if k * w >= n and l * h >= n),
        key=lambda d: (d[0] * d[1], d),
    )[:limit]
    if not dims:
        return []
    big = Window(0, 0, 4 * w + max(a for a, _ in dims), 4 * h + max(b for _, b in dims))
    cells = evaluate(pa, native_window(ts, big))
    if ts.flipped:
        cells = cells.flip_vertical()  # back to native rows
    out, seen = [], set()
    for a, b in dims:
        for s_ in range(4):
            for t_ in range(4):
                blk = cells.sub(s_ * w, t_ * h, a, b)
                if ts.flipped:
                    blk = blk.flip_vertical()
                if blk not in seen:
                    seen.add(blk)
                    out.append(blk)
    return out


def tile_bbox(ts: TileSet, i: int, j: int, tile: str) -> Window:
    return ts.placement(i, j, tile).bbox()


def defect_block(q: Block, pad_tiles: int = 1) -> tuple[Block, Window]:
    """Content of gamma's placement at the origin of ``gen_non_ur(q)``, padded by whole tiles."""
    ts = build_tiles(q)
    bb = tile_bbox(ts, 0, 0, "gamma")
    win = bb.grow(pad_tiles * 4 * q.width, pad_tiles * 4 * q.height)
    return evaluate(gen_non_ur(q), win), win


def native_window(ts: TileSet, win: Window) -> Window:
    """Convert between the native tile frame and picture coordinates (an involution)."""
    if not ts.flipped:
        return win
    return Window(win.x0, -win.y0 - win.height, win.width, win.height)


@lru_cache(maxsize=64)
def transition_marker(q: Block) -> Block:
    """A block read across an alpha-to-beta column boundary.

    Runs of beta columns are translates of the all-alpha assembly, so only
    boundaries between runs can be told apart.  The marker starts ``pad``
    columns left of a beta tile and spans it; ``pad`` grows until the block
    is absent from both the all-alpha and the all-beta assembly.
    """
    ts = build_tiles(q)
    w4, h4 = 4 * q.width, 4 * q.height
    one = mu(ts, SuitableSpec(sq.indicator_at_zero(), sq.zeros()))
    pure = [mu(ts, SuitableSpec(sq.zeros(), sq.zeros())), mu(ts, SuitableSpec(sq.ones(), sq.zeros()))]
    bb = ts.tiles["beta"].bbox()
    for pad in range(1, w4 + 1):
        nat = Window(bb.x0 - pad, bb.y0, bb.width + pad, bb.height)
        marker = evaluate(one, native_window(ts, nat))
        span = Window(-3 * w4, -3 * h4, 6 * w4 + marker.width, 6 * h4 + marker.height)
        if all(not _match_mask(marker.cells, evaluate(p, span).cells).any() for p in pure):
            return marker
    raise TileConstructionError("alpha-to-beta boundaries are not locally recognisable")


# ---------------------------------------------------------------------------
# random coverings


def random_coverable_picture(q: Block, seed: int, mode: str | None = None, abut_probability: float = 0.5) -> LazyPicture:
    """Seeded covering of the plane by ``q``.

    ``rows``: horizontal strips of abutting occurrences, each strip slid by a
    seeded offset (an offset of 0 is an abutting choice).  ``columns``: the
    transposed process.  ``tiles``: the four-tile assembly over seeded random
    row and column types, available when ``q`` admits aperiodic coverings.
    """
    modes = ["rows", "columns"]
    if admits_aperiodic_2d(q):
        modes.append("tiles")
    if mode is None:
        mode = modes[int(sq.hash_coords(seed, np.array(7)) % np.uint64(len(modes)))]
    if mode not in modes:
        raise PreconditionError("admits_aperiodic_2d", f"mode {mode!r} unavailable for this cover")
    desc = {"kind": "random_coverable", "q": q.rows(), "seed": seed, "mode": mode, "abut_probability": abut_probability}
    if mode == "tiles":
        ts = build_tiles(q)
        return mu(ts, SuitableSpec(sq.random_bits(seed), sq.random_bits(seed + 1)), desc)
    c = q.cells
    w, h = q.width, q.height
    threshold = int(round(abut_probability * 1000))

    def shifts(idx: np.ndarray, modulus: int) -> np.ndarray:
        hv = sq.hash_coords(seed, idx)
        abut = (hv % np.uint64(1000)).astype(np.int64) < threshold
        if modulus <= 1:
            return np.zeros(idx.shape, dtype=np.int64)
        off = 1 + ((hv >> np.uint64(20)) % np.uint64(modulus - 1)).astype(np.int64)
        return np.where(abut, 0, off)

    def fill(x0, y0, ww, hh):
        xs = np.arange(x0, x0 + ww)
        ys = np.arange(y0, y0 + hh)
        if mode == "rows":
            s = shifts(ys // h, w)
            return c[(ys % h)[:, None], (xs[None, :] - s[:, None]) % w]
        s = shifts(xs // w, h)
        return c[(ys[:, None] - s[None, :]) % h, (xs % w)[None, :]]

    def trace(win: Window) -> dict:
        if mode == "rows":
            idx = np.arange(win.y0 // h, (win.y0 + win.height - 1) // h + 1)
            return {"mode": mode, "shifts": {int(k): int(v) for k, v in zip(idx, shifts(idx, w))}}
        idx = np.arange(win.x0 // w, (win.x0 + win.width - 1) // w + 1)
        return {"mode": mode, "shifts": {int(k): int(v) for k, v in zip(idx, shifts(idx, h))}}

    return LazyPicture(fill, Alphabet.of(q.letters()), desc, hints={"trace": trace})


def gen_random_coverable(q: Block, win: Window, seed: int, mode: str | None = None, abut_probability: float = 0.5) -> tuple[Block, dict]:
    """Window of a seeded random covering, with the choices that produced it."""
    p = random_coverable_picture(q, seed, mode, abut_probability)
    block = evaluate(p, win)
    if "trace" in p.hints:
        tr = p.hints["trace"](win)
    else:
        ts = p.hints["tileset"]
        ir, jr = ts.index_range(win.x0, -win.y0 - win.height if ts.flipped else win.y0, win.width, win.height)
        spec = p.hints["spec"]
        tr = {
            "mode": "tiles",
            "X": {i: int(v) for i, v in zip(ir, spec.X(np.array(ir)))},
            "Y": {j: int(v) for j, v in zip(jr, spec.Y(np.array(jr)))},
        }
    return block, tr

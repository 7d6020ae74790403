"""Grid data model: blocks, partial pictures, lazy infinite pictures.

Coordinates follow the usual mathematical convention: ``x`` grows to the
right, ``y`` grows upward and a block's origin ``(0, 0)`` is its bottom-left
cell.  Blocks store their letters as unicode code points in a ``(height,
width)`` numpy array indexed ``[y, x]``; text renders emit the top row first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

MAX_ALPHABET = 90

Coord = tuple[int, int]


class ConflictError(ValueError):
    """Two partial pictures disagree on a shared cell."""

    def __init__(self, coord: Coord, first: str, second: str):
        super().__init__(f"conflict at {coord}: {first!r} vs {second!r}")
        self.coord = coord
        self.letters = (first, second)


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")
        for c in self.letters:
            if len(c) != 1 or not c.isprintable() or c.isspace():
                raise ValueError(f"letter {c!r} is not a single printable character")
        if len(self.letters) > MAX_ALPHABET:
            raise ValueError(f"alphabets above {MAX_ALPHABET} letters are not supported")

    @classmethod
    def of(cls, letters: Iterable[str]) -> Alphabet:
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, c: object) -> bool:
        return c in self.letters

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)


def _as_codes(rows_bottom_up: Sequence[str]) -> np.ndarray:
    if not rows_bottom_up:
        return np.zeros((0, 0), dtype=np.uint32)
    width = len(rows_bottom_up[0])
    if any(len(r) != width for r in rows_bottom_up):
        raise ValueError("rows of a block must have equal length")
    if width == 0:
        return np.zeros((0, 0), dtype=np.uint32)
    return np.array([[ord(c) for c in r] for r in rows_bottom_up], dtype=np.uint32)


class Block:
    """Finite rectangular picture.

    ``Block.from_rows(["bba", "bbb", "abb"])`` takes rows top to bottom, the
    way a matrix is displayed.  ``Block.from_word("aba")`` builds a one-row
    block.  Blocks are immutable and hashable.
    """

    __slots__ = ("_cells", "_hash")

    def __init__(self, cells: np.ndarray):
        arr = np.array(cells, dtype=np.uint32, copy=True)
        if arr.ndim != 2:
            raise ValueError("block cells must be two-dimensional")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            arr = np.zeros((0, 0), dtype=np.uint32)
        arr.setflags(write=False)
        self._cells = arr
        self._hash = None

    @classmethod
    def from_rows(cls, rows_top_down: Sequence[str]) -> Block:
        return cls(_as_codes(list(reversed(list(rows_top_down)))))

    @classmethod
    def from_word(cls, word: str) -> Block:
        return cls(_as_codes([word]) if word else np.zeros((0, 0), dtype=np.uint32))

    @classmethod
    def empty(cls) -> Block:
        return cls(np.zeros((0, 0), dtype=np.uint32))

    @classmethod
    def filled(cls, letter: str, width: int, height: int) -> Block:
        return cls(np.full((height, width), ord(letter), dtype=np.uint32))

    @property
    def cells(self) -> np.ndarray:
        """Read-only ``(height, width)`` array of code points, indexed ``[y, x]``."""
        return self._cells

    @property
    def width(self) -> int:
        return self._cells.shape[1]

    @property
    def height(self) -> int:
        return self._cells.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def area(self) -> int:
        return self.width * self.height

    def is_empty(self) -> bool:
        return self.area == 0

    def __getitem__(self, xy: Coord) -> str:
        x, y = xy
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(xy)
        return chr(self._cells[y, x])

    def sub(self, x: int, y: int, width: int, height: int) -> Block:
        if x < 0 or y < 0 or x + width > self.width or y + height > self.height:
            raise IndexError("sub-block outside the block")
        return Block(self._cells[y : y + height, x : x + width])

    def letters(self) -> tuple[str, ...]:
        return tuple(chr(c) for c in np.unique(self._cells))

    def rows(self) -> list[str]:
        """Rows top to bottom."""
        return ["".join(map(chr, row)) for row in self._cells[::-1]]

    def word(self) -> str:
        if self.height != 1:
            raise ValueError("only one-row blocks are words")
        return self.rows()[0]

    def flip_vertical(self) -> Block:
        return Block(self._cells[::-1])

    def render(self) -> str:
        return "\n".join(self.rows())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Block):
            return NotImplemented
        return self._cells.shape == other._cells.shape and bool(
            np.array_equal(self._cells, other._cells)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._cells.shape, self._cells.tobytes()))
        return self._hash

    def __lt__(self, other: Block) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.area, self.width, self.rows())

    def __repr__(self) -> str:
        if self.is_empty():
            return "Block.empty()"
        return f"Block.from_rows({self.rows()!r})"


@dataclass(frozen=True)
class Window:
    x0: int
    y0: int
    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("window dimensions must be at least 1")

    @classmethod
    def centered(cls, n: int) -> Window:
        """The square from ``(-n, -n)`` to ``(n, n)``."""
        return cls(-n, -n, 2 * n + 1, 2 * n + 1)

    @classmethod
    def parse(cls, text: str) -> Window:
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("window must be x0,y0,w,h")
        return cls(*parts)

    def grow(self, dx: int, dy: int) -> Window:
        return Window(self.x0 - dx, self.y0 - dy, self.width + 2 * dx, self.height + 2 * dy)

    def shrink(self, dx: int, dy: int) -> Window:
        return Window(self.x0 + dx, self.y0 + dy, self.width - 2 * dx, self.height - 2 * dy)

    def contains(self, x: int, y: int) -> bool:
        return self.x0 <= x < self.x0 + self.width and self.y0 <= y < self.y0 + self.height

    def as_list(self) -> list[int]:
        return [self.x0, self.y0, self.width, self.height]


FillFn = Callable[[int, int, int, int], np.ndarray]


@dataclass(frozen=True)
class LazyPicture:
    """Rule-defined infinite picture.

    ``fill(x0, y0, width, height)`` returns the code-point array of the
    window; it must be deterministic and re-entrant.  ``period`` optionally
    records a known periodicity vector (used by measurements as a fast path).
    """

    fill: FillFn = field(repr=False, compare=False)
    alphabet: Alphabet
    descriptor: Mapping = field(default_factory=dict, compare=False)
    period: Coord | None = None
    hints: Mapping = field(default_factory=dict, compare=False, repr=False)

    def window(self, win: Window) -> Block:
        return evaluate(self, win)

    def __call__(self, x: int, y: int) -> str:
        return chr(int(self.fill(x, y, 1, 1)[0, 0]))


def evaluate(p: LazyPicture, win: Window) -> Block:
    cells = p.fill(win.x0, win.y0, win.width, win.height)
    if cells.shape != (win.height, win.width):
        raise RuntimeError(f"picture rule returned shape {cells.shape} for {win}")
    return Block(cells)


def constant_picture(letter: str) -> LazyPicture:
    code = ord(letter)

    def fill(x0, y0, w, h):
        return np.full((h, w), code, dtype=np.uint32)

    return LazyPicture(fill, Alphabet((letter,)), {"kind": "constant", "letter": letter})


def _match_mask(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Boolean ``[y, x]`` mask of anchors where ``u`` matches inside ``v``."""
    uh, uw = u.shape
    vh, vw = v.shape
    oh, ow = vh - uh + 1, vw - uw + 1
    if oh <= 0 or ow <= 0:
        return np.zeros((max(oh, 0), max(ow, 0)), dtype=bool)
    mask = np.ones((oh, ow), dtype=bool)
    # rarest letters first prunes fastest
    letters, counts = np.unique(u, return_counts=True)
    rank = {int(c): i for i, c in enumerate(letters[np.argsort(counts, kind="stable")])}
    order = sorted(((dy, dx) for dy in range(uh) for dx in range(uw)), key=lambda d: rank[int(u[d])])
    positions = None
    for step, (dy, dx) in enumerate(order):
        if positions is None:
            mask &= v[dy : dy + oh, dx : dx + ow] == u[dy, dx]
            if step >= 3 and step % 4 == 3:
                ys, xs = np.nonzero(mask)
                if len(ys) * 8 < oh * ow:
                    positions = (ys, xs)
                    if len(ys) == 0:
                        break
        else:
            ys, xs = positions
            keep = v[ys + dy, xs + dx] == u[dy, dx]
            positions = (ys[keep], xs[keep])
            if len(positions[0]) == 0:
                break
    if positions is not None:
        mask = np.zeros((oh, ow), dtype=bool)
        mask[positions] = True
    return mask


def occurrences(u: Block, v: Block) -> list[Coord]:
    """Anchors of complete occurrences of ``u`` in ``v``, lexicographic in ``(x, y)``."""
    if u.is_empty():
        raise ValueError("occurrences of the empty block are not defined")
    mask = _match_mask(u.cells, v.cells)
    xs, ys = np.nonzero(mask.T)  # transpose so nonzero iterates x-major
    return [(int(x), int(y)) for x, y in zip(xs, ys)]


@dataclass(frozen=True)
class Placed:
    """A block positioned at ``(x, y)``."""

    block: Block
    x: int = 0
    y: int = 0


def occurrences_in_union(u: Block, parts: Sequence[Placed]) -> int:
    """Number of complete occurrences of ``u`` in a union of disjoint placed blocks."""
    if u.is_empty():
        raise ValueError("occurrences of the empty block are not defined")
    parts = [p for p in parts if not p.block.is_empty()]
    if not parts:
        return 0
    x0 = min(p.x for p in parts)
    y0 = min(p.y for p in parts)
    x1 = max(p.x + p.block.width for p in parts)
    y1 = max(p.y + p.block.height for p in parts)
    canvas = np.zeros((y1 - y0, x1 - x0), dtype=np.uint32)  # 0 marks "outside"
    owned = np.zeros(canvas.shape, dtype=bool)
    for p in parts:
        sl = (slice(p.y - y0, p.y - y0 + p.block.height), slice(p.x - x0, p.x - x0 + p.block.width))
        if owned[sl].any():
            raise ValueError("parts of a union must be pairwise disjoint")
        owned[sl] = True
        canvas[sl] = p.block.cells
    return int(_match_mask(u.cells, canvas).sum())


class PartialPicture:
    """Finite partial map from integer coordinates to letters."""

    __slots__ = ("_cells",)

    def __init__(self, assignments: Mapping[Coord, str] | None = None):
        self._cells: dict[Coord, str] = dict(assignments or {})

    @classmethod
    def from_block(cls, b: Block, x: int = 0, y: int = 0) -> PartialPicture:
        out = {}
        for yy in range(b.height):
            for xx in range(b.width):
                out[(x + xx, y + yy)] = chr(b.cells[yy, xx])
        return cls(out)

    @property
    def assignments(self) -> dict[Coord, str]:
        return dict(self._cells)

    def domain(self) -> frozenset[Coord]:
        return frozenset(self._cells)

    def get(self, xy: Coord) -> str | None:
        return self._cells.get(xy)

    def shifted(self, dx: int, dy: int) -> PartialPicture:
        return PartialPicture({(x + dx, y + dy): c for (x, y), c in self._cells.items()})

    def bbox(self) -> Window:
        xs = [x for x, _ in self._cells]
        ys = [y for _, y in self._cells]
        return Window(min(xs), min(ys), max(xs) - min(xs) + 1, max(ys) - min(ys) + 1)

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PartialPicture) and self._cells == other._cells

    def __repr__(self) -> str:
        return f"PartialPicture({len(self._cells)} cells)"


def superpose(w1: PartialPicture, w2: PartialPicture) -> PartialPicture:
    """Union of two partial pictures; shared cells must carry the same letter."""
    out = dict(w1._cells)
    for xy in sorted(w2._cells):
        c = w2._cells[xy]
        prev = out.get(xy)
        if prev is not None and prev != c:
            raise ConflictError(xy, prev, c)
        out[xy] = c
    return PartialPicture(out)


def periodicity_vectors(b: Block, max_norm: int) -> set[Coord]:
    """Vectors ``(k, l)`` with ``|k|, |l| <= max_norm`` under which ``b`` is invariant.

    Only the overlap of the block with its translate is compared; vectors
    with an empty overlap are excluded.
    """
    if b.is_empty():
        raise ValueError("empty block has no periodicity vectors")
    if max_norm < 1:
        raise ValueError("max_norm must be at least 1")
    c = b.cells
    h, w = c.shape
    found = set()
    for k in range(-max_norm, max_norm + 1):
        if abs(k) >= w:
            continue
        for l in range(-max_norm, max_norm + 1):
            if (k, l) == (0, 0) or abs(l) >= h:
                continue
            # b(x, y) vs b(x + k, y + l) over the overlap
            a = c[max(0, -l) : h + min(0, -l), max(0, -k) : w + min(0, -k)]
            s = c[max(0, l) : h + min(0, l), max(0, k) : w + min(0, k)]
            if np.array_equal(a, s):
                found.add((k, l))
    return found


def power(u: Block, n: int, m: int) -> Block:
    """``n`` copies of ``u`` horizontally by ``m`` copies vertically."""
    if n < 1 or m < 1:
        raise ValueError("exponents must be positive")
    if u.is_empty():
        raise ValueError("power of the empty block")
    return Block(np.tile(u.cells, (m, n)))

"""Brute-force reference implementations.

Plain Python over nested lists, written straight from the definitions and
sharing no code with the fast paths.  Grids are lists of rows indexed
``g[y][x]`` with row 0 at the bottom.
"""

from __future__ import annotations

Grid = list


def grid_of(block) -> Grid:
    """Nested-list copy of anything exposing ``rows()`` (top row first)."""
    return [list(r) for r in reversed(block.rows())]


def _dims(g: Grid) -> tuple[int, int]:
    return (len(g[0]) if g else 0, len(g))


def _matches(u: Grid, v: Grid, x: int, y: int) -> bool:
    uw, uh = _dims(u)
    for dy in range(uh):
        for dx in range(uw):
            if v[y + dy][x + dx] != u[dy][dx]:
                return False
    return True


def oracle_occurrences(u: Grid, v: Grid) -> list[tuple[int, int]]:
    uw, uh = _dims(u)
    vw, vh = _dims(v)
    out = []
    for x in range(vw - uw + 1):
        for y in range(vh - uh + 1):
            if _matches(u, v, x, y):
                out.append((x, y))
    return out


def oracle_is_cover(q: Grid, block: Grid, margin: tuple[int, int]) -> bool:
    """Every cell of ``block`` minus ``margin`` lies in some occurrence of ``q`` in ``block``."""
    qw, qh = _dims(q)
    bw, bh = _dims(block)
    mx, my = margin
    marked = [[False] * bw for _ in range(bh)]
    for x, y in oracle_occurrences(q, block):
        for dy in range(qh):
            for dx in range(qw):
                marked[y + dy][x + dx] = True
    return all(marked[y][x] for y in range(my, bh - my) for x in range(mx, bw - mx))


def _sub(g: Grid, x: int, y: int, w: int, h: int) -> Grid:
    return [row[x : x + w] for row in g[y : y + h]]


def _tile(r: Grid, n: int, m: int) -> Grid:
    return [row * n for row in r] * m


def oracle_primitive_root(q: Grid) -> Grid:
    """Smallest-area corner sub-block whose tiling reproduces ``q``."""
    w, h = _dims(q)
    best = None
    for rh in range(1, h + 1):
        if h % rh:
            continue
        for rw in range(1, w + 1):
            if w % rw:
                continue
            r = _sub(q, 0, 0, rw, rh)
            if _tile(r, w // rw, h // rh) == q and (best is None or rw * rh < len(best[0]) * len(best)):
                best = r
    return best


def oracle_periodic(block: Grid, max_norm: int) -> set[tuple[int, int]]:
    w, h = _dims(block)
    out = set()
    for k in range(-max_norm, max_norm + 1):
        for l in range(-max_norm, max_norm + 1):
            if (k, l) == (0, 0):
                continue
            overlap = False
            ok = True
            for y in range(h):
                for x in range(w):
                    if 0 <= x + k < w and 0 <= y + l < h:
                        overlap = True
                        if block[y][x] != block[y + l][x + k]:
                            ok = False
                            break
                if not ok:
                    break
            if ok and overlap:
                out.add((k, l))
    return out


def oracle_complexity(block: Grid, n: int, m: int) -> int:
    w, h = _dims(block)
    seen = []
    for x in range(w - n + 1):
        for y in range(h - m + 1):
            s = _sub(block, x, y, n, m)
            if s not in seen:
                seen.append(s)
    return len(seen)


def oracle_covers_finite(q: Grid, v: Grid) -> bool:
    return oracle_is_cover(q, v, (0, 0)) and bool(oracle_occurrences(q, v))


def oracle_enumerate_covers(v: Grid) -> list[Grid]:
    """Every proper corner block whose occurrences inside ``v`` cover ``v``."""
    w, h = _dims(v)
    out = []
    for ch in range(1, h + 1):
        for cw in range(1, w + 1):
            if (cw, ch) == (w, h):
                continue
            cand = _sub(v, 0, 0, cw, ch)
            if oracle_covers_finite(cand, v):
                out.append(cand)
    return out


def oracle_borders(q: Grid) -> set[tuple[int, int, str]]:
    """``(width, height, pair)`` of every border, pairs ``BL-TR`` / ``TL-BR``."""
    w, h = _dims(q)
    out = set()
    for bh in range(1, h + 1):
        for bw in range(1, w + 1):
            if (bw, bh) == (w, h):
                continue
            if _sub(q, 0, 0, bw, bh) == _sub(q, w - bw, h - bh, bw, bh):
                out.add((bw, bh, "BL-TR"))
            if _sub(q, 0, h - bh, bw, bh) == _sub(q, w - bw, 0, bw, bh):
                out.add((bw, bh, "TL-BR"))
    return out


def oracle_toroidal_count(q: Grid, u: Grid) -> int:
    """Occurrences of ``u`` anchored in one period of the ``q``-periodic picture."""
    qw, qh = _dims(q)
    uw, uh = _dims(u)
    n = 0
    for x in range(qw):
        for y in range(qh):
            if all(q[(y + dy) % qh][(x + dx) % qw] == u[dy][dx] for dy in range(uh) for dx in range(uw)):
                n += 1
    return n


def oracle_smallest_period(word: str) -> int:
    for p in range(1, len(word) + 1):
        if all(word[i] == word[i + p] for i in range(len(word) - p)):
            return p
    return len(word)

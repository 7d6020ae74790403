"""Command-line front end.

Grid files hold a header line ``alphabet: <letters>`` followed by the rows
of the block, top row first.  Generator specs are JSON objects with a
``kind`` and its parameters.  Reports are JSON with the top-level keys
``tool_version``, ``input``, ``window`` and ``results``.

Exit codes: 0 ok, 2 input error, 3 precondition failure, 4 insufficient
data, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from . import analysis as an
from . import construct as cs
from . import oracle as orc
from . import sequences as sq
from .core import Alphabet, Block, ConflictError, LazyPicture, Window, constant_picture, evaluate
from .covers import (
    CoverCertificate,
    admits_aperiodic_2d,
    border_free_corner,
    borders,
    enumerate_covers,
    is_cover,
    primitive_root_2d,
    verify_certificate,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INSUFFICIENT, EXIT_VERIFY = 0, 2, 3, 4, 5

# letters are coloured in alphabet order, cycling through this list
PALETTE = (
    (255, 255, 255),
    (0, 0, 0),
    (230, 25, 75),
    (60, 180, 75),
    (0, 130, 200),
    (255, 225, 25),
    (145, 30, 180),
    (245, 130, 48),
    (70, 240, 240),
    (128, 128, 128),
)


class InputError(ValueError):
    pass


class GridParseError(InputError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# grid files


def parse_grid(text: str) -> tuple[Alphabet, Block]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GridParseError(1, 1, "empty file")
    head = lines[0]
    if not head.startswith("alphabet:"):
        raise GridParseError(1, 1, "expected header 'alphabet: <letters>'")
    letters = head[len("alphabet:") :].strip()
    try:
        alphabet = Alphabet.of(letters)
    except ValueError as e:
        raise GridParseError(1, len("alphabet:") + 2, str(e)) from None
    rows = lines[1:]
    if not rows:
        raise GridParseError(2, 1, "empty block")
    width = len(rows[0])
    if width == 0:
        raise GridParseError(2, 1, "empty block")
    for i, row in enumerate(rows):
        if len(row) != width:
            raise GridParseError(i + 2, min(len(row), width) + 1, f"row has length {len(row)}, expected {width}")
        for j, c in enumerate(row):
            if c not in alphabet:
                raise GridParseError(i + 2, j + 1, f"letter {c!r} not in alphabet")
    return alphabet, Block.from_rows(rows)


def format_grid(block: Block, alphabet: Alphabet | None = None) -> str:
    letters = "".join(alphabet) if alphabet is not None else "".join(block.letters())
    return "alphabet: " + letters + "\n" + "\n".join(block.rows()) + "\n"


def read_grid(path: str) -> tuple[Alphabet, Block]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return parse_grid(text)


def format_pixmap(block: Block, alphabet: Alphabet) -> str:
    index = {c: i for i, c in enumerate(alphabet)}
    out = ["P3", f"{block.width} {block.height}", "255"]
    for row in block.rows():
        out.append(" ".join("%d %d %d" % PALETTE[index[c] % len(PALETTE)] for c in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# generator specs

KINDS = ("periodic", "nu", "mu_aperiodic", "non_ur", "non_freq", "msc_line", "random_coverable", "random", "constant")


def _spec_q(spec: dict) -> Block:
    if "q" not in spec:
        raise InputError(f"kind {spec['kind']!r} needs a 'q'")
    q = spec["q"]
    if isinstance(q, list):
        if not q or not all(isinstance(r, str) for r in q) or len({len(r) for r in q}) != 1 or not q[0]:
            raise InputError("'q' must be a non-empty list of equal-length rows")
        return Block.from_rows(q)
    if isinstance(q, str):
        return read_grid(q)[1]
    raise InputError("'q' must be a list of rows or a grid file path")


def build_picture(spec: dict, seed: int | None = None) -> LazyPicture:
    """Turn a generator spec into a picture; ``seed`` overrides the spec's own."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}")
    s = seed if seed is not None else spec.get("seed")
    if kind == "periodic":
        return cs.gen_periodic(_spec_q(spec))
    if kind == "mu_aperiodic":
        return cs.gen_aperiodic(_spec_q(spec))
    if kind == "non_ur":
        return cs.gen_non_ur(_spec_q(spec))
    if kind == "non_freq":
        driver = spec.get("driver")
        return cs.gen_non_freq(_spec_q(spec), sq.seq_from_json(driver) if driver else None)
    if kind == "msc_line":
        return cs.gen_msc_line_word()
    if kind == "random_coverable":
        if s is None:
            raise InputError("kind 'random_coverable' needs a 'seed'")
        return cs.random_coverable_picture(_spec_q(spec), int(s), spec.get("mode"), float(spec.get("abut_probability", 0.5)))
    if kind == "random":
        if s is None:
            raise InputError("kind 'random' needs a 'seed'")
        return cs.random_picture(spec.get("letters", "ab"), int(s))
    if kind == "constant":
        letter = spec.get("letter", "a")
        if not isinstance(letter, str) or len(letter) != 1:
            raise InputError("'letter' must be a single character")
        return constant_picture(letter)
    # nu
    src = spec.get("source")
    if src is None:
        raise InputError("kind 'nu' needs a 'source' spec")
    return cs.nu_image(build_picture(src, seed))


def load_spec(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def report(input_desc, window: Window | None, results) -> str:
    doc = {
        "tool_version": __version__,
        "input": input_desc,
        "window": None if window is None else window.as_list(),
        "results": results,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _window(text: str | None, default: Window | None = None) -> Window:
    if text is None:
        if default is None:
            raise InputError("--window x0,y0,w,h is required")
        return default
    try:
        return Window.parse(text)
    except ValueError as e:
        raise InputError(f"bad window {text!r}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    alphabet, q = read_grid(args.block)
    rep = border_free_corner(q)
    results = {
        "size": [q.width, q.height],
        "covers": [c.rows() for c in enumerate_covers(q)],
        "borders": [b.to_json() for b in borders(q)],
        "primitive_root": primitive_root_2d(q).rows(),
        "admits_aperiodic": admits_aperiodic_2d(q),
        "border_free_corner": rep.to_json() | {"entropy_hypothesis": rep.entropy_hypothesis},
    }
    if args.oracle:
        g = orc.grid_of(q)
        results["oracle"] = {
            "covers_agree": sorted(["".join(r) for r in reversed(c)] for c in orc.oracle_enumerate_covers(g))
            == sorted(c.rows() for c in enumerate_covers(q)),
            "root_agrees": orc.oracle_primitive_root(g) == orc.grid_of(primitive_root_2d(q)),
        }
    _emit(report({"block": args.block}, None, results), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = load_spec(args.spec)
    win = _window(args.window)
    p = build_picture(spec, args.seed)
    block = evaluate(p, win)
    text = format_pixmap(block, p.alphabet) if args.format == "pixmap" else format_grid(block, p.alphabet)
    _emit(text, args.out)
    return EXIT_OK


def _u_block(args) -> Block:
    if args.u_file:
        return read_grid(args.u_file)[1]
    if args.u:
        return Block.from_rows(args.u.split("/"))
    raise InputError("frequency needs --u ROWS (rows joined by '/') or --u-file")


def cmd_measure(args) -> int:
    spec = load_spec(args.spec)
    p = build_picture(spec, args.seed)
    which = args.which
    win = None if which == "frequency" else _window(args.window)
    if which == "complexity":
        n = args.n or 3
        m = args.m or n
        e = an.block_complexity(p, win, n, m)
        res = {"n": n, "m": m, "count": e.count, "anchors": e.anchors}
        if args.oracle:
            if win.width * win.height > 64 * 64:
                raise an.InsufficientDataError("oracle comparison limited to windows up to 64x64")
            res["oracle_count"] = orc.oracle_complexity(orc.grid_of(evaluate(p, win)), n, m)
            res["oracle_agrees"] = res["oracle_count"] == e.count
    elif which == "entropy":
        res = an.entropy_profile(p, win, args.n_max or 8).to_json()
    elif which == "frequency":
        u = _u_block(args)
        ns = [int(x) for x in args.n_list.split(",")] if args.n_list else list(range(10, 61, 10))
        res = an.frequency_profile(p, u, ns).to_json()
        win = Window.centered(max(ns))
    elif which == "recurrence":
        res = an.recurrence_radius(p, win, args.k or 2, args.l_max).to_json()
    elif which == "msc":
        res = an.multiscale_profile(p, win, args.n_max or 8).to_json()
    elif which == "strong-msc":
        res = an.strong_msc_check(p, win, args.block_size_max or 3, args.n_max or 8).to_json()
    else:  # bound-check
        if not args.q:
            raise InputError("bound-check needs --q ROWS")
        q = Block.from_rows(args.q.split("/"))
        res = an.count_bound_check(p, win, q, args.n or max(q.width, q.height)).to_json()
    _emit(report({"spec": spec, "which": which}, win, res), args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    spec = load_spec(args.spec)
    if args.seed is not None:
        spec = dict(spec, seed=args.seed)
    p = build_picture(spec)
    q = Block.from_rows(args.q.split("/")) if args.q else _spec_q(spec)
    win = _window(args.window)
    if args.walk:
        walk = an.frontier_extract(p, q, (win.x0, win.y0), min(win.width, win.height))
        doc = {"type": "frontier", "spec": spec, "origin": [win.x0, win.y0], "walk": walk.to_json()}
    else:
        cert = is_cover(q, p, win)
        if not cert:
            sys.stderr.write(f"not a cover: cell {list(cert.cell)} uncovered\n")
            return EXIT_VERIFY
        doc = {"type": "cover", "spec": spec} | cert.to_json()
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = load_spec(args.certificate)
    if not isinstance(doc, dict) or doc.get("type") not in ("cover", "frontier") or "spec" not in doc:
        raise InputError("certificate must carry 'type' (cover | frontier) and 'spec'")
    p = build_picture(doc["spec"])
    if doc["type"] == "cover":
        try:
            cert = CoverCertificate(
                Block.from_rows(doc["q"]),
                Window(*doc["region"]),
                tuple((int(a), int(b)) for a, b in doc["anchors"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed certificate: {e}") from None
        bad = verify_certificate(cert, p)
        result = {"valid": bad is None, "first_failure": None if bad is None else list(bad)}
    else:
        try:
            walk = an.FrontierWalk.from_json(doc["walk"])
            ox, oy = doc["origin"]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed walk: {e}") from None
        try:
            got = an.frontier_reconstruct(walk)
        except an.InconsistentWalkError as e:
            result = {"valid": False, "first_failure": None if e.position is None else list(e.position), "error": str(e)}
        else:
            want = evaluate(p, Window(ox, oy, walk.n, walk.n))
            diff = [(x, y) for y in range(walk.n) for x in range(walk.n) if got[x, y] != want[x, y]]
            first = min(diff) if diff else None
            result = {"valid": not diff, "first_failure": None if first is None else [ox + first[0], oy + first[1]]}
    sys.stdout.write(report({"certificate": args.certificate}, None, result))
    return EXIT_OK if result["valid"] else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coverable", description="Covers of two-dimensional words.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="covers, borders, root and predicates of a block")
    a.add_argument("block")
    a.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="render a window of a generated picture")
    g.add_argument("spec")
    g.add_argument("--window", required=True)
    g.add_argument("--format", choices=("grid", "pixmap"), default="grid")
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("measure", help="run a measurement on a generated picture")
    m.add_argument("spec")
    m.add_argument(
        "--which",
        required=True,
        choices=("complexity", "entropy", "frequency", "recurrence", "msc", "strong-msc", "bound-check"),
    )
    m.add_argument("--window")
    m.add_argument("--n", type=int)
    m.add_argument("--m", type=int)
    m.add_argument("--n-max", type=int)
    m.add_argument("--n-list", help="comma separated radii for frequency")
    m.add_argument("--k", type=int)
    m.add_argument("--l-max", type=int)
    m.add_argument("--block-size-max", type=int)
    m.add_argument("--u", help="block rows, top first, joined by '/'")
    m.add_argument("--u-file")
    m.add_argument("--q", help="cover rows for bound-check, joined by '/'")
    m.add_argument("--seed", type=int)
    m.add_argument("--oracle", action="store_true")
    m.add_argument("--out")
    m.set_defaults(func=cmd_measure)

    c = sub.add_parser("certify", help="write a cover certificate or frontier walk")
    c.add_argument("spec")
    c.add_argument("--window", required=True)
    c.add_argument("--q", help="cover rows joined by '/' (default: the spec's q)")
    c.add_argument("--walk", action="store_true", help="frontier walk of the square at the window origin")
    c.add_argument("--seed", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="replay a certificate or frontier walk")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)
    return ap


def _join_windows(argv: Sequence[str]) -> list[str]:
    # "--window -5,0,10,10" would read the value as an option
    out, it = [], iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_join_windows(argv))
    try:
        return args.func(args)
    except cs.PreconditionError as e:
        sys.stderr.write(f"precondition failed: {e}\n")
        return EXIT_PRECONDITION
    except an.InsufficientDataError as e:
        sys.stderr.write(f"insufficient data: {e}\n")
        return EXIT_INSUFFICIENT
    except an.CoverFailure as e:
        sys.stderr.write(f"verification failed: {e}\n")
        return EXIT_VERIFY
    except (InputError, ConflictError, ValueError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

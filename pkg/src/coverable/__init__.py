"""Covers of two-dimensional words: detection, borders, roots, constructions and measurements."""

from __future__ import annotations

__version__ = "0.1.0"

from .core import Alphabet, Block, LazyPicture, PartialPicture, Window, evaluate, occurrences, superpose  # noqa: E402
from .covers import borders, enumerate_covers, is_cover, primitive_root_2d  # noqa: E402

__all__ = [
    "Alphabet",
    "Block",
    "LazyPicture",
    "PartialPicture",
    "Window",
    "borders",
    "enumerate_covers",
    "evaluate",
    "is_cover",
    "occurrences",
    "primitive_root_2d",
    "superpose",
]

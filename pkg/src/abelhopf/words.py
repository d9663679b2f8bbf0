"""Words over the graded alphabet x_1, ..., x_m with deg(x_i) = i.

A word is a plain tuple of positive letter indices; the empty tuple is the
empty word ``e``.
"""
from __future__ import annotations

from functools import cmp_to_key
from typing import Iterable, Iterator

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


def degree(w: Word) -> int:
    return sum(w)


def sort_key(w: Word) -> tuple:
    """Canonical order: degree ascending, length descending, then lexicographic."""
    return (sum(w), -len(w), w)


def compare(a: Word, b: Word) -> int:
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


canonical_cmp = cmp_to_key(compare)


def compositions(n: int, max_part: int) -> Iterator[Word]:
    """All ordered compositions of n with parts in 1..max_part, lexicographic."""
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_part) + 1):
        for rest in compositions(n - first, max_part):
            yield (first,) + rest


def words_of_degree(m: int, n: int) -> list[Word]:
    return sorted(compositions(n, m), key=sort_key)


def enumerate_words(m: int, max_degree: int) -> list[Word]:
    if m < 1 or max_degree < 0:
        raise ValueError("need m >= 1 and max_degree >= 0")
    out: list[Word] = []
    for n in range(max_degree + 1):
        out.extend(words_of_degree(m, n))
    return out


def check_letters(w: Iterable[int], m: int) -> Word:
    w = tuple(int(i) for i in w)
    for i in w:
        if i < 1 or i > m:
            raise ValueError(f"letter x{i} outside alphabet x1..x{m}")
    return w


def format_word(w: Word) -> str:
    if not w:
        return "e"
    return ".".join(f"x{i}" for i in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("e", ""):
        return ()
    letters = []
    for part in text.split("."):
        part = part.strip()
        if not part.startswith("x") or not part[1:].isdigit():
            raise ValueError(f"bad letter {part!r} in word {text!r}")
        letters.append(int(part[1:]))
    if any(i < 1 for i in letters):
        raise ValueError(f"letter index must be positive in {text!r}")
    return tuple(letters)

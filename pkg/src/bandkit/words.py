"""Words over an indexed alphabet and the structural operators on them.

A letter is a positive integer ``k`` standing for the variable ``x_k``; a word
is a plain tuple of letters.  Tuples are immutable and hashable, which is all
the memoising recursions elsewhere need, so no wrapper class is used.

The prefix/suffix operators follow the usual conventions for band words:

* ``s_prefix(w)`` is the longest prefix of ``w`` missing exactly one letter of
  ``content(w)`` and ``sigma(w)`` is the letter right after it, i.e. the last
  letter of ``w`` to make its first appearance;
* ``e_suffix`` / ``epsilon`` are the mirror images of these.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Tuple

from .errors import EmptyWord, MissingImage, ParseError, SameLetter

Letter = int
Word = Tuple[int, ...]

EMPTY: Word = ()

_TOKEN = re.compile(r"x([1-9][0-9]*)")


def word(letters: Iterable[int]) -> Word:
    w = tuple(int(a) for a in letters)
    for a in w:
        if a < 1:
            raise ValueError(f"letters are positive integers, got {a}")
    return w


def content(w: Word) -> frozenset:
    return frozenset(w)


def reverse(w: Word) -> Word:
    return w[::-1]


def _require(w: Word) -> None:
    if not w:
        raise EmptyWord("operator needs a nonempty word")


def sigma(w: Word) -> Letter:
    _require(w)
    # dict preserves first-occurrence order, so its last key is sigma
    return next(reversed(dict.fromkeys(w)))


def s_prefix(w: Word) -> Word:
    _require(w)
    return w[: w.index(sigma(w))]


def epsilon(w: Word) -> Letter:
    _require(w)
    return next(reversed(dict.fromkeys(reversed(w))))


def e_suffix(w: Word) -> Word:
    _require(w)
    return w[len(w) - w[::-1].index(epsilon(w)):]


def split_left(w: Word) -> tuple[Word, Letter]:
    """Return ``(s_prefix(w), sigma(w))`` with a single scan."""
    _require(w)
    a = next(reversed(dict.fromkeys(w)))
    return w[: w.index(a)], a


def split_right(w: Word) -> tuple[Letter, Word]:
    """Return ``(epsilon(w), e_suffix(w))`` with a single scan."""
    _require(w)
    r = w[::-1]
    a = next(reversed(dict.fromkeys(r)))
    return a, w[len(w) - r.index(a):]


def initial_part(w: Word) -> Word:
    """First occurrences of each letter, left to right."""
    return tuple(dict.fromkeys(w))


def identify(w: Word, i: Letter, j: Letter) -> Word:
    """Replace every occurrence of ``x_i`` by ``x_j``.

    The operation is directional; callers that want the unordered convention
    for pairs normalise ``i < j`` themselves.
    """
    if i == j:
        raise SameLetter(f"cannot identify x{i} with itself")
    if i not in w:
        return w
    return tuple(j if a == i else a for a in w)


def substitute(w: Word, images: Mapping[Letter, Word]) -> Word:
    out: list[int] = []
    for a in w:
        try:
            image = images[a]
        except KeyError:
            raise MissingImage(f"no image given for x{a}") from None
        if not image:
            raise EmptyWord(f"image of x{a} is empty")
        out.extend(image)
    return tuple(out)


def parse_word(text: str) -> Word:
    """Parse ``"xyzx"`` (letters a..z = 1..26) or ``"x1 x2 x1"`` (tokens).

    Any digit switches to token syntax; the two syntaxes cannot be mixed.
    Tokens may be run together when unambiguous (``"x1x2"``).
    """
    text = text.strip()
    if not text:
        raise ParseError("empty word")
    if word_style(text) == "tokens":
        compact = "".join(text.split())
        if not re.fullmatch(r"(x[1-9][0-9]*)+", compact):
            raise ParseError(f"cannot parse word {text!r}: expected tokens xK")
        return tuple(int(k) for k in _TOKEN.findall(compact))
    if not re.fullmatch(r"[a-z]+", text):
        raise ParseError(f"cannot parse word {text!r}")
    return tuple(ord(ch) - ord("a") + 1 for ch in text)


def word_style(text: str) -> str:
    """The syntax a word text uses: ``"tokens"`` if it has a digit."""
    return "tokens" if re.search(r"[0-9]", text) else "letters"


def format_word(w: Word, style: str = "auto") -> str:
    """Render a word as letters (``style="letters"``) or tokens (``"tokens"``).

    ``"auto"`` uses letters whenever every letter is at most 26.
    """
    if style == "auto":
        style = "letters" if all(a <= 26 for a in w) else "tokens"
    if style == "letters":
        if any(a > 26 for a in w):
            raise ValueError("letter index above 26 has no single-letter name")
        return "".join(chr(ord("a") + a - 1) for a in w)
    if style == "tokens":
        return " ".join(f"x{a}" for a in w)
    raise ValueError(f"unknown style {style!r}")

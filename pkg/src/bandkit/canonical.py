"""Canonical forms for the free band.

``b_canonical(w)`` unfolds ``b(w) = b(s(w)) sigma(w) epsilon(w) b(e(w))`` with
``b(()) = ()``.  Two nonempty words are equal in every band exactly when their
canonical forms coincide, which gives the decision procedure
:func:`band_satisfies`.

The canonical form of a word with ``k`` distinct letters has length
``2**(k+1) - 2``, so the number of distinct letters is capped by
:data:`MAX_LETTERS` (module level, change it to raise the cap).
"""

from __future__ import annotations

from .errors import AlphabetTooLarge, EmptyWord
from .words import Word

MAX_LETTERS = 20


def _b(w: Word, memo: dict) -> Word:
    if not w:
        return w
    got = memo.get(w)
    if got is not None:
        return got
    firsts = dict.fromkeys(w)
    if len(firsts) == 1:
        a = w[0]
        res = (a, a)
    else:
        sig = next(reversed(firsts))
        r = w[::-1]
        eps = next(reversed(dict.fromkeys(r)))
        res = (_b(w[: w.index(sig)], memo) + (sig, eps)
               + _b(w[len(w) - r.index(eps):], memo))
    memo[w] = res
    return res


def b_canonical(w: Word, memo: dict | None = None) -> Word:
    """Return the free-band canonical form of ``w``.

    ``memo`` may be shared between calls (the closure enumeration in
    :mod:`bandkit.finite` does so); by default a fresh table is used.
    """
    w = tuple(w)
    if len(set(w)) > MAX_LETTERS:
        raise AlphabetTooLarge(
            f"{len(set(w))} distinct letters exceeds the cap of {MAX_LETTERS}")
    return _b(w, {} if memo is None else memo)


def band_satisfies(u: Word, v: Word) -> bool:
    """Decide whether ``u = v`` holds in every band."""
    if not u or not v:
        raise EmptyWord("identities are between nonempty words")
    if set(u) != set(v):
        return False
    memo: dict = {}
    return b_canonical(u, memo) == b_canonical(v, memo)

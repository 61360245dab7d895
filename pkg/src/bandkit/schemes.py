"""n-schemes of words: checking, permutations, derived schemes, solving.

A scheme of arity ``n`` assigns a word ``w_ij`` over ``x_1..x_n`` to every pair
``i < j``.  It is a scheme for a variety when

* (D)  ``w_ij`` does not depend on ``x_i``,
* (C1) ``w_ij[x_p -> x_q] = w_pq[x_i -> x_j]`` for four distinct indices,
* (C2) ``w_ij[x_j -> x_k] = w_jk[x_i -> x_k] = w_ik[x_j -> x_k]`` for ``i<j<k``

hold there.  A scheme *comes from* a word ``w`` when every ``w_ij`` is
equivalent to the identification minor ``w[x_i -> x_j]``.

:func:`solve_scheme` builds a candidate word by the recursive construction

    w = s(w_k'l') x_k u~ x_l u^

(``k``, ``l`` the last two letters of the associated permutation, ``u^`` a
solution of the scheme over the dual of the previous chain variety and ``u~``
one of the derived scheme) and then verifies it, so it never returns a word
that fails to solve the scheme.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterator, Mapping

from .errors import (ArityTooSmall, BadArity, BadPivot, EmptyWord, NoPermutation,
                     NoSolution, ParseError, SchemeError)
from .varieties import Atom, Variety, depends_on, invariant, satisfies
from .words import Word, format_word, identify, initial_part, parse_word, split_left

Pair = tuple  # (i, j) with i < j


def pairs(n: int) -> Iterator[Pair]:
    return itertools.combinations(range(1, n + 1), 2)


@dataclass(frozen=True)
class Scheme:
    """A family of words indexed by the pairs ``1 <= i < j <= n``.

    ``origin`` records, for schemes produced by :func:`derived_scheme`, the
    letter of the parent alphabet that each letter ``1..n`` stands for
    (``origin[k-1]`` for letter ``k``).
    """

    n: int
    entries: Mapping
    origin: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise BadArity(f"a scheme needs arity at least 2, got {self.n}")
        entries = {}
        for (i, j), w in dict(self.entries).items():
            if not 1 <= i < j <= self.n:
                raise BadArity(f"bad pair ({i},{j}) for arity {self.n}")
            w = tuple(w)
            if not w:
                raise EmptyWord(f"entry ({i},{j}) is empty")
            if max(w) > self.n or min(w) < 1:
                raise BadArity(f"entry ({i},{j}) uses a letter outside x1..x{self.n}")
            entries[(i, j)] = w
        missing = [p for p in pairs(self.n) if p not in entries]
        if missing:
            raise BadArity(f"missing entries for pairs {missing[:5]}")
        object.__setattr__(self, "entries", entries)

    def __getitem__(self, pair: Pair) -> Word:
        i, j = pair
        return self.entries[(min(i, j), max(i, j))]

    def reversed(self) -> "Scheme":
        return Scheme(self.n, {p: w[::-1] for p, w in self.entries.items()},
                      self.origin)

    def replace(self, pair: Pair, w: Word) -> "Scheme":
        entries = dict(self.entries)
        entries[pair] = tuple(w)
        return Scheme(self.n, entries, self.origin)


def scheme_from_word(w: Word, n: int) -> Scheme:
    w = tuple(w)
    if not w:
        raise EmptyWord("cannot build a scheme from the empty word")
    if max(w) > n:
        raise BadArity(f"word uses x{max(w)} but the arity is {n}")
    return Scheme(n, {(i, j): identify(w, i, j) for i, j in pairs(n)})


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class Violation:
    condition: str  # "D", "C1" or "C2"
    pairs: tuple
    lhs: Word
    rhs: Word

    def describe(self, style: str = "tokens") -> str:
        where = " ".join(f"({i},{j})" for i, j in self.pairs)
        return (f"{self.condition} {where}: "
                f"{format_word(self.lhs, style)} = {format_word(self.rhs, style)}")


@dataclass
class SchemeReport:
    dependency: bool
    c1: bool
    c2: bool
    violations: list

    @property
    def ok(self) -> bool:
        return self.dependency and self.c1 and self.c2


def check_scheme(S: Scheme, V: Variety) -> SchemeReport:
    memo: dict = {}

    def eq(u, v):
        return invariant(V, u, memo) == invariant(V, v, memo)

    violations = []
    dep_ok = True
    for (i, j), w in S.entries.items():
        if depends_on(V, w, i):
            dep_ok = False
            fresh = max(S.n, max(w)) + 1
            violations.append(Violation("D", ((i, j),), w, identify(w, i, fresh)))

    c1_ok = True
    for (i, j), (p, q) in itertools.combinations(list(pairs(S.n)), 2):
        if len({i, j, p, q}) < 4:
            continue
        lhs = identify(S[i, j], p, q)
        rhs = identify(S[p, q], i, j)
        if not eq(lhs, rhs):
            c1_ok = False
            violations.append(Violation("C1", ((i, j), (p, q)), lhs, rhs))

    c2_ok = True
    for i, j, k in itertools.combinations(range(1, S.n + 1), 3):
        a = identify(S[i, j], j, k)
        b = identify(S[j, k], i, k)
        c = identify(S[i, k], j, k)
        if not eq(a, b):
            c2_ok = False
            violations.append(Violation("C2", ((i, j), (j, k)), a, b))
        if not eq(b, c):
            c2_ok = False
            violations.append(Violation("C2", ((j, k), (i, k)), b, c))
    return SchemeReport(dep_ok, c1_ok, c2_ok, violations)


def is_essential(S: Scheme) -> bool:
    full = set(range(1, S.n + 1))
    return all(set(w) == full - {i} for (i, _), w in S.entries.items())


def first_mismatch(S: Scheme, w: Word, V: Variety):
    """First pair whose entry is not equivalent to the minor of ``w``."""
    memo: dict = {}
    for (i, j), entry in S.entries.items():
        minor = identify(w, i, j)
        if invariant(V, entry, memo) != invariant(V, minor, memo):
            return (i, j), entry, minor
    return None


def comes_from(S: Scheme, w: Word, V: Variety) -> bool:
    return first_mismatch(S, tuple(w), V) is None


# ---------------------------------------------------------------------------
# associated permutation and derived schemes

def permutation_minor(pi: tuple, i: int, j: int) -> tuple:
    """Replace ``i`` by ``j`` in ``pi`` and drop the right one of the two ``j``."""
    seq = [j if a == i else a for a in pi]
    del seq[len(seq) - 1 - seq[::-1].index(j)]
    return tuple(seq)


def _matches(pi, heads) -> Pair | None:
    for (i, j), h in heads.items():
        if h != permutation_minor(pi, i, j):
            return (i, j)
    return None


def associated_permutation(S: Scheme, strict: bool = True) -> tuple:
    """The permutation ``pi`` with ``i_2(w_ij) = pi^(ij)`` for all pairs.

    Returns ``(1pi, ..., npi)``.  For ``n >= 4`` the relative order of two
    letters ``a, b`` is read off any entry ``w_ij`` with ``{i,j}`` disjoint from
    ``{a,b}``; smaller arities fall back to trying every permutation (only
    allowed when ``strict`` is false, since uniqueness needs ``n >= 5``).
    Every candidate is checked against all entries.
    """
    n = S.n
    if strict and n < 5:
        raise ArityTooSmall(f"the associated permutation needs n >= 5, got {n}")
    heads = {p: initial_part(w) for p, w in S.entries.items()}
    full = set(range(1, n + 1))
    for (i, j), w in S.entries.items():
        if set(w) != full - {i}:
            raise NoPermutation(f"entry ({i},{j}) is not essential",
                                ("essential", (i, j), w))
    if n >= 4:
        pos = {p: {a: k for k, a in enumerate(h)} for p, h in heads.items()}

        def cmp(a, b):
            for (i, j) in pairs(n):
                if i not in (a, b) and j not in (a, b):
                    return pos[(i, j)][a] - pos[(i, j)][b]
            raise AssertionError("unreachable for n >= 4")

        pi = tuple(sorted(range(1, n + 1), key=cmp_to_key(cmp)))
        bad = _matches(pi, heads)
        if bad is not None:
            i, j = bad
            raise NoPermutation(
                f"initial part of entry ({i},{j}) is inconsistent with the others",
                ("permutation", bad, S[bad], permutation_minor(pi, i, j)))
        return pi
    for pi in itertools.permutations(range(1, n + 1)):
        if _matches(pi, heads) is None:
            return pi
    raise NoPermutation("no permutation fits the initial parts of the entries",
                        ("permutation", (1, 2), S[1, 2], S[1, 2]))


def derived_scheme(S: Scheme, l: int) -> Scheme:
    """Scheme of the prefixes ``s(w_ij)`` for pairs avoiding ``l``.

    The result lives on ``x_1..x_{n-1}``: letters above ``l`` move down by
    one, and ``result.origin`` maps each new letter back.
    """
    if S.n < 3:
        raise BadArity("derived schemes need arity at least 3")
    if not 1 <= l <= S.n:
        raise BadArity(f"pivot x{l} is outside x1..x{S.n}")

    def down(a):
        return a if a < l else a - 1

    entries = {}
    for (i, j), w in S.entries.items():
        if l in (i, j):
            continue
        s, sig = split_left(w)
        if sig != l:
            raise BadPivot(f"entry ({i},{j}) has sigma x{sig}, expected x{l}")
        if not s:
            raise BadPivot(f"entry ({i},{j}) has an empty prefix")
        entries[(down(i), down(j))] = tuple(down(a) for a in s)
    origin = tuple(a if a < l else a + 1 for a in range(1, S.n))
    return Scheme(S.n - 1, entries, origin)


# ---------------------------------------------------------------------------
# solving

def _projection(S: Scheme) -> Word:
    # left zero bands: the solution is a projection x_h, found from the heads
    for h in range(1, S.n + 1):
        if all((j if h == i else h) == w[0] for (i, j), w in S.entries.items()):
            return (h,)
    raise SchemeError("no projection matches the first letters of the entries")


def _content_word(S: Scheme) -> Word:
    n = S.n
    if n == 2:
        letters = {1, 2} if 2 in S[1, 2] else set(S[1, 2])
    else:
        letters = set()
        for a in range(1, n + 1):
            i, j = next(p for p in pairs(n) if a not in p)
            if a in S[i, j]:
                letters.add(a)
    if not letters:
        raise SchemeError("no letter survives in the content")
    return tuple(sorted(letters))


def _construct_atom(S: Scheme, atom: Atom) -> Word:
    if atom.kind == "SL":
        return _content_word(S)
    if atom.dual:
        return _construct_atom(S.reversed(), atom.mirrored())[::-1]
    if atom.kind == "A" and atom.m == 2:
        return _projection(S)
    pi = associated_permutation(S, strict=False)
    if atom.kind == "B" and atom.m == 2:
        return pi
    k, l = pi[-2], pi[-1]
    lower = Atom(atom.kind, atom.m - 1, True)
    u_hat = _construct_atom(S, lower)
    derived = derived_scheme(S, l)
    back = derived.origin
    u_tilde = tuple(back[a - 1] for a in _construct_atom(derived, lower))
    prefix, _ = split_left(S[min(k, l), max(k, l)])
    return prefix + (k,) + u_tilde + (l,) + u_hat


def construct_candidate(S: Scheme, V: Variety) -> Word:
    """The unverified word produced by the recursive construction."""
    if V.all_bands:
        raise SchemeError("no construction for the variety of all bands")
    if not V.atoms:
        return tuple(range(1, S.n + 1))
    out: Word = ()
    for atom in V.sorted_atoms():
        out += _construct_atom(S, atom)
    return out


def solve_scheme(S: Scheme, V: Variety) -> Word:
    """Return a word the scheme comes from over ``V``, or raise NoSolution.

    The result is always checked with :func:`comes_from`.  ``NoSolution``
    carries a witness ``(label, lhs, rhs)``: an identity that fails in ``V``.
    """
    if V.all_bands:
        raise NoSolution("the variety of all bands has no scheme solver", None)
    try:
        candidate = construct_candidate(S, V)
    except SchemeError as exc:
        report = check_scheme(S, V)
        if report.violations:
            v = report.violations[0]
            raise NoSolution(f"construction failed ({exc}); scheme violates {v.condition}",
                             (v.condition + " " + " ".join(map(str, v.pairs)),
                              v.lhs, v.rhs)) from exc
        try:
            candidate = associated_permutation(S, strict=False)
        except SchemeError:
            candidate = tuple(range(1, S.n + 1))
        miss = first_mismatch(S, candidate, V)
        if miss is None:
            return candidate
        pair, entry, minor = miss
        raise NoSolution(f"construction failed ({exc})",
                         (f"entry {pair} vs minor of {format_word(candidate, 'tokens')}",
                          entry, minor)) from exc
    miss = first_mismatch(S, candidate, V)
    if miss is not None:
        pair, entry, minor = miss
        raise NoSolution(f"candidate fails at pair {pair}",
                         (f"entry {pair} vs minor of {format_word(candidate, 'tokens')}",
                          entry, minor))
    return candidate


# ---------------------------------------------------------------------------
# file format

def scheme_to_dict(S: Scheme) -> dict:
    return {"n": S.n,
            "entries": {f"{i},{j}": format_word(w, "tokens")
                        for (i, j), w in sorted(S.entries.items())}}


def scheme_from_dict(data: dict) -> Scheme:
    try:
        n = int(data["n"])
        raw = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"scheme needs integer 'n' and 'entries': {exc}") from None
    entries = {}
    for key, text in raw.items():
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError:
            raise ParseError(f"bad pair key {key!r}") from None
        if not i < j:
            raise ParseError(f"pair key {key!r} must have i < j")
        entries[(i, j)] = parse_word(text)
    return Scheme(n, entries)


def load_scheme(path) -> Scheme:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return scheme_from_dict(data)


def dump_scheme(S: Scheme, path) -> None:
    with open(path, "w") as fh:
        json.dump(scheme_to_dict(S), fh, indent=1)
        fh.write("\n")

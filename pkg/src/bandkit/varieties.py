"""Band varieties and their word problems.

Every proper variety of bands is handled as a join of join-irreducible
*atoms*: the semilattices ``SL`` and the two chains ``A(m)``, ``B(m)``
(``m >= 2``) together with their left-right duals.  ``A(2)`` is the variety of
left zero bands (``LZ``), its dual is ``RZ`` and ``B(2)`` is the variety of left
regular bands.  The variety of all bands is the separate value
:data:`ALL_BANDS`.

An identity holds in ``A(m)`` iff both sides have the same ``h_m`` value, in
``B(m)`` iff they have the same ``i_m`` value, in a dual atom iff the mirrored
function agrees, in ``SL`` iff the contents agree, and in a join iff it holds
in every joinand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .canonical import b_canonical
from .errors import BadIndex, EmptyWord, ParseError
from .words import Word, identify, initial_part, split_left


# ---------------------------------------------------------------------------
# word functions h_m, i_m and their duals

def _t(kind: str, m: int, w: Word, memo: dict) -> Word:
    if not w:
        return w
    key = (kind, m, w)
    got = memo.get(key)
    if got is not None:
        return got
    if m == 2:
        res = w[:1] if kind == "h" else initial_part(w)
    else:
        s, sig = split_left(w)
        res = _t(kind, m, s, memo) + (sig,) + _t(kind, m - 1, w[::-1], memo)[::-1]
    memo[key] = res
    return res


def _check_m(m: int) -> None:
    if m < 2:
        raise BadIndex(f"index m must be at least 2, got {m}")


def h_m(w: Word, m: int, memo: dict | None = None) -> Word:
    _check_m(m)
    return _t("h", m, tuple(w), {} if memo is None else memo)


def i_m(w: Word, m: int, memo: dict | None = None) -> Word:
    _check_m(m)
    return _t("i", m, tuple(w), {} if memo is None else memo)


def dual_h_m(w: Word, m: int, memo: dict | None = None) -> Word:
    return h_m(tuple(w)[::-1], m, memo)[::-1]


def dual_i_m(w: Word, m: int, memo: dict | None = None) -> Word:
    return i_m(tuple(w)[::-1], m, memo)[::-1]


def word_function(kind: str, m: int, dual: bool = False):
    """Return the word function ``t_m`` (or its dual) for ``kind`` in h/i."""
    base = {"h": h_m, "i": i_m}[kind]
    if dual:
        return lambda w, memo=None: base(tuple(w)[::-1], m, memo)[::-1]
    return lambda w, memo=None: base(w, m, memo)


# ---------------------------------------------------------------------------
# atoms and the order between them

@dataclass(frozen=True, order=True)
class Atom:
    """A join-irreducible band variety.

    ``kind`` is ``"SL"``, ``"A"`` or ``"B"``; ``m`` is the chain index (0 for
    SL) and ``dual`` selects the mirrored chain.
    """

    kind: str
    m: int = 0
    dual: bool = False

    def __post_init__(self):
        if self.kind == "SL":
            if self.m != 0 or self.dual:
                raise ValueError("SL takes no index and is self-dual")
        elif self.kind in ("A", "B"):
            _check_m(self.m)
        else:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    @property
    def rank(self) -> int:
        """Height in the chain: A(m) -> 2m-3, B(m) -> 2m-2; SL -> 0."""
        if self.kind == "SL":
            return 0
        return 2 * self.m - 3 if self.kind == "A" else 2 * self.m - 2

    def mirrored(self) -> "Atom":
        if self.kind == "SL":
            return self
        return Atom(self.kind, self.m, not self.dual)

    def __str__(self):
        if self.kind == "SL":
            return "SL"
        if self.kind == "A" and self.m == 2:
            return "RZ" if self.dual else "LZ"
        return f"{self.kind}{self.m}" + ("~" if self.dual else "")

    def sort_key(self):
        # left chain by rank, then SL, then the dual chain by rank
        side = 1 if self.kind == "SL" else (2 if self.dual else 0)
        return (side, self.rank)


SL = Atom("SL")
LZ = Atom("A", 2)
RZ = Atom("A", 2, True)


def A(m: int) -> Atom:
    return Atom("A", m)


def B(m: int) -> Atom:
    return Atom("B", m)


def atom_leq(a: Atom, b: Atom) -> bool:
    """The order of join-irreducible band varieties.

    Within a chain the order is by rank.  Across the two chains ``a <= b``
    iff ``rank(a) <= rank(b) - 2``: ``A(m)`` contains the dual of ``A(m-1)``
    and ``B(m)`` the dual of ``B(m-1)``.  ``SL`` lies below every atom of rank
    at least 2 and is incomparable with ``LZ`` and ``RZ``.
    """
    if a == b:
        return True
    if a.kind == "SL":
        return b.rank >= 2
    if b.kind == "SL":
        return False
    if a.dual == b.dual:
        return a.rank <= b.rank
    return a.rank <= b.rank - 2


# ---------------------------------------------------------------------------
# varieties

@dataclass(frozen=True)
class Variety:
    """A join of atoms, kept as an antichain; or the variety of all bands."""

    atoms: frozenset = field(default_factory=frozenset)
    all_bands: bool = False

    def __post_init__(self):
        atoms = frozenset(self.atoms)
        if self.all_bands:
            atoms = frozenset()
        else:
            atoms = frozenset(a for a in atoms
                              if not any(a != b and atom_leq(a, b) for b in atoms))
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def of(cls, *atoms: Atom) -> "Variety":
        return cls(frozenset(atoms))

    def sorted_atoms(self) -> list:
        return sorted(self.atoms, key=Atom.sort_key)

    @property
    def is_trivial(self) -> bool:
        return not self.all_bands and not self.atoms

    def __str__(self):
        if self.all_bands:
            return "BAND"
        if not self.atoms:
            return "T"
        return "+".join(str(a) for a in self.sorted_atoms())

    def __le__(self, other: "Variety") -> bool:
        return leq(self, other)


ALL_BANDS = Variety(all_bands=True)
TRIVIAL = Variety()


def leq(v: Variety, w: Variety) -> bool:
    if w.all_bands:
        return True
    if v.all_bands:
        return False
    return all(any(atom_leq(a, b) for b in w.atoms) for a in v.atoms)


def join(*varieties: Variety) -> Variety:
    if any(v.all_bands for v in varieties):
        return ALL_BANDS
    return Variety(frozenset().union(*(v.atoms for v in varieties)))


def dual(v: Variety) -> Variety:
    if v.all_bands:
        return v
    return Variety(frozenset(a.mirrored() for a in v.atoms))


_ATOM_RE = re.compile(r"(SL|LZ|RZ|([AB])([0-9]+))(~?)")


def parse_variety(text: str) -> Variety:
    """Parse ``T``, ``SL``, ``LZ``, ``RZ``, ``A3``, ``B2~``, ``A3+B2~``, ``BAND``."""
    text = text.strip()
    if text == "BAND":
        return ALL_BANDS
    if text == "T":
        return TRIVIAL
    atoms = []
    for part in text.split("+"):
        part = part.strip()
        mt = _ATOM_RE.fullmatch(part)
        if mt is None:
            raise ParseError(f"cannot parse variety {part!r}")
        name, kind, num, tilde = mt.groups()
        if name == "SL":
            atom = SL
        elif name in ("LZ", "RZ"):
            atom = LZ if name == "LZ" else RZ
            if tilde:
                atom = atom.mirrored()
        else:
            m = int(num)
            if m < 2:
                raise ParseError(f"chain index must be at least 2 in {part!r}")
            atom = Atom(kind, m, bool(tilde))
        atoms.append(atom)
    return Variety(frozenset(atoms))


# ---------------------------------------------------------------------------
# invariants and identity checking

def atom_invariant(atom: Atom, w: Word, memo: dict | None = None) -> Word:
    if memo is None:
        memo = {}
    if atom.kind == "SL":
        return tuple(sorted(set(w)))
    kind = "h" if atom.kind == "A" else "i"
    if atom.dual:
        return _t(kind, atom.m, w[::-1], memo)[::-1]
    return _t(kind, atom.m, w, memo)


def invariant(v: Variety, w: Word, memo: dict | None = None) -> tuple:
    """Complete invariant of ``w`` modulo the identities of ``v``.

    The value is a tuple of ``(tag, word)`` pairs, one per atom in the fixed
    order of :meth:`Variety.sorted_atoms` (or a single ``("BAND", b(w))``
    pair).  The trivial variety gives the empty tuple.
    """
    w = tuple(w)
    if not w:
        raise EmptyWord("invariants are defined for nonempty words")
    if v.all_bands:
        return (("BAND", b_canonical(w, memo)),)
    if memo is None:
        memo = {}
    return tuple((str(a), atom_invariant(a, w, memo)) for a in v.sorted_atoms())


def format_invariant(value: tuple, style: str = "auto") -> str:
    from .words import format_word

    return "|".join(format_word(wd, style) for _, wd in value)


def satisfies(v: Variety, u: Word, w: Word) -> bool:
    """Decide whether the identity ``u = w`` holds in ``v``."""
    u, w = tuple(u), tuple(w)
    if not u or not w:
        raise EmptyWord("identities are between nonempty words")
    if v.all_bands:
        from .canonical import band_satisfies

        return band_satisfies(u, w)
    memo: dict = {}
    for a in v.sorted_atoms():
        if atom_invariant(a, u, memo) != atom_invariant(a, w, memo):
            return False
    return True


def depends_on(v: Variety, w: Word, i: int) -> bool:
    """Whether the operation induced by ``w`` on ``v`` depends on ``x_i``.

    Decided by the single identity ``w = w[x_i -> fresh]``.
    """
    w = tuple(w)
    fresh = max(max(w, default=0), i) + 1
    return not satisfies(v, w, identify(w, i, fresh))


def atoms_of(varieties: Iterable[Variety]) -> set:
    out: set = set()
    for v in varieties:
        out |= v.atoms
    return out

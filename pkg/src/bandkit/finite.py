"""Finite bands given by Cayley tables, and brute-force oracles over them.

Elements are the integers ``0..size-1``.  An ``n``-ary operation is stored as
a flat row-major array over ``S^n``: the tuple ``(a_1, ..., a_n)`` sits at
index ``a_1 size^(n-1) + ... + a_n``, so the first argument varies slowest.

Everything expensive is guarded by a :class:`Budget`; exceeding it raises
:class:`~bandkit.errors.BudgetExceeded` rather than grinding on.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .canonical import b_canonical
from .errors import (BadArity, BadIndex, BandError, BudgetExceeded, EmptyWord,
                     MissingAssignment, NotAssociative, NotIdempotent, NotInduced,
                     ParseError)
from .varieties import Variety, invariant
from .words import Word, format_word


@dataclass(frozen=True)
class Budget:
    cells: int = 10**7        # entries of one operation table
    elements: int = 10**6     # elements of a closure
    assignments: int = 10**6  # assignments tried by one identity check

    @classmethod
    def from_text(cls, text: str) -> "Budget":
        """``"5000"`` caps everything; ``"cells=10,elements=20"`` is selective."""
        text = text.strip()
        if "=" not in text:
            n = int(text)
            return cls(n, n, n)
        values = {}
        for part in text.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("cells", "elements", "assignments"):
                raise ValueError(f"unknown budget key {key!r}")
            values[key] = int(val)
        return replace(cls(), **values)


def default_budget() -> Budget:
    env = os.environ.get("BANDKIT_BUDGET")
    return Budget.from_text(env) if env else Budget()


def _check(what: str, amount: int, cap: int) -> None:
    if amount > cap:
        raise BudgetExceeded(f"{what}: {amount} exceeds the budget of {cap}")


# ---------------------------------------------------------------------------
# bands

@dataclass(frozen=True, eq=False)
class FiniteBand:
    table: np.ndarray
    names: tuple
    provenance: str = ""
    representatives: tuple | None = None

    @property
    def size(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other):
        if not isinstance(other, FiniteBand):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteBand(size={self.size}, provenance={self.provenance!r})"


def make_band(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
              provenance: str = "", representatives=None) -> FiniteBand:
    """Validate a Cayley table and wrap it.

    Idempotency is checked before associativity; the first failure in
    lexicographic order is reported with its witness.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise BandError("a Cayley table must be a nonempty square array")
    k = t.shape[0]
    if t.min() < 0 or t.max() >= k:
        raise BandError("table entries must be element indices 0..size-1")
    diag = t[np.arange(k), np.arange(k)]
    bad = np.nonzero(diag != np.arange(k))[0]
    if len(bad):
        raise NotIdempotent(int(bad[0]))
    # (ab)c against a(bc), one slab of a at a time to bound memory
    for a in range(k):
        left = t[t[a]]            # left[b, c] = (ab)c
        right = t[a][t]           # right[b, c] = a(bc)
        diff = np.argwhere(left != right)
        if len(diff):
            b, c = diff[0]
            raise NotAssociative(a, int(b), int(c))
    if names is None:
        names = [str(i) for i in range(k)]
    if len(names) != k:
        raise BandError("need one name per element")
    t.setflags(write=False)
    return FiniteBand(t, tuple(str(x) for x in names), provenance, representatives)


def left_zero(k: int) -> FiniteBand:
    return make_band([[i] * k for i in range(k)], provenance=f"left_zero({k})")


def right_zero(k: int) -> FiniteBand:
    return make_band([list(range(k)) for _ in range(k)], provenance=f"right_zero({k})")


def and_semilattice() -> FiniteBand:
    return make_band([[0, 0], [0, 1]], provenance="and_semilattice")


def adjoin_identity(S: FiniteBand) -> FiniteBand:
    """New identity element at index 0, named ``e``; old elements shift up."""
    k = S.size
    t = np.zeros((k + 1, k + 1), dtype=np.int64)
    t[0, :] = np.arange(k + 1)
    t[:, 0] = np.arange(k + 1)
    t[1:, 1:] = S.table + 1
    return make_band(t, ("e",) + S.names, f"adjoin_identity({S.provenance})")


def direct_product(S: FiniteBand, T: FiniteBand) -> FiniteBand:
    """Pairs ``(a, b)`` sit at index ``a * |T| + b``."""
    ks, kt = S.size, T.size
    a = np.repeat(np.arange(ks), kt)
    b = np.tile(np.arange(kt), ks)
    t = S.table[a[:, None], a[None, :]] * kt + T.table[b[:, None], b[None, :]]
    names = [f"({x},{y})" for x in S.names for y in T.names]
    return make_band(t, names, f"direct_product({S.provenance},{T.provenance})")


def dual_band(S: FiniteBand) -> FiniteBand:
    return make_band(S.table.T.copy(), S.names, f"dual_band({S.provenance})")


# ---------------------------------------------------------------------------
# relatively free bands

def _class_key(V: Variety):
    memo: dict = {}
    if V.all_bands:
        return lambda w: b_canonical(w, memo)
    return lambda w: invariant(V, w, memo)


def free_band_elements(V: Variety, k: int, budget: Budget | None = None) -> list:
    """Shortest representative words of the free band of ``V`` on ``k`` letters.

    Breadth-first closure from the generators under right multiplication by a
    generator; two words are the same element iff their invariants agree.
    """
    if k < 1:
        raise BadIndex("need at least one generator")
    budget = budget or default_budget()
    key = _class_key(V)
    seen = {}
    reps = []
    for g in range(1, k + 1):
        kk = key((g,))
        if kk not in seen:
            seen[kk] = len(reps)
            reps.append((g,))
    i = 0
    while i < len(reps):
        r = reps[i]
        for g in range(1, k + 1):
            w = r + (g,)
            kk = key(w)
            if kk not in seen:
                seen[kk] = len(reps)
                reps.append(w)
                _check("free band elements", len(reps), budget.elements)
        i += 1
    return reps


def free_band(V: Variety, k: int, budget: Budget | None = None) -> FiniteBand:
    """The relatively free band of ``V`` on ``k`` generators as a Cayley table.

    Element ``i`` is the class of ``representatives[i]``; the generators come
    first, in order, unless the variety identifies some of them.
    """
    budget = budget or default_budget()
    reps = free_band_elements(V, k, budget)
    size = len(reps)
    _check("free band table cells", size * size, budget.cells)
    key = _class_key(V)
    index = {key(r): i for i, r in enumerate(reps)}
    t = np.empty((size, size), dtype=np.int64)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            t[i, j] = index[key(r + s)]
    names = [format_word(r) for r in reps]
    return make_band(t, names, f"free_band({V},{k})", tuple(reps))


# ---------------------------------------------------------------------------
# evaluation and word operations

def eval_word(S: FiniteBand, w: Word, assignment: Mapping[int, int]) -> int:
    if not w:
        raise EmptyWord("cannot evaluate the empty word")
    try:
        vals = [assignment[a] for a in w]
    except KeyError as exc:
        raise MissingAssignment(f"x{exc.args[0]} is not assigned") from None
    acc = vals[0]
    for v in vals[1:]:
        acc = int(S.table[acc, v])
    return acc


def _coordinates(size: int, n: int) -> list:
    # coordinate arrays of S^n in row-major order, broadcastable to (size,)*n
    coords = []
    for axis in range(n):
        shape = [1] * n
        shape[axis] = size
        coords.append(np.arange(size).reshape(shape))
    return coords


def _evaluate(S: FiniteBand, w: Word, coords: list) -> np.ndarray:
    n = len(coords)
    full = (S.size,) * n
    acc = np.broadcast_to(coords[w[0] - 1], full)
    for a in w[1:]:
        acc = S.table[acc, coords[a - 1]]
    return np.ascontiguousarray(np.broadcast_to(acc, full)).reshape(-1)


@dataclass(frozen=True, eq=False)
class WordOperation:
    band: FiniteBand
    arity: int
    values: np.ndarray
    witness: Word | None = field(default=None)

    def key(self) -> bytes:
        return self.values.tobytes()

    def __eq__(self, other):
        if not isinstance(other, WordOperation):
            return NotImplemented
        return (self.band is other.band or self.band == other.band) and \
            self.arity == other.arity and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.arity, self.key()))

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise BadArity(f"expected {self.arity} arguments")
        return int(self.values[np.ravel_multi_index(args, (self.band.size,) * self.arity)])


def word_operation(S: FiniteBand, w: Word, n: int,
                   budget: Budget | None = None) -> WordOperation:
    w = tuple(w)
    if not w:
        raise EmptyWord("word operations need a nonempty word")
    if max(w) > n:
        raise BadArity(f"word uses x{max(w)} but the arity is {n}")
    budget = budget or default_budget()
    _check("operation table cells", S.size ** n, budget.cells)
    values = _evaluate(S, w, _coordinates(S.size, n))
    values.setflags(write=False)
    return WordOperation(S, n, values, w)


def operation_from_values(S: FiniteBand, n: int, values) -> WordOperation:
    vals = np.asarray(values, dtype=np.int64).reshape(-1)
    if len(vals) != S.size ** n:
        raise BadArity(f"an {n}-ary table on {S.size} elements has {S.size ** n} entries")
    if len(vals) and (vals.min() < 0 or vals.max() >= S.size):
        raise BandError("operation values must be element indices")
    vals.setflags(write=False)
    return WordOperation(S, n, vals, None)


def minor(f: WordOperation, i: int, j: int) -> WordOperation:
    """``f_ij``: the argument in slot ``i`` is replaced by the one in slot ``j``."""
    n = f.arity
    if not 1 <= i < j <= n:
        raise BadIndex(f"need 1 <= i < j <= {n}, got ({i},{j})")
    size = f.band.size
    coords = _coordinates(size, n)
    coords[i - 1] = coords[j - 1]
    full = (size,) * n
    flat = np.ravel_multi_index([np.broadcast_to(c, full) for c in coords], full).reshape(-1)
    values = f.values[flat]
    values.setflags(write=False)
    witness = None
    if f.witness is not None:
        witness = tuple(j if a == i else a for a in f.witness)
    return WordOperation(f.band, n, values, witness)


def depends_on(f: WordOperation, i: int) -> bool:
    if not 1 <= i <= f.arity:
        raise BadIndex(f"slot {i} is outside 1..{f.arity}")
    cube = f.values.reshape((f.band.size,) * f.arity)
    return not bool(np.all(cube == np.take(cube, [0], axis=i - 1)))


def enumerate_word_operations(S: FiniteBand, n: int,
                              budget: Budget | None = None) -> list:
    """All ``n``-ary operations of ``S`` induced by words, each with a witness.

    Breadth-first closure of the projections under the pointwise product;
    tables are deduplicated on their exact bytes.  The result is ordered by
    discovery, so witnesses are short.
    """
    budget = budget or default_budget()
    _check("operation table cells", S.size ** n, budget.cells)
    coords = _coordinates(S.size, n)
    found: dict = {}
    ops: list = []

    def add(values, witness):
        key = values.tobytes()
        if key in found:
            return False
        values.setflags(write=False)
        found[key] = len(ops)
        ops.append(WordOperation(S, n, values, witness))
        _check("word operations", len(ops), budget.elements)
        return True

    for a in range(1, n + 1):
        add(_evaluate(S, (a,), coords), (a,))
    frontier = list(range(len(ops)))
    while frontier:
        fresh = []
        for x in frontier:
            # products with every known operation, in both orders
            for y in range(len(ops)):
                for p, q in ((x, y), (y, x)):
                    f, g = ops[p], ops[q]
                    if add(S.table[f.values, g.values], f.witness + g.witness):
                        fresh.append(len(ops) - 1)
        frontier = fresh
    return ops


def induced_by_word(S: FiniteBand, f: WordOperation, budget: Budget | None = None) -> Word:
    """A word inducing ``f`` on ``S``; raises :class:`NotInduced` otherwise."""
    for op in enumerate_word_operations(S, f.arity, budget):
        if np.array_equal(op.values, f.values):
            return op.witness
    raise NotInduced("the operation is not induced by any word")


def satisfies_by_evaluation(S: FiniteBand, u: Word, v: Word,
                            budget: Budget | None = None) -> bool:
    """Check ``u = v`` in ``S`` by trying every assignment of its letters."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise EmptyWord("identities are between nonempty words")
    budget = budget or default_budget()
    letters = sorted(set(u) | set(v))
    _check("assignments", S.size ** len(letters), budget.assignments)
    slot = {a: k + 1 for k, a in enumerate(letters)}
    coords = _coordinates(S.size, len(letters))
    lu = _evaluate(S, tuple(slot[a] for a in u), coords)
    lv = _evaluate(S, tuple(slot[a] for a in v), coords)
    return bool(np.array_equal(lu, lv))


# ---------------------------------------------------------------------------
# file formats

def band_to_dict(S: FiniteBand) -> dict:
    return {"size": S.size, "table": S.table.tolist(), "names": list(S.names)}


def band_from_dict(data: dict) -> FiniteBand:
    try:
        table = data["table"]
    except (KeyError, TypeError):
        raise ParseError("band file needs a 'table'") from None
    size = data.get("size", len(table))
    if size != len(table):
        raise ParseError(f"size {size} does not match a table with {len(table)} rows")
    return make_band(table, data.get("names"))


def load_band(path) -> FiniteBand:
    with open(path) as fh:
        try:
            return band_from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None


def dump_band(S: FiniteBand, path) -> None:
    with open(path, "w") as fh:
        json.dump(band_to_dict(S), fh)
        fh.write("\n")


def operation_from_dict(S: FiniteBand, data: dict) -> WordOperation:
    """Operation file: ``{"arity": n, "values": [...]}`` in row-major order."""
    try:
        return operation_from_values(S, int(data["arity"]), data["values"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"operation file needs 'arity' and 'values': {exc}") from None


def load_operation(S: FiniteBand, path) -> WordOperation:
    with open(path) as fh:
        try:
            return operation_from_dict(S, json.load(fh))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None

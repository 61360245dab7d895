import itertools
import random

import pytest
from hypothesis import given, settings

from bandkit import canonical
from bandkit.canonical import b_canonical, band_satisfies
from bandkit.errors import AlphabetTooLarge, EmptyWord
from bandkit.words import content, e_suffix, epsilon, s_prefix, sigma, substitute

from conftest import W, words


@pytest.mark.parametrize("w, b", [("x", "xx"), ("xy", "xxyxyy"), ("xyx", "xxyyxx"),
                                  ("xyxy", "xxyxyy")])
def test_examples(w, b):
    assert b_canonical(W(w)) == W(b)


def test_identities():
    assert band_satisfies(W("xyxy"), W("xy"))
    assert band_satisfies(W("xx"), W("x"))
    assert not band_satisfies(W("xyx"), W("xy"))
    assert not band_satisfies(W("xyzx"), W("xyxzx"))
    assert not band_satisfies(W("xy"), W("x"))


def test_errors():
    with pytest.raises(EmptyWord):
        band_satisfies((), W("x"))
    with pytest.raises(AlphabetTooLarge):
        b_canonical(tuple(range(1, canonical.MAX_LETTERS + 2)))
    assert b_canonical(()) == ()


def test_length_formula():
    for k in range(1, 8):
        assert len(b_canonical(tuple(range(1, k + 1)))) == 2 ** (k + 1) - 2


# --- independent oracle: closure under square reduction uu -> u -----------

def _square_reduction_classes(letters, max_len):
    """Union-find over all words of length <= max_len linked by uu <-> u."""
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    every = [w for n in range(1, max_len + 1)
             for w in itertools.product(range(1, letters + 1), repeat=n)]
    for w in every:
        parent[w] = w
    for w in every:
        n = len(w)
        for i in range(n):
            for k in range(1, (n - i) // 2 + 1):
                if w[i:i + k] == w[i + k:i + 2 * k]:
                    shorter = w[:i + k] + w[i + 2 * k:]
                    ra, rb = find(w), find(shorter)
                    if ra != rb:
                        parent[ra] = rb
    return find


@pytest.mark.parametrize("letters, max_len, probe", [(2, 8, 5), (3, 9, 4)])
def test_rewriting_oracle(letters, max_len, probe):
    # Words of length <= probe: squares in longer words give the detours the
    # reduction needs, so agreement is exact on the probed range.
    find = _square_reduction_classes(letters, max_len)
    short = [w for n in range(1, probe + 1)
             for w in itertools.product(range(1, letters + 1), repeat=n)]
    memo: dict = {}
    for u, v in itertools.combinations(short, 2):
        same_class = find(u) == find(v)
        same_b = b_canonical(u, memo) == b_canonical(v, memo)
        assert same_class == same_b, (u, v)


@given(words(max_size=20))
def test_idempotent_and_equivalent(w):
    b = b_canonical(w)
    assert b_canonical(b) == b
    assert band_satisfies(b, w)
    assert content(b) == content(w)


@given(words(max_size=20))
def test_outer_decomposition(w):
    assert band_satisfies(w, s_prefix(w) + (sigma(w), epsilon(w)) + e_suffix(w))


@given(words(max_size=10), words(max_size=10), words(max_size=10))
def test_congruence(u, v, t):
    if band_satisfies(u, v):
        assert band_satisfies(t + u, t + v)
        assert band_satisfies(u + t, v + t)


@settings(max_examples=200)
@given(words(max_letter=3, max_size=8), words(max_letter=3, max_size=8),
       words(max_size=4), words(max_size=4), words(max_size=4))
def test_substitution_invariance(u, v, m1, m2, m3):
    images = {1: m1, 2: m2, 3: m3}
    if band_satisfies(u, v):
        assert band_satisfies(substitute(u, images), substitute(v, images))


def test_middle_absorption_random():
    rng = random.Random(3)
    for _ in range(2000):
        n = rng.randint(1, 5)
        u = tuple(rng.sample(range(1, n + 1), n)) + tuple(
            rng.randint(1, n) for _ in range(rng.randint(0, 6)))
        w = tuple(rng.sample(range(1, n + 1), n))
        v = tuple(rng.randint(1, n) for _ in range(rng.randint(1, 8)))
        assert band_satisfies(u + v + w, u + w)

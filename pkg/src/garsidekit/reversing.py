"""Word redressing: extend the letter complement to words.

The two rewriting rules

    (u v) \\ w = v \\ (u \\ w)
    w \\ (u v) = (w \\ u) ((u \\ w) \\ v)

extend the letter-level complement of a complemented presentation to a
partial binary operation on positive words.  Redressing a pair (u, v)
computes both u\\v and v\\u; when it terminates, u (u\\v) = v (v\\u) holds in
the presented monoid and is the candidate right lcm of u and v.

Termination is not guaranteed for arbitrary complemented presentations, so
every entry point takes a cell budget (`max_cells`, the number of
letter-level complement lookups) and raises ResourceLimit on exhaustion.

Truth semantics: for a structure that passed the Garsidity criterion the
predicates below are exact.  On an unverified table they are best-effort:
a True from positive_equal is always sound (the words are connected by
relations), but a False may merely indicate non-confluent redressing.
"""

from __future__ import annotations

import sys

from .errors import ResourceLimit
from .words import EPSILON, free_reduce

DEFAULT_MAX_CELLS = 10**6

# mutual recursion consumes two frames per letter of the right operand
sys.setrecursionlimit(max(sys.getrecursionlimit(), 50_000))

_CACHE_MAX = 500_000


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, n):
        self.left = n
        self.limit = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise ResourceLimit("max_cells", self.limit)


def _wc(table, u, v, budget):
    """Return (u\\v, v\\u)."""
    if not u:
        return (v, EPSILON)
    if not v:
        return (EPSILON, u)
    cache = table._cache
    key = (u, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    r = v
    acc = []
    for x in u:
        r, b = _lw(table, x, r, budget)
        acc.extend(b)
    res = (r, tuple(acc))
    if len(cache) > _CACHE_MAX:
        cache.clear()
    cache[key] = res
    return res


def _lw(table, x, v, budget):
    """Return (x\\v, v\\x) for a single letter x and nonempty word v."""
    if not v:
        return (EPSILON, (x,))
    budget.spend()
    comp = table.comp
    y = v[0]
    a = comp[x][y]
    b = comp[y][x]
    rest = v[1:]
    if not rest:
        return (a, b)
    c, d = _wc(table, b, rest, budget)
    return (a + c, d)


def word_complement(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """Both word complements (u\\v, v\\u), or ResourceLimit on divergence."""
    return _wc(table, tuple(u), tuple(v), _Budget(max_cells))


def right_lcm(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """The word u (u\\v); as a monoid element this is the right lcm u v."""
    uv, _ = _wc(table, tuple(u), tuple(v), _Budget(max_cells))
    return tuple(u) + uv


def positive_equal(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """True iff u\\v and v\\u both redress to the empty word."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return True
    if len(u) != len(v) and _is_homogeneous(table):
        return False
    return _wc(table, u, v, _Budget(max_cells)) == (EPSILON, EPSILON)


def left_divides(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """True iff u left-divides v, i.e. v\\u redresses to the empty word."""
    _, vu = _wc(table, tuple(u), tuple(v), _Budget(max_cells))
    return vu == EPSILON


def left_quotient(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """The word d with u d = v when u left-divides v, else None."""
    uv, vu = _wc(table, tuple(u), tuple(v), _Budget(max_cells))
    return uv if vu == EPSILON else None


def split_fraction(table, sw, max_cells=DEFAULT_MAX_CELLS):
    """Rewrite a signed word into a right fraction num * den^{-1}.

    Every negative-then-positive adjacency y^{-1} x is redressed into
    (y\\x)(x\\y)^{-1} until the word is positive-then-negative.
    """
    budget = _Budget(max_cells)
    pos = []
    den = EPSILON  # current word is pos * den^{-1}
    for g, s in free_reduce(sw):
        if s < 0:
            den = (g,) + den
        elif not den:
            pos.append(g)
        else:
            emitted, den = _wc(table, den, (g,), budget)
            pos.extend(emitted)
    return tuple(pos), den


def left_complement(mirror_table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """Left-lcm cofactors (v/u, u/v), via redressing in the mirrored table.

    `mirror_table` must be the complement table of the mirrored presentation;
    (v/u) u = (u/v) v is the left lcm of u and v.
    """
    a, b = _wc(mirror_table, tuple(u)[::-1], tuple(v)[::-1], _Budget(max_cells))
    return a[::-1], b[::-1]


def canonical_key(table, word, max_cells=DEFAULT_MAX_CELLS):
    """Canonical atom sequence of the element of `word`: repeatedly strip the
    least atom left-dividing it.  Two words denote the same element iff their
    keys agree (exact on coherent tables).  For length-preserving tables the
    key is also the lexicographically least representative.
    """
    budget = _Budget(max_cells)
    n = table.ngens
    w = tuple(word)
    key = []
    while w:
        for a in range(n):
            quot, rem = _wc(table, (a,), w, budget)
            if rem == EPSILON:
                # a left-divides w; quot is the exact quotient a\w
                key.append(a)
                w = quot
                break
        else:  # cannot happen for atomic tables: w's own first letter divides it
            raise ResourceLimit("canonical_key atoms", len(w))
    return tuple(key)


def _is_homogeneous(table):
    cached = getattr(table, "_homog", None)
    if cached is None:
        cached = all(
            len(table.comp[x][y]) == len(table.comp[y][x])
            for x in range(table.ngens)
            for y in range(table.ngens)
        )
        table._homog = cached
    return cached

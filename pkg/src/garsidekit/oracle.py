"""Brute-force ground truth for small presentations.

A Ball enumerates every positive word up to a length bound and closes the
relation rewrites into congruence classes with a union-find; divisibility,
lcm sets, right gcds, equality, and cancellativity witnesses are then
answered by exhaustion.  This module is deliberately independent of the
redressing machinery so the two can cross-validate each other.

For length-preserving presentations a lazier interface (`ClassIndex`)
computes single congruence classes by closing rewrites from one seed word;
`complete_to_table` uses it to complete such a presentation to a total
letter-complement table by locating the unique minimal common right
multiple of every generator pair, when it exists.
"""

from __future__ import annotations

from itertools import product

from .errors import GarsideError, NotComplemented, ResourceLimit
from .words import ComplementTable, EPSILON


class Ball:
    """Congruence classes of all words of length <= radius (+ slack scratch
    layers).  Rewrites are applied inside length <= radius + slack only, so
    results near the rim of a non-length-preserving presentation are
    approximations from below; queries that could leave the ball raise
    Inconclusive."""

    __slots__ = ("pres", "radius", "slack", "index", "words", "parent", "_succ")

    def __init__(self, pres, radius, slack, index, words, parent):
        self.pres = pres
        self.radius = radius
        self.slack = slack
        self.index = index
        self.words = words
        self.parent = parent
        self._succ = None

    def find(self, i):
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def classof(self, word):
        word = tuple(word)
        if word not in self.index:
            raise Inconclusive(f"word of length {len(word)} outside ball")
        return self.find(self.index[word])

    def class_words(self, word):
        root = self.classof(word)
        return sorted(w for w, i in self.index.items() if self.find(i) == root)

    def representatives(self, max_len=None):
        """Length-lex least representative of every class of words of length
        <= max_len (default: radius)."""
        bound = self.radius if max_len is None else max_len
        reps = {}
        for w in self.words:
            if len(w) > bound:
                continue
            r = self.find(self.index[w])
            if r not in reps or (len(w), w) < (len(reps[r]), reps[r]):
                reps[r] = w
        return reps


class Inconclusive(GarsideError):
    """The ball is too small to decide the query."""


def default_slack(pres):
    imbalance = max((abs(len(l) - len(r)) for l, r in pres.relations), default=0)
    return 2 * imbalance


def build_ball(pres, radius, slack=None, max_words=2_000_000):
    """Union-find closure of single rewrite steps over all words of length
    <= radius + slack."""
    if slack is None:
        slack = default_slack(pres)
    n = pres.ngens
    bound = radius + slack
    total = sum(n**k for k in range(bound + 1))
    if total > max_words:
        raise ResourceLimit("ball words", max_words)
    words = []
    for k in range(bound + 1):
        words.extend(product(range(n), repeat=k))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            if ri < rj:
                parent[rj] = ri
            else:
                parent[ri] = rj

    rules = []
    for lhs, rhs in pres.relations:
        rules.append((lhs, rhs))
        rules.append((rhs, lhs))
    for w in words:
        i = index[w]
        lw = len(w)
        for lhs, rhs in rules:
            ll = len(lhs)
            if ll > lw or lw - ll + len(rhs) > bound:
                continue
            for pos in range(lw - ll + 1):
                if w[pos : pos + ll] == lhs:
                    union(i, index[w[:pos] + rhs + w[pos + ll :]])
    return Ball(pres, radius, slack, index, words, parent)


def oracle_equal(ball, u, v):
    return ball.classof(u) == ball.classof(v)


def _successors(ball):
    """class -> {atom -> class} for one-letter right multiplication, built on
    the length-lex least representative of each class (stays in the ball as
    long as the representative does)."""
    if ball._succ is not None:
        return ball._succ
    succ = {}
    reps = ball.representatives(max_len=ball.radius + ball.slack)
    n = ball.pres.ngens
    for root, rep in reps.items():
        if len(rep) >= ball.radius + ball.slack:
            continue
        succ[root] = {g: ball.classof(rep + (g,)) for g in range(n)}
    ball._succ = succ
    return succ


def _reachable(ball, start):
    """Classes reachable from `start` by right multiplication (the right
    multiples of start inside the ball), with one shortest witness suffix."""
    succ = _successors(ball)
    seen = {start: EPSILON}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            table = succ.get(c)
            if table is None:
                continue
            base = seen[c]
            for g in sorted(table):
                d = table[g]
                if d not in seen:
                    seen[d] = base + (g,)
                    nxt.append(d)
        frontier = nxt
    return seen


def oracle_left_divides(ball, u, v):
    """True iff some d with u d = v exists inside the ball."""
    return ball.classof(v) in _reachable(ball, ball.classof(u))


def oracle_lcm_set(ball, u, v):
    """Minimal common right multiples of u and v found in the ball, as a
    sorted list of class representatives.  Size != 1 is meaningful: it
    witnesses a missing or non-unique right lcm."""
    mu = _reachable(ball, ball.classof(u))
    mv = _reachable(ball, ball.classof(v))
    common = set(mu) & set(mv)
    if not common:
        raise Inconclusive("no common multiple inside ball")
    # c is minimal when no other common multiple properly left-divides it
    proper_multiples = set()
    for d in common:
        proper_multiples.update(c for c in _reachable(ball, d) if c != d and c in common)
    minimal = common - proper_multiples
    reps = ball.representatives(max_len=ball.radius + ball.slack)
    return sorted(reps[c] for c in minimal)


def oracle_right_divisors(ball, u):
    """Representatives of the classes d with c d = u for some c: a class
    right-divides u iff some word of u's class ends with one of its words."""
    reps = ball.representatives(max_len=ball.radius + ball.slack)
    out = set()
    for w in ball.class_words(u):
        for cut in range(len(w) + 1):
            out.add(ball.find(ball.index[w[cut:]]))
    return sorted(reps[c] for c in out)


def oracle_right_gcd(ball, u, v):
    """The greatest common right divisor when unique; raises Inconclusive
    when the maximal common right divisors are not unique."""
    du = set(map(tuple, oracle_right_divisors(ball, u)))
    dv = set(map(tuple, oracle_right_divisors(ball, v)))
    common = du & dv
    maximal = []
    for c in common:
        if all(d == c or not _right_divides(ball, c, d) for d in common):
            maximal.append(c)
    if len(maximal) != 1:
        raise Inconclusive(f"{len(maximal)} maximal common right divisors")
    return maximal[0]


def _right_divides(ball, d, u):
    """True iff d right-divides u inside the ball."""
    return ball.classof(d) in {
        ball.find(ball.index[w[cut:]])
        for w in ball.class_words(u)
        for cut in range(len(w) + 1)
    }


def find_cancellativity_witness(ball, max_len=None):
    """First (a, u, v) in length-lex order with a u = a v (or u a = v a) but
    u != v in the ball, or None when no witness exists up to the bound."""
    bound = ball.radius if max_len is None else max_len
    reps = ball.representatives(max_len=bound)
    classes = sorted(reps.values(), key=lambda w: (len(w), w))
    atoms = [(g,) for g in range(ball.pres.ngens)]
    bound_all = ball.radius + ball.slack
    for side in ("left", "right"):
        for a in atoms:
            for u in classes:
                if not u or len(a) + len(u) > bound_all:
                    continue
                for v in classes:
                    if not v or (len(v), v) <= (len(u), u) or len(a) + len(v) > bound_all:
                        continue
                    if side == "left" and ball.classof(a + u) == ball.classof(a + v):
                        return {"side": side, "a": a, "u": u, "v": v}
                    if side == "right" and ball.classof(u + a) == ball.classof(v + a):
                        return {"side": side, "a": a, "u": u, "v": v}
    return None


# ---------------------------------------------------------------------------
# lazy classes for length-preserving presentations, and table completion


class ClassIndex:
    """Single-class closure for a length-preserving presentation: the class
    of a word is generated by BFS over relation applications, which stays in
    the word's length layer."""

    def __init__(self, pres, max_class=200_000):
        if any(len(l) != len(r) for l, r in pres.relations):
            raise GarsideError("ClassIndex needs a length-preserving presentation")
        self.pres = pres
        self.max_class = max_class
        self._canon = {}
        self._members = {}
        self.rules = []
        for lhs, rhs in pres.relations:
            self.rules.append((lhs, rhs))
            self.rules.append((rhs, lhs))

    def canon(self, word):
        """Length-lex least member of the congruence class of word."""
        word = tuple(word)
        hit = self._canon.get(word)
        if hit is not None:
            return hit
        seen = {word}
        frontier = [word]
        while frontier:
            nxt = []
            for w in frontier:
                lw = len(w)
                for lhs, rhs in self.rules:
                    ll = len(lhs)
                    for pos in range(lw - ll + 1):
                        if w[pos : pos + ll] == lhs:
                            w2 = w[:pos] + rhs + w[pos + ll :]
                            if w2 not in seen:
                                seen.add(w2)
                                nxt.append(w2)
                if len(seen) > self.max_class:
                    raise ResourceLimit("class size", self.max_class)
            frontier = nxt
        rep = min(seen)
        for w in seen:
            self._canon[w] = rep
        self._members[rep] = frozenset(seen)
        return rep

    def members(self, word):
        rep = self.canon(word)
        return self._members[rep]

    def equal(self, u, v):
        return len(u) == len(v) and self.canon(u) == self.canon(v)

    def left_divides(self, u, v):
        """True iff some member of v's class has a prefix in u's class."""
        u, v = tuple(u), tuple(v)
        if len(u) > len(v):
            return False
        ucls = self.members(u)
        return any(w[: len(u)] in ucls for w in self.members(v))


def complete_to_table(pres, max_len=8, max_class=200_000):
    """Complete a length-preserving presentation to a letter complement table.

    For each pair of generators the minimal common right multiples are
    located by breadth-first search over congruence classes; the pair's
    entry is extracted from the unique minimal one.  Raises NotComplemented
    when a pair has several minimal common multiples (no right lcm) and
    Inconclusive when none is found within max_len.
    """
    idx = ClassIndex(pres, max_class=max_class)
    n = pres.ngens
    comp = [[None] * n for _ in range(n)]
    for x in range(n):
        comp[x][x] = EPSILON
    for x in range(n):
        for y in range(x + 1, n):
            u, v = _pair_lcm(idx, x, y, max_len)
            comp[x][y] = u
            comp[y][x] = v
    return ComplementTable(pres.alphabet, comp)


def _pair_lcm(idx, x, y, max_len):
    """Words (u, v) with x u = y v the least minimal common right multiple."""
    n = idx.pres.ngens
    # level-synchronised BFS from both atoms; witness[c] = least suffix word
    wit_x = {idx.canon((x,)): EPSILON}
    wit_y = {idx.canon((y,)): EPSILON}
    frontier_x = dict(wit_x)
    frontier_y = dict(wit_y)
    found = None
    for _ in range(1, max_len):
        frontier_x = _grow(idx, frontier_x, wit_x, n)
        frontier_y = _grow(idx, frontier_y, wit_y, n)
        # classes are length-homogeneous, so common multiples show up in the
        # same BFS level from both sides
        common = sorted(set(frontier_x) & set(frontier_y))
        if common:
            if len(common) > 1:
                raise NotComplemented(
                    (idx.pres.alphabet.names[x], idx.pres.alphabet.names[y]), len(common)
                )
            found = common[0]
            break
    if found is None:
        raise Inconclusive(f"no common multiple of length <= {max_len}")
    # every common multiple one level further up must be a multiple of found,
    # otherwise the pair has incomparable minimal common multiples
    nxt_x = _grow(idx, frontier_x, dict(wit_x), n)
    nxt_y = _grow(idx, frontier_y, dict(wit_y), n)
    for c in set(nxt_x) & set(nxt_y):
        if not idx.left_divides(found, c):
            raise NotComplemented(
                (idx.pres.alphabet.names[x], idx.pres.alphabet.names[y]), 2
            )
    return wit_x[found], wit_y[found]


def _grow(idx, frontier, witness, n):
    out = {}
    for c, suffix in sorted(frontier.items()):
        for g in range(n):
            d = idx.canon(c + (g,))
            if d not in witness:
                witness[d] = suffix + (g,)
                out[d] = suffix + (g,)
    return out

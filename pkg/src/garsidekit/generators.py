"""Presentations for torus link monoids and related families.

Provides the (p, q) torus-link Artin monoid presentations (the cyclic-power
form when p divides q, the mixed form otherwise), their completion to a
total letter complement table, the braid-group action on free-group
generators with the induced link-group presentation, Wirtinger monoids of
closed positive braids, and the two-generator family mk22.

Generators of torus presentations are named x1..xp; arc generators of
Wirtinger monoids are renumbered canonically, so fixtures with traditional
names are matched up to presentation isomorphism (see
presentations_isomorphic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .errors import NonPositiveBraid, ParseError
from .words import (
    Alphabet,
    ComplementTable,
    Presentation,
    free_reduce,
    invert_signed,
    positive_part,
)


@dataclass(frozen=True)
class TorusParams:
    """Parameters of the (p, q) torus link, 2 <= p <= q.

    alpha and beta are quotient and remainder of q by p, g = gcd(p, q);
    beta == 0 exactly when p divides q.
    """

    p: int
    q: int

    def __post_init__(self):
        if not (2 <= self.p <= self.q):
            raise ParseError(f"need 2 <= p <= q, got ({self.p}, {self.q})")

    @property
    def alpha(self):
        return self.q // self.p

    @property
    def beta(self):
        return self.q % self.p

    @property
    def g(self):
        return math.gcd(self.p, self.q)

    @property
    def alphabet(self):
        return Alphabet(tuple(f"x{i}" for i in range(1, self.p + 1)))


def _cycle(p, start=1):
    """One full cycle of the generators beginning at x_start (1-based ids)."""
    return tuple((start - 1 + k) % p for k in range(p))


def delta_word(t):
    """The distinguished Garside element candidate (x1..xp)^(q/g)."""
    return _cycle(t.p) * (t.q // t.g)


def torus_presentation(t):
    """The torus-link Artin monoid presentation.

    For p | q with k = q/p: the p-1 relations equating (x1..xp)^k with each
    cyclic shift (xi..x_{i-1})^k.  Otherwise, with q = p*alpha + beta: the
    beta-1 relations chaining (x1..xp)^(alpha+1) to the words
    (xe..xp)(x1..xp)^alpha x_{p-beta+1}..x_{e-1+p-beta}, plus the p-beta
    relations (x1..xp)^alpha xi = x_{beta+i} (x1..xp)^alpha.
    """
    p, q = t.p, t.q
    alphabet = t.alphabet
    D = _cycle(p)
    rels = []
    if t.beta == 0:
        k = q // p
        first = D * k
        for i in range(2, p + 1):
            rels.append((first, _cycle(p, i) * k))
    else:
        alpha, beta = t.alpha, t.beta
        first = D * (alpha + 1)
        for e in range(2, beta + 1):
            # (xe..xp) (x1..xp)^alpha x_{p-beta+1} .. x_{e-1+p-beta}
            side = tuple(range(e - 1, p)) + D * alpha + tuple(range(p - beta, e - 1 + p - beta))
            rels.append((first, side))
        for i in range(1, p - beta + 1):
            rels.append((D * alpha + (i - 1,), (beta + i - 1,) + D * alpha))
    return Presentation(alphabet, tuple(rels))


def _block(t, z, e, ell):
    """The complement building block
    (x1..xp)^z x_{e+1}..xp (x1..xp)^ell x_{p-beta+1}..x_{e-1+p-beta}.

    For e == 0 both letter runs close up to full cycles and the block
    collapses to (x1..xp)^(z+1+ell), which is also the meaning given to
    ell = -1 there.
    """
    p, beta = t.p, t.beta
    D = _cycle(p)
    if e == 0:
        exp = z + 1 + ell
        if exp < 0:
            raise ValueError("negative cycle power in complement block")
        return D * exp
    if z < 0 or ell < 0:
        raise ValueError("negative cycle power in complement block")
    return D * z + tuple(range(e, p)) + D * ell + tuple(range(p - beta, e - 1 + p - beta))


def torus_complement_table(t):
    """Total complement table for the torus monoid.

    For p | q each pair (xi, xj) takes its complements from the cyclic-shift
    relation (xi..x_{i-1})^k = (xj..x_{j-1})^k by stripping first letters.
    Otherwise indices are decomposed as i = s*beta + e with 1 <= e <= beta
    and the complements are assembled from _block words; every induced
    relation is length-balanced.
    """
    p = t.p
    alphabet = t.alphabet
    comp = [[None] * p for _ in range(p)]
    for i in range(p):
        comp[i][i] = ()
    if t.beta == 0:
        k = t.q // p
        for i in range(p):
            for j in range(p):
                if i != j:
                    comp[i][j] = (_cycle(p, i + 1) * k)[1:]
        return ComplementTable(alphabet, comp)
    alpha, beta = t.alpha, t.beta
    for i in range(1, p + 1):
        s, e = divmod(i - 1, beta)
        e += 1
        for j in range(1, p + 1):
            if i == j:
                continue
            u, f = divmod(j - 1, beta)
            f += 1
            comp[i - 1][j - 1] = tuple(_complement_entry(t, s, e, u, f))
    return ComplementTable(alphabet, comp)


def _complement_entry(t, s, e, u, f):
    """The word x_{s*beta+e} \\ x_{u*beta+f}."""
    alpha, beta = t.alpha, t.beta
    if e == 1 and f == 1:
        if u < s:
            return _block(t, u * alpha, 0, alpha - 1)
        return _block(t, s * alpha, 1, alpha - 1) + ((u - s - 1) * beta,)
    if f == 1:  # e != 1
        if u < s:
            return _block(t, u * alpha, 0, alpha - 1)
        if u <= s + 1:
            return _block(t, s * alpha, e, alpha)
        return (
            _block(t, s * alpha, e, alpha)
            + _block(t, 0, 0, alpha - 2)
            + ((u - s - 2) * beta,)
        )
    if e == 1:  # f != 1
        if s < u:
            return _block(t, s * alpha, 1, alpha - 1) + ((u - s - 1) * beta + f - 1,)
        if s <= u + 1:
            return _block(t, s * alpha, 1, (u - s + 1) * alpha)
        return _block(t, u * alpha, 0, 2 * alpha - 1)
    # e != 1 and f != 1
    if u < s - 1:
        return _block(t, u * alpha, 0, 2 * alpha - 1)
    if u == s - 1 or (u == s and e != f):
        return _block(t, s * alpha, e, alpha)
    if u == s + 1:
        return _block(t, s * alpha, e, alpha) + _block(t, 0, 0, alpha - 1)
    return (
        _block(t, s * alpha, e, alpha)
        + _block(t, 0, 0, alpha - 2)
        + ((u - s - 2) * beta + f - 1,)
    )


def tau_permutation(t):
    """Permutation induced on generator indices by pushing a generator
    through the full cycle word: i -> i + p - beta for i <= beta and
    i -> i - beta otherwise (1-based).  Its order is p / gcd(p, q).
    """
    if t.beta == 0:
        raise ParseError("tau_permutation requires p not dividing q")
    p, beta = t.p, t.beta
    return tuple(i + p - beta if i <= beta else i - beta for i in range(1, p + 1))


def minimal_commuting_power(t):
    """Minimal h > 0 with xi (x1..xp)^h = (x1..xp)^h xi for every i.

    Computed by orbit bookkeeping: along each tau-orbit the cycle exponent
    advances by alpha+1 on indices <= beta and by alpha beyond; all orbits
    share the same total, which is returned.
    """
    tau = tau_permutation(t)
    alpha, beta = t.alpha, t.beta
    seen = [False] * t.p
    total = None
    for start in range(1, t.p + 1):
        if seen[start - 1]:
            continue
        h = 0
        i = start
        while True:
            seen[i - 1] = True
            h += alpha + 1 if i <= beta else alpha
            i = tau[i - 1]
            if i == start:
                break
        if total is None:
            total = h
        elif total != h:
            raise AssertionError("tau orbits disagree on commuting exponent")
    return total


# ---------------------------------------------------------------------------
# braids and link groups


@dataclass(frozen=True)
class BraidWord:
    """A braid word on `strands` strands: letters (i, sign), 1 <= i < strands."""

    strands: int
    letters: tuple

    def __post_init__(self):
        for i, s in self.letters:
            if not (1 <= i < self.strands) or s not in (-1, 1):
                raise ParseError(f"bad braid letter ({i}, {s})")

    def __mul__(self, other):
        if other.strands != self.strands:
            raise ParseError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    @property
    def positive(self):
        return all(s > 0 for _, s in self.letters)


def torus_braid(p, q):
    """(sigma_1 ... sigma_{p-1})^q, whose closure is the (p, q) torus link."""
    return BraidWord(p, tuple((i, +1) for _ in range(q) for i in range(1, p)))


def _act_letter(g, j, sign):
    """Image of the free-group generator g (0-based) under sigma_j^sign."""
    if sign > 0:
        if g == j - 1:
            return ((j - 1, 1), (j, 1), (j - 1, -1))
        if g == j:
            return ((j - 1, 1),)
    else:
        if g == j - 1:
            return ((j, 1),)
        if g == j:
            return ((j, -1), (j - 1, 1), (j, 1))
    return ((g, 1),)


def braid_act(b, sw):
    """Image of a signed word under the composite automorphism of b,
    freely reduced.  Letters act left to right: w . (b1 b2) = (w . b1) . b2.
    """
    w = tuple(sw)
    for j, sign in b.letters:
        out = []
        for g, s in w:
            img = _act_letter(g, j, sign)
            out.extend(img if s > 0 else invert_signed(img))
        w = free_reduce(out)
    return w


@dataclass(frozen=True)
class GroupPresentation:
    """Group presentation with signed relation sides (display and
    cross-checking only; never fed to the monoid machinery)."""

    alphabet: Alphabet
    relations: tuple  # tuple[(SignedWord, SignedWord), ...]


def artin_link_presentation(b):
    """Link-group presentation of the closure of b:
    one relation xi = xi . b per strand, trivial relations dropped.
    """
    names = tuple(f"x{i}" for i in range(1, b.strands + 1))
    alphabet = Alphabet(names)
    rels = []
    for g in range(b.strands):
        image = braid_act(b, ((g, 1),))
        if image != ((g, 1),):
            rels.append((((g, 1),), image))
    return GroupPresentation(alphabet, tuple(rels))


def torus_braid_image(p, q, i):
    """Closed form for xi . (sigma_1..sigma_{p-1})^q as a signed word:
    C^(m+1) x_{p*m+p-q+i} C^-(m+1) with C = x1..xp and m = floor((q-i)/p).
    """
    m = (q - i) // p
    j = p * m + p - q + i
    c = positive_part(tuple(range(p))) * (m + 1)
    return free_reduce(c + ((j - 1, 1),) + invert_signed(c))


# ---------------------------------------------------------------------------
# Wirtinger monoids


def wirtinger_monoid(b):
    """Wirtinger monoid of the closed-braid diagram of a positive braid.

    Arcs are maximal overcrossing segments traced through the closure; each
    crossing with over-arc o, incoming under-arc a and outgoing under-arc c
    contributes the relation o a = c o.
    """
    if not b.positive:
        raise NonPositiveBraid("wirtinger_monoid needs a positive braid word")
    n = b.strands
    arcs = list(range(n))  # current arc at each strand position
    fresh = n
    rels = []
    for j, _ in b.letters:
        over = arcs[j - 1]
        incoming = arcs[j]
        outgoing = fresh
        fresh += 1
        rels.append((over, incoming, outgoing))
        # the over strand moves to position j+1, the under strand surfaces
        # as a new arc at position j
        arcs[j - 1] = outgoing
        arcs[j] = over
    # closure identifies the bottom arc with the top arc at each position
    parent = list(range(fresh))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for pos in range(n):
        ra, rb = find(arcs[pos]), find(pos)
        if ra != rb:
            parent[ra] = rb
    # canonical renumbering in order of first appearance in the relations
    number = {}

    def arc_id(a):
        r = find(a)
        if r not in number:
            number[r] = len(number)
        return number[r]

    id_rels = [(arc_id(o), arc_id(a), arc_id(c)) for o, a, c in rels]
    for pos in range(n):  # arcs of crossing-free components stay generators
        arc_id(pos)
    names = tuple(f"x{i}" for i in range(1, len(number) + 1))
    alphabet = Alphabet(names)
    relations = tuple(((o, a), (c, o)) for o, a, c in id_rels)
    return Presentation(alphabet, relations)


def mk22_presentation(k):
    """The two-generator one-relator family
    < x, y : xy^2x (yx)^k y xy^2x = (yx)^k y xy^2x (yx)^k y >, k >= 0.
    """
    if k < 0:
        raise ParseError("k must be >= 0")
    alphabet = Alphabet(("x", "y"))
    x, y = 0, 1
    block = (x, y, y, x)
    tail = (y, x) * k + (y,)
    lhs = block + tail + block
    rhs = tail + block + tail
    return Presentation(alphabet, ((lhs, rhs),))


# ---------------------------------------------------------------------------
# validation and matching


def validate_table(table, t, oracle_depth, max_words=2_000_000):
    """Cross-check a torus complement table against the defining presentation
    with the brute-force congruence oracle.

    Confirms that every induced relation of the table holds in the monoid
    presented by torus_presentation(t), and that every defining relation
    holds in the monoid presented by the table; reports the first failure.
    """
    from .oracle import build_ball, oracle_equal

    pres = torus_presentation(t)
    induced = table.induced_relations()
    report = {"ok": True, "failures": []}
    ball_p = build_ball(pres, oracle_depth, slack=0, max_words=max_words)
    for lhs, rhs in induced:
        if max(len(lhs), len(rhs)) > oracle_depth:
            continue
        if not oracle_equal(ball_p, lhs, rhs):
            report["ok"] = False
            report["failures"].append(("table relation fails in presentation", lhs, rhs))
    ball_t = build_ball(table.to_presentation(), oracle_depth, slack=0, max_words=max_words)
    for lhs, rhs in pres.relations:
        if max(len(lhs), len(rhs)) > oracle_depth:
            continue
        if not oracle_equal(ball_t, lhs, rhs):
            report["ok"] = False
            report["failures"].append(("presentation relation fails in table", lhs, rhs))
    return report


def _relation_key(rel):
    return tuple(sorted(rel))


def presentations_isomorphic(p1, p2):
    """A generator bijection carrying the relation multiset of p1 onto that
    of p2 (relations unordered within a pair), or None.  Intended for small
    fixtures; searches permutations with degree-signature pruning.
    """
    n = len(p1.alphabet)
    if n != len(p2.alphabet) or len(p1.relations) != len(p2.relations):
        return None

    def signature(p):
        sig = [[] for _ in range(n)]
        for lhs, rhs in p.relations:
            shape = tuple(sorted((len(lhs), len(rhs))))
            for g in range(n):
                sig[g].append((shape, (lhs + rhs).count(g)))
        return [tuple(sorted(s)) for s in sig]

    sig1, sig2 = signature(p1), signature(p2)
    target = {}
    for rel in p2.relations:
        key = _relation_key(rel)
        target[key] = target.get(key, 0) + 1
    candidates = [[h for h in range(n) if sig2[h] == sig1[g]] for g in range(n)]
    if any(not c for c in candidates):
        return None
    for perm in permutations(range(n)):
        if any(perm[g] not in candidates[g] for g in range(n)):
            continue
        got = {}
        for lhs, rhs in p1.relations:
            key = _relation_key((tuple(perm[g] for g in lhs), tuple(perm[g] for g in rhs)))
            got[key] = got.get(key, 0) + 1
        if got == target:
            return {p1.alphabet.names[g]: p2.alphabet.names[perm[g]] for g in range(n)}
    return None

"""The finite lattice of simple elements of a verified structure.

Simples are the left divisors of the Garside element; they are enumerated
by a breadth-first closure under right multiplication by atoms, with
elements identified through their canonical atom sequence (reversing module).
Node ids are assigned in weight-then-lexicographic order, so identical
inputs build identical lattices.

All binary tables (divisibility, join, meet) are materialized lazily and
memoized; `lattice --count` style uses never pay for them.
"""

from __future__ import annotations

import json

from .criterion import left_divides_exact
from .errors import ResourceLimit
from .reversing import DEFAULT_MAX_CELLS, canonical_key, word_complement
from .words import EPSILON

DEFAULT_MAX_SIMPLES = 100_000


class SimpleLattice:
    def __init__(self, table, delta, max_simples=DEFAULT_MAX_SIMPLES, max_cells=DEFAULT_MAX_CELLS):
        self.table = table
        self.max_cells = max_cells
        self.delta_word = tuple(delta)
        self.reps = []  # id -> canonical representative word
        self.key_to_id = {}
        self._build(max_simples)
        self.one = self.key_to_id[EPSILON]
        self.delta = self.key_to_id[canonical_key(table, self.delta_word, max_cells)]
        self.atom = {}  # generator -> simple id
        for g in range(table.ngens):
            self.atom[g] = self.key_to_id[(g,)]
        self._prod = {}
        self._join = {}
        self._below = None
        self._rdiv = None
        self._rcomp = None
        self._lcomp = None

    # -- construction -------------------------------------------------------

    def _build(self, max_simples):
        table, delta = self.table, self.delta_word
        seen = {EPSILON}
        frontier = [EPSILON]
        layers = [[EPSILON]]
        while frontier:
            found = set()
            for w in frontier:
                for g in range(table.ngens):
                    wg = w + (g,)
                    if not left_divides_exact(table, wg, delta, self.max_cells):
                        continue
                    key = canonical_key(table, wg, self.max_cells)
                    if key not in seen:
                        seen.add(key)
                        found.add(key)
                        if len(seen) > max_simples:
                            raise ResourceLimit("max_simples", max_simples)
            frontier = sorted(found)
            if frontier:
                layers.append(frontier)
        for layer in layers:
            for key in layer:
                self.key_to_id[key] = len(self.reps)
                self.reps.append(key)

    def __len__(self):
        return len(self.reps)

    def weight(self, s):
        return len(self.reps[s])

    def word_str(self, s):
        return self.table.alphabet.word_str(self.reps[s])

    def id_of_word(self, w):
        """Simple id of the element of w, or None when w is not simple."""
        return self.key_to_id.get(canonical_key(self.table, tuple(w), self.max_cells))

    # -- products and order -------------------------------------------------

    def prod_atom(self, s, g):
        """Simple id of rep(s) * g, or None when the product leaves the
        divisor set of delta."""
        key = (s, g)
        if key not in self._prod:
            self._prod[key] = self.id_of_word(self.reps[s] + (g,))
        return self._prod[key]

    def _below_masks(self):
        """below[s] = bitmask of the ids left-dividing s."""
        if self._below is None:
            n = len(self.reps)
            below = [0] * n
            # grow divisor masks upward along atom covers: r <= s iff r = s
            # or r <= some t with t * atom = s
            preds = [[] for _ in range(n)]
            for s in range(n):
                for g in range(self.table.ngens):
                    t = self.prod_atom(s, g)
                    if t is not None:
                        preds[t].append(s)
            order = sorted(range(n), key=self.weight)
            for s in order:
                m = 1 << s
                for t in preds[s]:
                    m |= below[t]
                below[s] = m
            self._below = below
        return self._below

    def left_divides(self, s, t):
        return (self._below_masks()[t] >> s) & 1 == 1

    def divisors(self, s):
        m = self._below_masks()[s]
        return [i for i in range(len(self.reps)) if (m >> i) & 1]

    def join(self, s, t):
        key = (min(s, t), max(s, t))
        if key not in self._join:
            u, v = self.reps[s], self.reps[t]
            uv, _ = word_complement(self.table, u, v, self.max_cells)
            j = self.id_of_word(u + uv)
            if j is None:
                raise ResourceLimit("join outside lattice", key)
            self._join[key] = j
        return self._join[key]

    def meet(self, s, t):
        common = self._below_masks()[s] & self._below_masks()[t]
        best = self.one
        i = 0
        while common:
            if common & 1 and self.weight(i) > self.weight(best):
                best = i
            common >>= 1
            i += 1
        return best

    # -- right divisors and the two automorphisms ---------------------------

    def _rdiv_masks(self):
        """rdiv[s] = bitmask of the ids right-dividing s."""
        if self._rdiv is None:
            n = len(self.reps)
            rdiv = [0] * n
            prods = [[] for _ in range(n)]  # s -> list of (r, g) with r*g = s
            for r in range(n):
                for g in range(self.table.ngens):
                    s = self.prod_atom(r, g)
                    if s is not None:
                        prods[s].append((r, g))
            order = sorted(range(n), key=self.weight)
            for s in order:
                m = (1 << s) | (1 << self.one)
                for r, g in prods[s]:
                    rm = rdiv[r]
                    i = 0
                    while rm:
                        if rm & 1:
                            dx = self.prod_atom(i, g)
                            m |= 1 << dx
                        rm >>= 1
                        i += 1
                rdiv[s] = m
            self._rdiv = rdiv
        return self._rdiv

    def right_divides(self, s, t):
        return (self._rdiv_masks()[t] >> s) & 1 == 1

    def right_gcd_simple(self, s, t):
        """The right gcd of two simples: the heaviest common right divisor."""
        common = self._rdiv_masks()[s] & self._rdiv_masks()[t]
        best = self.one
        i = 0
        while common:
            if common & 1 and self.weight(i) > self.weight(best):
                best = i
            common >>= 1
            i += 1
        return best

    def rcomp(self, s):
        """s -> s\\delta; a bijection on simples with s * rcomp(s) = delta."""
        if self._rcomp is None:
            out = []
            for i in range(len(self.reps)):
                quot, _ = word_complement(self.table, self.reps[i], self.delta_word, self.max_cells)
                j = self.id_of_word(quot)
                if j is None:
                    raise ResourceLimit("complement outside lattice", i)
                out.append(j)
            if sorted(out) != list(range(len(out))):
                raise ResourceLimit("rcomp not bijective", len(out))
            self._rcomp = out
        return self._rcomp[s]

    def lcomp(self, s):
        """s -> delta/s, the inverse bijection of rcomp."""
        if self._lcomp is None:
            self.rcomp(0)
            inv = [0] * len(self._rcomp)
            for i, j in enumerate(self._rcomp):
                inv[j] = i
            self._lcomp = inv
        return self._lcomp[s]

    def phi(self, s):
        return self.rcomp(self.rcomp(s))

    def phi_tilde(self, s):
        return self.lcomp(self.lcomp(s))

    # -- exports -------------------------------------------------------------

    def covers(self):
        """Hasse edges (r, s, g) with rep(r) * g = rep-of-s, weight +1."""
        edges = []
        for r in range(len(self.reps)):
            for g in range(self.table.ngens):
                s = self.prod_atom(r, g)
                if s is not None:
                    edges.append((r, s, g))
        return edges

    def export_dot(self):
        names = self.table.alphabet.names
        lines = ["digraph lattice {", "  rankdir=BT;"]
        for i in range(len(self.reps)):
            lines.append(f'  n{i} [label="{self.word_str(i)}"];')
        for r, s, g in self.covers():
            lines.append(f'  n{r} -> n{s} [label="{names[g]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        n = len(self.reps)
        return json.dumps(
            {
                "simples": [self.word_str(i) for i in range(n)],
                "delta": self.word_str(self.delta),
                "join": [[self.join(i, j) for j in range(n)] for i in range(n)],
                "meet": [[self.meet(i, j) for j in range(n)] for i in range(n)],
                "phi": [self.phi(i) for i in range(n)],
                "phi_tilde": [self.phi_tilde(i) for i in range(n)],
            },
            sort_keys=True,
        )


def build_lattice(table, delta, max_simples=DEFAULT_MAX_SIMPLES, max_cells=DEFAULT_MAX_CELLS):
    """Lattice of the left divisors of `delta` over `table`.

    The caller is responsible for having verified that delta is a Garside
    element (criterion module); on junk input the breadth-first closure can
    hit max_simples instead of terminating.
    """
    return SimpleLattice(table, delta, max_simples, max_cells)

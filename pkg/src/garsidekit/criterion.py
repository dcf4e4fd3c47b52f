"""The Garsidity decision pipeline.

A presentation passes when it is complemented, normed, and coherent (the
letter-level cube condition holds on every triple), and a Garside element
verifies (its left and right divisor sets coincide and contain every
generator).  Cancellativity evidence is reported separately: the two Adjan
graphs (initial and final letters of relation sides) are acyclic, or, when
they are not, the combination complemented + normed + coherent stands in as
completeness-based evidence.  A complemented presentation on three or more
generators always has cyclic Adjan graphs, so the second route is the normal
one for completed tables; the graphs are still computed and reported for the
presentation actually given.

The verdict is `garside` only when every gate above passes; `not_garside`
needs a structural failure (non-complemented, or incoherent with a witness
triple); everything else is `inconclusive`, since the criterion is
sufficient but not necessary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotComplemented, ResourceLimit
from .reversing import (
    DEFAULT_MAX_CELLS,
    canonical_key,
    positive_equal,
    word_complement,
)
from .words import EPSILON, to_complement_table


# ---------------------------------------------------------------------------
# normedness

def _balance_rows(relations, ngens):
    rows = []
    for lhs, rhs in relations:
        row = [0] * ngens
        for g in lhs:
            row[g] += 1
        for g in rhs:
            row[g] -= 1
        if any(row):
            rows.append(tuple(row))
    return sorted(set(rows))


def check_normed(relations, ngens):
    """Search strictly positive generator weights balancing every relation.

    Returns (True, weights) with exact Fractions, or (False, certificate)
    where the certificate is a nonnegative, nonzero combination c of the
    balance equations, meaning every balanced weighting satisfies
    sum c_g w(g) = 0 and hence cannot be strictly positive.

    Candidates come from a floating LP; both outcomes are verified in exact
    rational arithmetic before being reported.
    """
    rows = _balance_rows(relations, ngens)
    if not rows:
        return True, [Fraction(1)] * ngens
    if all(sum(r) == 0 for r in rows):  # length-preserving: all-ones works
        return True, [Fraction(1)] * ngens

    import numpy as np
    from scipy.optimize import linprog

    A = np.array(rows, dtype=float)
    m = len(rows)
    # max t  s.t.  A w = 0,  w_g - t >= 0,  w_g <= 1
    c = [0.0] * ngens + [-1.0]
    a_ub = np.hstack([-np.eye(ngens), np.ones((ngens, 1))])
    a_eq = np.hstack([A, np.zeros((m, 1))])
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=[0.0] * ngens,
        A_eq=a_eq,
        b_eq=[0.0] * m,
        bounds=[(0, 1)] * ngens + [(None, None)],
        method="highs",
    )
    if res.status == 0 and res.x is not None and res.x[-1] > 1e-9:
        weights = _exact_positive_solution(rows, ngens, res.x[:ngens])
        if weights is not None:
            return True, weights
    certificate = _infeasibility_certificate(rows, ngens)
    if certificate is not None:
        return False, certificate
    raise ResourceLimit("normed search", "no exact certificate found")


def _exact_positive_solution(rows, ngens, approx):
    """Exact strictly positive nullspace vector near a numeric candidate:
    free variables are rationalized, pivot variables recomputed exactly."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ngens):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [g for g in range(ngens) if g not in pivots]
    w = [None] * ngens
    for g in free:
        w[g] = Fraction(approx[g]).limit_denominator(10**6)
    for i, col in enumerate(pivots):
        w[col] = -sum(mat[i][g] * w[g] for g in free)
    if all(x is not None and x > 0 for x in w):
        assert all(sum(c * x for c, x in zip(row, w)) == 0 for row in rows)
        return w
    return None


def _infeasibility_certificate(rows, ngens):
    """Nonnegative nonzero combination of the balance rows, exact, or None."""
    import numpy as np
    from scipy.optimize import linprog

    A = np.array(rows, dtype=float)
    m = len(rows)
    # find y with A^T y >= 0 and sum(A^T y) = 1
    res = linprog(
        [0.0] * m,
        A_ub=-A.T,
        b_ub=[0.0] * ngens,
        A_eq=[list(A.T.sum(axis=0))],
        b_eq=[1.0],
        bounds=[(None, None)] * m,
        method="highs",
    )
    if res.status != 0 or res.x is None:
        return None
    y = [Fraction(v).limit_denominator(10**6) for v in res.x]
    combo = [sum(y[i] * rows[i][g] for i in range(m)) for g in range(ngens)]
    if all(c >= 0 for c in combo) and any(c > 0 for c in combo):
        return combo
    return None


# ---------------------------------------------------------------------------
# Adjan graphs

@dataclass(frozen=True)
class AdjanGraphs:
    """Undirected multigraphs on the alphabet: one left edge per relation
    joining the first letters of its sides, one right edge joining the last
    letters.  Self-loops and parallel edges count as cycles."""

    left_edges: tuple
    right_edges: tuple
    left_acyclic: bool
    right_acyclic: bool


def _acyclic(nverts, edges):
    parent = list(range(nverts))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in edges:
        if a == b:
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def adjan_graphs(p):
    left = tuple((lhs[0], rhs[0]) for lhs, rhs in p.relations)
    right = tuple((lhs[-1], rhs[-1]) for lhs, rhs in p.relations)
    n = p.ngens
    return AdjanGraphs(left, right, _acyclic(n, left), _acyclic(n, right))


# ---------------------------------------------------------------------------
# coherence

def cube_condition(table, x, y, z, max_cells=DEFAULT_MAX_CELLS):
    """((x\\y)\\(x\\z)) \\ ((y\\x)\\(y\\z)) redresses to the empty word."""
    comp = table.comp
    a, _ = word_complement(table, comp[x][y], comp[x][z], max_cells)
    b, _ = word_complement(table, comp[y][x], comp[y][z], max_cells)
    res, _ = word_complement(table, a, b, max_cells)
    return res == EPSILON


def check_coherence(table, max_cells=DEFAULT_MAX_CELLS):
    """Cube condition over all ordered triples of pairwise distinct
    generators, in lexicographic order; triples with repeated entries hold
    automatically.  Returns (True, None) or (False, first failing triple)."""
    n = table.ngens
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                if not cube_condition(table, x, y, z, max_cells):
                    names = table.alphabet.names
                    return False, (names[x], names[y], names[z])
    return True, None


# ---------------------------------------------------------------------------
# Garside element

def candidate_delta(table, max_primitives=4096, max_cells=DEFAULT_MAX_CELLS):
    """Right lcm of the closure of the atoms under complement: the smallest
    possible Garside element when one exists.  Returns a word."""
    n = table.ngens
    elems = {}
    for g in range(n):
        elems[(g,)] = (g,)
    frontier = list(elems.values())
    while frontier:
        new = []
        current = list(elems.values())
        for u in current:
            for v in frontier:
                for w in word_complement(table, u, v, max_cells):
                    if w == EPSILON:
                        continue
                    key = canonical_key(table, w, max_cells)
                    if key not in elems:
                        elems[key] = w
                        new.append(w)
                        if len(elems) > max_primitives:
                            raise ResourceLimit("primitive closure", max_primitives)
        frontier = new
    delta = EPSILON
    for key in sorted(elems):
        u = elems[key]
        ext, _ = word_complement(table, delta, u, max_cells)
        delta = delta + ext
    return delta


def verify_garside_element(
    table, candidate, max_simples=100_000, max_cells=DEFAULT_MAX_CELLS
):
    """Check that the left and right divisors of `candidate` coincide and
    include every generator.

    Left divisors are enumerated by closing {1} under right multiplication
    by atoms inside the divisor set; the right divisors are exactly the
    left-quotients candidate = d * (d\\candidate).  Returns a status string:
    Verified, AtomsMissing, NotDivisorClosedEqual, or ResourceLimit.
    """
    candidate = tuple(candidate)
    try:
        left = {EPSILON: EPSILON}
        frontier = [EPSILON]
        n = table.ngens
        while frontier:
            new = []
            for w in frontier:
                for g in range(n):
                    wg = w + (g,)
                    uv, vu = word_complement(table, wg, candidate, max_cells)
                    if vu != EPSILON:
                        continue
                    if not positive_equal(table, wg + uv, candidate, max_cells):
                        continue
                    key = canonical_key(table, wg, max_cells)
                    if key not in left:
                        left[key] = wg
                        new.append(wg)
                        if len(left) > max_simples:
                            return "ResourceLimit"
            frontier = new
        for g in range(n):
            if (g,) not in left:
                return "AtomsMissing"
        right = set()
        for w in left.values():
            quot, _ = word_complement(table, w, candidate, max_cells)
            right.add(canonical_key(table, quot, max_cells))
        if right != set(left):
            return "NotDivisorClosedEqual"
        return "Verified"
    except ResourceLimit:
        return "ResourceLimit"


# ---------------------------------------------------------------------------
# the full report

@dataclass
class GarsideReport:
    complemented: bool
    normed: bool
    weights: list
    coherent: bool
    failing_triple: tuple | None
    adjan_left: bool
    adjan_right: bool
    garside_element: str | None
    verdict: str  # garside | not_garside | inconclusive
    reason: str

    def to_json(self):
        return json.dumps(
            {
                "complemented": self.complemented,
                "normed": self.normed,
                "weights": [str(w) for w in self.weights],
                "coherent": self.coherent,
                "failing_triple": list(self.failing_triple) if self.failing_triple else None,
                "adjan_left": self.adjan_left,
                "adjan_right": self.adjan_right,
                "garside_element": self.garside_element,
                "verdict": self.verdict,
                "reason": self.reason,
            },
            sort_keys=True,
        )


def garside_report(
    p,
    candidate=None,
    table=None,
    cancellativity_presentation=None,
    max_cells=DEFAULT_MAX_CELLS,
    max_simples=100_000,
):
    """Run the full pipeline on a presentation.

    `table` short-circuits complement extraction (for completed tables whose
    presentation of origin is not itself complemented);
    `cancellativity_presentation` supplies a second presentation of the same
    monoid on which the Adjan graphs are evaluated, mirroring the usual
    situation where cancellativity is established on a small presentation
    and the divisibility machinery on its completed table.
    """
    report = GarsideReport(
        complemented=False,
        normed=False,
        weights=[],
        coherent=False,
        failing_triple=None,
        adjan_left=False,
        adjan_right=False,
        garside_element=None,
        verdict="inconclusive",
        reason="",
    )
    if table is None:
        try:
            table = to_complement_table(p)
        except NotComplemented as e:
            report.verdict = "not_garside"
            report.reason = f"not complemented: {e}"
            return report
    report.complemented = True

    adjan_p = cancellativity_presentation if cancellativity_presentation is not None else p
    graphs = adjan_graphs(adjan_p)
    report.adjan_left = graphs.left_acyclic
    report.adjan_right = graphs.right_acyclic

    normed, data = check_normed(table.induced_relations(), table.ngens)
    report.normed = normed
    if normed:
        report.weights = list(data)
    else:
        report.reason = "not normed: every balanced weighting has " + _certificate_str(
            table.alphabet, data
        )
        return report

    try:
        ok, triple = check_coherence(table, max_cells)
    except ResourceLimit as e:
        report.reason = f"coherence undecided: {e}"
        return report
    report.coherent = ok
    if not ok:
        report.failing_triple = triple
        report.verdict = "not_garside"
        report.reason = f"cube condition fails on {triple}"
        return report

    try:
        delta = tuple(candidate) if candidate is not None else candidate_delta(
            table, max_cells=max_cells
        )
    except ResourceLimit as e:
        report.reason = f"no Garside element candidate: {e}"
        return report
    status = verify_garside_element(table, delta, max_simples, max_cells)
    if status != "Verified":
        report.reason = f"candidate Garside element not verified: {status}"
        return report
    report.garside_element = table.alphabet.word_str(delta)

    cancellativity = (
        "adjan graphs acyclic"
        if graphs.left_acyclic and graphs.right_acyclic
        else "complemented+normed+coherent (completeness)"
    )
    report.verdict = "garside"
    report.reason = f"all gates passed; cancellativity evidence: {cancellativity}"
    return report


def _certificate_str(alphabet, combo):
    terms = [
        (f"{c}*" if c != 1 else "") + f"w({alphabet.names[g]})"
        for g, c in enumerate(combo)
        if c != 0
    ]
    return " + ".join(terms) + " = 0"


def left_divides_exact(table, u, v, max_cells=DEFAULT_MAX_CELLS):
    """Left-divisibility with the two-step confirmation used by the lattice:
    redress, then confirm u (u\\v) = v."""
    uv, vu = word_complement(table, u, v, max_cells)
    return vu == EPSILON and positive_equal(table, tuple(u) + uv, tuple(v), max_cells)

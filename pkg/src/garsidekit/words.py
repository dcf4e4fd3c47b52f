"""Core vocabulary: alphabets, positive and signed words, presentations,
complement tables, parsing/formatting, and the mirror construction.

Generators are interned to dense integer ids; a positive word is a tuple of
ids and a signed word is a tuple of (id, sign) pairs with sign in {+1, -1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotComplemented, ParseError

Word = tuple  # tuple[int, ...]
SignedWord = tuple  # tuple[tuple[int, int], ...]

EPSILON: Word = ()

_FORBIDDEN = set("=^")


def _check_name(name):
    if not name or any(c.isspace() for c in name) or (set(name) & _FORBIDDEN):
        raise ParseError(f"invalid generator name {name!r}")


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generator names, interned to ids 0..n-1."""

    names: tuple
    index: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        seen = {}
        for i, name in enumerate(self.names):
            _check_name(name)
            if name in seen:
                raise ParseError(f"duplicate generator {name!r}")
            seen[name] = i
        object.__setattr__(self, "index", seen)

    def __len__(self):
        return len(self.names)

    def id(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise ParseError(f"unknown generator {name!r}") from None

    def word(self, text):
        """Parse a whitespace-separated positive word."""
        return tuple(self.id(tok) for tok in text.split())

    def word_str(self, word):
        return " ".join(self.names[g] for g in word) if word else "1"

    def signed_word(self, text):
        """Parse a signed word; an inverse letter is written with suffix ^-1."""
        out = []
        for tok in text.split():
            if tok.endswith("^-1"):
                out.append((self.id(tok[:-3]), -1))
            else:
                out.append((self.id(tok), +1))
        return tuple(out)

    def signed_str(self, sw):
        if not sw:
            return "1"
        return " ".join(self.names[g] + ("" if s > 0 else "^-1") for g, s in sw)


@dataclass(frozen=True)
class Presentation:
    """A positive monoid presentation: alphabet plus relations lhs = rhs.

    Relation sides are nonempty positive words; the empty word never occurs
    as a relation side here.
    """

    alphabet: Alphabet
    relations: tuple  # tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        n = len(self.alphabet)
        for lhs, rhs in self.relations:
            if not lhs or not rhs:
                raise ParseError("empty relation side")
            if any(g >= n or g < 0 for g in lhs + rhs):
                raise ParseError("relation references generator outside alphabet")

    @property
    def ngens(self):
        return len(self.alphabet)


def parse_presentation(text):
    """Parse the line-oriented presentation format.

    `# ...` lines are comments; one `gens:` line lists the generators; each
    `rel: u = v` line gives one relation with whitespace-separated letters.
    """
    alphabet = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            if alphabet is not None:
                raise ParseError("second gens: line", line=lineno)
            alphabet = Alphabet(tuple(line[5:].split()))
        elif line.startswith("rel:"):
            if alphabet is None:
                raise ParseError("rel: before gens:", line=lineno)
            body = line[4:]
            if body.count("=") != 1:
                raise ParseError("relation needs exactly one =", line=lineno)
            left, right = body.split("=")
            try:
                lhs, rhs = alphabet.word(left), alphabet.word(right)
            except ParseError as e:
                raise ParseError(str(e), line=lineno) from None
            if not lhs or not rhs:
                raise ParseError("empty relation side", line=lineno)
            relations.append((lhs, rhs))
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
    if alphabet is None:
        raise ParseError("missing gens: line")
    return Presentation(alphabet, tuple(relations))


def format_presentation(p):
    lines = ["gens: " + " ".join(p.alphabet.names)]
    for lhs, rhs in p.relations:
        lines.append(f"rel: {p.alphabet.word_str(lhs)} = {p.alphabet.word_str(rhs)}")
    return "\n".join(lines) + "\n"


def mirror(p):
    """Reverse every relation word letter-by-letter.

    Left-divisibility questions in p become right-divisibility questions in
    mirror(p); the construction is an involution.
    """
    rels = tuple((lhs[::-1], rhs[::-1]) for lhs, rhs in p.relations)
    return Presentation(p.alphabet, rels)


def invert_signed(sw):
    return tuple((g, -s) for g, s in reversed(sw))


def positive_part(word):
    """Lift a positive word to a signed word."""
    return tuple((g, +1) for g in word)


def free_reduce(sw):
    """Cancel adjacent g g^-1 and g^-1 g pairs."""
    out = []
    for g, s in sw:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


class ComplementTable:
    """Total letter-level complement: comp[x][y] is the word x\\y, the unique
    u with a defining relation x u = y v.  comp[x][x] is the empty word.

    Carries a memo cache for word-level reversing (see reversing module).
    """

    __slots__ = ("alphabet", "comp", "_cache", "_homog")

    def __init__(self, alphabet, comp):
        self.alphabet = alphabet
        self.comp = tuple(tuple(row) for row in comp)
        n = len(alphabet)
        for x in range(n):
            if self.comp[x][x] != EPSILON:
                raise ValueError("diagonal of a complement table must be empty")
            for y in range(n):
                if self.comp[x][y] is None:
                    raise NotComplemented((alphabet.names[x], alphabet.names[y]), 0)
        self._cache = {}
        self._homog = None

    @property
    def ngens(self):
        return len(self.alphabet)

    def entry(self, xname, yname):
        return self.comp[self.alphabet.id(xname)][self.alphabet.id(yname)]

    def induced_relations(self):
        """One relation x(x\\y) = y(y\\x) per unordered generator pair."""
        rels = []
        n = self.ngens
        for x in range(n):
            for y in range(x + 1, n):
                rels.append(((x,) + self.comp[x][y], (y,) + self.comp[y][x]))
        return tuple(rels)

    def to_presentation(self):
        return Presentation(self.alphabet, self.induced_relations())


def to_complement_table(p):
    """Extract the complement table of a complemented presentation.

    Raises NotComplemented when some unordered pair of distinct generators
    heads zero or several relations, or a relation's sides share their first
    letter.
    """
    n = p.ngens
    comp = [[None] * n for _ in range(n)]
    counts = {}
    for lhs, rhs in p.relations:
        x, y = lhs[0], rhs[0]
        key = (min(x, y), max(x, y))
        counts[key] = counts.get(key, 0) + 1
        if x == y:
            raise NotComplemented((p.alphabet.names[x], p.alphabet.names[y]), counts[key])
        if counts[key] > 1:
            raise NotComplemented((p.alphabet.names[key[0]], p.alphabet.names[key[1]]), counts[key])
        comp[x][y] = lhs[1:]
        comp[y][x] = rhs[1:]
    for x in range(n):
        comp[x][x] = EPSILON
        for y in range(n):
            if comp[x][y] is None:
                raise NotComplemented((p.alphabet.names[x], p.alphabet.names[y]), 0)
    return ComplementTable(p.alphabet, comp)


def mirror_of_table(table):
    """Complement table of the mirrored induced presentation, when it exists."""
    return to_complement_table(mirror(table.to_presentation()))

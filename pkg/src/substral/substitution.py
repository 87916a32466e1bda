"""Substitutions on the alphabet {1, ..., d} and their combinatorial invariants."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from math import lcm

Word = tuple[int, ...]


class SubstitutionError(ValueError):
    """Malformed substitution text or invalid construction."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyImage(SubstitutionError):
    pass


class UnknownLetter(SubstitutionError):
    pass


class MissingRule(UnknownLetter):
    """A letter used in an image has no rule of its own."""


class DuplicateRule(SubstitutionError):
    pass


class AlphabetMismatch(SubstitutionError):
    pass


@dataclass(frozen=True)
class Substitution:
    """A morphism letter -> nonempty word on {1, ..., d}.

    ``images[a - 1]`` is the image of letter ``a``. ``names`` optionally keeps
    the symbolic letter names of the source text (index ``a - 1``).
    """

    images: tuple[Word, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        images = tuple(tuple(int(x) for x in w) for w in self.images)
        object.__setattr__(self, "images", images)
        d = len(images)
        if d < 1:
            raise SubstitutionError("alphabet must be nonempty")
        for a, w in enumerate(images, 1):
            if not w:
                raise EmptyImage(f"image of letter {a} is empty")
            bad = [x for x in w if not 1 <= x <= d]
            if bad:
                raise UnknownLetter(f"image of letter {a} uses letter {bad[0]} outside 1..{d}")

    @classmethod
    def from_strings(cls, *images: str) -> Substitution:
        """Shorthand for single-digit alphabets: ``from_strings("21", "1")``."""
        return cls(tuple(tuple(int(c) for c in w) for w in images))

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> Word:
        return self.images[a - 1]

    def apply(self, word) -> Word:
        out: list[int] = []
        for a in word:
            out.extend(self.images[a - 1])
        return tuple(out)

    def __str__(self):
        return "; ".join(f"{a}->{''.join(map(str, w)) if self.d < 10 else '.'.join(map(str, w))}"
                         for a, w in enumerate(self.images, 1))


# -- text format ---------------------------------------------------------------

_LETTER = re.compile(r"[A-Za-z0-9]+")


def _split_word(text: str, single_chars: bool) -> list[str]:
    text = text.strip()
    if not text:
        return []
    if "." in text:
        parts = text.split(".")
    elif " " in text:
        parts = text.split()
    elif single_chars:
        parts = list(text)
    else:
        parts = [text]
    parts = [p.strip() for p in parts]
    for p in parts:
        if not _LETTER.fullmatch(p):
            raise SubstitutionError(f"bad letter token {p!r}")
    return parts


def parse_substitution(text: str) -> Substitution:
    """Parse one ``name -> image`` rule per line; ``#`` starts a comment.

    Letter names are ``[A-Za-z0-9]+`` tokens, numbered 1..d in rule order.
    When every name is a single character an undotted image is read letter
    by letter; otherwise image letters are separated by ``.`` or spaces.
    """
    rules: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise SubstitutionError(f"expected 'letter -> image', got {raw.strip()!r}", lineno)
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        if not _LETTER.fullmatch(lhs):
            raise SubstitutionError(f"bad letter name {lhs!r}", lineno)
        if lhs in rules:
            raise DuplicateRule(f"duplicate rule for letter {lhs!r}", lineno)
        rules[lhs] = (rhs, lineno)
    if not rules:
        raise SubstitutionError("no rules found")
    single = all(len(name) == 1 for name in rules)
    index = {name: i for i, name in enumerate(rules, 1)}
    images = []
    for name, (rhs, lineno) in rules.items():
        try:
            image = _split_word(rhs, single)
        except SubstitutionError as exc:
            raise SubstitutionError(str(exc), lineno) from None
        if not image:
            raise EmptyImage(f"empty image for letter {name!r}", lineno)
        for tok in image:
            if tok not in index:
                raise MissingRule(f"letter {tok!r} has no rule", lineno)
        images.append(tuple(index[t] for t in image))
    return Substitution(tuple(images), names=tuple(rules))


def format_substitution(phi: Substitution, provenance: dict | None = None) -> str:
    """Canonical text: integer names, ``.`` separators when d > 9."""
    lines = []
    for key, value in sorted((provenance or {}).items()):
        lines.append(f"# {key}: {value}")
    sep = "." if phi.d > 9 else ""
    for a, w in enumerate(phi.images, 1):
        lines.append(f"{a} -> {sep.join(map(str, w))}")
    return "\n".join(lines) + "\n"


def read_provenance(text: str) -> dict:
    out = {}
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#") and ":" in s:
            key, value = s[1:].split(":", 1)
            out[key.strip()] = value.strip()
    return out


# -- algebra of substitutions -----------------------------------------------------


def abelianization(phi: Substitution) -> tuple[tuple[int, ...], ...]:
    """Entry (i, j) counts letter i+1 in the image of letter j+1."""
    d = phi.d
    m = [[0] * d for _ in range(d)]
    for j, w in enumerate(phi.images):
        for a in w:
            m[a - 1][j] += 1
    return tuple(tuple(r) for r in m)


def compose(phi: Substitution, psi: Substitution) -> Substitution:
    """(phi o psi)(a) = phi(psi(a))."""
    if phi.d != psi.d:
        raise AlphabetMismatch(f"cannot compose substitutions on {phi.d} and {psi.d} letters")
    return Substitution(tuple(phi.apply(w) for w in psi.images))


def identity(d: int) -> Substitution:
    return Substitution(tuple((a,) for a in range(1, d + 1)))


def power(phi: Substitution, k: int) -> Substitution:
    if k < 1:
        raise ValueError("power must be at least 1")
    result = phi
    for _ in range(k - 1):
        result = compose(phi, result)
    return result


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][l] * b[l][j] for l in range(m)) for j in range(p)) for i in range(n))


def is_primitive(matrix) -> tuple[bool, int | None]:
    """Smallest k <= (d-1)^2 + 1 with A^k entrywise positive (Wielandt bound)."""
    d = len(matrix)
    pattern = tuple(tuple(1 if v else 0 for v in row) for row in matrix)
    cur = pattern
    for k in range(1, (d - 1) ** 2 + 2):
        if all(all(row) for row in cur):
            return True, k
        cur = tuple(tuple(1 if v else 0 for v in row) for row in matmul(cur, pattern))
    return False, None


def initial_letter_injective(phi: Substitution) -> bool:
    firsts = [w[0] for w in phi.images]
    return len(set(firsts)) == len(firsts)


def final_letters_eventually_constant(phi: Substitution) -> tuple[bool, int | None, int | None]:
    """Decide whether f: a -> last letter of phi(a) is eventually constant.

    That holds exactly when the functional graph of f has a single cycle and
    it is a fixed point c. Returns (True, k, c) with k the least power making
    f^k constant, else (False, None, None).
    """
    d = phi.d
    f = [None] + [w[-1] for w in phi.images]
    cycles = set()
    for a in range(1, d + 1):
        x = a
        for _ in range(d):
            x = f[x]
        cyc, y = {x}, f[x]
        while y != x:
            cyc.add(y)
            y = f[y]
        cycles.add(frozenset(cyc))
    if len(cycles) != 1:
        return False, None, None
    (cycle,) = cycles
    if len(cycle) != 1:
        return False, None, None
    (c,) = cycle
    images = set(range(1, d + 1))
    k = 0
    while len(images) > 1:
        images = {f[a] for a in images}
        k += 1
    return True, max(k, 1), c


def factors(phi: Substitution, n: int) -> frozenset[Word]:
    """All factors of length <= n of the language of a primitive substitution.

    Every length-n factor of phi(v) lies in phi(u) for a length-n factor u
    of the language, so the length-n factors close under "apply phi, take
    length-n windows" starting from any long enough legal word. Shorter
    factors are prefixes of those, since every legal word extends to the right.
    """
    if n < 1:
        raise ValueError("length bound must be positive")
    if not is_primitive(abelianization(phi))[0]:
        raise SubstitutionError("factor enumeration requires a primitive substitution")
    if all(len(w) == 1 for w in phi.images):
        # a primitive permutation is 1 -> 1; its tiling is ...111...
        return frozenset((1,) * k for k in range(1, n + 1))
    word: Word = phi(1)
    while len(word) < n:
        word = phi.apply(word)
    found: set[Word] = set()
    frontier: list[Word] = []

    def harvest(w):
        for i in range(len(w) - n + 1):
            f = w[i:i + n]
            if f not in found:
                found.add(f)
                frontier.append(f)

    harvest(word)
    while frontier:
        harvest(phi.apply(frontier.pop()))
    out = set(found)
    for w in found:
        out.update(w[:j] for j in range(1, n))
    return frozenset(out)


def complexity(phi: Substitution, n: int) -> list[int]:
    """p(1), ..., p(n): number of language factors of each length."""
    fs = factors(phi, n)
    counts = [0] * (n + 1)
    for w in fs:
        counts[len(w)] += 1
    return counts[1:]


def admissible_seed(phi: Substitution) -> tuple[int, int, int]:
    """Least (k, a, b), pairs in lexicographic order, with phi^k(a) = a..., phi^k(b) = ...b and ba in the language."""
    d = phi.d
    first = [None] + [w[0] for w in phi.images]
    last = [None] + [w[-1] for w in phi.images]
    two = factors(phi, 2)
    fa, fb = list(range(d + 1)), list(range(d + 1))
    for k in range(1, lcm(*range(1, d + 1)) + 1):
        fa = [None] + [first[fa[a]] for a in range(1, d + 1)]
        fb = [None] + [last[fb[a]] for a in range(1, d + 1)]
        for a in range(1, d + 1):
            if fa[a] != a:
                continue
            for b in range(1, d + 1):
                if fb[b] == b and (b, a) in two:
                    return k, a, b
    raise SubstitutionError("no admissible seed found")


class Periodicity(Enum):
    YES = "Yes"
    PERIODIC_DETECTED = "PeriodicDetected"
    UNKNOWN = "Unknown"


def periodicity_heuristic(phi: Substitution, window: int = 64, field=None) -> Periodicity:
    """Non-periodicity verdict: irrational inflation, else a complexity test.

    ``Yes`` means no translation-periodic tiling exists. For integer inflation
    a factor count p(n) <= n reveals an eventually periodic language.
    """
    if field is None:
        from .field import pf_field

        field = pf_field(abelianization(phi))
    if field.degree >= 2:
        return Periodicity.YES
    for n, p in enumerate(complexity(phi, window), 1):
        if p <= n:
            return Periodicity.PERIODIC_DETECTED
    return Periodicity.UNKNOWN

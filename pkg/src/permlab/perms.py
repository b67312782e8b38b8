"""Permutations of finite degree with the exact normalized Hamming metric.

Conventions used throughout the package:

* a permutation of degree n acts on the points 0..n-1 internally; all text
  I/O (cycle notation, one-line notation) is 1-based,
* composition applies the right factor first: ``(p * q)(i) == p(q(i))``,
* all metric values are exact ``fractions.Fraction`` numbers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceededError

__all__ = [
    "Permutation",
    "CycleType",
    "LambdaProfile",
    "identity",
    "parse_permutation",
    "random_permutation",
    "hamming_distance",
    "centralizer_order_sym",
    "conjugacy_test",
    "find_conjugator",
    "min_conjugate_distance",
    "evaluate_word",
]


@dataclass(frozen=True, slots=True)
class Permutation:
    """An element of Sym(n), stored as the tuple of images of 0..n-1."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be at least 1")
        seen = [False] * n
        for x in self.images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {self.images}")
            seen[x] = True

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, i: int) -> int:
        """Image of the 0-based point i."""
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, right factor applied first: (p*q)(i) = p(q(i))."""
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}")
        p = self.images
        return Permutation(tuple(p[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles as 0-based tuples, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> "CycleType":
        counts: dict[int, int] = {}
        for cyc in self.cycles(include_fixed=True):
            counts[len(cyc)] = counts.get(len(cyc), 0) + 1
        return CycleType(tuple(sorted(counts.items())))

    def fixed_point_count(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def is_even(self) -> bool:
        # parity = (degree - number of cycles) mod 2
        return (self.degree - len(self.cycles(include_fixed=True))) % 2 == 0

    def order(self) -> int:
        return lcm(*(length for length, _ in self.cycle_type().pairs)) if self.degree else 1

    def to_cycle_string(self) -> str:
        """1-based cycle notation; fixed points omitted; identity prints as '()'."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join(
            "(" + " ".join(str(i + 1) for i in cyc) + ")" for cyc in cycs)

    def to_one_line_string(self) -> str:
        return "[" + ",".join(str(i + 1) for i in self.images) + "]"

    def __str__(self) -> str:
        return self.to_cycle_string()


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


_DEG_RE = re.compile(r"deg\s*=\s*(\d+)")
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation ``(1 2)(3 4)`` or one-line ``[2,1,4,3]``.

    The degree is the largest moved point unless given explicitly, either via
    the ``degree`` argument or a trailing ``deg=n`` attribute in the text.
    The bare identity ``()`` needs one of the two.
    """
    s = text.strip()
    m = _DEG_RE.search(s)
    if m:
        attr_deg = int(m.group(1))
        if degree is not None and degree != attr_deg:
            raise ValueError(
                f"conflicting degrees: deg={attr_deg} in text vs {degree}")
        degree = attr_deg
        s = s[:m.start()] + s[m.end():]
        s = s.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unterminated one-line permutation: {text!r}")
        body = s[1:-1].strip()
        if not body:
            raise ValueError("empty one-line permutation")
        try:
            images = [int(tok) - 1 for tok in body.replace(",", " ").split()]
        except ValueError:
            raise ValueError(f"bad one-line permutation: {text!r}") from None
        if degree is not None and degree != len(images):
            raise ValueError(
                f"one-line permutation has degree {len(images)}, expected {degree}")
        return Permutation(tuple(images))
    # cycle notation
    if s and (not s.startswith("(") or s.rstrip()[-1:] != ")"):
        raise ValueError(f"unrecognized permutation syntax: {text!r}")
    rest = _CYCLE_RE.sub("", s).strip()
    if rest:
        raise ValueError(f"stray text in cycle notation: {rest!r}")
    cycles = []
    maxpt = 0
    for m in _CYCLE_RE.finditer(s):
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue  # "()" is the explicit identity cycle
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise ValueError(f"bad cycle {m.group(0)!r}") from None
        if any(p < 1 for p in pts):
            raise ValueError(f"points are 1-based, got {m.group(0)!r}")
        cycles.append([p - 1 for p in pts])
        maxpt = max(maxpt, max(pts))
    if degree is None:
        if maxpt == 0:
            raise ValueError(
                "degree of the identity is not inferable; pass degree or a deg=n attribute")
        degree = maxpt
    if maxpt > degree:
        raise ValueError(f"point {maxpt} exceeds degree {degree}")
    images = list(range(degree))
    touched = [False] * degree
    for cyc in cycles:
        for p in cyc:
            if touched[p]:
                raise ValueError(f"point {p + 1} repeated in {text!r}")
            touched[p] = True
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return Permutation(tuple(images))


def random_permutation(rng, n: int) -> Permutation:
    """Uniform element of Sym(n) drawn from the given random.Random."""
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


# ---------------------------------------------------------------------------
# metric


def hamming_distance(p: Permutation, q: Permutation) -> Fraction:
    """Normalized Hamming distance |{i : p(i) != q(i)}| / n, exact."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    diff = sum(1 for a, b in zip(p.images, q.images) if a != b)
    return Fraction(diff, p.degree)


# ---------------------------------------------------------------------------
# cycle types


@dataclass(frozen=True, slots=True)
class CycleType:
    """Multiset of cycle lengths, stored as sorted (length, multiplicity) pairs.

    Fixed points are included, so the weighted lengths always sum to the degree.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 0
        for length, mult in self.pairs:
            if length <= last or mult < 1:
                raise ValueError(f"malformed cycle type: {self.pairs}")
            last = length

    @property
    def degree(self) -> int:
        return sum(length * mult for length, mult in self.pairs)

    def multiplicity(self, length: int) -> int:
        for k, m in self.pairs:
            if k == length:
                return m
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def all_lengths_odd_and_distinct(self) -> bool:
        """The split criterion for conjugacy classes of even permutations."""
        return all(k % 2 == 1 and m == 1 for k, m in self.pairs)

    def __str__(self) -> str:
        return " ".join(f"{k}^{m}" for k, m in reversed(self.pairs))


@dataclass(frozen=True, slots=True)
class LambdaProfile:
    """Mass profile of a cycle type: length k carries weight k*m_k/n."""

    entries: tuple[tuple[int, Fraction], ...]
    degree: int

    @classmethod
    def of(cls, ct: CycleType) -> "LambdaProfile":
        n = ct.degree
        return cls(tuple((k, Fraction(k * m, n)) for k, m in ct.pairs), n)

    def fraction(self, length: int) -> Fraction:
        for k, f in self.entries:
            if k == length:
                return f
        return Fraction(0)

    @property
    def fixed_point_fraction(self) -> Fraction:
        return self.fraction(1)

    def total(self) -> Fraction:
        return sum((f for _, f in self.entries), Fraction(0))


def lambda_profile(p: Permutation) -> LambdaProfile:
    return LambdaProfile.of(p.cycle_type())


def centralizer_order_sym(ct: CycleType) -> int:
    """Order of the centralizer in Sym(n) of any element with this cycle type."""
    order = 1
    for k, m in ct.pairs:
        order *= k ** m * factorial(m)
    return order


# ---------------------------------------------------------------------------
# conjugacy


def find_conjugator(p: Permutation, q: Permutation) -> Permutation | None:
    """Some x with x p x^-1 = q, or None when the cycle types differ.

    The conjugator is built by aligning the cycles of equal length in a fixed
    order, so the result is deterministic.
    """
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    if p.cycle_type() != q.cycle_type():
        return None
    by_len_p: dict[int, list[tuple[int, ...]]] = {}
    by_len_q: dict[int, list[tuple[int, ...]]] = {}
    for cyc in p.cycles(include_fixed=True):
        by_len_p.setdefault(len(cyc), []).append(cyc)
    for cyc in q.cycles(include_fixed=True):
        by_len_q.setdefault(len(cyc), []).append(cyc)
    images = [0] * p.degree
    for length, cycs_p in by_len_p.items():
        for cp, cq in zip(cycs_p, by_len_q[length]):
            for a, b in zip(cp, cq):
                images[a] = b
    return Permutation(tuple(images))


def conjugacy_test(p: Permutation, q: Permutation, ambient: str = "sym") -> bool:
    """Conjugacy inside Sym(n) or Alt(n).

    In Sym(n) this is cycle-type equality.  In Alt(n) both elements must be
    even; a class splits exactly when all cycle lengths are odd and distinct,
    and then the answer is decided by the parity of a conjugator (all
    conjugators share one parity in the split case).
    """
    if ambient not in ("sym", "alt"):
        raise ValueError(f"ambient must be 'sym' or 'alt', got {ambient!r}")
    x = find_conjugator(p, q)
    if x is None:
        return False
    if ambient == "sym":
        return True
    if not (p.is_even() and q.is_even()):
        raise ValueError("alt-conjugacy is only defined for even permutations")
    if not p.cycle_type().all_lengths_odd_and_distinct():
        return True  # the Sym-centralizer contains an odd element
    return x.is_even()


def min_conjugate_distance(g: Permutation, h: Permutation, cap: int = 8) -> Fraction:
    """min over x in Sym(n) of d(g, x h x^-1), by exhaustive search."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    n = g.degree
    if n > cap:
        raise CapExceededError(
            f"min_conjugate_distance scans all of Sym({n}); cap is {cap}")
    gi = g.images
    hi = h.images
    best = n + 1
    for x in itertools.permutations(range(n)):
        diff = 0
        for i in range(n):
            # (x h x^-1)(x(i)) = x(h(i)), compared against g at the point x(i)
            if x[hi[i]] != gi[x[i]]:
                diff += 1
                if diff >= best:
                    break
        if diff < best:
            best = diff
            if best == 0:
                break
    return Fraction(best, n)


# ---------------------------------------------------------------------------
# word evaluation
#
# word  := product
# product := factor { "*" factor }
# factor := base [ "^-1" ]
# base  := symbol | "1" | "[" word "," word "]" | "(" word ")"

_WORD_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|\^-1|[][(),*1])")


def _tokenize_word(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token in word at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _WordParser:
    def __init__(self, tokens: list[str], assignment: Mapping[str, Permutation],
                 degree: int | None):
        self.tokens = tokens
        self.pos = 0
        self.assignment = assignment
        self.degree = degree

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of word")
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    def product(self) -> Permutation:
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Permutation:
        value = self.base()
        if self.peek() == "^-1":
            self.take()
            value = value.inverse()
        return value

    def base(self) -> Permutation:
        tok = self.take()
        if tok == "1":
            if self.degree is None:
                raise ValueError(
                    "cannot size the identity: empty assignment and no degree given")
            return identity(self.degree)
        if tok == "(":
            value = self.product()
            self.take(")")
            return value
        if tok == "[":
            a = self.product()
            self.take(",")
            b = self.product()
            self.take("]")
            return a * b * a.inverse() * b.inverse()
        if re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", tok):
            try:
                return self.assignment[tok]
            except KeyError:
                raise ValueError(f"unbound symbol {tok!r} in word") from None
        raise ValueError(f"unexpected token {tok!r} in word")


def evaluate_word(word: str, assignment: Mapping[str, Permutation],
                  degree: int | None = None) -> Permutation:
    """Evaluate a formal word (symbols, ``*``, ``^-1``, ``1``, ``[a,b]``).

    The commutator is ``[a,b] = a b a^-1 b^-1``.  All assigned permutations
    must share one degree.  Unicode ``·`` and ``⁻¹`` are accepted as aliases.
    """
    degrees = {p.degree for p in assignment.values()}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise ValueError(f"mixed degrees in assignment: {sorted(degrees)}")
    common = degrees.pop() if degrees else None
    text = word.replace("·", "*").replace("⁻¹", "^-1")
    parser = _WordParser(_tokenize_word(text), assignment, common)
    value = parser.product()
    if parser.peek() is not None:
        raise ValueError(f"trailing tokens in word: {parser.tokens[parser.pos:]}")
    return value

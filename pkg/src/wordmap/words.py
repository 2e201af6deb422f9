"""Words in free-group variables with optional group-element parameters.

A word is a reduced sequence of letters (symbol, exponent).  Positive
symbols are 1-based variable indices; negative symbols encode parameter
slots, with slot j stored as -(j + 1) and written ``gj``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import ArityMismatchError, MissingParameterError, WordSyntaxError
from .groups import GroupTable

MAX_EXPONENT = 10**6
MAX_LETTERS = 10**6

_VAR_ALIASES = {"y": 2, "z": 3}


def _reduce(letters) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for sym, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == sym:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([sym, exp])
    return tuple((s, e) for s, e in stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; instances are immutable."""

    arity: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for sym, exp in self.letters:
            if sym == 0 or exp == 0:
                raise ValueError(f"malformed letter ({sym}, {exp})")
            if sym > self.arity:
                raise ValueError(f"variable x{sym} exceeds arity {self.arity}")
            if sym == prev:
                raise ValueError("word is not freely reduced")
            prev = sym

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @property
    def parameter_slots(self) -> tuple[int, ...]:
        return tuple(sorted({-s - 1 for s, _ in self.letters if s < 0}))

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({s for s, _ in self.letters if s > 0}))

    def with_arity(self, arity: int) -> "Word":
        if arity < max((s for s, _ in self.letters if s > 0), default=0):
            raise ArityMismatchError(f"arity {arity} too small for {self}")
        return Word(arity, self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(max(self.arity, other.arity), _reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(self.arity, tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, e: int) -> "Word":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        acc = Word(self.arity, ())
        while e:
            if e & 1:
                acc = acc * base
                if len(acc.letters) > MAX_LETTERS:
                    raise ValueError("word power grows past the letter limit")
            base = base * base
            e >>= 1
            if e and len(base.letters) > MAX_LETTERS:
                raise ValueError("word power grows past the letter limit")
        return acc

    def __str__(self) -> str:
        if not self.letters:
            return "()"
        parts = []
        for sym, exp in self.letters:
            name = f"x{sym}" if sym > 0 else f"g{-sym - 1}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)


def empty_word(arity: int = 0) -> Word:
    return Word(arity, ())


def variable(i: int, arity: int | None = None) -> Word:
    return Word(arity if arity is not None else i, ((i, 1),))


def commutator_word(u: Word, v: Word) -> Word:
    return u.inverse() * v.inverse() * u * v


# ---------------------------------------------------------------------------
# Parsing

_ATOM_STARTERS = "(["


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def read_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            self.pos = start
            raise self.error("expected an integer")
        while self.peek().isdigit():
            self.pos += 1
        value = int(self.text[start:self.pos])
        if abs(value) > MAX_EXPONENT:
            self.pos = start
            raise self.error(f"exponent {value} exceeds the bound {MAX_EXPONENT}")
        return value

    def read_index(self) -> int | None:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start:self.pos]) if self.pos > start else None

    def parse_atom(self) -> list[tuple[int, int]]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            letters = self.parse_sequence(stop=")")
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return letters
        if ch == "[":
            self.pos += 1
            left = self.parse_sequence(stop=",")
            if self.peek() != ",":
                raise self.error("expected ',' inside commutator")
            self.pos += 1
            right = self.parse_sequence(stop="]")
            if self.peek() != "]":
                raise self.error("expected ']'")
            self.pos += 1
            inv = lambda ls: [(s, -e) for s, e in reversed(ls)]
            return inv(left) + inv(right) + left + right
        if ch == "x":
            self.pos += 1
            idx = self.read_index()
            if idx is None:
                return [(1, 1)]
            if idx < 1:
                self.pos -= 1
                raise self.error(f"variable index must be >= 1, got x{idx}")
            return [(idx, 1)]
        if ch in _VAR_ALIASES:
            self.pos += 1
            return [(_VAR_ALIASES[ch], 1)]
        if ch == "g":
            self.pos += 1
            slot = self.read_index()
            if slot is None:
                raise self.error("parameter needs a slot number, e.g. g0")
            return [(-slot - 1, 1)]
        raise self.error(f"unexpected character {ch!r}")

    def parse_term(self) -> list[tuple[int, int]]:
        letters = self.parse_atom()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            e = self.read_int()
            if len(letters) == 1:
                sym, exp = letters[0]
                letters = [(sym, exp * e)]
            else:
                arity = max((s for s, _ in letters if s > 0), default=0)
                word = Word(arity, _reduce(letters))
                letters = list((word**e).letters)
        return letters

    def parse_sequence(self, stop: str = "") -> list[tuple[int, int]]:
        letters: list[tuple[int, int]] = []
        while True:
            self.skip_ws()
            ch = self.peek()
            if not ch or ch in stop or ch in ",)]":
                return letters
            if ch not in _ATOM_STARTERS and not (ch.isalpha()):
                raise self.error(f"unexpected character {ch!r}")
            letters.extend(self.parse_term())


def parse_word(text: str, arity_hint: int | None = None) -> Word:
    """Parse a word string; see the grammar in the README.

    The arity is the largest variable index used, or ``arity_hint`` if that
    is larger; a hint smaller than a used index is an error.
    """
    parser = _Parser(text)
    letters = parser.parse_sequence()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error(f"unexpected character {parser.peek()!r}")
    reduced = _reduce(letters)
    arity = max((s for s, _ in reduced if s > 0), default=0)
    if arity_hint is not None:
        if arity_hint < arity:
            raise ArityMismatchError(
                f"arity hint {arity_hint} is below the largest variable index {arity}"
            )
        arity = arity_hint
    return Word(arity, reduced)


# ---------------------------------------------------------------------------
# Semantics

def _resolve(word: Word, assignment, params) -> list[int]:
    if len(assignment) != word.arity:
        raise ArityMismatchError(
            f"assignment of length {len(assignment)} for a word of arity {word.arity}"
        )
    bases = []
    for sym, _ in word.letters:
        if sym > 0:
            bases.append(assignment[sym - 1])
        else:
            slot = -sym - 1
            if slot >= len(params):
                raise MissingParameterError(
                    f"word uses parameter g{slot} but only {len(params)} were given"
                )
            bases.append(params[slot])
    return bases


def evaluate(word: Word, G: GroupTable, assignment, params=()) -> int:
    """Evaluate the word at one assignment of group elements."""
    bases = _resolve(word, assignment, params)
    acc = G.identity
    for (sym, exp), base in zip(word.letters, bases):
        acc = int(G.mul[acc, G.power(base, exp)])
    return acc


def exponent_profile(word: Word) -> tuple[int, ...]:
    """Per-variable exponent sums, one entry per variable up to the arity."""
    sums = [0] * word.arity
    for sym, exp in word.letters:
        if sym > 0:
            sums[sym - 1] += exp
    return tuple(sums)


def gcd_with_exponent(word: Word, G: GroupTable) -> int:
    """gcd of all exponent sums together with the group exponent."""
    g = G.exponent()
    for s in exponent_profile(word):
        g = gcd(g, abs(s))
    return g


def substitute_power(word: Word, k: int) -> Word:
    """Replace every variable x_i by x_i^k, leaving parameters alone."""
    letters = [(s, e * k) if s > 0 else (s, e) for s, e in word.letters]
    return Word(word.arity, _reduce(letters))


def is_law(word: Word, G: GroupTable) -> bool:
    """True when the word evaluates to the identity on every assignment."""
    if word.parameter_slots:
        raise ValueError("laws are defined for parameter-free words")
    n, N = word.arity, G.order
    if n == 0:
        return True
    # Vectorized sweep over all |G|^n assignments, in blocks.
    total = N**n
    block = 1 << 16
    m = G.mul
    powers: dict[int, np.ndarray] = {}
    for _, e in word.letters:
        if e not in powers:
            base = G.inv.astype(np.int64) if e < 0 else np.arange(N, dtype=np.int64)
            acc = np.zeros(N, dtype=np.int64)
            k = abs(e)
            while k:
                if k & 1:
                    acc = m[acc, base]
                base = m[base, base]
                k >>= 1
            powers[e] = acc
    var_pos = {v: i for i, v in enumerate(range(1, n + 1))}
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        acc = np.zeros(idx.size, dtype=np.int64)
        for sym, exp in word.letters:
            col = (idx // N ** (n - var_pos[sym] - 1)) % N
            acc = m[acc, powers[exp][col]]
        if acc.any():
            return False
    return True


# ---------------------------------------------------------------------------
# Random words

def random_word(arity: int, max_length: int, rng: random.Random) -> Word:
    """A random reduced word of length between 1 and max_length."""
    if arity < 1 or max_length < 1:
        raise ValueError("need arity >= 1 and max_length >= 1")
    target = rng.randint(1, max_length)
    letters: list[tuple[int, int]] = []
    length = 0
    while length < target:
        sym = rng.randint(1, arity)
        exp = rng.choice((1, -1))
        if letters and letters[-1][0] == sym and letters[-1][1] * exp < 0:
            continue  # would cancel; keep the length on target
        letters.append((sym, exp))
        length += 1
    return Word(arity, _reduce(letters))


def random_commutator_word(arity: int, max_length: int, rng: random.Random) -> Word:
    """A random nonempty commutator [u, v]; exponent sums are all zero."""
    arity = max(arity, 2)
    while True:
        u = random_word(arity, max(1, max_length // 4), rng)
        v = random_word(arity, max(1, max_length // 4), rng)
        w = commutator_word(u, v)
        if w.letters and w.length <= max_length:
            return w

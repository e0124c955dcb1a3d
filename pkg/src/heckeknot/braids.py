"""Mixed braid words: the braid group of the solid torus.

A mixed braid on n moving strands has generators

    t            the loop of the first moving strand around the fixed axis
    s1 .. s(n-1) the elementary crossings of adjacent moving strands

A letter is a pair ``(gen, exp)`` with ``gen = 0`` for t and ``gen = i`` for
s_i, and ``exp`` in {+1, -1}.  The strand count is explicit on the word:
embedding into a bigger braid group is a deliberate operation, because the
invariant's normalization depends on it.

Grammar accepted by ``parse`` (items separated by '.' or whitespace):

    WORD := e | ITEM ((.|ws) ITEM)*
    ITEM := GEN ('^' SINT)?
    GEN  := 't' | 's' UINT | 't'' UINT

``x^k`` with |k| > 1 expands into |k| letters.  ``t'i^k`` is parser-level
sugar for the conjugate loop of strand i+1 and expands to
``si ... s1 t^k s1^-1 ... si^-1``; the data model knows only t and s_i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Tuple

Letter = Tuple[int, int]  # (generator index, +-1); generator 0 is t


class BraidSyntaxError(ValueError):
    """Malformed braid word text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at item {position})")
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[Letter, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be >= 1")
        for gen, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError("letter exponents are +-1")
            if gen < 0 or gen >= self.strands:
                raise ValueError(f"generator s{gen} needs more than {self.strands} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((g, -e) for g, e in reversed(self.letters)))

    def embed(self, strands: int) -> "BraidWord":
        if strands < self.strands:
            raise ValueError("cannot shrink the strand count")
        return BraidWord(strands, self.letters)


def t_prime_letters(i: int, k: int) -> Tuple[Letter, ...]:
    """Letters of the conjugate loop t'_i^k = s_i..s_1 t^k s_1^-1..s_i^-1."""
    sgn = 1 if k > 0 else -1
    head = tuple((j, 1) for j in range(i, 0, -1))
    tail = tuple((j, -1) for j in range(1, i + 1))
    return head + ((0, sgn),) * abs(k) + tail


def parse(text: str, strands: int | None = None) -> BraidWord:
    """Parse a braid word; infer strands as 1 + max s-index when not given."""
    items = [it for it in text.replace(".", " ").split() if it]
    letters: list[Letter] = []
    max_index = 0
    for pos, item in enumerate(items):
        body, _, exp_text = item.partition("^")
        if exp_text:
            try:
                k = int(exp_text)
            except ValueError:
                raise BraidSyntaxError(f"bad exponent {exp_text!r}", pos) from None
        else:
            k = 1
        if k == 0:
            continue
        if body == "t":
            letters.extend([(0, 1 if k > 0 else -1)] * abs(k))
        elif body.startswith("t'"):
            try:
                i = int(body[2:])
            except ValueError:
                raise BraidSyntaxError(f"bad loop index in {body!r}", pos) from None
            if i < 0:
                raise BraidSyntaxError("loop index must be >= 0", pos)
            letters.extend(t_prime_letters(i, k))
            max_index = max(max_index, i)
        elif body.startswith("s"):
            try:
                i = int(body[1:])
            except ValueError:
                raise BraidSyntaxError(f"bad generator {body!r}", pos) from None
            if i < 1:
                raise BraidSyntaxError("crossing index must be >= 1", pos)
            letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
            max_index = max(max_index, i)
        else:
            raise BraidSyntaxError(f"unknown generator {body!r}", pos)
    n = strands if strands is not None else max(1, max_index + 1)
    if strands is not None and max_index >= strands:
        raise BraidSyntaxError(f"generator index {max_index} out of range for {strands} strands",
                               len(items) - 1)
    return BraidWord(n, tuple(letters))


def to_string(word: BraidWord) -> str:
    parts = []
    for gen, exp in word.letters:
        name = "t" if gen == 0 else f"s{gen}"
        parts.append(name if exp == 1 else f"{name}^-1")
    return " . ".join(parts)


def exponent_sum(word: BraidWord) -> int:
    """Sum of crossing exponents; loop letters do not count."""
    return sum(exp for gen, exp in word.letters if gen != 0)


def conjugate(word: BraidWord, g: BraidWord) -> BraidWord:
    if word.strands != g.strands:
        raise ValueError("conjugation needs matching strand counts")
    return g.inverse() * word * g


def stabilize(word: BraidWord, sign: int) -> BraidWord:
    """Append s_n^(+-1) on one more strand; the Markov stabilization move."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    n = word.strands
    return BraidWord(n + 1, word.letters + ((n, sign),))


def free_reduce(word: BraidWord) -> BraidWord:
    out: list[Letter] = []
    for letter in word.letters:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return BraidWord(word.strands, tuple(out))


def random_word(n: int, length: int, max_t_run: int = 3, seed: int = 0) -> BraidWord:
    """Seeded random word, uniform over {t^+-1, s_i^+-1} per letter.

    max_t_run caps consecutive loop letters of the same sign; long loop runs
    are the expensive direction for the trace and add nothing to coverage.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    gens = [(0, 1), (0, -1)] + [(i, e) for i in range(1, n) for e in (1, -1)]
    letters: list[Letter] = []
    run = 0
    while len(letters) < length:
        g = rng.choice(gens)
        if g[0] == 0:
            if letters and letters[-1] == g:
                run += 1
            else:
                run = 1
            if run > max_t_run:
                continue
        else:
            run = 0
        letters.append(g)
    return BraidWord(n, tuple(letters))


def random_words(n: int, length: int, count: int, max_t_run: int = 3,
                 seed: int = 0) -> Iterator[BraidWord]:
    for i in range(count):
        yield random_word(n, length, max_t_run, seed=seed * 100003 + i)

"""The quotient algebras of the mixed braid group: elements and rewriting.

The algebra at level n is generated by g_1..g_{n-1} (images of the
crossings, subject to the braid relations and g_i^2 = (q-1)g_i + q) and the
loop generator t.  Two families of loop elements appear:

    t_0 = t,  t_i = g_i..g_1 t g_1..g_i        commuting loops
    t'_0 = t, t'_i = g_i..g_1 t g_1^-1..g_i^-1  conjugate loops

The commuting loops pairwise commute, so the working normal form (the
"sig2" flavor) writes every element as a linear combination of words

    t_{i_1}^{k_1} ... t_{i_r}^{k_r} * (A-type canonical word)

with strictly increasing loop indices.  The A-type canonical word is a
product of descending blocks g_h g_{h-1} .. g_{h-r} with strictly
increasing heads; such words biject with permutations, which is how the
multiplication routine recanonicalizes them.

Representation:

    AWord  = tuple of (head, r) blocks, heads strictly increasing, 0<=r<head
    TVec   = tuple of (index, exponent != 0), indices strictly increasing
    Word   = (TVec, AWord)
    Element: {Word: Scalar} at a fixed level and mode

Mode is ``None`` for the generic algebra (t satisfies no relation) or an
integer d >= 1 for the cyclotomic quotient t^d = a_{d-1} t^{d-1} + .. + a_0.
In cyclotomic mode the engine keeps the exponent of t_0 reduced into
0..d-1 eagerly; exponents of t_i for i >= 1 are left as integers, because
the degree-d relation does NOT transfer verbatim to the commuting loops
(g_1 t g_1 already violates it at d = 1) -- those exponents are contracted
soundly by the trace through the conjugate loops, which do satisfy it.

Right multiplication by a single generator letter is the rewriting
primitive: a crossing letter touches only the A-part, and a loop letter is
pushed leftward through the A-part with the slide relations

    g_i t_i     = q t_{i-1} g_i + (q-1) t_i
    g_i t_{i-1} = q^-1 t_i g_i + (q^-1 - 1) t_i
    (and their inverse-exponent companions; g_i commutes with t_k otherwise)

which terminates because the loop letter moves strictly left.
"""

from __future__ import annotations

from itertools import permutations
from typing import Dict, Iterator, List, Tuple

from .braids import BraidWord
from .scalars import ONE, ZERO, Scalar, a_param, qpow

AWord = Tuple[Tuple[int, int], ...]
TVec = Tuple[Tuple[int, int], ...]
Word = Tuple[TVec, AWord]
Mode = int | None

UNIT_WORD: Word = ((), ())

_Q = qpow(1)
_QINV = qpow(-1)
_QM1 = qpow(1) - ONE          # q - 1
_QINVM1 = qpow(-1) - ONE      # q^-1 - 1


def mode_key(mode: Mode) -> str:
    return "infinity" if mode is None else f"cyclo:{mode}"


# ---------------------------------------------------------------------------
# Permutations <-> canonical block words.

def perm_mul(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    # Word order: p first, then q (braid diagrams stacked top to bottom).
    return tuple(q[x] for x in p)


def perm_inverse(p: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def inversions(p: Tuple[int, ...]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def _gen_perm(n: int, i: int) -> Tuple[int, ...]:
    # s_i swaps positions i-1, i (0-based).
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def block_perm(n: int, head: int, r: int) -> Tuple[int, ...]:
    p = tuple(range(n))
    for j in range(head, head - r - 1, -1):
        p = perm_mul(p, _gen_perm(n, j))
    return p


def aword_to_perm(aword: AWord, n: int) -> Tuple[int, ...]:
    p = tuple(range(n))
    for head, r in aword:
        p = perm_mul(p, block_perm(n, head, r))
    return p


def perm_to_aword(p: Tuple[int, ...]) -> AWord:
    """Unique canonical block word of a permutation (peel largest head)."""
    n = len(p)
    blocks: List[Tuple[int, int]] = []
    work = p
    while True:
        m = -1
        for j in range(n - 1, -1, -1):
            if work[j] != j:
                m = j
                break
        if m < 0:
            break
        r = m - work[m] - 1
        blocks.append((m, r))
        work = perm_mul(work, perm_inverse(block_perm(n, m, r)))
    return tuple(reversed(blocks))


_AMUL_CACHE: Dict[Tuple[AWord, int, int], Tuple[Tuple[Scalar, AWord], ...]] = {}


def aword_times_gen(aword: AWord, i: int, n: int) -> Tuple[Tuple[Scalar, AWord], ...]:
    """Canonical A-word times g_i: the quadratic-relation case split."""
    key = (aword, i, n)
    hit = _AMUL_CACHE.get(key)
    if hit is not None:
        return hit
    p = aword_to_perm(aword, n)
    ps = perm_mul(p, _gen_perm(n, i))
    if inversions(ps) > inversions(p):
        out: Tuple[Tuple[Scalar, AWord], ...] = ((ONE, perm_to_aword(ps)),)
    else:
        out = ((_QM1, aword), (_Q, perm_to_aword(ps)))
    _AMUL_CACHE[key] = out
    return out


_AFOLD_CACHE: Dict[Tuple[Tuple[int, ...], int], Tuple[Tuple[Scalar, AWord], ...]] = {}


def fold_gen_letters(letters: Tuple[int, ...], n: int) -> Tuple[Tuple[Scalar, AWord], ...]:
    """Normalize a plain product of g-letters into canonical A-words."""
    key = (letters, n)
    hit = _AFOLD_CACHE.get(key)
    if hit is not None:
        return hit
    acc: List[Tuple[Scalar, AWord]] = [(ONE, ())]
    for j in letters:
        nxt: Dict[AWord, Scalar] = {}
        for c, aw in acc:
            for c2, aw2 in aword_times_gen(aw, j, n):
                s = nxt.get(aw2)
                nxt[aw2] = c * c2 if s is None else s + c * c2
        acc = [(c, aw) for aw, c in nxt.items() if not c.is_zero()]
    out = tuple(acc)
    _AFOLD_CACHE[key] = out
    return out


def aword_letters(aword: AWord) -> Tuple[int, ...]:
    out: List[int] = []
    for head, r in aword:
        out.extend(range(head, head - r - 1, -1))
    return tuple(out)


# ---------------------------------------------------------------------------
# Cyclotomic reduction of powers of t itself (index 0 only; see module doc).

_CYCLO_CACHE: Dict[Tuple[int, int], Tuple[Scalar, ...]] = {}


def cyclo_power_coeffs(m: int, d: int) -> Tuple[Scalar, ...]:
    """Coefficients of t^m on 1, t, .., t^{d-1} modulo the degree-d relation."""
    key = (m, d)
    hit = _CYCLO_CACHE.get(key)
    if hit is not None:
        return hit
    if 0 <= m < d:
        v = tuple(ONE if j == m else ZERO for j in range(d))
    elif m > 0:
        prev = cyclo_power_coeffs(m - 1, d)
        top = prev[d - 1]
        v = tuple(
            (prev[j - 1] if j else ZERO) + top * a_param(j)
            for j in range(d)
        )
    else:
        prev = cyclo_power_coeffs(m + 1, d)
        low = prev[0] * a_param(0).invert()
        v = tuple(
            (prev[j + 1] if j < d - 1 else ZERO)
            + (low if j == d - 1 else -(low * a_param(j + 1)))
            for j in range(d)
        )
    _CYCLO_CACHE[key] = v
    return v


def _tvec_set(tvec: TVec, index: int, exp: int) -> TVec:
    rest = tuple(entry for entry in tvec if entry[0] != index)
    if exp == 0:
        return rest
    return tuple(sorted(rest + ((index, exp),)))


def _tvec_get(tvec: TVec, index: int) -> int:
    for i, k in tvec:
        if i == index:
            return k
    return 0


def merge_loop_power(tvec: TVec, index: int, delta: int,
                     mode: Mode) -> Tuple[Tuple[Scalar, TVec], ...]:
    """Multiply the commuting-loop monomial by t_index^delta."""
    new = _tvec_get(tvec, index) + delta
    if mode is None or index >= 1 or 0 <= new < mode:
        return ((ONE, _tvec_set(tvec, index, new)),)
    coeffs = cyclo_power_coeffs(new, mode)
    return tuple(
        (c, _tvec_set(tvec, 0, j))
        for j, c in enumerate(coeffs)
        if not c.is_zero()
    )


# ---------------------------------------------------------------------------
# The loop-letter push through an A-word.

_PUSH_CACHE: Dict[Tuple[AWord, int, int], Tuple[Tuple[Scalar, int, AWord], ...]] = {}


def push_loop_letter(aword: AWord, eps: int, n: int) -> Tuple[Tuple[Scalar, int, AWord], ...]:
    """Move a single t^eps letter from the right of an A-word to its left.

    Returns (coefficient, final loop index, normalized residual A-word)
    triples: aword * t^eps = sum coef * t_k^eps * residual.
    """
    key = (aword, eps, n)
    hit = _PUSH_CACHE.get(key)
    if hit is not None:
        return hit
    letters = aword_letters(aword)
    last = len(letters) - 1
    # DFS over the slide relations; `removed` is a bitmask of consumed letters.
    final: Dict[Tuple[int, int], Scalar] = {}
    stack: List[Tuple[int, int, Scalar, int]] = [(last, 0, ONE, 0)]
    while stack:
        pos, k, coef, removed = stack.pop()
        if pos < 0:
            fkey = (k, removed)
            prev = final.get(fkey)
            final[fkey] = coef if prev is None else prev + coef
            continue
        j = letters[pos]
        if k > j or k < j - 1:
            stack.append((pos - 1, k, coef, removed))
        elif k == j:
            if eps == 1:
                stack.append((pos - 1, j - 1, coef * _Q, removed))
                stack.append((pos - 1, j, coef * _QM1, removed | (1 << pos)))
            else:
                stack.append((pos - 1, j - 1, coef * _QINV, removed))
                stack.append((pos - 1, j - 1, coef * _QINVM1, removed | (1 << pos)))
        else:  # k == j - 1
            if eps == 1:
                stack.append((pos - 1, j, coef * _QINV, removed))
                stack.append((pos - 1, j, coef * _QINVM1, removed | (1 << pos)))
            else:
                stack.append((pos - 1, j, coef * _Q, removed))
                stack.append((pos - 1, j - 1, coef * _QM1, removed | (1 << pos)))
    out: List[Tuple[Scalar, int, AWord]] = []
    for (k, removed), coef in final.items():
        if coef.is_zero():
            continue
        kept = tuple(letters[p] for p in range(len(letters)) if not removed & (1 << p))
        for c2, aw2 in fold_gen_letters(kept, n):
            out.append((coef * c2, k, aw2))
    result = tuple(out)
    _PUSH_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# Elements.

class Element:
    """Linear combination of canonical words at a fixed level and mode."""

    __slots__ = ("level", "mode", "terms", "flavor")

    def __init__(self, level: int, mode: Mode, terms: Dict[Word, Scalar] | None = None,
                 flavor: str = "sig2"):
        self.level = level
        self.mode = mode
        self.terms = terms if terms is not None else {}
        self.flavor = flavor

    # -- constructors --------------------------------------------------------

    @staticmethod
    def unit(level: int, mode: Mode) -> "Element":
        return Element(level, mode, {UNIT_WORD: ONE})

    @staticmethod
    def zero(level: int, mode: Mode) -> "Element":
        return Element(level, mode, {})

    @staticmethod
    def from_word(level: int, mode: Mode, tvec: TVec, aword: AWord,
                  coef: Scalar = ONE) -> "Element":
        # Creating a word directly must respect the eager t_0 reduction.
        e0 = _tvec_get(tvec, 0)
        if mode is not None and not 0 <= e0 < mode:
            base = _tvec_set(tvec, 0, 0)
            terms: Dict[Word, Scalar] = {}
            for j, c in enumerate(cyclo_power_coeffs(e0, mode)):
                if not c.is_zero():
                    terms[(_tvec_set(base, 0, j), aword)] = coef * c
            return Element(level, mode, terms)
        return Element(level, mode, {(tvec, aword): coef})

    @staticmethod
    def gen(level: int, mode: Mode, i: int, eps: int = 1) -> "Element":
        """The generator image g_i^eps."""
        if not 1 <= i < level:
            raise ValueError(f"g_{i} does not exist at level {level}")
        e = Element(level, mode, {((), ((i, 0),)): ONE})
        return e if eps == 1 else Element.unit(level, mode).rmul_gen(i, -1)

    @staticmethod
    def loop(level: int, mode: Mode, i: int, k: int) -> "Element":
        """The commuting loop power t_i^k as an element."""
        if not 0 <= i < level:
            raise ValueError(f"t_{i} does not exist at level {level}")
        return Element.from_word(level, mode, ((i, k),) if k else (), ())

    # -- linear structure ------------------------------------------------------

    def copy(self) -> "Element":
        return Element(self.level, self.mode, dict(self.terms), self.flavor)

    def add(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _acc(terms, w, c)
        return Element(self.level, self.mode, terms, self.flavor)

    def __add__(self, other: "Element") -> "Element":
        return self.add(other)

    def __sub__(self, other: "Element") -> "Element":
        return self.add(other.scale(-ONE))

    def scale(self, c: Scalar) -> "Element":
        if c is ONE:
            return self
        if c.is_zero():
            return Element.zero(self.level, self.mode)
        return Element(self.level, self.mode,
                       {w: cc * c for w, cc in self.terms.items()}, self.flavor)

    def is_zero(self) -> bool:
        return not self.terms

    def equals(self, other: "Element") -> bool:
        if self.level != other.level or self.flavor != other.flavor:
            return False
        words = set(self.terms) | set(other.terms)
        for w in words:
            if not (self.terms.get(w, ZERO) == other.terms.get(w, ZERO)):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def embed(self, level: int) -> "Element":
        """The natural inclusion into a higher-level algebra."""
        if level < self.level:
            raise ValueError("cannot embed into a smaller algebra")
        return Element(level, self.mode, dict(self.terms), self.flavor)

    def _check(self, other: "Element"):
        if self.level != other.level or self.mode != other.mode:
            raise ValueError("level/mode mismatch")

    # -- multiplication ---------------------------------------------------------

    def rmul_gen(self, i: int, eps: int) -> "Element":
        """Right multiply by g_i^eps; touches only the A-part of each word."""
        if not 1 <= i < self.level:
            raise ValueError(f"g_{i} out of range at level {self.level}")
        terms: Dict[Word, Scalar] = {}
        for (tvec, aword), c in self.terms.items():
            for c2, aw2 in aword_times_gen(aword, i, self.level):
                _acc(terms, (tvec, aw2), c * c2)
        if eps == -1:
            # g^-1 = q^-1 g + (q^-1 - 1).
            pos = Element(self.level, self.mode, terms)
            return pos.scale(_QINV).add(self.scale(_QINVM1))
        return Element(self.level, self.mode, terms)

    def rmul_loop(self, eps: int) -> "Element":
        """Right multiply by t^eps, pushing the letter into normal position."""
        terms: Dict[Word, Scalar] = {}
        for (tvec, aword), c in self.terms.items():
            for c2, k, aw2 in push_loop_letter(aword, eps, self.level):
                for c3, tv2 in merge_loop_power(tvec, k, eps, self.mode):
                    _acc(terms, (tv2, aw2), c * c2 * c3)
        return Element(self.level, self.mode, terms)

    def rmul_letter(self, gen: int, eps: int) -> "Element":
        return self.rmul_loop(eps) if gen == 0 else self.rmul_gen(gen, eps)

    def rmul_word(self, word: Word) -> "Element":
        if word == UNIT_WORD:
            return self
        terms: Dict[Word, Scalar] = {}
        for wa, ca in self.terms.items():
            for w, c in word_product(wa, word, self.level, self.mode):
                _acc(terms, w, ca * c)
        return Element(self.level, self.mode, terms, self.flavor)

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    # -- presentation -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (tvec, aword), c in self.sorted_terms():
            tpart = " ".join(
                (f"t{i}" if k == 1 else f"t{i}^{k}") for i, k in tvec)
            apart = "".join(f"({h}:{r})" for h, r in aword)
            parts.append(f"{c} * [{tpart}][{apart}]")
        return " + ".join(parts)

    def header(self) -> str:
        flavor = "sigma2" if self.flavor == "sig2" else "sigma"
        return f"flavor={flavor} level={self.level} mode={mode_key(self.mode)}"

    def __repr__(self) -> str:
        return f"<Element {self.header()}: {self}>"


def _acc(terms: Dict[Word, Scalar], word: Word, c: Scalar):
    prev = terms.get(word)
    if prev is None:
        if not c.is_zero():
            terms[word] = c
    else:
        s = prev + c
        if s.is_zero():
            del terms[word]
        else:
            terms[word] = s


def word_letters(word: Word) -> Iterator[Tuple[int, int]]:
    """Expand a canonical word into generator letters.

    t_i^k is the k-th power of the loop g_i..g_1 t g_1..g_i, so the letter
    spelling repeats that word |k| times (inverted letterwise for k < 0);
    the shorter sandwich g_i..g_1 t^k g_1..g_i spells the different element
    T_i^k once |k| > 1.
    """
    tvec, aword = word
    for i, k in tvec:
        sgn = 1 if k > 0 else -1
        single = (
            tuple((j, sgn) for j in range(i, 0, -1))
            + ((0, sgn),)
            + tuple((j, sgn) for j in range(1, i + 1))
        )
        for _ in range(abs(k)):
            yield from single
    for head, r in aword:
        for j in range(head, head - r - 1, -1):
            yield (j, 1)


_WMUL_CACHE: Dict[Tuple[Word, Word, int, str], Tuple[Tuple[Scalar, Word], ...]] = {}


def word_product(wa: Word, wb: Word, level: int, mode: Mode) -> Tuple[Tuple[Scalar, Word], ...]:
    """Product of two canonical words, memoized.

    The right factor expands into letters and folds through the left one;
    the same word pairs recur across the trace recursion and the property
    suites, so this cache carries most of the multiplication load.
    """
    key = (wa, wb, level, mode_key(mode))
    hit = _WMUL_CACHE.get(key)
    if hit is not None:
        return hit
    e = Element(level, mode, {wa: ONE})
    for gen, eps in word_letters(wb):
        e = e.rmul_letter(gen, eps)
    out = tuple(e.terms.items())
    _WMUL_CACHE[key] = out
    return out


def mul(a: Element, b: Element) -> Element:
    """Product in the algebra: expand b into letters and fold onto a."""
    a._check(b)
    terms: Dict[Word, Scalar] = {}
    for wb, cb in b.terms.items():
        for wa, ca in a.terms.items():
            cab = ca * cb
            for w, c in word_product(wa, wb, a.level, a.mode):
                _acc(terms, w, cab * c)
    return Element(a.level, a.mode, terms, a.flavor)


def from_braid(word: BraidWord, mode: Mode = None) -> Element:
    """The canonical quotient map from the mixed braid group."""
    e = Element.unit(word.strands, mode)
    for gen, eps in word.letters:
        e = e.rmul_letter(gen, eps)
    return e


def from_braid_text(text: str, mode: Mode = None, strands: int | None = None) -> Element:
    from .braids import parse
    return from_braid(parse(text, strands), mode)


def cyclotomic_reduce(e: Element) -> Element:
    """Reduce powers of t into exponents 0..d-1 with the degree-d relation.

    Applies to the loop t itself (index 0).  The engine maintains this
    reduction eagerly, so this is mostly useful for externally built
    elements.  Exponents of the commuting loops t_i, i >= 1, are not
    reduced here: the degree-d relation holds for t and the conjugate
    loops t'_i but not verbatim for t_i, and the trace contracts those
    through the conjugate loops instead.
    """
    if e.mode is None:
        raise ValueError("cyclotomic_reduce needs a cyclotomic mode")
    out = Element.zero(e.level, e.mode)
    for (tvec, aword), c in e.terms.items():
        out = out.add(Element.from_word(e.level, e.mode, tvec, aword, c))
    return out


def basis_enumerate(n: int, d: int, max_rank: int = 200_000) -> Iterator[Word]:
    """All d^n * n! canonical words of the rank-d^n*n! cyclotomic algebra."""
    if d ** n * _factorial(n) > max_rank:
        raise ValueError("basis too large; raise max_rank to insist")
    exps = list(range(d))  # exponent 0 encodes an absent index

    def tvecs(i: int) -> Iterator[TVec]:
        if i == n:
            yield ()
            return
        for rest in tvecs(i + 1):
            for k in exps:
                yield (((i, k),) + rest) if k else rest

    awords = [perm_to_aword(p) for p in permutations(range(n))]
    for tvec in tvecs(0):
        for aword in awords:
            yield (tvec, aword)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def clear_caches():
    _AMUL_CACHE.clear()
    _AFOLD_CACHE.clear()
    _PUSH_CACHE.clear()
    _CYCLO_CACHE.clear()
    _WMUL_CACHE.clear()

"""The Markov trace on the tower of type-B Hecke algebras.

The trace is the unique linear map with

    tr(ab) = tr(ba)
    tr(1) = 1
    tr(a g_n)    = z   tr(a)      a in the level-n algebra
    tr(a t'_n^k) = s_k tr(a)      conjugate loop, k != 0

It is computed level by level through the bimodule decomposition of the
level-(n+1) algebra over the level-n algebra: every element splits as

    x = sum_i  c_i * a_i g_n b_i  +  sum_k  e_k t'_n^k

with a_i, b_i, e_k at level n, and then

    tr(x) = z * sum_i c_i tr(a_i b_i) + tr(e_0) + sum_{k!=0} s_k tr(e_k).

``lemma6_decompose`` produces the split.  Words whose top content is a
crossing block are read off directly; a top commuting-loop power t_n^k is
contracted by a recursion derived from the slide identity

    t_n^k g_n = (q-1) sum_{j=0}^{k-1} q^j t_{n-1}^j t_n^{k-j} + q^k g_n t_{n-1}^k

(k > 0; for k < 0 the sum runs j = -1 down to k with (q-1) replaced by
(1-q)), together with

    t_n^k = (q-1) sum_{j=1}^{k-1} q^{j-1} t_{n-1}^j t_n^{k-j} g_n
            + q^{k-1} g_n t_{n-1}^k g_n                       (k > 0)

obtained by cancelling the j = 0 term against (g_n - (q-1))^-1 = q^-1 g_n.
Each step either lowers |k| strictly or descends one level (the
g_n y g_n sandwich recurses into the level-n decomposition of y), so the
recursion terminates without ever expanding t_n^k into its exponentially
many symmetric words.

In cyclotomic mode the conjugate loops satisfy the degree-d relation, so
the parameters s_k for k outside 1..d-1 reduce through the linear
recurrence of ``reduce_s``; that is the only point where the mode changes
the trace rules.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .algebra import (
    AWord,
    Element,
    Mode,
    TVec,
    Word,
    from_braid,
    mode_key,
    mul,
)
from .braids import BraidWord, t_prime_letters
from .scalars import ONE, ZERO, Scalar, Z, a_param, qpow, s_param

Pairs = List[Tuple[Scalar, Element, Element]]
Diag = Dict[int, Element]

_QM1 = qpow(1) - ONE        # q - 1
_1MQ = ONE - qpow(1)        # 1 - q
_QINVM1 = qpow(-1) - ONE    # q^-1 - 1


class _Acc:
    """Accumulator for a bimodule decomposition at one level."""

    __slots__ = ("level", "mode", "pairs", "diag")

    def __init__(self, level: int, mode: Mode):
        self.level = level
        self.mode = mode
        self.pairs: Pairs = []
        self.diag: Diag = {}

    def add_pair(self, c: Scalar, a: Element, b: Element):
        if not c.is_zero():
            self.pairs.append((c, a, b))

    def add_diag(self, k: int, e: Element):
        if e.is_zero():
            return
        prev = self.diag.get(k)
        self.diag[k] = e if prev is None else prev.add(e)

    def extend_leftmul(self, sub: "_Acc", w: Element | None, scale: Scalar):
        """Absorb sub with every component left-multiplied by w and scaled."""
        if scale.is_zero():
            return
        for c, a, b in sub.pairs:
            self.add_pair(c * scale, a if w is None else mul(w, a), b)
        for k, e in sub.diag.items():
            self.add_diag(k, (e if w is None else mul(w, e)).scale(scale))


def _word_elem(level: int, mode: Mode, tvec: TVec = (), aword: AWord = ()) -> Element:
    return Element.from_word(level, mode, tvec, aword)


_TPRIME_CACHE: Dict[Tuple[int, str, int, int], Element] = {}


def tprime_element(level: int, mode: Mode, i: int, k: int) -> Element:
    """The conjugate loop power t'_i^k as a normal-form element."""
    key = (level, mode_key(mode), i, k)
    hit = _TPRIME_CACHE.get(key)
    if hit is None:
        e = Element.unit(level, mode)
        for gen, eps in t_prime_letters(i, k) if k else ():
            e = e.rmul_letter(gen, eps)
        _TPRIME_CACHE[key] = hit = e
    return hit


# ---------------------------------------------------------------------------
# Contraction of a top loop power, memoized per (level, mode, k, tail).

_TOPPOW_CACHE: Dict[Tuple[int, str, int, int | None], _Acc] = {}
_SANDWICH_CACHE: Dict[Tuple[int, str, int], _Acc] = {}


def _toppow(level: int, mode: Mode, k: int, tail: int | None) -> _Acc:
    """Decomposition of t_n^k (tail None) or t_n^k g_n .. g_{n-tail} at level.

    n = level - 1 is the top loop index; ``tail`` counts the crossings after
    g_n in the trailing descending block (0 = bare g_n).
    """
    key = (level, mode_key(mode), k, tail)
    hit = _TOPPOW_CACHE.get(key)
    if hit is not None:
        return hit
    n = level - 1
    acc = _Acc(level, mode)
    unit_n = Element.unit(n, mode)

    def low(j: int, with_tail: bool) -> Element:
        tv = ((n - 1, j),) if j else ()
        aw = ((n - 1, tail - 1),) if with_tail and tail else ()
        return _word_elem(n, mode, tv, aw)

    if tail is None:
        if k > 0:
            for j in range(1, k):
                acc.extend_leftmul(_toppow(level, mode, k - j, 0),
                                   low(j, False), _QM1 * qpow(j - 1))
            acc.extend_leftmul(_sandwich(level, mode, k), None, qpow(k - 1))
        else:
            for j in range(-1, k, -1):
                w = low(j, False)
                acc.extend_leftmul(_toppow(level, mode, k - j, 0),
                                   w, _1MQ * qpow(j - 1))
                acc.extend_leftmul(_toppow(level, mode, k - j, None),
                                   w, _1MQ * qpow(j) * _QINVM1)
            # j = k: the power lands entirely on index n-1.
            acc.add_pair(_1MQ * qpow(k - 1), low(k, False), unit_n)
            acc.add_diag(0, low(k, False).scale(_1MQ * qpow(k) * _QINVM1))
            acc.extend_leftmul(_sandwich(level, mode, k), None, qpow(k - 1))
            acc.add_pair(qpow(k) * _QINVM1, unit_n, low(k, False))
    else:
        if k > 0:
            for j in range(0, k):
                acc.extend_leftmul(_toppow(level, mode, k - j, None),
                                   low(j, True), _QM1 * qpow(j))
            acc.add_pair(qpow(k), unit_n, low(k, True))
        else:
            for j in range(-1, k, -1):
                acc.extend_leftmul(_toppow(level, mode, k - j, None),
                                   low(j, True), _1MQ * qpow(j))
            acc.add_diag(0, low(k, True).scale(_1MQ * qpow(k)))
            acc.add_pair(qpow(k), unit_n, low(k, True))
    _TOPPOW_CACHE[key] = acc
    return acc


def _sandwich(level: int, mode: Mode, k: int) -> _Acc:
    """Decomposition of g_n t_{n-1}^k g_n via the level-n decomposition."""
    key = (level, mode_key(mode), k)
    hit = _SANDWICH_CACHE.get(key)
    if hit is not None:
        return hit
    n = level - 1
    acc = _Acc(level, mode)
    y = _word_elem(n, mode, ((n - 1, k),) if k else ())
    inner_pairs, inner_diag = lemma6_decompose(y)
    gen_low = Element.gen(n, mode, n - 1) if n >= 2 else None
    for c, a, b in inner_pairs:
        acc.add_pair(c, a.embed(n).rmul_gen(n - 1, 1), mul(gen_low, b.embed(n)))
    for j, e in inner_diag.items():
        emb = e.embed(n)
        acc.add_pair(_QM1, emb, tprime_element(n, mode, n - 1, j))
        acc.add_diag(j, emb.scale(qpow(1)))
    _SANDWICH_CACHE[key] = acc
    return acc


# ---------------------------------------------------------------------------
# Public decomposition.

def lemma6_decompose(e: Element) -> Tuple[Pairs, Diag]:
    """Split a level-(n+1) element into sum c a g_n b + sum_k e_k t'_n^k.

    Components live at level n.  Words with no top-index content land in
    the k = 0 slot; a top crossing block is read off as a pair; a top
    commuting-loop power goes through the slide contraction.  At level 1
    every word is a plain loop power t^k and fills the diagonal directly.
    """
    level, mode = e.level, e.mode
    n = level - 1
    pairs: Pairs = []
    diag: Diag = {}

    def bump(k: int, el: Element):
        prev = diag.get(k)
        diag[k] = el if prev is None else prev.add(el)

    for (tvec, aword), c in e.terms.items():
        if level == 1:
            k = tvec[0][1] if tvec else 0
            bump(k, Element.unit(0, mode).scale(c))
            continue
        k_top = 0
        base_tvec = tvec
        if tvec and tvec[-1][0] == n:
            k_top = tvec[-1][1]
            base_tvec = tvec[:-1]
        top_block = None
        base_aword = aword
        if aword and aword[-1][0] == n:
            top_block = aword[-1]
            base_aword = aword[:-1]
        w_low = (base_tvec, base_aword)
        if k_top == 0 and top_block is None:
            bump(0, Element(n, mode, {w_low: c}))
        elif k_top == 0:
            r = top_block[1]
            b = _word_elem(n, mode, (), ((n - 1, r - 1),) if r else ())
            pairs.append((c, Element(n, mode, {w_low: ONE}), b))
        else:
            sub = _toppow(level, mode, k_top, top_block[1] if top_block else None)
            w = None if w_low == ((), ()) else Element(n, mode, {w_low: ONE})
            for c2, a, b in sub.pairs:
                pairs.append((c * c2, a if w is None else mul(w, a), b))
            for j, el in sub.diag.items():
                bump(j, (el if w is None else mul(w, el)).scale(c))
    return (_merge_pairs(pairs),
            {k: e for k, e in diag.items() if not e.is_zero()})


def _elem_key(e: Element):
    return tuple(sorted((w, str(c.canonical())) for w, c in e.terms.items()))


def _merge_pairs(pairs: Pairs) -> Pairs:
    """Combine pairs with identical factors; drop combinations summing to 0."""
    merged: Dict[tuple, Tuple[Scalar, Element, Element]] = {}
    for c, a, b in pairs:
        key = (_elem_key(a), _elem_key(b))
        prev = merged.get(key)
        merged[key] = (c if prev is None else prev[0] + c, a, b)
    return [(c, a, b) for c, a, b in merged.values() if not c.is_zero()]


def recompose(pairs: Pairs, diag: Diag, level: int, mode: Mode) -> Element:
    """Inverse of lemma6_decompose; the round-trip oracle for tests."""
    n = level - 1
    out = Element.zero(level, mode)
    if level == 1:
        for k, e in diag.items():
            c = e.terms.get(((), ()), ZERO)
            out = out.add(Element.from_word(1, mode, ((0, k),) if k else (), (), c))
        return out
    g_top = Element.gen(level, mode, n)
    for c, a, b in pairs:
        out = out.add(mul(mul(a.embed(level), g_top), b.embed(level)).scale(c))
    for k, e in diag.items():
        out = out.add(mul(e.embed(level), tprime_element(level, mode, n, k)))
    return out


def tpower_coset_expand(n: int, k: int, mode: Mode = None) -> Tuple[Pairs, Diag]:
    """The top loop power t_n^k in the inductive (level n+1 over level n) form.

    Returns (pairs, diag) with t_n^k = sum c a g_n b + sum_j diag[j] t'_n^j;
    memoized, and the entry point the trace uses for loop powers.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    if n == 0:
        return [], {k: Element.unit(0, mode)}
    acc = _toppow(n + 1, mode, k, None)
    return list(acc.pairs), dict(acc.diag)


# ---------------------------------------------------------------------------
# The trace itself.

_SRED_CACHE: Dict[Tuple[int, int], Scalar] = {}


def reduce_s(k: int, d: int) -> Scalar:
    """Express s_k through s_1..s_{d-1} and a_0..a_{d-1} in the degree-d quotient.

    Downward: s_k = a_{d-1} s_{k-1} + ... + a_0 s_{k-d} for k >= d; upward
    through a_0^-1 for k < 0; s_0 = 1 by the normalization of the trace.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if k == 0:
        return ONE
    if 1 <= k < d:
        return s_param(k)
    key = (k, d)
    hit = _SRED_CACHE.get(key)
    if hit is not None:
        return hit
    if k >= d:
        val = ZERO
        for j in range(d):
            val = val + a_param(j) * reduce_s(k - d + j, d)
    else:
        val = reduce_s(k + d, d)
        for j in range(1, d):
            val = val - a_param(j) * reduce_s(k + j, d)
        val = val * a_param(0).invert()
    _SRED_CACHE[key] = val
    return val


def s_value(k: int, mode: Mode) -> Scalar:
    if k == 0:
        return ONE
    if mode is None:
        return s_param(k)
    return reduce_s(k, mode)


_TRACE_CACHE: Dict[Tuple[Word, int, str], Scalar] = {}
_PROD_CACHE: Dict[Tuple[int, str, int, int | None], Tuple] = {}
_Z = Scalar.sym(Z)


def _toppow_products(level: int, mode: Mode, k: int, tail: int | None):
    """The contraction identity with its pairs pre-multiplied for the trace."""
    key = (level, mode_key(mode), k, tail)
    hit = _PROD_CACHE.get(key)
    if hit is None:
        acc = _toppow(level, mode, k, tail)
        prods = tuple((c, mul(a, b)) for c, a, b in acc.pairs)
        diag = tuple(acc.diag.items())
        _PROD_CACHE[key] = hit = (prods, diag)
    return hit


def _trace_word(word: Word, level: int, mode: Mode) -> Scalar:
    if level <= 1:
        tvec, _ = word
        return s_value(tvec[0][1] if tvec else 0, mode)
    key = (word, level, mode_key(mode))
    hit = _TRACE_CACHE.get(key)
    if hit is not None:
        return hit
    n = level - 1
    tvec, aword = word
    k_top = 0
    base_tvec = tvec
    if tvec and tvec[-1][0] == n:
        k_top = tvec[-1][1]
        base_tvec = tvec[:-1]
    top_block = None
    base_aword = aword
    if aword and aword[-1][0] == n:
        top_block = aword[-1]
        base_aword = aword[:-1]
    w_low = (base_tvec, base_aword)
    val = ZERO
    if k_top == 0 and top_block is None:
        val = _trace_word(word, n, mode)
    elif k_top == 0:
        # w' g_n (g_{n-1}..): rule 3' contracts the top crossing directly.
        r = top_block[1]
        rest = Element(n, mode, {w_low: ONE})
        if r:
            for j in range(n - 1, n - 1 - r, -1):
                rest = rest.rmul_gen(j, 1)
        val = _Z * markov_trace(rest)
    else:
        prods, diag = _toppow_products(level, mode, k_top,
                                       top_block[1] if top_block else None)
        trivial = w_low == ((), ())
        for c, ab in prods:
            # tr(w' x) = tr(x w'): fold the single low word from the right.
            e = ab if trivial else ab.rmul_word(w_low)
            val = val + _Z * c * markov_trace(e)
        for j, ej in diag:
            e = ej if trivial else ej.rmul_word(w_low)
            val = val + s_value(j, mode) * markov_trace(e)
    _TRACE_CACHE[key] = val
    return val


def markov_trace(e: Element) -> Scalar:
    """The trace of an element, in the symbols q (as qh^2), z, s_k and a_j."""
    total = ZERO
    for word, c in e.terms.items():
        total = total + c * _trace_word(word, e.level, e.mode)
    return total


def trace_of_braid(word: BraidWord, mode: Mode = None) -> Scalar:
    return markov_trace(from_braid(word, mode))


def trace_pairing_equal(a: Element, b: Element, multipliers=None) -> bool:
    """Equality of two elements as members of the quotient algebra.

    In cyclotomic mode the engine's normal form is canonical only in the
    plain loop t, so distinct normal forms can represent one quotient
    element (exponents of the commuting loops t_i, i >= 1, carry no local
    degree-d reduction).  The Markov trace factors through the quotient and
    its bilinear pairing (x, y) -> tr(xy) is nondegenerate there, so equal
    pairings against a spanning family decide equality.  By default the
    family is the full canonical basis (cyclotomic, small levels) or the
    element's own words (generic mode, where plain equality also works).
    """
    a._check(b)
    diff = a - b
    if diff.is_zero():
        return True
    if multipliers is None:
        if a.mode is not None and a.mode ** a.level * _fact(a.level) <= 5000:
            from .algebra import basis_enumerate
            multipliers = [Element(a.level, a.mode, {w: ONE})
                           for w in basis_enumerate(a.level, a.mode)]
        else:
            multipliers = [Element.unit(a.level, a.mode)]
    return all(markov_trace(mul(diff, m)).is_zero() for m in multipliers)


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def clear_caches():
    _TPRIME_CACHE.clear()
    _TOPPOW_CACHE.clear()
    _SANDWICH_CACHE.clear()
    _SRED_CACHE.clear()
    _TRACE_CACHE.clear()

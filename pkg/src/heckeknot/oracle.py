"""Independent verification back-ends.

Two deliberately separate implementations cross-check the main engine:

* An A-type Hecke algebra with Ocneanu's trace, built directly on
  permutations (no block words, no loop machinery).  On braids without
  loop letters the main trace must agree with it, and the normalized
  values must reproduce homfly-pt.

* The wreath product Z_d^n x| S_n, which is the q = 1, a-specialized
  shadow of the cyclotomic algebra.  Multiplying any two canonical basis
  words in the engine and specializing q = 1, a_0 = 1, a_{j>0} = 0 must
  give exactly the product group element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .algebra import (
    Element,
    Word,
    aword_to_perm,
    basis_enumerate,
    mul,
    perm_mul,
)
from .braids import BraidWord, exponent_sum
from .scalars import A, LH, ONE, QH, Scalar, Z, ZERO, qpow, substitute

Perm = Tuple[int, ...]

_qh = Scalar.sym(QH)
_lh = Scalar.sym(LH)
_q = _qh * _qh
_Z = Scalar.sym(Z)
_QM1 = qpow(1) - ONE


# ---------------------------------------------------------------------------
# A-type Hecke algebra on permutations, with Ocneanu's trace.

AElement = Dict[Perm, Scalar]


def a_unit(m: int) -> AElement:
    return {tuple(range(m)): ONE}


def _swap(p: Perm, i: int) -> Perm:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def _inv_count(p: Perm) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def a_mul_gen(el: AElement, i: int, eps: int) -> AElement:
    """Right multiplication by g_i^eps in the A-type algebra."""
    out: AElement = {}

    def acc(p: Perm, c: Scalar):
        prev = out.get(p)
        s = c if prev is None else prev + c
        if s.is_zero():
            out.pop(p, None)
        else:
            out[p] = s

    for p, c in el.items():
        ps = perm_mul(p, _swap(tuple(range(len(p))), i))
        if _inv_count(ps) > _inv_count(p):
            if eps == 1:
                acc(ps, c)
            else:
                # g^-1 = q^-1 g + (q^-1 - 1)
                acc(ps, c * qpow(-1))
                acc(p, c * (qpow(-1) - ONE))
        else:
            if eps == 1:
                acc(p, c * _QM1)
                acc(ps, c * qpow(1))
            else:
                acc(ps, c)
    return out


def a_from_braid(word: BraidWord) -> AElement:
    el = a_unit(word.strands)
    for gen, eps in word.letters:
        if gen == 0:
            raise ValueError("A-type oracle accepts only crossing letters")
        el = a_mul_gen(el, gen, eps)
    return el


_ATRACE_CACHE: Dict[Perm, Scalar] = {}


def _a_trace_perm(p: Perm) -> Scalar:
    """Ocneanu trace of one canonical basis word, by strand peeling."""
    m = len(p)
    if m <= 1:
        return ONE
    hit = _ATRACE_CACHE.get(p)
    if hit is not None:
        return hit
    if p[m - 1] == m - 1:
        val = _a_trace_perm(p[: m - 1])
    else:
        # T_p = T_{p'} g_{m-1} (g_{m-2} .. g_{v+1}) with v the strand
        # arriving last; the Markov property contracts the g_{m-1}.
        v = p[m - 1]
        block = tuple(range(m - 1, v, -1))
        strip = tuple(range(m))
        for j in block:
            strip = perm_mul(strip, _swap(tuple(range(m)), j))
        p_rest = perm_mul(p, _inverse(strip))
        rest: AElement = {p_rest[: m - 1]: ONE}
        for j in range(m - 2, v, -1):
            rest = a_mul_gen(rest, j, 1)
        val = ZERO
        for r, c in rest.items():
            val = val + _Z * c * _a_trace_perm(r)
    _ATRACE_CACHE[p] = val
    return val


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def ocneanu_trace_A(el: AElement) -> Scalar:
    total = ZERO
    for p, c in el.items():
        total = total + c * _a_trace_perm(p)
    return total


def homfly_A(word: BraidWord) -> Scalar:
    """homfly-pt of the braid closure, from the A-type trace alone."""
    tr = ocneanu_trace_A(a_from_braid(word))
    lam = _lh * _lh
    factor = (lam * _q - ONE) / (_lh * (ONE - _q))
    value = factor ** (word.strands - 1) * _lh ** exponent_sum(word) * tr
    return substitute(value, {Z: (ONE - _q) / (_q * lam - ONE)})


# ---------------------------------------------------------------------------
# Wreath product Z_d^n x| S_n.

@dataclass(frozen=True)
class WreathElement:
    vec: Tuple[int, ...]   # entries mod d
    perm: Perm
    d: int

    def __post_init__(self):
        if len(self.vec) != len(self.perm):
            raise ValueError("vector and permutation sizes differ")


def wreath_identity(n: int, d: int) -> WreathElement:
    return WreathElement((0,) * n, tuple(range(n)), d)


def wreath_mul(x: WreathElement, y: WreathElement) -> WreathElement:
    if x.d != y.d or len(x.vec) != len(y.vec):
        raise ValueError("size or degree mismatch")
    moved = tuple(y.vec[x.perm[j]] for j in range(len(y.vec)))
    vec = tuple((a + b) % x.d for a, b in zip(x.vec, moved))
    return WreathElement(vec, perm_mul(x.perm, y.perm), x.d)


def wreath_t(n: int, d: int) -> WreathElement:
    return WreathElement((1,) + (0,) * (n - 1), tuple(range(n)), d)


def wreath_gen(n: int, d: int, i: int) -> WreathElement:
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return WreathElement((0,) * n, tuple(p), d)


def word_to_wreath(word: Word, n: int, d: int) -> WreathElement:
    """The q = 1 shadow of a canonical basis word (exponents mod d)."""
    tvec, aword = word
    vec = [0] * n
    for i, k in tvec:
        vec[i] = k % d
    return WreathElement(tuple(vec), aword_to_perm(aword, n), d)


def specialize_check(n: int, d: int, pairs: Iterable[Tuple[Word, Word]] | None = None,
                     budget: int = 200_000) -> List[dict]:
    """Engine multiplication at q=1, a-specialized, against the group law.

    Returns a report entry per failing case plus one summary entry; an
    empty failure set means the engine's cyclotomic multiplication matches
    the wreath product on the supplied (default: all) basis-word pairs.
    """
    basis = list(basis_enumerate(n, d))
    if pairs is None:
        if len(basis) ** 2 > budget:
            raise ValueError("exhaustive check over budget; pass pairs explicitly")
        pairs = ((x, y) for x in basis for y in basis)
    spec = {QH: ONE}
    spec[A(0)] = ONE
    for j in range(1, d):
        spec[A(j)] = ZERO
    report: List[dict] = []
    checked = 0
    for wx, wy in pairs:
        checked += 1
        ex = Element(n, d, {wx: ONE})
        ey = Element(n, d, {wy: ONE})
        prod = mul(ex, ey)
        expected = wreath_mul(word_to_wreath(wx, n, d), word_to_wreath(wy, n, d))
        got: Dict[WreathElement, Scalar] = {}
        for w, c in prod.terms.items():
            g = word_to_wreath(w, n, d)
            got[g] = got.get(g, ZERO) + substitute(c, spec)
        ok = all(
            (c == ONE if g == expected else c == ZERO) for g, c in got.items()
        ) and expected in got
        if not ok:
            report.append({
                "case": f"{wx} * {wy}",
                "expected": str(expected),
                "got": {str(g): str(c) for g, c in got.items()},
                "status": "fail",
            })
    report.append({"case": f"specialize n={n} d={d}", "expected": checked,
                   "got": checked - len(report), "status": "ok" if not report else "fail"})
    return report

"""The normalized solid-torus knot invariant derived from the Markov trace.

For a mixed braid word w on n moving strands with crossing exponent sum e,

    X(w) = [ (lambda q - 1) / (sqrt(lambda) (1 - q)) ]^(n-1)
           * sqrt(lambda)^e * tr(pi(w))

evaluated at z = (1 - q)/(q lambda - 1).  The two normalizations make X
blind to conjugation and to both Markov stabilizations, so it depends only
on the link in the solid torus obtained by closing the braid.  Restricted
to words without loop letters it is the homfly-pt polynomial.

X satisfies the crossing skein rule

    1/(sqrt(q) sqrt(lambda)) X(L+) - sqrt(q) sqrt(lambda) X(L-)
        = (sqrt(q) - 1/sqrt(q)) X(L0)

always, and in the degree-d cyclotomic quotient additionally the loop rule
relating the d+1 closures that differ by powers of one conjugate loop.
"""

from __future__ import annotations

from typing import Tuple

from .algebra import Mode, from_braid
from .braids import BraidWord, exponent_sum, t_prime_letters
from .scalars import LH, ONE, QH, Scalar, Z, a_param, substitute
from .trace import markov_trace

_qh = Scalar.sym(QH)
_lh = Scalar.sym(LH)
_q = _qh * _qh
_lam = _lh * _lh

# z = (1-q)/(q*lambda - 1), the change of variable fixing stabilization.
Z_VALUE = (ONE - _q) / (_q * _lam - ONE)

# One factor per extra strand: (lambda q - 1)/(sqrt(lambda)(1 - q)).
_STRAND_FACTOR = (_lam * _q - ONE) / (_lh * (ONE - _q))


def invariant_X(word: BraidWord, mode: Mode = None) -> Scalar:
    """The invariant of the closure of a mixed braid word."""
    tr = markov_trace(from_braid(word, mode))
    e = exponent_sum(word)
    value = _STRAND_FACTOR ** (word.strands - 1) * _lh ** e * tr
    return substitute(value, {Z: Z_VALUE})


def skein_triple(word: BraidWord, pos: int) -> Tuple[BraidWord, BraidWord, BraidWord]:
    """The three words differing at one positive crossing letter.

    Returns (L+, L-, L0): the word itself, the word with that crossing
    inverted, and the word with it deleted, all on the same strands.
    """
    if not 0 <= pos < len(word.letters):
        raise ValueError("position out of range")
    gen, exp = word.letters[pos]
    if gen == 0 or exp != 1:
        raise ValueError("skein position must hold a positive crossing letter")
    minus = word.letters[:pos] + ((gen, -1),) + word.letters[pos + 1:]
    zero = word.letters[:pos] + word.letters[pos + 1:]
    return (word,
            BraidWord(word.strands, minus),
            BraidWord(word.strands, zero))


def verify_skein_homfly(l_plus: BraidWord, l_minus: BraidWord, l_zero: BraidWord,
                        mode: Mode = None) -> Tuple[bool, Scalar]:
    """Check the crossing skein rule on a triple; witness is the defect."""
    xp = invariant_X(l_plus, mode)
    xm = invariant_X(l_minus, mode)
    x0 = invariant_X(l_zero, mode)
    witness = (xp / (_qh * _lh)) - (_qh * _lh * xm) - ((_qh - _qh.invert()) * x0)
    return witness.is_zero(), witness


def verify_skein_cyclotomic(alpha: BraidWord, i: int, d: int) -> Tuple[bool, Scalar]:
    """Check the degree-d loop skein rule at conjugate loop i.

    The d+1 closures of alpha * t'_i^j for j = d..0 satisfy
    X(j=d) = a_{d-1} X(j=d-1) + ... + a_0 X(j=0) in the cyclotomic quotient.
    """
    strands = max(alpha.strands, i + 1)
    base = alpha.embed(strands)
    values = []
    for j in range(d + 1):
        w = BraidWord(strands, base.letters + (t_prime_letters(i, j) if j else ()))
        values.append(invariant_X(w, mode=d))
    witness = values[d]
    for j in range(d):
        witness = witness - a_param(j) * values[j]
    return witness.is_zero(), witness


def homfly_compare(word: BraidWord) -> Tuple[bool, Scalar, Scalar]:
    """Compare the invariant on a loop-free word with the A-type oracle."""
    from .oracle import homfly_A
    if any(gen == 0 for gen, _ in word.letters):
        raise ValueError("homfly comparison needs a word without loop letters")
    mine = invariant_X(word, mode=None)
    ref = homfly_A(word)
    return mine == ref, mine, ref

"""Round trips for the basis-conversion identities.

Every operation returns a right-hand side that an independent fold through
the multiplication engine must reproduce exactly.
"""

import pytest

from heckeknot.algebra import Element
from heckeknot.identities import (
    InductiveTail,
    fl_lhs_letters,
    fl_reorder,
    fold_form,
    fold_letters,
    fold_terms,
    lemma2_slide,
    lemma3_expand,
    lemma3_symwords,
    loop_letters,
    normalize_level,
    pipeline_expand,
    prop3_reduce,
    symword_with_lead,
    thm4_convert,
)
from heckeknot.scalars import ONE, qpow
from heckeknot.trace import recompose, tpower_coset_expand


def test_lemma2_examples():
    # t_1 g_1 = (q-1) t_1 + q g_1 t_0
    terms = lemma2_slide(1, 1)
    assert len(terms) == 2
    lhs = fold_letters(loop_letters(1, 1) + ((1, 1),), 2)
    assert fold_terms(terms, 2).equals(lhs)
    # t_1^2 g_1 = (q-1) t_1^2 + q(q-1) t_0 t_1 + q^2 g_1 t_0^2
    terms = lemma2_slide(1, 2)
    coefs = sorted(str(c) for c, _ in terms)
    assert len(terms) == 3
    lhs = fold_letters(loop_letters(1, 2) + ((1, 1),), 2)
    assert fold_terms(terms, 2).equals(lhs)


def test_lemma2_roundtrip_full_range():
    for n in (1, 2, 3):
        for k in (1, 2, 3, 4, -1, -2, -3, -4):
            lhs = fold_letters(loop_letters(n, k) + ((n, 1),), n + 1)
            assert fold_terms(lemma2_slide(n, k), n + 1).equals(lhs), (n, k)


def test_fl_trivial_case():
    # t g_1 t g_1 = g_1 t g_1 t: corrections cancel at i = k = 1
    lhs = fold_letters(fl_lhs_letters(1, 1, 1, 1), 2)
    assert fold_terms(fl_reorder(1, 1, 1, 1), 2).equals(lhs)


def test_fl_reorder_full_range():
    for i in (1, 2, 3):
        for k in (1, 2, 3, 4):
            for eps in (1, -1):
                for sgn in (1, -1):
                    lhs = fold_letters(fl_lhs_letters(i, k, eps, sgn), 2)
                    rhs = fold_terms(fl_reorder(i, k, eps, sgn), 2)
                    assert rhs.equals(lhs), (i, k, eps, sgn)


def test_lemma3_structure():
    # n=1, k=1: (q-1) g1 t g1 t g1 + q g1 t t g1
    terms = lemma3_expand(1, 1, 1)
    assert len(terms) == 2
    words = {w for _, w in terms}
    assert ((1, 1), (0, 1), (1, 1), (0, 1), (1, 1)) in words
    assert ((1, 1), (0, 1), (0, 1), (1, 1)) in words
    # n=2, k=1: three summands with coefficients (q-1), (q-1)q, q^2
    coefs = {str(c) for c, _ in lemma3_expand(2, 1, 1)}
    assert coefs == {"qh^2 - 1", "qh^4 - qh^2", "qh^4"}


def test_lemma3_roundtrip():
    for n in (1, 2, 3):
        for k in (0, 1, 2, 3):
            for eps in (1, -1):
                if n == 3 and k > 2:
                    continue
                lhs = Element.loop(n + 1, None, n, eps * (k + 1))
                assert fold_terms(lemma3_expand(n, k, eps), n + 1).equals(lhs), \
                    (n, k, eps)


def test_normalizer_single_minimal_letter():
    words = [
        ((1, 1), (2, 1), (1, 1)),
        ((1, 1), (2, 1), (3, 1), (2, 1), (1, 1), (1, 1), (2, 1)),
        ((1, -1), (2, 1), (1, 1), (3, -1), (1, -1)),
    ]
    for w in words:
        total = Element.zero(4, None)
        for c, a, mid, b in normalize_level(w, 1):
            assert all(g >= 2 for g, _ in a) and all(g >= 2 for g, _ in b)
            assert mid is None or mid[0] == 1
            piece = fold_letters(a + ((mid,) if mid else ()) + b, 4)
            total = total.add(piece.scale(c))
        assert total.equals(fold_letters(w, 4))


def test_prop3_word_by_word():
    for n in (1, 2):
        for k in (0, 1, 2):
            for eps in (1, -1):
                for coef, sym in lemma3_symwords(n, k, eps):
                    direct = fold_letters(sym.letters(), n + 1).scale(coef)
                    form = prop3_reduce(sym, None, coef)
                    for _, _, tail in form:
                        assert isinstance(tail, InductiveTail)
                    assert fold_form(form, n + 1).equals(direct), (n, k, eps)


def test_prop3_base_case():
    # single loop power, no hats: already a top T-power
    (coef, sym), = lemma3_symwords(1, 0, 1)
    form = prop3_reduce(sym)
    assert len(form) == 1
    c, prefix, tail = form[0]
    assert tail.j == tail.n and tail.power == 1
    assert prefix.equals(Element.unit(1, None)) and c == ONE


def test_prop3_with_lead_run():
    for n in (2, 3):
        for lead in (1, 2, 3):
            for m in (1, 2, 3):
                if lead > n or m > n:
                    continue
                sym = symword_with_lead(n, 1, (2, 1), lead, (m,))
                direct = fold_letters(sym.letters(), n + 1)
                assert fold_form(prop3_reduce(sym), n + 1).equals(direct), \
                    (n, lead, m)


def test_thm4_single_conversion():
    # T_1 = g_1 t g_1 -> q t'_1 + (q-1) g_1 t
    form = [(ONE, Element.unit(1, None), InductiveTail(1, 1, 1, 1))]
    out = thm4_convert(form)
    assert len(out) == 2
    by_j = {tail.j: c for c, _, tail in out}
    assert by_j[1] == qpow(1)
    assert by_j[0] == qpow(1) - ONE
    lhs = fold_letters(((1, 1), (0, 1), (1, 1)), 2)
    assert fold_form(out, 2).equals(lhs)


def test_thm4_roundtrip():
    for n in (1, 2):
        for k in (0, 1, 2):
            for eps in (1, -1):
                for coef, sym in lemma3_symwords(n, k, eps):
                    direct = fold_letters(sym.letters(), n + 1).scale(coef)
                    out = thm4_convert(prop3_reduce(sym, None, coef))
                    assert fold_form(out, n + 1).equals(direct), (n, k, eps)
                    for _, _, tail in out:
                        if tail.eps == 1:
                            assert tail.junk == ()


def test_pipeline_full_range():
    for n in (1, 2, 3):
        for k in (1, 2, 3, 4, -1, -2, -3, -4):
            if n == 3 and abs(k) > 2:
                continue  # the n=3 |k| in (3, 4) cases run in acceptance
            lhs = Element.loop(n + 1, None, n, k)
            assert fold_form(pipeline_expand(n, k), n + 1).equals(lhs), (n, k)


def test_tpower_matches_pipeline_and_input():
    for n in (1, 2):
        for k in (1, 2, -1, -2, 3, -3):
            pairs, diag = tpower_coset_expand(n, k)
            lhs = Element.loop(n + 1, None, n, k)
            assert recompose(pairs, diag, n + 1, None).equals(lhs), (n, k)
            assert fold_form(pipeline_expand(n, k), n + 1).equals(lhs), (n, k)


def test_tpower_rejects_zero():
    with pytest.raises(ValueError):
        tpower_coset_expand(2, 0)

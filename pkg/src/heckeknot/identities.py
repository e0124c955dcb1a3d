"""The rewriting identities behind the inductive bases, as testable objects.

Each operation returns the right-hand side of one structural identity used
to convert between the canonical bases, in a form an independent test can
fold through the multiplication engine and compare against the left-hand
side:

* ``lemma2_slide``     t_n^k g_n in terms of lower loops and one g_n word;
* ``fl_reorder``       the fundamental reordering of t^i g_1 t^k g_1;
* ``lemma3_expand``    the symmetric-word expansion of a top loop power;
* ``prop3_reduce``     symmetric words into the inductive T-form, whose
                       words carry the top crossing or a top T-power at
                       most once;
* ``thm4_convert``     the inductive T-form into conjugate-loop tails;
* ``pipeline_expand``  the composite of the three, for one loop power.

Letters are engine letters (gen, sign) with gen 0 the loop generator; a
term is a (Scalar, letters) pair.

The heart of ``prop3_reduce`` is a normalizer for crossing words that
rewrites any word to carry AT MOST ONE letter of its minimal index, by
resolving the innermost pair of equal-index letters: everything of higher
index between them is recursively normalized one index up, after which
the pair either cancels, contracts by the quadratic relation, or forms a
braid triple g_x g_{x+1} g_x that flips to g_{x+1} g_x g_{x+1} (mixed
crossing signs are first uniformized with the quadratic relation).  Each
resolution strictly lowers the count of minimal-index letters, so the
normalizer terminates.  With a single g_1 isolated in the first gap of a
symmetric word, the fundamental lemma merges the two adjacent loop powers
and the gap count drops; the terminal gap peels an ascending run that
closes into a T-power.  Negative loop exponents run the same moves with
every letter carrying sign -1 and end in inverse-run T-forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .algebra import Element, Mode
from .scalars import ONE, Scalar, qpow

Letter = Tuple[int, int]
Letters = Tuple[Letter, ...]
Term = Tuple[Scalar, Letters]


def _qe_m1(eps: int) -> Scalar:
    return qpow(eps) - ONE


def loop_letters(i: int, k: int) -> Letters:
    """Letters of the commuting loop power t_i^k (|k| copies of the loop)."""
    if k == 0:
        return ()
    s = 1 if k > 0 else -1
    single = tuple((j, s) for j in range(i, 0, -1)) + ((0, s),) \
        + tuple((j, s) for j in range(1, i + 1))
    return single * abs(k)


def _t(eps: int, m: int) -> Letters:
    return ((0, eps),) * m


def _asc(a: int, b: int, eps: int) -> Letters:
    return tuple((x, eps) for x in range(a, b + 1))


def _desc(a: int, b: int, eps: int) -> Letters:
    return tuple((x, eps) for x in range(a, b - 1, -1))


def _hat(m: int, eps: int) -> Letters:
    # g_1 .. g_{m-1} g_m g_{m-1} .. g_1; empty for m = 0
    if m == 0:
        return ()
    return _asc(1, m, eps) + _desc(m - 1, 1, eps)


# ---------------------------------------------------------------------------
# Lemma-level identities, as explicit letter terms.

def lemma2_slide(n: int, k: int) -> List[Term]:
    """Right-hand side of t_n^k g_n.

    k > 0:  (q-1) sum_{j=0}^{k-1} q^j t_{n-1}^j t_n^{k-j}  +  q^k g_n t_{n-1}^k
    k < 0:  (1-q) sum_{j=-1}^{k}  q^j t_{n-1}^j t_n^{k-j}  +  q^k g_n t_{n-1}^k
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    out: List[Term] = []
    if k > 0:
        for j in range(k):
            out.append(((qpow(1) - ONE) * qpow(j),
                        loop_letters(n - 1, j) + loop_letters(n, k - j)))
    else:
        for j in range(-1, k - 1, -1):
            out.append(((ONE - qpow(1)) * qpow(j),
                        loop_letters(n - 1, j) + loop_letters(n, k - j)))
    out.append((qpow(k), ((n, 1),) + loop_letters(n - 1, k)))
    return out


def _pow(eps: int, m: int) -> Letters:
    if m == 0:
        return ()
    s = eps if m > 0 else -eps
    return ((0, s),) * abs(m)


def fl_lhs_letters(i: int, k: int, eps: int, sign_i: int) -> Letters:
    """Left-hand side t^{sign_i eps i} g_1^eps t^{eps k} g_1^eps."""
    return _pow(sign_i * eps, i) + ((1, eps),) + _pow(eps, k) + ((1, eps),)


def fl_reorder(i: int, k: int, eps: int, sign_i: int) -> List[Term]:
    """Right-hand side of the fundamental reordering.

    sign_i = +1:  g t^{ek} g t^{ei}
                  + (q^e-1) [t^e g t^{e(k+i-1)} + ... + t^{ei} g t^{ek}]
                  + (1-q^e) [t^{ek} g t^{ei} + ... + t^{e(k+i-1)} g t^e]
    sign_i = -1:  g t^{ek} g t^{-ei}
                  + (q^e-1) [t^{e(k-1)} g t^{-e(i-1)} + ... + t^{e(k-i)} g]
                  + (1-q^e) [t^{-e(i-1)} g t^{e(k-1)} + ... + g t^{e(k-i)}]
    """
    if i < 1 or k < 1:
        raise ValueError("need i, k >= 1")
    g = ((1, eps),)
    out: List[Term] = []
    if sign_i == 1:
        out.append((ONE, g + _pow(eps, k) + g + _pow(eps, i)))
        for a in range(1, i + 1):
            out.append((_qe_m1(eps), _pow(eps, a) + g + _pow(eps, k + i - a)))
        for b in range(i):
            out.append((ONE - qpow(eps), _pow(eps, k + b) + g + _pow(eps, i - b)))
    else:
        out.append((ONE, g + _pow(eps, k) + g + _pow(-eps, i)))
        for c in range(1, i + 1):
            out.append((_qe_m1(eps), _pow(eps, k - c) + g + _pow(-eps, i - c)))
        for b in range(1, i + 1):
            out.append((ONE - qpow(eps), _pow(-eps, i - b) + g + _pow(eps, k - b)))
    return out


def lemma3_expand(n: int, k: int, eps: int) -> List[Term]:
    """t_n^{eps(k+1)} as the sum over hat insertions between k+1 loop letters.

    Summand for (r_1 .. r_k), each r in 0..n:

        (q^eps - 1)^{#(r_i < n)} q^{eps sum r_i} *
        g_n..g_1 t (hat n-r_1) t ... t (hat n-r_k) t g_1..g_n

    with every letter carrying sign eps.
    """
    if k < 0:
        raise ValueError("need k >= 0")
    out: List[Term] = []
    for combo in _tuples(k, n + 1):
        coef = ONE
        body: List[Letter] = list(_desc(n, 1, eps))
        body.append((0, eps))
        for r in combo:
            coef = coef * qpow(eps * r)
            if r < n:
                coef = coef * _qe_m1(eps)
            body.extend(_hat(n - r, eps))
            body.append((0, eps))
        body.extend(_asc(1, n, eps))
        out.append((coef, tuple(body)))
    return out


def _tuples(k: int, base: int) -> Iterable[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for rest in _tuples(k - 1, base):
        for r in range(base):
            yield (r,) + rest


# ---------------------------------------------------------------------------
# Symmetric words.

@dataclass(frozen=True)
class SymWord:
    """g_n..g_1 t^{e p_0} seg_0 t^{e p_1} seg_1 ... t^{e p_N} seg_N g_1..g_n.

    Crossing letters inside segments may carry either sign (the quadratic
    relation introduces both during reduction); the outer runs and loop
    letters all carry eps.  Loop powers are >= 1.
    """
    n: int
    eps: int
    powers: Tuple[int, ...]
    segs: Tuple[Letters, ...]

    def __post_init__(self):
        if len(self.segs) != len(self.powers):
            raise ValueError("need one segment per loop power")
        if any(p < 1 for p in self.powers):
            raise ValueError("loop powers must be >= 1")

    def letters(self) -> Letters:
        body: List[Letter] = list(_desc(self.n, 1, self.eps))
        for p, seg in zip(self.powers, self.segs):
            body.extend(_t(self.eps, p))
            body.extend(seg)
        body.extend(_asc(1, self.n, self.eps))
        return tuple(body)


def lemma3_symwords(n: int, k: int, eps: int) -> List[Tuple[Scalar, SymWord]]:
    """The expansion of t_n^{eps(k+1)} as structured symmetric words."""
    out: List[Tuple[Scalar, SymWord]] = []
    for combo in _tuples(k, n + 1):
        coef = ONE
        powers: List[int] = [1]
        segs: List[Letters] = []
        for r in combo:
            coef = coef * qpow(eps * r)
            if r < n:
                coef = coef * _qe_m1(eps)
            if r == n:  # empty hat: adjacent loop powers merge
                powers[-1] += 1
            else:
                segs.append(_hat(n - r, eps))
                powers.append(1)
        segs.append(())
        out.append((coef, SymWord(n, eps, tuple(powers), tuple(segs))))
    return out


def symword_with_lead(n: int, eps: int, powers: Tuple[int, ...], lead: int,
                      hats: Tuple[int, ...]) -> SymWord:
    """The unsymmetric generalization: an ascending run before the first hat."""
    if len(powers) != len(hats) + 1:
        raise ValueError("need one hat between consecutive powers")
    segs: List[Letters] = []
    for idx, m in enumerate(hats):
        seg = _hat(m, eps)
        if idx == 0 and lead:
            seg = _asc(1, lead, eps) + seg
        segs.append(seg)
    segs.append(())
    return SymWord(n, eps, powers, tuple(segs))


# ---------------------------------------------------------------------------
# The crossing-word normalizer: at most one letter of the minimal index.

Split = Tuple[Scalar, Letters, Optional[Letter], Letters]


def normalize_level(word: Letters, x: int) -> List[Split]:
    """Rewrite a word with letters of index >= x as sum of A * mid * B.

    A and B carry indices >= x + 1 and mid is the surviving index-x letter
    (or None).  Works by resolving the innermost pair of index-x letters:
    the stretch between them normalizes one index up, the stretch's
    higher-index parts commute out of the pair, and the pair cancels,
    contracts quadratically, or flips as a braid triple.
    """
    occ = [p for p, (g, _) in enumerate(word) if g == x]
    if not occ:
        return [(ONE, word, None, ())]
    if len(occ) == 1:
        p = occ[0]
        return [(ONE, word[:p], word[p], word[p + 1:])]
    i, j = occ[0], occ[1]
    s_i, s_j = word[i][1], word[j][1]
    out: List[Split] = []
    for c2, a2, mid2, b2 in normalize_level(word[i + 1:j], x + 1):
        # a2, b2 commute with g_x (indices >= x+2); resolve the center.
        for c3, center in _resolve_center(x, s_i, mid2, s_j):
            spliced = word[:i] + a2 + center + b2 + word[j + 1:]
            for c4, a4, mid4, b4 in normalize_level(spliced, x):
                out.append((c2 * c3 * c4, a4, mid4, b4))
    combined = {}
    for c, a, mid, b in out:
        key = (a, mid, b)
        prev = combined.get(key)
        combined[key] = c if prev is None else prev + c
    return [(c, a, mid, b) for (a, mid, b), c in combined.items()
            if not c.is_zero()]


def _resolve_center(x: int, s1: int, mid: Optional[Letter],
                    s3: int) -> List[Tuple[Scalar, Letters]]:
    """g_x^{s1} [g_{x+1}^{u}] g_x^{s3} as words without an inner x-pair."""
    if mid is None:
        if s1 == -s3:
            return [(ONE, ())]
        # quadratic: g^{2s} = (q^s - 1) g^s + q^s
        return [(_qe_m1(s1), ((x, s1),)), (qpow(s1), ())]
    y, u = mid
    assert y == x + 1
    if s1 == s3 and s1 != u:
        # g_x^s g_{x+1}^{-s} g_x^s: uniformize the middle first;
        # q^u g^{-u} branch gives the plain braid flip, the other drops it.
        flipped = ((y, s1), (x, s1), (y, s1))
        return [(qpow(u), flipped), (_qe_m1(u), ((x, s1), (x, s3)))]
    if u == s3:
        return [(ONE, ((y, u), (x, s3), (y, s1)))]
    return [(ONE, ((y, s3), (x, s1), (y, u)))]


# ---------------------------------------------------------------------------
# The inductive T-form and the gap reduction.

@dataclass(frozen=True)
class InductiveTail:
    """g_n .. g_{j+1} followed by the T-power g_j..g_1 t^{eps power} g_1..g_j.

    j = n is a bare top T-power; all letters carry eps, so for eps = -1
    this is the letterwise inverse of the positive word.
    """
    n: int
    eps: int
    j: int
    power: int

    def letters(self) -> Letters:
        return (_desc(self.n, self.j + 1, self.eps) + _desc(self.j, 1, self.eps)
                + _t(self.eps, self.power) + _asc(1, self.j, self.eps))


Thm3Form = List[Tuple[Scalar, Element, InductiveTail]]


def prop3_reduce(sym: SymWord, mode: Mode = None, coef: Scalar = ONE) -> Thm3Form:
    """Express a symmetric word in the inductive T-form.

    Folding sym's letters through the engine equals
    sum of coef_i * prefix_i * tail_i-letters, with each prefix at level n
    (crossing indices below n).  Gap by gap, the normalizer isolates one
    g_1 between the first two loop powers, higher-index letters escape to
    the prefix (left, one index down) or into the next gap (right,
    unchanged), and the fundamental lemma removes the gap.
    """
    out: Thm3Form = []
    _reduce_gap(coef, Element.unit(sym.n, mode), sym.powers, list(sym.segs),
                sym.n, sym.eps, mode, out)
    return out


def _prefix_mul(prefix: Element, letters: Letters) -> Element:
    e = prefix
    for gen, s in letters:
        e = e.rmul_letter(gen, s)
    return e


def _evacuate(prefix: Element, letters: Letters) -> Element:
    """Slide letters (all of index >= 2) left through the loop power and the
    descending run into the prefix; each exits one index down."""
    for gen, s in letters:
        if gen < 2:
            raise ValueError("only letters of index >= 2 can evacuate")
        prefix = prefix.rmul_letter(gen - 1, s)
    return prefix


def _reduce_gap(coef: Scalar, prefix: Element, powers: Tuple[int, ...],
                segs: List[Letters], n: int, eps: int, mode: Mode,
                out: Thm3Form):
    if coef.is_zero():
        return
    if len(powers) == 1:
        _terminal(coef, prefix, powers[0], segs[0], n, eps, mode, out)
        return
    lam, mu = powers[0], powers[1]
    for c0, left, mid, right in normalize_level(segs[0], 1):
        c = coef * c0
        pfx = _evacuate(prefix, left)
        if mid is None:
            pfx = _evacuate(pfx, right)
            _reduce_gap(c, pfx, (lam + mu,) + powers[2:], segs[1:],
                        n, eps, mode, out)
            continue
        nsegs = [right + segs[1]] + segs[2:]
        s = mid[1]
        if s == eps:
            _fl_step(c, pfx, lam, mu, powers, nsegs, n, eps, mode, out)
        else:
            # wrong-sign g_1: quadratic, then the fixed-sign branch reorders
            _fl_step(c * qpow(s), pfx, lam, mu, powers, nsegs, n, eps, mode, out)
            _reduce_gap(c * _qe_m1(s), pfx, (lam + mu,) + powers[2:], nsegs,
                        n, eps, mode, out)


def _fl_step(coef: Scalar, prefix: Element, lam: int, mu: int,
             powers: Tuple[int, ...], segs_rest: List[Letters],
             n: int, eps: int, mode: Mode, out: Thm3Form):
    """run-tail g_1, t^{e lam}, g_1, t^{e mu}: reorder by the fundamental
    lemma.  The leading term sends t^{e mu} to the prefix and the inner g_1
    into the next segment; the corrections drop it and redistribute
    lam + mu over the merged gap."""
    lead_prefix = _prefix_mul(prefix, _t(eps, mu))
    _reduce_gap(coef, lead_prefix, (lam,) + powers[2:],
                [((1, eps),) + segs_rest[0]] + segs_rest[1:], n, eps, mode, out)
    for a in range(1, mu + 1):
        cpfx = _prefix_mul(prefix, _t(eps, a))
        _reduce_gap(-coef * _qe_m1(eps), cpfx, (lam + mu - a,) + powers[2:],
                    segs_rest, n, eps, mode, out)
    for b in range(mu):
        cpfx = _prefix_mul(prefix, _t(eps, lam + b))
        _reduce_gap(coef * _qe_m1(eps), cpfx, (mu - b,) + powers[2:],
                    segs_rest, n, eps, mode, out)


def _terminal(coef: Scalar, prefix: Element, lam: int, seg: Letters,
              n: int, eps: int, mode: Mode, out: Thm3Form):
    """Resolve run t^{e lam} seg (g_1..g_n) into T-form tails.

    Peel ascending letters g_1, g_2, ... from the residue; at each index
    the normalizer isolates at most one letter, everything else escapes to
    the prefix (indices above the peeled run commute with the T-power)."""
    _peel(coef, prefix, seg + _asc(1, n, eps), 1, lam, n, eps, mode, out)


def _peel(coef: Scalar, prefix: Element, residue: Letters, x: int, lam: int,
          n: int, eps: int, mode: Mode, out: Thm3Form):
    if coef.is_zero():
        return
    if x > n:
        out.append((coef, prefix, InductiveTail(n, eps, n, lam)))
        return
    for c0, left, mid, right in normalize_level(residue, x):
        c = coef * c0
        pfx = _evacuate(prefix, left)
        if mid is None:
            pfx = _evacuate(pfx, right)
            out.append((c, pfx, InductiveTail(n, eps, x - 1, lam)))
            continue
        s = mid[1]
        if s == eps:
            _peel(c, pfx, right, x + 1, lam, n, eps, mode, out)
        else:
            _peel(c * qpow(s), pfx, right, x + 1, lam, n, eps, mode, out)
            pfx2 = _evacuate(pfx, right)
            out.append((c * _qe_m1(s), pfx2, InductiveTail(n, eps, x - 1, lam)))


# ---------------------------------------------------------------------------
# Conversion of T-powers into conjugate-loop tails.

@dataclass(frozen=True)
class LoopTail:
    """g_n .. g_{j+1} (letters of sign eps), then t'_j^{eps power}, then junk.

    For eps = +1 the junk is always empty and this is a true inductive
    basis tail.  The negative branch converts inverse T-forms, whose
    conjugate loop closes up on the other side; the letters that cannot
    escape leftward trail behind the loop power instead.
    """
    n: int
    eps: int
    j: int
    power: int
    junk: Letters = ()
    run_bottom: int = -1   # -1 means the default j + 1

    def letters(self) -> Letters:
        from .braids import t_prime_letters
        bottom = self.j + 1 if self.run_bottom < 0 else self.run_bottom
        return _desc(self.n, bottom, self.eps) + \
            tuple(t_prime_letters(self.j, self.eps * self.power)) + self.junk


Thm4Form = List[Tuple[Scalar, Element, LoopTail]]


def thm4_convert(form: Thm3Form, mode: Mode = None) -> Thm4Form:
    """Replace every T-power tail by conjugate-loop tails.

    For eps = +1 the trailing ascending run of the T-power expands
    letterwise through g = q g^-1 + (q - 1); the kept letters below the
    first gap close the loop power into a conjugate loop t'_{rho-1}, the
    kept letters above it slide out to the prefix one index down.  For
    eps = -1 the mirror expansion applies to the leading run (kept letters
    turn plain), the conjugate loop closes toward t, and the kept letters
    above the gap commute rightward past it into the tail's junk.
    """
    out: Thm4Form = []
    for coef, prefix, tail in form:
        n, eps, j, power = tail.n, tail.eps, tail.j, tail.power
        for mask in range(1 << j):
            kept = [b + 1 for b in range(j) if mask & (1 << b)]
            rho = 1
            while rho in kept:
                rho += 1
            c = coef * qpow(eps * len(kept)) * _qe_m1(eps) ** (j - len(kept))
            above = [v for v in kept if v > rho]
            if eps == 1:
                strays = tuple((v - 1, -eps) for v in above)
                pfx = _prefix_mul(prefix, strays)
                out.append((c, pfx, LoopTail(n, eps, rho - 1, power)))
            else:
                junk = tuple((v, 1) for v in sorted(above, reverse=True)) \
                    + tuple((r, -1) for r in range(rho, j + 1))
                out.append((c, prefix,
                            LoopTail(n, eps, rho - 1, power, junk, j + 1)))
    return out


def pipeline_expand(n: int, k: int, mode: Mode = None) -> Thm4Form:
    """The composite lemma3 -> prop3 -> thm4 for the loop power t_n^k."""
    if k == 0:
        raise ValueError("k must be nonzero")
    eps = 1 if k > 0 else -1
    out: Thm4Form = []
    for coef, sym in lemma3_symwords(n, abs(k) - 1, eps):
        out.extend(thm4_convert(prop3_reduce(sym, mode, coef), mode))
    return out


# ---------------------------------------------------------------------------
# Folding helpers shared by the round-trip tests.

def fold_terms(terms: List[Term], level: int, mode: Mode = None) -> Element:
    total = Element.zero(level, mode)
    for coef, letters in terms:
        e = Element.unit(level, mode)
        for gen, s in letters:
            e = e.rmul_letter(gen, s)
        total = total.add(e.scale(coef))
    return total


def fold_letters(letters: Letters, level: int, mode: Mode = None) -> Element:
    e = Element.unit(level, mode)
    for gen, s in letters:
        e = e.rmul_letter(gen, s)
    return e


def fold_form(form, level: int, mode: Mode = None) -> Element:
    total = Element.zero(level, mode)
    for coef, prefix, tail in form:
        e = prefix.embed(level)
        for gen, s in tail.letters():
            e = e.rmul_letter(gen, s)
        total = total.add(e.scale(coef))
    return total

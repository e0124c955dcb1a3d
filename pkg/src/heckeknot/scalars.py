"""Exact rational-function arithmetic for the trace coefficient ring.

Every coefficient in this package is a fraction of multivariate polynomials
with integer coefficients in the symbols

    qh   square root of the Hecke parameter q        (q = qh^2)
    lh   square root of the framing parameter        (lambda = lh^2)
    z    the Markov parameter of the trace
    sk   one free trace parameter per nonzero k      (printed s1, s-1, s2, ...)
    aj   coefficients of the degree-d loop relation  (printed a0, a1, ...)

Working with the square roots keeps all exponents integral: the invariant's
normalization involves half-integer powers of q and lambda.

Representation:

    Symbol   = (class_rank, minor)   -- ordered tuple, see _SYM_* below
    Monomial = tuple of (Symbol, exponent>0) pairs, sorted by symbol
    Poly     = dict {Monomial: int}, zero coefficients never stored
    Scalar   = Poly / Poly fraction, denominator nonzero

Fractions are kept cheaply normalized (common monomial factor and integer
content removed, denominator sign fixed); the full polynomial GCD runs only
in ``canonical``/``__str__``, since rewriting creates many short-lived
values.  Equality is decided by cross-multiplication, which needs no GCD.

The text format is bit-exact and shared with the CLI and the golden tests:
terms sorted by total degree descending then lexicographically on the symbol
order qh < lh < z < s1 < s-1 < s2 < ... < a0 < a1 < ...; a fraction prints
as ``(num)/(den)`` with the denominator omitted when it is 1.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

Symbol = Tuple[int, int]
Monomial = Tuple[Tuple[Symbol, int], ...]
Poly = Dict[Monomial, int]


class EvaluationError(Exception):
    """A substitution or modular evaluation hit a zero denominator."""


# Symbol construction.  The class ranks implement the global symbol order.

_SYM_QH = 0
_SYM_LH = 1
_SYM_Z = 2
_SYM_S = 3
_SYM_A = 4

QH: Symbol = (_SYM_QH, 0)
LH: Symbol = (_SYM_LH, 0)
Z: Symbol = (_SYM_Z, 0)


def S(k: int) -> Symbol:
    """Trace parameter s_k, k != 0.  Ordered s1 < s-1 < s2 < s-2 < ..."""
    if k == 0:
        raise ValueError("s_0 is not a symbol (it is the constant 1)")
    return (_SYM_S, 2 * (abs(k) - 1) + (1 if k < 0 else 0))


def A(j: int) -> Symbol:
    """Loop-relation coefficient a_j, j >= 0."""
    if j < 0:
        raise ValueError("a_j needs j >= 0")
    return (_SYM_A, j)


def symbol_name(sym: Symbol) -> str:
    cls, minor = sym
    if cls == _SYM_QH:
        return "qh"
    if cls == _SYM_LH:
        return "lh"
    if cls == _SYM_Z:
        return "z"
    if cls == _SYM_S:
        k = minor // 2 + 1
        return f"s{k}" if minor % 2 == 0 else f"s-{k}"
    return f"a{minor}"


def symbol_from_name(name: str) -> Symbol:
    if name == "qh":
        return QH
    if name == "lh":
        return LH
    if name == "z":
        return Z
    if name.startswith("s"):
        return S(int(name[1:]))
    if name.startswith("a"):
        return A(int(name[1:]))
    raise ValueError(f"unknown symbol {name!r}")


# ---------------------------------------------------------------------------
# Polynomial layer: plain dict arithmetic.

P_ZERO: Poly = {}
P_ONE: Poly = {(): 1}


def p_const(c: int) -> Poly:
    return {(): c} if c else {}


def p_sym(sym: Symbol, exp: int = 1) -> Poly:
    if exp == 0:
        return {(): 1}
    if exp < 0:
        raise ValueError("polynomials carry nonnegative exponents; use Scalar")
    return {((sym, exp),): 1}


def p_add(a: Poly, b: Poly) -> Poly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    r = dict(a)
    for m, c in b.items():
        s = r.get(m, 0) + c
        if s:
            r[m] = s
        else:
            r.pop(m, None)
    return r


def p_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        s1, e1 = m1[i]
        s2, e2 = m2[j]
        if s1 == s2:
            out.append((s1, e1 + e2))
            i += 1
            j += 1
        elif s1 < s2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(b) == 1:
        a, b = b, a
    if len(a) == 1:
        ((m1, c1),) = a.items()
        if not m1 and c1 == 1:
            return dict(b)
        return {_mono_mul(m1, m2): c1 * c2 for m2, c2 in b.items()}
    r: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            s = r.get(m, 0) + c1 * c2
            if s:
                r[m] = s
            else:
                r.pop(m, None)
    return r


def p_scale(a: Poly, c: int) -> Poly:
    if c == 0:
        return {}
    if c == 1:
        return a
    return {m: c * co for m, co in a.items()}


def _mono_key(m: Monomial):
    # Total degree descending, then lex on the symbol order with higher
    # powers of earlier symbols first.
    return (-sum(e for _, e in m), tuple((sym, -e) for sym, e in m))


def p_sorted_terms(a: Poly):
    return sorted(a.items(), key=lambda kv: _mono_key(kv[0]))


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _poly_int_content(a: Poly) -> int:
    g = 0
    for c in a.values():
        g = _igcd(g, c)
        if g == 1:
            return 1
    return g


def _poly_mono_content(a: Poly) -> Monomial:
    """Largest monomial dividing every term of a (a nonzero)."""
    it = iter(a)
    common = dict(next(it))
    for m in it:
        if not common:
            break
        md = dict(m)
        for sym in list(common):
            e = md.get(sym, 0)
            if e == 0:
                del common[sym]
            elif e < common[sym]:
                common[sym] = e
    return tuple(sorted(common.items()))


def _mono_div(m: Monomial, d: Monomial) -> Monomial:
    if not d:
        return m
    dd = dict(m)
    for sym, e in d:
        r = dd[sym] - e
        if r:
            dd[sym] = r
        else:
            del dd[sym]
    return tuple(sorted(dd.items()))


def _mono_divides(d: Monomial, m: Monomial) -> bool:
    md = dict(m)
    return all(md.get(sym, 0) >= e for sym, e in d)


def p_div_mono(a: Poly, d: Monomial, c: int = 1) -> Poly:
    return {_mono_div(m, d): co // c for m, co in a.items()}


def p_divexact(a: Poly, b: Poly) -> Poly | None:
    """a / b when the division is exact, else None."""
    if not a:
        return {}
    if not b:
        return None
    rem = dict(a)
    quot: Poly = {}
    bterms = p_sorted_terms(b)
    bm, bc = bterms[0]
    while rem:
        m, c = min(rem.items(), key=lambda kv: _mono_key(kv[0]))
        if c % bc != 0 or not _mono_divides(bm, m):
            return None
        qm = _mono_div(m, bm)
        qc = c // bc
        quot[qm] = qc
        for m2, c2 in b.items():
            mm = _mono_mul(qm, m2)
            s = rem.get(mm, 0) - qc * c2
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return quot


# Multivariate GCD by primitive polynomial remainder sequences.  Inputs here
# stay small (a handful of symbols, modest degree), so the simple scheme is
# plenty.

def _poly_symbols(a: Poly):
    syms = set()
    for m in a:
        for sym, _ in m:
            syms.add(sym)
    return syms


def _as_univariate(a: Poly, x: Symbol) -> Dict[int, Poly]:
    out: Dict[int, Poly] = {}
    for m, c in a.items():
        e = 0
        rest = []
        for sym, ee in m:
            if sym == x:
                e = ee
            else:
                rest.append((sym, ee))
        coeff = out.setdefault(e, {})
        mm = tuple(rest)
        s = coeff.get(mm, 0) + c
        if s:
            coeff[mm] = s
        else:
            coeff.pop(mm, None)
    return {e: c for e, c in out.items() if c}


def _from_univariate(u: Dict[int, Poly], x: Symbol) -> Poly:
    out: Poly = {}
    for e, coeff in u.items():
        xm = p_sym(x, e) if e else P_ONE
        for m, c in p_mul(coeff, xm).items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _uni_deg(u: Dict[int, Poly]) -> int:
    return max(u) if u else -1


def _uni_scale(u: Dict[int, Poly], f: Poly) -> Dict[int, Poly]:
    return {e: p_mul(c, f) for e, c in u.items()}


def _uni_sub(u: Dict[int, Poly], v: Dict[int, Poly]) -> Dict[int, Poly]:
    r = {e: dict(c) for e, c in u.items()}
    for e, c in v.items():
        s = p_sub(r.get(e, {}), c)
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def _uni_shift_mul(u: Dict[int, Poly], k: int) -> Dict[int, Poly]:
    return {e + k: c for e, c in u.items()}


def _uni_prem(a: Dict[int, Poly], b: Dict[int, Poly]) -> Dict[int, Poly]:
    """Pseudo-remainder of a by b in the main variable."""
    da, db = _uni_deg(a), _uni_deg(b)
    lb = b[db]
    r = a
    while r and _uni_deg(r) >= db:
        dr = _uni_deg(r)
        lr = r[dr]
        r = _uni_sub(_uni_scale(r, lb), _uni_shift_mul(_uni_scale(b, lr), dr - db))
    return r


def _uni_content(u: Dict[int, Poly]) -> Poly:
    g: Poly = {}
    for c in u.values():
        g = poly_gcd(g, c)
    return g


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD in Z[symbols], sign-normalized to a positive leading coefficient."""
    if not a:
        g = dict(b)
    elif not b:
        g = dict(a)
    else:
        ca, cb = _poly_int_content(a), _poly_int_content(b)
        ma, mb = _poly_mono_content(a), _poly_mono_content(b)
        mg = tuple(sorted((sym, min(dict(ma).get(sym, 0), dict(mb).get(sym, 0)))
                          for sym in set(dict(ma)) & set(dict(mb))
                          if min(dict(ma).get(sym, 0), dict(mb).get(sym, 0)) > 0))
        aa = p_div_mono(a, ma, ca)
        bb = p_div_mono(b, mb, cb)
        syms = sorted(_poly_symbols(aa) | _poly_symbols(bb))
        if not syms:
            core = p_const(1)
        else:
            x = syms[-1]
            ua, ub = _as_univariate(aa, x), _as_univariate(bb, x)
            conta, contb = _uni_content(ua), _uni_content(ub)
            gcont = poly_gcd(conta, contb)
            ua = {e: p_divexact(c, conta) for e, c in ua.items()}
            ub = {e: p_divexact(c, contb) for e, c in ub.items()}
            if _uni_deg(ua) < _uni_deg(ub):
                ua, ub = ub, ua
            while ub and _uni_deg(ub) > 0:
                r = _uni_prem(ua, ub)
                if r:
                    contr = _uni_content(r)
                    r = {e: p_divexact(c, contr) for e, c in r.items()}
                ua, ub = ub, r
            if ub:  # nonzero constant remainder: primitive parts are coprime
                pp = p_const(1)
            else:
                pp = _from_univariate(ua, x)
            core = p_mul(gcont, pp)
        g = p_mul(p_scale({mg: 1}, _igcd(ca, cb)), core)
    if not g:
        return {}
    lead = p_sorted_terms(g)[0][1]
    if lead < 0:
        g = p_neg(g)
    return g


# ---------------------------------------------------------------------------
# Scalar: the fraction field.

class Scalar:
    """Fraction of integer polynomials in the coefficient symbols.

    Immutable by convention; all operations return fresh values.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _clean: bool = False):
        if den is None:
            den = P_ONE
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not _clean:
            num, den = _reduce_cheap(num, den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(c: int) -> "Scalar":
        return _INT_CACHE.get(c) or Scalar(p_const(c), P_ONE, _clean=True)

    @staticmethod
    def sym(symbol: Symbol, exp: int = 1) -> "Scalar":
        if exp >= 0:
            return Scalar(p_sym(symbol, exp), P_ONE, _clean=True)
        return Scalar(P_ONE, p_sym(symbol, -exp), _clean=True)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            # The denominator cannot grow, so skip renormalization.
            num = p_add(self.num, other.num)
            if not num:
                return ZERO
            return Scalar(num, self.den, _clean=True)
        return Scalar(
            p_add(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(p_neg(self.num), self.den, _clean=True)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not self.num or not other.num:
            return ZERO
        if self is ONE:
            return other
        if other is ONE:
            return self
        # A trivial denominator on either side cannot enlarge the other's,
        # so renormalization is deferred until both are nontrivial.
        if other.den == P_ONE:
            return Scalar(p_mul(self.num, other.num), self.den, _clean=True)
        if self.den == P_ONE:
            return Scalar(p_mul(self.num, other.num), other.den, _clean=True)
        return Scalar(p_mul(self.num, other.num), p_mul(self.den, other.den))

    def invert(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverting the zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.invert()

    def __pow__(self, k: int) -> "Scalar":
        if k == 0:
            return ONE
        base = self if k > 0 else self.invert()
        k = abs(k)
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        # Cross multiplication: exact, no GCD required.
        return p_mul(self.num, other.den) == p_mul(other.num, self.den)

    __hash__ = None  # mutable-by-accident guard; Scalars are dict values only

    # -- canonical form and output ------------------------------------------

    def canonical(self) -> "Scalar":
        """Fully reduced form: GCD removed, denominator leading sign positive."""
        if not self.num:
            return ZERO
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if g != P_ONE:
            num = p_divexact(num, g)
            den = p_divexact(den, g)
        if p_sorted_terms(den)[0][1] < 0:
            num, den = p_neg(num), p_neg(den)
        return Scalar(num, den, _clean=True)

    def __str__(self) -> str:
        c = self.canonical()
        if c.den == P_ONE:
            return poly_str(c.num)
        return f"({poly_str(c.num)})/({poly_str(c.den)})"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _reduce_cheap(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cheap normalization: shared monomial factor, integer content, den sign."""
    if not num:
        return {}, P_ONE
    if den == P_ONE:
        return num, den
    if len(den) == 1:
        # Monomial denominator: the overwhelmingly common case in rewriting.
        ((dm, dc),) = den.items()
        if dm:
            mn = dict(_poly_mono_content(num))
            common = tuple(sorted(
                (sym, min(e, mn[sym])) for sym, e in dm
                if sym in mn and min(e, mn[sym]) > 0))
            if common:
                num = p_div_mono(num, common)
                dm = _mono_div(dm, common)
        if dc < 0:
            num, dc = p_neg(num), -dc
        if dc > 1:
            g = _igcd(dc, _poly_int_content(num))
            if g > 1:
                num = {m: c // g for m, c in num.items()}
                dc //= g
        return num, {dm: dc}
    mn, md = _poly_mono_content(num), _poly_mono_content(den)
    mdn = dict(md)
    common = tuple(sorted(
        (sym, min(e, mdn[sym])) for sym, e in mn if sym in mdn and min(e, mdn[sym]) > 0
    ))
    if common:
        num = p_div_mono(num, common)
        den = p_div_mono(den, common)
    g = _igcd(_poly_int_content(num), _poly_int_content(den))
    if g > 1:
        num = {m: c // g for m, c in num.items()}
        den = {m: c // g for m, c in den.items()}
    if p_sorted_terms(den)[0][1] < 0:
        num, den = p_neg(num), p_neg(den)
    return num, den


def poly_str(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for m, c in p_sorted_terms(a):
        factors = []
        for sym, e in m:
            name = symbol_name(sym)
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


ZERO = Scalar(P_ZERO, P_ONE, _clean=True)
ONE = Scalar(P_ONE, P_ONE, _clean=True)
_INT_CACHE = {0: ZERO, 1: ONE}
_INT_CACHE[-1] = Scalar(p_const(-1), P_ONE, _clean=True)
_INT_CACHE[2] = Scalar(p_const(2), P_ONE, _clean=True)

q = Scalar.sym(QH, 2)
qinv = Scalar.sym(QH, -2)
lam = Scalar.sym(LH, 2)
z_sym = Scalar.sym(Z)

_QPOW_CACHE: Dict[int, Scalar] = {}


def qpow(k: int) -> Scalar:
    """q^k, memoized; the single most common coefficient in rewriting."""
    s = _QPOW_CACHE.get(k)
    if s is None:
        s = Scalar.sym(QH, 2 * k)
        _QPOW_CACHE[k] = s
    return s


def s_param(k: int) -> Scalar:
    return Scalar.sym(S(k))


def a_param(j: int) -> Scalar:
    return Scalar.sym(A(j))


# ---------------------------------------------------------------------------
# Substitution and modular evaluation.

def _eval_poly(a: Poly, bindings: Mapping[Symbol, Scalar]) -> Scalar:
    # Group terms by their bound-symbol part so each substituted power is
    # multiplied in once, against the whole free-part polynomial.
    groups: Dict[Monomial, Poly] = {}
    for m, c in a.items():
        bound = tuple((s, e) for s, e in m if s in bindings)
        free = tuple((s, e) for s, e in m if s not in bindings)
        groups.setdefault(bound, {})[free] = groups.get(bound, {}).get(free, 0) + c

    powers: Dict[Tuple[Symbol, int], Scalar] = {}

    def power(sym: Symbol, e: int) -> Scalar:
        key = (sym, e)
        hit = powers.get(key)
        if hit is None:
            powers[key] = hit = bindings[sym] ** e
        return hit

    total = ZERO
    for bound, freepoly in groups.items():
        factor = Scalar(freepoly, P_ONE)
        for sym, e in bound:
            factor = factor * power(sym, e)
        total = total + factor
    return total


def substitute(value: Scalar, bindings: Mapping[Symbol, Scalar]) -> Scalar:
    """Substitute scalars for symbols; ring homomorphism on its domain."""
    if not bindings:
        return value
    num = _eval_poly(value.num, bindings)
    den = _eval_poly(value.den, bindings)
    if den.is_zero():
        raise EvaluationError("substitution produced a zero denominator")
    return num / den


def _eval_poly_mod(a: Poly, point: Mapping[Symbol, int], p: int) -> int:
    total = 0
    for m, c in a.items():
        t = c % p
        for sym, e in m:
            if sym not in point:
                raise EvaluationError(f"no residue supplied for {symbol_name(sym)}")
            t = (t * pow(point[sym] % p, e, p)) % p
        total = (total + t) % p
    return total


def eval_mod_p(value: Scalar, point: Mapping[Symbol, int], p: int) -> int:
    """Evaluate at an integer point mod a prime p.

    Raises EvaluationError when the denominator vanishes at the point;
    callers doing randomized identity testing should retry with a new point.
    """
    den = _eval_poly_mod(value.den, point, p)
    if den == 0:
        raise EvaluationError("denominator vanishes at the evaluation point")
    num = _eval_poly_mod(value.num, point, p)
    return (num * pow(den, p - 2, p)) % p


def scalar_symbols(value: Scalar) -> set:
    return _poly_symbols(value.num) | _poly_symbols(value.den)


def degree_bound(value: Scalar) -> int:
    """Total-degree bound of num and den; drives Schwartz-Zippel error bounds."""
    def deg(a: Poly) -> int:
        return max((sum(e for _, e in m) for m in a), default=0)
    return max(deg(value.num), deg(value.den))

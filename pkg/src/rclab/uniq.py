"""Uniqueness machinery: shift residuals, determinant certificates, the cubic
positivity certificate, level-1 isobaric structure, and the factorization
argument for bracket-generating series.

The chain of facts certified here, at desk scale:

  * [f g, h]_n = [f, g h]_n for all n forces the middle factor to be
    constant; the n = 1, 2, 3 coefficient analysis reduces this to a 3x3
    determinant (fine_det3) and a cubic polynomial certificate whose
    substituted form has exclusively positive coefficients (p3_*).
  * On a unique-factorization forms ring, equality of the bracket-generating
    series RC(F1, G1) = RC(F2, G2) forces F1 = C F2, G2 = C G1
    (rc_uniqueness_check, plus a seeded randomized search).

The long reference expansion embedded below is the output of an independent
computer-algebra run of the same substitution; it is used purely as a diff
corpus, with the derived polynomial as ground truth.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .coeffsolve import LinSystem, solve
from .exactcore import MPoly, QSeries, Rat, RatLike, binom, rat
from .forms import GradedForm, ModularForm, eisenstein_form
from .nearlyholo import rc_bracket
from .starprod import rc_series

# ---------------------------------------------------------------------------
# Bracket shift residuals and the lowest-degree analysis
# ---------------------------------------------------------------------------


def bracket_shift_residual(f: ModularForm, g: ModularForm, h: ModularForm, n: int) -> ModularForm:
    """[f g, h]_n - [f, g h]_n as an exact form of weight wf+wg+wh+2n."""
    return rc_bracket(f * g, h, n) - rc_bracket(f, g * h, n)


def _pochhammer_mpoly(base: MPoly, n: int) -> MPoly:
    out = MPoly.const(base.vars, 1)
    for i in range(n):
        out = out * (base + i)
    return out


_KLMRST = ("k", "l", "m", "r", "s", "t")


def lowest_q_mpoly(n: int) -> MPoly:
    """Residual of the lowest-q-coefficient identity, symbolic in (k,l,m,r,s,t).

    side1 = sum_p (-1)^p C(n,p) (2k+2l+p)_(n-p) (2m+n-p)_p (r+s)^p t^(n-p)
    side2 = sum_q (-1)^q C(n,q) (2k+q)_(n-q) (2l+2m+n-q)_q r^q (s+t)^(n-q)

    r, s, t are the leading q-exponents of the three factors; the residual
    must vanish whenever the shifted brackets agree at the lowest q-degree.
    """
    k, l, m, r, s, t = MPoly.variables(_KLMRST)
    side1 = MPoly.zero(_KLMRST)
    for p in range(n + 1):
        c = (-1) ** p * binom(n, p)
        term = _pochhammer_mpoly(2 * k + 2 * l + p, n - p) * _pochhammer_mpoly(2 * m + n - p, p)
        side1 = side1 + c * term * (r + s).pow(p) * t.pow(n - p)
    side2 = MPoly.zero(_KLMRST)
    for q in range(n + 1):
        c = (-1) ** q * binom(n, q)
        term = _pochhammer_mpoly(2 * k + q, n - q) * _pochhammer_mpoly(2 * l + 2 * m + n - q, q)
        side2 = side2 + c * term * r.pow(q) * (s + t).pow(n - q)
    return side1 - side2


def lowest_q_identity(
    n: int, k: RatLike, l: RatLike, m: RatLike, r: RatLike, s: RatLike, t: RatLike
) -> Rat:
    """Numeric evaluation of lowest_q_mpoly(n)."""
    vals = dict(zip(_KLMRST, (rat(k), rat(l), rat(m), rat(r), rat(s), rat(t))))
    return lowest_q_mpoly(n).evaluate(vals)


# ---------------------------------------------------------------------------
# The 3x3 determinant certificate
# ---------------------------------------------------------------------------


def _fine_rows_mpoly() -> list[list[MPoly]]:
    """Rows n = 1, 2, 3 of the first-coefficient linear system, symbolic.

    A_n1 = (-1)^n [(2m)_n - (2l+2m)_n],  A_n2 = (-1)^n (2m)_n - (2k)_n,
    A_n3 = (2k+2l)_n - (2k)_n.
    """
    k, l, m = MPoly.variables(("k", "l", "m"))
    rows = []
    for n in (1, 2, 3):
        sign = (-1) ** n
        a1 = sign * (_pochhammer_mpoly(2 * m, n) - _pochhammer_mpoly(2 * l + 2 * m, n))
        a2 = sign * _pochhammer_mpoly(2 * m, n) - _pochhammer_mpoly(2 * k, n)
        a3 = _pochhammer_mpoly(2 * k + 2 * l, n) - _pochhammer_mpoly(2 * k, n)
        rows.append([a1, a2, a3])
    return rows


def fine_det3_mpoly() -> MPoly:
    """Symbolic determinant of the n = 1..3 system, a polynomial in (k,l,m)."""
    r = _fine_rows_mpoly()
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )


def fine_det3(k: int, l: int, m: int) -> Rat:
    """Exact value of the 3x3 determinant; negative for m >= k >= 1, l >= 1."""
    return fine_det3_mpoly().evaluate({"k": k, "l": l, "m": m})


# ---------------------------------------------------------------------------
# The cubic certificate
# ---------------------------------------------------------------------------

_KLMRT = ("k", "l", "m", "r", "t")


def p3_build() -> MPoly:
    """The cleared degree-3 residual, derived (never transcribed).

    Take the n = 3 lowest-degree residual, substitute s = l(r+t)/(k+m), and
    clear the denominator by (k+m)^3.  The result is a polynomial in
    (k, l, m, r, t), homogeneous of degree 3 in (r, t) and divisible by
    4 l (r + t).
    """
    r3 = lowest_q_mpoly(3)
    k, l, m, r, t = MPoly.variables(_KLMRT)
    km = k + m
    lrt = l * (r + t)
    out = MPoly.zero(_KLMRT)
    # group by the power of s and clear (k+m)^3 exactly
    by_s: dict[int, dict[tuple[int, ...], Rat]] = {}
    s_idx = _KLMRST.index("s")
    for exp, c in r3.terms.items():
        d = exp[s_idx]
        reduced = tuple(e for i, e in enumerate(exp) if i != s_idx)
        by_s.setdefault(d, {})[reduced] = by_s.setdefault(d, {}).get(reduced, Fraction(0)) + c
    for d, terms in by_s.items():
        part = MPoly(_KLMRT, terms)
        out = out + part * lrt.pow(d) * km.pow(3 - d)
    return out


def p3_substituted() -> MPoly:
    """p3_build with the positive-parameter direction substituted in.

    r -> (3k+m)(k+l+m) + (k+m),  t -> (k+3m)(k+l+m) + (k+m); because the
    cleared residual is (r,t)-homogeneous of degree 3 the scale parameter
    only contributes a cubic overall factor, which is dropped.
    """
    p3 = p3_build()
    k, l, m = MPoly.variables(("k", "l", "m"))
    r_img = (3 * k + m) * (k + l + m) + (k + m)
    t_img = (k + 3 * m) * (k + l + m) + (k + m)
    r_idx, t_idx = _KLMRT.index("r"), _KLMRT.index("t")
    for exp in p3.terms:
        if exp[r_idx] + exp[t_idx] != 3:
            raise AssertionError("cleared residual is not (r,t)-homogeneous of degree 3")
    out = MPoly.zero(("k", "l", "m"))
    for exp, c in p3.terms.items():
        base = MPoly.const(("k", "l", "m"), c)
        for i, e in enumerate(exp):
            if not e:
                continue
            name = _KLMRT[i]
            if name == "r":
                base = base * r_img.pow(e)
            elif name == "t":
                base = base * t_img.pow(e)
            else:
                base = base * MPoly.var(("k", "l", "m"), name).pow(e)
        out = out + base
    return out


def _parse_poly(text: str, vars: tuple[str, ...]) -> MPoly:
    """Parse '+ 48 k^5 l - 3 m t^2'-style monomial lists."""
    text = text.replace("\n", " ")
    out = MPoly.zero(vars)
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        parts = chunk.split()
        coeff = Fraction(1)
        exp = [0] * len(vars)
        for piece in parts:
            if piece[0].isdigit():
                coeff = Fraction(piece)
                continue
            if "^" in piece:
                name, p = piece.split("^")
                exp[vars.index(name)] += int(p)
            else:
                exp[vars.index(piece)] += 1
        out = out + MPoly(vars, {tuple(exp): sign * coeff})
    return out


# Independent computer-algebra expansion of the inner factor (the quantity
# multiplying 4 l (r + t) in the cleared residual).  The published copy shows
# transcription damage at two spots ('--' run-on, and a dropped operator before
# '3 k l^2 m r^2'); both are restored as minus, the sign the (k,m,r,t)
# exchange symmetry of the polynomial dictates.  The diff in
# p3_certify_report records any remaining disagreement.
_REFERENCE_INNER_RT = """
-3 k^2 r^2 - 2 k^3 r^2 + 3 k l r^2 + 2 k l^2 r^2 - 6 k m r^2 - 15 k^2 m r^2
- 3 k^3 m r^2 + 3 l m r^2 - 9 k l m r^2 - 6 k^2 l m r^2 - 3 k l^2 m r^2
- 3 m^2 r^2 - 24 k m^2 r^2 - 15 k^2 m^2 r^2 - 9 l m^2 r^2 - 24 k l m^2 r^2
- 9 l^2 m^2 r^2 - 11 m^3 r^2 - 21 k m^3 r^2 - 18 l m^3 r^2 - 9 m^4 r^2
+ 12 k^2 r t + 17 k^3 r t + 3 k^4 r t + 6 k l r t + 21 k^2 l r t + 6 k^3 l r t
+ 4 k l^2 r t + 3 k^2 l^2 r t + 24 k m r t + 51 k^2 m r t + 24 k^3 m r t
+ 6 l m r t + 42 k l m r t + 42 k^2 l m r t + 4 l^2 m r t + 18 k l^2 m r t
+ 12 m^2 r t + 51 k m^2 r t + 42 k^2 m^2 r t + 21 l m^2 r t + 42 k l m^2 r t
+ 3 l^2 m^2 r t + 17 m^3 r t + 24 k m^3 r t + 6 l m^3 r t + 3 m^4 r t
- 3 k^2 t^2 - 11 k^3 t^2 - 9 k^4 t^2 + 3 k l t^2 - 9 k^2 l t^2 - 18 k^3 l t^2
+ 2 k l^2 t^2 - 9 k^2 l^2 t^2 - 6 k m t^2 - 24 k^2 m t^2 - 21 k^3 m t^2
+ 3 l m t^2 - 9 k l m t^2 - 24 k^2 l m t^2 + 2 l^2 m t^2 - 3 k l^2 m t^2
- 3 m^2 t^2 - 15 k m^2 t^2 - 15 k^2 m^2 t^2 - 6 k l m^2 t^2 - 2 m^3 t^2
- 3 k m^3 t^2 + 2 l^2 m r^2
"""

# Independent computer-algebra expansion of the substituted cubic (the overall
# cubic scale factor stripped).  Transcribed as published; compared
# monomial-by-monomial against the derived expansion in p3_certify_report.
_REFERENCE_SUBSTITUTED = """
48 k^5 l + 320 k^6 l + 720 k^7 l + 672 k^8 l + 256 k^9 l
+ 96 k^4 l^2 + 960 k^5 l^2 + 2976 k^6 l^2 + 3552 k^7 l^2 + 1536 k^8 l^2
+ 640 k^4 l^3 + 3792 k^5 l^3 + 6624 k^6 l^3 + 3584 k^7 l^3
+ 1536 k^4 l^4 + 5280 k^5 l^4 + 4096 k^6 l^4 + 1536 k^4 l^5 + 2304 k^5 l^5
+ 512 k^4 l^6 + 240 k^4 l m + 1920 k^5 l m + 5232 k^6 l m + 5760 k^7 l m
+ 2304 k^8 l m + 384 k^3 l^2 m + 4800 k^4 l^2 m + 18240 k^5 l^2 m
+ 26016 k^6 l^2 m + 12288 k^7 l^2 m + 2560 k^3 l^3 m + 19152 k^4 l^3 m
+ 40896 k^5 l^3 m + 25088 k^6 l^3 m + 6144 k^3 l^4 m + 26784 k^4 l^4 m
+ 24576 k^5 l^4 m + 6144 k^3 l^5 m + 11520 k^4 l^5 m + 2048 k^3 l^6 m
+ 480 k^3 l m^2 + 4800 k^4 l m^2 + 16080 k^5 l m^2 + 21120 k^6 l m^2
+ 9216 k^7 l m^2 + 576 k^2 l^2 m^2 + 9600 k^3 l^2 m^2 + 46176 k^4 l^2 m^2
+ 80352 k^5 l^2 m^2 + 43008 k^6 l^2 m^2 + 3840 k^2 l^3 m^2 + 38496 k^3 l^3 m^2
+ 103968 k^4 l^3 m^2 + 75264 k^5 l^3 m^2 + 9216 k^2 l^4 m^2 + 53952 k^3 l^4 m^2
+ 61440 k^4 l^4 m^2 + 9216 k^2 l^5 m^2 + 23040 k^3 l^5 m^2 + 3072 k^2 l^6 m^2
+ 480 k^2 l m^3 + 6400 k^3 l m^3 + 27120 k^4 l m^3 + 43392 k^5 l m^3
+ 21504 k^6 l m^3 + 384 k l^2 m^3 + 9600 k^2 l^2 m^3 + 61824 k^3 l^2 m^3
+ 135840 k^4 l^2 m^3 + 86016 k^5 l^2 m^3 + 2560 k l^3 m^3 + 38496 k^2 l^3 m^3
+ 139392 k^3 l^3 m^3 + 125440 k^4 l^3 m^3 + 6144 k l^4 m^3 + 53952 k^2 l^4 m^3
+ 81920 k^3 l^4 m^3 + 6144 k l^5 m^3 + 23040 k^2 l^5 m^3 + 2048 k l^6 m^3
+ 240 k l m^4 + 4800 k^2 l m^4 + 27120 k^3 l m^4 + 54720 k^4 l m^4 + 256 l m^9
+ 32256 k^5 l m^4 + 96 l^2 m^4 + 4800 k l^2 m^4 + 46176 k^2 l^2 m^4
+ 135840 k^3 l^2 m^4 + 107520 k^4 l^2 m^4 + 640 l^3 m^4 + 19152 k l^3 m^4
+ 103968 k^2 l^3 m^4 + 125440 k^3 l^3 m^4 + 1536 l^4 m^4 + 26784 k l^4 m^4
+ 61440 k^2 l^4 m^4 + 1536 l^5 m^4 + 11520 k l^5 m^4 + 512 l^6 m^4
+ 48 l m^5 + 1920 k l m^5 + 16080 k^2 l m^5 + 43392 k^3 l m^5 + 32256 k^4 l m^5
+ 960 l^2 m^5 + 18240 k l^2 m^5 + 80352 k^2 l^2 m^5 + 86016 k^3 l^2 m^5
+ 3792 l^3 m^5 + 40896 k l^3 m^5 + 75264 k^2 l^3 m^5 + 5280 l^4 m^5
+ 24576 k l^4 m^5 + 2304 l^5 m^5 + 320 l m^6 + 5232 k l m^6 + 21120 k^2 l m^6
+ 21504 k^3 l m^6 + 2976 l^2 m^6 + 26016 k l^2 m^6 + 43008 k^2 l^2 m^6
+ 6624 l^3 m^6 + 25088 k l^3 m^6 + 4096 l^4 m^6 + 720 l m^7 + 5760 k l m^7
+ 9216 k^2 l m^7 + 3552 l^2 m^7 + 12288 k l^2 m^7 + 3584 l^3 m^7
+ 672 l m^8 + 2304 k l m^8 + 1536 l^2 m^8
"""


def p3_reference_inner() -> MPoly:
    return _parse_poly(_REFERENCE_INNER_RT, _KLMRT)


def p3_reference_substituted() -> MPoly:
    return _parse_poly(_REFERENCE_SUBSTITUTED, ("k", "l", "m"))


def poly_diff_report(built: MPoly, reference: MPoly) -> list[dict]:
    """Monomial-by-monomial comparison; one record per disagreeing monomial."""
    diffs = []
    for exp in sorted(set(built.terms) | set(reference.terms)):
        b = built.terms.get(exp, Fraction(0))
        r = reference.terms.get(exp, Fraction(0))
        if b != r:
            mono = "*".join(
                f"{n}^{e}" if e > 1 else n for n, e in zip(built.vars, exp) if e
            ) or "1"
            diffs.append({"monomial": mono, "derived": str(b), "reference": str(r)})
    return diffs


def p3_certify_report() -> dict:
    """Positivity certificate plus the diff against the reference expansions.

    The derived polynomial is ground truth; the report records whether every
    substituted coefficient is positive, spot values for the first and last
    published monomials, and the full monomial diffs.
    """
    built = p3_build()
    k, l, m, r, t = MPoly.variables(_KLMRT)
    divisor = 4 * l * (r + t)
    inner = built.div_exact(divisor)
    substituted = p3_substituted()
    positive, witness = substituted.all_coeffs_positive()
    return {
        "substituted_all_positive": positive,
        "positivity_witness": None if witness is None else str(witness),
        "coeff_k5_l": substituted.coeff_of_monomial(k=5, l=1),
        "coeff_l2_m8": substituted.coeff_of_monomial(l=2, m=8),
        "inner_diff": poly_diff_report(inner, p3_reference_inner()),
        "substituted_diff": poly_diff_report(substituted, p3_reference_substituted()),
        "term_count": len(substituted.terms),
    }


def p3_substitute_and_certify() -> tuple[bool, dict]:
    rep = p3_certify_report()
    return rep["substituted_all_positive"], rep


# ---------------------------------------------------------------------------
# Isobaric structure of the level-1 ring
# ---------------------------------------------------------------------------


class IsobaricPoly:
    """Polynomial in the two ring generators g4, g6: terms (a, b) -> Rat."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], RatLike] | None = None):
        self.terms: dict[tuple[int, int], Rat] = {}
        for (a, b), c in (terms or {}).items():
            c = rat(c)
            if c != 0:
                if a < 0 or b < 0:
                    raise ValueError("exponents must be >= 0")
                self.terms[(a, b)] = c

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int | None:
        """Common weight 4a + 6b of the monomials, or None if mixed/zero."""
        ws = {4 * a + 6 * b for a, b in self.terms}
        if len(ws) == 1:
            return next(iter(ws))
        return None

    def __add__(self, other: IsobaricPoly) -> IsobaricPoly:
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return IsobaricPoly(out)

    def __sub__(self, other: IsobaricPoly) -> IsobaricPoly:
        return self + other.scale(-1)

    def scale(self, c: RatLike) -> IsobaricPoly:
        c = rat(c)
        return IsobaricPoly({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: IsobaricPoly) -> IsobaricPoly:
        out: dict[tuple[int, int], Rat] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return IsobaricPoly(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IsobaricPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_form(self, prec: int) -> ModularForm:
        w = self.weight()
        if w is None:
            raise ValueError("only weight-homogeneous polynomials convert to forms")
        e4 = eisenstein_form(4, prec)
        e6 = eisenstein_form(6, prec)
        total = QSeries.zero(prec)
        for (a, b), c in self.terms.items():
            total = total + (e4.series.pow(a) * e6.series.pow(b)).scale(c)
        return ModularForm(w, total)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            factors = [str(self.terms[(a, b)])]
            if a:
                factors.append(f"g4^{a}" if a > 1 else "g4")
            if b:
                factors.append(f"g6^{b}" if b > 1 else "g6")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


def weight_basis(weight: int) -> list[tuple[int, int]]:
    """All (a, b) with 4a + 6b = weight, the monomial basis of that weight."""
    if weight < 0 or weight % 2:
        return []
    out = []
    for b in range(weight // 6 + 1):
        rem = weight - 6 * b
        if rem % 4 == 0:
            out.append((rem // 4, b))
    return sorted(out)


def form_to_isobaric(f: ModularForm) -> IsobaricPoly:
    """Exact generator coordinates of a level-1 form, by matching q-expansions.

    Requires prec >= dim of the weight space; raises ValueError when the
    series is not a weight-w polynomial in the generators to the available
    precision.
    """
    basis = weight_basis(f.weight)
    if not basis:
        if f.is_zero():
            return IsobaricPoly({})
        raise ValueError(f"no monomials of weight {f.weight}")
    dim = len(basis)
    if f.prec < dim:
        raise ValueError(f"need prec >= {dim} to resolve weight {f.weight}, have {f.prec}")
    prec = f.prec
    e4 = eisenstein_form(4, prec)
    e6 = eisenstein_form(6, prec)
    columns = [(e4.series.pow(a) * e6.series.pow(b)) for a, b in basis]
    sys = LinSystem(list(range(dim)))
    for i in range(prec):
        sys.add_row({j: columns[j].coeff(i) for j in range(dim)}, f.series.coeff(i))
    res = solve(sys)
    if not res.consistent:
        raise ValueError("series does not lie in the span of the generator monomials")
    if res.nullity != 0:
        raise ValueError("generator monomials unexpectedly dependent")
    out = IsobaricPoly({basis[j]: res.solution[j] for j in range(dim)})
    if out.to_form(prec).series != f.series:
        raise ValueError("round-trip mismatch; input is not modular of this weight")
    return out


# -- gcd over the two-generator polynomial ring ------------------------------
#
# Univariate polynomials over Q are plain coefficient lists (lowest first);
# the gcd in Q[g4, g6] is computed as a Euclidean gcd in g6 over the rational
# function field Q(g4), then content-normalized back into the ring.


def _upoly_trim(p: list[Rat]) -> list[Rat]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_mul(p: list[Rat], q: list[Rat]) -> list[Rat]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _upoly_trim(out)


def _upoly_divmod(p: list[Rat], q: list[Rat]) -> tuple[list[Rat], list[Rat]]:
    if not q:
        raise ZeroDivisionError
    p = list(p)
    out = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        c = p[-1] / q[-1]
        d = len(p) - len(q)
        out[d] = c
        for i, b in enumerate(q):
            p[d + i] -= c * b
        _upoly_trim(p)
        if not p:
            break
    return _upoly_trim(out), p


def _upoly_gcd(p: list[Rat], q: list[Rat]) -> list[Rat]:
    p, q = list(p), list(q)
    while q:
        p, q = q, _upoly_divmod(p, q)[1]
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def isobaric_gcd(p: IsobaricPoly, q: IsobaricPoly) -> IsobaricPoly:
    """Gcd in the two-generator ring, normalized to lex leading coefficient 1."""
    if p.is_zero() or q.is_zero():
        base = q if p.is_zero() else p
        if base.is_zero():
            return IsobaricPoly({})
        lead = max(base.terms)
        return base.scale(1 / base.terms[lead])
    # monomial content: the generators are primes of the ring
    a_min = min(min(a for a, _ in r.terms) for r in (p, q))
    b_min = min(min(b for _, b in r.terms) for r in (p, q))

    def strip(r: IsobaricPoly) -> dict[int, list[Rat]]:
        ra = min(a for a, _ in r.terms)
        rb = min(b for _, b in r.terms)
        cols: dict[int, list[Rat]] = {}
        for (a, b), c in r.terms.items():
            col = cols.setdefault(b - rb, [])
            while len(col) <= a - ra:
                col.append(Fraction(0))
            col[a - ra] = c
        return cols

    def as_g6_poly(cols: dict[int, list[Rat]]) -> list[list[Rat]]:
        deg = max(cols)
        return [_upoly_trim(list(cols.get(b, []))) for b in range(deg + 1)]

    pp = as_g6_poly(strip(p))
    qq = as_g6_poly(strip(q))

    # Euclid in g6 over Q(g4), fraction-free via pseudo-division
    def content(poly: list[list[Rat]]) -> list[Rat]:
        g: list[Rat] = []
        for c in poly:
            if c:
                g = _upoly_gcd(g, c) if g else [ci / c[-1] for ci in c]
        return g or [Fraction(1)]

    def primitive(poly: list[list[Rat]]) -> list[list[Rat]]:
        g = content(poly)
        return [(_upoly_divmod(c, g)[0] if c else []) for c in poly]

    def trim2(poly: list[list[Rat]]) -> list[list[Rat]]:
        while poly and not poly[-1]:
            poly.pop()
        return poly

    a, b = trim2(primitive(pp)), trim2(primitive(qq))
    while b:
        # pseudo-remainder: multiply a by lead(b)^(deg gap + 1) then reduce
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        lead_b = b[-1]
        scaled = [_upoly_mul(c, lead_b) for c in a]
        c_top = a[-1]
        shift = da - db
        sub = [[] for _ in range(shift)] + [_upoly_mul(c, c_top) for c in b]
        rem = []
        for i in range(max(len(scaled), len(sub))):
            x = scaled[i] if i < len(scaled) else []
            y = sub[i] if i < len(sub) else []
            n = max(len(x), len(y))
            xi = list(x) + [Fraction(0)] * (n - len(x))
            for j in range(len(y)):
                xi[j] -= y[j]
            rem.append(_upoly_trim(xi))
        rem = trim2(rem)
        a, b = b, trim2(primitive(rem)) if rem else []
    g_cols = a
    out_terms: dict[tuple[int, int], Rat] = {}
    for bdeg, col in enumerate(g_cols):
        for adeg, c in enumerate(col):
            if c != 0:
                out_terms[(adeg + a_min, bdeg + b_min)] = c
    out = IsobaricPoly(out_terms)
    if out.is_zero():
        return out
    lead = max(out.terms)
    return out.scale(1 / out.terms[lead])


# ---------------------------------------------------------------------------
# Uniqueness of factorizations of the bracket series
# ---------------------------------------------------------------------------


def rc_uniqueness_check(
    f1: GradedForm, g1: GradedForm, f2: GradedForm, g2: GradedForm, order: int, prec: int
) -> dict:
    """Test RC(f1, g1) = RC(f2, g2) and, when equal, recover the constant.

    Returns {"equal", "C", "proportional", "counterexample"}; counterexample
    is True only when the series agree but no constant C reconciles
    f1 = C f2 and g2 = C g1 part-by-part, which would contradict the
    factorization property.
    """
    f1, g1 = f1.truncate(prec), g1.truncate(prec)
    f2, g2 = f2.truncate(prec), g2.truncate(prec)
    t1 = rc_series(f1, g1, order)
    t2 = rc_series(f2, g2, order)
    if t1 != t2:
        return {"equal": False, "C": None, "proportional": False, "counterexample": False}
    if f1.is_zero() or f2.is_zero() or g1.is_zero() or g2.is_zero():
        degenerate = (f1.is_zero() or g1.is_zero()) and (f2.is_zero() or g2.is_zero())
        return {
            "equal": True,
            "C": None,
            "proportional": degenerate,
            "counterexample": not degenerate,
        }
    w1, w2 = min(f1.weights()), min(f2.weights())
    if w1 != w2:
        return {"equal": True, "C": None, "proportional": False, "counterexample": True}
    s1, s2 = f1.parts[w1].series, f2.parts[w2].series
    v = s2.valuation()
    if v is None or s1.valuation() != v:
        return {"equal": True, "C": None, "proportional": False, "counterexample": True}
    c = s1.coeff(v) / s2.coeff(v)
    ok = f1 == f2.scale(c) and g2 == g1.scale(c)
    return {"equal": True, "C": c if ok else None, "proportional": ok, "counterexample": not ok}


def _random_graded(rng: random.Random, prec: int, max_parts: int = 2) -> GradedForm:
    weights = rng.sample([4, 6, 8, 10, 12, 14, 16], k=rng.randint(1, max_parts))
    out = GradedForm.zero()
    for w in weights:
        coeffs = {}
        for ab in weight_basis(w):
            c = rng.randint(-3, 3)
            if c:
                coeffs[ab] = Fraction(c)
        if not coeffs:
            coeffs[weight_basis(w)[0]] = Fraction(1)
        out = out + GradedForm.from_form(IsobaricPoly(coeffs).to_form(prec))
    return out


def random_uniqueness_search(seeds: int, order: int = 3, prec: int = 15, seed0: int = 0) -> dict:
    """Seeded search for violations of the factorization property.

    Each trial draws two random graded pairs; every third trial replaces the
    second pair by an exact rescaling of the first to exercise the recovery
    path.  Series comparison escalates order-by-order so non-matching pairs
    exit cheaply.  Returns counts; 'counterexamples' must stay 0.
    """
    stats = {"trials": seeds, "equal_pairs": 0, "recovered_constants": 0, "counterexamples": 0}
    for i in range(seeds):
        rng = random.Random(seed0 + i)
        f1 = _random_graded(rng, prec)
        g1 = _random_graded(rng, prec)
        if i % 3 == 0:
            c = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice((1, -1))
            f2, g2 = f1.scale(1 / c), g1.scale(c)
        else:
            f2 = _random_graded(rng, prec)
            g2 = _random_graded(rng, prec)
        # cheap escalating comparison before the full check
        differs = False
        for n in range(order + 1):
            a = _rc_term(f1, g1, n)
            b = _rc_term(f2, g2, n)
            if a != b:
                differs = True
                break
        if differs:
            continue
        res = rc_uniqueness_check(f1, g1, f2, g2, order, prec)
        if res["equal"]:
            stats["equal_pairs"] += 1
            if res["proportional"] and res["C"] is not None:
                stats["recovered_constants"] += 1
            if res["counterexample"]:
                stats["counterexamples"] += 1
    return stats


def _rc_term(f: GradedForm, g: GradedForm, n: int) -> GradedForm:
    acc = GradedForm.zero()
    for x in f.weights():
        for y in g.weights():
            acc = acc + GradedForm.from_form(rc_bracket(f.parts[x], g.parts[y], n))
    return acc

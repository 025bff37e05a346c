"""Deformed products on graded forms and their associativity bookkeeping.

A star product here is hbar-formal:

    f * g = sum_n  coeff(n, x, y) * gauge^n * [f, g]_n * hbar^n

with x, y the weights of the graded parts.  Three coefficient kinds:

  eholzer      coeff = 1
  cmz(kappa)   coeff = t_n^kappa, the classical hypergeometric-style family;
               the gauge defaults to -4 so that the first-order coefficient
               is normalized to A_1(x, y) = x y
  table        coeff = A_n(x, y) / ((x)_n (y)_n) from an explicit A-table

The reduced associativity identities (ident_residual) identify, for each
hbar-degree n and each p = 0..n, the coefficient of dtil^(n-p) f * g *
dtil^p h in the two ways of bracketing a triple product.  The version
implemented carries the multinomial factors C(n, r), C(n, s) on the interior
terms; free_assoc_residual expands both bracketings completely in the free
triple-product model and is the independent oracle for that reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import Rat, RatLike, binom, pochhammer, rat
from .forms import GradedForm
from .nearlyholo import rc_bracket


class PoleError(ValueError):
    """A coefficient denominator vanished for the requested parameters."""


def cmz_coeff(kappa: RatLike, k: RatLike, l: RatLike, n: int) -> Rat:
    """The classical deformation coefficient t_n^kappa(k, l).

    t_n^kappa = (-1/4)^n sum_j C(n, 2j)
                * C(-1/2, j) C(kappa-3/2, j) C(1/2-kappa, j)
                / [C(-k-1/2, j) C(-l-1/2, j) C(n+k+l-3/2, j)]

    k, l are the half-weights of the two factors.  Raises PoleError when a
    denominator binomial vanishes (never for positive integer k, l).
    """
    kappa, k, l = rat(kappa), rat(k), rat(l)
    if n < 0:
        raise ValueError("n must be >= 0")
    total = Fraction(0)
    for j in range(n // 2 + 1):
        top = binom(n, 2 * j)
        if top == 0:
            continue
        num = binom(Fraction(-1, 2), j) * binom(kappa - Fraction(3, 2), j) * binom(
            Fraction(1, 2) - kappa, j
        )
        den = (
            binom(-k - Fraction(1, 2), j)
            * binom(-l - Fraction(1, 2), j)
            * binom(n + k + l - Fraction(3, 2), j)
        )
        if den == 0:
            raise PoleError(f"t_{n}^{kappa}({k},{l}): denominator binomial vanishes at j={j}")
        total += top * num / den
    return Fraction(-1, 4) ** n * total


@dataclass(frozen=True)
class StarCoefficients:
    """Coefficient rule for a star product, plus an hbar gauge rescaling."""

    kind: str  # 'eholzer' | 'cmz' | 'table'
    kappa: Rat | None = None
    table: "object | None" = None  # ATable-like with .get(n, x, y)
    gauge: Rat = Fraction(1)

    @staticmethod
    def eholzer() -> StarCoefficients:
        return StarCoefficients("eholzer")

    @staticmethod
    def cmz(kappa: RatLike, gauge: RatLike = Fraction(-4)) -> StarCoefficients:
        return StarCoefficients("cmz", kappa=rat(kappa), gauge=rat(gauge))

    @staticmethod
    def from_table(table, gauge: RatLike = Fraction(1)) -> StarCoefficients:
        return StarCoefficients("table", table=table, gauge=rat(gauge))

    def coefficient(self, n: int, x: int, y: int) -> Rat:
        """Scalar multiplying [.,.]_n between weight-x and weight-y parts."""
        base: Rat
        if self.kind == "eholzer":
            base = Fraction(1)
        elif self.kind == "cmz":
            if x <= 0 or y <= 0:
                raise PoleError(f"cmz coefficients need positive weights, got ({x}, {y})")
            base = cmz_coeff(self.kappa, Fraction(x, 2), Fraction(y, 2), n)
        elif self.kind == "table":
            den = pochhammer(x, n) * pochhammer(y, n)
            if den == 0:
                raise PoleError(f"table normalization ({x})_{n} ({y})_{n} vanishes")
            base = self.table.get(n, x, y) / den
        else:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        return base * self.gauge**n


@dataclass(frozen=True)
class HbarSeries:
    """Truncated hbar-expansion with GradedForm coefficients (orders 0..order)."""

    order: int
    terms: tuple[GradedForm, ...]

    @staticmethod
    def make(order: int, terms: list[GradedForm]) -> HbarSeries:
        if len(terms) != order + 1:
            raise ValueError("need exactly order+1 terms")
        return HbarSeries(order, tuple(terms))

    @staticmethod
    def zero(order: int) -> HbarSeries:
        return HbarSeries(order, tuple(GradedForm.zero() for _ in range(order + 1)))

    @staticmethod
    def from_graded(f: GradedForm, order: int) -> HbarSeries:
        return HbarSeries(order, (f,) + tuple(GradedForm.zero() for _ in range(order)))

    def term(self, n: int) -> GradedForm:
        return self.terms[n]

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def __add__(self, other: HbarSeries) -> HbarSeries:
        order = min(self.order, other.order)
        return HbarSeries(order, tuple(self.terms[i] + other.terms[i] for i in range(order + 1)))

    def __sub__(self, other: HbarSeries) -> HbarSeries:
        order = min(self.order, other.order)
        return HbarSeries(order, tuple(self.terms[i] - other.terms[i] for i in range(order + 1)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HbarSeries)
            and self.order == other.order
            and all(a == b for a, b in zip(self.terms, other.terms))
        )

    def __hash__(self) -> int:
        return hash((self.order, self.terms))

    def to_json_obj(self) -> dict:
        return {"order": self.order, "terms": [t.to_json_obj() for t in self.terms]}

    def __str__(self) -> str:
        lines = [f"hbar^{n}: {t}" for n, t in enumerate(self.terms)]
        return "\n".join(lines)


def star_product(f: GradedForm, g: GradedForm, coeffs: StarCoefficients, order: int) -> HbarSeries:
    """Star product of two graded forms, truncated at hbar^order.

    Weight-0 parts are fine for the eholzer/table kinds: their brackets of
    degree >= 1 vanish identically, so the table normalization is never
    consulted there.  The cmz kind keeps its positive-weight precondition.
    """
    terms = []
    for n in range(order + 1):
        acc = GradedForm.zero()
        for x in f.weights():
            for y in g.weights():
                b = rc_bracket(f.parts[x], g.parts[y], n)
                if b.is_zero() and coeffs.kind != "cmz":
                    continue
                c = coeffs.coefficient(n, x, y)
                if c != 0:
                    acc = acc + GradedForm.from_form(b.scale(c))
        terms.append(acc)
    return HbarSeries.make(order, terms)


def star_hbar(u: HbarSeries, v: HbarSeries, coeffs: StarCoefficients, order: int) -> HbarSeries:
    """Bilinear extension of the star product to hbar-series operands."""
    terms = [GradedForm.zero() for _ in range(order + 1)]
    for a in range(min(u.order, order) + 1):
        if u.terms[a].is_zero():
            continue
        for b in range(min(v.order, order - a) + 1):
            if v.terms[b].is_zero():
                continue
            partial = star_product(u.terms[a], v.terms[b], coeffs, order - a - b)
            for n in range(partial.order + 1):
                terms[a + b + n] = terms[a + b + n] + partial.terms[n]
    return HbarSeries.make(order, terms)


def rc_series(f: GradedForm, g: GradedForm, order: int) -> HbarSeries:
    """The bracket-generating series: term n is the weight-expanded [f, g]_n."""
    return star_product(f, g, StarCoefficients.eholzer(), order)


def assoc_residual(
    f: GradedForm, g: GradedForm, h: GradedForm, coeffs: StarCoefficients, order: int
) -> HbarSeries:
    """(f*g)*h - f*(g*h) truncated at hbar^order; zero iff associative there."""
    fg = star_product(f, g, coeffs, order)
    gh = star_product(g, h, coeffs, order)
    left = star_hbar(fg, HbarSeries.from_graded(h, order), coeffs, order)
    right = star_hbar(HbarSeries.from_graded(f, order), gh, coeffs, order)
    return left - right


# ---------------------------------------------------------------------------
# Reduced associativity identities on the A-coefficients
# ---------------------------------------------------------------------------


def ident_residual(atable, k: int, l: int, m: int, n: int, p: int) -> Rat:
    """Residual of the degree-n, index-p associativity identity at (k, l, m).

    k, l, m are half-weights; x = 2k, y = 2l, z = 2m.  The identity equates
    the coefficient of dtil^(n-p) f * g * dtil^p h in the two bracketings:

      sum_{r=0}^{n-p} C(n,r) C(n-r,p) A_r(x,y) A_{n-r}(x+y+2r, z)
                      / [(x+y+2r)_{n-p-r} (z)_p (x)_r]
    = sum_{s=0}^{p}   C(n,s) C(n-s,n-p) A_s(y,z) A_{n-s}(x, y+z+2s)
                      / [(x)_{n-p} (y+z+2s)_{p-s} (z)_s]

    Returns LHS - RHS; the table must cover every referenced pair.
    """
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got p={p}, n={n}")
    x, y, z = 2 * k, 2 * l, 2 * m
    lhs = Fraction(0)
    for r in range(n - p + 1):
        c = binom(n, r) * binom(n - r, p)
        if c == 0:
            continue
        den = pochhammer(x + y + 2 * r, n - p - r) * pochhammer(z, p) * pochhammer(x, r)
        lhs += c * atable.get(r, x, y) * atable.get(n - r, x + y + 2 * r, z) / den
    rhs = Fraction(0)
    for s in range(p + 1):
        c = binom(n, s) * binom(n - s, n - p)
        if c == 0:
            continue
        den = pochhammer(x, n - p) * pochhammer(y + z + 2 * s, p - s) * pochhammer(z, s)
        rhs += c * atable.get(s, y, z) * atable.get(n - s, x, y + z + 2 * s) / den
    return lhs - rhs


# ---------------------------------------------------------------------------
# Free-model expansion: the oracle behind the reduced identities
# ---------------------------------------------------------------------------


def _pair_star_free(x: int, y: int, coeffs: StarCoefficients, order: int) -> dict[int, dict[tuple[int, int], Rat]]:
    """f*g in the free pair model: level n -> {(a, b): coeff of dtil^a f dtil^b g}."""
    out: dict[int, dict[tuple[int, int], Rat]] = {}
    for n in range(order + 1):
        c = coeffs.coefficient(n, x, y) * pochhammer(x, n) * pochhammer(y, n)
        fact = Fraction(1)
        for i in range(1, n + 1):
            fact /= i
        level: dict[tuple[int, int], Rat] = {}
        for r in range(n + 1):
            v = c * fact * (-1) ** r * binom(n, r)
            if v != 0:
                level[(r, n - r)] = v
        out[n] = level
    return out


def _raise_pair(level: dict[tuple[int, int], Rat], x: int, y: int) -> dict[tuple[int, int], Rat]:
    out: dict[tuple[int, int], Rat] = {}
    for (a, b), c in level.items():
        for key, w in (((a + 1, b), x + a), ((a, b + 1), y + b)):
            v = out.get(key, Fraction(0)) + c * w
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
    return out


def free_assoc_residual(
    weights: tuple[int, int, int], coeffs: StarCoefficients, order: int
) -> dict[tuple[int, tuple[int, int, int]], Rat]:
    """Fully expand (f*g)*h - f*(g*h) in the free triple basis.

    Keys are (hbar-degree, (a, b, c)) for the basis element
    dtil^a f dtil^b g dtil^c h; an associative coefficient family gives the
    empty dict.  This expansion never uses the reduced identities, so it is
    an independent check on them.
    """
    x, y, z = weights
    resid: dict[tuple[int, tuple[int, int, int]], Rat] = {}

    def add(n: int, key: tuple[int, int, int], c: Rat) -> None:
        if c == 0:
            return
        k = (n, key)
        v = resid.get(k, Fraction(0)) + c
        if v == 0:
            resid.pop(k, None)
        else:
            resid[k] = v

    # (f*g)*h
    fg = _pair_star_free(x, y, coeffs, order)
    for n1, level in fg.items():
        w_mid = x + y + 2 * n1
        for n2 in range(order - n1 + 1):
            c2 = coeffs.coefficient(n2, w_mid, z) * pochhammer(w_mid, n2) * pochhammer(z, n2)
            fact = Fraction(1)
            for i in range(1, n2 + 1):
                fact /= i
            raised = level
            for s in range(n2 + 1):
                outer = c2 * fact * (-1) ** s * binom(n2, s) / pochhammer(w_mid, s) / pochhammer(
                    z, n2 - s
                )
                if outer != 0:
                    for (a, b), c in raised.items():
                        add(n1 + n2, (a, b, n2 - s), outer * c / (pochhammer(x, a) * pochhammer(y, b)))
                if s < n2:
                    raised = _raise_pair(raised, x, y)

    # f*(g*h), subtracted
    gh = _pair_star_free(y, z, coeffs, order)
    for n1, level in gh.items():
        w_mid = y + z + 2 * n1
        for n2 in range(order - n1 + 1):
            c2 = coeffs.coefficient(n2, x, w_mid) * pochhammer(x, n2) * pochhammer(w_mid, n2)
            fact = Fraction(1)
            for i in range(1, n2 + 1):
                fact /= i
            raised = level
            for s in range(n2 + 1):
                outer = c2 * fact * (-1) ** (n2 - s) * binom(n2, n2 - s) / pochhammer(
                    w_mid, s
                ) / pochhammer(x, n2 - s)
                if outer != 0:
                    for (b, c_idx), c in raised.items():
                        add(
                            n1 + n2,
                            (n2 - s, b, c_idx),
                            -outer * c / (pochhammer(y, b) * pochhammer(z, c_idx)),
                        )
                if s < n2:
                    raised = _raise_pair(raised, y, z)

    return resid

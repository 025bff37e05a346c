"""Exact scalar, truncated q-series, and sparse multivariate polynomial arithmetic.

Everything downstream works over these three carriers:

  Rat     -- arbitrary-precision rationals (fractions.Fraction, always in
             lowest terms with positive denominator, so equality is structural)
  QSeries -- a truncated power series in q with Rat coefficients; ``prec`` is
             the number of known coefficients (powers 0..prec-1) and is
             propagated as min() through arithmetic, never silently extended
  MPoly   -- a sparse polynomial over an ordered variable list, exponent
             vector -> Rat, with no zero coefficients stored

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rat = Fraction

RatLike = Rat | int | str


def rat(x: RatLike) -> Rat:
    """Coerce ints and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(x: Rat) -> str:
    """Canonical 'p/q' form ('p' when the denominator is 1)."""
    return str(x)


def pochhammer(a: RatLike, n: int) -> Rat:
    """Rising factorial a(a+1)...(a+n-1), with the empty product equal to 1."""
    if n < 0:
        raise ValueError(f"pochhammer length must be >= 0, got {n}")
    a = rat(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def binom(a: RatLike, b: int) -> Rat:
    """Generalized binomial coefficient C(a, b) = a(a-1)...(a-b+1)/b!.

    Defined for any rational a and integer b; zero for b < 0.  Agrees with
    math.comb on nonnegative integers and vanishes for integer 0 <= a < b.
    """
    if b < 0:
        return Fraction(0)
    a = rat(a)
    num = Fraction(1)
    for i in range(b):
        num *= a - i
    return num / math.factorial(b)


# ---------------------------------------------------------------------------
# Truncated q-series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion: coeffs[i] is the coefficient of q^i, i < prec."""

    prec: int
    coeffs: tuple[Rat, ...]

    def __post_init__(self) -> None:
        if self.prec < 1:
            raise ValueError(f"prec must be >= 1, got {self.prec}")
        if len(self.coeffs) != self.prec:
            raise ValueError("coefficient list length must equal prec")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_coeffs(coeffs: Iterable[RatLike], prec: int | None = None) -> QSeries:
        cs = [rat(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if len(cs) < prec:
            cs += [Fraction(0)] * (prec - len(cs))
        return QSeries(prec, tuple(cs[:prec]))

    @staticmethod
    def zero(prec: int) -> QSeries:
        return QSeries(prec, (Fraction(0),) * prec)

    @staticmethod
    def one(prec: int) -> QSeries:
        return QSeries.constant(1, prec)

    @staticmethod
    def constant(c: RatLike, prec: int) -> QSeries:
        return QSeries.from_coeffs([rat(c)], prec)

    @staticmethod
    def q(prec: int) -> QSeries:
        return QSeries.from_coeffs([0, 1], prec)

    # -- basic queries -----------------------------------------------------

    def coeff(self, i: int) -> Rat:
        if not 0 <= i < self.prec:
            raise IndexError(f"coefficient q^{i} not known at prec {self.prec}")
        return self.coeffs[i]

    def __getitem__(self, i: int) -> Rat:
        return self.coeff(i)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self) -> int | None:
        """Lowest power with nonzero coefficient, None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def truncate(self, prec: int) -> QSeries:
        if prec > self.prec:
            raise ValueError(f"cannot extend prec {self.prec} to {prec}")
        return QSeries(prec, self.coeffs[:prec])

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: QSeries) -> QSeries:
        prec = min(self.prec, other.prec)
        return QSeries(prec, tuple(self.coeffs[i] + other.coeffs[i] for i in range(prec)))

    def __sub__(self, other: QSeries) -> QSeries:
        prec = min(self.prec, other.prec)
        return QSeries(prec, tuple(self.coeffs[i] - other.coeffs[i] for i in range(prec)))

    def __neg__(self) -> QSeries:
        return QSeries(self.prec, tuple(-c for c in self.coeffs))

    def __mul__(self, other: QSeries) -> QSeries:
        # Schoolbook Cauchy product; quadratic is fine at desk scale.
        prec = min(self.prec, other.prec)
        out = [Fraction(0)] * prec
        for i, a in enumerate(self.coeffs[:prec]):
            if a == 0:
                continue
            for j in range(prec - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return QSeries(prec, tuple(out))

    def scale(self, c: RatLike) -> QSeries:
        c = rat(c)
        return QSeries(self.prec, tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k; the prec grows by k since low coefficients are exact."""
        if k < 0:
            raise ValueError("negative shifts are not defined on truncated series")
        return QSeries(self.prec + k, (Fraction(0),) * k + self.coeffs)

    def pow(self, e: int) -> QSeries:
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = QSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derive(self) -> QSeries:
        """The operator D = q d/dq: multiply the q^n coefficient by n."""
        return QSeries(self.prec, tuple(n * c for n, c in enumerate(self.coeffs)))

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"prec": self.prec, "coeffs": [rat_str(c) for c in self.coeffs]}

    @staticmethod
    def from_json_obj(obj: Mapping) -> QSeries:
        return QSeries(int(obj["prec"]), tuple(rat(c) for c in obj["coeffs"]))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            elif i == 1:
                parts.append(f"{rat_str(c)}*q")
            else:
                parts.append(f"{rat_str(c)}*q^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self.prec})"


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_derive(a: QSeries) -> QSeries:
    return a.derive()


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MPoly:
    """Sparse polynomial over an ordered tuple of named variables.

    Terms map exponent vectors (one entry per variable) to nonzero Rat
    coefficients.  Adding polynomials with different variable tuples is an
    error; ``substitute`` may move into a superset variable list.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], RatLike] | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        clean: dict[tuple[int, ...], Rat] = {}
        for exp, c in (terms or {}).items():
            c = rat(c)
            if c == 0:
                continue
            if len(exp) != len(self.vars):
                raise ValueError(f"exponent vector {exp} does not match variables {self.vars}")
            clean[tuple(exp)] = c
        self.terms: dict[tuple[int, ...], Rat] = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars: Sequence[str]) -> MPoly:
        return MPoly(vars, {})

    @staticmethod
    def const(vars: Sequence[str], c: RatLike) -> MPoly:
        return MPoly(vars, {(0,) * len(vars): rat(c)})

    @staticmethod
    def var(vars: Sequence[str], name: str) -> MPoly:
        vars = tuple(vars)
        if name not in vars:
            raise KeyError(f"unknown variable {name!r}; have {vars}")
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return MPoly(vars, {tuple(exp): 1})

    @staticmethod
    def variables(names: Sequence[str]) -> list[MPoly]:
        return [MPoly.var(names, n) for n in names]

    # -- ring operations ---------------------------------------------------

    def _check(self, other: MPoly) -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: MPoly | RatLike) -> MPoly:
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly | RatLike) -> MPoly:
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other: RatLike) -> MPoly:
        return MPoly.const(self.vars, other) - self

    def __mul__(self, other: MPoly | RatLike) -> MPoly:
        if not isinstance(other, MPoly):
            c = rat(other)
            return MPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Rat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def pow(self, e: int) -> MPoly:
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = MPoly.const(self.vars, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    __pow__ = pow

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structural queries --------------------------------------------------

    def coeff_of(self, exp: Sequence[int]) -> Rat:
        return self.terms.get(tuple(exp), Fraction(0))

    def coeff_of_monomial(self, **powers: int) -> Rat:
        exp = [0] * len(self.vars)
        for name, p in powers.items():
            if name not in self.vars:
                raise KeyError(f"unknown variable {name!r}; have {self.vars}")
            exp[self.vars.index(name)] = p
        return self.coeff_of(exp)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def all_coeffs_positive(self) -> tuple[bool, tuple[tuple[int, ...], Rat] | None]:
        """True iff every stored coefficient is > 0; else one offending term."""
        for exp in sorted(self.terms):
            if self.terms[exp] <= 0:
                return False, (exp, self.terms[exp])
        return True, None

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, mapping: Mapping[str, MPoly]) -> MPoly:
        """Replace variables by polynomials over a common superset variable list.

        Unmapped variables must exist in the target variable list and are
        carried over unchanged.
        """
        targets = list(mapping.values())
        if not targets:
            return self
        tvars = targets[0].vars
        for p in targets:
            if p.vars != tvars:
                raise ValueError("all substitution images must share one variable list")
        for name in mapping:
            if name not in self.vars:
                raise KeyError(f"unknown variable {name!r}; have {self.vars}")
        images: list[MPoly] = []
        for name in self.vars:
            if name in mapping:
                images.append(mapping[name])
            else:
                if name not in tvars:
                    raise KeyError(f"variable {name!r} missing from target variables {tvars}")
                images.append(MPoly.var(tvars, name))
        out = MPoly.zero(tvars)
        for exp, c in self.terms.items():
            term = MPoly.const(tvars, c)
            for img, e in zip(images, exp):
                if e:
                    term = term * img.pow(e)
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, RatLike]) -> Rat:
        out = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for name, e in zip(self.vars, exp):
                if e:
                    v *= rat(values[name]) ** e
            out += v
        return out

    def div_exact(self, d: MPoly) -> MPoly:
        """Exact quotient self / d; raises ValueError if d does not divide."""
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(d.terms)  # lex-largest exponent of the divisor
        lc = d.terms[lead]
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], Rat] = {}
        while rem:
            e = max(rem)
            diff = tuple(a - b for a, b in zip(e, lead))
            if any(x < 0 for x in diff):
                raise ValueError("not exactly divisible")
            c = rem[e] / lc
            quot[diff] = quot.get(diff, Fraction(0)) + c
            for de, dc in d.terms.items():
                ee = tuple(a + b for a, b in zip(diff, de))
                s = rem.get(ee, Fraction(0)) - c * dc
                if s == 0:
                    rem.pop(ee, None)
                else:
                    rem[ee] = s
        return MPoly(self.vars, quot)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        return [
            {"exp": list(exp), "c": rat_str(self.terms[exp])}
            for exp in sorted(self.terms)
        ]

    @staticmethod
    def from_json_obj(vars: Sequence[str], obj: Iterable[Mapping]) -> MPoly:
        return MPoly(vars, {tuple(t["exp"]): rat(t["c"]) for t in obj})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            factors = [rat_str(self.terms[exp])]
            for name, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


def mp_all_coeffs_positive(p: MPoly) -> tuple[bool, tuple[tuple[int, ...], Rat] | None]:
    return p.all_coeffs_positive()


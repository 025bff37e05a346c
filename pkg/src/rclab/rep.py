"""Formal, pi-free sl2 lowest-weight model and its concrete realization.

Basis phi_n with lowest weight w = 2k; the rescaled operators are

  raise:  phi_n -> (w + n) phi_(n+1)
  lower:  phi_n -> -n phi_(n-1)
  weight: phi_n -> (w + 2n) phi_n

so [lower, raise] = -weight, [weight, raise] = 2 raise, [weight, lower] =
-2 lower, and the Casimir 2(raise lower + lower raise) + weight^2 acts on the
whole module as the scalar w(w - 2) = 4k(k-1).

Tensor and triple vectors are finitely supported rational combinations of
dtil^r f (x) dtil^s g (and a third factor), where dtil is the normalized
raising chain sending phi_n to phi_(n+1); the concrete realization maps these
through rclab.nearlyholo.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import Rat, RatLike, binom, pochhammer, rat
from .forms import ModularForm
from .nearlyholo import NearlyHoloForm, dtil_power, lower as nh_lower, shimura_pow


def _clean(d: dict, key, val: Rat) -> None:
    if val == 0:
        d.pop(key, None)
    else:
        d[key] = val


@dataclass(frozen=True)
class DSVector:
    """Finitely supported vector sum_n c_n phi_n in the weight-w module."""

    lowest_weight: int
    support: tuple[tuple[int, Rat], ...]

    @staticmethod
    def make(lowest_weight: int, support: dict[int, RatLike]) -> DSVector:
        clean = {n: rat(c) for n, c in support.items() if rat(c) != 0}
        if any(n < 0 for n in clean):
            raise ValueError("phi_n indices must be >= 0")
        return DSVector(lowest_weight, tuple(sorted(clean.items())))

    @staticmethod
    def basis(lowest_weight: int, n: int) -> DSVector:
        return DSVector.make(lowest_weight, {n: 1})

    def as_dict(self) -> dict[int, Rat]:
        return dict(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: DSVector) -> DSVector:
        if self.lowest_weight != other.lowest_weight:
            raise ValueError("cannot add vectors from different modules")
        out = self.as_dict()
        for n, c in other.support:
            _clean(out, n, out.get(n, Fraction(0)) + c)
        return DSVector.make(self.lowest_weight, out)

    def __sub__(self, other: DSVector) -> DSVector:
        return self + other.scale(-1)

    def scale(self, c: RatLike) -> DSVector:
        c = rat(c)
        return DSVector.make(self.lowest_weight, {n: c * v for n, v in self.support})


def act_raise(v: DSVector) -> DSVector:
    w = v.lowest_weight
    return DSVector.make(w, {n + 1: (w + n) * c for n, c in v.support})


def act_lower(v: DSVector) -> DSVector:
    w = v.lowest_weight
    return DSVector.make(w, {n - 1: -n * c for n, c in v.support if n >= 1})


def act_weight(v: DSVector) -> DSVector:
    w = v.lowest_weight
    return DSVector.make(w, {n: (w + 2 * n) * c for n, c in v.support})


def casimir(v: DSVector) -> DSVector:
    """2(raise lower + lower raise) + weight^2, rational and scalar-acting."""
    rl = act_raise(act_lower(v))
    lr = act_lower(act_raise(v))
    ww = act_weight(act_weight(v))
    return (rl + lr).scale(2) + ww


def casimir_eigenvalue(lowest_weight: int) -> Rat:
    """The scalar w(w-2) = 4k(k-1) by which the Casimir acts at lowest weight w."""
    w = lowest_weight
    return Fraction(w * (w - 2))


# ---------------------------------------------------------------------------
# Tensor products of two modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorVector:
    """Vector in basis dtil^r f (x) dtil^s g over modules of weights (x, y)."""

    weights: tuple[int, int]
    support: tuple[tuple[tuple[int, int], Rat], ...]

    @staticmethod
    def make(weights: tuple[int, int], support: dict[tuple[int, int], RatLike]) -> TensorVector:
        clean = {k: rat(c) for k, c in support.items() if rat(c) != 0}
        if any(r < 0 or s < 0 for r, s in clean):
            raise ValueError("tensor indices must be >= 0")
        return TensorVector(tuple(weights), tuple(sorted(clean.items())))

    def as_dict(self) -> dict[tuple[int, int], Rat]:
        return dict(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: TensorVector) -> TensorVector:
        if self.weights != other.weights:
            raise ValueError("cannot add tensor vectors with different weights")
        out = self.as_dict()
        for k, c in other.support:
            _clean(out, k, out.get(k, Fraction(0)) + c)
        return TensorVector.make(self.weights, out)

    def __sub__(self, other: TensorVector) -> TensorVector:
        return self + other.scale(-1)

    def scale(self, c: RatLike) -> TensorVector:
        c = rat(c)
        return TensorVector.make(self.weights, {k: c * v for k, v in self.support})


def tensor_lower(v: TensorVector) -> TensorVector:
    """Coproduct of the lowering operator: acts as -r and -s on the two slots."""
    out: dict[tuple[int, int], Rat] = {}
    for (r, s), c in v.support:
        if r >= 1:
            key = (r - 1, s)
            _clean(out, key, out.get(key, Fraction(0)) - r * c)
        if s >= 1:
            key = (r, s - 1)
            _clean(out, key, out.get(key, Fraction(0)) - s * c)
    return TensorVector.make(v.weights, out)


def lowest_weight_tensor(x: int, y: int, n: int) -> TensorVector:
    """(1/n!) sum_r (-1)^r C(n, r) dtil^r f (x) dtil^(n-r) g.

    Killed by tensor_lower; its concrete realization is the degree-n bracket
    divided by (x)_n (y)_n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    fact = Fraction(1)
    for i in range(1, n + 1):
        fact /= i
    support = {(r, n - r): fact * (-1) ** r * binom(n, r) for r in range(n + 1)}
    return TensorVector.make((x, y), support)


def realize_and_multiply(v: TensorVector, f: ModularForm, g: ModularForm) -> NearlyHoloForm:
    """Send dtil^r f (x) dtil^s g to the product of the realized factors.

    dtil^r is realized as X^r / (weight)_r on each factor.  On the vector
    lowest_weight_tensor(x, y, n) this lands exactly on
    rc_bracket(f, g, n) / ((x)_n (y)_n).
    """
    if v.weights != (f.weight, g.weight):
        raise ValueError(f"vector weights {v.weights} do not match forms ({f.weight}, {g.weight})")
    prec = min(f.prec, g.prec)
    n_max = max((r + s for (r, s), _ in v.support), default=0)
    total = NearlyHoloForm.zero(sum(v.weights) + 2 * n_max, prec)
    fr_cache: dict[int, NearlyHoloForm] = {}
    gs_cache: dict[int, NearlyHoloForm] = {}
    for (r, s), c in v.support:
        if r not in fr_cache:
            fr_cache[r] = dtil_power(f, r)
        if s not in gs_cache:
            gs_cache[s] = dtil_power(g, s)
        term = (fr_cache[r] * gs_cache[s]).scale(c)
        # pad the weight: all terms of a lowest-weight combination share r+s
        if term.weight != total.weight:
            raise ValueError("tensor vector mixes total degrees; realization is weight-ambiguous")
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Triple products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TripleVector:
    """Vector in basis dtil^r f dtil^s g dtil^t h; hbar-degree of (r,s,t) is r+s+t."""

    weights: tuple[int, int, int]
    support: tuple[tuple[tuple[int, int, int], Rat], ...]

    @staticmethod
    def make(
        weights: tuple[int, int, int], support: dict[tuple[int, int, int], RatLike]
    ) -> TripleVector:
        clean = {k: rat(c) for k, c in support.items() if rat(c) != 0}
        if any(min(k) < 0 for k in clean):
            raise ValueError("triple indices must be >= 0")
        return TripleVector(tuple(weights), tuple(sorted(clean.items())))

    @staticmethod
    def basis(weights: tuple[int, int, int], key: tuple[int, int, int]) -> TripleVector:
        return TripleVector.make(weights, {key: 1})

    def as_dict(self) -> dict[tuple[int, int, int], Rat]:
        return dict(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: TripleVector) -> TripleVector:
        if self.weights != other.weights:
            raise ValueError("cannot add triple vectors with different weights")
        out = self.as_dict()
        for k, c in other.support:
            _clean(out, k, out.get(k, Fraction(0)) + c)
        return TripleVector.make(self.weights, out)

    def __sub__(self, other: TripleVector) -> TripleVector:
        return self + other.scale(-1)

    def scale(self, c: RatLike) -> TripleVector:
        c = rat(c)
        return TripleVector.make(self.weights, {k: c * v for k, v in self.support})


def triple_lower(v: TripleVector) -> TripleVector:
    """Slot-wise lowering, dropping the hbar-degree by one."""
    out: dict[tuple[int, int, int], Rat] = {}
    for (r, s, t), c in v.support:
        for slot, idx in enumerate((r, s, t)):
            if idx >= 1:
                key = list((r, s, t))
                key[slot] -= 1
                key = tuple(key)
                _clean(out, key, out.get(key, Fraction(0)) - idx * c)
    return TripleVector.make(v.weights, out)


def degree_slice(n: int) -> list[tuple[int, int, int]]:
    """All (r, s, t) with r+s+t = n, in lexicographic order."""
    return [(r, s, n - r - s) for r in range(n + 1) for s in range(n - r + 1)]


def triple_kernel_dim(weights: tuple[int, int, int], n: int) -> int:
    """Nullity of triple_lower on the hbar-degree-n slice, by exact elimination."""
    if n < 0:
        raise ValueError("n must be >= 0")
    dom = degree_slice(n)
    cod = {key: i for i, key in enumerate(degree_slice(n - 1))} if n else {}
    rows: list[dict[int, Rat]] = []
    for key in dom:
        img = triple_lower(TripleVector.basis(weights, key))
        rows.append({cod[k]: c for k, c in img.support})
    # rank of the (dom x cod) matrix by sparse forward elimination
    rank = 0
    pivots: dict[int, dict[int, Rat]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead in pivots:
                piv = pivots[lead]
                factor = row[lead] / piv[lead]
                for c, v in piv.items():
                    nv = row.get(c, Fraction(0)) - factor * v
                    _clean(row, c, nv)
            else:
                pivots[lead] = row
                rank += 1
                break
    return len(dom) - rank


def triple_preimage(target: tuple[int, int, int]) -> TripleVector:
    """Explicit preimage of a degree-(n-1) basis vector under triple_lower.

    For target (r, s, t) the combination

      sum_i [(-1)^i i! / (r+1)_(i+1)] sum_j C(s, i-j) C(t, j)
                               basis(r+1+i, s-i+j, t-j)

    satisfies triple_lower(preimage) = -target (the sign is the scaled
    lowering convention).  Every index in the support has first entry >= r+1.
    """
    r, s, t = target
    if min(target) < 0:
        raise ValueError("target indices must be >= 0")
    n = r + s + t + 1
    support: dict[tuple[int, int, int], Rat] = {}
    for i in range(n - r):
        coeff = Fraction((-1) ** i)
        fact = 1
        for u in range(1, i + 1):
            fact *= u
        coeff *= fact
        coeff /= pochhammer(r + 1, i + 1)
        for j in range(i + 1):
            c = binom(s, i - j) * binom(t, j)
            if c == 0:
                continue
            key = (r + 1 + i, s - i + j, t - j)
            if min(key) < 0:
                continue
            support[key] = support.get(key, Fraction(0)) + coeff * c
    weights = (0, 0, 0)  # the free lowering action does not read the weights
    v = TripleVector.make(weights, support)
    check = triple_lower(v) + TripleVector.basis(weights, target)
    if not check.is_zero():
        raise AssertionError(f"preimage formula failed for target {target}")
    return v


def xi_vector_concrete(
    f: ModularForm, g: ModularForm, h: ModularForm, n: int, p: int
) -> NearlyHoloForm:
    """Concrete lowest-weight vector xi_(n,p) in the three-factor space.

    With w = sum_r (-1)^r C(n-p, r) dtil^(n-p-r) f * dtil^r g (a holomorphic
    lowest-weight realization of total degree n-p and weight B = x+y+2(n-p)),

      xi_(n,p) = sum_s (-1)^s C(p, s) [X^s w / (B)_s] * dtil^(p-s) h.

    The alternating inner signs and the Pochhammer base B are what make
    lower(xi) = 0 an exact identity for every n, p and all weights.
    """
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got p={p}, n={n}")
    x, y = f.weight, g.weight
    nu = n - p
    prec = min(f.prec, g.prec, h.prec)
    inner = None
    for r in range(nu + 1):
        term = (dtil_power(f, nu - r) * dtil_power(g, r)).scale((-1) ** r * binom(nu, r))
        inner = term if inner is None else inner + term
    inner = inner.truncate(prec)
    base = x + y + 2 * nu
    out = None
    xs = inner
    for s in range(p + 1):
        coeff = (-1) ** s * binom(p, s) / pochhammer(base, s)
        term = (xs * dtil_power(h, p - s).truncate(prec)).scale(coeff)
        out = term if out is None else out + term
        if s < p:
            xs = shimura_pow(xs, 1)
    return out


def verify_xi_lowest_weight(
    f: ModularForm, g: ModularForm, h: ModularForm, n: int, p: int
) -> bool:
    return nh_lower(xi_vector_concrete(f, g, h, n, p)).is_zero()

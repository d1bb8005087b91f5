"""Independent oracles and formal identity checks.

Two kinds of safeguards live here.  The closed-form period oracles evaluate
printed scalar sums (factorials and harmonic numbers, no polynomial ring,
no Weyl division) so that engine results can be compared against genuinely
independent arithmetic; they deliberately share nothing with the engine
but Fraction.  The formal checks verify the Bernoulli/G-series identities

    G(x+z, z) = G(x, z) + s(x)                                  (gamma)
    M_beta(-z) = exp(G(f,z)) * exp(-G(f - <f,beta> z, z))       (delta-M)

in a polynomial ring with formal variables s_0, s_1, ... weighted by
deg s_k = k + 1, which keeps everything rational: substituting the
equivariant-Euler values of s_k would drag in log-lambda constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# -- scalar number theory ----------------------------------------------------


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """H_n = sum_{k=1}^n 1/k with H_0 = 0."""
    if n < 0:
        raise ValueError("harmonic numbers need n >= 0")
    if n == 0:
        return Fraction(0)
    return harmonic(n - 1) + Fraction(1, n)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m, convention B_1 = -1/2.

    The sign of B_1 is not an a-priori choice here: it is the unique value
    for which check_gamma_identity passes (see test suite), and the defining
    recursion sum_{j=0}^{m} C(m+1, j) B_j = 0 produces exactly that value.
    """
    if m < 0:
        raise ValueError("Bernoulli numbers need m >= 0")
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(m):
        acc += math.comb(m + 1, j) * bernoulli(j)
    return -acc / (m + 1)


# -- formal series in (s_k; f; z) ---------------------------------------------


class FormalSeries:
    """Polynomial in s_0..s_{S-1}, f, and z (Laurent in z), exact coefficients.

    Terms are keyed by (s_exponents, f_power, z_power); monomials whose
    s-weight sum (k+1 per s_k factor) exceeds s_order are dropped, which is
    the truncation the induction in the source identities uses.
    """

    __slots__ = ("s_order", "terms")

    def __init__(self, s_order: int, terms=None):
        self.s_order = s_order
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                self._add_term(key, coeff)

    @staticmethod
    def _weight(s_exp: tuple[int, ...]) -> int:
        return sum(e * (k + 1) for k, e in enumerate(s_exp))

    def _add_term(self, key, coeff) -> None:
        s_exp, f_pow, z_pow = key
        if not coeff or self._weight(s_exp) > self.s_order:
            return
        cur = self.terms.get(key, Fraction(0)) + coeff
        if cur:
            self.terms[key] = cur
        else:
            self.terms.pop(key, None)

    def add(self, other: "FormalSeries") -> "FormalSeries":
        out = FormalSeries(self.s_order, self.terms)
        for key, coeff in other.terms.items():
            out._add_term(key, coeff)
        return out

    def scale(self, value) -> "FormalSeries":
        out = FormalSeries(self.s_order)
        for key, coeff in self.terms.items():
            out._add_term(key, coeff * value)
        return out

    def mul(self, other: "FormalSeries") -> "FormalSeries":
        out = FormalSeries(self.s_order)
        for (sa, fa, za), ca in self.terms.items():
            for (sb, fb, zb), cb in other.terms.items():
                s_exp = tuple(x + y for x, y in zip(sa, sb))
                out._add_term((s_exp, fa + fb, za + zb), ca * cb)
        return out

    def exp(self) -> "FormalSeries":
        """exp of a series all of whose terms carry positive s-weight."""
        for s_exp, _, _ in self.terms:
            if self._weight(s_exp) == 0:
                raise ValueError("exp needs every term to carry an s variable")
        zero_s = (0,) * self.s_order
        out = FormalSeries(self.s_order, {(zero_s, 0, 0): Fraction(1)})
        power = out
        for t in range(1, self.s_order + 1):
            power = power.mul(self)
            if not power.terms:
                break
            out = out.add(power.scale(Fraction(1, math.factorial(t))))
        return out

    def restrict_f(self, f_max: int) -> "FormalSeries":
        out = FormalSeries(self.s_order)
        for key, coeff in self.terms.items():
            if key[1] <= f_max:
                out._add_term(key, coeff)
        return out

    def restrict_z(self, z_min: int, z_max: int) -> "FormalSeries":
        out = FormalSeries(self.s_order)
        for key, coeff in self.terms.items():
            if z_min <= key[2] <= z_max:
                out._add_term(key, coeff)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FormalSeries)
            and self.s_order == other.s_order
            and self.terms == other.terms
        )

    def first_difference(self, other: "FormalSeries"):
        keys = sorted(set(self.terms) | set(other.terms))
        for key in keys:
            a = self.terms.get(key, Fraction(0))
            b = other.terms.get(key, Fraction(0))
            if a != b:
                return key, a, b
        return None


def _s_unit(k: int, s_order: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(s_order))


def s_series(shift: int, s_order: int) -> FormalSeries:
    """s(f + shift*z) = sum_k s_k (f + shift z)^k / k!, truncated by s-weight."""
    out = FormalSeries(s_order)
    for k in range(s_order):
        s_exp = _s_unit(k, s_order)
        for j in range(k + 1):
            coeff = Fraction(math.comb(k, j) * shift**j, math.factorial(k))
            out._add_term((s_exp, k - j, j), coeff)
    return out


def g_series(
    s_order: int,
    shift: int = 0,
    x_order: int | None = None,
    z_orders: tuple[int, int] | None = None,
    bernoulli_values=None,
) -> FormalSeries:
    """G(f + shift*z, z) = sum s_{l+m-1} (B_m/m!) (f+shift z)^l / l! z^{m-1}.

    Indexing over l + m - 1 = k >= 0 automatically omits the (l, m) = (0, 0)
    term, whose s_{-1} is undefined; the gamma identity holds without it.
    `bernoulli_values` lets checks inject a perturbed B_1.
    """
    bern = bernoulli_values or bernoulli
    out = FormalSeries(s_order)
    for k in range(s_order):
        s_exp = _s_unit(k, s_order)
        for l in range(k + 2):
            m = k + 1 - l
            base = bern(m) / (math.factorial(m) * math.factorial(l))
            for j in range(l + 1):
                coeff = base * math.comb(l, j) * shift**j
                out._add_term((s_exp, l - j, m - 1 + j), coeff)
    if x_order is not None:
        out = out.restrict_f(x_order)
    if z_orders is not None:
        out = out.restrict_z(*z_orders)
    return out


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def check_gamma_identity(
    x_order: int = 4,
    s_order: int = 3,
    flip_b1: bool = False,
) -> CheckResult:
    """Compare G(f+z, z) against G(f, z) + s(f) coefficientwise."""
    if flip_b1:
        bern = lambda m: -bernoulli(m) if m == 1 else bernoulli(m)
    else:
        bern = bernoulli
    lhs = g_series(s_order, shift=1, x_order=x_order, bernoulli_values=bern)
    rhs = g_series(s_order, shift=0, x_order=x_order, bernoulli_values=bern).add(
        s_series(0, s_order).restrict_f(x_order)
    )
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckResult(True)
    key, a, b = diff
    return CheckResult(False, f"first mismatch at {key}: {a} != {b}")


def modification_log_formal(upper: int, s_order: int) -> FormalSeries:
    """log M_beta(-z) after writing each factor lambda + x as exp(s(x)).

    The moved range of the modification factor contributes
    sum_{m=1}^{upper} s(f - m z) for positive upper and minus the range
    (upper, 0] for negative upper.
    """
    out = FormalSeries(s_order)
    if upper > 0:
        for m in range(1, upper + 1):
            out = out.add(s_series(-m, s_order))
    elif upper < 0:
        for m in range(upper + 1, 1):
            out = out.add(s_series(-m, s_order).scale(-1))
    return out


def check_delta_m(upper: int, s_order: int = 2) -> CheckResult:
    """Formal check of M_beta(-z) = exp(G(f,z)) exp(-G(f - upper*z, z))."""
    lhs = modification_log_formal(upper, s_order).exp()
    rhs_log = g_series(s_order, shift=0).add(g_series(s_order, shift=-upper).scale(-1))
    rhs = rhs_log.exp()
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckResult(True)
    key, a, b = diff
    return CheckResult(False, f"upper {upper}: first mismatch at {key}: {a} != {b}")


# -- closed-form period oracles ----------------------------------------------


def oracle_example1(dmax: int) -> tuple[Fraction, ...]:
    """Regularised period of the blow-up of P^4 in a (1,1,2) intersection.

    Direct evaluation of the closed-form double region sum (degree
    l + 2m + 2n; first region l > n, second region m, n >= l).  The first
    region's printed (n-l)! has negative argument throughout and is
    evaluated as (m-l)!, which is the factorial that the residue pairing
    produces and the only reading that reproduces the series.
    """
    coeffs = [Fraction(0)] * (dmax + 1)
    # region m >= l, n >= l
    for l in range(dmax + 1):
        if 5 * l > dmax:
            break
        for m in range(l, dmax + 1):
            if l + 2 * m > dmax:
                break
            for n in range(l, dmax + 1):
                deg = l + 2 * m + 2 * n
                if deg > dmax:
                    break
                val = Fraction(
                    math.factorial(l + n) * math.factorial(l + m),
                    math.factorial(l) ** 5
                    * math.factorial(m) ** 2
                    * math.factorial(n) ** 2
                    * math.factorial(n - l)
                    * math.factorial(m - l),
                )
                hterm = 1 + (n - m) * (
                    -2 * harmonic(n) + harmonic(l + n) - harmonic(n - l)
                )
                coeffs[deg] += (-1) ** (m + n) * val * hterm
    # region l >= n + 1, m >= l
    for n in range(dmax + 1):
        for l in range(n + 1, dmax + 1):
            if l + 2 * l + 2 * n > dmax:
                break
            for m in range(l, dmax + 1):
                deg = l + 2 * m + 2 * n
                if deg > dmax:
                    break
                val = Fraction(
                    math.factorial(l + n)
                    * math.factorial(l + m)
                    * math.factorial(l - n - 1),
                    math.factorial(l) ** 5
                    * math.factorial(m) ** 2
                    * math.factorial(n) ** 2
                    * math.factorial(m - l),
                )
                coeffs[deg] += (-1) ** (l + m - 1) * val * (n - m)
    return tuple(math.factorial(d) * c for d, c in enumerate(coeffs))


def oracle_example2(dmax: int) -> tuple[Fraction, ...]:
    """Regularised period of the blow-up of P^6 in a (1,2,2) intersection."""
    coeffs = [Fraction(0)] * (dmax + 1)
    for D in range(dmax // 5 + 1):
        for d1 in range(dmax + 1):
            if 5 * D + 2 * d1 > dmax:
                break
            for d2 in range(dmax + 1):
                deg = 5 * D + 2 * d1 + 2 * d2
                if deg > dmax:
                    break
                val = Fraction(
                    math.factorial(d1 + 2 * D) * math.factorial(d2 + 2 * D),
                    math.factorial(D) ** 7
                    * math.factorial(d1) ** 2
                    * math.factorial(d2) ** 2
                    * math.factorial(d1 + D)
                    * math.factorial(d2 + D),
                )
                hterm = 1 + (d1 - d2) * (
                    -2 * harmonic(d1) + harmonic(d1 + 2 * D) - harmonic(d1 + D)
                )
                coeffs[deg] += (-1) ** (d1 + d2) * val * hterm
    return tuple(math.factorial(d) * c for d, c in enumerate(coeffs))


def r1_direct_period(
    base_dim: int,
    center_degrees: tuple[int, int],
    dmax: int,
) -> tuple[Fraction, ...]:
    """Direct double-sum period for a blow-up along a codimension-2 center.

    For rank-one fibers the unit coefficient of a point (D, d) is a plain
    product of factorials (no Weyl machinery): with k = min degree,
    e = k - max degree <= 0,

        (d + kD)! / ( (D!)^(base_dim+1) * d! * (d + eD)! )

    summed over the grading a D + b d = degree, then corrected by
    G = exp(-C x) with C the degree-one total.
    """
    c_sorted = sorted(center_degrees)
    k = c_sorted[0]
    e = k - c_sorted[1]
    a = (base_dim + 1 + e) - k
    b = 1
    raw = [Fraction(0)] * (dmax + 1)
    for D in range(dmax // a + 1):
        d = -e * D  # smallest fiber degree with nonzero contribution
        while a * D + b * d <= dmax:
            deg = a * D + b * d
            raw[deg] += Fraction(
                math.factorial(d + k * D),
                math.factorial(D) ** (base_dim + 1)
                * math.factorial(d)
                * math.factorial(d + e * D),
            )
            d += 1
    C = raw[1] if dmax >= 1 else Fraction(0)
    out = []
    for deg in range(dmax + 1):
        acc = Fraction(0)
        for t in range(deg + 1):
            acc += (-C) ** t / math.factorial(t) * raw[deg - t]
        out.append(math.factorial(deg) * acc)
    return tuple(out)


def r1_cross_check(base_dim: int, center_degrees: tuple[int, int], dmax: int) -> CheckResult:
    """Engine vs direct double-sum on a rank-one blow-up model."""
    from .assembler import period_series
    from .targets import BlowUpSpec, normalize_blowup

    target, twist = normalize_blowup(BlowUpSpec(base_dim, tuple(center_degrees)))
    engine = period_series(target, twist, dmax).regularised
    direct = r1_direct_period(base_dim, tuple(center_degrees), dmax)
    for deg, (ev, ov) in enumerate(zip(engine, direct)):
        if ev != ov:
            return CheckResult(False, f"degree {deg}: engine {ev} != oracle {ov}")
    return CheckResult(True)

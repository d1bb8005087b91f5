"""Hypergeometric building blocks of the bundle I-function.

Every contribution of a lattice point is a product of factor ratios

    prod_{m=-inf}^{0} (cls + m z)  /  prod_{m=-inf}^{upper} (cls + m z)

together with a Weyl numerator, a base factor from P^N, and a twist
numerator.  The ratios collapse to finite products: an inverted tail for
positive upper limits, an extra (nilpotent-bearing) numerator block for
negative ones.  z enters as an exact rational parameter, not a generator;
degree homogeneity lets callers recover the z-dependence afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ring import GradedPoly, poly_mul, unit_inverse
from .targets import CurveClass, FlagTarget, TwistSpec, block_index_ranges


class SingularFactorError(ZeroDivisionError):
    """A denominator factor with zero constant term cannot be inverted."""


class TwistRangeError(ValueError):
    """A twist upper limit came out negative.

    The closed product formula for the twisted series is only valid where
    all twist ranges are nonnegative (as they are for blow-up models, whose
    lattice floors guarantee it); outside that regime we refuse to guess.
    """


@dataclass(frozen=True)
class SummandContext:
    """Shared ring data for one target: variable count, cap, z."""

    target: FlagTarget
    twist: TwistSpec | None
    z: Fraction
    cap: int

    @classmethod
    def for_target(
        cls,
        target: FlagTarget,
        twist: TwistSpec | None = None,
        z: Fraction | int = 1,
        cap: int | None = None,
    ) -> "SummandContext":
        zq = Fraction(z)
        if zq == 0:
            raise SingularFactorError("z = 0 makes every shifted factor singular")
        return cls(
            target=target,
            twist=twist,
            z=zq,
            cap=target.omega_degree if cap is None else cap,
        )

    @property
    def nvars(self) -> int:
        return self.target.nvars

    def one(self) -> GradedPoly:
        return GradedPoly.constant(1, self.nvars, self.cap)

    def h(self) -> GradedPoly:
        return GradedPoly.generator(0, self.nvars, self.cap)

    def root(self, i: int) -> GradedPoly:
        """i-th Chern root of S^v (1-based within the first block)."""
        return GradedPoly.generator(i, self.nvars, self.cap)


def factor_ratio(cls: GradedPoly, upper: int, z: Fraction | int) -> GradedPoly:
    """The ratio of semi-infinite products over (cls + m z), cut at `upper`.

    upper > 0 inverts the product of the first `upper` shifts; upper < 0
    multiplies the shifts from upper+1 through 0 back in, including the
    nilpotent m = 0 factor (cls itself).
    """
    zq = Fraction(z)
    if zq == 0:
        raise SingularFactorError("z = 0 makes every shifted factor singular")
    if upper == 0:
        return GradedPoly.constant(1, cls.nvars, cls.cap)
    if upper > 0:
        prod = GradedPoly.constant(1, cls.nvars, cls.cap)
        for m in range(1, upper + 1):
            factor = cls + m * zq
            if not factor.constant_term():
                raise SingularFactorError(
                    f"singular factor: class + {m}z has zero constant term"
                )
            prod = poly_mul(prod, factor)
        return unit_inverse(prod)
    prod = GradedPoly.constant(1, cls.nvars, cls.cap)
    for m in range(upper + 1, 1):
        prod = poly_mul(prod, cls + m * zq)
    return prod


def base_j_factor(D: int, ctx: SummandContext) -> GradedPoly:
    """Hypergeometric factor of P^N at base degree D: all N+1 slots share h."""
    single = factor_ratio(ctx.h(), D, ctx.z)
    out = ctx.one()
    for _ in range(ctx.target.base_dim + 1):
        out = poly_mul(out, single)
    return out


def flag_factor(d: tuple[int, ...], cls: CurveClass, ctx: SummandContext) -> GradedPoly:
    """Product of slot ratios pairing each Chern root with each summand of E.

    A summand O(e_j) contributes the slot (h_i + e_j h, d_i + e_j D) for
    every root h_i of S^v.
    """
    target = ctx.target
    if len(target.ranks) != 1:
        raise NotImplementedError("flag factors only cover one-step bundles")
    (block,) = block_index_ranges(target)
    out = ctx.one()
    h = ctx.h()
    for idx, i in enumerate(range(*block)):
        root = ctx.root(i)
        for e in target.e_degrees:
            slot_class = root + h.scale(e) if e else root
            out = poly_mul(out, factor_ratio(slot_class, d[idx] + e * cls.D, ctx.z))
    return out


def weyl_block(d_block: tuple[int, ...], ctx: SummandContext, block: int = 0) -> tuple[GradedPoly, int]:
    """Weyl numerator prod_{i<j} (h_i - h_j + (d_i - d_j) z) and its sign.

    The sign (-1)^(sum_{i<j} (d_i - d_j)) is returned separately so callers
    can fold it into whatever aggregate they build.
    """
    lo, hi = block_index_ranges(ctx.target)[block]
    out = ctx.one()
    exponent = 0
    for a in range(lo, hi):
        for b in range(a + 1, hi):
            ia, ib = a - lo, b - lo
            diff = d_block[ia] - d_block[ib]
            exponent += diff
            out = poly_mul(out, ctx.root(a) - ctx.root(b) + diff * ctx.z)
    return out, (-1 if exponent % 2 else 1)


def twist_uppers(twist: TwistSpec, cls: CurveClass, d: tuple[int, ...]) -> list[int]:
    (k_unused,) = cls.k  # one-step only
    return [
        sum(f * di for f, di in zip(row, d)) + twist.rho * cls.D
        for row in twist.weight_vectors
    ]


def twist_factor(d: tuple[int, ...], cls: CurveClass, ctx: SummandContext) -> GradedPoly:
    """Numerator prod_s prod_{m=1}^{u_s} (c1(L_s) + m z), u_s = f_s . d + rho D."""
    twist = ctx.twist
    if twist is None or not twist.weight_vectors:
        return ctx.one()
    (block,) = block_index_ranges(ctx.target)
    out = ctx.one()
    h = ctx.h()
    for row, upper in zip(twist.weight_vectors, twist_uppers(twist, cls, d)):
        if upper < 0:
            raise TwistRangeError(
                f"twist range negative: upper limit {upper} for weights {row}"
            )
        line_class = h.scale(twist.rho)
        for f, i in zip(row, range(*block)):
            if f:
                line_class = line_class + ctx.root(i).scale(f)
        for m in range(1, upper + 1):
            out = poly_mul(out, line_class + m * ctx.z)
    return out


def oh_summand(d: tuple[int, ...], cls: CurveClass, ctx: SummandContext) -> GradedPoly:
    """Full numerator contribution of one lattice point, sign folded in.

    This is the summand of the bundle I-function *before* division by the
    Weyl denominator: leading z, base factor, slot ratios, Weyl numerators,
    twist numerator, and the Weyl sign.  The caller divides the aggregate
    over a curve class by prod (h_i - h_j) afterwards.
    """
    out = base_j_factor(cls.D, ctx)
    out = poly_mul(out, flag_factor(d, cls, ctx))
    num, sign = weyl_block(d, ctx)
    out = poly_mul(out, num)
    out = poly_mul(out, twist_factor(d, cls, ctx))
    return out.scale(sign * ctx.z)


def brown_summand(d: tuple[int, ...], cls: CurveClass, ctx: SummandContext) -> GradedPoly:
    """Projective-bundle (rank-one) specialization: no Weyl data at all.

    For one-dimensional fibers the Weyl numerator is empty and the sign is
    +1, so this must agree with oh_summand; kept separate as a cross-check.
    """
    if ctx.target.ranks != (1,):
        raise ValueError("brown_summand only applies to rank-one (projective) bundles")
    out = base_j_factor(cls.D, ctx)
    out = poly_mul(out, flag_factor(d, cls, ctx))
    out = poly_mul(out, twist_factor(d, cls, ctx))
    return out.scale(ctx.z)


# -- formal modification factors (lambda-Laurent) ---------------------------


@dataclass
class LambdaSeries:
    """Laurent series in a formal parameter lambda with GradedPoly coefficients.

    The support is bounded above; coefficients are exact for every power
    >= `lo` and anything below is dropped.  Multiplication tracks where the
    product remains exact: a power p of A*B only misses contributions when
    one factor was truncated, which cannot happen once
    p >= max(A.lo + max_power(B), B.lo + max_power(A)).
    """

    nvars: int
    cap: int
    lo: int
    coeffs: dict[int, GradedPoly] = field(default_factory=dict)

    def coefficient(self, power: int) -> GradedPoly:
        return self.coeffs.get(power, GradedPoly(self.nvars, self.cap))

    def _store(self, power: int, value: GradedPoly) -> None:
        if value.is_zero():
            self.coeffs.pop(power, None)
        else:
            self.coeffs[power] = value

    def max_power(self) -> int:
        return max(self.coeffs, default=self.lo)

    def mul(self, other: "LambdaSeries") -> "LambdaSeries":
        lo = max(self.lo + other.max_power(), other.lo + self.max_power())
        out = LambdaSeries(self.nvars, self.cap, lo)
        for pa, ca in self.coeffs.items():
            for pb, cb in other.coeffs.items():
                p = pa + pb
                if p < lo:
                    continue
                out._store(p, out.coefficient(p) + poly_mul(ca, cb))
        return out

    def scale(self, value) -> "LambdaSeries":
        out = LambdaSeries(self.nvars, self.cap, self.lo)
        for p, c in self.coeffs.items():
            out._store(p, c.scale(value))
        return out


def modification_factor(
    cls: GradedPoly,
    upper: int,
    z: Fraction | int,
    lam_min: int = -8,
) -> LambdaSeries:
    """Equivariant factor prod over the moved range of (cls + lambda + m z).

    For upper >= 0 this is a polynomial in lambda (exact everywhere); for
    upper < 0 the factors sit in the denominator and are expanded as a
    Laurent series in descending powers of lambda, exact down to lam_min.
    """
    zq = Fraction(z)
    nvars, cap = cls.nvars, cls.cap
    one = GradedPoly.constant(1, nvars, cap)
    if upper >= 0:
        out = LambdaSeries(nvars, cap, lam_min, {0: one})
        for m in range(1, upper + 1):
            shifted = cls + m * zq
            nxt = LambdaSeries(nvars, cap, lam_min)
            for p, c in out.coeffs.items():
                nxt._store(p + 1, nxt.coefficient(p + 1) + c)
                nxt._store(p, nxt.coefficient(p) + poly_mul(c, shifted))
            out = nxt
        return out
    # expand each inverse factor deep enough that the |upper|-fold product
    # is still exact at lam_min: the partners' powers total at most -(count-1)
    count = -upper
    factor_lo = lam_min + (count - 1)
    out = LambdaSeries(nvars, cap, factor_lo - count, {0: one})
    for m in range(upper + 1, 1):
        shifted = cls + m * zq
        # 1/(lambda + shifted) = sum_{t>=0} (-1)^t shifted^t lambda^(-1-t)
        inv = LambdaSeries(nvars, cap, factor_lo)
        power = one
        for t in range(0, -factor_lo):
            if -1 - t < factor_lo:
                break
            inv._store(-1 - t, power.scale((-1) ** t))
            power = poly_mul(power, shifted)
        out = out.mul(inv)
    out.coeffs = {p: c for p, c in out.coeffs.items() if p >= out.lo}
    return out

"""Truncated q-expansions and the classical series built from divisor sums.

A QExpansion stores coefficients a_0..a_qprec of an exact series
sum a_n q^n; index n always means the exact exponent of q^n.  Arithmetic
truncates at the minimum q-precision of the operands, and U_p records the
q-precision drop to floor(M/p) instead of silently inventing coefficients.
No operation divides by the index n, so q-coefficients never lose p-adic
precision.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .padic import PadicContext, PadicInt, bernoulli, bernoulli_polynomial, \
    reduce_rational
from .zpfun import ContinuousFn, LocallyConstant, lc_level, as_table


class QExpansion:
    """sum_{n=0}^{qprec} a_n q^n with scalar coefficients."""

    __slots__ = ("ctx", "coeffs", "qprec")

    def __init__(self, ctx: PadicContext, coeffs, qprec: int | None = None):
        if qprec is None:
            qprec = ctx.M
        qprec = min(qprec, ctx.M)
        coeffs = list(coeffs)[: qprec + 1]
        coeffs = [c if not isinstance(c, int) else PadicInt(ctx, c)
                  for c in coeffs]
        while len(coeffs) < qprec + 1:
            coeffs.append(PadicInt(ctx, 0))
        self.ctx = ctx
        self.coeffs = coeffs
        self.qprec = qprec

    @classmethod
    def zero(cls, ctx: PadicContext, qprec: int | None = None) -> "QExpansion":
        return cls(ctx, [], qprec)

    def coefficient(self, n: int):
        if n > self.qprec:
            raise IndexError(f"coefficient {n} beyond q-precision {self.qprec}")
        return self.coeffs[n]

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        qp = min(self.qprec, other.qprec)
        return QExpansion(self.ctx,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)], qp)

    def __sub__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        qp = min(self.qprec, other.qprec)
        return QExpansion(self.ctx,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)], qp)

    def __neg__(self):
        return QExpansion(self.ctx, [-c for c in self.coeffs], self.qprec)

    def scale(self, c) -> "QExpansion":
        """Multiply every coefficient by the scalar c."""
        return QExpansion(self.ctx, [c * a for a in self.coeffs], self.qprec)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        qp = min(self.qprec, other.qprec)
        out = [PadicInt(self.ctx, 0) for _ in range(qp + 1)]
        for i, a in enumerate(self.coeffs[: qp + 1]):
            if isinstance(a, PadicInt) and a.is_zero():
                continue
            for j in range(qp + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return QExpansion(self.ctx, out, qp)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        qp = min(self.qprec, other.qprec)
        return all(self.coeffs[n] == other.coeffs[n] for n in range(qp + 1))

    __hash__ = None

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        return f"QExpansion([{head}, ...], qprec={self.qprec})"


# -- operators ----------------------------------------------------------------

def theta(g: QExpansion) -> QExpansion:
    """The derivation q d/dq: multiplies coefficient n by n."""
    return QExpansion(g.ctx, [n * c for n, c in enumerate(g.coeffs)], g.qprec)


def u_p(g: QExpansion) -> QExpansion:
    """Coefficient n of the result is a_{pn}; q-precision drops to floor(M/p)."""
    p = g.ctx.p
    qp = g.qprec // p
    return QExpansion(g.ctx, [g.coeffs[p * n] for n in range(qp + 1)], qp)


def v_p(g: QExpansion) -> QExpansion:
    """Coefficient pn of the result is a_n, all other coefficients 0."""
    p = g.ctx.p
    out = [PadicInt(g.ctx, 0) for _ in range(g.qprec + 1)]
    for n, c in enumerate(g.coeffs):
        if p * n > g.qprec:
            break
        out[p * n] = c
    return QExpansion(g.ctx, out, g.qprec)


# -- divisor sums --------------------------------------------------------------

@lru_cache(maxsize=None)
def sigma_table(e: int, M: int) -> tuple:
    """sigma_e(n) = sum of e-th powers of divisors, exactly, for n <= M."""
    out = [0] * (M + 1)
    for d in range(1, M + 1):
        de = d ** e
        for n in range(d, M + 1, d):
            out[n] += de
    return tuple(out)


def double_divisor_series(ctx: PadicContext, k: int, r: int) -> QExpansion:
    """2 sum_n q^n sum_{d d' = n} d^k d'^r, constant term 0 (exact integers)."""
    M = ctx.M
    out = [0] * (M + 1)
    for d in range(1, M + 1):
        dk = d ** k
        for dd in range(1, M // d + 1):
            out[d * dd] += dk * dd ** r
    return QExpansion(ctx, [PadicInt(ctx, 2 * c) for c in out])


# -- Eisenstein series ----------------------------------------------------------

def eisenstein_2G(ctx: PadicContext, k: int) -> QExpansion:
    """The weight-k Eisenstein series 2G_k, zero for odd k.

    Constant term is the reduction of -B_k/k; for (p-1) | k that value has a
    genuine p in the denominator and NotPIntegral propagates (callers needing
    those weights go through the regularized measure instead).
    """
    if k < 2:
        raise ValueError("2G_k requires k >= 2 (the k = 1 series is not defined)")
    if k % 2 == 1:
        return QExpansion.zero(ctx)
    return eisenstein_2G_scaled(ctx, k, 1)


def eisenstein_2G_scaled(ctx: PadicContext, k: int, factor) -> QExpansion:
    """factor * 2G_k computed p-integrally.

    The constant term is reduced from the exact rational factor * (-B_k/k),
    so an integer factor divisible by p can cancel the pole at (p-1) | k.
    """
    if k < 2:
        raise ValueError("2G_k requires k >= 2")
    if k % 2 == 1:
        return QExpansion.zero(ctx)
    factor = Fraction(factor)
    const = reduce_rational(factor * (-bernoulli(k)) / k, ctx)
    sig = sigma_table(k - 1, ctx.M)
    coeffs = [const] + [reduce_rational(2 * factor * sig[n], ctx)
                        for n in range(1, ctx.M + 1)]
    return QExpansion(ctx, coeffs)


def eisenstein_2G_twisted(ctx: PadicContext, k: int,
                          f: ContinuousFn) -> QExpansion:
    """Twisted series: L(1-k, f) + 2 sum_n q^n sum_{d|n} d^(k-1) f(d)."""
    if k < 2:
        raise ValueError("twisted 2G_k requires k >= 2")
    if lc_level(f) is None:
        raise ValueError("twist must be locally constant")
    fvals = [f.evaluate(PadicInt(ctx, d)) for d in range(ctx.M + 1)]
    out = [PadicInt(ctx, 0) for _ in range(ctx.M + 1)]
    for d in range(1, ctx.M + 1):
        if isinstance(fvals[d], PadicInt) and fvals[d].is_zero():
            continue
        term = fvals[d] * d ** (k - 1)
        for n in range(d, ctx.M + 1, d):
            out[n] = out[n] + term
    coeffs = [reduce_rational(lvalue_periodic(k, f), ctx)]
    coeffs += [2 * c for c in out[1:]]
    return QExpansion(ctx, coeffs)


def lvalue_periodic(k: int, f: ContinuousFn) -> Fraction:
    """Exact L(1-k, f) = -B_{k,f}/k for locally constant f.

    B_{k,f} = F^(k-1) sum_{c<F} f(c) B_k(c/F) with F the period p^m; the
    table values are read as their canonical integer residues.  For f = 1
    this recovers -B_k/k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    m = lc_level(f)
    if m is None:
        raise ValueError("f must be locally constant")
    ctx = f.ctx
    table = f.table if isinstance(f, LocallyConstant) and f.level == m \
        else as_table(f, m)
    F = ctx.p ** m
    acc = Fraction(0)
    for c, v in enumerate(table):
        if not isinstance(v, PadicInt):
            raise TypeError("L-values need scalar (non-cyclotomic) twists")
        if v.residue:
            acc += v.residue * bernoulli_polynomial(k, Fraction(c, F))
    return Fraction(F) ** (k - 1) * acc * Fraction(-1, k)


# -- JSON ------------------------------------------------------------------------

def series_to_json(g: QExpansion) -> dict:
    """Stable JSON form; every residue string is paired with its precision."""
    coeffs, prec = [], []
    for c in g.coeffs:
        if not isinstance(c, PadicInt):
            raise TypeError("only scalar series serialize to JSON")
        coeffs.append(str(c.residue))
        prec.append(c.prec)
    return {
        "schema": 1,
        "kind": "series",
        "p": g.ctx.p,
        "N": g.ctx.N,
        "M": g.qprec,
        "coeffs": coeffs,
        "prec": prec,
    }


def series_from_json(obj: dict) -> QExpansion:
    ctx = PadicContext(int(obj["p"]), int(obj["N"]), max(int(obj["M"]), 1))
    coeffs = [PadicInt(ctx, int(c), pr)
              for c, pr in zip(obj["coeffs"], obj["prec"])]
    return QExpansion(ctx, coeffs, int(obj["M"]))

"""Truncated p-adic integers with per-scalar precision tracking.

Values are carried modulo p**N.  Each scalar remembers how many digits of
it are actually known (``prec``); sums and products know min(prec) digits,
dividing by p costs one digit.  Nothing here ever rounds: a residue is an
exact integer and the precision says which congruence class it pins down.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .errors import NotPIntegral, NotUnit


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PadicContext:
    """Global parameters: the odd prime p, p-adic precision N, q-precision M.

    Every computation in the package happens modulo p**N with q-expansions
    truncated after q**M.
    """

    __slots__ = ("p", "N", "M", "modulus")

    def __init__(self, p: int, N: int, M: int):
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        if N < 1:
            raise ValueError(f"N must be >= 1, got {N}")
        if M < 1:
            raise ValueError(f"M must be >= 1, got {M}")
        self.p = p
        self.N = N
        self.M = M
        self.modulus = p ** N

    def __eq__(self, other):
        return (
            isinstance(other, PadicContext)
            and (self.p, self.N, self.M) == (other.p, other.N, other.M)
        )

    def __hash__(self):
        return hash((self.p, self.N, self.M))

    def __repr__(self):
        return f"PadicContext(p={self.p}, N={self.N}, M={self.M})"


class PadicInt:
    """An element of Z/p**prec, tagged with its effective precision.

    The residue is always reduced into [0, p**prec).  Binary operations
    return min(prec) digits; ``divide_by_p`` trades a factor of p for one
    digit of precision.
    """

    __slots__ = ("ctx", "residue", "prec")

    def __init__(self, ctx: PadicContext, value: int, prec: int | None = None):
        if prec is None:
            prec = ctx.N
        if prec < 0:
            prec = 0
        prec = min(prec, ctx.N)
        self.ctx = ctx
        self.prec = prec
        self.residue = value % (ctx.p ** prec) if prec > 0 else 0

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: PadicContext) -> "PadicInt":
        return cls(ctx, 0)

    @classmethod
    def one(cls, ctx: PadicContext) -> "PadicInt":
        return cls(ctx, 1)

    # -- structure ---------------------------------------------------------

    def is_unit(self) -> bool:
        return self.prec > 0 and self.residue % self.ctx.p != 0

    def is_zero(self) -> bool:
        """True when the value is 0 at the known precision."""
        return self.residue == 0

    def valuation(self) -> int:
        """v_p of the value, capped at prec (a residue of 0 means v >= prec)."""
        if self.residue == 0:
            return self.prec
        v, r, p = 0, self.residue, self.ctx.p
        while r % p == 0:
            r //= p
            v += 1
        return v

    def zero_like(self) -> "PadicInt":
        return PadicInt(self.ctx, 0)

    def one_like(self) -> "PadicInt":
        return PadicInt(self.ctx, 1)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return PadicInt(self.ctx, other)
        if isinstance(other, PadicInt):
            if other.ctx.p != self.ctx.p or other.ctx.N != self.ctx.N:
                raise ValueError("mixed p-adic contexts")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.residue + o.residue, min(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.residue - o.residue, min(self.prec, o.prec))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return PadicInt(self.ctx, -self.residue, self.prec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.residue * o.residue, min(self.prec, o.prec))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        m = self.ctx.p ** self.prec if self.prec > 0 else 1
        return PadicInt(self.ctx, pow(self.residue, e, m), self.prec)

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotUnit(f"{self!r} is not a unit")
        m = self.ctx.p ** self.prec
        return PadicInt(self.ctx, pow(self.residue, -1, m), self.prec)

    def divide_by_p(self, d: int = 1) -> "PadicInt":
        """Divide by p**d; requires divisibility, costs d digits of precision."""
        pd = self.ctx.p ** d
        if self.residue % pd != 0:
            raise NotPIntegral(f"residue {self.residue} not divisible by p^{d}")
        return PadicInt(self.ctx, self.residue // pd, self.prec - d)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = min(self.prec, o.prec)
        m = self.ctx.p ** e
        return self.residue % m == o.residue % m

    __hash__ = None

    def __repr__(self):
        return f"{self.residue} + O({self.ctx.p}^{self.prec})"


class DualNumber:
    """a + eps*b with eps**2 = 0, over PadicInt or cyclotomic scalars."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def _coerce(self, other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, int):
            other = self.a.zero_like() + other
        return DualNumber(other, other.zero_like())

    def __add__(self, other):
        o = self._coerce(other)
        return DualNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return DualNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return DualNumber(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        return DualNumber(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of dual numbers not supported")
        acc = DualNumber(self.a.one_like(), self.a.zero_like())
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_unit(self) -> bool:
        return self.a.is_unit()

    def zero_like(self):
        return DualNumber(self.a.zero_like(), self.a.zero_like())

    def one_like(self):
        return DualNumber(self.a.one_like(), self.a.zero_like())

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, DualNumber) else other
        return self.a == o.a and self.b == o.b

    __hash__ = None

    def __repr__(self):
        return f"({self.a!r}) + eps*({self.b!r})"


# -- exact rational utilities ----------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2).

    Computed by the defining recurrence sum_{j<=m} C(m+1, j) B_j = 0 and
    memoized in a write-once table.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k >= len(_bernoulli_cache):
        with _bernoulli_lock:
            table = list(_bernoulli_cache)
            for m in range(len(table), k + 1):
                s = sum(comb(m + 1, j) * table[j] for j in range(m))
                table.append(Fraction(-s, m + 1))
            # publish atomically so concurrent readers never see a partial table
            _bernoulli_cache[:] = table
    return _bernoulli_cache[k]


def bernoulli_polynomial(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j), evaluated exactly."""
    x = Fraction(x)
    return sum(comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1))


def padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def reduce_rational(r: Fraction, ctx: PadicContext, prec: int | None = None) -> PadicInt:
    """Reduce an exact rational into Z/p**N.

    The value must be p-integral: Fraction keeps numerator and denominator
    coprime, so any p left in the denominator means a genuine pole and raises
    NotPIntegral.  Zero comes back at full precision.
    """
    r = Fraction(r)
    if prec is None:
        prec = ctx.N
    if r.numerator == 0:
        return PadicInt(ctx, 0, prec)
    if r.denominator % ctx.p == 0:
        raise NotPIntegral(f"{r} has p={ctx.p} in its denominator")
    m = ctx.p ** prec
    return PadicInt(ctx, r.numerator * pow(r.denominator, -1, m), prec)


def ilog(n: int, p: int) -> int:
    """floor(log_p(n)) for n >= 1."""
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


def binomial_padic(x: PadicInt, k: int) -> PadicInt:
    """C(x, k) for a p-adic argument.

    The binomial is evaluated exactly on the canonical residue; since
    C(n + p^e, k) - C(n, k) has valuation >= e - floor(log_p k), the result
    is certified to prec - floor(log_p k) digits.
    """
    if k == 0:
        return PadicInt(x.ctx, 1, x.prec)
    loss = ilog(k, x.ctx.p)
    return PadicInt(x.ctx, comb(x.residue, k), max(x.prec - loss, 0))

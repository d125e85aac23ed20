"""Exact representations of continuous functions on Z_p.

Every variant evaluates exactly at p-adic integer arguments; locally
constant functions (step functions, p-power characters and their products
with polynomials) additionally decompose into a canonical
"sum of z^j times step function" form, which is what measure evaluation
consumes.  General continuous functions enter only as Mahler series with an
explicit, caller-declared tail valuation; the library never guesses a
modulus of continuity.
"""

from __future__ import annotations

import json

from .cyclotomic import CyclotomicElem, cyclo_pow
from .errors import NotUnit, PrecisionExhausted, UnsupportedShape
from .padic import PadicContext, PadicInt, binomial_padic


class ContinuousFn:
    """Base class; subclasses implement exact pointwise evaluation."""

    ctx: PadicContext

    def evaluate(self, x: PadicInt):
        raise NotImplementedError


class Polynomial(ContinuousFn):
    """f(z) = sum_j coeffs[j] * z^j with p-adic integer coefficients."""

    def __init__(self, ctx: PadicContext, coeffs):
        self.ctx = ctx
        self.coeffs = [c if isinstance(c, PadicInt) else PadicInt(ctx, c)
                       for c in coeffs]
        if not self.coeffs:
            self.coeffs = [PadicInt(ctx, 0)]

    def evaluate(self, x: PadicInt):
        acc = PadicInt(self.ctx, 0, x.prec)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def degree(self) -> int:
        return len(self.coeffs) - 1


def monomial(ctx: PadicContext, degree: int) -> Polynomial:
    coeffs = [0] * degree + [1]
    return Polynomial(ctx, coeffs)


def constant_fn(ctx: PadicContext, value) -> Polynomial:
    return Polynomial(ctx, [value])


class Binomial(ContinuousFn):
    """The binomial coefficient function z |-> C(z, k).

    Takes p-integral values on Z_p even though its monomial coefficients do
    not; it is the k-th member of the basis dual to the Amice coefficients.
    """

    def __init__(self, ctx: PadicContext, k: int):
        if k < 0:
            raise ValueError("k must be >= 0")
        self.ctx = ctx
        self.k = k

    def evaluate(self, x: PadicInt):
        return binomial_padic(x, self.k)


class Character(ContinuousFn):
    """f(z) = zeta^z for a p-power root of unity zeta."""

    def __init__(self, zeta: CyclotomicElem):
        self.ctx = zeta.ctx
        self.zeta = zeta
        self.level = zeta.level

    def evaluate(self, x: PadicInt):
        return cyclo_pow(self.zeta, x)


class LocallyConstant(ContinuousFn):
    """A function constant on residue classes mod p^level, given by a table.

    table[c] is the value on c + p^level Z_p; the table has exactly p^level
    entries of scalars (PadicInt or CyclotomicElem).
    """

    def __init__(self, ctx: PadicContext, level: int, table):
        if level < 0:
            raise ValueError("level must be >= 0")
        n = ctx.p ** level
        table = [v if not isinstance(v, int) else PadicInt(ctx, v) for v in table]
        if len(table) != n:
            raise ValueError(f"level {level} requires {n} table entries")
        self.ctx = ctx
        self.level = level
        self.table = table

    def evaluate(self, x: PadicInt):
        if x.prec < self.level:
            raise PrecisionExhausted(
                f"argument known mod p^{x.prec}, table needs mod p^{self.level}"
            )
        return self.table[x.residue % (self.ctx.p ** self.level)]


def indicator(ctx: PadicContext, level: int, cls: int) -> LocallyConstant:
    """Indicator function of the residue class cls + p^level Z_p."""
    n = ctx.p ** level
    table = [PadicInt(ctx, 1 if c == cls % n else 0) for c in range(n)]
    return LocallyConstant(ctx, level, table)


class MahlerSeries(ContinuousFn):
    """f(z) = sum_k coeffs[k] C(z, k), with a declared tail bound.

    tail_valuation is the caller's promise that every coefficient beyond the
    stored ones has p-adic valuation >= tail_valuation; evaluations deduct
    precision accordingly.
    """

    def __init__(self, ctx: PadicContext, coeffs, tail_valuation: int):
        self.ctx = ctx
        self.coeffs = [c if isinstance(c, PadicInt) else PadicInt(ctx, c)
                       for c in coeffs]
        self.tail_valuation = tail_valuation

    def evaluate(self, x: PadicInt):
        acc = PadicInt(self.ctx, 0, x.prec)
        for k, c in enumerate(self.coeffs):
            acc = acc + c * binomial_padic(x, k)
        certified = min(acc.prec, self.tail_valuation)
        if certified <= 0:
            raise PrecisionExhausted("tail bound certifies no digits")
        return PadicInt(self.ctx, acc.residue, certified)


class Product(ContinuousFn):
    """Pointwise product of two functions."""

    def __init__(self, f: ContinuousFn, g: ContinuousFn):
        self.ctx = f.ctx
        self.f = f
        self.g = g

    def evaluate(self, x: PadicInt):
        return self.f.evaluate(x) * self.g.evaluate(x)


class Scaled(ContinuousFn):
    """z |-> inner(mult * z).

    The public constructor scale_argument restricts mult to units; the class
    itself also serves the U_p/V_p compatibility checks where mult = p.
    """

    def __init__(self, inner: ContinuousFn, mult: PadicInt):
        self.ctx = inner.ctx
        self.inner = inner
        self.mult = mult

    def evaluate(self, x: PadicInt):
        return self.inner.evaluate(self.mult * x)


class ZeroExtendedUnits(ContinuousFn):
    """inner restricted to Z_p^* and extended by zero across pZ_p."""

    def __init__(self, inner: ContinuousFn):
        self.ctx = inner.ctx
        self.inner = inner

    def evaluate(self, x: PadicInt):
        if x.prec < 1:
            raise PrecisionExhausted("cannot decide unit-ness at precision 0")
        if x.residue % self.ctx.p == 0:
            return PadicInt(self.ctx, 0, x.prec)
        return self.inner.evaluate(x)


# -- module operations -------------------------------------------------------

def evaluate(f: ContinuousFn, x: PadicInt):
    """Exact value of f at x (cyclotomic-valued when f involves a character)."""
    return f.evaluate(x)


def mahler_coeffs(f: ContinuousFn, K: int) -> list:
    """Coefficients c_k = (finite difference)^k f at 0, for k = 0..K.

    These satisfy f(n) = sum_k c_k C(n, k) for every integer 0 <= n <= K.
    """
    vals = [f.evaluate(PadicInt(f.ctx, n)) for n in range(K + 1)]
    out = []
    for _ in range(K + 1):
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return out


def multiply(f: ContinuousFn, g: ContinuousFn) -> ContinuousFn:
    """Pointwise product, with polynomial*polynomial collapsed eagerly."""
    if isinstance(f, Polynomial) and isinstance(g, Polynomial):
        ctx = f.ctx
        out = [PadicInt(ctx, 0) for _ in range(len(f.coeffs) + len(g.coeffs) - 1)]
        for i, a in enumerate(f.coeffs):
            for j, b in enumerate(g.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(ctx, out)
    return Product(f, g)


def scale_argument(f: ContinuousFn, u: PadicInt) -> ContinuousFn:
    """z |-> f(u z) for a unit u."""
    if not u.is_unit():
        raise NotUnit(f"scale_argument needs a unit, got {u!r}")
    return Scaled(f, u)


# -- locally constant structure ----------------------------------------------

def lc_level(f: ContinuousFn) -> int | None:
    """Smallest level at which f is known to factor through Z/p^level.

    None means "not known locally constant" (honest polynomials, Mahler
    series); a Polynomial of degree 0 is locally constant of level 0.
    """
    if isinstance(f, Polynomial):
        return 0 if f.degree() == 0 else None
    if isinstance(f, Binomial):
        return 0 if f.k == 0 else None
    if isinstance(f, Character):
        return f.level
    if isinstance(f, LocallyConstant):
        return f.level
    if isinstance(f, Product):
        a, b = lc_level(f.f), lc_level(f.g)
        return max(a, b) if a is not None and b is not None else None
    if isinstance(f, Scaled):
        return lc_level(f.inner)
    if isinstance(f, ZeroExtendedUnits):
        inner = lc_level(f.inner)
        return max(inner, 1) if inner is not None else None
    return None


def as_table(f: ContinuousFn, level: int) -> list:
    """Value table of f on residues mod p^level.

    Faithful only when f is locally constant of level <= level; it is the
    caller's job to check lc_level first.
    """
    n = f.ctx.p ** level
    return [f.evaluate(PadicInt(f.ctx, c)) for c in range(n)]


def _lift_table(table: list, ctx: PadicContext, frm: int, to: int) -> list:
    if frm == to:
        return table
    n_from = ctx.p ** frm
    return [table[c % n_from] for c in range(ctx.p ** to)]


def poly_lc_terms(f: ContinuousFn) -> tuple[int, dict]:
    """Decompose f(z) = sum_j z^j g_j(z) with every g_j a level-m table.

    Returns (m, {j: table}); raises UnsupportedShape for functions with no
    exact polynomial-times-step presentation (Mahler series, binomials of
    positive index).
    """
    ctx = f.ctx
    if isinstance(f, Polynomial):
        return 0, {j: [c] for j, c in enumerate(f.coeffs) if not c.is_zero()}
    if isinstance(f, Binomial):
        if f.k == 0:
            return 0, {0: [PadicInt(ctx, 1)]}
        raise UnsupportedShape("binomial functions have no p-integral "
                               "polynomial presentation")
    if isinstance(f, (Character, LocallyConstant)):
        m = f.level
        return m, {0: as_table(f, m)}
    if isinstance(f, Product):
        m1, t1 = poly_lc_terms(f.f)
        m2, t2 = poly_lc_terms(f.g)
        m = max(m1, m2)
        out: dict = {}
        for j1, tab1 in t1.items():
            tab1 = _lift_table(tab1, ctx, m1, m)
            for j2, tab2 in t2.items():
                tab2l = _lift_table(tab2, ctx, m2, m)
                _accumulate(out, j1 + j2,
                            [a * b for a, b in zip(tab1, tab2l)], ctx)
        return m, out
    if isinstance(f, Scaled):
        m, terms = poly_lc_terms(f.inner)
        n = ctx.p ** m
        u = f.mult
        out = {}
        for j, tab in terms.items():
            uj = u ** j
            out[j] = [uj * tab[(u.residue * c) % n] for c in range(n)]
        return m, out
    if isinstance(f, ZeroExtendedUnits):
        m_in, terms = poly_lc_terms(f.inner)
        m = max(m_in, 1)
        p = ctx.p
        out = {}
        for j, tab in terms.items():
            tab = _lift_table(tab, ctx, m_in, m)
            out[j] = [v if c % p != 0 else PadicInt(ctx, 0)
                      for c, v in enumerate(tab)]
        return m, out
    raise UnsupportedShape(f"cannot decompose {type(f).__name__}")


def _accumulate(out: dict, j: int, table: list, ctx: PadicContext):
    if j in out:
        out[j] = [a + b for a, b in zip(out[j], table)]
    else:
        out[j] = table


# -- two-variable functions ---------------------------------------------------

class TwoVarFn:
    """Finite tensor sum F(x, y) = sum_i f_i(x) g_i(y)."""

    def __init__(self, ctx: PadicContext, terms):
        self.ctx = ctx
        self.terms = list(terms)

    @classmethod
    def tensor(cls, f: ContinuousFn, g: ContinuousFn) -> "TwoVarFn":
        return cls(f.ctx, [(f, g)])

    @classmethod
    def zero(cls, ctx: PadicContext) -> "TwoVarFn":
        return cls(ctx, [])

    def evaluate(self, x: PadicInt, y: PadicInt):
        acc = PadicInt(self.ctx, 0, min(x.prec, y.prec))
        for f, g in self.terms:
            acc = acc + f.evaluate(x) * g.evaluate(y)
        return acc

    def __add__(self, other: "TwoVarFn") -> "TwoVarFn":
        return TwoVarFn(self.ctx, self.terms + other.terms)


# -- JSON descriptors ---------------------------------------------------------

def fn_from_json(ctx: PadicContext, obj) -> ContinuousFn:
    """Build a ContinuousFn from its JSON descriptor (dict or JSON string)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "monomial":
        return monomial(ctx, int(obj["degree"]))
    if kind == "polynomial":
        return Polynomial(ctx, [int(c) for c in obj["coeffs"]])
    if kind == "constant":
        return constant_fn(ctx, int(obj["value"]))
    if kind == "indicator":
        return indicator(ctx, int(obj["level"]), int(obj["class"]))
    if kind == "character":
        level = int(obj["level"])
        power = int(obj.get("power", 1))
        return Character(CyclotomicElem.zeta_power(ctx, level, power))
    if kind == "binomial":
        return Binomial(ctx, int(obj["k"]))
    if kind == "mahler":
        return MahlerSeries(ctx, [int(c) for c in obj["coeffs"]],
                            int(obj["tail_valuation"]))
    if kind == "product":
        fs = [fn_from_json(ctx, o) for o in obj["factors"]]
        out = fs[0]
        for g in fs[1:]:
            out = multiply(out, g)
        return out
    if kind == "scaled":
        return scale_argument(fn_from_json(ctx, obj["inner"]),
                              PadicInt(ctx, int(obj["unit"])))
    if kind == "zero_extended_units":
        return ZeroExtendedUnits(fn_from_json(ctx, obj["inner"]))
    raise ValueError(f"unknown function kind {kind!r}")

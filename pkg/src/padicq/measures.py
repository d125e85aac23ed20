"""p-adic measures and the Eisenstein measure machinery.

A measure here is a bounded linear functional on continuous functions,
valued in scalars or in q-expansions.  The only nontrivial construction is
the regularized constant-term functional, which is pinned by its moments
(1 - a^k)(-B_k/k) alone; we realize it through the exact power series

    A_a(T) = a / ((1+T)^a - 1)  -  1/T,

which lies in Z_p[[T]] because the denominator has unit linear coefficient.
Truncations of A_a are computed by exact series inversion modulo p^N (the
only division is by the unit a), polynomial moments come out of the finite
Mahler pairing at full precision, and locally constant functions go through
the character decomposition, costing exactly m digits for level m.
"""

from __future__ import annotations

import json
from math import comb

from .action import DEFAULT_M_MAX, act, act_character
from .cyclotomic import CyclotomicElem, phi_pm
from .errors import (EulerFactorNotInvertible, NotRootOfUnity, NotUnit,
                     PrecisionExhausted, UnsupportedShape)
from .padic import PadicContext, PadicInt
from .qseries import QExpansion
from .zpfun import (Binomial, Character, ContinuousFn, LocallyConstant,
                    Polynomial, TwoVarFn, ZeroExtendedUnits, as_table,
                    indicator, lc_level, mahler_coeffs, monomial, multiply,
                    poly_lc_terms)


# -- the regularized kernel series -------------------------------------------

class RegularizedKernel:
    """Truncations of A_a(T) and its multiplication-by-z twists, mod p^N.

    Multiplying the integrand by z corresponds to (1+T) d/dT on this series,
    so the j-th twist evaluated at zeta - 1 is the functional on z^j chi_zeta.
    """

    def __init__(self, ctx: PadicContext, a: PadicInt):
        if not a.is_unit():
            raise NotUnit("the regularizing parameter must be a unit")
        if a.prec < ctx.N:
            raise PrecisionExhausted("the regularizing parameter must carry "
                                     "full precision")
        self.ctx = ctx
        self.a = a
        self._base: list[int] = []

    def base(self, K: int) -> list[int]:
        """Coefficients of A_a(T) mod (p^N, T^(K+1))."""
        if len(self._base) < K + 1:
            self._base = self._compute(K)
        return self._base[: K + 1]

    def _compute(self, K: int) -> list[int]:
        ctx, r = self.ctx, self.a.residue
        mod = ctx.modulus
        # P(T) = ((1+T)^r - 1)/T, Q(T) = ((1+T)^r - 1 - rT)/T^2, both exact
        P = [comb(r, i + 1) % mod for i in range(min(r - 1, K) + 1)]
        Q = [comb(r, i + 2) % mod for i in range(min(max(r - 2, 0), K) + 1)]
        inv0 = pow(P[0], -1, mod)
        R = [inv0] + [0] * K
        for n in range(1, K + 1):
            acc = 0
            for i in range(1, min(n, len(P) - 1) + 1):
                acc += P[i] * R[n - i]
            R[n] = (-inv0 * acc) % mod
        out = []
        for n in range(K + 1):
            acc = 0
            for i in range(0, min(n, len(Q) - 1) + 1):
                acc += Q[i] * R[n - i]
            out.append((-acc) % mod)
        return out

    def twisted(self, j: int, K: int) -> list[int]:
        """Coefficients of ((1+T) d/dT)^j A_a, to T-degree K."""
        mod = self.ctx.modulus
        cur = self.base(K + j)
        for _ in range(j):
            cur = [((n + 1) * cur[n + 1] + n * cur[n]) % mod
                   for n in range(len(cur) - 1)]
        return cur[: K + 1]


def _monomial_mahler(j: int) -> list[int]:
    """Exact Mahler coefficients of z^j (finite differences of n^j)."""
    vals = [n ** j for n in range(j + 1)]
    out = []
    for _ in range(j + 1):
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return out


class KLConstantTerm:
    """The constant-term functional of the Eisenstein measure.

    Its moments on z^(k-1) equal (1 - a^k)(-B_k/k) reduced mod p^N; values on
    level-m step functions are exact to N - m digits.  Levels beyond m_max
    fail loudly rather than degrade silently.
    """

    def __init__(self, ctx: PadicContext, a: PadicInt,
                 m_max: int = DEFAULT_M_MAX):
        self.ctx = ctx
        self.a = a
        self.m_max = m_max
        self.kernel = RegularizedKernel(ctx, a)
        self._indicator_cache: dict = {}

    # -- core values --------------------------------------------------------

    def moment(self, j: int) -> PadicInt:
        """kappa(z^j), exact mod p^N (finite Mahler pairing)."""
        ctx = self.ctx
        b = self.kernel.base(j)
        c = _monomial_mahler(j)
        acc = sum(ck * bk for ck, bk in zip(c, b))
        return PadicInt(ctx, acc)

    def value_character(self, zeta: CyclotomicElem, j: int = 0):
        """kappa(z^j chi_zeta) = (twisted series)(zeta - 1), full precision."""
        m = zeta.level
        K = self.ctx.N * phi_pm(self.ctx.p, m)
        coeffs = self.kernel.twisted(j, K)
        return _horner_cyclo(self.ctx, coeffs, zeta, m)

    def _indicator_values(self, j: int, m: int) -> list[PadicInt]:
        """kappa(z^j 1_{c + p^m Z_p}) for all c, via the character sum."""
        key = (j, m)
        if key in self._indicator_cache:
            return self._indicator_cache[key]
        ctx = self.ctx
        pm = ctx.p ** m
        # evaluate the twisted series at every p^m-th root of unity, each in
        # the ring of its exact level, then assemble the finite Fourier sum
        evals = []
        for i in range(pm):
            lvl = m
            ii = i
            while lvl > 0 and ii % ctx.p == 0:
                ii //= ctx.p
                lvl -= 1
            if lvl == 0:
                b = self.kernel.twisted(j, 0)
                evals.append(CyclotomicElem.from_scalar(PadicInt(ctx, b[0])))
            else:
                zeta = CyclotomicElem.zeta_power(ctx, lvl, ii)
                K = ctx.N * phi_pm(ctx.p, lvl)
                coeffs = self.kernel.twisted(j, K)
                evals.append(_horner_cyclo(ctx, coeffs, zeta, lvl))
        zpow = [CyclotomicElem.zeta_power(ctx, m, e) for e in range(pm)]
        out = []
        for c in range(pm):
            acc = CyclotomicElem.zero(ctx, m)
            for i in range(pm):
                acc = acc + zpow[(-c * i) % pm] * evals[i]
            # the true value lies in Z_p and is divisible by p^m; anything in
            # the higher basis coordinates is below working precision
            for coeff in acc.lift_to(m).coeffs[1:]:
                if not coeff.is_zero():
                    raise PrecisionExhausted(
                        "character sum failed to collapse to a scalar")
            out.append(acc.lift_to(m).coeffs[0].divide_by_p(m))
        self._indicator_cache[key] = out
        return out

    # -- public evaluation ----------------------------------------------------

    def value(self, f: ContinuousFn):
        """kappa(f) for exactly representable f."""
        ctx = self.ctx
        if isinstance(f, Binomial):
            return PadicInt(ctx, self.kernel.base(f.k)[f.k])
        if isinstance(f, Character):
            return self.value_character(f.zeta)
        m, terms = poly_lc_terms(f)
        if m > self.m_max:
            raise PrecisionExhausted(
                f"level {m} exceeds the configured cap m_max={self.m_max}")
        if m == 0:
            acc = PadicInt(ctx, 0)
            for j, tab in terms.items():
                acc = acc + tab[0] * self.moment(j)
            return acc
        acc = PadicInt(ctx, 0, ctx.N)
        for j, tab in terms.items():
            ind = self._indicator_values(j, m)
            for c, v in enumerate(tab):
                if isinstance(v, PadicInt) and v.is_zero():
                    continue
                acc = acc + v * ind[c]
        return acc


def _horner_cyclo(ctx: PadicContext, coeffs: list[int], zeta: CyclotomicElem,
                  level: int):
    """Evaluate an integer-coefficient series at zeta - 1 in its own ring."""
    x = zeta - CyclotomicElem.one(ctx, 0)
    acc = CyclotomicElem.zero(ctx, level)
    for c in reversed(coeffs):
        acc = acc * x
        acc = acc + PadicInt(ctx, c)
    return acc


_kl_cache: dict = {}


def kl_constant_functional(ctx: PadicContext, a: PadicInt,
                           m_max: int = DEFAULT_M_MAX) -> KLConstantTerm:
    key = (ctx.p, ctx.N, a.residue, m_max)
    if key not in _kl_cache:
        _kl_cache[key] = KLConstantTerm(ctx, a, m_max)
    return _kl_cache[key]


def kl_constant(a: PadicInt, f: ContinuousFn,
                m_max: int = DEFAULT_M_MAX) -> PadicInt:
    """The regularized constant term attached to a, applied to f."""
    return kl_constant_functional(f.ctx, a, m_max).value(f)


# -- measures -------------------------------------------------------------------

class Measure:
    """Linear functional on continuous functions (scalar or series valued)."""

    def __call__(self, f: ContinuousFn):
        raise NotImplementedError

    def amice(self, K: int) -> list:
        """Amice coefficients b_k = mu(C(x, k)) for k <= K."""
        raise NotImplementedError

    def at_character(self, zeta: CyclotomicElem):
        """mu(chi_zeta); always equals the Amice series at zeta - 1."""
        raise NotImplementedError


class DiracMeasure(Measure):
    """Evaluation at a point.

    The point is a p-adic integer; binomial and character values are taken
    on its canonical residue, which is exact whenever the point was given as
    an actual integer at full precision.
    """

    def __init__(self, c: PadicInt):
        self.c = c
        self.ctx = c.ctx

    def __call__(self, f: ContinuousFn):
        return f.evaluate(self.c)

    def amice(self, K: int) -> list:
        return [PadicInt(self.ctx, comb(self.c.residue, k), self.c.prec)
                for k in range(K + 1)]

    def at_character(self, zeta: CyclotomicElem):
        return zeta ** (self.c.residue % (self.ctx.p ** zeta.level))


class AmiceMeasure(Measure):
    """Measure given by finitely many Amice coefficients.

    A finite coefficient list is itself an honest measure (a finite linear
    combination of the binomial-dual functionals), so every evaluation below
    is a finite exact sum.
    """

    def __init__(self, ctx: PadicContext, coeffs):
        self.ctx = ctx
        self.coeffs = [c if not isinstance(c, int) else PadicInt(ctx, c)
                       for c in coeffs]

    def __call__(self, f: ContinuousFn):
        c = mahler_coeffs(f, len(self.coeffs) - 1)
        return _dot(self.ctx, c, self.coeffs)

    def amice(self, K: int) -> list:
        out = list(self.coeffs[: K + 1])
        while len(out) < K + 1:
            out.append(PadicInt(self.ctx, 0))
        return out

    def at_character(self, zeta: CyclotomicElem):
        if not self.coeffs:
            return PadicInt(self.ctx, 0)
        x = zeta - CyclotomicElem.one(self.ctx, 0)
        acc = None
        for b in reversed(self.coeffs):
            if acc is None:
                acc = _scalar_or_series_zero(self.ctx, b)
            acc = _mul_value(acc, x)
            acc = _add_value(acc, b)
        return acc


class EisensteinMeasure(Measure):
    """The measure with moments (1 - a^k) 2G_k, defined coefficient-wise.

    Coefficient n of mu(f) is 2 sum_{d|n} (f(d) - a f(a d)); the constant
    term is the regularized functional.  On z^(k-1) this reproduces
    (1 - a^k) 2G_k including the constant term.
    """

    def __init__(self, ctx: PadicContext, a: PadicInt,
                 m_max: int = DEFAULT_M_MAX):
        if not a.is_unit():
            raise NotUnit("the Eisenstein measure needs a unit parameter")
        self.ctx = ctx
        self.a = a
        self.kl = kl_constant_functional(ctx, a, m_max)

    def __call__(self, f: ContinuousFn) -> QExpansion:
        ctx, a = self.ctx, self.a
        M = ctx.M
        fd = [None] + [f.evaluate(PadicInt(ctx, d)) for d in range(1, M + 1)]
        fad = [None] + [f.evaluate(a * d) for d in range(1, M + 1)]
        out = [PadicInt(ctx, 0) for _ in range(M + 1)]
        for d in range(1, M + 1):
            t = fd[d] - a * fad[d]
            if isinstance(t, PadicInt) and t.is_zero():
                continue
            for n in range(d, M + 1, d):
                out[n] = out[n] + t
        coeffs = [self.kl.value(f)] + [2 * c for c in out[1:]]
        return QExpansion(ctx, coeffs)

    def amice(self, K: int) -> list:
        return [self(Binomial(self.ctx, k)) for k in range(K + 1)]

    def at_character(self, zeta: CyclotomicElem) -> QExpansion:
        return self(Character(zeta))


class ActionMeasure(Measure):
    """The measure f |-> act(f, g) attached to a q-expansion g."""

    def __init__(self, g: QExpansion):
        self.g = g
        self.ctx = g.ctx

    def __call__(self, f: ContinuousFn) -> QExpansion:
        return act(f, self.g)

    def amice(self, K: int) -> list:
        return [act(Binomial(self.ctx, k), self.g) for k in range(K + 1)]

    def at_character(self, zeta: CyclotomicElem) -> QExpansion:
        return act_character(zeta, self.g, m_max=max(zeta.level, DEFAULT_M_MAX))


class LinearMeasure(Measure):
    """Scalar-weighted combination of measures."""

    def __init__(self, ctx: PadicContext, terms):
        self.ctx = ctx
        self.terms = [(w if not isinstance(w, int) else PadicInt(ctx, w), mu)
                      for w, mu in terms]

    def __call__(self, f: ContinuousFn):
        acc = None
        for w, mu in self.terms:
            v = _mul_value(mu(f), w)
            acc = v if acc is None else _add_value(acc, v)
        return acc if acc is not None else PadicInt(self.ctx, 0)

    def amice(self, K: int) -> list:
        cols = [mu.amice(K) for _, mu in self.terms]
        out = []
        for k in range(K + 1):
            acc = None
            for (w, _), col in zip(self.terms, cols):
                v = _mul_value(col[k], w)
                acc = v if acc is None else _add_value(acc, v)
            out.append(acc if acc is not None else PadicInt(self.ctx, 0))
        return out

    def at_character(self, zeta: CyclotomicElem):
        acc = None
        for w, mu in self.terms:
            v = _mul_value(mu.at_character(zeta), w)
            acc = v if acc is None else _add_value(acc, v)
        return acc


def _scalar_or_series_zero(ctx, sample):
    if isinstance(sample, QExpansion):
        return QExpansion.zero(ctx, sample.qprec)
    return PadicInt(ctx, 0)


def _mul_value(v, c):
    """v * c where v may be a scalar or a QExpansion and c is a scalar."""
    if isinstance(v, QExpansion):
        return v.scale(c)
    return v * c


def _add_value(u, v):
    return u + v


def _dot(ctx, cks, bs):
    acc = None
    for ck, b in zip(cks, bs):
        term = _mul_value(b, ck)
        acc = term if acc is None else _add_value(acc, term)
    return acc if acc is not None else PadicInt(ctx, 0)


# -- module operations -------------------------------------------------------

def amice_transform(mu: Measure, K: int) -> AmiceMeasure:
    """First K+1 Amice coefficients of mu, as a measure in its own right.

    Precision is tracked coefficient by coefficient; a coefficient that
    cannot be certified to a single digit raises PrecisionExhausted.
    """
    coeffs = mu.amice(K)
    for b in coeffs:
        if isinstance(b, PadicInt) and b.prec <= 0:
            raise PrecisionExhausted("Amice coefficient lost all precision")
    return AmiceMeasure(mu.ctx, coeffs)


def eval_measure(mu: Measure, f: ContinuousFn):
    """mu(f); scalar valued or QExpansion valued depending on mu."""
    return mu(f)


def eval_at_character(mu: Measure, zeta: CyclotomicElem):
    """mu(chi_zeta) = (Amice series of mu)(zeta - 1)."""
    if not zeta.is_root_of_unity():
        raise NotRootOfUnity("characters are indexed by p-power roots of unity")
    return mu.at_character(zeta)


def eisenstein_eval(a: PadicInt, f: ContinuousFn,
                    m_max: int = DEFAULT_M_MAX) -> QExpansion:
    """Value of the Eisenstein measure attached to a on f."""
    return EisensteinMeasure(f.ctx, a, m_max)(f)


class ProductMeasure(Measure):
    """Measure on Z_p x Z_p induced by a bilinear form on pure tensors."""

    def __init__(self, ctx: PadicContext, bilinear):
        self.ctx = ctx
        self.bilinear = bilinear

    def __call__(self, F: TwoVarFn):
        acc = None
        for f, g in F.terms:
            v = self.bilinear(f, g)
            acc = v if acc is None else _add_value(acc, v)
        return acc if acc is not None else PadicInt(self.ctx, 0)


def product_measure(ctx: PadicContext, bilinear, F: TwoVarFn):
    """Evaluate the unique measure with mu(f (x) g) = bilinear(f, g) on F."""
    return ProductMeasure(ctx, bilinear)(F)


def convolution_nu(a: PadicInt, F: TwoVarFn,
                   m_max: int = DEFAULT_M_MAX) -> QExpansion:
    """The convolution measure: on f (x) g it acts by g on the Eisenstein
    value at f, so its moments on x^s y^t are (1 - a^(s+1)) theta^t 2G_(s+1).
    """
    ctx = F.ctx
    mu = EisensteinMeasure(ctx, a, m_max)
    acc = QExpansion.zero(ctx)
    for f, g in F.terms:
        acc = acc + act(g, mu(f))
    return acc


def pushforward_halving(F: TwoVarFn) -> TwoVarFn:
    """Transport along (x, y) |-> (x, x y), re-tensored term by term.

    A monomial factor y^t contributes x^t to the first slot; a level-m step
    factor is split over the residue classes of x, since x y mod p^m only
    depends on x mod p^m.
    """
    ctx = F.ctx
    out = []
    for f, g in F.terms:
        try:
            m, terms = poly_lc_terms(g)
        except UnsupportedShape as exc:
            raise UnsupportedShape(
                f"second factor {type(g).__name__} cannot be re-tensored"
            ) from exc
        if m == 0:
            for t, tab in terms.items():
                xpart = multiply(f, Polynomial(ctx, [0] * t + [tab[0]]))
                out.append((xpart, monomial(ctx, t)))
        else:
            pm = ctx.p ** m
            for cc in range(pm):
                ind = indicator(ctx, m, cc)
                for t, tab in terms.items():
                    shifted = [tab[(cc * y) % pm] for y in range(pm)]
                    xpart = multiply(f, multiply(monomial(ctx, t), ind))
                    ypart = multiply(monomial(ctx, t),
                                     LocallyConstant(ctx, m, shifted))
                    out.append((xpart, ypart))
    return TwoVarFn(ctx, out)


def measure_from_json(ctx: PadicContext, obj) -> Measure:
    """Build a measure from its JSON descriptor (dict or JSON string)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "dirac":
        return DiracMeasure(PadicInt(ctx, int(obj["c"])))
    if kind == "amice":
        return AmiceMeasure(ctx, [int(c) for c in obj["coeffs"]])
    if kind == "eisenstein":
        return EisensteinMeasure(ctx, PadicInt(ctx, int(obj["a"])),
                                 int(obj.get("m_max", DEFAULT_M_MAX)))
    if kind == "linear":
        return LinearMeasure(ctx, [(int(w), measure_from_json(ctx, inner))
                                   for w, inner in obj["terms"]])
    raise ValueError(f"unknown measure kind {kind!r}")


# -- two-variable L-values -----------------------------------------------------

def _character_table(chi: ContinuousFn, m: int) -> list:
    lvl = lc_level(chi)
    if lvl is None:
        raise ValueError("characters must be locally constant data")
    if lvl > m:
        raise ValueError("character level exceeds requested level")
    return as_table(chi, m)


def validate_character(chi: ContinuousFn, m: int) -> list:
    """Check multiplicativity of a unit-character table; returns the table."""
    ctx = chi.ctx
    pm = ctx.p ** m
    tab = _character_table(chi, m)
    units = [u for u in range(pm) if u % ctx.p != 0]
    one = tab[1 % pm]
    if not (one == PadicInt(ctx, 1)):
        raise ValueError("character must send 1 to 1")
    for u in units:
        for v in units:
            if not (tab[(u * v) % pm] == tab[u] * tab[v]):
                raise ValueError(
                    f"character table not multiplicative at ({u}, {v})")
    return tab


def two_variable_L(chi1: ContinuousFn, chi2: ContinuousFn, a: PadicInt,
                   m_max: int = DEFAULT_M_MAX):
    """The two-variable L-value pinned by the defining identity.

    Both characters are zero-extended off the units.  The y-side extension
    annihilates the literal constant coefficient of the convolution value,
    so the number returned is the measure-side constant: the regularized
    functional on the zero-extended quotient character, divided by the
    Euler-type factor 1 - chi1(a) a / chi2(a).
    """
    ctx = chi1.ctx
    m = max(lc_level(chi1) or 0, lc_level(chi2) or 0, 1)
    tab1 = validate_character(chi1, m)
    tab2 = validate_character(chi2, m)
    pm = ctx.p ** m
    if not a.is_unit():
        raise NotUnit("a must be a unit")
    quotient = [
        tab1[c] * tab2[c].inverse() if c % ctx.p != 0
        else PadicInt(ctx, 0)
        for c in range(pm)
    ]
    ar = a.residue % pm
    factor = PadicInt(ctx, 1) - tab1[ar] * a * tab2[ar].inverse()
    if not factor.is_unit():
        raise EulerFactorNotInvertible(
            "1 - chi1(a) a / chi2(a) is congruent to 0 mod p")
    fn = ZeroExtendedUnits(LocallyConstant(ctx, m, quotient))
    kl_side = kl_constant(a, fn, m_max)
    return kl_side * factor.inverse()


def nu_character_series(chi1: ContinuousFn, chi2: ContinuousFn, a: PadicInt,
                        m_max: int = DEFAULT_M_MAX) -> QExpansion:
    """The full convolution value on the zero-extended character pair."""
    ctx = chi1.ctx
    m = max(lc_level(chi1) or 0, lc_level(chi2) or 0, 1)
    tab1 = validate_character(chi1, m)
    tab2 = validate_character(chi2, m)
    pm = ctx.p ** m
    quotient = [
        tab1[c] * tab2[c].inverse() if c % ctx.p != 0
        else PadicInt(ctx, 0)
        for c in range(pm)
    ]
    F = TwoVarFn.tensor(
        ZeroExtendedUnits(LocallyConstant(ctx, m, quotient)),
        ZeroExtendedUnits(LocallyConstant(ctx, m, tab2)),
    )
    return convolution_nu(a, F, m_max)

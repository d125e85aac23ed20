"""Exact p-adic arithmetic for q-expansions of p-adic modular functions.

The package provides truncated p-adic and cyclotomic scalars, continuous
functions on Z_p with their Mahler theory, Eisenstein series and the theta
and U_p/V_p operators, p-adic measures (Amice transform, the regularized
Eisenstein measure, convolutions and two-variable L-values), the algebra
action of continuous functions on q-expansions, and the torsion arithmetic
of Kummer groups.
"""

from .action import ActionContext, act, act_character, derivative_check, psi
from .cyclotomic import CyclotomicElem, cyclo_pow, phi_pm
from .errors import (BaseMismatch, ConfigError, EulerFactorNotInvertible,
                     IncompatibleRoots, NotPIntegral, NotRootOfUnity, NotUnit,
                     PadicqError, PrecisionExhausted, UnsupportedShape)
from .kummer import (CheckReport, KummerBase, KummerElement, LaurentElem,
                     constant_roots, kummer_iso, kummer_mul, kummer_pair,
                     serre_tate_action_check)
from .measures import (ActionMeasure, AmiceMeasure, DiracMeasure,
                       EisensteinMeasure, KLConstantTerm, LinearMeasure,
                       Measure, ProductMeasure, amice_transform,
                       convolution_nu, eisenstein_eval, eval_at_character,
                       eval_measure, kl_constant, measure_from_json,
                       nu_character_series, product_measure,
                       pushforward_halving, two_variable_L)
from .padic import (DualNumber, PadicContext, PadicInt, bernoulli,
                    bernoulli_polynomial, binomial_padic, reduce_rational)
from .qseries import (QExpansion, double_divisor_series, eisenstein_2G,
                      eisenstein_2G_scaled, eisenstein_2G_twisted,
                      lvalue_periodic, series_from_json, series_to_json,
                      sigma_table, theta, u_p, v_p)
from .zpfun import (Binomial, Character, ContinuousFn, LocallyConstant,
                    MahlerSeries, Polynomial, Product, Scaled, TwoVarFn,
                    ZeroExtendedUnits, constant_fn, evaluate, fn_from_json,
                    indicator, lc_level, mahler_coeffs, monomial, multiply,
                    poly_lc_terms, scale_argument)

__version__ = "0.1.0"

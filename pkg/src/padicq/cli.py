"""Batch command-line front end.

All output is JSON with a schema version; every numeric field carries its
precision next to the residue.  Exit codes: 0 success, 1 verification
failure, 2 domain error, 3 internal identity disagreement, 4 config error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .action import DEFAULT_M_MAX
from .errors import ConfigError, PadicqError
from .kummer import KummerBase, kummer_mul
from .measures import (convolution_nu, eval_measure, kl_constant,
                       measure_from_json, nu_character_series, two_variable_L)
from .padic import PadicContext, PadicInt, is_prime
from .qseries import (QExpansion, eisenstein_2G, eisenstein_2G_twisted,
                      series_to_json)
from .verify import reference_nu, run_suites
from .zpfun import (LocallyConstant, TwoVarFn, fn_from_json, lc_level,
                    monomial)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_DOMAIN = 2
EXIT_DISAGREE = 3
EXIT_CONFIG = 4


def default_a(p: int) -> int:
    """Smallest integer >= 2 that is a unit generating (Z/p^2)^x."""
    target = p * (p - 1)
    a = 2
    while True:
        if a % p != 0:
            order, x = 1, a % (p * p)
            while x != 1:
                x = (x * a) % (p * p)
                order += 1
            if order == target:
                return a
        a += 1


def load_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


class RunConfig:
    """Validated run parameters: p, N, M, m_max, a, threads."""

    def __init__(self, args):
        file_cfg = load_config_file(args.config) if args.config else {}

        def pick(name, flag_value, cast, default):
            if flag_value is not None:
                return cast(flag_value)
            if name in file_cfg:
                return cast(file_cfg[name])
            return default

        try:
            self.p = pick("p", args.p, int, 5)
            self.N = pick("N", args.N, int, 12)
            self.M = pick("M", args.M, int, 60)
            self.m_max = pick("mmax", args.mmax, int, DEFAULT_M_MAX)
            self.threads = pick("threads", args.threads, int, 1)
            a = pick("a", args.a, int, None)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not is_prime(self.p) or self.p < 3:
            raise ConfigError(f"p must be an odd prime, got {self.p}")
        if self.N < 1 or self.M < 1:
            raise ConfigError("N and M must be >= 1")
        if self.m_max < 0 or self.threads < 1:
            raise ConfigError("mmax must be >= 0 and threads >= 1")
        self.ctx = PadicContext(self.p, self.N, self.M)
        if a is None:
            a = default_a(self.p)
        if a % self.p == 0:
            raise ConfigError(f"a = {a} is not a unit mod {self.p}")
        self.a = PadicInt(self.ctx, a)


def par_map(fn, items, threads: int) -> list:
    """Order-preserving map, optionally across a thread pool."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def value_to_json(v, cfg: RunConfig) -> dict:
    if not isinstance(v, PadicInt):
        if hasattr(v, "is_constant") and v.is_constant():
            v = v.constant_part()
        else:
            raise ConfigError("cyclotomic-valued results are not serializable; "
                              "use scalar character tables")
    return {
        "schema": 1,
        "kind": "value",
        "p": cfg.p,
        "N": cfg.N,
        "residue": str(v.residue),
        "prec": v.prec,
    }


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")


def cmd_eisenstein(cfg: RunConfig, args) -> int:
    ctx = cfg.ctx
    if args.twist:
        f = fn_from_json(ctx, args.twist)
        if lc_level(f) is None:
            raise ConfigError("twist must be locally constant")
        g = eisenstein_2G_twisted(ctx, args.k, f)
        if cfg.threads > 1:
            # recompute coefficients in parallel chunks; the constant term
            # stays from the sequential path
            fvals = [f.evaluate(PadicInt(ctx, d)) for d in range(ctx.M + 1)]

            def coeff(n):
                acc = PadicInt(ctx, 0)
                for d in range(1, n + 1):
                    if n % d == 0:
                        acc = acc + fvals[d] * d ** (args.k - 1)
                return 2 * acc

            coeffs = [g.coefficient(0)] + par_map(coeff, range(1, ctx.M + 1),
                                                  cfg.threads)
            g = QExpansion(ctx, coeffs)
    else:
        g = eisenstein_2G(ctx, args.k)
    emit(series_to_json(g))
    return EXIT_OK


def cmd_moment(cfg: RunConfig, args) -> int:
    v = kl_constant(cfg.a, monomial(cfg.ctx, args.k - 1), cfg.m_max)
    emit(value_to_json(v, cfg))
    return EXIT_OK


def cmd_nu(cfg: RunConfig, args) -> int:
    ctx = cfg.ctx
    F = TwoVarFn.tensor(monomial(ctx, args.s), monomial(ctx, args.t))
    conv = convolution_nu(cfg.a, F, cfg.m_max)
    ref = reference_nu(ctx, cfg.a, args.s, args.t)
    agree = conv == ref
    emit({
        "schema": 1,
        "kind": "nu",
        "s": args.s,
        "t": args.t,
        "a": cfg.a.residue,
        "convolution": series_to_json(conv),
        "reference": series_to_json(ref),
        "agree": agree,
    })
    return EXIT_OK if agree else EXIT_DISAGREE


def _parse_character(cfg: RunConfig, text: str) -> LocallyConstant:
    ctx = cfg.ctx
    if text == "trivial":
        table = [1 if c % ctx.p != 0 else 0 for c in range(ctx.p)]
        return LocallyConstant(ctx, 1, table)
    obj = json.loads(text)
    if obj.get("kind") == "table":
        return LocallyConstant(ctx, int(obj["level"]),
                               [int(v) for v in obj["values"]])
    f = fn_from_json(ctx, obj)
    if lc_level(f) is None:
        raise ConfigError("character data must be locally constant")
    return f


def cmd_lvalue(cfg: RunConfig, args) -> int:
    chi1 = _parse_character(cfg, args.chi1)
    chi2 = _parse_character(cfg, args.chi2)
    value = two_variable_L(chi1, chi2, cfg.a, cfg.m_max)
    series = nu_character_series(chi1, chi2, cfg.a, cfg.m_max)
    ar = cfg.a.residue % (cfg.p ** max(lc_level(chi1), lc_level(chi2), 1))
    factor = PadicInt(cfg.ctx, 1) - \
        chi1.evaluate(PadicInt(cfg.ctx, ar)) * cfg.a * \
        chi2.evaluate(PadicInt(cfg.ctx, ar)).inverse()
    emit({
        "schema": 1,
        "kind": "lvalue",
        "value": value_to_json(value, cfg),
        "euler_factor": value_to_json(factor, cfg),
        "nu_series": series_to_json(series),
    })
    return EXIT_OK


def cmd_apply(cfg: RunConfig, args) -> int:
    mu = measure_from_json(cfg.ctx, args.measure)
    f = fn_from_json(cfg.ctx, args.fn)
    v = eval_measure(mu, f)
    if isinstance(v, QExpansion):
        emit(series_to_json(v))
    else:
        emit(value_to_json(v, cfg))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    start = time.monotonic()
    results = run_suites(args.suite, cfg.ctx, cfg.a, k=args.k)
    report = {
        "schema": 1,
        "kind": "report",
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "checks": r.checks,
                "failures": r.failures,
            }
            for r in results
        ],
        "elapsed_s": round(time.monotonic() - start, 3),
    }
    emit(report)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAIL


def cmd_kummer_dump(cfg: RunConfig, args) -> int:
    ctx = cfg.ctx
    pk = ctx.p ** args.k
    base = KummerBase.standard(ctx, args.k)
    if args.what == "cayley":
        els = base.elements()
        table = []
        for e1 in els:
            row = []
            for e2 in els:
                prod = kummer_mul(e1, e2)
                row.append([prod.a, prod.j])
            table.append(row)
    else:
        table = [
            [(i * b + j * a) % pk for b in range(pk) for j in range(pk)]
            for a in range(pk) for i in range(pk)
        ]
    emit({
        "schema": 1,
        "kind": f"kummer-{args.what}",
        "p": cfg.p,
        "k": args.k,
        "table": table,
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicq",
        description="Exact p-adic Eisenstein measures, q-expansion actions, "
                    "and Kummer torsion arithmetic.",
    )
    parser.add_argument("--p", type=int, help="odd prime (default 5)")
    parser.add_argument("--N", type=int, help="p-adic precision (default 12)")
    parser.add_argument("--M", type=int, help="q-adic precision (default 60)")
    parser.add_argument("--a", type=int,
                        help="regularizing unit (default: smallest generator "
                             "of (Z/p^2)^x)")
    parser.add_argument("--mmax", type=int,
                        help="deepest locally constant level (default 3)")
    parser.add_argument("--threads", type=int,
                        help="data-parallel coefficient loops (default 1)")
    parser.add_argument("--config", help="flat key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eis = sub.add_parser("eisenstein", help="compute 2G_k, optionally twisted")
    p_eis.add_argument("--k", type=int, required=True)
    p_eis.add_argument("--twist", help="JSON descriptor of a locally constant twist")

    p_mom = sub.add_parser("moment", help="regularized constant-term moment")
    p_mom.add_argument("--k", type=int, required=True)

    p_nu = sub.add_parser("nu", help="convolution measure moment, both paths")
    p_nu.add_argument("--s", type=int, required=True)
    p_nu.add_argument("--t", type=int, required=True)

    p_lv = sub.add_parser("lvalue", help="two-variable L-value data")
    p_lv.add_argument("--chi1", required=True,
                      help='"trivial" or JSON character data')
    p_lv.add_argument("--chi2", required=True,
                      help='"trivial" or JSON character data')

    p_ap = sub.add_parser("apply", help="evaluate a measure on a function")
    p_ap.add_argument("--measure", required=True,
                      help='JSON descriptor, e.g. {"kind":"dirac","c":1}')
    p_ap.add_argument("--fn", required=True,
                      help='JSON descriptor, e.g. {"kind":"monomial","degree":2}')

    p_ver = sub.add_parser("verify", help="run an invariant suite")
    p_ver.add_argument("suite",
                       choices=["moments", "congruences", "action", "amice",
                                "kummer", "nu", "all"])
    p_ver.add_argument("--k", type=int, default=1,
                       help="torsion level for the kummer suite")

    p_kd = sub.add_parser("kummer-dump", help="dump Cayley or pairing tables")
    p_kd.add_argument("--k", type=int, default=1)
    p_kd.add_argument("--what", choices=["cayley", "pairing"], default="cayley")

    return parser


COMMANDS = {
    "eisenstein": cmd_eisenstein,
    "moment": cmd_moment,
    "nu": cmd_nu,
    "lvalue": cmd_lvalue,
    "apply": cmd_apply,
    "verify": cmd_verify,
    "kummer-dump": cmd_kummer_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        _emit_error(EXIT_CONFIG, ConfigError("invalid command line"))
        return EXIT_CONFIG
    try:
        cfg = RunConfig(args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        _emit_error(EXIT_CONFIG, exc)
        return EXIT_CONFIG
    except PadicqError as exc:
        _emit_error(EXIT_DOMAIN, exc)
        return EXIT_DOMAIN
    except (ValueError, TypeError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        _emit_error(EXIT_CONFIG, exc)
        return EXIT_CONFIG


def _emit_error(code: int, exc: Exception) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": str(exc)},
                                sort_keys=True))
    sys.stderr.write("\n")


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``qhecke {expand,verify,suite,enumerate}``.

Exit status is 0 on success, 1 when a verification fails (the first
mismatch is printed), and 2 for usage errors: unknown names, parameters
outside an identity's domain, or limits exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import harness
from .blocks import poch_infinite, theta
from .enumerators import DEFAULT_LIMIT, FAMILIES as ENUM_FAMILIES, LimitExceeded, enumerate_family
from .families import FAMILIES as SHAPES, DomainError
from .genfun import GF_IDS, gf, gf_genU
from .hecke import appell_double, hecke_f
from .series import Monomial, render_text, to_jsonable

EXPANDABLE = GF_IDS + ("genU", "theta", "poch", "heckef") + tuple(SHAPES)


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    name: str | None = None
    order: int | None = None
    t: int | None = None
    m: int | None = None
    format: str = "text"
    jobs: int | None = None
    lattice: int = 1
    nmax: int | None = None
    limit: int = DEFAULT_LIMIT
    timings: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.order is not None and self.order < 0:
            raise UsageError("--order must be nonnegative")
        if self.jobs is not None and self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.lattice not in (1, 2):
            raise UsageError("--lattice must be 1 or 2")


_FACTOR = re.compile(r"([xq])(?:\^\(?(-?\d+(?:/\d+)?)\)?)?")


def parse_monomial(text: str, den: int = 1) -> Monomial:
    """Parse ``-x^-1*q^3`` style monomials; q-exponents may be halves when ``den == 2``."""
    s = text.replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    elif s.startswith("+"):
        s = s[1:]
    xe, qe = 0, Fraction(0)
    if s not in ("", "1"):
        for part in s.split("*"):
            mt = _FACTOR.fullmatch(part)
            if not mt:
                raise UsageError(f"cannot parse monomial {text!r}")
            e = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
            if mt.group(1) == "x":
                if e.denominator != 1:
                    raise UsageError(f"x-exponents must be integers in {text!r}")
                xe += int(e)
            else:
                qe += e
    scaled = qe * den
    if scaled.denominator != 1:
        raise UsageError(f"q-exponent {qe} is not on the lattice (1/{den})Z")
    return Monomial(sign, xe, int(scaled))


def _need(cfg: CliConfig, *names):
    for n in names:
        v = getattr(cfg, n, None) if n in ("t", "m") else cfg.extra.get(n)
        if v is None:
            raise UsageError(f"{cfg.name} needs --{n}")


def expand_series(cfg: CliConfig):
    N = 10 if cfg.order is None else cfg.order
    name, den, ex = cfg.name, cfg.lattice, cfg.extra
    if name in GF_IDS:
        return gf(name, N)
    if name == "genU":
        _need(cfg, "t", "m")
        return gf_genU(cfg.t, cfg.m, N)
    if name == "theta":
        return theta(parse_monomial(ex.get("arg") or "x", den), int(ex.get("modulus") or 1), N, den=den)
    if name == "poch":
        return poch_infinite(parse_monomial(ex.get("arg") or "q", den), int(ex.get("modulus") or 1), N, den)
    if name == "heckef":
        _need(cfg, "a", "b", "c", "x", "y")
        p = (int(ex["a"]), int(ex["b"]), int(ex["c"]))
        return hecke_f(p, parse_monomial(ex["x"], den), parse_monomial(ex["y"], den), int(ex.get("modulus") or 1), N, den)
    if name in SHAPES:
        _need(cfg, "t", "m")
        return appell_double(SHAPES[name](cfg.t, cfg.m), N)
    raise UsageError(f"unknown series {name!r}; expected one of {', '.join(EXPANDABLE)}")


def cmd_expand(cfg: CliConfig, out) -> int:
    s = expand_series(cfg)
    N = 10 if cfg.order is None else cfg.order
    if cfg.format == "json":
        out.write(json.dumps(to_jsonable(s.truncate(N))) + "\n")
    elif cfg.format == "text":
        body = render_text(s, N)
        out.write((body if body else "0") + "\n")
    else:
        raise UsageError("expand supports --format text or json")
    return 0


def _int_or_str(v):
    try:
        return int(v)
    except ValueError:
        return v


def case_from_config(cfg: CliConfig) -> harness.IdentityCase:
    params = {}
    if cfg.t is not None:
        params["t"] = cfg.t
    if cfg.m is not None:
        params["m"] = cfg.m
    ex = dict(cfg.extra)
    for key in ("a", "b", "c"):
        if ex.get(key) is not None:
            params[key] = int(ex.pop(key))
    for key, target in (("x", "X"), ("y", "Y")):
        if ex.get(key) is not None:
            mono = parse_monomial(ex.pop(key))
            params[target] = (mono.sign, mono.xexp, mono.qexp)
    if ex.get("family") is not None:
        params["family"] = ex.pop("family")
    for kv in ex.get("param") or []:
        if "=" not in kv:
            raise UsageError(f"--param expects key=value, got {kv!r}")
        k, v = kv.split("=", 1)
        params[k] = _int_or_str(v)
    if cfg.lattice != 1 and cfg.name == "mz_decomp":
        params["den"] = cfg.lattice
    try:
        return harness.make_case(cfg.name, cfg.order, **params)
    except KeyError:
        raise UsageError(f"unknown identity {cfg.name!r}; expected one of {', '.join(harness.RECIPES)}") from None
    except DomainError as e:
        raise UsageError(str(e)) from None


def cmd_verify(cfg: CliConfig, out) -> int:
    case = case_from_config(cfg)
    try:
        rep = harness.verify(case)
    except (TypeError, KeyError, DomainError) as e:
        # missing or unknown parameters surface here
        raise UsageError(f"bad parameters for {case.recipe}: {e}") from None
    if cfg.format == "json":
        out.write(json.dumps(rep.to_dict(cfg.timings)) + "\n")
    else:
        out.write(rep.line(cfg.timings) + "\n")
    return 0 if rep.passed else 1


def cmd_suite(cfg: CliConfig, out) -> int:
    name = cfg.name or "all"
    if name not in harness.GROUPS + ("all",):
        raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(harness.GROUPS + ('all',))}")
    rep = harness.run_suite(name, cfg.jobs, cfg.order)
    out.write((rep.to_json(cfg.timings) if cfg.format == "json" else rep.to_text(cfg.timings)) + "\n")
    return 0 if rep.passed else 1


def cmd_enumerate(cfg: CliConfig, out) -> int:
    if cfg.name not in ENUM_FAMILIES:
        raise UsageError(f"unknown family {cfg.name!r}; expected one of {', '.join(ENUM_FAMILIES)}")
    nmax = 10 if cfg.nmax is None else cfg.nmax
    try:
        tab = enumerate_family(cfg.name, nmax, cfg.limit)
    except (LimitExceeded, ValueError) as e:
        raise UsageError(str(e)) from None
    if cfg.format == "csv":
        out.write(tab.to_csv())
    elif cfg.format == "json":
        out.write(tab.to_json() + "\n")
    else:
        out.write(tab.to_text() + "\n")
    return 0


COMMANDS = {"expand": cmd_expand, "verify": cmd_verify, "suite": cmd_suite, "enumerate": cmd_enumerate}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qhecke", description="Exact q-series expansion and identity verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json")):
        sp.add_argument("name", nargs="?", help="series, identity, suite or family name")
        sp.add_argument("--identity", help="alias for the positional name")
        sp.add_argument("--family", help="family name (positional alias, or the family parameter of a case)")
        sp.add_argument("--order", type=int)
        sp.add_argument("--t", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--jobs", type=int)
        sp.add_argument("--lattice", type=int, default=1)
        sp.add_argument("--nmax", type=int)
        sp.add_argument("--timings", action="store_true", help="include wall times (output is then not reproducible)")

    sp = sub.add_parser("expand", help="print a truncated series")
    common(sp)
    sp.add_argument("--arg", help="monomial argument of theta or poch, e.g. x, -q^2, x^-1*q")
    sp.add_argument("--modulus", type=int, help="theta/poch/heckef nome power M in q^M (default 1)")
    for k in ("a", "b", "c"):
        sp.add_argument(f"--{k}", type=int)
    sp.add_argument("--x")
    sp.add_argument("--y")

    sp = sub.add_parser("verify", help="verify one registered identity")
    common(sp)
    for k in ("a", "b", "c"):
        sp.add_argument(f"--{k}", type=int)
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--param", action="append", help="extra key=value parameter, e.g. k=1 or n=3")

    sp = sub.add_parser("suite", help="run a group of identities")
    common(sp)

    sp = sub.add_parser("enumerate", help="brute-force rank tables")
    common(sp, ("text", "json", "csv"))
    sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    return p


def config_from_args(argv) -> CliConfig:
    ns = build_parser().parse_args(argv)
    name = ns.name or ns.identity
    extra = {k: getattr(ns, k, None) for k in ("arg", "modulus", "a", "b", "c", "x", "y", "param")}
    if name is None:
        name = ns.family
    elif ns.family is not None:
        extra["family"] = ns.family
    cfg = CliConfig(ns.command, name, ns.order, ns.t, ns.m, ns.format, ns.jobs, ns.lattice, ns.nmax,
                    getattr(ns, "limit", DEFAULT_LIMIT), ns.timings, extra)
    if cfg.command in ("expand", "verify", "enumerate") and not cfg.name:
        raise UsageError(f"{cfg.command} needs a name")
    cfg.validate()
    return cfg


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as e:
        err.write(f"qhecke: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Identity registry and verification engine.

Every registered identity is a recipe ``recipe(N, **params) -> (lhs, rhs)``
from :mod:`qhecke.identities` (or the enumeration check below).  A case pins
the recipe, its parameters and a target order; :func:`verify` builds both
sides and compares them coefficient by coefficient.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import identities as ids
from .enumerators import enumerate_family
from .families import DomainError, check_g, check_h, check_k, check_l, check_p
from .genfun import gf
from .series import QSeries, TruncationError, eq_to_order

GROUPS = ("enumeration", "base", "theorems", "functional", "decomposition", "background")
JOBS_ENV = "QHECKE_JOBS"


def enumeration(N, family):
    """Brute-force rank table, read back as a series, against the generating function."""
    tab = enumerate_family(family, N, limit=max(N, 20))
    lhs = QSeries.from_terms(((n, m, c) for n, m, c in tab.rows()), N)
    return lhs, gf(family, N)


RECIPES = {
    "enumeration": enumeration,
    "base1": ids.base1, "base2": ids.base2, "base3": ids.base3, "base4": ids.base4, "base5": ids.base5,
    "defs": ids.defs,
    "end1": ids.end1, "end2": ids.end2, "end4": ids.end4, "lastone": ids.lastone, "odd_hat": ids.odd_hat,
    "mf1": ids.mf1, "mf2": ids.mf2, "mf3": ids.mf3, "mf4": ids.mf4, "odd_mf": ids.odd_mf,
    "seconddecompose": ids.seconddecompose, "split": ids.split,
    "r1": ids.r1, "r2": ids.r2, "r3": ids.r3, "r4": ids.r4,
    "r7": ids.r7, "r8": ids.r8, "r9": ids.r9, "r10": ids.r10,
    "false_decomp": ids.false_decomp, "mz_decomp": ids.mz_decomp, "mz_collapse": ids.mz_collapse,
    "umixed": ids.umixed,
    "jtp": ids.jtp, "theta1": ids.theta1, "theta2": ids.theta2, "theta3": ids.theta3,
    "prop": ids.prop_check,
}


def _tm(check):
    def run(params):
        if "t" not in params or "m" not in params:
            raise DomainError("this identity needs both t and m")
        check(params["t"], params["m"])
    return run


def _umixed_domain(params):
    t, m = params.get("t"), params.get("m")
    if t is None or m is None or not (t >= 2 and 1 <= m <= t - 1):
        raise DomainError(f"umixed needs t >= 2 and 1 <= m <= t-1, got t={t}, m={m}")


DOMAINS = {name: _tm(chk) for names, chk in [
    (("end1", "mf1", "r1", "r2"), check_g),
    (("end2", "mf2", "r3", "r4", "seconddecompose"), check_h),
    (("end4", "mf3", "r7", "r8"), check_k),
    (("lastone", "mf4", "r9", "r10", "split"), check_l),
    (("odd_hat", "odd_mf"), check_p),
] for name in names}
DOMAINS["umixed"] = _umixed_domain


def _clearing(recipe: str) -> str:
    return ids.CLEARING.get(recipe, "none")


@dataclass(frozen=True)
class IdentityCase:
    id: str
    recipe: str
    params: tuple = ()
    order: int = 30
    group: str = ""
    clearing: str = "none"
    lattice: int = 1

    @property
    def kwargs(self) -> dict:
        return dict(self.params)


@dataclass
class VerificationReport:
    case_id: str
    passed: bool
    order: int
    witness: tuple | None = None
    wall: float = 0.0
    error: str | None = None

    def to_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        if self.witness is not None:
            d["witness"] = [str(v) for v in self.witness]
        if timings:
            d["wall"] = round(self.wall, 4)
        else:
            del d["wall"]
        return d

    def line(self, timings: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.case_id} to q^{self.order}"
        if timings:
            out += f" ({self.wall:.2f}s)"
        if self.witness is not None:
            qe, xe, va, vb = self.witness
            out += f"  first mismatch at q^{qe} x^{xe}: lhs={va} rhs={vb}"
        if self.error:
            out += f"  error: {self.error}"
        return out


@dataclass
class SuiteReport:
    name: str
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self, timings: bool = False) -> str:
        return json.dumps({"suite": self.name, "passed": self.passed, "cases": len(self.reports),
                           "failures": sum(not r.passed for r in self.reports),
                           "reports": [r.to_dict(timings) for r in self.reports]}, indent=2)

    def to_text(self, timings: bool = False) -> str:
        lines = [r.line(timings) for r in self.reports]
        nfail = sum(not r.passed for r in self.reports)
        lines.append(f"suite {self.name}: {len(self.reports) - nfail}/{len(self.reports)} passed")
        return "\n".join(lines)


def case_id(recipe: str, params: dict) -> str:
    if not params:
        return recipe
    return f"{recipe}[" + ",".join(f"{k}={_fmt(v)}" for k, v in params.items()) + "]"


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(e) for e in v) + ")"
    return str(v)


def make_case(recipe: str, order: int | None = None, group: str = "", **params) -> IdentityCase:
    """Register-time validation: unknown names and out-of-domain parameters raise here."""
    if recipe not in RECIPES:
        raise KeyError(f"unknown identity {recipe!r}")
    if recipe in DOMAINS:
        DOMAINS[recipe](params)
    if order is None:
        order = default_order(recipe, params)
    if order < 0:
        raise ValueError("order must be nonnegative")
    lattice = params.get("den", 2 if recipe == "mz_collapse" else 1)
    return IdentityCase(case_id(recipe, params), recipe, tuple(params.items()), order, group,
                        _clearing(recipe), lattice)


def default_order(recipe: str, params: dict) -> int:
    if recipe == "enumeration":
        return 14
    if recipe.startswith("base") or recipe == "defs":
        return 40
    if recipe in ("mz_decomp", "mz_collapse"):
        return 20
    if recipe == "umixed" or recipe.startswith("r"):
        return 25
    if recipe == "jtp":
        return 200
    if recipe in ("theta1", "theta2"):
        return 60
    if recipe == "theta3":
        return 50
    if recipe == "prop":
        return 0
    return 20 if params.get("t", 1) >= 3 else 30


# registry ---------------------------------------------------------------------------------

def _grid(name: str):
    if name == "g":
        return [(1, 1), (2, 0), (2, 2), (3, 1), (3, 3)]
    if name in ("h", "p"):
        return [(t, m) for t in (1, 2) for m in range(1 - t, t + 1)]
    if name == "k":
        return [(t, m) for t in (1, 2) for m in (0, 1, 2)]
    if name == "l":
        return [(t, m) for t in (1, 2) for m in range(0, 3 * t)]
    if name == "g2":
        return [(t, m) for t in (1, 2) for m in range(-t, 3 * t - 1) if (t - m) % 2 == 0]
    raise ValueError(name)


def _cases(group: str) -> list[IdentityCase]:
    out = []

    def add(recipe, **params):
        out.append(make_case(recipe, group=group, **params))

    if group == "enumeration":
        for fam in ("strongU", "unimodal", "doublePeak", "vScript", "vDurfee", "oddUnimodal"):
            add("enumeration", family=fam)
    elif group == "base":
        for k in range(1, 6):
            add(f"base{k}")
        for fam in ("U", "W", "Vscript", "Vscript_diff", "V", "O"):
            add("defs", family=fam)
    elif group == "theorems":
        for hat, full, grid in (("end1", "mf1", "g"), ("end2", "mf2", "h"), ("end4", "mf3", "k"),
                                ("lastone", "mf4", "l"), ("odd_hat", "odd_mf", "p")):
            for t, m in _grid(grid):
                add(hat, t=t, m=m)
                add(full, t=t, m=m)
        for t, m in _grid("h"):
            add("seconddecompose", t=t, m=m)
        for t, m in _grid("l"):
            add("split", t=t, m=m)
    elif group == "functional":
        for names, grid in ((("r1", "r2"), "g2"), (("r3", "r4"), "h"), (("r7", "r8"), "k"), (("r9", "r10"), "l")):
            for t, m in _grid(grid):
                for r in names:
                    add(r, t=t, m=m)
    elif group == "decomposition":
        add("false_decomp", a=1, b=1, c=2, X=(1, 1, 0), Y=(1, 0, 1))
        for k in range(3):
            add("false_decomp", a=1, b=3, c=12, X=(1, -1, k + 1), Y=(-1, 0, 4 * k + 8))
        add("mz_decomp", a=2, b=3, c=2, X=(1, 0, 1), Y=(1, 0, 2))
        for k in range(3):
            add("mz_collapse", k=k)
        add("umixed", t=2, m=1)
    elif group == "background":
        for z, M in (((1, 1, 0), 1), ((-1, 1, 0), 1), ((1, 1, 1), 1), ((1, 1, 0), 2)):
            add("jtp", z=z, M=M)
        for n in range(-3, 4):
            add("theta1", n=n)
        for n in range(0, 6):
            add("theta2", n=n)
        for n in range(-2, 3):
            add("theta3", n=n)
        add("prop", which="prop0", t=1)
        for which in ("prop1", "prop2", "prop3"):
            for t in (1, 2, 3):
                add("prop", which=which, t=t)
    else:
        raise KeyError(f"unknown suite {group!r}; expected one of {GROUPS + ('all',)}")
    return out


def registry(name: str = "all") -> list[IdentityCase]:
    if name == "all":
        return [c for g in GROUPS for c in _cases(g)]
    return _cases(name)


# verification -----------------------------------------------------------------------------

def _witness(w, den: int):
    qe, xe, va, vb = w
    return (Fraction(qe, den) if den != 1 else qe, xe, va, vb)


def verify(case: IdentityCase, order: int | None = None) -> VerificationReport:
    N = case.order if order is None else order
    t0 = time.perf_counter()
    try:
        lhs, rhs = RECIPES[case.recipe](N, **case.kwargs)
        ok, w = eq_to_order(lhs, rhs, N)
    except TruncationError as e:
        return VerificationReport(case.id, False, N, None, time.perf_counter() - t0, f"order budget infeasible: {e}")
    wall = time.perf_counter() - t0
    return VerificationReport(case.id, ok, N, None if ok else _witness(w, lhs.den), wall)


def _verify_one(args):
    case, order = args
    return verify(case, order)


def resolve_jobs(jobs: int | None = None) -> int:
    """Explicit ``jobs`` wins, then the environment variable, then 1."""
    if jobs is None:
        env = os.environ.get(JOBS_ENV, "").strip()
        jobs = int(env) if env else 1
    if jobs < 1:
        raise ValueError("parallelism must be at least 1")
    return jobs


def run_cases(cases, jobs: int | None = None, order: int | None = None) -> list[VerificationReport]:
    jobs = resolve_jobs(jobs)
    work = [(c, order) for c in cases]
    if jobs == 1 or len(work) < 2:
        return [_verify_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_one, work))


def run_suite(name: str = "all", jobs: int | None = None, order: int | None = None) -> SuiteReport:
    """Run a registered group; reports come back in registry order regardless of ``jobs``."""
    return SuiteReport(name, run_cases(registry(name), jobs, order))

"""Command-line driver.  Every command prints one JSON report.

Exit codes: 0 when every checked property holds, 1 on a property violation,
2 on configuration errors, 3 when a computation is inconclusive, refused or
not stabilized within its budget.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .algebra import KINDS, SRAlgebra
from .coxeter import build_root_system
from .dunkl import calibrate, oracle_check, random_word
from .errors import Inconclusive, NotStabilized, Refused, SRAError
from .functionals import ANNIHILATOR, RECURSIVE, evaluate
from .parsing import parse_scalar_expression
from .radicals import combine, find_degenerate_functionals, gram_matrix, ideal_check, kernel, theorem3_compare
from .reports import (
    SCHEMA,
    Cache,
    cached_trace_space,
    dumps,
    element_text,
    functional_json,
    monomial_text,
    space_json,
    subspace_json,
)
from .scalars import NumberField
from .sl2 import Sl2Action, check_sl2_relations, spin_decompose


class ConfigError(SRAError):
    pass


@dataclass
class ExperimentConfig:
    family: str
    n: int
    eta: list  # scalar expressions, one per reflection class
    kinds: list = dc_field(default_factory=lambda: list(KINDS))
    D: int | None = None
    d: int = 1
    probe: int | None = None
    margin_max: int = 6
    strategy: str = RECURSIVE
    seed: int = 0
    cache: str | None = None

    def probes(self) -> list:
        top = self.probe if self.probe is not None else self.d + 4
        if top < self.d:
            raise ConfigError(f"probe degree {top} below row degree {self.d}")
        return list(range(self.d, top + 1))

    def budget(self) -> int:
        need = self.d + self.probes()[-1]
        D = self.D if self.D is not None else need
        if D < need:
            raise ConfigError(f"functional degree D={D} below d + probe = {need}")
        return D

    def as_dict(self) -> dict:
        return {
            "group": f"{self.family}:{self.n}",
            "eta": list(self.eta),
            "kinds": list(self.kinds),
            "D": self.D,
            "d": self.d,
            "probe": self.probe,
            "margin_max": self.margin_max,
            "strategy": self.strategy,
            "seed": self.seed,
        }


def parse_group(text: str):
    try:
        family, param = text.split(":")
        return family, int(param)
    except ValueError:
        raise ConfigError(f"group must look like I2:3 or A:1, got {text!r}") from None


def build_algebra(cfg: ExperimentConfig) -> SRAlgebra:
    field = NumberField(cfg.n) if cfg.family == "I2" else NumberField()
    etas = [parse_scalar_expression(e, field) for e in cfg.eta]
    return SRAlgebra(build_root_system(cfg.family, cfg.n, etas))


def _envelope(command: str, cfg: ExperimentConfig, H: SRAlgebra, result: dict) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "seed": cfg.seed,
        "config": cfg.as_dict(),
        "system": H.rs.summary(),
        "result": result,
    }


def _kinds(value: str) -> list:
    if value == "both":
        return list(KINDS)
    if value not in KINDS:
        raise ConfigError(f"kind must be trace, supertrace or both, got {value!r}")
    return [value]


def _space(H, cfg, kind, D, strategy=None):
    return cached_trace_space(H, kind, D, strategy or cfg.strategy, cfg.margin_max, Cache.from_env(cfg.cache))


def _pick(space, ray: str | None, index: int):
    fns = space.functionals
    if not fns:
        raise Refused(f"no nonzero {space.kind} on F_{space.degree}")
    if ray is None:
        if not 0 <= index < len(fns):
            raise ConfigError(f"functional index {index} out of range (dimension {len(fns)})")
        return fns[index]
    field = fns[0].algebra.field
    coeffs = [parse_scalar_expression(x, field) for x in ray.split(",")]
    if len(coeffs) != len(fns):
        raise ConfigError(f"ray needs {len(fns)} coordinates")
    return combine(fns, coeffs)


def kernel_json(H, rep) -> dict:
    out = {
        "functional": rep.functional,
        "kind": rep.kind,
        "d": rep.d,
        "probes": rep.probes,
        "dims": rep.dims,
        "stabilized": rep.stabilized,
        "kernel": subspace_json(H, rep.kernel),
    }
    if rep.ideal is not None:
        out["ideal_check"] = {
            "d": rep.ideal.d,
            "probe": rep.ideal.probe,
            "passed": rep.ideal.passed,
            "products": rep.ideal.products,
            "failures": [list(f) for f in rep.ideal.failures],
        }
    return out


# -- commands --------------------------------------------------------------------

def cmd_info(cfg, H, args):
    dims = {str(d): len(H.basis(d)) for d in range(0, cfg.d + 1)}
    return {"field": {"n": H.field.n, "degree": H.field.degree, "minpoly": [int(c) for c in H.field.minpoly]}, "basis_sizes": dims}, True


def cmd_traces(cfg, H, args):
    D = cfg.D if cfg.D is not None else 6
    strategies = [RECURSIVE, ANNIHILATOR] if args.strategy == "both" else [args.strategy]
    out, ok = {}, True
    for kind in cfg.kinds:
        spaces = [_space(H, cfg, kind, D, s) for s in strategies]
        entry = {"dim": spaces[0].dim, "spaces": [space_json(s) for s in spaces]}
        if len(spaces) == 2:
            entry["strategies_agree"] = spaces[0].subspace == spaces[1].subspace
            ok = ok and entry["strategies_agree"]
        out[kind] = entry
    return out, ok


def cmd_gram(cfg, H, args):
    kind = cfg.kinds[0]
    top = cfg.probes()[-1]
    t = _pick(_space(H, cfg, kind, cfg.budget()), args.ray, args.index)
    blocks = gram_matrix(t, cfg.d, top)
    res = {"functional": functional_json(t), "d": cfg.d, "probe": top, "blocks": []}
    for w in sorted(blocks):
        b = blocks[w]
        res["blocks"].append(
            {
                "weight": w,
                "rows": len(b.rows),
                "cols": len(b.cols),
                "entries": [
                    [monomial_text(H, b.rows[i]), monomial_text(H, b.cols[j]), str(v)]
                    for (i, j), v in sorted(b.entries.items())
                ],
            }
        )
    return res, True


def cmd_kernel(cfg, H, args):
    kind = cfg.kinds[0]
    D = cfg.budget()
    t = _pick(_space(H, cfg, kind, D), args.ray, args.index)
    rep = kernel(t, cfg.d, cfg.probes())
    ok = True
    if args.ideal and rep.stabilized and rep.dim:
        probe = min(cfg.probes()[-1], D - cfg.d - 1)
        rep.ideal = ideal_check(t, rep.kernel, cfg.d, probe)
        ok = rep.ideal.passed
    return {"functional": functional_json(t), "report": kernel_json(H, rep)}, ok


def _scan(cfg, H, kind, D):
    space = _space(H, cfg, kind, D)
    return space, find_degenerate_functionals(space.functionals, cfg.d, cfg.probes(), cfg.seed)


def cmd_degenerate_scan(cfg, H, args):
    D = cfg.budget()
    out = {}
    for kind in cfg.kinds:
        space, scan = _scan(cfg, H, kind, D)
        out[kind] = {
            "space_dim": space.dim,
            "d": scan.d,
            "probes": scan.probes,
            "pencil_gcd": {str(w): g for w, g in scan.pencil.items()},
            "candidates": [[str(c) for c in cand] for cand in scan.candidates],
            "degenerate_rays": [
                {"coefficients": [str(c) for c in r.coefficients], "report": kernel_json(H, r.report)}
                for r in scan.rays
            ],
        }
    return out, True


def cmd_singlet(cfg, H, args):
    dec = spin_decompose(H, cfg.d)
    res = {"decomposition": dec.summary(), "singlets": subspace_json(H, dec.singlets)}
    if args.element:
        f = H.parse(args.element)
        res["element"] = element_text(H, f)
        res["projection"] = element_text(H, dec.project(f))
    return res, True


def cmd_theorem3(cfg, H, args):
    D = cfg.budget()
    reports = {}
    for kind in KINDS:
        _, scan = _scan(cfg, H, kind, D)
        if not scan.rays:
            raise Refused(f"no degenerate {kind} ray at d={cfg.d}, probes {scan.probes}")
        reports[kind] = scan.rays[0]
    dec = spin_decompose(H, cfg.d)
    rep = theorem3_compare(reports["trace"].report, reports["supertrace"].report, dec, H.field)
    res = {
        "functionals": [functional_json(reports[k].functional) for k in KINDS],
        "d": rep.d,
        "probes": rep.probes,
        "kernels": [kernel_json(H, reports[k].report) for k in KINDS],
        "singlet_parts": [subspace_json(H, S) for S in rep.singlet_parts],
        "singlet_equal": rep.singlet_equal,
        "full_equal": rep.full_equal,
        "consistent": rep.consistent,
    }
    return res, rep.consistent


def cmd_selftest(cfg, H, args):
    rng = random.Random(cfg.seed)
    res, ok = {}, True
    action = Sl2Action(H)
    sl2 = check_sl2_relations(H, min(cfg.d, 3), action)
    res["sl2_relations"] = {"degree": sl2.degree, "passed": sl2.passed, "checks": sl2.checks, "witness": sl2.witness}
    ok = ok and sl2.passed
    rep = calibrate(H)
    fails = []
    for _ in range(args.words):
        word = random_word(H, rng, 5)
        r = oracle_check(H, word, 3, rep)
        if not r.passed:
            fails.append(repr(word))
    res["oracle"] = {"words": args.words, "failures": fails}
    ok = ok and not fails
    dec = spin_decompose(H, min(cfg.d, 4), action)
    basis = H.basis(dec.degree)
    bad = 0
    checked = 0
    for kind in KINDS:
        for t in _space(H, cfg, kind, dec.degree).functionals:
            for _ in range(10):
                f = H.element({m: H.field.scalar(rng.randint(-5, 5)) for m in rng.sample(basis, min(6, len(basis)))})
                checked += 1
                if evaluate(t, f) != evaluate(t, dec.project(f)):
                    bad += 1
    res["singlet_reduction"] = {"checked": checked, "failures": bad}
    ok = ok and not bad
    return res, ok


COMMANDS = {
    "info": cmd_info,
    "traces": cmd_traces,
    "gram": cmd_gram,
    "kernel": cmd_kernel,
    "degenerate-scan": cmd_degenerate_scan,
    "singlet": cmd_singlet,
    "theorem3": cmd_theorem3,
    "selftest": cmd_selftest,
}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sralgebra", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--group", default="I2:3", help="I2:n or A:rank")
        s.add_argument("--eta", default="1/3", help="comma-separated, one value per reflection class")
        s.add_argument("--kind", default="both", help="trace, supertrace or both")
        s.add_argument("--D", type=int, default=None, help="degree of the functionals")
        s.add_argument("--d", type=int, default=1, help="row degree for Gram and kernels")
        s.add_argument("--probe", type=int, default=None, help="largest probe degree (default d+4)")
        s.add_argument("--margin-max", type=int, default=6)
        s.add_argument("--strategy", default=RECURSIVE, choices=[RECURSIVE, ANNIHILATOR] + (["both"] if name == "traces" else []))
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--cache", default=None, help="cache directory (or set SRALGEBRA_CACHE)")
        s.add_argument("--out", default=None, help="write the report here instead of stdout")
        if name in ("gram", "kernel"):
            s.add_argument("--index", type=int, default=0, help="basis functional to use")
            s.add_argument("--ray", default=None, help="comma-separated coordinates in the functional basis")
        if name == "kernel":
            s.add_argument("--ideal", action="store_true", help="also run the ideal check on a stable kernel")
        if name == "singlet":
            s.add_argument("--element", default=None, help="element expression to project")
        if name == "selftest":
            s.add_argument("--words", type=int, default=50)
    return p


def run(argv=None) -> tuple:
    """Returns (exit code, report text)."""
    return _run(make_parser().parse_args(argv))


def _run(args) -> tuple:
    try:
        family, n = parse_group(args.group)
        cfg = ExperimentConfig(
            family=family,
            n=n,
            eta=[e.strip() for e in args.eta.split(",")],
            kinds=_kinds(args.kind),
            D=args.D,
            d=args.d,
            probe=args.probe,
            margin_max=args.margin_max,
            strategy=args.strategy if args.strategy != "both" else RECURSIVE,
            seed=args.seed,
            cache=args.cache,
        )
        if cfg.d < 0 or (cfg.D is not None and cfg.D < 0):
            raise ConfigError("degrees must be non-negative")
        cfg.probes()
        H = build_algebra(cfg)
    except (ConfigError, SRAError, ValueError) as exc:
        return 2, dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)})
    try:
        result, ok = COMMANDS[args.command](cfg, H, args)
    except ConfigError as exc:
        return 2, dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)})
    except (Inconclusive, NotStabilized, Refused) as exc:
        report = _envelope(args.command, cfg, H, {"status": type(exc).__name__, "message": str(exc)})
        return 3, dumps(report)
    report = _envelope(args.command, cfg, H, result)
    report["passed"] = ok
    return (0 if ok else 1), dumps(report)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    code, text = _run(args)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

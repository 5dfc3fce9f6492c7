"""Command-line front end.

Polynomials are comma-separated ascending coefficients: ``--poly 1,0,1`` is
x^2 + 1. Exit status is 0 on success, 1 on a domain error (or a failed
verification), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import census, density, frac_parts, reports
from .arith import lambda_of
from .errors import DomainError
from .floor_sum import decompose, floor_weighted_sum, floor_weighted_sum_bruteforce
from .poly import (IntPolynomial, fixed_divisor_factorial, fixed_divisor_truncated,
                   parse_poly, to_factorial_basis)

FORMATS = ("json", "csv", "plain")
# Keys that belong to RunConfig itself rather than to the subcommand.
_META = ("command", "format", "output", "seed")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    options: Dict[str, object] = field(default_factory=dict)
    fmt: str = "json"
    output: Optional[str] = None
    seed: Optional[int] = None

    def to_argv(self) -> List[str]:
        """A command line that parses back to an equal config."""
        argv = [self.subcommand]
        for key, value in sorted(self.options.items()):
            if value is None or value is False:
                continue
            flag = "--" + key.replace("_", "-")
            if value is True:
                argv.append(flag)
            elif isinstance(value, list):
                argv += [flag, ",".join(str(v) for v in value)]
            else:
                argv += [flag, str(value)]
        argv += ["--format", self.fmt]
        if self.output:
            argv += ["--output", self.output]
        if self.seed is not None:
            argv += ["--seed", str(self.seed)]
        return argv


def _x_list(text: str) -> List[int]:
    try:
        return [int(float(t)) if "e" in t.lower() else int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad x list {text!r}") from None


def _int(text: str) -> int:
    """Integer flag that also accepts forms like 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; every operation is deterministic")

    parser = argparse.ArgumentParser(prog="fracprimes",
                                     description="Primes in fractional sequences [x/n].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", parents=[common], help="density-constant partial sums")
    p.add_argument("--poly", required=True)
    p.add_argument("--poly2", default=None, help="second polynomial (pair series)")
    p.add_argument("--terms", type=_int, required=True)
    p.add_argument("--tail", action="store_true", help="attach the tail bound")
    p.add_argument("--precision", default="double", help="double or extended:<digits>")
    p.add_argument("--weight", choices=density.WEIGHTS, default="lambda")
    p.add_argument("--count-by", choices=density.COUNTS, default="index")

    p = sub.add_parser("constants", parents=[common], help="truncated Euler products")
    p.add_argument("--kind", required=True, help="twin, hl2 or polignac:<m>")
    p.add_argument("--prime-limit", type=_int, required=True)

    p = sub.add_parser("census", parents=[common], help="censuses over [x/n]")
    p.add_argument("--poly", required=True)
    p.add_argument("--poly2", default=None)
    p.add_argument("--x", type=_x_list, required=True, help="one value or a comma list")
    p.add_argument("--mode", choices=("weighted", "count", "pair"), default="weighted")

    p = sub.add_parser("floor-sum", parents=[common], help="sum of w([x/n]) over n <= x")
    p.add_argument("--x", type=_int, required=True)
    p.add_argument("--weight", default="one",
                   help="one, identity, lambda-shift:<c> or lambda-poly:<coeffs>")
    p.add_argument("--brute", action="store_true", help="use the direct loop")

    p = sub.add_parser("fixed-divisor", parents=[common], help="fixed divisor of a polynomial")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("beatty", parents=[common], help="primes [alpha n]")
    p.add_argument("--alpha", required=True, help="sqrt2, pi, e or a decimal")
    p.add_argument("--limit", type=_int, required=True)
    p.add_argument("--first", type=_int, default=None)

    p = sub.add_parser("ps", parents=[common], help="primes [n^beta] + offset")
    p.add_argument("--beta", required=True, help="decimal or fraction such as 12/11")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--limit", type=_int, required=True)

    p = sub.add_parser("gauss-twins", parents=[common], help="Gaussian twin primes n -/+ i")
    p.add_argument("--limit", type=_int, required=True)

    p = sub.add_parser("fracparts", parents=[common], help="fractional-part statistics")
    p.add_argument("--kind", choices=("quad", "cubic", "ps", "dlvp"), required=True)
    p.add_argument("--x", type=_int, required=True)
    p.add_argument("--alpha", default="2")
    p.add_argument("--beta", default="12/11")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


_DEFAULT_FORMAT = {"fixed-divisor": "plain"}


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = vars(build_parser().parse_args(list(argv)))
    options = {k: v for k, v in ns.items() if k not in _META}
    fmt = ns["format"] or _DEFAULT_FORMAT.get(ns["command"], "json")
    return RunConfig(ns["command"], options, fmt, ns["output"], ns["seed"])


def _weight(text: str):
    if text == "one":
        return lambda v: 1
    if text == "identity":
        return lambda v: v
    if text.startswith("lambda-shift:"):
        c = int(text.split(":", 1)[1])
        return lambda v: lambda_of(v + c)
    if text.startswith("lambda-poly:"):
        g = parse_poly(text.split(":", 1)[1])
        return lambda v: lambda_of(abs(g(v)))
    raise UsageError(f"unknown weight {text!r}")


def _json_number(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _cmd_density(o, fmt):
    g = parse_poly(o["poly"])
    kw = dict(precision=density.parse_precision(o["precision"]), weight=o["weight"],
              count=o["count_by"], tail=o["tail"])
    if o["poly2"]:
        est = density.density_series_pair(g, parse_poly(o["poly2"]), o["terms"], **kw)
    else:
        est = density.density_series(g, o["terms"], **kw)
    value = est.value_str()
    if fmt == "plain":
        return value + "\n"
    payload = {
        "value": float(value) if est.precision == "double" else value,
        "terms_or_limit": est.terms,
        "tail_bound": est.tail_bound if o["tail"] else None,
        "is_lower_bound": est.is_lower_bound,
        "kind": est.kind,
        "last_index": est.last_index,
    }
    return payload


def _cmd_constants(o, fmt):
    est = density.euler_product(o["kind"], o["prime_limit"])
    if fmt == "plain":
        return repr(est.value) + "\n"
    return {"value": est.value, "terms_or_limit": est.prime_limit, "tail_bound": None,
            "is_lower_bound": False, "kind": est.kind,
            "correction": str(est.correction)}


def _cmd_census(o, fmt):
    g = parse_poly(o["poly"])
    mode = o["mode"]
    if mode == "pair" and not o["poly2"]:
        raise UsageError("--mode pair needs --poly2")
    records = []
    for x in o["x"]:
        if mode == "weighted":
            records.append(census.weighted_census(g, x))
        elif mode == "count":
            records.append(census.fractional_prime_count(g, x))
        else:
            records.append(census.pair_census(g, parse_poly(o["poly2"]), x))
    if fmt == "csv":
        return reports.census_to_csv(records)
    if fmt == "plain":
        return "".join(f"x={r.x} S={r.weighted_sum!r} predicted={r.predicted!r} "
                       f"residual={r.residual!r} distinct={r.distinct_prime_count} "
                       f"multiplicity={r.multiplicity_count}\n" for r in records)
    return [vars(r) for r in records]


def _cmd_floor_sum(o, fmt):
    x = o["x"]
    w = _weight(o["weight"])
    if o["brute"]:
        value = floor_weighted_sum_bruteforce(x, w)
        blocks = None
    else:
        bd = decompose(x)
        value = floor_weighted_sum(x, w, bd)
        blocks = len(bd)
    if fmt == "plain":
        return f"{value!r}\n"
    return {"value": value, "x": x, "weight": o["weight"],
            "method": "brute" if o["brute"] else "blocks", "blocks": blocks}


def _cmd_fixed_divisor(o, fmt):
    f = parse_poly(o["poly"])
    t = fixed_divisor_truncated(f)
    fb = fixed_divisor_factorial(f)
    if t != fb:
        raise AssertionError(f"fixed divisor algorithms disagree: {t} vs {fb}")
    if fmt == "plain":
        return f"{t}\n"
    return {"poly": str(f), "fixed_divisor": t, "truncated": t, "factorial": fb,
            "factorial_basis": list(to_factorial_basis(f).b)}


def _sequence_out(seq, fmt, extra):
    if fmt == "csv":
        return reports.sequence_to_csv(seq)
    if fmt == "plain":
        return " ".join(map(str, seq.primes)) + "\n"
    return {**extra, "primes": list(seq.primes), "indices": list(seq.indices),
            "count": len(seq.primes), "predicted": seq.predicted,
            "unstable": list(seq.unstable)}


def _cmd_beatty(o, fmt):
    seq = census.beatty_primes(o["alpha"], o["limit"], first=o["first"])
    return _sequence_out(seq, fmt, {"alpha": o["alpha"], "limit": o["limit"]})


def _cmd_ps(o, fmt):
    seq = census.piatetski_shapiro_primes(o["beta"], o["offset"], o["limit"])
    return _sequence_out(seq, fmt, {"beta": o["beta"], "offset": o["offset"],
                                    "limit": o["limit"]})


def _cmd_gauss(o, fmt):
    pairs = census.gaussian_twin_pairs(o["limit"])
    if fmt == "csv":
        return reports.twins_to_csv(pairs)
    if fmt == "plain":
        return "".join(f"{t.p} = ({t.n} - i)({t.n} + i)\n" for t in pairs)
    return [{"n": t.n, "p": t.p, "pair": [list(z) for z in t.pair]} for t in pairs]


def _cmd_fracparts(o, fmt):
    kind, x = o["kind"], o["x"]
    if kind == "dlvp":
        value = frac_parts.dlvp_sum(x)
        main = frac_parts.dlvp_main_term(x)
        if fmt == "plain":
            return f"{value!r}\n"
        if fmt == "csv":
            raise UsageError("dlvp has no tabular output; use json or plain")
        return {"x": x, "value": value, "main_term": main, "ratio": value / main}
    if kind == "quad":
        rep = frac_parts.quad_frac_parts(x)
    elif kind == "cubic":
        rep = frac_parts.cubic_frac_parts(x)
    else:
        rep = frac_parts.ps_frac_parts(o["alpha"], o["beta"], x)
    if fmt == "csv":
        return reports.fracparts_to_csv(rep.samples)
    if fmt == "plain":
        return "".join(f"{s.n} {s.p} {s.frac!r} {s.bound!r} {s.ratio!r}\n" for s in rep.samples)
    return {"x": x, "kind": kind, "sum": rep.total, "max_ratio": rep.max_ratio,
            "samples": len(rep.samples),
            "violations": [s.n for s in rep.violations],
            "exceptions": [s.n for s in rep.exceptions]}


_COMMANDS = {
    "density": _cmd_density,
    "constants": _cmd_constants,
    "census": _cmd_census,
    "floor-sum": _cmd_floor_sum,
    "fixed-divisor": _cmd_fixed_divisor,
    "beatty": _cmd_beatty,
    "ps": _cmd_ps,
    "gauss-twins": _cmd_gauss,
    "fracparts": _cmd_fracparts,
}


def _emit(result, config: RunConfig, stdout) -> None:
    if isinstance(result, str):
        text = result
    else:
        text = json.dumps(result, indent=2, default=_json_number) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if config.subcommand == "verify":
            from .verify import verify
            results = verify(config.options["level"])
            failed = [r for r in results if not r.passed]
            if config.fmt == "json":
                _emit({"level": config.options["level"], "passed": not failed,
                       "criteria": [r.to_json() for r in results]}, config, stdout)
            else:
                _emit("".join(r.line() + "\n" for r in results), config, stdout)
            for r in failed:
                print(f"criterion {r.number} ({r.name}) failed", file=stderr)
            return 1 if failed else 0
        if config.fmt == "csv" and config.subcommand in ("density", "constants",
                                                         "floor-sum", "fixed-divisor"):
            raise UsageError(f"{config.subcommand} has no csv output")
        _emit(_COMMANDS[config.subcommand](config.options, config.fmt), config, stdout)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (DomainError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``hcizlab <subcommand> ...``.

Subcommands: hurwitz, weingarten, hciz, genfun, zeros, verify. Results go
to stdout (or ``--out``) as JSON or CSV, and a JSON run manifest is written
next to them. Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 capacity error.

Environment: HCIZLAB_THREADS (worker count), HCIZLAB_PRECISION (decimal
digits for mpmath paths). Flags override both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .combinatorics import CapacityError, parse_partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class JsonArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    precision: int
    threads: int
    version: str = __version__
    wall_time: float = 0.0
    outputs: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=1, sort_keys=True, default=str)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _floats(text: str) -> list:
    try:
        return [_number(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def _number(text: str):
    text = text.strip()
    try:
        return Fraction(text) if "/" in text or text.lstrip("-").isdigit() else float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number {text!r}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _spectrum_from_family(text: str) -> list:
    from .hciz import cauchy_locations, uniform_locations

    name, _, n = text.partition(":")
    try:
        N = int(n)
    except ValueError:
        raise UsageError(f"bad family spec {text!r}; use uniform:N or cauchy:N") from None
    if name == "uniform":
        return uniform_locations(N, 1)
    if name == "cauchy":
        return cauchy_locations(N)
    raise UsageError(f"unknown spectrum family {name!r}")


def _spectrum(args):
    from .hciz import SpectrumPair

    if args.spectra_file:
        with open(args.spectra_file) as fh:
            data = json.load(fh)
        return SpectrumPair(tuple(_number(str(x)) for x in data["a"]), tuple(_number(str(x)) for x in data["b"]))
    a = _spectrum_from_family(args.spectra) if args.spectra else None
    b = list(a) if a is not None else None
    if args.a:
        a = _floats(args.a)
    if args.b:
        b = _floats(args.b)
    if a is None or b is None:
        raise UsageError("give spectra with --spectra FAMILY:N, --a/--b lists or --spectra-file")
    return SpectrumPair(tuple(a), tuple(b))


def _frac(x) -> str:
    return str(Fraction(x))


def _emit(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    payload = {"rows": rows}
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=1, default=str) + "\n"


def _cval(v) -> dict:
    c = complex(v)
    return {"re": c.real, "im": c.imag}


# subcommands


def cmd_hurwitz(args, ctx) -> int:
    from .hurwitz import hurwitz_table

    alpha = parse_partition(args.alpha) if args.alpha else None
    beta = parse_partition(args.beta) if args.beta else None
    if args.d < 1 or args.g < 0:
        raise UsageError("need d >= 1 and g >= 0")
    if args.d > args.max_degree:
        raise CapacityError(f"d={args.d} above the configured cap {args.max_degree}")
    table = hurwitz_table(args.d, args.g, args.method, alpha, beta)
    rows = [
        {"alpha": ",".join(map(str, r["alpha"])), "beta": ",".join(map(str, r["beta"])), "g": r["g"],
         "value": str(r["value"]), "method": r["method"]}
        for r in table.rows()
    ]
    ctx["text"] = _emit(rows, args.format)
    return EXIT_OK


def cmd_weingarten(args, ctx) -> int:
    from .weingarten import monte_carlo_correlation, weingarten_series, weingarten_table

    if args.d < 1 or args.N < 1:
        raise UsageError("need d >= 1 and N >= 1")
    if args.series is not None:
        ser = weingarten_series(args.d, args.N, args.series)
        rows = [
            {"class": ",".join(map(str, mu)), "partial_sum": _frac(ser.partial_sums[mu]),
             "tail_bound": None if ser.tail_bounds[mu] is None else float(ser.tail_bounds[mu])}
            for mu in ser.partial_sums
        ]
        ctx["text"] = _emit(rows, args.format, {"d": args.d, "N": args.N, "order": args.series})
        return EXIT_OK
    if args.correlation:
        try:
            I, Ip, J, Jp = (tuple(int(x) for x in part.split(",") if x) for part in args.correlation.split(";"))
        except ValueError:
            raise UsageError("--correlation takes I;I';J;J' as comma lists") from None
        est = monte_carlo_correlation(I, Ip, J, Jp, args.N, args.samples, args.seed, ctx["threads"])
        ctx["text"] = json.dumps(est.as_dict(), indent=1, default=str) + "\n"
        return EXIT_OK
    table = weingarten_table(args.d, args.N)
    if args.format == "json":
        ctx["text"] = table.to_json() + "\n"
    else:
        if table.range == "stable":
            rows = [{"class": ",".join(map(str, mu)), "numerator": v.numerator, "denominator": v.denominator}
                    for mu, v in table.by_class.items()]
        else:
            rows = [{"rho": ",".join(map(str, r)), "sigma": ",".join(map(str, s)), "numerator": v.numerator,
                     "denominator": v.denominator} for (r, s), v in table.by_pair.items()]
        ctx["text"] = _emit(rows, "csv")
    return EXIT_OK


def cmd_hciz(args, ctx) -> int:
    from . import hciz

    prec = ctx["precision"]
    if args.experiment:
        Ns = [int(x) for x in args.N_list.split(",")]
        res = hciz.convergence_experiment(_complex(args.z), Ns, args.d_trunc, precision=prec)
        if args.format == "csv":
            ctx["text"] = res.to_csv()
        else:
            ctx["text"] = json.dumps({"rows": res.rows, "slope": res.slope, "decreasing": res.decreasing}, indent=1) + "\n"
        return EXIT_OK
    spec = _spectrum(args)
    out: dict = {"spectra": spec.to_dict()}
    z = _complex(args.z)
    if args.derivs:
        derivs = hciz.partition_derivatives(args.derivs, spec, args.route)
        fe = hciz.free_energy_derivatives(derivs, spec.N)
        enc = (lambda v: str(v)) if spec.exact else (lambda v: _cval(v))
        out["derivatives"] = [enc(v) for v in derivs]
        out["free_energy_derivatives"] = [enc(v) for v in fe]
    if args.eval:
        out["I"] = _cval(hciz.hciz_determinant(z, spec, prec))
    if args.free_energy:
        out["F"] = _cval(hciz.free_energy(z, spec, precision=prec))
    if args.mc:
        est = hciz.hciz_monte_carlo(z, spec, args.samples, args.seed, ctx["threads"])
        out["monte_carlo"] = est.as_dict()
    if len(out) == 1:
        out["I"] = _cval(hciz.hciz_determinant(z, spec, prec))
    out["z"] = _cval(z)
    ctx["text"] = json.dumps(out, indent=1, default=str) + "\n"
    return EXIT_OK


def cmd_genfun(args, ctx) -> int:
    from . import genfun

    n = args.n_max
    if args.series == "s":
        ser = genfun.s_coefficients(n)
    elif args.series == "all_ones":
        ser = genfun.genus_series_all_ones(args.g, n)
    elif args.series == "c_uniform":
        phi = genfun.uniform_moments(n)
        ser = genfun.c_g_series(args.g, phi, phi, n, 1).series
    else:
        raise UsageError(f"unknown series {args.series!r}")
    if args.radius:
        rows = []
        for m in ("ratio", "cauchy_hadamard", "domb_sykes"):
            rep = genfun.radius_estimate(ser, m)
            rows.append({"method": m, "radius": rep.radius, "limit": rep.limit, "relative_to_zc": rep.radius / (2 / 27)})
        ctx["text"] = _emit(rows, args.format)
        return EXIT_OK
    if args.format == "csv":
        rows = [{"n": i, "numerator": Fraction(c).numerator, "denominator": Fraction(c).denominator}
                for i, c in enumerate(ser.coeffs)]
        ctx["text"] = _emit(rows, "csv")
    else:
        ctx["text"] = json.dumps(ser.to_json_obj(), indent=1) + "\n"
    return EXIT_OK


def cmd_zeros(args, ctx) -> int:
    from . import zeros

    if args.cauchy:
        rows = [{"N": N, "smallest_modulus": zeros.cauchy_counterexample(N)} for N in
                (int(x) for x in args.cauchy.split(","))]
        ctx["text"] = _emit(rows, args.format)
        return EXIT_OK
    if args.atlas:
        rows = zeros.zero_atlas(precision=ctx["precision"])
        ctx["text"] = zeros.atlas_csv(rows) if args.format == "csv" else _emit(rows, "json")
        return EXIT_OK
    if args.b is None:
        raise UsageError("--b is required")
    b = [float(x) for x in _floats(args.b)]
    pred = zeros.predicted_zeros(args.a1, args.hbar, b, args.N, args.k_window)
    spec = pred.spectrum()
    rows = []
    for z, i, j, k in pred.zeros:
        row = {"N": pred.N, "i": i, "j": j, "k": k, "im_z": z.imag, "im_z_over_pi": z.imag / math.pi}
        if args.verify:
            row["residual"] = zeros.verify_zero(z, spec, ctx["precision"])
        rows.append(row)
    ctx["text"] = _emit(rows, args.format, {"k_window": args.k_window})
    return EXIT_OK


def cmd_verify(args, ctx) -> int:
    from ._verify import run_suite

    report = run_suite(args.profile, inject_fault=args.inject_fault, workers=ctx["threads"])
    lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['module']}.{r['name']}  ({r['seconds']:.1f}s) {r['detail']}"
             for r in report]
    ok = all(r["passed"] for r in report)
    if args.format == "json":
        ctx["text"] = json.dumps({"profile": args.profile, "passed": ok, "checks": report}, indent=1, default=str) + "\n"
    else:
        ctx["text"] = "\n".join(lines) + f"\n{'ALL PASS' if ok else 'FAILURES PRESENT'}\n"
    return EXIT_OK if ok else EXIT_FAIL


# parser


def _common(default_format: str = "json") -> argparse.ArgumentParser:
    # a fresh parent per subcommand: argparse shares parent actions, so defaults would leak
    common = JsonArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=default_format)
    common.add_argument("--out", help="write results here instead of stdout")
    common.add_argument("--manifest", help="manifest path (default: <out>.manifest.json or ./hcizlab-manifest.json)")
    common.add_argument("--precision", type=int, help="decimal digits (env HCIZLAB_PRECISION, default 50)")
    common.add_argument("--threads", type=int, help="worker count (env HCIZLAB_THREADS, default 1)")
    common.add_argument("--seed", type=int, default=0)
    return common


def build_parser() -> argparse.ArgumentParser:

    p = JsonArgumentParser(prog="hcizlab", description="Monotone Hurwitz numbers, Weingarten calculus and the HCIZ integral")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=JsonArgumentParser)

    h = sub.add_parser("hurwitz", parents=[_common()], help="monotone double Hurwitz numbers")
    h.add_argument("--d", type=int, required=True)
    h.add_argument("--g", type=int, default=0)
    h.add_argument("--alpha")
    h.add_argument("--beta")
    h.add_argument("--method", choices=["character", "brute", "closed_form"], default="character")
    h.add_argument("--max-degree", type=int, default=12)
    h.set_defaults(func=cmd_hurwitz)

    w = sub.add_parser("weingarten", parents=[_common()], help="exact Weingarten tables")
    w.add_argument("--d", type=int, required=True)
    w.add_argument("--N", type=int, required=True)
    w.add_argument("--series", type=int, metavar="ORDER", help="1/N expansion through ORDER")
    w.add_argument("--correlation", metavar="I;I';J;J'", help="Monte Carlo estimate of a moment")
    w.add_argument("--samples", type=int, default=100_000)
    w.set_defaults(func=cmd_weingarten)

    z = sub.add_parser("hciz", parents=[_common()], help="HCIZ integral and free energy")
    z.add_argument("--z", default="0.1")
    z.add_argument("--spectra", help="family uniform:N or cauchy:N for both sides")
    z.add_argument("--a")
    z.add_argument("--b")
    z.add_argument("--spectra-file")
    z.add_argument("--eval", action="store_true", help="determinant formula")
    z.add_argument("--free-energy", action="store_true")
    z.add_argument("--mc", action="store_true", help="Monte Carlo estimate")
    z.add_argument("--samples", type=int, default=100_000)
    z.add_argument("--derivs", type=int, metavar="D", help="derivatives at 0 through order D")
    z.add_argument("--route", choices=["schur", "characters", "weingarten"], default="schur")
    z.add_argument("--experiment", action="store_true", help="free-energy convergence experiment")
    z.add_argument("--N-list", default="8,16,32,64")
    z.add_argument("--d-trunc", type=int, default=12)
    z.set_defaults(func=cmd_hciz)

    g = sub.add_parser("genfun", parents=[_common()], help="generating functions")
    g.add_argument("--series", choices=["s", "all_ones", "c_uniform"], default="s")
    g.add_argument("--n-max", type=int, default=20)
    g.add_argument("--g", type=int, default=0)
    g.add_argument("--radius", action="store_true")
    g.set_defaults(func=cmd_genfun)

    zz = sub.add_parser("zeros", parents=[_common()], help="zeros for arithmetic spectra")
    zz.add_argument("--predict", action="store_true")
    zz.add_argument("--verify", action="store_true")
    zz.add_argument("--N", type=int)
    zz.add_argument("--hbar", type=float, default=1.0)
    zz.add_argument("--a1", type=float, default=0.0)
    zz.add_argument("--b")
    zz.add_argument("--k-window", type=int, default=3)
    zz.add_argument("--atlas", action="store_true")
    zz.add_argument("--cauchy", metavar="N1,N2,...")
    zz.set_defaults(func=cmd_zeros)

    v = sub.add_parser("verify", parents=[_common("text")], help="run the invariant suite")
    v.add_argument("--profile", choices=["quick", "full"], default="quick")
    v.add_argument("--inject-fault", action="store_true", help="use a corrupted character table (negative control)")
    v.set_defaults(func=cmd_verify)
    return p


def _error(code: int, module: str, message: str) -> int:
    sys.stderr.write(json.dumps({"code": code, "module": module, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error(EXIT_USAGE, "cli", str(exc))
    module = args.command
    try:
        threads = args.threads if args.threads is not None else _env_int("HCIZLAB_THREADS", 1)
        precision = args.precision if args.precision is not None else _env_int("HCIZLAB_PRECISION", 50)
        if threads < 1 or precision < 5:
            raise UsageError("threads must be >= 1 and precision >= 5")
        ctx = {"threads": threads, "precision": precision, "text": ""}
        code = args.func(args, ctx)
    except UsageError as exc:
        return _error(EXIT_USAGE, module, str(exc))
    except CapacityError as exc:
        return _error(EXIT_CAPACITY, module, str(exc))
    except (ValueError, ArithmeticError) as exc:
        return _error(EXIT_USAGE, module, f"{type(exc).__name__}: {exc}")

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(ctx["text"])
    else:
        sys.stdout.write(ctx["text"])
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out", "manifest")}
    manifest = RunManifest(module, params, args.seed, precision, threads, wall_time=time.perf_counter() - start,
                           outputs=[args.out] if args.out else ["<stdout>"])
    path = args.manifest or (f"{args.out}.manifest.json" if args.out else "hcizlab-manifest.json")
    with open(path, "w") as fh:
        fh.write(manifest.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

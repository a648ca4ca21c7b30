"""Command-line front end: point probes, figure sweeps as CSV, scans, sampling, oracle checks."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import epr, ghz, infotheory, inequalities, sampler, verify

DEFAULT_SPINS = [1, 2, 4, 10]
SAMPLE_CAP = 10**8


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    start: float
    end: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise UsageError("--steps must be at least 2")
        if not self.start < self.end:
            raise UsageError("sweep start must be below sweep end")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.end, self.steps)


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle value: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite, got {text!r}")
    return value


def _twice_spin(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--spin takes the integer 2s, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"--spin must be >= 1 (it is 2s), got {value}")
    return value


def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x) + 0.0, ".9g")


def _spin_label(twice_s: int) -> str:
    return str(epr.SpinMagnitude(twice_s))


# -- output ------------------------------------------------------------------------


def render_table(columns, rows, fmt: str) -> str:
    if fmt == "json":
        data = {"kind": "figure", "columns": list(columns), "rows": [[float(_fmt(v)) for v in r] for r in rows]}
        return json.dumps(data, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


# -- figure tables -------------------------------------------------------------------


def fig_epr_conditionals(spec: SweepSpec, twice_spins=DEFAULT_SPINS, which: str = "p10"):
    i, j = (1, 0) if which == "p10" else (0, 1)
    label = f"P({i}|{j})"
    columns = ["alpha"] + [f"{label} s={_spin_label(t)}" for t in twice_spins]
    rows = []
    for alpha in spec.values():
        rows.append([alpha] + [epr.epr_conditional(t, alpha)[i, j] for t in twice_spins])
    return columns, rows


def fig_epr_entropies(spec: SweepSpec, twice_s: int = 1):
    columns = ["alpha", "H(a|b)", "H(a)", "H(a;b)"]
    rows = []
    for alpha in spec.values():
        ent = infotheory.epr_entropies(twice_s, alpha)
        rows.append([alpha, ent.H_a_given_b, ent.H_a, ent.H_joint])
    return columns, rows


def fig_bc_epr(spec: SweepSpec, twice_spins=DEFAULT_SPINS):
    columns = ["alpha"] + [f"lhs s={_spin_label(t)}" for t in twice_spins]
    rows = []
    for alpha in spec.values():
        rows.append([alpha] + [inequalities.bc_epr_coplanar(t, alpha).lhs for t in twice_spins])
    return columns, rows


def fig_ghz_entropy(spec: SweepSpec):
    rows = [[phi, infotheory.ghz_entropies((phi, 0.0, 0.0)).H_triple] for phi in spec.values()]
    return ["phi", "H_triple"], rows


def fig_bc_ghz(spec: SweepSpec):
    geo = inequalities.GHZ_BC_GEOMETRY
    rows = []
    for phi3 in spec.values():
        reduced = inequalities.bc_ghz_reduced(phi3).lhs
        general = inequalities.bc_ghz(geo["phi1"], geo["phi1_p"], geo["phi2"], geo["phi2_p"], phi3).lhs
        rows.append([phi3, reduced, general])
    return ["phi3", "lhs_reduced", "lhs_general"], rows


# -- probes ----------------------------------------------------------------------------


def probe_epr(twice_s: int, alpha: float) -> dict:
    spin = epr.SpinMagnitude(twice_s)
    marg = epr.epr_marginals(spin)
    ent = infotheory.epr_entropies(spin, alpha)
    layout = inequalities.coplanar_layout(alpha)
    reports = [
        inequalities.araki_lieb_epr(spin, alpha),
        inequalities.bc_epr_coplanar(spin, alpha),
        inequalities.bell_epr(spin, **layout),
    ]
    return {
        "kind": "probe_epr",
        "inputs": {"twice_s": twice_s, "alpha": alpha},
        "marginals": [marg.p0, marg.p1],
        "conditional": epr.epr_conditional(spin, alpha).table.tolist(),
        "joint": epr.epr_joint(spin, alpha).table.tolist(),
        "transmission": epr.epr_transmission(spin, alpha),
        "classical_limit_conditional": epr.classical_limit_conditional(alpha).table.tolist(),
        "entropies": {
            **ent.as_dict(),
            "joint_minus_single": ent.H_joint - ent.H_a,
            "sum_minus_joint": ent.H_a + ent.H_b - ent.H_joint,
        },
        "reports": [r.to_dict() for r in reports],
    }


def probe_ghz(phi1: float, phi2: float, phi3: float, corrected: bool = True) -> dict:
    angles = ghz.AngleTriple(phi1, phi2, phi3)
    geo = inequalities.GHZ_BC_GEOMETRY
    reports = [
        inequalities.lieb_ruskai_ghz(angles),
        inequalities.three_party_subadditivity(angles),
        inequalities.bc_ghz(geo["phi1"], geo["phi1_p"], geo["phi2"], geo["phi2_p"], phi3),
        inequalities.bc_ghz_reduced(phi3),
        inequalities.bell_ghz(geo["phi1"], geo["phi1_p"], geo["phi2"], geo["phi2_p"], phi3, corrected=corrected),
    ]
    marg = ghz.ghz_pair_marginals(angles)
    return {
        "kind": "probe_ghz",
        "inputs": {"phi1": phi1, "phi2": phi2, "phi3": phi3, "phi": angles.phi},
        "joint": ghz.ghz_full_distribution(angles).table.tolist(),
        "conditional": ghz.ghz_conditionals(angles).table.tolist(),
        "transmission": ghz.ghz_transmission(angles),
        "marginals": {"".join(map(str, k)): v.probs.tolist() for k, v in marg.items()},
        "markov_violation": ghz.markov_violation(angles),
        "entropies": infotheory.ghz_entropies(angles).as_dict(),
        "reports": [r.to_dict() for r in reports],
    }


# -- scans -------------------------------------------------------------------------------


def _circle(step_deg: float) -> np.ndarray:
    """Radian grid over [0, 2π) in steps of ``step_deg`` degrees."""
    if step_deg <= 0:
        raise UsageError("--grid-deg must be positive")
    return np.deg2rad(np.arange(int(round(360.0 / step_deg))) * step_deg)


def bell_scan(system: str, twice_s: int = 1, grid_deg: float | None = None, corrected=True, workers=1) -> dict:
    if system == "epr":
        step = grid_deg or 1.0
        axis = _circle(step)
        res = inequalities.scan_max_violation(
            "bell_epr", {"a_p": axis, "b": axis, "b_p": axis}, fixed={"a": 0.0}, workers=workers, s=twice_s
        )
        report = inequalities.bell_epr(twice_s, 0.0, **res.argmax)
    elif system == "ghz":
        step = grid_deg or 10.0
        axis = _circle(step)
        grid = {"phi1": axis, "phi1_p": axis, "phi2": axis, "phi2_p": axis}
        res = inequalities.scan_max_violation(
            "bell_ghz", grid, fixed={"phi3": 0.0}, workers=workers, corrected=corrected
        )
        report = inequalities.bell_ghz(**res.argmax, phi3=0.0, corrected=corrected)
    elif system == "bc-epr":
        step = grid_deg or 0.1
        axis = _circle(step)
        res = inequalities.scan_max_violation("bc_epr_coplanar", {"alpha": axis}, workers=workers, s=twice_s)
        report = inequalities.bc_epr_coplanar(twice_s, res.argmax["alpha"])
    else:
        raise UsageError(f"unknown scan system {system!r}")
    return {"kind": "scan", "system": system, "grid_deg": step, **res.to_dict(), "report": report.to_dict()}


# -- sampling --------------------------------------------------------------------------------


def run_sample(args) -> dict:
    seed = sampler.SeedSpec(args.seed, args.stream)
    n = args.n
    if n < 1:
        raise UsageError("--n must be >= 1")
    if n > args.cap:
        raise UsageError(f"--n {n} exceeds the cap of {args.cap}")
    spin = epr.SpinMagnitude(args.spin)
    if args.model == "epr":
        alpha = _angle(args, args.alpha)
        samples = sampler.sample_epr(spin, alpha, n, seed, args.workers)
        expected = epr.epr_joint(spin, alpha).table
        inputs = {"twice_s": spin.twice_s, "alpha": alpha}
    elif args.model == "ghz":
        phis = [_angle(args, v) for v in (args.phi1, args.phi2, args.phi3)]
        samples = sampler.sample_ghz(phis, n, seed, args.workers)
        expected = ghz.ghz_full_distribution(phis).table
        inputs = dict(zip(["phi1", "phi2", "phi3"], phis))
    else:
        alpha = _angle(args, args.alpha)
        model = sampler.LhvModel(spin)
        samples = sampler.sample_lhv_epr(model, 0.0, alpha, n, seed, args.workers)
        expected = None
        inputs = {"twice_s": spin.twice_s, "alpha": alpha, "threshold": model.threshold}

    columns = ["a", "b", "c"][: samples.shape[1]]
    sampler.write_samples_csv(args.out, samples, columns)
    est = sampler.EmpiricalEstimate.from_samples(samples)
    summary = {
        "kind": "sample_summary",
        "model": args.model,
        "inputs": inputs,
        "seed": {"seed": seed.seed, "stream_id": seed.stream_id},
        "estimate": est.to_dict(),
        "entropy": {"plugin": sampler.empirical_entropy(est), "bias": sampler.plugin_bias(est)},
    }
    if expected is not None:
        summary["expected"] = expected.ravel().tolist()
        summary["delta_sigma"] = [float(v) if np.isfinite(v) else None for v in sampler.sigma_deltas(est, expected)]
    else:
        rates = samples.mean(axis=0)
        target = epr.epr_marginals(spin).p1
        summary["single_rates"] = rates.tolist()
        summary["single_rate_expected"] = target
        summary["single_rate_delta_sigma"] = [
            float((r - target) / math.sqrt(target * (1 - target) / n)) for r in rates
        ]
    return summary


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entcorr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--degrees", action="store_true", help="read angle flags in degrees")

    sweep = argparse.ArgumentParser(add_help=False, parents=[angles])
    sweep.add_argument("--start", type=_finite_float, default=None, help="sweep start (default 0)")
    sweep.add_argument("--end", type=_finite_float, default=None, help="sweep end (default 2π)")
    sweep.add_argument("--steps", type=int, default=361, help="grid points, endpoints included")
    sweep.add_argument("--out", default=None, help="output file (default stdout)")
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")

    probe = sub.add_parser("probe", help="all tables and reports at one parameter point")
    probe_sub = probe.add_subparsers(dest="system", required=True)
    pe = probe_sub.add_parser("epr", parents=[angles])
    pe.add_argument("--spin", type=_twice_spin, default=1, help="twice the spin, 2s")
    pe.add_argument("--alpha", type=_finite_float, required=True)
    pe.add_argument("--out", default=None)
    pg = probe_sub.add_parser("ghz", parents=[angles])
    for flag in ("--phi1", "--phi2", "--phi3"):
        pg.add_argument(flag, type=_finite_float, default=0.0)
    pg.add_argument("--literal-eq31", "--literal", dest="literal", action="store_true",
                    help="keep the (φ1', φ1, φ3) triple term in the GHZ probability inequality")
    pg.add_argument("--out", default=None)

    fig = sub.add_parser("fig", help="figure data as CSV or JSON")
    fig_sub = fig.add_subparsers(dest="figure", required=True)
    fc = fig_sub.add_parser("epr-cond", parents=[sweep])
    fc.add_argument("--spin", type=_twice_spin, nargs="+", default=DEFAULT_SPINS)
    fc.add_argument("--which", choices=["p10", "p01"], default="p10", help="P(1|0) or P(0|1)")
    fe = fig_sub.add_parser("epr-entropy", parents=[sweep])
    fe.add_argument("--spin", type=_twice_spin, default=1)
    fb = fig_sub.add_parser("bc-epr", parents=[sweep])
    fb.add_argument("--spin", type=_twice_spin, nargs="+", default=DEFAULT_SPINS)
    fig_sub.add_parser("ghz-entropy", parents=[sweep])
    fig_sub.add_parser("bc-ghz", parents=[sweep])

    scan = sub.add_parser("bell-scan", help="grid search for the largest violation")
    scan.add_argument("--system", choices=["epr", "ghz", "bc-epr"], default="epr")
    scan.add_argument("--spin", type=_twice_spin, default=1)
    scan.add_argument("--grid-deg", type=float, default=None)
    scan.add_argument("--literal-eq31", "--literal", dest="literal", action="store_true")
    scan.add_argument("--workers", type=int, default=1)
    scan.add_argument("--out", default=None)

    smp = sub.add_parser("sample", parents=[angles], help="Monte Carlo outcome streams")
    smp.add_argument("model", choices=["epr", "ghz", "lhv"])
    smp.add_argument("--spin", type=_twice_spin, default=1)
    smp.add_argument("--alpha", type=_finite_float, default=0.0)
    for flag in ("--phi1", "--phi2", "--phi3"):
        smp.add_argument(flag, type=_finite_float, default=0.0)
    smp.add_argument("--n", type=int, default=1000)
    smp.add_argument("--seed", type=int, required=True)
    smp.add_argument("--stream", type=int, default=0)
    smp.add_argument("--workers", type=int, default=1)
    smp.add_argument("--cap", type=int, default=SAMPLE_CAP)
    smp.add_argument("--out", required=True, help="CSV path for the outcome stream")
    smp.add_argument("--summary", default=None, help="summary JSON path (default stdout)")

    ver = sub.add_parser("verify", help="closed forms vs the Hilbert-space oracle")
    ver_sub = ver.add_subparsers(dest="target", required=True)
    vo = ver_sub.add_parser("oracle")
    vo.add_argument("--max-spin", type=_twice_spin, default=10, help="largest 2s checked (<= 50)")
    vo.add_argument("--grid-deg", type=float, default=5.0)
    vo.add_argument("--ghz-grid-deg", type=float, default=10.0)
    vo.add_argument("--no-ghz", action="store_true")
    vo.add_argument("--out", default=None)
    return parser


def _sweep_spec(args) -> SweepSpec:
    start = 0.0 if args.start is None else _angle(args, args.start)
    end = 2 * math.pi if args.end is None else _angle(args, args.end)
    return SweepSpec(start, end, args.steps)


def _run(args) -> int:
    if args.command == "probe":
        if args.system == "epr":
            data = probe_epr(args.spin, _angle(args, args.alpha))
        else:
            phis = [_angle(args, v) for v in (args.phi1, args.phi2, args.phi3)]
            data = probe_ghz(*phis, corrected=not args.literal)
        _emit(_dump_json(data), args.out)
        return 0

    if args.command == "fig":
        spec = _sweep_spec(args)
        if args.figure == "epr-cond":
            cols, rows = fig_epr_conditionals(spec, args.spin, args.which)
        elif args.figure == "epr-entropy":
            cols, rows = fig_epr_entropies(spec, args.spin)
        elif args.figure == "bc-epr":
            cols, rows = fig_bc_epr(spec, args.spin)
        elif args.figure == "ghz-entropy":
            cols, rows = fig_ghz_entropy(spec)
        else:
            cols, rows = fig_bc_ghz(spec)
        _emit(render_table(cols, rows, args.format), args.out)
        return 0

    if args.command == "bell-scan":
        data = bell_scan(args.system, args.spin, args.grid_deg, corrected=not args.literal, workers=args.workers)
        _emit(_dump_json(data), args.out)
        return 0

    if args.command == "sample":
        summary = run_sample(args)
        _emit(_dump_json(summary), args.summary)
        return 0

    if args.command == "verify":
        if args.max_spin > verify.oracle.ORACLE_MAX_TWICE_S:
            raise UsageError(f"--max-spin {args.max_spin} exceeds the oracle ceiling of 50 (s = 25)")
        legs = verify.verify_oracle(
            range(1, args.max_spin + 1), args.grid_deg, args.ghz_grid_deg, include_ghz=not args.no_ghz
        )
        ok = all(leg.passed() for leg in legs)
        data = {"kind": "oracle_verification", "tolerance": verify.ORACLE_TOL, "passed": ok,
                "legs": [leg.to_dict() for leg in legs]}
        _emit(_dump_json(data), args.out)
        if not ok:
            worst = max(legs, key=lambda leg: leg.max_deviation)
            print(f"oracle mismatch: worst case {worst.worst}", file=sys.stderr)
        return 0 if ok else 1

    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"entcorr: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

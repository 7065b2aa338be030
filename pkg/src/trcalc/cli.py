"""Batch command-line driver.

Subcommands cover the closed forms (syntomic, kgroups, transition), the
tower checks (ml-check, tr), and the brute-force cross-check (verify).
Reports are deterministic for a fixed job; set TRCALC_JOBS to spread
verify work over processes (the merge order stays fixed).

Exit codes: 0 success, 1 validation failure, 2 verification mismatch or
Mittag-Leffler violation, 3 classification refusal.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .drw import TruncationParams
from .oracle import OracleError, OrbitTruncation, default_truncation, verify_orbit
from .padic import MultiIndex, Prime
from .prosystem import (
    MLViolationError,
    RefusedClassification,
    build_tower,
    image_exponent,
    ml_bound,
    stabilized_images,
    tr_groups,
    tr_valuation,
)
from .report import Report, emit_report, format_alpha
from .syntomic import AlphaBounds, Orbit, enumerate_orbits, h_other_degrees

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISMATCH = 2
EXIT_REFUSED = 3

COMMANDS = ("syntomic", "kgroups", "transition", "ml-check", "tr", "verify")

IDENTIFICATIONS = {
    "k_groups": "K_{2i-1}(A, (x); Z_p) is identified with degree-1 weight-i "
    "syntomic cohomology of A via the cyclotomic trace and the motivic filtration",
    "tr": "curves description: TR(A; Z_p) = lim_e Omega K(A[x]/x^e, (x)); "
    "TR degree 2i therefore pulls from the weight i+1 towers",
    "p_typical": "the m = 1 orbit slice is read as the p-typical summand of "
    "the product decomposition over integers coprime to p",
    "base": "groups are W(k)/p^h for a symbolic perfect field k; numeric "
    "orders are the k = F_p specialization",
}


class ValidationError(Exception):
    pass


@dataclass
class JobSpec:
    """Validated parameters of one CLI invocation."""

    command: str
    p: int
    i: int
    i_max: int | None = None
    e: int | None = None
    e_max: int | None = None
    bounds: AlphaBounds = field(default_factory=AlphaBounds)
    A: int | None = None
    N: int | None = None
    format: str = "text"
    out: str | None = None

    def weights(self) -> list[int]:
        return list(range(self.i, (self.i_max if self.i_max is not None else self.i) + 1))

    def levels(self) -> list[int]:
        if self.e is None:
            raise ValidationError(f"{self.command} needs --e")
        return list(range(self.e, (self.e_max if self.e_max is not None else self.e) + 1))

    def validate(self) -> None:
        try:
            Prime(self.p)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command}")
        if self.i < 0:
            raise ValidationError("--i must be nonnegative")
        if self.i_max is not None and self.i_max < self.i:
            raise ValidationError("--i-max below --i")
        if self.e is not None and self.e < 1:
            raise ValidationError("--e must be positive")
        if self.e_max is not None and (self.e is None or self.e_max < self.e):
            raise ValidationError("--e-max needs --e and --e-max >= --e")
        if self.command in ("transition", "ml-check") and self.levels()[0] % self.p == 0:
            # target level of a tower command must live in the index category
            raise ValidationError(f"level {self.levels()[0]} not coprime to p={self.p}")
        if self.format not in ("text", "json", "csv"):
            raise ValidationError(f"unknown format {self.format}")


def _parameters_dict(spec: JobSpec) -> dict:
    out = {"p": spec.p, "i": spec.i}
    if spec.i_max is not None:
        out["i_max"] = spec.i_max
    if spec.e is not None:
        out["e"] = spec.e
    if spec.e_max is not None:
        out["e_max"] = spec.e_max
    if spec.bounds.slots:
        out["slots"] = list(spec.bounds.slots)
        out["alpha_num_max"] = spec.bounds.num_max
        out["alpha_pexp_max"] = spec.bounds.pexp_max
    if spec.A is not None:
        out["A"] = spec.A
    if spec.N is not None:
        out["N"] = spec.N
    return out


def _run_syntomic(spec: JobSpec, report: Report) -> int:
    for i in spec.weights():
        for e in spec.levels():
            params = TruncationParams(spec.p, e, i)
            total = 0
            for sm in enumerate_orbits(params, spec.bounds):
                total += sm.module.h
                report.add_orbit(
                    i=i,
                    e=e,
                    m=sm.orbit.m,
                    alpha=format_alpha(sm.orbit.alpha, spec.p),
                    s=sm.s,
                    h=sm.module.h,
                    module=str(sm.module),
                    generator=list(sm.generator_exponents),
                )
            other = h_other_degrees(params)
            report.certificates.append(
                {
                    "i": i,
                    "e": e,
                    "total_exponent": total,
                    "reduced_h0": other.reduced_h0,
                    "higher_degrees": other.higher,
                }
            )
    return EXIT_OK


def _run_kgroups(spec: JobSpec, report: Report) -> int:
    for i in spec.weights():
        for e in spec.levels():
            params = TruncationParams(spec.p, e, i)
            summands = enumerate_orbits(params, spec.bounds)
            divisors = sorted((sm.module.h for sm in summands), reverse=True)
            for sm in summands:
                report.add_orbit(
                    i=i,
                    e=e,
                    m=sm.orbit.m,
                    alpha=format_alpha(sm.orbit.alpha, spec.p),
                    s=sm.s,
                    h=sm.module.h,
                )
            group = " + ".join(f"W(k)/{spec.p}^{h}" for h in divisors) or "0"
            report.certificates.append(
                {
                    "degree": 2 * i - 1,
                    "i": i,
                    "e": e,
                    "group": group,
                    "divisors": [spec.p**h for h in divisors],
                    "order_fp": spec.p ** sum(divisors),
                }
            )
    return EXIT_OK


def _run_transition(spec: JobSpec, report: Report) -> int:
    levels = spec.levels()
    e = levels[0]
    sources = [f for f in levels[1:] if f % spec.p]
    params = TruncationParams(spec.p, e, spec.i)
    for sm in enumerate_orbits(params, spec.bounds):
        h_e = sm.module.h
        for f in sources:
            v = tr_valuation(params, f, sm.orbit)
            if v is None:
                continue
            pf = TruncationParams(spec.p, f, spec.i)
            from .syntomic import h1_syntomic_orbit

            h_f = h1_syntomic_orbit(pf, sm.orbit).module.h
            report.add_orbit(
                m=sm.orbit.m,
                alpha=format_alpha(sm.orbit.alpha, spec.p),
                s=sm.s,
                h=h_e,
                f=f,
                h_f=h_f,
                valuation=v,
                image=image_exponent(h_f, h_e, v),
            )
    return EXIT_OK


def _run_ml_check(spec: JobSpec, report: Report) -> int:
    levels = [e for e in spec.levels() if e % spec.p]
    probe = levels[-1]
    orbits: set[Orbit] = set()
    for e in levels:
        params = TruncationParams(spec.p, e, spec.i)
        orbits.update(sm.orbit for sm in enumerate_orbits(params, spec.bounds))
    status = EXIT_OK
    for orbit in sorted(orbits, key=lambda o: o.sort_key()):
        tower = build_tower(spec.p, spec.i, orbit, levels)
        try:
            stab = stabilized_images(tower, probe)
        except MLViolationError as exc:
            report.certificates.append(
                {"m": orbit.m, "alpha": format_alpha(orbit.alpha, spec.p), "ml_violation": str(exc)}
            )
            status = EXIT_MISMATCH
            continue
        for rec in stab.per_level:
            report.add_orbit(
                m=orbit.m,
                alpha=format_alpha(orbit.alpha, spec.p),
                e=rec.level,
                h=rec.h,
                ml_bound=rec.ml_bound,
                stabilized_image=rec.stabilized,
                ml_index=rec.ml_index,
                certified=rec.certified,
            )
    report.certificates.append(
        {"ml_condition": "PASS" if status == EXIT_OK else "FAIL", "probe": probe, "orbits": len(orbits)}
    )
    return status


def _run_tr(spec: JobSpec, report: Report) -> int:
    probe = spec.levels()[-1]
    result = tr_groups(spec.p, spec.i, spec.bounds, probe)
    for orbit, verdict in result.even:
        if isinstance(verdict, RefusedClassification):
            report.add_orbit(
                m=orbit.m,
                alpha=format_alpha(orbit.alpha, spec.p),
                kind="refused",
                h=0,
                evidence=verdict.evidence,
            )
        else:
            report.add_orbit(
                m=orbit.m,
                alpha=format_alpha(orbit.alpha, spec.p),
                kind=verdict.kind,
                h=verdict.h if verdict.h is not None else "",
                ml_index=verdict.ml_index,
                evidence=verdict.evidence,
            )
    report.certificates.append(
        {
            "even_degree": result.degree,
            "weight": result.weight,
            "odd_degree": result.odd.degree,
            "odd_zero": result.odd.zero,
            "lim1_zero": result.odd.lim1_zero,
            "orbits_checked": result.odd.orbits_checked,
        }
    )
    report.footer.append(f"TR_odd = 0: CERTIFIED (probe e <= {probe})")
    return EXIT_REFUSED if result.refused else EXIT_OK


def _verify_job(args: tuple) -> dict:
    p, e, i, m, alpha_entries, A, N = args
    params = TruncationParams(p, e, i)
    orbit = Orbit(m, MultiIndex(alpha_entries))
    if A is not None or N is not None:
        base = default_truncation(params, orbit)
        trunc = OrbitTruncation(orbit, A if A is not None else base.A, N if N is not None else base.N)
        cert = _verify_with_truncation(params, orbit, trunc)
    else:
        cert = verify_orbit(params, orbit)
    return {
        "i": i,
        "e": e,
        "m": m,
        "alpha": format_alpha(orbit.alpha, p),
        "s": cert.s,
        "h": cert.h_closed,
        "oracle_h": (cert.oracle_exponents[1][0] if cert.oracle_exponents[1] else 0),
        "oracle_h2": list(cert.oracle_exponents[2]),
        "kernel_ok": cert.kernel_ok,
        "pass": cert.passed,
    }


def _verify_with_truncation(params, orbit, trunc):
    """verify_orbit with a user-pinned (A, N) instead of the defaults."""
    from .oracle import (
        OrbitCertificate,
        build_orbit_matrices,
        certify_kernel_generator,
        oracle_cohomology,
    )
    from .syntomic import h1_syntomic_orbit

    summand = h1_syntomic_orbit(params, orbit)
    exps = oracle_cohomology(params, trunc, check_stability=True)
    mats = build_orbit_matrices(params, trunc)
    h = summand.module.h
    degree_match = exps[0] == () and exps[2] == () and exps[1] == ((h,) if h else ())
    kernel_ok = True
    if summand.s >= 1 and h >= 1:
        kernel_ok = certify_kernel_generator(params, trunc)
    return OrbitCertificate(orbit, summand.s, h, exps, kernel_ok, mats.content_hash(), degree_match and kernel_ok)


def _run_verify(spec: JobSpec, report: Report) -> int:
    jobs = []
    for i in spec.weights():
        for e in spec.levels():
            params = TruncationParams(spec.p, e, i)
            for sm in enumerate_orbits(params, spec.bounds):
                jobs.append((spec.p, e, i, sm.orbit.m, sm.orbit.alpha.entries, spec.A, spec.N))
    workers = int(os.environ.get("TRCALC_JOBS", "1"))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_verify_job, jobs))
    else:
        records = [_verify_job(job) for job in jobs]
    all_pass = all(rec["pass"] for rec in records)
    for rec in records:
        report.add_orbit(**rec)
    report.certificates.append(
        {"verified_orbits": len(records), "all_pass": all_pass}
    )
    return EXIT_OK if all_pass else EXIT_MISMATCH


RUNNERS = {
    "syntomic": _run_syntomic,
    "kgroups": _run_kgroups,
    "transition": _run_transition,
    "ml-check": _run_ml_check,
    "tr": _run_tr,
    "verify": _run_verify,
}


def run_command(spec: JobSpec) -> tuple[Report, int]:
    """Execute one job; returns the report plus the process exit status."""
    spec.validate()
    report = Report(
        command=spec.command,
        parameters=_parameters_dict(spec),
        identifications=dict(IDENTIFICATIONS),
    )
    try:
        code = RUNNERS[spec.command](spec, report)
    except (ValidationError, ValueError) as exc:
        raise ValidationError(str(exc)) from exc
    except (OracleError, MLViolationError) as exc:
        report.certificates.append({"error": str(exc)})
        return report, EXIT_MISMATCH
    return report, code


class _Parser(argparse.ArgumentParser):
    # validation failures must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="trcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=f"{name} computation")
        cmd.add_argument("--p", type=int, required=True, help="prime")
        cmd.add_argument("--i", type=int, required=True, help="weight (or range start)")
        cmd.add_argument("--i-max", type=int, default=None, help="weight range end, inclusive")
        cmd.add_argument("--e", type=int, default=None, help="truncation exponent (or range start)")
        cmd.add_argument("--e-max", type=int, default=None, help="exponent range end, inclusive")
        cmd.add_argument("--slots", nargs="+", default=[], help="multi-index slot names")
        cmd.add_argument("--alpha-num-max", type=int, default=None, help="multi-index numerator bound")
        cmd.add_argument("--alpha-pexp-max", type=int, default=None, help="multi-index denominator exponent bound")
        cmd.add_argument("--A", type=int, default=None, help="orbit truncation level override")
        cmd.add_argument("--N", type=int, default=None, help="p-adic precision override")
        cmd.add_argument("--format", choices=("text", "json", "csv"), default="text")
        cmd.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def _spec_from_args(args: argparse.Namespace) -> JobSpec:
    if args.slots:
        if args.alpha_num_max is None or args.alpha_pexp_max is None:
            raise ValidationError("--slots requires --alpha-num-max and --alpha-pexp-max")
        bounds = AlphaBounds(tuple(args.slots), args.alpha_num_max, args.alpha_pexp_max)
    else:
        bounds = AlphaBounds()
    return JobSpec(
        command=args.command,
        p=args.p,
        i=args.i,
        i_max=args.i_max,
        e=args.e,
        e_max=args.e_max,
        bounds=bounds,
        A=args.A,
        N=args.N,
        format=args.format,
        out=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = _spec_from_args(args)
        report, code = run_command(spec)
    except ValidationError as exc:
        print(f"trcalc: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    data = emit_report(report, spec.format)
    if spec.out:
        with open(spec.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return code


if __name__ == "__main__":
    sys.exit(main())

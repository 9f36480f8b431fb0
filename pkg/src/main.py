"""
Toruscope
Exact periodic orbits of ergodic toral endomorphisms

Usage:
    python main.py analyze   MATRIX
    python main.py primes    MATRIX [--count N] [--scan-cap P] [--jobs J]
    python main.py construct MATRIX [--levels K] [--prime P ...]
    python main.py verify    MATRIX [--levels K] [--grid G] [--brute-verify]
    python main.py orbit     MATRIX --point "1/2,0"
    python main.py equidist  MATRIX [--levels K] [--grid G] [--gnuplot FILE]

MATRIX is a file (JSON rows or whitespace text) or inline JSON such as "[[2,1],[1,1]]".
Reports go to stdout (or --out), progress to stderr.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from colorama import init

# Add src to Python path so modules import as top-level names
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import config
import pandas as pd
from console import fail, header, say
from equidist import (box_counts, cell_occupancy_check, convergence_report,
                      density_bound_check, nonergodic_scan, packing_bound_check)
from errors import InputError, InvariantViolation, NonErgodicError
from intlinalg import (IntMatrix, char_poly, companion, det, is_ergodic, load_matrix,
                       minimal_poly)
from intpoly import discriminant, factor_rational
from modarith import find_split_primes
from orbits.general import GeneralConstruction, uniform_sequence
from orbits.irreducible import certify_distance_bound
from orbits.torus import TorusPoint, certify_period, orbit_bruteforce
from reports import emit, records_frame, render, write_gnuplot

COMMANDS = ("analyze", "primes", "construct", "verify", "orbit", "equidist")


@dataclass
class RunConfig:
    command: str
    matrix: str
    levels: int = config.DEFAULT_LEVELS
    primes: List[int] = field(default_factory=list)
    count: int = config.DEFAULT_PRIME_COUNT
    scan_cap: int = config.SCAN_CAP
    grid: int = config.DEFAULT_GRID
    fmt: str = config.DEFAULT_FORMAT
    out: Optional[str] = None
    jobs: int = config.DEFAULT_JOBS
    brute_verify: bool = False
    point: Optional[str] = None
    gnuplot: Optional[str] = None
    quiet: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(f"Unknown command {self.command}")
        if self.levels < 1:
            raise InputError("--levels must be at least 1")
        if self.count < 1:
            raise InputError("--count must be at least 1")
        if self.scan_cap < 3:
            raise InputError("--scan-cap must be at least 3")
        if self.grid < 1:
            raise InputError("--grid must be at least 1")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if self.fmt not in ("json", "csv", "text"):
            raise InputError(f"Unknown format {self.fmt}")
        if self.command == "orbit" and not self.point:
            raise InputError("orbit needs --point")
        return self


def print_banner(cfg: RunConfig, A: IntMatrix):
    header(f"🌀 TORUSCOPE :: {cfg.command.upper()}")
    say(f"📐 Matrix ({A.n}x{A.n}): {A.to_json()}", "cyan", attrs=["bold"])
    if cfg.command in ("construct", "verify", "equidist"):
        say(f"📶 Levels: {cfg.levels}   🔲 Grid: {cfg.grid}   ⚙️ Jobs: {cfg.jobs}", "cyan")


# ====================================================================== commands

def cmd_analyze(cfg: RunConfig, A: IntMatrix) -> Tuple[dict, Optional[pd.DataFrame], bool]:
    f = char_poly(A)
    factors = factor_rational(f)
    verdict = is_ergodic(A)
    payload = {
        "matrix": A.to_json(),
        "det": det(A),
        "charpoly": f.to_json(),
        "charpoly_text": str(f),
        "recurrence_coeffs": f.recurrence_coeffs(),
        "disc": discriminant(f),
        "minpoly": minimal_poly(A).to_json(),
        "factors": [{"factor": g.to_json(), "text": str(g), "multiplicity": e} for g, e in factors],
        "irreducible": len(factors) == 1 and factors[0][1] == 1,
        "ergodic": verdict.ergodic,
        "reason": verdict.reason,
        "unity_witness": verdict.witness,
    }
    if verdict.ergodic:
        say("✅ Ergodic", "green")
    else:
        say(f"⚠️ Not ergodic: {verdict.reason}", "yellow")
    return payload, None, True


def cmd_primes(cfg: RunConfig, A: IntMatrix):
    rows, payload = [], {"factors": []}
    for g, e in factor_rational(char_poly(A)):
        certs = find_split_primes(g, cfg.count, scan_cap=cfg.scan_cap, jobs=cfg.jobs)
        payload["factors"].append({"factor": g.to_json(), "multiplicity": e,
                                   "certs": [c.to_json() for c in certs]})
        for c in certs:
            ok = c.verify(g)
            rows.append({"factor": str(g), "p": c.p, "roots": " ".join(map(str, c.roots)),
                         "disc": c.disc, "f0": c.f0, "verified": ok})
            if not ok:
                raise InvariantViolation(f"Split-prime certificate for p = {c.p} does not verify")
    say(f"✅ {len(rows)} split prime certificate(s)", "green")
    return payload, pd.DataFrame(rows), True


def _brute_check(A: IntMatrix, record) -> bool:
    if not certify_period(A, record):
        return False
    if record.points is not None and record.m <= config.BRUTE_VERIFY_DENOMINATOR_MAX:
        _, again = orbit_bruteforce(A, record.base)
        return again.T == record.T and again.d_sq == record.d_sq
    return True


def cmd_construct(cfg: RunConfig, A: IntMatrix):
    construction = GeneralConstruction(A, primes=cfg.primes, jobs=cfg.jobs, scan_cap=cfg.scan_cap)
    built = construction.build_general(cfg.levels)
    ok = True
    if cfg.brute_verify:
        ok = _brute_check(construction.frame_matrix, built.frame_record) and _brute_check(A, built.record)
    payload = {
        "level": cfg.levels,
        "block_levels": built.levels,
        "conjugator": built.conjugator.to_json(),
        "frame_matrix": built.frame_matrix.to_json(),
        "frame_record": built.frame_record.to_json(),
        "record": built.record.to_json(),
        "brute_verified": ok if cfg.brute_verify else None,
    }
    table = pd.concat([records_frame([built.frame_record], "frame"), records_frame([built.record], "A")],
                      ignore_index=True)
    return payload, table, ok


def cmd_verify(cfg: RunConfig, A: IntMatrix):
    sequence = uniform_sequence(A, cfg.levels, primes=cfg.primes, jobs=cfg.jobs, scan_cap=cfg.scan_cap)
    construction = sequence.construction
    rows = []
    all_ok = True
    single = construction.frames[0] if len(construction.frames) == 1 else None

    for frame_name, matrix, records in (("frame", construction.frame_matrix, sequence.frame_records),
                                        ("A", A, sequence.records)):
        table = records_frame(records, frame_name)
        checks = []
        for record in records:
            check = {"packing_ok": packing_bound_check(record), "period_ok": certify_period(matrix, record)}
            # unmaterialized orbits carry only a lower bound for d
            if record.points is not None:
                check["occupancy_ok"] = cell_occupancy_check(record)
                check["density_ok"] = density_bound_check(record, cfg.grid)
            if cfg.brute_verify:
                check["brute_ok"] = _brute_check(matrix, record)
            if frame_name == "frame" and single is not None and single.exponent == 1:
                cert = single.certs[0]
                data = record.prime_data["frames"][0]["blocks"][0]
                wedge = certify_distance_bound(record, companion(single.g), cert.p, data["k"],
                                               strict=False, lift=data["lift"])
                check["wedge_ok"] = wedge.passed
            all_ok = all_ok and all(check.values())
            checks.append(check)
        rows.append(pd.concat([table, pd.DataFrame(checks)], axis=1))

    table = pd.concat(rows, ignore_index=True)
    payload = {"C": sequence.constant, "C_frame": sequence.frame_constant,
               "rows": table.to_dict(orient="records"), "passed": all_ok}
    if all_ok:
        say(f"✅ All checks passed, C = {sequence.constant}", "green", attrs=["bold"])
    else:
        fail("❌ At least one invariant check failed")
    return payload, table, all_ok


def cmd_orbit(cfg: RunConfig, A: IntMatrix):
    x = TorusPoint.parse(cfg.point)
    preperiod, record = orbit_bruteforce(A, x)
    payload = {"point": x.to_json(), "preperiod": preperiod, "record": record.to_json(),
               "points": [list(u) for u in record.points]}
    say(f"🌀 Preperiod {preperiod}, T = {record.T}, d^2 = {record.d_sq}", "cyan")
    return payload, records_frame([record]), True


def cmd_equidist(cfg: RunConfig, A: IntMatrix):
    verdict = is_ergodic(A)
    if not verdict:
        report = nonergodic_scan(A, g=cfg.grid)
        payload = {"ergodic": False, "unity_witness": verdict.witness, "scan": report.to_json()}
        say("⚠️ Non-ergodic input: periodic measures stay away from Lebesgue", "yellow")
        return payload, pd.DataFrame([report.to_json()]), True

    if cfg.levels < 2:
        raise InputError("equidist needs --levels >= 2")
    sequence = uniform_sequence(A, cfg.levels, primes=cfg.primes, jobs=cfg.jobs, scan_cap=cfg.scan_cap)
    tables, payload, ok = [], {"ergodic": True, "grid": cfg.grid}, True
    for frame_name, records in (("frame", sequence.frame_records), ("A", sequence.records)):
        report = convergence_report(records, cfg.grid)
        payload[frame_name] = report.to_json()
        payload[frame_name]["boxes"] = [box_counts(r, cfg.grid).to_json() for r in records]
        tables.append(report.table.assign(frame=frame_name))
        ok = ok and bool(report.table[["density_ok", "occupancy_ok", "packing_ok"]].all().all())
    table = pd.concat(tables, ignore_index=True)
    if cfg.gnuplot:
        write_gnuplot(tables[0], cfg.gnuplot)
        say(f"📈 Gnuplot data written to {cfg.gnuplot}", "green")
    return payload, table, ok


HANDLERS = {
    "analyze": cmd_analyze,
    "primes": cmd_primes,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "orbit": cmd_orbit,
    "equidist": cmd_equidist,
}


# ====================================================================== entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toruscope",
                                     description="Exact periodic orbits of ergodic toral endomorphisms")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("matrix", help="matrix file (JSON rows or text) or inline JSON")
    parser.add_argument("--levels", type=int, default=config.DEFAULT_LEVELS)
    parser.add_argument("--prime", type=int, action="append", default=[], dest="primes",
                        help="split prime to use (repeat for several blocks)")
    parser.add_argument("--count", type=int, default=config.DEFAULT_PRIME_COUNT)
    parser.add_argument("--scan-cap", type=int, default=config.SCAN_CAP)
    parser.add_argument("--grid", type=int, default=config.DEFAULT_GRID)
    parser.add_argument("--format", choices=("json", "csv", "text"), default=config.DEFAULT_FORMAT, dest="fmt")
    parser.add_argument("--out")
    parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    parser.add_argument("--brute-verify", action="store_true")
    parser.add_argument("--point")
    parser.add_argument("--gnuplot")
    parser.add_argument("--quiet", action="store_true")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    if cfg.quiet:
        config.VERBOSE = False
    try:
        cfg.validate()
        A = load_matrix(cfg.matrix)
        print_banner(cfg, A)
        payload, table, ok = HANDLERS[cfg.command](cfg, A)
        emit(render(payload, table, cfg.fmt), cfg.out)
        return config.EXIT_OK if ok else config.EXIT_FALSIFIED
    except NonErgodicError as e:
        fail(f"❌ {e} (witness m = {e.witness})")
        return config.EXIT_INPUT
    except InputError as e:
        fail(f"❌ {e}")
        return config.EXIT_INPUT
    except InvariantViolation as e:
        fail(f"❌ Invariant violated: {e}")
        return config.EXIT_FALSIFIED


if __name__ == "__main__":
    init(autoreset=True)
    sys.exit(run())

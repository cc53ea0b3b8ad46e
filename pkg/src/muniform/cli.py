"""Command-line entry point.

One executable wires together lattice construction, uniformity
verdicts, minimum-weight reports, syndrome tables, the decoherence
benchmark with its rate fit, logical-encoding checks, and the
self-verification suite.

Exit codes: 0 success, 1 a requested check failed, 2 invalid input,
3 a resource cap was hit.

Identical flags and seed produce byte-identical output files, so
wall-clock timing is opt-in (``--timing``). Qubit indices on the
command line and in human-readable text are 1-based; JSON payloads
keep the library's 0-based convention.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import serialize, verify
from .encoding import LogicalEncoding, logical_space_is_m_uniform, minimal_A_search
from .errors import (
    DimensionMismatch,
    InconsistentGroup,
    InvalidInput,
    ResourceCapExceeded,
    UnphysicalNoise,
)
from .lattice import (
    OBC,
    PBC,
    Graph,
    Lattice,
    cluster_generators,
    extended_generators,
    ghz_generators,
    graph_generators,
)
from .noisesim import (
    NoiseModel,
    fit_error_rates,
    pattern_series,
    run_exact,
    sampled_series,
    validate_probe,
)
from .stabilizer import StabilizerGroup
from .syndrome import build_table, parse_syndrome, syndrome_string
from .uniformity import (
    is_m_uniform,
    min_weight_bruteforce,
    min_weight_windowed,
    subset_sweep_check,
)

__all__ = ["main", "build_parser"]


# -- state construction from flags -------------------------------------------


def _read_edge_list(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read graph file: {exc}") from None
    edges = []
    top = -1
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidInput(f"{path}:{num}: expected one 'u v' pair")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidInput(f"{path}:{num}: vertices must be integers") from None
        edges.append((u, v))
        top = max(top, u, v)
    if not edges:
        raise InvalidInput(f"{path}: no edges")
    return Graph(top + 1, tuple(edges))


def _parse_lengths(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InvalidInput(f"bad --L value {text!r}") from None


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("state selection")
    g.add_argument("--lattice", metavar="SPEC",
                   help='lattice JSON (inline or a file path), e.g. '
                        '{"D":2,"lengths":[5,5],"boundary":"pbc"}; '
                        'overrides --D/--L/--pbc/--obc')
    g.add_argument("--D", type=int, metavar="DIM",
                   help="lattice dimension; must match the --L list")
    g.add_argument("--L", metavar="LENS",
                   help="comma-separated side lengths, e.g. 5 or 5,5")
    bc = g.add_mutually_exclusive_group()
    bc.add_argument("--pbc", action="store_true",
                    help="periodic boundaries (default)")
    bc.add_argument("--obc", action="store_true", help="open boundaries")
    g.add_argument("--graph", metavar="FILE",
                   help="graph state from an edge-list file, one 'u v' per line")
    g.add_argument("--family", choices=("cluster", "ghz", "extended"),
                   default="cluster",
                   help="state family (ghz/extended need --n, not --L)")
    g.add_argument("--n", type=int, help="qubit count for --family ghz/extended")
    g.add_argument("--reach", type=int, default=2,
                   help="neighbour reach for --family extended (default 2)")


def _resolve_state(args) -> tuple:
    """Build (generators, group, lattice | None, config) from state flags."""
    periodic = not args.obc
    if args.graph:
        g = _read_edge_list(args.graph)
        gens = graph_generators(g)
        cfg = {"family": "graph", "n": g.n,
               "edges": [list(e) for e in g.edges]}
        return gens, StabilizerGroup.from_generators(gens), None, cfg
    if args.family == "ghz":
        if not args.n:
            raise InvalidInput("--family ghz needs --n")
        gens = ghz_generators(args.n)
        cfg = {"family": "ghz", "n": args.n}
        return gens, StabilizerGroup.from_generators(gens), None, cfg
    if args.family == "extended":
        if not args.n:
            raise InvalidInput("--family extended needs --n")
        gens = extended_generators(args.n, args.reach, periodic)
        lat = Lattice.chain(args.n, periodic)
        cfg = {"family": "extended", "n": args.n, "reach": args.reach,
               "boundary": PBC if periodic else OBC}
        return gens, StabilizerGroup.from_generators(gens), lat, cfg
    if args.lattice:
        spec = args.lattice
        if not spec.lstrip().startswith("{"):
            path = Path(spec)
            if not path.is_file():
                raise InvalidInput(f"lattice spec file not found: {spec}")
            spec = path.read_text()
        lat = Lattice.from_json(spec)
    elif args.L:
        lat = Lattice(_parse_lengths(args.L), PBC if periodic else OBC)
        if args.D is not None and args.D != lat.dim:
            raise InvalidInput("--D disagrees with the --L list")
    else:
        raise InvalidInput(
            "specify a state: --lattice or --L, --graph, or --family ghz/extended with --n"
        )
    gens = cluster_generators(lat)
    cfg = {"family": "cluster", "lattice": json.loads(lat.to_json())}
    return gens, StabilizerGroup.from_generators(gens), lat, cfg


# -- shared emit helpers ------------------------------------------------------


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="FILE", help="write the JSON document here")
    p.add_argument("--json", action="store_true",
                   help="print the JSON document instead of the summary line")


def _emit(args, command: str, config: dict, result, human: str) -> None:
    doc = serialize.result_document(command, config, result)
    text = serialize.dumps_document(doc)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    if getattr(args, "json", False):
        sys.stdout.write(text)
    else:
        print(human)


def _verbose_identity(res) -> str:
    # single weight-1 culprits read "X on qubit 3"; the rest defer to describe()
    if res.kind == "identified" and len(res.errors) == 1:
        e = res.errors[0]
        sites = sorted(e.support())
        if len(sites) == 1:
            q = sites[0]
            letter = {(1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[
                ((e.x >> q) & 1, (e.z >> q) & 1)
            ]
            return f"{letter} on qubit {q + 1}"
    return res.describe()


# -- subcommand handlers ------------------------------------------------------


def _cmd_lattice(args) -> int:
    gens, group, _lat, cfg = _resolve_state(args)
    result = {"n": group.n, "generators": [g.to_string() for g in gens]}
    _emit(args, "lattice", cfg, result,
          f"{group.n} qubits, {len(gens)} generators")
    return 0


def _cmd_uniformity(args) -> int:
    gens, group, lat, cfg = _resolve_state(args)
    cfg.update({"m": args.m, "method": args.method, "threads": args.threads})
    if args.m < 0:
        raise InvalidInput("m must be >= 0")

    if args.method == "sweep":
        cfg["subset_cap"] = args.subset_cap
        ok, witness_sites, checked = subset_sweep_check(
            group, args.m, subset_cap=args.subset_cap)
        result = {"m": args.m, "m_uniform": ok,
                  "witness_subset": list(witness_sites) if witness_sites else None,
                  "subsets_checked": checked}
        if ok:
            human = (f"pass: all {checked} marginals of {args.m} qubits "
                     "are maximally mixed")
        else:
            sites = ", ".join(str(s + 1) for s in witness_sites)
            human = f"fail: the marginal on qubits {sites} is not maximally mixed"
        _emit(args, "uniformity", cfg, result, human)
        return 0 if ok else 1

    stop = args.m if args.early_stop else 0
    if args.method == "brute":
        report = min_weight_bruteforce(group, early_stop=stop,
                                       threads=args.threads)
        ok = report.min_support > args.m
    elif args.method == "windowed":
        if lat is None:
            raise InvalidInput("--method windowed needs a lattice")
        cfg["radius"] = args.radius
        report = min_weight_windowed(group, lat, radius=args.radius,
                                     early_stop=stop)
        ok = report.min_support > args.m
    else:
        cfg["radius"] = args.radius
        ok, report = is_m_uniform(group, args.m, lat=lat, radius=args.radius,
                                  early_stop=args.early_stop,
                                  threads=args.threads)

    result = {"m": args.m, "m_uniform": ok,
              "report": report.to_json_obj(include_timing=args.timing)}
    if ok:
        human = f"pass, d={report.min_support}"
        if report.heuristic:
            human += " (windowed scan: an upper bound on d, not a proof)"
    else:
        witness = report.witness.to_string()
        human = (f"fail, d={report.min_support} <= m={args.m} "
                 f"(witness {witness})")
    _emit(args, "uniformity", cfg, result, human)
    return 0 if ok else 1


def _cmd_minweight(args) -> int:
    gens, group, lat, cfg = _resolve_state(args)
    cfg.update({"method": args.method, "early_stop": args.early_stop,
                "threads": args.threads})
    if args.method == "windowed":
        if lat is None:
            raise InvalidInput("--method windowed needs a lattice")
        cfg["radius"] = args.radius
        report = min_weight_windowed(group, lat, radius=args.radius,
                                     early_stop=args.early_stop)
    else:
        report = min_weight_bruteforce(group, early_stop=args.early_stop,
                                       q_cap=args.q_cap, threads=args.threads)
    human = (f"min support {report.min_support} via {report.method}, "
             f"witness {report.witness.to_string()}")
    if report.heuristic:
        human += " (heuristic: window scan is not exhaustive)"
    if report.early_stopped:
        human += " (early-stopped at the requested bound)"
    _emit(args, "minweight", cfg,
          report.to_json_obj(include_timing=args.timing), human)
    return 0


def _cmd_syndromes(args) -> int:
    gens, group, _lat, cfg = _resolve_state(args)
    qubit = args.assume_qubit - 1 if args.assume_qubit else None
    table = build_table(group, args.t, qubit=qubit)
    cfg.update({"t": table.t, "assume_qubit": args.assume_qubit})
    if args.identify is not None:
        bits = parse_syndrome(args.identify)
        res = table.identify(bits)
        human = _verbose_identity(res)
        result = {
            "syndrome": syndrome_string(bits, group.num_generators),
            "kind": res.kind,
            "errors": [e.to_string() for e in res.errors],
            "description": human,
        }
        _emit(args, "syndromes", cfg, result, human)
        return 0
    human = f"{len(table.entries)} syndromes at support <= {table.t}; " + (
        "pure: each syndrome pins down one error" if table.pure
        else "not pure: some syndromes stay ambiguous")
    _emit(args, "syndromes", cfg, table.to_json_obj(), human)
    return 0


def _parse_delays(text: str) -> tuple:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidInput("delay range must read start:stop:step")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise InvalidInput(f"bad delay range {text!r}") from None
        if step <= 0 or stop < start:
            raise InvalidInput("delay range needs step > 0 and stop >= start")
        count = int(math.floor((stop - start) / step + 1e-9))
        return tuple(start + i * step for i in range(count + 1))
    try:
        delays = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise InvalidInput(f"bad --delays value {text!r}") from None
    if not delays:
        raise InvalidInput("need at least one delay")
    return delays


def _cmd_bench(args) -> int:
    periodic = bool(args.pbc)
    probe = (args.probe - 1) if args.probe else (args.n - 1) // 2
    validate_probe(args.n, probe, periodic, args.allow_edge)
    delays = _parse_delays(args.delays)
    noise = NoiseModel(t1=args.t1, t2=args.t2, readout_p=args.readout,
                       delays=delays, variant=args.variant)
    config = {
        "n": args.n,
        "boundary": PBC if periodic else OBC,
        "t1": args.t1, "t2": args.t2, "readout": args.readout,
        "delays": list(delays),
        "variant": args.variant,
        "probe": probe + 1,
        "engine": "exact" if args.exact else "sampled",
    }
    if args.exact:
        points = run_exact(args.n, noise, probe, periodic=periodic,
                           twirl=args.twirl, allow_edge=args.allow_edge)
        series = pattern_series(points, noise, probe, args.n,
                                periodic=periodic)
        config["twirl"] = args.twirl
    else:
        if args.twirl:
            raise InvalidInput("--twirl only applies to --exact "
                               "(sampling already draws twirled errors)")
        config.update({"shots": args.shots, "seed": args.seed,
                       "realizations": args.realizations})
        series = sampled_series(args.n, noise, probe, args.shots, args.seed,
                                realizations=args.realizations,
                                periodic=periodic,
                                allow_edge=args.allow_edge)
    rows = serialize.series_to_rows(series)
    text = serialize.write_bench_csv(config, rows)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} ({len(rows)} delay points)")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_fit(args) -> int:
    try:
        text = Path(args.csv).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {args.csv}: {exc}") from None
    csv_config, series = serialize.read_bench_csv(text)
    fit = fit_error_rates(series)
    cfg = {"csv": args.csv, "csv_config": csv_config}
    t1 = "T1_est=undefined" if fit.t1_est is None else f"T1_est={fit.t1_est:.6g}"
    t2 = ("T2_est=undefined (nonpositive dephasing slope)"
          if fit.t2_est is None else f"T2_est={fit.t2_est:.6g}")
    _emit(args, "fit", cfg, fit, f"{t1}, {t2}")
    return 0


def _parse_sites(text: str, n: int) -> tuple:
    try:
        raw = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InvalidInput(f"bad site list {text!r}") from None
    for s in raw:
        if not 1 <= s <= n:
            raise InvalidInput(f"site {s} outside 1..{n}")
    if len(set(raw)) != len(raw):
        raise InvalidInput("site list repeats a qubit")
    return tuple(sorted(s - 1 for s in raw))


def _parse_amplitude(text: str) -> complex:
    try:
        return complex(text)
    except ValueError:
        raise InvalidInput(f"bad amplitude {text!r}") from None


def _cmd_encode(args) -> int:
    gens, group, lat, cfg = _resolve_state(args)
    cfg.update({"m": args.m, "threads": args.threads})
    if args.minimal:
        if lat is None:
            raise InvalidInput("--minimal needs a lattice")
        cfg.update({"minimal": True, "region_family": args.region_family})
        found = minimal_A_search(lat, args.m, family=args.region_family,
                                 threads=args.threads)
        if found.size is None:
            human = (f"no region supports an m={args.m} logical space "
                     f"({found.checked} candidates checked)")
        else:
            sites = ",".join(str(s + 1) for s in found.sites)
            human = (f"minimal region: {found.size} sites ({sites}), "
                     f"{found.checked} candidates checked")
        _emit(args, "encode", cfg, found, human)
        return 0
    if not args.A:
        raise InvalidInput("pass --A with a 1-based site list, or --minimal")
    sites = _parse_sites(args.A, group.n)
    alpha = _parse_amplitude(args.alpha)
    beta = _parse_amplitude(args.beta)
    enc = LogicalEncoding(group, sites, alpha, beta)
    ok, group_report, coset_report = logical_space_is_m_uniform(
        enc, args.m, threads=args.threads)
    cfg.update({"A": [s + 1 for s in sites], "alpha": alpha, "beta": beta})
    result = {
        "m": args.m,
        "m_uniform": ok,
        "group_report": group_report.to_json_obj(include_timing=args.timing),
        "coset_report": coset_report.to_json_obj(include_timing=args.timing),
    }
    floors = (f"group floor {group_report.min_support}, "
              f"coset floor {coset_report.min_support}")
    human = (f"pass: logical space is {args.m}-uniform ({floors})" if ok
             else f"fail: logical space is not {args.m}-uniform ({floors})")
    _emit(args, "encode", cfg, result, human)
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = sorted({int(tok) for tok in args.criteria.split(",")})
        except ValueError:
            raise InvalidInput(f"bad --criteria value {args.criteria!r}") from None
    results = verify.run_all(numbers, threads=args.threads)
    print(verify.render_table(results))
    if args.artifacts:
        doc = serialize.result_document(
            "verify", {"criteria": numbers, "threads": args.threads},
            [r.to_json_obj() for r in results])
        Path(args.artifacts).write_text(serialize.dumps_document(doc))
    return 0 if all(r.passed for r in results) else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muniform",
        description="Uniformity, syndrome, and decoherence-benchmark tools "
                    "for cluster and graph stabilizer states.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("lattice", help="emit the stabilizer generators")
    _add_state_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_lattice)

    p = sub.add_parser("uniformity", help="decide m-uniformity")
    _add_state_flags(p)
    _add_output_flags(p)
    p.add_argument("--m", type=int, required=True,
                   help="marginal size to certify")
    p.add_argument("--method", choices=("auto", "brute", "windowed", "sweep"),
                   default="auto")
    p.add_argument("--radius", type=int, default=4,
                   help="window radius for the windowed search")
    p.add_argument("--early-stop", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="stop at the first element of support <= m")
    p.add_argument("--subset-cap", type=int, default=2_000_000,
                   help="subset count cap for --method sweep")
    p.add_argument("--threads", type=int)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock times (breaks byte-identity)")
    p.set_defaults(handler=_cmd_uniformity)

    p = sub.add_parser("minweight", help="report the minimum support weight")
    _add_state_flags(p)
    _add_output_flags(p)
    p.add_argument("--method", choices=("brute", "windowed"), default="brute")
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--early-stop", type=int, default=0, metavar="W",
                   help="stop once an element of support <= W turns up")
    p.add_argument("--q-cap", type=int, default=30,
                   help="refuse brute force beyond 2^q elements")
    p.add_argument("--threads", type=int)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock times (breaks byte-identity)")
    p.set_defaults(handler=_cmd_minweight)

    p = sub.add_parser("syndromes",
                       help="build the syndrome table or identify one syndrome")
    _add_state_flags(p)
    _add_output_flags(p)
    p.add_argument("--t", type=int, default=1,
                   help="max error support to tabulate (default 1)")
    p.add_argument("--assume-qubit", type=int, metavar="Q",
                   help="restrict errors to X/Y/Z on 1-based qubit Q")
    p.add_argument("--identify", metavar="BITS",
                   help="look up one syndrome bitstring, e.g. 01010")
    p.set_defaults(handler=_cmd_syndromes)

    p = sub.add_parser("bench", help="simulate the decoherence benchmark")
    p.add_argument("--n", type=int, required=True, help="chain length")
    bc = p.add_mutually_exclusive_group()
    bc.add_argument("--obc", action="store_true",
                    help="open chain (default for bench)")
    bc.add_argument("--pbc", action="store_true", help="closed ring")
    p.add_argument("--t1", type=float, required=True,
                   help="relaxation time, same unit as --delays")
    p.add_argument("--t2", type=float, required=True,
                   help="dephasing time, at most 2*T1")
    p.add_argument("--readout", type=float, default=0.0,
                   help="independent readout flip probability")
    p.add_argument("--delays", default="0:400:20",
                   help="start:stop:step (inclusive) or a comma list")
    p.add_argument("--shots", type=int, default=20000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--realizations", type=int, default=1,
                   help="independent seeded runs to average")
    p.add_argument("--variant", choices=("zxz", "xzx"), default="zxz")
    p.add_argument("--probe", type=int, metavar="Q",
                   help="1-based probed qubit (default: middle)")
    p.add_argument("--allow-edge", action="store_true",
                   help="permit a boundary probe on the open chain")
    p.add_argument("--exact", action="store_true",
                   help="exact density-matrix engine instead of sampling")
    p.add_argument("--twirl", action="store_true",
                   help="with --exact: use the twirled error channel")
    p.add_argument("--out", metavar="FILE",
                   help="write CSV here (default: stdout)")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("fit", help="fit decay rates from a bench CSV")
    p.add_argument("csv", help="CSV file produced by the bench subcommand")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("encode", help="check a logical encoding on a region")
    _add_state_flags(p)
    _add_output_flags(p)
    p.add_argument("--A", metavar="SITES",
                   help="1-based comma list of region sites, e.g. 3,4,5")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", default=repr(math.sqrt(0.5)),
                   help="logical 0 amplitude (python complex literal)")
    p.add_argument("--beta", default=repr(math.sqrt(0.5)),
                   help="logical 1 amplitude (python complex literal)")
    p.add_argument("--minimal", action="store_true",
                   help="search the smallest viable region instead")
    p.add_argument("--region-family", choices=("contiguous", "all"),
                   default="contiguous",
                   help="candidate regions for --minimal")
    p.add_argument("--threads", type=int)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock times (breaks byte-identity)")
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("verify",
                       help="run the built-in claims suite and print a table")
    p.add_argument("--criteria", metavar="NUMS",
                   help="comma list of criteria to run (default: all)")
    p.add_argument("--artifacts", metavar="FILE",
                   help="dump full per-criterion results as JSON")
    p.add_argument("--threads", type=int)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (InvalidInput, UnphysicalNoise, DimensionMismatch,
            InconsistentGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

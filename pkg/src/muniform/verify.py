"""Claim-by-claim verification suite behind the `verify` subcommand.

Each criterion function reproduces one headline numerical claim from
scratch and returns a CriterionResult with its sub-checks and a
JSON-serializable artifact payload. Failures are reported, never
masked: a criterion that does not hold at the stated parameters says so
with the measured numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .encoding import LogicalEncoding, encode_statevector, logical_space_is_m_uniform, minimal_A_search
from .lattice import Graph, Lattice, cluster_generators, extended_generators, ghz_generators, graph_generators
from .errors import InvalidInput
from .noisesim import (
    NoiseModel,
    fit_error_rates,
    pattern_series,
    probe_patterns,
    protocol_generators,
    run_exact,
    run_sampled,
    sampled_series,
    small_t_slope,
)
from .serialize import dumps_document, result_document, series_to_rows, write_bench_csv
from .stabilizer import StabilizerGroup, reduced_density_matrix, state_vector
from .syndrome import build_table, parse_syndrome, syndrome, syndrome_string
from .uniformity import is_m_uniform, min_weight_bruteforce, min_weight_windowed
from .pauli import from_sites, single

__all__ = ["CriterionResult", "run_all", "render_table", "CRITERIA"]

BENCH_SEED = 7
BENCH_SHOTS = 20_000
BENCH_REALIZATIONS = 5


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)   # (bool, str) pairs
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks)

    def check(self, ok: bool, text: str):
        self.checks.append((bool(ok), text))

    def summary_line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title}"

    def to_json_obj(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "checks": [{"ok": ok, "text": text} for ok, text in self.checks],
            "artifacts": self.artifacts,
        }


def _ring_group(n: int) -> StabilizerGroup:
    return StabilizerGroup.from_generators(
        cluster_generators(Lattice.chain(n, periodic=True))
    )


def _grid_group(dim: int, length: int):
    lat = Lattice.hypercube(dim, length, periodic=True)
    return StabilizerGroup.from_generators(cluster_generators(lat)), lat


def criterion_1(threads=None) -> CriterionResult:
    res = CriterionResult(1, "3-qubit ring worked example")
    group = _ring_group(3)
    elements = list(group.enumerate_elements())
    strings = sorted(e.to_string() for e in elements)
    res.check(len(elements) == 8, f"group enumerates {len(elements)} elements (want 8)")
    res.check("-XXX" in strings, "contains -XXX")

    sub = group.restrict_to_subset([0, 2])
    sub_strings = sorted(e.to_string() for e in sub.enumerate_elements())
    res.check(sub_strings == ["+III", "+YIY"],
              f"subgroup on qubits {{1,3}} is {{I, Y1Y3}} (got {sub_strings})")

    rdm = reduced_density_matrix(group, [0, 2]).matrix
    yy = np.kron(
        np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
    )
    target = (np.eye(4) + yy) / 4.0
    dev = float(np.max(np.abs(rdm - target)))
    res.check(dev < 1e-12, f"reduced state on qubits {{1,3}} matches (I+YY)/4, dev={dev:.2e}")

    ok1, _ = is_m_uniform(group, 1, threads=threads)
    ok2, _ = is_m_uniform(group, 2, threads=threads)
    res.check(ok1 and not ok2, f"1-uniform={ok1}, 2-uniform={ok2} (want True, False)")
    res.artifacts = {"elements": strings, "rdm_deviation": dev}
    return res


def criterion_2(threads=None) -> CriterionResult:
    res = CriterionResult(2, "cluster distances in 1D/2D/3D")
    ring_d = {}
    for n in range(5, 25):
        ring_d[n] = min_weight_bruteforce(_ring_group(n), early_stop=0,
                                          threads=threads).min_support
    res.check(all(d == 3 for d in ring_d.values()),
              f"1D rings n=5..24 all have min weight 3 (got {sorted(set(ring_d.values()))})")

    group55, lat55 = _grid_group(2, 5)
    brute55 = min_weight_bruteforce(group55, threads=threads).min_support
    win55 = min_weight_windowed(group55, lat55).min_support
    res.check(brute55 == 5, f"2D 5x5 brute-force min weight {brute55} (want 5)")
    res.check(win55 == brute55, f"2D 5x5 windowed agrees with brute force ({win55})")

    grid_d = {}
    for L in (6, 8):
        group, lat = _grid_group(2, L)
        grid_d[L] = min_weight_windowed(group, lat).min_support
    res.check(grid_d == {6: 5, 8: 5},
              f"2D 6x6 and 8x8 windowed min weight {grid_d} (want 5)")

    group3, lat3 = _grid_group(3, 5)
    d3 = min_weight_windowed(group3, lat3).min_support
    res.check(d3 == 7, f"3D 5x5x5 windowed min weight {d3} (want 7)")
    res.artifacts = {"ring": ring_d, "grid": grid_d, "cube5": d3,
                     "grid55": {"brute": brute55, "windowed": win55}}
    return res


def criterion_3(threads=None) -> CriterionResult:
    res = CriterionResult(3, "finite-size exceptions below the threshold")
    d3 = min_weight_bruteforce(_ring_group(3), threads=threads).min_support
    d4 = min_weight_bruteforce(_ring_group(4), threads=threads).min_support
    res.check(d3 == 2, f"1D n=3 ring min weight {d3} (want 2)")
    res.check(d4 == 2, f"1D n=4 ring min weight {d4} (want 2)")
    group44, _ = _grid_group(2, 4)
    d44 = min_weight_bruteforce(group44, threads=threads).min_support
    res.check(d44 < 5, f"2D 4x4 min weight {d44} (want < 5)")
    res.artifacts = {"ring3": d3, "ring4": d4, "grid44": d44}
    return res


def criterion_4(threads=None) -> CriterionResult:
    res = CriterionResult(4, "reach-2 chain states")
    dist = {}
    for n in range(10, 21):
        group = StabilizerGroup.from_generators(extended_generators(n, 2))
        dist[n] = min_weight_bruteforce(group, threads=threads).min_support
    res.check(all(d == 4 for d in dist.values()),
              f"reach-2 rings n=10..20 all have min weight 4 (got {sorted(set(dist.values()))})")
    reach1 = StabilizerGroup.from_generators(extended_generators(10, 1))
    d1 = min_weight_bruteforce(reach1, threads=threads).min_support
    res.check(d1 == 3, f"reach-1 ring reduces to the nearest-neighbor value {d1} (want 3)")
    res.artifacts = {"reach2": dist, "reach1_n10": d1}
    return res


def criterion_5(threads=None) -> CriterionResult:
    res = CriterionResult(5, "GHZ control states")
    outcomes = {}
    for n in range(3, 11):
        group = StabilizerGroup.from_generators(ghz_generators(n))
        report = min_weight_bruteforce(group, threads=threads)
        ok1, _ = is_m_uniform(group, 1, threads=threads)
        outcomes[n] = (report.min_support, ok1)
        if n == 3:
            res.artifacts["witness_n3"] = report.witness.to_string()
    res.check(all(v == (2, True) for v in outcomes.values()),
              f"GHZ n=3..10: weight-2 witness and 1-uniformity everywhere (got {outcomes})")
    res.artifacts["outcomes"] = {str(k): list(v) for k, v in outcomes.items()}
    return res


def _partial_trace_projector(psi: np.ndarray, n: int, keep) -> np.ndarray:
    """Reduced state of |psi><psi| by axis permutation (verify-side oracle)."""
    keep = sorted(keep)
    drop = [q for q in range(n) if q not in keep]
    tensor = psi.reshape((2,) * n)
    perm = [n - 1 - q for q in sorted(keep, reverse=True)]
    perm += [n - 1 - q for q in sorted(drop, reverse=True)]
    arr = np.transpose(tensor, perm).reshape(1 << len(keep), 1 << len(drop))
    return arr @ arr.conj().T


def _random_graph_group(rng, n: int) -> StabilizerGroup:
    edges = set()
    for v in range(1, n):
        edges.add((int(rng.integers(0, v)), v))
    for _ in range(n):
        a, b = rng.choice(n, size=2, replace=False)
        edges.add((int(min(a, b)), int(max(a, b))))
    graph = Graph(n, sorted(edges))
    return StabilizerGroup.from_generators(graph_generators(graph))


def criterion_6(threads=None) -> CriterionResult:
    res = CriterionResult(6, "reduced-state oracle equivalence")
    rng = np.random.default_rng(BENCH_SEED)
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(3, 11))
        group = _random_graph_group(rng, n)
        size = int(rng.integers(1, min(n, 11)))
        sites = sorted(rng.choice(n, size=size, replace=False).tolist())
        got = reduced_density_matrix(group, sites).matrix
        want = _partial_trace_projector(state_vector(group), n, sites)
        worst = max(worst, float(np.max(np.abs(got - want))))
    res.check(worst < 1e-10,
              f"30 random reduced states match the traced projector, worst dev {worst:.2e}")

    proj_worst = 0.0
    for n in range(3, 7):
        group = _ring_group(n)
        psi = state_vector(group)
        acc = np.zeros((1 << n, 1 << n), dtype=complex)
        for el in group.enumerate_elements():
            acc += el.dense()
        acc /= 1 << n
        proj_worst = max(proj_worst, float(np.max(np.abs(acc - np.outer(psi, psi.conj())))))
    res.check(proj_worst < 1e-10,
              f"group-average projector identity holds at n=3..6, worst dev {proj_worst:.2e}")
    res.artifacts = {"rdm_worst": worst, "projector_worst": proj_worst}
    return res


def criterion_7(threads=None) -> CriterionResult:
    res = CriterionResult(7, "syndrome identification")
    ring5 = _ring_group(5)
    table = build_table(ring5, 1)
    n_syn = len(table.entries)
    res.check(table.pure and n_syn == 15,
              f"ring n=5: 15 single-qubit errors give {n_syn} distinct syndromes, pure={table.pure}")

    pats = {
        "Z": syndrome_string(syndrome(ring5, single(5, 2, "Z")), 5),
        "X": syndrome_string(syndrome(ring5, single(5, 2, "X")), 5),
        "Y": syndrome_string(syndrome(ring5, single(5, 2, "Y")), 5),
    }
    res.check(pats == {"Z": "00100", "X": "01010", "Y": "01110"},
              f"middle-qubit patterns {pats} (want Z=00100, X=01010, Y=01110)")

    obc = StabilizerGroup.from_generators(
        cluster_generators(Lattice.chain(5, periodic=False))
    )
    obc_table = build_table(obc, 1)
    hits = obc_table.identify(parse_syndrome("01000"))
    names = sorted(e.to_string() for e in hits.errors)
    res.check(
        not obc_table.pure and hits.kind == "ambiguous" and names == ["+IZIII", "+XIIII"],
        f"open chain: 01000 is ambiguous between X1 and Z2 (got {hits.kind}: {names}), pure={obc_table.pure}",
    )

    grid, _ = _grid_group(2, 5)
    t2 = build_table(grid, 2)
    res.check(t2.pure, f"2D 5x5: weight<=2 table pure={t2.pure} (want True)")
    res.artifacts = {"ring5": table.to_json_obj(), "patterns": pats,
                     "obc_pure": obc_table.pure, "grid_pure": t2.pure}
    return res


def _bench_series(variant: str):
    delays = tuple(float(t) for t in range(0, 401, 20))
    noise = NoiseModel(t1=100.0, t2=30.0, readout_p=0.02, delays=delays,
                       variant=variant)
    series = sampled_series(5, noise, 2, BENCH_SHOTS, BENCH_SEED,
                            realizations=BENCH_REALIZATIONS)
    return noise, series, BENCH_REALIZATIONS * BENCH_SHOTS


def criterion_8(threads=None) -> CriterionResult:
    res = CriterionResult(8, "noise benchmark slope/intercept structure")
    noise, series, total = _bench_series("zxz")
    fit = fit_error_rates(series)
    sl, ic = fit.slopes, fit.intercepts

    res.check(sl["z"] > sl["x"] and sl["z"] > sl["y"],
              f"slope ordering: z={sl['z']:.3e} vs x={sl['x']:.3e}, y={sl['y']:.3e} "
              "(the 0..400 grid saturates dephasing, so the z slope can go negative)")

    rate = small_t_slope(5, noise, 2)
    t2_eff = 1.0 / rate
    if fit.t2_est is None:
        res.check(False,
                  f"T2 estimate undefined (z slope {sl['z']:.3e} <= 0); small-t reference {t2_eff:.1f}")
    else:
        ratio = fit.t2_est / t2_eff
        res.check(0.5 <= ratio <= 2.0,
                  f"T2_est {fit.t2_est:.1f} vs small-t reference {t2_eff:.1f} (ratio {ratio:.2f})")

    lo, hi = 0.5 * noise.readout_p, 2 * noise.readout_p
    res.check(lo <= ic["z"] <= hi and ic["x"] < 0.25 * ic["z"],
              f"intercepts: z={ic['z']:.4f} in [{lo},{hi}], x={ic['x']:.4f} < {0.25 * ic['z']:.4f}")

    noise_x, series_x, _ = _bench_series("xzx")
    fit_x = fit_error_rates(series_x)
    res.check(ic["z"] > ic["x"] and fit_x.intercepts["x"] > fit_x.intercepts["z"],
              f"conjugated variant swaps intercepts: zxz z/x = {ic['z']:.4f}/{ic['x']:.4f}, "
              f"xzx z/x = {fit_x.intercepts['z']:.4f}/{fit_x.intercepts['x']:.4f}")

    worst_sigma = 0.0
    for nm, s in ((noise, series), (noise_x, series_x)):
        exact = run_exact(5, nm, 2, twirl=True)
        e = pattern_series(exact, nm, 2, 5)
        for key in ("x", "y", "z"):
            p = e[key]
            sigma = np.sqrt(np.clip(p * (1 - p), 1e-18, None) / total)
            worst_sigma = max(worst_sigma, float(np.max(np.abs(s[key] - p) / sigma)))
    res.check(worst_sigma < 5.0,
              f"sampled frequencies within 5 binomial sigma of exact (worst {worst_sigma:.2f})")

    res.artifacts = {
        "zxz": {"fit": fit.to_json_obj(), "rows": series_to_rows(series)},
        "xzx": {"fit": fit_x.to_json_obj()},
        "small_t_reference_time": t2_eff,
        "worst_sampler_sigma": worst_sigma,
    }
    return res


def criterion_9(threads=None) -> CriterionResult:
    res = CriterionResult(9, "encoded-space uniformity bound")
    ring20 = _ring_group(20)
    enc7 = LogicalEncoding(ring20, tuple(range(2, 9)))
    ok7, grp, coset = logical_space_is_m_uniform(enc7, 2, threads=threads)
    res.check(ok7 and grp.min_support > 2 and coset.min_support > 2,
              f"7-site window on the 20-ring: group floor {grp.min_support}, "
              f"flip-coset floor {coset.min_support} (both want > 2)")

    fails = {}
    for size in (1, 2):
        enc = LogicalEncoding(ring20, tuple(range(size)))
        fails[size], _, _ = logical_space_is_m_uniform(enc, 2, threads=threads)
    res.check(not fails[1] and not fails[2],
              f"1- and 2-site regions fail as required (got {fails})")

    rng = np.random.default_rng(BENCH_SEED)
    worst = 0.0
    for lat in (Lattice.chain(8, periodic=True), Lattice.chain(7, periodic=False)):
        group = StabilizerGroup.from_generators(cluster_generators(lat))
        for _ in range(10):
            size = int(rng.integers(1, lat.n + 1))
            sites = tuple(sorted(rng.choice(lat.n, size=size, replace=False).tolist()))
            a = rng.normal() + 1j * rng.normal()
            b = rng.normal() + 1j * rng.normal()
            norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
            out = encode_statevector(LogicalEncoding(group, sites, a / norm, b / norm))
            worst = max(worst, float(np.max(np.abs(out.circuit - out.formula))))
    res.check(worst < 1e-12,
              f"circuit and formula states agree on 20 random encodings, worst dev {worst:.2e}")

    minimal = minimal_A_search(Lattice.chain(20, periodic=True), 2, threads=threads)
    res.check(minimal.size is not None and minimal.size <= 7,
              f"minimal contiguous region size {minimal.size} (bound wants <= 7)")
    res.artifacts = {
        "window7": {"group_floor": grp.min_support, "coset_floor": coset.min_support},
        "encode_worst": worst,
        "minimal": minimal.to_json_obj(),
    }
    return res


def criterion_10(threads=None) -> CriterionResult:
    res = CriterionResult(10, "seeded reruns are byte-identical")

    def bench_bytes():
        delays = tuple(float(t) for t in range(0, 401, 40))
        noise = NoiseModel(t1=100.0, t2=30.0, readout_p=0.02, delays=delays)
        counts = run_sampled(5, noise, 2000, BENCH_SEED)
        series = pattern_series(counts, noise, 2, 5)
        cfg = {"n": 5, "seed": BENCH_SEED, "shots": 2000, "variant": "zxz"}
        return write_bench_csv(cfg, series_to_rows(series))

    def minweight_bytes():
        report = min_weight_bruteforce(_ring_group(12), threads=threads)
        return dumps_document(result_document(
            "minweight", {"D": 1, "L": 12, "pbc": True},
            report.to_json_obj(include_timing=False),
        ))

    def table_bytes():
        return dumps_document(result_document(
            "syndromes", {"D": 1, "L": 5, "pbc": True, "t": 1},
            build_table(_ring_group(5), 1).to_json_obj(),
        ))

    def encode_bytes():
        return dumps_document(result_document(
            "encode", {"D": 1, "L": 12, "pbc": True, "m": 2},
            minimal_A_search(Lattice.chain(12, periodic=True), 2,
                             threads=threads).to_json_obj(),
        ))

    for name, maker in (("bench csv", bench_bytes), ("minweight json", minweight_bytes),
                        ("syndrome json", table_bytes), ("encode json", encode_bytes)):
        first = maker()
        second = maker()
        res.check(first == second, f"{name}: rerun reproduces {len(first)} bytes exactly")
    return res


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_all(numbers=None, threads=None) -> list:
    selected = sorted(CRITERIA) if numbers is None else sorted(set(numbers))
    results = []
    for num in selected:
        if num not in CRITERIA:
            raise InvalidInput(f"no criterion {num}")
        results.append(CRITERIA[num](threads=threads))
    return results


def render_table(results) -> str:
    lines = [r.summary_line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)

"""Minimum nonidentity weight of stabilizer groups, three ways.

A state is m-uniform (every m-qubit marginal maximally mixed) exactly
when no nonidentity group element has support of size <= m, so all
checks here reduce to weight minimization:

* brute force: Gray-code walk over all 2^q products, one generator
  multiply per step, bit-packed popcounts;
* windowed: depth-first search over generator subsets whose lattice
  centers lie pairwise within a Hamming radius. Exhaustive for the
  low-weight elements of nearest-neighbor lattice groups (a product
  whose sites nearly all cancel needs its centers packed together);
* subset sweep: GF(2) kernel test per qubit subset, no enumeration.

Windowed results carry a `heuristic` flag unless the group is a fully
periodic nearest-neighbor lattice family with every axis >= 8, where
the pairwise-radius-4 argument is known to cover everything lighter
than a single generator.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import gf2, kernels
from .errors import DimensionMismatch, InvalidInput, ResourceCapExceeded
from .lattice import Lattice
from .pauli import PauliString
from .stabilizer import StabilizerGroup

__all__ = [
    "WeightReport",
    "min_weight_bruteforce",
    "min_weight_windowed",
    "coset_min_weight",
    "is_m_uniform",
    "subset_sweep_check",
]

BRUTE_Q_CAP = 30
PARALLEL_THRESHOLD = 1 << 24
CHUNK = 1 << 22
SWEEP_SUBSET_CAP = 2_000_000
DEFAULT_WINDOW_RADIUS = 4


@dataclass
class WeightReport:
    """Outcome of a weight scan."""

    min_support: int
    witness: PauliString
    method: str
    elements_scanned: int
    wall_time: float
    heuristic: bool = False
    early_stopped: bool = False
    generator_mask: int = field(default=0, repr=False)

    def to_json_obj(self, include_timing: bool = True) -> dict:
        out = {
            "min_support": self.min_support,
            "witness": self.witness.to_string(),
            "method": self.method,
            "elements_scanned": self.elements_scanned,
            "heuristic": self.heuristic,
            "early_stopped": self.early_stopped,
        }
        if include_timing:
            out["wall_time_s"] = self.wall_time
        return out


def resolve_threads(threads: int | None = None) -> int:
    if threads is not None:
        if threads < 1:
            raise InvalidInput("thread count must be >= 1")
        return threads
    env = os.environ.get("MUNIFORM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidInput(f"bad MUNIFORM_THREADS value {env!r}") from None
    return os.cpu_count() or 1


def _bits(group: StabilizerGroup) -> tuple:
    gx = [g.x for g in group.generators]
    gz = [g.z for g in group.generators]
    return gx, gz


def _merge(results):
    best = None
    scanned = 0
    for w, mask, s in results:
        scanned += s
        if mask < 0:
            continue
        if best is None or (w, mask) < best:
            best = (w, mask)
    if best is None:
        raise InvalidInput("scan produced no elements")
    return best[0], best[1], scanned


def _scan_range(group, seed_x, seed_z, start, stop, early_stop, threads):
    gx, gz = _bits(group)
    n = group.n
    span = stop - start
    if span > PARALLEL_THRESHOLD:
        bounds = list(range(start, stop, CHUNK)) + [stop]
        jobs = [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]
        workers = min(resolve_threads(threads), len(jobs))
        if workers > 1 and kernels.BACKEND == "compiled":
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(
                    pool.map(
                        lambda ab: kernels.min_weight_scan(
                            gx, gz, n, seed_x, seed_z, ab[0], ab[1], early_stop
                        ),
                        jobs,
                    )
                )
        else:
            results = []
            for a, b in jobs:
                res = kernels.min_weight_scan(gx, gz, n, seed_x, seed_z, a, b, early_stop)
                results.append(res)
                if early_stop and res[0] <= early_stop and res[1] >= 0:
                    break
        return _merge(results)
    return _merge([kernels.min_weight_scan(gx, gz, n, seed_x, seed_z, start, stop, early_stop)])


def min_weight_bruteforce(group: StabilizerGroup, *, early_stop: int = 0,
                          q_cap: int = BRUTE_Q_CAP, threads: int | None = None) -> WeightReport:
    """Exact minimum weight by scanning all 2^q - 1 nonidentity elements."""
    q = group.num_generators
    if q == 0:
        raise InvalidInput("group has no generators")
    if q > q_cap:
        raise ResourceCapExceeded(f"brute force needs 2^{q} > 2^{q_cap} products")
    t0 = time.perf_counter()
    w, mask, scanned = _scan_range(group, 0, 0, 1, 1 << q, early_stop, threads)
    witness = group.element(mask)
    if witness.weight() != w:
        raise AssertionError("scan result does not match witness weight")
    return WeightReport(
        min_support=w,
        witness=witness,
        method="brute",
        elements_scanned=scanned,
        wall_time=time.perf_counter() - t0,
        early_stopped=bool(early_stop and w <= early_stop and scanned < (1 << q) - 1),
        generator_mask=mask,
    )


def _lattice_centers(group: StabilizerGroup, lat: Lattice):
    """Require generator i to put its only X on vertex i."""
    if group.num_generators != lat.n or group.n != lat.n:
        raise DimensionMismatch("need one generator per lattice vertex")
    for i, g in enumerate(group.generators):
        if g.x != (1 << i):
            raise InvalidInput(
                f"generator {i} is not centered on vertex {i}; windowed search "
                "applies to vertex-centered lattice groups"
            )


def _is_nearest_neighbor(group: StabilizerGroup, lat: Lattice) -> bool:
    for i, g in enumerate(group.generators):
        z_sites = {j for j in range(lat.n) if (g.z >> j) & 1}
        if z_sites != set(lat.neighbors(i)) or (g.z >> i) & 1:
            return False
    return True


def min_weight_windowed(group: StabilizerGroup, lat: Lattice, *,
                        radius: int = DEFAULT_WINDOW_RADIUS,
                        early_stop: int = 0) -> WeightReport:
    """Minimum weight via products of lattice-neighboring generators.

    Only subsets of generators whose centers sit pairwise within
    `radius` lattice steps are multiplied out. Radius 0 degenerates to
    scanning single generators.
    """
    _lattice_centers(group, lat)
    if radius < 0:
        raise InvalidInput("radius must be >= 0")
    t0 = time.perf_counter()
    n = lat.n
    balls = []
    for v in range(n):
        mask = 0
        for w in range(n):
            if lat.hamming(v, w) <= radius:
                mask |= 1 << w
        balls.append(mask)
    gx, gz = _bits(group)
    best_w, mask, scanned = kernels.windowed_scan(
        gx, gz, n, balls, n, early_stop, n + 1
    )
    if mask < 0:
        raise InvalidInput("windowed scan found no elements")
    witness = group.element(mask)
    if witness.weight() != best_w:
        raise AssertionError("windowed result does not match witness weight")
    sound = (
        _is_nearest_neighbor(group, lat)
        and lat.all_periodic
        and min(lat.lengths) >= 8
        and radius >= DEFAULT_WINDOW_RADIUS
    )
    return WeightReport(
        min_support=best_w,
        witness=witness,
        method="windowed",
        elements_scanned=scanned,
        wall_time=time.perf_counter() - t0,
        heuristic=not sound,
        early_stopped=bool(early_stop and best_w <= early_stop),
        generator_mask=mask,
    )


def coset_min_weight(group: StabilizerGroup, label: PauliString, *,
                     early_stop: int = 0, q_cap: int = BRUTE_Q_CAP,
                     threads: int | None = None) -> WeightReport:
    """Minimum weight over the coset {label * g : g in group}.

    If label's bit pattern already lies in the group's span the minimum
    is 0 and the witness is the identity-bits element of the coset.
    """
    if label.n != group.n:
        raise DimensionMismatch("label width disagrees with group")
    q = group.num_generators
    if q > q_cap:
        raise ResourceCapExceeded(f"coset scan needs 2^{q} > 2^{q_cap} products")
    t0 = time.perf_counter()
    phase = group.membership_phase(label)
    if phase is not None:
        rows = [g.x | (g.z << group.n) for g in group.generators]
        mask = gf2.in_rowspan(label.x | (label.z << group.n), rows) or 0
        witness = label * group.element(mask)
        return WeightReport(
            min_support=0,
            witness=witness,
            method="brute",
            elements_scanned=1,
            wall_time=time.perf_counter() - t0,
            generator_mask=mask,
        )
    w, mask, scanned = _scan_range(group, label.x, label.z, 0, 1 << q, early_stop, threads)
    witness = label * group.element(mask)
    if witness.weight() != w:
        raise AssertionError("coset scan result does not match witness weight")
    return WeightReport(
        min_support=w,
        witness=witness,
        method="brute",
        elements_scanned=scanned,
        wall_time=time.perf_counter() - t0,
        early_stopped=bool(early_stop and w <= early_stop and scanned < (1 << q)),
        generator_mask=mask,
    )


def is_m_uniform(group: StabilizerGroup, m: int, *, lat: Lattice | None = None,
                 radius: int = DEFAULT_WINDOW_RADIUS, early_stop: bool = True,
                 threads: int | None = None) -> tuple:
    """Decide whether every m-qubit marginal is maximally mixed.

    Uses brute force when 2^q is affordable, otherwise the windowed
    search (which then needs the lattice). With `early_stop` the scan
    ends at the first counterexample of weight <= m.
    """
    if m < 0:
        raise InvalidInput("m must be >= 0")
    target = m if early_stop else 0
    if group.num_generators <= BRUTE_Q_CAP:
        report = min_weight_bruteforce(group, early_stop=target, threads=threads)
    else:
        if lat is None:
            raise ResourceCapExceeded(
                f"2^{group.num_generators} products exceed the brute-force cap; "
                "pass a lattice to enable the windowed search"
            )
        report = min_weight_windowed(group, lat, radius=radius, early_stop=target)
    return report.min_support > m, report


def subset_sweep_check(group: StabilizerGroup, m: int, *,
                       subset_cap: int = SWEEP_SUBSET_CAP) -> tuple:
    """Directly test that no nonidentity element fits in any m qubits.

    For each subset A of size m the elements supported inside A form
    the kernel of the generator map restricted to the complement;
    m-uniformity means every such kernel is trivial. Returns
    (verdict, first_failing_subset_or_None, subsets_checked).
    """
    n = group.n
    if m < 0:
        raise InvalidInput("m must be >= 0")
    if m == 0:
        return True, None, 0
    if m > n:
        raise InvalidInput("subset size exceeds qubit count")
    total = comb(n, m)
    if total > subset_cap:
        raise ResourceCapExceeded(f"{total} subsets exceed cap {subset_cap}")
    q = group.num_generators
    checked = 0
    for sites in combinations(range(n), m):
        keep = 0
        for s in sites:
            keep |= 1 << s
        # restriction to the complement is dependent <=> some product
        # lives entirely inside A
        rows = []
        for g in group.generators:
            bits = 0
            pos = 0
            for jq in range(n):
                if (keep >> jq) & 1:
                    continue
                bits |= ((g.x >> jq) & 1) << pos
                bits |= ((g.z >> jq) & 1) << (pos + 1)
                pos += 2
            rows.append(bits)
        checked += 1
        if gf2.rank(rows) < q:
            return False, sites, checked
    return True, None, checked

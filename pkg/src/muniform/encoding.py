"""Logical qubit hosted in a cluster state, and uniformity of its span.

A base state |g> and the flipped state Z_A|g> (Z on every site of a
region A) span a two-dimensional logical space. Whether an arbitrary
superposition a|g> + b*Z_A|g> still looks maximally mixed on every
m-site subset reduces to two minimum-weight questions about the
stabilizer group S of |g>:

* every nonidentity element of S has support > m, and
* every element of the coset Z_A*S has support > m.

Both are decided with the search machinery in `uniformity`; no
statevector is needed. Statevectors enter only as a small-n oracle and
to simulate the preparation circuit (ancilla in a|0> + b|1>, CZ from
the ancilla onto each site of A, X-basis measurement, keep +1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidInput, ResourceCapExceeded
from .lattice import OBC, Circuit, Lattice, cluster_generators
from .pauli import PauliString, from_sites
from .stabilizer import StabilizerGroup, apply_circuit, state_vector
from .uniformity import coset_min_weight, min_weight_bruteforce

__all__ = [
    "LogicalEncoding",
    "EncodedState",
    "encode_statevector",
    "logical_space_is_m_uniform",
    "MinimalAResult",
    "minimal_A_search",
]

ENCODE_QUBIT_CAP = 10
ALL_SUBSETS_CAP = 14
NORM_TOL = 1e-9


@dataclass(frozen=True)
class LogicalEncoding:
    """Base group plus the region A and superposition amplitudes."""

    group: StabilizerGroup
    sites: tuple
    alpha: complex = 1.0
    beta: complex = 0.0

    def __post_init__(self):
        n = self.group.n
        sites = tuple(sorted(set(int(s) for s in self.sites)))
        if not sites:
            raise InvalidInput("region A must be nonempty")
        if sites[0] < 0 or sites[-1] >= n:
            raise InvalidInput("region A out of range")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidInput(f"|alpha|^2 + |beta|^2 = {norm}, expected 1")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def logical_z(self) -> PauliString:
        return from_sites(self.group.n, z_sites=self.sites)


@dataclass
class EncodedState:
    """Both construction paths for the encoded state.

    `circuit` and `formula` are unit vectors over the base qubits;
    `postselect_prob` is the chance of the kept ancilla outcome.
    """

    circuit: np.ndarray
    formula: np.ndarray
    postselect_prob: float


def encode_statevector(enc: LogicalEncoding) -> EncodedState:
    """Prepare the encoded state two ways and report both (n <= 10)."""
    n = enc.group.n
    if n > ENCODE_QUBIT_CAP:
        raise ResourceCapExceeded(f"encoding simulation limited to n <= {ENCODE_QUBIT_CAP}")
    base = state_vector(enc.group)

    # ancilla is qubit n (high bit): full state = a|base>|0> + b|base>|1>
    circ = Circuit(n + 1)
    for site in enc.sites:
        circ.cz(site, n)
    circ.measure_x_postselect(n)
    init = np.concatenate([enc.alpha * base, enc.beta * base])
    final, prob = apply_circuit(circ, init)
    low, high = final[: 1 << n], final[1 << n:]
    if not np.allclose(low, high, atol=1e-12):
        raise InvalidInput("ancilla failed to disentangle after postselection")
    circuit_state = low * math.sqrt(2.0)

    flipped = enc.logical_z.apply(base)
    formula = enc.alpha * base + enc.beta * flipped
    norm = np.linalg.norm(formula)
    if norm < 1e-12:
        raise InvalidInput("formula state vanished (Z_A acts as -1 on the base state)")
    return EncodedState(circuit=circuit_state, formula=formula / norm,
                        postselect_prob=prob)


def logical_space_is_m_uniform(enc: LogicalEncoding, m: int, *,
                               threads: int | None = None):
    """Exact verdict plus the two weight reports backing it.

    Returns (bool, group_report, coset_report). True iff both the
    nonidentity group elements and the whole coset Z_A*S sit strictly
    above support m. Scans stop early once a disqualifying element
    turns up, so failing instances return promptly.
    """
    if m < 0:
        raise InvalidInput("m must be nonnegative")
    group_report = min_weight_bruteforce(enc.group, early_stop=m, threads=threads)
    coset_report = coset_min_weight(enc.group, enc.logical_z, early_stop=m,
                                    threads=threads)
    ok = group_report.min_support > m and coset_report.min_support > m
    return ok, group_report, coset_report


@dataclass
class MinimalAResult:
    size: int | None
    sites: tuple | None
    checked: int

    def to_json_obj(self) -> dict:
        return {
            "minimal_size": self.size,
            "sites": list(self.sites) if self.sites else None,
            "regions_checked": self.checked,
        }


def _contiguous_windows(lat: Lattice, size: int):
    n = lat.n
    if lat.boundary[0] == OBC:
        starts = range(n - size + 1)
    else:
        # ring windows of one size are all translates; start 0 stands in
        starts = range(1)
    for start in starts:
        yield tuple(sorted((start + k) % n for k in range(size)))


def minimal_A_search(lat: Lattice, m: int, family: str = "contiguous", *,
                     threads: int | None = None) -> MinimalAResult:
    """Smallest region A whose logical space stays m-uniform.

    `family` picks the candidate regions: "contiguous" walks window
    sizes 1..n on a chain; "all-subsets" tries every subset in
    lexicographic order (n <= 14). Within a size the first (smallest
    lexicographic) passing region wins.
    """
    if family not in ("contiguous", "all-subsets"):
        raise InvalidInput("family must be 'contiguous' or 'all-subsets'")
    n = lat.n
    if family == "contiguous" and lat.dim != 1:
        raise InvalidInput("contiguous family is defined for chains only")
    if family == "all-subsets" and n > ALL_SUBSETS_CAP:
        raise ResourceCapExceeded(f"all-subsets search limited to n <= {ALL_SUBSETS_CAP}")
    group = StabilizerGroup(n, cluster_generators(lat))
    checked = 0
    for size in range(1, n + 1):
        if family == "contiguous":
            regions = _contiguous_windows(lat, size)
        else:
            regions = combinations(range(n), size)
        for region in regions:
            checked += 1
            enc = LogicalEncoding(group, tuple(region))
            ok, _, _ = logical_space_is_m_uniform(enc, m, threads=threads)
            if ok:
                return MinimalAResult(size=size, sites=tuple(region), checked=checked)
    return MinimalAResult(size=None, sites=None, checked=checked)

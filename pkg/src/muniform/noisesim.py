"""Idle-noise benchmark on a chain cluster state.

Protocol: prepare the chain state, idle for a delay t under relaxation
and dephasing, undo the preparation, and read out every qubit. With a
perfect circuit the readout is all zeros; a Pauli error E during the
delay flips exactly the bits of the generators it anticommutes with, so
the outcome histogram is a histogram over syndromes.

Single-qubit errors on a probed qubit have distinctive patterns (for
the 5-qubit open chain probed at the middle: Z -> 00100, X -> 01010,
Y -> 01110), and the rates at which those patterns grow with t estimate
the underlying error rates:

* amplitude damping with gamma(t) = 1 - exp(-t/T1), Kraus
  [[1,0],[0,sqrt(1-g)]] and [[0,sqrt(g)],[0,0]];
* pure dephasing at rate 1/T_phi = 1/T2 - 1/(2*T1), i.e. a phase flip
  with probability (1 - exp(-t/T_phi))/2.

Twirling that channel gives the Pauli-frame probabilities used by the
sampling engine:

    p_x = p_y = (1 - exp(-t/T1)) / 4
    p_z = (1 - exp(-t/T2)) / 2 - (1 - exp(-t/T1)) / 4

Readout error is a classical bit flip with probability readout_p.

The "zxz" variant idles the plain chain state (generators Z X Z); the
"xzx" variant adds a Hadamard layer before and after the delay, idling
the conjugated state whose generators read X Z X. Pattern attribution
always uses the idled state's own generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput, ResourceCapExceeded, UnphysicalNoise
from .lattice import Lattice, cluster_generators, cluster_graph, graph_state_circuit
from .pauli import PauliString, single
from .stabilizer import StabilizerGroup
from .syndrome import syndrome

__all__ = [
    "NoiseModel",
    "protocol_generators",
    "probe_patterns",
    "twirl_probabilities",
    "validate_probe",
    "run_exact",
    "run_sampled",
    "ExactPoint",
    "SyndromeCounts",
    "pattern_series",
    "sampled_series",
    "RateFit",
    "fit_error_rates",
    "small_t_slope",
]

VARIANTS = ("zxz", "xzx")
EXACT_QUBIT_CAP = 7


@dataclass(frozen=True)
class NoiseModel:
    """Relaxation/dephasing/readout parameters and the delay grid.

    Times share one unit (slopes come out in its inverse); T2 may not
    exceed 2*T1. Infinite T1 or T2 switches that channel off.
    """

    t1: float
    t2: float
    readout_p: float
    delays: tuple
    variant: str = "zxz"

    def __post_init__(self):
        if self.t1 <= 0 or self.t2 <= 0:
            raise UnphysicalNoise("T1 and T2 must be positive")
        if self.t2 > 2 * self.t1 + 1e-12:
            raise UnphysicalNoise(f"T2={self.t2} exceeds 2*T1={2 * self.t1}")
        if not 0 <= self.readout_p <= 1:
            raise UnphysicalNoise("readout_p must be a probability")
        delays = tuple(float(t) for t in self.delays)
        if not delays:
            raise InvalidInput("need at least one delay")
        if any(t < 0 for t in delays):
            raise InvalidInput("delays must be nonnegative")
        if any(b <= a for a, b in zip(delays, delays[1:])):
            raise InvalidInput("delays must be strictly increasing")
        if self.variant not in VARIANTS:
            raise InvalidInput(f"variant must be one of {VARIANTS}")
        object.__setattr__(self, "delays", delays)

    @property
    def t_phi(self) -> float:
        """Pure dephasing time; inf when T2 saturates 2*T1."""
        rate = 1.0 / self.t2 - 1.0 / (2.0 * self.t1)
        return math.inf if rate <= 0 else 1.0 / rate


def twirl_probabilities(noise: NoiseModel, t: float) -> tuple:
    gamma = -math.expm1(-t / noise.t1)
    p_xy = gamma / 4.0
    p_z = -math.expm1(-t / noise.t2) / 2.0 - gamma / 4.0
    if p_z < -1e-12:
        raise UnphysicalNoise(f"negative twirled p_z at t={t}")
    return p_xy, p_xy, max(p_z, 0.0)


def protocol_generators(n: int, periodic: bool, variant: str) -> StabilizerGroup:
    """Generators of the idled state, in qubit order."""
    if variant not in VARIANTS:
        raise InvalidInput(f"variant must be one of {VARIANTS}")
    gens = cluster_generators(Lattice.chain(n, periodic))
    if variant == "xzx":
        gens = [PauliString(g.n, g.z, g.x, g.phase) for g in gens]
    return StabilizerGroup(n, gens)


def probe_patterns(group: StabilizerGroup, probe: int) -> dict:
    """Syndrome integers for X, Y, Z on the probed qubit (0-based)."""
    return {
        letter: syndrome(group, single(group.n, probe, letter))
        for letter in ("X", "Y", "Z")
    }


def validate_probe(n: int, probe: int, periodic: bool = False,
                   allow_edge: bool = False) -> None:
    """Reject out-of-range probes and, on open chains, boundary probes."""
    if not 0 <= probe < n:
        raise InvalidInput(f"probe {probe} out of range")
    if not periodic and probe in (0, n - 1) and not allow_edge:
        raise InvalidInput(
            "probe sits on the open boundary, where patterns degenerate; "
            "pass allow_edge=True to override"
        )


# -- exact density-matrix engine --------------------------------------------


def _embed(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    lo = np.eye(1 << qubit, dtype=complex)
    hi = np.eye(1 << (n - qubit - 1), dtype=complex)
    return np.kron(hi, np.kron(op, lo))


_H1 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def _prep_unitary(n: int, periodic: bool, variant: str) -> np.ndarray:
    circ = graph_state_circuit(cluster_graph(Lattice.chain(n, periodic)))
    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    for gate in circ.gates:
        if gate[0] == "h":
            u = _embed(_H1, gate[1], n) @ u
        else:
            _, a, b = gate
            diag = np.ones(dim)
            idx = np.arange(dim)
            diag[(((idx >> a) & 1) & ((idx >> b) & 1)) == 1] = -1.0
            u = diag[:, None] * u
    if variant == "xzx":
        for q in range(n):
            u = _embed(_H1, q, n) @ u
    return u


def _delay_kraus(noise: NoiseModel, t: float, twirl: bool) -> list:
    if twirl:
        px, py, pz = twirl_probabilities(noise, t)
        pi = 1.0 - px - py - pz
        return [
            math.sqrt(pi) * np.eye(2, dtype=complex),
            math.sqrt(px) * np.array([[0, 1], [1, 0]], dtype=complex),
            math.sqrt(py) * np.array([[0, -1j], [1j, 0]], dtype=complex),
            math.sqrt(pz) * np.array([[1, 0], [0, -1]], dtype=complex),
        ]
    gamma = -math.expm1(-t / noise.t1)
    amp = [
        np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=complex),
        np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex),
    ]
    t_phi = noise.t_phi
    p_phi = 0.0 if math.isinf(t_phi) else -math.expm1(-t / t_phi) / 2.0
    deph = [
        math.sqrt(1 - p_phi) * np.eye(2, dtype=complex),
        math.sqrt(p_phi) * np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    return [d @ a for a in amp for d in deph]


def _apply_channel(rho: np.ndarray, kraus: list, qubit: int, n: int) -> np.ndarray:
    out = np.zeros_like(rho)
    for k in kraus:
        e = _embed(k, qubit, n)
        out += e @ rho @ e.conj().T
    return out


def _readout_mix(probs: np.ndarray, p: float, n: int) -> np.ndarray:
    if p == 0:
        return probs
    out = probs
    idx = np.arange(probs.size)
    for q in range(n):
        out = (1 - p) * out + p * out[idx ^ (1 << q)]
    return out


@dataclass
class ExactPoint:
    t: float
    probs: np.ndarray
    p_zero: float
    p_x: float
    p_y: float
    p_z: float
    p_other: float


def run_exact(n: int, noise: NoiseModel, probe: int, *, periodic: bool = False,
              twirl: bool = False, noisy_qubits=None,
              allow_edge: bool = False) -> list:
    """Exact outcome distribution for each delay (density-matrix path).

    `noisy_qubits` restricts the idle channel to a subset (default all),
    which is how the single-qubit closed forms are cross-checked.
    """
    if n > EXACT_QUBIT_CAP:
        raise ResourceCapExceeded(f"exact engine limited to n <= {EXACT_QUBIT_CAP}")
    validate_probe(n, probe, periodic, allow_edge)
    group = protocol_generators(n, periodic, noise.variant)
    pats = probe_patterns(group, probe)
    if len({pats["X"], pats["Y"], pats["Z"]}) < 3 or 0 in pats.values():
        raise InvalidInput("probe patterns degenerate; choose another probe")
    qubits = list(range(n)) if noisy_qubits is None else sorted(set(noisy_qubits))
    u = _prep_unitary(n, periodic, noise.variant)
    psi = u[:, 0]
    rho_prep = np.outer(psi, psi.conj())
    out = []
    for t in noise.delays:
        rho = rho_prep
        if t > 0:
            kraus = _delay_kraus(noise, t, twirl)
            for q in qubits:
                rho = _apply_channel(rho, kraus, q, n)
        rho = u.conj().T @ rho @ u
        probs = np.clip(np.real(np.diag(rho)), 0.0, None)
        probs = probs / probs.sum()
        probs = _readout_mix(probs, noise.readout_p, n)
        point = ExactPoint(
            t=t,
            probs=probs,
            p_zero=float(probs[0]),
            p_x=float(probs[pats["X"]]),
            p_y=float(probs[pats["Y"]]),
            p_z=float(probs[pats["Z"]]),
            p_other=float(
                1.0 - probs[0] - probs[pats["X"]] - probs[pats["Y"]] - probs[pats["Z"]]
            ),
        )
        out.append(point)
    return out


# -- Pauli-frame sampler -----------------------------------------------------


@dataclass
class SyndromeCounts:
    """Sampled outcome histograms, one dict {outcome int: count} per delay."""

    n: int
    shots: int
    seed: int
    delays: tuple
    counts: list

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "shots": self.shots,
            "seed": self.seed,
            "delays": list(self.delays),
            "counts": [
                {format(k, f"0{self.n}b")[::-1]: int(v) for k, v in sorted(c.items())}
                for c in self.counts
            ],
        }


def run_sampled(n: int, noise: NoiseModel, shots: int, seed: int, *,
                periodic: bool = False) -> SyndromeCounts:
    """Sample the protocol with twirled errors and readout flips.

    Each delay point owns an independent RNG stream spawned from
    (seed, delay index), so histograms do not depend on evaluation
    order or batching.
    """
    if shots < 1:
        raise InvalidInput("shots must be >= 1")
    group = protocol_generators(n, periodic, noise.variant)
    luts = []
    for q in range(n):
        luts.append(
            np.array(
                [
                    0,
                    syndrome(group, single(n, q, "X")),
                    syndrome(group, single(n, q, "Y")),
                    syndrome(group, single(n, q, "Z")),
                ],
                dtype=np.int64,
            )
        )
    counts = []
    for k, t in enumerate(noise.delays):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(k,)))
        px, py, pz = twirl_probabilities(noise, t)
        types = rng.choice(4, size=(shots, n), p=[1.0 - px - py - pz, px, py, pz])
        syn = np.zeros(shots, dtype=np.int64)
        for q in range(n):
            syn ^= luts[q][types[:, q]]
        if noise.readout_p > 0:
            flips = rng.random((shots, n)) < noise.readout_p
            weights = (1 << np.arange(n, dtype=np.int64))[None, :]
            syn ^= (flips * weights).sum(axis=1)
        vals, cnt = np.unique(syn, return_counts=True)
        counts.append({int(v): int(c) for v, c in zip(vals, cnt)})
    return SyndromeCounts(n=n, shots=shots, seed=seed, delays=noise.delays, counts=counts)


# -- pattern series and rate fitting ----------------------------------------


def pattern_series(source, noise: NoiseModel, probe: int, n: int, *,
                   periodic: bool = False) -> dict:
    """Per-delay pattern probabilities from exact points or counts.

    Returns {"t": array, "x"/"y"/"z"/"other": array, "sigma": dict}.
    Sampled sources get binomial standard errors; exact ones get None.
    """
    group = protocol_generators(n, periodic, noise.variant)
    pats = probe_patterns(group, probe)
    ts = np.asarray(noise.delays)
    series = {"t": ts}
    if isinstance(source, SyndromeCounts):
        shots = source.shots
        for key, pat in (("x", pats["X"]), ("y", pats["Y"]), ("z", pats["Z"])):
            p = np.array([c.get(pat, 0) / shots for c in source.counts])
            series[key] = p
        zero = np.array([c.get(0, 0) / shots for c in source.counts])
        series["other"] = 1.0 - zero - series["x"] - series["y"] - series["z"]
        series["sigma"] = {
            key: np.sqrt(np.clip(series[key] * (1 - series[key]), 0, None) / shots)
            for key in ("x", "y", "z")
        }
    else:
        series["x"] = np.array([pt.p_x for pt in source])
        series["y"] = np.array([pt.p_y for pt in source])
        series["z"] = np.array([pt.p_z for pt in source])
        series["other"] = np.array([pt.p_other for pt in source])
        series["sigma"] = None
    return series


def sampled_series(n: int, noise: NoiseModel, probe: int, shots: int,
                   seed: int, *, realizations: int = 1,
                   periodic: bool = False, allow_edge: bool = False) -> dict:
    """Mean pattern frequencies over independently seeded realizations.

    Realization r samples with seed + r; standard errors are binomial
    on the pooled shot count.
    """
    if realizations < 1:
        raise InvalidInput("realizations must be >= 1")
    validate_probe(n, probe, periodic, allow_edge)
    acc = None
    for r in range(realizations):
        counts = run_sampled(n, noise, shots, seed + r, periodic=periodic)
        s = pattern_series(counts, noise, probe, n, periodic=periodic)
        if acc is None:
            acc = {k: s[k] for k in ("x", "y", "z", "other")}
        else:
            for k in acc:
                acc[k] = acc[k] + s[k]
    total = realizations * shots
    series = {"t": np.asarray(noise.delays)}
    for k in ("x", "y", "z", "other"):
        series[k] = acc[k] / realizations
    series["sigma"] = {
        k: np.sqrt(np.clip(series[k] * (1 - series[k]), 1e-18, None) / total)
        for k in ("x", "y", "z")
    }
    return series


@dataclass
class RateFit:
    """Weighted linear fits of the three pattern probabilities."""

    slopes: dict
    intercepts: dict
    slope_errs: dict
    intercept_errs: dict
    t1_est: float | None
    t2_est: float | None

    def to_json_obj(self) -> dict:
        return {
            "slopes": self.slopes,
            "intercepts": self.intercepts,
            "slope_stderr": self.slope_errs,
            "intercept_stderr": self.intercept_errs,
            "t1_est": self.t1_est,
            "t2_est": self.t2_est,
        }


def _wls_line(ts: np.ndarray, ys: np.ndarray, sigma: np.ndarray | None):
    if len(ts) < 3:
        raise InvalidInput("need at least three delay points to fit")
    if sigma is None:
        w = np.ones_like(ys)
    else:
        floor = max(float(np.max(sigma)) * 1e-6, 1e-12)
        w = 1.0 / np.clip(sigma, floor, None) ** 2
    sw = w.sum()
    st = (w * ts).sum()
    stt = (w * ts * ts).sum()
    sy = (w * ys).sum()
    sty = (w * ts * ys).sum()
    det = sw * stt - st * st
    if det <= 0:
        raise InvalidInput("degenerate delay grid")
    slope = (sw * sty - st * sy) / det
    intercept = (stt * sy - st * sty) / det
    if sigma is None:
        resid = ys - (intercept + slope * ts)
        dof = max(len(ts) - 2, 1)
        s2 = float((resid ** 2).sum()) / dof
        slope_err = math.sqrt(s2 * sw / det)
        intercept_err = math.sqrt(s2 * stt / det)
    else:
        slope_err = math.sqrt(sw / det)
        intercept_err = math.sqrt(stt / det)
    return float(slope), float(intercept), slope_err, intercept_err


def fit_error_rates(series: dict) -> RateFit:
    """Least-squares slopes/intercepts; T1 from X+Y growth, T2 from Z."""
    ts = np.asarray(series["t"], dtype=float)
    slopes, intercepts, serr, ierr = {}, {}, {}, {}
    sigma = series.get("sigma")
    for key in ("x", "y", "z"):
        sg = sigma[key] if sigma else None
        slopes[key], intercepts[key], serr[key], ierr[key] = _wls_line(
            ts, np.asarray(series[key], dtype=float), sg
        )
    sxy = slopes["x"] + slopes["y"]
    t1_est = 1.0 / sxy if sxy > 0 else None
    t2_est = 1.0 / slopes["z"] if slopes["z"] > 0 else None
    return RateFit(
        slopes=slopes,
        intercepts=intercepts,
        slope_errs=serr,
        intercept_errs=ierr,
        t1_est=t1_est,
        t2_est=t2_est,
    )


def small_t_slope(n: int, noise: NoiseModel, probe: int, *, periodic: bool = False,
                  pattern: str = "z", rel_step: float = 1e-3) -> float:
    """Finite-difference d p_pattern / dt at t -> 0 from the exact engine.

    Serves as the reference effective rate that a linear fit should
    reproduce when the delay grid stays in the linear-response window.
    """
    eps = rel_step * min(noise.t1, noise.t2)
    probe_noise = NoiseModel(
        t1=noise.t1, t2=noise.t2, readout_p=noise.readout_p,
        delays=(0.0, eps), variant=noise.variant,
    )
    pts = run_exact(n, probe_noise, probe, periodic=periodic)
    attr = {"x": "p_x", "y": "p_y", "z": "p_z"}[pattern]
    return (getattr(pts[1], attr) - getattr(pts[0], attr)) / eps

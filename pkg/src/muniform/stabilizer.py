"""Stabilizer groups and their dense-matrix reference operations.

A group is held as its defining generators plus a phase-tracking reduced
echelon basis over GF(2). Rows of the basis are genuine group elements
(products of generators), so membership tests resolve signs exactly.

Dense operations (reduced density matrices, statevectors) are reference
implementations meant for small systems; they anchor the fast paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import gf2
from .errors import (
    DimensionMismatch,
    InconsistentGroup,
    InvalidInput,
    ResourceCapExceeded,
)
from .lattice import Circuit
from .pauli import PauliString, identity

__all__ = [
    "StabilizerGroup",
    "DensityMatrix",
    "reduced_density_matrix",
    "state_vector",
    "apply_circuit",
]

ENUMERATION_CAP = 30          # largest 2^q enumeration allowed
DENSE_SUBSET_CAP = 12
STATEVECTOR_CAP = 12


def _row_key(p: PauliString) -> int:
    # x block in the low bits so pivots prefer X-type columns
    return p.x | (p.z << p.n)


class StabilizerGroup:
    """Abelian Pauli group without -I, given by independent generators."""

    def __init__(self, n: int, generators, *, drop_dependent: bool = False):
        self.n = n
        gens = list(generators)
        for g in gens:
            if g.n != n:
                raise DimensionMismatch("generator width disagrees with n")
            if g.phase & 1:
                raise InconsistentGroup(f"non-Hermitian generator {g}")
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if not a.commutes(b):
                    raise InconsistentGroup(f"generators {a} and {b} anticommute")
        self._rows: list[PauliString] = []   # echelon basis, phase-exact
        self._pivots: list[int] = []
        kept = []
        for g in gens:
            rem = self._reduce(g)
            if rem.is_identity_bits:
                if rem.phase == 2:
                    raise InconsistentGroup("generators multiply to -I")
                if drop_dependent:
                    continue
                raise InconsistentGroup(f"dependent generator {g}")
            self._insert(rem)
            kept.append(g)
        self.generators = tuple(kept)

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_generators(cls, generators, *, drop_dependent: bool = False) -> "StabilizerGroup":
        gens = list(generators)
        if not gens:
            raise InvalidInput("need at least one generator")
        return cls(gens[0].n, gens, drop_dependent=drop_dependent)

    @classmethod
    def from_strings(cls, strings, n: int | None = None) -> "StabilizerGroup":
        gens = [PauliString.from_string(s, n) for s in strings]
        return cls.from_generators(gens)

    def _reduce(self, p: PauliString) -> PauliString:
        for piv, row in zip(self._pivots, self._rows):
            if (_row_key(p) >> piv) & 1:
                p = p * row
        return p

    def _insert(self, rem: PauliString):
        key = _row_key(rem)
        piv = (key & -key).bit_length() - 1
        for k, row in enumerate(self._rows):
            if (_row_key(row) >> piv) & 1:
                self._rows[k] = row * rem
        self._rows.append(rem)
        self._pivots.append(piv)
        order = sorted(range(len(self._pivots)), key=lambda k: self._pivots[k])
        self._rows = [self._rows[k] for k in order]
        self._pivots = [self._pivots[k] for k in order]

    # -- basic queries -----------------------------------------------------

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def __len__(self) -> int:
        return 1 << self.num_generators

    def canonical_rows(self) -> tuple:
        """Reduced echelon basis; identical for equal groups."""
        return tuple(self._rows)

    def membership_phase(self, p: PauliString) -> int | None:
        """Phase r such that i^r * p's base string is in the group, else None.

        Returns 0 when p itself is an element, 2 when -p is.
        """
        if p.n != self.n:
            raise DimensionMismatch("width mismatch")
        rem = self._reduce(p)
        if not rem.is_identity_bits:
            return None
        return (-rem.phase) & 3

    def __contains__(self, p: PauliString) -> bool:
        return self.membership_phase(p) == 0

    def element(self, mask: int) -> PauliString:
        """Product of generators selected by the bits of `mask`."""
        out = identity(self.n)
        m = mask
        while m:
            low = m & -m
            out = out * self.generators[low.bit_length() - 1]
            m ^= low
        return out

    def enumerate_elements(self, *, start: int = 0, stop: int | None = None,
                           cap: int = ENUMERATION_CAP):
        """Yield all group elements once, in Gray-code order.

        Each step multiplies by a single generator, so phases stay exact.
        `start`/`stop` select a slice of the Gray counter for chunked
        consumption; chunks concatenate to the full sequence.
        """
        q = self.num_generators
        if q > cap:
            raise ResourceCapExceeded(f"2^{q} elements exceeds cap 2^{cap}")
        total = 1 << q
        if stop is None:
            stop = total
        if not (0 <= start <= stop <= total):
            raise InvalidInput("bad enumeration range")
        cur = self.element(start ^ (start >> 1))
        yield cur
        for i in range(start + 1, stop):
            flip = (i & -i).bit_length() - 1
            cur = cur * self.generators[flip]
            yield cur

    # -- subset restriction -------------------------------------------------

    def restrict_to_subset(self, sites) -> "StabilizerGroup":
        """Subgroup of elements supported entirely inside `sites`.

        Solved as the GF(2) kernel of the map onto the outside qubits.
        The returned group lives on the same n qubits.
        """
        sites = _normalize_sites(sites, self.n)
        outside = [q for q in range(self.n) if q not in set(sites)]
        rows = []
        for g in self.generators:
            bits = 0
            for k, q in enumerate(outside):
                bits |= ((g.x >> q) & 1) << (2 * k)
                bits |= ((g.z >> q) & 1) << (2 * k + 1)
            rows.append(bits)
        kernel = gf2.nullspace(rows)
        gens = [self.element(mask) for mask in sorted(kernel)]
        gens = [g for g in gens if not g.is_identity_bits]
        out = StabilizerGroup(self.n, [], drop_dependent=True)
        for g in gens:
            rem = out._reduce(g)
            if rem.is_identity_bits:
                if rem.phase == 2:
                    raise InconsistentGroup("subset subgroup contains -I")
                continue
            out._insert(rem)
            out.generators = out.generators + (g,)
        return out


def _normalize_sites(sites, n: int) -> tuple:
    out = tuple(sorted(set(int(s) for s in sites)))
    if out and not (0 <= out[0] and out[-1] < n):
        raise InvalidInput(f"qubit subset {out} out of range for n={n}")
    return out


@dataclass
class DensityMatrix:
    """Dense density matrix with validation helpers."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self, atol: float = 1e-10):
        m = self.matrix
        if m.shape[0] != m.shape[1]:
            raise InvalidInput("density matrix must be square")
        if abs(np.trace(m) - 1.0) > atol:
            raise InvalidInput(f"trace {np.trace(m)} != 1")
        if np.max(np.abs(m - m.conj().T)) > atol:
            raise InvalidInput("not Hermitian")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -atol:
            raise InvalidInput(f"negative eigenvalue {evals.min()}")
        return self

    def to_json_obj(self) -> list:
        return [[[float(v.real), float(v.imag)] for v in row] for row in self.matrix]


def reduced_density_matrix(group: StabilizerGroup, sites) -> DensityMatrix:
    """Reduced state on `sites` of the n-qubit stabilizer state.

    Averages the subset-supported elements: rho_A = 2^-|A| * sum of the
    restricted strings. Requires the group to fix a unique state (q = n).
    """
    sites = _normalize_sites(sites, group.n)
    if not sites:
        raise InvalidInput("subset must be nonempty")
    if len(sites) > DENSE_SUBSET_CAP:
        raise ResourceCapExceeded(f"subset limited to {DENSE_SUBSET_CAP} qubits")
    if group.num_generators != group.n:
        raise InvalidInput("state is not pure: need n independent generators")
    sub = group.restrict_to_subset(sites)
    dim = 1 << len(sites)
    acc = np.zeros((dim, dim), dtype=complex)
    for el in sub.enumerate_elements():
        acc += el.restrict(sites).dense()
    return DensityMatrix(acc / dim)


def state_vector(group: StabilizerGroup) -> np.ndarray:
    """Statevector stabilized by the group (q = n, n <= cap).

    Projects a computational basis state with prod (1 + s_i)/2; if the
    reference state is annihilated, the next basis state is tried.
    """
    n = group.n
    if group.num_generators != n:
        raise InvalidInput("state is not pure: need n independent generators")
    if n > STATEVECTOR_CAP:
        raise ResourceCapExceeded(f"statevector limited to n <= {STATEVECTOR_CAP}")
    dim = 1 << n
    for ref in range(dim):
        vec = np.zeros(dim, dtype=complex)
        vec[ref] = 1.0
        ok = True
        for g in group.generators:
            vec = 0.5 * (vec + g.apply(vec))
            if np.linalg.norm(vec) < 1e-12:
                ok = False
                break
        if ok:
            return vec / np.linalg.norm(vec)
    raise InconsistentGroup("no basis state survives projection")


def apply_circuit(circ: Circuit, state: np.ndarray | None = None):
    """Run a Circuit on a statevector.

    Returns (state, postselect_probability). The probability is the
    product over measure-x-postselect gates of the +1-outcome chance;
    the returned state is renormalized after each postselection.
    """
    n = circ.width
    if n > STATEVECTOR_CAP + 1:
        raise ResourceCapExceeded(f"circuit simulation limited to {STATEVECTOR_CAP + 1} qubits")
    dim = 1 << n
    if state is None:
        state = np.zeros(dim, dtype=complex)
        state[0] = 1.0
    else:
        if state.shape != (dim,):
            raise DimensionMismatch(f"state must have length {dim}")
        state = state.astype(complex)
    prob = 1.0
    idx = np.arange(dim, dtype=np.int64)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for gate in circ.gates:
        kind = gate[0]
        if kind == "h":
            q = gate[1]
            bit = (idx >> q) & 1
            flipped = state[idx ^ (1 << q)]
            state = inv_sqrt2 * np.where(bit == 0, state + flipped, flipped - state)
        elif kind == "cz":
            _, q, r = gate
            sign = np.where((((idx >> q) & 1) & ((idx >> r) & 1)) == 1, -1.0, 1.0)
            state = state * sign
        elif kind == "mxpost":
            q = gate[1]
            # project onto the +1 X eigenstate of q, drop the qubit's phase info
            plus = 0.5 * (state + state[idx ^ (1 << q)])
            p = float(np.linalg.norm(plus) ** 2)
            prob *= p
            if p < 1e-15:
                raise InvalidInput(f"postselection on qubit {q} has zero probability")
            state = plus / np.sqrt(p)
        else:
            raise InvalidInput(f"unknown gate {kind!r}")
    return state, prob

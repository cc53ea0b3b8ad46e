"""Pauli strings in binary symplectic representation.

A string on n qubits is stored as two n-bit integers plus a phase:

    bit j of x / bit j of z   ->   local operator on qubit j
            (0, 0)            ->   I
            (1, 0)            ->   X
            (0, 1)            ->   Z
            (1, 1)            ->   Y

The represented operator is ``i**phase * (P_0 x P_1 x ... x P_{n-1})``
where each P_j is the Hermitian single-qubit Pauli from the table, so
Hermitian strings always carry phase 0 or 2. The multiplication phase
follows from Y = i X Z, e.g. X*Z = -iY and Z*X = +iY.

Qubit 0 is the leftmost letter in the text form ("+XZZ" puts X on
qubit 0). Basis-state indices used by :meth:`PauliString.apply` and
:meth:`PauliString.dense` carry qubit j in bit j of the index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionMismatch, InvalidInput, ResourceCapExceeded

__all__ = ["PauliString", "identity", "single", "from_sites"]

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

DENSE_QUBIT_CAP = 12


def _parity_of_and(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class PauliString:
    """Signed n-qubit Pauli operator."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        # numpy integers sneak in from indexing code; bit ops below need
        # arbitrary-precision ints
        for name in ("n", "x", "z", "phase"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.n < 0:
            raise InvalidInput("qubit count must be nonnegative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise DimensionMismatch("bit mask exceeds qubit count")
        object.__setattr__(self, "phase", self.phase & 3)

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise DimensionMismatch("cannot multiply strings of different width")
        x1, z1, x2, z2 = self.x, self.z, other.x, other.z
        xs = x1 & ~z1  # X sites of self
        zs = z1 & ~x1  # Z sites
        ys = x1 & z1   # Y sites
        g = (
            2 * (xs & x2 & z2).bit_count()
            - (xs & z2).bit_count()
            + (zs & x2).bit_count()
            - 2 * (zs & x2 & z2).bit_count()
            + (ys & z2).bit_count()
            - (ys & x2).bit_count()
        )
        return PauliString(self.n, x1 ^ x2, z1 ^ z2, (self.phase + other.phase + g) & 3)

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise DimensionMismatch("cannot compare strings of different width")
        return (_parity_of_and(self.x, other.z) ^ _parity_of_and(self.z, other.x)) == 0

    def negate(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    @property
    def is_identity_bits(self) -> bool:
        return self.x == 0 and self.z == 0

    def support(self) -> set:
        """Indices of qubits acted on non-trivially."""
        mask = self.x | self.z
        out = set()
        while mask:
            low = mask & -mask
            out.add(low.bit_length() - 1)
            mask ^= low
        return out

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    # -- text form -------------------------------------------------------

    @classmethod
    def from_string(cls, text: str, n: int | None = None) -> "PauliString":
        """Parse e.g. "+XZZ", "-XXX", "YIY", "-iZX"."""
        s = text.strip()
        phase = 0
        for prefix, ph in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if s.startswith(prefix):
                phase = ph
                s = s[len(prefix):]
                break
        if not s:
            raise InvalidInput(f"empty Pauli string: {text!r}")
        if n is not None and len(s) != n:
            raise DimensionMismatch(f"expected {n} letters, got {len(s)}")
        x = z = 0
        for j, ch in enumerate(s.upper()):
            try:
                xb, zb = _LETTER_TO_BITS[ch]
            except KeyError:
                raise InvalidInput(f"invalid Pauli letter {ch!r} in {text!r}") from None
            x |= xb << j
            z |= zb << j
        return cls(len(s), x, z, phase)

    def to_string(self) -> str:
        letters = "".join(
            _BITS_TO_LETTER[((self.x >> j) & 1, (self.z >> j) & 1)]
            for j in range(self.n)
        )
        return _PHASE_PREFIX[self.phase] + letters

    def __str__(self) -> str:
        return self.to_string()

    # -- dense / statevector oracles --------------------------------------

    def dense(self) -> np.ndarray:
        """Full 2^n x 2^n matrix. Intended as a small-n reference."""
        if self.n > DENSE_QUBIT_CAP:
            raise ResourceCapExceeded(f"dense matrix limited to n <= {DENSE_QUBIT_CAP}")
        mats = [
            _MATRICES[_BITS_TO_LETTER[((self.x >> j) & 1, (self.z >> j) & 1)]]
            for j in range(self.n)
        ]
        # qubit 0 occupies the least significant index bit
        out = reduce(np.kron, reversed(mats)) if mats else np.eye(1, dtype=complex)
        return (1j ** self.phase) * out

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply to a statevector of length 2^n without building the matrix."""
        dim = 1 << self.n
        if vec.shape != (dim,):
            raise DimensionMismatch(f"statevector must have length {dim}")
        idx = np.arange(dim, dtype=np.int64)
        par = np.zeros(dim, dtype=np.int64)
        zmask = self.z
        while zmask:
            low = zmask & -zmask
            par ^= (idx >> (low.bit_length() - 1)) & 1
            zmask ^= low
        coeff = (1j ** ((self.phase + (self.x & self.z).bit_count()) & 3)) * np.where(par, -1.0, 1.0)
        out = np.empty(dim, dtype=complex)
        out[idx ^ self.x] = coeff * vec
        return out

    # -- sub-qubit views ---------------------------------------------------

    def restrict(self, sites: tuple) -> "PauliString":
        """Reindex onto the given qubits; support must lie inside them."""
        keep = 0
        for q in sites:
            keep |= 1 << q
        if (self.x | self.z) & ~keep:
            raise InvalidInput("string acts outside the requested qubits")
        x = z = 0
        for k, q in enumerate(sorted(sites)):
            x |= ((self.x >> q) & 1) << k
            z |= ((self.z >> q) & 1) << k
        return PauliString(len(sites), x, z, self.phase)


def identity(n: int) -> PauliString:
    return PauliString(n, 0, 0, 0)


def single(n: int, qubit: int, letter: str) -> PauliString:
    """One-qubit operator embedded on `qubit` (0-based)."""
    if not 0 <= qubit < n:
        raise InvalidInput(f"qubit {qubit} out of range for n={n}")
    xb, zb = _LETTER_TO_BITS[letter.upper()]
    return PauliString(n, xb << qubit, zb << qubit, 0)


def from_sites(n: int, x_sites=(), z_sites=(), y_sites=(), phase: int = 0) -> PauliString:
    """Build a string from site lists; a site in both x and z reads Y."""
    xs, zs, ys = set(x_sites), set(z_sites), set(y_sites)
    if ys & (xs | zs):
        raise InvalidInput("y_sites must not repeat x_sites or z_sites")
    x = z = 0
    for q in xs | ys:
        x |= 1 << q
    for q in zs | ys:
        z |= 1 << q
    return PauliString(n, x, z, phase)

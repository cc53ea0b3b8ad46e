"""Lattices, graphs, and state-preparation circuits.

Vertices of a D-dimensional lattice are linearized with axis 0 fastest:
``index = c[0] + L[0]*c[1] + L[0]*L[1]*c[2] + ...``. All generator lists,
syndrome bit orders, and witness indices follow this order, so bitstrings
are reproducible across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidInput
from .pauli import PauliString, from_sites

__all__ = [
    "Lattice",
    "Graph",
    "Circuit",
    "cluster_generators",
    "extended_generators",
    "ghz_generators",
    "graph_generators",
    "cluster_graph",
    "extended_graph",
    "graph_state_circuit",
]

PBC = "pbc"
OBC = "obc"


@dataclass(frozen=True)
class Lattice:
    """Hypercubic lattice with per-axis boundary conditions."""

    lengths: tuple
    boundary: tuple

    def __post_init__(self):
        lengths = tuple(int(v) for v in self.lengths)
        if not lengths or any(v < 1 for v in lengths):
            raise InvalidInput("lattice lengths must be positive")
        boundary = self.boundary
        if isinstance(boundary, str):
            boundary = (boundary,) * len(lengths)
        boundary = tuple(boundary)
        if len(boundary) != len(lengths):
            raise InvalidInput("need one boundary flag per axis")
        if any(b not in (PBC, OBC) for b in boundary):
            raise InvalidInput("boundary flags must be 'pbc' or 'obc'")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "boundary", boundary)

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def n(self) -> int:
        out = 1
        for v in self.lengths:
            out *= v
        return out

    @property
    def all_periodic(self) -> bool:
        return all(b == PBC for b in self.boundary)

    @classmethod
    def chain(cls, n: int, periodic: bool = True) -> "Lattice":
        return cls((n,), PBC if periodic else OBC)

    @classmethod
    def hypercube(cls, dim: int, length: int, periodic: bool = True) -> "Lattice":
        return cls((length,) * dim, PBC if periodic else OBC)

    @classmethod
    def from_json(cls, text: str) -> "Lattice":
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad lattice JSON: {exc}") from None
        try:
            lengths = tuple(spec["lengths"])
        except (KeyError, TypeError):
            raise InvalidInput("lattice JSON needs a 'lengths' list") from None
        if "D" in spec and int(spec["D"]) != len(lengths):
            raise InvalidInput("'D' disagrees with number of lengths")
        return cls(lengths, spec.get("boundary", PBC))

    def to_json(self) -> str:
        return json.dumps(
            {"D": self.dim, "lengths": list(self.lengths), "boundary": list(self.boundary)}
        )

    def index(self, coords) -> int:
        idx = 0
        stride = 1
        for c, length in zip(coords, self.lengths):
            if not 0 <= c < length:
                raise InvalidInput(f"coordinate {c} out of range")
            idx += c * stride
            stride *= length
        return idx

    def coords(self, index: int) -> tuple:
        if not 0 <= index < self.n:
            raise InvalidInput(f"vertex index {index} out of range")
        out = []
        for length in self.lengths:
            out.append(index % length)
            index //= length
        return tuple(out)

    def neighbors(self, index: int) -> list:
        """Nearest neighbors along each axis, deduplicated, ascending."""
        base = self.coords(index)
        seen = set()
        for axis, length in enumerate(self.lengths):
            for step in (-1, 1):
                c = base[axis] + step
                if self.boundary[axis] == PBC:
                    if length == 1:
                        continue
                    c %= length
                elif not 0 <= c < length:
                    continue
                other = list(base)
                other[axis] = c
                j = self.index(other)
                if j != index:
                    seen.add(j)
        return sorted(seen)

    def hamming(self, a: int, b: int) -> int:
        """Shortest path length between vertices (wrap-aware per axis)."""
        ca, cb = self.coords(a), self.coords(b)
        total = 0
        for axis, length in enumerate(self.lengths):
            d = abs(ca[axis] - cb[axis])
            if self.boundary[axis] == PBC:
                d = min(d, length - d)
            total += d
        return total


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {e} out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInput(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def neighbors(self, v: int) -> list:
        out = [b if a == v else a for a, b in self.edges if v in (a, b)]
        return sorted(out)

    @classmethod
    def from_edge_list(cls, text: str, n: int | None = None) -> "Graph":
        """Parse "u v" pairs, one per line; '#' starts a comment."""
        edges = []
        top = -1
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidInput(f"line {lineno}: expected 'u v', got {raw!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise InvalidInput(f"line {lineno}: non-integer vertex") from None
            edges.append((u, v))
            top = max(top, u, v)
        if n is None:
            n = top + 1
        return cls(n, tuple(edges))


@dataclass
class Circuit:
    """Gate list: ("h", q), ("cz", q, r), ("mxpost", q)."""

    width: int
    gates: list = field(default_factory=list)

    def h(self, q: int) -> "Circuit":
        self._check(q)
        self.gates.append(("h", q))
        return self

    def cz(self, q: int, r: int) -> "Circuit":
        self._check(q)
        self._check(r)
        if q == r:
            raise InvalidInput("cz needs two distinct qubits")
        self.gates.append(("cz", min(q, r), max(q, r)))
        return self

    def measure_x_postselect(self, q: int) -> "Circuit":
        """Measure in the X basis and keep the +1 outcome."""
        self._check(q)
        self.gates.append(("mxpost", q))
        return self

    def _check(self, q: int):
        if not 0 <= q < self.width:
            raise InvalidInput(f"qubit {q} out of range for width {self.width}")


# -- generator families ----------------------------------------------------


def graph_generators(graph: Graph) -> list:
    """Stabilizer generators X_v * prod_{w ~ v} Z_w, one per vertex."""
    return [
        from_sites(graph.n, x_sites=(v,), z_sites=graph.neighbors(v))
        for v in range(graph.n)
    ]


def cluster_graph(lat: Lattice) -> Graph:
    edges = set()
    for v in range(lat.n):
        for w in lat.neighbors(v):
            edges.add((min(v, w), max(v, w)))
    return Graph(lat.n, tuple(sorted(edges)))


def cluster_generators(lat: Lattice) -> list:
    """One generator per vertex: X there, Z on every lattice neighbor."""
    return [
        from_sites(lat.n, x_sites=(v,), z_sites=lat.neighbors(v))
        for v in range(lat.n)
    ]


def extended_graph(n: int, reach: int, periodic: bool = True) -> Graph:
    """1-D chain with edges to every site within `reach` steps."""
    if reach < 1:
        raise InvalidInput("reach must be >= 1")
    if periodic and n <= 2 * reach:
        raise InvalidInput(f"periodic chain needs n > {2 * reach} for reach {reach}")
    edges = set()
    for v in range(n):
        for d in range(1, reach + 1):
            w = v + d
            if periodic:
                w %= n
            elif w >= n:
                continue
            if w != v:
                edges.add((min(v, w), max(v, w)))
    return Graph(n, tuple(sorted(edges)))


def extended_generators(n: int, reach: int, periodic: bool = True) -> list:
    """Chain generators Z..Z X Z..Z with `reach` Z's on each side."""
    return graph_generators(extended_graph(n, reach, periodic))


def ghz_generators(n: int) -> list:
    """X on all qubits plus the n-1 nearest-neighbor ZZ parities."""
    if n < 2:
        raise InvalidInput("need at least 2 qubits")
    gens = [from_sites(n, x_sites=range(n))]
    gens += [from_sites(n, z_sites=(j, j + 1)) for j in range(n - 1)]
    return gens


def graph_state_circuit(graph: Graph) -> Circuit:
    """Hadamard every qubit, then CZ across each edge (sorted order)."""
    circ = Circuit(graph.n)
    for q in range(graph.n):
        circ.h(q)
    for u, v in graph.edges:
        circ.cz(u, v)
    return circ

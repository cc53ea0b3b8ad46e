"""Lattice indexing, graphs, and generator construction."""

import json

import pytest

from muniform.errors import InvalidInput
from muniform.lattice import (
    Circuit,
    Graph,
    Lattice,
    cluster_generators,
    cluster_graph,
    extended_generators,
    ghz_generators,
    graph_generators,
    graph_state_circuit,
)


class TestLattice:
    def test_index_coords_roundtrip(self):
        lat = Lattice((3, 4, 2), ("pbc", "obc", "pbc"))
        for idx in range(lat.n):
            assert lat.index(lat.coords(idx)) == idx

    def test_axis_zero_fastest(self):
        lat = Lattice((3, 4), "pbc")
        assert lat.index((1, 0)) == 1
        assert lat.index((0, 1)) == 3
        assert lat.coords(5) == (2, 1)

    def test_neighbors_pbc_chain(self):
        lat = Lattice.chain(5, periodic=True)
        assert lat.neighbors(0) == [1, 4]
        assert lat.neighbors(2) == [1, 3]

    def test_neighbors_obc_edge(self):
        lat = Lattice.chain(5, periodic=False)
        assert lat.neighbors(0) == [1]
        assert lat.neighbors(4) == [3]

    def test_neighbors_2d(self):
        lat = Lattice.hypercube(2, 4, periodic=True)
        # site 0 at (0,0): wraps to (3,0) and (0,3)
        assert lat.neighbors(0) == [1, 3, 4, 12]

    def test_length_two_ring_has_single_bond(self):
        lat = Lattice.chain(2, periodic=True)
        assert lat.neighbors(0) == [1]

    def test_hamming_wraps(self):
        lat = Lattice.chain(10, periodic=True)
        assert lat.hamming(0, 9) == 1
        assert lat.hamming(0, 5) == 5
        lato = Lattice.chain(10, periodic=False)
        assert lato.hamming(0, 9) == 9

    def test_hamming_multi_axis(self):
        lat = Lattice((5, 5), ("pbc", "obc"))
        a = lat.index((0, 0))
        b = lat.index((4, 4))
        assert lat.hamming(a, b) == 1 + 4

    def test_json_roundtrip(self):
        lat = Lattice((4, 6), ("obc", "pbc"))
        again = Lattice.from_json(lat.to_json())
        assert again == lat

    def test_from_json_rejects_garbage(self):
        with pytest.raises(InvalidInput):
            Lattice.from_json("{not json")
        with pytest.raises(InvalidInput):
            Lattice.from_json(json.dumps({"lengths": []}))

    def test_validation(self):
        with pytest.raises(InvalidInput):
            Lattice((0,), "pbc")
        with pytest.raises(InvalidInput):
            Lattice((3, 3), ("pbc",))
        with pytest.raises(InvalidInput):
            Lattice((3,), ("torus",))


class TestGenerators:
    def test_cluster_chain_pbc_strings(self):
        lat = Lattice.chain(5, periodic=True)
        gens = [g.to_string() for g in cluster_generators(lat)]
        assert gens == ["+XZIIZ", "+ZXZII", "+IZXZI", "+IIZXZ", "+ZIIZX"]

    def test_cluster_chain_obc_strings(self):
        lat = Lattice.chain(5, periodic=False)
        gens = [g.to_string() for g in cluster_generators(lat)]
        assert gens == ["+XZIII", "+ZXZII", "+IZXZI", "+IIZXZ", "+IIIZX"]

    def test_cluster_2d_weight(self):
        lat = Lattice.hypercube(2, 5, periodic=True)
        gens = cluster_generators(lat)
        assert len(gens) == 25
        assert all(g.weight() == 5 for g in gens)

    def test_extended_reach_two(self):
        gens = [g.to_string() for g in extended_generators(7, 2, periodic=True)]
        assert gens[0] == "+XZZIIZZ"
        assert gens[3] == "+IZZXZZI"

    def test_extended_needs_room(self):
        with pytest.raises(InvalidInput):
            extended_generators(4, 2, periodic=True)

    def test_extended_obc_truncates(self):
        gens = [g.to_string() for g in extended_generators(6, 2, periodic=False)]
        assert gens[0] == "+XZZIII"
        assert gens[2] == "+ZZXZZI"

    def test_ghz(self):
        gens = [g.to_string() for g in ghz_generators(4)]
        assert gens == ["+XXXX", "+ZZII", "+IZZI", "+IIZZ"]
        with pytest.raises(InvalidInput):
            ghz_generators(1)

    def test_graph_generators_triangle(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        gens = [p.to_string() for p in graph_generators(g)]
        assert gens == ["+XZZ", "+ZXZ", "+ZZX"]

    def test_cluster_graph_matches_neighbors(self):
        lat = Lattice.chain(6, periodic=True)
        g = cluster_graph(lat)
        assert g.n == 6
        assert (0, 5) in g.edges and (0, 1) in g.edges


class TestGraph:
    def test_sorts_and_rejects_duplicates(self):
        g = Graph(4, [(2, 1), (0, 3)])
        assert g.edges == ((0, 3), (1, 2))
        with pytest.raises(InvalidInput):
            Graph(4, [(2, 1), (1, 2)])

    def test_rejects_loops_and_range(self):
        with pytest.raises(InvalidInput):
            Graph(3, [(1, 1)])
        with pytest.raises(InvalidInput):
            Graph(3, [(0, 3)])

    def test_from_edge_list(self):
        text = "# ring\n0 1\n1 2\n2 0\n"
        g = Graph.from_edge_list(text, 3)
        assert g.edges == ((0, 1), (0, 2), (1, 2))


class TestCircuit:
    def test_graph_state_circuit_layout(self):
        g = Graph(3, [(0, 1), (1, 2)])
        circ = graph_state_circuit(g)
        assert circ.gates[:3] == [("h", 0), ("h", 1), ("h", 2)]
        assert circ.gates[3:] == [("cz", 0, 1), ("cz", 1, 2)]

    def test_cz_normalizes_order(self):
        c = Circuit(3)
        c.cz(2, 0)
        assert c.gates == [("cz", 0, 2)]

    def test_bounds_checked(self):
        c = Circuit(2)
        with pytest.raises(InvalidInput):
            c.h(2)
        with pytest.raises(InvalidInput):
            c.cz(0, 0)

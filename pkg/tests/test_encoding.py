"""Logical encoding: state construction and uniformity of the span."""

from itertools import combinations, product

import numpy as np
import pytest

from muniform import (
    InvalidInput,
    Lattice,
    LogicalEncoding,
    ResourceCapExceeded,
    StabilizerGroup,
    cluster_generators,
    encode_statevector,
    from_sites,
    ghz_generators,
    logical_space_is_m_uniform,
    minimal_A_search,
    state_vector,
)


def ring_encoding(n, sites, alpha=1.0, beta=0.0):
    group = StabilizerGroup.from_generators(
        cluster_generators(Lattice.chain(n, periodic=True))
    )
    return LogicalEncoding(group, tuple(sites), alpha, beta)


def support_expectations(phi, n, m):
    """Max |<phi|P|phi>| over nonidentity P of support <= m."""
    worst = 0.0
    for w in range(1, m + 1):
        for sites in combinations(range(n), w):
            for letters in product("XYZ", repeat=w):
                p = from_sites(
                    n,
                    x_sites=[s for s, c in zip(sites, letters) if c == "X"],
                    z_sites=[s for s, c in zip(sites, letters) if c == "Z"],
                    y_sites=[s for s, c in zip(sites, letters) if c == "Y"],
                )
                worst = max(worst, abs(np.vdot(phi, p.apply(phi))))
    return worst


class TestLogicalEncoding:
    def test_validation(self):
        with pytest.raises(InvalidInput):
            ring_encoding(6, [])
        with pytest.raises(InvalidInput):
            ring_encoding(6, [6])
        with pytest.raises(InvalidInput):
            ring_encoding(6, [0], alpha=1.0, beta=1.0)  # not normalized

    def test_sites_sorted_deduplicated(self):
        enc = ring_encoding(6, [3, 1, 3])
        assert enc.sites == (1, 3)
        assert enc.logical_z.to_string() == "+IZIZII"


class TestEncodeStatevector:
    def test_beta_zero_reproduces_base(self):
        enc = ring_encoding(5, [1, 2])
        base = state_vector(enc.group)
        out = encode_statevector(enc)
        assert np.allclose(out.formula, base, atol=1e-12)
        assert np.allclose(out.circuit, base, atol=1e-12)

    def test_circuit_equals_formula_random(self):
        rng = np.random.default_rng(23)
        for lat in (Lattice.chain(6, periodic=True), Lattice.chain(7, periodic=False)):
            group = StabilizerGroup.from_generators(cluster_generators(lat))
            for _ in range(25):
                size = int(rng.integers(1, lat.n + 1))
                sites = tuple(sorted(rng.choice(lat.n, size=size, replace=False).tolist()))
                a = rng.normal() + 1j * rng.normal()
                b = rng.normal() + 1j * rng.normal()
                norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
                enc = LogicalEncoding(group, sites, a / norm, b / norm)
                out = encode_statevector(enc)
                assert np.max(np.abs(out.circuit - out.formula)) < 1e-12
                # cluster groups contain no Z-only elements, so the two
                # branches stay orthogonal and the kept outcome is even
                assert out.postselect_prob == pytest.approx(0.5, abs=1e-12)

    def test_ghz_region_inside_group(self):
        # Z0*Z1 stabilizes GHZ, so both branches coincide: postselection
        # keeps everything and equal amplitudes just reproduce the state
        group = StabilizerGroup.from_generators(ghz_generators(4))
        s = 1 / np.sqrt(2)
        enc = LogicalEncoding(group, (0, 1), s, s)
        out = encode_statevector(enc)
        assert out.postselect_prob == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(out.formula, state_vector(group), atol=1e-12)

    def test_ghz_destructive_amplitudes_rejected(self):
        group = StabilizerGroup.from_generators(ghz_generators(4))
        s = 1 / np.sqrt(2)
        enc = LogicalEncoding(group, (0, 1), s, -s)
        with pytest.raises(InvalidInput):
            encode_statevector(enc)

    def test_qubit_cap(self):
        with pytest.raises(ResourceCapExceeded):
            encode_statevector(ring_encoding(12, [0]))


class TestLogicalSpaceUniformity:
    def test_window7_on_ring20(self):
        enc = ring_encoding(20, range(2, 9))
        ok, grp, coset = logical_space_is_m_uniform(enc, 2)
        assert ok
        assert grp.min_support == 3
        assert coset.min_support == 3

    def test_tiny_regions_fail(self):
        assert not logical_space_is_m_uniform(ring_encoding(20, [5]), 1)[0]
        assert not logical_space_is_m_uniform(ring_encoding(20, [5]), 2)[0]
        assert not logical_space_is_m_uniform(ring_encoding(20, [5, 6]), 2)[0]

    def test_monotone_in_m(self):
        enc = ring_encoding(12, range(5))
        verdicts = [logical_space_is_m_uniform(enc, m)[0] for m in range(5)]
        assert verdicts == sorted(verdicts, reverse=True)

    def test_negative_m_rejected(self):
        with pytest.raises(InvalidInput):
            logical_space_is_m_uniform(ring_encoding(6, [0]), -1)

    @pytest.mark.parametrize("sites,m", [((0, 1, 2, 3, 4), 2), ((0,), 1), ((0, 2), 2)])
    def test_matches_dense_expectations(self, sites, m):
        # true verdict <=> every small-support expectation vanishes for
        # a generic superposition; the amplitudes need |a| != |b| and a
        # relative phase with nonzero real and imaginary parts, or some
        # violation channels are invisible
        beta = 0.8 * np.exp(1j * np.pi / 5)
        enc = ring_encoding(8, sites, 0.6, beta)
        ok, _, _ = logical_space_is_m_uniform(enc, m)
        phi = encode_statevector(enc).formula
        worst = support_expectations(phi, 8, m)
        assert ok == (worst < 1e-9)


class TestMinimalASearch:
    def test_ring20_contiguous(self):
        res = minimal_A_search(Lattice.chain(20, periodic=True), 2)
        assert res.size == 5
        assert res.sites == (0, 1, 2, 3, 4)
        assert res.checked == 5  # one window per size on a ring
        assert res.size <= 7  # sufficiency bound for chains

    def test_ring12_contiguous(self):
        assert minimal_A_search(Lattice.chain(12, periodic=True), 2).size == 5

    def test_m_zero_single_site(self):
        res = minimal_A_search(Lattice.chain(10, periodic=True), 0)
        assert res.size == 1
        assert res.sites == (0,)

    def test_all_subsets_beats_contiguous(self):
        res = minimal_A_search(Lattice.chain(8, periodic=True), 2,
                               family="all-subsets")
        assert res.size == 4
        assert res.sites == (0, 1, 3, 5)

    def test_open_chain_never_uniform_at_m2(self):
        # the boundary pair keeps the group floor at 2, so no region helps
        res = minimal_A_search(Lattice.chain(10, periodic=False), 2)
        assert res.size is None
        assert res.sites is None
        assert res.checked == 55

    def test_family_validation(self):
        with pytest.raises(InvalidInput):
            minimal_A_search(Lattice.chain(8, periodic=True), 2, family="rings")
        with pytest.raises(InvalidInput):
            minimal_A_search(Lattice.hypercube(2, 4, periodic=True), 2)
        with pytest.raises(ResourceCapExceeded):
            minimal_A_search(Lattice.chain(20, periodic=True), 2,
                             family="all-subsets")

    def test_json_obj(self):
        res = minimal_A_search(Lattice.chain(12, periodic=True), 2)
        obj = res.to_json_obj()
        assert obj["minimal_size"] == 5
        assert obj["sites"] == [0, 1, 2, 3, 4]
        assert obj["regions_checked"] == res.checked

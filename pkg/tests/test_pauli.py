"""Pauli string algebra against dense matrix arithmetic."""

import numpy as np
import pytest

from muniform.errors import DimensionMismatch, InvalidInput, ResourceCapExceeded
from muniform.pauli import PauliString, from_sites, identity, single

from_string = PauliString.from_string

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_oracle(label: str, phase: int = 0) -> np.ndarray:
    """Independent dense construction; qubit 0 is the leftmost letter."""
    out = np.array([[1]], dtype=complex)
    for ch in label:
        out = np.kron(MATS[ch], out)
    return (1j) ** phase * out


@pytest.mark.parametrize("a", "IXYZ")
@pytest.mark.parametrize("b", "IXYZ")
def test_single_qubit_products(a, b):
    """All 16 products reproduce the dense result, phase included."""
    pa, pb = from_string(a), from_string(b)
    prod = pa * pb
    assert np.allclose(prod.dense(), dense_oracle(a) @ dense_oracle(b))


def test_three_site_generator_product_is_minus_xxx():
    s1 = from_string("XZZ")
    s2 = from_string("ZXZ")
    s3 = from_string("ZZX")
    prod = s1 * s2 * s3
    assert prod.to_string() == "-XXX"
    assert prod.phase == 2


@pytest.mark.parametrize(
    "label",
    ["XZZIY", "+iYYXZ", "-ZIZ", "-iXY", "IIII", "Y"],
)
def test_string_roundtrip(label):
    p = from_string(label)
    q = from_string(p.to_string())
    assert p == q


def test_string_prefix_normalization():
    assert from_string("XZ").to_string() == "+XZ"
    assert from_string("-iY").phase == 3
    with pytest.raises(InvalidInput):
        from_string("XQ")
    with pytest.raises(InvalidInput):
        from_string("")


def test_hermitian_base_y_encoding():
    """Overlapping x and z bits mean Y, not iXZ: the string is Hermitian."""
    p = PauliString(1, 1, 1, 0)
    assert np.allclose(p.dense(), Y)
    herm = p.dense()
    assert np.allclose(herm, herm.conj().T)


@pytest.mark.parametrize("seed", range(6))
def test_random_products_match_dense(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    letters = "IXYZ"
    la = "".join(rng.choice(list(letters), n))
    lb = "".join(rng.choice(list(letters), n))
    pa, pb = from_string(la), from_string(lb)
    assert np.allclose((pa * pb).dense(), dense_oracle(la) @ dense_oracle(lb))
    # commutation agrees with the matrix commutator
    comm = dense_oracle(la) @ dense_oracle(lb) - dense_oracle(lb) @ dense_oracle(la)
    assert pa.commutes(pb) == np.allclose(comm, 0)


def test_apply_matches_dense():
    rng = np.random.default_rng(3)
    for label in ("XZY", "-iZIXY", "YYII", "+iIZ"):
        p = from_string(label)
        v = rng.normal(size=1 << p.n) + 1j * rng.normal(size=1 << p.n)
        assert np.allclose(p.apply(v), p.dense() @ v)


def test_weight_and_support():
    p = from_string("XIZYI")
    assert p.weight() == 3
    assert p.support() == {0, 2, 3}
    assert identity(4).weight() == 0


def test_restrict():
    p = from_string("XIIY")
    assert p.restrict([0, 3]).to_string() == "+XY"
    assert p.restrict([0, 1, 3]).to_string() == "+XIY"
    with pytest.raises(InvalidInput):
        from_string("XIZY").restrict([0, 3])


def test_single_and_from_sites():
    assert single(3, 1, "Y").to_string() == "+IYI"
    p = from_sites(4, x_sites=[0], z_sites=[2], y_sites=[3])
    assert p.to_string() == "+XIZY"
    assert from_sites(2, x_sites=[0, 1], z_sites=[1]).to_string() == "+XY"
    with pytest.raises(InvalidInput):
        from_sites(3, x_sites=[0], y_sites=[0])


def test_mul_width_mismatch():
    with pytest.raises(DimensionMismatch):
        from_string("XX") * from_string("X")


def test_negate_and_identity_bits():
    p = from_string("ZZ")
    assert p.negate().to_string() == "-ZZ"
    assert p.negate().negate() == p
    assert from_string("-II").is_identity_bits
    assert not from_string("IX").is_identity_bits


def test_dense_cap():
    with pytest.raises(ResourceCapExceeded):
        identity(13).dense()


def test_phase_composition_associativity():
    rng = np.random.default_rng(9)
    letters = "IXYZ"
    for _ in range(40):
        labels = ["".join(rng.choice(list(letters), 3)) for _ in range(3)]
        a, b, c = (from_string(s) for s in labels)
        assert (a * b) * c == a * (b * c)

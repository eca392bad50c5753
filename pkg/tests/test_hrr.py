import numpy as np
import pytest

from hyperspace import Backend, Hypervector, similarity
from hyperspace import hrr
from hyperspace.errors import NonFinite
from hyperspace.rng import make_rng


def base_at(dim, seed=0):
    return hrr.sample_base(make_rng(seed, 1, 0), dim)


def test_base_spectrum_is_unit_modulus_and_symmetric():
    b = base_at(64)
    spec = np.exp(1j * b.spectrum_phases)
    assert np.allclose(np.abs(spec), 1.0, atol=1e-12)
    # conjugate symmetry: spec[k] == conj(spec[-k])
    assert np.allclose(spec[1:], np.conj(spec[1:][::-1]), atol=1e-12)
    assert spec[0] == 1.0 and spec[32] == 1.0  # DC and Nyquist pinned


def test_base_vector_is_real_and_unit_norm():
    v = base_at(128).vector()
    assert v.backend is Backend.HRR
    assert v.values.dtype == np.float64
    assert abs(v.norm() - 1.0) < 1e-9


def test_encode_zero_gives_convolution_identity():
    b = base_at(32)
    e0 = hrr.encode(b, 0.0)
    assert np.allclose(e0.values, hrr.identity(32).values, atol=1e-9)


def test_encode_one_equals_base_vector():
    b = base_at(32)
    assert np.allclose(hrr.encode(b, 1.0).values, b.vector().values, atol=1e-12)


def test_encode_rejects_nonfinite():
    b = base_at(8)
    with pytest.raises(NonFinite):
        hrr.encode(b, float("nan"))


def test_encode_many_matches_scalar_encode():
    b = base_at(64)
    xs = np.array([0.0, 0.5, 1.0, 3.25, 19.0])
    batch = hrr.encode_many(b, xs)
    assert batch.shape == (5, 64)
    for i, x in enumerate(xs):
        assert np.allclose(batch[i], hrr.encode(b, x).values, atol=1e-12)


def test_fractional_power_homomorphism():
    """encode(x) (*) encode(y) == encode(x + y)."""
    b = base_at(256)
    for x, y in [(1.0, 2.0), (0.3, 0.7), (5.5, -1.25), (10.0, 9.5)]:
        lhs = hrr.bind(hrr.encode(b, x), hrr.encode(b, y))
        rhs = hrr.encode(b, x + y)
        assert np.allclose(lhs.values, rhs.values, atol=1e-9)


def test_bind_is_circular_convolution_shift_oracle():
    a = Hypervector(np.array([1.0, 2.0, 3.0, 4.0]), Backend.HRR)
    shift = Hypervector(np.array([0.0, 1.0, 0.0, 0.0]), Backend.HRR)
    out = hrr.bind(a, shift)
    assert np.allclose(out.values, [4.0, 1.0, 2.0, 3.0], atol=1e-12)


@pytest.mark.parametrize("dim", [4, 16, 64])
def test_bind_matches_direct_convolution(dim):
    rng = np.random.default_rng(dim)
    a, b = rng.standard_normal((2, dim))
    direct = np.array([sum(a[k] * b[(j - k) % dim] for k in range(dim))
                       for j in range(dim)])
    out = hrr.bind(Hypervector(a, Backend.HRR), Hypervector(b, Backend.HRR))
    assert np.allclose(out.values, direct, atol=1e-9)


def test_bind_commutes_and_identity():
    rng = np.random.default_rng(3)
    a = Hypervector(rng.standard_normal(32), Backend.HRR)
    b = Hypervector(rng.standard_normal(32), Backend.HRR)
    assert np.allclose(hrr.bind(a, b).values, hrr.bind(b, a).values, atol=1e-12)
    assert np.allclose(hrr.bind(a, hrr.identity(32)).values, a.values, atol=1e-12)


def test_invert_is_exact_for_unitary_vectors():
    b = base_at(128)
    e = hrr.encode(b, 3.7)
    recovered = hrr.bind(e, hrr.invert(e))
    assert np.allclose(recovered.values, hrr.identity(128).values, atol=1e-9)


def test_invert_is_involution():
    rng = np.random.default_rng(5)
    a = Hypervector(rng.standard_normal(64), Backend.HRR)
    assert np.allclose(hrr.invert(hrr.invert(a)).values, a.values, atol=1e-10)


def test_invert_equals_negative_exponent():
    b = base_at(64)
    assert np.allclose(hrr.invert(hrr.encode(b, 2.5)).values,
                       hrr.encode(b, -2.5).values, atol=1e-10)


def test_unbind_recovers_factor():
    """inv(p) (*) (p (*) v) ~= v for unitary p."""
    b_p, b_v = base_at(512, seed=0), base_at(512, seed=1)
    p, v = hrr.encode(b_p, 4.0), hrr.encode(b_v, 0.6)
    recovered = hrr.bind(hrr.invert(p), hrr.bind(p, v))
    assert similarity(recovered, v) > 1.0 - 1e-9


def test_random_bases_are_quasi_orthogonal():
    dim = 1024
    sims = []
    for s in range(100):
        a = base_at(dim, seed=2 * s).vector()
        b = base_at(dim, seed=2 * s + 1).vector()
        sims.append(similarity(a, b))
    sims = np.array(sims)
    assert abs(sims.mean()) < 0.01
    assert np.abs(sims).max() < 5.0 / np.sqrt(dim)


def test_similarity_kernel_decays_with_exponent_distance():
    """Within the central lobe, similarity falls monotonically as |x-y| grows."""
    b = base_at(4096)
    anchor = hrr.encode(b, 10.0)
    deltas = [0.0, 0.2, 0.4, 0.6, 0.8]
    sims = [similarity(anchor, hrr.encode(b, 10.0 + d)) for d in deltas]
    assert abs(sims[0] - 1.0) < 1e-9
    assert all(s1 > s2 for s1, s2 in zip(sims, sims[1:]))
    # expected kernel for uniform phases is sinc(delta) = sin(pi d)/(pi d)
    for d, s in zip(deltas[1:], sims[1:]):
        assert abs(s - np.sinc(d)) < 0.05


def test_similarity_matrix_matches_pairwise():
    b = base_at(64)
    y = hrr.encode_many(b, np.array([0.5, 1.5]))
    c = hrr.encode_many(b, np.array([0.0, 1.0, 2.0]))
    m = hrr.similarity_matrix(y, c)
    assert m.shape == (2, 3)
    for i in range(2):
        for j in range(3):
            s = similarity(Hypervector(y[i], Backend.HRR),
                           Hypervector(c[j], Backend.HRR))
            assert abs(m[i, j] - s) < 1e-9

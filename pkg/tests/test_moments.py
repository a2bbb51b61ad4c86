import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuclab.moments import eval_moment, make_family, moment_derivative, moments_array, perturb, point_masses
from conftest import builtin_families, random_families


def test_lebesgue_moments():
    s = make_family("lebesgue")
    assert eval_moment(s, 0) == 1
    assert eval_moment(s, 1) == 0
    assert eval_moment(s, 2) == 0


def test_rogers_szego_values():
    s = make_family("rogers-szego", q=0.25)
    assert eval_moment(s, 1) == pytest.approx(-0.5, abs=1e-15)
    assert eval_moment(s, 2) == pytest.approx(0.0625, abs=1e-15)
    assert eval_moment(s, -1) == pytest.approx(-0.5, abs=1e-15)


def test_gaussian_pf_value():
    assert eval_moment(make_family("gaussian-pf", r=0.5), 2) == pytest.approx(0.0625, abs=1e-15)


def test_two_point_masses():
    s = point_masses([1, -1], [0.5, 0.5])
    assert eval_moment(s, 1) == pytest.approx(0, abs=1e-15)
    assert eval_moment(s, 2) == pytest.approx(1, abs=1e-15)


def test_point_mass_convention():
    # a single atom at zeta contributes conj(zeta)^j
    zeta = np.exp(0.7j)
    s = point_masses([zeta], [2.0])
    assert eval_moment(s, 3) == pytest.approx(2 * np.conj(zeta) ** 3, abs=1e-14)


def test_linear_perturbation_of_c0():
    s = perturb(make_family("lebesgue"), 0, "linear", 1.0)
    assert eval_moment(s, 0, 0.1) == pytest.approx(1.1)
    assert eval_moment(s, 0, 0.1).imag == 0.0


def test_perturb_lebesgue_k1():
    s = perturb(make_family("lebesgue"), 1, "linear", 1.0)
    assert eval_moment(s, 1, 0.3) == pytest.approx(0.3)
    assert eval_moment(s, -1, 0.3) == pytest.approx(0.3)
    assert eval_moment(s, 2, 0.3) == 0


def test_perturb_exponential():
    s = perturb(make_family("gaussian-pf", r=0.5), 1, "exponential-scale", -1.0)
    assert eval_moment(s, 1, 0.4) == pytest.approx(0.5 * math.exp(-0.4))
    assert moment_derivative(s, 0.0) == pytest.approx(-0.5)


def test_zero_rate_is_identity():
    base = make_family("rogers-szego", q=0.5)
    s = perturb(base, 2, "linear", 0.0)
    for t in (-0.3, 0.0, 0.7):
        np.testing.assert_array_equal(moments_array(s, 5, t), moments_array(base, 5, 0.0))
    assert moment_derivative(s, 0.2) == 0


def test_linear_derivative():
    s = perturb(make_family("lebesgue"), 1, "linear", 2.0)
    assert moment_derivative(s, 0.3) == 2


@pytest.mark.parametrize("kind", ["linear", "exponential-scale"])
def test_derivative_matches_central_difference(kind):
    s = perturb(make_family("rogers-szego", q=0.5), 2, kind, 0.7)
    h = 1e-5
    fd = (eval_moment(s, 2, 0.1 + h) - eval_moment(s, 2, 0.1 - h)) / (2 * h)
    assert abs(fd - moment_derivative(s, 0.1)) < 1e-8


def test_double_perturbation_rejected():
    s = perturb(make_family("lebesgue"), 1, "linear", 1.0)
    with pytest.raises(ValueError, match="already perturbed"):
        perturb(s, 2, "linear", 1.0)


def test_unperturbed_derivative_rejected():
    with pytest.raises(ValueError):
        moment_derivative(make_family("lebesgue"), 0.0)


@pytest.mark.parametrize("kwargs, match", [
    (dict(name="rogers-szego", q=1.5), "q"),
    (dict(name="rogers-szego", q=0.0), "q"),
    (dict(name="gaussian-pf", r=-0.1), "r"),
    (dict(name="point-masses", nodes=[1.1], weights=[1.0]), "unit circle|unimodular"),
    (dict(name="point-masses", nodes=[1.0], weights=[0.0]), "positive"),
    (dict(name="table", values=[1 + 1j, 0.5]), "c_0"),
    (dict(name="nonsense"), "unknown"),
])
def test_make_family_errors(kwargs, match):
    name = kwargs.pop("name")
    with pytest.raises(ValueError, match=match):
        make_family(name, **kwargs)


def test_table_support_and_domain():
    s = make_family("table", values=[1.0, 0.2], t_domain=(-1.0, 1.0))
    assert eval_moment(s, -1) == pytest.approx(0.2)
    with pytest.raises(IndexError):
        eval_moment(s, 2)
    with pytest.raises(ValueError):
        eval_moment(s, 0, 1.5)


def test_evaluation_is_bit_identical():
    s = perturb(make_family("gaussian-pf", r=0.3), 1, "exponential-scale", 0.9)
    a = moments_array(s, 6, 0.123)
    b = moments_array(s, 6, 0.123)
    assert a.tobytes() == b.tobytes()


@settings(max_examples=60, deadline=None)
@given(j=st.integers(-12, 12), t=st.floats(-0.5, 0.5), k=st.integers(0, 4),
       rate=st.floats(-2, 2), idx=st.integers(0, 9))
def test_hermitian_symmetry_all_families(j, t, k, rate, idx):
    fams = builtin_families() + random_families(4)
    _, base, _ = fams[idx]
    s = perturb(base, k, "linear", rate)
    assert eval_moment(s, -j, t) == np.conj(eval_moment(s, j, t))
    assert eval_moment(s, 0, t).imag == 0.0


def test_point_mass_sections_are_semidefinite(rng):
    s = point_masses(np.exp(1j * rng.uniform(0, 2 * np.pi, 3)), rng.uniform(0.5, 1, 3))
    from opuclab.toeplitz import build_toeplitz
    eig = np.linalg.eigvalsh(build_toeplitz(s, 5).matrix)
    assert eig.min() > -1e-12
    assert np.sum(eig > 1e-9) == 3

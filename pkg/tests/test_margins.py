import math

import numpy as np
import pytest
from scipy.stats import kstest

from armax_extremes import (
    ConfigurationError,
    MarginSpec,
    attraction_domain,
    margin_cdf,
    margin_quantile,
    margin_sample,
    right_endpoint,
)


ALL_SPECS = [
    MarginSpec.frechet(1.0),
    MarginSpec.frechet(2.5),
    MarginSpec.exponential(1.0),
    MarginSpec.exponential(0.3),
    MarginSpec.uniform01(),
    MarginSpec.gpd(0.5, 1.0),
    MarginSpec.gpd(0.0, 2.0),
    MarginSpec.gpd(-0.25, 1.0),
    MarginSpec.weibull_min(0.7),
    MarginSpec.weibull_min(2.5),
]


def test_cdf_point_values():
    assert margin_cdf(MarginSpec.frechet(1.0), 1.0) == pytest.approx(math.exp(-1.0), abs=1e-15)
    assert margin_cdf(MarginSpec.uniform01(), 0.5) == 0.5
    assert margin_cdf(MarginSpec.exponential(1.0), math.log(2.0)) == pytest.approx(0.5, abs=1e-15)


def test_quantile_point_values():
    assert margin_quantile(MarginSpec.frechet(1.0), math.exp(-1.0)) == pytest.approx(1.0, rel=1e-14)
    assert margin_quantile(MarginSpec.uniform01(), 0.25) == 0.25
    assert margin_quantile(MarginSpec.exponential(1.0), 0.5) == pytest.approx(math.log(2.0), rel=1e-14)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_quantile_cdf_round_trip(spec):
    p = np.linspace(0.001, 0.999, 1000)
    back = margin_cdf(spec, margin_quantile(spec, p))
    np.testing.assert_allclose(back, p, atol=1e-12, rtol=0.0)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_cdf_nondecreasing(spec):
    rng = np.random.default_rng(1)
    x = np.sort(rng.uniform(-2.0, 30.0, size=500))
    f = margin_cdf(spec, x)
    assert np.all(np.diff(f) >= 0.0)
    assert np.all((f >= 0.0) & (f <= 1.0))


def test_cdf_outside_support():
    assert margin_cdf(MarginSpec.frechet(1.0), -1.0) == 0.0
    assert margin_cdf(MarginSpec.frechet(1.0), 0.0) == 0.0
    assert margin_cdf(MarginSpec.uniform01(), 2.0) == 1.0
    assert margin_cdf(MarginSpec.uniform01(), -0.1) == 0.0
    # bounded GPD: unity at and beyond the right endpoint scale/|shape|
    spec = MarginSpec.gpd(-0.5, 1.0)
    assert margin_cdf(spec, 2.0) == 1.0
    assert margin_cdf(spec, 5.0) == 1.0


def test_attraction_domains():
    assert attraction_domain(MarginSpec.frechet(2.0)).kind == "frechet"
    assert attraction_domain(MarginSpec.frechet(2.0)).alpha == 2.0
    assert attraction_domain(MarginSpec.exponential(1.0)).kind == "gumbel"
    assert attraction_domain(MarginSpec.uniform01()).kind == "weibull"
    assert attraction_domain(MarginSpec.weibull_min(1.7)).kind == "weibull"
    # GPD splits on the sign of the shape, with alpha = 1/shape on the heavy side
    dom = attraction_domain(MarginSpec.gpd(0.25, 1.0))
    assert dom.kind == "frechet" and dom.alpha == pytest.approx(4.0, rel=1e-15)
    assert attraction_domain(MarginSpec.gpd(0.0, 1.0)).kind == "gumbel"
    assert attraction_domain(MarginSpec.gpd(-0.25, 1.0)).kind == "weibull"
    # shapes inside the zero tolerance are treated as exponential
    assert attraction_domain(MarginSpec.gpd(5e-13, 1.0)).kind == "gumbel"


def test_is_frechet_property():
    assert attraction_domain(MarginSpec.frechet(1.0)).is_frechet
    assert not attraction_domain(MarginSpec.exponential(1.0)).is_frechet
    assert not attraction_domain(MarginSpec.uniform01()).is_frechet


def test_right_endpoints():
    assert right_endpoint(MarginSpec.frechet(1.0)) == math.inf
    assert right_endpoint(MarginSpec.exponential(2.0)) == math.inf
    assert right_endpoint(MarginSpec.gpd(0.5, 1.0)) == math.inf
    assert right_endpoint(MarginSpec.gpd(0.0, 1.0)) == math.inf
    assert right_endpoint(MarginSpec.uniform01()) == 1.0
    assert right_endpoint(MarginSpec.gpd(-0.5, 1.0)) == pytest.approx(2.0, rel=1e-15)
    assert right_endpoint(MarginSpec.weibull_min(2.0)) == math.inf


@pytest.mark.parametrize("spec", ALL_SPECS, ids=str)
def test_sampling_matches_cdf(spec):
    rng = np.random.default_rng(42)
    x = margin_sample(spec, rng, size=100_000)
    res = kstest(x, lambda v: margin_cdf(spec, v))
    assert res.pvalue > 0.01


def test_sample_is_inverse_transform():
    # a seeded stream drives the quantile function directly
    rng1 = np.random.default_rng(7)
    rng2 = np.random.default_rng(7)
    spec = MarginSpec.frechet(1.5)
    x = margin_sample(spec, rng1, size=100)
    u = rng2.random(100)
    np.testing.assert_array_equal(x, margin_quantile(spec, np.clip(u, 1e-300, 1.0 - 1e-16)))


def test_uniform_sample_mean():
    rng = np.random.default_rng(5)
    x = margin_sample(MarginSpec.uniform01(), rng, size=100_000)
    assert abs(x.mean() - 0.5) < 0.01


def test_spec_validation():
    with pytest.raises(ConfigurationError):
        MarginSpec.frechet(0.0)
    with pytest.raises(ConfigurationError):
        MarginSpec.frechet(-1.0)
    with pytest.raises(ConfigurationError):
        MarginSpec.exponential(0.0)
    with pytest.raises(ConfigurationError):
        MarginSpec.gpd(0.1, -2.0)
    with pytest.raises(ConfigurationError):
        MarginSpec.weibull_min(0.0)


def test_quantile_domain_errors():
    for p in (-0.1, 0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            margin_quantile(MarginSpec.frechet(1.0), p)

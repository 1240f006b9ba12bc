import pytest

import _props


@pytest.mark.parametrize("suite", _props.ALL_SUITES, ids=lambda f: f.__name__)
def test_property_suite(suite):
    s = suite()
    assert s.trials >= 100
    assert s.exercised > 0, s.summary()
    assert s.ok, (s.summary(), s.violations[:3])


def test_gp_matches_lower_partial_integral():
    worst, n = _props.gp_oracle()
    assert n == 51 and worst <= 1e-8

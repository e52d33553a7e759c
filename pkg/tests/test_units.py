import pytest
from hypothesis import given, strategies as st

from cgs.errors import ConfigError, DomainError
from cgs.units import PF_PER_YF, GJ_PER_EJ, TimeGrid, ej_to_twh, periods, twh_to_ej


@pytest.mark.parametrize("ej, twh", [(1.5, 416.6666666666667), (0.0, 0.0), (3.0, 833.3333333333334)])
def test_ej_to_twh(ej, twh):
    assert ej_to_twh(ej) == pytest.approx(twh, rel=1e-15, abs=0)


def test_anchor_rounding_matches_reported_values():
    assert round(ej_to_twh(1.5), -1) == 420
    assert round(ej_to_twh(3.0), -1) == 830


def test_negative_energy_rejected():
    with pytest.raises(DomainError):
        ej_to_twh(-1e-9)
    with pytest.raises(DomainError):
        twh_to_ej(-1.0)


@given(st.floats(1e-6, 1e3))
def test_round_trip(x):
    assert twh_to_ej(ej_to_twh(x)) == pytest.approx(x, rel=1e-12)


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e5), st.floats(1e-7, 1e-3))
def test_unit_scaling_invariance(k, service, gamma):
    assert (k * service) * (gamma / k) == pytest.approx(service * gamma, rel=1e-12)


def test_bridging_identity():
    # EJ/YF * $/GJ -> $/PF: the 1e-9 and 1e9 factors cancel
    assert GJ_PER_EJ / PF_PER_YF == 1.0


@pytest.mark.parametrize("grid, years", [
    (TimeGrid(2025, 2050, 5), [2025, 2030, 2035, 2040, 2045, 2050]),
    (TimeGrid(2025, 2030, 5), [2025, 2030]),
    (TimeGrid(2025, 2100, 25), [2025, 2050, 2075, 2100]),
])
def test_periods(grid, years):
    assert periods(grid) == years


@pytest.mark.parametrize("args", [(2050, 2025, 5), (2025, 2025, 5), (2025, 2050, 7),
                                  (2025, 2050, 0), (2025, 2050.0, 5)])
def test_invalid_grids(args):
    with pytest.raises(ConfigError):
        TimeGrid(*args)


def test_grid_membership():
    g = TimeGrid(2025, 2050, 5)
    assert 2035 in g and 2036 not in g and 2055 not in g

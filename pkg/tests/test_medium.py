"""Coefficient profile and medium validation checks."""

import numpy as np
import pytest

from milnesea.errors import InvalidProfileError
from milnesea.medium import (CoefficientProfile, MediumSpec, beta_at,
                             omega_at, validate_asymptotics)

EXP_HALF = 0.6065306597126334      # exp(-1/2)
SECH2_1 = 0.41997434161402614      # 1 / cosh(1)^2


def gaussian(base=1.0, amplitude=0.5, center=10.0, width=1.0):
    return CoefficientProfile(kind="gaussian-bump", base=base,
                              amplitude=amplitude, center=center, width=width)


class TestProfiles:
    def test_constant(self):
        prof = CoefficientProfile(kind="constant", base=0.7)
        assert prof.value(-100.0) == 0.7
        assert prof.value(3.0) == 0.7
        np.testing.assert_array_equal(prof.value(np.arange(4.0)),
                                      np.full(4, 0.7))

    def test_gaussian_bump_peak_and_shape(self):
        prof = gaussian()
        assert prof.value(10.0) == 1.5
        assert prof.value(11.0) == pytest.approx(1.0 + 0.5 * EXP_HALF,
                                                 rel=1e-14)
        # symmetric about the center
        assert prof.value(10.0 + 2.3) == pytest.approx(prof.value(10.0 - 2.3),
                                                       rel=1e-12)

    def test_sech2_bump_values(self):
        prof = CoefficientProfile(kind="sech2-bump", base=1.0, amplitude=0.2,
                                  center=0.0, width=2.0)
        assert prof.value(0.0) == pytest.approx(1.2, rel=1e-15)
        assert prof.value(2.0) == pytest.approx(1.0 + 0.2 * SECH2_1, rel=1e-14)

    def test_table_hits_knots_exactly_and_clamps(self):
        prof = CoefficientProfile(kind="table",
                                  table=((0.0, 1.0), (1.0, 3.0), (4.0, 3.0)))
        assert prof.value(0.0) == 1.0
        assert prof.value(1.0) == 3.0
        assert prof.value(0.5) == pytest.approx(2.0)
        assert prof.value(-5.0) == 1.0   # clamped left
        assert prof.value(99.0) == 3.0   # clamped right

    def test_kind_validation(self):
        with pytest.raises(InvalidProfileError):
            CoefficientProfile(kind="parabola")
        with pytest.raises(InvalidProfileError):
            CoefficientProfile(kind="gaussian-bump", width=0.0)
        with pytest.raises(InvalidProfileError):
            CoefficientProfile(kind="table", table=())
        with pytest.raises(InvalidProfileError):
            CoefficientProfile(kind="table", table=((1.0, 1.0), (1.0, 2.0)))


class TestCoefficientAccess:
    def test_omega_positive_ok(self):
        prof = gaussian(amplitude=-0.5)
        assert omega_at(prof, 10.0) == 0.5

    def test_omega_rejects_nonpositive(self):
        prof = gaussian(amplitude=-1.5)
        with pytest.raises(InvalidProfileError):
            omega_at(prof, 10.0)

    def test_beta_rejects_negative(self):
        prof = gaussian(base=0.1, amplitude=-0.5)
        with pytest.raises(InvalidProfileError):
            beta_at(prof, 10.0)
        # fine in the tails where the dip has decayed
        assert beta_at(prof, 30.0) == pytest.approx(0.1)

    def test_array_access(self):
        prof = CoefficientProfile(kind="constant", base=2.0)
        np.testing.assert_array_equal(omega_at(prof, np.zeros(3)),
                                      np.full(3, 2.0))


class TestAsymptotics:
    def test_settled_gaussian(self):
        assert validate_asymptotics(gaussian(), horizon=30.0, eps=1e-9)

    def test_horizon_inside_bump_fails_even_with_huge_eps(self):
        assert not validate_asymptotics(gaussian(), horizon=12.0, eps=10.0)

    def test_eps_respected(self):
        # at 8 sigma past the center the bump is ~ 0.5 * 1.3e-14
        assert not validate_asymptotics(gaussian(), horizon=18.0, eps=1e-16)
        assert validate_asymptotics(gaussian(), horizon=18.0, eps=1e-9)

    def test_constant_always_settled(self):
        prof = CoefficientProfile(kind="constant", base=0.3)
        assert validate_asymptotics(prof, horizon=1.0, eps=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            validate_asymptotics(gaussian(), horizon=-1.0)


class TestMediumSpec:
    def test_accepts_standard_medium(self):
        med = MediumSpec(gaussian(amplitude=0.2),
                         CoefficientProfile(kind="constant", base=0.5))
        assert med.omega(10.0) == pytest.approx(1.2)
        assert med.beta(0.0) == 0.5
        assert med.sound_speed == 1480.0

    def test_omega_background_must_be_one(self):
        with pytest.raises(InvalidProfileError):
            MediumSpec(CoefficientProfile(kind="constant", base=1.2),
                       CoefficientProfile(kind="constant", base=0.0))

    def test_omega_must_stay_positive(self):
        with pytest.raises(InvalidProfileError):
            MediumSpec(gaussian(amplitude=-1.5),
                       CoefficientProfile(kind="constant", base=0.0))

    def test_beta_must_stay_nonnegative(self):
        with pytest.raises(InvalidProfileError):
            MediumSpec(CoefficientProfile(kind="constant", base=1.0),
                       CoefficientProfile(kind="constant", base=-0.1))

    def test_degenerate_escape_hatch(self):
        # deliberately degenerate test medium: omega identically zero
        med = MediumSpec(CoefficientProfile(kind="constant", base=0.0),
                         CoefficientProfile(kind="constant", base=0.5),
                         allow_degenerate_omega=True)
        assert med.omega(1.0) == 0.0

    def test_sound_speed_positive(self):
        with pytest.raises(InvalidProfileError):
            MediumSpec(CoefficientProfile(kind="constant", base=1.0),
                       CoefficientProfile(kind="constant", base=0.0),
                       sound_speed=0.0)

#include <doctest.h>

#include "eitdicke/lineshape.hpp"
#include "eitdicke/units.hpp"
#include "test_util.hpp"

using namespace eitdicke;
using eitdicke::test::rel_close;

namespace {

KineticsReport cell() { return kinetics_report(MediumParams::rb_neon_cell()); }
KineticsReport cell_forced() { return kinetics_report_with_rate(MediumParams::rb_neon_cell(), 8e7); }
BeamGeometry at_mrad(double theta) { return BeamGeometry{units::mrad(theta), 795e-9}; }

}  // namespace

TEST_CASE("residual Doppler width") {
  const auto kin = cell();
  const double res = residual_doppler_width(at_mrad(0.5), kin.v_th);
  CHECK(units::rad_to_hz(res) == doctest::Approx(110924.977).epsilon(1e-7));
  CHECK(std::abs(units::rad_to_hz(res) / 111e3 - 1.0) <= 0.01);
  CHECK(residual_doppler_width(at_mrad(0.0), kin.v_th) == 0.0);
  const double g = units::rad_to_hz(gaussian_fwhm(res));
  CHECK(g == doctest::Approx(261208.3).epsilon(1e-6));
  CHECK(std::abs(g / 250e3 - 1.0) <= 0.05);
}

TEST_CASE("narrowing factor") {
  const auto kin = cell();
  const auto eta = narrowing_factor(at_mrad(0.5), kin);
  REQUIRE(eta.has_value());
  CHECK(*eta == doctest::Approx(0.00940555).epsilon(1e-5));
  CHECK(std::abs(*eta / 8.7e-3 - 1.0) <= 0.10);
  CHECK(*narrowing_factor(at_mrad(0.0), kin) == 0.0);
  for (double theta : {0.1, 0.5, 1.0, 1.9, 7.0}) {
    CHECK(rel_close(*narrowing_factor(at_mrad(theta), kin),
                    narrowing_factor_from_path(at_mrad(theta), kin.mean_free_path), 1e-14));
  }
  auto empty = MediumParams::rb_neon_cell();
  empty.buffer_pressure_pa = 0.0;
  CHECK_FALSE(narrowing_factor(at_mrad(0.5), kinetics_report(empty)).has_value());
}

TEST_CASE("excess width") {
  const auto kin = cell();
  CHECK(units::rad_to_hz(2.0 * excess_hwhm(at_mrad(0.5), kin)) == doctest::Approx(2086.60114).epsilon(1e-7));
  CHECK(units::rad_to_hz(2.0 * excess_hwhm(at_mrad(1.0), kin)) == doctest::Approx(8346.40456).epsilon(1e-7));
  // With the 2.2 um path the 0.5 mrad excess is the quoted 1.93 kHz.
  const auto forced = cell_forced();
  const double forced_half = units::rad_to_hz(2.0 * excess_hwhm(at_mrad(0.5), forced));
  CHECK(forced_half == doctest::Approx(1932.76).epsilon(1e-5));
  CHECK(std::abs(forced_half / 2000.0 - 1.0) <= 0.2);
  CHECK(units::rad_to_hz(2.0 * excess_hwhm(at_mrad(1.0), forced)) == doctest::Approx(7731.05).epsilon(1e-5));
  // Quadratic law.
  for (double theta : {0.1, 0.3, 0.5, 2.0}) {
    CHECK(rel_close(excess_hwhm(at_mrad(2.0 * theta), kin), 4.0 * excess_hwhm(at_mrad(theta), kin), 1e-14));
  }
  // Equals eta times the residual Doppler width.
  const auto g = at_mrad(0.7);
  CHECK(rel_close(excess_hwhm(g, kin), *narrowing_factor(g, kin) * residual_doppler_width(g, kin.v_th), 1e-14));
  auto empty = MediumParams::rb_neon_cell();
  empty.buffer_pressure_pa = 0.0;
  CHECK_THROWS_AS(excess_hwhm(at_mrad(0.5), kinetics_report(empty)), std::domain_error);
}

TEST_CASE("S2 lineshape shape identities") {
  const auto kin = cell();
  auto eit = EitParams::rb_neon_cell();
  for (double theta : {0.0, 0.5, 1.0}) {
    const auto g = at_mrad(theta);
    const double w = eit.gamma_12 + excess_hwhm(g, kin);
    const std::vector<double> grid{-3.0 * w, -w, 0.0, w, 3.0 * w};
    const auto s = s2_lineshape(grid, g, eit, kin);
    CHECK(s.kind == SpectrumKind::absorption);
    CHECK(s.values[2] < 0.0);
    for (double v : s.values) CHECK(v >= s.values[2]);
    CHECK(s.values[0] == s.values[4]);
    CHECK(rel_close(s.values[1], s.values[2] / 2.0, 1e-14));
    CHECK(rel_close(s.values[3], s.values[2] / 2.0, 1e-14));
    CHECK(rel_close(s.values[2] / s.values[4], 10.0, 1e-13));
  }

  eit.light_shift = units::hz_to_rad(300.0);
  const auto g = at_mrad(0.5);
  const double w = eit.gamma_12 + excess_hwhm(g, kin);
  const std::vector<double> shifted{eit.light_shift - w, eit.light_shift, eit.light_shift + w};
  const auto s = s2_lineshape(shifted, g, eit, kin);
  CHECK(rel_close(s.values[0], s.values[1] / 2.0, 1e-12));
  CHECK(rel_close(s.values[2], s.values[1] / 2.0, 1e-12));
}

TEST_CASE("S2 prefactor carries the half-angle term") {
  const auto kin = cell();
  const auto eit = EitParams::rb_neon_cell();
  const auto g = at_mrad(1.0);
  const double a = excess_hwhm(g, kin) / 2.0;
  const double w = eit.gamma_12 + 2.0 * a;
  const std::vector<double> grid{0.0};
  const double expected = -(eit.rabi_pump * eit.rabi_pump) / ((eit.gamma_opt + a) * (eit.gamma_opt + a)) / w;
  CHECK(rel_close(s2_lineshape(grid, g, eit, kin).values[0], expected, 1e-14));
}

TEST_CASE("peak amplitude ratio") {
  const auto kin = cell();
  const auto eit = EitParams::rb_neon_cell();
  CHECK(peak_amplitude_ratio(at_mrad(0.0), eit, kin) == 1.0);
  CHECK(peak_amplitude_ratio(at_mrad(0.5), eit, kin) == doctest::Approx(0.489400).epsilon(1e-5));
  CHECK(peak_amplitude_ratio(at_mrad(1.0), eit, kin) == doctest::Approx(0.193298).epsilon(1e-5));
  CHECK(peak_amplitude_ratio(at_mrad(1.9), eit, kin) == doctest::Approx(0.0622399).epsilon(1e-5));
  const auto forced = cell_forced();
  CHECK(peak_amplitude_ratio(at_mrad(0.5), eit, forced) == doctest::Approx(0.508545).epsilon(1e-5));
  CHECK(peak_amplitude_ratio(at_mrad(1.0), eit, forced) == doctest::Approx(0.205522).epsilon(1e-5));
  CHECK(peak_amplitude_ratio(at_mrad(1.9), eit, forced) == doctest::Approx(0.066863).epsilon(1e-4));

  double previous = 2.0;
  for (int i = 0; i <= 40; ++i) {
    const double r = peak_amplitude_ratio(at_mrad(0.05 * i), eit, kin);
    CHECK(r < previous);
    previous = r;
  }
  auto no_decay = eit;
  no_decay.gamma_12 = 0.0;
  CHECK_THROWS_AS(peak_amplitude_ratio(at_mrad(0.5), no_decay, kin), std::domain_error);
}

TEST_CASE("theoretical FWHM") {
  const auto kin = cell();
  const auto eit = EitParams::rb_neon_cell();
  CHECK(units::rad_to_hz(theoretical_fwhm(at_mrad(0.0), eit, kin)) == doctest::Approx(2000.0).epsilon(1e-12));
  const double diff = units::rad_to_hz(theoretical_fwhm(at_mrad(0.5), eit, kin) -
                                       theoretical_fwhm(at_mrad(0.0), eit, kin));
  CHECK(diff >= 1600.0);
  CHECK(diff <= 2300.0);
}

TEST_CASE("validity warnings") {
  const auto kin = cell();
  auto eit = EitParams::rb_neon_cell();
  CHECK(validity_warnings(at_mrad(1.0), eit, kin).empty());
  eit.rabi_pump = units::hz_to_rad(1e6);
  CHECK(validity_warnings(at_mrad(1.0), eit, kin).size() == 1);

  auto thin = MediumParams::rb_neon_cell();
  thin.buffer_pressure_pa = units::torr(1.0);
  const auto warnings = validity_warnings(at_mrad(2.0), EitParams::rb_neon_cell(), kinetics_report(thin));
  REQUIRE_FALSE(warnings.empty());
  CHECK(warnings.front().find("0.2") != std::string::npos);
}

TEST_CASE("parameter validation") {
  auto eit = EitParams::rb_neon_cell();
  eit.gamma_opt = 0.0;
  CHECK_THROWS_WITH_AS(eit.validate(), doctest::Contains("gamma_opt"), std::invalid_argument);
  CHECK_THROWS_AS((BeamGeometry{0.02, 795e-9}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((BeamGeometry{-1e-3, 795e-9}).validate(), std::invalid_argument);

  Spectrum s{{0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  Spectrum t{{0.0, 1.0}, {1.0}};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  Spectrum u{{0.0, 1.0}, {1.0, std::nan("")}};
  CHECK_THROWS_AS(u.validate(), std::invalid_argument);
  CHECK_THROWS_AS(s2_lineshape(std::vector<double>{}, at_mrad(0.5), EitParams::rb_neon_cell(), cell()),
                  std::invalid_argument);
}

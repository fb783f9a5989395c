#include <doctest.h>

#include <random>

#include "eitdicke/kinetics.hpp"
#include "eitdicke/units.hpp"
#include "test_util.hpp"

using namespace eitdicke;
using eitdicke::test::rel_close;

namespace {

constexpr double kT = 325.15;
const double kRbMass = 86.909 * units::kAtomicMassUnit;
const double kNeMass = 20.18 * units::kAtomicMassUnit;

}  // namespace

TEST_CASE("thermal velocity") {
  CHECK(thermal_velocity_1d(kT, kRbMass) == doctest::Approx(176.370714).epsilon(1e-8));
  CHECK(std::abs(thermal_velocity_1d(kT, kRbMass) - 176.4) <= 0.5);
  CHECK(thermal_velocity_1d(0.0, kRbMass) == 0.0);
  CHECK(thermal_velocity_1d(4.0 * kT, kRbMass) == 2.0 * thermal_velocity_1d(kT, kRbMass));
  CHECK_THROWS_AS(thermal_velocity_1d(kT, 0.0), std::domain_error);
  CHECK_THROWS_AS(thermal_velocity_1d(kT, -1.0), std::domain_error);
}

TEST_CASE("mean relative speed") {
  CHECK(mean_relative_speed(kT, kNeMass, kRbMass) == doctest::Approx(648.348307).epsilon(1e-8));
  CHECK(std::abs(mean_relative_speed(kT, kNeMass, kRbMass) - 648.0) <= 2.0);
  CHECK(mean_relative_speed(0.0, kNeMass, kRbMass) == 0.0);
  const double single = std::sqrt(8.0 * units::kBoltzmann * kT / (units::kPi * kRbMass));
  CHECK(rel_close(mean_relative_speed(kT, kRbMass, 1e30), single, 1e-12));
  CHECK_THROWS_AS(mean_relative_speed(kT, kRbMass, 0.0), std::domain_error);
}

TEST_CASE("collision rate and mean free path at the Rb/Ne cell") {
  const auto cell = MediumParams::rb_neon_cell();
  const double rate = collision_rate(cell);
  CHECK(rate == doctest::Approx(7.41018621e7).epsilon(1e-8));
  CHECK(rate >= 6.8e7);
  CHECK(rate <= 9.2e7);

  const auto path = mean_free_path(cell);
  REQUIRE(path.has_value());
  CHECK(*path == doctest::Approx(2.38011177e-6).epsilon(1e-8));
  CHECK(*path >= 2.0e-6);
  CHECK(*path <= 2.6e-6);

  auto doubled = cell;
  doubled.buffer_pressure_pa *= 2.0;
  CHECK(collision_rate(doubled) == 2.0 * rate);
  CHECK(rel_close(*mean_free_path(doubled), *path / 2.0, 1e-15));
}

TEST_CASE("forced collision rate reproduces the 2.2 um path") {
  const auto kin = kinetics_report_with_rate(MediumParams::rb_neon_cell(), 8e7);
  CHECK(kin.mean_free_path == doctest::Approx(2.20463e-6).epsilon(1e-5));
  CHECK(kin.collision_rate == 8e7);
  CHECK_THROWS_AS(kinetics_report_with_rate(MediumParams::rb_neon_cell(), -1.0), std::invalid_argument);
}

TEST_CASE("kinetics report") {
  const auto kin = kinetics_report(MediumParams::rb_neon_cell());
  CHECK(units::rad_to_hz(kin.doppler_width) == doctest::Approx(221.849955e6).epsilon(1e-8));
  CHECK(kin.buffer_density == doctest::Approx(2.96985181e23).epsilon(1e-8));
  CHECK(rel_close(kin.mean_free_path * kin.collision_rate, kin.v_th, 1e-15));
  CHECK(kin.doppler_width == units::kTwoPi * kin.v_th / 795e-9);
}

TEST_CASE("zero pressure is ballistic") {
  auto cell = MediumParams::rb_neon_cell();
  cell.buffer_pressure_pa = 0.0;
  CHECK(collision_rate(cell) == 0.0);
  CHECK_FALSE(mean_free_path(cell).has_value());
  const auto kin = kinetics_report(cell);
  CHECK(kin.ballistic());
  CHECK(std::isinf(kin.mean_free_path));
}

TEST_CASE("invariant violations name the field") {
  auto cell = MediumParams::rb_neon_cell();
  cell.temperature_k = 0.0;
  CHECK_THROWS_WITH_AS(cell.validate(), doctest::Contains("temperature"), std::invalid_argument);
  cell = MediumParams::rb_neon_cell();
  cell.hard_sphere_radius_m = 0.0;
  CHECK_THROWS_WITH_AS(cell.validate(), doctest::Contains("hard_sphere_radius"), std::invalid_argument);
  cell = MediumParams::rb_neon_cell();
  cell.buffer_pressure_pa = -1.0;
  CHECK_THROWS_WITH_AS(kinetics_report(cell), doctest::Contains("buffer_pressure"), std::invalid_argument);
}

TEST_CASE("Dicke regime holds up to 1 mrad") {
  const auto kin = kinetics_report(MediumParams::rb_neon_cell());
  for (double theta : {0.0, 0.1e-3, 0.5e-3, 1e-3}) CHECK(dicke_regime(kin, 795e-9, theta));
  auto thin = MediumParams::rb_neon_cell();
  thin.buffer_pressure_pa = units::torr(0.01);
  CHECK_FALSE(dicke_regime(kinetics_report(thin), 795e-9, 1e-3));
}

TEST_CASE("property: random media stay consistent") {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> temp(200.0, 500.0), torr(0.01, 200.0), radius(0.1e-9, 1e-9),
      mass(1.0, 250.0), lambda(300e-9, 2e-6);
  for (int i = 0; i < 500; ++i) {
    MediumParams m;
    m.temperature_k = temp(rng);
    m.buffer_pressure_pa = units::torr(torr(rng));
    m.active = {"a", mass(rng) * units::kAtomicMassUnit};
    m.buffer = {"b", mass(rng) * units::kAtomicMassUnit};
    m.hard_sphere_radius_m = radius(rng);
    m.optical_wavelength_m = lambda(rng);
    const auto kin = kinetics_report(m);
    for (double v : {kin.v_th, kin.v_rel, kin.buffer_density, kin.collision_rate, kin.mean_free_path,
                     kin.doppler_width}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
    CHECK(rel_close(kin.mean_free_path * kin.collision_rate, kin.v_th, 4e-16));
    CHECK(rel_close(kin.doppler_width, units::kTwoPi * kin.v_th / m.optical_wavelength_m, 1e-15));

    auto p3 = m;
    p3.buffer_pressure_pa *= 3.0;
    CHECK(rel_close(collision_rate(p3), 3.0 * kin.collision_rate, 1e-15));
    auto t4 = m;
    t4.temperature_k *= 4.0;
    CHECK(rel_close(collision_rate(t4), kin.collision_rate / 2.0, 1e-14));
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eitdicke/imaging.hpp"
#include "eitdicke/units.hpp"
#include "test_util.hpp"

using namespace eitdicke;
using eitdicke::test::rel_close;

namespace {

KineticsReport cell() { return kinetics_report(MediumParams::rb_neon_cell()); }

struct Images {
  RadialProfile input, off, eit;
};

Images simulate(const ImagingConfig& cfg, const EitParams& eit = EitParams::rb_neon_cell()) {
  Images im;
  im.input = input_profile(cfg);
  im.off = transmitted_profile(im.input, cfg, eit, cell(), 795e-9, TransmissionMode::off_resonance);
  im.eit = transmitted_profile(im.input, cfg, eit, cell(), 795e-9, TransmissionMode::eit_resonance);
  return im;
}

double ratio_at(double theta) {
  return peak_amplitude_ratio(BeamGeometry{theta, 795e-9}, EitParams::rb_neon_cell(), cell());
}

}  // namespace

TEST_CASE("angle profile") {
  const ImagingConfig cfg;
  CHECK(theta_profile(cfg.waist_radius, cfg) == doctest::Approx(1.9e-3).epsilon(1e-15));
  CHECK(theta_profile(0.0, cfg) == 0.0);
  CHECK(theta_profile(cfg.waist_radius / 2.0, cfg) == doctest::Approx(0.95e-3).epsilon(1e-15));
  CHECK_THROWS_AS(theta_profile(-1.0, cfg), std::domain_error);
}

TEST_CASE("input profile and second moment") {
  const ImagingConfig cfg;
  const auto in = input_profile(cfg);
  REQUIRE(in.radii.size() == 512);
  CHECK(in.radii.front() == 0.0);
  CHECK(in.radii.back() == doctest::Approx(3.0 * cfg.waist_radius).epsilon(1e-15));
  CHECK(in.intensity.front() == 1.0);
  // Intensity at w0 (interpolation-free: evaluate on a grid that hits w0).
  ImagingConfig hit = cfg;
  hit.n_radii = 301;
  const auto h = input_profile(hit);
  CHECK(std::abs(h.intensity[100] - std::exp(-2.0)) <= 1e-12);

  const double w = second_moment_width(in);
  CHECK(std::abs(w / (cfg.waist_radius / std::sqrt(2.0)) - 1.0) <= 0.005);

  RadialProfile scaled = in;
  for (auto& v : scaled.intensity) v *= 37.0;
  CHECK(rel_close(second_moment_width(scaled), w, 1e-14));

  RadialProfile wide;
  wide.radii = linear_grid(0.0, 5.0 * cfg.waist_radius, 853);
  for (double r : wide.radii) wide.intensity.push_back(std::exp(-2.0 * r * r / (cfg.waist_radius * cfg.waist_radius)));
  CHECK(std::abs(second_moment_width(wide) / w - 1.0) < 0.005);

  RadialProfile dark = in;
  std::fill(dark.intensity.begin(), dark.intensity.end(), 0.0);
  CHECK_THROWS_AS(second_moment_width(dark), std::domain_error);
}

TEST_CASE("collimated control is a pure rescaling") {
  ImagingConfig cfg;
  cfg.theta_max = 0.0;
  const auto im = simulate(cfg);
  for (std::size_t i = 0; i < im.input.radii.size(); ++i) {
    CHECK(im.off.intensity[i] == cfg.background_transmission * im.input.intensity[i]);
    CHECK(im.eit.intensity[i] ==
          (cfg.background_transmission + cfg.eit_contrast) * im.input.intensity[i]);
  }
  // Equal up to rounding of the two scalings.
  CHECK(std::abs(second_moment_width(im.eit) / second_moment_width(im.off) - 1.0) <= 1e-14);
}

TEST_CASE("divergent beam transmission") {
  const ImagingConfig cfg;
  const auto im = simulate(cfg);
  ImagingConfig col = cfg;
  col.theta_max = 0.0;
  const auto c = simulate(col);
  CHECK(im.eit.intensity[0] == c.eit.intensity[0]);

  const double at_w0 = (cfg.background_transmission + cfg.eit_contrast * ratio_at(1.9e-3)) /
                       (cfg.background_transmission + cfg.eit_contrast);
  CHECK(at_w0 == doctest::Approx(0.648337).epsilon(1e-5));
  CHECK(std::abs(at_w0 / 0.672 - 1.0) <= 0.05);

  double previous = 2.0;
  for (std::size_t i = 0; i < im.input.radii.size(); ++i) {
    const double local = im.eit.intensity[i] / im.off.intensity[i];
    CHECK(local <= previous);
    previous = local;
  }
  CHECK(second_moment_width(im.eit) < second_moment_width(im.off));
}

TEST_CASE("transparency curve inverts the forward model") {
  const ImagingConfig cfg;
  const auto im = simulate(cfg);
  const auto curve = relative_transparency_curve(im.eit, im.off, cfg);
  const double peak = *std::max_element(im.off.intensity.begin(), im.off.intensity.end());
  const auto lit = static_cast<std::size_t>(std::count_if(
      im.off.intensity.begin(), im.off.intensity.end(), [&](double v) { return v > 1e-6 * peak; }));
  REQUIRE(lit > im.input.radii.size() / 2);
  REQUIRE(curve.size() == lit);
  CHECK(curve.front().radius == 0.0);
  CHECK(curve.front().theta == 0.0);
  CHECK(curve.front().ratio == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& s : curve) CHECK(std::abs(s.ratio - ratio_at(s.theta)) <= 1e-14);

  // Samples where the off-resonance image is effectively dark are dropped.
  RadialProfile off = im.off, eit = im.eit;
  off.intensity[10] = 0.0;
  eit.intensity[10] = 0.0;
  CHECK(relative_transparency_curve(eit, off, cfg).size() == curve.size() - 1);

  ImagingConfig flat = cfg;
  flat.eit_contrast = 0.0;
  CHECK_THROWS_AS(relative_transparency_curve(im.eit, im.off, flat), std::domain_error);
}

TEST_CASE("2% image noise") {
  const ImagingConfig cfg;
  const auto im = simulate(cfg);
  const auto off = add_image_noise(im.off, 0.02, 41);
  const auto eit = add_image_noise(im.eit, 0.02, 42);
  const auto curve = relative_transparency_curve(eit, off, cfg);
  double ss = 0.0;
  std::size_t n = 0;
  for (const auto& s : curve) {
    if (s.theta > cfg.theta_max) continue;
    const double expected = ratio_at(s.theta);
    ss += (s.ratio - expected) * (s.ratio - expected) / (expected * expected);
    ++n;
  }
  CHECK(std::sqrt(ss / static_cast<double>(n)) <= 0.05);

  ImagingConfig col = cfg;
  col.theta_max = 0.0;
  const auto c = simulate(col);
  const double change = second_moment_width(add_image_noise(c.eit, 0.02, 42)) /
                            second_moment_width(add_image_noise(c.off, 0.02, 41)) -
                        1.0;
  CHECK(std::abs(change) < 0.05);
}

TEST_CASE("noise model") {
  const auto in = input_profile(ImagingConfig{});
  CHECK(add_image_noise(in, 0.02, 5).intensity == add_image_noise(in, 0.02, 5).intensity);
  CHECK(add_image_noise(in, 0.02, 5).intensity != add_image_noise(in, 0.02, 6).intensity);
  CHECK(add_image_noise(in, 0.0, 5).intensity == in.intensity);
  for (double v : add_image_noise(in, 3.0, 5, false).intensity) CHECK(v >= 0.0);
  CHECK_THROWS_AS(add_image_noise(in, -0.1, 5), std::invalid_argument);
}

TEST_CASE("imaging config validation") {
  ImagingConfig cfg;
  cfg.background_transmission = 0.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("background_transmission"), std::invalid_argument);
  cfg = ImagingConfig{};
  cfg.eit_contrast = 0.6;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("eit_contrast"), std::invalid_argument);
  RadialProfile p{{0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}, ""};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

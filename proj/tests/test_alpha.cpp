#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rwcre/alpha.hpp"
#include "rwcre/error.hpp"
#include "rwcre/json_io.hpp"
#include "rwcre/rng.hpp"

using namespace rwcre;

namespace {

const AlphaSpec kRecurrent = AlphaSpec::two_point(1.0 / 3.0, 0.5, 2.0 / 3.0);
const AlphaSpec kZeroSpeed = AlphaSpec::two_point(1.0 / 3.0, 0.5, 0.8);

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("alpha moments by atom arithmetic") {
  const auto half = alpha_moments(AlphaSpec::point_mass(0.5));
  CHECK(half.mean_rho == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(half.mean_log_rho == doctest::Approx(0.0));
  CHECK(half.var_log_rho == doctest::Approx(0.0));

  const auto rec = alpha_moments(kRecurrent);
  CHECK(rec.mean_rho == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(std::abs(rec.mean_log_rho) < 1e-15);
  CHECK(rec.var_log_rho == doctest::Approx(std::log(2.0) * std::log(2.0)).epsilon(1e-14));

  const auto zs = alpha_moments(kZeroSpeed);
  CHECK(zs.mean_log_rho == doctest::Approx(-std::log(2.0) / 2.0).epsilon(1e-14));
  CHECK(zs.mean_rho == doctest::Approx(1.125).epsilon(1e-14));
}

TEST_CASE("regime classification") {
  const auto ballistic = classify(AlphaSpec::point_mass(0.75));
  CHECK(ballistic.kind == RegimeKind::Ballistic);
  CHECK(ballistic.speed == doctest::Approx(0.5).epsilon(1e-15));
  REQUIRE(ballistic.s_exponent.has_value());
  CHECK(std::isinf(*ballistic.s_exponent));

  const auto rec = classify(kRecurrent);
  CHECK(rec.kind == RegimeKind::Recurrent);
  CHECK(rec.speed == 0.0);
  CHECK(rec.sigma2_mu == doctest::Approx(0.480453).epsilon(1e-6));
  CHECK_FALSE(rec.s_exponent.has_value());

  const auto zs = classify(kZeroSpeed);
  CHECK(zs.kind == RegimeKind::TransientZeroSpeed);
  CHECK(zs.speed == 0.0);
  REQUIRE(zs.s_exponent.has_value());
  CHECK(*zs.s_exponent < 1.0);
}

TEST_CASE("homogeneous walks have speed 2p - 1") {
  for (double p = 0.51; p < 1.0; p += 0.04) {
    const auto c = classify(AlphaSpec::point_mass(p));
    CHECK(c.kind == RegimeKind::Ballistic);
    CHECK(c.speed == doctest::Approx(2.0 * p - 1.0).epsilon(1e-13));
  }
}

TEST_CASE("speed vanishes exactly when not ballistic") {
  CounterStream rng(11, kSamplerDomain);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = 0.05 + 0.9 * rng.uniform();
    double b = 0.05 + 0.9 * rng.uniform();
    const double w = 0.05 + 0.9 * rng.uniform();
    // Reflect when the drift points left, keeping <log rho> <= 0.
    const double m = w * std::log((1 - a) / a) + (1 - w) * std::log((1 - b) / b);
    AlphaSpec alpha = m <= 0 ? AlphaSpec::two_point(a, w, b) : AlphaSpec::two_point(1 - a, w, 1 - b);
    const auto c = classify(alpha);
    CHECK((c.speed == 0.0) == (c.kind != RegimeKind::Ballistic));
    if (c.kind == RegimeKind::Ballistic) CHECK(c.speed > 0.0);
  }
}

TEST_CASE("KKS exponent") {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(solve_s(kZeroSpeed) - std::log2(golden)) < 1e-12);
  CHECK(std::isinf(solve_s(AlphaSpec::point_mass(0.75))));
  CHECK(kind_of([] { solve_s(kRecurrent); }) == ErrorKind::RecurrentInput);

  // <rho^s> = 1 at the root for assorted transient laws.
  for (double hi : {0.65, 0.7, 0.8, 0.9}) {
    const auto alpha = AlphaSpec::two_point(0.4, 0.5, hi);
    const double s = solve_s(alpha);
    REQUIRE(std::isfinite(s));
    CHECK(std::abs(mean_rho_power(alpha, s) - 1.0) < 1e-12);
  }
}

TEST_CASE("annealed site weights") {
  CHECK(annealed_site_weight(kZeroSpeed, 0, 0) == 1.0);
  CHECK(annealed_site_weight(kZeroSpeed, 1, 0) == doctest::Approx(17.0 / 30.0).epsilon(1e-15));
  const double p = 0.7;
  CHECK(annealed_site_weight(AlphaSpec::point_mass(p), 2, 1) == doctest::Approx(p * p * (1 - p)).epsilon(1e-15));
  CHECK(kind_of([] { annealed_site_weight(kRecurrent, -1, 0); }) == ErrorKind::InvalidArgument);

  for (int r = 0; r < 8; ++r)
    for (int l = 0; l < 8; ++l) {
      const double w = annealed_site_weight(kZeroSpeed, r, l);
      CHECK(w > 0.0);
      CHECK(w <= 1.0);
      CHECK(annealed_site_weight(kZeroSpeed, r + 1, l) <= w);
      CHECK(annealed_site_weight(kZeroSpeed, r, l + 1) <= w);
    }
}

TEST_CASE("alpha validation") {
  CHECK(kind_of([] { AlphaSpec({}); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([] { AlphaSpec({{0.0, 1.0}}); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([] { AlphaSpec({{1.0, 1.0}}); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([] { AlphaSpec({{0.6, 0.5}, {0.7, 0.4}}); }) == ErrorKind::InvalidAlpha);
  CHECK(kind_of([] { AlphaSpec({{0.6, 1.2}, {0.7, -0.2}}); }) == ErrorKind::InvalidAlpha);
  // Drift to the left violates <log rho> <= 0.
  CHECK(kind_of([] { AlphaSpec::point_mass(0.25); }) == ErrorKind::InvalidAlpha);
  CHECK_NOTHROW(AlphaSpec::point_mass(0.5));
}

TEST_CASE("atom selection and symmetry") {
  CHECK(kRecurrent.atom_for(0.0) == 0);
  CHECK(kRecurrent.atom_for(0.49) == 0);
  CHECK(kRecurrent.atom_for(0.51) == 1);
  CHECK(kRecurrent.atom_for(0.999999) == 1);
  CHECK(kRecurrent.is_symmetric());
  CHECK_FALSE(kZeroSpeed.is_symmetric());
  CHECK(right_step_threshold(1.0) == (std::uint64_t{1} << 32));
  CHECK(right_step_threshold(0.5) == (std::uint64_t{1} << 31));
}

TEST_CASE("alpha JSON round trip") {
  const auto j = nlohmann::json::parse(R"({"atoms": [[0.25, 0.5], [0.8, 0.5]]})");
  const auto alpha = alpha_from_json(j);
  CHECK(alpha.size() == 2);
  CHECK(alpha_from_json(to_json(alpha)) == alpha);
  CHECK(kind_of([] { alpha_from_json(nlohmann::json::parse(R"({"atom": []})")); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { alpha_from_json(nlohmann::json::parse(R"({"atoms": [[0.5]]})")); }) ==
        ErrorKind::InvalidArgument);
}

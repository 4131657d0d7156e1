#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "rwcre/cooling.hpp"
#include "rwcre/error.hpp"
#include "rwcre/limit_laws.hpp"
#include "rwcre/stat_tests.hpp"

using namespace rwcre;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// 40-digit references from an independent multiprecision summation.
struct KestenPoint {
  double x, pdf, cdf;
};
constexpr KestenPoint kKestenTable[] = {
    {0.05, 0.49999225578356895592, 0.52499996848370349283}, {0.3, 0.43211088834280155456, 0.64428639680989084193},
    {1.0, 0.1853887148997619527, 0.84972726478693713498},   {2.5, 0.029134446374729831091, 0.9763845072682506265},
    {6.0, 0.00038827915472070853221, 0.99968527277168041128},
};

double integrate_half_line(auto&& f) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

}  // namespace

TEST_CASE("Kesten density") {
  CHECK(std::abs(kesten_pdf(0.0) - 0.5) < 1e-12);
  for (const auto& p : kKestenTable) {
    CHECK(std::abs(kesten_pdf(p.x) - p.pdf) < 1e-12);
    CHECK(kesten_pdf(-p.x) == kesten_pdf(p.x));
  }
  // Termwise integral: (32/pi^3) sum (-1)^k/(2k+1)^3, summed plainly here.
  double series = 0.0;
  for (int k = 200000; k >= 0; --k) series += (k % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0 * k + 1.0, 3);
  CHECK(std::abs(32.0 / (pi * pi * pi) * series - 1.0) < 1e-10);
  CHECK(std::abs(2.0 * integrate_half_line([](double x) { return kesten_pdf(x); }) - 1.0) < 1e-10);
}

TEST_CASE("Kesten distribution function") {
  CHECK(std::abs(kesten_cdf(0.0) - 0.5) < 1e-12);
  for (const auto& p : kKestenTable) {
    CHECK(std::abs(kesten_cdf(p.x) - p.cdf) < 1e-12);
    CHECK(std::abs(kesten_cdf(p.x) + kesten_cdf(-p.x) - 1.0) < 1e-12);
    CHECK(std::abs(kesten_survival(p.x) - (1.0 - p.cdf)) < 1e-12);
  }
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = -12.0 + 24.0 * i / 10000.0;
    const double f = kesten_cdf(x);
    CHECK(f >= prev - 1e-15);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
  CHECK(kesten_cdf(-60.0) < 1e-30);
  CHECK(kesten_cdf(60.0) == 1.0);
}

TEST_CASE("Kesten absolute moments") {
  CHECK(std::abs(kesten_abs_moment(2.0) - 61.0 / 45.0) < 1e-10);
  CHECK(std::abs(kesten_variance() - 61.0 / 45.0) < 1e-10);
  CHECK(kesten_abs_moment(1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
  CHECK(kesten_abs_moment(0.5) == doctest::Approx(0.81435236867449216846).epsilon(1e-13));
  CHECK(kesten_abs_moment(3.0) == doctest::Approx(3.297619047619047619).epsilon(1e-13));
  CHECK(kesten_abs_moment(4.5) == doctest::Approx(20.994831746693193694).epsilon(1e-13));

  const double quadrature = 2.0 * integrate_half_line([](double x) { return x * x * kesten_pdf(x); });
  CHECK(std::abs(quadrature - kesten_abs_moment(2.0)) < 1e-8);

  const double below = kesten_abs_moment(1.999);
  const double above = kesten_abs_moment(2.001);
  CHECK(below < kesten_abs_moment(2.0));
  CHECK(above > kesten_abs_moment(2.0));
  CHECK(kind_of([] { kesten_abs_moment(0.0); }) == ErrorKind::DomainError);
}

TEST_CASE("Kesten sampling") {
  for (double u : {1e-12, 0.01, 0.3, 0.5, 0.77, 0.999999})
    CHECK(std::abs(kesten_cdf(kesten_quantile(u)) - u) < 1e-10);
  CHECK(kind_of([] { kesten_quantile(1.0); }) == ErrorKind::DomainError);

  CounterStream rng(2718, kSamplerDomain);
  std::vector<double> draws(1'000'000);
  for (auto& d : draws) d = kesten_sample(rng);
  std::vector<double> sorted = draws;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  CHECK(std::abs(sorted[sorted.size() / 2]) < 0.01);
  CHECK(std::abs(empirical_moments(draws, 2.0) / (61.0 / 45.0) - 1.0) < 0.01);
  const std::span<const double> first(draws.data(), 100000);
  CHECK(ks_test(first, LimitLaw::kesten(), 0.01).passed);
}

TEST_CASE("stable characteristic functions") {
  for (auto skew : {Skew::Right, Skew::Left}) {
    CHECK(stable_cf(1.3, 2.0, 0.0, skew) == std::complex<double>(1.0, 0.0));
    for (double s : {0.4, 1.0, 1.5, 2.0})
      for (double u : {-7.0, -1.3, -0.2, 0.5, 1.0, 3.0}) {
        const auto cf = stable_cf(s, 0.8, u, skew);
        CHECK(std::abs(cf) == doctest::Approx(std::exp(-0.8 * std::pow(std::abs(u), s))).epsilon(1e-14));
        const auto mirror = stable_cf(s, 0.8, -u, skew);
        CHECK(std::abs(mirror - std::conj(cf)) < 1e-15);
      }
  }
  // s = 2: Gaussian with variance 2b.
  CHECK(std::abs(stable_cf(2.0, 0.7, 1.5, Skew::Right) - std::exp(-0.7 * 2.25)) < 1e-15);
  // s = 1, u = 1: the log term vanishes.
  CHECK(std::abs(stable_cf(1.0, 0.9, 1.0, Skew::Right) - std::exp(-0.9)) < 1e-15);
  // Left skew flips the sign of the imaginary part.
  CHECK(std::abs(stable_cf(0.7, 1.0, 2.0, Skew::Left) - std::conj(stable_cf(0.7, 1.0, 2.0, Skew::Right))) < 1e-15);
  CHECK(kind_of([] { stable_cf(2.5, 1.0, 1.0, Skew::Right); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { stable_cf(0.0, 1.0, 1.0, Skew::Right); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { stable_cf(1.0, 0.0, 1.0, Skew::Right); }) == ErrorKind::DomainError);
}

TEST_CASE("stable distribution functions") {
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 0.1 * i;
    CHECK(std::abs(stable_cdf(2.0, 1.0, x, Skew::Right) - normal_cdf(x, 0.0, std::sqrt(2.0))) < 1e-6);
  }
  for (double x : {-20.0, -3.0, -1.0, 0.0, 0.4, 1.0, 10.0})
    CHECK(std::abs(stable_cdf(1.0, 1.0, x, Skew::None) - (0.5 + std::atan(x) / pi)) < 1e-6);

  // P(X <= 0) for totally skewed laws with s != 1 is 1/2 - arctan(tan(s pi/2)) / (s pi) (right skew).
  for (double s : {0.5, 0.7, 1.3, 1.5, 1.8}) {
    const double expected = 0.5 - std::atan(std::tan(s * pi / 2.0)) / (s * pi);
    CHECK(std::abs(stable_cdf(s, 1.0, 0.0, Skew::Right) - expected) < 1e-6);
    CHECK(std::abs(stable_cdf(s, 1.0, 0.0, Skew::Left) - (1.0 - expected)) < 1e-6);
  }

  // Values from an independent stable-law library under the matching parameterization.
  CHECK(std::abs(stable_cdf(1.0, 1.0, -3.0, Skew::Right) - 0.22070332664113157) < 1e-6);
  CHECK(std::abs(stable_cdf(1.0, 1.0, 1.0, Skew::Right) - 0.9038390389593682) < 1e-6);
  CHECK(std::abs(stable_cdf(0.7, 1.0, 1.0, Skew::Right) - 0.0484783994917167) < 1e-6);
  CHECK(std::abs(stable_cdf(0.7, 1.0, 10.0, Skew::Right) - 0.8263363928403191) < 1e-6);
  CHECK(std::abs(stable_cdf(1.5, 1.0, -3.0, Skew::Left) - 0.06830389726482067) < 1e-6);
  CHECK(std::abs(stable_cdf(1.5, 1.0, 1.0, Skew::Left) - 0.5767610015503288) < 1e-6);

  for (double s : {0.6, 1.0, 1.6}) {
    double prev = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double f = stable_cdf(s, 1.0, -4.0 + 0.1 * i, Skew::Right);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
      CHECK(f >= prev - 1e-9);
      prev = f;
    }
  }
  CHECK(kind_of([] { stable_cdf(3.0, 1.0, 0.0, Skew::Right); }) == ErrorKind::DomainError);
}

TEST_CASE("inverse stable law") {
  CHECK(inverse_stable_cdf(0.7, 1.0, 0.0) == 0.0);
  CHECK(inverse_stable_cdf(0.7, 1.0, -1.0) == 0.0);
  const double x = 2.0;
  CHECK(inverse_stable_cdf(0.7, 1.0, x) ==
        doctest::Approx(1.0 - stable_cdf(0.7, 1.0, std::pow(x, -1.0 / 0.7), Skew::Right)));
  double prev = 0.0;
  for (double y = 0.05; y < 20.0; y *= 1.3) {
    const double f = LimitLaw::inverse_stable(0.7, 1.0).cdf(y);
    CHECK(f >= prev - 1e-9);
    prev = f;
  }
}

TEST_CASE("normal distribution function") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(3.0, 1.0, 2.0) == doctest::Approx(normal_cdf(1.0)).epsilon(1e-15));
  CHECK(LimitLaw::normal(1.0, 2.0).cdf(3.0) == normal_cdf(1.0));
  CHECK(LimitLaw::kesten().cdf(1.0) == kesten_cdf(1.0));
}

TEST_CASE("theoretical normalizer chi_n") {
  const double sigma_v = std::sqrt(kesten_variance());
  // Unit model constant: sigma2_mu sigma_V = 1.
  const double unit = 1.0 / sigma_v;
  const double l = std::log(1e4);
  CHECK(chi_n_theoretical(CoolingRule::polynomial(1.0, 2.0), unit, 1e4) ==
        doctest::Approx(100.0 / 16.0 * l * l * l * l).epsilon(1e-12));
  CHECK(chi_n_theoretical(CoolingRule::polynomial(1.0, 2.0), unit, 1e4) == doctest::Approx(44976.2).epsilon(1e-5));
  CHECK(chi_n_theoretical(CoolingRule::exponential(1.0), unit, std::exp(10.0)) == doctest::Approx(20000.0).epsilon(1e-12));

  const double n = 12345.0;
  const double ratio = chi_n_theoretical(CoolingRule::polynomial(1.0, 2.0), 0.48, n) /
                       chi_n_theoretical(CoolingRule::polynomial(1.0, 4.0), 0.48, n);
  CHECK(ratio == doctest::Approx(std::pow(0.5, 4) * std::sqrt(n) / (std::pow(0.75, 4) * std::pow(n, 0.25))).epsilon(1e-12));

  for (const auto& rule : {CoolingRule::polynomial(2.0, 1.5), CoolingRule::exponential(0.5)}) {
    double prev = 0.0;
    for (double m = 3.0; m < 1e9; m *= 1.7) {
      const double v = chi_n_theoretical(rule, 0.48, m);
      CHECK(v > prev);
      prev = v;
    }
  }
  CHECK(kind_of([] { chi_n_theoretical(CoolingRule::linear(2.0), 0.48, 100.0); }) == ErrorKind::WrongRegime);
  CHECK(kind_of([] { chi_n_theoretical(CoolingRule::polynomial(1.0, 2.0), 0.48, 2.0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("no-cooling targets") {
  const auto alpha = AlphaSpec::two_point(1.0 / 3.0, 0.5, 0.8);
  const double mean_omega = 17.0 / 30.0;
  const auto one = no_cooling_targets(alpha, {{1, 1.0}}, 1.0);
  CHECK(one.v_nu == doctest::Approx(2.0 * mean_omega - 1.0).epsilon(1e-14));
  CHECK(one.sigma2_nu == doctest::Approx(4.0 * mean_omega * (1.0 - mean_omega)).epsilon(1e-14));

  const double p = 0.75;
  const auto two = no_cooling_targets(AlphaSpec::point_mass(p), {{2, 1.0}}, 2.0);
  CHECK(two.v_nu == doctest::Approx(2.0 * p - 1.0).epsilon(1e-14));
  CHECK(two.sigma2_nu == doctest::Approx(4.0 * p * (1.0 - p)).epsilon(1e-14));

  const GapPmf mixed{{1, 0.5}, {3, 0.5}};
  double mean_gap = 0.0;
  for (auto [l, w] : mixed) mean_gap += static_cast<double>(l) * w;
  CHECK(mean_gap == 2.0);
  CHECK_NOTHROW(no_cooling_targets(alpha, mixed, mean_gap));
  CHECK(kind_of([&] { no_cooling_targets(alpha, {{17, 1.0}}, 17.0); }) == ErrorKind::SupportTooLarge);
}

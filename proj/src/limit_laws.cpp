#include "rwcre/limit_laws.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "rwcre/error.hpp"
#include "rwcre/series.hpp"
#include "rwcre/static_walk.hpp"

namespace rwcre {

namespace {

using std::numbers::pi;

double kesten_rate(double x) { return pi * pi * std::abs(x) / 8.0; }

}  // namespace

double kesten_pdf(double x) {
  const double c = kesten_rate(x);
  const double sum = sum_alternating([c](std::size_t k) {
    const double m = 2.0 * static_cast<double>(k) + 1.0;
    return std::exp(-c * m * m) / m;
  });
  return 2.0 / pi * sum;
}

double kesten_survival(double x) {
  if (x < 0.0) return 1.0 - kesten_survival(-x);
  const double c = kesten_rate(x);
  const double sum = sum_alternating([c](std::size_t k) {
    const double m = 2.0 * static_cast<double>(k) + 1.0;
    return std::exp(-c * m * m) / (m * m * m);
  });
  return 16.0 / (pi * pi * pi) * sum;
}

double kesten_cdf(double x) {
  if (x >= 0.0) return 1.0 - kesten_survival(x);
  return kesten_survival(-x);
}

double kesten_abs_moment(double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::DomainError, "absolute moment needs p > 0");
  const double exponent = 2.0 * p + 3.0;
  const double sum = sum_alternating([exponent](std::size_t k) {
    return std::pow(2.0 * static_cast<double>(k) + 1.0, -exponent);
  });
  const double log_prefactor =
      std::log(4.0) + std::lgamma(p + 1.0) + (p + 1.0) * std::log(8.0) - exponent * std::log(pi);
  return std::exp(log_prefactor) * sum;
}

double kesten_variance() { return kesten_abs_moment(2.0); }

double kesten_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::DomainError, "quantile level must lie in (0,1)");
  if (u == 0.5) return 0.0;
  // Solve survival(x) = t on x >= 0, then restore the sign.
  const double t = std::min(u, 1.0 - u);
  double lo = 0.0;
  double hi = 1.0;
  while (kesten_survival(hi) > t) {
    lo = hi;
    hi *= 2.0;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = kesten_survival(x) - t;
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    // Newton step on the survival function (derivative -pdf), kept in bracket.
    double next = x + f / kesten_pdf(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-13 || hi - lo < 1e-13) {
      x = next;
      break;
    }
    x = next;
  }
  return u > 0.5 ? x : -x;
}

double kesten_sample(CounterStream& rng) {
  double u = rng.uniform();
  while (u == 0.0) u = rng.uniform();
  return kesten_quantile(u);
}

double stable_skew_function(double s, double u) {
  if (s == 1.0) return 2.0 / pi * std::log(std::abs(u));
  return std::tan(s * pi / 2.0);
}

namespace {

void check_stable_params(double s, double b) {
  if (!(s > 0.0 && s <= 2.0)) throw Error(ErrorKind::DomainError, "stable index must lie in (0,2]");
  if (!(b > 0.0)) throw Error(ErrorKind::DomainError, "stable scale must be positive");
}

double skew_sign(Skew skew) {
  switch (skew) {
    case Skew::Right: return 1.0;
    case Skew::Left: return -1.0;
    case Skew::None: return 0.0;
  }
  return 0.0;
}

}  // namespace

std::complex<double> stable_cf(double s, double b, double u, Skew skew) {
  check_stable_params(s, b);
  if (u == 0.0) return {1.0, 0.0};
  const double scale = b * std::pow(std::abs(u), s);
  const double sgn = u > 0.0 ? 1.0 : -1.0;
  const double phase = skew_sign(skew) * scale * sgn * stable_skew_function(s, u);
  return std::exp(std::complex<double>(-scale, phase));
}

double stable_cdf(double s, double b, double x, Skew skew) {
  check_stable_params(s, b);
  // Gil-Pelaez: F(x) = 1/2 - (1/pi) int_0^inf Im[e^{-iux} cf(u)] / u du.
  // Substituting b u^s = w^2 turns this into
  //   (2/s) int_0^W e^{-w^2} sin(theta(w)) / w dw,
  // whose integrand stays bounded at w = 0 for every s in (0,2].
  const double sigma = skew_sign(skew);
  auto u_of = [s, b](double w) { return std::pow(w * w / b, 1.0 / s); };
  auto integrand = [&](double w) {
    w = std::max(w, 1e-100);
    const double u = u_of(w);
    const double theta = sigma * w * w * stable_skew_function(s, u) - x * u;
    return std::exp(-w * w) * std::sin(theta) / w;
  };

  const double top = std::sqrt(46.0);  // e^{-46} ~ 1e-20
  const double u_top = u_of(top);
  // Largest phase rate on [0, top], bounded at the right end.
  double rate = std::abs(x) * (2.0 / s) * u_top / top;
  if (sigma != 0.0) rate += 2.0 * top * (std::abs(stable_skew_function(s, u_top)) + (s == 1.0 ? 2.0 / pi : 0.0));
  const auto panels = static_cast<int>(std::clamp(8.0 + std::ceil(top * rate / pi), 8.0, 400000.0));
  const double width = top / panels;

  boost::math::quadrature::tanh_sinh<double> endpoint_rule;
  double total = endpoint_rule.integrate(integrand, 0.0, width, 1e-13);
  for (int i = 1; i < panels; ++i)
    total += boost::math::quadrature::gauss<double, 20>::integrate(integrand, width * i, width * (i + 1));
  const double f = 0.5 - 2.0 * total / (pi * s);
  return std::clamp(f, 0.0, 1.0);
}

double inverse_stable_cdf(double s, double b, double x) {
  if (x <= 0.0) return 0.0;
  return 1.0 - stable_cdf(s, b, std::pow(x, -1.0 / s), Skew::Right);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double LimitLaw::cdf(double x) const {
  switch (kind) {
    case LawKind::KestenV: return kesten_cdf(x);
    case LawKind::StableRightSkewed: return stable_cdf(s, b, x, Skew::Right);
    case LawKind::StableLeftSkewed: return stable_cdf(s, b, x, Skew::Left);
    case LawKind::InverseStable: return inverse_stable_cdf(s, b, x);
    case LawKind::Normal: return normal_cdf(x, mean, sd);
  }
  return 0.0;
}

double chi_n_theoretical(const CoolingRule& rule, double sigma2_mu, double n) {
  if (!(n >= 3.0)) throw Error(ErrorKind::InvalidArgument, "chi_n needs n >= 3");
  const double big_sigma = sigma2_mu * std::sqrt(kesten_variance());
  const double log_n = std::log(n);
  switch (rule.kind()) {
    case CoolingKind::Polynomial: {
      const double B = rule.param_a();
      const double beta = rule.param_beta();
      return big_sigma * big_sigma * std::pow((beta - 1.0) / beta, 4) * std::pow(n / B, 1.0 / beta) *
             std::pow(log_n, 4);
    }
    case CoolingKind::Exponential: {
      const double C = rule.param_a();
      return big_sigma * big_sigma * std::pow(log_n, 5) / (5.0 * std::pow(C, 5));
    }
    default:
      throw Error(ErrorKind::WrongRegime, "chi_n is given for polynomial (R2) and exponential (R3) rules only, not " +
                                              to_string(rule.kind()));
  }
}

NoCoolingTargets no_cooling_targets(const AlphaSpec& alpha, const GapPmf& nu, double A) {
  if (!(A > 0.0)) throw Error(ErrorKind::InvalidArgument, "A must be positive");
  NoCoolingTargets out{0.0, 0.0};
  for (auto [ell, weight] : nu) {
    if (ell < 0 || ell > kMaxEnumerationSteps)
      throw Error(ErrorKind::SupportTooLarge, "gap " + std::to_string(ell) + " exceeds the exact-oracle limit 16");
    const auto pmf = exact_annealed_pmf(alpha, static_cast<int>(ell));
    out.v_nu += weight * pmf.mean();
    out.sigma2_nu += weight * pmf.variance();
  }
  out.v_nu /= A;
  out.sigma2_nu /= A;
  return out;
}

}  // namespace rwcre

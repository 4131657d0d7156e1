#pragma once

// Closed-form limit objects: the Kesten law of the recurrent RWRE, stable
// laws of the transient RWRE, the normal law, and the normalizers and targets
// predicted for the cooling walk.

#include <complex>
#include <cstdint>

#include "rwcre/alpha.hpp"
#include "rwcre/cooling.hpp"
#include "rwcre/rng.hpp"

namespace rwcre {

// --- Kesten law -------------------------------------------------------------

/// p(x) = (2/pi) sum_k (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 |x| / 8)
double kesten_pdf(double x);

double kesten_cdf(double x);

/// 1 - kesten_cdf(x) for x >= 0, summed directly for accuracy in the tail.
double kesten_survival(double x);

/// E|V|^p = 4 Gamma(p+1) 8^(p+1) / pi^(2p+3) sum_k (-1)^k/(2k+1)^(2p+3).
double kesten_abs_moment(double p);

/// sigma_V^2 = E V^2.
double kesten_variance();

/// Inverse-CDF draw from the Kesten law, root accurate to 1e-10.
double kesten_sample(CounterStream& rng);

double kesten_quantile(double u);

// --- Stable laws ------------------------------------------------------------

/// Right: exp[-b|u|^s (1 - i sgn(u) g_s(u))]; Left flips the sign of the
/// imaginary term; None drops it (symmetric law, used to validate inversion).
enum class Skew { Right, Left, None };

/// g_s(u): tan(s pi / 2) for s != 1, (2/pi) log|u| for s = 1.
double stable_skew_function(double s, double u);

std::complex<double> stable_cf(double s, double b, double u, Skew skew);

/// CDF by Gil-Pelaez inversion of stable_cf; absolute error about 1e-7.
double stable_cdf(double s, double b, double x, Skew skew);

/// [1 - L_{s,b}(x^{-1/s})] 1{x > 0}: the inverse (Mittag-Leffler type) law.
double inverse_stable_cdf(double s, double b, double x);

// --- Normal -----------------------------------------------------------------

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

// --- Evaluable law ----------------------------------------------------------

enum class LawKind { KestenV, StableRightSkewed, StableLeftSkewed, InverseStable, Normal };

struct LimitLaw {
  LawKind kind = LawKind::Normal;
  double s = 2.0;
  double b = 1.0;
  double mean = 0.0;
  double sd = 1.0;

  static LimitLaw kesten() { return {LawKind::KestenV}; }
  static LimitLaw normal(double mean = 0.0, double sd = 1.0) { return {LawKind::Normal, 2.0, 1.0, mean, sd}; }
  static LimitLaw stable_right(double s, double b) { return {LawKind::StableRightSkewed, s, b}; }
  static LimitLaw stable_left(double s, double b) { return {LawKind::StableLeftSkewed, s, b}; }
  static LimitLaw inverse_stable(double s, double b) { return {LawKind::InverseStable, s, b}; }

  double cdf(double x) const;
};

// --- Predictions for the cooling walk ----------------------------------------

/// chi_n(tau) for recurrent alpha:
///   R2: (sigma2_mu sigma_V)^2 ((beta-1)/beta)^4 (n/B)^(1/beta) log^4 n
///   R3: (sigma2_mu sigma_V)^2 log^5 n / (5 C^5)
/// Throws Error(WrongRegime) unless the rule is polynomial or exponential.
double chi_n_theoretical(const CoolingRule& rule, double sigma2_mu, double n);

struct NoCoolingTargets {
  double v_nu;
  double sigma2_nu;
};

/// v_nu = (1/A) sum nu(l) E Z_l and sigma_nu^2 = (1/A) sum nu(l) Var Z_l, with
/// the static moments taken from the exact annealed law. Throws
/// Error(SupportTooLarge) if nu charges some l > 16.
NoCoolingTargets no_cooling_targets(const AlphaSpec& alpha, const GapPmf& nu, double A);

}  // namespace rwcre

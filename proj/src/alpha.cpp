#include "rwcre/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwcre/error.hpp"

namespace rwcre {

std::string_view to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Recurrent: return "Recurrent";
    case RegimeKind::TransientZeroSpeed: return "TransientZeroSpeed";
    case RegimeKind::Ballistic: return "Ballistic";
  }
  return "Unknown";
}

std::uint64_t right_step_threshold(double omega) {
  if (omega <= 0.0) return 0;
  if (omega >= 1.0) return std::uint64_t{1} << 32;
  return static_cast<std::uint64_t>(std::llround(std::ldexp(omega, 32)));
}

AlphaSpec::AlphaSpec(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorKind::InvalidAlpha, "alpha needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.value > 0.0 && a.value < 1.0))
      throw Error(ErrorKind::InvalidAlpha, "atom value " + std::to_string(a.value) + " outside (0,1)");
    if (!(a.weight > 0.0))
      throw Error(ErrorKind::InvalidAlpha, "atom weight must be positive");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidAlpha, "atom weights sum to " + std::to_string(total));

  double acc = 0.0;
  double mean_log = 0.0;
  for (const auto& a : atoms_) {
    const double lr = std::log1p(-a.value) - std::log(a.value);
    log_rho_.push_back(lr);
    mean_log += a.weight * lr;
    acc += a.weight;
    cumulative_.push_back(acc);
    thresholds_.push_back(right_step_threshold(a.value));
  }
  cumulative_.back() = 1.0;
  if (mean_log > kRecurrenceTolerance)
    throw Error(ErrorKind::InvalidAlpha,
                "<log rho(0)> = " + std::to_string(mean_log) + " > 0; mirror alpha so the walk drifts right");
}

AlphaSpec AlphaSpec::point_mass(double p) { return AlphaSpec({{p, 1.0}}); }

AlphaSpec AlphaSpec::two_point(double p1, double w1, double p2) {
  return AlphaSpec({{p1, w1}, {p2, 1.0 - w1}});
}

std::size_t AlphaSpec::atom_for(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
}

bool AlphaSpec::is_symmetric() const {
  for (const auto& a : atoms_) {
    double mirrored = 0.0;
    for (const auto& b : atoms_)
      if (std::abs(a.value + b.value - 1.0) < 1e-12) mirrored += b.weight;
    if (std::abs(mirrored - a.weight) > 1e-12) return false;
  }
  return true;
}

bool operator==(const AlphaSpec& a, const AlphaSpec& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (a.atoms_[i].value != b.atoms_[i].value || a.atoms_[i].weight != b.atoms_[i].weight) return false;
  return true;
}

AlphaMoments alpha_moments(const AlphaSpec& alpha) {
  double mean_rho = 0.0;
  double mean_log = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double w = alpha.atoms()[i].weight;
    mean_rho += w * std::exp(alpha.log_rho(i));
    mean_log += w * alpha.log_rho(i);
  }
  double var_log = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double d = alpha.log_rho(i) - mean_log;
    var_log += alpha.atoms()[i].weight * d * d;
  }
  return {mean_rho, mean_log, var_log};
}

RegimeClassification classify(const AlphaSpec& alpha) {
  const auto m = alpha_moments(alpha);
  if (std::abs(m.mean_log_rho) <= kRecurrenceTolerance)
    return {RegimeKind::Recurrent, 0.0, m.var_log_rho, std::nullopt};
  const double s = solve_s(alpha);
  if (m.mean_rho >= 1.0) return {RegimeKind::TransientZeroSpeed, 0.0, m.var_log_rho, s};
  return {RegimeKind::Ballistic, (1.0 - m.mean_rho) / (1.0 + m.mean_rho), m.var_log_rho, s};
}

double mean_rho_power(const AlphaSpec& alpha, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    acc += alpha.atoms()[i].weight * std::exp(s * alpha.log_rho(i));
  return acc;
}

double solve_s(const AlphaSpec& alpha) {
  const auto m = alpha_moments(alpha);
  if (std::abs(m.mean_log_rho) <= kRecurrenceTolerance)
    throw Error(ErrorKind::RecurrentInput, "s is undefined for recurrent alpha");

  constexpr double kCap = 256.0;
  double lo = 0.0;
  double hi = 1.0;
  while (mean_rho_power(alpha, hi) <= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kCap) return std::numeric_limits<double>::infinity();
  }
  // f(s) = <rho^s> - 1 is convex, negative on (0, s*) and positive beyond.
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_rho_power(alpha, mid) <= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  const double flo = std::abs(mean_rho_power(alpha, lo) - 1.0);
  const double fhi = std::abs(mean_rho_power(alpha, hi) - 1.0);
  return flo <= fhi ? lo : hi;
}

double annealed_site_weight(const AlphaSpec& alpha, int r, int l) {
  if (r < 0 || l < 0) throw Error(ErrorKind::InvalidArgument, "visit counts must be nonnegative");
  double acc = 0.0;
  for (const auto& a : alpha.atoms())
    acc += a.weight * std::pow(a.value, r) * std::pow(1.0 - a.value, l);
  return acc;
}

}  // namespace rwcre

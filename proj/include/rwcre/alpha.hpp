#pragma once

// Single-site law of the environment and the annealed moments derived from it.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rwcre {

struct Atom {
  double value;   // probability of a right step at a site, in (0,1)
  double weight;  // probability mass of this atom
};

/// Finite-support law of omega(0). Immutable; validated on construction:
/// atoms inside (0,1), positive weights summing to one, and <log rho> <= 0.
class AlphaSpec {
 public:
  explicit AlphaSpec(std::vector<Atom> atoms);

  static AlphaSpec point_mass(double p);
  static AlphaSpec two_point(double p1, double w1, double p2);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// log rho = log((1-w)/w) for each atom.
  double log_rho(std::size_t atom) const { return log_rho_[atom]; }

  /// Atom index selected by a uniform draw u in [0,1).
  std::size_t atom_for(double u) const;

  /// Right-step threshold against a 32-bit uniform: P(u32 < threshold) = value.
  std::uint64_t threshold(std::size_t atom) const { return thresholds_[atom]; }

  /// Symmetric with respect to 1/2: atom v with weight w implies atom 1-v with weight w.
  bool is_symmetric() const;

  friend bool operator==(const AlphaSpec& a, const AlphaSpec& b);

 private:
  std::vector<Atom> atoms_;
  std::vector<double> log_rho_;
  std::vector<double> cumulative_;
  std::vector<std::uint64_t> thresholds_;
};

std::uint64_t right_step_threshold(double omega);

struct AlphaMoments {
  double mean_rho;
  double mean_log_rho;
  double var_log_rho;
};

AlphaMoments alpha_moments(const AlphaSpec& alpha);

enum class RegimeKind { Recurrent, TransientZeroSpeed, Ballistic };

std::string_view to_string(RegimeKind kind);

struct RegimeClassification {
  RegimeKind kind;
  double speed;      // v_mu, zero unless ballistic
  double sigma2_mu;  // variance of log rho(0)
  std::optional<double> s_exponent;  // empty when recurrent; may be +inf
};

/// |<log rho>| below this counts as recurrent.
inline constexpr double kRecurrenceTolerance = 1e-12;

RegimeClassification classify(const AlphaSpec& alpha);

/// <rho^s> computed in log space.
double mean_rho_power(const AlphaSpec& alpha, double s);

/// Positive root of <rho^s> = 1, or +inf when rho < 1 almost surely.
/// Throws Error(RecurrentInput) when <log rho> = 0.
double solve_s(const AlphaSpec& alpha);

/// Annealed weight <omega^r (1-omega)^l> of a site visited r times rightward
/// and l times leftward.
double annealed_site_weight(const AlphaSpec& alpha, int r, int l);

}  // namespace rwcre

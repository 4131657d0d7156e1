#pragma once

// Cooling rules: the deterministic resampling times tau(k) and everything
// derived from them (increments T_k, k(n), remainder, empirical measure L_n,
// Toeplitz weights).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rwcre {

enum class CoolingKind { Linear, Polynomial, Exponential, DoubleExponential, Explicit };

std::string to_string(CoolingKind kind);

/// Largest representable resampling time.
inline constexpr std::int64_t kHorizonCap = 4'000'000'000'000'000'000;

/// Strictly increasing tau with tau(0) = 0 and tau(k) >= k. Parametric rules
/// are discretized as tau(k) = max(tau(k-1) + 1, round(f(k))). An explicit
/// rule lists tau(0..K); resampling times past the list are infinite.
class CoolingRule {
 public:
  static CoolingRule linear(double A);
  static CoolingRule polynomial(double B, double beta);
  static CoolingRule exponential(double C);
  static CoolingRule double_exponential();
  static CoolingRule explicit_times(std::vector<std::int64_t> times);

  CoolingKind kind() const { return kind_; }
  double param_a() const { return a_; }      // A, B or C
  double param_beta() const { return beta_; }
  std::span<const std::int64_t> explicit_list() const;

  /// tau(k); throws Error(Overflow) past the horizon cap or past an explicit list.
  std::int64_t tau(std::int64_t k) const;

  /// tau(k), or empty when it is infinite or exceeds the horizon cap.
  std::optional<std::int64_t> try_tau(std::int64_t k) const;

  /// True when T_k -> infinity (regimes R2, R3, double exponential).
  bool is_cooling() const;

  friend bool operator==(const CoolingRule& a, const CoolingRule& b);

 private:
  CoolingRule(CoolingKind kind, double a, double beta);
  double real_form(std::int64_t k) const;
  void build_prefix();

  CoolingKind kind_;
  double a_ = 0.0;
  double beta_ = 0.0;
  // tau(0..size-1) where the monotone clamp may bind; past it tau = round(f).
  std::vector<std::int64_t> prefix_;
  bool closed_tail_ = true;
};

struct ScheduleView {
  std::int64_t n = 0;
  std::int64_t k_n = 0;
  std::vector<std::int64_t> increments;  // T_1 .. T_{k(n)}
  std::int64_t remainder = 0;            // n - tau(k(n))
};

/// k(n) = max{k : tau(k) <= n}, found by binary search.
std::int64_t resampling_count(const CoolingRule& rule, std::int64_t n);

ScheduleView view(const CoolingRule& rule, std::int64_t n);

using GapPmf = std::map<std::int64_t, double>;

/// L_n = (1/k(n)) sum_k delta_{T_k}; throws Error(NoResamplingYet) if k(n) = 0.
GapPmf empirical_measure(const CoolingRule& rule, std::int64_t n);

/// sum_l l |a(l) - b(l)|
double weighted_l1_distance(const GapPmf& a, const GapPmf& b);

/// Toeplitz weights gamma_{k,n} = T_k / n and gamma_n = remainder / n, kept as
/// integer numerators over n so that they sum to one exactly.
struct ToeplitzWeights {
  std::int64_t n = 0;
  std::vector<std::int64_t> block_numerators;
  std::int64_t remainder_numerator = 0;

  double block(std::size_t k) const {  // 1-based k
    return static_cast<double>(block_numerators[k - 1]) / static_cast<double>(n);
  }
  double remainder() const { return static_cast<double>(remainder_numerator) / static_cast<double>(n); }
  bool sums_to_one() const;
};

ToeplitzWeights toeplitz_weights(const CoolingRule& rule, std::int64_t n);

/// sum_k gamma_{k,n} z_k + gamma_n z_remainder, with z[0] holding z_1.
double toeplitz_average(const ToeplitzWeights& weights, std::span<const double> z, double z_remainder);

/// max_{1 <= k <= k(n)} T_k; throws Error(NoResamplingYet) if k(n) = 0.
std::int64_t max_gap(const CoolingRule& rule, std::int64_t n);

/// max_gap / sqrt(n); stays bounded away from zero when the o(sqrt n) gap
/// condition of the no-cooling CLT fails.
double max_gap_ratio(const CoolingRule& rule, std::int64_t n);

}  // namespace rwcre

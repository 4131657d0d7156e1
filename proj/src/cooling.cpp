#include "rwcre/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rwcre/error.hpp"

namespace rwcre {

namespace {
constexpr std::size_t kMaxPrefix = 10'000'000;
}

std::string to_string(CoolingKind kind) {
  switch (kind) {
    case CoolingKind::Linear: return "linear";
    case CoolingKind::Polynomial: return "polynomial";
    case CoolingKind::Exponential: return "exponential";
    case CoolingKind::DoubleExponential: return "double_exponential";
    case CoolingKind::Explicit: return "explicit";
  }
  return "unknown";
}

CoolingRule::CoolingRule(CoolingKind kind, double a, double beta) : kind_(kind), a_(a), beta_(beta) {}

CoolingRule CoolingRule::linear(double A) {
  // A = 1 is the space-time i.i.d. environment (fresh environment every step).
  if (!(A >= 1.0) || !std::isfinite(A)) throw Error(ErrorKind::InvalidArgument, "linear rule needs A >= 1");
  CoolingRule rule(CoolingKind::Linear, A, 1.0);
  rule.build_prefix();
  return rule;
}

CoolingRule CoolingRule::polynomial(double B, double beta) {
  if (!(B > 0.0) || !(beta > 1.0) || !std::isfinite(B) || !std::isfinite(beta))
    throw Error(ErrorKind::InvalidArgument, "polynomial rule needs B > 0 and beta > 1");
  CoolingRule rule(CoolingKind::Polynomial, B, beta);
  rule.build_prefix();
  return rule;
}

CoolingRule CoolingRule::exponential(double C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw Error(ErrorKind::InvalidArgument, "exponential rule needs C > 0");
  CoolingRule rule(CoolingKind::Exponential, C, 0.0);
  rule.build_prefix();
  return rule;
}

CoolingRule CoolingRule::double_exponential() {
  CoolingRule rule(CoolingKind::DoubleExponential, 0.0, 0.0);
  rule.build_prefix();
  return rule;
}

CoolingRule CoolingRule::explicit_times(std::vector<std::int64_t> times) {
  if (times.empty() || times.front() != 0)
    throw Error(ErrorKind::InvalidArgument, "explicit rule must start with tau(0) = 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (times[k] <= times[k - 1]) throw Error(ErrorKind::InvalidArgument, "explicit rule must be strictly increasing");
  CoolingRule rule(CoolingKind::Explicit, 0.0, 0.0);
  rule.prefix_ = std::move(times);
  rule.closed_tail_ = false;
  return rule;
}

std::span<const std::int64_t> CoolingRule::explicit_list() const {
  if (kind_ != CoolingKind::Explicit) return {};
  return prefix_;
}

double CoolingRule::real_form(std::int64_t k) const {
  const auto x = static_cast<double>(k);
  switch (kind_) {
    case CoolingKind::Linear: return a_ * x;
    case CoolingKind::Polynomial: return a_ * std::pow(x, beta_);
    case CoolingKind::Exponential: return std::exp(a_ * x);
    case CoolingKind::DoubleExponential: return std::exp(std::exp(x));
    case CoolingKind::Explicit: break;
  }
  return 0.0;
}

void CoolingRule::build_prefix() {
  constexpr auto cap = static_cast<double>(kHorizonCap);
  prefix_.assign(1, 0);
  std::int64_t prev = 0;
  for (std::int64_t k = 1;; ++k) {
    const double f = real_form(k);
    if (!(f <= cap)) break;  // every later tau overflows as well
    const std::int64_t rounded = std::llround(f);
    const std::int64_t t = std::max(prev + 1, rounded);
    prefix_.push_back(t);
    // Once round(f) clears the clamp and f grows by >= 1 per step (convexity
    // keeps it so), tau(j) = round(f(j)) for every j > k.
    if (rounded >= prev + 1 && real_form(k + 1) - f >= 1.0) break;
    prev = t;
    if (prefix_.size() > kMaxPrefix)
      throw Error(ErrorKind::InvalidArgument, "cooling rule clamps for more than 1e7 steps");
  }
}

std::optional<std::int64_t> CoolingRule::try_tau(std::int64_t k) const {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "tau needs k >= 0");
  if (static_cast<std::size_t>(k) < prefix_.size()) return prefix_[static_cast<std::size_t>(k)];
  if (!closed_tail_) return std::nullopt;
  const double f = real_form(k);
  if (!(f <= static_cast<double>(kHorizonCap))) return std::nullopt;
  return std::llround(f);
}

std::int64_t CoolingRule::tau(std::int64_t k) const {
  const auto t = try_tau(k);
  if (!t) throw Error(ErrorKind::Overflow, "tau(" + std::to_string(k) + ") is beyond the horizon");
  return *t;
}

bool CoolingRule::is_cooling() const {
  return kind_ == CoolingKind::Polynomial || kind_ == CoolingKind::Exponential ||
         kind_ == CoolingKind::DoubleExponential;
}

bool operator==(const CoolingRule& a, const CoolingRule& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == CoolingKind::Explicit) return a.prefix_ == b.prefix_;
  return a.a_ == b.a_ && a.beta_ == b.beta_;
}

std::int64_t resampling_count(const CoolingRule& rule, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be nonnegative");
  std::int64_t lo = 0;
  std::int64_t hi = n;  // tau(k) >= k
  if (rule.kind() == CoolingKind::Explicit)
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(rule.explicit_list().size()) - 1);
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    const auto t = rule.try_tau(mid);
    if (t && *t <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

ScheduleView view(const CoolingRule& rule, std::int64_t n) {
  ScheduleView v;
  v.n = n;
  v.k_n = resampling_count(rule, n);
  v.increments.reserve(static_cast<std::size_t>(v.k_n));
  std::int64_t prev = 0;
  for (std::int64_t k = 1; k <= v.k_n; ++k) {
    const std::int64_t t = rule.tau(k);
    v.increments.push_back(t - prev);
    prev = t;
  }
  v.remainder = n - prev;
  return v;
}

GapPmf empirical_measure(const CoolingRule& rule, std::int64_t n) {
  const auto v = view(rule, n);
  if (v.k_n == 0) throw Error(ErrorKind::NoResamplingYet, "k(n) = 0 at n = " + std::to_string(n));
  std::map<std::int64_t, std::int64_t> counts;
  for (auto t : v.increments) ++counts[t];
  GapPmf pmf;
  for (auto [gap, c] : counts) pmf[gap] = static_cast<double>(c) / static_cast<double>(v.k_n);
  return pmf;
}

double weighted_l1_distance(const GapPmf& a, const GapPmf& b) {
  double acc = 0.0;
  for (auto [l, p] : a) {
    const auto it = b.find(l);
    acc += static_cast<double>(l) * std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (auto [l, q] : b)
    if (!a.contains(l)) acc += static_cast<double>(l) * q;
  return acc;
}

bool ToeplitzWeights::sums_to_one() const {
  const std::int64_t total =
      std::accumulate(block_numerators.begin(), block_numerators.end(), remainder_numerator);
  return total == n;
}

ToeplitzWeights toeplitz_weights(const CoolingRule& rule, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Toeplitz weights need n >= 1");
  auto v = view(rule, n);
  return {n, std::move(v.increments), v.remainder};
}

double toeplitz_average(const ToeplitzWeights& weights, std::span<const double> z, double z_remainder) {
  if (z.size() < weights.block_numerators.size())
    throw Error(ErrorKind::InvalidArgument, "sequence shorter than k(n)");
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.block_numerators.size(); ++k)
    acc += static_cast<double>(weights.block_numerators[k]) * z[k];
  acc += static_cast<double>(weights.remainder_numerator) * z_remainder;
  return acc / static_cast<double>(weights.n);
}

std::int64_t max_gap(const CoolingRule& rule, std::int64_t n) {
  const auto v = view(rule, n);
  if (v.k_n == 0) throw Error(ErrorKind::NoResamplingYet, "k(n) = 0 at n = " + std::to_string(n));
  return *std::max_element(v.increments.begin(), v.increments.end());
}

double max_gap_ratio(const CoolingRule& rule, std::int64_t n) {
  return static_cast<double>(max_gap(rule, n)) / std::sqrt(static_cast<double>(n));
}

}  // namespace rwcre

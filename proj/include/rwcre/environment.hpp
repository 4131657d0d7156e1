#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rwcre/alpha.hpp"

namespace rwcre {

/// One realization of omega on a lazily grown window [left, right] of Z.
///
/// omega(x) is a pure function of (stream, x): the site law is sampled from a
/// counter-based draw keyed by the stream, so materialization order never
/// changes a value. A window built from a callable (test doubles, fixed
/// profiles) uses the callable instead. Single writer; not thread-safe.
class EnvironmentWindow {
 public:
  using SiteFunction = std::function<double(std::int64_t)>;

  EnvironmentWindow(const AlphaSpec& alpha, std::uint64_t stream);
  explicit EnvironmentWindow(SiteFunction omega_of_site);

  /// Reuse the buffers for a fresh environment with another stream.
  void reset(std::uint64_t stream);

  /// Force omega(0) = 1: a reflecting barrier at the origin.
  void set_reflecting_origin(bool on);

  std::uint64_t stream() const { return stream_; }
  std::int64_t left() const { return -static_cast<std::int64_t>(negative_.size()); }
  std::int64_t right() const { return static_cast<std::int64_t>(positive_.size()) - 1; }
  std::size_t materialized() const { return positive_.size() + negative_.size(); }

  double omega(std::int64_t x) { return site(x).omega; }
  double log_rho(std::int64_t x) { return site(x).log_rho; }

  /// P(u32 < threshold(x)) = omega(x).
  std::uint64_t threshold(std::int64_t x) {
    if (x >= 0) {
      if (static_cast<std::size_t>(x) < positive_.size()) return positive_[static_cast<std::size_t>(x)].threshold;
    } else if (static_cast<std::size_t>(-x - 1) < negative_.size()) {
      return negative_[static_cast<std::size_t>(-x - 1)].threshold;
    }
    return site(x).threshold;
  }

  /// Materialize every site of [lo, hi].
  void ensure(std::int64_t lo, std::int64_t hi);

 private:
  struct Site {
    double omega;
    double log_rho;
    std::uint64_t threshold;
  };

  const Site& site(std::int64_t x);
  Site draw(std::int64_t x) const;

  const AlphaSpec* alpha_ = nullptr;
  SiteFunction function_;
  std::uint64_t stream_ = 0;
  bool reflecting_ = false;
  std::vector<Site> positive_;  // x = 0, 1, 2, ...
  std::vector<Site> negative_;  // x = -1, -2, ...
};

}  // namespace rwcre

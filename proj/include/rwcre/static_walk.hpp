#pragma once

// The static RWRE: quenched walks, the exact annealed law of Z_n by path
// enumeration, and the Sinai potential with its valley structure.

#include <cstdint>
#include <map>
#include <vector>

#include "rwcre/alpha.hpp"
#include "rwcre/environment.hpp"
#include "rwcre/rng.hpp"

namespace rwcre {

/// Run n steps of the walk in `env` from the origin, drawing steps from
/// `walk`. The window grows to cover the visited range. When `trajectory` is
/// given it receives Z_0..Z_n.
std::int64_t run_quenched(EnvironmentWindow& env, std::int64_t n, CounterStream& walk,
                          std::vector<std::int64_t>* trajectory = nullptr);

/// Distribution of Z_n on {-n, ..., n} (positions of the wrong parity carry
/// no mass and are omitted).
struct AnnealedPmf {
  std::map<std::int64_t, double> mass;

  double at(std::int64_t x) const {
    const auto it = mass.find(x);
    return it == mass.end() ? 0.0 : it->second;
  }
  double total() const;
  double mean() const;
  double variance() const;
};

inline constexpr int kMaxEnumerationSteps = 16;

/// Exact annealed law of Z_n by enumerating all 2^n paths; each path weighs
/// prod_x <omega^{r_x} (1-omega)^{l_x}>. Throws Error(TooLarge) for n > 16.
AnnealedPmf exact_annealed_pmf(const AlphaSpec& alpha, int n);

/// Sinai potential on [lo, hi] (lo <= 0 <= hi): U(0) = 0, U(x) - U(x-1) = log rho(x).
struct PotentialProfile {
  std::int64_t lo = 0;
  std::vector<double> values;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(values.size()) - 1; }
  double at(std::int64_t x) const { return values[static_cast<std::size_t>(x - lo)]; }
};

PotentialProfile potential(EnvironmentWindow& env, std::int64_t lo, std::int64_t hi);

inline constexpr std::int64_t kDefaultSiteCap = 1'000'000'000;

/// H(r) = min{x >= 0 : |U(x)| >= r}. Throws Error(NonTermination) past `site_cap`.
std::int64_t first_exceedance(EnvironmentWindow& env, double r, std::int64_t site_cap = kDefaultSiteCap);

/// Bottom b_n of the smallest valley of depth log n containing the origin.
///
/// The valley is delimited by the nearest genuine (log n)-maxima on either side
/// of 0 (the nearest one at or left of 0 and the nearest one right of 0);
/// b_n is the argmin of U between them, ties going to the smallest |x| and
/// then to positive x. Throws Error(NonTermination) if the window would have
/// to grow past `site_cap` on a side.
std::int64_t valley_bottom(EnvironmentWindow& env, double n, std::int64_t site_cap = kDefaultSiteCap);

}  // namespace rwcre

#include "rwcre/static_walk.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "rwcre/error.hpp"

namespace rwcre {

std::int64_t run_quenched(EnvironmentWindow& env, std::int64_t n, CounterStream& walk,
                          std::vector<std::int64_t>* trajectory) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "step count must be nonnegative");
  std::int64_t x = 0;
  if (trajectory != nullptr) {
    trajectory->clear();
    trajectory->reserve(static_cast<std::size_t>(n) + 1);
    trajectory->push_back(0);
  }
  for (std::int64_t step = 0; step < n; ++step) {
    const std::uint64_t u = walk.next_u32();
    x += u < env.threshold(x) ? 1 : -1;
    if (trajectory != nullptr) trajectory->push_back(x);
  }
  env.ensure(x, x);  // the endpoint counts as visited
  return x;
}

double AnnealedPmf::total() const {
  double acc = 0.0;
  for (auto [x, p] : mass) acc += p;
  return acc;
}

double AnnealedPmf::mean() const {
  double acc = 0.0;
  for (auto [x, p] : mass) acc += static_cast<double>(x) * p;
  return acc;
}

double AnnealedPmf::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (auto [x, p] : mass) acc += (static_cast<double>(x) - m) * (static_cast<double>(x) - m) * p;
  return acc;
}

AnnealedPmf exact_annealed_pmf(const AlphaSpec& alpha, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "step count must be nonnegative");
  if (n > kMaxEnumerationSteps)
    throw Error(ErrorKind::TooLarge, "path enumeration limited to n <= 16, got " + std::to_string(n));

  constexpr int kDim = kMaxEnumerationSteps + 1;
  std::array<std::array<double, kDim>, kDim> weight{};
  for (int r = 0; r <= n; ++r)
    for (int l = 0; l + r <= n; ++l) weight[r][l] = annealed_site_weight(alpha, r, l);

  // Sites are offset by n so that every visited site has a nonnegative index.
  const int width = 2 * n + 1;
  std::vector<int> rights(static_cast<std::size_t>(width));
  std::vector<int> lefts(static_cast<std::size_t>(width));
  std::vector<double> mass(static_cast<std::size_t>(width), 0.0);

  const std::uint32_t paths = std::uint32_t{1} << n;
  for (std::uint32_t path = 0; path < paths; ++path) {
    std::fill(rights.begin(), rights.end(), 0);
    std::fill(lefts.begin(), lefts.end(), 0);
    int x = n;
    int lo = n;
    int hi = n;
    for (int step = 0; step < n; ++step) {
      if ((path >> step) & 1u) {
        ++rights[static_cast<std::size_t>(x)];
        ++x;
      } else {
        ++lefts[static_cast<std::size_t>(x)];
        --x;
      }
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    double w = 1.0;
    for (int site = lo; site <= hi; ++site)
      w *= weight[static_cast<std::size_t>(rights[static_cast<std::size_t>(site)])]
                 [static_cast<std::size_t>(lefts[static_cast<std::size_t>(site)])];
    mass[static_cast<std::size_t>(x)] += w;
  }

  AnnealedPmf pmf;
  for (int i = 0; i < width; ++i)
    if (((i - n) - n) % 2 == 0) pmf.mass[i - n] = mass[static_cast<std::size_t>(i)];
  return pmf;
}

PotentialProfile potential(EnvironmentWindow& env, std::int64_t lo, std::int64_t hi) {
  if (lo > 0 || hi < 0) throw Error(ErrorKind::InvalidArgument, "potential range must contain the origin");
  PotentialProfile profile;
  profile.lo = lo;
  profile.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  auto slot = [&](std::int64_t x) -> double& { return profile.values[static_cast<std::size_t>(x - lo)]; };
  for (std::int64_t x = 1; x <= hi; ++x) slot(x) = slot(x - 1) + env.log_rho(x);
  for (std::int64_t x = -1; x >= lo; --x) slot(x) = slot(x + 1) - env.log_rho(x);
  return profile;
}

std::int64_t first_exceedance(EnvironmentWindow& env, double r, std::int64_t site_cap) {
  if (r < 0.0) throw Error(ErrorKind::InvalidArgument, "level must be nonnegative");
  double u = 0.0;
  for (std::int64_t x = 0;; ++x) {
    if (x > 0) u += env.log_rho(x);
    if (std::abs(u) >= r) return x;
    if (x >= site_cap) throw Error(ErrorKind::NonTermination, "|U| stayed below level up to the site cap");
  }
}

namespace {

constexpr double kLevelSlack = 1e-9;

struct Extremum {
  std::size_t index;
  bool is_max;
};

// Alternating h-extrema of v, scanned left to right. The first extremum
// reported is only one-sided (its left context lies outside v); every later
// one is a genuine h-extremum of the full path.
std::vector<Extremum> h_extrema(const std::vector<double>& v, double h) {
  enum class Mode { Unknown, Rising, Falling };
  std::vector<Extremum> out;
  Mode mode = Mode::Unknown;
  double cmax = v[0];
  double cmin = v[0];
  std::size_t imax = 0;
  std::size_t imin = 0;
  const double level = h - kLevelSlack;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double x = v[i];
    switch (mode) {
      case Mode::Unknown:
        if (x > cmax) { cmax = x; imax = i; }
        if (x < cmin) { cmin = x; imin = i; }
        if (x - cmin >= level) {
          out.push_back({imin, false});
          mode = Mode::Rising;
          cmax = x;
          imax = i;
        } else if (cmax - x >= level) {
          out.push_back({imax, true});
          mode = Mode::Falling;
          cmin = x;
          imin = i;
        }
        break;
      case Mode::Rising:
        if (x > cmax) { cmax = x; imax = i; }
        if (cmax - x >= level) {
          out.push_back({imax, true});
          mode = Mode::Falling;
          cmin = x;
          imin = i;
        }
        break;
      case Mode::Falling:
        if (x < cmin) { cmin = x; imin = i; }
        if (x - cmin >= level) {
          out.push_back({imin, false});
          mode = Mode::Rising;
          cmax = x;
          imax = i;
        }
        break;
    }
  }
  return out;
}

bool prefer_bottom(std::int64_t x, std::int64_t incumbent) {
  const auto ax = x < 0 ? -x : x;
  const auto ai = incumbent < 0 ? -incumbent : incumbent;
  return ax < ai || (ax == ai && x > 0);
}

}  // namespace

std::int64_t valley_bottom(EnvironmentWindow& env, double n, std::int64_t site_cap) {
  if (!(n >= 3.0)) throw Error(ErrorKind::InvalidArgument, "valley bottom needs n >= 3");
  const double h = std::log(n);
  std::int64_t half = 64;
  for (;;) {
    half = std::min(half, site_cap);
    const auto profile = potential(env, -half, half);
    const auto extrema = h_extrema(profile.values, h);

    std::optional<std::int64_t> left_max;
    std::optional<std::int64_t> right_max;
    for (std::size_t i = 1; i < extrema.size(); ++i) {
      if (!extrema[i].is_max) continue;
      const std::int64_t x = static_cast<std::int64_t>(extrema[i].index) - half;
      if (x <= 0) {
        left_max = x;
      } else {
        right_max = x;
        break;
      }
    }
    if (left_max && right_max) {
      std::int64_t best = *left_max;
      double best_u = profile.at(best);
      for (std::int64_t x = *left_max + 1; x <= *right_max; ++x) {
        const double u = profile.at(x);
        if (u < best_u - kLevelSlack || (std::abs(u - best_u) <= kLevelSlack && prefer_bottom(x, best))) {
          if (u < best_u) best_u = u;
          best = x;
        }
      }
      return best;
    }
    if (half >= site_cap)
      throw Error(ErrorKind::NonTermination, "no valley of depth log n within the site cap");
    half *= 2;
  }
}

}  // namespace rwcre

#include "rwcre/environment.hpp"

#include <cmath>
#include <limits>

#include "rwcre/error.hpp"
#include "rwcre/rng.hpp"

namespace rwcre {

EnvironmentWindow::EnvironmentWindow(const AlphaSpec& alpha, std::uint64_t stream)
    : alpha_(&alpha), stream_(stream) {}

EnvironmentWindow::EnvironmentWindow(SiteFunction omega_of_site) : function_(std::move(omega_of_site)) {}

void EnvironmentWindow::reset(std::uint64_t stream) {
  stream_ = stream;
  positive_.clear();
  negative_.clear();
}

void EnvironmentWindow::set_reflecting_origin(bool on) {
  reflecting_ = on;
  if (!positive_.empty()) positive_[0] = draw(0);
}

EnvironmentWindow::Site EnvironmentWindow::draw(std::int64_t x) const {
  double omega = 0.0;
  if (reflecting_ && x == 0) {
    omega = 1.0;
  } else if (alpha_ != nullptr) {
    const auto bits = philox4x32({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) >> 32),
                                  kEnvironmentDomain, 0u},
                                 split_key(stream_));
    const double u = to_unit_interval((std::uint64_t{bits[0]} << 32) | bits[1]);
    const std::size_t atom = alpha_->atom_for(u);
    return {alpha_->atoms()[atom].value, alpha_->log_rho(atom), alpha_->threshold(atom)};
  } else {
    omega = function_(x);
    if (!(omega >= 0.0 && omega <= 1.0))
      throw Error(ErrorKind::InvalidArgument, "site function returned omega outside [0,1]");
  }
  double log_rho = 0.0;
  if (omega == 0.0)
    log_rho = std::numeric_limits<double>::infinity();
  else if (omega == 1.0)
    log_rho = -std::numeric_limits<double>::infinity();
  else
    log_rho = std::log1p(-omega) - std::log(omega);
  return {omega, log_rho, right_step_threshold(omega)};
}

const EnvironmentWindow::Site& EnvironmentWindow::site(std::int64_t x) {
  if (x >= 0) {
    const auto idx = static_cast<std::size_t>(x);
    while (positive_.size() <= idx) positive_.push_back(draw(static_cast<std::int64_t>(positive_.size())));
    return positive_[idx];
  }
  const auto idx = static_cast<std::size_t>(-x - 1);
  while (negative_.size() <= idx) negative_.push_back(draw(-static_cast<std::int64_t>(negative_.size()) - 1));
  return negative_[idx];
}

void EnvironmentWindow::ensure(std::int64_t lo, std::int64_t hi) {
  if (lo <= hi) {
    site(lo);
    site(hi);
  }
}

}  // namespace rwcre

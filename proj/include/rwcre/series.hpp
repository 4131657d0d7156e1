#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rwcre {

/// Sum of sum_{k>=0} (-1)^k a_k for nonnegative, eventually decreasing a_k.
///
/// The first `direct_terms` terms are summed as they are; if the terms have not
/// fallen below `negligible` by then, the remaining tail is summed by the Euler
/// transform, implemented as `euler_rounds` rounds of averaging adjacent
/// partial sums.
template <typename Term>
double sum_alternating(Term&& term, std::size_t direct_terms = 200, std::size_t euler_rounds = 64,
                       double negligible = 1e-18) {
  double head = 0.0;
  std::size_t k = 0;
  for (; k < direct_terms; ++k) {
    const double a = term(k);
    if (a < negligible) return head;
    head += (k % 2 == 0) ? a : -a;
  }
  std::vector<double> partial(euler_rounds + 1);
  double acc = 0.0;
  for (std::size_t j = 0; j <= euler_rounds; ++j, ++k) {
    const double a = term(k);
    acc += (k % 2 == 0) ? a : -a;
    partial[j] = acc;
  }
  for (std::size_t round = 0; round < euler_rounds; ++round)
    for (std::size_t j = 0; j + 1 < partial.size() - round; ++j) partial[j] = 0.5 * (partial[j] + partial[j + 1]);
  return head + partial[0];
}

}  // namespace rwcre

#pragma once

// Annealed sampler of the cooling walk. X_n is assembled from independent
// blocks: block k is a walk of T_k steps started at the origin of its own
// freshly drawn environment, and the remainder block runs for n - tau(k(n))
// steps. Every block draws from a stream keyed by (master_seed, sample_id, k),
// so a sample is a pure function of its id.

#include <cstdint>
#include <optional>
#include <vector>

#include "rwcre/alpha.hpp"
#include "rwcre/cooling.hpp"
#include "rwcre/environment.hpp"
#include "rwcre/static_walk.hpp"

namespace rwcre {

struct SamplerOptions {
  bool store_blocks = false;
  // Replaces the alpha-drawn environment in every block (test doubles).
  EnvironmentWindow::SiteFunction site_function;
};

/// Reusable per-thread workspace: the schedule is resolved once and the
/// environment buffers are recycled between blocks.
class BlockSampler {
 public:
  BlockSampler(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, SamplerOptions options = {});

  const ScheduleView& schedule() const { return schedule_; }

  /// X_n of sample `sample_id`. When `blocks` is given it receives
  /// Y_1..Y_{k(n)} followed by the remainder block.
  std::int64_t sample(std::uint64_t master_seed, std::uint64_t sample_id, std::vector<std::int64_t>* blocks = nullptr);

  /// X_0..X_n of the same sample, drawn from the same streams as sample().
  std::vector<std::int64_t> trajectory(std::uint64_t master_seed, std::uint64_t sample_id);

 private:
  std::int64_t run_block(std::uint64_t key, std::int64_t length, std::vector<std::int64_t>* path = nullptr);

  ScheduleView schedule_;
  EnvironmentWindow env_;
};

std::int64_t sample_rwcre(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, std::uint64_t sample_id,
                          std::uint64_t master_seed, std::vector<std::int64_t>* blocks = nullptr);

struct EnsembleResult {
  std::int64_t n = 0;
  std::int64_t M = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::int64_t> positions;
  // Row-major M x (k(n)+1) when blocks were stored; the last column is the remainder.
  std::vector<std::int64_t> blocks;
  std::int64_t block_columns = 0;  // zero when blocks were not stored

  bool has_blocks() const { return block_columns > 0; }
  std::int64_t block(std::int64_t sample, std::int64_t column) const {
    return blocks[static_cast<std::size_t>(sample * block_columns + column)];
  }
};

/// M samples on `workers` OpenMP threads. Output depends only on
/// (alpha, rule, n, M, master_seed), never on the worker count.
EnsembleResult sample_ensemble(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, std::int64_t M,
                               std::uint64_t master_seed, int workers, const SamplerOptions& options = {});

/// Single-threaded reference for the parallel sampler.
EnsembleResult sample_ensemble_serial(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n,
                                      std::int64_t M, std::uint64_t master_seed, const SamplerOptions& options = {});

struct BlockMoments {
  double a_hat = 0.0;    // sum of per-block sample means
  double b_hat = 0.0;    // sum of per-block unbiased variances
  double chi_hat = 0.0;  // sum of per-block central p-th absolute moments
};

/// Throws Error(InsufficientSamples) if M < 2 and Error(InvalidArgument) when
/// the ensemble was sampled without blocks.
BlockMoments block_moment_estimates(const EnsembleResult& ensemble, double p);

/// Exact annealed law of X_n by convolving the exact laws of the blocks;
/// every block must be at most 16 steps long.
AnnealedPmf exact_cooling_pmf(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n);

}  // namespace rwcre

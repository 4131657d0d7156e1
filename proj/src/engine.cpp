#include "rwcre/engine.hpp"

#include <algorithm>
#include <string>

#include "rwcre/error.hpp"
#include "rwcre/rng.hpp"
#include "rwcre/stat_tests.hpp"

namespace rwcre {

namespace {

EnvironmentWindow make_window(const AlphaSpec& alpha, const SamplerOptions& options) {
  if (options.site_function) return EnvironmentWindow(options.site_function);
  return EnvironmentWindow(alpha, 0);
}

}  // namespace

BlockSampler::BlockSampler(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, SamplerOptions options)
    : schedule_(view(rule, n)), env_(make_window(alpha, options)) {}

std::int64_t BlockSampler::run_block(std::uint64_t key, std::int64_t length, std::vector<std::int64_t>* path) {
  if (length == 0) return 0;
  env_.reset(key);
  CounterStream walk(key, kWalkDomain);
  return run_quenched(env_, length, walk, path);
}

std::int64_t BlockSampler::sample(std::uint64_t master_seed, std::uint64_t sample_id,
                                  std::vector<std::int64_t>* blocks) {
  if (blocks != nullptr) blocks->clear();
  std::int64_t x = 0;
  std::uint64_t index = 1;
  for (auto length : schedule_.increments) {
    const std::int64_t y = run_block(block_stream(master_seed, sample_id, index++), length);
    x += y;
    if (blocks != nullptr) blocks->push_back(y);
  }
  const std::int64_t tail = run_block(block_stream(master_seed, sample_id, index), schedule_.remainder);
  if (blocks != nullptr) blocks->push_back(tail);
  return x + tail;
}

std::vector<std::int64_t> BlockSampler::trajectory(std::uint64_t master_seed, std::uint64_t sample_id) {
  std::vector<std::int64_t> out{0};
  std::vector<std::int64_t> path;
  std::uint64_t index = 1;
  auto append = [&](std::int64_t length) {
    const std::int64_t origin = out.back();
    path.clear();
    run_block(block_stream(master_seed, sample_id, index++), length, &path);
    for (std::size_t i = 1; i < path.size(); ++i) out.push_back(origin + path[i]);
  };
  for (auto length : schedule_.increments) append(length);
  append(schedule_.remainder);
  return out;
}

std::int64_t sample_rwcre(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, std::uint64_t sample_id,
                          std::uint64_t master_seed, std::vector<std::int64_t>* blocks) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be nonnegative");
  BlockSampler sampler(alpha, rule, n);
  return sampler.sample(master_seed, sample_id, blocks);
}

namespace {

EnsembleResult prepare(const CoolingRule& rule, std::int64_t n, std::int64_t M, std::uint64_t master_seed,
                       const SamplerOptions& options) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be nonnegative");
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "ensemble needs M >= 1");
  EnsembleResult out;
  out.n = n;
  out.M = M;
  out.master_seed = master_seed;
  out.positions.assign(static_cast<std::size_t>(M), 0);
  if (options.store_blocks) {
    out.block_columns = resampling_count(rule, n) + 1;
    out.blocks.assign(static_cast<std::size_t>(M * out.block_columns), 0);
  }
  return out;
}

void fill_sample(BlockSampler& sampler, EnsembleResult& out, std::int64_t i, std::vector<std::int64_t>& scratch) {
  const bool keep = out.has_blocks();
  out.positions[static_cast<std::size_t>(i)] =
      sampler.sample(out.master_seed, static_cast<std::uint64_t>(i), keep ? &scratch : nullptr);
  if (keep) std::copy(scratch.begin(), scratch.end(), out.blocks.begin() + i * out.block_columns);
}

}  // namespace

EnsembleResult sample_ensemble(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n, std::int64_t M,
                               std::uint64_t master_seed, int workers, const SamplerOptions& options) {
  if (workers < 1) throw Error(ErrorKind::InvalidArgument, "workers must be at least 1");
  EnsembleResult out = prepare(rule, n, M, master_seed, options);
  const BlockSampler prototype(alpha, rule, n, options);
#pragma omp parallel num_threads(workers)
  {
    BlockSampler sampler = prototype;
    std::vector<std::int64_t> scratch;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < M; ++i) fill_sample(sampler, out, i, scratch);
  }
  return out;
}

EnsembleResult sample_ensemble_serial(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n,
                                      std::int64_t M, std::uint64_t master_seed, const SamplerOptions& options) {
  EnsembleResult out = prepare(rule, n, M, master_seed, options);
  BlockSampler sampler(alpha, rule, n, options);
  std::vector<std::int64_t> scratch;
  for (std::int64_t i = 0; i < M; ++i) fill_sample(sampler, out, i, scratch);
  return out;
}

BlockMoments block_moment_estimates(const EnsembleResult& ensemble, double p) {
  if (!ensemble.has_blocks()) throw Error(ErrorKind::InvalidArgument, "ensemble was sampled without blocks");
  if (ensemble.M < 2) throw Error(ErrorKind::InsufficientSamples, "block moments need M >= 2");
  BlockMoments out;
  std::vector<double> column(static_cast<std::size_t>(ensemble.M));
  for (std::int64_t k = 0; k < ensemble.block_columns; ++k) {
    for (std::int64_t i = 0; i < ensemble.M; ++i)
      column[static_cast<std::size_t>(i)] = static_cast<double>(ensemble.block(i, k));
    out.a_hat += sample_mean(column);
    out.b_hat += empirical_moments(column, 2.0);
    out.chi_hat += empirical_moments(column, p);
  }
  return out;
}

namespace {

AnnealedPmf convolve(const AnnealedPmf& a, const AnnealedPmf& b) {
  AnnealedPmf out;
  for (auto [x, p] : a.mass)
    for (auto [y, q] : b.mass) out.mass[x + y] += p * q;
  return out;
}

}  // namespace

AnnealedPmf exact_cooling_pmf(const AlphaSpec& alpha, const CoolingRule& rule, std::int64_t n) {
  const auto schedule = view(rule, n);
  AnnealedPmf out;
  out.mass[0] = 1.0;
  auto fold = [&](std::int64_t length) {
    if (length == 0) return;
    if (length > kMaxEnumerationSteps)
      throw Error(ErrorKind::TooLarge, "block of length " + std::to_string(length) + " exceeds the exact limit 16");
    out = convolve(out, exact_annealed_pmf(alpha, static_cast<int>(length)));
  };
  for (auto t : schedule.increments) fold(t);
  fold(schedule.remainder);
  return out;
}

}  // namespace rwcre

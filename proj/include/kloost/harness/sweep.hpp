#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>
#include <vector>

#include "kloost/bounds.hpp"
#include "kloost/expsum.hpp"
#include "kloost/harness/config.hpp"
#include "kloost/harness/rng.hpp"

namespace kloost::harness {

struct ExperimentRecord {
  u64 p = 0;
  i64 a = 0;
  i64 b = 0;
  i64 M = 0;
  u64 L = 0;
  double theta = 0.0;
  double re = 0.0;
  double im = 0.0;
  double abs_S = 0.0;
  u64 unit_count = 0;
  double weil = 0.0;
  double thm1_best = 0.0;
  int best_r = 2;
  double conj1 = 0.0;
  double ratio_thm1 = 0.0;
  double ratio_conj = 0.0;
  u64 seed = 0;
  u64 sample_index = 0;

  auto key() const { return std::tie(p, theta, sample_index); }
};

/// L = ceil(p^theta), clamped to [1, p].
inline u64 interval_length(u64 p, double theta) {
  const double raw = std::ceil(std::pow(static_cast<double>(p), theta));
  return std::clamp<u64>(static_cast<u64>(raw), 1, p);
}

/// One sample of a (p, theta) cell; depends only on its key and the seed.
inline ExperimentRecord run_sample(const SweepConfig& cfg, u64 p, double theta, u64 sample_index) {
  StreamRng rng(cfg.seed, p, theta, sample_index);
  const i64 a = static_cast<i64>(rng.uniform(p));
  const i64 b = static_cast<i64>(rng.uniform(1, p - 1));
  const i64 M = static_cast<i64>(rng.uniform(p));
  const u64 L = interval_length(p, theta);

  const SumParams params(a, b, p);
  const IntervalSpec interval{M, L};
  const SumValue s = incomplete_kloosterman(params, interval);
  const BoundReport rep = make_report(params, interval, s.abs(), cfg.r_max, cfg.epsilon);

  ExperimentRecord rec;
  rec.p = p;
  rec.a = a;
  rec.b = b;
  rec.M = M;
  rec.L = L;
  rec.theta = theta;
  rec.re = s.re;
  rec.im = s.im;
  rec.abs_S = rep.abs_S;
  rec.unit_count = s.term_count;
  rec.weil = rep.weil;
  rec.thm1_best = rep.best_thm1;
  rec.best_r = rep.best_r;
  rec.conj1 = rep.conj1;
  rec.ratio_thm1 = rep.ratio_thm1;
  rec.ratio_conj = rep.ratio_conj;
  rec.seed = cfg.seed;
  rec.sample_index = sample_index;
  return rec;
}

/// Runs every (p, theta, sample) and returns records sorted by
/// (p, theta, sample_index). threads = 0 picks the hardware concurrency.
inline std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg, unsigned threads = 0) {
  validate(cfg);
  struct Cell {
    u64 p;
    double theta;
  };
  std::vector<Cell> cells;
  for (u64 p : cfg.primes) {
    for (double t : cfg.theta_list) cells.push_back({p, t});
  }
  std::vector<ExperimentRecord> records(cells.size() * cfg.samples_per_cell);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
        for (u64 s = 0; s < cfg.samples_per_cell; ++s) {
          records[i * cfg.samples_per_cell + s] = run_sample(cfg, cells[i].p, cells[i].theta, s);
        }
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::sort(records.begin(), records.end(),
            [](const ExperimentRecord& x, const ExperimentRecord& y) { return x.key() < y.key(); });
  return records;
}

}  // namespace kloost::harness

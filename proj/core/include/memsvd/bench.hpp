// Copyright 2026 The MemSVD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMSVD_BENCH_HPP_
#define MEMSVD_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace memsvd::bench {

enum class Mode { kThroughput, kDrift, kEquivalence, kFlops };

/// Configuration for one benchmark run. Validated by validate(); the CLI
/// maps its flags one-to-one onto these fields.
struct BenchSpec {
  Mode mode = Mode::kThroughput;
  std::vector<int> window_lengths = {20, 40, 60, 80, 100, 120, 140, 160};
  std::size_t n_c = 10;
  std::size_t d = 2304;
  std::size_t d_u = 512;
  std::size_t actors_per_clip = 3;
  std::vector<double> lambda_list = {0.8, 0.9, 0.95, 0.99};
  int repeats = 9;
  int warmup_iters = 2;
  std::uint64_t seed = 42;
  std::string output_path = "-";  // "-" writes to stdout

  bool exclude_center = false;
  bool center_features = false;
  bool cache_kv = false;
  bool scale_by_du = false;

  // Synthetic-stream knobs (drift mode).
  std::size_t stream_clips = 600;
  std::size_t planted_rank = 0;  // 0: use n_c
  double drift_rate = 0.01;
  double noise_sigma = 0.001;

  // Test-only fault injection: perturbs the basis before the
  // equivalence checks so the negative-control path can be exercised.
  double inject_basis_perturbation = 0.0;

  /// Throws std::invalid_argument on out-of-range fields (repeats < 3,
  /// non-ascending windows, lambda outside (0, 1], ...).
  void validate() const;
};

struct ThroughputRow {
  std::string method;  // attention | memsvd | omemsvd
  int window_s = 0;
  std::size_t n_mem = 0;
  double median_us = 0.0;
  double p10_us = 0.0;
  double p90_us = 0.0;
  bool unstable = false;  // rerun medians disagreed by more than 25%
};

struct DriftRow {
  double lambda = 0.0;
  std::size_t clip_index = 0;
  double subspace_distance = 0.0;
};

struct EquivalenceRow {
  std::string test;
  double max_abs_err = 0.0;
  bool pass = false;
};

struct FlopsRow {
  int window_s = 0;
  std::size_t n_mem = 0;
  std::uint64_t attention = 0;
  std::uint64_t memsvd_project = 0;
  double ratio = 0.0;  // attention / memsvd_project
  std::uint64_t basis_exact = 0;
  std::uint64_t basis_randomized = 0;
  std::uint64_t basis_online_update = 0;
};

/// Head-only latency of the memory interaction per query feature, for
/// the attention baseline, the offline subspace projection (basis
/// precomputed), and the online variant (projection plus the per-clip
/// update amortized over that clip's queries). Timing uses a monotonic
/// clock, runs serialized on one thread, and reports the median/p10/p90
/// over `repeats` samples after warmup. Each row is measured twice; rows
/// whose two medians disagree by more than 25% are flagged unstable.
std::vector<ThroughputRow> run_throughput(const BenchSpec& spec);

/// Streams a drifting planted sequence per forgetting factor and
/// checkpoints the distance to a recent-window offline basis every 50
/// clips. The recent-window size is window_lengths[0] (clips).
std::vector<DriftRow> run_drift(const BenchSpec& spec);

/// Algebraic cross-checks at configured sizes: the projection identity
/// through the coefficient matrix, streamed-vs-offline exactness at
/// lambda = 1, and the single-feature fast path against the general
/// update path.
std::vector<EquivalenceRow> run_equivalence(const BenchSpec& spec);

/// Pure counter evaluation across window lengths, including the
/// attention-to-projection ratio column.
std::vector<FlopsRow> run_flops(const BenchSpec& spec);

// CSV emission: `#`-prefixed metadata comments (spec, seed, build id),
// then a header row, then data rows.
void write_csv(std::ostream& os, const BenchSpec& spec,
               const std::vector<ThroughputRow>& rows);
void write_csv(std::ostream& os, const BenchSpec& spec,
               const std::vector<DriftRow>& rows);
void write_csv(std::ostream& os, const BenchSpec& spec,
               const std::vector<EquivalenceRow>& rows);
void write_csv(std::ostream& os, const BenchSpec& spec,
               const std::vector<FlopsRow>& rows);

/// Runs the spec's mode and writes CSV to spec.output_path ("-" for
/// stdout). Returns the process exit code: 0 all-pass, 1 on any
/// equivalence failure, 2 on unstable timing.
int run(const BenchSpec& spec);

/// git-describe-style id baked in at configure time.
std::string build_id();

}  // namespace memsvd::bench

#endif  // MEMSVD_BENCH_HPP_

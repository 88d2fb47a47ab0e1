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

#ifndef MEMSVD_MEMORY_BANK_HPP_
#define MEMSVD_MEMORY_BANK_HPP_

#include <cstdint>
#include <deque>

#include "memsvd/dense_matrix.hpp"

namespace memsvd {

/// One clip's actor-feature block: one row per detected actor. Clips with
/// zero actors are legal (rows() == 0) and contribute nothing to the
/// materialized memory.
struct ClipFeatures {
  std::int64_t timestamp = 0;  // clip index; 1 clip == 1 second
  DenseMatrix features;        // N_t x d
};

enum class BankMode {
  /// Centered-window operation: the bank retains the trailing 2w+1 clips
  /// so any center inside that horizon can be materialized.
  kOffline,
  /// Causal streaming: clips are validated and immediately dropped. The
  /// memory representation lives in an OnlineState instead; the bank
  /// stores zero scalars.
  kOnline,
};

/// Sliding window of per-clip actor features. Materializes the
/// concatenated memory matrix over [center - w, center + w] on demand.
///
/// Single writer per bank; materialize() returns an immutable snapshot
/// that can be read from any thread.
class MemoryBank {
 public:
  MemoryBank(std::size_t half_window, std::size_t dim,
             BankMode mode = BankMode::kOffline);

  /// Appends a clip. Timestamps must be strictly increasing and the
  /// feature width must match the bank. Offline mode evicts clips older
  /// than newest - 2w; online mode stores nothing.
  void push_clip(ClipFeatures clip);

  /// Vertical concatenation of every in-window clip block, in timestamp
  /// order with actor order preserved within a clip. `exclude_center`
  /// drops the center clip's own rows from the result. Throws
  /// std::runtime_error when no rows fall inside the window (callers that
  /// want a pass-through must skip the memory op instead).
  DenseMatrix materialize(std::int64_t center,
                          bool exclude_center = false) const;

  std::size_t half_window() const { return half_window_; }
  std::size_t dim() const { return dim_; }
  BankMode mode() const { return mode_; }

  std::size_t clip_count() const { return clips_.size(); }

  /// Footprint introspection: total feature scalars currently retained.
  /// Always 0 in online mode.
  std::size_t stored_scalars() const;

  const std::deque<ClipFeatures>& clips() const { return clips_; }

 private:
  std::size_t half_window_;
  std::size_t dim_;
  BankMode mode_;
  bool has_newest_ = false;
  std::int64_t newest_ = 0;
  std::deque<ClipFeatures> clips_;
};

}  // namespace memsvd

#endif  // MEMSVD_MEMORY_BANK_HPP_

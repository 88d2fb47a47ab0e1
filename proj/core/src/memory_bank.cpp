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

#include "memsvd/memory_bank.hpp"

#include <stdexcept>
#include <string>

namespace memsvd {

MemoryBank::MemoryBank(std::size_t half_window, std::size_t dim, BankMode mode)
    : half_window_(half_window), dim_(dim), mode_(mode) {
  if (dim == 0) {
    throw std::invalid_argument("MemoryBank: feature dim must be positive");
  }
}

void MemoryBank::push_clip(ClipFeatures clip) {
  if (clip.features.rows() > 0 && clip.features.cols() != dim_) {
    throw std::invalid_argument("MemoryBank: clip dim " +
                                std::to_string(clip.features.cols()) +
                                " does not match bank dim " +
                                std::to_string(dim_));
  }
  if (has_newest_ && clip.timestamp <= newest_) {
    throw std::invalid_argument("MemoryBank: out-of-order timestamp " +
                                std::to_string(clip.timestamp));
  }
  newest_ = clip.timestamp;
  has_newest_ = true;
  if (mode_ == BankMode::kOnline) {
    return;  // streaming state lives in OnlineState, nothing retained
  }
  clips_.push_back(std::move(clip));
  // Retention horizon: the trailing 2w+1 clips around the newest center.
  const std::int64_t horizon =
      newest_ - 2 * static_cast<std::int64_t>(half_window_);
  while (!clips_.empty() && clips_.front().timestamp < horizon) {
    clips_.pop_front();
  }
}

DenseMatrix MemoryBank::materialize(std::int64_t center,
                                    bool exclude_center) const {
  if (clips_.empty()) {
    throw std::runtime_error("MemoryBank: no clips stored");
  }
  const std::int64_t w = static_cast<std::int64_t>(half_window_);
  std::size_t total_rows = 0;
  for (const ClipFeatures& clip : clips_) {
    if (std::abs(clip.timestamp - center) > w) continue;
    if (exclude_center && clip.timestamp == center) continue;
    total_rows += clip.features.rows();
  }
  if (total_rows == 0) {
    throw std::runtime_error(
        "MemoryBank: window around " + std::to_string(center) +
        " holds no feature rows (callers wanting a pass-through must skip "
        "the memory op)");
  }
  DenseMatrix m(total_rows, dim_);
  std::size_t out = 0;
  for (const ClipFeatures& clip : clips_) {
    if (std::abs(clip.timestamp - center) > w) continue;
    if (exclude_center && clip.timestamp == center) continue;
    for (std::size_t r = 0; r < clip.features.rows(); ++r) {
      for (std::size_t c = 0; c < dim_; ++c) {
        m(out, c) = clip.features(r, c);
      }
      ++out;
    }
  }
  return m;
}

std::size_t MemoryBank::stored_scalars() const {
  std::size_t total = 0;
  for (const ClipFeatures& clip : clips_) total += clip.features.size();
  return total;
}

}  // namespace memsvd

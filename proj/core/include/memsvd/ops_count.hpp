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

#ifndef MEMSVD_OPS_COUNT_HPP_
#define MEMSVD_OPS_COUNT_HPP_

#include <cstdint>

namespace memsvd::ops {

/// Thread-local multiply-accumulate tally fed by the dense kernels.
/// Used by tests to assert cost-shape properties (e.g. that the online
/// basis update does constant work per clip regardless of stream length).
void reset();
std::uint64_t total();
void add(std::uint64_t macs);

/// Reads the counter delta over a scope without resetting the global tally.
class CounterScope {
 public:
  CounterScope() : start_(total()) {}
  std::uint64_t elapsed() const { return total() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace memsvd::ops

#endif  // MEMSVD_OPS_COUNT_HPP_

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

#include "memsvd/ops_count.hpp"

namespace memsvd::ops {

namespace {
thread_local std::uint64_t g_counter = 0;
}

void reset() { g_counter = 0; }

std::uint64_t total() { return g_counter; }

void add(std::uint64_t macs) { g_counter += macs; }

}  // namespace memsvd::ops

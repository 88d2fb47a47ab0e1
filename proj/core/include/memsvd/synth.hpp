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

#ifndef MEMSVD_SYNTH_HPP_
#define MEMSVD_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "memsvd/memory_bank.hpp"

namespace memsvd {

/// Planted-subspace stream generator: stands in for a feature-extraction
/// backbone while giving every test analytic ground truth.
///
/// Clip t draws N_t actor rows as Z_t B_t + noise_sigma * G_t, where B_t
/// is a planted r x d orthonormal basis rotated by drift_rate * t radians
/// in a fixed 2-plane (one in-subspace direction, one out-of-subspace
/// direction), and Z_t, G_t are seeded Gaussians. The whole stream is a
/// deterministic function of the config.
struct SynthConfig {
  std::size_t d = 64;
  std::size_t planted_rank = 8;
  std::size_t actors_min = 3;  // actors_min == actors_max: fixed count
  std::size_t actors_max = 3;
  double noise_sigma = 0.0;
  double drift_rate = 0.0;  // radians of planted-basis rotation per clip
  std::uint64_t seed = 0;
  std::size_t clip_count = 0;
};

std::vector<ClipFeatures> generate_stream(const SynthConfig& cfg);

/// The planted basis at clip t (before noise), for tests that compare
/// recovered subspaces against ground truth.
DenseMatrix planted_basis_at(const SynthConfig& cfg, std::size_t t);

}  // namespace memsvd

#endif  // MEMSVD_SYNTH_HPP_

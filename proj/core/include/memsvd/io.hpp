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

#ifndef MEMSVD_IO_HPP_
#define MEMSVD_IO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "memsvd/incremental.hpp"
#include "memsvd/memory_bank.hpp"
#include "memsvd/subspace.hpp"

namespace memsvd {

// Feature-bank file, little-endian throughout:
//   magic   8 bytes  "MEMSVDB1"
//   d       u32
//   clips   u32
//   flags   u32      bit0: features were mean-centered
// then per clip:
//   timestamp  i64
//   n_t        u32
//   features   n_t * d  f32, row-major
//
// Features are stored at 32-bit precision (storage realism) and widened
// to 64-bit on load.
inline constexpr char kBankMagic[8] = {'M', 'E', 'M', 'S', 'V', 'D', 'B', '1'};
inline constexpr std::uint32_t kBankFlagCentered = 1u;

// Basis snapshot file, little-endian:
//   magic   8 bytes  "MEMSVDS1"
//   n_c     u32
//   d       u32
//   flags   u32      bit0: online-state trailer present
//   sigma   n_c f64
//   u       n_c * d  f64, row-major
// online trailer (flag bit0):
//   lambda      f64
//   clips_seen  u64
//
// Basis snapshots keep full 64-bit precision so a resumed stream
// continues from the exact saved state.
inline constexpr char kBasisMagic[8] = {'M', 'E', 'M', 'S', 'V', 'D', 'S', '1'};
inline constexpr std::uint32_t kBasisFlagOnlineState = 1u;

/// Serializes clips (consistent width required) to the bank format.
void write_bank(const std::string& path, std::span<const ClipFeatures> clips,
                bool centered = false);

struct BankContents {
  std::vector<ClipFeatures> clips;
  bool centered = false;
};

/// Reads a bank file, widening features to 64-bit. Throws
/// std::runtime_error on a bad magic, truncation, trailing bytes or a
/// size overflow; no partial state escapes on failure.
BankContents read_bank(const std::string& path);

void write_basis(const std::string& path, const SubspaceBasis& basis);

/// Reads a basis snapshot and re-validates row orthonormality (1e-6).
SubspaceBasis read_basis(const std::string& path);

/// OnlineState snapshot: the basis payload plus the forgetting factor and
/// update count, so a restored stream behaves identically to one that was
/// never interrupted.
void write_online_state(const std::string& path, const OnlineState& state);
OnlineState read_online_state(const std::string& path);

}  // namespace memsvd

#endif  // MEMSVD_IO_HPP_

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

#include "memsvd/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace memsvd {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_i64(std::string& out, std::int64_t v) {
  put_u64(out, static_cast<std::uint64_t>(v));
}

void put_f32(std::string& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class ByteReader {
 public:
  ByteReader(std::string bytes, std::string path)
      : bytes_(std::move(bytes)), path_(std::move(path)) {}

  std::uint32_t take_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(
               static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  std::uint64_t take_u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  std::int64_t take_i64() { return static_cast<std::int64_t>(take_u64()); }
  float take_f32() { return std::bit_cast<float>(take_u32()); }
  double take_f64() { return std::bit_cast<double>(take_u64()); }

  void take_magic(const char (&expect)[8], const char* kind) {
    need(8);
    if (std::memcmp(bytes_.data() + pos_, expect, 8) != 0) {
      throw std::runtime_error(path_ + ": bad " + kind + " magic");
    }
    pos_ += 8;
  }

  void expect_end() {
    if (pos_ != bytes_.size()) {
      throw std::runtime_error(path_ + ": trailing bytes after payload");
    }
  }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw std::runtime_error(path_ + ": truncated file");
    }
  }

  std::string bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) {
    throw std::runtime_error(path + ": write failed");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error(path + ": cannot open for reading");
  }
  std::string bytes((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
  if (is.bad()) {
    throw std::runtime_error(path + ": read failed");
  }
  return bytes;
}

std::string serialize_basis(const SubspaceBasis& basis, std::uint32_t flags) {
  std::string out;
  out.append(kBasisMagic, 8);
  put_u32(out, static_cast<std::uint32_t>(basis.rank()));
  put_u32(out, static_cast<std::uint32_t>(basis.dim()));
  put_u32(out, flags);
  for (double s : basis.sigma()) put_f64(out, s);
  for (double x : basis.u().data()) put_f64(out, x);
  return out;
}

SubspaceBasis parse_basis(ByteReader& in) {
  const std::uint32_t n_c = in.take_u32();
  const std::uint32_t d = in.take_u32();
  in.take_u32();  // flags already dispatched by the caller
  if (n_c == 0 || d == 0) {
    throw std::runtime_error("basis file: zero dimensions");
  }
  std::vector<double> sigma(n_c);
  for (std::uint32_t i = 0; i < n_c; ++i) sigma[i] = in.take_f64();
  std::vector<double> u(static_cast<std::size_t>(n_c) * d);
  for (double& x : u) x = in.take_f64();
  try {
    // SubspaceBasis re-validates orthonormality, ordering and finiteness.
    return SubspaceBasis(DenseMatrix(n_c, d, std::move(u)), std::move(sigma));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("basis file: ") + e.what());
  }
}

std::uint32_t peek_basis_flags(const std::string& bytes,
                               const std::string& path) {
  if (bytes.size() < 20) {
    throw std::runtime_error(path + ": truncated file");
  }
  std::uint32_t flags = 0;
  for (int i = 0; i < 4; ++i) {
    flags |= static_cast<std::uint32_t>(
                 static_cast<unsigned char>(bytes[16 + i]))
             << (8 * i);
  }
  return flags;
}

}  // namespace

void write_bank(const std::string& path, std::span<const ClipFeatures> clips,
                bool centered) {
  std::size_t dim = 0;
  for (const ClipFeatures& clip : clips) {
    if (clip.features.rows() == 0) continue;
    if (dim == 0) {
      dim = clip.features.cols();
    } else if (clip.features.cols() != dim) {
      throw std::invalid_argument("write_bank: inconsistent feature dim");
    }
  }
  if (dim == 0) dim = 1;  // empty bank still needs a valid header
  if (clips.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("write_bank: too many clips");
  }

  std::string out;
  out.append(kBankMagic, 8);
  put_u32(out, static_cast<std::uint32_t>(dim));
  put_u32(out, static_cast<std::uint32_t>(clips.size()));
  put_u32(out, centered ? kBankFlagCentered : 0u);
  for (const ClipFeatures& clip : clips) {
    put_i64(out, clip.timestamp);
    put_u32(out, static_cast<std::uint32_t>(clip.features.rows()));
    for (double x : clip.features.data()) {
      put_f32(out, static_cast<float>(x));
    }
  }
  write_file(path, out);
}

BankContents read_bank(const std::string& path) {
  ByteReader in(read_file(path), path);
  in.take_magic(kBankMagic, "bank");
  const std::uint32_t dim = in.take_u32();
  const std::uint32_t clip_count = in.take_u32();
  const std::uint32_t flags = in.take_u32();
  if (dim == 0) {
    throw std::runtime_error(path + ": zero feature dim");
  }

  BankContents bank;
  bank.centered = (flags & kBankFlagCentered) != 0;
  bank.clips.reserve(clip_count);
  for (std::uint32_t c = 0; c < clip_count; ++c) {
    ClipFeatures clip;
    clip.timestamp = in.take_i64();
    const std::uint32_t n_t = in.take_u32();
    std::vector<double> data(static_cast<std::size_t>(n_t) * dim);
    for (double& x : data) x = static_cast<double>(in.take_f32());
    clip.features = DenseMatrix(n_t, dim, std::move(data));
    bank.clips.push_back(std::move(clip));
  }
  in.expect_end();
  return bank;
}

void write_basis(const std::string& path, const SubspaceBasis& basis) {
  write_file(path, serialize_basis(basis, 0));
}

SubspaceBasis read_basis(const std::string& path) {
  std::string bytes = read_file(path);
  ByteReader in(bytes, path);
  in.take_magic(kBasisMagic, "basis");
  SubspaceBasis basis = parse_basis(in);
  if ((peek_basis_flags(bytes, path) & kBasisFlagOnlineState) == 0) {
    in.expect_end();
  }
  return basis;
}

void write_online_state(const std::string& path, const OnlineState& state) {
  std::string out = serialize_basis(state.basis(), kBasisFlagOnlineState);
  put_f64(out, state.lambda());
  put_u64(out, state.clips_seen());
  write_file(path, out);
}

OnlineState read_online_state(const std::string& path) {
  std::string bytes = read_file(path);
  if ((peek_basis_flags(bytes, path) & kBasisFlagOnlineState) == 0) {
    throw std::runtime_error(path + ": basis file has no online-state "
                             "trailer");
  }
  ByteReader in(std::move(bytes), path);
  in.take_magic(kBasisMagic, "basis");
  SubspaceBasis basis = parse_basis(in);
  const double lambda = in.take_f64();
  const std::uint64_t clips_seen = in.take_u64();
  in.expect_end();
  return OnlineState::restore(std::move(basis), lambda, clips_seen);
}

}  // namespace memsvd

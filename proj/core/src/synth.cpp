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

#include "memsvd/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "memsvd/linalg.hpp"
#include "memsvd/rng.hpp"

namespace memsvd {

namespace {

void validate(const SynthConfig& cfg) {
  if (cfg.d == 0) throw std::invalid_argument("SynthConfig: d must be > 0");
  if (cfg.planted_rank == 0 || cfg.planted_rank > cfg.d) {
    throw std::invalid_argument("SynthConfig: need 1 <= rank <= d");
  }
  if (cfg.actors_min > cfg.actors_max) {
    throw std::invalid_argument("SynthConfig: actors_min > actors_max");
  }
  if (cfg.noise_sigma < 0.0 || cfg.drift_rate < 0.0) {
    throw std::invalid_argument("SynthConfig: negative noise or drift rate");
  }
}

struct PlantedModel {
  DenseMatrix b0;               // r x d orthonormal rows
  std::vector<double> drift_to;  // unit vector orthogonal to span(b0)
  bool can_drift = false;
};

// Consumes a fixed prefix of the random stream: d*r Gaussians for the
// basis, then Gaussians for the out-of-subspace drift direction. Both
// generate_stream and planted_basis_at replay this prefix, so they agree
// exactly for a given config.
PlantedModel make_model(const SynthConfig& cfg, Rng& rng) {
  PlantedModel model;
  const std::size_t d = cfg.d;
  const std::size_t r = cfg.planted_rank;
  DenseMatrix g = gaussian_matrix(d, r, rng);
  model.b0 = transpose(householder_qr(g).q);

  if (r == d) {
    // The subspace is the whole space; rotation cannot move it.
    return model;
  }
  for (int attempt = 0; attempt < 16 && !model.can_drift; ++attempt) {
    std::vector<double> v(d);
    for (double& x : v) x = rng.normal();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < r; ++i) {
        const double proj = dot(v, model.b0.row(i));
        const auto row = model.b0.row(i);
        for (std::size_t j = 0; j < d; ++j) v[j] -= proj * row[j];
      }
    }
    const double nrm = norm2(v);
    if (nrm > 1e-8) {
      for (double& x : v) x /= nrm;
      model.drift_to = std::move(v);
      model.can_drift = true;
    }
  }
  if (!model.can_drift) {
    throw std::runtime_error("generate_stream: could not build drift plane");
  }
  return model;
}

// Rotation by theta in the plane spanned by the first basis row and the
// out-of-subspace direction; only the first row moves.
DenseMatrix basis_at_angle(const PlantedModel& model, double theta) {
  DenseMatrix b = model.b0;
  if (!model.can_drift || theta == 0.0) return b;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    b(0, j) = c * model.b0(0, j) + s * model.drift_to[j];
  }
  return b;
}

}  // namespace

std::vector<ClipFeatures> generate_stream(const SynthConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  PlantedModel model = make_model(cfg, rng);

  std::vector<ClipFeatures> stream;
  stream.reserve(cfg.clip_count);
  for (std::size_t t = 0; t < cfg.clip_count; ++t) {
    std::size_t actors = cfg.actors_min;
    if (cfg.actors_max > cfg.actors_min) {
      actors = rng.uniform_index(cfg.actors_min, cfg.actors_max);
    }
    const DenseMatrix basis =
        basis_at_angle(model, cfg.drift_rate * static_cast<double>(t));
    DenseMatrix coeffs = gaussian_matrix(actors, cfg.planted_rank, rng);
    DenseMatrix features = matmul(coeffs, basis);
    if (cfg.noise_sigma > 0.0) {
      for (std::size_t i = 0; i < features.rows(); ++i) {
        for (std::size_t j = 0; j < features.cols(); ++j) {
          features(i, j) += cfg.noise_sigma * rng.normal();
        }
      }
    }
    stream.push_back(
        ClipFeatures{static_cast<std::int64_t>(t), std::move(features)});
  }
  return stream;
}

DenseMatrix planted_basis_at(const SynthConfig& cfg, std::size_t t) {
  validate(cfg);
  Rng rng(cfg.seed);
  PlantedModel model = make_model(cfg, rng);
  return basis_at_angle(model, cfg.drift_rate * static_cast<double>(t));
}

}  // namespace memsvd

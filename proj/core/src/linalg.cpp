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

#include "memsvd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "memsvd/ops_count.hpp"
#include "memsvd/rng.hpp"

namespace memsvd {

namespace {

// One-sided Jacobi: a full sweep that applies no rotation leaves every
// column pair orthogonal to this relative tolerance.
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 60;

void require_finite(const DenseMatrix& a, const char* who) {
  if (!a.all_finite()) {
    throw std::invalid_argument(std::string(who) + ": non-finite entry");
  }
}

void require_nonempty(const DenseMatrix& a, const char* who) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty matrix");
  }
}

}  // namespace

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      t(j, i) = a(i, j);
    }
  }
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions disagree");
  }
  DenseMatrix c(a.rows(), b.cols());
  // i-k-j order keeps both b and c row-contiguous in the inner loop.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  ops::add(a.rows() * a.cols() * b.cols());
  return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("matmul_at_b: leading dimensions disagree");
  }
  DenseMatrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aki * b(k, j);
      }
    }
  }
  ops::add(a.rows() * a.cols() * b.cols());
  return c;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("matmul_a_bt: trailing dimensions disagree");
  }
  DenseMatrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      c(i, j) = dot(a.row(i), b.row(j));
    }
  }
  return c;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) acc += x[t] * y[t];
  ops::add(x.size());
  return acc;
}

double norm2(std::span<const double> x) {
  return std::sqrt(dot(x, x));
}

double frobenius_norm(const DenseMatrix& a) {
  return norm2(a.data());
}

// ---------------------------------------------------------------------------
// Householder QR (Trefethen & Bau, Algorithm 10.1 with explicit thin Q)
// ---------------------------------------------------------------------------

QrResult householder_qr(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    throw std::invalid_argument("householder_qr: need rows >= cols");
  }
  require_nonempty(a, "householder_qr");
  require_finite(a, "householder_qr");

  DenseMatrix work = a;
  // Unit-norm reflector for step k lives in reflectors[k][0 .. m-k-1];
  // an all-zero reflector means the step was skipped (zero subcolumn).
  std::vector<std::vector<double>> reflectors(n);
  std::uint64_t macs = 0;

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double>& v = reflectors[k];
    v.assign(m - k, 0.0);
    double normx = 0.0;
    for (std::size_t i = k; i < m; ++i) normx += work(i, k) * work(i, k);
    normx = std::sqrt(normx);
    macs += m - k;
    if (normx == 0.0) continue;

    for (std::size_t i = k; i < m; ++i) v[i - k] = work(i, k);
    v[0] += (v[0] >= 0.0 ? normx : -normx);
    double normv = 0.0;
    for (double x : v) normv += x * x;
    normv = std::sqrt(normv);
    for (double& x : v) x /= normv;
    macs += 2 * (m - k);

    // work[k:m, k:n] -= 2 v (v^T work[k:m, k:n])
    for (std::size_t j = k; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < m; ++i) proj += v[i - k] * work(i, j);
      proj *= 2.0;
      for (std::size_t i = k; i < m; ++i) work(i, j) -= proj * v[i - k];
    }
    macs += 2 * (m - k) * (n - k);
  }

  DenseMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) r(i, j) = work(i, j);
  }

  // Thin Q: apply reflectors back-to-front to the first n identity columns.
  DenseMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
  for (std::size_t step = n; step-- > 0;) {
    const std::vector<double>& v = reflectors[step];
    bool live = false;
    for (double x : v) {
      if (x != 0.0) {
        live = true;
        break;
      }
    }
    if (!live) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = step; i < m; ++i) proj += v[i - step] * q(i, j);
      proj *= 2.0;
      for (std::size_t i = step; i < m; ++i) q(i, j) -= proj * v[i - step];
    }
    macs += 2 * (m - step) * n;
  }

  // Normalize to a non-negative R diagonal.
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      for (std::size_t t = j; t < n; ++t) r(j, t) = -r(j, t);
      for (std::size_t i = 0; i < m; ++i) q(i, j) = -q(i, j);
    }
  }

  ops::add(macs);
  return {std::move(q), std::move(r)};
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

namespace {

// Works on the tall orientation (m >= n): orthogonalizes the columns of W
// by plane rotations, accumulating them into V. On exit W = U * diag(s).
struct JacobiCore {
  DenseMatrix w;
  DenseMatrix v;
};

JacobiCore jacobi_orthogonalize(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  JacobiCore core{a, DenseMatrix::identity(n)};
  DenseMatrix& w = core.w;
  DenseMatrix& v = core.v;

  std::uint64_t macs = 0;
  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gamma += wp * wq;
        }
        macs += 3 * m;
        if (alpha == 0.0 || beta == 0.0) continue;  // dead column
        if (std::abs(gamma) <= kJacobiTol * std::sqrt(alpha * beta)) continue;

        // Rutishauser rotation annihilating the (p,q) Gram entry.
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        macs += 4 * (m + n);
        ++rotations;
      }
    }
    converged = (rotations == 0);
  }
  ops::add(macs);
  if (!converged) {
    throw std::runtime_error(
        "svd: one-sided Jacobi did not converge within 60 sweeps "
        "(severely ill-conditioned input)");
  }
  return core;
}

// Completes U columns whose singular value vanished with coordinate
// vectors orthogonalized against the accepted set. `filled[j]` marks
// columns already valid.
void complete_columns(DenseMatrix& u, const std::vector<bool>& filled) {
  const std::size_t m = u.rows();
  const std::size_t k = u.cols();
  std::vector<std::size_t> pending;
  for (std::size_t j = 0; j < k; ++j) {
    if (!filled[j]) pending.push_back(j);
  }
  if (pending.empty()) return;

  std::vector<bool> valid = filled;
  std::size_t next = 0;
  for (std::size_t cand = 0; cand < m && next < pending.size(); ++cand) {
    std::vector<double> vec(m, 0.0);
    vec[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        if (!valid[j]) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += vec[i] * u(i, j);
        for (std::size_t i = 0; i < m; ++i) vec[i] -= proj * u(i, j);
      }
    }
    double nrm = 0.0;
    for (double x : vec) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 0.5) continue;  // candidate nearly in span, try the next
    const std::size_t col = pending[next++];
    for (std::size_t i = 0; i < m; ++i) u(i, col) = vec[i] / nrm;
    valid[col] = true;
  }
  if (next < pending.size()) {
    throw std::runtime_error("svd: orthonormal completion ran out of basis "
                             "candidates");
  }
}

void fix_column_signs(DenseMatrix& u, DenseMatrix& v) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
    }
  }
}

SvdFactors svd_tall(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();  // k = n since m >= n
  JacobiCore core = jacobi_orthogonalize(a);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm += core.w(i, j) * core.w(i, j);
    sigma[j] = std::sqrt(nrm);
  }

  // Stable descending order.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return sigma[x] > sigma[y];
  });

  SvdFactors f;
  f.u = DenseMatrix(m, n);
  f.v = DenseMatrix(n, n);
  f.sigma.resize(n);
  std::vector<bool> filled(n, true);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t src = perm[jj];
    f.sigma[jj] = sigma[src];
    for (std::size_t i = 0; i < n; ++i) f.v(i, jj) = core.v(i, src);
    if (sigma[src] == 0.0) {
      filled[jj] = false;  // dead direction, completed below
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) {
      f.u(i, jj) = core.w(i, src) / sigma[src];
    }
  }
  complete_columns(f.u, filled);
  return f;
}

}  // namespace

SvdFactors svd(const DenseMatrix& a) {
  require_nonempty(a, "svd");
  require_finite(a, "svd");

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    f = svd_tall(a);
  } else {
    SvdFactors ft = svd_tall(transpose(a));
    f.u = std::move(ft.v);
    f.v = std::move(ft.u);
    f.sigma = std::move(ft.sigma);
  }
  fix_column_signs(f.u, f.v);
  return f;
}

SvdFactors truncate(const SvdFactors& f, std::size_t n_c) {
  const std::size_t k = f.sigma.size();
  if (n_c < 1 || n_c > k) {
    throw std::invalid_argument("truncate: n_c out of range [1, " +
                                std::to_string(k) + "]");
  }
  SvdFactors out;
  out.sigma.assign(f.sigma.begin(), f.sigma.begin() + n_c);
  out.u = DenseMatrix(f.u.rows(), n_c);
  out.v = DenseMatrix(f.v.rows(), n_c);
  for (std::size_t i = 0; i < f.u.rows(); ++i) {
    for (std::size_t j = 0; j < n_c; ++j) out.u(i, j) = f.u(i, j);
  }
  for (std::size_t i = 0; i < f.v.rows(); ++i) {
    for (std::size_t j = 0; j < n_c; ++j) out.v(i, j) = f.v(i, j);
  }
  return out;
}

DenseMatrix randomized_range_basis(const DenseMatrix& a, std::size_t n_c,
                                   std::size_t oversampling,
                                   std::size_t power_iters,
                                   std::uint64_t seed) {
  require_nonempty(a, "randomized_range_basis");
  require_finite(a, "randomized_range_basis");
  const std::size_t sketch = n_c + oversampling;
  if (n_c < 1 || sketch > std::min(a.rows(), a.cols())) {
    throw std::invalid_argument(
        "randomized_range_basis: rank request too large");
  }

  Rng rng(seed);
  DenseMatrix omega = gaussian_matrix(a.cols(), sketch, rng);
  DenseMatrix q = householder_qr(matmul(a, omega)).q;
  // Power iterations with QR re-orthonormalization at each half-step.
  for (std::size_t it = 0; it < power_iters; ++it) {
    DenseMatrix z = householder_qr(matmul_at_b(a, q)).q;
    q = householder_qr(matmul(a, z)).q;
  }
  return q;
}

double subspace_distance(const DenseMatrix& u1, const DenseMatrix& u2) {
  if (u1.cols() != u2.cols()) {
    throw std::invalid_argument("subspace_distance: ambient dims disagree");
  }
  auto check_orthonormal = [](const DenseMatrix& u, const char* name) {
    const std::size_t k = u.rows();
    double resid = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        const double g = dot(u.row(i), u.row(j)) - (i == j ? 1.0 : 0.0);
        resid += (i == j ? 1.0 : 2.0) * g * g;
      }
    }
    if (std::sqrt(resid) > 1e-6 * static_cast<double>(std::max<std::size_t>(
                               k, 1))) {
      throw std::invalid_argument(std::string("subspace_distance: ") + name +
                                  " is not row-orthonormal");
    }
  };
  check_orthonormal(u1, "u1");
  check_orthonormal(u2, "u2");

  const std::size_t k1 = u1.rows();
  const std::size_t k2 = u2.rows();
  // ||P1 - P2||_F^2 = k1 + k2 - 2 ||u1 u2^T||_F^2 for orthonormal rows.
  // The cross terms are summed in sorted order so the function is exactly
  // symmetric in its arguments.
  std::vector<double> cross;
  cross.reserve(k1 * k2);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      const double g = dot(u1.row(i), u2.row(j));
      cross.push_back(g * g);
    }
  }
  std::sort(cross.begin(), cross.end());
  double cross2 = 0.0;
  for (double x : cross) cross2 += x;
  const double dist2 =
      static_cast<double>(k1) + static_cast<double>(k2) - 2.0 * cross2;
  return std::sqrt(std::max(dist2, 0.0));
}

DenseMatrix complete_orthonormal_rows(const DenseMatrix& rows,
                                      std::size_t target) {
  const std::size_t d = rows.cols();
  const std::size_t k = rows.rows();
  if (target < k || target > d) {
    throw std::invalid_argument("complete_orthonormal_rows: bad target rank");
  }
  DenseMatrix out(target, d);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = rows(i, j);
  }
  std::size_t have = k;
  for (std::size_t cand = 0; cand < d && have < target; ++cand) {
    std::vector<double> vec(d, 0.0);
    vec[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < have; ++i) {
        double proj = 0.0;
        for (std::size_t j = 0; j < d; ++j) proj += vec[j] * out(i, j);
        for (std::size_t j = 0; j < d; ++j) vec[j] -= proj * out(i, j);
      }
    }
    double nrm = 0.0;
    for (double x : vec) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 0.5) continue;
    for (std::size_t j = 0; j < d; ++j) out(have, j) = vec[j] / nrm;
    ++have;
  }
  if (have < target) {
    throw std::runtime_error(
        "complete_orthonormal_rows: candidates exhausted");
  }
  return out;
}

}  // namespace memsvd

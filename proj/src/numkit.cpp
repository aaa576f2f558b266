// Copyright 2026 The qdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdesign/numkit.hpp"

#include <numeric>
#include <vector>

namespace qdesign {

Nat checked_add(Nat a, Nat b) {
  Nat out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("natural-number overflow in " + std::to_string(a) +
                        " + " + std::to_string(b));
  }
  return out;
}

Nat checked_mul(Nat a, Nat b) {
  Nat out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("natural-number overflow in " + std::to_string(a) +
                        " * " + std::to_string(b));
  }
  return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_of_product: incompatible shapes");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector out(m.size());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  }
  return out;
}

ComplexMatrix unvec(const Eigen::Ref<const ComplexVector>& v, Index rows,
                    Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  }
  return out;
}

ComplexMatrix orthonormalize(const ComplexMatrix& columns,
                             const Tolerance& tol) {
  std::vector<ComplexVector> kept;
  for (Index c = 0; c < columns.cols(); ++c) {
    ComplexVector w = columns.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) w -= q * q.dot(w);
    }
    const double norm = w.norm();
    if (norm <= tol.abs_eps) continue;
    kept.emplace_back(w / norm);
  }
  ComplexMatrix out(columns.rows(), static_cast<Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.col(static_cast<Index>(c)) = kept[c];
  }
  return out;
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermiticity_residual: non-square matrix");
  }
  return max_abs(m - m.adjoint());
}

namespace {

// Applies A <- U^dagger A U and V <- V U for the unitary that acts on the
// (p, q) plane as D R, where D puts the phase of a(p, q) on q and R is the
// real rotation annihilating the then-real off-diagonal entry.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  const Complex phase = apq / g;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex up_q = -s * std::conj(phase);  // U(q, p)
  const Complex uq_q = c * std::conj(phase);   // U(q, q)

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * up_q;
    a(k, q) = akp * s + akq * uq_q;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(up_q) * aqk;
    a(q, k) = s * apk + std::conj(uq_q) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * up_q;
    v(k, q) = vkp * s + vkq * uq_q;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_eigen: non-square " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
  const double residual = hermiticity_residual(m);
  if (!tol.small(residual, max_abs(m))) {
    throw NumericalError("hermitian_eigen: matrix is not Hermitian (residual " +
                         std::to_string(residual) + ")");
  }
  const Index n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) / 2.0;
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double target =
      std::numeric_limits<double>::epsilon() * std::max(a.norm(), 1e-300);
  constexpr int kMaxSweeps = 64;
  int sweeps = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweeps == kMaxSweeps) {
      throw NumericalError("hermitian_eigen: Jacobi did not converge");
    }
    ++sweeps;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, v, p, q);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index src = order[static_cast<std::size_t>(c)];
    out.eigenvalues(c) = a(src, src).real();
    out.eigenvectors.col(c) = v.col(src);
  }
  out.sweeps = sweeps;
  return out;
}

double min_eigenvalue_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) throw DimensionError("min_eigenvalue_hermitian: empty");
  return hermitian_eigen(m, tol).eigenvalues(0);
}

SubspaceSplit split_by_projector(const ComplexMatrix& basis,
                                 const ComplexMatrix& p,
                                 const Tolerance& tol) {
  const Index n = p.rows();
  if (p.cols() != n || basis.rows() != n) {
    throw DimensionError("split_by_projector: shape mismatch");
  }
  if (basis.cols() == 0) {
    return {ComplexMatrix(n, 0), ComplexMatrix(n, 0)};
  }
  const ComplexMatrix pb = p * basis;
  const ComplexMatrix restricted = basis.adjoint() * pb;
  const double scale = std::max(1.0, max_abs(p));
  const double leak = max_abs(pb - basis * restricted);
  if (!tol.small(leak, scale)) {
    throw NumericalError(
        "split_by_projector: projector does not preserve the subspace "
        "(leak " + std::to_string(leak) + ")");
  }
  const HermitianEigen eig = hermitian_eigen(restricted, tol);
  std::vector<Index> img;
  std::vector<Index> ker;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (tol.equal(lambda, 1.0)) {
      img.push_back(i);
    } else if (tol.small(std::abs(lambda), 1.0)) {
      ker.push_back(i);
    } else {
      throw NumericalError("split_by_projector: eigenvalue " +
                           std::to_string(lambda) +
                           " on the subspace is neither 0 nor 1");
    }
  }
  auto gather = [&](const std::vector<Index>& idx) {
    ComplexMatrix cols(n, static_cast<Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      cols.col(static_cast<Index>(c)) = basis * eig.eigenvectors.col(idx[c]);
    }
    return cols;
  };
  return {gather(img), gather(ker)};
}

}  // namespace qdesign

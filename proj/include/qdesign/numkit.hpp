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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qdesign {

using Index = Eigen::Index;
using Nat = std::uint64_t;
using Complex = std::complex<double>;

/// Row-major dense matrix. Rows index outputs, columns index inputs, so a
/// design with v points and b blocks is a v x b matrix.
template <typename Scalar>
using Matrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using NatMatrix = Matrix<Nat>;
using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealVector = Vector<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the supported domain (non-prime order, bad range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition did not hold within tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Mixed absolute/relative comparison: x ~ y iff
/// |x - y| <= abs_eps + rel_eps * max(|x|, |y|).
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  double bound(double scale) const { return abs_eps + rel_eps * scale; }

  bool equal(double x, double y) const {
    return std::abs(x - y) <= bound(std::max(std::abs(x), std::abs(y)));
  }
  bool equal(Complex x, Complex y) const {
    return std::abs(x - y) <= bound(std::max(std::abs(x), std::abs(y)));
  }
  /// residual is small relative to a magnitude scale.
  bool small(double residual, double scale = 0.0) const {
    return residual <= bound(scale);
  }
  Tolerance scaled(double factor) const {
    return {abs_eps * factor, rel_eps * factor};
  }
  bool valid() const {
    return abs_eps >= 0.0 && rel_eps >= 0.0 && std::isfinite(abs_eps) &&
           std::isfinite(rel_eps);
  }
};

Nat checked_add(Nat a, Nat b);
Nat checked_mul(Nat a, Nat b);

namespace detail {

template <typename Scalar>
Scalar add(Scalar a, Scalar b) {
  if constexpr (std::is_same_v<Scalar, Nat>) {
    return checked_add(a, b);
  } else {
    return a + b;
  }
}

template <typename Scalar>
Scalar mul(Scalar a, Scalar b) {
  if constexpr (std::is_same_v<Scalar, Nat>) {
    return checked_mul(a, b);
  } else {
    return a * b;
  }
}

}  // namespace detail

/// Matrix product. Exact with overflow detection for natural numbers.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> mat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "mat_mul operands must share a scalar type");
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  if constexpr (std::is_same_v<Scalar, Nat>) {
    Matrix<Nat> out = Matrix<Nat>::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index l = 0; l < a.cols(); ++l) {
        const Nat x = a(i, l);
        if (x == 0) continue;
        for (Index j = 0; j < b.cols(); ++j) {
          out(i, j) = checked_add(out(i, j), checked_mul(x, b(l, j)));
        }
      }
    }
    return out;
  } else {
    return a * b;
  }
}

/// Kronecker product with block layout a(i,j) * b.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>,
                "kron operands must share a scalar type");
  const Index br = b.rows();
  const Index bc = b.cols();
  Matrix<Scalar> out(a.rows() * br, a.cols() * bc);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const Scalar x = a(i, j);
      for (Index k = 0; k < br; ++k) {
        for (Index l = 0; l < bc; ++l) {
          out(i * br + k, j * bc + l) = detail::mul(x, b(k, l));
        }
      }
    }
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw DimensionError("trace of non-square " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " matrix");
  }
  Scalar sum{0};
  for (Index i = 0; i < m.rows(); ++i) sum = detail::add(sum, m(i, i));
  return sum;
}

inline NatMatrix transpose(const NatMatrix& m) { return m.transpose(); }
inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

/// Largest entry modulus; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Entrywise Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major vectorization: vec(A)[i * cols + j] = A(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const Eigen::Ref<const ComplexVector>& v, Index rows,
                    Index cols);

/// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
/// residual norm is at most tol.abs_eps are dropped.
ComplexMatrix orthonormalize(const ComplexMatrix& columns,
                             const Tolerance& tol = {});

struct SubspaceSplit {
  ComplexMatrix image;   // orthonormal columns spanning S ∩ im(p)
  ComplexMatrix kernel;  // orthonormal columns spanning S ∩ ker(p)
};

/// Splits the subspace spanned by the orthonormal columns of `basis` into the
/// parts where the projector p acts as 1 and as 0. Throws NumericalError when
/// p does not leave the subspace invariant.
SubspaceSplit split_by_projector(const ComplexMatrix& basis,
                                 const ComplexMatrix& p,
                                 const Tolerance& tol = {});

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, matching eigenvalues
  int sweeps = 0;
};

/// Cyclic complex Jacobi eigensolver. Throws NumericalError when m is not
/// Hermitian within tol (scaled by the entry magnitude).
HermitianEigen hermitian_eigen(const ComplexMatrix& m,
                               const Tolerance& tol = {});

double min_eigenvalue_hermitian(const ComplexMatrix& m,
                                const Tolerance& tol = {});

/// max |m - m^dagger|
double hermiticity_residual(const ComplexMatrix& m);

}  // namespace qdesign

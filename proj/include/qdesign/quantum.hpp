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

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qdesign/classical.hpp"
#include "qdesign/numkit.hpp"

namespace qdesign {

/// An ordered family of v complex b x b matrices intended as orthogonal
/// projectors on C^b. Shapes are checked on construction; projector-ness is
/// checked by validate().
class QuantumDesign {
 public:
  QuantumDesign(Index dim, std::vector<ComplexMatrix> projectors);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(projectors_.size()); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const ComplexMatrix& operator[](Index i) const {
    return projectors_[static_cast<std::size_t>(i)];
  }

 private:
  Index dim_;
  std::vector<ComplexMatrix> projectors_;
};

struct ProjectorResidual {
  double hermiticity = 0.0;  // max |p - p^dagger|
  double idempotency = 0.0;  // max |p^2 - p|
  bool pass = false;
};

struct ValidationReport {
  std::vector<ProjectorResidual> projectors;
  bool pass = false;
};

ValidationReport validate(const QuantumDesign& qd, const Tolerance& tol = {});

struct QuantumParams {
  std::optional<Nat> r;        // common trace
  std::optional<double> k;     // sum of projectors = k I
  std::size_t degree = 0;      // number of distinct off-diagonal Tr(p_i p_j)
  std::vector<double> lambda_set;
  bool commutative = false;
  double max_imag_pair_trace = 0.0;
  double min_pair_trace = 0.0;
  double uniformity_residual = 0.0;

  std::optional<double> lambda() const {
    if (degree != 1) return std::nullopt;
    return lambda_set.front();
  }
};

/// Requires a design that passed validate(). Distinct pair traces are
/// found by single-linkage clustering with threshold 10 * tol.
QuantumParams classify(const QuantumDesign& qd, const Tolerance& tol = {});

struct QuantumIdentities {
  EquationCheck<double> count;                   // b k = v r
  std::optional<EquationCheck<double>> balance;  // lambda (v-1) = r (k-1)

  bool pass() const { return count.pass && (!balance || balance->pass); }
};

/// Requires r and k. The balance identity is evaluated for degree-1 designs.
QuantumIdentities check_identities(Index v, Index b,
                                   const QuantumParams& params,
                                   const Tolerance& tol = {});

/// Real-valued variant for explicitly given parameters.
QuantumIdentities check_identities(Index v, Index b, double k, double r,
                                   std::optional<double> lambda,
                                   const Tolerance& tol = {});

/// Recovers the incidence matrix of a commutative design from a common
/// eigenbasis. Column j is the j-th common eigenvector; columns are ordered
/// by the position of each eigenvector's leading component, which makes
/// diagonal inputs come back unchanged.
ClassicalDesign to_classical(const QuantumDesign& qd, const Tolerance& tol = {});

/// Common orthonormal eigenbasis of a commuting projector family, as columns.
ComplexMatrix common_eigenbasis(const QuantumDesign& qd,
                                const Tolerance& tol = {});

/// All p_i (x) q_j, ordered lexicographically in (i, j).
QuantumDesign tensor(const QuantumDesign& a, const QuantumDesign& b);

/// U p U^dagger applied to every projector.
QuantumDesign conjugate(const QuantumDesign& qd, const ComplexMatrix& unitary);

/// k orthonormal bases of C^d; each basis is a d x d matrix whose columns are
/// the basis vectors.
struct MubFamily {
  Index d = 0;
  std::vector<ComplexMatrix> bases;
};

/// Computational basis plus k - 1 quadratic-phase bases (Pauli eigenbases for
/// d = 2).
MubFamily mub_generate(Nat d, Nat k);

/// Rank-1 projectors of every basis vector, basis-major.
QuantumDesign mub_design(const MubFamily& f);

struct MubReport {
  enum class Failure { None, Shape, Orthonormality, TraceLaw, Uniformity };
  Failure failure = Failure::None;
  // Basis / vector indices of the offending pair (a, i, b, j); for an
  // orthonormality failure a == b.
  std::optional<std::array<Index, 4>> witness;
  double expected = 0.0;
  double observed = 0.0;
  double max_trace_law_residual = 0.0;
  std::optional<QuantumDesign> design;

  bool pass() const { return failure == Failure::None; }
};

std::string to_string(MubReport::Failure f);

MubReport mub_verify(const MubFamily& f, const Tolerance& tol = {});

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal folded back into Q.
template <typename Rng>
ComplexMatrix random_unitary(Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qdesign

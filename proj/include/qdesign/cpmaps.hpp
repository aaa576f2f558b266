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

#include <optional>
#include <string>

#include "qdesign/classical.hpp"
#include "qdesign/numkit.hpp"
#include "qdesign/quantum.hpp"

namespace qdesign {

/// Concrete finite-dimensional algebra: C^n with pointwise product, or the
/// full matrix algebra M_n acted on through row-major vectorization.
struct Algebra {
  enum class Kind { Commutative, Matrix };
  Kind kind = Kind::Matrix;
  Index n = 1;

  static Algebra commutative(Index n) { return {Kind::Commutative, n}; }
  static Algebra matrix(Index n) { return {Kind::Matrix, n}; }

  /// Length of the coordinate vectors: n, or n^2 for M_n.
  Index coord_dim() const { return kind == Kind::Matrix ? n * n : n; }
  bool operator==(const Algebra&) const = default;
};

std::string to_string(const Algebra& a);

/// A linear map between concrete algebras as a coord_dim(out) x coord_dim(in)
/// matrix acting on coordinate vectors (the superoperator convention).
struct CpMap {
  Algebra in;
  Algebra out;
  ComplexMatrix m;

  CpMap(Algebra in_alg, Algebra out_alg, ComplexMatrix matrix);
};

/// Diagonal embedding C^n -> M_n, e_i |-> vec(E_ii), as an n^2 x n matrix.
/// Its adjoint is the projection onto the diagonal.
ComplexMatrix diagonal_embedding(Index n);

/// Multiplication C^n (x) C^n -> C^n of the commutative algebra, an n x n^2
/// matrix with e_i (x) e_j |-> delta_ij e_i.
ComplexMatrix multiplication(Index n);

/// The same map with every commutative side replaced by its diagonal matrix
/// algebra.
CpMap as_matrix_map(const CpMap& f);

/// Sum over i, j of E_ij (x) f(E_ij), index order (in (x) out). Commutative
/// sides are embedded as diagonal matrix algebras first.
ComplexMatrix choi(const CpMap& f);

/// Inverse of choi() for a Matrix(n_in) -> Matrix(n_out) map.
CpMap from_choi(const ComplexMatrix& c, Index n_in, Index n_out);

struct CpCheck {
  bool cp = false;
  double min_eigenvalue = 0.0;
};

/// Choi positivity. Throws NumericalError on a non-Hermitian Choi matrix.
CpCheck is_cp(const CpMap& f, const Tolerance& tol = {});

struct TraceCheck {
  bool preserving = false;
  double residual = 0.0;  // max |Tr_out(C) - I_in|
};

TraceCheck is_trace_preserving(const CpMap& f, const Tolerance& tol = {});

/// chi as a map C^b -> C^v.
CpMap classical_to_cp(const ClassicalDesign& d);

/// Commutative(v) -> Matrix(b) sending e_i to p_i.
CpMap quantum_design_to_cp(const QuantumDesign& qd);

/// Matrix(b) -> Commutative(v): chi composed with the multiplication of C^b
/// restricted to the diagonal, i.e. rho |-> chi diag(rho).
CpMap cayley_design_map(const ClassicalDesign& d);

/// Thrown when functor_q is handed an incidence matrix with entries above 1.
class NotZeroOneError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Diagonal projectors diag(row i of chi), read off the adjoint of the
/// Cayley map. Requires a 0/1 block design.
QuantumDesign functor_q(const ClassicalDesign& d);

struct HomLiftReport {
  double monoid_residual = 0.0;    // mu' (F_b (x) F_b) - F_b mu
  double comonoid_residual = 0.0;  // (F_b (x) F_b) delta - delta' F_b
  double design_residual = 0.0;  // chi' F_b - F_v chi
  double outer_residual = 0.0;   // chi' mu' (F_b (x) F_b) - F_v chi mu
  bool pass = false;
};

/// Numerically checks the lifted commuting squares of a design homomorphism
/// between two 0/1 block designs. The multiplication square only commutes
/// when f_b is injective; the comultiplication square commutes for every
/// function. Throws DomainError if verify_hom fails.
HomLiftReport functor_q_on_hom(const ClassicalDesign& src,
                               const ClassicalDesign& dst, const HomPair& h,
                               const Tolerance& tol = {});

struct LambdaFit {
  double lambda = 0.0;
  double residual = 0.0;  // min over lambda of the max-norm defect
};

struct CpDesignReport {
  std::optional<double> k;
  std::optional<double> r;
  double k_fit = 0.0;
  double r_fit = 0.0;
  double uniformity_residual = 0.0;
  double regularity_residual = 0.0;
  LambdaFit superoperator;                 // f.m read as the superoperator
  std::optional<LambdaFit> choi_reading;   // f.m read as a Choi matrix
  std::optional<double> choi_reading_r;
  bool lambda_balanced = false;
};

/// Uniformity, regularity and the balance defect of a Matrix(n) ->
/// Matrix(m) map. Balance is reported as a fitted residual under both
/// readings of the matrix (the Choi reading needs n == m);
/// lambda_balanced is set only when the superoperator residual is within
/// tol.
CpDesignReport verify_cp_design(const CpMap& f, const Tolerance& tol = {});

/// Minimizes max |G - r I - lambda (J - I)| over lambda, where
/// J = vec(I_m) vec(I_m)^dagger.
LambdaFit fit_lambda(const ComplexMatrix& m, double r, Index out_n);

}  // namespace qdesign

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

#include "qdesign/cpmaps.hpp"

#include <algorithm>
#include <limits>

namespace qdesign {

std::string to_string(const Algebra& a) {
  return (a.kind == Algebra::Kind::Matrix ? "Matrix(" : "Commutative(") +
         std::to_string(a.n) + ")";
}

CpMap::CpMap(Algebra in_alg, Algebra out_alg, ComplexMatrix matrix)
    : in(in_alg), out(out_alg), m(std::move(matrix)) {
  if (in.n < 1 || out.n < 1) {
    throw DimensionError("algebra dimensions must be >= 1");
  }
  if (m.rows() != out.coord_dim() || m.cols() != in.coord_dim()) {
    throw DimensionError("map matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but " + to_string(in) +
                         " -> " + to_string(out) + " needs " +
                         std::to_string(out.coord_dim()) + "x" +
                         std::to_string(in.coord_dim()));
  }
  if (!m.allFinite()) throw DimensionError("map matrix has non-finite entries");
}

ComplexMatrix diagonal_embedding(Index n) {
  ComplexMatrix e = ComplexMatrix::Zero(n * n, n);
  for (Index i = 0; i < n; ++i) e(i * n + i, i) = 1.0;
  return e;
}

ComplexMatrix multiplication(Index n) {
  ComplexMatrix mu = ComplexMatrix::Zero(n, n * n);
  for (Index i = 0; i < n; ++i) mu(i, i * n + i) = 1.0;
  return mu;
}

CpMap as_matrix_map(const CpMap& f) {
  ComplexMatrix m = f.m;
  if (f.out.kind == Algebra::Kind::Commutative) {
    m = diagonal_embedding(f.out.n) * m;
  }
  if (f.in.kind == Algebra::Kind::Commutative) {
    m = m * diagonal_embedding(f.in.n).adjoint();
  }
  return CpMap(Algebra::matrix(f.in.n), Algebra::matrix(f.out.n), std::move(m));
}

ComplexMatrix choi(const CpMap& f) {
  const CpMap g = as_matrix_map(f);
  const Index ni = g.in.n;
  const Index no = g.out.n;
  ComplexMatrix c(ni * no, ni * no);
  for (Index i = 0; i < ni; ++i) {
    for (Index j = 0; j < ni; ++j) {
      c.block(i * no, j * no, no, no) = unvec(g.m.col(i * ni + j), no, no);
    }
  }
  return c;
}

CpMap from_choi(const ComplexMatrix& c, Index n_in, Index n_out) {
  if (c.rows() != n_in * n_out || c.cols() != n_in * n_out) {
    throw DimensionError("from_choi: matrix size does not match dimensions");
  }
  ComplexMatrix m(n_out * n_out, n_in * n_in);
  for (Index i = 0; i < n_in; ++i) {
    for (Index j = 0; j < n_in; ++j) {
      m.col(i * n_in + j) =
          vec(ComplexMatrix(c.block(i * n_out, j * n_out, n_out, n_out)));
    }
  }
  return CpMap(Algebra::matrix(n_in), Algebra::matrix(n_out), std::move(m));
}

CpCheck is_cp(const CpMap& f, const Tolerance& tol) {
  const ComplexMatrix c = choi(f);
  CpCheck out;
  out.min_eigenvalue = min_eigenvalue_hermitian(c, tol);
  out.cp = out.min_eigenvalue >= -tol.bound(max_abs(c));
  return out;
}

TraceCheck is_trace_preserving(const CpMap& f, const Tolerance& tol) {
  const CpMap g = as_matrix_map(f);
  const Index ni = g.in.n;
  const Index no = g.out.n;
  // Tr_out(C)_{ij} = Tr f(E_ij) = vec(I_out)^dagger f.m e_{ij}
  const ComplexVector id_out = vec(ComplexMatrix::Identity(no, no));
  const ComplexMatrix partial =
      unvec((id_out.adjoint() * g.m).transpose(), ni, ni);
  TraceCheck out;
  out.residual =
      max_abs(ComplexMatrix(partial - ComplexMatrix::Identity(ni, ni)));
  out.preserving = tol.small(out.residual, 1.0);
  return out;
}

CpMap classical_to_cp(const ClassicalDesign& d) {
  return CpMap(Algebra::commutative(d.blocks()),
               Algebra::commutative(d.points()),
               d.incidence().cast<double>().cast<Complex>());
}

CpMap quantum_design_to_cp(const QuantumDesign& qd) {
  const Index b = qd.dim();
  ComplexMatrix m(b * b, qd.size());
  for (Index i = 0; i < qd.size(); ++i) m.col(i) = vec(qd[i]);
  return CpMap(Algebra::commutative(qd.size()), Algebra::matrix(b),
               std::move(m));
}

CpMap cayley_design_map(const ClassicalDesign& d) {
  const ComplexMatrix chi = d.incidence().cast<double>().cast<Complex>();
  return CpMap(Algebra::matrix(d.blocks()), Algebra::commutative(d.points()),
               chi * multiplication(d.blocks()));
}

namespace {

void require_block_design(const ClassicalDesign& d, const char* what) {
  if (!d.zero_one()) {
    throw NotZeroOneError(std::string(what) +
                          ": incidence entries above 1; apply to_block first "
                          "(parameters will change)");
  }
  if (!classify(d).block()) {
    throw DomainError(std::string(what) +
                      ": input is not a block design (k, r and lambda needed)");
  }
}

ComplexMatrix as_complex(const NatMatrix& m) {
  return m.cast<double>().cast<Complex>();
}

}  // namespace

QuantumDesign functor_q(const ClassicalDesign& d) {
  require_block_design(d, "functor_q");
  const Index b = d.blocks();
  const ComplexMatrix adj = cayley_design_map(d).m.adjoint();
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(static_cast<std::size_t>(d.points()));
  for (Index i = 0; i < d.points(); ++i) {
    projectors.push_back(unvec(adj.col(i), b, b));
  }
  return QuantumDesign(b, std::move(projectors));
}

HomLiftReport functor_q_on_hom(const ClassicalDesign& src,
                               const ClassicalDesign& dst, const HomPair& h,
                               const Tolerance& tol) {
  require_block_design(src, "functor_q_on_hom");
  require_block_design(dst, "functor_q_on_hom");
  const HomCheck check = verify_hom(src, dst, h);
  if (!check.commutes) {
    throw DomainError("functor_q_on_hom: the pair is not a design "
                      "homomorphism");
  }
  const ComplexMatrix fv = as_complex(function_matrix(h.point_map, h.point_codomain));
  const ComplexMatrix fb = as_complex(function_matrix(h.block_map, h.block_codomain));
  const ComplexMatrix chi = as_complex(src.incidence());
  const ComplexMatrix chi2 = as_complex(dst.incidence());
  const ComplexMatrix mu = multiplication(src.blocks());
  const ComplexMatrix mu2 = multiplication(dst.blocks());
  const ComplexMatrix fb2 = kron(fb, fb);

  HomLiftReport out;
  out.monoid_residual = max_abs(ComplexMatrix(mu2 * fb2 - fb * mu));
  out.comonoid_residual =
      max_abs(ComplexMatrix(fb2 * mu.adjoint() - mu2.adjoint() * fb));
  out.design_residual = max_abs(ComplexMatrix(chi2 * fb - fv * chi));
  out.outer_residual =
      max_abs(ComplexMatrix(chi2 * mu2 * fb2 - fv * chi * mu));
  out.pass = tol.small(out.monoid_residual) &&
             tol.small(out.comonoid_residual) &&
             tol.small(out.design_residual) && tol.small(out.outer_residual);
  return out;
}

LambdaFit fit_lambda(const ComplexMatrix& m, double r, Index out_n) {
  const ComplexVector id = vec(ComplexMatrix::Identity(out_n, out_n));
  const ComplexMatrix gram = m * m.adjoint();
  const ComplexMatrix coeff =
      id * id.adjoint() - ComplexMatrix::Identity(gram.rows(), gram.cols());
  // Entries with coefficient 0 fix a floor; the others are |c| |t - lambda|
  // with c = +-1, minimized at the midpoint of the t range.
  double floor = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Index a = 0; a < gram.rows(); ++a) {
    for (Index b = 0; b < gram.cols(); ++b) {
      const Complex target = gram(a, b) - (a == b ? r : 0.0);
      const double c = coeff(a, b).real();
      if (c == 0.0) {
        floor = std::max(floor, std::abs(target));
      } else {
        floor = std::max(floor, std::abs(target.imag()));
        const double t = target.real() / c;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
  }
  LambdaFit fit;
  if (lo <= hi) {
    fit.lambda = 0.5 * (lo + hi);
    fit.residual = std::max(floor, 0.5 * (hi - lo));
  } else {
    fit.residual = floor;
  }
  return fit;
}

namespace {

struct Proportionality {
  double factor = 0.0;
  double residual = 0.0;
};

// Least-squares factor s with v ~ s * ref, and the max-norm remainder.
Proportionality proportional(const ComplexVector& v, const ComplexVector& ref) {
  Proportionality p;
  p.factor = (ref.dot(v) / ref.squaredNorm()).real();
  p.residual = max_abs(ComplexVector(v - p.factor * ref));
  return p;
}

}  // namespace

CpDesignReport verify_cp_design(const CpMap& f, const Tolerance& tol) {
  if (f.in.kind != Algebra::Kind::Matrix ||
      f.out.kind != Algebra::Kind::Matrix) {
    throw DimensionError("verify_cp_design needs a Matrix(n) -> Matrix(m) map");
  }
  const Index n = f.in.n;
  const Index m = f.out.n;
  const ComplexVector id_in = vec(ComplexMatrix::Identity(n, n));
  const ComplexVector id_out = vec(ComplexMatrix::Identity(m, m));

  CpDesignReport out;
  const Proportionality uni =
      proportional(ComplexVector(f.m.adjoint() * id_out), id_in);
  const Proportionality reg = proportional(ComplexVector(f.m * id_in), id_out);
  out.k_fit = uni.factor;
  out.r_fit = reg.factor;
  out.uniformity_residual = uni.residual;
  out.regularity_residual = reg.residual;
  if (tol.small(uni.residual, std::abs(uni.factor))) out.k = uni.factor;
  if (tol.small(reg.residual, std::abs(reg.factor))) out.r = reg.factor;

  out.superoperator = fit_lambda(f.m, reg.factor, m);
  out.lambda_balanced =
      out.r.has_value() &&
      tol.small(out.superoperator.residual, std::max(1.0, std::abs(reg.factor)));

  if (n == m) {
    const CpMap reread = from_choi(f.m, n, m);
    const Proportionality reg2 =
        proportional(ComplexVector(reread.m * id_in), id_out);
    out.choi_reading_r = reg2.factor;
    out.choi_reading = fit_lambda(reread.m, reg2.factor, m);
  }
  return out;
}

}  // namespace qdesign

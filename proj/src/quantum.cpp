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

#include "qdesign/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qdesign {

QuantumDesign::QuantumDesign(Index dim, std::vector<ComplexMatrix> projectors)
    : dim_(dim), projectors_(std::move(projectors)) {
  if (dim_ < 1) throw DimensionError("quantum design dimension must be >= 1");
  if (projectors_.empty()) {
    throw DimensionError("quantum design needs at least one projector");
  }
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const auto& p = projectors_[i];
    if (p.rows() != dim_ || p.cols() != dim_) {
      throw DimensionError("projector " + std::to_string(i) + " is " +
                           std::to_string(p.rows()) + "x" +
                           std::to_string(p.cols()) + ", expected " +
                           std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    if (!p.allFinite()) {
      throw DimensionError("projector " + std::to_string(i) +
                           " has non-finite entries");
    }
  }
}

ValidationReport validate(const QuantumDesign& qd, const Tolerance& tol) {
  ValidationReport out;
  out.pass = true;
  for (const auto& p : qd.projectors()) {
    ProjectorResidual res;
    res.hermiticity = hermiticity_residual(p);
    res.idempotency = max_abs(ComplexMatrix(p * p - p));
    const double scale = max_abs(p);
    res.pass = tol.small(res.hermiticity, scale) &&
               tol.small(res.idempotency, scale);
    out.pass = out.pass && res.pass;
    out.projectors.push_back(res);
  }
  return out;
}

namespace {

bool commute(const ComplexMatrix& a, const ComplexMatrix& b,
             const Tolerance& tol) {
  const ComplexMatrix c = a * b - b * a;
  return tol.small(max_abs(c), std::max(max_abs(a), max_abs(b)));
}

std::vector<double> cluster_values(std::vector<double> values,
                                   const Tolerance& tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    const bool split =
        i == values.size() ||
        values[i] - values[i - 1] >
            10.0 * tol.bound(std::max(std::abs(values[i]),
                                      std::abs(values[i - 1])));
    if (!split) continue;
    const double sum =
        std::accumulate(values.begin() + static_cast<std::ptrdiff_t>(start),
                        values.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
    reps.push_back(sum / static_cast<double>(i - start));
    start = i;
  }
  return reps;
}

}  // namespace

QuantumParams classify(const QuantumDesign& qd, const Tolerance& tol) {
  QuantumParams out;
  const Index v = qd.size();
  const Index b = qd.dim();

  const Complex t0 = trace(qd[0]);
  const double r0 = std::round(t0.real());
  bool regular = r0 >= 0.0;
  for (const auto& p : qd.projectors()) {
    regular = regular && tol.equal(trace(p), Complex(r0, 0.0));
  }
  if (regular) out.r = static_cast<Nat>(r0);

  ComplexMatrix sum = ComplexMatrix::Zero(b, b);
  for (const auto& p : qd.projectors()) sum += p;
  const double k = trace(sum).real() / static_cast<double>(b);
  out.uniformity_residual =
      max_abs(ComplexMatrix(sum - k * ComplexMatrix::Identity(b, b)));
  if (tol.small(out.uniformity_residual, std::max(1.0, std::abs(k)))) {
    out.k = k;
  }

  std::vector<double> pair_traces;
  out.commutative = true;
  out.min_pair_trace = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < v; ++i) {
    for (Index j = i + 1; j < v; ++j) {
      const Complex t = trace_of_product(qd[i], qd[j]);
      out.max_imag_pair_trace = std::max(out.max_imag_pair_trace,
                                         std::abs(t.imag()));
      out.min_pair_trace = std::min(out.min_pair_trace, t.real());
      pair_traces.push_back(t.real());
      if (out.commutative && !commute(qd[i], qd[j], tol)) {
        out.commutative = false;
      }
    }
  }
  if (pair_traces.empty()) out.min_pair_trace = 0.0;
  out.lambda_set = cluster_values(std::move(pair_traces), tol);
  out.degree = out.lambda_set.size();
  return out;
}

QuantumIdentities check_identities(Index v, Index b, double k, double r,
                                   std::optional<double> lambda,
                                   const Tolerance& tol) {
  QuantumIdentities out;
  out.count.name = "b*k = v*r";
  out.count.lhs = static_cast<double>(b) * k;
  out.count.rhs = static_cast<double>(v) * r;
  out.count.pass = tol.equal(out.count.lhs, out.count.rhs);
  if (lambda) {
    EquationCheck<double> eq;
    eq.name = "lambda*(v-1) = r*(k-1)";
    eq.lhs = *lambda * static_cast<double>(v - 1);
    eq.rhs = r * (k - 1.0);
    eq.pass = tol.equal(eq.lhs, eq.rhs);
    out.balance = eq;
  }
  return out;
}

QuantumIdentities check_identities(Index v, Index b,
                                   const QuantumParams& params,
                                   const Tolerance& tol) {
  if (!params.r || !params.k) {
    throw DomainError("check_identities needs both r and k");
  }
  return check_identities(v, b, *params.k, static_cast<double>(*params.r),
                          params.lambda(), tol);
}

ComplexMatrix common_eigenbasis(const QuantumDesign& qd, const Tolerance& tol) {
  for (Index i = 0; i < qd.size(); ++i) {
    for (Index j = i + 1; j < qd.size(); ++j) {
      if (!commute(qd[i], qd[j], tol)) {
        throw DomainError("projectors " + std::to_string(i) + " and " +
                      std::to_string(j) + " do not commute");
      }
    }
  }
  const Index b = qd.dim();
  std::vector<ComplexMatrix> parts{ComplexMatrix::Identity(b, b)};
  for (const auto& p : qd.projectors()) {
    std::vector<ComplexMatrix> refined;
    for (const auto& s : parts) {
      SubspaceSplit split = split_by_projector(s, p, tol);
      if (split.image.cols() > 0) refined.push_back(std::move(split.image));
      if (split.kernel.cols() > 0) refined.push_back(std::move(split.kernel));
    }
    parts = std::move(refined);
  }
  ComplexMatrix basis(b, b);
  Index col = 0;
  for (const auto& s : parts) {
    basis.middleCols(col, s.cols()) = s;
    col += s.cols();
  }
  if (col != b) {
    throw NumericalError("common eigenspaces do not reassemble C^" +
                         std::to_string(b));
  }
  return basis;
}

ClassicalDesign to_classical(const QuantumDesign& qd, const Tolerance& tol) {
  const ComplexMatrix basis = common_eigenbasis(qd, tol);
  const Index b = qd.dim();

  std::vector<Index> lead(static_cast<std::size_t>(b));
  for (Index c = 0; c < b; ++c) {
    basis.col(c).cwiseAbs().maxCoeff(&lead[static_cast<std::size_t>(c)]);
  }
  std::vector<Index> order(static_cast<std::size_t>(b));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return lead[static_cast<std::size_t>(x)] < lead[static_cast<std::size_t>(y)];
  });

  NatMatrix chi(qd.size(), b);
  for (Index i = 0; i < qd.size(); ++i) {
    for (Index c = 0; c < b; ++c) {
      const auto x = basis.col(order[static_cast<std::size_t>(c)]);
      const double eig = x.dot(qd[i] * x).real();
      const double rounded = std::round(eig);
      if ((rounded != 0.0 && rounded != 1.0) || !tol.equal(eig, rounded)) {
        throw NumericalError("projector " + std::to_string(i) +
                             " has eigenvalue " + std::to_string(eig) +
                             " on a common eigenvector");
      }
      chi(i, c) = static_cast<Nat>(rounded);
    }
  }
  return ClassicalDesign(std::move(chi));
}

QuantumDesign tensor(const QuantumDesign& a, const QuantumDesign& b) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.projectors().size() * b.projectors().size());
  for (const auto& p : a.projectors()) {
    for (const auto& q : b.projectors()) out.push_back(kron(p, q));
  }
  return QuantumDesign(a.dim() * b.dim(), std::move(out));
}

QuantumDesign conjugate(const QuantumDesign& qd, const ComplexMatrix& unitary) {
  if (unitary.rows() != qd.dim() || unitary.cols() != qd.dim()) {
    throw DimensionError("conjugate: unitary has the wrong size");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& p : qd.projectors()) {
    out.emplace_back(unitary * p * unitary.adjoint());
  }
  return QuantumDesign(qd.dim(), std::move(out));
}

MubFamily mub_generate(Nat d, Nat k) {
  if (!is_prime(d)) {
    throw DomainError("MUB dimension " + std::to_string(d) + " is not prime");
  }
  if (d > 101) throw DomainError("MUB dimension too large");
  if (k < 1 || k > d + 1) {
    throw DomainError("MUB count " + std::to_string(k) + " outside 1.." +
                      std::to_string(d + 1));
  }
  const auto n = static_cast<Index>(d);
  MubFamily f;
  f.d = n;
  f.bases.push_back(ComplexMatrix::Identity(n, n));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 2) {
    const Complex i(0.0, 1.0);
    ComplexMatrix x(2, 2);
    x << 1.0, 1.0, 1.0, -1.0;
    ComplexMatrix y(2, 2);
    y << 1.0, 1.0, i, -i;
    if (k >= 2) f.bases.push_back(x * norm);
    if (k >= 3) f.bases.push_back(y * norm);
    return f;
  }
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (Nat t = 1; t < k; ++t) {
    ComplexMatrix basis(n, n);
    for (Nat j = 0; j < d; ++j) {
      for (Nat l = 0; l < d; ++l) {
        const Nat e = (t * l * l + j * l) % d;
        basis(static_cast<Index>(l), static_cast<Index>(j)) =
            std::polar(norm, step * static_cast<double>(e));
      }
    }
    f.bases.push_back(std::move(basis));
  }
  return f;
}

QuantumDesign mub_design(const MubFamily& f) {
  std::vector<ComplexMatrix> projectors;
  for (const auto& basis : f.bases) {
    for (Index i = 0; i < basis.cols(); ++i) {
      projectors.emplace_back(basis.col(i) * basis.col(i).adjoint());
    }
  }
  return QuantumDesign(f.d, std::move(projectors));
}

std::string to_string(MubReport::Failure f) {
  switch (f) {
    case MubReport::Failure::None: return "none";
    case MubReport::Failure::Shape: return "shape";
    case MubReport::Failure::Orthonormality: return "orthonormality";
    case MubReport::Failure::TraceLaw: return "trace-law";
    case MubReport::Failure::Uniformity: return "uniformity";
  }
  return "unknown";
}

MubReport mub_verify(const MubFamily& f, const Tolerance& tol) {
  MubReport out;
  const Index d = f.d;
  if (d < 1 || f.bases.empty() ||
      std::any_of(f.bases.begin(), f.bases.end(), [&](const auto& basis) {
        return basis.rows() != d || basis.cols() != d;
      })) {
    out.failure = MubReport::Failure::Shape;
    return out;
  }
  const auto nb = static_cast<Index>(f.bases.size());
  for (Index a = 0; a < nb; ++a) {
    const ComplexMatrix gram =
        f.bases[static_cast<std::size_t>(a)].adjoint() *
        f.bases[static_cast<std::size_t>(a)];
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        const Complex expected = i == j ? 1.0 : 0.0;
        if (!tol.equal(gram(i, j), expected)) {
          out.failure = MubReport::Failure::Orthonormality;
          out.witness = {a, i, a, j};
          out.expected = expected.real();
          out.observed = std::abs(gram(i, j));
          return out;
        }
      }
    }
  }

  QuantumDesign design = mub_design(f);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (Index x = 0; x < design.size(); ++x) {
    for (Index y = x; y < design.size(); ++y) {
      const Index a = x / d, i = x % d, b = y / d, j = y % d;
      const double expected =
          a == b ? (i == j ? 1.0 : 0.0) : inv_d;
      const double observed = trace_of_product(design[x], design[y]).real();
      const double residual = std::abs(observed - expected);
      out.max_trace_law_residual =
          std::max(out.max_trace_law_residual, residual);
      if (out.failure == MubReport::Failure::None &&
          !tol.equal(observed, expected)) {
        out.failure = MubReport::Failure::TraceLaw;
        out.witness = {a, i, b, j};
        out.expected = expected;
        out.observed = observed;
      }
    }
  }
  if (out.failure == MubReport::Failure::None) {
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& p : design.projectors()) sum += p;
    const double residual = max_abs(ComplexMatrix(
        sum - static_cast<double>(nb) * ComplexMatrix::Identity(d, d)));
    if (!tol.small(residual, static_cast<double>(nb))) {
      out.failure = MubReport::Failure::Uniformity;
      out.expected = 0.0;
      out.observed = residual;
    }
  }
  out.design = std::move(design);
  return out;
}

}  // namespace qdesign

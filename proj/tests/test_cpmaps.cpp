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

#include <catch2/catch_amalgamated.hpp>

#include "qdesign/cpmaps.hpp"
#include "test_support.hpp"

using namespace qdesign;
using qdesign::testing::Rng;
using Catch::Matchers::WithinAbs;

namespace {

// Superoperator of rho |-> sum_a K_a rho K_a^dagger under row-major
// vectorization: vec(A X B) = (A (x) B^T) vec(X).
ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& kraus) {
  const Index no = kraus.front().rows();
  const Index ni = kraus.front().cols();
  ComplexMatrix s = ComplexMatrix::Zero(no * no, ni * ni);
  for (const auto& k : kraus) s += kron(k, ComplexMatrix(k.conjugate()));
  return s;
}

CpMap identity_map(Index n) {
  return CpMap(Algebra::matrix(n), Algebra::matrix(n),
               ComplexMatrix::Identity(n * n, n * n));
}

CpMap transpose_map(Index n) {
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return CpMap(Algebra::matrix(n), Algebra::matrix(n), s);
}

// rho |-> Tr(rho) I / n
CpMap depolarizing(Index n) {
  const ComplexVector id = vec(ComplexMatrix::Identity(n, n));
  return CpMap(Algebra::matrix(n), Algebra::matrix(n),
               id * id.adjoint() / static_cast<double>(n));
}

CpMap example_map() {
  ComplexMatrix m(4, 4);
  m << 1, 0, 0, 1,  //
      0, 0.5, 0.5, 0,  //
      0, 0.5, 0.5, 0,  //
      1, 0, 0, 1;
  return CpMap(Algebra::matrix(2), Algebra::matrix(2), m);
}

RealVector oracle_eigenvalues(const ComplexMatrix& c) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(c).eigenvalues();
}

HomPair fano_automorphism(const ClassicalDesign& fano) {
  // First point permutation (after the identity) that permutes the blocks.
  std::vector<Index> sigma{0, 1, 2, 3, 4, 5, 6};
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    HomPair h;
    h.point_map = sigma;
    h.point_codomain = h.block_codomain = 7;
    for (Index j = 0; j < 7; ++j) {
      NatMatrix image = NatMatrix::Zero(7, 1);
      for (Index i = 0; i < 7; ++i)
        image(sigma[static_cast<std::size_t>(i)], 0) = fano.incidence()(i, j);
      for (Index c = 0; c < 7; ++c) {
        if (fano.incidence().col(c) == image.col(0)) {
          h.block_map.push_back(c);
          break;
        }
      }
    }
    if (h.block_map.size() == 7) return h;
  }
  FAIL("no automorphism");
  return {};
}

}  // namespace

TEST_CASE("CpMap shape checks", "[cpmaps]") {
  CHECK_THROWS_AS(CpMap(Algebra::matrix(2), Algebra::matrix(2), ComplexMatrix::Identity(3, 3)),
                  DimensionError);
  CHECK(Algebra::matrix(3).coord_dim() == 9);
  CHECK(Algebra::commutative(3).coord_dim() == 3);
  CHECK(diagonal_embedding(2).rows() == 4);
  ComplexMatrix mu = multiplication(2);
  CHECK(mu.rows() == 2);
  CHECK(mu.cols() == 4);
  CHECK(mu(0, 0) == Complex(1));
  CHECK(mu(1, 3) == Complex(1));
  CHECK(mu.sum() == Complex(2));
}

TEST_CASE("Choi matrices", "[cpmaps]") {
  const ComplexVector phi = vec(ComplexMatrix::Identity(2, 2));
  CHECK(choi(identity_map(2)) == ComplexMatrix(phi * phi.adjoint()));
  RealVector ev = oracle_eigenvalues(choi(identity_map(2)));
  CHECK_THAT(ev(3), WithinAbs(2.0, 1e-12));
  CHECK_THAT(ev(0), WithinAbs(0.0, 1e-12));

  ev = oracle_eigenvalues(choi(transpose_map(2)));
  CHECK_THAT(ev(0), WithinAbs(-1.0, 1e-12));
  for (Index i = 1; i < 4; ++i) CHECK_THAT(ev(i), WithinAbs(1.0, 1e-12));

  CHECK(max_abs(ComplexMatrix(choi(depolarizing(2)) - 0.5 * ComplexMatrix::Identity(4, 4))) <=
        1e-15);

  Rng rng(1);
  const ComplexMatrix c = testing::random_hermitian(6, rng);
  const CpMap back = from_choi(c, 2, 3);
  CHECK(back.in == Algebra::matrix(2));
  CHECK(back.out == Algebra::matrix(3));
  CHECK(max_abs(ComplexMatrix(choi(back) - c)) <= 1e-15);
  CHECK_THROWS_AS(from_choi(c, 2, 2), DimensionError);
}

TEST_CASE("is_cp", "[cpmaps]") {
  CHECK(is_cp(identity_map(2)).cp);
  CHECK(is_cp(depolarizing(3)).cp);
  const CpCheck t = is_cp(transpose_map(2));
  CHECK_FALSE(t.cp);
  CHECK_THAT(t.min_eigenvalue, WithinAbs(-1.0, 1e-9));

  // Not Hermiticity preserving: rho |-> i rho.
  const CpMap skew(Algebra::matrix(2), Algebra::matrix(2),
                   Complex(0, 1) * ComplexMatrix::Identity(4, 4));
  CHECK_THROWS_AS(is_cp(skew), NumericalError);

  // Classical designs are CP once embedded: diagonal Choi with entries chi_ij.
  const ClassicalDesign fano = gen_projective_plane(2);
  const CpMap f = classical_to_cp(fano);
  CHECK(f.m == fano.incidence().cast<double>().cast<Complex>().eval());
  const ComplexMatrix c = choi(f);
  CHECK(c.rows() == 49);
  CHECK(ComplexMatrix(c.diagonal().asDiagonal()) == c);
  CHECK(is_cp(f).cp);
}

TEST_CASE("is_trace_preserving", "[cpmaps]") {
  CHECK(is_trace_preserving(identity_map(3)).preserving);
  CHECK(is_trace_preserving(depolarizing(2)).preserving);
  Rng rng(2);
  const ComplexMatrix u = random_unitary(3, rng);
  const CpMap conj(Algebra::matrix(3), Algebra::matrix(3), kraus_superoperator({u}));
  CHECK(is_trace_preserving(conj).preserving);

  const TraceCheck ex = is_trace_preserving(example_map());
  CHECK_FALSE(ex.preserving);
  CHECK_THAT(ex.residual, WithinAbs(1.0, 1e-15));

  // Column-stochastic classical maps preserve the trace.
  const ClassicalDesign fano = gen_projective_plane(2);
  const CpMap scaled(Algebra::commutative(7), Algebra::commutative(7),
                     classical_to_cp(fano).m / 3.0);
  CHECK(is_trace_preserving(scaled).preserving);
  CHECK_FALSE(is_trace_preserving(classical_to_cp(fano)).preserving);
}

TEST_CASE("quantum_design_to_cp", "[cpmaps]") {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = p1(1, 1) = 1.0;
  const CpMap pvm = quantum_design_to_cp(QuantumDesign(2, {p0, p1}));
  CHECK(pvm.in == Algebra::commutative(2));
  CHECK(pvm.out == Algebra::matrix(2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 2);
  expected(0, 0) = expected(3, 1) = 1.0;
  CHECK(pvm.m == expected);
  CHECK(is_cp(pvm).cp);

  const QuantumDesign fano_q = functor_q(gen_projective_plane(2));
  const CpMap f = quantum_design_to_cp(fano_q);
  CHECK(f.m.rows() == 49);
  CHECK(f.m.cols() == 7);
  for (Index i = 0; i < 7; ++i) CHECK(unvec(f.m.col(i), 7, 7) == fano_q[i]);
}

TEST_CASE("functor_q", "[cpmaps]") {
  const ClassicalDesign fano = gen_projective_plane(2);
  const QuantumDesign q = functor_q(fano);
  REQUIRE(q.size() == 7);
  REQUIRE(q.dim() == 7);
  for (Index i = 0; i < 7; ++i) {
    ComplexMatrix expected = ComplexMatrix::Zero(7, 7);
    for (Index j = 0; j < 7; ++j) expected(j, j) = static_cast<double>(fano.incidence()(i, j));
    CHECK(q[i] == expected);
  }
  // Tr(p_i p_j) = (chi chi^T)_ij
  const NatMatrix g = fano.incidence() * fano.incidence().transpose();
  for (Index i = 0; i < 7; ++i)
    for (Index j = 0; j < 7; ++j)
      CHECK(trace_of_product(q[i], q[j]).real() == static_cast<double>(g(i, j)));

  const QuantumParams p = classify(functor_q(gen_complete(3, 2)));
  CHECK(p.r == Nat{2});
  CHECK_THAT(*p.k, WithinAbs(2.0, 1e-15));
  CHECK_THAT(*p.lambda(), WithinAbs(1.0, 1e-15));

  NatMatrix id = NatMatrix::Identity(2, 2);
  const QuantumDesign pvm = functor_q(ClassicalDesign(id));
  CHECK(pvm[0](0, 0) == Complex(1));
  CHECK(pvm[0](1, 1) == Complex(0));
  CHECK(classify(pvm).lambda_set == std::vector<double>{0.0});

  NatMatrix two = NatMatrix::Identity(2, 2) * 2;
  CHECK_THROWS_AS(functor_q(ClassicalDesign(two)), NotZeroOneError);
  NatMatrix ragged(2, 2);
  ragged << 1, 1, 0, 1;
  CHECK_THROWS_AS(functor_q(ClassicalDesign(ragged)), DomainError);

  // The Cayley map sends rho to chi diag(rho).
  const CpMap cay = cayley_design_map(fano);
  CHECK(cay.in == Algebra::matrix(7));
  CHECK(cay.out == Algebra::commutative(7));
  Rng rng(3);
  const ComplexMatrix rho = testing::random_complex(7, 7, rng);
  const ComplexVector expected =
      fano.incidence().cast<double>().cast<Complex>() * rho.diagonal();
  CHECK(max_abs(ComplexVector(cay.m * vec(rho) - expected)) <= 1e-12);
}

TEST_CASE("functor_q on homomorphisms", "[cpmaps]") {
  const ClassicalDesign fano = gen_projective_plane(2);
  const HomLiftReport id = functor_q_on_hom(fano, fano, HomPair::identity(fano));
  CHECK(id.pass);
  CHECK(id.monoid_residual == 0.0);
  CHECK(id.comonoid_residual == 0.0);
  CHECK(id.design_residual == 0.0);
  CHECK(id.outer_residual == 0.0);

  const HomLiftReport aut = functor_q_on_hom(fano, fano, fano_automorphism(fano));
  CHECK(aut.pass);
  CHECK(aut.monoid_residual <= 1e-12);
  CHECK(aut.outer_residual <= 1e-12);

  HomPair swap = HomPair::identity(fano);
  std::swap(swap.block_map[0], swap.block_map[1]);
  CHECK_THROWS_AS(functor_q_on_hom(fano, fano, swap), DomainError);

  // Collapsing blocks: the comultiplication square still commutes while the
  // multiplication square does not.
  NatMatrix full(2, 2);
  full << 1, 1, 1, 1;
  NatMatrix column(2, 1);
  column << 1, 1;
  HomPair collapse;
  collapse.point_map = {0, 1};
  collapse.block_map = {0, 0};
  collapse.point_codomain = 2;
  collapse.block_codomain = 1;
  const ClassicalDesign src(full), dst(column);
  REQUIRE(verify_hom(src, dst, collapse).commutes);
  const HomLiftReport lift = functor_q_on_hom(src, dst, collapse);
  CHECK(lift.comonoid_residual == 0.0);
  CHECK(lift.monoid_residual > 0.5);
  CHECK_FALSE(lift.pass);
}

TEST_CASE("verify_cp_design fixtures", "[cpmaps]") {
  const CpDesignReport id = verify_cp_design(identity_map(2));
  CHECK_THAT(*id.k, WithinAbs(1.0, 1e-15));
  CHECK_THAT(*id.r, WithinAbs(1.0, 1e-15));
  CHECK(id.lambda_balanced);
  CHECK_THAT(id.superoperator.lambda, WithinAbs(0.0, 1e-15));

  const CpDesignReport dep = verify_cp_design(depolarizing(2));
  CHECK_THAT(*dep.k, WithinAbs(1.0, 1e-15));
  CHECK_THAT(*dep.r, WithinAbs(1.0, 1e-15));

  // Hand computation: m vec(I) = (2,0,0,2) = 2 vec(I), likewise from the left.
  // G = m m^dagger has G_11 = 1/2 against r - lambda, G_03 = 2 against lambda
  // and G_12 = 1/2 against 0, so the best lambda leaves a defect of 1/2.
  const CpDesignReport ex = verify_cp_design(example_map());
  REQUIRE(ex.k);
  REQUIRE(ex.r);
  CHECK_THAT(*ex.k, WithinAbs(2.0, 1e-12));
  CHECK_THAT(*ex.r, WithinAbs(2.0, 1e-12));
  CHECK_THAT(ex.superoperator.residual, WithinAbs(0.5, 1e-12));
  CHECK_FALSE(ex.lambda_balanced);
  // Read as a Choi matrix the map is
  // [[1,0,0,.5],[0,1,.5,0],[0,.5,1,0],[.5,0,0,1]], with k = r = 3/2 and a
  // fixed defect of 1 at G_12.
  REQUIRE(ex.choi_reading);
  REQUIRE(ex.choi_reading_r);
  CHECK_THAT(*ex.choi_reading_r, WithinAbs(1.5, 1e-12));
  CHECK_THAT(ex.choi_reading->residual, WithinAbs(1.0, 1e-12));

  CHECK_THROWS_AS(verify_cp_design(classical_to_cp(gen_projective_plane(2))),
                  DimensionError);

  // fit_lambda recovers lambda when G = r I + lambda (J - I) exactly.
  const ComplexVector j = vec(ComplexMatrix::Identity(2, 2));
  const ComplexMatrix target =
      2.0 * ComplexMatrix::Identity(4, 4) + 0.75 * (j * j.adjoint() - ComplexMatrix::Identity(4, 4));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(target);
  const ComplexMatrix root = es.operatorSqrt();
  const LambdaFit fit = fit_lambda(root, 2.0, 2);
  CHECK(fit.residual <= 1e-12);
  CHECK_THAT(fit.lambda, WithinAbs(0.75, 1e-12));
}

TEST_CASE("CP and trace preservation properties", "[cpmaps][property]") {
  Rng rng(808);
  const Tolerance tol;
  const auto seeds = testing::seed_block_designs();
  for (int trial = 0; trial < 240; ++trial) {
    switch (trial % 3) {
      case 0: {
        // Every validated quantum design gives a CP map.
        const Index n = testing::uniform_index(1, 5, rng);
        std::vector<ComplexMatrix> ps;
        for (Index i = testing::uniform_index(1, 6, rng); i > 0; --i)
          ps.push_back(testing::random_projector(n, testing::uniform_index(0, n, rng), rng));
        const QuantumDesign qd(n, ps);
        REQUIRE(validate(qd, tol).pass);
        CHECK(is_cp(quantum_design_to_cp(qd), tol).cp);
        break;
      }
      case 1: {
        // Kraus maps are CP; trace preserving exactly when 1-uniform.
        const Index ni = testing::uniform_index(1, 3, rng);
        const Index no = testing::uniform_index(1, 3, rng);
        std::vector<ComplexMatrix> kraus;
        // Enough operators that sum K^dagger K can be invertible.
        for (Index a = testing::uniform_index((ni + no - 1) / no, 3, rng); a > 0; --a)
          kraus.push_back(testing::random_complex(no, ni, rng));
        if (trial % 2 == 0) {
          // Normalize: K_a <- K_a S^{-1/2} with S = sum K^dagger K.
          ComplexMatrix s = ComplexMatrix::Zero(ni, ni);
          for (const auto& k : kraus) s += k.adjoint() * k;
          const ComplexMatrix inv_sqrt =
              Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(s).operatorInverseSqrt();
          for (auto& k : kraus) k = k * inv_sqrt;
        }
        const CpMap f(Algebra::matrix(ni), Algebra::matrix(no), kraus_superoperator(kraus));
        CHECK(is_cp(f, tol).cp);
        const bool tp = is_trace_preserving(f, tol).preserving;
        CHECK(tp == (trial % 2 == 0));
        const CpDesignReport rep = verify_cp_design(f, tol);
        const bool one_uniform = rep.k && std::abs(*rep.k - 1.0) <= 1e-9;
        CHECK(tp == one_uniform);
        break;
      }
      default: {
        // Classical designs: diagonal Choi, and functor_q commutes with the
        // diagonal picture.
        const auto& s = seeds[static_cast<std::size_t>(trial) % seeds.size()];
        const ClassicalDesign d = testing::permute(
            s, testing::random_permutation(s.points(), rng),
            testing::random_permutation(s.blocks(), rng));
        const ComplexMatrix c = choi(classical_to_cp(d));
        CHECK(ComplexMatrix(c.diagonal().asDiagonal()) == c);
        CHECK(c.diagonal().real().minCoeff() >= 0.0);
        CHECK(is_cp(classical_to_cp(d), tol).cp);
        const DesignParams dp = classify(d);
        const QuantumParams qp = classify(functor_q(d), tol);
        CHECK(qp.r == dp.r);
        CHECK_THAT(*qp.k, WithinAbs(static_cast<double>(*dp.k), 1e-12));
        CHECK(qp.degree == 1);
        CHECK_THAT(qp.lambda_set.front(), WithinAbs(static_cast<double>(*dp.lambda), 1e-12));
        CHECK(qp.commutative);
        break;
      }
    }
  }
}

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

#include <set>

#include "qdesign/cpmaps.hpp"
#include "qdesign/quantum.hpp"
#include "test_support.hpp"

using namespace qdesign;
using qdesign::testing::Rng;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()),
                                        static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) m(i, i) = x, ++i;
  return m;
}

QuantumDesign pvm2() { return QuantumDesign(2, {diag({1, 0}), diag({0, 1})}); }

// Diagonal projectors written out by hand from the rows of chi.
QuantumDesign diagonal_from_rows(const ClassicalDesign& d) {
  std::vector<ComplexMatrix> ps;
  for (Index i = 0; i < d.points(); ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(d.blocks(), d.blocks());
    for (Index j = 0; j < d.blocks(); ++j) p(j, j) = static_cast<double>(d.incidence()(i, j));
    ps.push_back(p);
  }
  return QuantumDesign(d.blocks(), ps);
}

}  // namespace

TEST_CASE("QuantumDesign shape checks", "[quantum]") {
  CHECK_THROWS_AS(QuantumDesign(2, {ComplexMatrix::Identity(3, 3)}), DimensionError);
  CHECK_THROWS_AS(QuantumDesign(0, {}), DimensionError);
  ComplexMatrix nan = ComplexMatrix::Zero(1, 1);
  nan(0, 0) = std::nan("");
  CHECK_THROWS(QuantumDesign(1, {nan}));
}

TEST_CASE("validate", "[quantum]") {
  CHECK(validate(QuantumDesign(3, {ComplexMatrix::Identity(3, 3)})).pass);
  CHECK(validate(pvm2()).pass);
  ComplexMatrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  const ValidationReport bad = validate(QuantumDesign(2, {nil}));
  CHECK_FALSE(bad.pass);
  CHECK_THAT(bad.projectors[0].hermiticity, WithinAbs(1.0, 0.0));
  CHECK_FALSE(bad.projectors[0].pass);
  // Hermitian but not idempotent.
  CHECK_FALSE(validate(QuantumDesign(1, {diag({2})})).pass);
}

TEST_CASE("classify fixtures", "[quantum]") {
  const QuantumParams fano = classify(functor_q(gen_projective_plane(2)));
  CHECK(fano.r == Nat{3});
  REQUIRE(fano.k);
  CHECK_THAT(*fano.k, WithinAbs(3.0, 1e-12));
  CHECK(fano.degree == 1);
  REQUIRE(fano.lambda());
  CHECK_THAT(*fano.lambda(), WithinAbs(1.0, 1e-12));
  CHECK(fano.commutative);

  const QuantumParams pvm = classify(pvm2());
  CHECK(pvm.r == Nat{1});
  CHECK_THAT(*pvm.k, WithinAbs(1.0, 1e-15));
  CHECK(pvm.degree == 1);
  CHECK_THAT(pvm.lambda_set.front(), WithinAbs(0.0, 1e-15));
  CHECK(pvm.commutative);

  const QuantumParams mub = classify(mub_design(mub_generate(2, 2)));
  CHECK(mub.r == Nat{1});
  CHECK_THAT(*mub.k, WithinAbs(2.0, 1e-12));
  REQUIRE(mub.degree == 2);
  CHECK_THAT(mub.lambda_set[0], WithinAbs(0.0, 1e-12));
  CHECK_THAT(mub.lambda_set[1], WithinAbs(0.5, 1e-12));
  CHECK_FALSE(mub.commutative);
  CHECK_FALSE(mub.lambda());

  // Non-integral trace: r absent. Unequal sum: k absent.
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const QuantumParams skew = classify(QuantumDesign(2, {diag({1, 0}), plus}));
  CHECK(skew.r == Nat{1});
  CHECK_FALSE(skew.k);
  CHECK(skew.uniformity_residual > 0.1);
  CHECK_FALSE(skew.commutative);

  const QuantumParams mixed = classify(QuantumDesign(2, {diag({1, 0}), diag({1, 1})}));
  CHECK_FALSE(mixed.r);

  const QuantumParams single = classify(QuantumDesign(2, {diag({1, 0})}));
  CHECK(single.degree == 0);
  CHECK(single.lambda_set.empty());
}

TEST_CASE("quantum counting identities", "[quantum]") {
  const Tolerance tol;
  const QuantumParams fano = classify(functor_q(gen_projective_plane(2)));
  const QuantumIdentities ids = check_identities(7, 7, fano, tol);
  CHECK(ids.pass());
  REQUIRE(ids.balance);
  CHECK_THAT(ids.balance->lhs, WithinAbs(6.0, 1e-12));

  const QuantumIdentities mub = check_identities(4, 2, 2.0, 1.0, std::nullopt, tol);
  CHECK(mub.count.pass);
  CHECK_THAT(mub.count.lhs, WithinAbs(4.0, 0.0));
  CHECK_FALSE(mub.balance);

  const QuantumIdentities third = check_identities(4, 2, 2.0, 1.0, 1.0 / 3.0, tol);
  REQUIRE(third.balance);
  CHECK(third.balance->pass);
  CHECK_THAT(third.balance->lhs, WithinAbs(1.0, 1e-15));

  CHECK_FALSE(check_identities(4, 2, 2.0, 1.0, 0.5, tol).pass());
  CHECK_THROWS_AS(check_identities(2, 2, classify(QuantumDesign(2, {diag({1, 0}), diag({1, 1})})), tol),
                  DomainError);
}

TEST_CASE("to_classical", "[quantum]") {
  const ClassicalDesign fano = gen_projective_plane(2);
  // Diagonal input comes back exactly.
  CHECK(to_classical(diagonal_from_rows(fano)) == fano);
  CHECK(to_classical(functor_q(fano)) == fano);

  Rng rng(21);
  const ComplexMatrix u = random_unitary(7, rng);
  const ClassicalDesign back = to_classical(conjugate(functor_q(fano), u));
  CHECK(sort_columns(back) == sort_columns(fano));

  // Multidimensional common eigenspace: each basis vector is its own block.
  const ClassicalDesign iden = to_classical(QuantumDesign(3, {ComplexMatrix::Identity(3, 3)}));
  CHECK(iden.incidence() == NatMatrix::Ones(1, 3));

  CHECK_THROWS_AS(to_classical(mub_design(mub_generate(2, 2))), DomainError);
}

TEST_CASE("tensor of quantum designs", "[quantum]") {
  const QuantumParams pp = classify(tensor(pvm2(), pvm2()));
  CHECK(pp.r == Nat{1});
  CHECK_THAT(*pp.k, WithinAbs(1.0, 1e-15));

  const QuantumDesign fano = functor_q(gen_projective_plane(2));
  const QuantumDesign fp = tensor(fano, pvm2());
  CHECK(fp.dim() == 14);
  CHECK(fp.size() == 14);
  const QuantumParams fpp = classify(fp);
  CHECK(fpp.r == Nat{3});
  CHECK_THAT(*fpp.k, WithinAbs(3.0, 1e-12));

  const QuantumParams ff = classify(tensor(fano, fano));
  CHECK(ff.degree > 1);
  bool has1 = false, has9 = false;
  for (double x : ff.lambda_set) {
    has1 = has1 || std::abs(x - 1.0) < 1e-9;
    has9 = has9 || std::abs(x - 9.0) < 1e-9;
  }
  CHECK(has1);
  // Off-diagonal pair traces are products of Fano gram entries: 1*1 or 1*3.
  CHECK_FALSE(has9);
  bool has3 = false;
  for (double x : ff.lambda_set) has3 = has3 || std::abs(x - 3.0) < 1e-9;
  CHECK(has3);
}

TEST_CASE("MUB generation", "[quantum]") {
  const MubFamily two = mub_generate(2, 2);
  REQUIRE(two.bases.size() == 2);
  CHECK(two.bases[0] == ComplexMatrix::Identity(2, 2));
  // Oracle: direct inner products of the hand-written Hadamard basis.
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const Complex ip = two.bases[0].col(i).dot(two.bases[1].col(j));
      CHECK_THAT(std::norm(ip), WithinAbs(0.5, 1e-15));
    }
  }
  CHECK_THAT(std::abs(two.bases[1](0, 0) - s), WithinAbs(0.0, 1e-15));
  CHECK(mub_verify(two).pass());

  const MubFamily three = mub_generate(3, 4);
  const MubReport rep = mub_verify(three);
  CHECK(rep.pass());
  REQUIRE(rep.design);
  CHECK(rep.design->size() == 12);
  const QuantumParams p = classify(*rep.design);
  CHECK(p.r == Nat{1});
  CHECK_THAT(*p.k, WithinAbs(4.0, 1e-12));
  REQUIRE(p.degree == 2);
  CHECK_THAT(p.lambda_set[1], WithinAbs(1.0 / 3.0, 1e-12));

  // Oracle for the overlaps: explicit loops over components.
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) {
          Complex ip = 0;
          for (Index l = 0; l < 3; ++l) ip += std::conj(three.bases[a](l, i)) * three.bases[b](l, j);
          CHECK_THAT(std::norm(ip), WithinAbs(1.0 / 3.0, 1e-12));
        }
      }
    }
  }

  const MubFamily one = mub_generate(2, 1);
  CHECK(mub_verify(one).pass());
  CHECK(classify(*mub_verify(one).design).degree == 1);

  for (Nat d : {5, 7, 11}) {
    const MubReport full = mub_verify(mub_generate(d, d + 1));
    CHECK(full.pass());
    CHECK(full.max_trace_law_residual <= 1e-12);
  }

  CHECK_THROWS_AS(mub_generate(4, 2), DomainError);
  CHECK_THROWS_AS(mub_generate(3, 5), DomainError);
  CHECK_THROWS_AS(mub_generate(3, 0), DomainError);
}

TEST_CASE("MUB verification failures", "[quantum]") {
  MubFamily twice;
  twice.d = 2;
  twice.bases = {ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)};
  const MubReport dup = mub_verify(twice);
  CHECK_FALSE(dup.pass());
  CHECK(dup.failure == MubReport::Failure::TraceLaw);
  REQUIRE(dup.witness);
  CHECK((*dup.witness)[0] != (*dup.witness)[2]);
  CHECK_THAT(dup.expected, WithinAbs(0.5, 1e-15));

  MubFamily skewed;
  skewed.d = 2;
  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  skewed.bases = {m};
  CHECK(mub_verify(skewed).failure == MubReport::Failure::Orthonormality);

  MubFamily wrong_shape;
  wrong_shape.d = 2;
  wrong_shape.bases = {ComplexMatrix::Identity(3, 3)};
  CHECK(mub_verify(wrong_shape).failure == MubReport::Failure::Shape);
}

TEST_CASE("random_unitary is unitary", "[quantum]") {
  Rng rng(8);
  for (Index n : {1, 2, 5, 9}) {
    const ComplexMatrix u = random_unitary(n, rng);
    CHECK(max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(n, n))) <= 1e-12);
  }
}

TEST_CASE("quantum identities and pair traces", "[quantum][property]") {
  Rng rng(505);
  const auto seeds = testing::seed_block_designs();
  const Tolerance tol;
  for (int trial = 0; trial < 240; ++trial) {
    QuantumDesign qd = [&]() -> QuantumDesign {
      switch (trial % 4) {
        case 0: {
          const auto& s = seeds[static_cast<std::size_t>(trial / 4) % seeds.size()];
          return conjugate(functor_q(s), random_unitary(s.blocks(), rng));
        }
        case 1: {
          const Nat d = std::array<Nat, 3>{2, 3, 5}[static_cast<std::size_t>(trial / 4) % 3];
          const Nat k = static_cast<Nat>(testing::uniform_index(1, static_cast<Index>(d) + 1, rng));
          return conjugate(mub_design(mub_generate(d, k)),
                           random_unitary(static_cast<Index>(d), rng));
        }
        case 2: {
          // Random projectors of equal rank: r present, k usually absent.
          const Index n = testing::uniform_index(2, 5, rng);
          const Index rank = testing::uniform_index(1, n, rng);
          std::vector<ComplexMatrix> ps;
          for (Index i = testing::uniform_index(1, 5, rng); i > 0; --i)
            ps.push_back(testing::random_projector(n, rank, rng));
          return QuantumDesign(n, ps);
        }
        default: {
          // Several rotated PVMs: always uniform and regular.
          const Index n = testing::uniform_index(1, 4, rng);
          std::vector<ComplexMatrix> ps;
          for (Index copies = testing::uniform_index(1, 3, rng); copies > 0; --copies) {
            const ComplexMatrix u = random_unitary(n, rng);
            for (Index j = 0; j < n; ++j) ps.push_back(u.col(j) * u.col(j).adjoint());
          }
          return QuantumDesign(n, ps);
        }
      }
    }();
    REQUIRE(validate(qd, tol).pass);
    const QuantumParams p = classify(qd, tol);
    CHECK(p.degree == p.lambda_set.size());
    CHECK(p.max_imag_pair_trace <= tol.bound(1.0 * qd.dim()));
    CHECK(p.min_pair_trace >= -tol.bound(1.0 * qd.dim()));
    // Independent pair-trace oracle: the Frobenius inner product.
    for (Index i = 0; i < qd.size(); ++i) {
      for (Index j = 0; j < qd.size(); ++j) {
        const Complex t = (qd[i].adjoint().cwiseProduct(qd[j].transpose())).sum();
        CHECK(std::abs(t.imag()) <= 1e-9);
        CHECK(t.real() >= -1e-9);
      }
    }
    if (p.r && p.k) {
      const QuantumIdentities ids = check_identities(qd.size(), qd.dim(), p, tol);
      CHECK(ids.count.pass);
      CHECK_THAT(static_cast<double>(qd.dim()) * *p.k,
                 WithinAbs(static_cast<double>(qd.size() * static_cast<Index>(*p.r)), 1e-8));
      if (p.degree == 1) {
        REQUIRE(ids.balance);
        CHECK(ids.balance->pass);
      }
    }
  }
}

TEST_CASE("functor_q round trip through to_classical", "[quantum][property]") {
  Rng rng(606);
  const auto seeds = testing::seed_block_designs();
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = seeds[static_cast<std::size_t>(trial) % seeds.size()];
    const ClassicalDesign d = testing::permute(s, testing::random_permutation(s.points(), rng),
                                               testing::random_permutation(s.blocks(), rng));
    QuantumDesign q = functor_q(d);
    if (trial % 2 == 1) q = conjugate(q, random_unitary(d.blocks(), rng));
    const ClassicalDesign back = to_classical(q);
    CHECK(sort_columns(back) == sort_columns(d));
    if (trial % 2 == 0) CHECK(back == d);
  }
}

TEST_CASE("quantum tensor multiplies parameters", "[quantum][property]") {
  Rng rng(707);
  auto random_uniform_regular = [&]() {
    const Index n = testing::uniform_index(1, 3, rng);
    std::vector<ComplexMatrix> ps;
    for (Index copies = testing::uniform_index(1, 2, rng); copies > 0; --copies) {
      const ComplexMatrix u = random_unitary(n, rng);
      for (Index j = 0; j < n; ++j) ps.push_back(u.col(j) * u.col(j).adjoint());
    }
    return QuantumDesign(n, ps);
  };
  const auto seeds = testing::seed_block_designs();
  for (int trial = 0; trial < 200; ++trial) {
    const QuantumDesign a = trial % 3 == 0
        ? functor_q(seeds[static_cast<std::size_t>(trial / 3) % 4])
        : random_uniform_regular();
    const QuantumDesign b = random_uniform_regular();
    const QuantumParams pa = classify(a), pb = classify(b);
    REQUIRE((pa.r && pa.k && pb.r && pb.k));
    const QuantumDesign t = tensor(a, b);
    const QuantumParams pt = classify(t);
    CHECK(pt.r == *pa.r * *pb.r);
    REQUIRE(pt.k);
    CHECK_THAT(*pt.k, WithinAbs(*pa.k * *pb.k, 1e-8));
  }
}

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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/numkit.hpp"

namespace qdesign {

/// A design with v points and b blocks, stored as its v x b incidence
/// matrix. Entries above 1 are allowed and read as incidence multiplicities.
class ClassicalDesign {
 public:
  explicit ClassicalDesign(NatMatrix incidence);

  const NatMatrix& incidence() const { return chi_; }
  Index points() const { return chi_.rows(); }
  Index blocks() const { return chi_.cols(); }
  bool zero_one() const;

  friend bool operator==(const ClassicalDesign& a, const ClassicalDesign& b) {
    return a.chi_.rows() == b.chi_.rows() && a.chi_.cols() == b.chi_.cols() &&
           a.chi_ == b.chi_;
  }

 private:
  NatMatrix chi_;
};

/// Parameters detected by classify(). lambda is only ever set together with
/// k and r.
struct DesignParams {
  std::optional<Nat> k;
  std::optional<Nat> r;
  std::optional<Nat> lambda;
  bool symmetric = false;

  bool uniform_regular() const { return k && r; }
  bool block() const { return k && r && lambda; }
};

DesignParams classify(const ClassicalDesign& d);

/// An exact integer identity lhs == rhs.
template <typename T>
struct EquationCheck {
  std::string name;
  T lhs{};
  T rhs{};
  bool pass = false;
};

struct ClassicalIdentities {
  EquationCheck<std::int64_t> count;                   // b k = r v
  std::optional<EquationCheck<std::int64_t>> balance;  // lambda (v-1) = r (k-1)

  bool pass() const { return count.pass && (!balance || balance->pass); }
};

/// Counting identities of a block design. Requires k and r; the balance
/// identity is evaluated when lambda is present.
ClassicalIdentities check_identities(Index v, Index b,
                                     const DesignParams& params);

/// Entrywise indicator (functor onto 0/1 block designs).
ClassicalDesign to_block(const ClassicalDesign& d);

/// A pair of total functions, points -> points' and blocks -> blocks',
/// stored as zero-based image arrays together with their codomain sizes.
struct HomPair {
  std::vector<Index> point_map;
  std::vector<Index> block_map;
  Index point_codomain = 0;
  Index block_codomain = 0;

  static HomPair identity(const ClassicalDesign& d);
};

/// 0/1 matrix of a function {0..n-1} -> {0..m-1}: one 1 per column.
NatMatrix function_matrix(const std::vector<Index>& map, Index codomain);

struct HomCheck {
  bool commutes = false;
  // First cell (row, col) where F_v chi != chi' F_b, with both sides.
  std::optional<std::pair<Index, Index>> cell;
  Nat lhs = 0;
  Nat rhs = 0;
};

/// Checks F_v chi == chi' F_b exactly. Throws DimensionError when the maps do
/// not fit the designs or an image index is out of range.
HomCheck verify_hom(const ClassicalDesign& src, const ClassicalDesign& dst,
                    const HomPair& h);

/// Composite of h1: d1 -> d2 followed by h2: d2 -> d3.
HomPair compose_hom(const HomPair& h1, const HomPair& h2);

ClassicalDesign tensor(const ClassicalDesign& a, const ClassicalDesign& b);
ClassicalDesign dual(const ClassicalDesign& d);

bool is_prime(Nat n);

/// PG(2, d) for prime d: points are the 1-dimensional subspaces of F_d^3,
/// blocks the 2-dimensional ones, both enumerated by their normalized
/// representative (first nonzero coordinate 1) in lexicographic order.
ClassicalDesign gen_projective_plane(Nat order);

/// All k-subsets of v points as blocks, lexicographic.
ClassicalDesign gen_complete(Index v, Index k);

/// All k-subsets of {0..v-1}, lexicographic.
std::vector<std::vector<Index>> k_subsets(Index v, Index k);

struct SearchRequest {
  Index v = 0;
  Index b = 0;
  Nat k = 0;
  Nat r = 0;
  Nat lambda = 0;
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  bool canonical_only = true;
};

/// Thrown when the requested parameters violate the counting identities.
class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Backtracking search for 0/1 (v, b, k, r, lambda) designs. Each column is a
/// k-subset; with canonical_only the columns are nondecreasing in subset
/// lexicographic order. Results come in search order and each one has been
/// re-verified by classify().
std::vector<ClassicalDesign> search_designs(const SearchRequest& request);

/// Exhaustive isomorphism test: some point permutation maps the multiset of
/// columns of a onto that of b. Limited to v <= 10.
bool isomorphic(const ClassicalDesign& a, const ClassicalDesign& b);

/// Columns sorted lexicographically (as column vectors), for comparisons up
/// to block relabelling.
ClassicalDesign sort_columns(const ClassicalDesign& d);

}  // namespace qdesign

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

#include "qdesign/classical.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace qdesign {

ClassicalDesign::ClassicalDesign(NatMatrix incidence)
    : chi_(std::move(incidence)) {
  if (chi_.rows() < 1 || chi_.cols() < 1) {
    throw DimensionError("a design needs at least one point and one block");
  }
}

bool ClassicalDesign::zero_one() const {
  return (chi_.array() <= Nat{1}).all();
}

DesignParams classify(const ClassicalDesign& d) {
  const NatMatrix& chi = d.incidence();
  DesignParams out;
  out.symmetric = d.points() == d.blocks();

  auto common = [](const std::vector<Nat>& sums) -> std::optional<Nat> {
    if (std::adjacent_find(sums.begin(), sums.end(), std::not_equal_to<>()) !=
        sums.end()) {
      return std::nullopt;
    }
    return sums.front();
  };
  std::vector<Nat> col_sums(static_cast<std::size_t>(d.blocks()), 0);
  std::vector<Nat> row_sums(static_cast<std::size_t>(d.points()), 0);
  for (Index i = 0; i < chi.rows(); ++i) {
    for (Index j = 0; j < chi.cols(); ++j) {
      col_sums[static_cast<std::size_t>(j)] =
          checked_add(col_sums[static_cast<std::size_t>(j)], chi(i, j));
      row_sums[static_cast<std::size_t>(i)] =
          checked_add(row_sums[static_cast<std::size_t>(i)], chi(i, j));
    }
  }
  out.k = common(col_sums);
  out.r = common(row_sums);
  if (!out.k || !out.r || d.points() < 2) return out;

  const NatMatrix gram = mat_mul(chi, transpose(chi));
  const Nat lambda = gram(0, 1);
  for (Index i = 0; i < gram.rows(); ++i) {
    for (Index j = 0; j < gram.cols(); ++j) {
      if (gram(i, j) != (i == j ? *out.r : lambda)) return out;
    }
  }
  out.lambda = lambda;
  return out;
}

namespace {

std::int64_t to_signed(Nat x) {
  if (x > static_cast<Nat>(std::numeric_limits<std::int64_t>::max())) {
    throw OverflowError("value " + std::to_string(x) + " exceeds int64");
  }
  return static_cast<std::int64_t>(x);
}

std::int64_t smul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in identity check");
  }
  return out;
}

}  // namespace

ClassicalIdentities check_identities(Index v, Index b,
                                     const DesignParams& params) {
  if (!params.k || !params.r) {
    throw DomainError("check_identities needs both k and r");
  }
  const std::int64_t k = to_signed(*params.k);
  const std::int64_t r = to_signed(*params.r);
  ClassicalIdentities out;
  out.count.name = "b*k = r*v";
  out.count.lhs = smul(b, k);
  out.count.rhs = smul(r, v);
  out.count.pass = out.count.lhs == out.count.rhs;
  if (params.lambda) {
    EquationCheck<std::int64_t> eq;
    eq.name = "lambda*(v-1) = r*(k-1)";
    eq.lhs = smul(to_signed(*params.lambda), v - 1);
    eq.rhs = smul(r, k - 1);
    eq.pass = eq.lhs == eq.rhs;
    out.balance = eq;
  }
  return out;
}

ClassicalDesign to_block(const ClassicalDesign& d) {
  return ClassicalDesign(
      d.incidence().unaryExpr([](Nat x) { return x > 0 ? Nat{1} : Nat{0}; }));
}

HomPair HomPair::identity(const ClassicalDesign& d) {
  HomPair h;
  h.point_map.resize(static_cast<std::size_t>(d.points()));
  h.block_map.resize(static_cast<std::size_t>(d.blocks()));
  std::iota(h.point_map.begin(), h.point_map.end(), Index{0});
  std::iota(h.block_map.begin(), h.block_map.end(), Index{0});
  h.point_codomain = d.points();
  h.block_codomain = d.blocks();
  return h;
}

NatMatrix function_matrix(const std::vector<Index>& map, Index codomain) {
  NatMatrix f = NatMatrix::Zero(codomain, static_cast<Index>(map.size()));
  for (std::size_t j = 0; j < map.size(); ++j) {
    if (map[j] < 0 || map[j] >= codomain) {
      throw DimensionError("function image " + std::to_string(map[j]) +
                           " at position " + std::to_string(j) +
                           " outside codomain of size " +
                           std::to_string(codomain));
    }
    f(map[j], static_cast<Index>(j)) = 1;
  }
  return f;
}

HomCheck verify_hom(const ClassicalDesign& src, const ClassicalDesign& dst,
                    const HomPair& h) {
  if (static_cast<Index>(h.point_map.size()) != src.points() ||
      static_cast<Index>(h.block_map.size()) != src.blocks() ||
      h.point_codomain != dst.points() || h.block_codomain != dst.blocks()) {
    throw DimensionError("verify_hom: maps do not match the design sizes");
  }
  const NatMatrix lhs =
      mat_mul(function_matrix(h.point_map, h.point_codomain), src.incidence());
  const NatMatrix rhs =
      mat_mul(dst.incidence(), function_matrix(h.block_map, h.block_codomain));
  HomCheck out;
  for (Index i = 0; i < lhs.rows(); ++i) {
    for (Index j = 0; j < lhs.cols(); ++j) {
      if (lhs(i, j) != rhs(i, j)) {
        out.cell = {i, j};
        out.lhs = lhs(i, j);
        out.rhs = rhs(i, j);
        return out;
      }
    }
  }
  out.commutes = true;
  return out;
}

HomPair compose_hom(const HomPair& h1, const HomPair& h2) {
  if (h1.point_codomain != static_cast<Index>(h2.point_map.size()) ||
      h1.block_codomain != static_cast<Index>(h2.block_map.size())) {
    throw DimensionError("compose_hom: middle designs do not match");
  }
  auto compose = [](const std::vector<Index>& first,
                    const std::vector<Index>& second) {
    std::vector<Index> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      const Index mid = first[i];
      if (mid < 0 || mid >= static_cast<Index>(second.size())) {
        throw DimensionError("compose_hom: image index out of range");
      }
      out[i] = second[static_cast<std::size_t>(mid)];
    }
    return out;
  };
  HomPair out;
  out.point_map = compose(h1.point_map, h2.point_map);
  out.block_map = compose(h1.block_map, h2.block_map);
  out.point_codomain = h2.point_codomain;
  out.block_codomain = h2.block_codomain;
  return out;
}

ClassicalDesign tensor(const ClassicalDesign& a, const ClassicalDesign& b) {
  return ClassicalDesign(kron(a.incidence(), b.incidence()));
}

ClassicalDesign dual(const ClassicalDesign& d) {
  return ClassicalDesign(transpose(d.incidence()));
}

bool is_prime(Nat n) {
  if (n < 2) return false;
  for (Nat f = 2; f <= n / f; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

ClassicalDesign gen_projective_plane(Nat order) {
  if (!is_prime(order)) {
    throw DomainError("projective plane order " + std::to_string(order) +
                      " is not prime");
  }
  if (order > 47) {
    throw DomainError("projective plane order " + std::to_string(order) +
                      " is too large");
  }
  const Nat q = order;
  std::vector<std::array<Nat, 3>> reps;
  for (Nat x = 0; x < q; ++x) {
    for (Nat y = 0; y < q; ++y) {
      for (Nat z = 0; z < q; ++z) {
        const std::array<Nat, 3> p{x, y, z};
        const auto lead = std::find_if(p.begin(), p.end(),
                                       [](Nat c) { return c != 0; });
        if (lead != p.end() && *lead == 1) reps.push_back(p);
      }
    }
  }
  const auto n = static_cast<Index>(reps.size());
  NatMatrix chi = NatMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& p = reps[static_cast<std::size_t>(i)];
      const auto& l = reps[static_cast<std::size_t>(j)];
      if ((p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0) chi(i, j) = 1;
    }
  }
  return ClassicalDesign(std::move(chi));
}

std::vector<std::vector<Index>> k_subsets(Index v, Index k) {
  std::vector<std::vector<Index>> out;
  if (k < 0 || k > v) return out;
  std::vector<Index> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), Index{0});
  while (true) {
    out.push_back(cur);
    Index i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == v - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

namespace {

Nat binomial(Nat n, Nat k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Nat out = 1;
  for (Nat i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i at every step
    out = checked_mul(out, n - k + i) / i;
  }
  return out;
}

}  // namespace

ClassicalDesign gen_complete(Index v, Index k) {
  if (v < 1 || k < 1 || k > v) {
    throw DomainError("gen_complete needs 1 <= k <= v (got v=" +
                      std::to_string(v) + ", k=" + std::to_string(k) + ")");
  }
  const Nat count = binomial(static_cast<Nat>(v), static_cast<Nat>(k));
  if (checked_mul(count, static_cast<Nat>(v)) > (Nat{1} << 26)) {
    throw DomainError("gen_complete: incidence matrix too large");
  }
  const auto subsets = k_subsets(v, k);
  NatMatrix chi = NatMatrix::Zero(v, static_cast<Index>(subsets.size()));
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    for (Index p : subsets[j]) chi(p, static_cast<Index>(j)) = 1;
  }
  return ClassicalDesign(std::move(chi));
}

namespace {

class DesignSearch {
 public:
  explicit DesignSearch(const SearchRequest& req)
      : req_(req),
        subsets_(k_subsets(req.v, static_cast<Index>(req.k))),
        row_sums_(static_cast<std::size_t>(req.v), 0),
        pairs_(static_cast<std::size_t>(req.v * req.v), 0) {}

  std::vector<ClassicalDesign> run() {
    if (req_.limit > 0 && !subsets_.empty()) extend(0, 0);
    return std::move(found_);
  }

 private:
  bool full() const { return found_.size() >= req_.limit; }

  bool fits(const std::vector<Index>& s) const {
    for (Index p : s) {
      if (row_sums_[static_cast<std::size_t>(p)] + 1 > req_.r) return false;
    }
    for (std::size_t x = 0; x < s.size(); ++x) {
      for (std::size_t y = x + 1; y < s.size(); ++y) {
        if (pairs_[pair_index(s[x], s[y])] + 1 > req_.lambda) return false;
      }
    }
    return true;
  }

  void apply(const std::vector<Index>& s, bool add) {
    for (Index p : s) {
      auto& sum = row_sums_[static_cast<std::size_t>(p)];
      sum = add ? sum + 1 : sum - 1;
    }
    for (std::size_t x = 0; x < s.size(); ++x) {
      for (std::size_t y = x + 1; y < s.size(); ++y) {
        auto& count = pairs_[pair_index(s[x], s[y])];
        count = add ? count + 1 : count - 1;
      }
    }
  }

  std::size_t pair_index(Index a, Index b) const {
    return static_cast<std::size_t>(a * req_.v + b);
  }

  // Every point still needing more incidences than there are columns left
  // makes the branch dead.
  bool completable(Index next_col) const {
    const auto remaining = static_cast<Nat>(req_.b - next_col);
    return std::all_of(row_sums_.begin(), row_sums_.end(), [&](Nat s) {
      return req_.r - s <= remaining;
    });
  }

  void extend(Index col, std::size_t first_choice) {
    if (full()) return;
    if (col == req_.b) {
      record();
      return;
    }
    const std::size_t start = req_.canonical_only ? first_choice : 0;
    for (std::size_t c = start; c < subsets_.size() && !full(); ++c) {
      const auto& s = subsets_[c];
      if (!fits(s)) continue;
      apply(s, true);
      chosen_.push_back(c);
      if (completable(col + 1)) extend(col + 1, c);
      chosen_.pop_back();
      apply(s, false);
    }
  }

  void record() {
    NatMatrix chi = NatMatrix::Zero(req_.v, req_.b);
    for (std::size_t j = 0; j < chosen_.size(); ++j) {
      for (Index p : subsets_[chosen_[j]]) chi(p, static_cast<Index>(j)) = 1;
    }
    ClassicalDesign d(std::move(chi));
    const DesignParams params = classify(d);
    if (params.k != req_.k || params.r != req_.r ||
        (req_.v >= 2 && params.lambda != req_.lambda)) {
      // Unreachable: bounded row sums and pair counts plus the counting
      // identities force equality.
      throw Error("search_designs produced a design that fails classify");
    }
    found_.push_back(std::move(d));
  }

  const SearchRequest& req_;
  std::vector<std::vector<Index>> subsets_;
  std::vector<Nat> row_sums_;
  std::vector<Nat> pairs_;
  std::vector<std::size_t> chosen_;
  std::vector<ClassicalDesign> found_;
};

}  // namespace

std::vector<ClassicalDesign> search_designs(const SearchRequest& req) {
  if (req.v < 1 || req.b < 1) {
    throw DomainError("search_designs needs v >= 1 and b >= 1");
  }
  if (req.v > 64) throw DomainError("search_designs supports v <= 64");
  DesignParams params;
  params.k = req.k;
  params.r = req.r;
  params.lambda = req.lambda;
  const ClassicalIdentities ids = check_identities(req.v, req.b, params);
  if (!ids.pass()) {
    const auto& bad = ids.count.pass ? *ids.balance : ids.count;
    throw InfeasibleError("infeasible by the counting identities: " + bad.name + " gives " +
                          std::to_string(bad.lhs) + " != " +
                          std::to_string(bad.rhs));
  }
  if (req.k > static_cast<Nat>(req.v)) {
    throw InfeasibleError("infeasible: k exceeds v");
  }
  return DesignSearch(req).run();
}

ClassicalDesign sort_columns(const ClassicalDesign& d) {
  const NatMatrix& chi = d.incidence();
  std::vector<Index> order(static_cast<std::size_t>(chi.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  auto column = [&](Index j) {
    std::vector<Nat> c(static_cast<std::size_t>(chi.rows()));
    for (Index i = 0; i < chi.rows(); ++i) c[static_cast<std::size_t>(i)] = chi(i, j);
    return c;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return column(a) < column(b); });
  NatMatrix out(chi.rows(), chi.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    out.col(static_cast<Index>(j)) = chi.col(order[j]);
  }
  return ClassicalDesign(std::move(out));
}

bool isomorphic(const ClassicalDesign& a, const ClassicalDesign& b) {
  if (a.points() != b.points() || a.blocks() != b.blocks()) return false;
  if (a.points() > 10) {
    throw DomainError("isomorphic: exhaustive check limited to v <= 10");
  }
  const ClassicalDesign target = sort_columns(b);
  std::vector<Index> perm(static_cast<std::size_t>(a.points()));
  std::iota(perm.begin(), perm.end(), Index{0});
  NatMatrix permuted(a.points(), a.blocks());
  do {
    for (Index i = 0; i < a.points(); ++i) {
      permuted.row(perm[static_cast<std::size_t>(i)]) = a.incidence().row(i);
    }
    if (sort_columns(ClassicalDesign(permuted)) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace qdesign

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

#include "qdesign/report.hpp"

#include <sstream>

namespace qdesign {

using nlohmann::json;

const char* const kIdentityOrientationNote =
    "Counting identities are checked as b*k = v*r and "
    "lambda*(v-1) = r*(k-1), with dim(A) = b blocks and dim(D) = v points. "
    "The categorical forms are accepted in the orientation "
    "k*dim(A) = r*dim(D) and lambda*(dim(D)-1) = r*(k-1); the variants "
    "k*dim(D) = r*dim(A) and lambda*(dim(D)-1) = k*(r-1) disagree with their "
    "own derivations and with the classical identities, and are not used.";

bool DesignReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

json DesignReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    json entry{{"name", c.name}, {"pass", c.pass}, {"values", c.values}};
    if (!c.witness.is_null()) entry["witness"] = c.witness;
    list.push_back(std::move(entry));
  }
  return json{{"schema", kReportSchema},
              {"subject", subject},
              {"input_digest", input_digest},
              {"tolerance", {{"abs_eps", tol.abs_eps}, {"rel_eps", tol.rel_eps}}},
              {"parameters", parameters},
              {"properties", properties},
              {"checks", std::move(list)},
              {"notes", notes},
              {"pass", pass()},
              {"tool_version", kToolVersion}};
}

std::string DesignReport::to_json_text() const { return to_json().dump() + "\n"; }

namespace {

std::string scalar_text(const json& x) {
  if (x.is_string()) return x.get<std::string>();
  return x.dump();
}

void flatten(std::ostringstream& out, const json& obj, const std::string& label) {
  if (obj.empty()) return;
  out << label << "\n";
  for (const auto& [key, value] : obj.items()) {
    out << "  " << key << " = " << scalar_text(value) << "\n";
  }
}

}  // namespace

std::string DesignReport::to_text() const {
  std::ostringstream out;
  out << "subject: " << subject;
  if (!input_digest.empty()) out << " (" << input_digest << ")";
  out << "\ntolerance: abs " << tol.abs_eps << ", rel " << tol.rel_eps << "\n";
  flatten(out, parameters, "parameters:");
  flatten(out, properties, "properties:");
  if (!checks.empty()) out << "checks:\n";
  for (const auto& c : checks) {
    out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
    if (!c.values.empty()) out << "  " << c.values.dump();
    if (!c.witness.is_null()) out << "  witness " << c.witness.dump();
    out << "\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  out << "verdict: " << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

template <typename T>
Check equation_check(const EquationCheck<T>& eq) {
  Check c;
  c.name = eq.name;
  c.pass = eq.pass;
  c.values = {{"lhs", eq.lhs}, {"rhs", eq.rhs}};
  if (!eq.pass) c.witness = {{"lhs", eq.lhs}, {"rhs", eq.rhs}};
  return c;
}

json opt(const std::optional<Nat>& x) { return x ? json(*x) : json(nullptr); }
json opt(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

// First column (or row) whose sum differs from the first one.
json sum_witness(const NatMatrix& m, bool columns) {
  const Index n = columns ? m.cols() : m.rows();
  auto sum = [&](Index x) {
    Nat s = 0;
    const Index len = columns ? m.rows() : m.cols();
    for (Index y = 0; y < len; ++y) {
      s = checked_add(s, columns ? m(y, x) : m(x, y));
    }
    return s;
  };
  const Nat first = sum(0);
  for (Index x = 1; x < n; ++x) {
    if (sum(x) != first) {
      return {{columns ? "block" : "point", x}, {"sum", sum(x)},
              {"expected", first}};
    }
  }
  return nullptr;
}

json balance_witness(const NatMatrix& chi, Nat r) {
  const NatMatrix gram = mat_mul(chi, transpose(chi));
  const Nat lambda = gram(0, 1);
  for (Index i = 0; i < gram.rows(); ++i) {
    for (Index j = 0; j < gram.cols(); ++j) {
      const Nat expected = i == j ? r : lambda;
      if (gram(i, j) != expected) {
        return {{"cell", {i, j}}, {"value", gram(i, j)},
                {"expected", expected}};
      }
    }
  }
  return nullptr;
}

}  // namespace

DesignReport classical_report(const ClassicalDesign& d, bool block_mode,
                              std::string input_digest) {
  DesignReport rep;
  rep.subject = std::string(kClassicalSchema);
  rep.input_digest = std::move(input_digest);
  const DesignParams params = classify(d);
  rep.parameters = {{"v", d.points()},        {"b", d.blocks()},
                    {"k", opt(params.k)},     {"r", opt(params.r)},
                    {"lambda", opt(params.lambda)},
                    {"symmetric", params.symmetric},
                    {"zero_one", d.zero_one()}};
  if (block_mode) {
    Check uniform{"k-uniform", params.k.has_value()};
    if (!uniform.pass) uniform.witness = sum_witness(d.incidence(), true);
    Check regular{"r-regular", params.r.has_value()};
    if (!regular.pass) regular.witness = sum_witness(d.incidence(), false);
    rep.checks.push_back(std::move(uniform));
    rep.checks.push_back(std::move(regular));
    if (params.uniform_regular()) {
      Check balanced{"lambda-balanced", params.lambda.has_value()};
      if (!balanced.pass) {
        balanced.witness = d.points() < 2
                               ? json{{"reason", "fewer than two points"}}
                               : balance_witness(d.incidence(), *params.r);
      }
      rep.checks.push_back(std::move(balanced));
    }
  }
  if (params.uniform_regular()) {
    const ClassicalIdentities ids =
        check_identities(d.points(), d.blocks(), params);
    rep.checks.push_back(equation_check(ids.count));
    if (ids.balance) rep.checks.push_back(equation_check(*ids.balance));
    rep.notes.push_back(kIdentityOrientationNote);
  }
  return rep;
}

DesignReport quantum_report(const QuantumDesign& qd, const Tolerance& tol,
                            std::string input_digest) {
  DesignReport rep;
  rep.subject = std::string(kQuantumSchema);
  rep.input_digest = std::move(input_digest);
  rep.tol = tol;
  rep.parameters = {{"v", qd.size()}, {"b", qd.dim()}};

  const ValidationReport valid = validate(qd, tol);
  Check projectors{"projectors", valid.pass};
  double worst_h = 0.0, worst_i = 0.0;
  for (std::size_t i = 0; i < valid.projectors.size(); ++i) {
    const auto& res = valid.projectors[i];
    worst_h = std::max(worst_h, res.hermiticity);
    worst_i = std::max(worst_i, res.idempotency);
    if (!res.pass && projectors.witness.is_null()) {
      projectors.witness = {{"projector", i},
                            {"hermiticity_residual", res.hermiticity},
                            {"idempotency_residual", res.idempotency}};
    }
  }
  projectors.values = {{"max_hermiticity_residual", worst_h},
                       {"max_idempotency_residual", worst_i}};
  rep.checks.push_back(std::move(projectors));
  if (!valid.pass) return rep;

  const QuantumParams params = classify(qd, tol);
  rep.parameters["r"] = opt(params.r);
  rep.parameters["k"] = opt(params.k);
  rep.parameters["degree"] = params.degree;
  rep.parameters["lambda_set"] = params.lambda_set;
  rep.parameters["commutative"] = params.commutative;
  rep.properties["uniformity_residual"] = params.uniformity_residual;

  Check reality{"pair traces real", tol.small(params.max_imag_pair_trace)};
  reality.values = {{"max_abs_imag", params.max_imag_pair_trace}};
  if (!reality.pass) reality.witness = {{"max_abs_imag", params.max_imag_pair_trace}};
  rep.checks.push_back(std::move(reality));

  Check nonneg{"pair traces nonnegative", params.min_pair_trace >= -tol.abs_eps};
  nonneg.values = {{"min", params.min_pair_trace}};
  if (!nonneg.pass) nonneg.witness = {{"min", params.min_pair_trace}};
  rep.checks.push_back(std::move(nonneg));

  if (params.r && params.k) {
    const QuantumIdentities ids =
        check_identities(qd.size(), qd.dim(), params, tol);
    rep.checks.push_back(equation_check(ids.count));
    if (ids.balance) rep.checks.push_back(equation_check(*ids.balance));
    rep.notes.push_back(kIdentityOrientationNote);
  }
  return rep;
}

DesignReport cpmap_report(const CpMap& f, const Tolerance& tol,
                          std::string input_digest) {
  DesignReport rep;
  rep.subject = std::string(kCpMapSchema);
  rep.input_digest = std::move(input_digest);
  rep.tol = tol;
  rep.parameters = {{"in", to_string(f.in)}, {"out", to_string(f.out)}};

  const CpCheck cp = is_cp(f, tol);
  Check cp_check{"completely positive", cp.cp};
  cp_check.values = {{"min_choi_eigenvalue", cp.min_eigenvalue}};
  if (!cp.cp) cp_check.witness = {{"eigenvalue", cp.min_eigenvalue}};
  rep.checks.push_back(std::move(cp_check));

  const TraceCheck tp = is_trace_preserving(f, tol);
  rep.properties["trace_preserving"] = tp.preserving;
  rep.properties["trace_preserving_residual"] = tp.residual;

  if (f.in.kind != Algebra::Kind::Matrix || f.out.kind != Algebra::Kind::Matrix) {
    rep.notes.push_back(
        "design conditions are evaluated for Matrix -> Matrix maps only");
    return rep;
  }
  const CpDesignReport design = verify_cp_design(f, tol);
  rep.parameters["k"] = opt(design.k);
  rep.parameters["r"] = opt(design.r);

  Check uniform{"uniform", design.k.has_value()};
  uniform.values = {{"k", design.k_fit}, {"residual", design.uniformity_residual}};
  if (!uniform.pass) {
    uniform.witness = {{"residual", design.uniformity_residual}};
  }
  Check regular{"regular", design.r.has_value()};
  regular.values = {{"r", design.r_fit}, {"residual", design.regularity_residual}};
  if (!regular.pass) {
    regular.witness = {{"residual", design.regularity_residual}};
  }
  rep.checks.push_back(std::move(uniform));
  rep.checks.push_back(std::move(regular));

  rep.properties["lambda_balanced"] = design.lambda_balanced;
  rep.properties["lambda_superoperator"] = design.superoperator.lambda;
  rep.properties["lambda_residual_superoperator"] = design.superoperator.residual;
  if (design.choi_reading) {
    rep.properties["lambda_choi_reading"] = design.choi_reading->lambda;
    rep.properties["lambda_residual_choi_reading"] =
        design.choi_reading->residual;
    rep.properties["r_choi_reading"] = *design.choi_reading_r;
  }
  rep.notes.push_back(
      "lambda is fitted, not asserted: lambda_balanced is true only when the "
      "superoperator residual is within tolerance");
  return rep;
}

DesignReport mub_report(const MubFamily& f, const Tolerance& tol) {
  DesignReport rep;
  rep.subject = "mub-family";
  rep.tol = tol;
  rep.parameters = {{"d", f.d}, {"bases", f.bases.size()}};
  const MubReport mub = mub_verify(f, tol);
  Check check{"mutually unbiased", mub.pass()};
  check.values = {{"max_trace_law_residual", mub.max_trace_law_residual}};
  if (!mub.pass()) {
    check.witness = {{"failure", to_string(mub.failure)},
                     {"expected", mub.expected},
                     {"observed", mub.observed}};
    if (mub.witness) check.witness["pair"] = *mub.witness;
  }
  rep.checks.push_back(std::move(check));
  return rep;
}

DesignReport hom_report(const ClassicalDesign& src, const ClassicalDesign& dst,
                        const HomPair& h, const Tolerance& tol,
                        std::string input_digest) {
  DesignReport rep;
  rep.subject = "design-homomorphism";
  rep.input_digest = std::move(input_digest);
  rep.tol = tol;
  rep.parameters = {{"src", {{"v", src.points()}, {"b", src.blocks()}}},
                    {"dst", {{"v", dst.points()}, {"b", dst.blocks()}}}};
  const HomCheck hom = verify_hom(src, dst, h);
  Check square{"F_v chi = chi' F_b", hom.commutes};
  if (!hom.commutes) {
    square.witness = {{"cell", {hom.cell->first, hom.cell->second}},
                      {"lhs", hom.lhs},
                      {"rhs", hom.rhs}};
  }
  rep.checks.push_back(std::move(square));

  const bool blocks = src.zero_one() && dst.zero_one() &&
                      classify(src).block() && classify(dst).block();
  if (hom.commutes && blocks) {
    const HomLiftReport lift = functor_q_on_hom(src, dst, h, tol);
    rep.properties["lift_monoid_residual"] = lift.monoid_residual;
    rep.properties["lift_comonoid_residual"] = lift.comonoid_residual;
    rep.properties["lift_design_residual"] = lift.design_residual;
    rep.properties["lift_outer_residual"] = lift.outer_residual;
    rep.properties["lift_commutes"] = lift.pass;
  }
  return rep;
}

DesignReport search_report(const SearchRequest& req) {
  DesignReport rep;
  rep.subject = "design-search";
  rep.parameters = {{"v", req.v},         {"b", req.b},
                    {"k", req.k},         {"r", req.r},
                    {"lambda", req.lambda},
                    {"canonical", req.canonical_only}};
  DesignParams params;
  params.k = req.k;
  params.r = req.r;
  params.lambda = req.lambda;
  const ClassicalIdentities ids = check_identities(req.v, req.b, params);
  Check feasible{"counting identities", ids.pass()};
  feasible.values = {{"b*k", ids.count.lhs},
                     {"r*v", ids.count.rhs},
                     {"lambda*(v-1)", ids.balance->lhs},
                     {"r*(k-1)", ids.balance->rhs}};
  if (!feasible.pass) {
    feasible.witness = ids.count.pass ? json{{"identity", ids.balance->name},
                                             {"lhs", ids.balance->lhs},
                                             {"rhs", ids.balance->rhs}}
                                      : json{{"identity", ids.count.name},
                                             {"lhs", ids.count.lhs},
                                             {"rhs", ids.count.rhs}};
  }
  rep.checks.push_back(std::move(feasible));
  if (!ids.pass()) return rep;

  const std::vector<ClassicalDesign> found = search_designs(req);
  json solutions = json::array();
  for (const auto& d : found) {
    solutions.push_back(json::parse(serialize(d)).at("incidence"));
  }
  Check any{"solutions found", !found.empty()};
  any.values = {{"count", found.size()}};
  if (found.empty()) any.witness = {{"count", 0}};
  rep.checks.push_back(std::move(any));
  rep.properties["solutions"] = std::move(solutions);
  return rep;
}

}  // namespace qdesign

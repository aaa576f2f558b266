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

#include <string>
#include <vector>

#include <json.hpp>

#include "qdesign/catalog_io.hpp"
#include "qdesign/classical.hpp"
#include "qdesign/cpmaps.hpp"
#include "qdesign/quantum.hpp"

namespace qdesign {

inline constexpr std::string_view kToolVersion = "qdesign 0.1.0";

/// One pass/fail verdict. Failed checks always carry a witness.
struct Check {
  std::string name;
  bool pass = false;
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json witness = nullptr;
};

/// The "design-report/1" document: detected parameters, verdicts with the
/// tolerance used, informational properties and free-text notes.
struct DesignReport {
  std::string subject;
  std::string input_digest;
  Tolerance tol;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json properties = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const;
  nlohmann::json to_json() const;
  std::string to_json_text() const;  // canonical, LF-terminated
  std::string to_text() const;       // human-readable table
};

/// Exit status contract shared by every front end.
enum class Verdict : int { Pass = 0, Fail = 1, Usage = 2 };

DesignReport classical_report(const ClassicalDesign& d, bool block_mode,
                              std::string input_digest);

DesignReport quantum_report(const QuantumDesign& qd, const Tolerance& tol,
                            std::string input_digest);

DesignReport cpmap_report(const CpMap& f, const Tolerance& tol,
                          std::string input_digest);

DesignReport mub_report(const MubFamily& f, const Tolerance& tol);

DesignReport hom_report(const ClassicalDesign& src, const ClassicalDesign& dst,
                        const HomPair& h, const Tolerance& tol,
                        std::string input_digest);

DesignReport search_report(const SearchRequest& request);

/// Orientation of the counting identities, included in design reports.
extern const char* const kIdentityOrientationNote;

}  // namespace qdesign

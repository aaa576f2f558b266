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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdesign/classical.hpp"
#include "qdesign/cpmaps.hpp"
#include "qdesign/quantum.hpp"

namespace qdesign {

inline constexpr std::string_view kClassicalSchema = "classical-design/1";
inline constexpr std::string_view kQuantumSchema = "quantum-design/1";
inline constexpr std::string_view kCpMapSchema = "cp-map/1";
inline constexpr std::string_view kReportSchema = "design-report/1";

/// Malformed document. `where` is a JSON-pointer-like location.
class FormatError : public Error {
 public:
  FormatError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Canonical text: sorted keys, no insignificant whitespace, one trailing LF,
// doubles in shortest round-trip form.
std::string serialize(const ClassicalDesign& d);
std::string serialize(const QuantumDesign& qd);
std::string serialize(const CpMap& f);

ClassicalDesign parse_classical(std::string_view text);
QuantumDesign parse_quantum(std::string_view text);
CpMap parse_cpmap(std::string_view text);

using AnyDocument = std::variant<ClassicalDesign, QuantumDesign, CpMap>;

/// Dispatches on the "schema" field.
AnyDocument parse_any(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Short content digest used in reports ("fnv1a64:<16 hex digits>").
std::string digest(std::string_view text);

/// The bundled catalog lives in data/catalog; QDESIGN_CATALOG_DIR overrides.
std::filesystem::path catalog_dir();

struct CatalogEntry {
  std::string name;
  std::string file;
  std::string kind;       // "classical" | "quantum" | "cp-map"
  nlohmann::json params;  // recorded parameters
};

std::vector<CatalogEntry> catalog_entries();
CatalogEntry catalog_entry(std::string_view name);
AnyDocument catalog_get(std::string_view name);
ClassicalDesign catalog_get_classical(std::string_view name);
QuantumDesign catalog_get_quantum(std::string_view name);
CpMap catalog_get_cpmap(std::string_view name);

}  // namespace qdesign

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

#include "qdesign/catalog_io.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qdesign {

using nlohmann::json;

namespace {

std::string canonical(const json& doc) { return doc.dump() + "\n"; }

json complex_matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw FormatError("", std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& doc, const std::string& key,
                  const std::string& where) {
  if (!doc.is_object()) throw FormatError(where, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(where + "/" + key, "missing field");
  return *it;
}

void expect_schema(const json& doc, std::string_view schema) {
  const json& s = field(doc, "schema", "");
  if (!s.is_string() || s.get<std::string>() != schema) {
    throw FormatError("/schema", "expected \"" + std::string(schema) + "\"");
  }
}

Index count_field(const json& doc, const std::string& key, Index min_value) {
  const json& x = field(doc, key, "");
  if (!x.is_number_integer() || x.get<std::int64_t>() < min_value) {
    throw FormatError("/" + key, "expected an integer >= " +
                                     std::to_string(min_value));
  }
  return x.get<std::int64_t>();
}

const json& array_of(const json& x, std::size_t size, const std::string& where) {
  if (!x.is_array()) throw FormatError(where, "expected an array");
  if (x.size() != size) {
    throw FormatError(where, "expected " + std::to_string(size) +
                                 " entries, got " + std::to_string(x.size()));
  }
  return x;
}

double finite_number(const json& x, const std::string& where) {
  if (!x.is_number()) throw FormatError(where, "expected a finite number");
  const double value = x.get<double>();
  if (!std::isfinite(value)) throw FormatError(where, "non-finite number");
  return value;
}

ComplexMatrix parse_complex_matrix(const json& x, Index rows, Index cols,
                                   const std::string& where) {
  array_of(x, static_cast<std::size_t>(rows), where);
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const std::string row_at = where + "/" + std::to_string(i);
    const json& row = array_of(x[static_cast<std::size_t>(i)],
                               static_cast<std::size_t>(cols), row_at);
    for (Index j = 0; j < cols; ++j) {
      const std::string at = row_at + "/" + std::to_string(j);
      const json& entry = array_of(row[static_cast<std::size_t>(j)], 2, at);
      m(i, j) = Complex(finite_number(entry[0], at + "/0"),
                        finite_number(entry[1], at + "/1"));
    }
  }
  return m;
}

json algebra_json(const Algebra& a) {
  return json{{"kind", a.kind == Algebra::Kind::Matrix ? "matrix"
                                                       : "commutative"},
              {"n", a.n}};
}

Algebra parse_algebra(const json& x, const std::string& where) {
  const json& kind = field(x, "kind", where);
  const json& n = field(x, "n", where);
  if (!n.is_number_integer() || n.get<std::int64_t>() < 1) {
    throw FormatError(where + "/n", "expected an integer >= 1");
  }
  if (kind == "matrix") return Algebra::matrix(n.get<std::int64_t>());
  if (kind == "commutative") return Algebra::commutative(n.get<std::int64_t>());
  throw FormatError(where + "/kind", "expected \"matrix\" or \"commutative\"");
}

}  // namespace

std::string serialize(const ClassicalDesign& d) {
  json rows = json::array();
  for (Index i = 0; i < d.points(); ++i) {
    json row = json::array();
    for (Index j = 0; j < d.blocks(); ++j) row.push_back(d.incidence()(i, j));
    rows.push_back(std::move(row));
  }
  return canonical(json{{"schema", kClassicalSchema},
                        {"v", d.points()},
                        {"b", d.blocks()},
                        {"incidence", std::move(rows)}});
}

std::string serialize(const QuantumDesign& qd) {
  json projectors = json::array();
  for (const auto& p : qd.projectors()) {
    projectors.push_back(complex_matrix_json(p));
  }
  return canonical(json{{"schema", kQuantumSchema},
                        {"dim", qd.dim()},
                        {"projectors", std::move(projectors)}});
}

std::string serialize(const CpMap& f) {
  return canonical(json{{"schema", kCpMapSchema},
                        {"in", algebra_json(f.in)},
                        {"out", algebra_json(f.out)},
                        {"convention", "superoperator"},
                        {"matrix", complex_matrix_json(f.m)}});
}

ClassicalDesign parse_classical(std::string_view text) {
  const json doc = parse_json(text);
  expect_schema(doc, kClassicalSchema);
  const Index v = count_field(doc, "v", 1);
  const Index b = count_field(doc, "b", 1);
  const json& rows =
      array_of(field(doc, "incidence", ""), static_cast<std::size_t>(v),
               "/incidence");
  NatMatrix chi(v, b);
  for (Index i = 0; i < v; ++i) {
    const std::string row_at = "/incidence/" + std::to_string(i);
    const json& row = array_of(rows[static_cast<std::size_t>(i)],
                               static_cast<std::size_t>(b), row_at);
    for (Index j = 0; j < b; ++j) {
      const json& x = row[static_cast<std::size_t>(j)];
      if (!x.is_number_unsigned() &&
          !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
        throw FormatError(row_at + "/" + std::to_string(j),
                          "expected a nonnegative integer");
      }
      chi(i, j) = x.get<Nat>();
    }
  }
  return ClassicalDesign(std::move(chi));
}

QuantumDesign parse_quantum(std::string_view text) {
  const json doc = parse_json(text);
  expect_schema(doc, kQuantumSchema);
  const Index dim = count_field(doc, "dim", 1);
  const json& list = field(doc, "projectors", "");
  if (!list.is_array() || list.empty()) {
    throw FormatError("/projectors", "expected a nonempty array");
  }
  std::vector<ComplexMatrix> projectors;
  for (std::size_t i = 0; i < list.size(); ++i) {
    projectors.push_back(parse_complex_matrix(
        list[i], dim, dim, "/projectors/" + std::to_string(i)));
  }
  return QuantumDesign(dim, std::move(projectors));
}

CpMap parse_cpmap(std::string_view text) {
  const json doc = parse_json(text);
  expect_schema(doc, kCpMapSchema);
  const Algebra in = parse_algebra(field(doc, "in", ""), "/in");
  const Algebra out = parse_algebra(field(doc, "out", ""), "/out");
  const json& convention = field(doc, "convention", "");
  if (convention != "superoperator") {
    throw FormatError("/convention", "expected \"superoperator\"");
  }
  ComplexMatrix m = parse_complex_matrix(field(doc, "matrix", ""),
                                         out.coord_dim(), in.coord_dim(),
                                         "/matrix");
  return CpMap(in, out, std::move(m));
}

AnyDocument parse_any(std::string_view text) {
  const json doc = parse_json(text);
  const json& schema = field(doc, "schema", "");
  if (schema == kClassicalSchema) return parse_classical(text);
  if (schema == kQuantumSchema) return parse_quantum(text);
  if (schema == kCpMapSchema) return parse_cpmap(text);
  throw FormatError("/schema", "unknown schema");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::filesystem::path catalog_dir() {
  if (const char* env = std::getenv("QDESIGN_CATALOG_DIR"); env && *env) {
    return env;
  }
  return QDESIGN_CATALOG_DIR;
}

std::vector<CatalogEntry> catalog_entries() {
  const json index = parse_json(read_text(catalog_dir() / "index.json"));
  std::vector<CatalogEntry> out;
  for (const auto& [name, entry] : index.at("entries").items()) {
    out.push_back({name, entry.at("file").get<std::string>(),
                   entry.at("kind").get<std::string>(), entry.at("params")});
  }
  return out;
}

CatalogEntry catalog_entry(std::string_view name) {
  for (auto& e : catalog_entries()) {
    if (e.name == name) return e;
  }
  throw DomainError("no catalog entry named \"" + std::string(name) + "\"");
}

AnyDocument catalog_get(std::string_view name) {
  return parse_any(read_text(catalog_dir() / catalog_entry(name).file));
}

namespace {

template <typename T>
T catalog_get_as(std::string_view name, const char* kind) {
  AnyDocument doc = catalog_get(name);
  if (auto* value = std::get_if<T>(&doc)) return std::move(*value);
  throw DomainError("catalog entry \"" + std::string(name) + "\" is not a " +
                    kind);
}

}  // namespace

ClassicalDesign catalog_get_classical(std::string_view name) {
  return catalog_get_as<ClassicalDesign>(name, "classical design");
}

QuantumDesign catalog_get_quantum(std::string_view name) {
  return catalog_get_as<QuantumDesign>(name, "quantum design");
}

CpMap catalog_get_cpmap(std::string_view name) {
  return catalog_get_as<CpMap>(name, "CP map");
}

}  // namespace qdesign

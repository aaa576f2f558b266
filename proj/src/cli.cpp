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

#include "qdesign/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "qdesign/catalog_io.hpp"
#include "qdesign/classical.hpp"
#include "qdesign/cpmaps.hpp"
#include "qdesign/quantum.hpp"
#include "qdesign/report.hpp"

namespace qdesign {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Io {
  std::istream& in;
  std::ostream& out;

  std::string read(const std::string& path) const {
    if (path == "-") {
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
    return read_text(path);
  }

  void write(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out << text;
    } else {
      write_text(path, text);
    }
  }
};

int emit(const Io& io, const DesignReport& rep, bool as_json) {
  io.out << (as_json ? rep.to_json_text() : rep.to_text());
  return static_cast<int>(rep.pass() ? Verdict::Pass : Verdict::Fail);
}

std::vector<Index> parse_map(const std::string& text, const char* flag) {
  std::istringstream in(text);
  std::vector<Index> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < 1) {
      throw UsageError(std::string(flag) + ": \"" + token +
                       "\" is not a positive 1-based index");
    }
    out.push_back(static_cast<Index>(value - 1));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical and quantum block design verification"};
  app.name("qdesign");
  app.fallthrough();
  app.require_subcommand(1);

  Tolerance tol;
  bool as_json = false;
  app.add_option("--abs-eps", tol.abs_eps, "absolute tolerance floor");
  app.add_option("--rel-eps", tol.rel_eps, "relative tolerance factor");
  app.add_flag("--json", as_json, "emit a design-report/1 document");

  std::string file, file2, output = "-";
  bool block_mode = false;

  auto* verify_classical =
      app.add_subcommand("verify-classical", "classify an incidence matrix");
  verify_classical->add_option("FILE", file)->required();
  verify_classical->add_flag("--block", block_mode,
                             "require a (v,k,r,b,lambda) block design");

  auto* verify_quantum =
      app.add_subcommand("verify-quantum", "validate and classify projectors");
  verify_quantum->add_option("FILE", file)->required();

  auto* verify_cpmap =
      app.add_subcommand("verify-cpmap", "check a CP map and its design form");
  verify_cpmap->add_option("FILE", file)->required();

  auto* generate = app.add_subcommand("generate", "write a known design");
  generate->add_option("-o,--output", output, "output file");
  generate->require_subcommand(1);
  Nat order = 0, mub_dim = 0, mub_count = 0;
  Index gen_v = 0, gen_k = 0;
  auto* gen_plane =
      generate->add_subcommand("projective-plane", "PG(2, d) for prime d");
  gen_plane->add_option("--order", order)->required();
  auto* gen_complete_cmd =
      generate->add_subcommand("complete", "all k-subsets of v points");
  gen_complete_cmd->add_option("--v", gen_v)->required();
  gen_complete_cmd->add_option("--k", gen_k)->required();
  auto* gen_mub = generate->add_subcommand("mub", "mutually unbiased bases");
  gen_mub->add_option("--dim", mub_dim)->required();
  gen_mub->add_option("--count", mub_count)->required();

  auto* convert = app.add_subcommand("convert", "classical <-> quantum");
  convert->add_option("-o,--output", output, "output file");
  convert->require_subcommand(1);
  auto* c2q = convert->add_subcommand("c2q", "diagonal projector design");
  c2q->add_option("FILE", file)->required();
  auto* q2c = convert->add_subcommand("q2c", "incidence matrix of a "
                                             "commutative design");
  q2c->add_option("FILE", file)->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "Kronecker product");
  tensor_cmd->add_option("FILE1", file)->required();
  tensor_cmd->add_option("FILE2", file2)->required();
  tensor_cmd->add_option("-o,--output", output, "output file");

  auto* dual_cmd = app.add_subcommand("dual", "transpose incidence matrix");
  dual_cmd->add_option("FILE", file)->required();
  dual_cmd->add_option("-o,--output", output, "output file");

  SearchRequest search;
  search.canonical_only = false;
  std::size_t limit = 0;
  auto* search_cmd = app.add_subcommand("search", "backtracking design search");
  search_cmd->add_option("--v", search.v)->required();
  search_cmd->add_option("--b", search.b)->required();
  search_cmd->add_option("--k", search.k)->required();
  search_cmd->add_option("--r", search.r)->required();
  search_cmd->add_option("--lambda", search.lambda)->required();
  search_cmd->add_option("--limit", limit, "maximum number of designs (0 = all)");
  search_cmd->add_flag("--canonical", search.canonical_only,
                       "columns nondecreasing in lexicographic order");

  std::string fv, fb;
  auto* hom = app.add_subcommand("hom-check", "verify a design homomorphism");
  hom->add_option("SRC", file)->required();
  hom->add_option("DST", file2)->required();
  hom->add_option("--fv", fv, "1-based point images")->required();
  hom->add_option("--fb", fb, "1-based block images")->required();

  std::string catalog_name;
  auto* catalog = app.add_subcommand("catalog", "list or print bundled designs");
  catalog->add_option("NAME", catalog_name);

  std::vector<const char*> argv{"qdesign"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Usage);
  }

  const Io io{in, out};
  try {
    if (!tol.valid()) throw UsageError("tolerances must be finite and >= 0");

    if (verify_classical->parsed()) {
      const std::string text = io.read(file);
      return emit(io, classical_report(parse_classical(text), block_mode,
                                       digest(text)),
                  as_json);
    }
    if (verify_quantum->parsed()) {
      const std::string text = io.read(file);
      return emit(io, quantum_report(parse_quantum(text), tol, digest(text)),
                  as_json);
    }
    if (verify_cpmap->parsed()) {
      const std::string text = io.read(file);
      return emit(io, cpmap_report(parse_cpmap(text), tol, digest(text)),
                  as_json);
    }
    if (generate->parsed()) {
      if (gen_plane->parsed()) {
        io.write(output, serialize(gen_projective_plane(order)));
      } else if (gen_complete_cmd->parsed()) {
        io.write(output, serialize(gen_complete(gen_v, gen_k)));
      } else {
        const MubFamily family = mub_generate(mub_dim, mub_count);
        const MubReport check = mub_verify(family, tol);
        if (!check.pass()) {
          err << mub_report(family, tol).to_text();
          return static_cast<int>(Verdict::Fail);
        }
        io.write(output, serialize(*check.design));
      }
      return 0;
    }
    if (convert->parsed()) {
      if (c2q->parsed()) {
        io.write(output, serialize(functor_q(parse_classical(io.read(file)))));
      } else {
        io.write(output,
                 serialize(to_classical(parse_quantum(io.read(file)), tol)));
      }
      return 0;
    }
    if (tensor_cmd->parsed()) {
      const AnyDocument a = parse_any(io.read(file));
      const AnyDocument b = parse_any(io.read(file2));
      if (std::holds_alternative<ClassicalDesign>(a) &&
          std::holds_alternative<ClassicalDesign>(b)) {
        io.write(output, serialize(tensor(std::get<ClassicalDesign>(a),
                                          std::get<ClassicalDesign>(b))));
      } else if (std::holds_alternative<QuantumDesign>(a) &&
                 std::holds_alternative<QuantumDesign>(b)) {
        io.write(output, serialize(tensor(std::get<QuantumDesign>(a),
                                          std::get<QuantumDesign>(b))));
      } else {
        throw UsageError("tensor needs two classical or two quantum designs");
      }
      return 0;
    }
    if (dual_cmd->parsed()) {
      io.write(output, serialize(dual(parse_classical(io.read(file)))));
      return 0;
    }
    if (search_cmd->parsed()) {
      if (limit > 0) search.limit = limit;
      return emit(io, search_report(search), as_json);
    }
    if (hom->parsed()) {
      const std::string src_text = io.read(file);
      const std::string dst_text = io.read(file2);
      const ClassicalDesign src = parse_classical(src_text);
      const ClassicalDesign dst = parse_classical(dst_text);
      HomPair h;
      h.point_map = parse_map(fv, "--fv");
      h.block_map = parse_map(fb, "--fb");
      h.point_codomain = dst.points();
      h.block_codomain = dst.blocks();
      if (static_cast<Index>(h.point_map.size()) != src.points() ||
          static_cast<Index>(h.block_map.size()) != src.blocks()) {
        throw UsageError("--fv needs " + std::to_string(src.points()) +
                         " entries and --fb " + std::to_string(src.blocks()));
      }
      for (Index x : h.point_map) {
        if (x >= dst.points()) throw UsageError("--fv index out of range");
      }
      for (Index x : h.block_map) {
        if (x >= dst.blocks()) throw UsageError("--fb index out of range");
      }
      return emit(io, hom_report(src, dst, h, tol, digest(src_text + dst_text)),
                  as_json);
    }
    if (catalog->parsed()) {
      if (catalog_name.empty()) {
        for (const auto& e : catalog_entries()) {
          out << e.name << "\t" << e.kind << "\t" << e.params.dump() << "\n";
        }
      } else {
        out << read_text(catalog_dir() / catalog_entry(catalog_name).file);
      }
      return 0;
    }
  } catch (const InfeasibleError& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Fail);
  } catch (const NotZeroOneError& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Fail);
  } catch (const NumericalError& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Fail);
  } catch (const OverflowError& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Fail);
  } catch (const Error& e) {
    err << "qdesign: " << e.what() << "\n";
    return static_cast<int>(Verdict::Usage);
  }
  return static_cast<int>(Verdict::Usage);
}

}  // namespace qdesign

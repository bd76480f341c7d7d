// Command line front end: run named checks or whole suites over the shift
// operators on the truncated s-adic tree, dump operators in the text matrix
// format, and compute spectral norms.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "adictree/checks.hpp"
#include "adictree/coeff.hpp"
#include "adictree/line.hpp"
#include "adictree/norms.hpp"
#include "adictree/shifts.hpp"

namespace {

using namespace adictree;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ADICTREE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable ADICTREE_SEED\n";
    }
  }
  return kDefaultSeed;
}

// op specs: U V S W (shifts), U* V* S* W* or Ustar... (co-shifts), I,
// P<n> / bdP<n> (Bunce-Deddens projections), P00, henselP<n>, serreP<n>,
// Sj<j> (Cuntz generators).
TruncatedOperator parse_op(const std::string& spec, const TruncatedSpace& space) {
  const auto shift_kind = [](char c) -> std::optional<ShiftKind> {
    switch (c) {
      case 'U': return ShiftKind::BunceDeddens;
      case 'V': return ShiftKind::Hensel;
      case 'S': return ShiftKind::Bernoulli;
      case 'W': return ShiftKind::Serre;
      default: return std::nullopt;
    }
  };
  if (spec.size() == 1) {
    if (spec == "I") return TruncatedOperator::identity(space);
    if (const auto kind = shift_kind(spec[0])) return make_shift(space, *kind);
  }
  if (spec.size() == 2 && spec[1] == '*') {
    if (const auto kind = shift_kind(spec[0])) return make_shift_adjoint(space, *kind);
  }
  if (spec.size() == 5 && spec.substr(1) == "star") {
    if (const auto kind = shift_kind(spec[0])) return make_shift_adjoint(space, *kind);
  }
  if (spec == "P00") return projection(space, ProjectionFamily::Hensel, 0);
  const auto tail_int = [](const std::string& text) { return std::stoi(text); };
  if (spec.rfind("bdP", 0) == 0) {
    return projection(space, ProjectionFamily::BunceDeddens, tail_int(spec.substr(3)));
  }
  if (spec.rfind("henselP", 0) == 0) {
    return projection(space, ProjectionFamily::Hensel, tail_int(spec.substr(7)));
  }
  if (spec.rfind("serreP", 0) == 0) {
    return projection(space, ProjectionFamily::Serre, tail_int(spec.substr(6)));
  }
  if (spec.rfind("Sj", 0) == 0) return cuntz_generator(space, tail_int(spec.substr(2)));
  if (spec.rfind("P", 0) == 0 && spec.size() > 1) {
    return projection(space, ProjectionFamily::BunceDeddens, tail_int(spec.substr(1)));
  }
  throw std::invalid_argument("unrecognized operator spec: " + spec);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void print_result_line(const CheckResult& r) {
  std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  residual=" << r.max_residual
            << " tol=" << r.tolerance << " columns=" << r.validity_count;
  if (!r.notes.empty()) std::cout << "\n       " << r.notes;
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite truncations of the shift operators on the s-adic tree"};
  app.require_subcommand(1);

  int s = 2;
  int depth = 6;
  std::optional<double> tol;
  std::uint64_t seed = default_seed();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--s", s, "base of the tree (>= 2)");
    cmd->add_option("--depth", depth, "truncation level N");
  };

  auto* check_cmd = app.add_subcommand("check", "run one named check");
  std::string check_name;
  check_cmd->add_option("--name", check_name, "registered check name")->required();
  add_common(check_cmd);
  check_cmd->add_option("--tol", tol, "override the check tolerance");
  check_cmd->add_option("--seed", seed, "seed for randomized inputs");

  auto* suite_cmd = app.add_subcommand("suite", "run every check matching a filter");
  std::string filter = "*";
  std::string format = "json";
  std::string out_path;
  suite_cmd->add_option("--filter", filter, "glob over check names");
  add_common(suite_cmd);
  suite_cmd->add_option("--tol", tol, "override every check tolerance");
  suite_cmd->add_option("--seed", seed, "seed for randomized inputs");
  suite_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  suite_cmd->add_option("--out", out_path, "write the report to a file");

  auto* dump_cmd = app.add_subcommand("dump", "dump an operator as text");
  std::string op_spec;
  dump_cmd->add_option("--op", op_spec, "operator spec (U, V, S, W, U*, P0, P00, Sj0, ...)")
      ->required();
  add_common(dump_cmd);
  dump_cmd->add_option("--out", out_path, "write the dump to a file");

  auto* norm_cmd = app.add_subcommand("norm", "spectral norm of an operator");
  double norm_tol = 1e-10;
  norm_cmd->add_option("--op", op_spec, "operator spec")->required();
  add_common(norm_cmd);
  norm_cmd->add_option("--tol", norm_tol, "norm tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    CheckParams params;
    params.s = s;
    params.depth = depth;
    params.tol = tol;
    params.seed = seed;

    if (check_cmd->parsed()) {
      const CheckResult r = run_check(check_name, params);
      print_result_line(r);
      return r.pass ? 0 : 1;
    }
    if (suite_cmd->parsed()) {
      const std::vector<CheckResult> results = run_suite(filter, params);
      const std::string report =
          format == "json" ? report_json(results, filter, params) : report_csv(results);
      write_output(report, out_path);
      if (!out_path.empty()) {
        for (const CheckResult& r : results) print_result_line(r);
      }
      return all_passed(results) ? 0 : 1;
    }
    if (dump_cmd->parsed()) {
      const TruncatedSpace space(s, depth);
      write_output(dump_operator(parse_op(op_spec, space)), out_path);
      return 0;
    }
    if (norm_cmd->parsed()) {
      const TruncatedSpace space(s, depth);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", spectral_norm(parse_op(op_spec, space), norm_tol));
      std::cout << buf << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

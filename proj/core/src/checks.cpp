#include "adictree/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "check_registry.hpp"

namespace adictree {

namespace {

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

void validate_params(const CheckParams& params) {
  if (params.s < 2) throw std::invalid_argument("s must be >= 2");
  if (params.depth < 2) throw std::invalid_argument("depth must be >= 2");
  if (params.tol && *params.tol <= 0.0) throw std::invalid_argument("tol must be positive");
}

const detail::CheckDef& find_check(std::string_view name) {
  const auto& all = detail::registry();
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const detail::CheckDef& d) { return d.name == name; });
  if (it == all.end()) throw UnknownCheckError("unknown check name: " + std::string(name));
  return *it;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (const char c : raw) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

bool check_name_matches(std::string_view pattern, std::string_view name) {
  if (glob_match(pattern, name)) return true;
  // A bare family name selects the whole dotted family.
  if (pattern.find_first_of("*?") == std::string_view::npos) {
    return name.size() > pattern.size() && name.substr(0, pattern.size()) == pattern &&
           name[pattern.size()] == '.';
  }
  return false;
}

std::vector<std::string> registered_check_names() {
  std::vector<std::string> names;
  for (const auto& def : detail::registry()) names.push_back(def.name);
  return names;
}

std::string check_reference(std::string_view name) { return find_check(name).reference; }

CheckResult run_check(std::string_view name, const CheckParams& params) {
  validate_params(params);
  const detail::CheckDef& def = find_check(name);
  const double tol = params.tol.value_or(def.default_tol);
  const detail::Outcome outcome = def.fn(params);
  if (outcome.count <= 0) {
    throw InfeasibleParamsError("check " + def.name + " has an empty validity set at s=" +
                                std::to_string(params.s) + " depth=" + std::to_string(params.depth));
  }
  CheckResult result;
  result.name = def.name;
  result.paper_ref = def.reference;
  result.s = params.s;
  result.depth = params.depth;
  result.max_residual = outcome.residual;
  result.tolerance = tol;
  result.validity_count = outcome.count;
  result.pass = outcome.residual <= tol;
  result.notes = outcome.notes;
  return result;
}

std::vector<CheckResult> run_suite(std::string_view filter, const CheckParams& params) {
  validate_params(params);
  std::vector<CheckResult> results;
  for (const auto& def : detail::registry()) {
    if (!check_name_matches(filter, def.name)) continue;
    results.push_back(run_check(def.name, params));
  }
  return results;
}

std::string report_json(const std::vector<CheckResult>& results, std::string_view suite_label,
                        const CheckParams& params) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results) {
    checks.push_back({{"name", r.name},
                      {"paper_ref", r.paper_ref},
                      {"max_residual", r.max_residual},
                      {"tolerance", r.tolerance},
                      {"validity_count", r.validity_count},
                      {"pass", r.pass},
                      {"notes", r.notes}});
  }
  const nlohmann::json doc = {{"suite", std::string(suite_label)},
                              {"s", params.s},
                              {"depth", params.depth},
                              {"checks", checks},
                              {"passed", all_passed(results)}};
  return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  out << "name,paper_ref,max_residual,tolerance,validity_count,pass,notes\n";
  char buf[64];
  for (const CheckResult& r : results) {
    out << csv_field(r.name) << ',' << csv_field(r.paper_ref) << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.max_residual);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
    out << buf << ',' << r.validity_count << ',' << (r.pass ? "true" : "false") << ','
        << csv_field(r.notes) << '\n';
  }
  return out.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace adictree

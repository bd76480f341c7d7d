#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adictree {

constexpr std::uint64_t kDefaultSeed = 123456789;

struct CheckParams {
  int s = 2;
  int depth = 6;                // truncation level N
  std::optional<double> tol;    // overrides the check's default tolerance
  std::uint64_t seed = kDefaultSeed;
};

struct CheckResult {
  std::string name;
  std::string paper_ref;
  int s = 2;
  int depth = 6;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::int64_t validity_count = 0;
  bool pass = false;
  std::string notes;
};

struct UnknownCheckError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested parameters cannot exercise the check (e.g. the truncation
/// level is below the identity's raise budget). Reported, never skipped.
struct InfeasibleParamsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Glob match with * and ? only. A pattern without metacharacters also
/// matches any dotted extension of itself, so "bunce-deddens" selects the
/// whole bunce-deddens.* family.
bool check_name_matches(std::string_view pattern, std::string_view name);

std::vector<std::string> registered_check_names();
std::string check_reference(std::string_view name);

CheckResult run_check(std::string_view name, const CheckParams& params);
std::vector<CheckResult> run_suite(std::string_view filter, const CheckParams& params);

std::string report_json(const std::vector<CheckResult>& results, std::string_view suite_label,
                        const CheckParams& params);
std::string report_csv(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace adictree

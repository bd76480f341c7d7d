#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adictree/checks.hpp"
#include "adictree/op.hpp"

namespace adictree::detail {

/// Raw payload a check body produces; the runner pairs it with the check's
/// tolerance to decide pass/fail.
struct Outcome {
  double residual = 0.0;
  std::int64_t count = 0;
  std::string notes;

  void take(const ColumnResidual& r) {
    residual = std::max(residual, r.max_abs);
    count += r.columns;
  }
  void bump(double value, std::int64_t units = 1) {
    residual = std::max(residual, value);
    count += units;
  }
};

struct CheckDef {
  std::string name;
  std::string reference;
  double default_tol;
  std::function<Outcome(const CheckParams&)> fn;
};

/// All registered checks, sorted by name.
const std::vector<CheckDef>& registry();

}  // namespace adictree::detail

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "adictree/coeff.hpp"
#include "adictree/op.hpp"

namespace adictree {

/// Deterministic random source. Doubles are produced from raw engine output
/// (not std distributions) so that identical seeds give identical streams on
/// every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  /// Engine seeded from a base seed and a label, so independent checks draw
  /// independent streams regardless of execution order.
  static SeededRng for_label(std::uint64_t seed, std::string_view label);

  std::uint64_t next() { return eng_(); }
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  Complex coefficient() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 eng_;
};

CylinderFunction random_cylinder(SeededRng& rng, int s, int max_depth);
TreeFunction random_tree_function(SeededRng& rng, int s, int max_explicit_level, int max_tail_depth);
ConvergentSequence random_sequence(SeededRng& rng, int s, int prefix_size, int max_depth);
XVFunction random_xv(SeededRng& rng, int s, int prefix_size, int max_depth);

/// A random word of length <= max_len over {J, J*, M_f} with a random
/// overall coefficient. At most max_raises raising factors, keeping the
/// validity set of derived identities non-empty at moderate depths.
TruncatedOperator random_word(SeededRng& rng, const TruncatedSpace& space, ShiftKind kind,
                              int max_len, int max_raises = 2);

TruncatedOperator random_sparse_operator(SeededRng& rng, const TruncatedSpace& space,
                                         std::int64_t entries);

}  // namespace adictree

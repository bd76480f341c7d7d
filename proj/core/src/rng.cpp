#include "adictree/rng.hpp"

#include "adictree/shifts.hpp"

namespace adictree {

SeededRng SeededRng::for_label(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, folded into the seed.
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : label) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ULL;
  }
  return SeededRng(seed ^ h);
}

std::int64_t SeededRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(eng_() % span);
}

CylinderFunction random_cylinder(SeededRng& rng, int s, int max_depth) {
  const int depth = static_cast<int>(rng.uniform_int(0, max_depth));
  const std::int64_t size = pow_base(s, depth);
  std::vector<Complex> t(static_cast<std::size_t>(size));
  for (Complex& v : t) v = rng.coefficient();
  return CylinderFunction(s, depth, std::move(t));
}

TreeFunction random_tree_function(SeededRng& rng, int s, int max_explicit_level, int max_tail_depth) {
  const int top = static_cast<int>(rng.uniform_int(0, max_explicit_level));
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    levels[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(pow_base(s, n)));
    for (Complex& v : levels[static_cast<std::size_t>(n)]) v = rng.coefficient();
  }
  return TreeFunction(s, std::move(levels), random_cylinder(rng, s, max_tail_depth));
}

ConvergentSequence random_sequence(SeededRng& rng, int s, int prefix_size, int max_depth) {
  std::vector<CylinderFunction> prefix;
  prefix.reserve(static_cast<std::size_t>(prefix_size));
  for (int n = 0; n < prefix_size; ++n) prefix.push_back(random_cylinder(rng, s, max_depth));
  return {std::move(prefix), random_cylinder(rng, s, max_depth)};
}

XVFunction random_xv(SeededRng& rng, int s, int prefix_size, int max_depth) {
  std::vector<Complex> prefix(static_cast<std::size_t>(prefix_size));
  for (Complex& v : prefix) v = rng.coefficient();
  return {random_cylinder(rng, s, max_depth), std::move(prefix)};
}

TruncatedOperator random_word(SeededRng& rng, const TruncatedSpace& space, ShiftKind kind,
                              int max_len, int max_raises) {
  const int len = static_cast<int>(rng.uniform_int(1, max_len));
  TruncatedOperator word = TruncatedOperator::identity(space);
  int raises = 0;
  for (int k = 0; k < len; ++k) {
    const std::int64_t pick = rng.uniform_int(0, 2);
    if (pick == 0 && raises < max_raises) {
      word = word * make_shift(space, kind);
      ++raises;
    } else if (pick == 1) {
      word = word * make_shift_adjoint(space, kind);
    } else {
      word = word * TruncatedOperator::diagonal(space, random_cylinder(rng, space.base(), 2));
    }
  }
  return rng.coefficient() * word;
}

TruncatedOperator random_sparse_operator(SeededRng& rng, const TruncatedSpace& space,
                                         std::int64_t entries) {
  TruncatedOperator op(space);
  for (std::int64_t k = 0; k < entries; ++k) {
    const std::int64_t row = rng.uniform_int(0, space.dim() - 1);
    const std::int64_t col = rng.uniform_int(0, space.dim() - 1);
    op.set_entry(row, col, rng.coefficient());
  }
  // A generic sparse operator has entries of every degree; treat it as exact
  // data on the truncation (no raising word behind it).
  op.with_profile({-space.max_level(), space.max_level(), 0});
  return op;
}

}  // namespace adictree

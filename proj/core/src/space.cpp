#include "adictree/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace adictree {

TruncatedSpace::TruncatedSpace(int s, int max_level) : s_(s), max_level_(max_level) {
  if (s < 2) throw std::invalid_argument("base must be >= 2");
  if (max_level < 0) throw std::invalid_argument("max level must be >= 0");
  offsets_.resize(static_cast<std::size_t>(max_level) + 2);
  offsets_[0] = 0;
  for (int n = 0; n <= max_level; ++n) {
    offsets_[static_cast<std::size_t>(n) + 1] = offsets_[static_cast<std::size_t>(n)] + pow_base(s, n);
  }
  dim_ = offsets_.back();
}

std::int64_t TruncatedSpace::level_size(int level) const {
  if (level < 0 || level > max_level_) throw std::out_of_range("level out of range");
  return pow_base(s_, level);
}

std::int64_t TruncatedSpace::level_offset(int level) const {
  if (level < 0 || level > max_level_) throw std::out_of_range("level out of range");
  return offsets_[static_cast<std::size_t>(level)];
}

std::int64_t TruncatedSpace::index_of(const Vertex& v) const {
  validate_vertex(s_, v);
  if (v.level > max_level_) throw std::out_of_range("vertex level exceeds truncation");
  return offsets_[static_cast<std::size_t>(v.level)] + v.ball;
}

Vertex TruncatedSpace::vertex_at(std::int64_t index) const {
  const int n = level_of(index);
  return Vertex{n, index - offsets_[static_cast<std::size_t>(n)]};
}

int TruncatedSpace::level_of(std::int64_t index) const {
  if (index < 0 || index >= dim_) throw std::out_of_range("basis index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

}  // namespace adictree

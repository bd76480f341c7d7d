#pragma once

#include <cstdint>
#include <vector>

#include "adictree/adic.hpp"

namespace adictree {

/// The truncated tree Hilbert space spanned by E_(n,x) for n <= N, with the
/// basis enumerated lexicographically by (level, ball index).
class TruncatedSpace {
 public:
  TruncatedSpace(int s, int max_level);

  int base() const { return s_; }
  int max_level() const { return max_level_; }
  std::int64_t dim() const { return dim_; }

  std::int64_t level_size(int level) const;
  std::int64_t level_offset(int level) const;

  std::int64_t index_of(const Vertex& v) const;
  Vertex vertex_at(std::int64_t index) const;
  int level_of(std::int64_t index) const;

  friend bool operator==(const TruncatedSpace& a, const TruncatedSpace& b) {
    return a.s_ == b.s_ && a.max_level_ == b.max_level_;
  }

 private:
  int s_;
  int max_level_;
  std::vector<std::int64_t> offsets_;  // offsets_[n] = index of E_(n,0); size N+2
  std::int64_t dim_;
};

}  // namespace adictree

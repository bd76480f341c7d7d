#include "adictree/line.hpp"

#include <stdexcept>

#include "adictree/shifts.hpp"

namespace adictree {

namespace {

// Mathematical mod for possibly negative l.
std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

LineSpace::LineSpace(int s, std::int64_t lo, std::int64_t hi) : s_(s), lo_(lo), hi_(hi) {
  if (s < 2) throw std::invalid_argument("base must be >= 2");
  if (!(lo <= 0 && 0 < hi)) throw std::invalid_argument("window must satisfy lo <= 0 < hi");
}

LineSpace LineSpace::for_tree(const TruncatedSpace& tree) {
  const std::int64_t top = pow_base(tree.base(), tree.max_level());
  return LineSpace(tree.base(), -top, 2 * top);
}

LineOperator::LineOperator(LineSpace space) : space_(space) {}

LineOperator LineOperator::identity(const LineSpace& space) {
  LineOperator op(space);
  for (std::int64_t l = space.lo(); l <= space.hi(); ++l) op.cols_[l][l] = Complex(1.0);
  return op;
}

void LineOperator::set_entry(std::int64_t row, std::int64_t col, Complex value) {
  if (!space_.contains(row) || !space_.contains(col)) throw std::out_of_range("line index out of window");
  if (value == Complex(0.0)) {
    auto it = cols_.find(col);
    if (it != cols_.end()) {
      it->second.erase(row);
      if (it->second.empty()) cols_.erase(it);
    }
  } else {
    cols_[col][row] = value;
  }
}

Complex LineOperator::entry(std::int64_t row, std::int64_t col) const {
  const auto it = cols_.find(col);
  if (it == cols_.end()) return Complex(0.0);
  const auto jt = it->second.find(row);
  return jt == it->second.end() ? Complex(0.0) : jt->second;
}

void LineOperator::record_truncated_column(std::int64_t col) { truncated_columns_.push_back(col); }

LineOperator LineOperator::adjoint() const {
  LineOperator out(space_);
  for (const auto& [col, rows] : cols_) {
    for (const auto& [row, v] : rows) out.cols_[row][col] = std::conj(v);
  }
  return out;
}

LineOperator operator+(const LineOperator& a, const LineOperator& b) {
  LineOperator out = a;
  for (const auto& [col, rows] : b.cols_) {
    for (const auto& [row, v] : rows) {
      const Complex w = out.entry(row, col) + v;
      out.set_entry(row, col, w);
    }
  }
  return out;
}

LineOperator operator-(const LineOperator& a, const LineOperator& b) {
  return a + Complex(-1.0) * b;
}

LineOperator operator*(const LineOperator& a, const LineOperator& b) {
  LineOperator out(a.space());
  for (const auto& [col, rows] : b.cols_) {
    for (const auto& [k, bv] : rows) {
      const auto it = a.cols_.find(k);
      if (it == a.cols_.end()) continue;
      for (const auto& [row, av] : it->second) {
        const Complex w = out.entry(row, col) + av * bv;
        out.set_entry(row, col, w);
      }
    }
  }
  return out;
}

LineOperator operator*(Complex c, const LineOperator& a) {
  LineOperator out(a.space());
  if (c == Complex(0.0)) return out;
  for (const auto& [col, rows] : a.cols_) {
    for (const auto& [row, v] : rows) out.cols_[col][row] = c * v;
  }
  return out;
}

std::int64_t phi(int s, const Vertex& v) {
  validate_vertex(s, v);
  return pow_base(s, v.level) + v.ball;
}

std::optional<Vertex> phi_inverse(int s, std::int64_t l) {
  if (l < 1) return std::nullopt;
  std::int64_t p = 1;
  int n = 0;
  while (2 * p <= l) {
    p *= s;
    ++n;
  }
  // Now p = s^n is the largest power with 2 s^n <= l+... check s^n <= l < 2 s^n.
  if (p <= l && l < 2 * p) return Vertex{n, l - p};
  return std::nullopt;
}

LineOperator line_generator(const LineSpace& space, int j) {
  if (j < 0 || j >= space.base()) throw std::invalid_argument("generator index out of range");
  LineOperator op(space);
  const int s = space.base();
  for (std::int64_t l = space.lo(); l <= space.hi(); ++l) {
    const std::int64_t target = s * l + j;
    if (space.contains(target)) {
      op.set_entry(target, l, Complex(1.0));
    } else {
      op.record_truncated_column(l);
    }
  }
  return op;
}

LineOperator line_generator_adjoint(const LineSpace& space, int j) {
  if (j < 0 || j >= space.base()) throw std::invalid_argument("generator index out of range");
  LineOperator op(space);
  const int s = space.base();
  for (std::int64_t l = space.lo(); l <= space.hi(); ++l) {
    if (floor_mod(l - j, s) != 0) continue;
    const std::int64_t target = (l - j) / s;
    if (space.contains(target)) {
      op.set_entry(target, l, Complex(1.0));
    } else {
      op.record_truncated_column(l);
    }
  }
  return op;
}

LineOperator line_word(const LineSpace& space, int n, std::int64_t x) {
  validate_vertex(space.base(), Vertex{n, x});
  LineOperator op(space);
  const std::int64_t scale = pow_base(space.base(), n);
  for (std::int64_t l = space.lo(); l <= space.hi(); ++l) {
    const std::int64_t target = scale * l + x;
    if (space.contains(target)) {
      op.set_entry(target, l, Complex(1.0));
    } else {
      op.record_truncated_column(l);
    }
  }
  return op;
}

LineOperator line_word_adjoint(const LineSpace& space, int n, std::int64_t x) {
  validate_vertex(space.base(), Vertex{n, x});
  LineOperator op(space);
  const std::int64_t scale = pow_base(space.base(), n);
  for (std::int64_t l = space.lo(); l <= space.hi(); ++l) {
    if (floor_mod(l - x, scale) != 0) continue;
    const std::int64_t target = (l - x) / scale;
    if (space.contains(target)) {
      op.set_entry(target, l, Complex(1.0));
    } else {
      op.record_truncated_column(l);
    }
  }
  return op;
}

TreeLineEmbedding::TreeLineEmbedding(TruncatedSpace tree, LineSpace line)
    : tree_(std::move(tree)), line_(line) {
  if (tree_.base() != line_.base()) throw std::invalid_argument("base mismatch");
  const std::int64_t top = 2 * pow_base(tree_.base(), tree_.max_level()) - 1;
  if (line_.hi() < top) throw std::invalid_argument("line window too small for the tree image");
}

std::map<std::int64_t, Complex> TreeLineEmbedding::apply(const std::vector<Complex>& tree_vec) const {
  if (static_cast<std::int64_t>(tree_vec.size()) != tree_.dim()) {
    throw std::invalid_argument("vector size mismatch");
  }
  std::map<std::int64_t, Complex> out;
  for (std::int64_t i = 0; i < tree_.dim(); ++i) {
    const Complex v = tree_vec[static_cast<std::size_t>(i)];
    if (v != Complex(0.0)) out[phi(tree_.base(), tree_.vertex_at(i))] = v;
  }
  return out;
}

std::vector<Complex> TreeLineEmbedding::apply_adjoint(const std::map<std::int64_t, Complex>& line_vec) const {
  std::vector<Complex> out(static_cast<std::size_t>(tree_.dim()), Complex(0.0));
  for (const auto& [l, v] : line_vec) {
    const std::optional<Vertex> w = phi_inverse(tree_.base(), l);
    if (w && w->level <= tree_.max_level()) out[static_cast<std::size_t>(tree_.index_of(*w))] = v;
  }
  return out;
}

TruncatedOperator toeplitz_line(const TruncatedSpace& tree, const LineOperator& a) {
  if (tree.base() != a.space().base()) throw std::invalid_argument("base mismatch");
  TruncatedOperator out(tree);
  for (std::int64_t col = 0; col < tree.dim(); ++col) {
    const std::int64_t l = phi(tree.base(), tree.vertex_at(col));
    const auto it = a.columns().find(l);
    if (it == a.columns().end()) continue;
    for (const auto& [row_l, v] : it->second) {
      const std::optional<Vertex> w = phi_inverse(tree.base(), row_l);
      if (w && w->level <= tree.max_level()) out.set_entry(tree.index_of(*w), col, v);
    }
  }
  return out;
}

TruncatedOperator ts_correction(const TruncatedSpace& tree, const LineSpace& line, int n,
                                std::int64_t x, int m, std::int64_t y) {
  const LineOperator word = line_word(line, n, x) * line_word_adjoint(line, m, y);
  TruncatedOperator ts = toeplitz_line(tree, word);
  // The compression of a word through phi is reliable on the same columns as
  // the tree word itself.
  ts.with_profile({n - m, n - m, std::max(0, n - m)});
  const TruncatedOperator tree_word = cuntz_word(tree, n, x) * cuntz_word(tree, m, y).adjoint();
  return ts - tree_word;
}

TruncatedOperator closed_form_correction(const TruncatedSpace& tree, int n, std::int64_t x, int m,
                                         std::int64_t y) {
  validate_vertex(tree.base(), Vertex{n, x});
  validate_vertex(tree.base(), Vertex{m, y});
  TruncatedOperator out(tree);
  out.with_profile({n - m, n - m, std::max(0, n - m)});
  const std::optional<Vertex> from = phi_inverse(tree.base(), y);
  const std::optional<Vertex> to = phi_inverse(tree.base(), x);
  if (from && to && from->level <= tree.max_level() && to->level <= tree.max_level()) {
    out.set_entry(tree.index_of(*to), tree.index_of(*from), Complex(1.0));
  }
  return out;
}

}  // namespace adictree

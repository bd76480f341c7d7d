#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "adictree/op.hpp"

namespace adictree {

/// A finite window [lo, hi] of the integer line, with basis e_l.
class LineSpace {
 public:
  LineSpace(int s, std::int64_t lo, std::int64_t hi);
  /// Default window [-s^N, 2 s^N] for a companion tree truncation: large
  /// enough that every embedded tree vector and every single-word image of
  /// one stays interior.
  static LineSpace for_tree(const TruncatedSpace& tree);

  int base() const { return s_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::int64_t dim() const { return hi_ - lo_ + 1; }
  bool contains(std::int64_t l) const { return l >= lo_ && l <= hi_; }

 private:
  int s_;
  std::int64_t lo_;
  std::int64_t hi_;
};

/// Sparse operator on a line window, indexed directly by the integers l.
/// Columns whose image leaves the window are zeroed and recorded.
class LineOperator {
 public:
  explicit LineOperator(LineSpace space);

  static LineOperator identity(const LineSpace& space);

  const LineSpace& space() const { return space_; }
  void set_entry(std::int64_t row, std::int64_t col, Complex value);
  Complex entry(std::int64_t row, std::int64_t col) const;
  const std::map<std::int64_t, std::map<std::int64_t, Complex>>& columns() const { return cols_; }

  const std::vector<std::int64_t>& truncated_columns() const { return truncated_columns_; }
  void record_truncated_column(std::int64_t col);

  LineOperator adjoint() const;
  friend LineOperator operator+(const LineOperator&, const LineOperator&);
  friend LineOperator operator-(const LineOperator&, const LineOperator&);
  friend LineOperator operator*(const LineOperator&, const LineOperator&);
  friend LineOperator operator*(Complex, const LineOperator&);

 private:
  LineSpace space_;
  std::map<std::int64_t, std::map<std::int64_t, Complex>> cols_;  // col -> (row -> value)
  std::vector<std::int64_t> truncated_columns_;
};

/// phi(n,x) = s^n + x, injective from the tree into the positive integers.
std::int64_t phi(int s, const Vertex& v);
/// The unique (n,x) with s^n <= l < 2 s^n, if any.
std::optional<Vertex> phi_inverse(int s, std::int64_t l);

/// u_j e_l = e_{s l + j}.
LineOperator line_generator(const LineSpace& space, int j);
/// u_j* e_l = e_{(l-j)/s} when l = j mod s, else 0.
LineOperator line_generator_adjoint(const LineSpace& space, int j);
/// u_(n,x) e_l = e_{s^n l + x}.
LineOperator line_word(const LineSpace& space, int n, std::int64_t x);
/// u_(n,x)* e_l = e_{(l-x)/s^n} when l = x mod s^n, else 0.
LineOperator line_word_adjoint(const LineSpace& space, int n, std::int64_t x);

/// The isometry gluing the tree space into the line along phi.
class TreeLineEmbedding {
 public:
  TreeLineEmbedding(TruncatedSpace tree, LineSpace line);

  const TruncatedSpace& tree() const { return tree_; }
  const LineSpace& line() const { return line_; }

  /// iota: tree vector -> line vector supported on Ran phi.
  std::map<std::int64_t, Complex> apply(const std::vector<Complex>& tree_vec) const;
  /// iota*: line vector -> tree vector (coefficients off Ran phi dropped).
  std::vector<Complex> apply_adjoint(const std::map<std::int64_t, Complex>& line_vec) const;

 private:
  TruncatedSpace tree_;
  LineSpace line_;
};

/// T_S(a) = iota* a iota: compression of a line operator to the tree.
TruncatedOperator toeplitz_line(const TruncatedSpace& tree, const LineOperator& a);

/// T_S(u_(n,x) u_(m,y)*) - S_(n,x) S_(m,y)*, computed directly.
TruncatedOperator ts_correction(const TruncatedSpace& tree, const LineSpace& line, int n,
                                std::int64_t x, int m, std::int64_t y);

/// The rank-at-most-one operator from the closed-form case analysis: nonzero
/// exactly when both x and y lie in Ran phi, say x = s^j + x' and
/// y = s^l + y' with j, l >= 0, where it maps E_(l,y') to E_(j,x').
TruncatedOperator closed_form_correction(const TruncatedSpace& tree, int n, std::int64_t x, int m,
                                         std::int64_t y);

}  // namespace adictree

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "adictree/adic.hpp"
#include "adictree/space.hpp"

namespace adictree {

/// Conservative truncation metadata for an operator word. Entries map level
/// n to a level in [n + degree_min, n + degree_max]; peak_raise bounds the
/// largest intermediate level increase along any factorization path, so the
/// word agrees with its untruncated counterpart on columns with
/// level + peak_raise <= N.
struct LevelProfile {
  int degree_min = 0;
  int degree_max = 0;
  int peak_raise = 0;

  static LevelProfile diagonal() { return {0, 0, 0}; }
  static LevelProfile raising() { return {1, 1, 1}; }
  static LevelProfile lowering() { return {-1, -1, 0}; }

  LevelProfile composed_after(const LevelProfile& first) const;  // this ∘ first
  LevelProfile summed_with(const LevelProfile& other) const;
  LevelProfile adjointed() const;
};

/// A sparse operator on a truncated tree space, stored column-major.
class TruncatedOperator {
 public:
  explicit TruncatedOperator(TruncatedSpace space);

  static TruncatedOperator identity(const TruncatedSpace& space);
  static TruncatedOperator diagonal(const TruncatedSpace& space, const CylinderFunction& f);
  static TruncatedOperator diagonal(const TruncatedSpace& space, const TreeFunction& F);
  /// Rank-one E_(m,y) -> E_(n,x).
  static TruncatedOperator rank_one(const TruncatedSpace& space, const Vertex& to, const Vertex& from,
                                    Complex value = Complex(1.0));

  const TruncatedSpace& space() const { return space_; }
  const LevelProfile& profile() const { return profile_; }
  TruncatedOperator& with_profile(const LevelProfile& p);

  void set_entry(std::int64_t row, std::int64_t col, Complex value);
  void add_entry(std::int64_t row, std::int64_t col, Complex value);
  Complex entry(std::int64_t row, std::int64_t col) const;
  const std::map<std::int64_t, Complex>& column(std::int64_t col) const;
  std::int64_t nonzero_count() const;

  TruncatedOperator adjoint() const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  friend TruncatedOperator operator+(const TruncatedOperator&, const TruncatedOperator&);
  friend TruncatedOperator operator-(const TruncatedOperator&, const TruncatedOperator&);
  friend TruncatedOperator operator*(const TruncatedOperator&, const TruncatedOperator&);
  friend TruncatedOperator operator*(Complex, const TruncatedOperator&);

  /// Entries mapping level n to level n + d; the components over |d| <= N
  /// partition the entries of the operator.
  TruncatedOperator degree_component(int degree) const;
  /// Degree-zero (block diagonal) part; the gauge average.
  TruncatedOperator expectation() const;
  /// Conjugation by the level-grading unitary at angle theta (in [0,1)).
  TruncatedOperator gauge_rotate(double theta) const;
  /// Average of gauge rotations over theta = q/Q. Equals expectation()
  /// whenever Q exceeds twice the maximal level.
  TruncatedOperator quadrature_expectation(int q_points) const;

  Eigen::MatrixXcd dense() const;
  /// Dense matrix of the level-n diagonal block.
  Eigen::MatrixXcd block(int level) const;
  /// Copy with rows and columns below the given level zeroed.
  TruncatedOperator compressed_to_levels_at_least(int level) const;
  /// Copy with columns above the given level dropped (rows kept).
  TruncatedOperator restricted_to_column_levels_at_most(int level) const;

 private:
  void prune_zeros();

  TruncatedSpace space_;
  std::vector<std::map<std::int64_t, Complex>> cols_;
  LevelProfile profile_;
};

/// max |A - B| over entries in columns whose level satisfies
/// level + raise <= N, together with the number of columns compared.
struct ColumnResidual {
  double max_abs = 0.0;
  std::int64_t columns = 0;
};
ColumnResidual compare_on_validity(const TruncatedOperator& a, const TruncatedOperator& b);
ColumnResidual compare_on_column_levels(const TruncatedOperator& a, const TruncatedOperator& b,
                                        int max_col_level);
ColumnResidual max_entry_on_column_levels(const TruncatedOperator& a, int max_col_level);

/// Bit-exact text dump: a header line `# s=<s> N=<N> dim=<dim>
/// ordering=level-lex`, then one `row col re im` line per stored entry in
/// row-major order, with 17 significant digits.
void dump_operator(const TruncatedOperator& op, std::ostream& out);
std::string dump_operator(const TruncatedOperator& op);

}  // namespace adictree

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

/// Exact arithmetic on the s-adic tree: vertices (balls), locally constant
/// functions on the s-adic integers, diagonal functions on the whole tree,
/// and the function maps induced by the four shifts.
namespace adictree {

using Complex = std::complex<double>;

/// s^n as a 64-bit integer. Throws on overflow.
std::int64_t pow_base(int s, int n);

/// The four level-raising shifts on the tree Hilbert space.
enum class ShiftKind {
  BunceDeddens,  // U: additive, E_(n,x) -> E_(n+1,x+1)
  Hensel,        // V: multiplicative, E_(n,x) -> E_(n+1,sx)
  Bernoulli,     // S: digit averaging, E_(n,x) -> (1/s) sum_j E_(n+1,sx+j)
  Serre,         // W: edge averaging, E_(n,x) -> (1/sqrt(s)) sum_j E_(n+1,x+j s^n)
};

/// The two function maps attached to a shift J:
///   Dual d satisfies      J M_f   = M_{d f} J
///   Transfer t satisfies  J* M_f J = M_{t f}
enum class EndoKind { Dual, Transfer };

/// A ball in the s-adic integers: level n, ball index 0 <= x < s^n.
struct Vertex {
  int level = 0;
  std::int64_t ball = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Throws std::invalid_argument unless 0 <= ball < s^level.
void validate_vertex(int s, const Vertex& v);

/// Parent ball (one level up the tree); empty for the root.
std::optional<Vertex> vertex_parent(int s, const Vertex& v);

/// The s balls one level down: (n+1, x + j s^n) for j = 0..s-1.
std::vector<Vertex> vertex_children(int s, const Vertex& v);

/// A locally constant function on the s-adic integers, given by a depth k
/// and a table of s^k values indexed by residues mod s^k.
class CylinderFunction {
 public:
  CylinderFunction(int s, int depth, std::vector<Complex> values);

  static CylinderFunction constant(int s, Complex c);
  /// chi_j: indicator of the residue class j mod s (depth 1).
  static CylinderFunction residue_indicator(int s, int j);
  /// x -> exp(2 pi i x / s^n), a depth-n cylinder function.
  static CylinderFunction character(int s, int n);

  int base() const { return s_; }
  int depth() const { return depth_; }
  const std::vector<Complex>& values() const { return values_; }

  /// Evaluate at a non-negative integer; depends only on x mod s^depth.
  Complex eval(std::int64_t x) const;

  /// Same function re-tabulated at a finer depth k' >= depth.
  CylinderFunction lifted(int new_depth) const;

  CylinderFunction conjugated() const;
  double max_abs() const;

  friend CylinderFunction operator+(const CylinderFunction&, const CylinderFunction&);
  friend CylinderFunction operator-(const CylinderFunction&, const CylinderFunction&);
  friend CylinderFunction operator*(const CylinderFunction&, const CylinderFunction&);
  friend CylinderFunction operator*(Complex, const CylinderFunction&);

  /// Exact table equality after lifting both sides to a common depth.
  friend bool operator==(const CylinderFunction& a, const CylinderFunction& b);

 private:
  int s_;
  int depth_;
  std::vector<Complex> values_;
};

/// Apply the dual/transfer map of U, V or S to a cylinder function.
/// Depths: U keeps k; the V/S transfer maps give max(k-1,0); the V/S dual
/// maps give k+1. Transfer-after-dual is the identity for all three.
CylinderFunction endo_map(ShiftKind kind, EndoKind dir, const CylinderFunction& f);

/// An element of the diagonal tree algebra: explicit per-level tables for
/// levels 0..M plus a cylinder tail governing every deeper level. The
/// constructor extends the explicit part so that tail depth <= M, which
/// makes the defining sup-deviation vanish identically beyond level M.
class TreeFunction {
 public:
  TreeFunction(int s, std::vector<std::vector<Complex>> levels, CylinderFunction tail);

  /// Constant-in-level extension of a cylinder function.
  static TreeFunction from_cylinder(const CylinderFunction& f);
  /// g_n: indicator of level n (tail 0).
  static TreeFunction level_indicator(int s, int n);
  /// chi_{m,l}: indicator of the single vertex (m,l) (tail 0).
  static TreeFunction vertex_indicator(int s, int m, std::int64_t l);

  int base() const { return s_; }
  /// Highest explicitly tabulated level M; -1 when only the tail is stored.
  int max_explicit_level() const { return static_cast<int>(levels_.size()) - 1; }
  const CylinderFunction& tail() const { return tail_; }
  const std::vector<std::vector<Complex>>& levels() const { return levels_; }

  Complex eval(int level, std::int64_t ball) const;

  /// sup over residues x mod s^max(n, tail depth) of |F(n, x mod s^n) - tail(x)|.
  double limit_deviation(int level) const;

  TreeFunction conjugated() const;
  double max_abs_up_to(int level) const;

  friend TreeFunction operator+(const TreeFunction&, const TreeFunction&);
  friend TreeFunction operator-(const TreeFunction&, const TreeFunction&);
  friend TreeFunction operator*(const TreeFunction&, const TreeFunction&);
  friend TreeFunction operator*(Complex, const TreeFunction&);

 private:
  int s_;
  std::vector<std::vector<Complex>> levels_;  // levels_[n] has s^n entries
  CylinderFunction tail_;
};

/// The Serre-shift function maps on the tree algebra. Both preserve the
/// cylinder tail, so the algebra is closed under them.
TreeFunction tree_map(EndoKind dir, const TreeFunction& F);

/// h_n(m) = (1/s) sum_{j=0}^{s-1} exp(2 pi i j s^m / s^{n+1}).
/// Equals 1 for m > n and 0 for m = n.
Complex serre_h(int s, int n, int m);

}  // namespace adictree

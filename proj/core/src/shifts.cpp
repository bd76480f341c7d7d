#include "adictree/shifts.hpp"

#include <cmath>
#include <stdexcept>

namespace adictree {

TruncatedOperator make_shift(const TruncatedSpace& space, ShiftKind kind) {
  const int s = space.base();
  const int top = space.max_level();
  TruncatedOperator op(space);
  for (int n = 0; n < top; ++n) {
    const std::int64_t size = space.level_size(n);
    for (std::int64_t x = 0; x < size; ++x) {
      const std::int64_t col = space.index_of(Vertex{n, x});
      switch (kind) {
        case ShiftKind::BunceDeddens:
          op.set_entry(space.index_of(Vertex{n + 1, x + 1}), col, Complex(1.0));
          break;
        case ShiftKind::Hensel:
          op.set_entry(space.index_of(Vertex{n + 1, s * x}), col, Complex(1.0));
          break;
        case ShiftKind::Bernoulli:
          for (int j = 0; j < s; ++j) {
            op.set_entry(space.index_of(Vertex{n + 1, s * x + j}), col,
                         Complex(1.0 / static_cast<double>(s)));
          }
          break;
        case ShiftKind::Serre:
          for (int j = 0; j < s; ++j) {
            op.set_entry(space.index_of(Vertex{n + 1, x + j * size}), col,
                         Complex(1.0 / std::sqrt(static_cast<double>(s))));
          }
          break;
      }
    }
  }
  op.with_profile(LevelProfile::raising());
  return op;
}

TruncatedOperator make_shift_adjoint(const TruncatedSpace& space, ShiftKind kind) {
  const int s = space.base();
  TruncatedOperator op(space);
  for (int n = 1; n <= space.max_level(); ++n) {
    const std::int64_t size = space.level_size(n);
    const std::int64_t prev = space.level_size(n - 1);
    for (std::int64_t x = 0; x < size; ++x) {
      const std::int64_t col = space.index_of(Vertex{n, x});
      switch (kind) {
        case ShiftKind::BunceDeddens:
          // Kernel: x = 0 and s^{n-1} < x < s^n.
          if (x > 0 && x <= prev) op.set_entry(space.index_of(Vertex{n - 1, x - 1}), col, Complex(1.0));
          break;
        case ShiftKind::Hensel:
          // Kernel: s does not divide x.
          if (x % s == 0) op.set_entry(space.index_of(Vertex{n - 1, x / s}), col, Complex(1.0));
          break;
        case ShiftKind::Bernoulli:
          op.set_entry(space.index_of(Vertex{n - 1, (x - x % s) / s}), col, Complex(1.0));
          break;
        case ShiftKind::Serre:
          op.set_entry(space.index_of(Vertex{n - 1, x % prev}), col,
                       Complex(1.0 / std::sqrt(static_cast<double>(s))));
          break;
      }
    }
  }
  op.with_profile(LevelProfile::lowering());
  return op;
}

TruncatedOperator cuntz_generator(const TruncatedSpace& space, int j) {
  const int s = space.base();
  if (j < 0 || j >= s) throw std::invalid_argument("generator index out of range");
  TruncatedOperator op(space);
  for (int n = 0; n < space.max_level(); ++n) {
    const std::int64_t size = space.level_size(n);
    for (std::int64_t x = 0; x < size; ++x) {
      op.set_entry(space.index_of(Vertex{n + 1, s * x + j}), space.index_of(Vertex{n, x}), Complex(1.0));
    }
  }
  op.with_profile(LevelProfile::raising());
  return op;
}

TruncatedOperator cuntz_word(const TruncatedSpace& space, int n, std::int64_t x) {
  if (n < 0) throw std::invalid_argument("word length must be >= 0");
  validate_vertex(space.base(), Vertex{n, x});
  TruncatedOperator op = TruncatedOperator::identity(space);
  // S_(n,x) = S_{x_0} ... S_{x_{n-1}} with little-endian digits; the
  // rightmost factor applies first.
  std::int64_t rest = x;
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % space.base());
    rest /= space.base();
  }
  for (int k = 0; k < n; ++k) {
    op = op * cuntz_generator(space, digits[static_cast<std::size_t>(k)]);
  }
  return op;
}

TruncatedOperator root_projection(const TruncatedSpace& space) {
  return TruncatedOperator::rank_one(space, Vertex{0, 0}, Vertex{0, 0});
}

TruncatedOperator projection(const TruncatedSpace& space, ProjectionFamily family, int n) {
  if (n < 0) throw std::invalid_argument("projection index must be >= 0");
  if (n > space.max_level()) throw std::invalid_argument("projection index exceeds truncation level");
  switch (family) {
    case ProjectionFamily::BunceDeddens: {
      const TruncatedOperator u = make_shift(space, ShiftKind::BunceDeddens);
      const TruncatedOperator us = make_shift_adjoint(space, ShiftKind::BunceDeddens);
      TruncatedOperator p = TruncatedOperator::identity(space) - u * us;
      for (int k = 0; k < n; ++k) p = u * p * us;
      return p;
    }
    case ProjectionFamily::Hensel: {
      const TruncatedOperator v = make_shift(space, ShiftKind::Hensel);
      const TruncatedOperator vs = make_shift_adjoint(space, ShiftKind::Hensel);
      const CylinderFunction div_by_s =
          endo_map(ShiftKind::Hensel, EndoKind::Dual, CylinderFunction::constant(space.base(), 1.0));
      TruncatedOperator p = TruncatedOperator::diagonal(space, div_by_s) - v * vs;
      for (int k = 0; k < n; ++k) p = v * p * vs;
      return p;
    }
    case ProjectionFamily::Serre: {
      const TruncatedOperator w = make_shift(space, ShiftKind::Serre);
      const TruncatedOperator ws = make_shift_adjoint(space, ShiftKind::Serre);
      TruncatedOperator p = TruncatedOperator::identity(space) - w * ws;
      for (int k = 0; k < n; ++k) p = w * p * ws;
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

TruncatedOperator matrix_unit(const TruncatedSpace& space, MatrixUnitFamily family, int n,
                              std::int64_t x, int m, std::int64_t y) {
  validate_vertex(space.base(), Vertex{n, x});
  validate_vertex(space.base(), Vertex{m, y});
  if (n > space.max_level() || m > space.max_level()) {
    throw std::invalid_argument("matrix unit indices exceed truncation level");
  }
  switch (family) {
    case MatrixUnitFamily::Bernoulli:
      return cuntz_word(space, n, x) * root_projection(space) * cuntz_word(space, m, y).adjoint();
    case MatrixUnitFamily::Serre: {
      const TruncatedOperator w = make_shift(space, ShiftKind::Serre);
      const TruncatedOperator ws = make_shift_adjoint(space, ShiftKind::Serre);
      TruncatedOperator mid = TruncatedOperator::identity(space);
      for (int k = 0; k < n; ++k) mid = w * mid;
      for (int k = 0; k < m; ++k) mid = mid * ws;
      const TruncatedOperator left =
          TruncatedOperator::diagonal(space, TreeFunction::vertex_indicator(space.base(), n, x));
      const TruncatedOperator right =
          TruncatedOperator::diagonal(space, TreeFunction::vertex_indicator(space.base(), m, y));
      const double scale = std::pow(static_cast<double>(space.base()), 0.5 * static_cast<double>(n + m));
      return Complex(scale) * (left * mid * right);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace adictree

#include "adictree/adic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adictree {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_base(int s) {
  if (s < 2) throw std::invalid_argument("base must be >= 2, got " + std::to_string(s));
}

}  // namespace

std::int64_t pow_base(int s, int n) {
  check_base(s);
  if (n < 0) throw std::invalid_argument("negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / s) throw std::overflow_error("s^n overflow");
    r *= s;
  }
  return r;
}

void validate_vertex(int s, const Vertex& v) {
  check_base(s);
  if (v.level < 0 || v.ball < 0 || v.ball >= pow_base(s, v.level)) {
    throw std::invalid_argument("invalid vertex (" + std::to_string(v.level) + "," +
                                std::to_string(v.ball) + ") for base " + std::to_string(s));
  }
}

std::optional<Vertex> vertex_parent(int s, const Vertex& v) {
  validate_vertex(s, v);
  if (v.level == 0) return std::nullopt;
  return Vertex{v.level - 1, v.ball % pow_base(s, v.level - 1)};
}

std::vector<Vertex> vertex_children(int s, const Vertex& v) {
  validate_vertex(s, v);
  const std::int64_t step = pow_base(s, v.level);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) out.push_back(Vertex{v.level + 1, v.ball + j * step});
  return out;
}

CylinderFunction::CylinderFunction(int s, int depth, std::vector<Complex> values)
    : s_(s), depth_(depth), values_(std::move(values)) {
  check_base(s);
  if (depth < 0) throw std::invalid_argument("negative cylinder depth");
  if (static_cast<std::int64_t>(values_.size()) != pow_base(s, depth)) {
    throw std::invalid_argument("cylinder table size must be s^depth");
  }
}

CylinderFunction CylinderFunction::constant(int s, Complex c) {
  return CylinderFunction(s, 0, {c});
}

CylinderFunction CylinderFunction::residue_indicator(int s, int j) {
  if (j < 0 || j >= s) throw std::invalid_argument("residue out of range");
  std::vector<Complex> t(static_cast<std::size_t>(s), Complex(0.0));
  t[static_cast<std::size_t>(j)] = Complex(1.0);
  return CylinderFunction(s, 1, std::move(t));
}

CylinderFunction CylinderFunction::character(int s, int n) {
  const std::int64_t m = pow_base(s, n);
  std::vector<Complex> t(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r) {
    const double arg = kTwoPi * static_cast<double>(r) / static_cast<double>(m);
    t[static_cast<std::size_t>(r)] = Complex(std::cos(arg), std::sin(arg));
  }
  return CylinderFunction(s, n, std::move(t));
}

Complex CylinderFunction::eval(std::int64_t x) const {
  if (x < 0) throw std::invalid_argument("cylinder functions are evaluated at non-negative integers");
  return values_[static_cast<std::size_t>(x % pow_base(s_, depth_))];
}

CylinderFunction CylinderFunction::lifted(int new_depth) const {
  if (new_depth < depth_) throw std::invalid_argument("cannot lift to a coarser depth");
  if (new_depth == depth_) return *this;
  const std::int64_t n = pow_base(s_, new_depth);
  const std::int64_t mod = pow_base(s_, depth_);
  std::vector<Complex> t(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) t[static_cast<std::size_t>(r)] = values_[static_cast<std::size_t>(r % mod)];
  return CylinderFunction(s_, new_depth, std::move(t));
}

CylinderFunction CylinderFunction::conjugated() const {
  std::vector<Complex> t(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) t[i] = std::conj(values_[i]);
  return CylinderFunction(s_, depth_, std::move(t));
}

double CylinderFunction::max_abs() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <typename F>
CylinderFunction zip(const CylinderFunction& a, const CylinderFunction& b, F&& f) {
  if (a.base() != b.base()) throw std::invalid_argument("cylinder base mismatch");
  const int d = std::max(a.depth(), b.depth());
  const CylinderFunction al = a.lifted(d);
  const CylinderFunction bl = b.lifted(d);
  std::vector<Complex> t(al.values().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(al.values()[i], bl.values()[i]);
  return CylinderFunction(a.base(), d, std::move(t));
}

}  // namespace

CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b) {
  return zip(a, b, [](Complex x, Complex y) { return x + y; });
}

CylinderFunction operator-(const CylinderFunction& a, const CylinderFunction& b) {
  return zip(a, b, [](Complex x, Complex y) { return x - y; });
}

CylinderFunction operator*(const CylinderFunction& a, const CylinderFunction& b) {
  return zip(a, b, [](Complex x, Complex y) { return x * y; });
}

CylinderFunction operator*(Complex c, const CylinderFunction& a) {
  std::vector<Complex> t(a.values().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = c * a.values()[i];
  return CylinderFunction(a.base(), a.depth(), std::move(t));
}

bool operator==(const CylinderFunction& a, const CylinderFunction& b) {
  if (a.base() != b.base()) return false;
  const int d = std::max(a.depth(), b.depth());
  return a.lifted(d).values() == b.lifted(d).values();
}

CylinderFunction endo_map(ShiftKind kind, EndoKind dir, const CylinderFunction& f) {
  const int s = f.base();
  const int k = f.depth();
  const std::int64_t n = pow_base(s, k);
  switch (kind) {
    case ShiftKind::BunceDeddens: {
      // Argument translation by -1 (dual) or +1 (transfer); a permutation of
      // the residues mod s^k, so the depth is unchanged.
      std::vector<Complex> t(static_cast<std::size_t>(n));
      for (std::int64_t r = 0; r < n; ++r) {
        const std::int64_t arg = dir == EndoKind::Dual ? (r - 1 + n) % n : (r + 1) % n;
        t[static_cast<std::size_t>(r)] = f.values()[static_cast<std::size_t>(arg)];
      }
      return CylinderFunction(s, k, std::move(t));
    }
    case ShiftKind::Hensel: {
      if (dir == EndoKind::Transfer) {
        // f(sx): depth drops by one.
        const int kd = std::max(k - 1, 0);
        const std::int64_t m = pow_base(s, kd);
        std::vector<Complex> t(static_cast<std::size_t>(m));
        for (std::int64_t r = 0; r < m; ++r) {
          t[static_cast<std::size_t>(r)] = f.values()[static_cast<std::size_t>((s * r) % n)];
        }
        return CylinderFunction(s, kd, std::move(t));
      }
      // f(x/s) when s | x, else 0: depth grows by one.
      const std::int64_t m = pow_base(s, k + 1);
      std::vector<Complex> t(static_cast<std::size_t>(m), Complex(0.0));
      for (std::int64_t r = 0; r < m; ++r) {
        if (r % s == 0) t[static_cast<std::size_t>(r)] = f.values()[static_cast<std::size_t>((r / s) % n)];
      }
      return CylinderFunction(s, k + 1, std::move(t));
    }
    case ShiftKind::Bernoulli: {
      if (dir == EndoKind::Transfer) {
        // (1/s) sum_j f(sx+j): depth drops by one.
        const int kd = std::max(k - 1, 0);
        const std::int64_t m = pow_base(s, kd);
        std::vector<Complex> t(static_cast<std::size_t>(m));
        for (std::int64_t r = 0; r < m; ++r) {
          Complex acc(0.0);
          for (int j = 0; j < s; ++j) acc += f.values()[static_cast<std::size_t>((s * r + j) % n)];
          t[static_cast<std::size_t>(r)] = acc / static_cast<double>(s);
        }
        return CylinderFunction(s, kd, std::move(t));
      }
      // f(floor(x/s)): depth grows by one.
      const std::int64_t m = pow_base(s, k + 1);
      std::vector<Complex> t(static_cast<std::size_t>(m));
      for (std::int64_t r = 0; r < m; ++r) {
        t[static_cast<std::size_t>(r)] = f.values()[static_cast<std::size_t>((r / s) % n)];
      }
      return CylinderFunction(s, k + 1, std::move(t));
    }
    case ShiftKind::Serre:
      throw std::invalid_argument("the Serre shift acts on tree functions, use tree_map");
  }
  throw std::logic_error("unreachable");
}

TreeFunction::TreeFunction(int s, std::vector<std::vector<Complex>> levels, CylinderFunction tail)
    : s_(s), levels_(std::move(levels)), tail_(std::move(tail)) {
  check_base(s);
  if (tail_.base() != s) throw std::invalid_argument("tail base mismatch");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (static_cast<std::int64_t>(levels_[n].size()) != pow_base(s, static_cast<int>(n))) {
      throw std::invalid_argument("level table " + std::to_string(n) + " must have s^n entries");
    }
  }
  // Extend the explicit part until tail depth <= M. Beyond M the function
  // then agrees with the tail at every vertex, with zero deviation.
  while (max_explicit_level() < tail_.depth()) {
    const int n = max_explicit_level() + 1;
    const std::int64_t size = pow_base(s, n);
    std::vector<Complex> table(static_cast<std::size_t>(size));
    for (std::int64_t x = 0; x < size; ++x) table[static_cast<std::size_t>(x)] = tail_.eval(x);
    levels_.push_back(std::move(table));
  }
}

TreeFunction TreeFunction::from_cylinder(const CylinderFunction& f) {
  return TreeFunction(f.base(), {}, f);
}

TreeFunction TreeFunction::level_indicator(int s, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    levels[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(pow_base(s, k)),
                                               Complex(k == n ? 1.0 : 0.0));
  }
  return TreeFunction(s, std::move(levels), CylinderFunction::constant(s, 0.0));
}

TreeFunction TreeFunction::vertex_indicator(int s, int m, std::int64_t l) {
  validate_vertex(s, Vertex{m, l});
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    levels[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(pow_base(s, k)), Complex(0.0));
  }
  levels[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)] = Complex(1.0);
  return TreeFunction(s, std::move(levels), CylinderFunction::constant(s, 0.0));
}

Complex TreeFunction::eval(int level, std::int64_t ball) const {
  validate_vertex(s_, Vertex{level, ball});
  if (level <= max_explicit_level()) return levels_[static_cast<std::size_t>(level)][static_cast<std::size_t>(ball)];
  return tail_.eval(ball);
}

double TreeFunction::limit_deviation(int level) const {
  if (level < 0) throw std::invalid_argument("negative level");
  const std::int64_t level_mod = pow_base(s_, level);
  const std::int64_t span = pow_base(s_, std::max(level, tail_.depth()));
  double sup = 0.0;
  for (std::int64_t x = 0; x < span; ++x) {
    sup = std::max(sup, std::abs(eval(level, x % level_mod) - tail_.eval(x)));
  }
  return sup;
}

TreeFunction TreeFunction::conjugated() const {
  std::vector<std::vector<Complex>> levels = levels_;
  for (auto& table : levels) {
    for (Complex& v : table) v = std::conj(v);
  }
  return TreeFunction(s_, std::move(levels), tail_.conjugated());
}

double TreeFunction::max_abs_up_to(int level) const {
  double m = tail_.max_abs();
  for (int n = 0; n <= level; ++n) {
    const std::int64_t size = pow_base(s_, n);
    for (std::int64_t x = 0; x < size; ++x) m = std::max(m, std::abs(eval(n, x)));
  }
  return m;
}

namespace {

template <typename F, typename G>
TreeFunction zip_tree(const TreeFunction& a, const TreeFunction& b, F&& f, G&& tail_op) {
  if (a.base() != b.base()) throw std::invalid_argument("tree function base mismatch");
  const int s = a.base();
  const int top = std::max(a.max_explicit_level(), b.max_explicit_level());
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    const std::int64_t size = pow_base(s, n);
    levels[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(size));
    for (std::int64_t x = 0; x < size; ++x) {
      levels[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)] = f(a.eval(n, x), b.eval(n, x));
    }
  }
  return TreeFunction(s, std::move(levels), tail_op(a.tail(), b.tail()));
}

}  // namespace

TreeFunction operator+(const TreeFunction& a, const TreeFunction& b) {
  return zip_tree(a, b, [](Complex x, Complex y) { return x + y; },
                  [](const CylinderFunction& x, const CylinderFunction& y) { return x + y; });
}

TreeFunction operator-(const TreeFunction& a, const TreeFunction& b) {
  return zip_tree(a, b, [](Complex x, Complex y) { return x - y; },
                  [](const CylinderFunction& x, const CylinderFunction& y) { return x - y; });
}

TreeFunction operator*(const TreeFunction& a, const TreeFunction& b) {
  return zip_tree(a, b, [](Complex x, Complex y) { return x * y; },
                  [](const CylinderFunction& x, const CylinderFunction& y) { return x * y; });
}

TreeFunction operator*(Complex c, const TreeFunction& a) {
  std::vector<std::vector<Complex>> levels = a.levels();
  for (auto& table : levels) {
    for (Complex& v : table) v = c * v;
  }
  return TreeFunction(a.base(), std::move(levels), c * a.tail());
}

TreeFunction tree_map(EndoKind dir, const TreeFunction& F) {
  const int s = F.base();
  const int top = F.max_explicit_level();
  if (dir == EndoKind::Dual) {
    // (dual F)(n,x) = F(n-1, x mod s^{n-1}) for n >= 1, and 0 at the root.
    const int new_top = top + 1;
    std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(new_top) + 1);
    levels[0] = {Complex(0.0)};
    for (int n = 1; n <= new_top; ++n) {
      const std::int64_t size = pow_base(s, n);
      const std::int64_t mod = pow_base(s, n - 1);
      levels[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(size));
      for (std::int64_t x = 0; x < size; ++x) {
        levels[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)] = F.eval(n - 1, x % mod);
      }
    }
    return TreeFunction(s, std::move(levels), F.tail());
  }
  // (transfer F)(n,x) = (1/s) sum_j F(n+1, x + j s^n).
  const int new_top = std::max(top, F.tail().depth());
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(new_top) + 1);
  for (int n = 0; n <= new_top; ++n) {
    const std::int64_t size = pow_base(s, n);
    levels[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(size));
    for (std::int64_t x = 0; x < size; ++x) {
      Complex acc(0.0);
      for (int j = 0; j < s; ++j) acc += F.eval(n + 1, x + j * size);
      levels[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)] = acc / static_cast<double>(s);
    }
  }
  return TreeFunction(s, std::move(levels), F.tail());
}

Complex serre_h(int s, int n, int m) {
  check_base(s);
  if (n < 0 || m < 0) throw std::invalid_argument("negative index");
  // Finite geometric sum with ratio exp(2 pi i s^m / s^{n+1}). The phase is
  // rational with denominator s^{n+1}; reduce it exactly before cos/sin so
  // that m >> n does not feed huge arguments to the trig functions.
  const std::int64_t mod = pow_base(s, n + 1);
  const std::int64_t ratio = m >= n + 1 ? 0 : pow_base(s, m);
  Complex acc(0.0);
  for (int j = 0; j < s; ++j) {
    const std::int64_t t = (static_cast<std::int64_t>(j) * ratio) % mod;
    const double arg = kTwoPi * static_cast<double>(t) / static_cast<double>(mod);
    acc += Complex(std::cos(arg), std::sin(arg));
  }
  return acc / static_cast<double>(s);
}

}  // namespace adictree

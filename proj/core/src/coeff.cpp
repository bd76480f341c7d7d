#include "adictree/coeff.hpp"

#include <algorithm>
#include <stdexcept>

namespace adictree {

ConvergentSequence::ConvergentSequence(std::vector<CylinderFunction> prefix, CylinderFunction limit)
    : prefix_(std::move(prefix)), limit_(std::move(limit)) {
  for (const CylinderFunction& f : prefix_) {
    if (f.base() != limit_.base()) throw std::invalid_argument("sequence base mismatch");
  }
}

const CylinderFunction& ConvergentSequence::at(int n) const {
  if (n < 0) throw std::out_of_range("negative slot");
  return n < prefix_size() ? prefix_[static_cast<std::size_t>(n)] : limit_;
}

double ConvergentSequence::sup_norm() const {
  double m = limit_.max_abs();
  for (const CylinderFunction& f : prefix_) m = std::max(m, f.max_abs());
  return m;
}

int ConvergentSequence::max_depth() const {
  int d = limit_.depth();
  for (const CylinderFunction& f : prefix_) d = std::max(d, f.depth());
  return d;
}

ConvergentSequence ConvergentSequence::conjugated() const {
  std::vector<CylinderFunction> p;
  p.reserve(prefix_.size());
  for (const CylinderFunction& f : prefix_) p.push_back(f.conjugated());
  return {std::move(p), limit_.conjugated()};
}

namespace {

template <typename F>
ConvergentSequence zip_seq(const ConvergentSequence& a, const ConvergentSequence& b, F&& f) {
  const int k = std::max(a.prefix_size(), b.prefix_size());
  std::vector<CylinderFunction> p;
  p.reserve(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) p.push_back(f(a.at(n), b.at(n)));
  return {std::move(p), f(a.limit(), b.limit())};
}

}  // namespace

ConvergentSequence operator*(const ConvergentSequence& a, const ConvergentSequence& b) {
  return zip_seq(a, b, [](const CylinderFunction& x, const CylinderFunction& y) { return x * y; });
}

ConvergentSequence operator+(const ConvergentSequence& a, const ConvergentSequence& b) {
  return zip_seq(a, b, [](const CylinderFunction& x, const CylinderFunction& y) { return x + y; });
}

XVFunction::XVFunction(CylinderFunction f, std::vector<Complex> prefix)
    : f_(std::move(f)), prefix_(std::move(prefix)) {}

Complex XVFunction::at(int n) const {
  if (n < 0) throw std::out_of_range("negative slot");
  return n < prefix_size() ? prefix_[static_cast<std::size_t>(n)] : f_.eval(0);
}

double XVFunction::sup_norm() const {
  double m = f_.max_abs();
  for (const Complex& x : prefix_) m = std::max(m, std::abs(x));
  return m;
}

XVFunction XVFunction::conjugated() const {
  std::vector<Complex> p(prefix_.size());
  for (std::size_t i = 0; i < prefix_.size(); ++i) p[i] = std::conj(prefix_[i]);
  return {f_.conjugated(), std::move(p)};
}

XVFunction operator*(const XVFunction& a, const XVFunction& b) {
  const int k = std::max(a.prefix_size(), b.prefix_size());
  std::vector<Complex> p(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) p[static_cast<std::size_t>(n)] = a.at(n) * b.at(n);
  return {a.function() * b.function(), std::move(p)};
}

XVFunction operator+(const XVFunction& a, const XVFunction& b) {
  const int k = std::max(a.prefix_size(), b.prefix_size());
  std::vector<Complex> p(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) p[static_cast<std::size_t>(n)] = a.at(n) + b.at(n);
  return {a.function() + b.function(), std::move(p)};
}

TruncatedOperator toeplitz_bd(const TruncatedSpace& space, const ConvergentSequence& seq) {
  if (seq.prefix_size() > space.max_level()) {
    throw std::invalid_argument("sequence prefix exceeds truncation level");
  }
  TruncatedOperator acc = TruncatedOperator::diagonal(space, seq.limit());
  for (int n = 0; n < seq.prefix_size(); ++n) {
    const TruncatedOperator diff = TruncatedOperator::diagonal(space, seq.at(n) - seq.limit());
    acc = acc + diff * projection(space, ProjectionFamily::BunceDeddens, n);
  }
  return acc;
}

TruncatedOperator toeplitz_hensel(const TruncatedSpace& space, const XVFunction& data) {
  if (data.prefix_size() > space.max_level()) {
    throw std::invalid_argument("prefix exceeds truncation level");
  }
  TruncatedOperator acc = TruncatedOperator::diagonal(space, data.function());
  const Complex f0 = data.function().eval(0);
  for (int n = 0; n < data.prefix_size(); ++n) {
    acc = acc + (data.at(n) - f0) * projection(space, ProjectionFamily::Hensel, n);
  }
  return acc;
}

TruncatedOperator toeplitz_serre(const TruncatedSpace& space, const ConvergentSequence& seq) {
  if (seq.prefix_size() > space.max_level()) {
    throw std::invalid_argument("sequence prefix exceeds truncation level");
  }
  TruncatedOperator acc = TruncatedOperator::diagonal(space, seq.limit());
  for (int n = 0; n < seq.prefix_size(); ++n) {
    const TruncatedOperator p = projection(space, ProjectionFamily::Serre, n);
    const TruncatedOperator diff = TruncatedOperator::diagonal(space, seq.at(n) - seq.limit());
    acc = acc + p * diff * p;
  }
  return acc;
}

ConvergentSequence tilde_map(EndoKind dir, const ConvergentSequence& seq) {
  const ShiftKind kind = ShiftKind::BunceDeddens;
  if (dir == EndoKind::Dual) {
    // Slot 0 becomes 0; slot n >= 1 carries the dual image of slot n-1.
    std::vector<CylinderFunction> p;
    p.reserve(static_cast<std::size_t>(seq.prefix_size()) + 1);
    p.push_back(CylinderFunction::constant(seq.base(), 0.0));
    for (int n = 0; n < seq.prefix_size(); ++n) p.push_back(endo_map(kind, EndoKind::Dual, seq.at(n)));
    return {std::move(p), endo_map(kind, EndoKind::Dual, seq.limit())};
  }
  std::vector<CylinderFunction> p;
  p.reserve(static_cast<std::size_t>(std::max(seq.prefix_size() - 1, 0)));
  for (int n = 0; n + 1 < seq.prefix_size(); ++n) p.push_back(endo_map(kind, EndoKind::Transfer, seq.at(n + 1)));
  return {std::move(p), endo_map(kind, EndoKind::Transfer, seq.limit())};
}

XVFunction tilde_map(EndoKind dir, const XVFunction& data) {
  const ShiftKind kind = ShiftKind::Hensel;
  if (dir == EndoKind::Dual) {
    std::vector<Complex> p;
    p.reserve(static_cast<std::size_t>(data.prefix_size()) + 1);
    p.push_back(Complex(0.0));  // x_{-1} = 0
    for (int n = 0; n < data.prefix_size(); ++n) p.push_back(data.at(n));
    return {endo_map(kind, EndoKind::Dual, data.function()), std::move(p)};
  }
  std::vector<Complex> p;
  for (int n = 0; n + 1 < data.prefix_size(); ++n) p.push_back(data.at(n + 1));
  return {endo_map(kind, EndoKind::Transfer, data.function()), std::move(p)};
}

ConvergentSequence slot_shift(const ConvergentSequence& seq) {
  std::vector<CylinderFunction> p;
  p.reserve(static_cast<std::size_t>(seq.prefix_size()) + 1);
  p.push_back(CylinderFunction::constant(seq.base(), 0.0));
  for (int n = 0; n < seq.prefix_size(); ++n) p.push_back(seq.at(n));
  return {std::move(p), seq.limit()};
}

TruncatedOperator fourier_coefficient(const TruncatedOperator& a, int degree, ShiftKind kind) {
  const TruncatedSpace& space = a.space();
  if (std::abs(degree) > space.max_level()) throw std::invalid_argument("degree exceeds truncation level");
  const TruncatedOperator part = a.degree_component(degree);
  if (degree == 0) return part;
  if (degree > 0) {
    // E(a (J*)^d) = (degree-d part of a) (J*)^d.
    TruncatedOperator out = part;
    const TruncatedOperator adj = make_shift_adjoint(space, kind);
    for (int k = 0; k < degree; ++k) out = out * adj;
    return out;
  }
  // E(J^{-d} a) = J^{-d} (degree-d part of a).
  TruncatedOperator out = part;
  const TruncatedOperator shift = make_shift(space, kind);
  for (int k = 0; k < -degree; ++k) out = shift * out;
  return out;
}

}  // namespace adictree

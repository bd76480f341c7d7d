#include "adictree/op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace adictree {

LevelProfile LevelProfile::composed_after(const LevelProfile& first) const {
  LevelProfile r;
  r.degree_min = degree_min + first.degree_min;
  r.degree_max = degree_max + first.degree_max;
  r.peak_raise = std::max(first.peak_raise, first.degree_max + peak_raise);
  return r;
}

LevelProfile LevelProfile::summed_with(const LevelProfile& other) const {
  return {std::min(degree_min, other.degree_min), std::max(degree_max, other.degree_max),
          std::max(peak_raise, other.peak_raise)};
}

LevelProfile LevelProfile::adjointed() const {
  return {-degree_max, -degree_min, std::max(0, peak_raise - degree_min)};
}

TruncatedOperator::TruncatedOperator(TruncatedSpace space)
    : space_(std::move(space)), cols_(static_cast<std::size_t>(space_.dim())) {}

TruncatedOperator TruncatedOperator::identity(const TruncatedSpace& space) {
  TruncatedOperator op(space);
  for (std::int64_t i = 0; i < space.dim(); ++i) op.cols_[static_cast<std::size_t>(i)][i] = Complex(1.0);
  return op;
}

TruncatedOperator TruncatedOperator::diagonal(const TruncatedSpace& space, const CylinderFunction& f) {
  if (f.base() != space.base()) throw std::invalid_argument("base mismatch");
  TruncatedOperator op(space);
  for (std::int64_t i = 0; i < space.dim(); ++i) {
    const Complex v = f.eval(space.vertex_at(i).ball);
    if (v != Complex(0.0)) op.cols_[static_cast<std::size_t>(i)][i] = v;
  }
  return op;
}

TruncatedOperator TruncatedOperator::diagonal(const TruncatedSpace& space, const TreeFunction& F) {
  if (F.base() != space.base()) throw std::invalid_argument("base mismatch");
  TruncatedOperator op(space);
  for (std::int64_t i = 0; i < space.dim(); ++i) {
    const Vertex v = space.vertex_at(i);
    const Complex c = F.eval(v.level, v.ball);
    if (c != Complex(0.0)) op.cols_[static_cast<std::size_t>(i)][i] = c;
  }
  return op;
}

TruncatedOperator TruncatedOperator::rank_one(const TruncatedSpace& space, const Vertex& to,
                                              const Vertex& from, Complex value) {
  TruncatedOperator op(space);
  if (value != Complex(0.0)) op.set_entry(space.index_of(to), space.index_of(from), value);
  op.profile_ = {to.level - from.level, to.level - from.level, std::max(0, to.level - from.level)};
  return op;
}

TruncatedOperator& TruncatedOperator::with_profile(const LevelProfile& p) {
  profile_ = p;
  return *this;
}

void TruncatedOperator::set_entry(std::int64_t row, std::int64_t col, Complex value) {
  if (row < 0 || row >= space_.dim() || col < 0 || col >= space_.dim()) {
    throw std::out_of_range("operator entry out of range");
  }
  if (value == Complex(0.0)) {
    cols_[static_cast<std::size_t>(col)].erase(row);
  } else {
    cols_[static_cast<std::size_t>(col)][row] = value;
  }
}

void TruncatedOperator::add_entry(std::int64_t row, std::int64_t col, Complex value) {
  if (row < 0 || row >= space_.dim() || col < 0 || col >= space_.dim()) {
    throw std::out_of_range("operator entry out of range");
  }
  auto& c = cols_[static_cast<std::size_t>(col)];
  auto [it, inserted] = c.try_emplace(row, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex(0.0)) c.erase(it);
  } else if (value == Complex(0.0)) {
    c.erase(it);
  }
}

Complex TruncatedOperator::entry(std::int64_t row, std::int64_t col) const {
  const auto& c = cols_[static_cast<std::size_t>(col)];
  const auto it = c.find(row);
  return it == c.end() ? Complex(0.0) : it->second;
}

const std::map<std::int64_t, Complex>& TruncatedOperator::column(std::int64_t col) const {
  return cols_[static_cast<std::size_t>(col)];
}

std::int64_t TruncatedOperator::nonzero_count() const {
  std::int64_t n = 0;
  for (const auto& c : cols_) n += static_cast<std::int64_t>(c.size());
  return n;
}

void TruncatedOperator::prune_zeros() {
  for (auto& c : cols_) {
    for (auto it = c.begin(); it != c.end();) {
      it = it->second == Complex(0.0) ? c.erase(it) : std::next(it);
    }
  }
}

TruncatedOperator TruncatedOperator::adjoint() const {
  TruncatedOperator out(space_);
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
      out.cols_[static_cast<std::size_t>(i)][j] = std::conj(v);
    }
  }
  out.profile_ = profile_.adjointed();
  return out;
}

std::vector<Complex> TruncatedOperator::apply(const std::vector<Complex>& v) const {
  if (static_cast<std::int64_t>(v.size()) != space_.dim()) throw std::invalid_argument("vector size mismatch");
  std::vector<Complex> out(v.size(), Complex(0.0));
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    const Complex vj = v[static_cast<std::size_t>(j)];
    if (vj == Complex(0.0)) continue;
    for (const auto& [i, a] : cols_[static_cast<std::size_t>(j)]) out[static_cast<std::size_t>(i)] += a * vj;
  }
  return out;
}

namespace {

void require_same_space(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (!(a.space() == b.space())) throw std::invalid_argument("operator space mismatch");
}

}  // namespace

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a, b);
  TruncatedOperator out = a;
  for (std::int64_t j = 0; j < b.space().dim(); ++j) {
    for (const auto& [i, v] : b.column(j)) out.add_entry(i, j, v);
  }
  out.with_profile(a.profile().summed_with(b.profile()));
  return out;
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a, b);
  TruncatedOperator out = a;
  for (std::int64_t j = 0; j < b.space().dim(); ++j) {
    for (const auto& [i, v] : b.column(j)) out.add_entry(i, j, -v);
  }
  out.with_profile(a.profile().summed_with(b.profile()));
  return out;
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a, b);
  TruncatedOperator out(a.space());
  for (std::int64_t j = 0; j < b.space().dim(); ++j) {
    for (const auto& [k, bkj] : b.column(j)) {
      for (const auto& [i, aik] : a.column(k)) out.add_entry(i, j, aik * bkj);
    }
  }
  out.with_profile(a.profile().composed_after(b.profile()));
  return out;
}

TruncatedOperator operator*(Complex c, const TruncatedOperator& a) {
  TruncatedOperator out = a;
  if (c == Complex(0.0)) return TruncatedOperator(a.space());
  for (std::int64_t j = 0; j < a.space().dim(); ++j) {
    for (const auto& [i, v] : a.column(j)) out.set_entry(i, j, c * v);
  }
  return out;
}

TruncatedOperator TruncatedOperator::degree_component(int degree) const {
  TruncatedOperator out(space_);
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    const int col_level = space_.level_of(j);
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
      if (space_.level_of(i) - col_level == degree) out.cols_[static_cast<std::size_t>(j)][i] = v;
    }
  }
  out.profile_ = {degree, degree, profile_.peak_raise};
  return out;
}

TruncatedOperator TruncatedOperator::expectation() const { return degree_component(0); }

TruncatedOperator TruncatedOperator::gauge_rotate(double theta) const {
  TruncatedOperator out(space_);
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    const int col_level = space_.level_of(j);
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
      const int d = space_.level_of(i) - col_level;
      const double arg = 2.0 * std::numbers::pi * theta * static_cast<double>(d);
      out.cols_[static_cast<std::size_t>(j)][i] = v * Complex(std::cos(arg), std::sin(arg));
    }
  }
  out.prune_zeros();
  out.profile_ = profile_;
  return out;
}

TruncatedOperator TruncatedOperator::quadrature_expectation(int q_points) const {
  if (q_points < 1) throw std::invalid_argument("need at least one quadrature point");
  TruncatedOperator out(space_);
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    const int col_level = space_.level_of(j);
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
      const int d = space_.level_of(i) - col_level;
      Complex phase_sum(0.0);
      for (int q = 0; q < q_points; ++q) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(d) * static_cast<double>(q) /
                           static_cast<double>(q_points);
        phase_sum += Complex(std::cos(arg), std::sin(arg));
      }
      const Complex w = v * phase_sum / static_cast<double>(q_points);
      if (w != Complex(0.0)) out.cols_[static_cast<std::size_t>(j)][i] = w;
    }
  }
  out.profile_ = profile_;
  return out;
}

Eigen::MatrixXcd TruncatedOperator::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space_.dim(), space_.dim());
  for (std::int64_t j = 0; j < space_.dim(); ++j) {
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) m(i, j) = v;
  }
  return m;
}

Eigen::MatrixXcd TruncatedOperator::block(int level) const {
  const std::int64_t size = space_.level_size(level);
  const std::int64_t off = space_.level_offset(level);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (std::int64_t j = 0; j < size; ++j) {
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(off + j)]) {
      if (i >= off && i < off + size) m(i - off, j) = v;
    }
  }
  return m;
}

TruncatedOperator TruncatedOperator::compressed_to_levels_at_least(int level) const {
  const std::int64_t cut = level <= 0 ? 0 : space_.level_offset(level);
  TruncatedOperator out(space_);
  for (std::int64_t j = cut; j < space_.dim(); ++j) {
    for (const auto& [i, v] : cols_[static_cast<std::size_t>(j)]) {
      if (i >= cut) out.cols_[static_cast<std::size_t>(j)][i] = v;
    }
  }
  out.profile_ = profile_;
  return out;
}

TruncatedOperator TruncatedOperator::restricted_to_column_levels_at_most(int level) const {
  TruncatedOperator out(space_);
  const std::int64_t end = level >= space_.max_level() ? space_.dim() : space_.level_offset(level + 1);
  for (std::int64_t j = 0; j < end; ++j) out.cols_[static_cast<std::size_t>(j)] = cols_[static_cast<std::size_t>(j)];
  out.profile_ = profile_;
  return out;
}

namespace {

ColumnResidual compare_columns(const TruncatedOperator& a, const TruncatedOperator& b, std::int64_t end) {
  ColumnResidual r;
  for (std::int64_t j = 0; j < end; ++j) {
    const auto& ca = a.column(j);
    const auto& cb = b.column(j);
    auto ia = ca.begin();
    auto ib = cb.begin();
    while (ia != ca.end() || ib != cb.end()) {
      if (ib == cb.end() || (ia != ca.end() && ia->first < ib->first)) {
        r.max_abs = std::max(r.max_abs, std::abs(ia->second));
        ++ia;
      } else if (ia == ca.end() || ib->first < ia->first) {
        r.max_abs = std::max(r.max_abs, std::abs(ib->second));
        ++ib;
      } else {
        r.max_abs = std::max(r.max_abs, std::abs(ia->second - ib->second));
        ++ia;
        ++ib;
      }
    }
    ++r.columns;
  }
  return r;
}

std::int64_t columns_up_to_level(const TruncatedSpace& space, int max_col_level) {
  if (max_col_level < 0) return 0;
  if (max_col_level >= space.max_level()) return space.dim();
  return space.level_offset(max_col_level + 1);
}

}  // namespace

ColumnResidual compare_on_validity(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a, b);
  const int raise = std::max(a.profile().peak_raise, b.profile().peak_raise);
  return compare_columns(a, b, columns_up_to_level(a.space(), a.space().max_level() - raise));
}

ColumnResidual compare_on_column_levels(const TruncatedOperator& a, const TruncatedOperator& b,
                                        int max_col_level) {
  require_same_space(a, b);
  return compare_columns(a, b, columns_up_to_level(a.space(), max_col_level));
}

ColumnResidual max_entry_on_column_levels(const TruncatedOperator& a, int max_col_level) {
  ColumnResidual r;
  const std::int64_t end = columns_up_to_level(a.space(), max_col_level);
  for (std::int64_t j = 0; j < end; ++j) {
    for (const auto& [i, v] : a.column(j)) r.max_abs = std::max(r.max_abs, std::abs(v));
    ++r.columns;
  }
  return r;
}

void dump_operator(const TruncatedOperator& op, std::ostream& out) {
  const TruncatedSpace& sp = op.space();
  out << "# s=" << sp.base() << " N=" << sp.max_level() << " dim=" << sp.dim() << " ordering=level-lex\n";
  // Row-major entry order.
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, Complex>> entries;
  entries.reserve(static_cast<std::size_t>(op.nonzero_count()));
  for (std::int64_t j = 0; j < sp.dim(); ++j) {
    for (const auto& [i, v] : op.column(j)) entries.push_back({{i, j}, v});
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  char buf[64];
  for (const auto& [rc, v] : entries) {
    out << rc.first << ' ' << rc.second << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    out << buf << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", v.imag());
    out << buf << '\n';
  }
}

std::string dump_operator(const TruncatedOperator& op) {
  std::ostringstream os;
  dump_operator(op, os);
  return os.str();
}

}  // namespace adictree

#include "adictree/norms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace adictree {

namespace {

constexpr std::int64_t kDenseLimit = 512;

// splitmix64; used for the deterministic power-iteration start vector.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralNormError::SpectralNormError(double previous, double last)
    : std::runtime_error("power iteration did not converge, bracket [" + std::to_string(previous) +
                         ", " + std::to_string(last) + "]"),
      previous_estimate(previous),
      last_estimate(last) {}

double dense_spectral_norm(const TruncatedOperator& op) {
  const Eigen::MatrixXcd a = op.dense();
  if (a.size() == 0) return 0.0;
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top <= 0.0 ? 0.0 : std::sqrt(top);
}

double power_spectral_norm(const TruncatedOperator& op, double tol, int max_iterations) {
  const std::int64_t dim = op.space().dim();
  const TruncatedOperator adj = op.adjoint();

  std::vector<Complex> v(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::uint64_t bits = mix64(static_cast<std::uint64_t>(i) + 1);
    v[static_cast<std::size_t>(i)] =
        Complex(2.0 * unit_interval(bits) - 1.0, 2.0 * unit_interval(mix64(bits)) - 1.0);
  }
  double norm_v = 0.0;
  for (const Complex& c : v) norm_v += std::norm(c);
  norm_v = std::sqrt(norm_v);
  for (Complex& c : v) c /= norm_v;

  double prev = 0.0;
  double before_prev = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Complex> w = adj.apply(op.apply(v));
    double lambda = 0.0;  // Rayleigh quotient <v, a*a v>, real and >= 0
    for (std::size_t i = 0; i < w.size(); ++i) lambda += (std::conj(v[i]) * w[i]).real();
    const double sigma = lambda <= 0.0 ? 0.0 : std::sqrt(lambda);

    double norm_w = 0.0;
    for (const Complex& c : w) norm_w += std::norm(c);
    norm_w = std::sqrt(norm_w);
    if (norm_w == 0.0) return 0.0;

    if (it > 0 && std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
    before_prev = prev;
    prev = sigma;
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / norm_w;
  }
  throw SpectralNormError(before_prev, prev);
}

double spectral_norm(const TruncatedOperator& op, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  // Diagonal operators have an exact norm; power iteration cannot resolve
  // near-tied diagonal maxima.
  bool diagonal = true;
  double max_entry = 0.0;
  for (std::int64_t j = 0; diagonal && j < op.space().dim(); ++j) {
    for (const auto& [i, v] : op.column(j)) {
      if (i != j) {
        diagonal = false;
        break;
      }
      max_entry = std::max(max_entry, std::abs(v));
    }
  }
  if (diagonal) return max_entry;
  if (op.space().dim() <= kDenseLimit) return dense_spectral_norm(op);
  return power_spectral_norm(op, tol);
}

double tail_norm(const TruncatedOperator& op, int from_level, double tol) {
  return spectral_norm(op.compressed_to_levels_at_least(from_level), tol);
}

double singular_value(const TruncatedOperator& op, int k, int max_col_level) {
  if (k < 1) throw std::invalid_argument("singular value index starts at 1");
  const TruncatedOperator restricted =
      max_col_level < 0 ? op : op.restricted_to_column_levels_at_most(max_col_level);
  const Eigen::MatrixXcd a = restricted.dense();
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  if (k > ev.size()) return 0.0;
  const double val = ev(ev.size() - k);
  return val <= 0.0 ? 0.0 : std::sqrt(val);
}

}  // namespace adictree

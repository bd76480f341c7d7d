#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adictree/coeff.hpp"
#include "adictree/norms.hpp"
#include "adictree/rng.hpp"

using namespace adictree;

namespace {

constexpr double kEps = 1e-13;

std::vector<Complex> basis_vec(const TruncatedSpace& sp, const Vertex& v) {
  std::vector<Complex> e(static_cast<std::size_t>(sp.dim()), Complex(0.0));
  e[static_cast<std::size_t>(sp.index_of(v))] = Complex(1.0);
  return e;
}

}  // namespace

TEST_CASE("Bunce-Deddens Toeplitz map") {
  const TruncatedSpace sp(2, 5);
  const ConvergentSequence f({CylinderFunction::residue_indicator(2, 0)},
                             CylinderFunction::constant(2, 1.0));
  const TruncatedOperator t = toeplitz_bd(sp, f);

  // E_(2,3) lies in the range of the zeroth projection and chi_0(3) = 0.
  auto image = t.apply(basis_vec(sp, {2, 3}));
  for (const Complex& c : image) CHECK(std::abs(c) <= kEps);

  // E_(1,1) is orthogonal to every prefix projection, so the tail applies.
  image = t.apply(basis_vec(sp, {1, 1}));
  CHECK(std::abs(image[static_cast<std::size_t>(sp.index_of({1, 1}))] - Complex(1.0)) <= kEps);

  // A constant sequence telescopes to the diagonal operator.
  const CylinderFunction g = CylinderFunction::residue_indicator(2, 1);
  CHECK(compare_on_validity(toeplitz_bd(sp, ConvergentSequence::constant(g)),
                            TruncatedOperator::diagonal(sp, g))
            .max_abs <= kEps);

  SeededRng rng(1);
  CHECK_THROWS_AS(toeplitz_bd(TruncatedSpace(2, 2), random_sequence(rng, 2, 4, 1)),
                  std::invalid_argument);
}

TEST_CASE("Hensel Toeplitz map") {
  const TruncatedSpace sp(2, 5);
  const XVFunction f(CylinderFunction::residue_indicator(2, 0), {Complex(5.0)});
  const TruncatedOperator t = toeplitz_hensel(sp, f);

  auto image = t.apply(basis_vec(sp, {0, 0}));
  CHECK(std::abs(image[0] - Complex(5.0)) <= kEps);

  image = t.apply(basis_vec(sp, {1, 1}));
  for (const Complex& c : image) CHECK(std::abs(c) <= kEps);

  const CylinderFunction g = CylinderFunction::residue_indicator(2, 1);
  CHECK(compare_on_validity(toeplitz_hensel(sp, XVFunction(g, {})),
                            TruncatedOperator::diagonal(sp, g))
            .max_abs <= kEps);
}

TEST_CASE("Serre Toeplitz map") {
  const TruncatedSpace sp(2, 5);
  // The slot-n indicator sequence maps to the n-th projection.
  for (int n = 0; n < 3; ++n) {
    std::vector<CylinderFunction> slots(static_cast<std::size_t>(n) + 1,
                                        CylinderFunction::constant(2, 0.0));
    slots[static_cast<std::size_t>(n)] = CylinderFunction::constant(2, 1.0);
    const ConvergentSequence g(std::move(slots), CylinderFunction::constant(2, 0.0));
    CHECK(compare_on_validity(toeplitz_serre(sp, g), projection(sp, ProjectionFamily::Serre, n))
              .max_abs <= kEps);
  }

  const ConvergentSequence g0({CylinderFunction::constant(2, 1.0)},
                              CylinderFunction::constant(2, 0.0));
  const TruncatedOperator t = toeplitz_serre(sp, g0);
  const std::int64_t i11 = sp.index_of({1, 1});
  CHECK(std::abs(t.entry(i11, i11) - Complex(0.5)) <= kEps);

  const CylinderFunction c = CylinderFunction::residue_indicator(2, 0);
  CHECK(compare_on_validity(toeplitz_serre(sp, ConvergentSequence::constant(c)),
                            TruncatedOperator::diagonal(sp, c))
            .max_abs <= kEps);
}

TEST_CASE("tilde endomorphisms") {
  SeededRng rng(7);
  for (const int s : {2, 3}) {
    for (int rep = 0; rep < 10; ++rep) {
      const ConvergentSequence f = random_sequence(rng, s, 3, 2);
      const ConvergentSequence back = tilde_map(EndoKind::Transfer, tilde_map(EndoKind::Dual, f));
      for (int n = 0; n < 6; ++n) CHECK((back.at(n) - f.at(n)).max_abs() <= 1e-14);
      CHECK((back.limit() - f.limit()).max_abs() <= 1e-14);

      const XVFunction x = random_xv(rng, s, 3, 2);
      const XVFunction xback = tilde_map(EndoKind::Transfer, tilde_map(EndoKind::Dual, x));
      for (int n = 0; n < 6; ++n) CHECK(std::abs(xback.at(n) - x.at(n)) <= 1e-14);
      CHECK(std::abs(tilde_map(EndoKind::Dual, x).at(0)) == 0.0);  // x_{-1} = 0
    }
  }

  // Dual image of the constant-one sequence: slot 0 forced to 0.
  const ConvergentSequence ones = ConvergentSequence::constant(CylinderFunction::constant(2, 1.0));
  const ConvergentSequence shifted = tilde_map(EndoKind::Dual, ones);
  CHECK(shifted.at(0).max_abs() == 0.0);
  CHECK((shifted.at(1) - CylinderFunction::constant(2, 1.0)).max_abs() == 0.0);
  CHECK((shifted.limit() - CylinderFunction::constant(2, 1.0)).max_abs() == 0.0);
}

TEST_CASE("Toeplitz norm identities at the pinned sizes") {
  const TruncatedSpace sp(2, 6);
  SeededRng rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<CylinderFunction> slots;
    for (int n = 0; n < 3; ++n) slots.push_back(random_cylinder(rng, 2, 2));
    const ConvergentSequence f(std::move(slots), random_cylinder(rng, 2, 2));
    double expected = f.limit().max_abs();
    for (int n = 0; n < 3; ++n) expected = std::max(expected, f.at(n).max_abs());
    CHECK(std::abs(spectral_norm(toeplitz_bd(sp, f)) - expected) <= 1e-9);

    const XVFunction x = random_xv(rng, 2, 3, 2);
    CHECK(std::abs(spectral_norm(toeplitz_hensel(sp, x)) - x.sup_norm()) <= 1e-9);
  }
}

TEST_CASE("shift conjugation matches the tilde maps") {
  const TruncatedSpace sp(2, 6);
  SeededRng rng(43);
  const TruncatedOperator u = make_shift(sp, ShiftKind::BunceDeddens);
  const TruncatedOperator us = make_shift_adjoint(sp, ShiftKind::BunceDeddens);
  const TruncatedOperator v = make_shift(sp, ShiftKind::Hensel);
  const TruncatedOperator vs = make_shift_adjoint(sp, ShiftKind::Hensel);
  for (int rep = 0; rep < 5; ++rep) {
    const ConvergentSequence f = random_sequence(rng, 2, 2, 2);
    const TruncatedOperator tf = toeplitz_bd(sp, f);
    CHECK(compare_on_validity(u * tf * us, toeplitz_bd(sp, tilde_map(EndoKind::Dual, f))).max_abs <=
          1e-12);
    CHECK(compare_on_validity(us * tf * u, toeplitz_bd(sp, tilde_map(EndoKind::Transfer, f))).max_abs <=
          1e-12);

    const XVFunction x = random_xv(rng, 2, 2, 2);
    const TruncatedOperator tx = toeplitz_hensel(sp, x);
    CHECK(compare_on_validity(v * tx * vs, toeplitz_hensel(sp, tilde_map(EndoKind::Dual, x))).max_abs <=
          1e-12);
    CHECK(compare_on_validity(vs * tx * v, toeplitz_hensel(sp, tilde_map(EndoKind::Transfer, x)))
              .max_abs <= 1e-12);
  }
}

TEST_CASE("Fourier coefficients") {
  const TruncatedSpace sp(2, 6);
  const TruncatedOperator u = make_shift(sp, ShiftKind::BunceDeddens);
  const TruncatedOperator us = make_shift_adjoint(sp, ShiftKind::BunceDeddens);
  const TruncatedOperator chi0 = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 0));

  // Diagonal input: only the zeroth coefficient survives.
  CHECK(compare_on_validity(fourier_coefficient(chi0, 0, ShiftKind::BunceDeddens), chi0).max_abs ==
        0.0);
  for (int d = -3; d <= 3; ++d) {
    if (d != 0) CHECK(fourier_coefficient(chi0, d, ShiftKind::BunceDeddens).nonzero_count() == 0);
  }

  // a = M_{chi_0} U^2: the recovered coefficient reassembles a.
  const TruncatedOperator a = chi0 * u * u;
  const TruncatedOperator a2 = fourier_coefficient(a, 2, ShiftKind::BunceDeddens);
  CHECK(compare_on_validity(a2 * u * u, a).max_abs <= 1e-13);

  // a = U + U*: normalized first coefficients.
  const TruncatedOperator b = u + us;
  const TruncatedOperator b1 = fourier_coefficient(b, 1, ShiftKind::BunceDeddens);
  CHECK(compare_on_validity(b1, u * us).max_abs <= 1e-13);
  CHECK(compare_on_validity(b1 * u, b.degree_component(1)).max_abs <= 1e-13);
  const TruncatedOperator bm1 = fourier_coefficient(b, -1, ShiftKind::BunceDeddens);
  CHECK(compare_on_validity(us * bm1, b.degree_component(-1)).max_abs <= 1e-13);

  CHECK_THROWS_AS(fourier_coefficient(b, 7, ShiftKind::BunceDeddens), std::invalid_argument);
}

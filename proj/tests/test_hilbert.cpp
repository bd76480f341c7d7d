#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adictree/norms.hpp"
#include "adictree/op.hpp"
#include "adictree/rng.hpp"
#include "adictree/shifts.hpp"

using namespace adictree;

namespace {
constexpr double kEps = 1e-14;
}

TEST_CASE("basis enumeration is the level-lex bijection") {
  for (const int s : {2, 3, 5}) {
    const TruncatedSpace sp(s, 4);
    CHECK(sp.dim() == (pow_base(s, 5) - 1) / (s - 1));
    std::int64_t expected = 0;
    for (int n = 0; n <= 4; ++n) {
      for (std::int64_t x = 0; x < pow_base(s, n); ++x) {
        CHECK(sp.index_of({n, x}) == expected);
        CHECK(sp.vertex_at(expected) == Vertex{n, x});
        CHECK(sp.level_of(expected) == n);
        ++expected;
      }
    }
    CHECK(expected == sp.dim());
  }
}

TEST_CASE("operator algebra basics") {
  const TruncatedSpace sp(2, 4);
  SeededRng rng(17);
  const TruncatedOperator a = random_sparse_operator(rng, sp, 50);
  const TruncatedOperator id = TruncatedOperator::identity(sp);

  CHECK(compare_on_column_levels(a.adjoint().adjoint(), a, 4).max_abs == 0.0);
  CHECK(compare_on_column_levels(id * a, a, 4).max_abs == 0.0);
  CHECK(compare_on_column_levels(a * id, a, 4).max_abs == 0.0);

  const TruncatedSpace other(2, 5);
  CHECK_THROWS_AS(a + TruncatedOperator::identity(other), std::invalid_argument);
  CHECK_THROWS_AS(a * TruncatedOperator::identity(other), std::invalid_argument);

  // No exact zeros are stored.
  TruncatedOperator b(sp);
  b.set_entry(0, 0, Complex(1.0));
  b.add_entry(0, 0, Complex(-1.0));
  CHECK(b.nonzero_count() == 0);
}

TEST_CASE("diagonal operators") {
  const TruncatedSpace sp(2, 3);
  const TruncatedOperator chi0 = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 0));
  CHECK(chi0.entry(sp.index_of({2, 3}), sp.index_of({2, 3})) == Complex(0.0));
  CHECK(chi0.entry(sp.index_of({2, 2}), sp.index_of({2, 2})) == Complex(1.0));

  const TruncatedOperator one = TruncatedOperator::diagonal(sp, CylinderFunction::constant(2, 1.0));
  CHECK(compare_on_column_levels(one, TruncatedOperator::identity(sp), 3).max_abs == 0.0);

  const TruncatedOperator g1 = TruncatedOperator::diagonal(sp, TreeFunction::level_indicator(2, 1));
  for (std::int64_t i = 0; i < sp.dim(); ++i) {
    CHECK(g1.entry(i, i) == Complex(sp.level_of(i) == 1 ? 1.0 : 0.0));
  }
}

TEST_CASE("spectral norms") {
  const TruncatedSpace sp(2, 5);
  CHECK(spectral_norm(TruncatedOperator::identity(sp)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectral_norm(make_shift(sp, ShiftKind::BunceDeddens)) == doctest::Approx(1.0).epsilon(1e-12));

  const TruncatedOperator diff =
      TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 0)) -
      TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 1));
  CHECK(spectral_norm(diff) == doctest::Approx(1.0).epsilon(1e-12));

  // Power iteration agrees with the dense path across the size threshold.
  SeededRng rng(3);
  const TruncatedSpace big(2, 9);  // dim 1023 > dense limit
  const TruncatedOperator a = random_sparse_operator(rng, big, 400);
  CHECK(std::abs(power_spectral_norm(a, 1e-12) - dense_spectral_norm(a)) <= 1e-8);

  CHECK_THROWS_AS(power_spectral_norm(a, 1e-12, 1), SpectralNormError);
  CHECK_THROWS_AS(spectral_norm(a, -1.0), std::invalid_argument);
}

TEST_CASE("degree grading") {
  const TruncatedSpace sp(2, 4);
  const TruncatedOperator u = make_shift(sp, ShiftKind::BunceDeddens);
  CHECK(compare_on_column_levels(u.degree_component(1), u, 4).max_abs == 0.0);
  CHECK(u.degree_component(0).nonzero_count() == 0);

  const TruncatedOperator mf = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 1));
  CHECK(compare_on_column_levels(mf.degree_component(0), mf, 4).max_abs == 0.0);

  const TruncatedOperator p0 = projection(sp, ProjectionFamily::BunceDeddens, 0);
  for (int d = -4; d <= 4; ++d) {
    if (d != 0) CHECK(p0.degree_component(d).nonzero_count() == 0);
  }

  // Exhaustive and disjoint decomposition.
  SeededRng rng(11);
  const TruncatedOperator a = random_sparse_operator(rng, sp, 60);
  TruncatedOperator sum(sp);
  std::int64_t entries = 0;
  for (int d = -4; d <= 4; ++d) {
    sum = sum + a.degree_component(d);
    entries += a.degree_component(d).nonzero_count();
  }
  CHECK(compare_on_column_levels(sum, a, 4).max_abs == 0.0);
  CHECK(entries == a.nonzero_count());
}

TEST_CASE("expectation") {
  const TruncatedSpace sp(2, 4);
  const TruncatedOperator u = make_shift(sp, ShiftKind::BunceDeddens);
  CHECK(u.expectation().nonzero_count() == 0);

  const TruncatedOperator chi0 = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 0));
  const TruncatedOperator chi1 = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 1));
  CHECK(compare_on_column_levels(chi1.expectation(), chi1, 4).max_abs == 0.0);
  CHECK(compare_on_column_levels((u * chi0 + chi1).expectation(), chi1, 4).max_abs == 0.0);

  SeededRng rng(23);
  const TruncatedOperator a = random_sparse_operator(rng, sp, 80);
  const TruncatedOperator avg = a.expectation();
  CHECK(compare_on_column_levels(avg.expectation(), avg, 4).max_abs == 0.0);  // idempotent
  CHECK(spectral_norm(avg) <= spectral_norm(a) + 1e-10);                      // contractive
  CHECK(compare_on_column_levels(TruncatedOperator::identity(sp).expectation(),
                                 TruncatedOperator::identity(sp), 4)
            .max_abs == 0.0);  // unital
}

TEST_CASE("gauge rotation and quadrature") {
  const TruncatedSpace sp(2, 4);
  const TruncatedOperator u = make_shift(sp, ShiftKind::BunceDeddens);
  const TruncatedOperator mf = TruncatedOperator::diagonal(sp, CylinderFunction::residue_indicator(2, 0));

  CHECK(compare_on_column_levels(mf.gauge_rotate(0.37), mf, 4).max_abs == 0.0);
  CHECK(compare_on_column_levels(u.gauge_rotate(0.5), Complex(-1.0) * u, 4).max_abs <= kEps);

  SeededRng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const TruncatedOperator a = random_sparse_operator(rng, sp, 60);
    CHECK(std::abs(spectral_norm(a.gauge_rotate(0.21)) - spectral_norm(a)) <= 1e-10);
    CHECK(compare_on_column_levels(a.quadrature_expectation(2 * 4 + 1), a.expectation(), 4).max_abs <=
          1e-12);
  }
}

TEST_CASE("tail norm and blocks") {
  const TruncatedSpace sp(2, 4);
  CHECK(tail_norm(projection(sp, ProjectionFamily::Hensel, 0), 1) == 0.0);
  for (int m = 0; m <= 4; ++m) {
    CHECK(tail_norm(TruncatedOperator::identity(sp), m) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const Eigen::MatrixXcd b = projection(sp, ProjectionFamily::Serre, 0).block(1);
  REQUIRE(b.rows() == 2);
  CHECK(std::abs(b(0, 0) - Complex(0.5)) <= kEps);
  CHECK(std::abs(b(0, 1) - Complex(-0.5)) <= kEps);
  CHECK(std::abs(b(1, 0) - Complex(-0.5)) <= kEps);
  CHECK(std::abs(b(1, 1) - Complex(0.5)) <= kEps);
}

TEST_CASE("operator dump format") {
  const TruncatedSpace sp(2, 2);
  const std::string text = dump_operator(make_shift(sp, ShiftKind::BunceDeddens));
  CHECK(text ==
        "# s=2 N=2 dim=7 ordering=level-lex\n"
        "2 0 1 0\n"
        "4 1 1 0\n"
        "5 2 1 0\n");

  // 17 significant digits, row-major order.
  const std::string wtext = dump_operator(make_shift(sp, ShiftKind::Serre));
  CHECK(wtext.find("1 0 0.70710678118654746 0\n") != std::string::npos);

  // Byte-identical across repeated dumps.
  CHECK(wtext == dump_operator(make_shift(sp, ShiftKind::Serre)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adictree/line.hpp"
#include "adictree/norms.hpp"
#include "adictree/shifts.hpp"

using namespace adictree;

namespace {
constexpr double kEps = 1e-14;
}

TEST_CASE("phi and its inverse") {
  CHECK(phi(2, {2, 3}) == 7);
  CHECK(phi_inverse(3, 5) == Vertex{1, 2});
  CHECK_FALSE(phi_inverse(3, 2).has_value());
  CHECK_FALSE(phi_inverse(2, 0).has_value());
  CHECK_FALSE(phi_inverse(2, -4).has_value());

  // phi is injective and phi_inverse is its left inverse.
  for (const int s : {2, 3}) {
    for (int n = 0; n <= 4; ++n) {
      for (std::int64_t x = 0; x < pow_base(s, n); ++x) {
        CHECK(phi_inverse(s, phi(s, {n, x})) == Vertex{n, x});
      }
    }
  }
}

TEST_CASE("line generators") {
  const TruncatedSpace sp(2, 4);
  const LineSpace line = LineSpace::for_tree(sp);
  CHECK(line.lo() == -16);
  CHECK(line.hi() == 32);

  const LineOperator u1 = line_generator(line, 1);
  CHECK(u1.entry(3, 1) == Complex(1.0));

  const LineOperator u1s = line_generator_adjoint(line, 1);
  CHECK(u1s.columns().find(2) == u1s.columns().end());  // 2 is even, not = 1 mod 2
  CHECK(u1s.entry(1, 3) == Complex(1.0));
  CHECK(u1s.entry(-2, -3) == Complex(1.0));  // negative indices reduce with floor mod

  // Sum relation on the whole window.
  LineOperator sum(line);
  for (int j = 0; j < 2; ++j) {
    sum = sum + line_generator(line, j) * line_generator_adjoint(line, j);
  }
  const LineOperator id = LineOperator::identity(line);
  for (std::int64_t l = line.lo(); l <= line.hi(); ++l) {
    CHECK(std::abs(sum.entry(l, l) - Complex(1.0)) <= kEps);
  }

  CHECK(line_word(line, 2, 2).entry(2, 0) == Complex(1.0));

  // Columns whose image leaves the window are zeroed and recorded.
  const LineOperator w22 = line_word(line, 2, 2);
  CHECK_FALSE(w22.truncated_columns().empty());
  for (const std::int64_t col : w22.truncated_columns()) {
    CHECK(w22.columns().find(col) == w22.columns().end());
    CHECK_FALSE(line.contains(4 * col + 2));
  }
}

TEST_CASE("tree embedding and the compression map") {
  const TruncatedSpace sp(2, 4);
  const LineSpace line = LineSpace::for_tree(sp);
  const TreeLineEmbedding emb(sp, line);

  for (std::int64_t i = 0; i < sp.dim(); ++i) {
    std::vector<Complex> e(static_cast<std::size_t>(sp.dim()), Complex(0.0));
    e[static_cast<std::size_t>(i)] = Complex(1.0);
    const auto lifted = emb.apply(e);
    REQUIRE(lifted.size() == 1);
    const auto back = emb.apply_adjoint(lifted);
    CHECK(back == e);
  }

  CHECK(compare_on_column_levels(toeplitz_line(sp, LineOperator::identity(line)),
                                 TruncatedOperator::identity(sp), 4)
            .max_abs == 0.0);

  // T_S(u_1) E_(0,0) = E_(1,1) since phi(1,1) = 3.
  const TruncatedOperator t = toeplitz_line(sp, line_generator(line, 1));
  CHECK(t.entry(sp.index_of({1, 1}), sp.index_of({0, 0})) == Complex(1.0));

  CHECK_THROWS_AS(TreeLineEmbedding(sp, LineSpace(2, -4, 8)), std::invalid_argument);
}

TEST_CASE("compression corrections") {
  const TruncatedSpace sp(2, 6);
  const LineSpace line = LineSpace::for_tree(sp);

  // x = y = 1 lies in Ran phi with j = l = 0: the correction maps the root
  // vector to itself and kills everything else.
  const TruncatedOperator c = ts_correction(sp, line, 1, 1, 1, 1);
  CHECK(c.entry(0, 0) == Complex(1.0));
  CHECK(c.nonzero_count() == 1);
  CHECK(compare_on_validity(c, closed_form_correction(sp, 1, 1, 1, 1)).max_abs == 0.0);

  // 0 is never a phi value.
  const TruncatedOperator z = ts_correction(sp, line, 1, 0, 1, 0);
  CHECK(compare_on_validity(z, TruncatedOperator(sp)).max_abs == 0.0);
  CHECK(closed_form_correction(sp, 1, 0, 1, 0).nonzero_count() == 0);

  // Both indices must be phi values for a nonzero correction. At s = 2
  // every positive integer is a phi value, so the genuine misses live at
  // larger bases: for s = 3, 2 and 7 lie outside Ran phi.
  CHECK(closed_form_correction(sp, 3, 5, 2, 3).nonzero_count() == 1);  // 5 = 2^2+1, 3 = 2^1+1
  const TruncatedSpace sp3(3, 4);
  CHECK(closed_form_correction(sp3, 1, 2, 1, 1).nonzero_count() == 0);
  CHECK(closed_form_correction(sp3, 2, 7, 1, 1).nonzero_count() == 0);
  CHECK(closed_form_correction(sp3, 2, 4, 1, 1).nonzero_count() == 1);  // 4 = 3^1+1, 1 = 3^0+0

  // Sweep: direct and closed form agree, and every correction is rank <= 1.
  for (int n = 0; n <= 2; ++n) {
    for (std::int64_t x = 0; x < pow_base(2, n); ++x) {
      for (int m = 0; m <= 2; ++m) {
        for (std::int64_t y = 0; y < pow_base(2, m); ++y) {
          const TruncatedOperator corr = ts_correction(sp, line, n, x, m, y);
          CHECK(compare_on_validity(corr, closed_form_correction(sp, n, x, m, y)).max_abs <= 1e-13);
          CHECK(singular_value(corr, 2, 6 - std::max(0, n - m)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("compression is multiplicative modulo finite rank") {
  const TruncatedSpace sp(2, 6);
  const LineSpace line = LineSpace::for_tree(sp);
  const LineOperator a = line_word(line, 1, 1) * line_word_adjoint(line, 1, 1);
  const LineOperator b = line_word(line, 2, 3) * line_word_adjoint(line, 1, 0);
  const TruncatedOperator diff =
      toeplitz_line(sp, a * b) - toeplitz_line(sp, a) * toeplitz_line(sp, b);
  CHECK(singular_value(diff, 5, 4) <= 1e-10);
}

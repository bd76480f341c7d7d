#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "adictree/adic.hpp"
#include "adictree/rng.hpp"

using namespace adictree;

namespace {

constexpr double kEps = 1e-14;

// Ball inclusion oracle: ball(n,x) = {y : y = x mod s^n}. The parent of a
// ball is the unique ball one level up containing it, found by scanning all
// candidates and testing inclusion over a full residue system.
std::optional<Vertex> parent_by_inclusion(int s, const Vertex& v) {
  if (v.level == 0) return std::nullopt;
  const std::int64_t fine = pow_base(s, v.level);
  const std::int64_t coarse = pow_base(s, v.level - 1);
  for (std::int64_t c = 0; c < coarse; ++c) {
    bool contains = true;
    for (std::int64_t y = 0; y < fine * s; ++y) {
      if (y % fine == v.ball && y % coarse != c) {
        contains = false;
        break;
      }
    }
    if (contains) return Vertex{v.level - 1, c};
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("tree structure: parent and children") {
  CHECK(vertex_parent(2, {2, 3}) == Vertex{1, 1});
  CHECK_FALSE(vertex_parent(2, {0, 0}).has_value());

  const auto kids = vertex_children(3, {1, 2});
  REQUIRE(kids.size() == 3);
  CHECK(kids[0] == Vertex{2, 2});
  CHECK(kids[1] == Vertex{2, 5});
  CHECK(kids[2] == Vertex{2, 8});

  CHECK_THROWS_AS(vertex_parent(2, {1, 2}), std::invalid_argument);  // ball out of range

  for (const int s : {2, 3, 5}) {
    for (int n = 1; n <= 3; ++n) {
      for (std::int64_t x = 0; x < pow_base(s, n); ++x) {
        const Vertex v{n, x};
        CHECK(vertex_parent(s, v) == parent_by_inclusion(s, v));
        // Every child's parent is the vertex itself.
        for (const Vertex& c : vertex_children(s, v)) CHECK(vertex_parent(s, c) == v);
      }
    }
  }
}

TEST_CASE("cylinder evaluation and lifting") {
  const CylinderFunction chi0 = CylinderFunction::residue_indicator(2, 0);
  CHECK(chi0.eval(6) == Complex(1.0));
  CHECK(chi0.eval(3) == Complex(0.0));

  const CylinderFunction c = CylinderFunction::constant(2, Complex(2.5, -1.0));
  for (const std::int64_t x : {0, 1, 7, 12}) CHECK(c.eval(x) == Complex(2.5, -1.0));

  CHECK(CylinderFunction::residue_indicator(3, 1).eval(7) == Complex(1.0));

  const CylinderFunction one_lifted = CylinderFunction::constant(2, 1.0).lifted(2);
  CHECK(one_lifted.depth() == 2);
  CHECK(one_lifted.values() == std::vector<Complex>{1.0, 1.0, 1.0, 1.0});

  CHECK(chi0.lifted(2).values() == std::vector<Complex>{1.0, 0.0, 1.0, 0.0});
  CHECK(chi0.lifted(1) == chi0);
  CHECK_THROWS_AS(chi0.lifted(0), std::invalid_argument);
}

TEST_CASE("shift function maps on cylinder functions") {
  // Translation by +1 turns the even indicator into the odd indicator.
  const CylinderFunction chi0 = CylinderFunction::residue_indicator(2, 0);
  CHECK(endo_map(ShiftKind::BunceDeddens, EndoKind::Transfer, chi0) ==
        CylinderFunction::residue_indicator(2, 1));

  // The Hensel dual of 1 is the indicator of divisibility by s.
  const CylinderFunction div2 =
      endo_map(ShiftKind::Hensel, EndoKind::Dual, CylinderFunction::constant(2, 1.0));
  CHECK(div2.depth() == 1);
  CHECK(div2.values() == std::vector<Complex>{1.0, 0.0});

  SeededRng rng(99);
  for (const int s : {2, 3, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      const CylinderFunction f = random_cylinder(rng, s, 3);
      // transfer-after-dual is the identity for U (both orders), V and S.
      for (const ShiftKind kind : {ShiftKind::BunceDeddens, ShiftKind::Hensel, ShiftKind::Bernoulli}) {
        const CylinderFunction g =
            endo_map(kind, EndoKind::Transfer, endo_map(kind, EndoKind::Dual, f));
        CHECK((g - f).max_abs() <= kEps);
      }
      const CylinderFunction h =
          endo_map(ShiftKind::BunceDeddens, EndoKind::Dual,
                   endo_map(ShiftKind::BunceDeddens, EndoKind::Transfer, f));
      CHECK((h - f).max_abs() <= kEps);
      // dual-after-transfer for V multiplies by the divisibility indicator.
      const CylinderFunction one = CylinderFunction::constant(s, 1.0);
      const CylinderFunction lhs =
          endo_map(ShiftKind::Hensel, EndoKind::Dual, endo_map(ShiftKind::Hensel, EndoKind::Transfer, f));
      const CylinderFunction rhs = endo_map(ShiftKind::Hensel, EndoKind::Dual, one) * f;
      CHECK((lhs - rhs).max_abs() <= kEps);
    }
    // Both Bernoulli maps preserve constants.
    const CylinderFunction one = CylinderFunction::constant(s, 1.0);
    CHECK((endo_map(ShiftKind::Bernoulli, EndoKind::Dual, one) - one).max_abs() == 0.0);
    CHECK((endo_map(ShiftKind::Bernoulli, EndoKind::Transfer, one) - one).max_abs() == 0.0);
  }

  // Depth contract.
  const CylinderFunction f(3, 2, std::vector<Complex>(9, Complex(1.0)));
  CHECK(endo_map(ShiftKind::BunceDeddens, EndoKind::Dual, f).depth() == 2);
  CHECK(endo_map(ShiftKind::Hensel, EndoKind::Transfer, f).depth() == 1);
  CHECK(endo_map(ShiftKind::Bernoulli, EndoKind::Transfer, f).depth() == 1);
  CHECK(endo_map(ShiftKind::Hensel, EndoKind::Dual, f).depth() == 3);
  CHECK(endo_map(ShiftKind::Bernoulli, EndoKind::Dual, f).depth() == 3);
}

TEST_CASE("tree functions and the Serre maps") {
  const TreeFunction g0 = TreeFunction::level_indicator(2, 0);
  const TreeFunction g1 = TreeFunction::level_indicator(2, 1);

  const TreeFunction up = tree_map(EndoKind::Dual, g0);
  for (int n = 0; n <= 3; ++n) {
    for (std::int64_t x = 0; x < pow_base(2, n); ++x) {
      CHECK(std::abs(up.eval(n, x) - g1.eval(n, x)) <= kEps);
    }
  }
  CHECK(up.eval(0, 0) == Complex(0.0));

  // A tail-only function is reproduced by the transfer map from the tail
  // depth on; below that the map genuinely averages.
  const CylinderFunction f = CylinderFunction::residue_indicator(2, 1);
  const TreeFunction tail_only = TreeFunction::from_cylinder(f);
  const TreeFunction down = tree_map(EndoKind::Transfer, tail_only);
  for (int n = f.depth(); n <= 4; ++n) {
    for (std::int64_t x = 0; x < pow_base(2, n); ++x) {
      CHECK(std::abs(down.eval(n, x) - f.eval(x)) <= kEps);
    }
  }
  CHECK(std::abs(down.eval(0, 0) - Complex(0.5)) <= kEps);  // mean of the two residues
  CHECK((down.tail() - f).max_abs() == 0.0);

  SeededRng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const TreeFunction F = random_tree_function(rng, 3, 2, 2);
    for (const EndoKind dir : {EndoKind::Dual, EndoKind::Transfer}) {
      const TreeFunction image = tree_map(dir, F);
      CHECK((image.tail() - F.tail()).max_abs() == 0.0);
      for (int n = image.max_explicit_level() + 1; n <= image.max_explicit_level() + 2; ++n) {
        CHECK(image.limit_deviation(n) == 0.0);
      }
    }
  }
}

TEST_CASE("special functions") {
  // h_n(m) values at s = 2.
  CHECK(std::abs(serre_h(2, 1, 1)) <= kEps);
  CHECK(std::abs(serre_h(2, 1, 2) - Complex(1.0)) <= kEps);
  CHECK(std::abs(serre_h(2, 1, 0) - Complex(0.5, 0.5)) <= kEps);

  for (const int s : {2, 3, 5}) {
    for (int n = 0; n <= 8; ++n) {
      for (int m = 0; m <= 8; ++m) {
        const Complex h = serre_h(s, n, m);
        if (m > n) CHECK(std::abs(h - Complex(1.0)) <= 1e-12);
        if (m == n) CHECK(std::abs(h) <= 1e-12);
        // Closed geometric sum in the stable ratio form.
        if (m <= n) {
          const double t = 2.0 * std::numbers::pi / std::pow(double(s), double(n + 1 - m));
          const double ratio = std::sin(0.5 * s * t) / std::sin(0.5 * t);
          const double phase = 0.5 * (s - 1) * t;
          const Complex expected = ratio * Complex(std::cos(phase), std::sin(phase)) / double(s);
          CHECK(std::abs(h - expected) <= 1e-12);
        }
      }
    }
  }

  // chi_{1,1} is the indicator of the single vertex (1,1).
  const TreeFunction chi11 = TreeFunction::vertex_indicator(2, 1, 1);
  CHECK(chi11.eval(1, 1) == Complex(1.0));
  CHECK(chi11.eval(1, 0) == Complex(0.0));
  CHECK(chi11.eval(2, 1) == Complex(0.0));

  // chi_n characters: depth-n tables of s^n-th roots of unity.
  const CylinderFunction chi2 = CylinderFunction::character(2, 2);
  CHECK(chi2.depth() == 2);
  CHECK(std::abs(chi2.eval(1) - Complex(0.0, 1.0)) <= kEps);
  CHECK(std::abs(chi2.eval(6) - Complex(-1.0)) <= kEps);
  CHECK(CylinderFunction::character(2, 0) == CylinderFunction::constant(2, 1.0));
}

TEST_CASE("membership deviation") {
  const TreeFunction g0 = TreeFunction::level_indicator(2, 0);
  CHECK(g0.limit_deviation(0) == 1.0);
  CHECK(g0.limit_deviation(g0.max_explicit_level() + 1) == 0.0);

  const TreeFunction c = TreeFunction::from_cylinder(CylinderFunction::constant(3, Complex(0.0, 2.0)));
  for (int n = 0; n <= 4; ++n) CHECK(c.limit_deviation(n) == 0.0);
}

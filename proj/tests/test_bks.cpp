#include <catch2/catch.hpp>

#include <random>

#include "gq/bks.hpp"

using namespace gq;

namespace {

Isometry swap_isometry(const Polarization& p) {
  // (l, chi) -> (chi, l); an isometry of the evaluation form when the
  // pairing is symmetric in coordinates (F_p case).
  long r = p.l.rank();
  Mat<i64> m(2 * r, 2 * r);
  for (long i = 0; i < r; ++i) {
    m.at(i, r + i) = 1;
    m.at(r + i, i) = 1;
  }
  return Isometry{AbHom(p.metric.group(), p.metric.group(), m)};
}

}  // namespace

TEST_CASE("kappa_q for the standard polarization of Z/3") {
  auto m = standard_hyperbolic(FinAbGroup{{3}});
  auto lags = lagrangian_subgroups(m);
  REQUIRE(lags.size() == 2);
  // Identify which Lagrangian is L (+) 0.
  FinAbGroup a = m.group();
  const Subgroup& lsub = lags[0].contains(a.index({1, 0})) ? lags[0] : lags[1];
  const Subgroup& ksub = lags[0].contains(a.index({1, 0})) ? lags[1] : lags[0];
  auto kq = kappa_q(m, lsub, ksub);

  SECTION("kappa((l1,x1),(l2,x2)) = x2(l1)") {
    for (i64 u = 0; u < 9; ++u)
      for (i64 v = 0; v < 9; ++v) {
        auto uv = a.element(u), vv = a.element(v);
        REQUIRE(kq.cochain.eval({u, v}) == mod_reduce(uv[0] * vv[1], 3));
      }
  }
  SECTION("the Schur pairing component is the restricted bicharacter") {
    auto sp = schur_split(kq.cochain, 1);
    REQUIRE(sp.c1.is_zero());
    REQUIRE(sp.c2.is_zero());
    for (i64 l = 0; l < 3; ++l)
      for (i64 k = 0; k < 3; ++k)
        REQUIRE(sp.pairing.at(long(l), long(k)) == m.b(a.index({l, 0}), a.index({0, k})));
  }
  SECTION("alt recovers the pairing on L x K") {
    auto alt = alt_of_cocycle(kq.cochain);
    for (i64 l = 0; l < 3; ++l)
      for (i64 k = 0; k < 3; ++k)
        REQUIRE(alt.at(a.index({l, 0}), a.index({0, k})) == m.b(a.index({l, 0}), a.index({0, k})));
  }
  SECTION("non-transverse input is rejected") {
    REQUIRE_THROWS_AS(kappa_q(m, lsub, lsub), input_error);
  }
}

TEST_CASE("kappa_ev_g") {
  FinAbGroup l{{3}};
  auto p = make_polarization(l);
  SECTION("explicit table for the swap reflection") {
    Isometry sw = swap_isometry(p);
    auto kg = kappa_ev_g(p, sw);
    FinAbGroup l2 = p.l_squared();
    for (i64 x = 0; x < 9; ++x)
      for (i64 y = 0; y < 9; ++y) {
        auto xv = l2.element(x), yv = l2.element(y);
        REQUIRE(kg.cochain.eval({x, y}) == mod_reduce(xv[0] * yv[1], 3));
      }
  }
  SECTION("pairing component is nondegenerate, zero row at l = 0") {
    for (const auto& r : reflections(p.metric)) {
      auto kg = kappa_ev_g(p, r);
      auto assoc = middle_associator(p, kg.cochain);
      // Zero row.
      for (i64 k = 0; k < 3; ++k) REQUIRE(assoc.table.at(0, long(k)) == 0);
      // Nondegenerate: every nonzero row and column hits a unit.
      for (i64 x = 1; x < 3; ++x) {
        bool row = false, col = false;
        for (i64 y = 0; y < 3; ++y) {
          row = row || assoc.table.at(long(x), long(y)) != 0;
          col = col || assoc.table.at(long(y), long(x)) != 0;
        }
        REQUIRE(row);
        REQUIRE(col);
      }
      REQUIRE(is_cocycle(kg.cochain));
    }
  }
  SECTION("non-transverse g is rejected") {
    REQUIRE_THROWS_AS(kappa_ev_g(p, identity_isometry(p.metric)), input_error);
  }
}

TEST_CASE("middle associator is a class invariant") {
  FinAbGroup l{{3}};
  auto p = make_polarization(l);
  auto r = reflections(p.metric)[0];
  auto kg = kappa_ev_g(p, r);
  std::mt19937 rng(21);
  auto l2g = kg.cochain.group;
  for (int t = 0; t < 5; ++t) {
    Cochain b(l2g, 1, 3);
    for (auto& v : b.values) v = i64(rng() % 3);
    Cochain perturbed = kg.cochain + bar_differential(b);
    REQUIRE(middle_associator(p, perturbed) == middle_associator(p, kg.cochain));
  }
}

TEST_CASE("eno bicharacter") {
  FinAbGroup l{{3}};
  auto p = make_polarization(l);
  SECTION("H = L^2 and chi alternating for reflections") {
    for (const auto& r : reflections(p.metric)) {
      auto eno = eno_bicharacter(p, r);
      REQUIRE(eno.h.order() == 9);
      REQUIRE(eno.chi.is_alternating());
      REQUIRE(eno.chi.is_biadditive());
    }
  }
  SECTION("identity violates transversality") {
    REQUIRE_THROWS_AS(eno_bicharacter(p, identity_isometry(p.metric)), input_error);
  }
}

TEST_CASE("bks verification") {
  SECTION("L = Z/3: both reflections pass under the frozen sign") {
    auto report = verify_bks(FinAbGroup{{3}});
    REQUIRE(report.per_reflection.size() == 2);
    REQUIRE(report.all_pass);
    REQUIRE(report.sign == kBksSignConvention);
  }
  SECTION("L = Z/5: all reflections pass under the same sign") {
    auto report = verify_bks(FinAbGroup{{5}});
    REQUIRE(report.per_reflection.size() == 4);
    REQUIRE(report.all_pass);
  }
  SECTION("the frozen sign is +1") { REQUIRE(kBksSignConvention == 1); }
  SECTION("changing iota by an automorphism of the dual leaves the check intact") {
    FinAbGroup l{{3}};
    Mat<i64> twice(1, 1);
    twice.at(0, 0) = 2;
    auto report = verify_bks(l, AbHom(l, l, twice));
    REQUIRE(report.all_pass);
  }
  SECTION("non-field input is rejected") {
    REQUIRE_THROWS_AS(verify_bks(FinAbGroup{{4}}), input_error);
    REQUIRE_THROWS_AS(verify_bks(FinAbGroup{{2}}), input_error);
  }
}

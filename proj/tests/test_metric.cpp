#include <catch2/catch.hpp>

#include "gq/metric.hpp"

using namespace gq;

namespace {

// Split orthogonal group order over F_q in dimension 2m:
// 2 q^{m(m-1)} (q^m - 1) prod_{i=1}^{m-1} (q^{2i} - 1).
i64 split_orthogonal_order(i64 q, i64 m) {
  i64 out = 2;
  for (i64 i = 0; i < m * (m - 1); ++i) out *= q;
  i64 qm = 1;
  for (i64 i = 0; i < m; ++i) qm *= q;
  out *= qm - 1;
  for (i64 i = 1; i <= m - 1; ++i) {
    i64 q2i = 1;
    for (i64 j = 0; j < 2 * i; ++j) q2i *= q;
    out *= q2i - 1;
  }
  return out;
}

}  // namespace

TEST_CASE("bicharacter of a form") {
  SECTION("zero form") {
    QuadraticForm q(FinAbGroup{{3}}, 3, {0, 0, 0});
    bool all_zero = true;
    for (i64 v : bicharacter_of_form(q).table) all_zero = all_zero && v == 0;
    REQUIRE(all_zero);
  }
  SECTION("evaluation form on Z/3 (+) dual") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    FinAbGroup a = m.group();
    // <(l, x), (l', x')> = x(l') + x'(l) = x l' + x' l mod 3.
    for (i64 u = 0; u < 9; ++u)
      for (i64 v = 0; v < 9; ++v) {
        auto uv = a.element(u), vv = a.element(v);
        REQUIRE(m.b(u, v) == mod_reduce(uv[1] * vv[0] + vv[1] * uv[0], 3));
      }
  }
  SECTION("q(a) = a^2 on Z/3 polarizes to 2ab") {
    QuadraticForm q(FinAbGroup{{3}}, 3, {0, 1, 1});
    auto b = bicharacter_of_form(q);
    for (i64 x = 0; x < 3; ++x)
      for (i64 y = 0; y < 3; ++y) REQUIRE(b.at(x, y) == mod_reduce(2 * x * y, 3));
  }
}

TEST_CASE("standard hyperbolic metric groups") {
  SECTION("L = Z/3 gives q((a,b)) = ab") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    REQUIRE(m.group().factors == std::vector<i64>{3, 3});
    FinAbGroup a = m.group();
    for (i64 x = 0; x < 9; ++x) {
      auto xv = a.element(x);
      REQUIRE(m.q(x) == mod_reduce(xv[0] * xv[1], 3));
    }
  }
  SECTION("trivial L") {
    auto m = standard_hyperbolic(FinAbGroup{});
    REQUIRE(m.group().order() == 1);
  }
  SECTION("L = Z/2 (+) Z/2 is nondegenerate of order 16") {
    auto m = standard_hyperbolic(FinAbGroup{{2, 2}});
    REQUIRE(m.group().order() == 16);
    REQUIRE(is_nondegenerate(m.form));
  }
  SECTION("zero form on a nontrivial group is degenerate") {
    QuadraticForm q(FinAbGroup{{3}}, 3, {0, 0, 0});
    REQUIRE_FALSE(is_nondegenerate(q));
  }
  SECTION("q(a) = a^2 on Z/2 at modulus 4 is nondegenerate") {
    QuadraticForm q(FinAbGroup{{2}}, 4, {0, 1});
    REQUIRE(is_nondegenerate(q));
  }
}

TEST_CASE("orthogonal groups") {
  SECTION("|O(Z/3 (+) dual)| = 4 brute force, matching the split order formula") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    auto o = orthogonal_group(m, OrthogonalStrategy::BruteForce);
    REQUIRE(i64(o.size()) == 4);
    REQUIRE(i64(o.size()) == split_orthogonal_order(3, 1));
  }
  SECTION("|O(Z/5 (+) dual)| = 8") {
    auto m = standard_hyperbolic(FinAbGroup{{5}});
    auto o = orthogonal_group(m, OrthogonalStrategy::BruteForce);
    REQUIRE(i64(o.size()) == 8);
    REQUIRE(i64(o.size()) == split_orthogonal_order(5, 1));
  }
  SECTION("strategy agreement on (Z/p)^2 hyperbolics") {
    for (i64 p : {3, 5}) {
      auto m = standard_hyperbolic(FinAbGroup{{p}});
      auto brute = orthogonal_group(m, OrthogonalStrategy::BruteForce);
      auto refl = orthogonal_group(m, OrthogonalStrategy::ReflectionClosure);
      REQUIRE(brute.size() == refl.size());
      REQUIRE(std::equal(brute.begin(), brute.end(), refl.begin()));
    }
  }
  SECTION("closure is a group containing the identity") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    auto o = orthogonal_group(m);
    auto id = identity_isometry(m);
    REQUIRE(std::count(o.begin(), o.end(), id) == 1);
    for (const auto& g : o)
      for (const auto& h : o) {
        Isometry gh = compose(g, h);
        REQUIRE(std::count(o.begin(), o.end(), gh) == 1);
      }
  }
}

TEST_CASE("determinant class") {
  auto m = standard_hyperbolic(FinAbGroup{{3}});
  SECTION("identity is special") {
    REQUIRE(determinant_class(m, identity_isometry(m)) == 1);
  }
  SECTION("minus one on (Z/3)^2 is special") {
    Mat<i64> neg(2, 2);
    neg.at(0, 0) = 2;
    neg.at(1, 1) = 2;
    Isometry g{AbHom(m.group(), m.group(), neg)};
    REQUIRE(preserves_form(m, g.hom));
    REQUIRE(determinant_class(m, g) == 1);
  }
  SECTION("reflections have class 3 and SO has index 2") {
    auto o = orthogonal_group(m);
    long in_so = 0;
    for (const auto& g : o)
      if (determinant_class(m, g) == 1) ++in_so;
    REQUIRE(in_so * 2 == long(o.size()));
    for (const auto& r : reflections(m)) REQUIRE(determinant_class(m, r) == 3);
  }
  SECTION("multiplicative on square classes") {
    auto o = orthogonal_group(m);
    for (const auto& g : o)
      for (const auto& h : o) {
        i64 dg = determinant_class(m, g), dh = determinant_class(m, h);
        i64 dgh = determinant_class(m, compose(g, h));
        REQUIRE(dgh == squarefree_part(dg * dh));
      }
  }
}

TEST_CASE("reflections") {
  auto m = standard_hyperbolic(FinAbGroup{{3}});
  auto refl = reflections(m);
  SECTION("exactly two on Z/3 (+) dual") { REQUIRE(refl.size() == 2); }
  SECTION("involutions sending v to -v") {
    for (i64 v = 1; v < 9; ++v) {
      if (m.q(v) == 0) continue;
      Isometry r = reflect(m, v);
      REQUIRE(compose(r, r) == identity_isometry(m));
      REQUIRE(r.hom.apply(v) == m.group().neg(v));
    }
  }
  SECTION("isotropic vectors are rejected") {
    REQUIRE_THROWS_AS(reflect(m, m.group().index({1, 0})), input_error);
  }
  SECTION("reflections are exactly the hyperplane-fixing involutions in O") {
    auto o = orthogonal_group(m);
    std::vector<Isometry> expected;
    for (const auto& g : o) {
      if (g == identity_isometry(m)) continue;
      if (!(compose(g, g) == identity_isometry(m))) continue;
      long fixed = 0;
      for (i64 x = 0; x < 9; ++x)
        if (g.hom.apply(x) == x) ++fixed;
      if (fixed == 3) expected.push_back(g);  // hyperplane = 3 of 9 elements
    }
    REQUIRE(expected == refl);
  }
}

TEST_CASE("cartan-dieudonne factorization") {
  SECTION("identity factors as the empty list") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    REQUIRE(cartan_dieudonne(m, identity_isometry(m)).empty());
  }
  SECTION("a reflection factors as itself") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    for (const auto& r : reflections(m)) {
      auto f = cartan_dieudonne(m, r);
      REQUIRE(f.size() == 1);
      REQUIRE(f[0] == r);
    }
  }
  SECTION("minus one on Z/3 (+) dual takes exactly two reflections") {
    auto m = standard_hyperbolic(FinAbGroup{{3}});
    Mat<i64> neg(2, 2);
    neg.at(0, 0) = 2;
    neg.at(1, 1) = 2;
    Isometry g{AbHom(m.group(), m.group(), neg)};
    auto f = cartan_dieudonne(m, g);
    REQUIRE(f.size() == 2);
    Isometry acc = identity_isometry(m);
    for (const auto& r : f) acc = compose(r, acc);
    REQUIRE(acc == g);
  }
  SECTION("whole groups factor within the dimension bound") {
    for (i64 p : {3, 5}) {
      auto m = standard_hyperbolic(FinAbGroup{{p}});
      for (const auto& g : orthogonal_group(m)) {
        auto f = cartan_dieudonne(m, g);
        REQUIRE(i64(f.size()) <= 2);
        Isometry acc = identity_isometry(m);
        for (const auto& r : f) acc = compose(r, acc);
        REQUIRE(acc == g);
      }
    }
  }
}

TEST_CASE("lagrangian subgroups and transversality") {
  auto m = standard_hyperbolic(FinAbGroup{{3}});
  auto lags = lagrangian_subgroups(m);
  SECTION("exactly L (+) 0 and 0 (+) dual for Z/3") {
    REQUIRE(lags.size() == 2);
    FinAbGroup a = m.group();
    std::vector<i64> lpart, dpart;
    for (i64 x = 0; x < 3; ++x) {
      lpart.push_back(a.index({x, 0}));
      dpart.push_back(a.index({0, x}));
    }
    std::sort(lpart.begin(), lpart.end());
    std::sort(dpart.begin(), dpart.end());
    REQUIRE(((lags[0].elements == lpart && lags[1].elements == dpart) ||
             (lags[0].elements == dpart && lags[1].elements == lpart)));
    REQUIRE(is_transverse(lags[0], lags[1]));
  }
  SECTION("lemma: gL is transverse to L for every reflection") {
    for (i64 p : {3, 5}) {
      auto mg = standard_hyperbolic(FinAbGroup{{p}});
      auto ls = lagrangian_subgroups(mg);
      for (const auto& l : ls)
        for (const auto& r : reflections(mg))
          REQUIRE(is_transverse(l, image_subgroup(mg.group(), r, l)));
    }
  }
  SECTION("lagrangians are maximal isotropic") {
    for (const auto& l : lags) {
      for (const auto& s : enumerate_subgroups(m.group())) {
        bool isotropic = true;
        for (i64 x : s.elements) isotropic = isotropic && m.q(x) == 0;
        if (!isotropic) continue;
        // No isotropic subgroup strictly contains a Lagrangian.
        if (s.order() <= l.order()) continue;
        bool contains = std::includes(s.elements.begin(), s.elements.end(), l.elements.begin(),
                                      l.elements.end());
        REQUIRE_FALSE(contains);
      }
    }
  }
}

TEST_CASE("reflection closure on the order-1152 split group") {
  auto m = standard_hyperbolic(FinAbGroup{{3, 3}});
  auto o = orthogonal_group(m, OrthogonalStrategy::ReflectionClosure);
  REQUIRE(i64(o.size()) == split_orthogonal_order(3, 2));
  REQUIRE(i64(o.size()) == 1152);
}

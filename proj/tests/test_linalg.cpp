#include <catch2/catch.hpp>

#include <random>

#include "gq/intmat.hpp"
#include "gq/modmat.hpp"

using namespace gq;

namespace {

IntMatrix make(long rows, long cols, std::initializer_list<long> vals) {
  IntMatrix m(rows, cols);
  auto it = vals.begin();
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.at(i, j) = *it++;
  return m;
}

bool is_divisor_chain(const IntMatrix& d) {
  long n = std::min(d.rows, d.cols);
  for (long i = 0; i + 1 < n; ++i) {
    if (d.at(i, i) < 0) return false;
    if (d.at(i, i) != 0 && d.at(i + 1, i + 1) % d.at(i, i) != 0) return false;
    if (d.at(i, i) == 0 && d.at(i + 1, i + 1) != 0) return false;
  }
  for (long i = 0; i < d.rows; ++i)
    for (long j = 0; j < d.cols; ++j)
      if (i != j && d.at(i, j) != 0) return false;
  return true;
}

// Independent brute-force oracle: does A x = b (mod n) have a solution?
bool brute_solvable(const ModMatrix& a, const std::vector<i64>& b) {
  long total = 1;
  for (long j = 0; j < a.cols; ++j) total *= a.modulus;
  std::vector<i64> x(a.cols, 0);
  for (long t = 0; t < total; ++t) {
    long r = t;
    for (long j = 0; j < a.cols; ++j) {
      x[j] = r % a.modulus;
      r /= a.modulus;
    }
    bool ok = true;
    for (long i = 0; i < a.rows && ok; ++i) {
      i64 acc = 0;
      for (long j = 0; j < a.cols; ++j) acc += a.at(i, j) * x[j];
      ok = mod_reduce(acc, a.modulus) == mod_reduce(b[i], a.modulus);
    }
    if (ok) return true;
  }
  return a.cols == 0 ? [&] {
    for (i64 v : b)
      if (mod_reduce(v, a.modulus) != 0) return false;
    return true;
  }()
                     : false;
}

}  // namespace

TEST_CASE("smith normal form on the spec cases") {
  SECTION("identity 2x2") {
    auto r = smith_normal_form(IntMatrix::identity(2));
    REQUIRE(r.d == IntMatrix::identity(2));
    REQUIRE(r.u.mul(IntMatrix::identity(2)).mul(r.v) == r.d);
  }
  SECTION("diag(2,3) has invariants 1, 6") {
    IntMatrix m = make(2, 2, {2, 0, 0, 3});
    auto r = smith_normal_form(m);
    REQUIRE(r.d.at(0, 0) == 1);
    REQUIRE(r.d.at(1, 1) == 6);
    REQUIRE(r.u.mul(m).mul(r.v) == r.d);
  }
  SECTION("zero 1x1") {
    IntMatrix m(1, 1);
    auto r = smith_normal_form(m);
    REQUIRE(r.d.at(0, 0) == 0);
  }
}

TEST_CASE("smith roundtrip on random matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> ent(-20, 20);
  std::uniform_int_distribution<int> dim(1, 30);
  for (int trial = 0; trial < 25; ++trial) {
    long rows = dim(rng), cols = dim(rng);
    IntMatrix m(rows, cols);
    for (auto& x : m.a) x = ent(rng);
    auto r = smith_normal_form(m);
    REQUIRE(r.u.mul(m).mul(r.v) == r.d);
    REQUIRE(is_divisor_chain(r.d));
    BigInt du = determinant(r.u), dv = determinant(r.v);
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
  }
}

TEST_CASE("solve_mod spec cases") {
  SECTION("identity system") {
    ModMatrix a = ModMatrix::identity(3, 7);
    std::vector<i64> b{3, 0, 5};
    auto out = solve_mod(a, b);
    REQUIRE(out.solvable);
    REQUIRE(out.x == b);
    REQUIRE(out.kernel.empty());
  }
  SECTION("2x = 1 mod 4 is unsolvable with certificate") {
    ModMatrix a(1, 1, 4);
    a.at(0, 0) = 2;
    auto out = solve_mod(a, {1});
    REQUIRE_FALSE(out.solvable);
    REQUIRE_FALSE(out.cert.combo.empty());
    // c*A = 0 and c*b != 0 re-checked by hand.
    i64 ca = 0, cb = 0;
    for (auto [tag, coeff] : out.cert.combo) {
      REQUIRE(tag == 0);
      ca = mod_reduce(ca + coeff * 2, 4);
      cb = mod_reduce(cb + coeff * 1, 4);
    }
    REQUIRE(ca == 0);
    REQUIRE(cb != 0);
  }
  SECTION("2x = 2 mod 4 solves with kernel {2}") {
    ModMatrix a(1, 1, 4);
    a.at(0, 0) = 2;
    auto out = solve_mod(a, {2});
    REQUIRE(out.solvable);
    REQUIRE(out.x == std::vector<i64>{1});
    REQUIRE(out.kernel.size() == 1);
    REQUIRE(out.kernel[0] == std::vector<i64>{2});
  }
}

TEST_CASE("solve_mod agrees with exhaustive search on small systems") {
  std::mt19937 rng(777);
  for (i64 n : {2, 3, 4, 5, 6}) {
    // Exhaustive over all 1x1 and 2x2 systems for n <= 4, sampled above.
    if (n <= 4) {
      for (i64 a00 = 0; a00 < n; ++a00)
        for (i64 b0 = 0; b0 < n; ++b0) {
          ModMatrix a(1, 1, n);
          a.at(0, 0) = a00;
          auto out = solve_mod(a, {b0});
          REQUIRE(out.solvable == brute_solvable(a, {b0}));
          if (!out.solvable) REQUIRE_FALSE(out.cert.combo.empty());
        }
    }
    std::uniform_int_distribution<int> rows_d(1, 4), cols_d(1, 3), val(0, int(n) - 1);
    for (int trial = 0; trial < 200; ++trial) {
      ModMatrix a(rows_d(rng), cols_d(rng), n);
      for (auto& x : a.a) x = val(rng);
      std::vector<i64> b(a.rows);
      for (auto& x : b) x = val(rng);
      auto out = solve_mod(a, b);
      REQUIRE(out.solvable == brute_solvable(a, b));
      if (out.solvable) {
        // Postcondition: solution and kernel re-verify.
        for (long i = 0; i < a.rows; ++i) {
          i64 acc = 0;
          for (long j = 0; j < a.cols; ++j) acc += a.at(i, j) * out.x[j];
          REQUIRE(mod_reduce(acc, n) == b[i]);
        }
        for (const auto& kvec : out.kernel)
          for (long i = 0; i < a.rows; ++i) {
            i64 acc = 0;
            for (long j = 0; j < a.cols; ++j) acc += a.at(i, j) * kvec[j];
            REQUIRE(mod_reduce(acc, n) == 0);
          }
      } else {
        std::vector<i64> ca(a.cols, 0);
        i64 cb = 0;
        for (auto [tag, coeff] : out.cert.combo) {
          for (long j = 0; j < a.cols; ++j) ca[j] = mod_reduce(ca[j] + coeff * a.at(tag, j), n);
          cb = mod_reduce(cb + coeff * b[tag], n);
        }
        for (i64 v : ca) REQUIRE(v == 0);
        REQUIRE(cb != 0);
      }
    }
  }
}

TEST_CASE("solve_mod kernel spans the full solution set on small systems") {
  // Brute-force every solution and check it is particular + kernel span.
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> val6(0, 5);
  for (int trial = 0; trial < 60; ++trial) {
    ModMatrix a(2, 2, 6);
    for (auto& x : a.a) x = val6(rng);
    std::vector<i64> b{val6(rng), val6(rng)};
    auto out = solve_mod(a, b);
    if (!out.solvable) continue;
    // Enumerate the kernel span.
    std::set<std::vector<i64>> span;
    std::vector<std::vector<i64>> frontier{std::vector<i64>(2, 0)};
    span.insert(frontier[0]);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<i64>> next;
      for (const auto& s : span)
        for (const auto& k : out.kernel) {
          std::vector<i64> t(2);
          for (int j = 0; j < 2; ++j) t[j] = mod_reduce(s[j] + k[j], 6);
          if (span.find(t) == span.end()) next.push_back(t);
        }
      for (auto& t : next)
        if (span.insert(t).second) grew = true;
    }
    long sols = 0;
    for (i64 x0 = 0; x0 < 6; ++x0)
      for (i64 x1 = 0; x1 < 6; ++x1) {
        bool ok = true;
        for (long i = 0; i < 2; ++i) {
          i64 acc = a.at(i, 0) * x0 + a.at(i, 1) * x1;
          ok = ok && mod_reduce(acc, 6) == b[i];
        }
        if (!ok) continue;
        ++sols;
        std::vector<i64> diff{mod_reduce(x0 - out.x[0], 6), mod_reduce(x1 - out.x[1], 6)};
        REQUIRE(span.count(diff) == 1);
      }
    REQUIRE(sols == long(span.size()));
  }
}

TEST_CASE("cokernel invariants") {
  SECTION("zero map with ambient 3") {
    IntMatrix z(2, 2);
    REQUIRE(cokernel_invariants(z, 3) == std::vector<i64>{3, 3});
  }
  SECTION("identity map") {
    REQUIRE(cokernel_invariants(IntMatrix::identity(2), 5).empty());
  }
  SECTION("multiplication by 2 on Z/6") {
    IntMatrix m = make(1, 1, {2});
    REQUIRE(cokernel_invariants(m, 6) == std::vector<i64>{2});
  }
}

TEST_CASE("quotient presentation of Z^2 by diag(2,3)") {
  Mat<i64> rel(2, 2);
  rel.at(0, 0) = 2;
  rel.at(1, 1) = 3;
  auto q = quotient_by_lattice(rel, 6);
  REQUIRE(q.factors == std::vector<i64>{6});
  REQUIRE(q.gens.size() == 1);
  // The generator must have order 6: k * gen must hit the lattice only at 6.
  const auto& g = q.gens[0];
  auto coords = q.coords(g);
  REQUIRE(coords == std::vector<i64>{1});
  std::vector<i64> twog{mod_reduce(2 * g[0], 6), mod_reduce(2 * g[1], 6)};
  REQUIRE(q.coords(twog) == std::vector<i64>{2});
}

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gq/common.hpp"
#include "gq/intmat.hpp"

namespace gq {

// Matrix over Z/N, entries reduced to [0, N).
struct ModMatrix {
  long rows = 0;
  long cols = 0;
  i64 modulus = 2;
  std::vector<i64> a;

  ModMatrix() = default;
  ModMatrix(long r, long c, i64 n) : rows(r), cols(c), modulus(n), a(std::size_t(r) * c, 0) {
    if (n < 2) throw input_error("ModMatrix: modulus must be >= 2");
  }
  i64& at(long r, long c) { return a[std::size_t(r) * cols + c]; }
  const i64& at(long r, long c) const { return a[std::size_t(r) * cols + c]; }

  static ModMatrix identity(long n, i64 mod) {
    ModMatrix m(n, n, mod);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1 % mod;
    return m;
  }
};

struct SmithModResult {
  Mat<i64> d;     // diagonal mod N, divisor chain on gcd(d_ii, N)
  Mat<i64> u;     // invertible mod N
  Mat<i64> uinv;  // u * uinv = I mod N
  Mat<i64> v;     // invertible mod N; u*m*v = d mod N
};

inline SmithModResult smith_mod(Mat<i64> m, i64 modulus) {
  SmithModResult out{std::move(m), {}, {}, {}};
  for (auto& x : out.d.a) x = mod_reduce(x, modulus);
  out.u = Mat<i64>::identity(out.d.rows);
  out.uinv = Mat<i64>::identity(out.d.rows);
  out.v = Mat<i64>::identity(out.d.cols);
  detail::smith_diagonalize(out.d, &out.u, &out.v, modulus, &out.uinv);
  return out;
}

// Sparse linear system A x = b over Z/N with machine-checkable outcomes:
// either a particular solution plus kernel generators, or an inconsistency
// certificate c with c*A = 0 and c*b != 0 (all mod N).
//
// Rows are streamed into a gcd staircase; certificates are recovered from
// per-pivot provenance (each staircase row as a combination of input rows).
class LinearSystemMod {
 public:
  struct Certificate {
    std::vector<std::pair<long, i64>> combo;  // (row tag, coefficient)
  };
  struct Outcome {
    bool solvable = false;
    std::vector<i64> x;                     // canonical particular solution
    std::vector<std::vector<i64>> kernel;   // generators of {y : A y = 0}
    Certificate cert;                       // set when unsolvable
  };

  LinearSystemMod(long cols, i64 modulus) : cols_(cols), n_(modulus) {
    if (modulus < 2) throw input_error("LinearSystemMod: modulus must be >= 2");
    pivot_at_.assign(std::size_t(std::max(cols, 0L)), -1);
  }

  long num_rows() const { return long(rows_.size()); }

  // Adds one equation; returns its tag. Entries may repeat column indices.
  long add_row(const std::vector<std::pair<long, i64>>& entries, i64 rhs) {
    long tag = long(rows_.size());
    std::vector<std::pair<long, i64>> norm;
    {
      std::vector<std::pair<long, i64>> es = entries;
      std::sort(es.begin(), es.end());
      for (auto [c, v] : es) {
        if (c < 0 || c >= cols_) throw input_error("LinearSystemMod: column out of range");
        v = mod_reduce(v, n_);
        if (v == 0) continue;
        if (!norm.empty() && norm.back().first == c)
          norm.back().second = mod_reduce(norm.back().second + v, n_);
        else
          norm.emplace_back(c, v);
      }
      norm.erase(std::remove_if(norm.begin(), norm.end(), [](auto& p) { return p.second == 0; }),
                 norm.end());
    }
    rows_.push_back({norm, mod_reduce(rhs, n_)});
    if (!failed_) reduce_row(tag);
    return tag;
  }

  // Solves the accumulated system. Safe to call once after all add_row calls.
  Outcome solve() {
    Outcome out;
    if (failed_) {
      out.solvable = false;
      out.cert = failure_cert_;
      verify_certificate(out.cert);
      return out;
    }
    long k = long(pivots_.size());
    Mat<i64> r(k, cols_);
    std::vector<i64> rrhs(k);
    for (long i = 0; i < k; ++i) {
      for (long c = 0; c < cols_; ++c) r.at(i, c) = pivots_[i].row[c];
      rrhs[i] = pivots_[i].rhs;
    }
    SmithModResult sm = smith_mod(r, n_);
    // Transformed rhs: u * rrhs.
    std::vector<i64> urhs(k, 0);
    for (long i = 0; i < k; ++i) {
      i64 acc = 0;
      for (long j = 0; j < k; ++j) acc = mod_reduce(acc + sm.u.at(i, j) * rrhs[j], n_);
      urhs[i] = acc;
    }
    long nd = std::min(k, cols_);
    std::vector<i64> y(cols_, 0);
    for (long i = 0; i < k; ++i) {
      i64 d = i < nd ? sm.d.at(i, i) : 0;
      i64 g = gcd64(d == 0 ? n_ : d, n_);
      if (urhs[i] % g != 0) {
        out.solvable = false;
        out.cert = expand_certificate(sm.u, i, n_ / g);
        verify_certificate(out.cert);
        return out;
      }
      if (i < nd && d != 0) {
        // Minimal root of d * y = urhs[i] (mod n).
        i64 nn = n_ / g;
        y[i] = nn == 1 ? 0 : mod_reduce((urhs[i] / g) * mod_inverse((d / g) % nn, nn), nn);
      }
    }
    out.solvable = true;
    out.x.assign(cols_, 0);
    for (long c = 0; c < cols_; ++c) {
      i64 acc = 0;
      for (long j = 0; j < cols_; ++j) acc = mod_reduce(acc + sm.v.at(c, j) * y[j], n_);
      out.x[c] = acc;
    }
    // Kernel generators: scaled columns of v.
    for (long j = 0; j < cols_; ++j) {
      i64 d = j < nd ? sm.d.at(j, j) : 0;
      i64 g = gcd64(d == 0 ? n_ : d, n_);
      i64 mult = n_ / g;
      if (mult % n_ == 0) continue;  // generator would be zero
      std::vector<i64> vec(cols_, 0);
      bool nonzero = false;
      for (long c = 0; c < cols_; ++c) {
        vec[c] = mod_reduce(sm.v.at(c, j) * mult, n_);
        nonzero |= vec[c] != 0;
      }
      if (nonzero) out.kernel.push_back(std::move(vec));
    }
    if (!check_solution(out.x)) throw internal_error("LinearSystemMod: solution failed recheck");
    for (auto& vec : out.kernel)
      if (!check_kernel_vector(vec)) throw internal_error("LinearSystemMod: kernel recheck");
    return out;
  }

  // Re-verification against the stored input rows.
  bool check_solution(const std::vector<i64>& x) const {
    for (const auto& row : rows_) {
      i64 acc = 0;
      for (auto [c, v] : row.entries) acc = mod_reduce(acc + v * x[c], n_);
      if (acc != row.rhs) return false;
    }
    return true;
  }
  bool check_kernel_vector(const std::vector<i64>& x) const {
    for (const auto& row : rows_) {
      i64 acc = 0;
      for (auto [c, v] : row.entries) acc = mod_reduce(acc + v * x[c], n_);
      if (acc != 0) return false;
    }
    return true;
  }
  bool check_certificate(const Certificate& cert) const {
    std::vector<i64> ca(cols_, 0);
    i64 cb = 0;
    for (auto [tag, coeff] : cert.combo) {
      const auto& row = rows_[tag];
      for (auto [c, v] : row.entries) ca[c] = mod_reduce(ca[c] + coeff * v, n_);
      cb = mod_reduce(cb + coeff * row.rhs, n_);
    }
    for (i64 v : ca)
      if (v != 0) return false;
    return cb != 0;
  }

  i64 modulus() const { return n_; }
  long cols() const { return cols_; }

 private:
  struct InputRow {
    std::vector<std::pair<long, i64>> entries;
    i64 rhs;
  };
  struct PivotRow {
    long col;
    std::vector<i64> row;  // dense, leading nonzero at `col`
    i64 rhs;
    std::vector<std::pair<long, i64>> prov;  // combination of input rows
  };

  // One reduction step against an established pivot.
  struct LogStep {
    long pivot_index;
    i64 coeff;      // row -= coeff * pivot (axpy), or exchange marker
    bool exchange;  // exchange consumed the provenance merge immediately
  };

  void reduce_row(long tag) {
    std::vector<i64> row(cols_, 0);
    for (auto [c, v] : rows_[tag].entries) row[c] = v;
    i64 rhs = rows_[tag].rhs;
    // Lazy provenance: materialized only if the row survives, dies
    // inconsistent, or participates in a gcd exchange.
    std::vector<LogStep> log;
    std::optional<std::vector<std::pair<long, i64>>> prov;

    auto materialize = [&]() {
      if (prov) return;
      std::vector<i64> dense(rows_.size(), 0);
      dense[tag] = 1;
      for (const auto& step : log)
        if (!step.exchange)
          for (auto [t, c] : pivots_[step.pivot_index].prov)
            dense[t] = mod_reduce(dense[t] - step.coeff * c, n_);
      prov.emplace();
      for (long t = 0; t < long(dense.size()); ++t)
        if (dense[t] != 0) prov->emplace_back(t, dense[t]);
    };

    for (long c = 0; c < cols_; ++c) {
      if (row[c] == 0) continue;
      long pi = pivot_at_[c];
      if (pi < 0) {
        materialize();
        pivot_at_[c] = long(pivots_.size());
        pivots_.push_back({c, std::move(row), rhs, std::move(*prov)});
        return;
      }
      PivotRow& p = pivots_[pi];
      i64 pval = p.row[c], v = row[c];
      i64 g = gcd64(pval, n_);
      if (v % g == 0) {
        // row -= k * pivot with k solving k * pval = v (mod n).
        i64 nn = n_ / g;
        i64 k = nn == 1 ? 0 : mod_reduce((v / g) * mod_inverse((pval / g) % nn, nn), nn);
        if (mod_reduce(k * pval, n_) != v) throw internal_error("staircase: bad divisor step");
        for (long j = c; j < cols_; ++j) row[j] = mod_reduce(row[j] - k * p.row[j], n_);
        rhs = mod_reduce(rhs - k * p.rhs, n_);
        if (prov) merge_prov(*prov, p.prov, mod_reduce(-k, n_));
        else log.push_back({pi, k, false});
      } else {
        // Unimodular exchange: pivot becomes gcd(pval, v), row's entry dies.
        materialize();
        i64 gg, s, t;
        detail::egcd(pval, v, gg, s, t);
        i64 pg = pval / gg, vg = v / gg;
        std::vector<i64> new_pivot(cols_), new_row(cols_);
        for (long j = 0; j < cols_; ++j) {
          i64 a1 = p.row[j], a2 = row[j];
          new_pivot[j] = mod_reduce(s * a1 + t * a2, n_);
          new_row[j] = mod_reduce(pg * a2 - vg * a1, n_);
        }
        i64 new_prhs = mod_reduce(s * p.rhs + t * rhs, n_);
        i64 new_rhs = mod_reduce(pg * rhs - vg * p.rhs, n_);
        std::vector<std::pair<long, i64>> new_pprov = combine_prov(p.prov, s, *prov, t);
        std::vector<std::pair<long, i64>> new_rprov =
            combine_prov(*prov, pg, p.prov, mod_reduce(-vg, n_));
        p.row = std::move(new_pivot);
        p.rhs = new_prhs;
        p.prov = std::move(new_pprov);
        row = std::move(new_row);
        rhs = new_rhs;
        *prov = std::move(new_rprov);
        if (row[c] != 0) throw internal_error("staircase: exchange left residue");
      }
    }
    // Row reduced to zero.
    if (rhs != 0) {
      materialize();
      failed_ = true;
      failure_cert_.combo = std::move(*prov);
    }
  }

  // ka * a + kb * b over sorted sparse vectors, zeros dropped.
  std::vector<std::pair<long, i64>> combine_prov(const std::vector<std::pair<long, i64>>& a,
                                                 i64 ka,
                                                 const std::vector<std::pair<long, i64>>& b,
                                                 i64 kb) const {
    std::vector<std::pair<long, i64>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      long ta = i < a.size() ? a[i].first : -1;
      long tb = j < b.size() ? b[j].first : -1;
      long t;
      i64 v = 0;
      if (j >= b.size() || (i < a.size() && ta < tb)) {
        t = ta;
        v = mod_reduce(ka * a[i].second, n_);
        ++i;
      } else if (i >= a.size() || tb < ta) {
        t = tb;
        v = mod_reduce(kb * b[j].second, n_);
        ++j;
      } else {
        t = ta;
        v = mod_reduce(ka * a[i].second + kb * b[j].second, n_);
        ++i;
        ++j;
      }
      if (v != 0) out.emplace_back(t, v);
    }
    return out;
  }

  // dst += coeff * src.
  void merge_prov(std::vector<std::pair<long, i64>>& dst,
                  const std::vector<std::pair<long, i64>>& src, i64 coeff) const {
    dst = combine_prov(dst, 1, src, coeff);
  }

  Certificate expand_certificate(const Mat<i64>& u, long urow, i64 mult) const {
    std::vector<i64> dense;
    Certificate cert;
    for (long j = 0; j < long(pivots_.size()); ++j) {
      i64 coeff = mod_reduce(u.at(urow, j) * mult, n_);
      if (coeff == 0) continue;
      for (auto [t, c] : pivots_[j].prov) {
        if (long(dense.size()) <= t) dense.resize(rows_.size(), 0);
        dense[t] = mod_reduce(dense[t] + coeff * c, n_);
      }
    }
    for (long t = 0; t < long(dense.size()); ++t)
      if (dense[t] != 0) cert.combo.emplace_back(t, dense[t]);
    return cert;
  }

  void verify_certificate(const Certificate& cert) const {
    if (!check_certificate(cert)) throw internal_error("LinearSystemMod: certificate recheck");
  }

  long cols_;
  i64 n_;
  std::vector<InputRow> rows_;
  std::vector<PivotRow> pivots_;
  std::vector<long> pivot_at_;
  bool failed_ = false;
  Certificate failure_cert_;
};

// Dense convenience wrapper: solve A x = b over Z/N.
inline LinearSystemMod::Outcome solve_mod(const ModMatrix& a, const std::vector<i64>& b) {
  if (long(b.size()) != a.rows) throw input_error("solve_mod: rhs length != rows");
  LinearSystemMod sys(a.cols, a.modulus);
  for (long i = 0; i < a.rows; ++i) {
    std::vector<std::pair<long, i64>> entries;
    for (long j = 0; j < a.cols; ++j)
      if (a.at(i, j) % a.modulus != 0) entries.emplace_back(j, a.at(i, j));
    sys.add_row(entries, b[i]);
  }
  return sys.solve();
}

// Invariant factors (all >= 2) of coker(A) = Z^rows / (A Z^cols + ambient Z^rows).
// ambient = 0 computes the integer cokernel, omitting free summands.
inline std::vector<i64> cokernel_invariants(const IntMatrix& a, i64 ambient) {
  IntMatrix m(a.rows, a.cols + (ambient > 0 ? a.rows : 0));
  for (long i = 0; i < a.rows; ++i)
    for (long j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  if (ambient > 0)
    for (long i = 0; i < a.rows; ++i) m.at(i, a.cols + i) = ambient;
  IntMatrix d = m;
  detail::smith_diagonalize(d, static_cast<IntMatrix*>(nullptr), static_cast<IntMatrix*>(nullptr),
                            0);
  std::vector<i64> out;
  long n = std::min(d.rows, d.cols);
  for (long i = 0; i < n; ++i)
    if (d.at(i, i) > 1) out.push_back(static_cast<i64>(d.at(i, i)));
  return out;
}

inline std::vector<i64> cokernel_invariants(const ModMatrix& a) {
  IntMatrix m(a.rows, a.cols);
  for (long i = 0; i < a.rows; ++i)
    for (long j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  return cokernel_invariants(m, a.modulus);
}

// Presentation of the finite abelian group Z^k / L, where L is the column
// lattice of `rel` plus exponent * Z^k. Generators of the cyclic summands
// come back both as coordinates in Z^k and via the coordinate map
// coords(z)[i] = (u * z)[i] mod factors[i].
struct QuotientPresentation {
  std::vector<i64> factors;                // invariant factors > 1, f1 | f2 | ...
  std::vector<std::vector<i64>> gens;      // Z^k coordinates per factor
  Mat<i64> u;                              // coordinate transform, mod exponent
  std::vector<long> rows;                  // row of u giving each factor's coordinate
  i64 exponent = 0;

  std::vector<i64> coords(const std::vector<i64>& z) const {
    std::vector<i64> out(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      i64 acc = 0;
      for (long j = 0; j < u.cols; ++j) acc = mod_reduce(acc + u.at(rows[i], j) * z[j], exponent);
      out[i] = mod_reduce(acc, factors[i]);
    }
    return out;
  }
};

inline QuotientPresentation quotient_by_lattice(Mat<i64> rel, i64 exponent) {
  if (exponent < 2) throw input_error("quotient_by_lattice: exponent must be >= 2");
  long k = rel.rows;
  for (auto& x : rel.a) x = mod_reduce(x, exponent);
  Mat<i64> d = rel;
  Mat<i64> u = Mat<i64>::identity(k);
  Mat<i64> uinv = Mat<i64>::identity(k);
  detail::smith_diagonalize(d, &u, static_cast<Mat<i64>*>(nullptr), exponent, &uinv);
  QuotientPresentation out;
  out.exponent = exponent;
  out.u = std::move(u);
  long nd = std::min(d.rows, d.cols);
  for (long i = 0; i < k; ++i) {
    i64 di = i < nd ? d.at(i, i) : 0;
    i64 f = gcd64(di == 0 ? exponent : di, exponent);
    if (f <= 1) continue;
    out.factors.push_back(f);
    out.rows.push_back(i);
    std::vector<i64> gen(k);
    for (long r = 0; r < k; ++r) gen[r] = mod_reduce(uinv.at(r, i), exponent);
    out.gens.push_back(std::move(gen));
  }
  return out;
}

}  // namespace gq

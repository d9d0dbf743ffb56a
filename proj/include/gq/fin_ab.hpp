#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "gq/common.hpp"
#include "gq/modmat.hpp"

namespace gq {

// Finite abelian group presented as a product of cyclic factors Z/n_1 x ...
// x Z/n_r (each n_i >= 2, not required to form a divisor chain). Elements
// are addressed by mixed-radix index with the first factor most significant.
struct FinAbGroup {
  std::vector<i64> factors;

  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<i64> f) : factors(std::move(f)) {
    for (i64 n : factors)
      if (n < 2) throw input_error("FinAbGroup: factors must be >= 2");
  }

  long rank() const { return long(factors.size()); }

  i64 order() const {
    i64 o = 1;
    for (i64 n : factors) {
      if (o > (1LL << 40) / n) throw resource_error("FinAbGroup: order too large");
      o *= n;
    }
    return o;
  }

  i64 exponent() const {
    i64 e = 1;
    for (i64 n : factors) e = lcm64(e, n);
    return e;
  }

  std::vector<i64> element(i64 idx) const { return index_to_tuple(idx, factors); }
  i64 index(const std::vector<i64>& elt) const { return tuple_to_index(elt, factors); }

  i64 add(i64 x, i64 y) const {
    auto a = element(x), b = element(y);
    for (long i = 0; i < rank(); ++i) a[i] = mod_reduce(a[i] + b[i], factors[i]);
    return index(a);
  }
  i64 neg(i64 x) const {
    auto a = element(x);
    for (long i = 0; i < rank(); ++i) a[i] = mod_reduce(-a[i], factors[i]);
    return index(a);
  }
  i64 smul(i64 k, i64 x) const {
    auto a = element(x);
    for (long i = 0; i < rank(); ++i) a[i] = mod_reduce(k * a[i], factors[i]);
    return index(a);
  }

  // Invariant-factor normal form n_1 | n_2 | ... of this cyclic product.
  std::vector<i64> invariant_factors() const {
    if (factors.empty()) return {};
    Mat<i64> rel(rank(), rank());
    for (long i = 0; i < rank(); ++i) rel.at(i, i) = factors[i] % exponent();
    auto q = quotient_by_lattice(rel, exponent());
    return q.factors;
  }

  bool operator==(const FinAbGroup& o) const { return factors == o.factors; }
};

// Homomorphism between finite abelian groups, stored as the matrix whose
// column j is the image of the j-th generator of the source; entry (i, j)
// lives in Z/target.factors[i].
struct AbHom {
  FinAbGroup source;
  FinAbGroup target;
  Mat<i64> m;

  AbHom() = default;
  AbHom(FinAbGroup src, FinAbGroup tgt, Mat<i64> mat)
      : source(std::move(src)), target(std::move(tgt)), m(std::move(mat)) {
    if (m.rows != target.rank() || m.cols != source.rank())
      throw input_error("AbHom: matrix shape mismatch");
    for (long i = 0; i < m.rows; ++i)
      for (long j = 0; j < m.cols; ++j) {
        m.at(i, j) = mod_reduce(m.at(i, j), target.factors[i]);
        if (mod_reduce(source.factors[j] * m.at(i, j), target.factors[i]) != 0)
          throw input_error("AbHom: matrix is not a well-defined homomorphism");
      }
  }

  static AbHom identity(const FinAbGroup& g) {
    Mat<i64> m(g.rank(), g.rank());
    for (long i = 0; i < g.rank(); ++i) m.at(i, i) = 1 % g.factors[i];
    return AbHom(g, g, m);
  }

  i64 apply(i64 idx) const {
    auto a = source.element(idx);
    std::vector<i64> out(target.rank(), 0);
    for (long i = 0; i < target.rank(); ++i) {
      i64 acc = 0;
      for (long j = 0; j < source.rank(); ++j) acc += m.at(i, j) * a[j];
      out[i] = mod_reduce(acc, target.factors[i]);
    }
    return target.index(out);
  }

  // this o other.
  AbHom compose(const AbHom& other) const {
    if (!(other.target == source)) throw input_error("AbHom::compose: mismatched groups");
    Mat<i64> prod(target.rank(), other.source.rank());
    for (long i = 0; i < prod.rows; ++i)
      for (long j = 0; j < prod.cols; ++j) {
        i64 acc = 0;
        for (long k = 0; k < m.cols; ++k) acc += m.at(i, k) * other.m.at(k, j);
        prod.at(i, j) = mod_reduce(acc, target.factors[i]);
      }
    return AbHom(other.source, target, prod);
  }

  bool is_bijective() const {
    if (source.order() != target.order()) return false;
    std::vector<char> hit(std::size_t(target.order()), 0);
    for (i64 x = 0; x < source.order(); ++x) {
      i64 y = apply(x);
      if (hit[std::size_t(y)]) return false;
      hit[std::size_t(y)] = 1;
    }
    return true;
  }

  bool operator==(const AbHom& o) const {
    return source == o.source && target == o.target && m == o.m;
  }
  bool operator<(const AbHom& o) const { return m.a < o.m.a; }
};

// Character dual. The returned group has the same cyclic factors; the
// pairing <a, chi> = sum_i a_i chi_i (e / n_i) lands in Z/e for e = exp(A),
// standing for the group mu_e of e-th roots of unity.
struct DualGroup {
  FinAbGroup dual;
  i64 pairing_modulus;

  i64 pair(const FinAbGroup& a, i64 elt, i64 chi) const {
    auto x = a.element(elt);
    auto c = dual.element(chi);
    i64 acc = 0;
    for (long i = 0; i < a.rank(); ++i)
      acc = mod_reduce(acc + x[i] * c[i] * (pairing_modulus / a.factors[i]), pairing_modulus);
    return acc;
  }
};

inline DualGroup dual_group(const FinAbGroup& a) {
  return DualGroup{a, a.factors.empty() ? 2 : a.exponent()};
}

// Subgroup of an ambient group, materialized as a sorted element list.
struct Subgroup {
  std::vector<i64> generators;
  std::vector<i64> elements;  // sorted, includes identity

  bool contains(i64 x) const { return std::binary_search(elements.begin(), elements.end(), x); }
  i64 order() const { return i64(elements.size()); }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
  bool operator<(const Subgroup& o) const {
    return elements.size() != o.elements.size() ? elements.size() < o.elements.size()
                                                : elements < o.elements;
  }
};

inline Subgroup span_subgroup(const FinAbGroup& a, std::vector<i64> gens) {
  std::set<i64> seen{0};
  std::vector<i64> frontier{0};
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 x : frontier)
      for (i64 g : gens) {
        i64 y = a.add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  Subgroup s;
  s.generators = std::move(gens);
  s.elements.assign(seen.begin(), seen.end());
  return s;
}

// Complete, duplicate-free list of subgroups, smallest first.
inline std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& a, i64 max_order = 512) {
  if (a.order() > max_order) throw resource_error("enumerate_subgroups: group too large");
  std::set<std::vector<i64>> seen;
  std::vector<Subgroup> out;
  std::vector<Subgroup> frontier;
  Subgroup triv = span_subgroup(a, {});
  seen.insert(triv.elements);
  out.push_back(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& s : frontier)
      for (i64 x = 1; x < a.order(); ++x) {
        if (s.contains(x)) continue;
        std::vector<i64> gens = s.generators;
        gens.push_back(x);
        Subgroup t = span_subgroup(a, gens);
        if (seen.insert(t.elements).second) {
          out.push_back(t);
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Abstract structure (invariant factors) of a subgroup, with the inclusion
// into the ambient group.
struct SubgroupStructure {
  FinAbGroup group;
  AbHom inclusion;  // group -> ambient
};

inline SubgroupStructure abelian_structure(const FinAbGroup& a, const Subgroup& s) {
  if (s.order() == 1) {
    FinAbGroup triv{};
    return {triv, AbHom(triv, a, Mat<i64>(a.rank(), 0))};
  }
  std::vector<i64> gens = s.generators;
  if (gens.empty()) gens = s.elements;  // fall back to all elements
  long t = long(gens.size());
  i64 e = a.exponent();
  // Kernel of Z^t -> A, c |-> sum c_j gens_j, as a mod-e lattice.
  LinearSystemMod sys(t, e);
  for (long i = 0; i < a.rank(); ++i) {
    std::vector<std::pair<long, i64>> row;
    for (long j = 0; j < t; ++j) {
      i64 coord = a.element(gens[j])[i];
      i64 v = mod_reduce(coord * (e / a.factors[i]), e);
      if (v != 0) row.emplace_back(j, v);
    }
    sys.add_row(row, 0);
  }
  auto out = sys.solve();
  if (!out.solvable) throw internal_error("abelian_structure: homogeneous solve failed");
  Mat<i64> rel(t, long(out.kernel.size()));
  for (long c = 0; c < rel.cols; ++c)
    for (long r = 0; r < t; ++r) rel.at(r, c) = out.kernel[std::size_t(c)][std::size_t(r)];
  auto q = quotient_by_lattice(rel, e);
  FinAbGroup sub{q.factors};
  Mat<i64> incl(a.rank(), long(q.factors.size()));
  for (long c = 0; c < incl.cols; ++c) {
    i64 img = 0;
    for (long j = 0; j < t; ++j) img = a.add(img, a.smul(q.gens[std::size_t(c)][j], gens[j]));
    auto coords = a.element(img);
    for (long r = 0; r < a.rank(); ++r) incl.at(r, c) = coords[r];
  }
  SubgroupStructure st{sub, AbHom(sub, a, incl)};
  if (st.group.order() != s.order()) throw internal_error("abelian_structure: order mismatch");
  return st;
}

// All endomorphism matrices of A; |Hom(A, A)| = prod_{i,j} gcd(n_i, n_j).
inline std::vector<AbHom> enumerate_endomorphisms(const FinAbGroup& a, i64 bound = i64(1) << 24) {
  long r = a.rank();
  i64 total = 1;
  std::vector<i64> choice_counts(std::size_t(r) * r);
  std::vector<i64> steps(std::size_t(r) * r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      i64 g = gcd64(a.factors[i], a.factors[j]);
      choice_counts[std::size_t(i) * r + j] = g;
      steps[std::size_t(i) * r + j] = a.factors[i] / g;
      if (total > bound / g) throw resource_error("enumerate_endomorphisms: bound exceeded");
      total *= g;
    }
  std::vector<AbHom> out;
  out.reserve(std::size_t(total));
  std::vector<i64> digits(std::size_t(r) * r, 0);
  for (i64 it = 0; it < total; ++it) {
    Mat<i64> m(r, r);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j)
        m.at(i, j) = mod_reduce(digits[std::size_t(i) * r + j] * steps[std::size_t(i) * r + j],
                                a.factors[i]);
    out.emplace_back(a, a, m);
    for (long k = long(digits.size()) - 1; k >= 0; --k) {
      if (++digits[std::size_t(k)] < choice_counts[std::size_t(k)]) break;
      digits[std::size_t(k)] = 0;
    }
  }
  return out;
}

}  // namespace gq

#pragma once

#include <utility>
#include <vector>

#include "gq/cochain.hpp"
#include "gq/cohomology.hpp"

namespace gq {

// Biadditive pairing A x A -> Z/N on an abelian group, stored as a dense
// |A| x |A| table.
struct Bicharacter {
  FinAbGroup group;
  i64 modulus = 2;
  std::vector<i64> table;

  Bicharacter() = default;
  Bicharacter(FinAbGroup a, i64 mod)
      : group(std::move(a)), modulus(mod),
        table(std::size_t(group.order()) * std::size_t(group.order()), 0) {}

  i64& at(i64 x, i64 y) { return table[std::size_t(x) * std::size_t(group.order()) + std::size_t(y)]; }
  i64 at(i64 x, i64 y) const {
    return table[std::size_t(x) * std::size_t(group.order()) + std::size_t(y)];
  }

  bool is_biadditive() const {
    i64 n = group.order();
    // Check against the generator Gram table; cheaper than all triples.
    long r = group.rank();
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j) {
        std::vector<i64> ei(std::size_t(r), 0), ej(std::size_t(r), 0);
        ei[std::size_t(i)] = 1;
        ej[std::size_t(j)] = 1;
        i64 gram = at(group.index(ei), group.index(ej));
        if (mod_reduce(group.factors[i] * gram, modulus) != 0) return false;
        if (mod_reduce(group.factors[j] * gram, modulus) != 0) return false;
      }
    for (i64 x = 0; x < n; ++x) {
      auto xv = group.element(x);
      for (i64 y = 0; y < n; ++y) {
        auto yv = group.element(y);
        i64 acc = 0;
        for (long i = 0; i < r; ++i) {
          if (xv[i] == 0) continue;
          std::vector<i64> ei(std::size_t(r), 0);
          ei[std::size_t(i)] = 1;
          for (long j = 0; j < r; ++j) {
            if (yv[j] == 0) continue;
            std::vector<i64> ej(std::size_t(r), 0);
            ej[std::size_t(j)] = 1;
            acc += xv[i] * yv[j] * at(group.index(ei), group.index(ej));
          }
        }
        if (mod_reduce(acc, modulus) != at(x, y)) return false;
      }
    }
    return true;
  }

  bool is_symmetric() const {
    i64 n = group.order();
    for (i64 x = 0; x < n; ++x)
      for (i64 y = x + 1; y < n; ++y)
        if (at(x, y) != at(y, x)) return false;
    return true;
  }

  bool is_alternating() const {
    i64 n = group.order();
    for (i64 x = 0; x < n; ++x)
      if (at(x, x) != 0) return false;
    return true;
  }

  // Kernel of a -> <a, .>; trivial kernel = nondegenerate.
  bool is_nondegenerate() const {
    i64 n = group.order();
    for (i64 x = 1; x < n; ++x) {
      bool zero = true;
      for (i64 y = 0; y < n && zero; ++y) zero = at(x, y) == 0;
      if (zero) return false;
    }
    return true;
  }

  bool operator==(const Bicharacter& o) const {
    return group == o.group && modulus == o.modulus && table == o.table;
  }
};

// alt(c)(a, b) = c(a, b) - c(b, a) for a 2-cocycle c on an abelian group.
// The result is an alternating bicharacter depending only on [c].
inline Bicharacter alt_of_cocycle(const Cochain& c) {
  if (c.degree != 2) throw input_error("alt_of_cocycle: degree-2 cochain required");
  const auto& ab = c.group->abelian_form();
  if (!ab) throw input_error("alt_of_cocycle: abelian group required");
  if (!is_cocycle(c)) throw input_error("alt_of_cocycle: input is not closed");
  Bicharacter out(*ab, c.modulus);
  i64 n = ab->order();
  for (i64 x = 0; x < n; ++x)
    for (i64 y = 0; y < n; ++y)
      out.at(x, y) = mod_reduce(c.eval({x, y}) - c.eval({y, x}), c.modulus);
  if (!out.is_biadditive() || !out.is_alternating())
    throw internal_error("alt_of_cocycle: result failed invariant check");
  return out;
}

// All alternating bicharacters on A at modulus N, enumerated from the
// independent upper-triangular generator entries.
inline std::vector<Bicharacter> enumerate_alternating_bicharacters(const FinAbGroup& a,
                                                                   i64 modulus) {
  long r = a.rank();
  std::vector<std::pair<long, long>> slots;
  std::vector<i64> counts;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      // <e_i, e_j> must be killed by both factor orders and lie in Z/N.
      i64 g = gcd64(gcd64(a.factors[i], a.factors[j]), modulus);
      slots.emplace_back(i, j);
      counts.push_back(g);
    }
  std::vector<Bicharacter> out;
  std::vector<i64> digits(slots.size(), 0);
  while (true) {
    Bicharacter b(a, modulus);
    i64 n = a.order();
    for (i64 x = 0; x < n; ++x) {
      auto xv = a.element(x);
      for (i64 y = 0; y < n; ++y) {
        auto yv = a.element(y);
        i64 acc = 0;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          auto [i, j] = slots[s];
          i64 val = digits[s] * (modulus / counts[s]);
          acc += val * (xv[i] * yv[j] - xv[j] * yv[i]);
        }
        b.at(x, y) = mod_reduce(acc, modulus);
      }
    }
    out.push_back(std::move(b));
    bool carry = true;
    for (std::size_t s = slots.size(); s-- > 0 && carry;) {
      carry = ++digits[s] >= counts[s];
      if (carry) digits[s] = 0;
    }
    if (carry) break;
  }
  return out;
}

// Schur decomposition data of [c] for c a 2-cocycle on A1 (+) A2.
struct SchurSplit {
  Cochain c1;       // restriction to A1
  Cochain c2;       // restriction to A2
  Mat<i64> pairing;  // P(a1, a2) = c((a1,0),(0,a2)) - c((0,a2),(a1,0)), |A1| x |A2|
};

namespace detail {

// Index embeddings for a declared split A = A1 (+) A2 of the factor list.
struct SplitIndex {
  FinAbGroup a, a1, a2;
  long cut;  // first `cut` factors form A1

  SplitIndex(const FinAbGroup& whole, long cut_at) : a(whole), cut(cut_at) {
    if (cut_at < 0 || cut_at > whole.rank()) throw input_error("split: bad cut");
    a1 = FinAbGroup{{whole.factors.begin(), whole.factors.begin() + cut_at}};
    a2 = FinAbGroup{{whole.factors.begin() + cut_at, whole.factors.end()}};
  }
  i64 embed1(i64 x) const { return x * a2.order(); }
  i64 embed2(i64 y) const { return y; }
  i64 pair_index(i64 x, i64 y) const { return x * a2.order() + y; }
  i64 part1(i64 idx) const { return idx / a2.order(); }
  i64 part2(i64 idx) const { return idx % a2.order(); }
};

}  // namespace detail

inline SchurSplit schur_split(const Cochain& c, long cut) {
  if (c.degree != 2) throw input_error("schur_split: degree-2 cochain required");
  const auto& ab = c.group->abelian_form();
  if (!ab) throw input_error("schur_split: abelian group required");
  if (!is_cocycle(c)) throw input_error("schur_split: input is not closed");
  detail::SplitIndex sp(*ab, cut);
  SchurSplit out{Cochain(make_group(sp.a1), 2, c.modulus), Cochain(make_group(sp.a2), 2, c.modulus),
                 Mat<i64>(long(sp.a1.order()), long(sp.a2.order()))};
  for (i64 x = 0; x < sp.a1.order(); ++x)
    for (i64 y = 0; y < sp.a1.order(); ++y)
      out.c1.set({x, y}, c.eval({sp.embed1(x), sp.embed1(y)}));
  for (i64 x = 0; x < sp.a2.order(); ++x)
    for (i64 y = 0; y < sp.a2.order(); ++y)
      out.c2.set({x, y}, c.eval({sp.embed2(x), sp.embed2(y)}));
  for (i64 x = 0; x < sp.a1.order(); ++x)
    for (i64 y = 0; y < sp.a2.order(); ++y)
      out.pairing.at(long(x), long(y)) = mod_reduce(
          c.eval({sp.embed1(x), sp.embed2(y)}) - c.eval({sp.embed2(y), sp.embed1(x)}), c.modulus);
  return out;
}

// Representative c1 (+) c2 (+) bilinear pairing cochain; inverse to
// schur_split at the level of classes.
inline Cochain schur_merge(const FinAbGroup& whole, long cut, const Cochain& c1, const Cochain& c2,
                           const Mat<i64>& pairing, i64 modulus) {
  detail::SplitIndex sp(whole, cut);
  if (c1.group->order() != sp.a1.order() || c2.group->order() != sp.a2.order())
    throw input_error("schur_merge: component shapes do not match the split");
  Cochain out(make_group(whole), 2, modulus);
  for (i64 u = 0; u < whole.order(); ++u)
    for (i64 v = 0; v < whole.order(); ++v) {
      i64 x1 = sp.part1(u), x2 = sp.part2(u);
      i64 y1 = sp.part1(v), y2 = sp.part2(v);
      i64 val = c1.eval({x1, y1}) + c2.eval({x2, y2}) + pairing.at(long(x1), long(y2));
      out.set({u, v}, val);
    }
  if (!is_cocycle(out)) throw internal_error("schur_merge: result not closed");
  return out;
}

}  // namespace gq

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "gq/fin_ab.hpp"

namespace gq {

// Finite group given by its multiplication table. The constructor checks
// all group axioms, so a constructed table is always a group.
class GroupTable {
 public:
  GroupTable(long order, std::vector<i64> table) : n_(order), table_(std::move(table)) {
    if (n_ <= 0 || long(table_.size()) != n_ * n_) throw input_error("GroupTable: bad table size");
    for (i64 v : table_)
      if (v < 0 || v >= n_) throw input_error("GroupTable: entry out of range");
    id_ = -1;
    for (long e = 0; e < n_; ++e) {
      bool ok = true;
      for (long x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) throw input_error("GroupTable: no identity element");
    inv_.assign(std::size_t(n_), -1);
    for (long x = 0; x < n_; ++x) {
      for (long y = 0; y < n_; ++y)
        if (mul(x, y) == id_ && mul(y, x) == id_) {
          inv_[std::size_t(x)] = y;
          break;
        }
      if (inv_[std::size_t(x)] < 0) throw input_error("GroupTable: missing inverse");
    }
    for (long x = 0; x < n_; ++x)
      for (long y = 0; y < n_; ++y)
        for (long z = 0; z < n_; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            throw input_error("GroupTable: not associative");
  }

  static GroupTable from_abelian(const FinAbGroup& a) {
    long n = long(a.order());
    std::vector<i64> t(std::size_t(n) * n);
    for (long x = 0; x < n; ++x)
      for (long y = 0; y < n; ++y) t[std::size_t(x) * n + y] = a.add(x, y);
    GroupTable g(n, std::move(t));
    g.ab_ = a;
    return g;
  }

  long order() const { return n_; }
  i64 identity() const { return id_; }
  i64 mul(i64 x, i64 y) const { return table_[std::size_t(x) * n_ + y]; }
  i64 inv(i64 x) const { return inv_[std::size_t(x)]; }
  bool is_abelian() const {
    for (long x = 0; x < n_; ++x)
      for (long y = x + 1; y < n_; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }
  // Set when the table was built from a FinAbGroup; element indices agree.
  const std::optional<FinAbGroup>& abelian_form() const { return ab_; }

  bool operator==(const GroupTable& o) const { return n_ == o.n_ && table_ == o.table_; }

 private:
  long n_;
  std::vector<i64> table_;
  i64 id_;
  std::vector<i64> inv_;
  std::optional<FinAbGroup> ab_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline GroupPtr make_group(GroupTable g) { return std::make_shared<const GroupTable>(std::move(g)); }
inline GroupPtr make_group(const FinAbGroup& a) { return make_group(GroupTable::from_abelian(a)); }

// Subgroup closure in an arbitrary finite group.
inline std::vector<i64> closure(const GroupTable& g, std::vector<i64> gens) {
  std::set<i64> seen{g.identity()};
  std::vector<i64> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<i64> next;
    for (i64 x : frontier)
      for (i64 s : gens) {
        for (i64 y : {g.mul(x, s), g.mul(x, g.inv(s))})
          if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

struct CenterAbelianization {
  Subgroup center;               // elements commuting with everything
  FinAbGroup abelianization;     // invariant-factor form of G/[G,G]
  std::vector<i64> projection;   // group index -> mixed-radix index in ab
};

inline CenterAbelianization center_and_abelianization(const GroupTable& g) {
  CenterAbelianization out;
  for (i64 z = 0; z < g.order(); ++z) {
    bool central = true;
    for (i64 x = 0; x < g.order() && central; ++x) central = g.mul(z, x) == g.mul(x, z);
    if (central) out.center.elements.push_back(z);
  }
  out.center.generators = out.center.elements;

  // Commutator subgroup, then cosets.
  std::vector<i64> comms;
  for (i64 x = 0; x < g.order(); ++x)
    for (i64 y = 0; y < g.order(); ++y)
      comms.push_back(g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  std::vector<i64> derived = closure(g, comms);
  std::vector<char> in_derived(std::size_t(g.order()), 0);
  for (i64 x : derived) in_derived[std::size_t(x)] = 1;

  std::vector<i64> coset_of(std::size_t(g.order()), -1);
  std::vector<i64> reps;
  for (i64 x = 0; x < g.order(); ++x) {
    if (coset_of[std::size_t(x)] >= 0) continue;
    i64 c = i64(reps.size());
    reps.push_back(x);
    for (i64 d : derived) coset_of[std::size_t(g.mul(x, d))] = c;
  }
  long q = long(reps.size());

  // Regular presentation of the quotient: generators = cosets, relations
  // e_i + e_j - e_{ij}. quotient_by_lattice needs exponent * Z^q inside the
  // lattice, which holds since every coset has order dividing q.
  Mat<i64> rel(q, q * q);
  long col = 0;
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j, ++col) {
      i64 prod = coset_of[std::size_t(g.mul(reps[std::size_t(i)], reps[std::size_t(j)]))];
      rel.at(i, col) = mod_reduce(rel.at(i, col) + 1, q == 1 ? 2 : q);
      rel.at(j, col) = mod_reduce(rel.at(j, col) + 1, q == 1 ? 2 : q);
      rel.at(prod, col) = mod_reduce(rel.at(prod, col) - 1, q == 1 ? 2 : q);
    }
  auto pres = quotient_by_lattice(rel, q == 1 ? 2 : q);
  out.abelianization = FinAbGroup{pres.factors};
  out.projection.assign(std::size_t(g.order()), 0);
  for (i64 x = 0; x < g.order(); ++x) {
    std::vector<i64> unit(std::size_t(q), 0);
    unit[std::size_t(coset_of[std::size_t(x)])] = 1;
    auto coords = pres.coords(unit);
    out.projection[std::size_t(x)] = out.abelianization.index(coords);
  }
  return out;
}

// Automorphism of a GroupTable as an index permutation.
using TableAut = std::vector<i64>;

inline bool is_automorphism(const GroupTable& g, const TableAut& phi) {
  if (long(phi.size()) != g.order()) return false;
  std::vector<char> hit(std::size_t(g.order()), 0);
  for (i64 x = 0; x < g.order(); ++x) {
    if (phi[std::size_t(x)] < 0 || phi[std::size_t(x)] >= g.order()) return false;
    if (hit[std::size_t(phi[std::size_t(x)])]) return false;
    hit[std::size_t(phi[std::size_t(x)])] = 1;
  }
  for (i64 x = 0; x < g.order(); ++x)
    for (i64 y = 0; y < g.order(); ++y)
      if (phi[std::size_t(g.mul(x, y))] != g.mul(phi[std::size_t(x)], phi[std::size_t(y)]))
        return false;
  return true;
}

struct SemidirectProduct {
  GroupPtr gamma;                 // L x| G, index (l, g) = l * |G| + g
  std::vector<i64> inject_l;      // L -> Gamma
  std::vector<i64> project_g;     // Gamma -> G
  std::vector<i64> section_g;     // G -> Gamma
};

// Product (l1, g1)(l2, g2) = (l1 * phi(g1)(l2), g1 g2). phi must be a
// homomorphism G -> Aut(L); both conditions are checked.
inline SemidirectProduct semidirect_product(const GroupTable& l, const GroupTable& g,
                                            const std::vector<TableAut>& phi) {
  if (long(phi.size()) != g.order()) throw input_error("semidirect_product: |phi| != |G|");
  for (const auto& p : phi)
    if (!is_automorphism(l, p)) throw input_error("semidirect_product: phi(g) not an automorphism");
  for (i64 a = 0; a < g.order(); ++a)
    for (i64 b = 0; b < g.order(); ++b) {
      const TableAut &pa = phi[std::size_t(a)], &pb = phi[std::size_t(b)],
                     &pab = phi[std::size_t(g.mul(a, b))];
      for (i64 x = 0; x < l.order(); ++x)
        if (pab[std::size_t(x)] != pa[std::size_t(pb[std::size_t(x)])])
          throw input_error("semidirect_product: phi is not a homomorphism");
    }
  long n = l.order() * g.order();
  std::vector<i64> table(std::size_t(n) * n);
  auto idx = [&](i64 lv, i64 gv) { return lv * g.order() + gv; };
  for (i64 l1 = 0; l1 < l.order(); ++l1)
    for (i64 g1 = 0; g1 < g.order(); ++g1)
      for (i64 l2 = 0; l2 < l.order(); ++l2)
        for (i64 g2 = 0; g2 < g.order(); ++g2)
          table[std::size_t(idx(l1, g1)) * n + idx(l2, g2)] =
              idx(l.mul(l1, phi[std::size_t(g1)][std::size_t(l2)]), g.mul(g1, g2));
  SemidirectProduct out;
  out.gamma = make_group(GroupTable(n, std::move(table)));
  out.inject_l.resize(std::size_t(l.order()));
  for (i64 x = 0; x < l.order(); ++x) out.inject_l[std::size_t(x)] = idx(x, g.identity());
  out.project_g.resize(std::size_t(n));
  for (i64 lv = 0; lv < l.order(); ++lv)
    for (i64 gv = 0; gv < g.order(); ++gv) out.project_g[std::size_t(idx(lv, gv))] = gv;
  out.section_g.resize(std::size_t(g.order()));
  for (i64 gv = 0; gv < g.order(); ++gv) out.section_g[std::size_t(gv)] = idx(l.identity(), gv);
  return out;
}

}  // namespace gq

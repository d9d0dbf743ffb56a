#pragma once

#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gq/bicharacter.hpp"
#include "gq/fin_ab.hpp"

namespace gq {

// Quadratic form q : A -> Z/N in the additive model: q(a) = q(-a) and the
// polarization <a,b> = q(a+b) - q(a) - q(b) is biadditive.
struct QuadraticForm {
  FinAbGroup group;
  i64 modulus = 2;
  std::vector<i64> values;

  QuadraticForm() = default;
  QuadraticForm(FinAbGroup a, i64 mod, std::vector<i64> vals)
      : group(std::move(a)), modulus(mod), values(std::move(vals)) {
    if (i64(values.size()) != group.order()) throw input_error("QuadraticForm: bad table size");
    for (auto& v : values) v = mod_reduce(v, modulus);
    for (i64 x = 0; x < group.order(); ++x)
      if (values[std::size_t(x)] != values[std::size_t(group.neg(x))])
        throw input_error("QuadraticForm: q(a) != q(-a)");
    if (!polarization().is_biadditive())
      throw input_error("QuadraticForm: polarization is not biadditive");
  }

  i64 q(i64 x) const { return values[std::size_t(x)]; }

  Bicharacter polarization() const {
    Bicharacter b(group, modulus);
    for (i64 x = 0; x < group.order(); ++x)
      for (i64 y = 0; y < group.order(); ++y)
        b.at(x, y) = mod_reduce(q(group.add(x, y)) - q(x) - q(y), modulus);
    return b;
  }
};

inline Bicharacter bicharacter_of_form(const QuadraticForm& q) { return q.polarization(); }

inline bool is_nondegenerate(const QuadraticForm& q) {
  return q.polarization().is_nondegenerate();
}

// Metric group: (A, q) with nondegenerate polarization.
struct MetricGroup {
  QuadraticForm form;
  Bicharacter bichar;  // cached polarization

  explicit MetricGroup(QuadraticForm f) : form(std::move(f)), bichar(form.polarization()) {
    if (!bichar.is_nondegenerate()) throw input_error("MetricGroup: degenerate form");
  }

  const FinAbGroup& group() const { return form.group; }
  i64 q(i64 x) const { return form.q(x); }
  i64 b(i64 x, i64 y) const { return bichar.at(x, y); }
};

// (L (+) L^, ev): q(l, chi) = chi(l) additively at modulus exp(L). The first
// rank(L) coordinates embed L, the rest embed the dual.
inline MetricGroup standard_hyperbolic(const FinAbGroup& l) {
  std::vector<i64> factors = l.factors;
  factors.insert(factors.end(), l.factors.begin(), l.factors.end());
  FinAbGroup a{factors};
  i64 e = l.factors.empty() ? 2 : l.exponent();
  std::vector<i64> vals(std::size_t(a.order()));
  long r = l.rank();
  for (i64 x = 0; x < a.order(); ++x) {
    auto xv = a.element(x);
    i64 acc = 0;
    for (long i = 0; i < r; ++i) acc += xv[i] * xv[r + i] * (e / l.factors[i]);
    vals[std::size_t(x)] = mod_reduce(acc, e);
  }
  return MetricGroup(QuadraticForm(a, e, std::move(vals)));
}

// Orthogonal transformation: invertible endomorphism with q o g = q.
struct Isometry {
  AbHom hom;
  bool operator==(const Isometry& o) const { return hom.m.a == o.hom.m.a; }
  bool operator<(const Isometry& o) const { return hom.m.a < o.hom.m.a; }
};

inline bool preserves_form(const MetricGroup& m, const AbHom& h) {
  for (i64 x = 0; x < m.group().order(); ++x)
    if (m.q(h.apply(x)) != m.q(x)) return false;
  return true;
}

inline Isometry identity_isometry(const MetricGroup& m) {
  return Isometry{AbHom::identity(m.group())};
}

inline Isometry compose(const Isometry& g, const Isometry& h) {
  return Isometry{g.hom.compose(h.hom)};
}

// All of A as an F_p vector space: every factor equal to the same prime p.
inline std::optional<i64> fp_vector_space_char(const FinAbGroup& a) {
  if (a.factors.empty()) return std::nullopt;
  i64 p = a.factors[0];
  for (i64 f : a.factors)
    if (f != p) return std::nullopt;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return std::nullopt;
  return p;
}

// Reflection along an anisotropic v: x -> x - (b(x,v)/q(v)) v over F_p, p odd.
inline Isometry reflect(const MetricGroup& m, i64 v) {
  auto p = fp_vector_space_char(m.group());
  if (!p || *p == 2) throw input_error("reflect: odd prime F_p vector space required");
  if (m.q(v) == 0) throw input_error("reflect: isotropic vector");
  i64 qin = mod_inverse(m.q(v), *p);
  long r = m.group().rank();
  auto vv = m.group().element(v);
  Mat<i64> mat(r, r);
  for (long j = 0; j < r; ++j) {
    std::vector<i64> ej(static_cast<std::size_t>(r), 0);
    ej[std::size_t(j)] = 1;
    i64 e = m.group().index(ej);
    i64 coeff = mod_reduce(m.b(e, v) * qin, *p);
    for (long i = 0; i < r; ++i)
      mat.at(i, j) = mod_reduce((i == j ? 1 : 0) - coeff * vv[std::size_t(i)], *p);
  }
  Isometry out{AbHom(m.group(), m.group(), mat)};
  if (!preserves_form(m, out.hom) || !out.hom.is_bijective())
    throw internal_error("reflect: result is not an isometry");
  return out;
}

// Complete duplicate-free list of reflections (order-2 isometries fixing a
// hyperplane); over F_p every one is reflect(v) for v anisotropic.
inline std::vector<Isometry> reflections(const MetricGroup& m) {
  auto p = fp_vector_space_char(m.group());
  if (!p || *p == 2) throw input_error("reflections: odd prime F_p vector space required");
  std::set<Isometry> seen;
  for (i64 v = 1; v < m.group().order(); ++v)
    if (m.q(v) != 0) seen.insert(reflect(m, v));
  return {seen.begin(), seen.end()};
}

enum class OrthogonalStrategy { Auto, BruteForce, ReflectionClosure };

// Complete list of O(A, q), canonically sorted by matrix entries.
inline std::vector<Isometry> orthogonal_group(const MetricGroup& m,
                                              OrthogonalStrategy strategy = OrthogonalStrategy::Auto,
                                              i64 endo_bound = i64(1) << 24) {
  const FinAbGroup& a = m.group();
  if (strategy == OrthogonalStrategy::Auto) {
    i64 count = 1;
    bool small = true;
    for (i64 ni : a.factors)
      for (i64 nj : a.factors) {
        i64 g = gcd64(ni, nj);
        if (count > endo_bound / g) {
          small = false;
          break;
        }
        count *= g;
      }
    auto p = fp_vector_space_char(a);
    strategy = small || !p || *p == 2 ? OrthogonalStrategy::BruteForce
                                      : OrthogonalStrategy::ReflectionClosure;
  }
  std::set<Isometry> out;
  if (strategy == OrthogonalStrategy::BruteForce) {
    for (auto& h : enumerate_endomorphisms(a, endo_bound))
      if (preserves_form(m, h) && h.is_bijective()) out.insert(Isometry{std::move(h)});
  } else {
    auto p = fp_vector_space_char(a);
    if (!p || *p == 2)
      throw input_error("orthogonal_group: reflection closure needs odd F_p input");
    std::vector<Isometry> gens = reflections(m);
    out.insert(identity_isometry(m));
    std::deque<Isometry> frontier(out.begin(), out.end());
    while (!frontier.empty()) {
      Isometry x = frontier.front();
      frontier.pop_front();
      for (const auto& r : gens) {
        Isometry y = compose(r, x);
        if (out.insert(y).second) frontier.push_back(y);
      }
    }
  }
  return {out.begin(), out.end()};
}

// |(g - 1) A| reduced to its square-free part; 1 means g in SO.
inline i64 determinant_class(const MetricGroup& m, const Isometry& g) {
  std::set<i64> image;
  for (i64 x = 0; x < m.group().order(); ++x)
    image.insert(m.group().add(g.hom.apply(x), m.group().neg(x)));
  return squarefree_part(i64(image.size()));
}

// Cartan-Dieudonne factorization into at most dim(A) reflections; the list
// composes to g in application order (first element applied first).
inline std::vector<Isometry> cartan_dieudonne(const MetricGroup& m, const Isometry& g) {
  auto p = fp_vector_space_char(m.group());
  if (!p || *p == 2) throw input_error("cartan_dieudonne: odd prime F_p vector space required");
  long dim = m.group().rank();
  Isometry id = identity_isometry(m);

  auto greedy = [&]() -> std::optional<std::vector<Isometry>> {
    std::vector<Isometry> factors;
    Isometry cur = g;
    while (!(cur == id)) {
      bool stepped = false;
      for (i64 v = 1; v < m.group().order() && !stepped; ++v) {
        if (m.q(v) == 0) continue;
        i64 gv = cur.hom.apply(v);
        if (gv == v) continue;
        i64 w = m.group().add(gv, m.group().neg(v));
        if (m.q(w) == 0) continue;
        Isometry r = reflect(m, w);
        cur = compose(r, cur);
        factors.push_back(r);
        stepped = true;
      }
      if (!stepped) return std::nullopt;
      if (i64(factors.size()) > 2 * dim) return std::nullopt;
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
  };

  auto bfs = [&]() -> std::vector<Isometry> {
    // Minimal factorization over the reflection generating set.
    std::vector<Isometry> gens = reflections(m);
    std::map<Isometry, std::pair<Isometry, long>> parent;  // state -> (reflection, gen index)
    std::map<Isometry, long> dist;
    std::deque<Isometry> queue{g};
    dist[g] = 0;
    while (!queue.empty()) {
      Isometry x = queue.front();
      queue.pop_front();
      if (x == id) break;
      for (long gi = 0; gi < long(gens.size()); ++gi) {
        Isometry y = compose(gens[std::size_t(gi)], x);
        if (dist.count(y)) continue;
        dist[y] = dist[x] + 1;
        parent.emplace(y, std::make_pair(x, gi));
        queue.push_back(y);
      }
    }
    if (!dist.count(id)) throw internal_error("cartan_dieudonne: reflections do not generate");
    std::vector<Isometry> factors;
    Isometry cur = id;
    while (!(cur == g)) {
      auto it = parent.find(cur);
      factors.push_back(gens[std::size_t(it->second.second)]);
      cur = it->second.first;
    }
    return factors;  // already in application order: last BFS step applied first
  };

  std::vector<Isometry> result;
  auto greedy_result = greedy();
  if (greedy_result && i64(greedy_result->size()) <= dim)
    result = std::move(*greedy_result);
  else
    result = bfs();

  // Recomposition check: factors compose to g, first element applied first.
  Isometry acc = id;
  for (const auto& r : result) acc = compose(r, acc);
  if (!(acc == g)) throw internal_error("cartan_dieudonne: recomposition failed");
  if (i64(result.size()) > dim) throw internal_error("cartan_dieudonne: factorization too long");
  return result;
}

// Lagrangian subgroups: isotropic with |L|^2 = |A|.
inline std::vector<Subgroup> lagrangian_subgroups(const MetricGroup& m, i64 max_order = 512) {
  std::vector<Subgroup> out;
  for (auto& s : enumerate_subgroups(m.group(), max_order)) {
    if (s.order() * s.order() != m.group().order()) continue;
    bool isotropic = true;
    for (i64 x : s.elements) isotropic = isotropic && m.q(x) == 0;
    if (isotropic) out.push_back(std::move(s));
  }
  return out;
}

inline bool is_transverse(const Subgroup& l, const Subgroup& k) {
  std::vector<i64> common;
  std::set_intersection(l.elements.begin(), l.elements.end(), k.elements.begin(), k.elements.end(),
                        std::back_inserter(common));
  return common == std::vector<i64>{0};
}

// Image g(L) of a subgroup under an isometry.
inline Subgroup image_subgroup(const FinAbGroup& a, const Isometry& g, const Subgroup& s) {
  Subgroup out;
  for (i64 x : s.generators) out.generators.push_back(g.hom.apply(x));
  out.elements.reserve(s.elements.size());
  for (i64 x : s.elements) out.elements.push_back(g.hom.apply(x));
  std::sort(out.elements.begin(), out.elements.end());
  (void)a;
  return out;
}

}  // namespace gq

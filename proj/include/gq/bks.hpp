#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gq/cohomology.hpp"
#include "gq/metric.hpp"
#include "gq/version.hpp"

namespace gq {

// Polarized hyperbolic metric group A = L (+) L^ with block coordinates:
// the first rank(L) coordinates are L, the rest the character dual. The
// optional dual twist sigma replaces the canonical identification
// iota(k)(l) = <k, l>_q by sigma o iota; both comparison pipelines in the
// BKS check transport through the same twist.
struct Polarization {
  FinAbGroup l;
  MetricGroup metric;
  AbHom dual_twist;  // automorphism of L^ (same factor list as L)

  i64 pairing_modulus() const { return l.factors.empty() ? 2 : l.exponent(); }

  i64 embed_l(i64 x) const {
    auto xv = l.element(x);
    std::vector<i64> av(std::size_t(2 * l.rank()), 0);
    for (long i = 0; i < l.rank(); ++i) av[std::size_t(i)] = xv[std::size_t(i)];
    return metric.group().index(av);
  }
  i64 embed_dual(i64 chi) const {
    auto cv = l.element(chi);
    std::vector<i64> av(std::size_t(2 * l.rank()), 0);
    for (long i = 0; i < l.rank(); ++i) av[std::size_t(l.rank() + i)] = cv[std::size_t(i)];
    return metric.group().index(av);
  }
  i64 part_l(i64 a) const {
    auto av = metric.group().element(a);
    return l.index({av.begin(), av.begin() + l.rank()});
  }
  i64 part_dual(i64 a) const {
    auto av = metric.group().element(a);
    return l.index({av.begin() + l.rank(), av.end()});
  }
  // Character evaluation: chi(x) for chi in dual coordinates.
  i64 chi_eval(i64 chi, i64 x) const {
    auto cv = l.element(chi);
    auto xv = l.element(x);
    i64 e = pairing_modulus();
    i64 acc = 0;
    for (long i = 0; i < l.rank(); ++i) acc += cv[std::size_t(i)] * xv[std::size_t(i)] * (e / l.factors[std::size_t(i)]);
    return mod_reduce(acc, e);
  }
  // Canonical identification of a transverse image with L^, composed with
  // the twist: iota(a) = sigma(<a, embed_l(.)>_q) as dual coordinates.
  i64 iota(i64 a) const {
    i64 e = pairing_modulus();
    std::vector<i64> coords(std::size_t(l.rank()));
    for (long i = 0; i < l.rank(); ++i) {
      std::vector<i64> ei(std::size_t(l.rank()), 0);
      ei[std::size_t(i)] = 1;
      i64 val = metric.b(a, embed_l(l.index(ei)));
      i64 step = e / l.factors[std::size_t(i)];
      if (val % step != 0) throw internal_error("Polarization::iota: value not a character");
      coords[std::size_t(i)] = mod_reduce(val / step, l.factors[std::size_t(i)]);
    }
    return dual_twist.apply(l.index(coords));
  }
  // Adjoint of the dual twist on L: <sigma^T k, chi> = <k, sigma(chi)>.
  // Coordinates solve (sigma^T k)_j (e/n_j) = sum_i S_ij (e/n_i) k_i mod e.
  i64 twist_adjoint(i64 k) const {
    long r = l.rank();
    i64 e = pairing_modulus();
    auto kv = l.element(k);
    std::vector<i64> out(std::size_t(r), 0);
    for (long j = 0; j < r; ++j) {
      i64 acc = 0;
      for (long i = 0; i < r; ++i)
        acc = mod_reduce(
            acc + dual_twist.m.at(i, j) * (e / l.factors[std::size_t(i)]) * kv[std::size_t(i)], e);
      i64 step = e / l.factors[std::size_t(j)];
      if (acc % step != 0) throw internal_error("twist_adjoint: value not a character");
      out[std::size_t(j)] = mod_reduce(acc / step, l.factors[std::size_t(j)]);
    }
    return l.index(out);
  }

  // Group L^2 carrying the kernel cocycles, first block most significant.
  FinAbGroup l_squared() const {
    std::vector<i64> f = l.factors;
    f.insert(f.end(), l.factors.begin(), l.factors.end());
    return FinAbGroup{f};
  }
  i64 pair_index(i64 x, i64 y) const { return x * l.order() + y; }
};

inline Polarization make_polarization(const FinAbGroup& l,
                                      std::optional<AbHom> dual_twist = std::nullopt) {
  Polarization p{l, standard_hyperbolic(l), dual_twist ? *dual_twist : AbHom::identity(l)};
  if (!(p.dual_twist.source == l) || !(p.dual_twist.target == l) || !p.dual_twist.is_bijective())
    throw input_error("make_polarization: dual twist must be an automorphism of L^");
  return p;
}

// Degree-2 kernel cocycle with a record of where it came from.
struct KernelCocycle {
  Cochain cochain;
  std::string provenance;
};

// Bilinear BKS kernel for transverse Lagrangians L, K inside (A, q):
// kappa(l1 + k1, l2 + k2) = <l1, k2>_q under the internal splitting.
inline KernelCocycle kappa_q(const MetricGroup& m, const Subgroup& lsub, const Subgroup& ksub) {
  if (lsub.order() * lsub.order() != m.group().order() ||
      ksub.order() * ksub.order() != m.group().order())
    throw input_error("kappa_q: subgroups are not Lagrangian-sized");
  for (i64 x : lsub.elements)
    if (m.q(x) != 0) throw input_error("kappa_q: L is not isotropic");
  for (i64 x : ksub.elements)
    if (m.q(x) != 0) throw input_error("kappa_q: K is not isotropic");
  if (!is_transverse(lsub, ksub)) throw input_error("kappa_q: subgroups are not transverse");

  i64 n = m.group().order();
  std::vector<i64> lpart(std::size_t(n), -1), kpart(std::size_t(n), -1);
  for (i64 l : lsub.elements)
    for (i64 k : ksub.elements) {
      i64 a = m.group().add(l, k);
      if (lpart[std::size_t(a)] != -1) throw internal_error("kappa_q: splitting not unique");
      lpart[std::size_t(a)] = l;
      kpart[std::size_t(a)] = k;
    }
  auto g = make_group(m.group());
  Cochain c(g, 2, m.form.modulus);
  for (i64 a1 = 0; a1 < n; ++a1)
    for (i64 a2 = 0; a2 < n; ++a2)
      c.set({a1, a2}, m.b(lpart[std::size_t(a1)], kpart[std::size_t(a2)]));
  if (!is_cocycle(c)) throw internal_error("kappa_q: bilinear representative not closed");
  return {std::move(c), "kappa_q"};
}

// kappa_{ev,g} on L^2: ((l1,k1),(l2,k2)) -> [iota(g l1)](k2).
inline KernelCocycle kappa_ev_g(const Polarization& p, const Isometry& g) {
  // Transversality of gL and L; L is exactly the block with dual part 0.
  for (i64 x = 1; x < p.l.order(); ++x) {
    i64 y = g.hom.apply(p.embed_l(x));
    if (y != 0 && p.part_dual(y) == 0)
      throw input_error("kappa_ev_g: gL is not transverse to L");
  }
  FinAbGroup l2 = p.l_squared();
  auto l2g = make_group(l2);
  Cochain c(l2g, 2, p.pairing_modulus());
  i64 ln = p.l.order();
  std::vector<i64> iota_gl(static_cast<std::size_t>(ln));
  for (i64 l1 = 0; l1 < ln; ++l1) iota_gl[std::size_t(l1)] = p.iota(g.hom.apply(p.embed_l(l1)));
  for (i64 x = 0; x < ln * ln; ++x) {
    i64 l1 = x / ln;
    for (i64 y = 0; y < ln * ln; ++y) {
      i64 k2 = y % ln;
      c.values[std::size_t(x * ln * ln + y)] = p.chi_eval(iota_gl[std::size_t(l1)], k2);
    }
  }
  if (!is_cocycle(c)) throw internal_error("kappa_ev_g: bilinear representative not closed");
  return {std::move(c), "kappa_ev_g"};
}

// Bilinear invariant of a 2-cocycle on L^2 distinguishing the associated
// bimodule: table(l, k) = alt(c)((l,0),(0,k)); depends only on [c].
struct MiddleAssociator {
  FinAbGroup l;
  i64 modulus = 2;
  Mat<i64> table;  // |L| x |L|

  bool operator==(const MiddleAssociator& o) const {
    return l == o.l && modulus == o.modulus && table == o.table;
  }
  MiddleAssociator negated() const {
    MiddleAssociator out = *this;
    for (auto& v : out.table.a) v = mod_reduce(-v, modulus);
    return out;
  }
};

inline MiddleAssociator middle_associator(const Polarization& p, const Cochain& c) {
  if (c.degree != 2) throw input_error("middle_associator: degree-2 cochain required");
  if (!is_cocycle(c)) throw input_error("middle_associator: input not closed");
  i64 ln = p.l.order();
  if (c.group->order() != ln * ln) throw input_error("middle_associator: cochain not on L^2");
  MiddleAssociator out{p.l, c.modulus, Mat<i64>(long(ln), long(ln))};
  for (i64 l = 0; l < ln; ++l)
    for (i64 k = 0; k < ln; ++k) {
      i64 x = p.pair_index(l, 0), y = p.pair_index(0, k);
      out.table.at(long(l), long(k)) = mod_reduce(c.eval({x, y}) - c.eval({y, x}), c.modulus);
    }
  return out;
}

// Module-category data the reference construction attaches to g: the
// subgroup H < L^2 (projection of the graph of g) and the alternating
// bicharacter chi_g((l1,k1),(l2,k2)) = phi(l2) + psi(k2), where
// -k1 = p3 g(l1, phi) and psi = p4 g(l1, phi).
struct EnoData {
  Subgroup h;          // subgroup of L^2
  Bicharacter chi;     // on L^2
};

inline EnoData eno_bicharacter(const Polarization& p, const Isometry& g) {
  const FinAbGroup& a = p.metric.group();
  i64 ln = p.l.order();
  FinAbGroup l2 = p.l_squared();

  // The solve needs phi |-> p_L(g(0, phi)) to be a bijection L^ -> L.
  std::vector<i64> tmap(static_cast<std::size_t>(ln)), tinv(static_cast<std::size_t>(ln), -1);
  for (i64 phi = 0; phi < ln; ++phi) {
    i64 img = p.part_l(g.hom.apply(p.embed_dual(phi)));
    tmap[std::size_t(phi)] = img;
    if (tinv[std::size_t(img)] != -1)
      throw input_error("eno_bicharacter: transversality violated (phi not unique)");
    tinv[std::size_t(img)] = phi;
  }

  EnoData out;
  // H = projection of the graph of g to L^2.
  {
    std::set<i64> elems;
    for (i64 x = 0; x < a.order(); ++x)
      elems.insert(p.pair_index(p.part_l(x), p.part_l(g.hom.apply(x))));
    out.h.elements.assign(elems.begin(), elems.end());
    out.h.generators = out.h.elements;
  }
  out.chi = Bicharacter(l2, p.pairing_modulus());
  for (i64 l1 = 0; l1 < ln; ++l1)
    for (i64 k1 = 0; k1 < ln; ++k1) {
      i64 c = p.part_l(g.hom.apply(p.embed_l(l1)));
      // solve p_L(g(l1, phi)) = -k1:  tmap(phi) = -k1 - c.
      i64 phi = tinv[std::size_t(p.l.add(p.l.neg(k1), p.l.neg(c)))];
      i64 psi = p.part_dual(g.hom.apply(a.add(p.embed_l(l1), p.embed_dual(phi))));
      for (i64 l22 = 0; l22 < ln; ++l22)
        for (i64 k2 = 0; k2 < ln; ++k2)
          out.chi.at(p.pair_index(l1, k1), p.pair_index(l22, k2)) =
              mod_reduce(p.chi_eval(phi, l22) + p.chi_eval(psi, k2), p.pairing_modulus());
    }
  if (!out.chi.is_biadditive()) throw internal_error("eno_bicharacter: chi not biadditive");
  return out;
}

// Middle associator induced from (H, chi) through the module <-> bimodule
// dictionary, with the second slot transported through the same dual twist
// as the kernel side.
inline MiddleAssociator induced_associator(const Polarization& p, const EnoData& eno) {
  i64 ln = p.l.order();
  MiddleAssociator out{p.l, eno.chi.modulus, Mat<i64>(long(ln), long(ln))};
  for (i64 l = 0; l < ln; ++l)
    for (i64 k = 0; k < ln; ++k) {
      i64 kt = p.twist_adjoint(k);
      out.table.at(long(l), long(k)) = eno.chi.at(p.pair_index(l, 0), p.pair_index(0, kt));
    }
  return out;
}

struct BksReflectionResult {
  Isometry reflection;
  MiddleAssociator kernel_side;    // from kappa_{ev,g}
  MiddleAssociator module_side;    // from (H, chi_g)
  bool h_full = false;             // H = L^2
  bool pass = false;               // kernel == sign * module
};

struct BksReport {
  FinAbGroup l;
  int sign = kBksSignConvention;
  bool all_pass = false;
  std::vector<BksReflectionResult> per_reflection;
};

// Desk-scale verification that the kernel construction and the reference
// module-category assignment give the same bimodule invariant for every
// reflection, under the one frozen global sign.
inline BksReport verify_bks(const FinAbGroup& l,
                            std::optional<AbHom> dual_twist = std::nullopt) {
  auto p = fp_vector_space_char(l);
  if (!p || *p == 2) throw input_error("verify_bks: L must be an F_p vector space, p odd");
  Polarization pol = make_polarization(l, std::move(dual_twist));
  BksReport report;
  report.l = l;
  report.sign = kBksSignConvention;
  report.all_pass = true;
  for (const auto& r : reflections(pol.metric)) {
    BksReflectionResult res;
    res.reflection = r;
    res.kernel_side = middle_associator(pol, kappa_ev_g(pol, r).cochain);
    EnoData eno = eno_bicharacter(pol, r);
    res.h_full = eno.h.order() == pol.l.order() * pol.l.order();
    res.module_side = induced_associator(pol, eno);
    MiddleAssociator expect =
        kBksSignConvention == 1 ? res.module_side : res.module_side.negated();
    res.pass = res.h_full && res.kernel_side == expect;
    report.all_pass = report.all_pass && res.pass;
    report.per_reflection.push_back(std::move(res));
  }
  return report;
}

}  // namespace gq

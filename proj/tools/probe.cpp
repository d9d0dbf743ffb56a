// Scratch exploration binary (not installed).
#include <cstdio>

#include "gq/bks.hpp"
#include "gq/equivariance.hpp"

using namespace gq;

int main() {
  // A. Lemma-trans counterexample on (F_3)^2 hyperbolic: every reflection
  // fixes a nonzero vector of L.
  {
    FinAbGroup l{{3, 3}};
    auto m = standard_hyperbolic(l);
    auto lags = lagrangian_subgroups(m);
    // standard L = first block.
    Subgroup std_l;
    for (i64 x = 0; x < 9; ++x) {
      auto xv = l.element(x);
      std_l.elements.push_back(m.group().index({xv[0], xv[1], 0, 0}));
    }
    std::sort(std_l.elements.begin(), std_l.elements.end());
    std_l.generators = std_l.elements;
    long nontrans = 0, total = 0;
    for (const auto& r : reflections(m)) {
      ++total;
      if (!is_transverse(std_l, image_subgroup(m.group(), r, std_l))) ++nontrans;
    }
    std::printf("A: (F3)^2: %ld of %ld reflections give non-transverse gL\n", nontrans, total);
    // And the swap IS transverse:
    Mat<i64> sw(4, 4);
    for (long i = 0; i < 2; ++i) {
      sw.at(i, 2 + i) = 1;
      sw.at(2 + i, i) = 1;
    }
    Isometry swap{AbHom(m.group(), m.group(), sw)};
    std::printf("A: swap preserves form=%d transverse=%d\n", int(preserves_form(m, swap.hom)),
                int(is_transverse(std_l, image_subgroup(m.group(), swap, std_l))));
    // Does the associator comparison pass for the swap?
    auto pol = make_polarization(l);
    auto kg = kappa_ev_g(pol, swap);
    auto d1 = middle_associator(pol, kg.cochain);
    auto eno = eno_bicharacter(pol, swap);
    auto d2 = induced_associator(pol, eno);
    std::printf("A: swap comparison: d1==d2: %d, d1==-d2: %d, H full: %d\n", int(d1 == d2),
                int(d1 == d2.negated()), int(eno.h.order() == 81));
  }

  // B. Criterion-8 sweep debug: find the first failing case.
  {
    std::vector<FinAbGroup> ls{FinAbGroup{{2}}, FinAbGroup{{3}}, FinAbGroup{{4}},
                               FinAbGroup{{2, 2}}};
    for (const auto& lf : ls) {
      auto l = make_group(lf);
      auto g = make_group(FinAbGroup{{2}});
      std::vector<TableAut> invols;
      for (const auto& h : enumerate_endomorphisms(lf)) {
        if (!h.is_bijective()) continue;
        bool invol = true;
        for (i64 x = 0; x < lf.order() && invol; ++x) invol = h.apply(h.apply(x)) == x;
        if (invol) {
          TableAut t(static_cast<std::size_t>(lf.order()));
          for (i64 x = 0; x < lf.order(); ++x) t[std::size_t(x)] = h.apply(x);
          invols.push_back(std::move(t));
        }
      }
      TableAut id(static_cast<std::size_t>(lf.order()));
      for (i64 x = 0; x < lf.order(); ++x) id[std::size_t(x)] = x;
      for (std::size_t pi = 0; pi < invols.size(); ++pi) {
        auto sp = semidirect_product(*l, *g, {id, invols[pi]});
        for (int d : {2, 3}) {
          auto kx = kx_cohomology(l, d);
          std::vector<Cochain> taus{Cochain(l, d, 2)};
          for (const auto& rep : kx.reps) taus.push_back(rep);
          for (std::size_t ti = 0; ti < taus.size(); ++ti) {
            try {
              auto res = anomaly_class(l, sp.gamma, sp.inject_l, sp.project_g, g, taus[ti], d);
              if (res.anomaly_trivializable != res.extends)
                std::printf("B: MISMATCH L=%lld phi=%zu d=%d tau=%zu\n",
                            (long long)lf.order(), pi, d, ti);
            } catch (const std::exception& e) {
              std::printf("B: THROW L=%lld phi=%zu d=%d tau=%zu: %s\n", (long long)lf.order(),
                          pi, d, ti, e.what());
            }
          }
        }
      }
      std::printf("B: L order %lld done\n", (long long)lf.order());
    }
  }
  return 0;
}

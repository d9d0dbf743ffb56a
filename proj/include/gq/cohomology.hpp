#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gq/cochain.hpp"

namespace gq {

namespace detail {

// Rows of the bar differential C^n -> C^{n+1} streamed into a solver with a
// given right-hand side (dense cochain or zero).
inline void add_differential_rows(LinearSystemMod& sys, const GroupTable& g, int degree,
                                  const std::vector<i64>* rhs) {
  long n = degree;
  i64 ord = g.order();
  i64 rows = 1;
  for (int i = 0; i < n + 1; ++i) rows *= ord;
  std::vector<i64> args(static_cast<std::size_t>(n + 1)), sub(static_cast<std::size_t>(n));
  std::vector<std::pair<long, i64>> entries;
  for (i64 f = 0; f < rows; ++f) {
    i64 rest = f;
    for (int i = n; i >= 0; --i) {
      args[std::size_t(i)] = rest % ord;
      rest /= ord;
    }
    entries.clear();
    auto flat_sub = [&]() {
      i64 idx = 0;
      for (i64 a : sub) idx = idx * ord + a;
      return idx;
    };
    for (int j = 0; j < n; ++j) sub[std::size_t(j)] = args[std::size_t(j + 1)];
    entries.emplace_back(long(flat_sub()), 1);
    for (int i = 1; i <= n; ++i) {
      for (int j = 0, k = 0; j <= n; ++j) {
        if (j == i - 1) {
          sub[std::size_t(k++)] = g.mul(args[std::size_t(j)], args[std::size_t(j + 1)]);
          ++j;
        } else {
          sub[std::size_t(k++)] = args[std::size_t(j)];
        }
      }
      entries.emplace_back(long(flat_sub()), i % 2 == 0 ? 1 : -1);
    }
    for (int j = 0; j < n; ++j) sub[std::size_t(j)] = args[std::size_t(j)];
    entries.emplace_back(long(flat_sub()), (n + 1) % 2 == 0 ? 1 : -1);
    sys.add_row(entries, rhs ? (*rhs)[std::size_t(f)] : 0);
  }
}

}  // namespace detail

struct CoboundaryWitness {
  bool is_coboundary = false;
  Cochain witness;                       // db = c when is_coboundary
  LinearSystemMod::Certificate cert;     // machine-checkable otherwise
};

// Decides whether the cocycle c is d(b) for some (n-1)-cochain b at the same
// modulus. Input must be closed.
inline CoboundaryWitness is_coboundary(const Cochain& c, i64 max_cells = 1000000) {
  if (c.degree < 1) throw input_error("is_coboundary: degree must be >= 1");
  if (!is_cocycle(c, max_cells)) throw input_error("is_coboundary: input is not closed");
  const GroupTable& g = *c.group;
  i64 unknowns = checked_pow(g.order(), c.degree - 1, max_cells);
  LinearSystemMod sys(long(unknowns), c.modulus);
  detail::add_differential_rows(sys, g, c.degree - 1, &c.values);
  auto out = sys.solve();
  CoboundaryWitness w;
  w.is_coboundary = out.solvable;
  if (out.solvable) {
    w.witness = Cochain(c.group, c.degree - 1, c.modulus);
    w.witness.values = out.x;
    if (!(bar_differential(w.witness, max_cells) == c))
      throw internal_error("is_coboundary: witness recheck failed");
  } else {
    w.cert = out.cert;
  }
  return w;
}

// H^n(Gamma, Z/N) with basis representatives and class coordinates.
struct CohomologyGroup {
  GroupPtr group;
  int degree = 0;
  i64 modulus = 2;
  std::vector<i64> factors;              // invariant factors > 1, f1 | f2 | ...
  std::vector<Cochain> reps;             // representative cocycles, rep[i] has order factors[i]
  std::vector<std::vector<i64>> cocycle_basis;  // generators of Z^n(Gamma, Z/N)
  QuotientPresentation pres;             // quotient of Z^{#basis} presenting H^n

  i64 order() const {
    i64 o = 1;
    for (i64 f : factors) o *= f;
    return o;
  }

  // Coordinates of [z] against the representative basis; throws if z is not
  // a cocycle at this modulus.
  std::vector<i64> class_coords(const Cochain& z) const {
    if (z.degree != degree || z.modulus != modulus || z.group->order() != group->order())
      throw input_error("class_coords: shape mismatch");
    long t = long(cocycle_basis.size());
    LinearSystemMod sys(t, modulus);
    for (i64 r = 0; r < z.size(); ++r) {
      std::vector<std::pair<long, i64>> row;
      for (long j = 0; j < t; ++j)
        if (cocycle_basis[std::size_t(j)][std::size_t(r)] != 0)
          row.emplace_back(j, cocycle_basis[std::size_t(j)][std::size_t(r)]);
      sys.add_row(row, z.values[std::size_t(r)]);
    }
    auto out = sys.solve();
    if (!out.solvable) throw input_error("class_coords: input is not a cocycle");
    return pres.coords(out.x);
  }

  bool is_trivial_class(const Cochain& z) const {
    for (i64 v : class_coords(z))
      if (v != 0) return false;
    return true;
  }

  // Cocycle representing given coordinates.
  Cochain from_coords(const std::vector<i64>& coords) const {
    Cochain out(group, degree, modulus);
    for (std::size_t i = 0; i < coords.size() && i < reps.size(); ++i)
      out = out + reps[i].scaled(coords[i]);
    return out;
  }
};

// Bar-resolution cohomology ker(d_n)/im(d_{n-1}) over Z/N.
inline CohomologyGroup cohomology_group(GroupPtr group, int degree, i64 modulus,
                                        i64 max_cells = 1000000) {
  if (degree < 1) throw input_error("cohomology_group: degree must be >= 1");
  const GroupTable& g = *group;
  i64 dim = checked_pow(g.order(), degree, max_cells);
  checked_pow(g.order(), degree + 1, max_cells);

  CohomologyGroup h;
  h.group = group;
  h.degree = degree;
  h.modulus = modulus;

  // Cocycle generators: kernel of d_degree.
  LinearSystemMod zsys(long(dim), modulus);
  detail::add_differential_rows(zsys, g, degree, nullptr);
  auto zout = zsys.solve();
  if (!zout.solvable) throw internal_error("cohomology_group: homogeneous system unsolvable");
  h.cocycle_basis = std::move(zout.kernel);
  long t = long(h.cocycle_basis.size());

  // Coboundary generators expressed in cocycle coordinates. d_{n-1} applied
  // to unit cochains spans the coboundaries.
  std::vector<std::vector<i64>> bcols;
  if (degree >= 1) {
    i64 lower = checked_pow(g.order(), degree - 1, max_cells);
    for (i64 k = 0; k < lower; ++k) {
      Cochain unit(group, degree - 1, modulus);
      unit.values[std::size_t(k)] = 1;
      Cochain db = bar_differential(unit, max_cells);
      if (db.is_zero()) continue;
      bcols.push_back(std::move(db.values));
    }
  }
  Mat<i64> rel(t, long(bcols.size()) + t);
  {
    // Express each coboundary in the cocycle basis.
    for (long c = 0; c < long(bcols.size()); ++c) {
      LinearSystemMod sys(t, modulus);
      for (i64 r = 0; r < dim; ++r) {
        std::vector<std::pair<long, i64>> row;
        for (long j = 0; j < t; ++j)
          if (h.cocycle_basis[std::size_t(j)][std::size_t(r)] != 0)
            row.emplace_back(j, h.cocycle_basis[std::size_t(j)][std::size_t(r)]);
        sys.add_row(row, bcols[std::size_t(c)][std::size_t(r)]);
      }
      auto out = sys.solve();
      if (!out.solvable)
        throw internal_error("cohomology_group: coboundary outside cocycle span");
      for (long r = 0; r < t; ++r) rel.at(r, c) = out.x[std::size_t(r)];
    }
    // Order relations of the generators: ord(k_j) * e_j.
    for (long j = 0; j < t; ++j) {
      i64 ord = 1;
      for (i64 v : h.cocycle_basis[std::size_t(j)]) ord = lcm64(ord, modulus / gcd64(v, modulus));
      rel.at(j, long(bcols.size()) + j) = mod_reduce(ord, modulus);
    }
  }
  h.pres = quotient_by_lattice(rel, modulus);
  h.factors = h.pres.factors;
  for (std::size_t i = 0; i < h.pres.gens.size(); ++i) {
    Cochain rep(group, degree, modulus);
    for (long j = 0; j < t; ++j) {
      i64 coeff = h.pres.gens[i][std::size_t(j)];
      if (coeff == 0) continue;
      for (i64 r = 0; r < dim; ++r)
        rep.values[std::size_t(r)] = mod_reduce(
            rep.values[std::size_t(r)] + coeff * h.cocycle_basis[std::size_t(j)][std::size_t(r)],
            modulus);
    }
    if (!is_cocycle(rep, max_cells)) throw internal_error("cohomology_group: rep not closed");
    h.reps.push_back(std::move(rep));
  }
  return h;
}

// H^n(Gamma, k^x) via the Q/Z model: the image of H^n(Gamma, Z/m) inside
// H^n(Gamma, Z/m^2) under the coefficient inclusion x -> m x, m = |Gamma|.
// Every class is m-torsion, so this image is the full Q/Z cohomology.
struct KxCohomology {
  GroupPtr group;
  int degree = 0;
  i64 group_order = 1;
  CohomologyGroup ambient;               // H^n at modulus m^2
  std::vector<i64> factors;              // invariant factors of the k^x cohomology
  std::vector<Cochain> reps;             // at modulus m^2, values divisible by m
  Mat<i64> gen_matrix;                   // ambient coords of the stabilized generators
  QuotientPresentation pres;

  i64 order() const {
    i64 o = 1;
    for (i64 f : factors) o *= f;
    return o;
  }

  // Class coordinates of a cocycle whose modulus divides m^2; empty when the
  // ambient class lies outside the stabilized image.
  std::optional<std::vector<i64>> class_coords(const Cochain& z) const {
    Cochain pushed = include_to_modulus(z, ambient.modulus);
    std::vector<i64> u = ambient.class_coords(pushed);
    long t = gen_matrix.cols;
    i64 big = ambient.modulus;
    LinearSystemMod sys(t, big);
    for (long i = 0; i < long(ambient.factors.size()); ++i) {
      i64 scale = big / ambient.factors[std::size_t(i)];
      std::vector<std::pair<long, i64>> row;
      for (long c = 0; c < t; ++c)
        if (gen_matrix.at(i, c) != 0) row.emplace_back(c, mod_reduce(gen_matrix.at(i, c) * scale, big));
      sys.add_row(row, mod_reduce(u[std::size_t(i)] * scale, big));
    }
    auto out = sys.solve();
    if (!out.solvable) return std::nullopt;
    return pres.coords(out.x);
  }

  bool is_trivial_class(const Cochain& z) const {
    auto c = class_coords(z);
    if (!c) throw input_error("kx is_trivial_class: class outside the k^x image");
    for (i64 v : *c)
      if (v != 0) return false;
    return true;
  }

  Cochain from_coords(const std::vector<i64>& coords) const {
    Cochain out(group, degree, ambient.modulus);
    for (std::size_t i = 0; i < coords.size() && i < reps.size(); ++i)
      out = out + reps[i].scaled(coords[i]);
    return out;
  }
};

inline KxCohomology kx_cohomology(GroupPtr group, int degree, i64 max_cells = 1000000) {
  i64 m = group->order();
  KxCohomology kx;
  kx.group = group;
  kx.degree = degree;
  kx.group_order = m;
  CohomologyGroup small = cohomology_group(group, degree, m, max_cells);
  kx.ambient = cohomology_group(group, degree, m * m, max_cells);

  long t = long(small.reps.size());
  long s = long(kx.ambient.factors.size());
  kx.gen_matrix = Mat<i64>(s, t);
  for (long c = 0; c < t; ++c) {
    Cochain pushed = include_to_modulus(small.reps[std::size_t(c)], m * m);
    auto coords = kx.ambient.class_coords(pushed);
    for (long r = 0; r < s; ++r) kx.gen_matrix.at(r, c) = coords[std::size_t(r)];
  }
  // Kernel of Z^t -> ambient classes gives the relations among generators.
  i64 big = m * m;
  LinearSystemMod sys(t, big);
  for (long i = 0; i < s; ++i) {
    i64 scale = big / kx.ambient.factors[std::size_t(i)];
    std::vector<std::pair<long, i64>> row;
    for (long c = 0; c < t; ++c)
      if (kx.gen_matrix.at(i, c) != 0)
        row.emplace_back(c, mod_reduce(kx.gen_matrix.at(i, c) * scale, big));
    sys.add_row(row, 0);
  }
  auto out = sys.solve();
  if (!out.solvable) throw internal_error("kx_cohomology: homogeneous solve failed");
  Mat<i64> rel(t, long(out.kernel.size()));
  for (long c = 0; c < rel.cols; ++c)
    for (long r = 0; r < t; ++r) rel.at(r, c) = out.kernel[std::size_t(c)][std::size_t(r)];
  kx.pres = quotient_by_lattice(rel, big);
  kx.factors = kx.pres.factors;
  for (std::size_t i = 0; i < kx.pres.gens.size(); ++i) {
    Cochain rep(group, degree, big);
    for (long c = 0; c < t; ++c) {
      i64 coeff = kx.pres.gens[i][std::size_t(c)];
      if (coeff == 0) continue;
      rep = rep + include_to_modulus(small.reps[std::size_t(c)], big).scaled(coeff);
    }
    kx.reps.push_back(std::move(rep));
  }
  return kx;
}

}  // namespace gq

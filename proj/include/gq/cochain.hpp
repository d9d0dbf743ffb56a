#pragma once

#include <utility>
#include <vector>

#include "gq/group_table.hpp"

namespace gq {

// Group cochain c : Gamma^n -> Z/N with the multiplicative k^x written
// additively. Values are stored densely in lexicographic order of the
// argument tuple, first argument most significant.
struct Cochain {
  GroupPtr group;
  int degree = 0;
  i64 modulus = 2;
  std::vector<i64> values;

  Cochain() = default;
  Cochain(GroupPtr g, int deg, i64 mod)
      : group(std::move(g)), degree(deg), modulus(mod) {
    if (deg < 0) throw input_error("Cochain: negative degree");
    if (mod < 2) throw input_error("Cochain: modulus must be >= 2");
    i64 size = checked_pow(group->order(), deg, i64(1) << 40);
    values.assign(std::size_t(size), 0);
  }

  i64 size() const { return i64(values.size()); }

  i64 flat(const std::vector<i64>& args) const {
    i64 idx = 0;
    for (i64 a : args) idx = idx * group->order() + a;
    return idx;
  }
  i64 eval(const std::vector<i64>& args) const { return values[std::size_t(flat(args))]; }
  void set(const std::vector<i64>& args, i64 v) {
    values[std::size_t(flat(args))] = mod_reduce(v, modulus);
  }
  std::vector<i64> args_of(i64 flat_index) const {
    std::vector<i64> out(static_cast<std::size_t>(degree));
    for (int i = degree; i-- > 0;) {
      out[std::size_t(i)] = flat_index % group->order();
      flat_index /= group->order();
    }
    return out;
  }

  void reduce() {
    for (auto& v : values) v = mod_reduce(v, modulus);
  }

  bool is_zero() const {
    for (i64 v : values)
      if (v != 0) return false;
    return true;
  }

  bool same_shape(const Cochain& o) const {
    return group->order() == o.group->order() && degree == o.degree && modulus == o.modulus;
  }

  Cochain operator+(const Cochain& o) const {
    if (!same_shape(o)) throw input_error("Cochain: shape mismatch in +");
    Cochain out = *this;
    for (std::size_t i = 0; i < values.size(); ++i)
      out.values[i] = mod_reduce(values[i] + o.values[i], modulus);
    return out;
  }
  Cochain operator-(const Cochain& o) const {
    if (!same_shape(o)) throw input_error("Cochain: shape mismatch in -");
    Cochain out = *this;
    for (std::size_t i = 0; i < values.size(); ++i)
      out.values[i] = mod_reduce(values[i] - o.values[i], modulus);
    return out;
  }
  Cochain scaled(i64 k) const {
    Cochain out = *this;
    for (auto& v : out.values) v = mod_reduce(k * v, modulus);
    return out;
  }
  bool operator==(const Cochain& o) const {
    return same_shape(o) && values == o.values;
  }
};

// Coefficient inclusion Z/N -> Z/M for N | M, x -> x * (M/N); models the
// inclusion of N-torsion into M-torsion inside Q/Z.
inline Cochain include_to_modulus(const Cochain& c, i64 target_modulus) {
  if (target_modulus % c.modulus != 0)
    throw input_error("include_to_modulus: target must be a multiple of the source modulus");
  i64 scale = target_modulus / c.modulus;
  Cochain out(c.group, c.degree, target_modulus);
  for (std::size_t i = 0; i < c.values.size(); ++i)
    out.values[i] = mod_reduce(c.values[i] * scale, target_modulus);
  return out;
}

// Inverse of include_to_modulus where possible: all values divisible by M/N.
inline Cochain restrict_modulus(const Cochain& c, i64 target_modulus) {
  if (c.modulus % target_modulus != 0)
    throw input_error("restrict_modulus: target must divide the source modulus");
  i64 scale = c.modulus / target_modulus;
  Cochain out(c.group, c.degree, target_modulus);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (c.values[i] % scale != 0) throw input_error("restrict_modulus: value not divisible");
    out.values[i] = c.values[i] / scale;
  }
  return out;
}

// Inhomogeneous bar differential with trivial coefficient action:
// (dc)(g_1, ..., g_{n+1}) = c(g_2, ..) + sum_i (-1)^i c(.., g_i g_{i+1}, ..)
//                         + (-1)^{n+1} c(g_1, .., g_n).
inline Cochain bar_differential(const Cochain& c, i64 max_cells = 1000000) {
  const GroupTable& g = *c.group;
  checked_pow(g.order(), c.degree + 1, max_cells);
  Cochain out(c.group, c.degree + 1, c.modulus);
  int n = c.degree;
  std::vector<i64> args(std::size_t(n + 1));
  std::vector<i64> sub(static_cast<std::size_t>(n));
  for (i64 f = 0; f < out.size(); ++f) {
    i64 rest = f;
    for (int i = n; i >= 0; --i) {
      args[std::size_t(i)] = rest % g.order();
      rest /= g.order();
    }
    i64 acc = 0;
    // i = 0: drop the first argument.
    for (int j = 0; j < n; ++j) sub[std::size_t(j)] = args[std::size_t(j + 1)];
    acc += c.eval(sub);
    // 1 <= i <= n: merge arguments i and i+1 (1-based).
    for (int i = 1; i <= n; ++i) {
      for (int j = 0, k = 0; j <= n; ++j) {
        if (j == i - 1) {
          sub[std::size_t(k++)] = g.mul(args[std::size_t(j)], args[std::size_t(j + 1)]);
          ++j;
        } else {
          sub[std::size_t(k++)] = args[std::size_t(j)];
        }
      }
      acc += (i % 2 == 0 ? 1 : -1) * c.eval(sub);
    }
    // i = n+1: drop the last argument.
    for (int j = 0; j < n; ++j) sub[std::size_t(j)] = args[std::size_t(j)];
    acc += ((n + 1) % 2 == 0 ? 1 : -1) * c.eval(sub);
    out.values[std::size_t(f)] = mod_reduce(acc, c.modulus);
  }
  return out;
}

inline bool is_cocycle(const Cochain& c, i64 max_cells = 1000000) {
  return bar_differential(c, max_cells).is_zero();
}

// Group homomorphism between tables as an index map.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<i64> map;

  GroupHom(GroupPtr src, GroupPtr tgt, std::vector<i64> mp)
      : source(std::move(src)), target(std::move(tgt)), map(std::move(mp)) {
    if (long(map.size()) != source->order()) throw input_error("GroupHom: bad map size");
    for (i64 v : map)
      if (v < 0 || v >= target->order()) throw input_error("GroupHom: value out of range");
    for (i64 x = 0; x < source->order(); ++x)
      for (i64 y = 0; y < source->order(); ++y)
        if (map[std::size_t(source->mul(x, y))] !=
            target->mul(map[std::size_t(x)], map[std::size_t(y)]))
          throw input_error("GroupHom: not multiplicative");
  }
};

// (h^* c)(g_1, ..., g_n) = c(h g_1, ..., h g_n); commutes with d.
inline Cochain pullback_cochain(const GroupHom& h, const Cochain& c) {
  if (h.target->order() != c.group->order())
    throw input_error("pullback_cochain: homomorphism target != cochain group");
  Cochain out(h.source, c.degree, c.modulus);
  int n = c.degree;
  std::vector<i64> args(static_cast<std::size_t>(n)), img(static_cast<std::size_t>(n));
  for (i64 f = 0; f < out.size(); ++f) {
    i64 rest = f;
    for (int i = n; i-- > 0;) {
      args[std::size_t(i)] = rest % h.source->order();
      rest /= h.source->order();
    }
    for (int i = 0; i < n; ++i) img[std::size_t(i)] = h.map[std::size_t(args[std::size_t(i)])];
    out.values[std::size_t(f)] = c.eval(img);
  }
  return out;
}

// Left action of an automorphism: (phi . c)(l_1, ..) = c(phi^{-1} l_1, ..).
inline Cochain act_on_cochain(const TableAut& phi, const Cochain& c) {
  const GroupTable& g = *c.group;
  if (long(phi.size()) != g.order() || !is_automorphism(g, phi))
    throw input_error("act_on_cochain: not an automorphism");
  std::vector<i64> inv(phi.size());
  for (i64 x = 0; x < g.order(); ++x) inv[std::size_t(phi[std::size_t(x)])] = x;
  Cochain out(c.group, c.degree, c.modulus);
  int n = c.degree;
  std::vector<i64> args(static_cast<std::size_t>(n)), pre(static_cast<std::size_t>(n));
  for (i64 f = 0; f < out.size(); ++f) {
    i64 rest = f;
    for (int i = n; i-- > 0;) {
      args[std::size_t(i)] = rest % g.order();
      rest /= g.order();
    }
    for (int i = 0; i < n; ++i) pre[std::size_t(i)] = inv[std::size_t(args[std::size_t(i)])];
    out.values[std::size_t(f)] = c.eval(pre);
  }
  return out;
}

}  // namespace gq

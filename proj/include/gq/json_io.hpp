#pragma once

#include <json.hpp>

#include <string>

#include "gq/bks.hpp"
#include "gq/equivariance.hpp"
#include "gq/metric.hpp"

namespace gq {

using Json = nlohmann::json;

// FNV-1a over the canonical dump; deterministic input fingerprint for
// reports (not cryptographic).
inline std::string canonical_hash(const Json& j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Group descriptors: {"cyclic_product":[n1,...]} or
// {"table":{"order":n,"product":[[...],...]}}.
struct GroupInput {
  GroupPtr group;
  Json echo;
};

inline GroupInput parse_group(const Json& j) {
  if (j.contains("cyclic_product")) {
    std::vector<i64> factors;
    for (const auto& v : j.at("cyclic_product")) factors.push_back(v.get<i64>());
    return {make_group(FinAbGroup{factors}), j};
  }
  if (j.contains("table")) {
    const Json& t = j.at("table");
    long order = t.at("order").get<long>();
    std::vector<i64> flat;
    for (const auto& row : t.at("product"))
      for (const auto& v : row) flat.push_back(v.get<i64>());
    return {make_group(GroupTable(order, std::move(flat))), j};
  }
  throw input_error("group descriptor needs cyclic_product or table");
}

inline FinAbGroup parse_abelian(const Json& j) {
  if (!j.contains("cyclic_product"))
    throw input_error("descriptor must be abelian (cyclic_product)");
  std::vector<i64> factors;
  for (const auto& v : j.at("cyclic_product")) factors.push_back(v.get<i64>());
  return FinAbGroup{factors};
}

// Cochain: {"degree":n, "modulus":N, "values":[... lex order ...]}; the
// group comes from context. Most-significant index = first argument.
inline Cochain parse_cochain(GroupPtr g, const Json& j) {
  Cochain c(std::move(g), j.at("degree").get<int>(), j.at("modulus").get<i64>());
  const auto& vals = j.at("values");
  if (i64(vals.size()) != c.size()) throw input_error("cochain: wrong number of values");
  for (std::size_t i = 0; i < vals.size(); ++i)
    c.values[i] = mod_reduce(vals[i].get<i64>(), c.modulus);
  return c;
}

inline Json cochain_to_json(const Cochain& c) {
  return Json{{"degree", c.degree}, {"modulus", c.modulus}, {"values", c.values}};
}

// Metric descriptors: {"hyperbolic":{"cyclic_product":[...]}} or
// {"explicit":{"group":..., "modulus":N, "values":[...]}}.
struct MetricInput {
  MetricGroup metric;
  std::optional<FinAbGroup> hyperbolic_base;
  Json echo;
};

inline MetricInput parse_metric(const Json& j) {
  if (j.contains("hyperbolic")) {
    FinAbGroup l = parse_abelian(j.at("hyperbolic"));
    return {standard_hyperbolic(l), l, j};
  }
  if (j.contains("explicit")) {
    const Json& e = j.at("explicit");
    FinAbGroup a = parse_abelian(e.at("group"));
    std::vector<i64> vals;
    for (const auto& v : e.at("values")) vals.push_back(v.get<i64>());
    return {MetricGroup(QuadraticForm(a, e.at("modulus").get<i64>(), std::move(vals))),
            std::nullopt, j};
  }
  throw input_error("metric descriptor needs hyperbolic or explicit");
}

// Action: {"L":group, "G":group, "phi":[[perm per G element]...],
//          "tau":cochain, "untwisted_dG":bool?}.
struct ActionInput {
  ActionData action;
  Json echo;
};

inline ActionInput parse_action(const Json& j) {
  GroupInput l = parse_group(j.at("L"));
  GroupInput g = parse_group(j.at("G"));
  std::vector<TableAut> phi;
  for (const auto& perm : j.at("phi")) {
    TableAut p;
    for (const auto& v : perm) p.push_back(v.get<i64>());
    phi.push_back(std::move(p));
  }
  Cochain tau = parse_cochain(l.group, j.at("tau"));
  bool twisted = !j.value("untwisted_dG", false);
  return {ActionData{l.group, g.group, std::move(phi), std::move(tau), twisted}, j};
}

inline Json isometry_to_json(const Isometry& g) {
  Json rows = Json::array();
  for (long i = 0; i < g.hom.m.rows; ++i) {
    Json row = Json::array();
    for (long c = 0; c < g.hom.m.cols; ++c) row.push_back(g.hom.m.at(i, c));
    rows.push_back(row);
  }
  return rows;
}

inline Json certificate_to_json(const LinearSystemMod::Certificate& c) {
  Json combo = Json::array();
  for (auto [tag, coeff] : c.combo) combo.push_back(Json::array({tag, coeff}));
  return Json{{"rows", combo}};
}

inline Json extension_certificate_to_json(const ExtensionCertificate& c) {
  Json closed = Json::array(), restr = Json::array();
  for (auto [t, v] : c.closedness) closed.push_back(Json::array({t, v}));
  for (auto [t, v] : c.restriction) restr.push_back(Json::array({t, v}));
  return Json{{"closedness_rows", closed}, {"restriction_rows", restr}};
}

inline Json triple_to_json(const Triple& t) {
  Json gamma = Json::array(), mu = Json::array();
  for (const auto& gx : t.gamma) gamma.push_back(gx.values);
  for (const auto& row : t.mu) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(m.values);
    mu.push_back(r);
  }
  return Json{{"modulus", t.modulus},       {"gamma", gamma},
              {"mu", mu},                   {"alpha", t.alpha.values},
              {"gamma_mode", t.gamma_mode}, {"twisted_dG", t.twisted_dg}};
}

inline Triple parse_triple(const ActionData& a, const Json& j) {
  Triple t;
  t.modulus = j.at("modulus").get<i64>();
  t.twisted_dg = j.value("twisted_dG", true);
  t.gamma_mode = j.value("gamma_mode", "external");
  for (const auto& vals : j.at("gamma")) {
    Cochain c(a.l, a.tau.degree - 1, t.modulus);
    if (vals.size() != c.values.size()) throw input_error("triple: gamma size mismatch");
    for (std::size_t i = 0; i < c.values.size(); ++i)
      c.values[i] = mod_reduce(vals[i].get<i64>(), t.modulus);
    t.gamma.push_back(std::move(c));
  }
  for (const auto& row : j.at("mu")) {
    t.mu.emplace_back();
    for (const auto& vals : row) {
      Cochain c(a.l, a.tau.degree - 2, t.modulus);
      if (vals.size() != c.values.size()) throw input_error("triple: mu size mismatch");
      for (std::size_t i = 0; i < c.values.size(); ++i)
        c.values[i] = mod_reduce(vals[i].get<i64>(), t.modulus);
      t.mu.back().push_back(std::move(c));
    }
  }
  t.alpha = Cochain(a.g, a.tau.degree, t.modulus);
  if (j.contains("alpha")) {
    const auto& vals = j.at("alpha");
    if (vals.size() != t.alpha.values.size()) throw input_error("triple: alpha size mismatch");
    for (std::size_t i = 0; i < t.alpha.values.size(); ++i)
      t.alpha.values[i] = mod_reduce(vals[i].get<i64>(), t.modulus);
  }
  return t;
}

}  // namespace gq

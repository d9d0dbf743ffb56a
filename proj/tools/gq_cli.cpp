// gq: batch front end for the exact metric-group / group-cohomology library.
//
// Subcommands consume JSON descriptors (inline or @file), emit one JSON
// report on stdout and a short human summary on stderr. Exit codes:
//   0  success
//   2  obstruction or verification failure (certificate in the report)
//   1  input, schema, or resource error

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "gq/json_io.hpp"
#include "gq/version.hpp"

using namespace gq;

namespace {

Json read_descriptor(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw input_error("cannot open " + arg.substr(1));
    return Json::parse(in);
  }
  return Json::parse(arg);
}

struct Emitter {
  std::string command;
  Json payload = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void input(const std::string& name, const Json& echo) {
    payload["inputs"][name] = {{"hash", canonical_hash(echo)}, {"descriptor", echo}};
  }

  int emit(int exit_code, const std::string& summary) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    Json report{{"schema", kReportSchema},
                {"command", command},
                {"library_version", kVersion},
                {"status", exit_code == 0 ? "ok" : (exit_code == 2 ? "obstructed" : "error")},
                {"payload", payload},
                {"timing_ms", ms}};
    std::cout << report.dump(2) << "\n";
    std::cerr << "gq " << command << ": " << summary << "\n";
    return exit_code;
  }
};

int run_cohomology(const std::string& group_arg, int degree, i64 modulus, i64 max_cells) {
  Emitter em{"cohomology"};
  GroupInput gi = parse_group(read_descriptor(group_arg));
  em.input("group", gi.echo);
  em.payload["degree"] = degree;
  if (modulus > 0) {
    auto h = cohomology_group(gi.group, degree, modulus, max_cells);
    em.payload["model"] = "Z/N";
    em.payload["modulus"] = modulus;
    em.payload["invariant_factors"] = h.factors;
    em.payload["order"] = h.order();
    Json reps = Json::array();
    for (const auto& r : h.reps) reps.push_back(cochain_to_json(r));
    em.payload["representatives"] = reps;
    return em.emit(0, "H^" + std::to_string(degree) + " computed");
  }
  auto kx = kx_cohomology(gi.group, degree, max_cells);
  em.payload["model"] = "kx";
  em.payload["representative_modulus"] = kx.ambient.modulus;
  em.payload["invariant_factors"] = kx.factors;
  em.payload["order"] = kx.order();
  Json reps = Json::array();
  for (const auto& r : kx.reps) reps.push_back(cochain_to_json(r));
  em.payload["representatives"] = reps;
  return em.emit(0, "H^" + std::to_string(degree) + "(-, k^x) computed");
}

int run_orthogonal(const std::string& metric_arg, const std::string& strategy, bool with_elements,
                   bool with_reflections, bool with_cartan, i64 max_elements) {
  Emitter em{"orthogonal"};
  MetricInput mi = parse_metric(read_descriptor(metric_arg));
  em.input("metric", mi.echo);
  OrthogonalStrategy st = OrthogonalStrategy::Auto;
  if (strategy == "brute") st = OrthogonalStrategy::BruteForce;
  else if (strategy == "reflections") st = OrthogonalStrategy::ReflectionClosure;
  else if (strategy != "auto") throw input_error("unknown strategy " + strategy);
  auto o = orthogonal_group(mi.metric, st, max_elements);
  em.payload["count"] = i64(o.size());
  i64 so = 0;
  for (const auto& g : o)
    if (determinant_class(mi.metric, g) == 1) ++so;
  em.payload["so_count"] = so;
  if (with_elements) {
    Json elems = Json::array();
    for (const auto& g : o)
      elems.push_back(Json{{"matrix", isometry_to_json(g)},
                           {"determinant_class", determinant_class(mi.metric, g)}});
    em.payload["elements"] = elems;
  }
  if (with_reflections || with_cartan) {
    auto refl = reflections(mi.metric);
    Json rj = Json::array();
    for (const auto& r : refl) rj.push_back(isometry_to_json(r));
    em.payload["reflections"] = rj;
  }
  if (with_cartan) {
    Json cj = Json::array();
    for (const auto& g : o) {
      auto factors = cartan_dieudonne(mi.metric, g);
      Json fj = Json::array();
      for (const auto& r : factors) fj.push_back(isometry_to_json(r));
      cj.push_back(Json{{"matrix", isometry_to_json(g)}, {"reflections", fj}});
    }
    em.payload["cartan_dieudonne"] = cj;
  }
  return em.emit(0, "order " + std::to_string(o.size()));
}

int run_lagrangians(const std::string& metric_arg, i64 max_elements) {
  Emitter em{"lagrangians"};
  MetricInput mi = parse_metric(read_descriptor(metric_arg));
  em.input("metric", mi.echo);
  auto lags = lagrangian_subgroups(mi.metric, max_elements);
  Json lj = Json::array();
  for (const auto& l : lags) lj.push_back(Json{{"elements", l.elements}});
  em.payload["lagrangians"] = lj;
  em.payload["count"] = i64(lags.size());
  Json tj = Json::array();
  for (std::size_t i = 0; i < lags.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < lags.size(); ++j) row.push_back(is_transverse(lags[i], lags[j]));
    tj.push_back(row);
  }
  em.payload["transverse"] = tj;
  return em.emit(0, std::to_string(lags.size()) + " lagrangians");
}

int run_bks_verify(const std::string& group_arg) {
  Emitter em{"bks-verify"};
  Json desc = read_descriptor(group_arg);
  FinAbGroup l = parse_abelian(desc);
  em.input("group", desc);
  auto report = verify_bks(l);
  em.payload["sign_convention"] = report.sign;
  em.payload["all_pass"] = report.all_pass;
  Json per = Json::array();
  for (const auto& r : report.per_reflection) {
    Json tables{{"kernel_side", r.kernel_side.table.a}, {"module_side", r.module_side.table.a}};
    per.push_back(Json{{"reflection", isometry_to_json(r.reflection)},
                       {"pass", r.pass},
                       {"h_full", r.h_full},
                       {"tables", tables}});
  }
  em.payload["reflections"] = per;
  return em.emit(report.all_pass ? 0 : 2,
                 report.all_pass ? "all reflections verified" : "verification FAILED");
}

int run_triple(const std::string& action_arg, const std::string& check_arg, i64 max_cells) {
  Emitter em{"triple"};
  ActionInput ai = parse_action(read_descriptor(action_arg));
  em.input("action", ai.echo);
  em.payload["working_modulus"] = ai.action.working_modulus();
  em.payload["twisted_dG"] = ai.action.twisted_dg;
  auto act = check_action(ai.action, max_cells);
  em.payload["action_check"] = Json{{"pass", act.pass}, {"detail", act.detail}};
  if (!act.pass) return em.emit(2, "action check failed: " + act.detail);

  if (!check_arg.empty()) {
    Json tj = read_descriptor(check_arg);
    em.input("triple", tj);
    Triple t = parse_triple(ai.action, tj);
    auto rep = check_triple(ai.action, t, max_cells);
    em.payload["check"] = Json{{"cond_gamma", rep.cond_gamma},
                               {"cond_mu", rep.cond_mu},
                               {"cond_alpha", rep.cond_alpha},
                               {"offending", rep.offending},
                               {"offending_l_args", rep.offending_l_args}};
    return em.emit(rep.pass() ? 0 : 2, rep.pass() ? "triple verified" : "triple check failed");
  }

  auto res = solve_triple(ai.action, max_cells);
  if (!res.solved) {
    em.payload["certificate"] = certificate_to_json(res.cert);
    return em.emit(2, "no triple exists (certificate emitted)");
  }
  em.payload["triple"] = triple_to_json(res.triple);
  auto o3 = o3_representative(ai.action, res.triple);
  em.payload["o3"] = Json{{"values_are_characters", o3.values_are_characters},
                          {"trivial", o3.trivial}};
  auto o4 = o4_representative(res.triple.alpha, max_cells);
  em.payload["o4"] = Json{{"trivial", o4.trivial}};
  return em.emit(0, "triple solved (" + res.triple.gamma_mode + " gamma)");
}

int run_extend(const std::string& action_arg, int degree, bool anomaly, i64 max_cells) {
  Emitter em{anomaly ? "anomaly" : "extend"};
  ActionInput ai = parse_action(read_descriptor(action_arg));
  em.input("action", ai.echo);
  if (ai.action.tau.degree != degree) throw input_error("tau degree != --degree");
  auto sp = semiclassical_bundle(ai.action);
  em.payload["gamma_order"] = sp.gamma->order();
  ExtensionResult res =
      anomaly ? anomaly_class(ai.action.l, sp.gamma, sp.inject_l, sp.project_g, ai.action.g,
                              ai.action.tau, degree, max_cells)
              : extend_cocycle(ai.action.l, sp.gamma, sp.inject_l, ai.action.tau, degree,
                               max_cells);
  em.payload["working_modulus"] = res.working_modulus;
  em.payload["extends"] = res.extends;
  if (res.extends) em.payload["tau_G"] = cochain_to_json(res.tau_g);
  else em.payload["certificate"] = extension_certificate_to_json(res.cert);
  if (anomaly && res.has_anomaly_data) {
    em.payload["anomaly"] = Json{{"trivializable", res.anomaly_trivializable},
                                 {"class_coords", res.anomaly_coords},
                                 {"group_factors", res.anomaly_factors},
                                 {"coset_subgroup", res.coset_subgroup},
                                 {"representative", cochain_to_json(res.anomaly_rep)}};
  }
  return em.emit(res.extends ? 0 : 2, res.extends ? "extension found" : "obstructed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations for metric groups, group cohomology and cocycle extensions"};
  app.require_subcommand(1);

  std::string group_arg, metric_arg, action_arg, check_arg, strategy = "auto";
  int degree = 3;
  i64 modulus = 0, max_cells = 2000000, max_elements = i64(1) << 24;
  int jobs = 1;
  bool with_elements = false, with_reflections = false, with_cartan = false;

  auto* coh = app.add_subcommand("cohomology", "invariant factors of H^n(G, Z/N or k^x)");
  coh->add_option("--group", group_arg, "group descriptor JSON or @file")->required();
  coh->add_option("--degree", degree, "cohomological degree")->required();
  coh->add_option("--modulus", modulus, "coefficient modulus; omit for the k^x model");
  coh->add_option("--max-cells", max_cells, "dense cochain cell bound");

  auto* ortho = app.add_subcommand("orthogonal", "orthogonal group of a metric group");
  ortho->add_option("--metric", metric_arg, "metric descriptor JSON or @file")->required();
  ortho->add_option("--strategy", strategy, "auto|brute|reflections");
  ortho->add_flag("--elements", with_elements, "list elements with determinant classes");
  ortho->add_flag("--reflections", with_reflections, "list reflections");
  ortho->add_flag("--cartan", with_cartan, "reflection factorization per element");
  ortho->add_option("--max-elements", max_elements, "endomorphism enumeration bound");

  auto* lag = app.add_subcommand("lagrangians", "lagrangian subgroups and transversality");
  lag->add_option("--metric", metric_arg, "metric descriptor JSON or @file")->required();
  lag->add_option("--max-elements", max_elements, "subgroup enumeration bound");

  auto* bks = app.add_subcommand("bks-verify", "kernel vs module-category middle associators");
  bks->add_option("--group", group_arg, "abelian group descriptor (F_p vector space)")->required();

  auto* tri = app.add_subcommand("triple", "solve or check (gamma, mu, alpha) twisting data");
  tri->add_option("--action", action_arg, "action descriptor JSON or @file")->required();
  tri->add_option("--check", check_arg, "triple JSON to verify instead of solving");
  tri->add_option("--max-cells", max_cells, "dense cochain cell bound");

  auto* ext = app.add_subcommand("extend", "extend tau to the semidirect product");
  ext->add_option("--action", action_arg, "action descriptor JSON or @file")->required();
  ext->add_option("--degree", degree, "cocycle degree d");
  ext->add_option("--max-cells", max_cells, "dense cochain cell bound");

  auto* ano = app.add_subcommand("anomaly", "anomaly class of the extension problem");
  ano->add_option("--action", action_arg, "action descriptor JSON or @file")->required();
  ano->add_option("--degree", degree, "cocycle degree d");
  ano->add_option("--max-cells", max_cells, "dense cochain cell bound");

  for (auto* sub : {coh, ortho, lag, bks, tri, ext, ano})
    sub->add_option("--jobs", jobs, "accepted for interface stability; runs sequentially");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    Json err{{"schema", kReportSchema}, {"status", "error"}, {"error", e.what()}};
    if (e.get_exit_code() == 0) {
      // --help and friends.
      std::cout << app.help() << "\n";
      return 0;
    }
    std::cout << err.dump(2) << "\n";
    std::cerr << "gq: " << e.what() << "\n";
    return 1;
  }

  try {
    if (coh->parsed()) return run_cohomology(group_arg, degree, modulus, max_cells);
    if (ortho->parsed())
      return run_orthogonal(metric_arg, strategy, with_elements, with_reflections, with_cartan,
                            max_elements);
    if (lag->parsed()) return run_lagrangians(metric_arg, max_elements);
    if (bks->parsed()) return run_bks_verify(group_arg);
    if (tri->parsed()) return run_triple(action_arg, check_arg, max_cells);
    if (ext->parsed()) return run_extend(action_arg, degree, false, max_cells);
    if (ano->parsed()) return run_extend(action_arg, degree, true, max_cells);
  } catch (const input_error& e) {
    Json err{{"schema", kReportSchema}, {"status", "error"}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "gq: input error: " << e.what() << "\n";
    return 1;
  } catch (const resource_error& e) {
    Json err{{"schema", kReportSchema}, {"status", "error"}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "gq: resource error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    Json err{{"schema", kReportSchema}, {"status", "error"}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "gq: bad descriptor: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

// Command-line front end: graph analysis, correspondence-suite
// verification, randomized identity testing, reductions, isomorphism
// extraction, and the quantum bridge.

#include <CLI11.hpp>
#include <iostream>

#include "gms/graph_algorithms.hpp"
#include "gms/json_io.hpp"
#include "gms/quantum.hpp"
#include "gms/three_way.hpp"
#include "gms/verify.hpp"

namespace {

using gms::Json;

struct CommonOptions {
  std::string field = "Fp:2";
  std::uint64_t seed = 1;
  std::string out;
};

void emit(const Json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    gms::write_file(out_path, text);
}

Json config_json(const CommonOptions& c) {
  return Json{{"field", c.field}, {"seed", c.seed}};
}

Json infinity_aware(std::int64_t v) {
  if (v == gms::GraphReport::infinity) return Json("inf");
  return Json(v);
}

Json analyze_file(const std::string& path, const gms::Field& field) {
  gms::ParsedGraph parsed = gms::parse_graph_text(gms::read_file(path));
  Json out;
  Json values, skipped;
  if (parsed.digraph) {
    const gms::Digraph& g = *parsed.digraph;
    out["kind"] = "digraph";
    gms::GraphReport r = gms::analyze_digraph(g);
    for (auto& [k, v] : r.values) values[k] = infinity_aware(v);
    for (auto& [k, v] : r.skipped) skipped[k] = v;
    gms::MatrixSpace s = gms::graphical_space(g, field);
    values["dim"] = s.dim();
    auto guarded = [&](const std::string& name, auto&& fn) {
      try {
        values[name] = fn();
      } catch (const gms::CapError& e) {
        skipped[name] = e.what();
      }
    };
    guarded("max_rank", [&] { return Json(gms::max_rank(s).value); });
    guarded("nil_index", [&] {
      auto r2 = gms::nil_index(s);
      return r2.value ? Json(*r2.value) : Json("inf");
    });
    guarded("nilpotent_index", [&] {
      auto r2 = gms::nilpotent_index(s);
      return r2 ? Json(*r2) : Json("inf");
    });
    guarded("composition_series_length",
            [&] { return Json(gms::composition_series_length(s)); });
    guarded("zero_eigenvalue_min",
            [&] { return Json(gms::zero_eigenvalue_min(s)); });
  } else {
    const gms::BipartiteGraph& g = *parsed.bipartite;
    out["kind"] = "bipartite";
    gms::GraphReport r = gms::analyze_bipartite(g);
    for (auto& [k, v] : r.values) values[k] = infinity_aware(v);
    gms::MatrixSpace s = gms::graphical_space(g, field);
    values["dim"] = s.dim();
    try {
      values["max_rank"] = gms::max_rank(s).value;
    } catch (const gms::CapError& e) {
      skipped["max_rank"] = e.what();
    }
  }
  out["values"] = values;
  if (!skipped.empty()) out["skipped"] = skipped;
  return out;
}

gms::UndirectedGraph undirected_from_digraph_file(const std::string& path) {
  gms::ParsedGraph parsed = gms::parse_graph_text(gms::read_file(path));
  if (!parsed.digraph)
    throw gms::ParseError("expected a symmetric loopless digraph file");
  const gms::Digraph& g = *parsed.digraph;
  std::vector<gms::Arc> edges;
  for (auto [i, j] : g.arcs()) {
    if (i == j) throw gms::ParseError("undirected input must be loopless");
    if (!g.has_arc(j, i))
      throw gms::ParseError("undirected input must list both orientations");
    if (i < j) edges.push_back({i, j});
  }
  return gms::UndirectedGraph(g.n(), edges);
}

int run(int argc, char** argv) {
  CLI::App app{"graphical matrix spaces: exact correspondence toolkit"};
  app.require_subcommand(1);
  CommonOptions common;

  // analyze ----------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "graph and space quantities");
  std::string analyze_graph;
  analyze->add_option("--graph", analyze_graph, "edge-list file")->required();
  analyze->add_option("--field", common.field, "field spec (Fp:p, Q, Qi, C64)");
  analyze->add_option("--out", common.out, "output path (default stdout)");

  // verify -------------------------------------------------------------- --
  auto* verify = app.add_subcommand("verify", "correspondence suites");
  std::vector<std::string> theorems;
  gms::VerifyOptions vopts;
  bool raw = false;
  std::string cx_dir = ".";
  verify->add_option("--theorems", theorems, "suite ids or 'all'")->required();
  verify->add_option("--n-max", vopts.n_max, "instance size bound");
  verify->add_option("--field", common.field, "field spec");
  verify->add_option("--seed", vopts.seed, "PRNG seed");
  verify->add_option("--samples", vopts.samples, "random samples per instance");
  verify->add_flag("--loopless", vopts.loopless_only, "enumerate loopless digraphs");
  verify->add_flag("--raw", raw, "disable isomorphism-class deduplication");
  verify->add_option("--threads", vopts.threads, "worker threads (0 = GMS_THREADS)");
  verify->add_option("--counterexample-dir", cx_dir,
                     "where reproduction files are written");
  verify->add_option("--out", common.out, "output path");

  // search-atkinson ----------------------------------------------------- --
  auto* atkinson = app.add_subcommand("search-atkinson",
                                      "bounded-eigenvalue dimension explorer");
  int atkinson_n = 3;
  atkinson->add_option("--n-max", atkinson_n, "instance size bound");
  atkinson->add_option("--threads", vopts.threads, "worker threads");
  atkinson->add_option("--counterexample-dir", cx_dir,
                       "where reproduction files are written");
  atkinson->add_option("--out", common.out, "output path");

  // pit ----------------------------------------------------------------- --
  auto* pit = app.add_subcommand("pit", "randomized identity tests");
  std::string pit_kind, pencil_path;
  int trials = 10, nil_k = 1;
  std::int64_t hint = 1'000'003;
  pit->add_option("kind", pit_kind, "sdit | snt | nilindex")->required();
  pit->add_option("--pencil", pencil_path, "pencil JSON file")->required();
  pit->add_option("--trials", trials, "number of trials");
  pit->add_option("--seed", common.seed, "PRNG seed");
  pit->add_option("--hint", hint, "field size hint");
  pit->add_option("--k", nil_k, "index bound for nilindex");
  pit->add_option("--out", common.out, "output path");

  // reduce -------------------------------------------------------------- --
  auto* reduce = app.add_subcommand("reduce", "constructive reductions");
  std::string reduce_kind, reduce_input;
  reduce->add_option("kind", reduce_kind, "sdit-to-nilindex | cycle-to-matching")
      ->required();
  reduce->add_option("--pencil", pencil_path, "pencil JSON (sdit-to-nilindex)");
  reduce->add_option("--graph", reduce_input, "digraph file (cycle-to-matching)");
  reduce->add_option("--out", common.out, "output path");

  // extract-iso -----------------------------------------------------------
  auto* extract = app.add_subcommand("extract-iso",
                                     "permutations from conjugators/congruators");
  std::string extract_kind, t_path, g_path, h_path;
  extract->add_option("kind", extract_kind, "conjugator | congruator")->required();
  extract->add_option("--t", t_path, "matrix JSON file")->required();
  extract->add_option("--g", g_path, "digraph file")->required();
  extract->add_option("--h", h_path, "digraph file")->required();
  extract->add_option("--field", common.field, "field spec");
  extract->add_option("--out", common.out, "output path");

  // quantum ----------------------------------------------------------------
  auto* quantum = app.add_subcommand("quantum", "machine-complex bridge");
  std::string q_kind, transition_path, q_graph;
  quantum->add_option("kind", q_kind, "irreducible | spectral | connected")
      ->required();
  quantum->add_option("--transition", transition_path, "transition CSV");
  quantum->add_option("--graph", q_graph, "symmetric loopless digraph file");
  quantum->add_option("--out", common.out, "output path");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    Json report = analyze_file(analyze_graph, gms::Field::parse(common.field));
    report["config"] = config_json(common);
    emit(report, common.out);
    return 0;
  }

  if (verify->parsed()) {
    vopts.field = gms::Field::parse(common.field);
    vopts.dedup_classes = !raw;
    std::vector<std::string> ids = theorems;
    if (ids.size() == 1 && ids[0] == "all") ids = gms::known_theorem_ids();
    Json suites = Json::array();
    int failures = 0;
    for (const std::string& id : ids) {
      try {
        gms::SuiteReport r = gms::verify_theorem(id, vopts);
        Json j = gms::report_to_json(r);
        j["theorem"] = id;
        suites.push_back(j);
        failures += r.failed;
      } catch (const gms::CounterexampleError& e) {
        Json repro = gms::case_to_json(e.found);
        std::string path = cx_dir + "/counterexample_" + std::to_string(suites.size()) +
                           ".json";
        gms::write_file(path, repro.dump(2) + "\n");
        suites.push_back(Json{{"theorem", id},
                              {"counterexample", repro},
                              {"reproduction_file", path}});
        ++failures;
      }
    }
    Json report{{"config",
                 {{"field", common.field},
                  {"seed", vopts.seed},
                  {"n_max", vopts.n_max},
                  {"samples", vopts.samples},
                  {"dedup", vopts.dedup_classes}}},
                {"suites", suites},
                {"failures", failures}};
    emit(report, common.out);
    return failures == 0 ? 0 : 1;
  }

  if (atkinson->parsed()) {
    gms::VerifyOptions o;
    o.threads = vopts.threads;
    try {
      gms::SuiteReport r = gms::explore_atkinson(atkinson_n, o);
      Json report = gms::report_to_json(r);
      report["config"] = Json{{"n_max", atkinson_n}};
      emit(report, common.out);
      return r.failed == 0 ? 0 : 1;
    } catch (const gms::CounterexampleError& e) {
      Json repro = gms::case_to_json(e.found);
      std::string path = cx_dir + "/counterexample_atkinson.json";
      gms::write_file(path, repro.dump(2) + "\n");
      emit(Json{{"counterexample", repro}, {"reproduction_file", path}}, common.out);
      return 1;
    }
  }

  if (pit->parsed()) {
    gms::SymbolicMatrix pencil =
        gms::pencil_from_json(Json::parse(gms::read_file(pencil_path)));
    Json report;
    report["config"] = Json{{"kind", pit_kind},
                            {"trials", trials},
                            {"seed", common.seed},
                            {"hint", hint}};
    if (pit_kind == "sdit") {
      auto r = gms::sdit_random(pencil, trials, hint, common.seed);
      report["outcome"] = r.nonzero ? "Nonzero" : "ProbablyZero";
      if (r.nonzero) {
        Json point = Json::array();
        for (const auto& e : r.witness_point) point.push_back(gms::scalar_to_json(e));
        report["witness_point"] = point;
      } else {
        report["error_bound"] = r.error_bound;
      }
    } else if (pit_kind == "snt") {
      auto r = gms::snt_random(pencil, trials, hint, common.seed);
      report["outcome"] = r.not_nil ? "NotNil" : "ProbablyNil";
      if (r.not_nil) {
        Json point = Json::array();
        for (const auto& e : r.witness_point) point.push_back(gms::scalar_to_json(e));
        report["witness_point"] = point;
      } else {
        report["error_bound"] = r.error_bound;
      }
    } else if (pit_kind == "nilindex") {
      auto r = gms::nilindex_at_most(pencil, nil_k, trials, hint, common.seed);
      report["k"] = nil_k;
      report["outcome"] = r.exceeded ? "No" : "ProbablyYes";
      if (r.exceeded) {
        Json point = Json::array();
        for (const auto& e : r.witness_point) point.push_back(gms::scalar_to_json(e));
        report["witness_point"] = point;
      } else {
        report["error_bound"] = r.error_bound;
      }
    } else {
      throw CLI::ValidationError("pit kind must be sdit | snt | nilindex");
    }
    emit(report, common.out);
    return 0;
  }

  if (reduce->parsed()) {
    if (reduce_kind == "sdit-to-nilindex") {
      gms::SymbolicMatrix pencil =
          gms::pencil_from_json(Json::parse(gms::read_file(pencil_path)));
      auto r = gms::sdit_to_nilindex(pencil);
      Json report{{"threshold", r.threshold},
                  {"gadget", gms::pencil_to_json(r.gadget)}};
      emit(report, common.out);
      return 0;
    }
    if (reduce_kind == "cycle-to-matching") {
      gms::ParsedGraph parsed = gms::parse_graph_text(gms::read_file(reduce_input));
      if (!parsed.digraph) throw gms::ParseError("cycle-to-matching needs a digraph");
      auto red = gms::cycle_to_matching_reduction(*parsed.digraph);
      Json variants = Json::array();
      for (const auto& v : red.variants) {
        Json edges = Json::array();
        for (auto [i, j] : v.edges()) edges.push_back(Json::array({i + 1, j + 1}));
        variants.push_back(Json{{"m", v.m()}, {"n", v.n()}, {"edges", edges}});
      }
      auto cycle = gms::cycle_via_matching(*parsed.digraph);
      Json decoded = Json::array();
      if (cycle)
        for (int v : *cycle) decoded.push_back(v + 1);
      Json report{{"variants", variants},
                  {"cyclic", cycle.has_value()},
                  {"decoded_cycle", decoded}};
      emit(report, common.out);
      return 0;
    }
    throw CLI::ValidationError("reduce kind must be sdit-to-nilindex | cycle-to-matching");
  }

  if (extract->parsed()) {
    gms::Field field = gms::Field::parse(common.field);
    gms::Matrix t = gms::matrix_from_json(Json::parse(gms::read_file(t_path)));
    auto pg = gms::parse_graph_text(gms::read_file(g_path));
    auto ph = gms::parse_graph_text(gms::read_file(h_path));
    if (!pg.digraph || !ph.digraph)
      throw gms::ParseError("extract-iso needs digraph files");
    gms::MatrixSpace sg = gms::graphical_space(*pg.digraph, field);
    gms::MatrixSpace sh = gms::graphical_space(*ph.digraph, field);
    std::vector<int> perm;
    if (extract_kind == "conjugator")
      perm = gms::conjugacy_to_permutation(sg, sh, t);
    else if (extract_kind == "congruator")
      perm = gms::congruence_to_isomorphism(sg, sh, t);
    else
      throw CLI::ValidationError("extract-iso kind must be conjugator | congruator");
    Json p = Json::array();
    for (int v : perm) p.push_back(v + 1);
    emit(Json{{"permutation", p}}, common.out);
    return 0;
  }

  if (quantum->parsed()) {
    if (q_kind == "irreducible") {
      auto p = gms::transition_from_csv(gms::read_file(transition_path));
      auto channel = gms::channel_from_transition(p);
      auto result = gms::channel_irreducible(channel);
      Json report{{"trace_preserving", channel.trace_preserving},
                  {"unital", channel.unital},
                  {"irreducible", result == gms::Tristate::yes
                                      ? "yes"
                                      : result == gms::Tristate::no ? "no"
                                                                    : "indeterminate"}};
      emit(report, common.out);
      return result == gms::Tristate::indeterminate ? 1 : 0;
    }
    if (q_kind == "spectral") {
      auto g = undirected_from_digraph_file(q_graph);
      auto pair = gms::spectral_expansion_pair(g);
      emit(Json{{"graph_value", pair.graph_value},
                {"channel_value", pair.channel_value}},
           common.out);
      return 0;
    }
    if (q_kind == "connected") {
      auto g = undirected_from_digraph_file(q_graph);
      gms::MatrixSpace f = gms::operator_system(g);
      emit(Json{{"dim", f.dim()},
                {"connected", gms::operator_system_connected(f)}},
           common.out);
      return 0;
    }
    throw CLI::ValidationError("quantum kind must be irreducible | spectral | connected");
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gms::ParseError& e) {
    std::cerr << Json{{"error", {{"code", "parse_error"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const gms::CapError& e) {
    std::cerr << Json{{"error", {{"code", "cap_error"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const gms::FieldError& e) {
    std::cerr << Json{{"error", {{"code", "field_error"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", {{"code", "error"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  }
}

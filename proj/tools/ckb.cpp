// Command-line front end: parses diagram/measure/map files, runs the
// analyses, and emits deterministic JSON (or DOT) reports.
//
// Exit codes: 0 pass, 1 verification failure, 2 parse error, 3 invalid input.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckb/admissible.hpp"
#include "ckb/diagram.hpp"
#include "ckb/io.hpp"
#include "ckb/measure.hpp"
#include "ckb/representation.hpp"
#include "ckb/sfs.hpp"

using json = nlohmann::ordered_json;
using namespace ckb;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvalidInput = 3;

int max_depth_cap() {
  const char* env = std::getenv("CKB_MAX_DEPTH");
  if (!env) return 12;
  try {
    int cap = std::stoi(env);
    return std::max(1, std::min(cap, 12));
  } catch (...) {
    return 12;
  }
}

void check_depth(int depth) {
  int cap = max_depth_cap();
  if (depth < 1 || depth > cap)
    throw InvalidInputError("depth must be in [1, " + std::to_string(cap) + "]");
}

json word_json(const EdgeTable& E, const CylinderWord& w) {
  json arr = json::array();
  for (EdgeId e : w.edges) arr.push_back(E.label(e));
  return arr;
}

json scalar_array_json(const std::vector<Scalar>& values) {
  json arr = json::array();
  for (const Scalar& v : values) arr.push_back(v.str());
  return arr;
}

void to_float(MeasureSpec& spec) {
  auto conv = [](Scalar& s) { s = Scalar::approx(s.as_double()); };
  for (auto& v : spec.pi) conv(v);
  for (auto& row : spec.ps)
    for (auto& v : row) conv(v);
  for (auto& v : spec.tail_p) conv(v);
  if (spec.perron) {
    conv(spec.perron->lambda);
    for (auto& v : spec.perron->x) conv(v);
  }
}

json analyze_report(const Diagram& D) {
  json rep;
  rep["n"] = D.A.n;
  rep["edge_count"] = D.edge_count();
  json edges = json::array();
  for (const Edge& e : D.edges.edges())
    edges.push_back({{"id", D.edges.label(e.id)}, {"s", e.source + 1}, {"r", e.range + 1}});
  rep["edges"] = edges;

  PrimitivityResult prim = is_primitive(D.A);
  rep["primitive"] = prim.primitive;
  if (prim.primitive)
    rep["primitivity_exponent"] = prim.exponent;
  else
    rep["primitivity_certificate"] = prim.certificate;

  CoupledGraph G = coupled_graph(D);
  bool sc = is_strongly_connected(G);
  rep["strongly_connected"] = sc;
  // Irreducible non-primitive matrices give strongly connected coupled
  // graphs; surface the disagreement between the two predicates.
  rep["predicates_disagree"] = (sc != prim.primitive);

  if (prim.primitive) {
    PerronData pd = perron_data(D.A);
    rep["perron"] = {{"lambda", pd.lambda.str()},
                     {"x", scalar_array_json(pd.x)},
                     {"exact", pd.exact()}};
  } else {
    rep["perron"] = nullptr;
  }

  json arrows = json::array();
  for (auto [e, f] : G.arrows)
    arrows.push_back(json::array({D.edges.label(e), D.edges.label(f)}));
  rep["coupled_graph"] = {{"vertices", G.size},
                          {"arrow_count", int(G.arrows.size())},
                          {"arrows", arrows},
                          {"adjacency", G.adjacency.entries}};
  return rep;
}

int cmd_analyze(const std::string& file, bool text) {
  Diagram D = load_diagram_file(file);
  json rep = analyze_report(D);
  if (text) {
    std::cout << "n = " << rep["n"] << ", |E| = " << rep["edge_count"] << "\n"
              << "primitive: " << rep["primitive"]
              << (rep["primitive"].get<bool>()
                      ? ", exponent " + rep["primitivity_exponent"].dump()
                      : "")
              << "\n"
              << "strongly connected coupled graph: " << rep["strongly_connected"] << "\n";
    if (!rep["perron"].is_null())
      std::cout << "lambda = " << rep["perron"]["lambda"].get<std::string>() << "\n";
  } else {
    std::cout << rep.dump(2) << "\n";
  }
  return kExitPass;
}

int cmd_coupled_graph(const std::string& file, bool dot) {
  Diagram D = load_diagram_file(file);
  if (dot) {
    std::cout << coupled_graph_dot(D);
    return kExitPass;
  }
  CoupledGraph G = coupled_graph(D);
  json rep;
  rep["vertices"] = G.size;
  json arrows = json::array();
  for (auto [e, f] : G.arrows)
    arrows.push_back(json::array({D.edges.label(e), D.edges.label(f)}));
  rep["arrows"] = arrows;
  rep["adjacency"] = G.adjacency.entries;
  std::cout << rep.dump(2) << "\n";
  return kExitPass;
}

int cmd_reduce(const std::string& file) {
  NonNegIntMatrix F = load_multiplicity_matrix_file(file);
  ZeroOneMatrix R = zero_one_reduction(F);
  json rep;
  rep["n"] = R.n;
  rep["rows"] = R.entries;
  json src = json::array();
  int id = 0;
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j)
      for (long long c = 0; c < F.entries[i][j]; ++c)
        src.push_back({{"id", "e" + std::to_string(++id)}, {"s", i + 1}, {"r", j + 1}});
  rep["source_edges"] = src;
  std::cout << rep.dump(2) << "\n";
  return kExitPass;
}

int cmd_find_admissible(const std::string& file_a, const std::string& file_b, bool first_only) {
  Diagram D = load_diagram_file(file_a);
  Diagram Dp = load_diagram_file(file_b);
  auto maps = find_admissible(D, Dp, first_only ? 1 : size_t(-1));
  json rep;
  rep["count"] = maps.size();
  json list = json::array();
  for (const AdmissibleMap& alpha : maps) {
    json m;
    for (EdgeId e = 0; e < D.edge_count(); ++e)
      m[D.edges.label(e)] = Dp.edges.label(alpha(e));
    auto check = is_admissible(D, Dp, alpha.map);
    auto check_inv = is_admissible(Dp, D, alpha.inverse().map);
    list.push_back({{"map", m},
                    {"admissible", check.admissible},
                    {"inverse_admissible", check_inv.admissible}});
  }
  rep["maps"] = list;
  std::cout << rep.dump(2) << "\n";
  return kExitPass;
}

int cmd_measure_eval(const std::string& diagram_file, const std::string& measure_file, int depth,
                     bool use_float) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  MeasureSpec spec = load_measure_file(D, measure_file);
  if (use_float) to_float(spec);
  json rep;
  rep["depth"] = depth;
  json levels = json::array();
  for (int k = 0; k <= depth; ++k) {
    json level;
    level["k"] = k;
    auto words = path_words(D, k);
    level["count"] = words.size();
    Scalar total;
    json entries = json::array();
    for (const CylinderWord& w : words) {
      Scalar m = cylinder_measure(D, spec, w);
      total += m;
      json entry;
      entry["word"] = word_json(D.edges, w);
      if (k == 0) entry["vertex"] = w.base + 1;
      entry["m"] = m.str();
      entries.push_back(entry);
    }
    level["total"] = total.str();
    level["q"] = scalar_array_json(q_vectors(D, spec, k));
    level["words"] = entries;
    levels.push_back(level);
  }
  rep["levels"] = levels;
  rep["consistency_defect"] = level_consistency(D, spec, depth - 1).str();
  std::cout << rep.dump(2) << "\n";
  return kExitPass;
}

int verify_exit(bool pass, json rep) {
  rep["pass"] = pass;
  std::cout << rep.dump(2) << "\n";
  return pass ? kExitPass : kExitVerificationFailure;
}

int cmd_verify_ck(const std::string& diagram_file, const std::string& measure_file, int depth,
                  bool use_float, double tol) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  MeasureSpec spec = load_measure_file(D, measure_file);
  if (use_float) to_float(spec);
  LevelContext ctx(D, spec, depth + 1);
  json rep;
  json checks = json::array();
  bool pass = true;
  for (int k = 1; k <= depth; ++k) {
    Scalar edge_res = ck_verify_edge(ctx, k);
    Scalar vertex_res = ck_verify_vertex(ctx, k);
    bool ok = edge_res.is_zero(tol) && vertex_res.is_zero(tol);
    pass = pass && ok;
    checks.push_back({{"k", k},
                      {"edge_residual", edge_res.str()},
                      {"vertex_residual", vertex_res.str()},
                      {"pass", ok}});
  }
  rep["checks"] = checks;
  return verify_exit(pass, std::move(rep));
}

int cmd_verify_equivalence(const std::string& diagram_file, const std::string& alpha_file,
                           const std::string& measure_file, const std::string& target_diagram,
                           const std::string& target_measure, int depth, bool use_float) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  Diagram Dp = target_diagram.empty() ? D : load_diagram_file(target_diagram);
  AdmissibleMap alpha = load_map_file(D, Dp, alpha_file);
  MeasureSpec m = load_measure_file(D, measure_file);
  MeasureSpec mp = target_measure.empty() ? load_measure_file(Dp, measure_file)
                                          : load_measure_file(Dp, target_measure);
  if (use_float) {
    to_float(m);
    to_float(mp);
  }
  LevelContext ctx(D, m, depth);
  LevelContext ctx_p(Dp, mp, depth);
  IntertwinerReport r = intertwiner_check(ctx, ctx_p, alpha, depth);
  json rep;
  rep["unitary"] = r.unitary;
  rep["intertwines"] = r.commutes;
  if (r.commute_witness) rep["intertwines_witness"] = D.edges.label(*r.commute_witness);
  rep["inclusion_compatible"] = r.inclusion_compatible;
  if (r.inclusion_witness)
    rep["inclusion_witness"] = {{"word", word_json(D.edges, r.inclusion_witness->first)},
                                {"edge", D.edges.label(r.inclusion_witness->second)}};
  rep["predicate"] = r.predicate_name;
  if (r.predicate_name == "invariant_compat")
    rep["predicate_verdict"] = r.predicate ? "equal" : "singular";
  else if (r.predicate_name == "stationary_compat")
    rep["predicate_verdict"] = r.predicate ? "pass" : "fail";
  else
    rep["predicate_verdict"] = r.predicate ? "equivalent" : "singular";
  rep["verdicts_agree"] = r.verdicts_agree;
  bool pass = r.unitary && r.commutes && r.inclusion_compatible && r.verdicts_agree;
  return verify_exit(pass, std::move(rep));
}

int cmd_verify_monic(const std::string& diagram_file, const std::string& measure_file,
                     const std::string& other_measure, int depth, bool use_float) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  MeasureSpec m = load_measure_file(D, measure_file);
  if (use_float) to_float(m);
  MonicSystem ms = monic_from_measure(D, m);
  MonicVerdict v = monic_operators_check(D, ms, depth);
  json rep;
  rep["projections_diagonal_01"] = v.projections_diagonal_01;
  rep["compositions_match"] = v.compositions_match;
  rep["span_dim"] = v.span_dim;
  rep["space_dim"] = v.space_dim;
  rep["monic"] = v.monic;
  bool pass = v.projections_diagonal_01 && v.compositions_match && v.monic;

  if (!other_measure.empty()) {
    MeasureSpec m2 = load_measure_file(D, other_measure);
    if (use_float) to_float(m2);
    MonicSystem ms2 = monic_from_measure(D, m2);
    MonicEquivalence eq = monic_equivalence(D, ms, ms2, depth);
    json e;
    switch (eq.verdict) {
      case MonicEquivalence::Verdict::Equivalent: e["verdict"] = "equivalent"; break;
      case MonicEquivalence::Verdict::NotEquivalent: e["verdict"] = "not-equivalent"; break;
      case MonicEquivalence::Verdict::Singular: e["verdict"] = "singular"; break;
    }
    if (!eq.failed_check.empty()) e["failed_check"] = eq.failed_check;
    if (eq.witness) {
      json w = json::array();
      for (Vertex v2 : *eq.witness) w.push_back(v2 + 1);
      e["witness"] = w;
    }
    e["h_stabilization_depth"] = eq.h_stabilization_depth;
    rep["equivalence"] = e;
    pass = pass && eq.verdict == MonicEquivalence::Verdict::Equivalent;
  }
  return verify_exit(pass, std::move(rep));
}

int cmd_verify_refinement(const std::string& diagram_file, int depth) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  SFSDescriptor edge = edge_sfs(D);
  SFSDescriptor vertex = vertex_sfs(D.A);
  json rep;

  auto sfs_report = [&](const SFSDescriptor& s, const ZeroOneMatrix& expected) {
    json r;
    SaturationReport sat = saturation_check(s, depth);
    r["saturated"] = sat.saturated;
    try {
      CKMatrix M = ck_condition(s);
      r["ck_matrix"] = M.entries;
      r["matches_expected"] = ck_matrix_equals(M, expected);
      r["witness"] = nullptr;
    } catch (const CKConditionError& err) {
      r["ck_matrix"] = nullptr;
      r["matches_expected"] = false;
      r["witness"] = s.space.str(err.witness);
    }
    return r;
  };

  rep["edge_system"] = sfs_report(edge, coupled_graph(D).adjacency);
  rep["vertex_system"] = sfs_report(vertex, D.A);

  RefinementReport ref = refinement_check(D, edge, vertex, depth);
  json refinement;
  refinement["ok"] = ref.ok;
  if (!ref.ok) {
    refinement["failed_identity"] = ref.failed_identity;
    refinement["witness"] = ref.witness ? json(*ref.witness) : json(nullptr);
  }
  rep["refinement"] = refinement;

  bool pass = rep["edge_system"]["saturated"].get<bool>() &&
              rep["edge_system"]["matches_expected"].get<bool>() &&
              rep["vertex_system"]["saturated"].get<bool>() &&
              rep["vertex_system"]["matches_expected"].get<bool>() && ref.ok;
  return verify_exit(pass, std::move(rep));
}

int cmd_verify_quasi(const std::string& diagram_file, const std::string& measure_file, int depth) {
  check_depth(depth);
  Diagram D = load_diagram_file(diagram_file);
  MeasureSpec m = load_measure_file(D, measure_file);
  QuasiVerdict v = quasi_stationarity_check(D, m, depth);
  json rep;
  rep["verdict"] = v.pass ? "pass" : "fail";
  rep["stabilization_index"] = v.stabilization_index;
  if (v.witness) {
    rep["witness"] = word_json(D.edges, *v.witness);
    rep["witness_ratios"] = scalar_array_json(v.witness_ratios);
    rep["witness_partial_products"] = scalar_array_json(v.witness_products);
  }
  return verify_exit(v.pass, std::move(rep));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary Bratteli diagram and Cuntz-Krieger relation toolkit"};
  app.require_subcommand(1);

  bool use_float = false;
  double tol = 1e-10;
  app.add_flag("--float", use_float, "floating-point arithmetic instead of exact rationals");
  app.add_option("--tol", tol, "comparison tolerance for floating-point checks");

  std::string file_a, file_b, file_m, file_m2, file_alpha;
  int depth = 6;
  bool dot = false, text = false, first_only = false, all_maps = false;

  auto* analyze = app.add_subcommand("analyze", "edge table, primitivity, Perron data, coupled graph");
  analyze->add_option("file", file_a, "diagram JSON")->required();
  analyze->add_flag("--text", text, "plain-text summary");

  auto* cg = app.add_subcommand("coupled-graph", "coupled graph of a diagram");
  cg->add_option("file", file_a, "diagram JSON")->required();
  cg->add_flag("--dot", dot, "emit DOT instead of JSON");

  auto* fa = app.add_subcommand("find-admissible", "enumerate admissible maps between two diagrams");
  fa->add_option("A", file_a, "source diagram JSON")->required();
  fa->add_option("Aprime", file_b, "target diagram JSON")->required();
  fa->add_flag("--all", all_maps, "list all maps (default)");
  fa->add_flag("--first", first_only, "stop after the first map");

  auto* me = app.add_subcommand("measure", "measure evaluations");
  auto* me_eval = me->add_subcommand("eval", "cylinder measures by level");
  me_eval->add_option("A", file_a, "diagram JSON")->required();
  me_eval->add_option("m", file_m, "measure JSON")->required();
  me_eval->add_option("--depth", depth, "cylinder depth");

  auto* red = app.add_subcommand("reduce", "0-1 reduction of a multiplicity matrix");
  red->add_option("F", file_a, "matrix JSON")->required();

  auto* verify = app.add_subcommand("verify", "exact verification suites");
  auto* v_ck = verify->add_subcommand("ck", "Cuntz-Krieger relations at finite level");
  v_ck->add_option("A", file_a, "diagram JSON")->required();
  v_ck->add_option("m", file_m, "measure JSON")->required();
  v_ck->add_option("--depth", depth, "verify levels 1..depth");

  auto* v_eq = verify->add_subcommand("equivalence", "intertwiner checks for an admissible map");
  v_eq->add_option("A", file_a, "diagram JSON")->required();
  v_eq->add_option("alpha", file_alpha, "map JSON")->required();
  v_eq->add_option("m", file_m, "measure JSON")->required();
  v_eq->add_option("--target-diagram", file_b, "target diagram (default: same)");
  v_eq->add_option("--target-measure", file_m2, "target measure (default: same)");
  v_eq->add_option("--depth", depth, "verify levels up to depth");

  auto* v_mon = verify->add_subcommand("monic", "monic system checks");
  v_mon->add_option("A", file_a, "diagram JSON")->required();
  v_mon->add_option("m", file_m, "measure JSON")->required();
  v_mon->add_option("--other", file_m2, "second measure for system equivalence");
  v_mon->add_option("--depth", depth, "cyclicity depth");

  auto* v_ref = verify->add_subcommand("refinement", "edge/vertex system refinement identities");
  v_ref->add_option("A", file_a, "diagram JSON")->required();
  v_ref->add_option("--depth", depth, "verification depth");

  auto* v_q = verify->add_subcommand("quasi", "quasi-stationarity of a Markov sequence");
  v_q->add_option("A", file_a, "diagram JSON")->required();
  v_q->add_option("m", file_m, "measure JSON")->required();
  v_q->add_option("--depth", depth, "inspection depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParseError;
  }

  try {
    if (*analyze) return cmd_analyze(file_a, text);
    if (*cg) return cmd_coupled_graph(file_a, dot);
    if (*fa) return cmd_find_admissible(file_a, file_b, first_only && !all_maps);
    if (*me_eval) return cmd_measure_eval(file_a, file_m, depth, use_float);
    if (*red) return cmd_reduce(file_a);
    if (*v_ck) return cmd_verify_ck(file_a, file_m, depth, use_float, tol);
    if (*v_eq) return cmd_verify_equivalence(file_a, file_alpha, file_m, file_b, file_m2, depth, use_float);
    if (*v_mon) return cmd_verify_monic(file_a, file_m, file_m2, depth, use_float);
    if (*v_ref) return cmd_verify_refinement(file_a, depth);
    if (*v_q) return cmd_verify_quasi(file_a, file_m, depth);
    std::cerr << R"({"error":{"code":2,"message":"no subcommand"}})" << "\n";
    return kExitParseError;
  } catch (const ParseError& e) {
    std::cerr << json{{"error", {{"code", kExitParseError}, {"message", e.what()}}}}.dump() << "\n";
    return kExitParseError;
  } catch (const Error& e) {
    std::cerr << json{{"error", {{"code", kExitInvalidInput}, {"message", e.what()}}}}.dump() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", kExitInvalidInput}, {"message", e.what()}}}}.dump() << "\n";
    return kExitInvalidInput;
  }
}

#include "ckb/io.hpp"

#include "ckb/representation.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ckb {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

std::vector<Scalar> parse_scalar_array(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw ParseError(what + " must be an array");
  std::vector<Scalar> out;
  for (const auto& v : arr) {
    if (v.is_string())
      out.push_back(parse_scalar(v.get<std::string>()));
    else if (v.is_number_integer())
      out.push_back(Scalar(Rat(v.get<long long>())));
    else if (v.is_number_float())
      out.push_back(Scalar::approx(v.get<double>()));
    else
      throw ParseError(what + " entries must be rational strings or numbers");
  }
  return out;
}

PMatrix parse_p_matrix(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw ParseError(what + " must be an array of rows");
  PMatrix P;
  for (const auto& row : arr) P.rows.push_back(parse_scalar_array(row, what + " row"));
  return P;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagram load_diagram(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw ParseError("diagram JSON needs fields 'n' and 'rows'");
  if (!j["n"].is_number_integer()) throw ParseError("'n' must be an integer");
  int n = j["n"].get<int>();
  if (!j["rows"].is_array() || int(j["rows"].size()) != n)
    throw ParseError("'rows' must be an n x n array");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array() || int(row.size()) != n) throw ParseError("'rows' must be an n x n array");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
      r.push_back(v.get<int>());
    }
    rows.push_back(std::move(r));
  }
  ZeroOneMatrix A = ZeroOneMatrix::from_rows(std::move(rows));
  if (!j.contains("edge_labels")) return Diagram::from_matrix(std::move(A));

  if (!j["edge_labels"].is_array()) throw ParseError("'edge_labels' must be an array");
  std::vector<Edge> labels;
  for (const auto& item : j["edge_labels"]) {
    if (!item.is_object() || !item.contains("id") || !item.contains("s") || !item.contains("r"))
      throw ParseError("edge label needs fields 'id', 's', 'r'");
    Edge e;
    if (item["id"].is_string()) {
      std::string id = item["id"].get<std::string>();
      if (id.size() < 2 || id[0] != 'e') throw ParseError("edge id must look like 'e1'");
      try {
        e.id = std::stoi(id.substr(1)) - 1;
      } catch (...) {
        throw ParseError("edge id must look like 'e1'");
      }
    } else if (item["id"].is_number_integer()) {
      e.id = item["id"].get<int>() - 1;
    } else {
      throw ParseError("edge id must be a string or integer");
    }
    if (!item["s"].is_number_integer() || !item["r"].is_number_integer())
      throw ParseError("edge endpoints must be integers");
    e.source = item["s"].get<int>() - 1;
    e.range = item["r"].get<int>() - 1;
    labels.push_back(e);
  }
  return Diagram::from_matrix(std::move(A), labels);
}

Diagram load_diagram_file(const std::string& path) { return load_diagram(read_file(path)); }

std::string diagram_json(const Diagram& D) {
  json j;
  j["n"] = D.A.n;
  j["rows"] = D.A.entries;
  json labels = json::array();
  for (const Edge& e : D.edges.edges()) {
    json item;
    item["id"] = D.edges.label(e.id);
    item["s"] = e.source + 1;
    item["r"] = e.range + 1;
    labels.push_back(item);
  }
  j["edge_labels"] = labels;
  return j.dump(2) + "\n";
}

NonNegIntMatrix load_multiplicity_matrix_file(const std::string& path) {
  json j = parse_json(read_file(path));
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    throw ParseError("matrix JSON needs fields 'n' and 'rows'");
  int n = j["n"].get<int>();
  if (!j["rows"].is_array() || int(j["rows"].size()) != n)
    throw ParseError("'rows' must be an n x n array");
  std::vector<std::vector<long long>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array() || int(row.size()) != n) throw ParseError("'rows' must be an n x n array");
    std::vector<long long> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
      r.push_back(v.get<long long>());
    }
    rows.push_back(std::move(r));
  }
  return NonNegIntMatrix::from_rows(std::move(rows));
}

MeasureSpec load_measure(const Diagram& D, const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("type")) throw ParseError("measure JSON needs a 'type' field");
  std::string type = j["type"].get<std::string>();

  if (type == "invariant") return resolve_spec(D, MeasureSpec::invariant());

  if (type != "stationary" && type != "sequence")
    throw ParseError("unknown measure type '" + type + "'");
  if (!j.contains("pi")) throw ParseError("Markov measure needs 'pi'");
  std::vector<Scalar> pi = parse_scalar_array(j["pi"], "pi");

  auto compress_validated = [&](const PMatrix& P, int index) {
    if (auto v = validate_p_matrix(D.edges, P, index))
      throw InvalidInputError("invalid transition matrix " + std::to_string(index) + ": " +
                              v->condition + ": " + v->detail);
    return compress_p_matrix(D.edges, P);
  };

  if (type == "stationary") {
    if (!j.contains("P")) throw ParseError("stationary measure needs 'P'");
    auto p = compress_validated(parse_p_matrix(j["P"], "P"), 1);
    return resolve_spec(D, MeasureSpec::stationary(std::move(pi), std::move(p)));
  }

  if (!j.contains("Ps") || !j["Ps"].is_array() || j["Ps"].empty())
    throw ParseError("sequence measure needs a nonempty 'Ps' array");
  std::vector<std::vector<Scalar>> ps;
  int index = 1;
  for (const auto& P : j["Ps"])
    ps.push_back(compress_validated(parse_p_matrix(P, "Ps entry"), index++));
  std::string tail = j.value("tail", std::string("repeat-last"));
  if (tail == "repeat-last")
    return resolve_spec(D, MeasureSpec::sequence(std::move(pi), std::move(ps), TailRule::RepeatLast));
  if (tail == "stationary" || tail == "explicit-stationary-tail") {
    if (!j.contains("tail_P")) throw ParseError("stationary tail needs 'tail_P'");
    auto tail_p = compress_validated(parse_p_matrix(j["tail_P"], "tail_P"), index);
    return resolve_spec(D, MeasureSpec::sequence(std::move(pi), std::move(ps),
                                                 TailRule::ExplicitStationaryTail,
                                                 std::move(tail_p)));
  }
  throw ParseError("unknown tail rule '" + tail + "'");
}

MeasureSpec load_measure_file(const Diagram& D, const std::string& path) {
  return load_measure(D, read_file(path));
}

namespace {

json p_row_json(const Diagram& D, const std::vector<Scalar>& p) {
  json rows = json::array();
  for (Vertex v = 0; v < D.A.n; ++v) {
    json row = json::array();
    for (EdgeId e = 0; e < D.edge_count(); ++e)
      row.push_back(D.edges.source(e) == v ? p[e].str() : "0");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string measure_json(const Diagram& D, const MeasureSpec& spec) {
  json j;
  switch (spec.kind) {
    case MeasureSpec::Kind::Invariant:
      j["type"] = "invariant";
      break;
    case MeasureSpec::Kind::StationaryMarkov: {
      j["type"] = "stationary";
      json pi = json::array();
      for (const Scalar& v : spec.pi) pi.push_back(v.str());
      j["pi"] = pi;
      j["P"] = p_row_json(D, spec.ps[0]);
      break;
    }
    case MeasureSpec::Kind::MarkovSequence: {
      j["type"] = "sequence";
      json pi = json::array();
      for (const Scalar& v : spec.pi) pi.push_back(v.str());
      j["pi"] = pi;
      json ps = json::array();
      for (const auto& p : spec.ps) ps.push_back(p_row_json(D, p));
      j["Ps"] = ps;
      j["tail"] = spec.tail == TailRule::RepeatLast ? "repeat-last" : "stationary";
      if (spec.tail == TailRule::ExplicitStationaryTail) j["tail_P"] = p_row_json(D, spec.tail_p);
      break;
    }
  }
  return j.dump(2) + "\n";
}

AdmissibleMap load_map(const Diagram& D, const Diagram& Dp, const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("map") || !j["map"].is_object())
    throw ParseError("map JSON needs an object field 'map'");
  if (D.edge_count() != Dp.edge_count())
    throw InvalidInputError("edge sets have different sizes: " + std::to_string(D.edge_count()) +
                            " vs " + std::to_string(Dp.edge_count()));
  AdmissibleMap alpha;
  alpha.map.assign(D.edge_count(), -1);
  for (const auto& [key, value] : j["map"].items()) {
    auto e = D.edges.id_of_label(key);
    if (!e) throw ParseError("unknown edge '" + key + "'");
    if (!value.is_string()) throw ParseError("map images must be edge labels");
    auto img = Dp.edges.id_of_label(value.get<std::string>());
    if (!img) throw ParseError("unknown edge '" + value.get<std::string>() + "'");
    alpha.map[*e] = *img;
  }
  for (EdgeId e = 0; e < D.edge_count(); ++e)
    if (alpha.map[e] < 0)
      throw InvalidInputError("map does not assign an image to " + D.edges.label(e));
  return alpha;
}

AdmissibleMap load_map_file(const Diagram& D, const Diagram& Dp, const std::string& path) {
  return load_map(D, Dp, read_file(path));
}

std::string map_json(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha) {
  json m;
  for (EdgeId e = 0; e < D.edge_count(); ++e) m[D.edges.label(e)] = Dp.edges.label(alpha(e));
  json j;
  j["map"] = m;
  return j.dump(2) + "\n";
}

std::string operator_json(const Diagram& D, const LevelSpace& rows, const LevelSpace& cols,
                          const LevelOperator& op) {
  json j;
  auto words = [&](const LevelSpace& H) {
    json arr = json::array();
    for (const CylinderWord& w : H.words) {
      json word = json::array();
      for (EdgeId e : w.edges) word.push_back(D.edges.label(e));
      arr.push_back(word);
    }
    return arr;
  };
  j["rows"] = words(rows);
  j["cols"] = words(cols);
  json entries = json::array();
  for (const auto& [rc, v] : op.entries())
    entries.push_back(json::array({rc.first, rc.second, v.str()}));
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

std::string coupled_graph_dot(const Diagram& D) {
  std::ostringstream os;
  os << "digraph coupled {\n";
  for (const Edge& e : D.edges.edges())
    os << "  " << D.edges.label(e.id) << " [label=\"a_{" << e.source + 1 << "," << e.range + 1
       << "}\"];\n";
  for (auto [e, f] : linked_pairs(D.edges))
    os << "  " << D.edges.label(e) << " -> " << D.edges.label(f) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ckb

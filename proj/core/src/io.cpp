#include "tcpkit/io.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace tcpkit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_document(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": malformed JSON: " + e.what());
  }
}

Vec vector_from_json(const ordered_json& doc, const char* what) {
  if (!doc.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
  Vec v;
  v.reserve(doc.size());
  for (const auto& e : doc) {
    if (!e.is_number()) throw std::invalid_argument(std::string(what) + ": expected numbers");
    v.push_back(e.get<double>());
  }
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
  if (!all_finite(v)) throw std::invalid_argument(std::string(what) + ": entries must be finite");
  return v;
}

Tensor tensor_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("tensor: expected an object");
  if (!doc.contains("order") || !doc["order"].is_number_integer()) {
    throw std::invalid_argument("tensor: missing integer field 'order'");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw std::invalid_argument("tensor: missing integer field 'dim'");
  }
  const int m = doc["order"].get<int>();
  const int n = doc["dim"].get<int>();
  Tensor t(m, n);  // validates shape
  if (doc.contains("entries")) {
    if (!doc["entries"].is_array()) throw std::invalid_argument("tensor: 'entries' must be an array");
    std::unordered_set<std::size_t> seen;
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (const auto& e : doc["entries"]) {
      if (!e.is_object() || !e.contains("idx") || !e.contains("val")) {
        throw std::invalid_argument("tensor: entries need 'idx' and 'val'");
      }
      const auto& ji = e["idx"];
      if (!ji.is_array() || ji.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("tensor: 'idx' must list one index per mode");
      }
      std::size_t off = 0;
      for (int j = 0; j < m; ++j) {
        if (!ji[static_cast<std::size_t>(j)].is_number_integer()) {
          throw std::invalid_argument("tensor: indices must be integers");
        }
        const int one_based = ji[static_cast<std::size_t>(j)].get<int>();
        if (one_based < 1 || one_based > n) {
          throw std::invalid_argument("tensor: index out of range 1..dim");
        }
        idx[static_cast<std::size_t>(j)] = one_based - 1;
        off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(one_based - 1);
      }
      if (!seen.insert(off).second) {
        throw std::invalid_argument("tensor: duplicate index tuple");
      }
      if (!e["val"].is_number()) throw std::invalid_argument("tensor: 'val' must be a number");
      const double val = e["val"].get<double>();
      if (!std::isfinite(val)) throw std::invalid_argument("tensor: entries must be finite");
      t.set_entry(std::span<const int>(idx), val);
    }
  }
  bool symmetric = false;
  if (doc.contains("symmetric")) {
    if (!doc["symmetric"].is_boolean()) {
      throw std::invalid_argument("tensor: 'symmetric' must be a boolean");
    }
    symmetric = doc["symmetric"].get<bool>();
  }
  if (symmetric) {
    if (!t.is_symmetric()) {
      throw std::invalid_argument("tensor: symmetric flag set but entries are not symmetric");
    }
    return Tensor(m, n, t.raw_entries(), true);
  }
  return t;
}

ordered_json tensor_to_json(const Tensor& a) {
  const int m = a.order();
  const int n = a.dim();
  ordered_json entries = ordered_json::array();
  const auto& raw = a.raw_entries();
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (std::size_t off = 0; off < raw.size(); ++off) {
    std::size_t rest = off;
    for (int j = m - 1; j >= 0; --j) {
      idx[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(n)) + 1;
      rest /= static_cast<std::size_t>(n);
    }
    if (raw[off] != 0.0) {
      entries.push_back({{"idx", idx}, {"val", raw[off]}});
    }
  }
  return ordered_json{
      {"order", m}, {"dim", n}, {"entries", std::move(entries)}, {"symmetric", a.symmetric_hint()}};
}

ordered_json budget_to_json(const SearchBudget& b) {
  return ordered_json{{"grid_resolution", b.grid_resolution},
                      {"multistarts", b.multistarts},
                      {"tolerance", b.tolerance},
                      {"seed", b.seed}};
}

ordered_json solution_to_json(const TCPSolution& s) {
  return ordered_json{{"x", s.x},
                      {"w", s.w},
                      {"residuals",
                       {{"x_neg", s.residuals.x_neg},
                        {"w_neg", s.residuals.w_neg},
                        {"compl", s.residuals.complementarity}}},
                      {"method", to_string(s.method)},
                      {"verified", s.verified}};
}

}  // namespace

Tensor parse_tensor(const std::string& text) {
  return tensor_from_json(parse_document(text, "tensor"));
}

std::string serialize_tensor(const Tensor& a) { return tensor_to_json(a).dump(); }

Vec parse_vector(const std::string& text) {
  return vector_from_json(parse_document(text, "vector"), "vector");
}

std::string serialize_vector(const Vec& v) { return ordered_json(v).dump(); }

TCPInstance parse_instance(const std::string& text) {
  const ordered_json doc = parse_document(text, "instance");
  if (!doc.is_object() || !doc.contains("tensor") || !doc.contains("q")) {
    throw std::invalid_argument("instance: expected {\"tensor\": ..., \"q\": [..]}");
  }
  return TCPInstance(tensor_from_json(doc["tensor"]), vector_from_json(doc["q"], "instance q"));
}

std::string serialize_instance(const TCPInstance& inst) {
  return ordered_json{{"tensor", tensor_to_json(inst.A)}, {"q", inst.q}}.dump();
}

std::vector<Vec> parse_solution_vectors(const std::string& text) {
  ordered_json doc = parse_document(text, "solutions");
  if (doc.is_object() && doc.contains("report")) doc = doc["report"];
  if (doc.is_object() && doc.contains("solutions")) doc = doc["solutions"];
  if (!doc.is_array()) throw std::invalid_argument("solutions: expected an array");
  std::vector<Vec> out;
  for (const auto& item : doc) {
    if (item.is_array()) {
      out.push_back(vector_from_json(item, "solutions"));
    } else if (item.is_object() && item.contains("x")) {
      out.push_back(vector_from_json(item["x"], "solutions"));
    } else {
      throw std::invalid_argument("solutions: entries must be vectors or objects with 'x'");
    }
  }
  return out;
}

std::string to_json(const SearchBudget& b) { return budget_to_json(b).dump(); }

std::string to_json(const ClassificationReport& r) {
  ordered_json j{{"class_name", to_string(r.class_name)},
                 {"verdict", to_string(r.verdict)},
                 {"witness", nullptr},
                 {"witness_meaning", to_string(r.witness_meaning)},
                 {"budget", budget_to_json(r.budget)}};
  if (r.witness) j["witness"] = *r.witness;
  return j.dump();
}

std::string to_json(const ParetoEigenpair& p) {
  return ordered_json{{"value", p.value},
                      {"vector", p.vector},
                      {"kind", to_string(p.kind)},
                      {"residuals",
                       {{"eigen_equation", p.residuals.eigen_equation},
                        {"slackness", p.residuals.slackness},
                        {"nonneg_violation", p.residuals.nonneg_violation}}},
                      {"symmetric_input", p.symmetric_input},
                      {"budget", budget_to_json(p.budget)}}
      .dump();
}

std::string to_json(const TCPSolution& s) { return solution_to_json(s).dump(); }

std::string to_json(const std::vector<TCPSolution>& list) {
  ordered_json j = ordered_json::array();
  for (const auto& s : list) j.push_back(solution_to_json(s));
  return j.dump();
}

std::string to_json(const MeritSolveResult& r) {
  ordered_json j{{"solution", nullptr}, {"best_merit", r.best_merit}, {"best_x", r.best_x}};
  if (r.solution) j["solution"] = solution_to_json(*r.solution);
  return j.dump();
}

std::string to_json(const BoundReport& r) {
  return ordered_json{{"kind", to_string(r.kind)},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"constant_used", r.constant_used},
                      {"satisfied", r.satisfied},
                      {"slack", r.slack}}
      .dump();
}

std::string to_json(const BetaResult& r) {
  return ordered_json{{"value", r.value}, {"argmin", r.argmin}}.dump();
}

std::string to_json(const GammaProbe& g) {
  ordered_json j{{"q", g.q},
                 {"s", g.s},
                 {"t", g.t},
                 {"members_found", g.members_found},
                 {"escape_direction", nullptr},
                 {"verdict", to_string(g.verdict)}};
  if (g.escape_direction) j["escape_direction"] = *g.escape_direction;
  return j.dump();
}

std::string to_json(const PseudomonotoneCheck& c) {
  return ordered_json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"violated", c.violated}}.dump();
}

}  // namespace tcpkit

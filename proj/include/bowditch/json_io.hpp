#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bowditch/oracle.hpp"
#include "bowditch/recognition.hpp"
#include "bowditch/representation.hpp"

namespace bowditch {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RepVariant =
    std::variant<Representation<PlaneBackend>, Representation<Space3Backend>,
                 Representation<CayleyBackend>>;

namespace io_detail {

inline std::string entry_string(const Json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw InputError(std::string("expected a decimal string for ") + what);
}

// Matrices arrive as row-major arrays of four decimal strings; a nested
// [[a,b],[c,d]] form is accepted and flattened.
inline std::vector<Json> flat_matrix(const Json& j, const char* name) {
  if (!j.is_array()) throw InputError(std::string(name) + ": expected an array");
  std::vector<Json> flat;
  for (const Json& e : j) {
    if (e.is_array() && e.size() == 2 && (e[0].is_array() || j.size() == 2)) {
      for (const Json& inner : e) flat.push_back(inner);
    } else {
      flat.push_back(e);
    }
  }
  if (flat.size() != 4) throw InputError(std::string(name) + ": expected 4 matrix entries");
  return flat;
}

inline PlaneIsometry parse_plane_matrix(const Json& j, const char* name) {
  auto flat = flat_matrix(j, name);
  PlaneIsometry m{parse_real(entry_string(flat[0], name)), parse_real(entry_string(flat[1], name)),
                  parse_real(entry_string(flat[2], name)), parse_real(entry_string(flat[3], name))};
  Real det = m.a * m.d - m.b * m.c;
  if (abs(det - 1) > Real("1e-9"))
    throw InputError(std::string(name) + ": matrix is not unimodular within tolerance");
  return m;
}

inline Cplx parse_complex_entry(const Json& j, const char* name) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError(std::string(name) + ": complex entry needs [re, im]");
    return Cplx(parse_real(entry_string(j[0], name)), parse_real(entry_string(j[1], name)));
  }
  return Cplx(parse_real(entry_string(j, name)), Real(0));
}

inline Space3Isometry parse_space3_matrix(const Json& j, const char* name) {
  auto flat = flat_matrix(j, name);
  Space3Isometry m{parse_complex_entry(flat[0], name), parse_complex_entry(flat[1], name),
                   parse_complex_entry(flat[2], name), parse_complex_entry(flat[3], name)};
  Cplx det = m.a * m.d - m.b * m.c;
  if (abs(det - 1) > Real("1e-9"))
    throw InputError(std::string(name) + ": matrix is not unimodular within tolerance");
  return m;
}

inline Word parse_word(const Json& j, const char* name) {
  if (!j.is_string()) throw InputError(std::string(name) + ": expected a word string");
  try {
    return Word(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(name) + ": " + e.what());
  }
}

}  // namespace io_detail

// Input schema: {"backend": "plane"|"space3"|"cayley_tree", "A": ..., "B": ...}
inline RepVariant parse_representation(const Json& j, unsigned precision_bits = 256) {
  if (!j.is_object() || !j.contains("backend"))
    throw InputError("input must be an object with a \"backend\" field");
  if (!j.contains("A") || !j.contains("B")) throw InputError("input needs \"A\" and \"B\"");
  std::string backend = j["backend"].get<std::string>();
  if (backend == "plane") {
    SpaceParams p = plane_params();
    p.precision_bits = precision_bits;
    PlaneBackend be(p);
    return Representation<PlaneBackend>(be, be.normalized(io_detail::parse_plane_matrix(j["A"], "A")),
                                        be.normalized(io_detail::parse_plane_matrix(j["B"], "B")));
  }
  if (backend == "space3") {
    SpaceParams p = space3_params();
    p.precision_bits = precision_bits;
    Space3Backend be(p);
    return Representation<Space3Backend>(
        be, be.normalized(io_detail::parse_space3_matrix(j["A"], "A")),
        be.normalized(io_detail::parse_space3_matrix(j["B"], "B")));
  }
  if (backend == "cayley_tree") {
    SpaceParams p = cayley_params();
    p.precision_bits = precision_bits;
    CayleyBackend be(p);
    Word wa = io_detail::parse_word(j["A"], "A");
    Word wb = io_detail::parse_word(j["B"], "B");
    CayleyIsometry ia{wa, wb, wa};
    CayleyIsometry ib{wa, wb, wb};
    return Representation<CayleyBackend>(be, ia, ib);
  }
  throw InputError("unknown backend: " + backend);
}

inline Json slope_json(const Slope& s) { return Json(to_string(s)); }

inline Json witness_json(const Witness& w) {
  Json j;
  switch (w.kind) {
    case WitnessKind::non_hyperbolic_primitive:
      j["kind"] = "non-hyperbolic-primitive";
      j["region"] = slope_json(w.region);
      j["word"] = primitive_word(w.region).letters();
      break;
    case WitnessKind::reducible:
      j["kind"] = "reducible";
      j["shared_boundary_point"] = w.boundary_point;
      j["pair"] = w.pair_name;
      break;
    case WitnessKind::endpoint_coincidence:
      j["kind"] = "endpoint-coincidence";
      j["region"] = slope_json(w.region);
      j["partner"] = slope_json(w.partner);
      j["side"] = w.side;
      j["coincident_point"] = w.boundary_point;
      break;
  }
  return j;
}

inline Json verdict_json(const Verdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  Json constants;
  constants["delta"] = dec30(v.delta);
  constants["C"] = dec30(v.C);
  constants["K"] = dec30(v.K);
  constants["mode"] = v.certified_mode ? "certified" : "heuristic";
  j["constants"] = constants;
  if (v.witness) j["witness"] = witness_json(*v.witness);
  if (v.sink) {
    Json s;
    s["kind"] = "sink";
    Json regions = Json::array();
    for (int i = 0; i < 3; ++i) {
      Json r;
      r["region"] = slope_json(v.sink->v.r[i]);
      r["length"] = dec30(v.sink->lengths[i]);
      regions.push_back(r);
    }
    s["vertex"] = regions;
    j["certificate"] = s;
  }
  if (v.level_set) {
    Json c;
    c["kind"] = "finite-level-set";
    Json regions = Json::array();
    for (const LevelSetEntry& e : v.level_set->entries) {
      Json r;
      r["region"] = slope_json(e.region);
      r["length"] = dec30(e.length);
      r["partner"] = slope_json(e.partner);
      r["N_plus"] = dec30(e.N_plus);
      r["k_plus"] = dec30(e.k_plus);
      r["N_minus"] = dec30(e.N_minus);
      r["k_minus"] = dec30(e.k_minus);
      r["n_plus"] = e.n_plus;
      r["n_minus"] = e.n_minus;
      regions.push_back(r);
    }
    c["regions"] = regions;
    c["count"] = v.level_set->entries.size();
    j["certificate"] = c;
  }
  if (v.budget_report) {
    Json b;
    b["stage"] = v.budget_report->stage;
    Json frontier = Json::array();
    for (const Slope& s : v.budget_report->frontier) frontier.push_back(to_string(s));
    b["frontier"] = frontier;
    j["budget_report"] = b;
  }
  j["budget_consumed"] = v.budget_consumed;
  j["fork_violations"] = v.fork_violations;
  j["product_violations"] = v.product_violations;
  return j;
}

inline Json scan_report_json(const ScanReport& r) {
  Json j;
  j["max_word_length"] = r.max_word_length;
  j["K"] = dec30(r.K);
  Json sub = Json::array();
  for (const ScanEntry& e : r.sublevel) {
    Json row;
    row["slope"] = to_string(e.slope);
    row["word"] = e.word.letters();
    row["length"] = dec30(e.length);
    sub.push_back(row);
  }
  j["sublevel"] = sub;
  Json nh = Json::array();
  for (const Slope& s : r.non_hyperbolic) nh.push_back(to_string(s));
  j["non_hyperbolic"] = nh;
  j["fitted_C"] = dec30(r.fitted_C);
  return j;
}

inline std::string scan_report_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "slope,word,length\n";
  for (const ScanEntry& e : r.sublevel)
    os << to_string(e.slope) << "," << e.word.letters() << "," << dec30(e.length) << "\n";
  return os.str();
}

inline Json subtree_json(const Subtree& t) {
  Json edges = Json::array();
  for (const Edge& e : t.edges) {
    Json pair = Json::array();
    pair.push_back(to_string(e.x));
    pair.push_back(to_string(e.y));
    edges.push_back(pair);
  }
  Json j;
  j["edges"] = edges;
  j["count"] = t.edges.size();
  return j;
}

// --- certificate re-verification --------------------------------------------

struct VerificationResult {
  bool ok = true;
  std::vector<std::string> messages;

  void fail(std::string m) {
    ok = false;
    messages.push_back(std::move(m));
  }
};

// Re-checks a Bowditch certificate without re-running the search: recomputes
// the listed lengths and re-tests the fork, connectedness and growth
// inequalities the verdict relies on.
template <class B>
VerificationResult verify_certificate(Representation<B>& rep, const Json& report) {
  VerificationResult res;
  if (!report.contains("verdict")) {
    res.fail("report has no verdict");
    return res;
  }
  std::string kind = report["verdict"].get<std::string>();
  if (kind != "certified-bowditch" && kind != "heuristic-bowditch") {
    res.fail("only Bowditch verdicts carry certificates");
    return res;
  }
  Real C = parse_real(report["constants"]["C"].get<std::string>());
  Constants constants = Constants::make(rep.params(), C,
                                        parse_real(report["constants"]["K"].get<std::string>()));
  RecognitionEngine<B> engine(rep, constants);
  const Json& cert = report["certificate"];
  const Real tol = Real("1e-20");
  if (cert["kind"] == "sink") {
    Vertex v(parse_slope(cert["vertex"][0]["region"].get<std::string>()),
             parse_slope(cert["vertex"][1]["region"].get<std::string>()),
             parse_slope(cert["vertex"][2]["region"].get<std::string>()));
    for (const Json& row : cert["vertex"]) {
      Slope s = parse_slope(row["region"].get<std::string>());
      Real claimed = parse_real(row["length"].get<std::string>());
      Real actual = rep.region_length(s);
      if (abs(actual - claimed) > tol * std::max(Real(1), abs(claimed)))
        res.fail("sink length mismatch at " + to_string(s));
      if (actual <= C) res.fail("sink region " + to_string(s) + " not above C");
    }
    for (const Edge& e : edges_at(v))
      if (!(engine.orientation(e).head == v)) res.fail("edge not oriented into the sink");
    // Growth away from the sink: regions within tree distance 6 of each
    // outgoing direction satisfy l >= (m - C) F_e + C.
    Real m = rep.region_length(v.r[0]);
    m = std::min(m, rep.region_length(v.r[1]));
    m = std::min(m, rep.region_length(v.r[2]));
    for (const Edge& e : edges_at(v)) {
      struct Probe {
        Vertex at;
        Edge entered;
      };
      std::vector<Probe> layer{{other_vertex(e, v), e}};
      for (int step = 0; step < 6 && !layer.empty(); ++step) {
        std::vector<Probe> next;
        for (const Probe& pr : layer) {
          Slope fresh = pr.at.r[0];
          for (const Slope& s : pr.at.r)
            if (!pr.entered.contains(s)) fresh = s;
          Real lf = rep.region_length(fresh);
          Real f = Real(word_length_F(e, fresh));
          if (lf < (m - C) * f + C - Real("1e-15") * std::max(Real(1), lf))
            res.fail("growth bound fails at " + to_string(fresh));
          for (const Edge& out : edges_at(pr.at))
            if (!(out == pr.entered)) next.push_back({other_vertex(out, pr.at), out});
        }
        layer = std::move(next);
      }
    }
    return res;
  }
  if (cert["kind"] == "finite-level-set") {
    std::set<Slope> listed;
    for (const Json& row : cert["regions"])
      listed.insert(parse_slope(row["region"].get<std::string>()));
    for (const Json& row : cert["regions"]) {
      Slope s = parse_slope(row["region"].get<std::string>());
      Real claimed = parse_real(row["length"].get<std::string>());
      Real actual = rep.region_length(s);
      if (abs(actual - claimed) > tol * std::max(Real(1), abs(claimed)))
        res.fail("length mismatch at " + to_string(s));
      if (actual > C) res.fail("listed region above C: " + to_string(s));
      if (!rep.region_hyperbolic(s)) res.fail("non-hyperbolic listed region " + to_string(s));
      // Recompute the arc from scratch; every short neighbor inside it must
      // be listed, and the stored bounds must match the recomputation.
      ArcJ arc = engine.arc_J(C, s);
      if (arc.whole_boundary || arc.plus_infinite || arc.minus_infinite) {
        res.fail("arc at " + to_string(s) + " is infinite");
        continue;
      }
      if (arc.n_plus != row["n_plus"].get<long long>() ||
          arc.n_minus != row["n_minus"].get<long long>())
        res.fail("stored arc bounds disagree with recomputation at " + to_string(s));
      for (const Edge& e : arc.edges) {
        Slope yn = e.other(s);
        if (rep.region_length(yn) <= C && !listed.count(yn))
          res.fail("missing sublevel region " + to_string(yn) + " adjacent to " + to_string(s));
      }
    }
    // Connectedness of the listed set in the Farey adjacency graph.
    if (!listed.empty()) {
      std::set<Slope> seen;
      std::vector<Slope> stack{*listed.begin()};
      seen.insert(*listed.begin());
      while (!stack.empty()) {
        Slope cur = stack.back();
        stack.pop_back();
        for (const Slope& other : listed)
          if (!seen.count(other) && farey_neighbors(cur, other)) {
            seen.insert(other);
            stack.push_back(other);
          }
      }
      if (seen.size() != listed.size()) res.fail("level set is not connected");
    }
    return res;
  }
  res.fail("unknown certificate kind");
  return res;
}

}  // namespace bowditch

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "bowditch/json_io.hpp"

namespace bowditch {

struct RunConfig {
  std::string input_path;
  std::string command = "certify";
  std::optional<Real> c_override;
  std::optional<Real> k_override;
  long long budget = 1000000;
  unsigned precision_bits = 256;
  std::string output_path;  // empty writes to stdout
  std::string format = "json";
};

struct RunOutput {
  std::string text;   // report body (json or csv)
  Json report;        // json form when applicable
  bool is_json = true;
};

namespace run_detail {

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

template <class B>
Json certify_report(Representation<B>& rep, const Json& input, const RunConfig& cfg) {
  Constants constants = Constants::make(rep.params(), cfg.c_override, cfg.k_override);
  RecognitionEngine<B> engine(rep, constants);
  Budget budget{cfg.budget};
  Verdict v = engine.certify(budget);
  Json out;
  out["command"] = "certify";
  out["input"] = input;
  out["budget_limit"] = cfg.budget;
  Json vj = verdict_json(v);
  for (auto& [key, value] : vj.items()) out[key] = value;
  return out;
}

template <class B>
Json tree_report(Representation<B>& rep, const Json& input, const RunConfig& cfg,
                 bool levelset_only) {
  Constants constants = Constants::make(rep.params(), cfg.c_override, cfg.k_override);
  RecognitionEngine<B> engine(rep, constants);
  Budget budget{cfg.budget};
  Real K = cfg.k_override ? *cfg.k_override : constants.K_threshold;
  TreeResult t = engine.tree_T(K, budget);
  Json out;
  out["command"] = levelset_only ? "dump-levelset" : "dump-tree";
  out["input"] = input;
  out["K"] = dec30(K);
  out["kind"] = t.kind == TreeResult::finite        ? "finite"
                : t.kind == TreeResult::infinite_evidence ? "infinite-evidence"
                                                          : "budget-exceeded";
  if (!t.evidence.empty()) out["evidence"] = t.evidence;
  Json ls = Json::array();
  for (const auto& [slope, len] : t.level_set) {
    Json row;
    row["slope"] = to_string(slope);
    row["word"] = primitive_word(slope).letters();
    row["length"] = dec30(len);
    ls.push_back(row);
  }
  out["level_set"] = ls;
  if (!levelset_only) out["tree"] = subtree_json(t.tree);
  out["budget_consumed"] = budget.used;
  return out;
}

template <class B>
Json oracle_report(Representation<B>& rep, const Json& input, const RunConfig& cfg) {
  long long L = 12;
  if (input.contains("oracle") && input["oracle"].contains("L"))
    L = input["oracle"]["L"].get<long long>();
  Constants constants = Constants::make(rep.params(), cfg.c_override, cfg.k_override);
  Real K = cfg.k_override ? *cfg.k_override : constants.K_threshold;
  ScanReport r = bq_scan(rep, L, K);
  Json out;
  out["command"] = "oracle";
  out["input"] = input;
  Json rj = scan_report_json(r);
  for (auto& [key, value] : rj.items()) out[key] = value;
  return out;
}

inline Json identities_report(const Json& input, const RunConfig& cfg) {
  Space3Backend be(space3_params());
  Space3Isometry a, b;
  std::string backend = input.value("backend", "space3");
  if (backend == "space3") {
    a = be.normalized(io_detail::parse_space3_matrix(input.at("A"), "A"));
    b = be.normalized(io_detail::parse_space3_matrix(input.at("B"), "B"));
  } else if (backend == "plane") {
    PlaneIsometry pa = io_detail::parse_plane_matrix(input.at("A"), "A");
    PlaneIsometry pb = io_detail::parse_plane_matrix(input.at("B"), "B");
    a = {Cplx(pa.a), Cplx(pa.b), Cplx(pa.c), Cplx(pa.d)};
    b = {Cplx(pb.a), Cplx(pb.b), Cplx(pb.c), Cplx(pb.d)};
  } else {
    throw InputError("check-identities needs a Mobius backend");
  }
  TraceResiduals r = trace_identity_check(be, a, b);
  Cplx comm = be.trace(
      be.compose(be.compose(a, b), be.compose(be.invert(a), be.invert(b))));
  Json out;
  out["command"] = "check-identities";
  out["input"] = input;
  out["edge_residual"] = dec30(r.edge);
  out["vertex_residual"] = dec30(r.vertex);
  out["trace_commutator"] = Json::array({dec30(comm.real()), dec30(comm.imag())});
  (void)cfg;
  return out;
}

// Grid scan over real trace parameters (trA, trB) with tr(AB) fixed:
// A = [[x, -1], [1, 0]], B = [[0, z], [-1/z, y]] realizes the traces.
inline Json scan_report(const Json& input, const RunConfig& cfg) {
  if (!input.contains("grid")) throw InputError("scan needs a \"grid\" object");
  const Json& grid = input["grid"];
  auto axis = [&](const char* name, double& lo, double& hi, long long& count) {
    const Json& ax = grid.at(name);
    lo = ax.at("min").get<double>();
    hi = ax.at("max").get<double>();
    count = ax.at("count").get<long long>();
    if (count < 1) throw InputError("grid axis count must be >= 1");
  };
  double a_lo, a_hi, b_lo, b_hi;
  long long a_n, b_n;
  axis("trA", a_lo, a_hi, a_n);
  axis("trB", b_lo, b_hi, b_n);
  Real z = parse_real(io_detail::entry_string(grid.at("trAB"), "trAB"));
  if (abs(z) <= 2) throw InputError("scan: |trAB| must exceed 2 for the plane parametrization");
  Real zeta = (z + sqrt(z * z - 4)) / 2;
  Json rows = Json::array();
  for (long long i = 0; i < a_n; ++i)
    for (long long j = 0; j < b_n; ++j) {
      Real x = Real(a_lo) + (a_n == 1 ? Real(0) : Real(a_hi - a_lo) * i / (a_n - 1));
      Real y = Real(b_lo) + (b_n == 1 ? Real(0) : Real(b_hi - b_lo) * j / (b_n - 1));
      SpaceParams p = plane_params();
      p.precision_bits = cfg.precision_bits;
      PlaneBackend be(p);
      PlaneIsometry ma{x, -1, 1, 0};
      PlaneIsometry mb{0, zeta, -1 / zeta, y};
      Representation<PlaneBackend> rep(be, ma, mb);
      Constants constants = Constants::make(p, cfg.c_override, cfg.k_override);
      RecognitionEngine<PlaneBackend> engine(rep, constants);
      Budget budget{cfg.budget};
      Verdict v = engine.certify(budget);
      Json row;
      row["trA"] = dec30(x);
      row["trB"] = dec30(y);
      row["verdict"] = verdict_name(v.kind);
      rows.push_back(row);
    }
  Json out;
  out["command"] = "scan";
  out["input"] = input;
  out["trAB"] = dec30(z);
  out["points"] = rows;
  return out;
}

inline std::string csv_of(const Json& report) {
  std::ostringstream os;
  std::string cmd = report.value("command", "");
  if (cmd == "scan") {
    os << "trA,trB,verdict\n";
    for (const Json& row : report["points"])
      os << row["trA"].get<std::string>() << "," << row["trB"].get<std::string>() << ","
         << row["verdict"].get<std::string>() << "\n";
  } else if (cmd == "oracle") {
    os << "slope,word,length\n";
    for (const Json& row : report["sublevel"])
      os << row["slope"].get<std::string>() << "," << row["word"].get<std::string>() << ","
         << row["length"].get<std::string>() << "\n";
  } else if (cmd == "dump-levelset" || cmd == "dump-tree") {
    os << "slope,word,length\n";
    for (const Json& row : report["level_set"])
      os << row["slope"].get<std::string>() << "," << row["word"].get<std::string>() << ","
         << row["length"].get<std::string>() << "\n";
  } else if (cmd == "certify" && report.contains("certificate")) {
    // Level-set (or sink vertex) rows of the certificate.
    os << "slope,word,length\n";
    const Json& cert = report["certificate"];
    const Json& rows = cert["kind"] == "sink" ? cert["vertex"] : cert["regions"];
    for (const Json& row : rows) {
      Slope s = parse_slope(row["region"].get<std::string>());
      os << row["region"].get<std::string>() << "," << primitive_word(s).letters() << ","
         << row["length"].get<std::string>() << "\n";
    }
  } else {
    return report.dump(2) + "\n";
  }
  return os.str();
}

}  // namespace run_detail

// Executes one command; throws InputError for anything exit-code-2-worthy.
inline RunOutput run_to_output(const RunConfig& cfg) {
  Json input = run_detail::load_json_file(cfg.input_path);
  Json report;
  if (cfg.command == "certify" || cfg.command == "oracle" || cfg.command == "dump-tree" ||
      cfg.command == "dump-levelset") {
    RepVariant rv = parse_representation(input, cfg.precision_bits);
    report = std::visit(
        [&](auto& rep) {
          if (cfg.command == "certify") return run_detail::certify_report(rep, input, cfg);
          if (cfg.command == "oracle") return run_detail::oracle_report(rep, input, cfg);
          return run_detail::tree_report(rep, input, cfg, cfg.command == "dump-levelset");
        },
        rv);
  } else if (cfg.command == "check-identities") {
    report = run_detail::identities_report(input, cfg);
  } else if (cfg.command == "scan") {
    report = run_detail::scan_report(input, cfg);
  } else if (cfg.command == "verify-certificate") {
    if (!input.contains("input")) throw InputError("verify-certificate wants a certify report with an embedded input");
    RepVariant rv = parse_representation(input["input"], cfg.precision_bits);
    report = std::visit(
        [&](auto& rep) {
          VerificationResult res = verify_certificate(rep, input);
          Json out;
          out["command"] = "verify-certificate";
          out["ok"] = res.ok;
          Json msgs = Json::array();
          for (const std::string& mes : res.messages) msgs.push_back(mes);
          out["messages"] = msgs;
          return out;
        },
        rv);
  } else {
    throw InputError("unknown command: " + cfg.command);
  }

  RunOutput out;
  out.report = report;
  if (cfg.format == "csv") {
    out.text = run_detail::csv_of(report);
    out.is_json = false;
  } else {
    out.text = report.dump(2) + "\n";
  }
  return out;
}

// CLI-facing wrapper: returns 0 when a verdict/report was produced and 2 on
// input errors, writing the report to the configured destination.
inline int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err_stream) {
  try {
    RunOutput out = run_to_output(cfg);
    if (cfg.output_path.empty()) {
      out_stream << out.text;
    } else {
      std::ofstream f(cfg.output_path);
      if (!f) {
        err_stream << "cannot open output file: " << cfg.output_path << "\n";
        return 2;
      }
      f << out.text;
    }
    return 0;
  } catch (const InputError& e) {
    err_stream << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Malformed reports and ill-posed values surface here (json access,
    // slope/number parsing, precondition failures driven by the input).
    err_stream << "input error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bowditch

#include "freegamma/report.hpp"

#include <cmath>
#include <sstream>

namespace fg {

namespace {

// JSON has no literal for non-finite numbers.
Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return shortest(x);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) fail(ErrorKind::InternalInconsistency, "table row width does not match the header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  return os.str();
}

Json Table::to_json() const {
  Json out;
  Json m = Json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  out["meta"] = m;
  out["columns"] = columns;
  out["rows"] = rows;
  return out;
}

Json to_json(const GFGParams& p) { return Json{{"t", p.t}, {"theta", p.theta}, {"lambda", p.lambda}}; }

Json to_json(const Complex& z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const IdentityReport& r) {
  Json out;
  out["identity"] = identity_name(r.id);
  out["params"] = r.params.describe(r.id);
  out["grid_points"] = r.grid.points.size();
  out["max_abs_deviation"] = number(r.max_abs_deviation);
  out["tolerance"] = r.tolerance;
  out["pass"] = r.pass;
  out["warnings"] = r.warnings;
  return out;
}

Json to_json(const RmtVerdict& v) {
  Json out;
  out["identity"] = identity_name(v.id);
  out["dim"] = v.N;
  out["ks_threshold"] = v.ks_threshold;
  Json seeds = Json::array();
  for (std::size_t i = 0; i < v.seeds.size(); ++i) {
    const auto& c = v.comparisons[i];
    Json s{{"seed", v.seeds[i]}, {"ks", number(c.ks)}, {"w1", number(c.w1)}};
    Json gaps = Json::array();
    for (double g : c.moment_gaps) gaps.push_back(number(g));
    s["moment_gaps"] = gaps;
    if (i < v.atom_fractions.size()) s["atom_fraction"] = number(v.atom_fractions[i]);
    seeds.push_back(s);
  }
  out["seeds"] = seeds;
  if (!v.atom_fractions.empty()) {
    out["atom_target"] = v.atom_target;
    out["atom_tolerance"] = v.atom_tolerance;
  }
  out["pass"] = v.pass;
  return out;
}

Json to_json(const ClassicalReport& r) {
  return Json{{"identity", classical_identity_name(r.id)},
              {"params", to_json(r.params)},
              {"samples", r.n},
              {"ks", number(r.ks)},
              {"threshold", r.threshold},
              {"pass", r.pass}};
}

Json to_json(const EntropyValue& e) {
  return Json{{"logarithmic_energy", number(e.logarithmic_energy)},
              {"potential_term", number(e.potential_term)},
              {"total", number(e.total)},
              {"error", number(e.error)}};
}

Json to_json(const EndpointEquations& e) {
  return Json{{"eq0", number(e.eq0)}, {"eq2", number(e.eq2)}, {"sum_gap", e.sum_gap}, {"prod_gap", e.prod_gap}};
}

Json to_json(const MaximalityReport& r) {
  Json out;
  out["params"] = to_json(r.params);
  out["candidate"] = to_json(r.candidate);
  out["margin"] = r.margin;
  Json probes = Json::array();
  for (const auto& p : r.probes)
    probes.push_back(Json{{"family", perturbation_name(p.family)},
                          {"magnitude", p.magnitude},
                          {"entropy", number(p.entropy.total)},
                          {"gap", number(p.gap)},
                          {"below", p.below}});
  out["probes"] = probes;
  out["pass"] = r.pass;
  return out;
}

Json to_json(const ConvergenceStudy& s) {
  Json out;
  out["params"] = to_json(s.params);
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back(Json{{"d", r.d}, {"w1", number(r.w1)}, {"ks", number(r.ks)}, {"residual_max", number(r.residual_max)}});
  out["rows"] = rows;
  out["w1_decreasing"] = s.w1_decreasing;
  out["last_smallest"] = s.last_smallest;
  return out;
}

Json to_json(const Error& e) {
  Json out{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (e.has_diagnostic()) out["diagnostic"] = number(e.diagnostic());
  return out;
}

Json envelope(const std::string& command, Json payload) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["command"] = command;
  out["version"] = kVersion;
  for (auto& [k, v] : payload.items()) out[k] = v;
  return out;
}

}  // namespace fg

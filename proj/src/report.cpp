#include "bflab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bflab::report {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "report-only";
    case Status::skipped: return "skipped";
  }
  return "?";
}

const std::vector<std::pair<std::string, std::string>>& anchor_registry() {
  static const std::vector<std::pair<std::string, std::string>> reg = {
      {"haar-parseval", "Haar expansion on the dyadic lattice, Parseval"},
      {"martingale-transform", "martingale transform T_sigma, sharp constant p*-1"},
      {"a2-dyadic", "dyadic A2 characteristic Q_w"},
      {"weighted-haar", "weighted Haar decomposition h_I = alpha h_I^w + beta chi_I/sqrt|I|"},
      {"buckley", "Buckley sum for A_infinity weights"},
      {"a-infinity", "A_infinity constant <w> exp(-<log w>)"},
      {"carleson-intensity", "Carleson intensity of the mu_I sequence built from Delta_I w"},
      {"carleson-embedding", "Carleson embedding inequalities with constants 2 and C"},
      {"weighted-mt", "weighted martingale transform bound A Q_w"},
      {"zigzag", "zigzag concavity of Phi and Phi_0"},
      {"majorant", "majorization gamma_p Phi >= |y|^p - (p*-1)^p |x|^p"},
      {"hessian-form", "Hessian quadratic form of Phi(|x|, |y|)"},
      {"majorant-transition", "no homogeneous zigzag concave majorant below p*-1"},
      {"h-section", "section inequality s^2 H'' + (p-1)(-2sH' + pH) <= 0"},
      {"tau", "tau(p) = (average of |cos|^p)^(1/p)"},
      {"interpolation-chain", "interpolated constant C(q) <= 1.7 (q-1)"},
      {"bq-hessian", "Hessian estimate for b_Q = x^alpha y^alpha"},
      {"jn-bellman", "John-Nirenberg Bellman function v_delta"},
      {"ab-isometry", "Ahlfors-Beurling transform is an L2 isometry"},
      {"ab-derivative", "T maps dbar-derivatives to d-derivatives"},
      {"ab-decomposition", "T = R1^2 - R2^2 - 2i R1 R2 on the grid"},
      {"heat-extension", "heat extension with kernel (pi t)^-1 exp(-|x|^2/t)"},
      {"riesz-heat-identity", "(R1^2 phi, psi) as a space-time integral of heat extensions"},
      {"ap-class", "classical A_p characteristic over discs"},
      {"ap-heat", "heat A_p characteristic and its two-sided comparison"},
      {"norm-ascent", "lower bound ||R1^2 - R2^2||_p >= p-1"},
      {"laminate-ratio-limit", "laminate ratio tends to ((K+1)/(K-1))^p"},
      {"laminate-measures", "laminates nu, mu, sigma: mass, baricenter, Jensen inequality"},
      {"riemann-gap", "left and right Riemann sums of w dw differ by b-a"},
      {"ito-isometry", "Ito isometry for adapted step processes"},
      {"heat-martingale", "heat martingale u(T-t, W_t)"},
      {"ab-conformality", "conformality and subordination of the AB martingale"},
      {"ab-conditioning", "AB f as a conditional expectation of the transformed martingale"},
      {"subordination-constants", "moment ratios under subordination, p*-1 and sqrt(p(p-1)/2)"},
      {"qc-distortion", "area distortion exponent 1/K of z|z|^(1/K-1)"},
      {"qc-sobolev", "singular map lies in W^1_q exactly for q < 1+k"},
      {"qc-jacobian-weight", "Jacobian power weights and their A2 blow-up"},
      {"reproducibility", "suite reports are deterministic per seed"},
  };
  return reg;
}

const std::string& anchor(const std::string& key) {
  static const std::map<std::string, std::string> m(anchor_registry().begin(), anchor_registry().end());
  auto it = m.find(key);
  if (it == m.end()) throw std::out_of_range("unknown anchor key: " + key);
  return it->second;
}

namespace {
Entry make(const std::string& key, const std::string& name, double value, double target, double tol,
           const char* rel, Status st, const std::string& note = "") {
  Entry e;
  e.name = name;
  e.anchor = anchor(key);
  e.value = value;
  e.target = target;
  e.tolerance = tol;
  e.relation = rel;
  e.status = st;
  e.note = note;
  return e;
}
Status ok(bool b) { return b ? Status::pass : Status::fail; }
}  // namespace

Entry at_most(const std::string& key, const std::string& name, double value, double bound) {
  return make(key, name, value, bound, 0.0, "<=", ok(value <= bound));
}

Entry at_least(const std::string& key, const std::string& name, double value, double bound) {
  return make(key, name, value, bound, 0.0, ">=", ok(value >= bound));
}

Entry near(const std::string& key, const std::string& name, double value, double target, double tol) {
  return make(key, name, value, target, tol, "~", ok(std::abs(value - target) <= tol));
}

Entry holds(const std::string& key, const std::string& name, bool b, double value, const std::string& note) {
  return make(key, name, value, 0.0, 0.0, "holds", ok(b), note);
}

Entry info(const std::string& key, const std::string& name, double value, const std::string& note) {
  return make(key, name, value, 0.0, 0.0, "", Status::info, note);
}

Entry skipped(const std::string& key, const std::string& name, const std::string& note) {
  return make(key, name, 0.0, 0.0, 0.0, "", Status::skipped, note);
}

bool RunReport::failed() const {
  for (const auto& e : entries)
    if (e.status == Status::fail) return true;
  return false;
}

void RunReport::append(const RunReport& o) {
  entries.insert(entries.end(), o.entries.begin(), o.entries.end());
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string to_json(const RunReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = r.command;
  j["version"] = r.version.empty() ? kVersion : r.version;
  j["seed"] = r.seed;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  ordered_json checks = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json c;
    c["name"] = e.name;
    c["anchor"] = e.anchor;
    c["value"] = num(e.value);
    if (!e.relation.empty() && e.relation != "holds") {
      c["relation"] = e.relation;
      c["target"] = num(e.target);
      if (e.relation == "~") c["tolerance"] = num(e.tolerance);
    }
    c["status"] = status_name(e.status);
    if (!e.note.empty()) c["note"] = e.note;
    checks.push_back(c);
  }
  j["checks"] = checks;
  if (!r.table.empty()) {
    ordered_json t;
    t["columns"] = r.table.columns;
    t["rows"] = r.table.rows;
    j["table"] = t;
  }
  j["result"] = r.failed() ? "fail" : "pass";
  if (r.wall_time) j["wall_time_s"] = num(*r.wall_time);
  return j.dump(2) + "\n";
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}
}  // namespace

std::string to_csv(const RunReport& r) {
  std::ostringstream os;
  if (!r.table.empty()) {
    for (std::size_t i = 0; i < r.table.columns.size(); ++i)
      os << (i ? "," : "") << csv_field(r.table.columns[i]);
    os << "\n";
    for (const auto& row : r.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    }
    return os.str();
  }
  os << "name,value,relation,target,tolerance,status,anchor\n";
  for (const auto& e : r.entries)
    os << csv_field(e.name) << "," << num(e.value) << "," << csv_field(e.relation) << "," << num(e.target) << ","
       << num(e.tolerance) << "," << status_name(e.status) << "," << csv_field(e.anchor) << "\n";
  return os.str();
}

}  // namespace bflab::report

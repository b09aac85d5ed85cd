#include "whitney/report.hpp"

#include <sstream>

#include "json.hpp"
#include "whitney/errors.hpp"

namespace whitney {

using nlohmann::json;

namespace {

Basis basis_of(const std::string& s) {
  if (s == "based") return Basis::Based;
  if (s == "free") return Basis::Free;
  throw InvalidInput("unknown basis \"" + s + "\"");
}

ViolationKind violation_of(const std::string& s) {
  for (ViolationKind k : {ViolationKind::TangentialCrossing, ViolationKind::TriplePoint, ViolationKind::BasePointHit,
                          ViolationKind::FieldZeroOnCurve, ViolationKind::FieldTangentAtBase,
                          ViolationKind::ParameterTie, ViolationKind::PunctureSwept})
    if (to_string(k) == s) return k;
  throw InvalidInput("unknown violation kind \"" + s + "\"");
}

}  // namespace

std::string to_json_line(const VerificationReport& r) {
  const InvariantBundle& b = r.bundle;
  json j;
  j["command"] = r.command;
  j["scene"] = r.scene;
  j["basis"] = b.basis == Basis::Based ? "based" : "free";
  j["T"] = b.T;
  j["tried_T"] = r.tried_T;
  j["gamma_class"] = b.gamma_class.to_string();
  j["w"] = b.scalar_w;
  j["turaev"] = b.turaev.to_string();
  j["whitney"] = b.whitney.to_string();
  j["shift_T"] = b.shift_T.to_string();
  if (b.basis == Basis::Based) j["index_T"] = b.index_T.to_string();
  j["lhs"] = r.lhs.to_string();
  j["rhs"] = r.rhs.to_string();
  j["residual"] = r.residual.to_string();
  j["equal"] = r.equal;
  json v = json::array();
  for (const Violation& x : r.genericity.violations) v.push_back({{"kind", to_string(x.kind)}, {"detail", x.detail}});
  j["violations"] = v;
  j["seconds"] = r.seconds;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

VerificationReport report_from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("report line is not valid JSON: ") + e.what());
  }
  try {
    VerificationReport r;
    r.command = j.at("command").get<std::string>();
    r.scene = j.value("scene", "");
    InvariantBundle& b = r.bundle;
    b.basis = basis_of(j.at("basis").get<std::string>());
    b.T = j.value("T", 0.0);
    r.tried_T = j.value("tried_T", std::vector<double>{});
    b.gamma_class = GroupElement::parse(j.at("gamma_class").get<std::string>());
    b.gamma_free_class = conjugacy_class(b.gamma_class);
    b.scalar_w = j.at("w").get<int>();
    b.turaev = RingElement::parse(j.at("turaev").get<std::string>(), b.basis);
    b.whitney = RingElement::parse(j.at("whitney").get<std::string>(), b.basis);
    b.shift_T = RingElement::parse(j.at("shift_T").get<std::string>(), b.basis);
    if (j.contains("index_T")) b.index_T = RingElement::parse(j.at("index_T").get<std::string>(), Basis::Based);
    r.lhs = RingElement::parse(j.at("lhs").get<std::string>(), b.basis);
    r.rhs = RingElement::parse(j.at("rhs").get<std::string>(), b.basis);
    r.residual = r.lhs - r.rhs;
    r.equal = r.residual.is_zero();
    for (const json& v : j.value("violations", json::array()))
      r.genericity.violations.push_back({violation_of(v.at("kind").get<std::string>()), v.at("detail").get<std::string>()});
    r.genericity.ok = r.genericity.violations.empty();
    r.seconds = j.value("seconds", 0.0);
    r.error = j.value("error", "");
    if (!r.error.empty()) r.equal = false;
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed report line: ") + e.what());
  }
}

std::string describe(const VerificationReport& r) {
  std::ostringstream out;
  const InvariantBundle& b = r.bundle;
  out << r.command << " " << r.scene << "\n";
  if (!r.error.empty()) {
    out << "  error: " << r.error << "\n";
    for (const auto& v : r.genericity.violations) out << "  violation " << to_string(v.kind) << ": " << v.detail << "\n";
    if (r.tried_T.size() > 1) out << "  hint: every nudged T failed; try a different T\n";
    return out.str();
  }
  out << "  T = " << b.T << "\n";
  out << "  [gamma]   = " << (b.basis == Basis::Based ? b.gamma_class.to_string() : b.gamma_free_class.to_string()) << "\n";
  out << "  w(gamma,X) scalar = " << b.scalar_w << "\n";
  out << "  <gamma>   = " << b.turaev.to_string() << "\n";
  out << "  <gamma>_T = " << b.shift_T.to_string() << "\n";
  out << "  w-term    = " << b.whitney.to_string() << "\n";
  if (b.basis == Basis::Based) out << "  ind_T     = " << b.index_T.to_string() << "\n";
  out << "  lhs = " << r.lhs.to_string() << "\n";
  out << "  rhs = " << r.rhs.to_string() << "\n";
  out << "  " << (r.equal ? "EQUAL" : "NOT EQUAL");
  if (!r.equal) out << ", residual " << r.residual.to_string();
  out << "\n";
  return out.str();
}

}  // namespace whitney

#pragma once

#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qsu2/invariant.hpp"

namespace qsu2 {

inline std::string class_label(const CohomClass& theta) {
  if (theta.trivial()) return "0";
  std::string s = "{";
  for (std::size_t i = 0; i < theta.members.size(); ++i) s += (i ? "," : "") + std::to_string(theta.members[i] + 1);
  return s + "}";
}

inline std::string valuation_label(const std::optional<long>& v) {
  if (!v) return "n/a";
  return *v == kInfiniteValuation ? "inf" : std::to_string(*v);
}

inline std::string tau_label(const ThetaReport& r) {
  if (auto s = render_xi(r.tau)) return *s;
  return render(r.tau);
}

/// Component indices are 1-based in every rendering.
inline nlohmann::json to_json(const ThetaReport& r, bool with_timing) {
  nlohmann::json j;
  j["theta"] = nlohmann::json::array();
  for (int i : r.theta.members) j["theta"].push_back(i + 1);
  j["tau"] = tau_label(r);
  j["basis"] = r.basis.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.basis);
  if (r.xi_coords) {
    j["xi_coords"] = nlohmann::json::array();
    for (const auto& c : *r.xi_coords) j["xi_coords"].push_back(to_string(c));
  } else {
    j["xi_coords"] = nullptr;
  }
  j["valuation"] = valuation_label(r.valuation);
  j["parity"] = r.parity;
  j["ideal"] = ideal_name(r.ideal);
  j["verdict"] = r.verdict;
  j["route"] = route_name(r.route);
  if (r.routes_agree) j["routes_agree"] = *r.routes_agree;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

inline nlohmann::json to_json(const LemmaCheck& c) {
  nlohmann::json j;
  j["family"] = c.family;
  j["instance"] = c.instance;
  j["integral"] = c.integral;
  j["valuation"] = valuation_label(c.valuation);
  j["bound"] = c.bound;
  j["pass"] = c.pass;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline std::string theta_table(const std::vector<ThetaReport>& rs, bool with_timing) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "theta" << std::setw(8) << "parity" << std::setw(26) << "ideal" << std::setw(10)
      << "valuation" << std::setw(9) << "verdict" << std::setw(7) << "route";
  if (with_timing) out << std::setw(10) << "seconds";
  out << "tau\n";
  for (const auto& r : rs) {
    std::string route = route_name(r.route);
    if (r.routes_agree) route += *r.routes_agree ? "" : "!";
    out << std::setw(10) << class_label(r.theta) << std::setw(8) << r.parity << std::setw(26) << ideal_name(r.ideal)
        << std::setw(10) << valuation_label(r.valuation) << std::setw(9) << (r.verdict ? "true" : "false")
        << std::setw(7) << route;
    if (with_timing) out << std::setw(10) << std::fixed << std::setprecision(3) << r.seconds;
    out << tau_label(r) << '\n';
  }
  return out.str();
}

inline std::string lemma_table(const std::vector<LemmaCheck>& cs) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "family" << std::setw(36) << "instance" << std::setw(9) << "in Z[xi]"
      << std::setw(10) << "valuation" << std::setw(7) << "bound" << "result\n";
  for (const auto& c : cs) {
    out << std::setw(10) << c.family << std::setw(36) << c.instance << std::setw(9) << (c.integral ? "yes" : "no")
        << std::setw(10) << valuation_label(c.valuation) << std::setw(7) << c.bound;
    if (!c.note.empty()) out << (c.pass ? "pass " : "FAIL ") << "(" << c.note << ")";
    else out << (c.pass ? "pass" : "FAIL");
    out << '\n';
  }
  return out.str();
}

}  // namespace qsu2

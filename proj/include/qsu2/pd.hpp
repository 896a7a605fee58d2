#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsu2/errors.hpp"

namespace qsu2 {

/// Planar diagram code.
///
/// Each crossing is a 4-tuple of edge labels listed counterclockwise starting
/// at the incoming under-strand, so the under-strand runs slot 0 -> slot 2.
/// Components are oriented edge cycles: the edge after e is the next entry of
/// its list (cyclically). An empty component is a crossingless free loop.
///
/// Crossing sign: +1 iff the over-strand enters at slot 1, -1 iff it enters at
/// slot 3. This is the mirror of the common knot-table convention.
class PDCode {
 public:
  using Tuple = std::array<int, 4>;

  PDCode() = default;

  /// Validates and orients; throws InvalidInput with a located diagnostic.
  PDCode(std::vector<Tuple> crossings, std::vector<std::vector<int>> components)
      : crossings_(std::move(crossings)), components_(std::move(components)) {
    analyze();
  }

  /// Reconstructs the component cycles from the crossings alone.
  static PDCode from_crossings(std::vector<Tuple> crossings, int free_loops = 0);

  const std::vector<Tuple>& crossings() const { return crossings_; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  std::size_t num_crossings() const { return crossings_.size(); }
  std::size_t num_components() const { return components_.size(); }
  std::size_t num_edges() const { return comp_of_edge_.size(); }

  int sign(std::size_t x) const { return signs_[x]; }
  // Slot (1 or 3) at which the over-strand enters.
  int over_in_slot(std::size_t x) const { return signs_[x] > 0 ? 1 : 3; }
  int under_component(std::size_t x) const { return component_of(crossings_[x][0]); }
  int over_component(std::size_t x) const { return component_of(crossings_[x][1]); }
  int component_of(int edge) const { return comp_of_edge_.at(edge); }

  bool is_free_loop(std::size_t i) const { return components_[i].empty(); }

  friend bool operator==(const PDCode& a, const PDCode& b) {
    return a.crossings_ == b.crossings_ && a.components_ == b.components_;
  }

 private:
  void analyze();

  std::vector<Tuple> crossings_;
  std::vector<std::vector<int>> components_;
  std::vector<int> signs_;
  std::map<int, int> comp_of_edge_;
};

inline void PDCode::analyze() {
  // Edge multiplicities.
  std::map<int, int> count;
  for (std::size_t x = 0; x < crossings_.size(); ++x)
    for (int e : crossings_[x]) {
      if (e <= 0)
        throw InvalidInput("pd[" + std::to_string(x) + "]: edge labels must be positive (got " + std::to_string(e) + ")");
      ++count[e];
    }
  for (auto [e, c] : count)
    if (c != 2)
      throw InvalidInput("edge " + std::to_string(e) + " appears " + std::to_string(c) + " times (expected 2)");

  // Component partition.
  comp_of_edge_.clear();
  std::map<int, int> next;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& cyc = components_[i];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int e = cyc[k];
      if (!count.count(e))
        throw InvalidInput("components[" + std::to_string(i) + "]: edge " + std::to_string(e) + " is not used by any crossing");
      if (!comp_of_edge_.emplace(e, static_cast<int>(i)).second)
        throw InvalidInput("components[" + std::to_string(i) + "]: edge " + std::to_string(e) + " listed twice");
      next[e] = cyc[(k + 1) % cyc.size()];
    }
  }
  for (auto [e, c] : count)
    if (!comp_of_edge_.count(e)) throw InvalidInput("edge " + std::to_string(e) + " belongs to no component");

  // Every transition e -> next(e) must be realized by exactly one strand passage.
  std::map<int, int> claims;  // keyed by the incoming edge
  auto claim = [&](int from, std::size_t x) {
    if (++claims[from] > 1)
      throw InvalidInput("pd[" + std::to_string(x) + "]: transition from edge " + std::to_string(from) + " realized twice");
  };
  signs_.assign(crossings_.size(), 0);
  std::vector<std::size_t> ambiguous;
  for (std::size_t x = 0; x < crossings_.size(); ++x) {
    const auto& t = crossings_[x];
    if (next[t[0]] != t[2])
      throw InvalidInput("pd[" + std::to_string(x) + "]: under-strand " + std::to_string(t[0]) + " -> " +
                         std::to_string(t[2]) + " is not consecutive in its component");
    claim(t[0], x);
    bool bd = next[t[1]] == t[3];
    bool db = next[t[3]] == t[1];
    if (!bd && !db)
      throw InvalidInput("pd[" + std::to_string(x) + "]: over-strand edges " + std::to_string(t[1]) + ", " +
                         std::to_string(t[3]) + " are not consecutive in their component");
    if (bd && db) {
      ambiguous.push_back(x);
      continue;
    }
    signs_[x] = bd ? 1 : -1;
    claim(bd ? t[1] : t[3], x);
  }
  for (std::size_t x : ambiguous) {
    const auto& t = crossings_[x];
    bool b_free = !claims.count(t[1]);
    bool d_free = !claims.count(t[3]);
    if (b_free && d_free) {
      const auto& cyc = components_[component_of(t[1])];
      b_free = cyc[0] == t[1];
    }
    if (!b_free && !d_free)
      throw InvalidInput("pd[" + std::to_string(x) + "]: over-strand transition already realized");
    signs_[x] = b_free ? 1 : -1;
    claim(b_free ? t[1] : t[3], x);
  }
  for (const auto& [e, n] : next)
    if (claims[e] != 1) throw InvalidInput("transition from edge " + std::to_string(e) + " is not realized by a crossing");
}

inline PDCode PDCode::from_crossings(std::vector<Tuple> crossings, int free_loops) {
  using End = std::pair<int, int>;  // (crossing, slot)
  std::map<int, std::vector<End>> ends;
  for (std::size_t x = 0; x < crossings.size(); ++x)
    for (int k = 0; k < 4; ++k) ends[crossings[x][k]].push_back({static_cast<int>(x), k});
  for (const auto& [e, v] : ends)
    if (v.size() != 2)
      throw InvalidInput("edge " + std::to_string(e) + " appears " + std::to_string(v.size()) + " times (expected 2)");

  std::map<int, bool> seen;
  std::vector<std::vector<int>> comps;
  for (const auto& [start, v] : ends) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    int forward = 0, backward = 0;
    int e = start;
    End head = v[1];
    while (true) {
      seen[e] = true;
      cyc.push_back(e);
      auto [x, k] = head;
      if (k == 0) ++forward;
      if (k == 2) ++backward;
      End tail{x, (k + 2) % 4};
      e = crossings[x][tail.second];
      if (e == start && tail == ends[start][0]) break;
      const auto& en = ends[e];
      head = en[0] == tail ? en[1] : en[0];
      if (seen[e]) throw InvalidInput("pd: strand through edge " + std::to_string(e) + " does not close up");
    }
    if (forward && backward)
      throw InvalidInput("pd: component through edge " + std::to_string(start) + " has inconsistent under-strand directions");
    bool reverse = backward > 0;
    if (!forward && !backward && cyc.size() > 1 && cyc.back() == cyc.front() + 1 && cyc[1] != cyc.front() + 1)
      reverse = true;
    if (reverse) std::reverse(cyc.begin() + 1, cyc.end());
    comps.push_back(std::move(cyc));
  }
  for (int i = 0; i < free_loops; ++i) comps.emplace_back();
  return PDCode(std::move(crossings), std::move(comps));
}

// ---------------------------------------------------------------------------
// JSON interchange.

inline PDCode pd_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("diagram document must be a JSON object");
  if (!j.contains("pd")) throw InvalidInput("missing field 'pd'");
  std::vector<PDCode::Tuple> crossings;
  const auto& pd = j.at("pd");
  if (!pd.is_array()) throw InvalidInput("'pd' must be a list of 4-tuples");
  for (std::size_t x = 0; x < pd.size(); ++x) {
    const auto& t = pd[x];
    if (!t.is_array() || t.size() != 4)
      throw InvalidInput("pd[" + std::to_string(x) + "]: expected a 4-tuple of edge labels");
    PDCode::Tuple tup{};
    for (int k = 0; k < 4; ++k) {
      if (!t[k].is_number_integer()) throw InvalidInput("pd[" + std::to_string(x) + "][" + std::to_string(k) + "]: not an integer");
      tup[k] = t[k].get<int>();
    }
    crossings.push_back(tup);
  }
  int free_loops = 0;
  if (j.contains("free_loops")) {
    if (!j["free_loops"].is_number_integer() || j["free_loops"].get<int>() < 0)
      throw InvalidInput("'free_loops' must be a nonnegative integer");
    free_loops = j["free_loops"].get<int>();
  }
  if (!j.contains("components")) return PDCode::from_crossings(std::move(crossings), free_loops);
  std::vector<std::vector<int>> comps;
  const auto& cs = j.at("components");
  if (!cs.is_array()) throw InvalidInput("'components' must be a list of edge cycles");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].is_array()) throw InvalidInput("components[" + std::to_string(i) + "]: expected a list of edges");
    std::vector<int> cyc;
    for (const auto& e : cs[i]) {
      if (!e.is_number_integer()) throw InvalidInput("components[" + std::to_string(i) + "]: edge labels must be integers");
      cyc.push_back(e.get<int>());
    }
    comps.push_back(std::move(cyc));
  }
  for (int i = 0; i < free_loops; ++i) comps.emplace_back();
  return PDCode(std::move(crossings), std::move(comps));
}

inline nlohmann::json pd_to_json(const PDCode& d) {
  nlohmann::json j;
  j["pd"] = nlohmann::json::array();
  for (const auto& t : d.crossings()) j["pd"].push_back(t);
  j["components"] = d.components();
  return j;
}

/// Parses a diagram document; JSON syntax errors report the byte offset.
inline PDCode parse_pd(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed diagram document: ") + e.what());
  }
  return pd_from_json(j);
}

/// Canonical text used for hashing: crossings then components, labels as given.
inline std::string canonical_string(const PDCode& d) {
  std::string s = "X";
  for (const auto& t : d.crossings()) {
    s += '[';
    for (int k = 0; k < 4; ++k) s += (k ? "," : "") + std::to_string(t[k]);
    s += ']';
  }
  s += "C";
  for (const auto& c : d.components()) {
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    s += ')';
  }
  return s;
}

/// Relabels edges 1..E in component order.
inline PDCode relabel_canonical(const PDCode& d) {
  std::map<int, int> m;
  int next = 1;
  for (const auto& c : d.components())
    for (int e : c) m[e] = next++;
  std::vector<PDCode::Tuple> xs = d.crossings();
  for (auto& t : xs)
    for (int& e : t) e = m.at(e);
  std::vector<std::vector<int>> cs = d.components();
  for (auto& c : cs)
    for (int& e : c) e = m.at(e);
  return PDCode(std::move(xs), std::move(cs));
}

}  // namespace qsu2

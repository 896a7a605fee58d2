#pragma once

#include <string>
#include <vector>

#include "qsu2/link.hpp"

namespace qsu2 {

struct CatalogEntry {
  std::string name;
  PDCode diagram;
  std::vector<long> default_framings;
  bool algebraically_split = false;
  std::string notes;
};

namespace detail {

struct BraidSpec {
  const char* name;
  int strands;
  std::vector<int> word;
  std::vector<long> framings;
  const char* notes;
};

inline const std::vector<BraidSpec>& braid_specs() {
  static const std::vector<BraidSpec> specs = {
      {"hopf", 2, {1, 1}, {2, 2}, "Hopf link, lk = +1"},
      {"trefoil", 2, {1, 1, 1}, {2}, "trefoil, writhe +3"},
      {"figure8", 3, {1, -2, 1, -2}, {2}, "figure-eight knot, writhe 0"},
      {"whitehead", 3, {1, 1, -2, 1, -2}, {2, 2}, "Whitehead link, lk = 0"},
      {"borromean", 3, {1, -2, 1, -2, 1, -2}, {2, 2, 2}, "Borromean rings"},
  };
  return specs;
}

}  // namespace detail

inline PDCode unknot_diagram() { return PDCode({}, {{}}); }

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"unknot", unknot_diagram(), {2}, true, "crossingless circle"});
  for (const auto& s : detail::braid_specs()) {
    CatalogEntry e{s.name, braid_closure(s.strands, s.word), s.framings, false, s.notes};
    e.algebraically_split = is_algebraically_split(FramedLink(e.diagram, e.default_framings));
    out.push_back(std::move(e));
  }
  return out;
}

inline CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  throw InvalidInput("unknown catalog entry '" + name + "'");
}

/// Braid words whose closures differ by a single Reidemeister move.
struct MovePair {
  std::string name;
  PDCode a, b;
};

inline std::vector<MovePair> reidemeister_pairs() {
  return {
      {"R2 trefoil", braid_closure(2, {1, 1, 1}), braid_closure(2, {1, 1, 1, 1, -1})},
      {"R2 figure8", braid_closure(3, {1, -2, 1, -2}), braid_closure(3, {1, 2, -2, -2, 1, -2})},
      {"R2 hopf", braid_closure(2, {1, 1}), braid_closure(2, {1, -1, 1, 1})},
      {"R3 borromean", braid_closure(3, {1, 2, 1, -2, 1, -2}), braid_closure(3, {2, 1, 2, -2, 1, -2})},
      {"R3 positive", braid_closure(3, {1, 2, 1, 2}), braid_closure(3, {2, 1, 2, 2})},
      {"R3 mixed", braid_closure(3, {-1, -2, -1, 2}), braid_closure(3, {-2, -1, -2, 2})},
  };
}

/// L+, L-, L0 differing at one crossing.
struct SkeinTriple {
  std::string name;
  PDCode plus, minus, zero;
  bool expected = true;
};

inline std::vector<SkeinTriple> skein_triples() {
  return {
      {"hopf", braid_closure(2, {1, 1}), braid_closure(2, {1, -1}), braid_closure(2, {1}), true},
      {"trefoil", braid_closure(2, {1, 1, 1}), braid_closure(2, {1, 1, -1}), braid_closure(2, {1, 1}), true},
      {"figure8", braid_closure(3, {1, -2, 1, -2}), braid_closure(3, {-1, -2, 1, -2}), braid_closure(3, {-2, 1, -2}),
       true},
      {"mismatched", braid_closure(2, {1, 1, 1}), braid_closure(2, {1, 1, -1}), braid_closure(2, {1, -1}), false},
  };
}

/// <L1 u L2^2> cases: roles 0 drop, 1 keep, 2 double; the bracket should be
/// divisible by (A^2 + A^-2)^{#L2}.
struct DoubleParallelCase {
  std::string name;
  PDCode diagram;
  std::vector<int> role;
  int doubled = 0;
};

inline std::vector<DoubleParallelCase> double_parallel_cases() {
  PDCode bor = braid_closure(3, {1, -2, 1, -2, 1, -2});
  PDCode tre = zero_frame_normalize(braid_closure(2, {1, 1, 1}));
  PDCode wh = zero_frame_normalize(braid_closure(3, {1, 1, -2, 1, -2}));
  return {
      {"unknot", PDCode({}, {{}}), {2}, 1},
      {"trefoil", tre, {2}, 1},
      {"whitehead 2,1", wh, {2, 1}, 1},
      {"whitehead 2,2", wh, {2, 2}, 2},
      {"borromean 2,2,0", bor, {2, 2, 0}, 2},
      {"borromean 1,2,2", bor, {1, 2, 2}, 2},
      {"borromean 2,1,1", bor, {2, 1, 1}, 1},
      {"borromean 2,2,2", bor, {2, 2, 2}, 3},
  };
}

}  // namespace qsu2

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qsu2/errors.hpp"
#include "qsu2/numeric.hpp"
#include "qsu2/pd.hpp"

namespace qsu2 {

/// A diagram together with one integer framing per component.
struct FramedLink {
  PDCode diagram;
  std::vector<long> framings;

  FramedLink() = default;
  FramedLink(PDCode d, std::vector<long> f) : diagram(std::move(d)), framings(std::move(f)) {
    if (framings.size() != diagram.num_components())
      throw InvalidInput("framings has " + std::to_string(framings.size()) + " entries but the diagram has " +
                         std::to_string(diagram.num_components()) + " components");
  }

  std::size_t size() const { return framings.size(); }
};

/// A framed link accepted as a surgery presentation of a Z/pZ-homology sphere.
struct SurgeryPresentation {
  FramedLink link;
  long p = 0;
};

using IntMatrix = std::vector<std::vector<long>>;

/// Diagonal: framings. Off-diagonal: half the signed count of crossings
/// between the two components.
inline IntMatrix linking_matrix(const FramedLink& L) {
  const std::size_t m = L.size();
  IntMatrix twice(m, std::vector<long>(m, 0));
  const PDCode& d = L.diagram;
  for (std::size_t x = 0; x < d.num_crossings(); ++x) {
    int i = d.under_component(x), j = d.over_component(x);
    if (i == j) continue;
    twice[i][j] += d.sign(x);
    twice[j][i] += d.sign(x);
  }
  IntMatrix lk(m, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) {
        lk[i][j] = L.framings[i];
        continue;
      }
      if (twice[i][j] % 2 != 0) throw InternalError("odd signed crossing count between two components");
      lk[i][j] = twice[i][j] / 2;
    }
  return lk;
}

inline bool is_algebraically_split(const FramedLink& L) {
  auto lk = linking_matrix(L);
  for (std::size_t i = 0; i < lk.size(); ++i)
    for (std::size_t j = 0; j < lk.size(); ++j)
      if (i != j && lk[i][j] != 0) return false;
  return true;
}

inline long self_writhe(const PDCode& d, std::size_t i) {
  if (i >= d.num_components()) throw InvalidInput("component index " + std::to_string(i) + " out of range");
  long w = 0;
  for (std::size_t x = 0; x < d.num_crossings(); ++x)
    if (d.under_component(x) == static_cast<int>(i) && d.over_component(x) == static_cast<int>(i)) w += d.sign(x);
  return w;
}
inline long self_writhe(const FramedLink& L, std::size_t i) { return self_writhe(L.diagram, i); }

inline bool is_zero_framed(const PDCode& d) {
  for (std::size_t i = 0; i < d.num_components(); ++i)
    if (self_writhe(d, i) != 0) return false;
  return true;
}

/// Sum over pairs i < j of lk(L_i, L_j).
inline long total_linking(const PDCode& d) {
  long twice = 0;
  for (std::size_t x = 0; x < d.num_crossings(); ++x)
    if (d.under_component(x) != d.over_component(x)) twice += d.sign(x);
  return twice / 2;
}

namespace detail {

inline int max_label(const PDCode& d) {
  int m = 0;
  for (const auto& t : d.crossings())
    for (int e : t) m = std::max(m, e);
  return m;
}

// Crossing and slot where the edge ends (enters a crossing).
inline std::map<int, std::pair<std::size_t, int>> edge_heads(const PDCode& d) {
  std::map<int, std::pair<std::size_t, int>> head;
  for (std::size_t x = 0; x < d.num_crossings(); ++x) {
    head[d.crossings()[x][0]] = {x, 0};
    int k = d.over_in_slot(x);
    head[d.crossings()[x][k]] = {x, k};
  }
  return head;
}

}  // namespace detail

/// Inserts a kink of the given sign on edge `edge` of the diagram.
inline PDCode insert_curl(const PDCode& d, int edge, int sign) {
  auto head = detail::edge_heads(d);
  auto it = head.find(edge);
  if (it == head.end()) throw InvalidInput("cannot insert a curl on edge " + std::to_string(edge));
  const int l = detail::max_label(d) + 1, n = l + 1;
  auto xs = d.crossings();
  xs[it->second.first][it->second.second] = n;
  xs.push_back(sign > 0 ? PDCode::Tuple{edge, l, l, n} : PDCode::Tuple{edge, n, l, l});
  auto cs = d.components();
  auto& cyc = cs[d.component_of(edge)];
  auto pos = std::find(cyc.begin(), cyc.end(), edge);
  cyc.insert(pos + 1, {l, n});
  return PDCode(std::move(xs), std::move(cs));
}

/// Cancels each component's self-writhe with compensating kinks. Framings are
/// carried along unchanged.
inline PDCode zero_frame_normalize(const PDCode& d) {
  PDCode out = d;
  for (std::size_t i = 0; i < d.num_components(); ++i) {
    long w = self_writhe(d, i);
    if (w == 0) continue;
    int edge = out.components()[i].front();
    for (long k = 0; k < std::abs(w); ++k) {
      out = insert_curl(out, edge, w > 0 ? -1 : 1);
      edge = out.components()[i][std::find(out.components()[i].begin(), out.components()[i].end(), edge) -
                                 out.components()[i].begin() + 2];
    }
  }
  return out;
}
inline FramedLink zero_frame_normalize(const FramedLink& L) { return FramedLink(zero_frame_normalize(L.diagram), L.framings); }

/// Blackboard parallel: component i is replaced by d[i] copies, each offset to
/// the left of the strand direction. d[i] = 0 deletes the component.
inline PDCode cable(const PDCode& D, const std::vector<int>& d) {
  if (d.size() != D.num_components()) throw InvalidInput("cable vector length does not match the component count");
  for (int v : d)
    if (v < 0) throw InvalidInput("cable multiplicities must be nonnegative");
  if (!is_zero_framed(D)) throw InvalidInput("cable requires a zero-frame-normalized diagram");

  // Labels: copy s of original edge e gets id(e, s); grid interiors are fresh.
  std::map<std::pair<int, int>, int> copy_id;
  int next_label = 1;
  auto id = [&](int e, int s) {
    auto [it, fresh] = copy_id.emplace(std::make_pair(e, s), next_label);
    if (fresh) ++next_label;
    return it->second;
  };
  for (std::size_t i = 0; i < D.num_components(); ++i)
    for (int e : D.components()[i])
      for (int s = 0; s < d[i]; ++s) id(e, s);

  std::vector<int> parent;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  std::vector<PDCode::Tuple> out;
  // Interior segments of the passage of copy s through the crossing where e ends.
  std::map<std::pair<int, int>, std::vector<int>> interior;
  std::vector<std::pair<int, int>> merges;
  for (std::size_t x = 0; x < D.num_crossings(); ++x) {
    const auto& t = D.crossings()[x];
    const int sg = D.sign(x);
    const int ui = D.under_component(x), oj = D.over_component(x);
    const int di = d[ui], dj = d[oj];
    const int a = t[0], c = t[2];
    const int oin = sg > 0 ? t[1] : t[3], oout = sg > 0 ? t[3] : t[1];
    if (di == 0 || dj == 0) {
      for (int s = 0; s < di; ++s) merges.push_back({id(a, s), id(c, s)});
      for (int s = 0; s < dj; ++s) merges.push_back({id(oin, s), id(oout, s)});
      continue;
    }
    std::vector<std::vector<int>> seg_u(di, std::vector<int>(dj + 1)), seg_o(dj, std::vector<int>(di + 1));
    for (int s = 0; s < di; ++s) {
      seg_u[s][0] = id(a, s);
      seg_u[s][dj] = id(c, s);
      for (int k = 1; k < dj; ++k) seg_u[s][k] = next_label++;
      interior[{a, s}] = std::vector<int>(seg_u[s].begin() + 1, seg_u[s].end() - 1);
    }
    for (int s = 0; s < dj; ++s) {
      seg_o[s][0] = id(oin, s);
      seg_o[s][di] = id(oout, s);
      for (int k = 1; k < di; ++k) seg_o[s][k] = next_label++;
      interior[{oin, s}] = std::vector<int>(seg_o[s].begin() + 1, seg_o[s].end() - 1);
    }
    for (int s = 0; s < di; ++s)
      for (int u = 0; u < dj; ++u) {
        const int ku = sg > 0 ? dj - 1 - u : u;
        const int ko = sg > 0 ? s : di - 1 - s;
        const int ua = seg_u[s][ku], uc = seg_u[s][ku + 1];
        const int o_in = seg_o[u][ko], o_out = seg_o[u][ko + 1];
        out.push_back(sg > 0 ? PDCode::Tuple{ua, o_in, uc, o_out} : PDCode::Tuple{ua, o_out, uc, o_in});
      }
  }

  parent.resize(next_label);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : merges) parent[find(a)] = find(b);
  for (auto& t : out)
    for (int& e : t) e = find(e);

  std::vector<std::vector<int>> comps;
  for (std::size_t i = 0; i < D.num_components(); ++i) {
    for (int s = 0; s < d[i]; ++s) {
      std::vector<int> cyc;
      for (int e : D.components()[i]) {
        cyc.push_back(find(id(e, s)));
        auto it = interior.find({e, s});
        if (it != interior.end()) cyc.insert(cyc.end(), it->second.begin(), it->second.end());
      }
      std::vector<int> dedup;
      for (int e : cyc)
        if (dedup.empty() || dedup.back() != e) dedup.push_back(e);
      while (dedup.size() > 1 && dedup.back() == dedup.front()) dedup.pop_back();
      if (dedup.size() == 1) {
        bool used = false;
        for (const auto& t : out)
          for (int e : t) used = used || e == dedup[0];
        if (!used) dedup.clear();
      }
      comps.push_back(std::move(dedup));
    }
  }
  return relabel_canonical(PDCode(std::move(out), std::move(comps)));
}

/// Reports every violated condition separately; returns the presentation.
inline SurgeryPresentation validate_presentation(const FramedLink& L, long p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw InvalidInput("p must be an odd prime >= 3 (got " + std::to_string(p) + ")");
  std::vector<std::string> problems;
  auto lk = linking_matrix(L);
  for (std::size_t i = 0; i < lk.size(); ++i)
    for (std::size_t j = i + 1; j < lk.size(); ++j)
      if (lk[i][j] != 0)
        problems.push_back("not algebraically split: lk(L" + std::to_string(i + 1) + ", L" + std::to_string(j + 1) +
                           ") = " + std::to_string(lk[i][j]));
  BigInt prod = 1;
  for (std::size_t i = 0; i < L.size(); ++i) {
    long f = L.framings[i];
    if (f == 0) problems.push_back("framing of L" + std::to_string(i + 1) + " is zero");
    else if (mod(f, p) == 0)
      problems.push_back("framing of L" + std::to_string(i + 1) + " is " + std::to_string(f) + " = 0 mod " + std::to_string(p));
    prod *= f;
  }
  if (L.size() > 0 && BigInt(prod % p) == 0)
    problems.push_back("det(linking matrix) = 0 mod " + std::to_string(p) + " (not a Z/pZ-homology sphere)");
  if (!problems.empty()) {
    std::string msg;
    for (const auto& s : problems) msg += (msg.empty() ? "" : "; ") + s;
    throw InvalidInput(msg);
  }
  return SurgeryPresentation{L, p};
}

/// A mod-2 cohomology class, presented by the sublink of the listed
/// (even-framed) components. Indices are 0-based.
struct CohomClass {
  std::vector<int> members;

  std::size_t c() const { return members.size(); }
  bool trivial() const { return members.empty(); }
  bool contains(int i) const { return std::find(members.begin(), members.end(), i) != members.end(); }
  friend bool operator==(const CohomClass&, const CohomClass&) = default;
};

inline void check_class(const std::vector<long>& framings, const CohomClass& theta) {
  for (int i : theta.members) {
    if (i < 0 || static_cast<std::size_t>(i) >= framings.size())
      throw InvalidInput("cohomology class refers to component " + std::to_string(i + 1) + " which does not exist");
    if (framings[i] % 2 != 0)
      throw InvalidInput("component " + std::to_string(i + 1) + " has odd framing and cannot belong to a class");
  }
}

/// All subsets of the even-framed components, trivial class first, ordered
/// by the binary counter over those components.
inline std::vector<CohomClass> enumerate_classes(const std::vector<long>& framings) {
  std::vector<int> even;
  for (std::size_t i = 0; i < framings.size(); ++i)
    if (framings[i] % 2 == 0) even.push_back(static_cast<int>(i));
  std::vector<CohomClass> out;
  for (unsigned long mask = 0; mask < (1ul << even.size()); ++mask) {
    CohomClass c;
    for (std::size_t b = 0; b < even.size(); ++b)
      if (mask >> b & 1) c.members.push_back(even[b]);
    out.push_back(std::move(c));
  }
  return out;
}
inline std::vector<CohomClass> enumerate_classes(const SurgeryPresentation& P) { return enumerate_classes(P.link.framings); }

/// theta u theta u theta evaluated on [M], as sum of g_l = f_l / 2 mod 2.
inline int cup_cubed_parity(const std::vector<long>& framings, const CohomClass& theta) {
  long sum = 0;
  for (int i : theta.members) sum += framings[i] / 2;
  return static_cast<int>(mod(sum, 2));
}

/// Closure of a braid word on n strands; generator +i crosses strands i, i+1
/// with a positive crossing (strands oriented upward).
inline PDCode braid_closure(int n, const std::vector<int>& word) {
  int next_label = 1;
  std::vector<int> bottom(n), cur(n);
  for (int i = 0; i < n; ++i) bottom[i] = cur[i] = next_label++;
  std::vector<PDCode::Tuple> xs;
  std::map<int, int> succ;
  for (int g : word) {
    int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= n) throw InvalidInput("braid generator " + std::to_string(g) + " out of range");
    int l = cur[i], r = cur[i + 1];
    int nl = next_label++, nr = next_label++;
    xs.push_back(g > 0 ? PDCode::Tuple{l, r, nr, nl} : PDCode::Tuple{r, nr, nl, l});
    succ[l] = nr;
    succ[r] = nl;
    cur[i] = nl;
    cur[i + 1] = nr;
  }
  std::map<int, int> rename;
  for (int i = 0; i < n; ++i)
    if (cur[i] != bottom[i]) rename[cur[i]] = bottom[i];
  auto rn = [&](int e) {
    auto it = rename.find(e);
    return it == rename.end() ? e : it->second;
  };
  for (auto& t : xs)
    for (int& e : t) e = rn(e);
  std::map<int, int> next;
  for (auto [a, b] : succ) next[rn(a)] = rn(b);

  std::vector<std::vector<int>> comps;
  std::map<int, bool> seen;
  for (int i = 0; i < n; ++i) {
    int e = bottom[i];
    if (seen[e]) continue;
    if (!next.count(e)) {
      comps.emplace_back();
      seen[e] = true;
      continue;
    }
    std::vector<int> cyc;
    while (!seen[e]) {
      seen[e] = true;
      cyc.push_back(e);
      e = next.at(e);
    }
    comps.push_back(std::move(cyc));
  }
  return relabel_canonical(PDCode(std::move(xs), std::move(comps)));
}

}  // namespace qsu2

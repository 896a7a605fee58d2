#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsu2/cyclo.hpp"
#include "qsu2/errors.hpp"
#include "qsu2/laurent.hpp"
#include "qsu2/link.hpp"
#include "qsu2/pd.hpp"

namespace qsu2 {

// Two bracket normalizations appear below. The multiplicative one gives every
// closed loop the value delta = -A^2 - A^{-2} and the empty diagram the value 1;
// it composes under slicing. The unit normalization divides by one delta:
// a single round circle has bracket 1.

inline constexpr int kDefaultWidthLimit = 16;
inline constexpr std::size_t kNaiveCrossingLimit = 20;

namespace detail {

// Dense 0-based edge indices for a diagram.
struct EdgeIndex {
  std::map<int, int> id;
  explicit EdgeIndex(const PDCode& d) {
    for (const auto& t : d.crossings())
      for (int e : t) id.emplace(e, static_cast<int>(id.size()));
  }
  int operator()(int e) const { return id.at(e); }
  int size() const { return static_cast<int>(id.size()); }
};

inline std::size_t free_loop_count(const PDCode& d) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < d.num_components(); ++i) n += d.is_free_loop(i);
  return n;
}

}  // namespace detail

/// Exhaustive 2^n state sum, multiplicative normalization. Test oracle.
inline LaurentPoly naive_bracket_mult(const PDCode& d) {
  const std::size_t n = d.num_crossings();
  if (n > kNaiveCrossingLimit)
    throw ResourceLimit("naive state sum limited to " + std::to_string(kNaiveCrossingLimit) + " crossings");
  detail::EdgeIndex idx(d);
  const std::size_t free_loops = detail::free_loop_count(d);
  std::map<std::pair<long, std::size_t>, BigInt> terms;  // (A exponent, loops) -> count
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    std::vector<int> parent(idx.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto join = [&](int a, int b) { parent[find(a)] = find(b); };
    long exp = 0;
    for (std::size_t x = 0; x < n; ++x) {
      const auto& t = d.crossings()[x];
      if (state >> x & 1) {  // B-smoothing
        join(idx(t[0]), idx(t[3]));
        join(idx(t[1]), idx(t[2]));
        --exp;
      } else {  // A-smoothing
        join(idx(t[0]), idx(t[1]));
        join(idx(t[2]), idx(t[3]));
        ++exp;
      }
    }
    std::size_t loops = free_loops;
    for (int e = 0; e < idx.size(); ++e) loops += find(e) == e;
    terms[{exp, loops}] += 1;
  }
  LaurentPoly out;
  for (const auto& [key, count] : terms)
    out += LaurentPoly::delta().pow(static_cast<unsigned>(key.second)).shifted(key.first) * LaurentPoly::constant(count);
  return out;
}

// ---------------------------------------------------------------------------
// Slicing.

struct SliceEvent {
  enum Kind { Cup, Cap, Crossing } kind;
  int index;      // crossing index for Crossing, free-loop ordinal otherwise
  int width;      // boundary size after the event
};

struct SlicedDiagram {
  std::vector<SliceEvent> events;
  int max_width = 0;

  std::vector<int> width_profile() const {
    std::vector<int> w;
    for (const auto& e : events) w.push_back(e.width);
    return w;
  }
};

namespace detail {

// Greedy crossing order from a fixed first crossing: each step takes the
// crossing leaving the smallest boundary, ties to the smallest index.
inline std::vector<SliceEvent> greedy_order(const PDCode& d, const EdgeIndex& idx, std::size_t first) {
  const std::size_t n = d.num_crossings();
  std::vector<std::array<int, 4>> e(n);
  for (std::size_t x = 0; x < n; ++x)
    for (int k = 0; k < 4; ++k) e[x][k] = idx(d.crossings()[x][k]);
  std::vector<int> seen(idx.size(), 0);  // endpoints already inside the processed region
  std::vector<bool> done(n, false);
  auto width_delta = [&](std::size_t x) {
    int delta = 0;
    for (int k = 0; k < 4; ++k) {
      int c = 0;
      bool first_occurrence = true;
      for (int j = 0; j < 4; ++j) {
        if (e[x][j] != e[x][k]) continue;
        if (j < k) first_occurrence = false;
        ++c;
      }
      if (!first_occurrence) continue;
      int s = seen[e[x][k]];
      delta += (s + c == 1) - (s == 1);
    }
    return delta;
  };
  std::vector<SliceEvent> events;
  int width = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = first;
    int best_delta = 0;
    if (step == 0) {
      best_delta = width_delta(first);
    } else {
      bool have = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (done[x]) continue;
        int delta = width_delta(x);
        if (!have || delta < best_delta) {
          best = x;
          best_delta = delta;
          have = true;
        }
      }
    }
    done[best] = true;
    for (int k = 0; k < 4; ++k) ++seen[e[best][k]];
    width += best_delta;
    events.push_back({SliceEvent::Crossing, static_cast<int>(best), width});
  }
  return events;
}

}  // namespace detail

/// Greedy minimum-width event order. Every crossing is tried as the first
/// event; the order with the smallest peak width (then smallest total width,
/// then smallest first index) wins. Free loops come first as cup/cap pairs.
inline SlicedDiagram slice(const PDCode& d) {
  SlicedDiagram s;
  const std::size_t loops = detail::free_loop_count(d);
  for (std::size_t i = 0; i < loops; ++i) {
    s.events.push_back({SliceEvent::Cup, static_cast<int>(i), 2});
    s.events.push_back({SliceEvent::Cap, static_cast<int>(i), 0});
    s.max_width = 2;
  }
  const std::size_t n = d.num_crossings();
  if (n == 0) return s;
  detail::EdgeIndex idx(d);
  std::vector<SliceEvent> best;
  int best_peak = 0;
  long best_total = 0;
  for (std::size_t first = 0; first < n; ++first) {
    auto ev = detail::greedy_order(d, idx, first);
    int peak = 0;
    long total = 0;
    for (const auto& e : ev) {
      peak = std::max(peak, e.width);
      total += e.width;
    }
    if (best.empty() || peak < best_peak || (peak == best_peak && total < best_total)) {
      best = std::move(ev);
      best_peak = peak;
      best_total = total;
    }
  }
  s.events.insert(s.events.end(), best.begin(), best.end());
  s.max_width = std::max(s.max_width, best_peak);
  return s;
}

// ---------------------------------------------------------------------------
// Contraction.

namespace detail {

// Accumulates sign * A^shift * delta^loops * src into dst.
inline void accumulate(LaurentPoly& dst, const LaurentPoly& src, long shift, int loops) {
  switch (loops) {
    case 0:
      dst.add_shifted(src, shift, 1);
      break;
    case 1:
      dst.add_shifted(src, shift + 2, -1);
      dst.add_shifted(src, shift - 2, -1);
      break;
    default:
      dst += src.shifted(shift) * LaurentPoly::delta().pow(static_cast<unsigned>(loops));
  }
}

}  // namespace detail

/// Multiplicative-normalization bracket via the state-map contraction.
/// Throws ResourceLimit naming the event whose boundary exceeds width_limit.
inline LaurentPoly contract(const PDCode& d, const SlicedDiagram& s, int width_limit = kDefaultWidthLimit) {
  detail::EdgeIndex idx(d);
  using Key = std::string;  // partner position per boundary slot
  std::vector<int> boundary;  // dense edge ids, in boundary order
  std::unordered_map<Key, LaurentPoly> states{{Key{}, LaurentPoly::constant(1)}};

  for (std::size_t ev = 0; ev < s.events.size(); ++ev) {
    const SliceEvent& event = s.events[ev];
    if (event.width > width_limit)
      throw ResourceLimit("boundary width " + std::to_string(event.width) + " exceeds the limit " +
                          std::to_string(width_limit) + " at slicing event " + std::to_string(ev));
    if (event.kind == SliceEvent::Cup) continue;
    if (event.kind == SliceEvent::Cap) {
      for (auto& [k, v] : states) v = v * LaurentPoly::delta();
      continue;
    }
    const auto& t = d.crossings()[event.index];
    std::array<int, 4> e{};
    for (int k = 0; k < 4; ++k) e[k] = idx(t[k]);

    // Graph nodes: 0..B-1 old boundary positions, B..B+3 crossing slots.
    const int B = static_cast<int>(boundary.size());
    std::vector<int> glue(B + 4, -1);  // fixed (non-matching, non-smoothing) partner
    std::vector<bool> glued_pos(B, false);
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < 4; ++j)
        if (j != k && e[j] == e[k]) glue[B + k] = B + j;  // edge with both ends here
      if (glue[B + k] >= 0) continue;
      for (int b = 0; b < B; ++b)
        if (boundary[b] == e[k] && !glued_pos[b]) {
          glue[B + k] = b;
          glue[b] = B + k;
          glued_pos[b] = true;
          break;
        }
    }
    std::vector<int> new_boundary;
    std::vector<int> new_pos(B + 4, -1);
    for (int b = 0; b < B; ++b)
      if (!glued_pos[b]) {
        new_pos[b] = static_cast<int>(new_boundary.size());
        new_boundary.push_back(boundary[b]);
      }
    for (int k = 0; k < 4; ++k)
      if (glue[B + k] < 0) {
        new_pos[B + k] = static_cast<int>(new_boundary.size());
        new_boundary.push_back(e[k]);
      }

    const std::array<std::array<int, 4>, 2> smooth = {{{1, 0, 3, 2}, {3, 2, 1, 0}}};  // A: (0,1)(2,3); B: (0,3)(1,2)
    std::unordered_map<Key, LaurentPoly> next;
    next.reserve(states.size() * 2);
    std::vector<int> partner(B + 4);
    std::vector<char> visited(B + 4);
    for (const auto& [key, poly] : states) {
      for (int b = 0; b < B; ++b) partner[b] = static_cast<unsigned char>(key[b]);
      for (int sm = 0; sm < 2; ++sm) {
        for (int k = 0; k < 4; ++k) partner[B + k] = B + smooth[sm][k];
        // Walk: alternate "partner" (matching or smoothing) and "glue" edges.
        Key nk(new_boundary.size(), '\0');
        std::fill(visited.begin(), visited.end(), 0);
        int loops = 0;
        for (int start = 0; start < B + 4; ++start) {
          if (visited[start] || glue[start] >= 0) continue;
          // start is an endpoint (no glue edge); follow partner, glue, partner, ...
          int cur = start;
          visited[cur] = 1;
          while (true) {
            int nxt = partner[cur];
            visited[nxt] = 1;
            if (glue[nxt] < 0) {
              nk[new_pos[start]] = static_cast<char>(new_pos[nxt]);
              nk[new_pos[nxt]] = static_cast<char>(new_pos[start]);
              break;
            }
            cur = glue[nxt];
            visited[cur] = 1;
          }
        }
        for (int start = 0; start < B + 4; ++start) {
          if (visited[start]) continue;
          ++loops;
          int cur = start;
          while (!visited[cur]) {
            visited[cur] = 1;
            int nxt = partner[cur];
            visited[nxt] = 1;
            cur = glue[nxt];
          }
        }
        detail::accumulate(next[nk], poly, sm == 0 ? 1 : -1, loops);
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.is_zero())
        it = next.erase(it);
      else
        ++it;
    }
    states = std::move(next);
    boundary = std::move(new_boundary);
  }
  if (!boundary.empty()) throw InternalError("contraction ended with a nonempty boundary");
  auto it = states.find(Key{});
  return it == states.end() ? LaurentPoly{} : it->second;
}

inline LaurentPoly bracket_mult(const PDCode& d, int width_limit = kDefaultWidthLimit) {
  return contract(d, slice(d), width_limit);
}

/// Unit normalization: round circle -> 1. The empty diagram maps to 1.
inline LaurentPoly unit_from_mult(const LaurentPoly& mult, bool empty_diagram) {
  if (empty_diagram) return LaurentPoly::constant(1);
  auto q = mult.divide_exact(LaurentPoly::delta());
  if (!q) throw InternalError("bracket of a nonempty diagram is not divisible by delta");
  return *q;
}

inline bool is_empty_diagram(const PDCode& d) { return d.num_components() == 0; }

inline LaurentPoly kauffman_bracket(const PDCode& d, int width_limit = kDefaultWidthLimit) {
  return unit_from_mult(bracket_mult(d, width_limit), is_empty_diagram(d));
}

/// Substitutes A = zeta^{-1}.
inline CycloNumber evaluate_at_A(const LaurentPoly& poly, const Ring& ring) {
  std::vector<BigInt> acc(ring->degree() + 1, 0);
  std::vector<BigRational> c(ring->degree());
  for (long e = poly.low(); e <= poly.high() && !poly.is_zero(); ++e) {
    const BigInt& coef = poly.coeff(e);
    if (coef == 0) continue;
    const auto& z = ring->zeta_power(ring->a_exp(e));
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] != 0) acc[i] += coef * z[i];
  }
  for (long i = 0; i < ring->degree(); ++i) c[i] = acc[i];
  return CycloNumber(ring, std::move(c));
}

/// (-1)^{#L} A^{6 lk} <D>_mult at A = s^{-1/2}, lk the total linking number.
/// Equals [2] V(L) for a diagram with zero self-writhe, and 1 on the empty one.
inline CycloNumber two_v_from_mult(const PDCode& d, const LaurentPoly& mult, const Ring& ring) {
  LaurentPoly w = mult.shifted(6 * total_linking(d));
  if (d.num_components() % 2 != 0) w = -w;
  return evaluate_at_A(w, ring);
}

/// Jones polynomial V at A = s^{-1/2} of a diagram with zero self-writhe.
inline CycloNumber jones_V_from_mult(const PDCode& d, const LaurentPoly& mult, const Ring& ring) {
  if (!is_zero_framed(d)) throw InvalidInput("jones_V requires a zero-frame-normalized diagram");
  if (is_empty_diagram(d)) throw InvalidInput("jones_V is undefined on the empty diagram");
  // (-A^3)^{2 lk} = A^{6 lk} restores invariance when components link.
  LaurentPoly w = unit_from_mult(mult, false).shifted(6 * total_linking(d));
  if (d.num_components() % 2 == 0) w = -w;
  return evaluate_at_A(w, ring);
}

inline CycloNumber jones_V(const PDCode& d, const Ring& ring, int width_limit = kDefaultWidthLimit) {
  if (!is_zero_framed(d)) throw InvalidInput("jones_V requires a zero-frame-normalized diagram");
  return jones_V_from_mult(d, bracket_mult(d, width_limit), ring);
}
inline CycloNumber jones_V(const FramedLink& L, const Ring& ring, int width_limit = kDefaultWidthLimit) {
  return jones_V(L.diagram, ring, width_limit);
}

/// q V(L+) - q^{-1} V(L-) == (s - s^{-1}) V(L0), diagrams normalized first.
inline bool skein_check(const PDCode& plus, const PDCode& minus, const PDCode& zero, const Ring& ring) {
  auto V = [&](const PDCode& d) { return jones_V(zero_frame_normalize(d), ring); };
  using C = CycloNumber;
  C lhs = C::q_power(ring, 1) * V(plus) - C::q_power(ring, -1) * V(minus);
  C rhs = (C::s_power(ring, 1) - C::s_power(ring, -1)) * V(zero);
  return lhs == rhs;
}

struct DivisibilityResult {
  LaurentPoly bracket;  // unit normalization
  int exponent = 0;     // largest e with (A^2 + A^{-2})^e dividing it
};

/// <L1 u L2^2>: components with role 1 kept, role 2 doubled, role 0 dropped.
inline DivisibilityResult double_parallel_divisibility(const PDCode& d, const std::vector<int>& role,
                                                       int width_limit = kDefaultWidthLimit) {
  PDCode c = cable(d, role);
  DivisibilityResult r;
  r.bracket = kauffman_bracket(c, width_limit);
  const LaurentPoly f(-2, {1, 0, 0, 0, 1});
  LaurentPoly cur = r.bracket;
  if (cur.is_zero()) throw InternalError("double parallel bracket vanished; divisibility exponent is unbounded");
  while (auto q = cur.divide_exact(f)) {
    cur = *q;
    ++r.exponent;
  }
  return r;
}

}  // namespace qsu2

#pragma once

// Power control for the 2-cell layered scheme via the potential graph:
// a GDoF tuple is achievable at multicast level a iff the graph has no
// negative circuit, and shortest distances from the ground vertex give the
// power exponents.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/network.hpp"
#include "gdof/rational.hpp"

namespace gdof {

struct PowerTuple {
  std::vector<Rational> r;  // flat user order, cell-major
  Rational a;

  friend bool operator==(const PowerTuple&, const PowerTuple&) = default;
};

enum class EdgeKind { E1, E2, E3, E4 };

struct PotentialEdge {
  int from = 0;
  int to = 0;
  Rational length;
  EdgeKind kind = EdgeKind::E1;
};

/// Vertex 0 is the ground u; user (l, i) is vertex 1 + i*L + l.
struct PotentialGraph {
  int K = 2;
  int L = 0;
  std::vector<PotentialEdge> edges;

  int num_vertices() const { return 1 + K * L; }
  int vertex(User u) const { return 1 + u.cell * L + u.l; }

  std::string vertex_name(int v) const {
    if (v == 0) return "u";
    const int idx = v - 1;
    return "v[" + std::to_string(idx % L + 1) + "," + std::to_string(idx / L + 1) + "]";
  }
};

namespace detail {

inline void check_power_inputs(const NetworkSpec& net, const std::vector<Rational>& d,
                               const Rational& a) {
  if (net.K() != 2) throw PreconditionError("power control is defined for 2-cell networks");
  if (static_cast<int>(d.size()) != net.num_users())
    throw DimensionError("GDoF tuple must have K*L components");
  for (const auto& x : d)
    if (x < 0) throw PreconditionError("GDoF components must be nonnegative");
  if (a < 0 || a > net.max_cross())
    throw PreconditionError("multicast level a must lie in [0, max cross strength]");
}

}  // namespace detail

inline PotentialGraph build_potential_graph(const NetworkSpec& net, const std::vector<Rational>& d,
                                            const Rational& a) {
  detail::check_power_inputs(net, d, a);
  PotentialGraph g;
  g.L = net.L();
  const int L = net.L();
  auto dd = [&](int i, int l) -> const Rational& { return d[net.user_index({l, i})]; };
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l + 1 < L; ++l)
      g.edges.push_back({g.vertex({l, i}), g.vertex({l + 1, i}), -dd(i, l), EdgeKind::E1});
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    for (int l = 0; l < L; ++l)
      g.edges.push_back({g.vertex({l, i}), g.vertex({0, j}),
                         net(i, i, l) - net(i, j, l) - dd(i, l), EdgeKind::E2});
  }
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < L; ++l)
      g.edges.push_back({g.vertex({l, i}), 0, net(i, i, l) - dd(i, l), EdgeKind::E3});
  for (int i = 0; i < 2; ++i) g.edges.push_back({0, g.vertex({0, i}), Rational(-a), EdgeKind::E4});
  return g;
}

struct Circuit {
  std::vector<int> vertices;  // closed walk v0 -> v1 -> ... -> v0 (v0 not repeated)
  Rational length;
};

struct ShortestPaths {
  std::vector<Rational> dist;
  std::optional<Circuit> negative_circuit;
};

/// Bellman-Ford from vertex 0. Every vertex is reachable from the ground.
inline ShortestPaths bellman_ford(const PotentialGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<int> pred_edge(n, -1);
  dist[0] = Rational(0);
  int touched = -1;
  for (int round = 0; round < n; ++round) {
    touched = -1;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      const auto& edge = g.edges[e];
      if (!dist[edge.from]) continue;
      Rational cand = *dist[edge.from] + edge.length;
      if (!dist[edge.to] || cand < *dist[edge.to]) {
        dist[edge.to] = cand;
        pred_edge[edge.to] = e;
        touched = edge.to;
      }
    }
    if (touched < 0) break;
  }

  ShortestPaths out;
  if (touched >= 0) {
    int v = touched;
    for (int t = 0; t < n; ++t) v = g.edges[pred_edge[v]].from;
    Circuit c;
    int w = v;
    do {
      c.vertices.push_back(w);
      c.length += g.edges[pred_edge[w]].length;
      w = g.edges[pred_edge[w]].from;
    } while (w != v);
    std::reverse(c.vertices.begin(), c.vertices.end());
    // Start the circuit at its smallest vertex for a stable rendering.
    auto first = std::min_element(c.vertices.begin(), c.vertices.end());
    std::rotate(c.vertices.begin(), first, c.vertices.end());
    out.negative_circuit = std::move(c);
    return out;
  }
  out.dist.reserve(n);
  for (auto& x : dist) out.dist.push_back(x.value_or(Rational(0)));
  return out;
}

struct FeasibilityResult {
  bool feasible = true;
  std::optional<Circuit> witness;
};

inline FeasibilityResult tin_feasible(const NetworkSpec& net, const std::vector<Rational>& d,
                                      const Rational& a) {
  ShortestPaths sp = bellman_ford(build_potential_graph(net, d, a));
  if (sp.negative_circuit) return {false, sp.negative_circuit};
  return {};
}

class InfeasiblePowerError : public PreconditionError {
 public:
  InfeasiblePowerError(const std::string& what, Circuit c)
      : PreconditionError(what), circuit(std::move(c)) {}
  Circuit circuit;
};

/// Pointwise-largest power exponents realizing d at level a: shortest-path
/// distances from the ground vertex.
inline PowerTuple recover_powers(const NetworkSpec& net, const std::vector<Rational>& d,
                                 const Rational& a) {
  PotentialGraph g = build_potential_graph(net, d, a);
  ShortestPaths sp = bellman_ford(g);
  if (sp.negative_circuit)
    throw InfeasiblePowerError("GDoF tuple is not achievable at this multicast level",
                               *sp.negative_circuit);
  PowerTuple p;
  p.a = a;
  p.r.assign(sp.dist.begin() + 1, sp.dist.end());
  return p;
}

struct PowerSlack {
  std::string constraint;
  Rational slack;  // right-hand side minus left-hand side
};

/// Every power-control inequality of the 2-cell scheme with its slack.
/// Rows involving r^[L+1] are vacuous and omitted.
inline std::vector<PowerSlack> power_slacks(const NetworkSpec& net, const std::vector<Rational>& d,
                                            const std::vector<Rational>& r, const Rational& a) {
  if (net.K() != 2) throw PreconditionError("power control is defined for 2-cell networks");
  if (static_cast<int>(d.size()) != net.num_users() || static_cast<int>(r.size()) != net.num_users())
    throw DimensionError("d and r must have K*L components");
  const int L = net.L();
  auto at = [&](const std::vector<Rational>& v, int i, int l) -> const Rational& {
    return v[net.user_index({l, i})];
  };
  auto idx = [](int l, int i) { return "[" + std::to_string(l + 1) + "," + std::to_string(i + 1) + "]"; };
  std::vector<PowerSlack> out;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    for (int l = 0; l < L; ++l) {
      if (l + 1 < L) {
        Rational gap = at(r, i, l) - at(r, i, l + 1);
        out.push_back({"d" + idx(l, i) + " <= r" + idx(l, i) + " - r" + idx(l + 1, i),
                       gap - at(d, i, l)});
        out.push_back({"0 <= r" + idx(l, i) + " - r" + idx(l + 1, i), gap});
      }
      out.push_back({"d" + idx(l, i) + " <= alpha_ii - alpha_ij + r" + idx(l, i) + " - r" + idx(0, j),
                     net(i, i, l) - net(i, j, l) + at(r, i, l) - at(r, j, 0) - at(d, i, l)});
      out.push_back({"d" + idx(l, i) + " <= alpha_ii + r" + idx(l, i),
                     net(i, i, l) + at(r, i, l) - at(d, i, l)});
    }
    out.push_back({"a <= -r" + idx(0, i), -at(r, i, 0) - a});
  }
  return out;
}

inline bool verify_power_allocation(const NetworkSpec& net, const std::vector<Rational>& d,
                                    const std::vector<Rational>& r, const Rational& a) {
  for (const auto& s : power_slacks(net, d, r, a))
    if (s.slack < 0) return false;
  return true;
}

}  // namespace gdof

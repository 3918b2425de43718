#pragma once

// Fixtures, random generators and brute-force oracles shared by the tests.
// Oracles here deliberately avoid the library code they are checking.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdof/gdof.hpp"

namespace testing_support {

using namespace gdof;

inline Rational R(const char* s) { return parse_rational(s); }

inline NetworkSpec N1() { return uniform_network({{1}, {1}}, {R("3/10")}); }
inline NetworkSpec N2() { return uniform_network({{1}, {1}}, {R("1/2")}); }
inline NetworkSpec N3() {
  return uniform_network({{R("3/5"), 1}, {R("3/5"), 1}}, {R("1/10"), R("9/20")});
}

/// SNR-ordered network, arbitrary crosses in [0, 1] on a grid.
inline NetworkSpec random_snr_net(Rng& rng, int K, int L, int steps = 10) {
  NetworkSpec net = NetworkSpec::zeros(K, L);
  for (int i = 0; i < K; ++i) {
    std::vector<Rational> d;
    for (int l = 0; l < L; ++l) d.push_back(rng.grid(0, 1, steps));
    std::sort(d.begin(), d.end());
    for (int j = 0; j < K; ++j)
      for (int l = 0; l < L; ++l) net(i, j, l) = i == j ? d[l] : rng.grid(0, 1, steps);
  }
  return net;
}

/// SNR- and SIR-ordered network, built independently of the library sampler.
inline NetworkSpec random_sir_net(Rng& rng, int K, int L, int steps = 10) {
  NetworkSpec net = NetworkSpec::zeros(K, L);
  for (int i = 0; i < K; ++i) {
    std::vector<Rational> d;
    for (int l = 0; l < L; ++l) d.push_back(rng.grid(0, 1, steps));
    std::sort(d.begin(), d.end());
    for (int l = 0; l < L; ++l) net(i, i, l) = d[l];
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      Rational gap = 0;  // alpha_ii - alpha_ij, nondecreasing in l
      for (int l = 0; l < L; ++l) {
        gap = rng.grid(gap, rmax(gap, d[l]), steps);
        net(i, j, l) = d[l] - gap;
      }
    }
  }
  return net;
}

/// Bounded system: a box plus random rows, some free variables.
inline LinSystem random_bounded_system(Rng& rng, int n, int extra_rows) {
  LinSystem s;
  for (int j = 0; j < n; ++j) {
    s.vars.push_back("x" + std::to_string(j));
    s.nonneg.push_back(rng.coin());
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> c(n);
    c[j] = 1;
    s.add_row(c, rng.uniform_int(1, 4));
    if (!s.nonneg[j]) {
      c[j] = -1;
      s.add_row(c, rng.uniform_int(0, 3));
    }
  }
  for (int r = 0; r < extra_rows; ++r) {
    std::vector<Rational> c(n);
    for (auto& x : c) x = rng.uniform_int(-2, 2);
    s.add_row(c, rng.uniform_int(-1, 4));
  }
  return s;
}

/// Gaussian elimination on a square system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> A,
                                                  std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (int k = 0; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

/// Vertices by trying every n-subset of constraints (bounds included).
inline std::vector<std::vector<Rational>> brute_vertices(const LinSystem& s) {
  const int n = s.dim();
  std::vector<LinRow> cons = s.rows;
  for (int j = 0; j < n; ++j)
    if (s.nonneg[j]) {
      LinRow r{std::vector<Rational>(n), 0};
      r.c[j] = -1;
      cons.push_back(r);
    }
  const int m = static_cast<int>(cons.size());
  std::vector<std::vector<Rational>> out;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == n) {
      std::vector<std::vector<Rational>> A;
      std::vector<Rational> b;
      for (int i : pick) {
        A.push_back(cons[i].c);
        b.push_back(cons[i].b);
      }
      auto x = solve(A, b);
      if (!x) return;
      for (const auto& r : cons) {
        Rational lhs = 0;
        for (int j = 0; j < n; ++j) lhs += r.c[j] * (*x)[j];
        if (lhs > r.b) return;
      }
      out.push_back(*x);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Max of c.x over a bounded polytope by vertex enumeration.
inline std::optional<Rational> brute_max(const LinSystem& s, const std::vector<Rational>& c) {
  std::optional<Rational> best;
  for (const auto& v : brute_vertices(s)) {
    Rational val = 0;
    for (size_t j = 0; j < c.size(); ++j) val += c[j] * v[j];
    if (!best || val > *best) best = val;
  }
  return best;
}

/// Cycle-bound rows written out directly: every ordered sequence of distinct
/// cells (first cell smallest) with a user per cell. Users not in `active`
/// contribute nothing to cumulative sums and have d forced to zero.
inline LinSystem explicit_tin_rows(const NetworkSpec& net, const std::vector<bool>& active) {
  const int K = net.K(), L = net.L(), n = K * L;
  LinSystem s(user_var_names(K, L));
  std::vector<int> cells, users;
  std::vector<bool> used(K, false);
  std::function<void()> rec = [&]() {
    if (!cells.empty()) {
      const int M = static_cast<int>(cells.size());
      std::vector<Rational> c(n);
      Rational bound = 0;
      for (int m = 0; m < M; ++m) {
        const int i = cells[m], l = users[m];
        for (int t = 0; t <= l; ++t)
          if (active[i * L + t]) c[i * L + t] = 1;
        if (M == 1) {
          bound = net(i, i, l);
        } else {
          const int ni = cells[(m + 1) % M], nl = users[(m + 1) % M];
          bound += net(i, i, l) - net(ni, i, nl);
        }
      }
      s.add_row(c, bound);
    }
    for (int i = 0; i < K; ++i) {
      if (used[i] || (!cells.empty() && i < cells[0])) continue;
      for (int l = 0; l < L; ++l) {
        if (!active[i * L + l]) continue;
        used[i] = true;
        cells.push_back(i);
        users.push_back(l);
        rec();
        cells.pop_back();
        users.pop_back();
        used[i] = false;
      }
    }
  };
  rec();
  for (int u = 0; u < n; ++u)
    if (!active[u]) {
      std::vector<Rational> c(n);
      c[u] = 1;
      s.add_row(c, 0);
    }
  return s;
}

/// TIN sum-GDoF as the maximum over all 2^(K L) active-user subsets.
inline Rational brute_tin_sum(const NetworkSpec& net) {
  const int n = net.num_users();
  Rational best = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<bool> active(n);
    for (int u = 0; u < n; ++u) active[u] = mask >> u & 1;
    auto r = lp_max(explicit_tin_rows(net, active), std::vector<Rational>(n, Rational(1)));
    if (r.status == LpStatus::OPTIMAL && r.value > best) best = r.value;
  }
  return best;
}

/// Negative-cycle test by Floyd-Warshall on the potential graph edges.
inline bool has_negative_cycle(const PotentialGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<std::optional<Rational>>> D(n, std::vector<std::optional<Rational>>(n));
  for (int v = 0; v < n; ++v) D[v][v] = Rational(0);
  for (const auto& e : g.edges)
    if (!D[e.from][e.to] || e.length < *D[e.from][e.to]) D[e.from][e.to] = e.length;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (D[i][k] && D[k][j]) {
          Rational via = *D[i][k] + *D[k][j];
          if (!D[i][j] || via < *D[i][j]) D[i][j] = via;
        }
  for (int v = 0; v < n; ++v)
    if (*D[v][v] < 0) return true;
  return false;
}

/// Submodularity in the lattice form f(A) + f(B) >= f(A|B) + f(A&B).
inline bool brute_polymatroid(const SetFunction& f) {
  const Subset N = Subset(1) << f.ground_size();
  if (f(0) != 0) return false;
  for (Subset A = 0; A < N; ++A)
    for (Subset B = 0; B < N; ++B) {
      if ((A & B) == A && f(A) > f(B)) return false;
      if (f(A) + f(B) < f(A | B) + f(A & B)) return false;
    }
  return true;
}

}  // namespace testing_support

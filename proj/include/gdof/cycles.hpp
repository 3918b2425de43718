#pragma once

// Interference cycles: ordered sequences of users from distinct cells, and the
// cycle-bound constants built from them.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/network.hpp"
#include "gdof/rational.hpp"

namespace gdof {

/// Entries are read cyclically: the successor of the last entry is the first.
/// Canonical cycles start with their smallest cell.
struct Cycle {
  std::vector<User> entries;

  int size() const { return static_cast<int>(entries.size()); }
  const User& at(int m) const {
    const int M = size();
    return entries[((m % M) + M) % M];
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Upper limit on the number of cycles enumerate_cycles will produce.
/// Covers every K <= 6, L <= 3 network.
inline constexpr std::uint64_t kMaxCycles = 150000;

inline std::uint64_t cycle_count(int K, int L) {
  // sum_m C(K,m) (m-1)! L^m
  std::uint64_t total = 0;
  for (int m = 1; m <= K; ++m) {
    long double term = 1;
    for (int t = 0; t < m; ++t) term = term * (K - t) / (t + 1);  // C(K, m)
    for (int t = 2; t < m; ++t) term *= t;                         // (m-1)!
    for (int t = 0; t < m; ++t) term *= L;
    if (term > 1e18L) return UINT64_MAX;
    total += static_cast<std::uint64_t>(term + 0.5L);
  }
  return total;
}

/// Rotates a cycle so its smallest cell comes first.
inline Cycle canonical(Cycle pi) {
  if (pi.entries.empty()) return pi;
  auto first = std::min_element(pi.entries.begin(), pi.entries.end(),
                                [](const User& a, const User& b) { return a.cell < b.cell; });
  std::rotate(pi.entries.begin(), first, pi.entries.end());
  return pi;
}

inline void validate_cycle(const NetworkSpec& net, const Cycle& pi) {
  if (pi.entries.empty()) throw PreconditionError("cycle must contain at least one user");
  std::vector<bool> seen(net.K(), false);
  for (const User& u : pi.entries) {
    if (u.cell < 0 || u.cell >= net.K() || u.l < 0 || u.l >= net.L())
      throw PreconditionError("cycle user out of range");
    if (seen[u.cell]) throw PreconditionError("cycle visits a cell twice");
    seen[u.cell] = true;
  }
}

/// All canonical cycles, ordered by length and then lexicographically by
/// their (cell, user) sequence.
inline std::vector<Cycle> enumerate_cycles(const NetworkSpec& net) {
  const int K = net.K(), L = net.L();
  if (cycle_count(K, L) > kMaxCycles)
    throw CapabilityError("cycle enumeration limit exceeded (K=" + std::to_string(K) +
                          ", L=" + std::to_string(L) + ")");
  std::vector<Cycle> out;
  out.reserve(cycle_count(K, L));

  for (int M = 1; M <= K; ++M) {
    std::vector<int> combo(M);
    for (int t = 0; t < M; ++t) combo[t] = t;
    while (true) {
      // combo[0] is the smallest cell; permute the rest.
      std::vector<int> order(combo.begin(), combo.end());
      do {
        std::vector<int> users(M, 0);
        while (true) {
          Cycle pi;
          pi.entries.reserve(M);
          for (int t = 0; t < M; ++t) pi.entries.push_back({users[t], order[t]});
          out.push_back(std::move(pi));
          int t = M - 1;
          while (t >= 0 && ++users[t] == L) users[t--] = 0;
          if (t < 0) break;
        }
      } while (std::next_permutation(order.begin() + 1, order.end()));

      int t = M - 1;
      while (t >= 0 && combo[t] == K - M + t) --t;
      if (t < 0) break;
      ++combo[t];
      for (int s = t + 1; s < M; ++s) combo[s] = combo[s - 1] + 1;
    }
  }

  auto key_less = [](const Cycle& a, const Cycle& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (int m = 0; m < a.size(); ++m) {
      const User &x = a.entries[m], &y = b.entries[m];
      if (x.cell != y.cell) return x.cell < y.cell;
      if (x.l != y.l) return x.l < y.l;
    }
    return false;
  };
  std::stable_sort(out.begin(), out.end(), key_less);
  return out;
}

/// Cycle bound constant of the interfering broadcast channel.
inline Rational delta(const NetworkSpec& net, const Cycle& pi) {
  validate_cycle(net, pi);
  const int M = pi.size();
  if (M == 1) return net.direct(pi.at(0).cell, pi.at(0).l);
  Rational total = 0;
  for (int m = 0; m < M; ++m) {
    const User& cur = pi.at(m);
    const User& next = pi.at(m + 1);
    total += net.direct(cur.cell, cur.l) - net(next.cell, cur.cell, next.l);
  }
  return total;
}

/// Cooperative (MISO-BC) cycle bound constant; m is a 0-based position.
inline Rational delta_plus(const NetworkSpec& net, const Cycle& pi, int m) {
  if (m < 0 || m >= pi.size()) throw PreconditionError("delta_plus: position out of range");
  Rational d = delta(net, pi);
  if (pi.size() == 1) return d;
  const User& cur = pi.at(m);
  const User& next = pi.at(m + 1);
  return d + net(next.cell, cur.cell, next.l);
}

/// Participating users together with every weaker user of the same cell,
/// sorted by (cell, l).
inline std::vector<User> cycle_user_set(const Cycle& pi) {
  std::vector<User> out;
  for (const User& u : pi.entries)
    for (int s = 0; s <= u.l; ++s) out.push_back({s, u.cell});
  std::sort(out.begin(), out.end(), [](const User& a, const User& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.l < b.l;
  });
  return out;
}

}  // namespace gdof

#pragma once

// Set functions over the user universe, polymatroid checks and the
// polyhedra they describe. Subsets are bitmasks over flat user indices
// (cell-major, bit i*L + l for user (l, i)).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/network.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/random.hpp"
#include "gdof/rational.hpp"

namespace gdof {

using Subset = std::uint64_t;

struct SetFunction {
  int K = 0;
  int L = 0;
  std::function<Rational(Subset)> eval;

  int ground_size() const { return K * L; }
  Subset full() const { return ground_size() >= 64 ? ~Subset(0) : (Subset(1) << ground_size()) - 1; }
  Rational operator()(Subset s) const { return eval(s); }
};

/// Largest 1-based user index touched in `cell`, or 0 if the cell is untouched.
inline int top_user(Subset s, int cell, int L) {
  for (int l = L - 1; l >= 0; --l)
    if (s >> (cell * L + l) & 1) return l + 1;
  return 0;
}

/// Bits of the padding users (see padding_users).
inline Subset padding_mask(const NetworkSpec& net) {
  const auto pad = padding_users(net);
  Subset m = 0;
  for (int i = 0; i < net.K(); ++i)
    for (int l = 0; l < net.L(); ++l)
      if (pad[i][l]) m |= Subset(1) << net.user_index({l, i});
  return m;
}

namespace detail {

inline void require_two_cells(const NetworkSpec& net, const char* what) {
  if (net.K() != 2) throw PreconditionError(std::string(what) + " requires a 2-cell network");
}

inline void require_multicast_level(const NetworkSpec& net, const Rational& a) {
  if (a < 0 || a > net.max_cross())
    throw PreconditionError("multicast level a must lie in [0, max cross strength]");
}

}  // namespace detail

/// Largest multicast level at which f_ptin_prime is a polymatroid on an SLS
/// net: above the weakest direct strength a singleton value turns negative.
inline Rational polymatroid_level_cap(const NetworkSpec& net) {
  const auto pad = padding_users(net);
  Rational cap = net.max_cross();
  for (int i = 0; i < net.K(); ++i)
    for (int l = 0; l < net.L(); ++l)
      if (!pad[i][l]) {
        cap = rmin(cap, net.direct(i, l));
        break;
      }
  return cap;
}

/// Set function of the tightened 2-cell TIN region at multicast level a,
/// four-case form driven by the top touched user of each cell. Padding users
/// count as untouched.
inline SetFunction f_ptin_prime(const NetworkSpec& net, const Rational& a) {
  detail::require_two_cells(net, "f_ptin_prime");
  detail::require_multicast_level(net, a);
  if (!in_regime(net, Regime::SLS) || !net.is_snr_ordered())
    throw PreconditionError("f_ptin_prime requires an SNR-ordered network in the SLS regime");
  const int L = net.L();
  const Subset real = ~padding_mask(net);
  return {2, L, [net, a, L, real](Subset s) -> Rational {
            s &= real;
            const int s1 = top_user(s, 0, L), s2 = top_user(s, 1, L);
            if (s1 == 0 && s2 == 0) return 0;
            if (s2 == 0) return net(0, 0, s1 - 1) - rmax(net(0, 1, s1 - 1), a);
            if (s1 == 0) return net(1, 1, s2 - 1) - rmax(net(1, 0, s2 - 1), a);
            const Rational& x12 = net(0, 1, s1 - 1);
            const Rational& x21 = net(1, 0, s2 - 1);
            Rational m = rmax(rmax(x12 + a, x21 + a), rmax(Rational(2 * a), Rational(x12 + x21)));
            return net(0, 0, s1 - 1) + net(1, 1, s2 - 1) - m;
          }};
}

/// delta_i^m(s) with m in {1, 2} and s a 1-based user index (0 = untouched).
inline Rational delta_term(const NetworkSpec& net, const Rational& a, int i, int m, int s) {
  if (s == 0) return 0;
  const int j = 1 - i;
  return m == 1 ? Rational(net(i, i, s - 1) - net(i, j, s - 1)) : Rational(net(i, i, s - 1) - a);
}

/// Same function as f_ptin_prime, written as min over (m1, m2) of
/// delta_1^{m1}(s1) + delta_2^{m2}(s2).
inline SetFunction f_ptin_prime_delta(const NetworkSpec& net, const Rational& a) {
  detail::require_two_cells(net, "f_ptin_prime_delta");
  const int L = net.L();
  const Subset real = ~padding_mask(net);
  return {2, L, [net, a, L, real](Subset s) -> Rational {
            s &= real;
            const int s1 = top_user(s, 0, L), s2 = top_user(s, 1, L);
            std::optional<Rational> best;
            for (int m1 : {1, 2})
              for (int m2 : {1, 2}) {
                Rational v = delta_term(net, a, 0, m1, s1) + delta_term(net, a, 1, m2, s2);
                if (!best || v < *best) best = v;
              }
            return *best;
          }};
}

/// a on every nonempty subset.
inline SetFunction f_mul(int K, int L, const Rational& a) {
  if (a < 0) throw PreconditionError("f_mul requires a >= 0");
  return {K, L, [a](Subset s) -> Rational { return s ? a : Rational(0); }};
}

/// Common cross-link strength of a homogeneous network; throws otherwise.
inline Rational homogeneous_cross(const NetworkSpec& net) {
  std::optional<Rational> beta;
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j)
      if (i != j)
        for (int l = 0; l < net.L(); ++l) {
          if (!beta) beta = net(i, j, l);
          if (net(i, j, l) != *beta)
            throw PreconditionError("network does not have homogeneous inter-cell interference");
        }
  return beta.value_or(Rational(0));
}

/// Sum over touched cells of (alpha_i^[s_i] - beta).
inline SetFunction f_homog(const NetworkSpec& net, const Rational& beta) {
  if (net.K() > 1 && homogeneous_cross(net) != beta)
    throw PreconditionError("f_homog: beta differs from the network's cross strength");
  for (int i = 0; i < net.K(); ++i)
    for (int l = 0; l < net.L(); ++l)
      if (net.direct(i, l) < beta) throw PreconditionError("f_homog requires beta <= every direct strength");
  const int K = net.K(), L = net.L();
  return {K, L, [net, beta, K, L](Subset s) -> Rational {
            Rational total = 0;
            for (int i = 0; i < K; ++i)
              if (int t = top_user(s, i, L)) total += net.direct(i, t - 1) - beta;
            return total;
          }};
}

/// Explicit table indexed by subset mask.
inline SetFunction f_table(int K, int L, std::vector<Rational> table) {
  if (table.size() != (std::size_t(1) << (K * L))) throw DimensionError("table must have 2^(K*L) entries");
  return {K, L, [t = std::move(table)](Subset s) -> Rational { return t[s]; }};
}

inline SetFunction polymatroid_sum(const SetFunction& f, const SetFunction& g) {
  if (f.K != g.K || f.L != g.L) throw DimensionError("polymatroid_sum: ground sets differ");
  return {f.K, f.L, [f, g](Subset s) -> Rational { return f(s) + g(s); }};
}

struct PolymatroidCheck {
  bool normalized = true;
  bool monotone = true;
  bool submodular = true;
  bool exhaustive = true;
  /// Monotonicity failure: f(S) > f(S + k).
  std::optional<std::pair<Subset, int>> monotone_witness;
  /// Submodularity failure: f(S+k) - f(S) < f(S+k+j) - f(S+j).
  struct SubmodularWitness {
    Subset S;
    int k, j;
  };
  std::optional<SubmodularWitness> submodular_witness;

  bool ok() const { return normalized && monotone && submodular; }
};

inline constexpr int kExhaustiveGround = 16;

/// Normalization, monotonicity and submodularity (diminishing marginal
/// returns). Exhaustive for ground sets up to 16 users; sampled beyond.
inline PolymatroidCheck check_polymatroid(const SetFunction& f, int samples = 20000,
                                          std::uint64_t seed = 1) {
  PolymatroidCheck out;
  const int n = f.ground_size();
  out.normalized = f(0) == 0;

  if (n <= kExhaustiveGround) {
    const Subset count = Subset(1) << n;
    std::vector<Rational> table(count);
    for (Subset s = 0; s < count; ++s) table[s] = f(s);
    for (Subset s = 0; s < count && out.monotone; ++s)
      for (int k = 0; k < n; ++k)
        if (!(s >> k & 1) && table[s | Subset(1) << k] < table[s]) {
          out.monotone = false;
          out.monotone_witness = {s, k};
          break;
        }
    for (Subset s = 0; s < count && out.submodular; ++s)
      for (int k = 0; k < n && out.submodular; ++k) {
        if (s >> k & 1) continue;
        const Subset sk = s | Subset(1) << k;
        const Rational gain = table[sk] - table[s];
        for (int j = 0; j < n; ++j) {
          if (j == k || (s >> j & 1)) continue;
          const Subset sj = s | Subset(1) << j;
          if (gain < table[sk | sj] - table[sj]) {
            out.submodular = false;
            out.submodular_witness = PolymatroidCheck::SubmodularWitness{s, k, j};
            break;
          }
        }
      }
    return out;
  }

  out.exhaustive = false;
  Rng rng(seed);
  for (int t = 0; t < samples; ++t) {
    Subset s = rng.next() & f.full();
    const int k = static_cast<int>(rng.uniform_int(0, n - 1));
    int j = static_cast<int>(rng.uniform_int(0, n - 2));
    if (j >= k) ++j;
    s &= ~(Subset(1) << k);
    s &= ~(Subset(1) << j);
    const Subset sk = s | Subset(1) << k, sj = s | Subset(1) << j;
    if (out.monotone && f(sk) < f(s)) {
      out.monotone = false;
      out.monotone_witness = {s, k};
    }
    if (out.submodular && f(sk) - f(s) < f(sk | sj) - f(sj)) {
      out.submodular = false;
      out.submodular_witness = PolymatroidCheck::SubmodularWitness{s, k, j};
    }
  }
  return out;
}

inline constexpr int kRegionOfGround = 10;

/// {x >= 0 : x(S) <= f(S) for every nonempty S}, one row per subset in
/// increasing mask order.
inline LinSystem region_of(const SetFunction& f) {
  const int n = f.ground_size();
  if (n > kRegionOfGround)
    throw CapabilityError("region_of: ground set larger than " + std::to_string(kRegionOfGround));
  LinSystem sys(user_var_names(f.K, f.L));
  for (Subset s = 1; s < (Subset(1) << n); ++s) {
    std::vector<Rational> c(n);
    for (int u = 0; u < n; ++u)
      if (s >> u & 1) c[u] = 1;
    sys.add_row(std::move(c), f(s));
  }
  return sys;
}

}  // namespace gdof

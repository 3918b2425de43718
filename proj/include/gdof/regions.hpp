#pragma once

// GDoF regions as linear systems over the per-user variables d[l,i], and the
// sum-GDoF values derived from them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdof/cycles.hpp"
#include "gdof/errors.hpp"
#include "gdof/network.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/polymatroid.hpp"
#include "gdof/rational.hpp"

namespace gdof {

namespace detail {

inline void require_snr_ordered(const NetworkSpec& net, const char* what) {
  if (!net.is_snr_ordered())
    throw PreconditionError(std::string(what) + " requires an SNR-ordered network");
}

/// Coefficients of sum over the given users of the cumulative d-bar_k^[l_k].
inline std::vector<Rational> cumulative_coeffs(const NetworkSpec& net,
                                               const std::vector<User>& tops) {
  std::vector<Rational> c(net.num_users());
  for (const User& u : tops)
    for (int s = 0; s <= u.l; ++s) c[net.user_index({s, u.cell})] += 1;
  return c;
}

inline Rational max_of(std::initializer_list<Rational> xs) {
  Rational m = *xs.begin();
  for (const auto& x : xs) m = rmax(m, x);
  return m;
}

/// Rows d_u <= 0 for the padding users, with `extra` trailing zero coefficients.
inline void pin_padding(const NetworkSpec& net, LinSystem& sys, int extra = 0) {
  const auto pad = padding_users(net);
  for (int i = 0; i < net.K(); ++i)
    for (int l = 0; l < net.L(); ++l)
      if (pad[i][l]) {
        std::vector<Rational> c(net.num_users() + extra);
        c[net.user_index({l, i})] = 1;
        sys.add_row(std::move(c), 0);
      }
}

/// Calls row(pi) for every cycle avoiding padding users, and pins each
/// padding user to zero rate.
template <class Row>
inline LinSystem cycle_rows(const NetworkSpec& net, Row&& row) {
  const auto pad = padding_users(net);
  LinSystem sys(user_var_names(net.K(), net.L()));
  for (const Cycle& pi : enumerate_cycles(net)) {
    bool real = true;
    for (const User& u : pi.entries) real = real && !pad[u.cell][u.l];
    if (real) row(sys, pi);
  }
  pin_padding(net, sys);
  return merge_parallel_rows(sys);
}

}  // namespace detail

/// Every cycle pi contributes sum over pi of d-bar <= delta(pi). Rows with the
/// same left-hand side are merged keeping the smallest bound. Padding users
/// (see padding_users) are held at zero instead.
inline LinSystem ptin_region(const NetworkSpec& net) {
  detail::require_snr_ordered(net, "ptin_region");
  return detail::cycle_rows(net, [&](LinSystem& sys, const Cycle& pi) {
    sys.add_row(detail::cumulative_coeffs(net, pi.entries), delta(net, pi));
  });
}

/// Every cycle pi and position m contribute sum over pi of d-bar <= delta_plus(pi, m).
inline LinSystem sls_outer_region(const NetworkSpec& net) {
  detail::require_snr_ordered(net, "sls_outer_region");
  return detail::cycle_rows(net, [&](LinSystem& sys, const Cycle& pi) {
    auto c = detail::cumulative_coeffs(net, pi.entries);
    for (int m = 0; m < pi.size(); ++m) sys.add_row(c, delta_plus(net, pi, m));
  });
}

/// Maximum of the total GDoF over a region; the region must be bounded and
/// nonempty.
inline Rational sum_gdof(const LinSystem& sys) {
  LpResult res = lp_max(sys, std::vector<Rational>(sys.dim(), Rational(1)));
  if (res.status != LpStatus::OPTIMAL) throw PreconditionError("sum-GDoF of an unbounded or empty region");
  return res.value;
}

/// Upper limit on the number of single-user-per-cell selections examined by
/// tin_sum_gdof outside the CTIN regime.
inline constexpr std::uint64_t kMaxSelections = 5000;

/// TIN-achievable sum-GDoF. In the CTIN regime this is the LP over the PTIN
/// region. Otherwise the TIN region is the union of PTIN regions of all
/// active-user subsets; the maximum over that union is attained with at most
/// one active user per cell, so only those selections are evaluated.
inline Rational tin_sum_gdof(const NetworkSpec& net) {
  detail::require_snr_ordered(net, "tin_sum_gdof");
  if (!check_sir_order(net).ok) throw PreconditionError("tin_sum_gdof requires an SIR-ordered network");
  if (in_regime(net, Regime::CTIN)) return sum_gdof(ptin_region(net));

  const int K = net.K(), L = net.L();
  std::uint64_t total = 1;
  for (int i = 0; i < K; ++i) {
    total *= static_cast<std::uint64_t>(L + 1);
    if (total > kMaxSelections + 1) throw CapabilityError("tin_sum_gdof: too many user selections");
  }

  Rational best = 0;
  std::vector<int> pick(K, 0);  // 0 = cell inactive, otherwise 1-based user
  while (true) {
    int t = 0;
    while (t < K && ++pick[t] > L) pick[t++] = 0;
    if (t == K) break;
    std::vector<int> cells;
    for (int i = 0; i < K; ++i)
      if (pick[i]) cells.push_back(i);
    const int k = static_cast<int>(cells.size());
    NetworkSpec sub = NetworkSpec::zeros(k, 1);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) sub(x, y, 0) = net(cells[x], cells[y], pick[cells[x]] - 1);
    best = rmax(best, sum_gdof(ptin_region(sub)));
  }
  return best;
}

/// Sum-GDoF of the cooperative outer bound region.
inline Rational mbc_outer_sum_gdof(const NetworkSpec& net) {
  return sum_gdof(sls_outer_region(net));
}

/// Multicast layer at level a: total of all components <= a.
inline LinSystem mul_region(const NetworkSpec& net, const Rational& a) {
  detail::require_multicast_level(net, a);
  LinSystem sys(user_var_names(net.K(), net.L()));
  sys.add_row(std::vector<Rational>(net.num_users(), Rational(1)), a);
  return sys;
}

namespace detail {

/// Shared pair bound of the 2-cell TIN regions at level a.
inline Rational two_cell_pair_bound(const NetworkSpec& net, int l1, int l2, const Rational& a) {
  const Rational& x12 = net(0, 1, l1);
  const Rational& x21 = net(1, 0, l2);
  return net(0, 0, l1) + net(1, 1, l2) -
         max_of({x12 + a, x21 + a, Rational(2 * a), Rational(x12 + x21)});
}

/// Single rows per user and pair rows per user pair; rows whose top user is
/// padding are replaced by pinning that user to zero.
template <class Single, class Pair>
LinSystem two_cell_system(const NetworkSpec& net, Single single, Pair pair) {
  const auto pad = padding_users(net);
  LinSystem sys(user_var_names(2, net.L()));
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < net.L(); ++l)
      if (!pad[i][l]) sys.add_row(cumulative_coeffs(net, {{l, i}}), single(i, l));
  for (int l1 = 0; l1 < net.L(); ++l1)
    for (int l2 = 0; l2 < net.L(); ++l2)
      if (!pad[0][l1] && !pad[1][l2])
        sys.add_row(cumulative_coeffs(net, {{l1, 0}, {l2, 1}}), pair(l1, l2));
  pin_padding(net, sys);
  return sys;
}

}  // namespace detail

/// 2-cell TIN region with every single-cell layer capped at alpha_ii - a.
inline LinSystem ptin_a_region(const NetworkSpec& net, const Rational& a) {
  detail::require_two_cells(net, "ptin_a_region");
  detail::require_multicast_level(net, a);
  return detail::two_cell_system(
      net, [&](int i, int l) { return Rational(net(i, i, l) - a); },
      [&](int l1, int l2) { return detail::two_cell_pair_bound(net, l1, l2, a); });
}

/// Tightened variant: single rows use alpha_ii - max(alpha_ij, a).
inline LinSystem ptin_prime_region(const NetworkSpec& net, const Rational& a) {
  detail::require_two_cells(net, "ptin_prime_region");
  detail::require_multicast_level(net, a);
  return detail::two_cell_system(
      net, [&](int i, int l) { return Rational(net(i, i, l) - rmax(net(i, 1 - i, l), a)); },
      [&](int l1, int l2) { return detail::two_cell_pair_bound(net, l1, l2, a); });
}

/// Row-wise sum of the tightened TIN region and the multicast layer at level a.
inline LinSystem direct_sum_region(const NetworkSpec& net, const Rational& a) {
  detail::require_two_cells(net, "direct_sum_region");
  detail::require_multicast_level(net, a);
  return detail::two_cell_system(
      net,
      [&](int i, int l) { return Rational(net(i, i, l) - positive_part(net(i, 1 - i, l) - a)); },
      [&](int l1, int l2) {
        const Rational& x12 = net(0, 1, l1);
        const Rational& x21 = net(1, 0, l2);
        return Rational(net(0, 0, l1) + net(1, 1, l2) -
                        detail::max_of({x12, x21, a, Rational(x12 + x21 - a)}));
      });
}

/// Name of the multicast level variable in parametric systems.
inline const std::string kLevelVar = "a";

/// The direct-sum rows over (d, a), with each max expanded into one row per
/// term, plus 0 <= a <= max cross strength.
inline LinSystem two_cell_parametric_system(const NetworkSpec& net) {
  detail::require_two_cells(net, "two_cell_parametric_system");
  const int L = net.L(), n = 2 * L;
  auto names = user_var_names(2, L);
  names.push_back(kLevelVar);
  LinSystem sys(names);
  auto row = [&](std::vector<User> tops, int a_coeff, Rational rhs) {
    auto c = detail::cumulative_coeffs(net, tops);
    c.push_back(Rational(a_coeff));
    sys.add_row(std::move(c), std::move(rhs));
  };
  const auto pad = padding_users(net);
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < L; ++l) {
      if (pad[i][l]) continue;
      row({{l, i}}, 0, net(i, i, l));
      row({{l, i}}, -1, net(i, i, l) - net(i, 1 - i, l));
    }
  for (int l1 = 0; l1 < L; ++l1)
    for (int l2 = 0; l2 < L; ++l2) {
      if (pad[0][l1] || pad[1][l2]) continue;
      const Rational S = net(0, 0, l1) + net(1, 1, l2);
      const Rational& x12 = net(0, 1, l1);
      const Rational& x21 = net(1, 0, l2);
      row({{l1, 0}, {l2, 1}}, 0, S - x12);
      row({{l1, 0}, {l2, 1}}, 0, S - x21);
      row({{l1, 0}, {l2, 1}}, 1, S);
      row({{l1, 0}, {l2, 1}}, -1, S - x12 - x21);
    }
  detail::pin_padding(net, sys, 1);
  std::vector<Rational> cap(n + 1);
  cap[n] = 1;
  sys.add_row(std::move(cap), net.max_cross());
  return sys;
}

/// Achievable region of the simplified 2-cell layered scheme: the multicast
/// level is projected out of the parametric system and redundant rows dropped.
inline LinSystem two_cell_sls_achievable(const NetworkSpec& net) {
  detail::require_two_cells(net, "two_cell_sls_achievable");
  detail::require_snr_ordered(net, "two_cell_sls_achievable");
  if (!in_regime(net, Regime::SLS))
    throw PreconditionError("two_cell_sls_achievable requires a network in the SLS regime");
  return remove_redundant(fm_eliminate(two_cell_parametric_system(net), kLevelVar));
}

/// The two 2-cell outer-bound families: d-bar_i <= alpha_ii and
/// d-bar_1 + d-bar_2 <= alpha_11 + alpha_22 - max(alpha_12, alpha_21).
inline LinSystem two_cell_outer_families(const NetworkSpec& net) {
  detail::require_two_cells(net, "two_cell_outer_families");
  return detail::two_cell_system(
      net, [&](int i, int l) { return net(i, i, l); },
      [&](int l1, int l2) {
        return Rational(net(0, 0, l1) + net(1, 1, l2) - rmax(net(0, 1, l1), net(1, 0, l2)));
      });
}

/// Simplified outer bound under homogeneous cross strength beta: for every
/// nonempty cell set and user choice, sum of d-bar <= (1-|set|) beta + sum alpha.
inline LinSystem homog_outer_region(const NetworkSpec& net) {
  detail::require_snr_ordered(net, "homog_outer_region");
  const Rational beta = homogeneous_cross(net);
  const int K = net.K(), L = net.L();
  LinSystem sys(user_var_names(K, L));
  for (std::uint64_t cells = 1; cells < (std::uint64_t(1) << K); ++cells) {
    std::vector<int> members;
    for (int i = 0; i < K; ++i)
      if (cells >> i & 1) members.push_back(i);
    std::vector<int> pick(members.size(), 0);
    while (true) {
      std::vector<User> tops;
      Rational rhs = Rational(1 - static_cast<long>(members.size())) * beta;
      for (size_t t = 0; t < members.size(); ++t) {
        tops.push_back({pick[t], members[t]});
        rhs += net.direct(members[t], pick[t]);
      }
      sys.add_row(detail::cumulative_coeffs(net, tops), rhs);
      size_t t = 0;
      while (t < pick.size() && ++pick[t] == L) pick[t++] = 0;
      if (t == pick.size()) break;
    }
  }
  return sys;
}

struct HomogCheck {
  LinSystem outer;
  LinSystem achievable;
  bool equal = false;
  std::optional<std::vector<Rational>> witness;
};

/// Compares the simplified outer bound with the polymatroid-sum achievable
/// region f_mul(beta) + f_homog(beta).
inline HomogCheck homog_check(const NetworkSpec& net) {
  detail::require_snr_ordered(net, "homog_check");
  const Rational beta = homogeneous_cross(net);
  for (int i = 0; i < net.K(); ++i)
    if (net.direct(i, 0) < beta)
      throw PreconditionError("homog_check requires every direct strength >= the cross strength");
  HomogCheck out;
  out.outer = homog_outer_region(net);
  out.achievable =
      region_of(polymatroid_sum(f_mul(net.K(), net.L(), beta), f_homog(net, beta)));
  EqualsResult eq = equals(out.outer, out.achievable);
  out.equal = eq.equal;
  out.witness = eq.witness;
  return out;
}

}  // namespace gdof

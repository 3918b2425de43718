#pragma once

// K-cell, L-users-per-cell network model: the channel-strength tensor
// alpha[i][j][l] (BS-j -> UE-(l,i)), user orderings and regime classifiers.
//
// Indices are 0-based in code. User (l, i) is the l-th weakest user of cell i.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/rational.hpp"

namespace gdof {

struct User {
  int l = 0;     // position within the cell, ascending SNR
  int cell = 0;  // cell index i

  friend bool operator==(const User&, const User&) = default;
  friend auto operator<=>(const User&, const User&) = default;
};

class NetworkSpec {
 public:
  NetworkSpec() = default;

  /// alpha is row-major over (i, j, l).
  NetworkSpec(int K, int L, std::vector<Rational> alpha)
      : K_(K), L_(L), alpha_(std::move(alpha)) {
    if (K_ < 1 || L_ < 1) throw DimensionError("K and L must be at least 1");
    if (alpha_.size() != static_cast<size_t>(K_) * K_ * L_)
      throw DimensionError("alpha must have exactly K*K*L entries");
    for (const auto& a : alpha_)
      if (a < 0) throw PreconditionError("channel strengths must be nonnegative");
  }

  /// Zero network of the given shape.
  static NetworkSpec zeros(int K, int L) {
    return NetworkSpec(K, L, std::vector<Rational>(static_cast<size_t>(K) * K * L));
  }

  int K() const { return K_; }
  int L() const { return L_; }
  int num_users() const { return K_ * L_; }

  const Rational& operator()(int i, int j, int l) const { return alpha_[offset(i, j, l)]; }
  Rational& operator()(int i, int j, int l) { return alpha_[offset(i, j, l)]; }

  const Rational& direct(int i, int l) const { return (*this)(i, i, l); }

  /// Flat user index, cell-major: (l, i) -> i*L + l.
  int user_index(User u) const { return u.cell * L_ + u.l; }
  User user_at(int index) const { return {index % L_, index / L_}; }

  const std::vector<Rational>& raw() const { return alpha_; }

  /// Largest cross-link strength alpha_ij^[l], i != j (0 when K = 1).
  Rational max_cross() const {
    Rational m = 0;
    for (int i = 0; i < K_; ++i)
      for (int j = 0; j < K_; ++j)
        if (i != j)
          for (int l = 0; l < L_; ++l) m = rmax(m, (*this)(i, j, l));
    return m;
  }

  bool is_snr_ordered() const {
    for (int i = 0; i < K_; ++i)
      for (int l = 1; l < L_; ++l)
        if (direct(i, l) < direct(i, l - 1)) return false;
    return true;
  }

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;

 private:
  size_t offset(int i, int j, int l) const {
    return (static_cast<size_t>(i) * K_ + j) * L_ + l;
  }

  int K_ = 0;
  int L_ = 0;
  std::vector<Rational> alpha_;
};

/// Name of the GDoF variable of user (l, i), 1-based as in "d[l,i]".
inline std::string user_var_name(User u) {
  return "d[" + std::to_string(u.l + 1) + "," + std::to_string(u.cell + 1) + "]";
}

/// Variable names of all users in flat (cell-major) order.
inline std::vector<std::string> user_var_names(int K, int L) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(K) * L);
  for (int i = 0; i < K; ++i)
    for (int l = 0; l < L; ++l) names.push_back(user_var_name({l, i}));
  return names;
}

/// Builds a network whose direct links are directs[i][l] and whose cross links
/// are all equal to `cross` (handy for symmetric fixtures).
inline NetworkSpec uniform_network(const std::vector<std::vector<Rational>>& directs,
                                   const std::vector<Rational>& cross_per_user) {
  const int K = static_cast<int>(directs.size());
  const int L = K ? static_cast<int>(directs[0].size()) : 0;
  NetworkSpec net = NetworkSpec::zeros(K, L);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      for (int l = 0; l < L; ++l)
        net(i, j, l) = i == j ? directs[i][l] : cross_per_user[l];
  return net;
}

struct NormalizedNetwork {
  NetworkSpec net;
  /// permutation[i][new_l] = original l.
  std::vector<std::vector<int>> permutation;
};

/// Stable-sorts the users of every cell by direct strength.
inline NormalizedNetwork normalize_user_order(const NetworkSpec& net) {
  NormalizedNetwork out{NetworkSpec::zeros(net.K(), net.L()), {}};
  out.permutation.resize(net.K());
  for (int i = 0; i < net.K(); ++i) {
    auto& perm = out.permutation[i];
    perm.resize(net.L());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return net.direct(i, a) < net.direct(i, b); });
    for (int j = 0; j < net.K(); ++j)
      for (int l = 0; l < net.L(); ++l) out.net(i, j, l) = net(i, j, perm[l]);
  }
  return out;
}

struct SirViolation {
  int i = 0, j = 0, l = 0;
};

struct SirCheck {
  bool ok = true;
  std::optional<SirViolation> witness;
};

/// SIR order: 0 <= a_ii^[1]-a_ij^[1] <= ... <= a_ii^[L]-a_ij^[L] for all i != j.
/// The witness names the first user l whose inequality fails.
inline SirCheck check_sir_order(const NetworkSpec& net) {
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j) {
      if (i == j) continue;
      Rational prev = 0;
      for (int l = 0; l < net.L(); ++l) {
        Rational diff = net.direct(i, l) - net(i, j, l);
        if (diff < prev) return {false, SirViolation{i, j, l}};
        prev = diff;
      }
    }
  return {};
}

enum class Regime { TIN, CTIN, SLS, WEAK, GENERAL };

inline std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::TIN: return "TIN";
    case Regime::CTIN: return "CTIN";
    case Regime::SLS: return "SLS";
    case Regime::WEAK: return "WEAK";
    case Regime::GENERAL: return "GENERAL";
  }
  return "GENERAL";
}

inline Regime parse_regime(std::string_view s) {
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS, Regime::WEAK, Regime::GENERAL})
    if (regime_name(r) == s) return r;
  std::string lower(s);
  for (auto& c : lower) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS, Regime::WEAK, Regime::GENERAL})
    if (regime_name(r) == lower) return r;
  throw PreconditionError("unknown regime '" + std::string(s) + "'");
}

struct RegimeLabel {
  bool in_weak = false;
  bool in_tin = false;
  bool in_ctin = false;
  bool in_sls = false;
  Regime strongest = Regime::GENERAL;

  friend bool operator==(const RegimeLabel&, const RegimeLabel&) = default;
};

/// pad[i][l] marks padding users: every strength zero, in a cell that also has
/// a user with a nonzero strength. Padding users do not affect any GDoF result.
inline std::vector<std::vector<char>> padding_users(const NetworkSpec& net) {
  const int K = net.K(), L = net.L();
  std::vector<std::vector<char>> pad(K, std::vector<char>(L, 1));
  for (int i = 0; i < K; ++i) {
    bool real = false;
    for (int l = 0; l < L; ++l) {
      for (int m = 0; m < K; ++m)
        if (net(i, m, l) != 0) pad[i][l] = 0;
      real = real || !pad[i][l];
    }
    if (!real) std::fill(pad[i].begin(), pad[i].end(), 0);
  }
  return pad;
}

/// Calls visit(slack) once per defining inequality of `regime`, where the
/// network is in the regime iff every slack is >= 0. Every slack is affine in
/// the cross-link strengths (direct links held fixed).
///
/// Inter-cell conditions are applied to every user l_i; intra-cell conditions
/// to l_i >= 2 (1-based). Users whose strengths are all zero are padding and
/// enter only the intra-cell conditions, unless their whole cell is zero. Cells j, k range over all cells other than i and may
/// coincide, in which case alpha_jk is a direct link.
template <class Visit>
void for_each_regime_condition(const NetworkSpec& net, Regime regime, Visit&& visit,
                               const NetworkSpec* padding_from = nullptr) {
  const int K = net.K(), L = net.L();
  const auto pad = padding_users(padding_from ? *padding_from : net);
  auto a = [&](int i, int j, int l) -> const Rational& { return net(i, j, l); };

  if (regime == Regime::WEAK) {
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) {
        if (i == j) continue;
        visit(Rational(a(i, i, 0) - a(i, j, 0)));
        for (int l = 1; l < L; ++l)
          visit(Rational(a(i, i, l) - a(i, j, l) - a(i, i, l - 1) + a(i, j, l - 1)));
      }
    return;
  }
  if (regime == Regime::GENERAL) return;

  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      for (int li = 0; li < L; ++li) {
        const Rational& aii = a(i, i, li);
        switch (pad[i][li] ? Regime::GENERAL : regime) {
          case Regime::TIN:
            // a_ii >= a_ij + a_ki^[l_k], k != i
            for (int k = 0; k < K; ++k) {
              if (k == i) continue;
              for (int lk = 0; lk < L; ++lk)
                if (!pad[k][lk]) visit(Rational(aii - a(i, j, li) - a(k, i, lk)));
            }
            break;
          case Regime::CTIN:
            // a_ii >= max(a_ij + a_ji^[l_j], a_ik + a_ji^[l_j] - a_jk^[l_j])
            for (int lj = 0; lj < L; ++lj) {
              if (pad[j][lj]) continue;
              visit(Rational(aii - a(i, j, li) - a(j, i, lj)));
              for (int k = 0; k < K; ++k) {
                if (k == i) continue;
                visit(Rational(aii - a(i, k, li) - a(j, i, lj) + a(j, k, lj)));
              }
            }
            break;
          case Regime::SLS:
            // a_ii >= max(a_ij, a_ki^[l_k], a_ik + a_ji^[l_j] - a_jk^[l_j])
            visit(Rational(aii - a(i, j, li)));
            for (int lj = 0; lj < L; ++lj) {
              if (pad[j][lj]) continue;
              visit(Rational(aii - a(j, i, lj)));
              for (int k = 0; k < K; ++k) {
                if (k == i) continue;
                visit(Rational(aii - a(i, k, li) - a(j, i, lj) + a(j, k, lj)));
              }
            }
            break;
          default:
            break;
        }
        if (li == 0) continue;
        // Intra-cell conditions.
        const Rational& prev = a(i, i, li - 1);
        if (regime == Regime::TIN) {
          visit(Rational(aii - a(i, j, li) - prev + positive_part(a(i, j, li - 1) - a(i, j, li))));
        } else {
          visit(Rational(aii - a(i, j, li) - prev + a(i, j, li - 1)));
        }
      }
    }
}

inline bool in_regime(const NetworkSpec& net, Regime regime) {
  bool ok = true;
  for_each_regime_condition(net, regime, [&](const Rational& s) {
    if (s < 0) ok = false;
  });
  return ok;
}

/// Smallest slack of the regime's conditions; nullopt when the regime imposes
/// no condition (e.g. K = 1).
inline std::optional<Rational> regime_margin(const NetworkSpec& net, Regime regime) {
  std::optional<Rational> m;
  for_each_regime_condition(net, regime, [&](const Rational& s) {
    if (!m || s < *m) m = s;
  });
  return m;
}

inline RegimeLabel classify_regime(const NetworkSpec& net) {
  if (!net.is_snr_ordered())
    throw PreconditionError("classify_regime requires an SNR-ordered network");
  RegimeLabel label;
  label.in_weak = in_regime(net, Regime::WEAK);
  label.in_sls = in_regime(net, Regime::SLS);
  label.in_ctin = in_regime(net, Regime::CTIN);
  label.in_tin = in_regime(net, Regime::TIN);
  label.strongest = label.in_tin    ? Regime::TIN
                    : label.in_ctin ? Regime::CTIN
                    : label.in_sls  ? Regime::SLS
                    : label.in_weak ? Regime::WEAK
                                    : Regime::GENERAL;
  return label;
}

/// The K x K x 1 network keeping only the strongest user of every cell.
inline NetworkSpec strongest_subnetwork(const NetworkSpec& net) {
  NetworkSpec out = NetworkSpec::zeros(net.K(), 1);
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j) out(i, j, 0) = net(i, j, net.L() - 1);
  return out;
}

/// Pads every cell with all-zero users placed first in SNR order.
inline NetworkSpec with_trivial_users(const NetworkSpec& net, int L_target) {
  if (L_target < net.L())
    throw DimensionError("with_trivial_users: target L is smaller than the network's L");
  NetworkSpec out = NetworkSpec::zeros(net.K(), L_target);
  const int pad = L_target - net.L();
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j)
      for (int l = 0; l < net.L(); ++l) out(i, j, l + pad) = net(i, j, l);
  return out;
}

/// Relabels cells: cell c of the input becomes cell perm[c].
inline NetworkSpec permute_cells(const NetworkSpec& net, const std::vector<int>& perm) {
  NetworkSpec out = NetworkSpec::zeros(net.K(), net.L());
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j)
      for (int l = 0; l < net.L(); ++l) out(perm[i], perm[j], l) = net(i, j, l);
  return out;
}

/// Copy of the network with every cross link multiplied by t.
inline NetworkSpec scale_crosses(const NetworkSpec& net, const Rational& t) {
  NetworkSpec out = net;
  for (int i = 0; i < net.K(); ++i)
    for (int j = 0; j < net.K(); ++j)
      if (i != j)
        for (int l = 0; l < net.L(); ++l) out(i, j, l) = net(i, j, l) * t;
  return out;
}

/// Largest t in [0, 1] such that scale_crosses(net, t) lies in `regime`.
/// Requires an SNR-ordered network (then t = 0 always qualifies).
inline Rational regime_scaling_limit(const NetworkSpec& net, Regime regime) {
  std::vector<Rational> at_zero, at_one;
  for_each_regime_condition(
      scale_crosses(net, 0), regime, [&](const Rational& s) { at_zero.push_back(s); }, &net);
  for_each_regime_condition(net, regime, [&](const Rational& s) { at_one.push_back(s); });
  Rational t = 1;
  for (size_t c = 0; c < at_one.size(); ++c) {
    if (at_one[c] >= 0) continue;
    // slack(t) = s0 + t (s1 - s0) with s0 >= 0 > s1
    Rational limit = at_zero[c] / (at_zero[c] - at_one[c]);
    t = rmin(t, limit);
  }
  return t;
}

}  // namespace gdof

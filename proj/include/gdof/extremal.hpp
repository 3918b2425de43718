#pragma once

// Cooperation gain over TIN: the ratio of the cooperative outer-bound
// sum-GDoF to the TIN sum-GDoF, regime samplers and a seeded search.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/io.hpp"
#include "gdof/network.hpp"
#include "gdof/random.hpp"
#include "gdof/rational.hpp"
#include "gdof/regions.hpp"

namespace gdof {

struct GainReport {
  NetworkSpec net;
  RegimeLabel regime;
  Rational tin_sum;
  Rational mbc_outer_sum;
  Rational ratio;
  std::optional<Rational> bound;  // worst-case ratio known for the regime
};

/// Worst-case gain of the given regime, when one is known.
inline std::optional<Rational> regime_gain_bound(Regime r, int K) {
  if (r == Regime::TIN) return Rational(3, 2);
  if (r == Regime::CTIN) {
    Rational b = 2 - Rational(1, K);
    b.canonicalize();
    return b;
  }
  return std::nullopt;
}

inline GainReport gain_ratio(const NetworkSpec& net) {
  bool any_direct = false;
  for (int i = 0; i < net.K(); ++i)
    for (int l = 0; l < net.L(); ++l) any_direct |= sgn(net.direct(i, l)) > 0;
  if (!any_direct) throw PreconditionError("gain_ratio: every direct link is zero");
  GainReport rep;
  rep.net = net;
  rep.regime = classify_regime(net);
  rep.tin_sum = tin_sum_gdof(net);
  rep.mbc_outer_sum = mbc_outer_sum_gdof(net);
  if (sgn(rep.tin_sum) <= 0) throw PreconditionError("gain_ratio: TIN sum-GDoF is zero");
  rep.ratio = rep.mbc_outer_sum / rep.tin_sum;
  rep.bound = regime_gain_bound(rep.regime.strongest, net.K());
  return rep;
}

/// Checks the known worst-case gain of the network's regime (TIN or CTIN).
inline bool verify_gain_upper_bound(const NetworkSpec& net) {
  GainReport rep = gain_ratio(net);
  if (!rep.regime.in_ctin)
    throw PreconditionError("gain bound is only established for the TIN and CTIN regimes");
  return rep.ratio <= *rep.bound;
}

/// Dropping all but the strongest user of every cell keeps the TIN sum-GDoF
/// and does not decrease the outer-bound sum-GDoF.
inline bool redundancy_check(const NetworkSpec& net) {
  auto sir = check_sir_order(net);
  if (!sir.ok) throw PreconditionError("redundancy_check requires an SIR-ordered network");
  const NetworkSpec top = strongest_subnetwork(net);
  return tin_sum_gdof(net) == tin_sum_gdof(top) &&
         mbc_outer_sum_gdof(net) <= mbc_outer_sum_gdof(top);
}

/// K-cell ring: directs 1, cell i+1 hears BS i at strength `cross`, all else 0.
inline NetworkSpec ring_network(int K, const Rational& cross, int L = 1) {
  NetworkSpec net = NetworkSpec::zeros(K, L);
  for (int i = 0; i < K; ++i)
    for (int l = 0; l < L; ++l) {
      net(i, i, l) = 1;
      if (K > 1) net((i + 1) % K, i, l) = cross;
    }
  return net;
}

struct SamplerOptions {
  int grid_steps = 20;
  /// When set, half of the samples are pulled inside the regime by a random
  /// factor instead of sitting on its boundary.
  bool jitter = false;
};

/// SNR- and SIR-ordered network with direct strengths on a grid in [1/2, 1].
inline NetworkSpec sample_weak_network(Rng& rng, int K, int L, const SamplerOptions& opt = {}) {
  NetworkSpec net = NetworkSpec::zeros(K, L);
  for (int i = 0; i < K; ++i) {
    std::vector<Rational> directs;
    for (int l = 0; l < L; ++l) directs.push_back(rng.grid(Rational(1, 2), Rational(1), opt.grid_steps));
    std::sort(directs.begin(), directs.end());
    for (int l = 0; l < L; ++l) net(i, i, l) = directs[l];
  }
  // Crosses are chosen through their SIR differences s^[l] = alpha_ii^[l] - alpha_ij^[l],
  // drawn nondecreasing in [s^[l-1], alpha_ii^[l]].
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      if (i == j) continue;
      Rational s = 0;
      for (int l = 0; l < L; ++l) {
        s = rng.grid(s, net.direct(i, l), opt.grid_steps);
        net(i, j, l) = net.direct(i, l) - s;
      }
    }
  return net;
}

/// Sample in the given regime: a weak-regime sample whose crosses are scaled
/// down to the regime boundary when they violate it.
inline NetworkSpec sample_regime_network(Rng& rng, Regime regime, int K, int L,
                                         const SamplerOptions& opt = {}) {
  NetworkSpec net = sample_weak_network(rng, K, L, opt);
  if (regime == Regime::WEAK || regime == Regime::GENERAL) return net;
  Rational t = regime_scaling_limit(net, regime);
  if (opt.jitter && rng.coin()) t *= rng.grid(Rational(1, 2), Rational(1), opt.grid_steps);
  return scale_crosses(net, t);
}

struct SearchSample {
  Rational ratio;
  Rational margin;
};

struct SearchResult {
  GainReport best;
  std::vector<SearchSample> samples;
};

inline bool better_report(const GainReport& a, const GainReport& b) {
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  return serialize(a.net) < serialize(b.net);
}

/// Draws `budget` networks in the regime (after any seeded pool networks) and
/// keeps the largest gain; ties go to the smallest serialization.
inline SearchResult search_extremal(Regime regime, int K, int L, int budget, std::uint64_t seed,
                                    const std::vector<NetworkSpec>& pool = {}) {
  if (regime != Regime::TIN && regime != Regime::CTIN && regime != Regime::SLS)
    throw PreconditionError("search_extremal: regime must be TIN, CTIN or SLS");
  if (budget < 1) throw PreconditionError("search_extremal: budget must be at least 1");
  if (K < 1 || L < 1) throw PreconditionError("search_extremal: K and L must be at least 1");

  std::optional<GainReport> best;
  std::vector<SearchSample> samples;
  auto consider = [&](const NetworkSpec& net) {
    GainReport rep = gain_ratio(net);
    auto margin = regime_margin(net, regime);
    samples.push_back({rep.ratio, margin.value_or(Rational(0))});
    if (!best || better_report(rep, *best)) best = std::move(rep);
  };
  for (const auto& net : pool) {
    if (net.K() != K || net.L() != L || !in_regime(net, regime) || !check_sir_order(net).ok)
      throw PreconditionError("search_extremal: pool network does not match the request");
    consider(net);
  }
  Rng rng(seed);
  SamplerOptions opt;
  opt.jitter = true;
  for (int t = 0; t < budget; ++t) consider(sample_regime_network(rng, regime, K, L, opt));
  return {std::move(*best), std::move(samples)};
}

inline Json to_json(const GainReport& rep) {
  Json j{{"net", to_json(rep.net)},
         {"regime", to_json(rep.regime)},
         {"tin_sum", to_json(rep.tin_sum)},
         {"mbc_outer_sum", to_json(rep.mbc_outer_sum)},
         {"ratio", to_json(rep.ratio)},
         {"numerator", "cooperative outer bound"}};
  j["bound"] = rep.bound ? to_json(*rep.bound) : Json(nullptr);
  j["within_bound"] = rep.bound ? Json(rep.ratio <= *rep.bound) : Json(nullptr);
  return j;
}

}  // namespace gdof

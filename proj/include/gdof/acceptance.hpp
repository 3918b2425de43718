#pragma once

// Randomized end-to-end checks of the library's headline identities and
// bounds. Each check is deterministic given its seed; reports carry no timing
// so they can be compared byte for byte.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gdof/extremal.hpp"
#include "gdof/io.hpp"
#include "gdof/network.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/polymatroid.hpp"
#include "gdof/power.hpp"
#include "gdof/random.hpp"
#include "gdof/regions.hpp"

namespace gdof::acceptance {

struct Config {
  std::uint64_t seed = 20240601;
  /// Divides every trial count (1 = full suite).
  int reduce = 1;

  int count(int full) const { return std::max(1, full / reduce); }
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = true;
  long trials = 0;
  std::string detail;
};

inline Json to_json(const Result& r) {
  return Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"trials", r.trials},
              {"detail", r.detail}};
}

/// SNR/SIR-ordered network with common cross strength beta <= every direct.
inline NetworkSpec sample_homogeneous_network(Rng& rng, int K, int L, int steps = 20) {
  NetworkSpec net = NetworkSpec::zeros(K, L);
  Rational lowest = 1;
  for (int i = 0; i < K; ++i) {
    std::vector<Rational> d;
    for (int l = 0; l < L; ++l) d.push_back(rng.grid(Rational(1, 2), Rational(1), steps));
    std::sort(d.begin(), d.end());
    for (int l = 0; l < L; ++l) net(i, i, l) = d[l];
    lowest = rmin(lowest, d[0]);
  }
  const Rational beta = rng.grid(Rational(0), lowest, steps);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (i != j)
        for (int l = 0; l < L; ++l) net(i, j, l) = beta;
  return net;
}

namespace detail {

inline SamplerOptions jittered() {
  SamplerOptions o;
  o.jitter = true;
  return o;
}

inline std::string ratio_text(long good, long total, const char* what) {
  return std::to_string(good) + "/" + std::to_string(total) + " " + what;
}

}  // namespace detail

/// 1: the 2-cell achievable region equals the cooperative outer bound.
inline Result two_cell_equality(const Config& cfg) {
  Result r{1, "2-cell SLS achievable region equals the outer bound", true, 0, ""};
  Rng rng(cfg.seed + 1);
  const int n = cfg.count(100);
  long equal = 0;
  for (int t = 0; t < n; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 3, detail::jittered());
    if (equals(two_cell_sls_achievable(net), sls_outer_region(net)).equal) ++equal;
  }
  r.trials = n;
  r.passed = equal == n;
  r.detail = detail::ratio_text(equal, n, "nets equal (exact)");
  return r;
}

/// 2: TIN-regime gain never exceeds 3/2 and the 2-cell fixture attains it.
inline Result tin_gain_bound(const Config& cfg) {
  Result r{2, "TIN-regime gain is at most 3/2, attained by N2", true, 0, ""};
  const NetworkSpec n2 = uniform_network({{1}, {1}}, {Rational(1, 2)});
  const Rational n2_ratio = gain_ratio(n2).ratio;
  Rng rng(cfg.seed + 2);
  const int n = cfg.count(1000);
  long ok = 0;
  Rational worst = 0;
  for (int t = 0; t < n; ++t) {
    const int K = 2 + t % 2, L = 1 + (t / 2) % 2;
    NetworkSpec net = sample_regime_network(rng, Regime::TIN, K, L, detail::jittered());
    GainReport rep = gain_ratio(net);
    worst = rmax(worst, rep.ratio);
    if (rep.regime.in_tin && rep.ratio <= Rational(3, 2)) ++ok;
  }
  r.trials = n + 1;
  r.passed = n2_ratio == Rational(3, 2) && ok == n;
  r.detail = "N2 ratio " + to_string(n2_ratio) + "; " + detail::ratio_text(ok, n, "nets within 3/2") +
             "; largest sampled ratio " + to_string(worst);
  return r;
}

/// 3: CTIN-regime gain never exceeds 2 - 1/K.
inline Result ctin_gain_bound(const Config& cfg) {
  Result r{3, "CTIN-regime gain is at most 2 - 1/K", true, 0, ""};
  Rng rng(cfg.seed + 3);
  const int n = cfg.count(1000);
  std::string detail;
  for (int K = 2; K <= 4; ++K) {
    long ok = 0;
    Rational worst = 0;
    const Rational bound = *regime_gain_bound(Regime::CTIN, K);
    for (int t = 0; t < n; ++t) {
      NetworkSpec net = sample_regime_network(rng, Regime::CTIN, K, 1 + t % 2, detail::jittered());
      GainReport rep = gain_ratio(net);
      worst = rmax(worst, rep.ratio);
      if (rep.regime.in_ctin && rep.ratio <= bound) ++ok;
    }
    r.trials += n;
    r.passed = r.passed && ok == n;
    if (!detail.empty()) detail += "; ";
    detail += "K=" + std::to_string(K) + ": " + detail::ratio_text(ok, n, "within") + " " +
              to_string(bound) + " (largest " + to_string(worst) + ")";
  }
  r.detail = detail;
  return r;
}

/// 4: negative-circuit test agrees with region membership; recovered powers
/// satisfy every power-control inequality.
inline Result potential_graph_equivalence(const Config& cfg) {
  Result r{4, "potential-graph feasibility matches the 2-cell TIN region", true, 0, ""};
  Rng rng(cfg.seed + 4);
  const int n = cfg.count(500);
  long agree = 0, feasible = 0, powers_ok = 0;
  for (int t = 0; t < n; ++t) {
    const int L = 1 + t % 3;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L, detail::jittered());
    const Rational a = rng.grid(Rational(0), net.max_cross(), 10);
    std::vector<Rational> d(net.num_users());
    const Rational cap = Rational(1, L);
    for (auto& x : d) x = rng.grid(Rational(0), cap, 12);
    const bool graph = tin_feasible(net, d, a).feasible;
    const bool region = ptin_a_region(net, a).contains(d);
    if (graph == region) ++agree;
    if (graph) {
      ++feasible;
      PowerTuple p = recover_powers(net, d, a);
      bool ordered = true;
      for (int i = 0; i < 2; ++i) {
        if (p.r[net.user_index({0, i})] > -a) ordered = false;
        for (int l = 1; l < L; ++l)
          if (p.r[net.user_index({l, i})] > p.r[net.user_index({l - 1, i})]) ordered = false;
      }
      if (ordered && verify_power_allocation(net, d, p.r, a)) ++powers_ok;
    }
  }
  r.trials = n;
  r.passed = agree == n && powers_ok == feasible;
  r.detail = detail::ratio_text(agree, n, "triples agree") + "; " + std::to_string(feasible) +
             " feasible, " + std::to_string(powers_ok) + " with verified powers";
  return r;
}

/// 5: the 2-cell TIN set function, the multicast function and the
/// homogeneous-interference function are polymatroid rank functions.
inline Result polymatroid_suite(const Config& cfg) {
  Result r{5, "set functions are normalized, monotone and submodular", true, 0, ""};
  Rng rng(cfg.seed + 5);
  const int n = cfg.count(200);
  long ptin_ok = 0, forms_agree = 0, mul_ok = 0, homog_ok = 0;
  for (int t = 0; t < n; ++t) {
    const int L = 1 + t % 4;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L, detail::jittered());
    const Rational a = rng.grid(Rational(0), polymatroid_level_cap(net), 10);
    SetFunction f = f_ptin_prime(net, a);
    if (check_polymatroid(f).ok()) ++ptin_ok;
    SetFunction g = f_ptin_prime_delta(net, a);
    bool same = true;
    for (Subset s = 0; s <= f.full() && same; ++s) same = f(s) == g(s);
    if (same) ++forms_agree;
    if (check_polymatroid(f_mul(2, L, a)).ok()) ++mul_ok;
    const int K = 1 + t % 4;
    NetworkSpec h = sample_homogeneous_network(rng, K, 1 + t % 2);
    if (check_polymatroid(f_homog(h, homogeneous_cross(h))).ok()) ++homog_ok;
  }
  r.trials = n;
  r.passed = ptin_ok == n && forms_agree == n && mul_ok == n && homog_ok == n;
  r.detail = "2-cell TIN " + std::to_string(ptin_ok) + "/" + std::to_string(n) + " (closed and min forms agree " +
             std::to_string(forms_agree) + "/" + std::to_string(n) + "), multicast " +
             std::to_string(mul_ok) + "/" + std::to_string(n) + ", homogeneous " +
             std::to_string(homog_ok) + "/" + std::to_string(n) + "; exhaustive";
  return r;
}

/// 6: Minkowski sums of the two polymatroids match the region of the summed
/// set function, point by point.
inline Result minkowski_suite(const Config& cfg) {
  Result r{6, "Minkowski sum equals the region of the summed set function", true, 0, ""};
  Rng rng(cfg.seed + 6);
  const int n = cfg.count(50);
  const int points = 100;
  long agree = 0, inside = 0, closed_form = 0;
  for (int t = 0; t < n; ++t) {
    const int L = 1 + t % 3;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L, detail::jittered());
    const Rational a = rng.grid(Rational(0), net.max_cross(), 10);
    SetFunction f = f_ptin_prime(net, a);
    SetFunction g = f_mul(2, L, a);
    LinSystem rf = region_of(f), rg = region_of(g), sum = region_of(polymatroid_sum(f, g));
    if (equals(sum, direct_sum_region(net, a)).equal) ++closed_form;
    for (int p = 0; p < points; ++p) {
      std::vector<Rational> x(net.num_users());
      for (auto& v : x) v = rng.grid(Rational(0), Rational(1, L), 20);
      const bool mk = minkowski_sum_membership(rf, rg, x);
      if (mk == sum.contains(x)) ++agree;
      if (mk) ++inside;
    }
  }
  const long total = static_cast<long>(n) * points;
  r.trials = total;
  r.passed = agree == total && closed_form == n;
  r.detail = detail::ratio_text(agree, total, "points agree") + " (" + std::to_string(inside) +
             " inside); summed region matches the row-wise sum on " + std::to_string(closed_form) + "/" +
             std::to_string(n);
  return r;
}

/// 7: eliminating the multicast level leaves exactly the two outer-bound
/// row families.
inline Result fm_pipeline(const Config& cfg) {
  Result r{7, "eliminating the multicast level yields the outer-bound families", true, 0, ""};
  Rng rng(cfg.seed + 7);
  const int n = cfg.count(50);
  long ok = 0;
  for (int t = 0; t < n; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 3, detail::jittered());
    LinSystem got = remove_redundant(fm_eliminate(two_cell_parametric_system(net), kLevelVar));
    LinSystem families = two_cell_outer_families(net);
    std::vector<LinRow> allowed;
    for (const auto& row : families.rows) allowed.push_back(normalize_row(row));
    bool rows_in_families = true;
    for (const auto& row : got.rows)
      if (std::find(allowed.begin(), allowed.end(), normalize_row(row)) == allowed.end())
        rows_in_families = false;
    if (rows_in_families && equals(got, families).equal) ++ok;
  }
  r.trials = n;
  r.passed = ok == n;
  r.detail = detail::ratio_text(ok, n, "nets reproduce the families exactly");
  return r;
}

/// 8: weaker users add nothing to the TIN sum-GDoF and do not raise the
/// outer bound.
inline Result weaker_user_redundancy(const Config& cfg) {
  Result r{8, "weaker users are redundant for sum-GDoF", true, 0, ""};
  Rng rng(cfg.seed + 8);
  const int n = cfg.count(500);
  long tin_equal = 0, outer_le = 0;
  for (int t = 0; t < n; ++t) {
    const int K = 1 + t % 4, L = 1 + (t / 4) % 3;
    NetworkSpec net = sample_weak_network(rng, K, L);
    NetworkSpec top = strongest_subnetwork(net);
    if (tin_sum_gdof(net) == tin_sum_gdof(top)) ++tin_equal;
    if (mbc_outer_sum_gdof(net) <= mbc_outer_sum_gdof(top)) ++outer_le;
  }
  r.trials = n;
  r.passed = tin_equal == n && outer_le == n;
  r.detail = "TIN sum unchanged " + std::to_string(tin_equal) + "/" + std::to_string(n) +
             "; outer sum not larger " + std::to_string(outer_le) + "/" + std::to_string(n);
  return r;
}

/// 9: homogeneous interference: achievable region equals the simplified
/// outer bound; fixture full-set bound is 11/5 on both sides.
inline Result homogeneous_equality(const Config& cfg) {
  Result r{9, "homogeneous interference: achievable equals outer bound", true, 0, ""};
  NetworkSpec fixture = uniform_network({{1}, {1}, {1}}, {Rational(2, 5)});
  HomogCheck fx = homog_check(fixture);
  const Rational outer_full = fx.outer.rows.back().b;  // last row covers all three cells
  const Rational ach_full =
      polymatroid_sum(f_mul(3, 1, Rational(2, 5)), f_homog(fixture, Rational(2, 5)))(0b111);
  Rng rng(cfg.seed + 9);
  const int n = cfg.count(100);
  long equal = 0;
  for (int t = 0; t < n; ++t) {
    NetworkSpec net = sample_homogeneous_network(rng, 1 + t % 4, 1 + (t / 4) % 2);
    if (homog_check(net).equal) ++equal;
  }
  r.trials = n + 1;
  r.passed = equal == n && fx.equal && outer_full == Rational(11, 5) && ach_full == Rational(11, 5);
  r.detail = detail::ratio_text(equal, n, "nets equal") + "; fixture full-set bound outer " +
             to_string(outer_full) + ", achievable " + to_string(ach_full);
  return r;
}

using Check = std::function<Result(const Config&)>;

inline const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = {
      two_cell_equality, tin_gain_bound,  ctin_gain_bound,        potential_graph_equivalence,
      polymatroid_suite, minkowski_suite, fm_pipeline,            weaker_user_redundancy,
      homogeneous_equality};
  return checks;
}

/// Runs every check and renders the deterministic JSON report.
inline Json run_report(const Config& cfg) {
  Json items = Json::array();
  bool all = true;
  for (const auto& check : all_checks()) {
    Result res = check(cfg);
    all = all && res.passed;
    items.push_back(to_json(res));
  }
  return Json{{"seed", cfg.seed}, {"reduce", cfg.reduce}, {"checks", std::move(items)},
              {"all_passed", all}};
}

}  // namespace gdof::acceptance

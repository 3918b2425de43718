#include <gtest/gtest.h>

#include "support.hpp"

using namespace gdof;
using namespace testing_support;

TEST(FPtinPrime, Examples) {
  SetFunction f = f_ptin_prime(N1(), R("1/5"));
  EXPECT_EQ(f(0), 0);
  EXPECT_EQ(f(0b01), R("7/10"));
  EXPECT_EQ(f(0b11), R("7/5"));
  EXPECT_THROW(f_ptin_prime(N3(), R("1/2")), PreconditionError);
  EXPECT_THROW(f_ptin_prime(uniform_network({{1}, {1}}, {R("11/10")}), 0), PreconditionError);
}

TEST(FPtinPrime, ClosedAndMinFormsAgree) {
  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 4);
    Rational a = rng.grid(0, net.max_cross(), 5);
    SetFunction f = f_ptin_prime(net, a), g = f_ptin_prime_delta(net, a);
    for (Subset s = 0; s <= f.full(); ++s) EXPECT_EQ(f(s), g(s));
  }
}

TEST(FPtinPrime, DependsOnlyOnTopUsers) {
  Rng rng(52);
  for (int t = 0; t < 50; ++t) {
    const int L = 2 + t % 3;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L);
    SetFunction f = f_ptin_prime(net, 0);
    for (Subset s = 0; s <= f.full(); ++s) {
      Subset tops = 0;
      for (int i = 0; i < 2; ++i)
        if (int u = top_user(s, i, L)) tops |= Subset(1) << (i * L + u - 1);
      EXPECT_EQ(f(s), f(tops));
    }
  }
}

TEST(DeltaTerm, NondecreasingInUser) {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const int L = 1 + t % 4;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L);
    Rational a = rng.grid(0, net.max_cross(), 5);
    for (int i = 0; i < 2; ++i)
      for (int m : {1, 2})
        for (int s = 1; s <= L; ++s) {
          // alpha - a can be negative for the weakest user, so compare with
          // the untouched value only for m = 1.
          if (m == 2 && s == 1) continue;
          EXPECT_LE(delta_term(net, a, i, m, s - 1), delta_term(net, a, i, m, s));
        }
  }
}

TEST(FMul, Examples) {
  SetFunction f = f_mul(2, 2, R("3/10"));
  EXPECT_EQ(f(0), 0);
  EXPECT_EQ(f(0b0100), R("3/10"));
  EXPECT_EQ(f(0b1111), R("3/10"));
  EXPECT_TRUE(check_polymatroid(f).ok());
  EXPECT_THROW(f_mul(2, 1, -1), PreconditionError);
}

TEST(FHomog, Examples) {
  NetworkSpec k3 = uniform_network({{1}, {1}, {1}}, {R("2/5")});
  SetFunction f = f_homog(k3, R("2/5"));
  EXPECT_EQ(f(0), 0);
  EXPECT_EQ(f(0b010), R("3/5"));
  EXPECT_EQ(f(0b111), R("9/5"));
  EXPECT_THROW(f_homog(N3(), R("1/10")), PreconditionError);
  EXPECT_THROW(f_homog(k3, R("1/5")), PreconditionError);
}

TEST(CheckPolymatroid, DetectsCorruptedTable) {
  SetFunction f = f_mul(2, 2, 1);
  std::vector<Rational> table(16);
  for (Subset s = 0; s < 16; ++s) table[s] = f(s);
  table[0b0011] = 3;  // raise one mid-size set
  auto res = check_polymatroid(f_table(2, 2, table));
  EXPECT_TRUE(res.normalized);
  EXPECT_FALSE(res.submodular);
  ASSERT_TRUE(res.submodular_witness.has_value());
  auto [S, k, j] = *res.submodular_witness;
  SetFunction g = f_table(2, 2, table);
  const Subset sk = S | Subset(1) << k, sj = S | Subset(1) << j;
  EXPECT_LT(g(sk) - g(S), g(sk | sj) - g(sj));

  table[0b0011] = 1;
  table[0b0111] = R("1/2");
  auto mono = check_polymatroid(f_table(2, 2, table));
  EXPECT_FALSE(mono.monotone);
  table[0] = 1;
  EXPECT_FALSE(check_polymatroid(f_table(2, 2, table)).normalized);
}

TEST(CheckPolymatroid, AgreesWithLatticeOracle) {
  Rng rng(54);
  int good = 0;
  for (int t = 0; t < 300; ++t) {
    // Concave in |S| with nonnegative increments, then every other table perturbed.
    Rational g[5] = {0, 0, 0, 0, 0};
    Rational step = rng.grid(0, 2, 4);
    for (int c = 1; c <= 4; ++c) {
      g[c] = g[c - 1] + step;
      step = rng.grid(0, step, 4);
    }
    std::vector<Rational> table(16);
    for (Subset s = 1; s < 16; ++s) table[s] = g[__builtin_popcountll(s)];
    if (t % 2) table[rng.uniform_int(1, 15)] += rng.grid(-1, 1, 4);
    SetFunction f = f_table(2, 2, table);
    const bool oracle = brute_polymatroid(f);
    EXPECT_EQ(check_polymatroid(f).ok(), oracle);
    good += oracle;
  }
  EXPECT_GT(good, 0);
  EXPECT_LT(good, 300);
  for (int t = 0; t < 60; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 3);
    Rational a = rng.grid(0, polymatroid_level_cap(net), 5);
    SetFunction f = f_ptin_prime(net, a);
    EXPECT_TRUE(brute_polymatroid(f));
    EXPECT_TRUE(check_polymatroid(f).ok());
  }
}

TEST(CheckPolymatroid, SampledBeyondExhaustiveSize) {
  SetFunction f = f_mul(6, 3, 1);
  auto res = check_polymatroid(f, 2000);
  EXPECT_FALSE(res.exhaustive);
  EXPECT_TRUE(res.ok());
}

TEST(CheckPolymatroid, HoldsOnSampledSlsNets) {
  Rng rng(55);
  for (int t = 0; t < 100; ++t) {
    const int L = 1 + t % 4;
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, L);
    for (int k = 0; k <= 4; ++k) {
      Rational a = polymatroid_level_cap(net) * Rational(k, 4);
      auto res = check_polymatroid(f_ptin_prime(net, a));
      EXPECT_TRUE(res.exhaustive);
      EXPECT_TRUE(res.ok()) << serialize(net) << " a=" << a;
    }
    if (L < 4) {
      NetworkSpec padded = with_trivial_users(net, L + 1);
      EXPECT_EQ(polymatroid_level_cap(padded), polymatroid_level_cap(net));
      const Rational a = polymatroid_level_cap(padded) / 2;
      EXPECT_TRUE(check_polymatroid(f_ptin_prime(padded, a)).ok());
      EXPECT_TRUE(equals(region_of(f_ptin_prime(padded, a)), ptin_prime_region(padded, a)).equal);
    }
  }
}

TEST(CheckPolymatroid, FailsAboveWeakestDirect) {
  // SLS net whose largest cross link exceeds the weakest direct link of cell 2.
  NetworkSpec net = network_from_json(Json::parse(
      R"({"K":2,"L":2,"alpha":[[["17/20","9/10"],["17/50","351/1000"]],)"
      R"([["161/400","5117/8000"],["23/40","37/40"]]]})"));
  ASSERT_TRUE(in_regime(net, Regime::SLS));
  EXPECT_EQ(polymatroid_level_cap(net), R("23/40"));
  EXPECT_TRUE(check_polymatroid(f_ptin_prime(net, R("23/40"))).ok());
  auto res = check_polymatroid(f_ptin_prime(net, net.max_cross()));
  EXPECT_FALSE(res.monotone);
  EXPECT_FALSE(brute_polymatroid(f_ptin_prime(net, net.max_cross())));
}

TEST(RegionOf, Examples) {
  LinSystem m = remove_redundant(region_of(f_mul(2, 1, R("3/10"))));
  ASSERT_EQ(m.rows.size(), 1u);
  EXPECT_EQ(m.rows[0].b, R("3/10"));
  EXPECT_TRUE(equals(region_of(f_ptin_prime(N1(), R("1/5"))), ptin_prime_region(N1(), R("1/5"))).equal);
  auto origin = vertices(region_of(f_table(1, 2, std::vector<Rational>(4))));
  EXPECT_EQ(origin.size(), 1u);
  EXPECT_THROW(region_of(f_mul(11, 1, 1)), CapabilityError);
}

TEST(PolymatroidSum, Examples) {
  Rng rng(56);
  for (int t = 0; t < 30; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 3);
    Rational a = rng.grid(0, net.max_cross(), 5);
    SetFunction sum = polymatroid_sum(f_mul(2, net.L(), a), f_ptin_prime(net, a));
    EXPECT_TRUE(equals(region_of(sum), direct_sum_region(net, a)).equal);
    SetFunction f = f_ptin_prime(net, a);
    SetFunction same = polymatroid_sum(f, f_table(2, net.L(), std::vector<Rational>(Subset(1) << (2 * net.L()))));
    for (Subset s = 0; s <= f.full(); ++s) EXPECT_EQ(same(s), f(s));
  }
  NetworkSpec k3 = uniform_network({{1}, {1}, {1}}, {R("2/5")});
  SetFunction h = polymatroid_sum(f_mul(3, 1, R("2/5")), f_homog(k3, R("2/5")));
  EXPECT_EQ(h(0b111), R("11/5"));
  EXPECT_EQ(h(0b001), 1);
  EXPECT_THROW(polymatroid_sum(f_mul(2, 1, 1), f_mul(2, 2, 1)), DimensionError);
}

TEST(PolymatroidSum, MinkowskiMembershipMatches) {
  Rng rng(57);
  for (int t = 0; t < 20; ++t) {
    NetworkSpec net = sample_regime_network(rng, Regime::SLS, 2, 1 + t % 2);
    Rational a = rng.grid(0, net.max_cross(), 5);
    SetFunction f = f_ptin_prime(net, a), g = f_mul(2, net.L(), a);
    LinSystem rf = region_of(f), rg = region_of(g), sum = region_of(polymatroid_sum(f, g));
    for (int p = 0; p < 40; ++p) {
      std::vector<Rational> x;
      for (int u = 0; u < 2 * net.L(); ++u) x.push_back(rng.grid(0, Rational(1, net.L()), 10));
      EXPECT_EQ(minkowski_sum_membership(rf, rg, x), sum.contains(x));
    }
  }
}

TEST(SetFunctionTable, Exports) {
  Json t = set_function_table(f_mul(2, 1, 1));
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[3].dump(), R"({"set":["d[1,1]","d[1,2]"],"value":"1"})");
}

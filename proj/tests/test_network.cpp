#include <gtest/gtest.h>

#include "support.hpp"

using namespace gdof;
using namespace testing_support;

TEST(Rational, ParsesFractionsDecimalsAndScientific) {
  EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.45"), Rational(9, 20));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("2e-1"), Rational(1, 5));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_THROW(parse_rational("1/0"), SchemaError);
  EXPECT_THROW(parse_rational("abc"), SchemaError);
  EXPECT_THROW(parse_rational(""), SchemaError);
  EXPECT_EQ(parse_rational_list("7/10, 0.7,1").size(), 3u);
}

TEST(Network, RejectsBadShapes) {
  EXPECT_THROW(NetworkSpec(2, 1, std::vector<Rational>(3)), DimensionError);
  EXPECT_THROW(NetworkSpec(0, 1, {}), DimensionError);
  EXPECT_THROW(NetworkSpec(1, 1, {Rational(-1)}), PreconditionError);
}

TEST(Network, JsonRoundTripAndSchemaErrors) {
  NetworkSpec n3 = N3();
  EXPECT_EQ(network_from_json(to_json(n3)), n3);
  auto j = Json::parse(R"({"K":2,"L":1,"alpha":[[["1"],["0.3"]],[[0.3],[1]]]})");
  EXPECT_EQ(network_from_json(j), N1());
  EXPECT_THROW(network_from_json(Json::parse(R"({"K":2,"L":1})")), SchemaError);
  EXPECT_THROW(network_from_json(Json::parse(R"({"K":2,"L":1,"alpha":[[["1"]]]})")), SchemaError);
  EXPECT_THROW(network_from_json(Json::parse(R"({"K":1,"L":1,"alpha":[[["-1"]]]})")), SchemaError);
}

TEST(NormalizeUserOrder, Examples) {
  auto sorted = normalize_user_order(N3());
  EXPECT_EQ(sorted.net, N3());
  EXPECT_EQ(sorted.permutation, (std::vector<std::vector<int>>{{0, 1}, {0, 1}}));

  NetworkSpec swapped = NetworkSpec::zeros(1, 2);
  swapped(0, 0, 0) = 1;
  swapped(0, 0, 1) = R("1/2");
  auto norm = normalize_user_order(swapped);
  EXPECT_EQ(norm.net.direct(0, 0), R("1/2"));
  EXPECT_EQ(norm.net.direct(0, 1), 1);
  EXPECT_EQ(norm.permutation[0], (std::vector<int>{1, 0}));
}

TEST(NormalizeUserOrder, IsIdempotentAndStable) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    NetworkSpec net = NetworkSpec::zeros(2 + t % 2, 3);
    for (int i = 0; i < net.K(); ++i)
      for (int j = 0; j < net.K(); ++j)
        for (int l = 0; l < 3; ++l) net(i, j, l) = rng.grid(0, 1, 4);
    auto once = normalize_user_order(net);
    EXPECT_TRUE(once.net.is_snr_ordered());
    auto twice = normalize_user_order(once.net);
    EXPECT_EQ(twice.net, once.net);
    for (const auto& p : twice.permutation) EXPECT_EQ(p, (std::vector<int>{0, 1, 2}));
    for (int i = 0; i < net.K(); ++i)
      for (int l = 0; l + 1 < 3; ++l)
        if (once.net.direct(i, l) == once.net.direct(i, l + 1)) {
          EXPECT_LT(once.permutation[i][l], once.permutation[i][l + 1]);
        }
  }
}

TEST(SirOrder, Examples) {
  EXPECT_TRUE(check_sir_order(uniform_network({{R("1/5"), 1}, {R("1/2"), 1}}, {0, 0})).ok);
  EXPECT_TRUE(check_sir_order(N3()).ok);
  auto bad = check_sir_order(uniform_network({{R("3/5"), 1}, {R("3/5"), 1}}, {R("1/10"), R("3/5")}));
  ASSERT_FALSE(bad.ok);
  EXPECT_EQ(bad.witness->i, 0);
  EXPECT_EQ(bad.witness->j, 1);
  EXPECT_EQ(bad.witness->l, 1);
}

TEST(ClassifyRegime, Examples) {
  EXPECT_EQ(classify_regime(uniform_network({{1}, {1}}, {R("9/20")})).strongest, Regime::TIN);
  auto sls = classify_regime(uniform_network({{1}, {1}}, {R("11/20")}));
  EXPECT_EQ(sls.strongest, Regime::SLS);
  EXPECT_FALSE(sls.in_tin);
  EXPECT_FALSE(sls.in_ctin);
  auto n3 = classify_regime(N3());
  EXPECT_EQ(n3.strongest, Regime::CTIN);
  EXPECT_FALSE(n3.in_tin);
  EXPECT_EQ(classify_regime(N1()).strongest, Regime::TIN);
  NetworkSpec unsorted = NetworkSpec::zeros(1, 2);
  unsorted(0, 0, 0) = 1;
  EXPECT_THROW(classify_regime(unsorted), PreconditionError);
}

TEST(ClassifyRegime, RegimesAreNested) {
  Rng rng(5);
  int counts[5] = {0, 0, 0, 0, 0};
  for (int t = 0; t < 2000; ++t) {
    NetworkSpec net = random_snr_net(rng, 2 + t % 3, 1 + t % 2, 10);
    if (t % 2) net = scale_crosses(net, Rational(1, 2 + t % 3));
    auto lab = classify_regime(net);
    EXPECT_TRUE(!lab.in_tin || lab.in_ctin);
    EXPECT_TRUE(!lab.in_ctin || lab.in_sls);
    EXPECT_TRUE(!lab.in_sls || lab.in_weak);
    ++counts[static_cast<int>(lab.strongest)];
  }
  for (int r = 0; r < 4; ++r) EXPECT_GT(counts[r], 0) << regime_name(static_cast<Regime>(r));
}

TEST(ClassifyRegime, InvariantUnderCellRelabeling) {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    NetworkSpec net = random_snr_net(rng, 3, 2, 8);
    net = scale_crosses(net, Rational(1, 1 + t % 4));
    std::vector<int> perm{2, 0, 1};
    if (t % 2) perm = {1, 0, 2};
    EXPECT_EQ(classify_regime(net), classify_regime(permute_cells(net, perm)));
  }
}

TEST(StrongestSubnetwork, Examples) {
  EXPECT_EQ(strongest_subnetwork(N1()), N1());
  EXPECT_EQ(strongest_subnetwork(N3()), uniform_network({{1}, {1}}, {R("9/20")}));
  auto z = strongest_subnetwork(uniform_network({{R("3/10"), R("9/10")}, {R("3/10"), R("9/10")}}, {0, 0}));
  EXPECT_EQ(z, uniform_network({{R("9/10")}, {R("9/10")}}, {0}));
}

TEST(StrongestSubnetwork, StaysInRegime) {
  Rng rng(8);
  SamplerOptions opt;
  opt.jitter = true;
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS})
    for (int t = 0; t < 100; ++t) {
      NetworkSpec net = sample_regime_network(rng, r, 2 + t % 3, 1 + t % 3, opt);
      ASSERT_TRUE(in_regime(net, r));
      EXPECT_TRUE(in_regime(strongest_subnetwork(net), r));
    }
}

TEST(WithTrivialUsers, Examples) {
  EXPECT_EQ(with_trivial_users(N1(), 1), N1());
  NetworkSpec padded = with_trivial_users(N1(), 2);
  EXPECT_EQ(padded.L(), 2);
  EXPECT_EQ(tin_sum_gdof(padded), R("7/5"));
  EXPECT_EQ(classify_regime(padded), classify_regime(N1()));
  EXPECT_EQ(classify_regime(with_trivial_users(N3(), 4)), classify_regime(N3()));
  EXPECT_THROW(with_trivial_users(N3(), 1), DimensionError);
}

TEST(WithTrivialUsers, KeepsRegimeAndScalingLimit) {
  Rng rng(10);
  SamplerOptions opt;
  opt.jitter = true;
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS, Regime::WEAK})
    for (int t = 0; t < 60; ++t) {
      const int L = 1 + t % 2;
      NetworkSpec net = sample_regime_network(rng, r, 2 + t % 2, L, opt);
      NetworkSpec padded = with_trivial_users(net, L + 1 + t % 2);
      EXPECT_EQ(classify_regime(padded), classify_regime(net)) << serialize(net);
      EXPECT_EQ(regime_scaling_limit(padded, r), regime_scaling_limit(net, r));
    }
}

TEST(RegimeScaling, LimitIsTightOnSamples) {
  Rng rng(9);
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS})
    for (int t = 0; t < 100; ++t) {
      NetworkSpec net = random_sir_net(rng, 2 + t % 3, 1 + t % 2, 10);
      Rational lim = regime_scaling_limit(net, r);
      EXPECT_TRUE(in_regime(scale_crosses(net, lim), r));
      if (lim < 1) {
        auto m = regime_margin(scale_crosses(net, lim), r);
        ASSERT_TRUE(m.has_value());
        EXPECT_EQ(*m, 0);
        EXPECT_FALSE(in_regime(scale_crosses(net, lim + (1 - lim) / 2), r));
      }
    }
}

TEST(Regime, NamesRoundTrip) {
  for (Regime r : {Regime::TIN, Regime::CTIN, Regime::SLS, Regime::WEAK, Regime::GENERAL})
    EXPECT_EQ(parse_regime(regime_name(r)), r);
  EXPECT_EQ(parse_regime("ctin"), Regime::CTIN);
  EXPECT_THROW(parse_regime("fast"), PreconditionError);
}

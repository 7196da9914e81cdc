#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "esqkd/adversary.hpp"
#include "esqkd/error.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/measure.hpp"
#include "esqkd/protocols.hpp"
#include "harness/stats.hpp"
#include "oracle.hpp"

using namespace esqkd;

namespace {

EveStrategy two_party_attack(ReturnPolicy policy = ReturnPolicy::forward_captured,
                             BellLabel ancilla = {}) {
  EveStrategy s;
  s.kind = EveKind::two_party_intercept;
  s.return_policy = policy;
  s.ancilla_label = ancilla;
  return s;
}

ProtocolConfig attacked(ProtocolKind kind, unsigned parties, std::uint64_t rounds, EveStrategy eve,
                        std::uint64_t seed = 11) {
  ProtocolConfig c;
  c.protocol = kind;
  c.num_parties = parties;
  c.rounds = rounds;
  c.seed = seed;
  c.eve = std::move(eve);
  return c;
}

double mismatch_rate(const std::vector<RoundRecord>& records) {
  std::size_t n = 0;
  for (const auto& r : records) n += r.detected_mismatch ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(records.size());
}

oracle::Vec to_vec(const PureState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

}  // namespace

TEST(OutboundTransit, NoEveIsIdentity) {
  const auto layout = EsLayout::two_party();
  const auto state = prepare_initial_state(layout, EsInitialLabels::zeros(layout));
  EveState eve;
  const auto t = on_outbound_transit({}, state, "2", "Bob", "6", eve);
  EXPECT_EQ(t.delivered, QubitName("2"));
  EXPECT_EQ(t.state.qubit_order(), state.qubit_order());
  EXPECT_NEAR(std::abs(inner_product(t.state, state)), 1.0, kIdentityTolerance);
  EXPECT_TRUE(eve.held_qubits.empty());
}

TEST(OutboundTransit, TwoPartyInterceptBuildsEightQubitState) {
  const auto layout = EsLayout::two_party();
  const auto state = prepare_initial_state(layout, EsInitialLabels::zeros(layout));
  EveState eve;
  const auto t = on_outbound_transit(two_party_attack(), state, "2", "Bob", "6", eve);
  EXPECT_EQ(t.delivered, QubitName("8"));
  EXPECT_EQ(t.state.num_qubits(), 8u);
  EXPECT_EQ(eve.held_qubits, (std::set<QubitName>{"2", "7"}));
  // |00>_12 |00>_35 |00>_46 |00>_78 written out independently.
  const auto laid_out = t.state.reordered({"1", "2", "3", "5", "4", "6", "7", "8"});
  const auto expected = oracle::kron_all({oracle::bell(0), oracle::bell(0), oracle::bell(0), oracle::bell(0)});
  const auto got = to_vec(laid_out);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(std::abs(got[i] - expected[i]), 0.0, kIdentityTolerance);
  }
}

TEST(OutboundTransit, RejectsQubitsNotInTransit) {
  const auto state = prepare_bell({}, "1", "2");
  EveState eve;
  EXPECT_THROW(on_outbound_transit(two_party_attack(), state, "9", "Bob", "", eve), InvalidArgument);
  const auto t = on_outbound_transit(two_party_attack(), state, "2", "Bob", "", eve);
  EXPECT_THROW(on_outbound_transit(two_party_attack(), t.state, "2", "Bob", "", eve), InvalidArgument);
}

TEST(OutboundTransit, MultipartyInterceptHoldsEveryChannel) {
  const auto layout = EsLayout::multiparty(3);
  PureState state = prepare_initial_state(layout, EsInitialLabels::zeros(layout));
  EveStrategy s;
  s.kind = EveKind::multiparty_intercept;
  EveState eve;
  std::vector<QubitName> delivered;
  for (const auto& ch : layout.channels) {
    auto t = on_outbound_transit(s, std::move(state), ch.outbound, party_name(ch.party), ch.returning, eve);
    state = std::move(t.state);
    delivered.push_back(t.delivered);
  }
  EXPECT_EQ(eve.held_qubits, (std::set<QubitName>{"A", "e:A", "B", "e:B"}));
  EXPECT_EQ(delivered, (std::vector<QubitName>{"f:A", "f:B"}));
  EXPECT_EQ(state.num_qubits(), 13u);
  for (const auto& q : delivered) {
    // The delivered qubit is maximally entangled with Eve's retained half.
    const QubitName pair[] = {"e:" + q.str().substr(2), q};
    const auto dist = outcome_distribution(state, MeasurementBasis::bell(), pair);
    ASSERT_EQ(dist.size(), 1u);
    EXPECT_EQ(dist[0].label, "00");
  }
}

// After Alice's and Bob's secret measurements, Eve's result on (6,7) equals BS combined with
// the public label of (4,6) and her ancilla label.
TEST(ReturnTransit, SecretInferenceIsOneToOneWithBobResult) {
  const auto layout = EsLayout::two_party();
  for (const auto ancilla : BellLabel::all()) {
    for (const auto q46 : BellLabel::all()) {
      const EsInitialLabels labels{std::nullopt, {BellLabel{}, BellLabel{}, q46}};
      const auto strategy = two_party_attack(ReturnPolicy::forward_captured, ancilla);
      std::array<std::set<std::string>, 4> images;
      for (std::uint64_t round = 0; round < 40; ++round) {
        RandomSource rng(5, round);
        EveState eve;
        eve.public_frame = public_frame(layout, labels);
        auto t = on_outbound_transit(strategy, prepare_initial_state(layout, labels), "2", "Bob", "6", eve);
        auto [as, s1] = measure_bell(t.state, "1", "3", rng);
        auto [bs, s2] = measure_bell(s1, "4", t.delivered, rng);
        auto back = on_return_transit(strategy, s2, "6", eve, rng);
        EXPECT_EQ(back.delivered, QubitName("6"));
        const BellLabel bs_prime = eve.secret_inference.at("Bob");
        EXPECT_EQ(bs_prime, bs ^ q46 ^ ancilla);
        EXPECT_EQ(eve.reconstructed_secret.at("Bob"), bs);
        images[bs.index()].insert(bs_prime.str());
      }
      for (const auto& img : images) EXPECT_LE(img.size(), 1u);
    }
  }
}

TEST(ReturnTransit, FreshQubitPoliciesDeliverSubstitute) {
  const auto layout = EsLayout::two_party();
  const auto labels = EsInitialLabels::zeros(layout);
  for (auto policy : {ReturnPolicy::forward_ancilla, ReturnPolicy::random_guess}) {
    RandomSource rng(8, 0);
    EveState eve;
    eve.public_frame = public_frame(layout, labels);
    const auto strategy = two_party_attack(policy);
    auto t = on_outbound_transit(strategy, prepare_initial_state(layout, labels), "2", "Bob", "6", eve);
    auto [as, s1] = measure_bell(t.state, "1", "3", rng);
    auto [bs, s2] = measure_bell(s1, "4", t.delivered, rng);
    auto back = on_return_transit(strategy, s2, "6", eve, rng);
    EXPECT_EQ(back.delivered, QubitName("10"));
    EXPECT_TRUE(back.state.contains("5"));
    EXPECT_TRUE(eve.substitution.contains("6"));
    const QubitName pub[] = {"5", "10"};
    double total = 0;
    for (double p : outcome_probabilities(back.state, MeasurementBasis::bell(), pub)) total += p;
    EXPECT_NEAR(total, 1.0, kChainTolerance);
  }
}

TEST(ReturnTransit, UnknownReturningQubitRejected) {
  RandomSource rng(1, 0);
  EveState eve;
  const auto state = tensor({prepare_bell({}, "1", "2"), prepare_bell({}, "5", "6")});
  EXPECT_THROW(on_return_transit(two_party_attack(), state, "6", eve, rng), InvalidArgument);
  EXPECT_THROW(on_return_transit(two_party_attack(), state, "9", eve, rng), InvalidArgument);
  const auto t = on_return_transit({}, state, "6", eve, rng);
  EXPECT_EQ(t.delivered, QubitName("6"));
}

TEST(TwoPartyAttack, EveryPolicyIsDetectedThreeQuartersOfTheTime) {
  for (auto policy : {ReturnPolicy::forward_captured, ReturnPolicy::forward_ancilla,
                      ReturnPolicy::random_guess}) {
    const auto records = run_protocol(attacked(ProtocolKind::two_party_es, 2, 4000, two_party_attack(policy)));
    const double se = std::sqrt(0.75 * 0.25 / 4000);
    EXPECT_NEAR(mismatch_rate(records), 0.75, 3 * se) << to_string(policy);
    for (const auto& r : records) {
      EXPECT_TRUE(r.kept);
      EXPECT_TRUE(r.eve_active);
    }
    EXPECT_GT(eve_key_accuracy(records), 0.95) << to_string(policy);
  }
}

TEST(TwoPartyAttack, AncillaLabelDoesNotChangeTheRate) {
  const auto records = run_protocol(attacked(ProtocolKind::two_party_es, 2, 4000,
                                             two_party_attack(ReturnPolicy::forward_captured,
                                                              BellLabel::parse("11"))));
  EXPECT_NEAR(mismatch_rate(records), 0.75, 3 * std::sqrt(0.75 * 0.25 / 4000));
}

TEST(MultipartyAttack, ThreePartyDetectionRate) {
  EveStrategy s;
  s.kind = EveKind::multiparty_intercept;
  const auto records = run_protocol(attacked(ProtocolKind::multiparty_es, 3, 4000, s));
  EXPECT_NEAR(mismatch_rate(records), 7.0 / 8, 3 * std::sqrt(7.0 / 64 / 4000));
  EXPECT_NO_THROW(eve_key_accuracy(records));
}

TEST(MultipartyAttack, PartialAttackIsStillDetected) {
  EveStrategy s;
  s.kind = EveKind::multiparty_intercept;
  s.targets = {"Carol"};
  const auto records = run_protocol(attacked(ProtocolKind::multiparty_es, 3, 1000, s));
  EXPECT_GT(mismatch_rate(records), 0.3);
}

TEST(EveKeyAccuracy, RejectsRunsWithoutInference) {
  ProtocolConfig c;
  c.rounds = 20;
  const auto records = run_protocol(c);
  EXPECT_THROW(eve_key_accuracy(records), InvalidArgument);
}

TEST(Opacity, AttackedRegisterSingleQubitMarginalsAreUniform) {
  const auto layout = EsLayout::two_party();
  EveState eve;
  const auto t = on_outbound_transit(two_party_attack(), prepare_initial_state(layout, EsInitialLabels::zeros(layout)),
                                     "2", "Bob", "6", eve);
  for (const auto& q : t.state.qubit_order()) {
    for (auto axis : {PauliAxis::z, PauliAxis::x, PauliAxis::y}) {
      const QubitName one[] = {q};
      const auto probs = outcome_probabilities(t.state, MeasurementBasis::pauli(axis), one);
      EXPECT_NEAR(probs[0], 0.5, kIdentityTolerance) << q.str();
      EXPECT_NEAR(probs[1], 0.5, kIdentityTolerance) << q.str();
    }
  }
}

TEST(NoSignaling, AliceSecretMarginalIsExactlyUniformUnderAttack) {
  const auto layout = EsLayout::two_party();
  EveState eve;
  const auto t = on_outbound_transit(two_party_attack(), prepare_initial_state(layout, EsInitialLabels::zeros(layout)),
                                     "2", "Bob", "6", eve);
  const QubitName pair[] = {"1", "3"};
  for (double p : outcome_probabilities(t.state, MeasurementBasis::bell(), pair)) {
    EXPECT_NEAR(p, 0.25, kIdentityTolerance);
  }
}

TEST(NoSignaling, AliceSecretPassesChiSquareUnderAttack) {
  for (auto policy : {ReturnPolicy::forward_captured, ReturnPolicy::random_guess}) {
    const auto records = run_protocol(attacked(ProtocolKind::two_party_es, 2, 10000, two_party_attack(policy), 21));
    std::vector<std::size_t> counts(4, 0);
    for (const auto& r : records) ++counts[BellLabel::parse(r.secret_results.at("Alice")).index()];
    const auto chi = chi_square_uniform(counts);
    EXPECT_EQ(chi.degrees_of_freedom, 3u);
    EXPECT_GT(chi.p_value, 0.01);
  }
  EveStrategy s;
  s.kind = EveKind::multiparty_intercept;
  const auto records = run_protocol(attacked(ProtocolKind::multiparty_es, 3, 4000, s, 21));
  std::vector<std::size_t> counts(4, 0);
  for (const auto& r : records) ++counts[BellLabel::parse(r.secret_results.at("Alice")).index()];
  EXPECT_GT(chi_square_uniform(counts).p_value, 0.01);
}

TEST(Parsing, EveKindsAndPolicies) {
  for (auto k : {EveKind::none, EveKind::two_party_intercept, EveKind::multiparty_intercept}) {
    EXPECT_EQ(parse_eve_kind(to_string(k)), k);
  }
  for (auto p : {ReturnPolicy::forward_captured, ReturnPolicy::forward_ancilla, ReturnPolicy::random_guess}) {
    EXPECT_EQ(parse_return_policy(to_string(p)), p);
  }
  EXPECT_THROW(parse_eve_kind("mitm"), InvalidArgument);
  EXPECT_THROW(parse_return_policy("drop"), InvalidArgument);
}

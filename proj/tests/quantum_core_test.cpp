#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "esqkd/basis.hpp"
#include "esqkd/error.hpp"
#include "esqkd/labels.hpp"
#include "esqkd/measure.hpp"
#include "esqkd/random.hpp"
#include "esqkd/state.hpp"
#include "oracle.hpp"

using namespace esqkd;

namespace {

const double h = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const PureState& s, const std::vector<Amplitude>& expected) {
  ASSERT_EQ(s.dimension(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(std::abs(s.amplitudes()[i] - expected[i]), 0.0, kIdentityTolerance) << "index " << i;
  }
}

oracle::Vec to_vec(const PureState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

double label_probability(const std::vector<Outcome>& dist, const std::string& label) {
  for (const auto& o : dist) {
    if (o.label == label) return o.probability;
  }
  return 0.0;
}

// The all-00 two-party initial register, (1,2)(3,5)(4,6).
PureState six_qubit_initial() {
  return tensor({prepare_bell({}, "1", "2"), prepare_bell({}, "3", "5"), prepare_bell({}, "4", "6")});
}

}  // namespace

TEST(Labels, BellParseAndBits) {
  const auto l = BellLabel::parse("10");
  EXPECT_EQ(l.high(), 1);
  EXPECT_EQ(l.low(), 0);
  EXPECT_EQ(l.bit(1), 1);
  EXPECT_EQ(l.bit(2), 0);
  EXPECT_EQ(l.str(), "10");
  EXPECT_EQ((BellLabel::parse("10") ^ BellLabel::parse("11")).str(), "01");
  EXPECT_THROW(BellLabel::parse("2"), InvalidArgument);
  EXPECT_THROW(BellLabel::parse("001"), InvalidArgument);
}

TEST(Labels, GhzParseAndBits) {
  const auto g = GhzLabel::parse("0110");
  EXPECT_EQ(g.width(), 4u);
  EXPECT_EQ(g.value(), 6u);
  EXPECT_EQ(g.bit(1), 0);
  EXPECT_EQ(g.bit(2), 1);
  EXPECT_EQ(g.bit(4), 0);
  EXPECT_EQ(g.str(), "0110");
  EXPECT_THROW(GhzLabel::parse("0"), InvalidArgument);
  EXPECT_THROW(GhzLabel::parse("01a"), InvalidArgument);
}

TEST(Labels, AxisRoundTrip) {
  for (auto a : {PauliAxis::z, PauliAxis::x, PauliAxis::y}) EXPECT_EQ(parse_axis(to_string(a)), a);
  EXPECT_THROW(parse_axis("w"), InvalidArgument);
}

TEST(PrepareBell, AmplitudeLayouts) {
  expect_amplitudes(prepare_bell(BellLabel::parse("00"), "1", "2"), {h, 0, 0, h});
  expect_amplitudes(prepare_bell(BellLabel::parse("01"), "1", "2"), {h, 0, 0, -h});
  expect_amplitudes(prepare_bell(BellLabel::parse("10"), "1", "2"), {0, h, h, 0});
  expect_amplitudes(prepare_bell(BellLabel::parse("11"), "5", "6"), {0, h, -h, 0});
}

TEST(PrepareBell, DuplicateNamesRejected) {
  EXPECT_THROW(prepare_bell({}, "1", "1"), InvalidArgument);
}

TEST(PrepareBell, MeasuredInBellBasisGivesPreparedLabel) {
  const auto s = prepare_bell(BellLabel::parse("01"), "1", "2");
  const QubitName pair[] = {"1", "2"};
  const auto dist = outcome_distribution(s, MeasurementBasis::bell(), pair);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist[0].label, "01");
  EXPECT_NEAR(dist[0].probability, 1.0, kIdentityTolerance);
}

TEST(PrepareGhz, ThreeQubitBranches) {
  // index = 4*b0 + 2*b1 + b2
  std::vector<Amplitude> zero(8, 0.0);
  auto expected = zero;
  expected[0] = h;
  expected[7] = h;
  expect_amplitudes(prepare_ghz(GhzLabel::parse("000"), {"3", "A", "B"}), expected);

  expected = zero;
  expected[4] = h;  // |100>
  expected[3] = h;  // |011>
  expect_amplitudes(prepare_ghz(GhzLabel::parse("110"), {"i", "j", "k"}), expected);

  expected[3] = -h;
  expect_amplitudes(prepare_ghz(GhzLabel::parse("111"), {"i", "j", "k"}), expected);

  expected = zero;
  expected[1] = h;  // |001>
  expected[6] = h;  // |110>
  expect_amplitudes(prepare_ghz(GhzLabel::parse("010"), {"i", "j", "k"}), expected);

  expected = zero;
  expected[2] = h;  // |010>
  expected[5] = h;  // |101>
  expect_amplitudes(prepare_ghz(GhzLabel::parse("100"), {"i", "j", "k"}), expected);
}

TEST(PrepareGhz, LengthMismatchRejected) {
  EXPECT_THROW(prepare_ghz(GhzLabel::parse("000"), {"a", "b"}), InvalidArgument);
}

TEST(PrepareGhzX, MatchesHandExpansion) {
  using namespace oracle;
  // (|+++> + |--->)/sqrt2 expanded independently.
  const Vec expected = scale(add(kron_all({plus(), plus(), plus()}),
                                 kron_all({minus(), minus(), minus()})),
                             r);
  const auto s = prepare_ghz_x({"1", "A", "B"});
  expect_amplitudes(s, expected);
  EXPECT_NEAR(s.amplitudes()[0].real(), 0.5, kIdentityTolerance);
}

TEST(PrepareGhzX, OverlapWithZVariant) {
  using namespace oracle;
  const Vec x = scale(add(kron_all({plus(), plus(), plus()}), kron_all({minus(), minus(), minus()})), r);
  const Vec z = scale(add(kron_all({ket0(), ket0(), ket0()}), kron_all({ket1(), ket1(), ket1()})), r);
  EXPECT_NEAR(std::abs(dot(z, x) - 0.5 * r), 0.0, kIdentityTolerance);
  const auto core = inner_product(prepare_ghz_z({"1", "A", "B"}), prepare_ghz_x({"1", "A", "B"}));
  EXPECT_NEAR(std::abs(core - 0.5 * r), 0.0, kIdentityTolerance);
}

TEST(PrepareGhzX, AllSigmaXResultsAgree) {
  RandomSource rng(11, 0);
  int plus_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    PureState s = prepare_ghz_x({"1", "A", "B"});
    auto [first, s1] = measure_pauli(s, "1", PauliAxis::x, rng);
    auto [second, s2] = measure_pauli(s1, "A", PauliAxis::x, rng);
    auto [third, s3] = measure_pauli(s2, "B", PauliAxis::x, rng);
    EXPECT_EQ(first, second);
    EXPECT_EQ(first, third);
    plus_count += first > 0 ? 1 : 0;
  }
  const QubitName one[] = {"1"};
  const auto dist = outcome_distribution(prepare_ghz_x({"1", "A", "B"}),
                                         MeasurementBasis::pauli(PauliAxis::x), one);
  EXPECT_NEAR(label_probability(dist, "+1"), 0.5, kIdentityTolerance);
  EXPECT_GT(plus_count, 140);
  EXPECT_LT(plus_count, 260);
}

TEST(Tensor, ThreeBellPairsHaveEightEqualBranches) {
  const auto s = six_qubit_initial();
  EXPECT_EQ(s.num_qubits(), 6u);
  int nonzero = 0;
  for (const auto& a : s.amplitudes()) {
    if (std::abs(a) > kIdentityTolerance) {
      ++nonzero;
      EXPECT_NEAR(std::abs(a - std::pow(h, 3)), 0.0, kIdentityTolerance);
    }
  }
  EXPECT_EQ(nonzero, 8);
  EXPECT_NEAR(s.norm_squared(), 1.0, kIdentityTolerance);
}

TEST(Tensor, AmplitudeIsProductOfFactors) {
  const auto a = prepare_bell(BellLabel::parse("11"), "x", "y");
  const auto b = prepare(pauli_ket(PauliAxis::y, -1), {"z"});
  const auto joint = tensor({a, b});
  const auto expected = oracle::kron(to_vec(a), to_vec(b));
  expect_amplitudes(joint, expected);
}

TEST(Tensor, SingleStateUnchanged) {
  const auto a = prepare_bell(BellLabel::parse("10"), "p", "q");
  const auto t = tensor({a});
  EXPECT_EQ(t.qubit_order(), a.qubit_order());
  expect_amplitudes(t, to_vec(a));
}

TEST(Tensor, NineQubitRegisterIsNormalized) {
  const auto s = tensor({prepare_ghz_z({"3", "A", "B"}), prepare_bell({}, "1", "2"),
                         prepare_bell({}, "5", "D"), prepare_bell({}, "4", "C")});
  EXPECT_EQ(s.num_qubits(), 9u);
  EXPECT_NEAR(s.norm_squared(), 1.0, kIdentityTolerance);
}

TEST(Tensor, NameCollisionRejected) {
  EXPECT_THROW(tensor({prepare_bell({}, "1", "2"), prepare_bell({}, "2", "3")}), InvalidArgument);
}

TEST(PureState, CapacityEnforced) {
  std::vector<PureState> pairs;
  for (int i = 0; i < 8; ++i) {
    pairs.push_back(prepare_bell({}, "a" + std::to_string(i), "b" + std::to_string(i)));
  }
  EXPECT_NO_THROW(tensor(pairs));
  pairs.push_back(prepare_bell({}, "c", "d"));
  EXPECT_THROW(tensor(pairs), CapacityError);
}

TEST(PureState, RejectsBadConstruction) {
  EXPECT_THROW(PureState({"a", "a"}, std::vector<Amplitude>(4, 0.5)), InvalidArgument);
  EXPECT_THROW(PureState({"a"}, std::vector<Amplitude>(4, 0.5)), InvalidArgument);
  EXPECT_THROW(PureState({"a"}, {Amplitude{NAN, 0.0}, 0.0}), InvalidArgument);
  EXPECT_THROW(PureState({"a"}, {1.0, 1.0}), ConsistencyError);
}

TEST(PureState, FactorOutSeparatesProducts) {
  const auto s = tensor({prepare_bell(BellLabel::parse("10"), "1", "2"),
                         prepare_bell(BellLabel::parse("01"), "3", "4")});
  const QubitName pair[] = {"1", "2"};
  const auto rest = s.factor_out(pair);
  EXPECT_EQ(rest.qubit_order(), (std::vector<QubitName>{"3", "4"}));
  expect_amplitudes(rest, {h, 0, 0, -h});
  const QubitName half[] = {"1"};
  EXPECT_THROW(s.factor_out(half), ConsistencyError);
}

TEST(MeasureBell, InitialStateGivesUniformSecretOutcome) {
  const auto s = six_qubit_initial();
  const QubitName pair[] = {"1", "3"};
  const auto dist = outcome_distribution(s, MeasurementBasis::bell(), pair);
  ASSERT_EQ(dist.size(), 4u);
  // Independent projector enumeration over the raw amplitude vector.
  const auto vec = to_vec(s);
  for (int label = 0; label < 4; ++label) {
    const double p = oracle::probability(vec, 6, {0, 2}, oracle::bell(label));
    EXPECT_NEAR(p, 0.25, kIdentityTolerance);
    EXPECT_NEAR(label_probability(dist, BellLabel::from_index(label).str()), p, kIdentityTolerance);
  }
}

TEST(MeasureBell, EigenstateIsUnchanged) {
  const auto s = prepare_bell(BellLabel::parse("10"), "a", "b");
  RandomSource rng(3, 0);
  auto [label, post] = measure_bell(s, "a", "b", rng);
  EXPECT_EQ(label.str(), "10");
  EXPECT_NEAR(std::abs(inner_product(s, post)), 1.0, kIdentityTolerance);
}

TEST(MeasureBell, SecretOutcomeLeavesCorrelatedPartnerPair) {
  const auto s = six_qubit_initial();
  for (const auto as : BellLabel::all()) {
    const QubitName pair[] = {"1", "3"};
    const auto dist = outcome_distribution(s, MeasurementBasis::bell(), pair);
    for (const auto& o : dist) {
      if (o.label != as.str()) continue;
      const auto rest = o.post_state.factor_out(pair);
      const QubitName partners[] = {"2", "5"};
      const auto partner = outcome_distribution(rest, MeasurementBasis::bell(), partners);
      ASSERT_EQ(partner.size(), 1u);
      EXPECT_EQ(partner[0].label, as.str());
      const QubitName last[] = {"4", "6"};
      const auto untouched = outcome_distribution(rest, MeasurementBasis::bell(), last);
      ASSERT_EQ(untouched.size(), 1u);
      EXPECT_EQ(untouched[0].label, "00");
    }
  }
}

TEST(MeasureBell, UnknownNameRejected) {
  RandomSource rng(1, 0);
  EXPECT_THROW(measure_bell(prepare_bell({}, "a", "b"), "a", "z", rng), InvalidArgument);
}

TEST(MeasureGhz, EigenstateIsCertain) {
  RandomSource rng(5, 0);
  const auto s = prepare_ghz(GhzLabel::parse("101"), {"x", "y", "z"});
  const QubitName names[] = {"x", "y", "z"};
  auto [label, post] = measure_ghz(s, names, rng);
  EXPECT_EQ(label.str(), "101");
}

TEST(MeasurePauli, ComputationalAndHadamardEigenstates) {
  RandomSource rng(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_EQ(measure_pauli(basis_state({"q"}, "0"), "q", PauliAxis::z, rng).first, 1);
    EXPECT_EQ(measure_pauli(basis_state({"q"}, "1"), "q", PauliAxis::z, rng).first, -1);
    EXPECT_EQ(measure_pauli(prepare(pauli_ket(PauliAxis::x, 1), {"q"}), "q", PauliAxis::x, rng).first, 1);
    EXPECT_EQ(measure_pauli(prepare(pauli_ket(PauliAxis::y, -1), {"q"}), "q", PauliAxis::y, rng).first, -1);
  }
}

TEST(MeasurePauli, SigmaYEigenstatePhases) {
  expect_amplitudes(prepare(pauli_ket(PauliAxis::y, 1), {"q"}), {h, Amplitude{0, h}});
  expect_amplitudes(prepare(pauli_ket(PauliAxis::y, -1), {"q"}), {h, Amplitude{0, -h}});
}

TEST(MeasurePauli, GhzZResultsAgree) {
  RandomSource rng(21, 0);
  for (int trial = 0; trial < 100; ++trial) {
    PureState s = prepare_ghz_z({"1", "A", "B"});
    auto [a, s1] = measure_pauli(s, "A", PauliAxis::z, rng);
    auto [b, s2] = measure_pauli(s1, "1", PauliAxis::z, rng);
    auto [c, s3] = measure_pauli(s2, "B", PauliAxis::z, rng);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
  }
}

TEST(Properties, CompletenessAndNormalization) {
  RandomSource rng(77, 0);
  const auto s = tensor({prepare_ghz_x({"3", "A", "B"}), prepare_bell(BellLabel::parse("11"), "1", "2"),
                         prepare_bell(BellLabel::parse("01"), "5", "D")});
  const std::vector<std::vector<QubitName>> subsets = {{"1", "A"}, {"2", "D"}, {"3", "5"}};
  for (const auto& names : subsets) {
    const auto dist = outcome_distribution(s, MeasurementBasis::bell(), names);
    double total = 0;
    for (const auto& o : dist) {
      total += o.probability;
      EXPECT_NEAR(o.post_state.norm_squared(), 1.0, kIdentityTolerance);
    }
    EXPECT_NEAR(total, 1.0, kChainTolerance);
  }
  const QubitName triple[] = {"1", "A", "D"};
  double total = 0;
  for (const auto& o : outcome_distribution(s, MeasurementBasis::ghz(3), triple)) {
    total += o.probability;
    EXPECT_NEAR(o.post_state.norm_squared(), 1.0, kIdentityTolerance);
  }
  EXPECT_NEAR(total, 1.0, kChainTolerance);
  auto [label, post] = measure_bell(s, "2", "B", rng);
  EXPECT_NEAR(post.norm_squared(), 1.0, kIdentityTolerance);
}

TEST(Properties, Repeatability) {
  RandomSource rng(4, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = six_qubit_initial();
    auto [first, post] = measure_bell(s, "2", "3", rng);
    const QubitName pair[] = {"2", "3"};
    const auto again = outcome_distribution(post, MeasurementBasis::bell(), pair);
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0].label, first.str());
    EXPECT_NEAR(again[0].probability, 1.0, kIdentityTolerance);

    const QubitName triple[] = {"1", "5", "6"};
    auto [g, gpost] = measure_ghz(s, triple, rng);
    const auto g_again = outcome_distribution(gpost, MeasurementBasis::ghz(3), triple);
    ASSERT_EQ(g_again.size(), 1u);
    EXPECT_EQ(g_again[0].label, g.str());
  }
}

TEST(Properties, BasisOrthonormality) {
  const auto check = [](const MeasurementBasis& basis) {
    std::vector<QubitName> names;
    for (unsigned q = 0; q < basis.arity(); ++q) names.push_back("q" + std::to_string(q));
    for (const auto& a : basis.kets()) {
      for (const auto& b : basis.kets()) {
        const auto ip = inner_product(prepare(a, names), prepare(b, names));
        EXPECT_NEAR(std::abs(ip - (a.label == b.label ? 1.0 : 0.0)), 0.0, kIdentityTolerance)
            << a.label << " vs " << b.label;
      }
    }
  };
  check(MeasurementBasis::bell());
  for (unsigned n = 2; n <= 4; ++n) {
    EXPECT_EQ(MeasurementBasis::ghz(n).kets().size(), 1u << n);
    check(MeasurementBasis::ghz(n));
  }
  // Independent check of the Bell kets against hard-coded vectors.
  for (int l = 0; l < 4; ++l) {
    const auto s = prepare_bell(BellLabel::from_index(l), "a", "b");
    EXPECT_NEAR(std::abs(oracle::dot(oracle::bell(l), to_vec(s)) - 1.0), 0.0, kIdentityTolerance);
  }
}

TEST(Properties, PermutationConsistency) {
  const auto s = tensor({prepare_ghz(GhzLabel::parse("011"), {"3", "A", "B"}),
                         prepare_bell(BellLabel::parse("10"), "1", "2")});
  const auto shuffled = s.reordered({"B", "2", "3", "1", "A"});
  const std::vector<std::vector<QubitName>> subsets = {{"1", "A"}, {"2", "B"}, {"3", "1"}};
  for (const auto& names : subsets) {
    const auto a = outcome_probabilities(s, MeasurementBasis::bell(), names);
    const auto b = outcome_probabilities(shuffled, MeasurementBasis::bell(), names);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], kIdentityTolerance);
  }
  const QubitName triple[] = {"B", "1", "3"};
  const auto a = outcome_probabilities(s, MeasurementBasis::ghz(3), triple);
  const auto b = outcome_probabilities(shuffled, MeasurementBasis::ghz(3), triple);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], kIdentityTolerance);
}

TEST(Properties, SingleQubitOpacityOfBellHalves) {
  for (const auto label : BellLabel::all()) {
    const auto s = prepare_bell(label, "a", "b");
    for (const char* q : {"a", "b"}) {
      for (auto axis : {PauliAxis::z, PauliAxis::x, PauliAxis::y}) {
        const QubitName one[] = {q};
        const auto probs = outcome_probabilities(s, MeasurementBasis::pauli(axis), one);
        ASSERT_EQ(probs.size(), 2u);
        EXPECT_NEAR(probs[0], 0.5, kIdentityTolerance);
        EXPECT_NEAR(probs[1], 0.5, kIdentityTolerance);
      }
    }
  }
}

TEST(RandomSource, SameSeedAndStreamRepeat) {
  RandomSource a(123, 7);
  RandomSource b(123, 7);
  RandomSource c(123, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
  RandomSource d(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(d.below(3), 3u);
  }
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esqkd/adversary.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/inference.hpp"
#include "esqkd/random.hpp"
#include "esqkd/records.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

struct ProtocolConfig {
  ProtocolKind protocol = ProtocolKind::two_party_es;
  unsigned num_parties = 2;
  std::uint64_t rounds = 1;
  std::uint64_t seed = 0;
  EveStrategy eve;
  /// Fraction of kept rounds sacrificed to a public key comparison; 0 skips the comparison.
  double comparison_fraction = 0.0;
  /// GHZ protocol only: Alice tells every party which measurement to make.
  bool ghz_variant_announce = false;
  /// ES protocols only; defaults to all-zero labels.
  std::optional<EsInitialLabels> initial_labels;
  /// Worker threads for round execution; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws InvalidArgument for out-of-range values and unsupported combinations.
  void validate() const;
};

/// Per-round random stream: RandomSource(seed, round).
inline RandomSource round_randomness(std::uint64_t seed, std::uint64_t round) {
  return RandomSource(seed, round);
}

/// Fixed wiring, public labels and inference table of an ES protocol instance.
class EsSession {
 public:
  EsSession(unsigned num_parties, std::optional<EsInitialLabels> labels = std::nullopt);

  const EsLayout& layout() const { return layout_; }
  const EsInitialLabels& labels() const { return labels_; }
  const InferenceTable& table() const { return table_; }
  const LabelFrame& frame() const { return frame_; }

  /// One full round: Alice's secret measurement, the outbound transits and every party's
  /// secret measurement, the return transits, then Alice's public measurement and all
  /// inferences.
  RoundRecord run_round(std::uint64_t round, const EveStrategy& eve,
                        RandomSource& randomness) const;

 private:
  EsLayout layout_;
  EsInitialLabels labels_;
  InferenceTable table_;
  LabelFrame frame_;
};

/// Name used for the coalition of every non-Alice party, e.g. "Bob+Carol".
std::string pooled_party_name(unsigned num_parties);

/// Runs `round_fn` for rounds 0..rounds-1 on up to `threads` workers (0 = hardware
/// concurrency). Each call receives its own RandomSource(seed, round); the result is
/// ordered by round. The first exception thrown by any round is rethrown.
std::vector<RoundRecord> run_rounds(
    std::uint64_t rounds, std::uint64_t seed, unsigned threads,
    const std::function<RoundRecord(std::uint64_t, RandomSource&)>& round_fn);

std::vector<RoundRecord> run_two_party_es(const ProtocolConfig& config);
std::vector<RoundRecord> run_multiparty_ghz(const ProtocolConfig& config);
std::vector<RoundRecord> run_multiparty_es(const ProtocolConfig& config);
std::vector<RoundRecord> run_hbb99(const ProtocolConfig& config);
std::vector<RoundRecord> run_kki99(const ProtocolConfig& config);
/// Validates and dispatches on config.protocol.
std::vector<RoundRecord> run_protocol(const ProtocolConfig& config);

RoundRecord multiparty_ghz_round(unsigned num_parties, bool announce, const EveStrategy& eve,
                                 std::uint64_t round, RandomSource& randomness);
RoundRecord hbb99_round(const EveStrategy& eve, std::uint64_t round, RandomSource& randomness);
RoundRecord kki99_round(const EveStrategy& eve, std::uint64_t round, RandomSource& randomness);

/// Parity (0 = equal signs) of the product of Pauli measurements of `names` along `axes`,
/// when it is the same on every outcome branch; nullopt when it varies.
std::optional<int> deterministic_parity(const PureState& state, std::span<const QubitName> names,
                                        std::span<const PauliAxis> axes);

/// The two-qubit states Alice chooses from in the KKI scheme, in order
/// psi+, phi-, Psi+, Phi-. Sets are {0, 1} and {2, 3}.
PureState kki_state(unsigned index, const QubitName& bob, const QubitName& carol);

/// Public declarations of one KKI round, which must happen in this order:
/// test outcomes, Bob's outcomes, Carol's choices and outcomes, Bob's choices, Alice's set.
/// Any other order throws ProtocolViolation.
class KkiDeclarations {
 public:
  enum class Step { test_outcomes, bob_outcomes, carol_choices_and_outcomes, bob_choices,
                    alice_set, done };

  Step next() const { return next_; }
  void declare_test_outcomes();
  void declare_bob_outcomes(int outcome);
  void declare_carol(PauliAxis axis, int outcome);
  void declare_bob_choice(PauliAxis axis);
  void reveal_set(unsigned set);

  std::optional<int> bob_outcome;
  std::optional<PauliAxis> bob_axis;
  std::optional<int> carol_outcome;
  std::optional<PauliAxis> carol_axis;
  std::optional<unsigned> alice_set;

 private:
  void advance(Step expected);
  Step next_ = Step::test_outcomes;
};

struct KeyComparison {
  std::size_t tested = 0;
  std::size_t mismatches = 0;
  bool alarm = false;
};

/// Samples ceil(fraction * kept) kept rounds without replacement, counts those whose
/// inferences disagree with Alice's bits and marks them consumed.
/// Throws InvalidArgument when fraction is outside (0, 1] or no round is kept.
KeyComparison compare_key_subset(std::span<RoundRecord> records, double fraction,
                                 RandomSource& randomness);

}  // namespace esqkd

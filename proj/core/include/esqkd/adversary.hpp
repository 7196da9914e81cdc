#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "esqkd/inference.hpp"
#include "esqkd/label_frame.hpp"
#include "esqkd/labels.hpp"
#include "esqkd/random.hpp"
#include "esqkd/records.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

enum class EveKind { none, two_party_intercept, multiparty_intercept };

/// What Eve hands Alice when a returning qubit passes her.
enum class ReturnPolicy {
  /// Bell-measure the returning qubit against the retained ancilla, then forward it.
  forward_captured,
  /// Same measurement, then forward a fresh qubit swapped onto the captured outbound qubit
  /// using a pair prepared in ancilla_label.
  forward_ancilla,
  /// As forward_ancilla with the fresh pair in a uniformly random Bell state.
  random_guess,
};

std::string_view to_string(EveKind kind);
std::string_view to_string(ReturnPolicy policy);
EveKind parse_eve_kind(std::string_view text);
ReturnPolicy parse_return_policy(std::string_view text);

/// Intercept-substitute attack configuration.
struct EveStrategy {
  EveKind kind = EveKind::none;
  ReturnPolicy return_policy = ReturnPolicy::forward_captured;
  BellLabel ancilla_label{};
  /// Parties whose channels are attacked; empty means every channel.
  std::set<std::string> targets;

  bool active() const { return kind != EveKind::none; }
  bool attacks(const std::string& party) const {
    return active() && (targets.empty() || targets.contains(party));
  }
};

/// Eve's per-round memory.
struct EveState {
  /// Initial public Bell pairs of the protocol instance.
  LabelFrame public_frame;
  /// Qubits of Alice's secret Bell measurement (public protocol wiring).
  std::optional<std::pair<QubitName, QubitName>> alice_secret_pair;
  std::set<QubitName> held_qubits;
  /// Returning qubit -> Eve's retained ancilla half.
  std::map<QubitName, QubitName> retained_ancilla;
  /// Returning qubit -> the outbound qubit Eve captured on the same party's channel.
  std::map<QubitName, QubitName> captured_outbound;
  /// Returning qubit -> recipient party.
  std::map<QubitName, std::string> channel_party;
  /// BS' per party: Eve's Bell result on (returning qubit, retained ancilla).
  std::map<std::string, BellLabel> secret_inference;
  /// The party's secret result reconstructed from BS'.
  std::map<std::string, BellLabel> reconstructed_secret;
  /// Fresh pair label and Eve's Bell result when she re-entangled a delivered qubit.
  std::map<QubitName, std::pair<BellLabel, BellLabel>> substitution;
  std::optional<std::string> announced_ap_seen;
  /// Eve's reconstruction of the round's key material.
  std::optional<std::string> key_inference;
};

/// Result of a quantum-channel transit: the register and the qubit that actually arrives.
struct Transit {
  PureState state;
  QubitName delivered;
};

/// Hook for a qubit leaving Alice toward `party`. `expected_return` is the qubit that party
/// will later send back (public protocol knowledge); pass an empty name when none.
///
/// Intercept kinds capture `qubit`, add an ancilla pair in ancilla_label (named "7"/"8" for
/// the two-party attack, "e:<q>"/"f:<q>" otherwise) and deliver the second half.
Transit on_outbound_transit(const EveStrategy& strategy, PureState state, const QubitName& qubit,
                            const std::string& party, const QubitName& expected_return,
                            EveState& eve);

/// Hook for a qubit travelling back to Alice. Intercept kinds Bell-measure it against the
/// retained ancilla (recording BS') and then deliver according to the return policy.
Transit on_return_transit(const EveStrategy& strategy, PureState state, const QubitName& qubit,
                          EveState& eve, RandomSource& randomness);

/// Called once Alice announces her public result; Eve completes her reconstruction of the
/// key material into eve.key_inference.
PureState on_public_announcement(const EveStrategy& strategy, PureState state,
                                 const GhzLabel& announced, const InferenceTable& table,
                                 EveState& eve, RandomSource& randomness);

/// Fraction of rounds in which Eve's reconstruction equals Alice's key material.
/// Throws InvalidArgument when no round carries an Eve inference.
double eve_key_accuracy(std::span<const RoundRecord> records);

}  // namespace esqkd

#include "esqkd/adversary.hpp"

#include "esqkd/basis.hpp"
#include "esqkd/error.hpp"
#include "esqkd/measure.hpp"

namespace esqkd {

std::string_view to_string(EveKind kind) {
  switch (kind) {
    case EveKind::none: return "none";
    case EveKind::two_party_intercept: return "two_party_intercept";
    case EveKind::multiparty_intercept: return "multiparty_intercept";
  }
  return "?";
}

std::string_view to_string(ReturnPolicy policy) {
  switch (policy) {
    case ReturnPolicy::forward_captured: return "forward_captured";
    case ReturnPolicy::forward_ancilla: return "forward_ancilla";
    case ReturnPolicy::random_guess: return "random_guess";
  }
  return "?";
}

EveKind parse_eve_kind(std::string_view text) {
  if (text == "none") return EveKind::none;
  if (text == "two_party_intercept") return EveKind::two_party_intercept;
  if (text == "multiparty_intercept") return EveKind::multiparty_intercept;
  throw InvalidArgument("unknown eavesdropper kind '" + std::string(text) + "'");
}

ReturnPolicy parse_return_policy(std::string_view text) {
  if (text == "forward_captured") return ReturnPolicy::forward_captured;
  if (text == "forward_ancilla") return ReturnPolicy::forward_ancilla;
  if (text == "random_guess") return ReturnPolicy::random_guess;
  throw InvalidArgument("unknown return policy '" + std::string(text) + "'");
}

Transit on_outbound_transit(const EveStrategy& strategy, PureState state, const QubitName& qubit,
                            const std::string& party, const QubitName& expected_return,
                            EveState& eve) {
  if (!state.contains(qubit) || eve.held_qubits.contains(qubit)) {
    throw InvalidArgument("qubit '" + qubit.str() + "' is not in transit");
  }
  if (!strategy.attacks(party)) return {std::move(state), qubit};

  QubitName keep;
  QubitName send;
  if (strategy.kind == EveKind::two_party_intercept) {
    if (!eve.held_qubits.empty()) {
      throw InvalidArgument("the two-party attack intercepts a single channel");
    }
    keep = "7";
    send = "8";
  } else {
    keep = "e:" + qubit.str();
    send = "f:" + qubit.str();
  }
  PureState extended = tensor({state, prepare_bell(strategy.ancilla_label, keep, send)});
  eve.held_qubits.insert(qubit);
  eve.held_qubits.insert(keep);
  if (!expected_return.str().empty()) {
    eve.retained_ancilla[expected_return] = keep;
    eve.captured_outbound[expected_return] = qubit;
    eve.channel_party[expected_return] = party;
  }
  return {std::move(extended), send};
}

Transit on_return_transit(const EveStrategy& strategy, PureState state, const QubitName& qubit,
                          EveState& eve, RandomSource& randomness) {
  if (!state.contains(qubit)) {
    throw InvalidArgument("qubit '" + qubit.str() + "' is not in transit");
  }
  if (!strategy.active()) return {std::move(state), qubit};
  const auto ancilla = eve.retained_ancilla.find(qubit);
  if (ancilla == eve.retained_ancilla.end()) {
    if (strategy.targets.empty()) {
      throw InvalidArgument("no retained ancilla pairs with returning qubit '" + qubit.str() + "'");
    }
    return {std::move(state), qubit};
  }
  const QubitName keep = ancilla->second;
  const std::string& party = eve.channel_party.at(qubit);

  auto [bs_prime, measured] = measure_bell(state, qubit, keep, randomness);
  eve.secret_inference[party] = bs_prime;
  const auto partner = eve.public_frame.partner_of(qubit);
  if (partner) {
    const BellLabel own_pair = *eve.public_frame.label_of(*partner, qubit);
    eve.reconstructed_secret[party] = swap_labels(bs_prime, strategy.ancilla_label, own_pair);
  }

  if (strategy.return_policy == ReturnPolicy::forward_captured) {
    eve.held_qubits.erase(qubit);
    return {std::move(measured), qubit};
  }

  // Re-entangle a fresh qubit with the captured outbound qubit and deliver it instead.
  const BellLabel fresh_label = strategy.return_policy == ReturnPolicy::random_guess
                                    ? BellLabel::from_index(static_cast<unsigned>(randomness.below(4)))
                                    : strategy.ancilla_label;
  const bool two_party = strategy.kind == EveKind::two_party_intercept;
  const QubitName fresh_keep = two_party ? QubitName("9") : QubitName("g:" + qubit.str());
  const QubitName fresh_send = two_party ? QubitName("10") : QubitName("h:" + qubit.str());
  const QubitName captured = eve.captured_outbound.at(qubit);

  const QubitName done[] = {qubit, keep};
  PureState reduced = measured.factor_out(done);
  PureState extended = tensor({reduced, prepare_bell(fresh_label, fresh_keep, fresh_send)});
  auto [swap_result, swapped] = measure_bell(extended, captured, fresh_keep, randomness);
  eve.substitution[qubit] = {fresh_label, swap_result};
  const QubitName used[] = {captured, fresh_keep};
  eve.held_qubits.erase(qubit);
  eve.held_qubits.erase(keep);
  eve.held_qubits.erase(captured);
  return {swapped.factor_out(used), fresh_send};
}

namespace {

/// The two-party attack: recover AS' on the pair (captured outbound qubit, Alice's
/// remaining qubit), then undo the public initial labels.
std::optional<BellLabel> two_party_reconstruction(PureState& state, const GhzLabel& announced,
                                                  const std::pair<QubitName, QubitName>& alice_pair,
                                                  EveState& eve, RandomSource& randomness) {
  if (eve.retained_ancilla.empty()) return std::nullopt;
  const auto& [returning, keep] = *eve.retained_ancilla.begin();
  const QubitName captured = eve.captured_outbound.at(returning);
  const BellLabel ap = BellLabel::from_index(announced.value());
  const std::string& party = eve.channel_party.at(returning);

  BellLabel alice_side;
  if (const auto sub = eve.substitution.find(returning); sub != eve.substitution.end()) {
    alice_side = ap ^ sub->second.first ^ sub->second.second;
  } else {
    auto [held_pair, post] = measure_bell(state, captured, keep, randomness);
    state = std::move(post);
    alice_side = held_pair ^ eve.secret_inference.at(party) ^ ap;
  }
  for (const auto candidate : BellLabel::all()) {
    const LabelFrame after = apply_bsm(eve.public_frame, alice_pair.first, alice_pair.second,
                                       candidate);
    const auto partner = after.partner_of(captured);
    if (partner && *after.label_of(captured, *partner) == alice_side) return candidate;
  }
  return std::nullopt;
}

}  // namespace

PureState on_public_announcement(const EveStrategy& strategy, PureState state,
                                 const GhzLabel& announced, const InferenceTable& table,
                                 EveState& eve, RandomSource& randomness) {
  eve.announced_ap_seen = announced.str();
  if (!strategy.active() || eve.reconstructed_secret.empty()) return state;

  if (strategy.kind == EveKind::two_party_intercept) {
    if (!eve.alice_secret_pair) return state;
    const auto as =
        two_party_reconstruction(state, announced, *eve.alice_secret_pair, eve, randomness);
    if (as) eve.key_inference = as->str();
    return state;
  }

  const auto& [party, secret] = *eve.reconstructed_secret.begin();
  for (unsigned p = 1; p < table.num_parties(); ++p) {
    if (party_name(p) != party) continue;
    try {
      eve.key_inference = std::to_string(table.first_bit(p, announced, secret));
    } catch (const ProtocolViolation&) {
      eve.key_inference.reset();
    }
  }
  return state;
}

double eve_key_accuracy(std::span<const RoundRecord> records) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& r : records) {
    if (!r.eve) continue;
    ++total;
    if (r.eve->correct()) ++correct;
  }
  if (total == 0) throw InvalidArgument("no round carries an eavesdropper inference");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace esqkd

#include "esqkd/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "esqkd/basis.hpp"
#include "esqkd/error.hpp"
#include "esqkd/measure.hpp"

namespace esqkd {

namespace {

bool is_es(ProtocolKind kind) {
  return kind == ProtocolKind::two_party_es || kind == ProtocolKind::multiparty_es;
}

std::string bit_string(int bit) { return bit ? "1" : "0"; }

std::string sign_bit(int sign) { return sign > 0 ? "0" : "1"; }

std::string pauli_result(PauliAxis axis, int sign) {
  return std::string(to_string(axis)) + (sign > 0 ? ":+1" : ":-1");
}

QubitName letter(unsigned index) { return std::string(1, static_cast<char>('A' + index)); }

}  // namespace

void ProtocolConfig::validate() const {
  if (rounds < 1) throw InvalidArgument("rounds must be at least 1");
  if (!(comparison_fraction >= 0.0 && comparison_fraction <= 1.0)) {
    throw InvalidArgument("comparison fraction must lie in [0, 1]");
  }
  switch (protocol) {
    case ProtocolKind::two_party_es:
      if (num_parties != 2) throw InvalidArgument("two_party_es needs exactly 2 parties");
      break;
    case ProtocolKind::multiparty_es:
    case ProtocolKind::multiparty_ghz:
      if (num_parties < 3 || num_parties > kMaxStatevectorParties) {
        throw InvalidArgument(std::string(to_string(protocol)) + " supports 3.." +
                              std::to_string(kMaxStatevectorParties) + " parties");
      }
      break;
    case ProtocolKind::hbb99:
    case ProtocolKind::kki99:
      if (num_parties != 3) {
        throw InvalidArgument(std::string(to_string(protocol)) + " needs exactly 3 parties");
      }
      break;
  }
  if (eve.kind == EveKind::two_party_intercept && protocol != ProtocolKind::two_party_es) {
    throw InvalidArgument("the two-party intercept attack needs two_party_es with 2 parties");
  }
  if (eve.kind == EveKind::multiparty_intercept && protocol != ProtocolKind::multiparty_es) {
    throw InvalidArgument("the multiparty intercept attack needs multiparty_es");
  }
  for (const auto& target : eve.targets) {
    bool known = false;
    for (unsigned p = 1; p < num_parties; ++p) known = known || party_name(p) == target;
    if (!known) throw InvalidArgument("eavesdropper target '" + target + "' is not a party");
  }
  if (ghz_variant_announce && protocol != ProtocolKind::multiparty_ghz) {
    throw InvalidArgument("basis announcement only applies to multiparty_ghz");
  }
  if (initial_labels) {
    if (!is_es(protocol)) throw InvalidArgument("initial labels only apply to ES protocols");
    check_labels(EsLayout::for_parties(num_parties), *initial_labels);
  }
}

std::string pooled_party_name(unsigned num_parties) {
  std::string name;
  for (unsigned p = 1; p < num_parties; ++p) {
    if (!name.empty()) name += "+";
    name += party_name(p);
  }
  return name;
}

EsSession::EsSession(unsigned num_parties, std::optional<EsInitialLabels> labels)
    : layout_(EsLayout::for_parties(num_parties)),
      labels_(labels ? std::move(*labels) : EsInitialLabels::zeros(layout_)),
      table_(build_inference_table(layout_, labels_)),
      frame_(public_frame(layout_, labels_)) {}

RoundRecord EsSession::run_round(std::uint64_t round, const EveStrategy& strategy,
                                 RandomSource& randomness) const {
  const unsigned n = layout_.num_parties;
  const bool two_party = n == 2;
  EveState eve;
  eve.public_frame = frame_;
  eve.alice_secret_pair = layout_.secret_pairs[0];

  PureState state = prepare_initial_state(layout_, labels_);
  std::vector<BellLabel> secrets(n);

  const auto secret_measurement = [&](const QubitName& a, const QubitName& b) {
    auto [label, post] = measure_bell(state, a, b, randomness);
    const QubitName pair[] = {a, b};
    state = post.factor_out(pair);
    return label;
  };

  secrets[0] = secret_measurement(layout_.secret_pairs[0].first, layout_.secret_pairs[0].second);

  for (const auto& channel : layout_.channels) {
    const std::string party = party_name(channel.party);
    auto transit = on_outbound_transit(strategy, std::move(state), channel.outbound, party,
                                       channel.returning, eve);
    state = std::move(transit.state);
    const QubitName own = layout_.secret_pairs[channel.party].first;
    // Two-party wiring lists Bob's pair as (4, 2).
    secrets[channel.party] = secret_measurement(own, transit.delivered);
  }

  std::vector<QubitName> public_qubits = layout_.public_qubits;
  for (const auto& channel : layout_.channels) {
    auto transit = on_return_transit(strategy, std::move(state), channel.returning, eve,
                                     randomness);
    state = std::move(transit.state);
    std::replace(public_qubits.begin(), public_qubits.end(), channel.returning,
                 transit.delivered);
  }

  GhzLabel ap;
  if (two_party) {
    auto [label, post] = measure_bell(state, public_qubits[0], public_qubits[1], randomness);
    ap = GhzLabel::from_bell(label);
    state = std::move(post);
  } else {
    auto [label, post] = measure_ghz(state, public_qubits, randomness);
    ap = label;
    state = std::move(post);
  }
  state = on_public_announcement(strategy, std::move(state), ap, table_, eve, randomness);

  RoundRecord record;
  record.protocol = two_party ? ProtocolKind::two_party_es : ProtocolKind::multiparty_es;
  record.round = round;
  for (unsigned p = 0; p < n; ++p) record.secret_results[party_name(p)] = secrets[p].str();
  record.public_result = ap.str();
  record.key_bits = secrets[0].str();
  record.kept = true;
  record.eve_active = strategy.active();

  const BellLabel as = secrets[0];
  const std::span<const BellLabel> others(secrets.data() + 1, secrets.size() - 1);
  if (two_party) {
    std::string inferred = "?";
    try {
      inferred = table_.alice_secret(ap, others).str();
    } catch (const ProtocolViolation&) {
    }
    record.inferences["Bob"] = {inferred, as.str()};
  } else {
    for (unsigned p = 1; p < n; ++p) {
      std::string inferred = "?";
      try {
        inferred = bit_string(table_.first_bit(p, ap, secrets[p]));
      } catch (const ProtocolViolation&) {
      }
      record.inferences[party_name(p)] = {inferred, bit_string(as.high())};
    }
    std::string pooled = "?";
    try {
      pooled = bit_string(table_.second_bit(ap, others));
    } catch (const ProtocolViolation&) {
    }
    record.inferences[pooled_party_name(n)] = {pooled, bit_string(as.low())};
  }

  if (strategy.active()) {
    const std::string actual = two_party ? as.str() : bit_string(as.high());
    record.eve = Inference{eve.key_inference.value_or("?"), actual};
  }
  record.detected_mismatch = !record.inferences_agree();
  return record;
}

std::vector<RoundRecord> run_rounds(
    std::uint64_t rounds, std::uint64_t seed, unsigned threads,
    const std::function<RoundRecord(std::uint64_t, RandomSource&)>& round_fn) {
  std::vector<std::optional<RoundRecord>> slots(rounds);
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, rounds));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto work = [&] {
    while (!failed.load()) {
      const std::uint64_t round = next.fetch_add(1);
      if (round >= rounds) return;
      try {
        RandomSource randomness = round_randomness(seed, round);
        slots[round] = round_fn(round, randomness);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  std::vector<RoundRecord> records;
  records.reserve(rounds);
  for (auto& slot : slots) records.push_back(std::move(*slot));
  return records;
}

std::vector<RoundRecord> run_two_party_es(const ProtocolConfig& config) {
  config.validate();
  if (config.protocol != ProtocolKind::two_party_es) {
    throw InvalidArgument("config is not for two_party_es");
  }
  const EsSession session(2, config.initial_labels);
  return run_rounds(config.rounds, config.seed, config.threads,
                    [&](std::uint64_t round, RandomSource& randomness) {
                      return session.run_round(round, config.eve, randomness);
                    });
}

std::vector<RoundRecord> run_multiparty_es(const ProtocolConfig& config) {
  config.validate();
  if (config.protocol != ProtocolKind::multiparty_es) {
    throw InvalidArgument("config is not for multiparty_es");
  }
  const EsSession session(config.num_parties, config.initial_labels);
  return run_rounds(config.rounds, config.seed, config.threads,
                    [&](std::uint64_t round, RandomSource& randomness) {
                      return session.run_round(round, config.eve, randomness);
                    });
}

RoundRecord multiparty_ghz_round(unsigned num_parties, bool announce, const EveStrategy& strategy,
                                 std::uint64_t round, RandomSource& randomness) {
  std::vector<QubitName> names = {"1"};
  for (unsigned p = 1; p < num_parties; ++p) names.push_back(letter(p - 1));
  const PauliAxis prepared = randomness.coin() ? PauliAxis::x : PauliAxis::z;
  PureState state = prepared == PauliAxis::z ? prepare_ghz_z(names) : prepare_ghz_x(names);

  EveState eve;
  std::vector<QubitName> held = {"1"};
  for (unsigned p = 1; p < num_parties; ++p) {
    auto transit = on_outbound_transit(strategy, std::move(state), names[p], party_name(p), {},
                                       eve);
    state = std::move(transit.state);
    held.push_back(transit.delivered);
  }

  RoundRecord record;
  record.protocol = ProtocolKind::multiparty_ghz;
  record.round = round;
  record.eve_active = strategy.active();
  bool agree = true;
  std::vector<int> signs(num_parties);
  std::string axes;
  for (unsigned p = 0; p < num_parties; ++p) {
    PauliAxis axis = prepared;
    if (p > 0 && !announce) axis = randomness.coin() ? PauliAxis::x : PauliAxis::z;
    auto [sign, post] = measure_pauli(state, held[p], axis, randomness);
    state = std::move(post);
    signs[p] = sign;
    agree = agree && axis == prepared;
    axes += to_string(axis);
    record.secret_results[party_name(p)] = pauli_result(axis, sign);
  }
  record.public_result = axes;
  record.kept = agree;
  if (agree) {
    record.key_bits = sign_bit(signs[0]);
    for (unsigned p = 1; p < num_parties; ++p) {
      record.inferences[party_name(p)] = {sign_bit(signs[p]), record.key_bits};
    }
  }
  record.detected_mismatch = !record.inferences_agree();
  return record;
}

std::vector<RoundRecord> run_multiparty_ghz(const ProtocolConfig& config) {
  config.validate();
  if (config.protocol != ProtocolKind::multiparty_ghz) {
    throw InvalidArgument("config is not for multiparty_ghz");
  }
  return run_rounds(config.rounds, config.seed, config.threads,
                    [&](std::uint64_t round, RandomSource& randomness) {
                      return multiparty_ghz_round(config.num_parties, config.ghz_variant_announce,
                                                  config.eve, round, randomness);
                    });
}

std::optional<int> deterministic_parity(const PureState& state, std::span<const QubitName> names,
                                        std::span<const PauliAxis> axes) {
  if (names.size() != axes.size()) throw InvalidArgument("one axis per qubit is required");
  std::optional<int> seen;
  bool varies = false;
  std::function<void(const PureState&, std::size_t, int)> descend =
      [&](const PureState& s, std::size_t k, int parity) {
        if (varies) return;
        if (k == names.size()) {
          if (seen && *seen != parity) varies = true;
          seen = parity;
          return;
        }
        const QubitName one[] = {names[k]};
        for (const auto& o : outcome_distribution(s, MeasurementBasis::pauli(axes[k]), one)) {
          descend(o.post_state, k + 1, parity ^ (o.label == "-1" ? 1 : 0));
        }
      };
  descend(state, 0, 0);
  if (varies) return std::nullopt;
  return seen;
}

RoundRecord hbb99_round(const EveStrategy& strategy, std::uint64_t round,
                        RandomSource& randomness) {
  static const std::vector<QubitName> names = {"1", "A", "B"};
  PureState state = prepare_ghz_z(names);

  EveState eve;
  std::vector<QubitName> held = {"1"};
  for (unsigned p = 1; p < 3; ++p) {
    auto transit = on_outbound_transit(strategy, std::move(state), names[p], party_name(p), {},
                                       eve);
    state = std::move(transit.state);
    held.push_back(transit.delivered);
  }

  RoundRecord record;
  record.protocol = ProtocolKind::hbb99;
  record.round = round;
  record.eve_active = strategy.active();
  std::vector<PauliAxis> axes;
  std::vector<int> bits;
  std::string announced;
  for (unsigned p = 0; p < 3; ++p) {
    const PauliAxis axis = randomness.coin() ? PauliAxis::y : PauliAxis::x;
    auto [sign, post] = measure_pauli(state, held[p], axis, randomness);
    state = std::move(post);
    axes.push_back(axis);
    bits.push_back(sign > 0 ? 0 : 1);
    announced += to_string(axis);
    record.secret_results[party_name(p)] = pauli_result(axis, sign);
  }
  record.public_result = announced;

  const auto y_count = std::count(axes.begin(), axes.end(), PauliAxis::y);
  record.kept = y_count % 2 == 0;
  if (record.kept) {
    // The parity of the three results is fixed by the basis combination on this state.
    static const auto parity_for = [] {
      std::array<std::optional<int>, 8> table;
      const PureState ghz = prepare_ghz_z({"1", "A", "B"});
      for (unsigned mask = 0; mask < 8; ++mask) {
        const PauliAxis combo[] = {mask & 4 ? PauliAxis::y : PauliAxis::x,
                                   mask & 2 ? PauliAxis::y : PauliAxis::x,
                                   mask & 1 ? PauliAxis::y : PauliAxis::x};
        table[mask] = deterministic_parity(ghz, names, combo);
      }
      return table;
    }();
    const unsigned mask = (axes[0] == PauliAxis::y ? 4u : 0u) |
                          (axes[1] == PauliAxis::y ? 2u : 0u) |
                          (axes[2] == PauliAxis::y ? 1u : 0u);
    const auto parity = parity_for[mask];
    if (!parity) throw ConsistencyError("kept HBB basis combination has no fixed parity");
    record.key_bits = bit_string(bits[0]);
    record.inferences["Bob+Carol"] = {bit_string(bits[1] ^ bits[2] ^ *parity), record.key_bits};
  }
  record.detected_mismatch = !record.inferences_agree();
  return record;
}

std::vector<RoundRecord> run_hbb99(const ProtocolConfig& config) {
  config.validate();
  if (config.protocol != ProtocolKind::hbb99) throw InvalidArgument("config is not for hbb99");
  return run_rounds(config.rounds, config.seed, config.threads,
                    [&](std::uint64_t round, RandomSource& randomness) {
                      return hbb99_round(config.eve, round, randomness);
                    });
}

PureState kki_state(unsigned index, const QubitName& bob, const QubitName& carol) {
  const double h = std::sqrt(0.5);
  // Amplitudes over |00>, |01>, |10>, |11>.
  std::vector<Amplitude> amps;
  switch (index) {
    case 0: amps = {h, 0.0, 0.0, h}; break;
    case 1: amps = {h, 0.0, 0.0, -h}; break;
    // (|0>|+> + |1>|->)/sqrt2
    case 2: amps = {0.5, 0.5, 0.5, -0.5}; break;
    // (|0>|-> - |1>|+>)/sqrt2
    case 3: amps = {0.5, -0.5, -0.5, -0.5}; break;
    default: throw InvalidArgument("KKI state index must be 0..3");
  }
  return PureState({bob, carol}, std::move(amps));
}

void KkiDeclarations::advance(Step expected) {
  if (next_ != expected) throw ProtocolViolation("KKI declaration made out of order");
  next_ = static_cast<Step>(static_cast<int>(next_) + 1);
}

void KkiDeclarations::declare_test_outcomes() { advance(Step::test_outcomes); }

void KkiDeclarations::declare_bob_outcomes(int outcome) {
  advance(Step::bob_outcomes);
  bob_outcome = outcome;
}

void KkiDeclarations::declare_carol(PauliAxis axis, int outcome) {
  advance(Step::carol_choices_and_outcomes);
  carol_axis = axis;
  carol_outcome = outcome;
}

void KkiDeclarations::declare_bob_choice(PauliAxis axis) {
  advance(Step::bob_choices);
  bob_axis = axis;
}

void KkiDeclarations::reveal_set(unsigned set) {
  advance(Step::alice_set);
  alice_set = set;
}

RoundRecord kki99_round(const EveStrategy& strategy, std::uint64_t round,
                        RandomSource& randomness) {
  const unsigned prepared = static_cast<unsigned>(randomness.below(4));
  PureState state = kki_state(prepared, "A", "B");

  EveState eve;
  auto to_bob = on_outbound_transit(strategy, std::move(state), "A", "Bob", {}, eve);
  auto to_carol =
      on_outbound_transit(strategy, std::move(to_bob.state), "B", "Carol", {}, eve);
  state = std::move(to_carol.state);

  const PauliAxis bob_axis = randomness.coin() ? PauliAxis::x : PauliAxis::z;
  const PauliAxis carol_axis = randomness.coin() ? PauliAxis::x : PauliAxis::z;
  auto [bob_sign, after_bob] = measure_pauli(state, to_bob.delivered, bob_axis, randomness);
  auto [carol_sign, after_carol] =
      measure_pauli(after_bob, to_carol.delivered, carol_axis, randomness);

  KkiDeclarations declarations;
  declarations.declare_test_outcomes();
  declarations.declare_bob_outcomes(bob_sign);
  declarations.declare_carol(carol_axis, carol_sign);
  declarations.declare_bob_choice(bob_axis);
  const unsigned set = prepared / 2;
  declarations.reveal_set(set);

  RoundRecord record;
  record.protocol = ProtocolKind::kki99;
  record.round = round;
  record.eve_active = strategy.active();
  record.secret_results["Alice"] = std::to_string(prepared);
  record.secret_results["Bob"] = pauli_result(bob_axis, bob_sign);
  record.secret_results["Carol"] = pauli_result(carol_axis, carol_sign);
  record.public_result = "set" + std::to_string(set);

  const bool same_axes = bob_axis == carol_axis;
  record.kept = set == 0 ? same_axes : !same_axes;
  if (record.kept) {
    record.key_bits = bit_string(static_cast<int>(prepared % 2));
    // Which member of the revealed set fits the observed parity, when the two differ.
    const QubitName pair[] = {"A", "B"};
    const PauliAxis combo[] = {bob_axis, carol_axis};
    const auto first = deterministic_parity(kki_state(2 * set, "A", "B"), pair, combo);
    const auto second = deterministic_parity(kki_state(2 * set + 1, "A", "B"), pair, combo);
    const int observed = (bob_sign < 0) ^ (carol_sign < 0);
    if (first && second && *first != *second) {
      record.inferences["Bob+Carol"] = {observed == *first ? "0" : "1", record.key_bits};
    }
  }
  record.detected_mismatch = !record.inferences_agree();
  return record;
}

std::vector<RoundRecord> run_kki99(const ProtocolConfig& config) {
  config.validate();
  if (config.protocol != ProtocolKind::kki99) throw InvalidArgument("config is not for kki99");
  return run_rounds(config.rounds, config.seed, config.threads,
                    [&](std::uint64_t round, RandomSource& randomness) {
                      return kki99_round(config.eve, round, randomness);
                    });
}

std::vector<RoundRecord> run_protocol(const ProtocolConfig& config) {
  switch (config.protocol) {
    case ProtocolKind::two_party_es: return run_two_party_es(config);
    case ProtocolKind::multiparty_ghz: return run_multiparty_ghz(config);
    case ProtocolKind::multiparty_es: return run_multiparty_es(config);
    case ProtocolKind::hbb99: return run_hbb99(config);
    case ProtocolKind::kki99: return run_kki99(config);
  }
  throw InvalidArgument("unknown protocol");
}

KeyComparison compare_key_subset(std::span<RoundRecord> records, double fraction,
                                 RandomSource& randomness) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("comparison fraction must lie in (0, 1]");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].kept) kept.push_back(i);
  }
  if (kept.empty()) throw InvalidArgument("no kept rounds to compare");

  const auto sample = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(kept.size()) - 1e-9));
  KeyComparison result;
  for (std::size_t k = 0; k < sample; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(randomness.below(kept.size() - k));
    std::swap(kept[k], kept[pick]);
    RoundRecord& record = records[kept[k]];
    record.consumed = true;
    ++result.tested;
    if (!record.inferences_agree()) ++result.mismatches;
  }
  result.alarm = result.mismatches > 0;
  return result;
}

}  // namespace esqkd

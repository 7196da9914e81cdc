#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "esqkd/label_frame.hpp"
#include "esqkd/labels.hpp"
#include "esqkd/state.hpp"

namespace esqkd {

/// Qubit wiring of an entanglement-swapping protocol instance.
///
/// Numbered qubits never leave their owner; lettered qubits travel. Two parties:
///   pairs (1,2) (3,5) (4,6); qubit 2 goes to Bob, qubit 6 comes back;
///   Alice measures (1,3), Bob (2,4), Alice's public measurement is on (5,6).
/// N >= 3 parties (party j = 1..N-1 owns qubit 3+N-j):
///   GHZ on (3, A, B, ...); pairs (1,2) and (3+N-j, R_j); letter L_j goes to party j,
///   which returns R_j after measuring (3+N-j, L_j). Alice measures (2,3) and publicly
///   measures (1, R_(N-1), ..., R_1). For N = 3 this is GHZ(3,A,B), (5,D), (4,C), public
///   measurement on (1,C,D).
struct EsLayout {
  struct Channel {
    unsigned party;
    QubitName outbound;
    QubitName returning;
  };

  unsigned num_parties = 2;
  std::vector<std::pair<QubitName, QubitName>> public_pairs;
  /// Empty for the two-party protocol.
  std::vector<QubitName> ghz_qubits;
  /// Index = party; for party j >= 1 the second qubit is the one received over the channel.
  std::vector<std::pair<QubitName, QubitName>> secret_pairs;
  std::vector<Channel> channels;
  std::vector<QubitName> public_qubits;

  static EsLayout two_party();
  static EsLayout multiparty(unsigned num_parties);
  static EsLayout for_parties(unsigned num_parties) {
    return num_parties == 2 ? two_party() : multiparty(num_parties);
  }

  std::size_t num_qubits() const { return 2 * public_pairs.size() + ghz_qubits.size(); }
};

/// Public labels of the initial Bell pairs (in EsLayout::public_pairs order) and GHZ state.
struct EsInitialLabels {
  std::optional<GhzLabel> ghz;
  std::vector<BellLabel> pairs;

  static EsInitialLabels zeros(const EsLayout& layout);
};

/// Throws InvalidArgument when labels do not fit the layout.
void check_labels(const EsLayout& layout, const EsInitialLabels& labels);

PureState prepare_initial_state(const EsLayout& layout, const EsInitialLabels& labels);

/// The initial Bell pairs as a label frame (public knowledge).
LabelFrame public_frame(const EsLayout& layout, const EsInitialLabels& labels);

}  // namespace esqkd

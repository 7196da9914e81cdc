#include "esqkd/es_layout.hpp"

#include <string>

#include "esqkd/basis.hpp"
#include "esqkd/error.hpp"
#include "esqkd/records.hpp"

namespace esqkd {

namespace {

QubitName letter(unsigned index) { return std::string(1, static_cast<char>('A' + index)); }

}  // namespace

EsLayout EsLayout::two_party() {
  EsLayout layout;
  layout.num_parties = 2;
  layout.public_pairs = {{"1", "2"}, {"3", "5"}, {"4", "6"}};
  layout.secret_pairs = {{"1", "3"}, {"4", "2"}};
  layout.channels = {{1, "2", "6"}};
  layout.public_qubits = {"5", "6"};
  return layout;
}

EsLayout EsLayout::multiparty(unsigned num_parties) {
  if (num_parties < 3 || num_parties > kMaxStatevectorParties) {
    throw InvalidArgument("multiparty layout supports 3.." +
                          std::to_string(kMaxStatevectorParties) + " parties");
  }
  const unsigned n = num_parties;
  EsLayout layout;
  layout.num_parties = n;
  layout.ghz_qubits.push_back("3");
  layout.public_pairs.push_back({"1", "2"});
  layout.secret_pairs.push_back({"2", "3"});
  for (unsigned j = 1; j < n; ++j) {
    const QubitName own = std::to_string(3 + n - j);
    const QubitName outbound = letter(j - 1);
    const QubitName returning = letter(2 * n - 2 - j);
    layout.ghz_qubits.push_back(outbound);
    layout.public_pairs.push_back({own, returning});
    layout.secret_pairs.push_back({own, outbound});
    layout.channels.push_back({j, outbound, returning});
  }
  layout.public_qubits.push_back("1");
  for (unsigned j = n - 1; j >= 1; --j) layout.public_qubits.push_back(letter(2 * n - 2 - j));
  return layout;
}

EsInitialLabels EsInitialLabels::zeros(const EsLayout& layout) {
  EsInitialLabels labels;
  if (!layout.ghz_qubits.empty()) {
    labels.ghz = GhzLabel::zeros(static_cast<unsigned>(layout.ghz_qubits.size()));
  }
  labels.pairs.assign(layout.public_pairs.size(), BellLabel{});
  return labels;
}

void check_labels(const EsLayout& layout, const EsInitialLabels& labels) {
  if (labels.pairs.size() != layout.public_pairs.size()) {
    throw InvalidArgument("expected " + std::to_string(layout.public_pairs.size()) +
                          " initial Bell labels");
  }
  if (layout.ghz_qubits.empty() != !labels.ghz.has_value()) {
    throw InvalidArgument("initial GHZ label present/absent mismatch for this layout");
  }
  if (labels.ghz && labels.ghz->width() != layout.ghz_qubits.size()) {
    throw InvalidArgument("initial GHZ label has the wrong width");
  }
}

PureState prepare_initial_state(const EsLayout& layout, const EsInitialLabels& labels) {
  check_labels(layout, labels);
  std::vector<PureState> factors;
  if (labels.ghz) factors.push_back(prepare_ghz(*labels.ghz, layout.ghz_qubits));
  for (std::size_t i = 0; i < layout.public_pairs.size(); ++i) {
    const auto& [a, b] = layout.public_pairs[i];
    factors.push_back(prepare_bell(labels.pairs[i], a, b));
  }
  return tensor(factors);
}

LabelFrame public_frame(const EsLayout& layout, const EsInitialLabels& labels) {
  check_labels(layout, labels);
  LabelFrame frame;
  for (std::size_t i = 0; i < layout.public_pairs.size(); ++i) {
    frame.add(layout.public_pairs[i].first, layout.public_pairs[i].second, labels.pairs[i]);
  }
  return frame;
}

}  // namespace esqkd

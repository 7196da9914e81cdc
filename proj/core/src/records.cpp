#include "esqkd/records.hpp"

#include <algorithm>

#include "esqkd/error.hpp"

namespace esqkd {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::two_party_es: return "two_party_es";
    case ProtocolKind::multiparty_ghz: return "multiparty_ghz";
    case ProtocolKind::multiparty_es: return "multiparty_es";
    case ProtocolKind::hbb99: return "hbb99";
    case ProtocolKind::kki99: return "kki99";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view text) {
  for (auto kind : {ProtocolKind::two_party_es, ProtocolKind::multiparty_ghz,
                    ProtocolKind::multiparty_es, ProtocolKind::hbb99, ProtocolKind::kki99}) {
    if (to_string(kind) == text) return kind;
  }
  throw InvalidArgument("unknown protocol '" + std::string(text) + "'");
}

std::string party_name(unsigned index) {
  static constexpr const char* kNames[] = {"Alice", "Bob", "Carol", "David", "Erin"};
  if (index >= std::size(kNames)) return "Party" + std::to_string(index);
  return kNames[index];
}

bool RoundRecord::inferences_agree() const {
  return std::all_of(inferences.begin(), inferences.end(),
                     [](const auto& entry) { return entry.second.correct(); });
}

}  // namespace esqkd

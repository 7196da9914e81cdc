#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace esqkd {

enum class ProtocolKind { two_party_es, multiparty_ghz, multiparty_es, hbb99, kki99 };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol(std::string_view text);

/// Parties beyond this count do not fit the statevector register cap.
inline constexpr unsigned kMaxStatevectorParties = 5;

/// "Alice", "Bob", "Carol", "David", "Erin"; index 0 is always the distributor.
std::string party_name(unsigned index);

/// A value some party (or coalition) inferred next to the value Alice actually holds.
struct Inference {
  std::string inferred;
  std::string actual;

  bool correct() const { return inferred == actual; }
};

/// Transcript of one protocol round.
struct RoundRecord {
  ProtocolKind protocol{};
  std::uint64_t round = 0;
  /// Never announced: AS, BS, CS, ... for ES protocols; axis+sign for Pauli protocols.
  std::map<std::string, std::string> secret_results;
  /// Alice's announced public result (AP) when the protocol has one.
  std::string public_result;
  /// Keyed by party name, or "Bob+Carol" style names for pooled inferences.
  std::map<std::string, Inference> inferences;
  /// Alice's key material for this round; empty when the round is not kept.
  std::string key_bits;
  bool kept = false;
  bool eve_active = false;
  /// Eve's reconstruction of the key material, when her strategy produces one.
  std::optional<Inference> eve;
  /// Some inference disagrees with Alice's true bits.
  bool detected_mismatch = false;
  /// Sacrificed to a public key comparison.
  bool consumed = false;

  bool inferences_agree() const;
};

}  // namespace esqkd

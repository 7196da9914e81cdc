#pragma once

#include <string>
#include <vector>

#include "esqkd/basis.hpp"

namespace esqkd {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Bell basis used by every enumeration; replace it to run negative controls.
  MeasurementBasis bell_basis = MeasurementBasis::bell();
};

SuiteResult verify_orthonormality(const VerifyOptions& options);
/// Frame algebra against statevector enumeration for all 64 two-party initial labelings.
SuiteResult verify_oracle_equivalence(const VerifyOptions& options);
/// Two-party enumeration: 16 rows, AP = AS xor BS, probability 1/16 each.
SuiteResult verify_two_party_table(const VerifyOptions& options);
/// Three-party enumeration: 64 rows at 1/64 satisfying the first-bit and second-bit relations.
SuiteResult verify_three_party_relations(const VerifyOptions& options);
/// Given (AP, one party's secret), the second bit of AS is 0 in exactly half the rows.
SuiteResult verify_secret_sharing(const VerifyOptions& options);

std::vector<SuiteResult> run_verify(const VerifyOptions& options = {});

}  // namespace esqkd

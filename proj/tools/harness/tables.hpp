#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "esqkd/basis.hpp"
#include "esqkd/inference.hpp"

namespace esqkd {

enum class TableId { I, II, III };

TableId parse_table_id(std::string_view text);
std::string_view to_string(TableId id);
unsigned table_parties(TableId id);

/// Exact correspondence table: I is two-party, II three-party, III the four-party table
/// restricted to public result 0000. All-zero initial labels.
std::vector<TableRow> generate_table(TableId id,
                                     const MeasurementBasis& bell_basis = MeasurementBasis::bell());

/// Header "public,Alice,Bob,..." then one row per line.
std::string table_csv(const std::vector<TableRow>& rows, unsigned num_parties);

}  // namespace esqkd

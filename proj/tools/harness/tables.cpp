#include "harness/tables.hpp"

#include <sstream>

#include "esqkd/error.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/records.hpp"

namespace esqkd {

TableId parse_table_id(std::string_view text) {
  if (text == "I" || text == "1") return TableId::I;
  if (text == "II" || text == "2") return TableId::II;
  if (text == "III" || text == "3") return TableId::III;
  throw InvalidArgument("unknown table '" + std::string(text) + "' (expected I, II or III)");
}

std::string_view to_string(TableId id) {
  switch (id) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
  }
  return "?";
}

unsigned table_parties(TableId id) {
  switch (id) {
    case TableId::I: return 2;
    case TableId::II: return 3;
    case TableId::III: return 4;
  }
  return 0;
}

std::vector<TableRow> generate_table(TableId id, const MeasurementBasis& bell_basis) {
  const auto layout = EsLayout::for_parties(table_parties(id));
  const auto table = build_inference_table(layout, EsInitialLabels::zeros(layout), bell_basis);
  if (id == TableId::III) return table.with_public(GhzLabel::zeros(4));
  return table.rows();
}

std::string table_csv(const std::vector<TableRow>& rows, unsigned num_parties) {
  std::ostringstream out;
  out << "public";
  for (unsigned p = 0; p < num_parties; ++p) out << ',' << party_name(p);
  out << '\n';
  for (const auto& row : rows) {
    out << row.public_label.str();
    for (const auto& s : row.secrets) out << ',' << s.str();
    out << '\n';
  }
  return out.str();
}

}  // namespace esqkd

#pragma once

// Minimal RFC 4180 reader/writer. LF line endings on output; CRLF accepted on
// input.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mlsniff::csv {

using Row = std::vector<std::string>;

struct CsvError {
  std::size_t line = 0;  // 1-based physical line where the problem starts
  std::string message;
};

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
/// Appends one record terminated by '\n'.
void write_row(std::string& out, const Row& row);

/// Parses a whole document. Quoted fields may span lines. A trailing newline
/// does not produce an empty record.
std::variant<std::vector<Row>, CsvError> parse(std::string_view text);

}  // namespace mlsniff::csv

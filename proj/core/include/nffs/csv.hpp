#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nffs::csv {

// RFC-4180 record splitting: quoted fields, doubled-quote escapes, embedded
// separators and line breaks inside quotes, CRLF or LF line endings.
// Blank lines are skipped. Returns the records and, for each, the 1-based
// physical line number where it starts.
struct Document {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> line_numbers;
};

Document parse(std::istream& in, char separator = ',');
Document parse_file(const std::string& path, char separator = ',');

// Quotes a field only when needed.
std::string escape(const std::string& field, char separator = ',');

}  // namespace nffs::csv

#include "nffs/csv.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include "nffs/types.hpp"

namespace nffs::csv {

Document parse(std::istream& in, char separator) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Document doc;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // any character (or quote) seen in this record
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_record = [&] {
    // A record consisting of a single empty, unquoted field is a blank line.
    if (field_started || !record.empty() || !field.empty()) {
      record.push_back(std::move(field));
      doc.records.push_back(std::move(record));
      doc.line_numbers.push_back(record_line);
    }
    record.clear();
    field.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      field_started = true;
    } else if (c == separator) {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // CR of a CRLF pair; the LF ends the record.
    } else if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
    } else {
      if (!field_started) record_line = line;
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw Error("unterminated quoted field starting near line " + std::to_string(record_line));
  end_record();
  return doc;
}

Document parse_file(const std::string& path, char separator) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse(in, separator);
}

std::string escape(const std::string& field, char separator) {
  if (field.find_first_of(std::string{separator, '"', '\n', '\r'}) == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace nffs::csv

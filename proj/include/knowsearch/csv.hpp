#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace knowsearch {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(std::initializer_list<std::string_view> fields);
  void row(const std::vector<std::string>& fields);

 private:
  void field(std::string_view f, bool first);
  std::ostream& out_;
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace knowsearch

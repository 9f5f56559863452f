#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace levmag {

/// Scientific notation, 12 significant digits, dot decimal.
std::string format_sci(double v);

/// Minimal RFC 4180 writer: CRLF is not used, fields are quoted only when
/// they contain a comma, quote or newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  void numbers(std::initializer_list<double> values);
  void numbers(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

std::string csv_escape(std::string_view field);

}  // namespace levmag

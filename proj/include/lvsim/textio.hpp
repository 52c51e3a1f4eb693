#ifndef LVSIM_TEXTIO_HPP_
#define LVSIM_TEXTIO_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lvsim::io {

/// Malformed input file; the message names the offending line or key.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that reads back to the identical double.
std::string format_double(double x);

/// printf-style %.{digits}g.
std::string format_double(double x, int significant_digits);

double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);

std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view content);

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
std::vector<KeyValue> parse_key_values(std::string_view text);

/// Ordered `key=value` report builder.
class KeyValueWriter {
 public:
  KeyValueWriter &add(std::string key, std::string value);
  KeyValueWriter &add(std::string key, double value);
  KeyValueWriter &add(std::string key, std::size_t value);
  KeyValueWriter &add(std::string key, bool value);
  KeyValueWriter &comment(std::string_view text);

  std::string str() const { return out_; }

 private:
  std::string out_;
};

struct CsvTable {
  std::vector<std::string> header;
  struct Row {
    int line = 0;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;

  /// Index of a header column; throws FormatError naming the missing column.
  std::size_t column(std::string_view name) const;
};

/// Comma-separated text with a header row. No quoting; blank lines skipped.
CsvTable parse_csv(std::string_view text);

} // namespace lvsim::io

#endif // LVSIM_TEXTIO_HPP_

#include "lvsim/textio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lvsim::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

std::string format_double(double x, int significant_digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || result.ec != std::errc() || result.ptr != t.data() + t.size() ||
      !std::isfinite(value)) {
    throw FormatError(std::string(what) + ": '" + std::string(t) + "' is not a number");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  std::uint64_t value = 0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || result.ec != std::errc() || result.ptr != t.data() + t.size()) {
    throw FormatError(std::string(what) + ": '" + std::string(t) +
                      "' is not a nonnegative integer");
  }
  return value;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

template <class Fn> void for_each_line(std::string_view text, Fn &&fn) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    fn(++line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

} // namespace

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  for_each_line(text, [&](int line_no, std::string_view raw) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw FormatError("line " + std::to_string(line_no) + ": empty key");
    }
    out.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  });
  return out;
}

KeyValueWriter &KeyValueWriter::add(std::string key, std::string value) {
  out_ += key;
  out_ += '=';
  out_ += value;
  out_ += '\n';
  return *this;
}

KeyValueWriter &KeyValueWriter::add(std::string key, double value) {
  return add(std::move(key), format_double(value));
}

KeyValueWriter &KeyValueWriter::add(std::string key, std::size_t value) {
  return add(std::move(key), std::to_string(value));
}

KeyValueWriter &KeyValueWriter::add(std::string key, bool value) {
  return add(std::move(key), std::string(value ? "true" : "false"));
}

KeyValueWriter &KeyValueWriter::comment(std::string_view text) {
  out_ += "# ";
  out_ += text;
  out_ += '\n';
  return *this;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  for_each_line(text, [&](int line_no, std::string_view raw) {
    if (trim(raw).empty()) return;
    std::vector<std::string> fields;
    std::string_view rest = raw;
    while (true) {
      const auto comma = rest.find(',');
      fields.emplace_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!have_header) {
      // Tolerate a UTF-8 byte order mark on the header.
      if (fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      table.header = std::move(fields);
      have_header = true;
      return;
    }
    if (fields.size() != table.header.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " fields, found " +
                        std::to_string(fields.size()));
    }
    table.rows.push_back({line_no, std::move(fields)});
  });
  if (!have_header) throw FormatError("empty CSV input");
  return table;
}

} // namespace lvsim::io

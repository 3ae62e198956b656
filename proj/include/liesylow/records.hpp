// Flat output records and their JSON-lines / CSV encodings.
#ifndef LIESYLOW_RECORDS_HPP
#define LIESYLOW_RECORDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "liesylow/numeric.hpp"

namespace liesylow {

using FieldValue = std::variant<std::string, std::int64_t>;

/// Ordered key/value fields. Big integers are stored as decimal strings.
class OutputRecord {
 public:
  OutputRecord& set(std::string key, std::string value) { return put(std::move(key), std::move(value)); }
  OutputRecord& set(std::string key, std::int64_t value) { return put(std::move(key), value); }
  OutputRecord& set(std::string key, const char* value) { return put(std::move(key), std::string(value)); }
  OutputRecord& set(std::string key, const BigInt& value) { return put(std::move(key), value.get_str()); }
  OutputRecord& set(std::string key, bool value) {
    return put(std::move(key), std::string(value ? "true" : "false"));
  }
  OutputRecord& set(std::string key, int value) { return put(std::move(key), std::int64_t{value}); }
  OutputRecord& set(std::string key, unsigned value) { return put(std::move(key), std::int64_t{value}); }
  OutputRecord& set(std::string key, unsigned long value) {
    return put(std::move(key), static_cast<std::int64_t>(value));
  }

  const std::vector<std::pair<std::string, FieldValue>>& fields() const { return fields_; }
  const FieldValue* find(std::string_view key) const;
  std::string get_string(std::string_view key) const;

  std::string to_json_line() const;
  static OutputRecord from_json_line(std::string_view line);

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;

 private:
  OutputRecord& put(std::string key, FieldValue value);

  std::vector<std::pair<std::string, FieldValue>> fields_;
};

enum class OutputFormat { JsonLines, Csv };

/// CSV columns are the union of keys in first-seen order.
void write_records(std::ostream& out, const std::vector<OutputRecord>& records, OutputFormat format);

}  // namespace liesylow

#endif  // LIESYLOW_RECORDS_HPP

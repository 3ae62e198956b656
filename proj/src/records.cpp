#include "liesylow/records.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace liesylow {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const FieldValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::to_string(std::get<std::int64_t>(v));
}

}  // namespace

OutputRecord& OutputRecord::put(std::string key, FieldValue value) {
  auto it = std::find_if(fields_.begin(), fields_.end(), [&](const auto& f) { return f.first == key; });
  if (it != fields_.end()) {
    it->second = std::move(value);
  } else {
    fields_.emplace_back(std::move(key), std::move(value));
  }
  return *this;
}

const FieldValue* OutputRecord::find(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string OutputRecord::get_string(std::string_view key) const {
  const FieldValue* v = find(key);
  return v ? render(*v) : std::string{};
}

std::string OutputRecord::to_json_line() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields_) {
    std::visit([&](const auto& x) { j[k] = x; }, v);
  }
  return j.dump();
}

OutputRecord OutputRecord::from_json_line(std::string_view line) {
  const auto j = nlohmann::ordered_json::parse(line);
  if (!j.is_object()) throw std::invalid_argument("record line is not a JSON object");
  OutputRecord r;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      r.set(k, v.get<std::string>());
    } else if (v.is_number_integer()) {
      r.set(k, v.get<std::int64_t>());
    } else {
      throw std::invalid_argument("record field '" + k + "' is neither string nor integer");
    }
  }
  return r;
}

void write_records(std::ostream& out, const std::vector<OutputRecord>& records, OutputFormat format) {
  if (format == OutputFormat::JsonLines) {
    for (const auto& r : records) out << r.to_json_line() << '\n';
    return;
  }
  std::vector<std::string> columns;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.fields()) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    }
  }
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_escape(columns[c]);
  out << '\n';
  for (const auto& r : records) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ',';
      if (const FieldValue* v = r.find(columns[c])) out << csv_escape(render(*v));
    }
    out << '\n';
  }
}

}  // namespace liesylow

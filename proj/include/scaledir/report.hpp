#pragma once

#include <string>
#include <utility>
#include <vector>

namespace scaledir {

// One output record: a kind tag plus ordered key/value fields.  The same
// records feed both renderers, so the human and structured views can never
// drift apart.
struct Record {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& field(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
    return *this;
  }
  Record& field(const std::string& key, long value) {
    return field(key, std::to_string(value));
  }
};

struct Report {
  std::vector<Record> records;

  Record& add(const std::string& kind) {
    records.push_back(Record{kind, {}});
    return records.back();
  }

  // One record per line: kind, then tab-separated key=value fields.  Values
  // may contain spaces but never tabs or newlines.
  std::string structured() const;
  // Indented key-value listing grouped by record.
  std::string human() const;
};

}  // namespace scaledir

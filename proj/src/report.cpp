#include "scaledir/report.hpp"

namespace scaledir {

std::string Report::structured() const {
  std::string out;
  for (const Record& r : records) {
    out += r.kind;
    for (const auto& [k, v] : r.fields) {
      out += "\t";
      out += k;
      out += "=";
      out += v;
    }
    out += "\n";
  }
  return out;
}

std::string Report::human() const {
  std::string out;
  for (const Record& r : records) {
    out += r.kind;
    out += "\n";
    for (const auto& [k, v] : r.fields) {
      out += "  ";
      out += k;
      out += ": ";
      out += v;
      out += "\n";
    }
  }
  return out;
}

}  // namespace scaledir

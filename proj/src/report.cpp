#include "frobex/report.hpp"

namespace frobex {

std::string CheckLine::render() const {
  std::string s = "CHECK " + stage + "." + name + (pass ? " PASS" : " FAIL");
  if (!detail.empty()) s += " " + detail;
  return s;
}

void Report::add(std::string stage, std::string name, bool pass, std::string detail) {
  lines.push_back({std::move(stage), std::move(name), pass, std::move(detail)});
}

void Report::append(const Report& other) {
  lines.insert(lines.end(), other.lines.begin(), other.lines.end());
}

bool Report::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

std::string Report::render() const {
  std::string s;
  for (const auto& l : lines) {
    s += l.render();
    s += "\n";
  }
  return s;
}

}  // namespace frobex

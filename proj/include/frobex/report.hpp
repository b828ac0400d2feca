#ifndef FROBEX_REPORT_HPP
#define FROBEX_REPORT_HPP

#include <string>
#include <vector>

namespace frobex {

/// One verification outcome, rendered as `CHECK <stage>.<name> PASS|FAIL <detail>`.
struct CheckLine {
  std::string stage;
  std::string name;
  bool pass = false;
  std::string detail;

  std::string render() const;
};

struct Report {
  std::vector<CheckLine> lines;

  void add(std::string stage, std::string name, bool pass, std::string detail = "");
  void append(const Report& other);
  bool all_pass() const;
  std::string render() const;  // one CHECK line per entry, '\n'-terminated
};

}  // namespace frobex

#endif

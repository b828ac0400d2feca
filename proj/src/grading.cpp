#include "frobex/grading.hpp"

namespace frobex {

std::string to_string(const Degree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.weight.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d.weight[i]);
  }
  s += "|";
  s += to_string(d.parity);
  s += ")";
  return s;
}

}  // namespace frobex

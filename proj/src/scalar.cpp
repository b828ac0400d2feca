#include "frobex/scalar.hpp"

#include <cctype>

namespace frobex {

bool parse_scalar(const std::string& text, Scalar& out) {
  // optional sign, digits, optionally '/' digits (denominator unsigned > 0)
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t num_begin = i;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) return false;
  std::string num = text.substr(0, i);
  std::string den = "1";
  if (i < n) {
    if (text[i] != '/') return false;
    ++i;
    std::size_t den_begin = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != n) return false;
    den = text.substr(den_begin);
  }
  mpz_class den_z(den);
  if (sgn(den_z) == 0) return false;
  out = Scalar(mpz_class(num), den_z);
  out.canonicalize();
  return true;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

}  // namespace frobex

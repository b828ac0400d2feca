#ifndef FROBEX_SCALAR_HPP
#define FROBEX_SCALAR_HPP

#include <gmpxx.h>

#include <string>

namespace frobex {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) through arithmetic, which is exactly the Scalar
/// invariant; every computation in this project is over these, never floats.
using Scalar = mpq_class;

inline Scalar scalar_from(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Parses the scalar text syntax: optional sign, integer, optional
/// `/` positive integer (e.g. `-3/2`). Returns false on malformed input.
bool parse_scalar(const std::string& text, Scalar& out);

/// Canonical text form, `num` or `num/den` with den > 1.
std::string to_string(const Scalar& s);

}  // namespace frobex

#endif

#ifndef FROBEX_GRADING_HPP
#define FROBEX_GRADING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "frobex/error.hpp"

namespace frobex {

/// Z_2 parity. even is the additive identity; odd + odd = even.
enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity p, Parity q) {
  return static_cast<Parity>(static_cast<std::uint8_t>(p) ^ static_cast<std::uint8_t>(q));
}
inline Parity& operator+=(Parity& p, Parity q) { return p = p + q; }
// Parity subtraction coincides with addition in Z_2; spelled out where the
// math reads "pi - x" so formulas match their source shape.
inline Parity operator-(Parity p, Parity q) { return p + q; }

inline bool is_odd(Parity p) { return p == Parity::odd; }
inline Parity parity_of(long long n) { return (n % 2 != 0) ? Parity::odd : Parity::even; }

/// Koszul sign (-1)^{p q}: -1 iff both arguments are odd.
inline int koszul_sign(Parity p, Parity q) {
  return (is_odd(p) && is_odd(q)) ? -1 : +1;
}

inline std::string to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

/// A Lambda x Z_2 degree: integer weight tuple of fixed arity plus a parity.
struct Degree {
  std::vector<std::int64_t> weight;
  Parity parity = Parity::even;

  Degree() = default;
  Degree(std::vector<std::int64_t> w, Parity p) : weight(std::move(w)), parity(p) {}
  /// Arity-1 convenience.
  Degree(std::int64_t w, Parity p) : weight{w}, parity(p) {}

  std::size_t arity() const { return weight.size(); }
  bool operator==(const Degree& o) const = default;
};

inline Degree zero_degree(std::size_t arity) {
  return Degree(std::vector<std::int64_t>(arity, 0), Parity::even);
}

inline Degree degree_add(const Degree& a, const Degree& b) {
  if (a.arity() != b.arity())
    throw Error("degree_add: arity mismatch (" + std::to_string(a.arity()) + " vs " +
                std::to_string(b.arity()) + ")");
  Degree r = a;
  for (std::size_t i = 0; i < r.weight.size(); ++i) r.weight[i] += b.weight[i];
  r.parity = a.parity + b.parity;
  return r;
}

/// Negates the weight; parity is its own inverse in Z_2.
inline Degree degree_negate(const Degree& d) {
  Degree r = d;
  for (auto& w : r.weight) w = -w;
  return r;
}

inline Degree degree_sub(const Degree& a, const Degree& b) {
  return degree_add(a, degree_negate(b));
}

/// Lexicographic order on (weight, parity); used to fix deterministic
/// sector enumeration orders.
inline bool degree_less(const Degree& a, const Degree& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return static_cast<int>(a.parity) < static_cast<int>(b.parity);
}

/// Renders `(w1,...,wk|parity)`, the textual degree syntax of the file format.
std::string to_string(const Degree& d);

}  // namespace frobex

#endif

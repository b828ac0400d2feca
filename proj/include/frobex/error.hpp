#ifndef FROBEX_ERROR_HPP
#define FROBEX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace frobex {

/// Rejected-input and internal-failure errors. Verification *findings*
/// (failed axioms, counterexamples) are not errors; they travel in Reports.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frobex

#endif

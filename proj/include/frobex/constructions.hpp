#ifndef FROBEX_CONSTRUCTIONS_HPP
#define FROBEX_CONSTRUCTIONS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "frobex/nested.hpp"

namespace frobex {

/// A permutation of {1..n} in one-line notation.
struct Permutation {
  std::vector<int> one_line;  // one_line[i-1] = image of i

  std::size_t degree() const { return one_line.size(); }
  int operator()(int i) const { return one_line[i - 1]; }
  bool operator==(const Permutation& o) const = default;
};

Permutation identity_permutation(std::size_t n);
/// (v w)(i) = v(w(i)).
Permutation compose(const Permutation& v, const Permutation& w);
Permutation inverse(const Permutation& p);
/// Coxeter length = inversion count.
std::size_t length(const Permutation& p);
/// The longest element i -> n+1-i.
Permutation longest_permutation(std::size_t n);
/// Lexicographically smallest reduced word, as generator indices (1-based).
std::vector<int> lex_min_reduced_word(const Permutation& p);

struct SymmetricGroup {
  std::size_t n = 0;
  std::vector<Permutation> elements;  // ordered by (length, lex one-line)

  std::size_t index_of(const Permutation& p) const;  // throws if absent
};

/// All n! permutations, ordered by (length, lexicographic one-line).
SymmetricGroup symmetric_group(std::size_t n);

/// Finite group presented by a validated multiplication table.
struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::size_t> products;  // index i*size+j
  std::size_t identity = 0;

  std::size_t size() const { return elements.size(); }
  std::size_t product(std::size_t i, std::size_t j) const { return products[i * size() + j]; }
  std::size_t inverse(std::size_t i) const;
  std::size_t element_index(const std::string& label) const;  // throws if absent
};

/// Validates associativity, identity and inverses; throws Error on failure.
GroupTable make_group_table(std::string name, std::vector<std::string> elements,
                            std::vector<std::size_t> products, std::size_t identity);

/// Builtin tables: Z2, Z3, Z4, S3, A3.
GroupTable builtin_group(const std::string& name);

/// Subgroup selection: a named subgroup ("trivial", "Z2", "A3", the group's
/// own name) or an explicit element list. Returns element indices including
/// the identity; throws Error with a witness if the set is not a subgroup.
std::vector<std::size_t> subgroup_of(const GroupTable& g, const std::string& selector);
std::vector<std::size_t> validate_subgroup(const GroupTable& g,
                                           std::vector<std::size_t> element_indices);

// ---- algebra builders -----------------------------------------------------

/// Exterior algebra on m odd generators th1..thm of degree (0|odd) over Q;
/// dimension 2^m. m = 0 gives the rationals.
AlgebraPtr exterior_base(std::size_t m, std::size_t arity = 1);

/// The rationals as a rank-1 algebra of the given arity (basis label "one").
AlgebraPtr rationals(std::size_t arity = 1);

struct NilcoxeterData {
  AlgebraPtr algebra;
  TraceData trace;         // over rationals, untwisted
  Embedding sub_embedding; // nilcoxeter(n-1) into nilcoxeter(n); for n = 1 the identity
  AlgebraPtr sub;          // nilcoxeter(n-1); equals algebra's base for n = 1
};

/// Nilcoxeter ring N_n: basis u_w indexed by S_n, u_v u_w = u_{vw} when
/// lengths add and 0 otherwise, trace picking the u_{w0} coefficient.
NilcoxeterData nilcoxeter(std::size_t n);

struct GroupRingData {
  AlgebraPtr algebra;
  TraceData trace;  // projection onto the identity component, untwisted
};

/// Group ring base[g] with group elements in degree 0 (even); the base must
/// be supercommutative (checked; throws on failure).
GroupRingData group_ring(const GroupTable& g, const AlgebraPtr& base);

/// The full nested problem base ⊆ base[H] ⊆ base[G].
NestedProblem group_ring_tower(const GroupTable& g, const std::vector<std::size_t>& subgroup,
                               const AlgebraPtr& base);

/// Nested problem Q ⊆ N_{n-1} ⊆ N_n.
NestedProblem nilcoxeter_tower(std::size_t n);

/// Builds a problem from a CLI builtin spec: `nilcoxeter:<n>` or
/// `groupring:<group>:<subgroup>`; base is "q" or "ext:<m>".
NestedProblem builtin_problem(const std::string& spec, const std::string& base = "q");

}  // namespace frobex

#endif

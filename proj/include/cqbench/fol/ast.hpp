#ifndef CQBENCH_FOL_AST_HPP
#define CQBENCH_FOL_AST_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cqb::fol {

// Terms are variables or constants; there are no function symbols in the
// fragment this pipeline reads or writes.  Variable names carry the leading
// `?` of the human-readable syntax.
enum class TermKind { Variable, Constant };

struct Term {
  TermKind kind;
  std::string name;

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

Term var(std::string name);
Term constant(std::string name);

enum class Connective { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

// The reserved equality predicate; emitted as native `=` in prover syntax.
inline constexpr const char* kEqualPredicate = "equal";

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable n-ary formula tree.  And/Or keep at least two operands (nested
// same-connective operands are flattened on construction), quantifier
// variable lists are nonempty and duplicate-free.
struct Formula {
  Connective kind;
  std::string predicate;            // Atom only
  std::vector<Term> args;           // Atom only
  std::vector<FormulaPtr> children; // Not:1, Implies/Iff:2, And/Or:n
  std::vector<Term> vars;           // Forall/Exists binder list

  bool is_atom() const { return kind == Connective::Atom; }
};

FormulaPtr atom(std::string predicate, std::vector<Term> args);
FormulaPtr negation(FormulaPtr f);  // structural Not, no sentence check
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(std::vector<Term> vars, FormulaPtr body);
FormulaPtr exists(std::vector<Term> vars, FormulaPtr body);

bool structurally_equal(const Formula& a, const Formula& b);

// Standard free-variable set.
std::set<Term> free_variables(const Formula& f);

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

// Negation of a sentence.  The only simplification applied is removal of a
// double negation, so negate(negate(f)) == f.  Rejects open formulas.
FormulaPtr negate_sentence(FormulaPtr f);

// Deterministic serialization that renames bound variables positionally and
// sorts And/Or operand lists, so alpha-equivalent and operand-permuted
// sentences map to the same byte string.
std::string canonical_key(const Formula& f);

}  // namespace cqb::fol

#endif

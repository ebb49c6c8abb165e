#ifndef CQBENCH_FOL_TEXT_HPP
#define CQBENCH_FOL_TEXT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqbench/fol/ast.hpp"

namespace cqb::fol {

// ---------------------------------------------------------------------------
// Human-readable prefix syntax (SUO-KIF-like)
// ---------------------------------------------------------------------------

// `(and ($instance ?X Horse) (attribute ?X Male))` style, single line.
std::string emit_suo_kif(const Formula& f);

// Parses exactly one formula; trailing garbage is an error.
FormulaPtr parse_suo_kif(const std::string& text);

// ---------------------------------------------------------------------------
// Symbol mapping for the prover syntax
// ---------------------------------------------------------------------------

// Maps source symbols (`$instance`, `Artifact`, ...) to prover-syntax
// identifiers.  Explicit entries win; everything else goes through the
// sanitization fallback: non-identifier characters become `_`, then
// `meta_prefix` ($-prefixed sources) or `onto_prefix` is prepended.
// Two distinct sources landing on one target is a hard error.
class SymbolMap {
 public:
  SymbolMap() = default;
  SymbolMap(std::string onto_prefix, std::string meta_prefix)
      : onto_prefix_(std::move(onto_prefix)), meta_prefix_(std::move(meta_prefix)) {}

  void add(const std::string& source, const std::string& target);

  // Resolves and registers; throws IntegrityError on target collision.
  std::string target_for(const std::string& source) const;

  // Reverse lookup over everything registered so far.
  std::optional<std::string> source_for(const std::string& target) const;

  const std::string& onto_prefix() const { return onto_prefix_; }
  const std::string& meta_prefix() const { return meta_prefix_; }

 private:
  std::string onto_prefix_ = "s__";
  std::string meta_prefix_ = "d__";
  std::map<std::string, std::string> explicit_;               // source -> target
  mutable std::map<std::string, std::string> registry_;       // target -> source
  mutable std::map<std::string, std::string> resolved_;       // source -> target
};

// ---------------------------------------------------------------------------
// First-order-form annotated syntax (TPTP FOF subset)
// ---------------------------------------------------------------------------

enum class FofRole { Axiom, Conjecture };

struct FofRecord {
  std::string name;
  FofRole role;
  FormulaPtr formula;
};

// One `fof(<name>, <role>, <formula>).` record.  Variables are uppercased,
// predicates and constants resolved through `map`, and `equal` becomes `=`.
std::string emit_tptp(const std::string& name, FofRole role, const Formula& f,
                      const SymbolMap& map);

struct TptpParseResult {
  std::vector<FofRecord> records;
  std::vector<std::string> includes;  // include('...') directives, in order
};

// Parses a sequence of annotated records.  Comments and blank lines are
// permitted; anything outside the first-order-form subset is reported as an
// unsupported construct with its line number.
TptpParseResult parse_tptp(const std::string& text);
TptpParseResult parse_tptp_file(const std::string& path);

// Undoes a SymbolMap application on a parsed formula: prover-syntax
// identifiers back to source symbols, `=` back to `equal`, and variables
// re-prefixed with `?`.  Unknown identifiers pass through unchanged.
FormulaPtr apply_inverse_map(const Formula& f, const SymbolMap& map);

}  // namespace cqb::fol

#endif

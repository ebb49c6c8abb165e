#ifndef CQBENCH_STATEMENTS_HPP
#define CQBENCH_STATEMENTS_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "cqbench/fol/ast.hpp"
#include "cqbench/kb/types.hpp"

namespace cqb::statements {

// A projected mapping entry together with its concept's kind.
struct KindedEntry {
  std::string concept_name;
  kb::MappingRelation relation;
  kb::ConceptKind kind;
};

// Per-concept predicate overrides for ontologies whose argument-type axioms
// want `property` instead of `attribute`.
using AttributeOverrides = std::map<std::string, std::string>;

// Object-level translation of one mapping entry: objects via equality,
// classes via $instance, attributes via attribute, attribute classes via a
// bound witness.  Complement relations wrap the result in a negation.
// Relation-kind concepts are rejected (the caller must skip the synset).
fol::FormulaPtr object_statement(const KindedEntry& entry, const fol::Term& variable,
                                 const AttributeOverrides& overrides = {});

struct Statement {
  fol::FormulaPtr formula;
  fol::Term variable;
  std::set<kb::MappingRelation> relations_used;
  std::set<kb::ConceptKind> kinds_used;
};

// Conjunction of the per-entry statements sharing `variable`; single entries
// collapse to their own statement.  Returns nullopt when any entry maps to a
// SUMO relation (the skip signal).  Empty entry lists are a caller bug.
std::optional<Statement> synset_statement(std::span<const KindedEntry> entries,
                                          const fol::Term& variable,
                                          const AttributeOverrides& overrides = {});

// Convenience: resolve kinds from the snapshot and build the statement for a
// projected synset.
std::optional<Statement> synset_statement(const kb::KnowledgeSnapshot& snapshot,
                                          const kb::SynsetId& id, const fol::Term& variable,
                                          const AttributeOverrides& overrides = {});

}  // namespace cqb::statements

#endif

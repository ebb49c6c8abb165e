#include "cqbench/statements.hpp"

#include <stdexcept>

#include "cqbench/errors.hpp"

namespace cqb::statements {

using fol::FormulaPtr;
using fol::Term;
using kb::ConceptKind;
using kb::MappingRelation;

namespace {

Term fresh_witness(const Term& main_var) {
  // The conventional witness name, bumped only if the main variable took it.
  if (main_var.name != "?Z") return fol::var("?Z");
  return fol::var("?Z1");
}

std::string attribute_predicate(const std::string& concept_name,
                                const AttributeOverrides& overrides) {
  if (auto it = overrides.find(concept_name); it != overrides.end()) return it->second;
  return "attribute";
}

}  // namespace

FormulaPtr object_statement(const KindedEntry& entry, const Term& variable,
                            const AttributeOverrides& overrides) {
  if (variable.kind != fol::TermKind::Variable)
    throw std::invalid_argument("statement variable must be a variable term");
  if (kb::is_relation_kind(entry.kind))
    throw IntegrityError("relation-mapped synset: concept '" + entry.concept_name +
                         "' has kind " + kb::concept_kind_name(entry.kind));

  FormulaPtr body;
  switch (entry.kind) {
    case ConceptKind::Object:
      body = fol::atom(fol::kEqualPredicate, {variable, fol::constant(entry.concept_name)});
      break;
    case ConceptKind::Class:
      body = fol::atom("$instance", {variable, fol::constant(entry.concept_name)});
      break;
    case ConceptKind::IndividualAttribute:
      body = fol::atom(attribute_predicate(entry.concept_name, overrides),
                       {variable, fol::constant(entry.concept_name)});
      break;
    case ConceptKind::ClassOfAttributes: {
      Term witness = fresh_witness(variable);
      body = fol::exists(
          {witness},
          fol::conj({fol::atom("$instance", {witness, fol::constant(entry.concept_name)}),
                     fol::atom(attribute_predicate(entry.concept_name, overrides),
                               {variable, witness})}));
      break;
    }
    case ConceptKind::IndividualRelation:
    case ConceptKind::ClassOfRelations:
      throw Error(ErrorCategory::Internal, "unreachable: relation kind");
  }
  if (kb::is_complement(entry.relation)) return fol::negation(std::move(body));
  return body;
}

std::optional<Statement> synset_statement(std::span<const KindedEntry> entries,
                                          const Term& variable,
                                          const AttributeOverrides& overrides) {
  if (entries.empty()) throw std::invalid_argument("synset statement needs at least one entry");
  for (const KindedEntry& e : entries)
    if (kb::is_relation_kind(e.kind)) return std::nullopt;

  Statement out;
  out.variable = variable;
  std::vector<FormulaPtr> parts;
  parts.reserve(entries.size());
  for (const KindedEntry& e : entries) {
    parts.push_back(object_statement(e, variable, overrides));
    out.relations_used.insert(e.relation);
    out.kinds_used.insert(e.kind);
  }
  out.formula = parts.size() == 1 ? std::move(parts.front()) : fol::conj(std::move(parts));
  return out;
}

std::optional<Statement> synset_statement(const kb::KnowledgeSnapshot& snapshot,
                                          const kb::SynsetId& id, const Term& variable,
                                          const AttributeOverrides& overrides) {
  auto it = snapshot.projected_mapping.find(id);
  if (it == snapshot.projected_mapping.end() || it->second.empty())
    throw StateError("synset " + id.to_string() + " has no projected mapping");
  std::vector<KindedEntry> entries;
  entries.reserve(it->second.size());
  for (const kb::MappingEntry& e : it->second)
    entries.push_back({e.concept_name, e.relation, snapshot.kind_of(e.concept_name)});
  return synset_statement(entries, variable, overrides);
}

}  // namespace cqb::statements

#include "cqbench/kb/types.hpp"

#include <algorithm>
#include <cstdio>

#include "cqbench/errors.hpp"

namespace cqb::kb {

char pos_file_letter(PosFile p) {
  switch (p) {
    case PosFile::Noun: return 'n';
    case PosFile::Verb: return 'v';
    case PosFile::Adjective: return 'a';
    case PosFile::Adverb: return 'r';
  }
  return '?';
}

std::optional<PosFile> pos_file_from_letter(char c) {
  switch (c) {
    case 'n': return PosFile::Noun;
    case 'v': return PosFile::Verb;
    case 'a': case 's': return PosFile::Adjective;
    case 'r': return PosFile::Adverb;
    default: return std::nullopt;
  }
}

char pos_letter(Pos p) {
  switch (p) {
    case Pos::Noun: return 'n';
    case Pos::Verb: return 'v';
    case Pos::Adjective: return 'a';
    case Pos::Satellite: return 's';
    case Pos::Adverb: return 'r';
  }
  return '?';
}

PosFile file_of(Pos p) {
  switch (p) {
    case Pos::Noun: return PosFile::Noun;
    case Pos::Verb: return PosFile::Verb;
    case Pos::Adjective:
    case Pos::Satellite: return PosFile::Adjective;
    case Pos::Adverb: return PosFile::Adverb;
  }
  return PosFile::Noun;
}

std::string SynsetId::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c:%08u", pos_file_letter(pos), offset);
  return buf;
}

SynsetId SynsetId::from_string(const std::string& s) {
  if (s.size() < 3 || s[1] != ':') throw ParseError("bad synset id '" + s + "'");
  auto pf = pos_file_from_letter(s[0]);
  if (!pf) throw ParseError("bad synset id part of speech in '" + s + "'");
  uint32_t offset = 0;
  for (size_t i = 2; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad synset id offset in '" + s + "'");
    offset = offset * 10 + static_cast<uint32_t>(s[i] - '0');
  }
  return {*pf, offset};
}

const char* link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::Antonym: return "antonym";
    case LinkKind::Similar: return "similar";
    case LinkKind::Event: return "event";
    case LinkKind::Agent: return "agent";
    case LinkKind::Instrument: return "instrument";
    case LinkKind::Result: return "result";
  }
  return "?";
}

const char* mapping_relation_name(MappingRelation r) {
  switch (r) {
    case MappingRelation::Equivalence: return "equivalence";
    case MappingRelation::Subsumption: return "subsumption";
    case MappingRelation::Instance: return "instance";
    case MappingRelation::NotEquivalence: return "not-equivalence";
    case MappingRelation::NotSubsumption: return "not-subsumption";
  }
  return "?";
}

MappingRelation mapping_relation_from_name(const std::string& s) {
  if (s == "equivalence") return MappingRelation::Equivalence;
  if (s == "subsumption") return MappingRelation::Subsumption;
  if (s == "instance") return MappingRelation::Instance;
  if (s == "not-equivalence") return MappingRelation::NotEquivalence;
  if (s == "not-subsumption") return MappingRelation::NotSubsumption;
  throw ParseError("unknown mapping relation '" + s + "'");
}

const char* concept_kind_name(ConceptKind k) {
  switch (k) {
    case ConceptKind::Object: return "object";
    case ConceptKind::Class: return "class";
    case ConceptKind::IndividualRelation: return "individual-relation";
    case ConceptKind::IndividualAttribute: return "individual-attribute";
    case ConceptKind::ClassOfRelations: return "class-of-relations";
    case ConceptKind::ClassOfAttributes: return "class-of-attributes";
  }
  return "?";
}

ConceptKind concept_kind_from_name(const std::string& s) {
  if (s == "object") return ConceptKind::Object;
  if (s == "class") return ConceptKind::Class;
  if (s == "individual-relation") return ConceptKind::IndividualRelation;
  if (s == "individual-attribute") return ConceptKind::IndividualAttribute;
  if (s == "class-of-relations") return ConceptKind::ClassOfRelations;
  if (s == "class-of-attributes") return ConceptKind::ClassOfAttributes;
  throw ParseError("unknown concept kind '" + s + "'");
}

const char* taxonomy_relation_name(TaxonomyRelation r) {
  switch (r) {
    case TaxonomyRelation::Instance: return "instance";
    case TaxonomyRelation::Subclass: return "subclass";
    case TaxonomyRelation::Subrelation: return "subrelation";
    case TaxonomyRelation::SubAttribute: return "subAttribute";
  }
  return "?";
}

const Synset* KnowledgeSnapshot::find_synset(const SynsetId& id) const {
  auto it = std::lower_bound(synsets.begin(), synsets.end(), id,
                             [](const Synset& s, const SynsetId& v) { return s.id < v; });
  if (it == synsets.end() || !(it->id == id)) return nullptr;
  return &*it;
}

bool KnowledgeSnapshot::has_link(LinkKind kind, const SynsetId& a, const SynsetId& b) const {
  LexicalLink probe{kind, std::min(a, b), std::max(a, b)};
  return std::binary_search(links.begin(), links.end(), probe);
}

std::vector<SynsetId> KnowledgeSnapshot::similar_neighbors(const SynsetId& id) const {
  std::vector<SynsetId> out;
  for (const LexicalLink& l : links) {
    if (l.kind != LinkKind::Similar) continue;
    if (l.source == id) out.push_back(l.target);
    else if (l.target == id) out.push_back(l.source);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConceptKind KnowledgeSnapshot::kind_of(const std::string& concept_name) const {
  auto it = concept_kinds.find(concept_name);
  if (it == concept_kinds.end())
    throw IntegrityError("concept '" + concept_name + "' has no assigned kind");
  return it->second;
}

}  // namespace cqb::kb

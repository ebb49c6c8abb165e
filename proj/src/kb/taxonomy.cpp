#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/kb/parsers.hpp"

namespace cqb::kb {

namespace {

// Top-level s-expressions, atoms only where facts need them.
struct SExpr {
  bool is_atom;
  std::string atom;
  std::vector<SExpr> items;
};

struct KifReader {
  const std::string& text;
  const std::string& file;
  size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(file + ":" + std::to_string(line) + ": " + msg);
  }

  void skip() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos >= text.size();
  }

  SExpr read() {
    skip();
    if (pos >= text.size()) fail("unexpected end of file");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      SExpr list{false, "", {}};
      while (true) {
        skip();
        if (pos >= text.size()) fail("unbalanced parentheses (missing ')')");
        if (text[pos] == ')') {
          ++pos;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') fail("unbalanced parentheses (stray ')')");
    if (c == '"') {
      ++pos;
      std::string s;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        if (text[pos] == '\n') ++line;
        s += text[pos++];
      }
      if (pos >= text.size()) fail("unterminated string");
      ++pos;
      return SExpr{true, s, {}};
    }
    std::string s;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')' && text[pos] != ';')
      s += text[pos++];
    return SExpr{true, s, {}};
  }
};

std::optional<TaxonomyRelation> fact_relation(const std::string& head) {
  // `$`-prefixed spellings appear in translated axiom sets.
  std::string name = head;
  if (!name.empty() && name[0] == '$') name.erase(0, 1);
  if (name == "instance") return TaxonomyRelation::Instance;
  if (name == "subclass") return TaxonomyRelation::Subclass;
  if (name == "subrelation") return TaxonomyRelation::Subrelation;
  if (name == "subAttribute") return TaxonomyRelation::SubAttribute;
  return std::nullopt;
}

struct FactExtraction {
  std::vector<TaxonomyFact> facts;
  std::set<std::string> declared;
  uint64_t skipped = 0;
};

void extract_facts(const std::string& path, FactExtraction& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  KifReader reader{text, path};
  while (!reader.at_end()) {
    SExpr e = reader.read();
    if (e.is_atom || e.items.size() != 3 || !e.items[0].is_atom || !e.items[1].is_atom ||
        !e.items[2].is_atom) {
      out.skipped++;
      continue;
    }
    auto rel = fact_relation(e.items[0].atom);
    if (!rel) {
      out.skipped++;
      continue;
    }
    const std::string& child = e.items[1].atom;
    const std::string& parent = e.items[2].atom;
    if (*rel != TaxonomyRelation::Instance && child == parent)
      throw ParseError(path + ": self-loop fact (" + e.items[0].atom + " " + child + " " + parent +
                       ")");
    out.facts.push_back({*rel, child, parent, path});
    out.declared.insert(child);
    out.declared.insert(parent);
  }
}

}  // namespace

TaxonomyParseResult parse_suo_kif_taxonomy(const std::vector<std::string>& paths,
                                           const std::vector<std::string>& core_paths,
                                           const KindRoots& roots) {
  TaxonomyParseResult out;

  FactExtraction all;
  for (const auto& p : paths) extract_facts(p, all);
  // Core files may also appear in `paths`; parse them once more only for the
  // declared-concept set so callers can keep the lists independent.
  FactExtraction core_only;
  for (const auto& p : core_paths) extract_facts(p, core_only);

  std::sort(all.facts.begin(), all.facts.end());
  all.facts.erase(std::unique(all.facts.begin(), all.facts.end()), all.facts.end());
  out.facts = std::move(all.facts);
  out.skipped_expressions = all.skipped + core_only.skipped;
  out.core = std::move(core_only.declared);

  // Kind assignment.  subclass edges are transitive; an instance-of hop (and
  // participation in subrelation/subAttribute facts) classifies individuals.
  std::map<std::string, std::vector<std::string>> subclass_up;
  std::map<std::string, std::vector<std::string>> instance_up;
  std::set<std::string> in_subrelation, in_subattribute, in_subclass;
  for (const TaxonomyFact& f : out.facts) {
    switch (f.relation) {
      case TaxonomyRelation::Subclass:
        subclass_up[f.child].push_back(f.parent);
        in_subclass.insert(f.child);
        in_subclass.insert(f.parent);
        break;
      case TaxonomyRelation::Instance:
        instance_up[f.child].push_back(f.parent);
        break;
      case TaxonomyRelation::Subrelation:
        in_subrelation.insert(f.child);
        in_subrelation.insert(f.parent);
        break;
      case TaxonomyRelation::SubAttribute:
        in_subattribute.insert(f.child);
        in_subattribute.insert(f.parent);
        break;
    }
  }

  auto subclass_closure = [&](const std::string& start) {
    std::set<std::string> seen{start};
    std::queue<std::string> work;
    work.push(start);
    while (!work.empty()) {
      std::string cur = std::move(work.front());
      work.pop();
      if (auto it = subclass_up.find(cur); it != subclass_up.end())
        for (const auto& parent : it->second)
          if (seen.insert(parent).second) work.push(parent);
    }
    return seen;
  };

  std::set<std::string> everything(core_only.declared.begin(), core_only.declared.end());
  for (const TaxonomyFact& f : out.facts) {
    everything.insert(f.child);
    everything.insert(f.parent);
  }

  for (const std::string& c : everything) {
    bool is_r = in_subrelation.count(c) > 0;
    bool is_a = in_subattribute.count(c) > 0;
    bool is_R = false, is_A = false, is_c = in_subclass.count(c) > 0;
    auto up = subclass_closure(c);
    if (up.count(roots.relation) && c != roots.relation) is_R = true;
    if (up.count(roots.attribute) && c != roots.attribute) is_A = true;
    if (auto it = instance_up.find(c); it != instance_up.end()) {
      for (const auto& target : it->second) {
        auto targets_up = subclass_closure(target);
        if (targets_up.count(roots.relation)) is_r = true;
        if (targets_up.count(roots.attribute)) is_a = true;
        if (targets_up.count(roots.class_root)) is_c = true;
      }
    }
    int individual_kinds = (is_r ? 1 : 0) + (is_a ? 1 : 0) + (is_R ? 1 : 0) + (is_A ? 1 : 0);
    if (individual_kinds > 1)
      out.ambiguity_warnings.push_back(c + std::string(": kinds ") + (is_r ? "r" : "") +
                                       (is_a ? "a" : "") + (is_R ? "R" : "") + (is_A ? "A" : ""));
    ConceptKind kind = ConceptKind::Object;
    if (is_r) kind = ConceptKind::IndividualRelation;
    else if (is_a) kind = ConceptKind::IndividualAttribute;
    else if (is_R) kind = ConceptKind::ClassOfRelations;
    else if (is_A) kind = ConceptKind::ClassOfAttributes;
    else if (is_c) kind = ConceptKind::Class;
    out.kinds[c] = kind;
  }

  return out;
}

}  // namespace cqb::kb

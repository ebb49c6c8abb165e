#include <algorithm>
#include <fstream>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/kb/parsers.hpp"

namespace cqb::kb {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cols;
  if (line.find('\t') != std::string::npos) {
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
  } else {
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) cols.push_back(tok);
  }
  return cols;
}

// `pos:offset` or a sense key resolved through the index.
std::optional<SynsetId> resolve_sense(const std::string& token,
                                      const std::map<std::string, SynsetId>& sense_index) {
  if (token.size() > 2 && token[1] == ':') {
    auto pf = pos_file_from_letter(token[0]);
    if (!pf) return std::nullopt;
    uint32_t offset = 0;
    for (size_t i = 2; i < token.size(); ++i) {
      if (token[i] < '0' || token[i] > '9') return std::nullopt;
      offset = offset * 10 + static_cast<uint32_t>(token[i] - '0');
    }
    return SynsetId{*pf, offset};
  }
  if (auto it = sense_index.find(token); it != sense_index.end()) return it->second;
  return std::nullopt;
}

std::optional<LinkKind> morpho_relation(const std::string& name) {
  if (name == "event") return LinkKind::Event;
  if (name == "agent") return LinkKind::Agent;
  if (name == "instrument") return LinkKind::Instrument;
  if (name == "result") return LinkKind::Result;
  return std::nullopt;
}

}  // namespace

std::map<std::string, SynsetId> parse_sense_index(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, SynsetId> index;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == ' ') continue;
    std::istringstream row(line);
    std::string key, offset_text, sense_number;
    if (!(row >> key >> offset_text))
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad sense index line");
    row >> sense_number;
    // The ss_type digit after '%' selects the database file.
    auto percent = key.find('%');
    if (percent == std::string::npos || percent + 1 >= key.size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad sense key '" + key + "'");
    PosFile pf;
    char pos_letter;
    switch (key[percent + 1]) {
      case '1': pf = PosFile::Noun; pos_letter = 'n'; break;
      case '2': pf = PosFile::Verb; pos_letter = 'v'; break;
      case '3': pf = PosFile::Adjective; pos_letter = 'a'; break;
      case '5': pf = PosFile::Adjective; pos_letter = 's'; break;
      case '4': pf = PosFile::Adverb; pos_letter = 'r'; break;
      default:
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad ss_type in '" + key + "'");
    }
    SynsetId id{pf, static_cast<uint32_t>(std::stoul(offset_text))};
    index[key] = id;
    // `lemma#pos#sense` addressing resolves through the same table.
    if (!sense_number.empty()) {
      std::string lemma = key.substr(0, percent);
      index[lemma + "#" + pos_letter + "#" + sense_number] = id;
      if (pos_letter == 's') index[lemma + "#a#" + sense_number] = id;
    }
  }
  return index;
}

MorphosemanticParseResult parse_morphosemantic_links(
    const std::string& path, const std::map<std::string, SynsetId>& sense_index) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  MorphosemanticParseResult out;
  std::set<LexicalLink> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_row(line);
    if (cols.size() < 3) {
      out.unresolved.push_back(path + ":" + std::to_string(lineno) + ": short row");
      continue;
    }
    auto kind = morpho_relation(cols[1]);
    if (!kind) {
      out.skipped_relations[cols[1]]++;
      continue;
    }
    auto verb = resolve_sense(cols[0], sense_index);
    auto noun = resolve_sense(cols[2], sense_index);
    if (!verb || !noun) {
      out.unresolved.push_back(path + ":" + std::to_string(lineno) + ": unresolvable sense '" +
                               (verb ? cols[2] : cols[0]) + "'");
      continue;
    }
    if (verb->pos != PosFile::Verb || noun->pos != PosFile::Noun) {
      out.unresolved.push_back(path + ":" + std::to_string(lineno) +
                               ": row is not a verb-noun pair");
      continue;
    }
    LexicalLink link{*kind, *verb, *noun};
    if (seen.insert(link).second) out.links.push_back(link);
  }
  std::sort(out.links.begin(), out.links.end());
  return out;
}

}  // namespace cqb::kb

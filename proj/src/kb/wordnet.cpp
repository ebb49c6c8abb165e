#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/kb/parsers.hpp"

namespace cqb::kb {

namespace {

struct LineScanner {
  const std::string& line;
  const std::string& file;
  int lineno;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(file + ":" + std::to_string(lineno) + ": " + msg);
  }

  std::string token() {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    size_t start = pos;
    while (pos < line.size() && line[pos] != ' ') ++pos;
    if (pos == start) fail("unexpected end of line");
    return line.substr(start, pos - start);
  }

  uint32_t number(int base, const char* what) {
    std::string t = token();
    uint32_t value = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value, base);
    if (ec != std::errc() || p != t.data() + t.size())
      fail(std::string("bad ") + what + " field '" + t + "'");
    return value;
  }
};

Pos pos_from_ss_type(char c, LineScanner& sc) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'v': return Pos::Verb;
    case 'a': return Pos::Adjective;
    case 's': return Pos::Satellite;
    case 'r': return Pos::Adverb;
    default: sc.fail(std::string("unknown ss_type '") + c + "'");
  }
}

}  // namespace

WordnetParseResult parse_wordnet_data(const std::map<PosFile, std::string>& paths) {
  WordnetParseResult out;
  std::set<std::pair<SynsetId, SynsetId>> antonyms;
  std::set<std::pair<SynsetId, SynsetId>> similars;

  for (const auto& [pos_file, path] : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == ' ') continue;  // license header lines are indented
      LineScanner sc{line, path, lineno};

      uint32_t offset = sc.number(10, "synset_offset");
      sc.number(10, "lex_filenum");
      std::string ss_type = sc.token();
      if (ss_type.size() != 1) sc.fail("bad ss_type '" + ss_type + "'");
      Pos pos = pos_from_ss_type(ss_type[0], sc);
      if (file_of(pos) != pos_file)
        sc.fail(std::string("ss_type '") + ss_type + "' does not belong in this file");

      Synset synset;
      synset.id = {pos_file, offset};
      synset.pos = pos;

      uint32_t w_cnt = sc.number(16, "w_cnt");
      if (w_cnt == 0) sc.fail("synset has no words");
      for (uint32_t i = 0; i < w_cnt; ++i) {
        synset.lemmas.push_back(sc.token());
        sc.token();  // lex_id
      }

      uint32_t p_cnt = sc.number(10, "p_cnt");
      for (uint32_t i = 0; i < p_cnt; ++i) {
        std::string sym = sc.token();
        uint32_t target_offset = sc.number(10, "pointer offset");
        std::string tpos = sc.token();
        sc.token();  // source/target
        auto target_file = tpos.size() == 1 ? pos_file_from_letter(tpos[0]) : std::nullopt;
        if (!target_file) sc.fail("bad pointer pos '" + tpos + "'");
        SynsetId self = synset.id;
        SynsetId other{*target_file, target_offset};
        if (sym == "!") {
          antonyms.emplace(std::min(self, other), std::max(self, other));
        } else if (sym == "&") {
          similars.emplace(std::min(self, other), std::max(self, other));
        } else {
          out.ignored_pointer_symbols[sym]++;
        }
      }

      // Verb frames, if any, sit between the pointers and the gloss bar.
      auto bar = line.find(" | ", sc.pos);
      if (bar != std::string::npos) synset.gloss = line.substr(bar + 3);
      out.synsets.push_back(std::move(synset));
    }
  }

  std::sort(out.synsets.begin(), out.synsets.end(),
            [](const Synset& a, const Synset& b) { return a.id < b.id; });
  for (size_t i = 1; i < out.synsets.size(); ++i)
    if (out.synsets[i].id == out.synsets[i - 1].id)
      throw IntegrityError("duplicate synset id " + out.synsets[i].id.to_string());

  for (const auto& [a, b] : antonyms) out.antonym_links.push_back({LinkKind::Antonym, a, b});
  for (const auto& [a, b] : similars) out.similar_links.push_back({LinkKind::Similar, a, b});
  return out;
}

}  // namespace cqb::kb

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/kb/parsers.hpp"

namespace cqb::kb {

namespace {

bool concept_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

}  // namespace

MappingParseResult parse_mapping_files(const std::vector<std::string>& paths,
                                       const MappingSuffixes& suffixes) {
  MappingParseResult out;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == ' ' || line[0] == ';') continue;

      // Leading `offset lex_filenum ss_type` identifies the synset; the rest
      // of the data-file layout is irrelevant here.
      std::istringstream head(line);
      std::string offset_text, lexfile, ss_type;
      if (!(head >> offset_text >> lexfile >> ss_type) || ss_type.size() != 1)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad synset record");
      auto pf = pos_file_from_letter(ss_type[0]);
      if (!pf)
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad ss_type '" + ss_type + "'");
      uint32_t offset = 0;
      for (char c : offset_text) {
        if (c < '0' || c > '9')
          throw ParseError(path + ":" + std::to_string(lineno) + ": bad offset '" + offset_text +
                           "'");
        offset = offset * 10 + static_cast<uint32_t>(c - '0');
      }
      SynsetId id{*pf, offset};

      std::vector<MappingEntry> entries;
      size_t pos = 0;
      while ((pos = line.find("&%", pos)) != std::string::npos) {
        pos += 2;
        size_t start = pos;
        while (pos < line.size() && concept_char(line[pos])) ++pos;
        if (pos == start)
          throw ParseError(path + ":" + std::to_string(lineno) + ": empty concept after &%");
        std::string concept_name = line.substr(start, pos - start);
        if (pos >= line.size())
          throw ParseError(path + ":" + std::to_string(lineno) + ": missing mapping suffix after '" +
                           concept_name + "'");
        char suffix = line[pos];
        auto it = suffixes.table.find(suffix);
        if (it == suffixes.table.end())
          throw ParseError(path + ":" + std::to_string(lineno) + ": unknown mapping suffix '" +
                           std::string(1, suffix) + "' after '" + concept_name + "'");
        ++pos;
        entries.push_back({std::move(concept_name), it->second});
      }

      if (entries.empty()) {
        out.unmapped_per_pos[std::string(1, ss_type[0])]++;
        // Recorded as an unmapped synset: present with an empty entry list.
        out.mapping.emplace(id, std::vector<MappingEntry>{});
        continue;
      }
      // Collapse exact duplicates, keeping first-occurrence order.
      std::vector<MappingEntry> unique;
      std::set<MappingEntry> seen;
      for (auto& e : entries) {
        if (seen.insert(e).second)
          unique.push_back(std::move(e));
        else
          out.duplicates_collapsed++;
      }
      auto [slot, inserted] = out.mapping.emplace(id, std::move(unique));
      if (!inserted)
        throw IntegrityError(path + ":" + std::to_string(lineno) + ": synset " + id.to_string() +
                             " mapped twice");
    }
  }
  return out;
}

}  // namespace cqb::kb

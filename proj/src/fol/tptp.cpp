#include <cctype>
#include <fstream>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb::fol {

// ---------------------------------------------------------------------------
// SymbolMap
// ---------------------------------------------------------------------------

namespace {

std::string sanitize_ident(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
      out += c;
    else
      out += '_';
  }
  return out;
}

}  // namespace

void SymbolMap::add(const std::string& source, const std::string& target) {
  auto [it, inserted] = explicit_.emplace(source, target);
  if (!inserted && it->second != target)
    throw ConfigError("symbol map re-binds '" + source + "' to '" + target + "' (was '" +
                      it->second + "')");
}

std::string SymbolMap::target_for(const std::string& source) const {
  if (auto it = resolved_.find(source); it != resolved_.end()) return it->second;
  std::string target;
  if (auto it = explicit_.find(source); it != explicit_.end()) {
    target = it->second;
  } else if (!source.empty() && source[0] == '$') {
    target = meta_prefix_ + sanitize_ident(source.substr(1));
  } else {
    target = onto_prefix_ + sanitize_ident(source);
  }
  auto [it, inserted] = registry_.emplace(target, source);
  if (!inserted && it->second != source)
    throw IntegrityError("symbol collision: '" + source + "' and '" + it->second +
                         "' both map to '" + target + "'");
  resolved_.emplace(source, target);
  return target;
}

std::optional<std::string> SymbolMap::source_for(const std::string& target) const {
  if (auto it = registry_.find(target); it != registry_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

// TPTP variables are upper_words.
std::string tptp_variable(const std::string& name) {
  std::string base = name;
  if (!base.empty() && base[0] == '?') base.erase(0, 1);
  base = sanitize_ident(base);
  if (base.empty()) base = "V";
  if (!std::isupper(static_cast<unsigned char>(base[0]))) {
    if (std::islower(static_cast<unsigned char>(base[0])))
      base[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(base[0])));
    else
      base = "V" + base;
  }
  return base;
}

bool is_lower_word(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Functors that are not lower_words are emitted single-quoted.
std::string tptp_functor(const std::string& name) {
  if (is_lower_word(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

std::string tptp_term(const Term& t, const SymbolMap& map) {
  if (t.kind == TermKind::Variable) return tptp_variable(t.name);
  return tptp_functor(map.target_for(t.name));
}

void emit_fof(const Formula& f, const SymbolMap& map, std::string& out) {
  switch (f.kind) {
    case Connective::Atom:
      if (f.predicate == kEqualPredicate) {
        out += '(';
        out += tptp_term(f.args[0], map);
        out += " = ";
        out += tptp_term(f.args[1], map);
        out += ')';
        return;
      }
      out += tptp_functor(map.target_for(f.predicate));
      if (!f.args.empty()) {
        out += '(';
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ',';
          out += tptp_term(f.args[i], map);
        }
        out += ')';
      }
      return;
    case Connective::Not:
      out += "~ ";
      emit_fof(*f.children.front(), map, out);
      return;
    case Connective::And:
    case Connective::Or: {
      const char* op = f.kind == Connective::And ? " & " : " | ";
      out += '(';
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += op;
        emit_fof(*f.children[i], map, out);
      }
      out += ')';
      return;
    }
    case Connective::Implies:
    case Connective::Iff:
      out += '(';
      emit_fof(*f.children[0], map, out);
      out += f.kind == Connective::Implies ? " => " : " <=> ";
      emit_fof(*f.children[1], map, out);
      out += ')';
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += f.kind == Connective::Forall ? "! [" : "? [";
      for (size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ',';
        out += tptp_variable(f.vars[i].name);
      }
      out += "] : ";
      emit_fof(*f.children.front(), map, out);
      return;
  }
}

}  // namespace

std::string emit_tptp(const std::string& name, FofRole role, const Formula& f,
                      const SymbolMap& map) {
  auto fv = free_variables(f);
  if (!fv.empty())
    throw IntegrityError("emit: formula '" + name + "' has free variables, e.g. " +
                         fv.begin()->name);
  // Variable names within one formula must stay distinct after uppercasing.
  std::map<std::string, std::string> seen;  // tptp name -> source name
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    for (const Term& v : cur->vars) {
      std::string tv = tptp_variable(v.name);
      auto [it, inserted] = seen.emplace(tv, v.name);
      if (!inserted && it->second != v.name)
        throw IntegrityError("variables '" + v.name + "' and '" + it->second +
                             "' collide as TPTP variable '" + tv + "'");
    }
    for (const auto& c : cur->children) stack.push_back(c.get());
  }

  std::string out = "fof(";
  out += name;
  out += ", ";
  out += role == FofRole::Axiom ? "axiom" : "conjecture";
  out += ", ";
  emit_fof(f, map, out);
  out += ").";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing (FOF subset)
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Tilde,
  Amp,
  Pipe,
  Implies,     // =>
  Iff,         // <=>
  Equal,       // =
  NotEqual,    // !=
  Bang,        // !
  Question,    // ?
  LowerWord,   // includes 'quoted' atoms and numbers
  UpperWord,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
};

class Lexer {
 public:
  Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    int line = line_;
    if (pos_ >= text_.size()) return {Tok::End, "", line};
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; return {Tok::LParen, "(", line};
      case ')': ++pos_; return {Tok::RParen, ")", line};
      case '[': ++pos_; return {Tok::LBracket, "[", line};
      case ']': ++pos_; return {Tok::RBracket, "]", line};
      case ',': ++pos_; return {Tok::Comma, ",", line};
      case '.': ++pos_; return {Tok::Dot, ".", line};
      case ':': ++pos_; return {Tok::Colon, ":", line};
      case '~': ++pos_; return {Tok::Tilde, "~", line};
      case '&': ++pos_; return {Tok::Amp, "&", line};
      case '|': ++pos_; return {Tok::Pipe, "|", line};
      default: break;
    }
    if (c == '=') {
      if (text_.compare(pos_, 2, "=>") == 0) {
        pos_ += 2;
        return {Tok::Implies, "=>", line};
      }
      ++pos_;
      return {Tok::Equal, "=", line};
    }
    if (c == '<') {
      if (text_.compare(pos_, 3, "<=>") == 0) {
        pos_ += 3;
        return {Tok::Iff, "<=>", line};
      }
      fail(line, "unsupported operator starting with '<'");
    }
    if (c == '!') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        pos_ += 2;
        return {Tok::NotEqual, "!=", line};
      }
      ++pos_;
      return {Tok::Bang, "!", line};
    }
    if (c == '?') {
      ++pos_;
      return {Tok::Question, "?", line};
    }
    if (c == '\'') {
      std::string s;
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '\'') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        if (text_[pos_] == '\n') ++line_;
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail(line, "unterminated quoted atom");
      ++pos_;
      return {Tok::LowerWord, s, line};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::string s;
      if (c == '-' || c == '+') s += text_[pos_++];
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        if (text_[pos_] == '.' &&
            (pos_ + 1 >= text_.size() ||
             !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
          break;  // record-terminating dot
        s += text_[pos_++];
      }
      if (s.empty() || s == "-" || s == "+") fail(line, "stray sign character");
      return {Tok::LowerWord, s, line};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '$'))
        s += text_[pos_++];
      bool upper = std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_';
      return {upper ? Tok::UpperWord : Tok::LowerWord, s, line};
    }
    fail(line, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError("tptp line " + std::to_string(line) + ": " + msg);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < text_.size() &&
               !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          if (text_[pos_] == '\n') ++line_;
          ++pos_;
        }
        if (pos_ + 1 >= text_.size()) fail(line_, "unterminated block comment");
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
};

class FofParser {
 public:
  explicit FofParser(const std::string& text) : lexer_(text) { advance(); }

  TptpParseResult parse() {
    TptpParseResult out;
    // Bad records are collected (with their line numbers) rather than
    // aborting the file, so one report covers every defect.
    std::vector<std::string> errors;
    while (cur_.kind != Tok::End) {
      try {
        if (cur_.kind == Tok::LowerWord && cur_.text == "include") {
          out.includes.push_back(parse_include());
          continue;
        }
        if (cur_.kind == Tok::LowerWord && cur_.text == "fof") {
          out.records.push_back(parse_fof());
          continue;
        }
        if (cur_.kind == Tok::LowerWord &&
            (cur_.text == "cnf" || cur_.text == "tff" || cur_.text == "thf" ||
             cur_.text == "tcf" || cur_.text == "tpi")) {
          fail("unsupported construct: '" + cur_.text + "' record (first-order form only)");
        }
        fail("expected an annotated record, got '" + cur_.text + "'");
      } catch (const ParseError& e) {
        errors.push_back(e.what());
        if (errors.size() >= 20) break;
        skip_to_next_record();
      }
    }
    if (!errors.empty()) {
      std::string joined = errors.front();
      for (size_t i = 1; i < errors.size(); ++i) joined += "\n" + errors[i];
      throw ParseError(joined);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { lexer_.fail(cur_.line, msg); }

  void advance() { cur_ = lexer_.next(); }

  // Error recovery: resynchronize at the dot closing the defective record.
  void skip_to_next_record() {
    while (cur_.kind != Tok::End && cur_.kind != Tok::Dot) {
      try {
        advance();
      } catch (const ParseError&) {
        return;  // lexing is stuck; give up on recovery
      }
    }
    if (cur_.kind == Tok::Dot) advance();
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what + ", got '" + cur_.text + "'");
    advance();
  }

  std::string parse_include() {
    advance();  // include
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::LowerWord) fail("expected include path");
    std::string path = cur_.text;
    advance();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return path;
  }

  FofRecord parse_fof() {
    advance();  // fof
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::LowerWord && cur_.kind != Tok::UpperWord) fail("expected record name");
    std::string name = cur_.text;
    advance();
    expect(Tok::Comma, "','");
    if (cur_.kind != Tok::LowerWord) fail("expected record role");
    std::string role_text = cur_.text;
    advance();
    FofRole role;
    if (role_text == "axiom" || role_text == "hypothesis" || role_text == "definition" ||
        role_text == "lemma" || role_text == "theorem")
      role = FofRole::Axiom;
    else if (role_text == "conjecture")
      role = FofRole::Conjecture;
    else if (role_text == "negated_conjecture")
      role = FofRole::Conjecture;
    else
      fail("unsupported record role '" + role_text + "'");
    expect(Tok::Comma, "','");
    FormulaPtr formula = parse_formula();
    // Optional source/useful-info annotations: skip balanced content to the dot.
    if (cur_.kind == Tok::Comma) {
      int depth = 1;  // inside fof(
      while (!(depth == 1 && cur_.kind == Tok::RParen)) {
        if (cur_.kind == Tok::End) fail("unterminated record annotations");
        if (cur_.kind == Tok::LParen || cur_.kind == Tok::LBracket) ++depth;
        if (cur_.kind == Tok::RParen || cur_.kind == Tok::RBracket) --depth;
        advance();
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return {std::move(name), role, std::move(formula)};
  }

  // Precedence: binary <=>/=> over | over & over unary.
  FormulaPtr parse_formula() {
    FormulaPtr left = parse_or();
    if (cur_.kind == Tok::Implies) {
      advance();
      FormulaPtr right = parse_or();
      return implies(std::move(left), std::move(right));
    }
    if (cur_.kind == Tok::Iff) {
      advance();
      FormulaPtr right = parse_or();
      return iff(std::move(left), std::move(right));
    }
    return left;
  }

  FormulaPtr parse_or() {
    std::vector<FormulaPtr> parts;
    parts.push_back(parse_and());
    while (cur_.kind == Tok::Pipe) {
      advance();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front()) : disj(std::move(parts));
  }

  FormulaPtr parse_and() {
    std::vector<FormulaPtr> parts;
    parts.push_back(parse_unary());
    while (cur_.kind == Tok::Amp) {
      advance();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : conj(std::move(parts));
  }

  FormulaPtr parse_unary() {
    switch (cur_.kind) {
      case Tok::Tilde: {
        advance();
        return negation(parse_unary());
      }
      case Tok::Bang:
      case Tok::Question: {
        bool universal = cur_.kind == Tok::Bang;
        advance();
        expect(Tok::LBracket, "'['");
        std::vector<Term> vars;
        while (true) {
          if (cur_.kind != Tok::UpperWord) fail("expected a variable in quantifier list");
          vars.push_back(var("?" + cur_.text));
          advance();
          if (cur_.kind == Tok::Comma) {
            advance();
            continue;
          }
          break;
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Colon, "':'");
        FormulaPtr body = parse_unary();
        return universal ? forall(std::move(vars), std::move(body))
                         : exists(std::move(vars), std::move(body));
      }
      case Tok::LParen: {
        advance();
        FormulaPtr f = parse_formula();
        expect(Tok::RParen, "')'");
        return maybe_equality_tail(std::move(f));
      }
      case Tok::LowerWord:
      case Tok::UpperWord:
        return parse_atom_or_equality();
      default:
        fail("expected a formula, got '" + cur_.text + "'");
    }
  }

  // `(t) = s` does not occur in this subset; equality operands are plain
  // terms, so a parenthesized formula followed by = is an error.
  FormulaPtr maybe_equality_tail(FormulaPtr f) {
    if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual)
      fail("unsupported construct: equality over a parenthesized expression");
    return f;
  }

  Term parse_term() {
    if (cur_.kind == Tok::UpperWord) {
      Term t = var("?" + cur_.text);
      advance();
      return t;
    }
    if (cur_.kind == Tok::LowerWord) {
      std::string name = cur_.text;
      if (name == "$true" || name == "$false")
        fail("unsupported construct: defined boolean " + name);
      advance();
      if (cur_.kind == Tok::LParen)
        fail("unsupported construct: function term '" + name + "(...)'");
      return constant(std::move(name));
    }
    fail("expected a term, got '" + cur_.text + "'");
  }

  FormulaPtr parse_atom_or_equality() {
    if (cur_.kind == Tok::UpperWord) {
      Term left = parse_term();
      if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual) {
        bool neg = cur_.kind == Tok::NotEqual;
        advance();
        Term right = parse_term();
        auto eq = atom(kEqualPredicate, {std::move(left), std::move(right)});
        return neg ? negation(std::move(eq)) : eq;
      }
      fail("a variable is not a formula");
    }
    std::string name = cur_.text;
    if (name == "$true" || name == "$false")
      fail("unsupported construct: defined boolean " + name);
    advance();
    if (cur_.kind == Tok::LParen) {
      advance();
      std::vector<Term> args;
      if (cur_.kind != Tok::RParen) {
        while (true) {
          args.push_back(parse_term());
          if (cur_.kind == Tok::Comma) {
            advance();
            continue;
          }
          break;
        }
      }
      expect(Tok::RParen, "')'");
      if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual)
        fail("unsupported construct: function term in equality");
      return atom(std::move(name), std::move(args));
    }
    if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual) {
      bool neg = cur_.kind == Tok::NotEqual;
      advance();
      Term right = parse_term();
      auto eq = atom(kEqualPredicate, {constant(std::move(name)), std::move(right)});
      return neg ? negation(std::move(eq)) : eq;
    }
    return atom(std::move(name), {});  // propositional atom
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", 0};
};

}  // namespace

TptpParseResult parse_tptp(const std::string& text) { return FofParser(text).parse(); }

TptpParseResult parse_tptp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_tptp(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

Term invert_term(const Term& t, const SymbolMap& map) {
  if (t.kind == TermKind::Variable) {
    std::string n = t.name;
    if (n.size() >= 1 && n[0] != '?') n = "?" + n;
    return var(n);
  }
  if (auto src = map.source_for(t.name)) return constant(*src);
  return t;
}

}  // namespace

FormulaPtr apply_inverse_map(const Formula& f, const SymbolMap& map) {
  switch (f.kind) {
    case Connective::Atom: {
      std::vector<Term> args;
      args.reserve(f.args.size());
      for (const Term& t : f.args) args.push_back(invert_term(t, map));
      std::string pred = f.predicate;
      if (pred != kEqualPredicate) {
        if (auto src = map.source_for(pred)) pred = *src;
      }
      return atom(std::move(pred), std::move(args));
    }
    case Connective::Not:
      return negation(apply_inverse_map(*f.children.front(), map));
    case Connective::And:
    case Connective::Or: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f.children.size());
      for (const auto& c : f.children) parts.push_back(apply_inverse_map(*c, map));
      return f.kind == Connective::And ? conj(std::move(parts)) : disj(std::move(parts));
    }
    case Connective::Implies:
      return implies(apply_inverse_map(*f.children[0], map),
                     apply_inverse_map(*f.children[1], map));
    case Connective::Iff:
      return iff(apply_inverse_map(*f.children[0], map), apply_inverse_map(*f.children[1], map));
    case Connective::Forall:
    case Connective::Exists: {
      std::vector<Term> vs;
      vs.reserve(f.vars.size());
      for (const Term& v : f.vars) vs.push_back(invert_term(v, map));
      auto body = apply_inverse_map(*f.children.front(), map);
      return f.kind == Connective::Forall ? forall(std::move(vs), std::move(body))
                                          : exists(std::move(vs), std::move(body));
    }
  }
  throw Error(ErrorCategory::Internal, "unreachable formula kind");
}

}  // namespace cqb::fol

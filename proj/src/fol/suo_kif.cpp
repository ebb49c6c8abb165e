#include <cctype>
#include <sstream>

#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb::fol {

namespace {

void emit(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Connective::Atom: {
      out += '(';
      out += f.predicate;
      for (const Term& t : f.args) {
        out += ' ';
        out += t.name;
      }
      out += ')';
      return;
    }
    case Connective::Not:
      out += "(not ";
      emit(*f.children.front(), out);
      out += ')';
      return;
    case Connective::And:
    case Connective::Or:
      out += f.kind == Connective::And ? "(and" : "(or";
      for (const auto& c : f.children) {
        out += ' ';
        emit(*c, out);
      }
      out += ')';
      return;
    case Connective::Implies:
    case Connective::Iff:
      out += f.kind == Connective::Implies ? "(=> " : "(<=> ";
      emit(*f.children[0], out);
      out += ' ';
      emit(*f.children[1], out);
      out += ')';
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += f.kind == Connective::Forall ? "(forall (" : "(exists (";
      for (size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ' ';
        out += f.vars[i].name;
      }
      out += ") ";
      emit(*f.children.front(), out);
      out += ')';
      return;
  }
}

// Minimal s-expression reader over the prefix syntax.
struct SExprParser {
  const std::string& text;
  size_t pos = 0;

  explicit SExprParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == ';') {  // comment to end of line
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("prefix syntax at offset " + std::to_string(pos) + ": " + msg);
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      ++pos;
    }
    if (pos == start) fail("expected a symbol");
    return text.substr(start, pos - start);
  }

  Term term() {
    std::string s = symbol();
    if (s[0] == '?') return var(std::move(s));
    return constant(std::move(s));
  }

  FormulaPtr formula() {
    expect('(');
    std::string head = symbol();
    if (head == "not") {
      auto inner = formula();
      expect(')');
      return negation(std::move(inner));
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaPtr> parts;
      while (peek() != ')') parts.push_back(formula());
      ++pos;
      if (parts.size() < 2) fail(head + " needs at least 2 operands");
      return head == "and" ? conj(std::move(parts)) : disj(std::move(parts));
    }
    if (head == "=>" || head == "<=>") {
      auto a = formula();
      auto b = formula();
      expect(')');
      return head == "=>" ? implies(std::move(a), std::move(b)) : iff(std::move(a), std::move(b));
    }
    if (head == "forall" || head == "exists") {
      expect('(');
      std::vector<Term> vars;
      while (peek() != ')') {
        Term t = term();
        if (t.kind != TermKind::Variable) fail("quantifier list holds non-variable " + t.name);
        vars.push_back(std::move(t));
      }
      ++pos;
      auto body = formula();
      expect(')');
      return head == "forall" ? forall(std::move(vars), std::move(body))
                              : exists(std::move(vars), std::move(body));
    }
    // Atom: head is the predicate, all operands are terms.
    if (head[0] == '?') fail("variable in predicate position: " + head);
    std::vector<Term> args;
    while (peek() != ')') {
      if (peek() == '(') fail("nested expression inside an atom (no function terms)");
      args.push_back(term());
    }
    ++pos;
    return atom(std::move(head), std::move(args));
  }
};

}  // namespace

std::string emit_suo_kif(const Formula& f) {
  std::string out;
  emit(f, out);
  return out;
}

FormulaPtr parse_suo_kif(const std::string& text) {
  SExprParser p(text);
  auto f = p.formula();
  if (!p.at_end()) p.fail("trailing content after formula");
  return f;
}

}  // namespace cqb::fol

#include "cqbench/fol/ast.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cqbench/errors.hpp"

namespace cqb::fol {

Term var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  return Term{TermKind::Variable, std::move(name)};
}

Term constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("constant name must be nonempty");
  return Term{TermKind::Constant, std::move(name)};
}

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void check_binder(const std::vector<Term>& vars) {
  if (vars.empty()) throw std::invalid_argument("quantifier variable list must be nonempty");
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].kind != TermKind::Variable)
      throw std::invalid_argument("quantifier binds non-variable term " + vars[i].name);
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i].name == vars[j].name)
        throw std::invalid_argument("duplicate quantified variable " + vars[i].name);
  }
}

FormulaPtr nary(Connective kind, std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("empty operand list");
  // Flatten one level of same-connective nesting; inputs are already flat.
  std::vector<FormulaPtr> flat;
  flat.reserve(fs.size());
  for (auto& f : fs) {
    if (!f) throw std::invalid_argument("null operand");
    if (f->kind == kind)
      flat.insert(flat.end(), f->children.begin(), f->children.end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.size() == 1) return flat.front();
  Formula out;
  out.kind = kind;
  out.children = std::move(flat);
  return make(std::move(out));
}

}  // namespace

FormulaPtr atom(std::string predicate, std::vector<Term> args) {
  if (predicate.empty()) throw std::invalid_argument("empty predicate symbol");
  if (predicate == kEqualPredicate && args.size() != 2)
    throw std::invalid_argument("equal takes exactly 2 arguments");
  Formula f;
  f.kind = Connective::Atom;
  f.predicate = std::move(predicate);
  f.args = std::move(args);
  return make(std::move(f));
}

FormulaPtr negation(FormulaPtr f) {
  if (!f) throw std::invalid_argument("null operand");
  Formula out;
  out.kind = Connective::Not;
  out.children = {std::move(f)};
  return make(std::move(out));
}

FormulaPtr conj(std::vector<FormulaPtr> fs) { return nary(Connective::And, std::move(fs)); }
FormulaPtr disj(std::vector<FormulaPtr> fs) { return nary(Connective::Or, std::move(fs)); }

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("null operand");
  Formula out;
  out.kind = Connective::Implies;
  out.children = {std::move(a), std::move(b)};
  return make(std::move(out));
}

FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw std::invalid_argument("null operand");
  Formula out;
  out.kind = Connective::Iff;
  out.children = {std::move(a), std::move(b)};
  return make(std::move(out));
}

FormulaPtr forall(std::vector<Term> vars, FormulaPtr body) {
  check_binder(vars);
  if (!body) throw std::invalid_argument("null body");
  Formula out;
  out.kind = Connective::Forall;
  out.vars = std::move(vars);
  out.children = {std::move(body)};
  return make(std::move(out));
}

FormulaPtr exists(std::vector<Term> vars, FormulaPtr body) {
  check_binder(vars);
  if (!body) throw std::invalid_argument("null body");
  Formula out;
  out.kind = Connective::Exists;
  out.vars = std::move(vars);
  out.children = {std::move(body)};
  return make(std::move(out));
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.predicate != b.predicate || a.args != b.args) return false;
  if (a.vars != b.vars) return false;
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<Term>& out) {
  if (f.kind == Connective::Atom) {
    for (const Term& t : f.args)
      if (t.kind == TermKind::Variable &&
          std::find(bound.rbegin(), bound.rend(), t.name) == bound.rend())
        out.insert(t);
    return;
  }
  size_t pushed = 0;
  for (const Term& v : f.vars) {
    bound.push_back(v.name);
    ++pushed;
  }
  for (const auto& c : f.children) collect_free(*c, bound, out);
  bound.resize(bound.size() - pushed);
}

}  // namespace

std::set<Term> free_variables(const Formula& f) {
  std::set<Term> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

FormulaPtr negate_sentence(FormulaPtr f) {
  if (!f) throw std::invalid_argument("null operand");
  auto fv = free_variables(*f);
  if (!fv.empty())
    throw IntegrityError("negate: formula has free variables, e.g. " + fv.begin()->name);
  // Remove top-level double negations before wrapping so that negation is an
  // involution on the simplified forms.
  while (f->kind == Connective::Not && f->children.front()->kind == Connective::Not)
    f = f->children.front()->children.front();
  if (f->kind == Connective::Not) return f->children.front();
  return negation(std::move(f));
}

namespace {

// Length-prefixed tokens keep the serialization injective on symbol names.
void append_name(std::string& out, const std::string& name) {
  out += std::to_string(name.size());
  out += ':';
  out += name;
}

// Bound variables render as (binder distance, slot) pairs, which keeps a
// subformula's key independent of its siblings and of the original names.
struct Binding {
  int group;  // index of the binder group on the path from the root
  int slot;   // position within that group's variable list
};

struct KeyEnv {
  std::map<std::string, std::vector<Binding>> binding;  // innermost at back
  int depth = 0;  // number of binder groups entered
};

std::string key_of(const Formula& f, KeyEnv& env) {
  std::string out;
  switch (f.kind) {
    case Connective::Atom: {
      out += "A(";
      append_name(out, f.predicate);
      for (const Term& t : f.args) {
        out += ';';
        if (t.kind == TermKind::Constant) {
          out += 'c';
          append_name(out, t.name);
        } else {
          auto it = env.binding.find(t.name);
          if (it != env.binding.end() && !it->second.empty()) {
            const Binding& b = it->second.back();
            out += 'v';
            out += std::to_string(env.depth - b.group - 1);
            out += '.';
            out += std::to_string(b.slot);
          } else {
            out += 'f';  // free variable; sentences never reach this
            append_name(out, t.name);
          }
        }
      }
      out += ')';
      return out;
    }
    case Connective::Not:
      return "N(" + key_of(*f.children.front(), env) + ")";
    case Connective::And:
    case Connective::Or: {
      std::vector<std::string> keys;
      keys.reserve(f.children.size());
      for (const auto& c : f.children) keys.push_back(key_of(*c, env));
      std::sort(keys.begin(), keys.end());
      out += f.kind == Connective::And ? "&(" : "|(";
      for (size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ',';
        out += keys[i];
      }
      out += ')';
      return out;
    }
    case Connective::Implies:
    case Connective::Iff:
      out += f.kind == Connective::Implies ? ">(" : "=(";
      out += key_of(*f.children[0], env);
      out += ',';
      out += key_of(*f.children[1], env);
      out += ')';
      return out;
    case Connective::Forall:
    case Connective::Exists: {
      out += f.kind == Connective::Forall ? '!' : '?';
      out += std::to_string(f.vars.size());
      int slot = 0;
      for (const Term& v : f.vars) env.binding[v.name].push_back({env.depth, slot++});
      ++env.depth;
      out += '(' + key_of(*f.children.front(), env) + ')';
      --env.depth;
      for (const Term& v : f.vars) {
        auto it = env.binding.find(v.name);
        it->second.pop_back();
        if (it->second.empty()) env.binding.erase(it);
      }
      return out;
    }
  }
  throw Error(ErrorCategory::Internal, "unreachable formula kind");
}

}  // namespace

std::string canonical_key(const Formula& f) {
  KeyEnv env;
  return key_of(f, env);
}

}  // namespace cqb::fol

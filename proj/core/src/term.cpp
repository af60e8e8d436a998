#include "asck/term.hpp"

#include <algorithm>
#include <cctype>

namespace asck {

Term Term::var(int index) {
  if (index < 0) throw ParseError("negative variable index");
  Term t;
  t.var_ = true;
  t.head_ = index;
  return t;
}

Term Term::app(int op, std::vector<Term> args) {
  Term t;
  t.var_ = false;
  t.head_ = op;
  t.args_ = std::move(args);
  return t;
}

int Term::max_var() const {
  if (var_) return head_;
  int m = -1;
  for (const auto& a : args_) m = std::max(m, a.max_var());
  return m;
}

void Term::validate(const Signature& sig) const {
  if (var_) return;
  if (head_ < 0 || head_ >= sig.num_ops()) throw ParseError("unknown operation symbol");
  if (static_cast<int>(args_.size()) != sig.arity(head_))
    throw ParseError("arity mismatch for " + sig.name(head_));
  for (const auto& a : args_) a.validate(sig);
}

bool Term::operator==(const Term& o) const {
  return var_ == o.var_ && head_ == o.head_ && args_ == o.args_;
}

void QuasiIdentity::validate(const Signature& sig) const {
  if (nvars < 0) throw ParseError("negative variable count");
  auto check = [&](const Equation& e) {
    e.lhs.validate(sig);
    e.rhs.validate(sig);
    if (e.lhs.max_var() >= nvars || e.rhs.max_var() >= nvars)
      throw ParseError("variable index exceeds declared vars");
  };
  for (const auto& e : premise) check(e);
  check(conclusion);
}

int eval_term(const AlgebraOps& A, const Term& t, std::span<const int> asg) {
  if (t.is_var()) {
    if (t.var_index() >= static_cast<int>(asg.size()))
      throw Error("assignment does not cover variable v" + std::to_string(t.var_index()));
    int v = asg[t.var_index()];
    if (v < 0 || v >= A.size()) throw Error("assignment element out of range");
    return v;
  }
  const auto& args = t.args();
  int buf[8];
  std::vector<int> big;
  int* vals = buf;
  if (args.size() > 8) {
    big.resize(args.size());
    vals = big.data();
  }
  for (size_t i = 0; i < args.size(); ++i) vals[i] = eval_term(A, args[i], asg);
  return A.apply(t.op(), vals);
}

namespace {

template <typename Pred>
CheckResult scan_assignments(const AlgebraOps& A, int nvars, long cap, Pred holds_at) {
  CheckResult res;
  const int n = A.size();
  std::vector<int> asg(nvars, 0);
  for (;;) {
    if (cap >= 0 && res.assignments_checked >= cap) {
      res.complete = false;
      return res;
    }
    ++res.assignments_checked;
    if (!holds_at(asg)) {
      res.holds = false;
      res.witness = asg;
      return res;
    }
    int i = nvars - 1;
    while (i >= 0 && asg[i] == n - 1) asg[i--] = 0;
    if (i < 0) return res;
    ++asg[i];
  }
}

}  // namespace

CheckResult check_identity(const AlgebraOps& A, const QuasiIdentity& id, long cap) {
  if (!id.is_identity()) throw PreconditionError("check_identity requires an empty premise");
  id.validate(A.signature());
  return scan_assignments(A, id.nvars, cap, [&](std::span<const int> asg) {
    return eval_term(A, id.conclusion.lhs, asg) == eval_term(A, id.conclusion.rhs, asg);
  });
}

CheckResult check_quasi_identity(const AlgebraOps& A, const QuasiIdentity& q, long cap) {
  q.validate(A.signature());
  return scan_assignments(A, q.nvars, cap, [&](std::span<const int> asg) {
    for (const auto& e : q.premise)
      if (eval_term(A, e.lhs, asg) != eval_term(A, e.rhs, asg)) return true;
    return eval_term(A, q.conclusion.lhs, asg) == eval_term(A, q.conclusion.rhs, asg);
  });
}

// ---------------------------------------------------------------------------
// S-expression parsing

namespace {

struct SExpr {
  std::string atom;          // nonempty for atoms
  std::vector<SExpr> items;  // for lists
  bool is_atom() const { return !atom.empty(); }
};

struct Lexer {
  std::string_view s;
  size_t at = 0;
  void skip_ws() {
    while (at < s.size() && (std::isspace(static_cast<unsigned char>(s[at])) != 0)) ++at;
  }
  bool eof() {
    skip_ws();
    return at >= s.size();
  }
  char peek() {
    skip_ws();
    if (at >= s.size()) throw ParseError("unexpected end of input");
    return s[at];
  }
};

SExpr parse_sexpr(Lexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    ++lx.at;
    SExpr e;
    while (lx.peek() != ')') e.items.push_back(parse_sexpr(lx));
    ++lx.at;
    if (e.items.empty()) return e;
    return e;
  }
  if (c == ')') throw ParseError("unexpected ')'");
  size_t start = lx.at;
  while (lx.at < lx.s.size() && !std::isspace(static_cast<unsigned char>(lx.s[lx.at])) &&
         lx.s[lx.at] != '(' && lx.s[lx.at] != ')')
    ++lx.at;
  SExpr e;
  e.atom = std::string(lx.s.substr(start, lx.at - start));
  return e;
}

SExpr parse_single(std::string_view text) {
  Lexer lx{text};
  SExpr e = parse_sexpr(lx);
  if (!lx.eof()) throw ParseError("trailing input after expression");
  return e;
}

bool parse_var(const std::string& a, int& idx) {
  if (a.size() < 2 || a[0] != 'v') return false;
  for (size_t i = 1; i < a.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(a[i]))) return false;
  idx = std::stoi(a.substr(1));
  return true;
}

Term term_from_sexpr(const Signature& sig, const SExpr& e);

Term resolve_head(const Signature& sig, const std::string& head, std::vector<Term> args) {
  int op = sig.index_of(head);
  if (op >= 0) {
    if (static_cast<int>(args.size()) != sig.arity(op))
      throw ParseError("arity mismatch for " + head);
    return Term::app(op, std::move(args));
  }
  // definable shorthands
  if (head == "box" && args.size() == 1) {
    int nt = sig.index_of("not"), dia = sig.index_of("dia");
    if (nt >= 0 && dia >= 0)
      return Term::app(nt, {Term::app(dia, {Term::app(nt, {std::move(args[0])})})});
  }
  if (head == "not" && args.size() == 1) {
    int imp = sig.index_of("imp"), zero = sig.index_of("zero");
    if (imp >= 0 && zero >= 0)
      return Term::app(imp, {std::move(args[0]), Term::app(zero)});
  }
  if (head == "imp" && args.size() == 2) {
    int o = sig.index_of("or"), nt = sig.index_of("not");
    if (o >= 0 && nt >= 0)
      return Term::app(o, {Term::app(nt, {std::move(args[0])}), std::move(args[1])});
  }
  if (head == "iff" && args.size() == 2) {
    Term l = resolve_head(sig, "imp", {args[0], args[1]});
    Term r = resolve_head(sig, "imp", {args[1], args[0]});
    int a = sig.index_of("and");
    if (a >= 0) return Term::app(a, {std::move(l), std::move(r)});
  }
  throw ParseError("unknown symbol " + head);
}

Term term_from_sexpr(const Signature& sig, const SExpr& e) {
  if (e.is_atom()) {
    int idx;
    if (parse_var(e.atom, idx)) return Term::var(idx);
    return resolve_head(sig, e.atom, {});
  }
  if (e.items.empty()) throw ParseError("empty list in term");
  if (!e.items[0].is_atom()) throw ParseError("operator position must be a symbol");
  std::vector<Term> args;
  for (size_t i = 1; i < e.items.size(); ++i)
    args.push_back(term_from_sexpr(sig, e.items[i]));
  return resolve_head(sig, e.items[0].atom, std::move(args));
}

Equation eq_from_sexpr(const Signature& sig, const SExpr& e) {
  if (e.is_atom() || e.items.size() != 3 || !e.items[0].is_atom() || e.items[0].atom != "=")
    throw ParseError("expected (= term term)");
  return Equation{term_from_sexpr(sig, e.items[1]), term_from_sexpr(sig, e.items[2])};
}

}  // namespace

Term parse_term(const Signature& sig, std::string_view text) {
  Term t = term_from_sexpr(sig, parse_single(text));
  t.validate(sig);
  return t;
}

QuasiIdentity parse_quasi_identity(const Signature& sig, std::string_view text) {
  SExpr e = parse_single(text);
  if (e.is_atom() || e.items.empty() || !e.items[0].is_atom() || e.items[0].atom != "qi")
    throw ParseError("expected (qi ...)");
  QuasiIdentity q;
  bool have_vars = false, have_concl = false;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& part = e.items[i];
    if (part.is_atom() || part.items.empty() || !part.items[0].is_atom())
      throw ParseError("malformed (qi ...) section");
    const std::string& tag = part.items[0].atom;
    if (tag == "vars") {
      if (part.items.size() != 2 || !part.items[1].is_atom())
        throw ParseError("expected (vars N)");
      q.nvars = std::stoi(part.items[1].atom);
      have_vars = true;
    } else if (tag == "prem") {
      for (size_t j = 1; j < part.items.size(); ++j)
        q.premise.push_back(eq_from_sexpr(sig, part.items[j]));
    } else if (tag == "concl") {
      if (part.items.size() != 2) throw ParseError("expected (concl (= s t))");
      q.conclusion = eq_from_sexpr(sig, part.items[1]);
      have_concl = true;
    } else {
      throw ParseError("unknown (qi ...) section " + tag);
    }
  }
  if (!have_vars || !have_concl) throw ParseError("(qi ...) needs (vars N) and (concl ...)");
  q.validate(sig);
  return q;
}

std::pair<int, std::vector<Equation>> parse_presentation(const Signature& sig,
                                                         std::string_view text) {
  SExpr e = parse_single(text);
  if (e.is_atom() || e.items.empty() || !e.items[0].is_atom() || e.items[0].atom != "pres")
    throw ParseError("expected (pres ...)");
  int nvars = -1;
  std::vector<Equation> rels;
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& part = e.items[i];
    if (part.is_atom() || part.items.empty() || !part.items[0].is_atom())
      throw ParseError("malformed (pres ...) section");
    if (part.items[0].atom == "vars") {
      if (part.items.size() != 2 || !part.items[1].is_atom())
        throw ParseError("expected (vars N)");
      nvars = std::stoi(part.items[1].atom);
    } else if (part.items[0].atom == "=") {
      rels.push_back(eq_from_sexpr(sig, part));
    } else {
      throw ParseError("unknown (pres ...) section " + part.items[0].atom);
    }
  }
  if (nvars < 0) throw ParseError("(pres ...) needs (vars N)");
  for (const auto& r : rels)
    if (r.lhs.max_var() >= nvars || r.rhs.max_var() >= nvars)
      throw ParseError("relation variable exceeds declared vars");
  return {nvars, std::move(rels)};
}

std::string print_term(const Signature& sig, const Term& t) {
  if (t.is_var()) return "v" + std::to_string(t.var_index());
  if (t.args().empty()) return sig.name(t.op());
  std::string out = "(" + sig.name(t.op());
  for (const auto& a : t.args()) {
    out += ' ';
    out += print_term(sig, a);
  }
  out += ')';
  return out;
}

std::string print_quasi_identity(const Signature& sig, const QuasiIdentity& q) {
  auto eq = [&](const Equation& e) {
    return "(= " + print_term(sig, e.lhs) + " " + print_term(sig, e.rhs) + ")";
  };
  std::string out = "(qi (vars " + std::to_string(q.nvars) + ") (prem";
  for (const auto& e : q.premise) {
    out += ' ';
    out += eq(e);
  }
  out += ") (concl " + eq(q.conclusion) + "))";
  return out;
}

}  // namespace asck

#include "parser.hpp"

#include "error.hpp"
#include "syntax_ops.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace vpc {

namespace {

enum class Tk {
  Ident,    // includes keywords; text distinguishes
  NatLit,
  LParen,
  RParen,
  Dot,
  Quote,
  Bar,
  Bang,
  Equal,
  Comma,
  Semi,
  Colon,
  Lt,
  Gt,
  Plus,
  Tilde,
  Lambda,   // backslash
  AndOp,    // conjunction glyph
  OrOp,     // disjunction glyph
  Implies,  // =>
  End,      // end of input
};

struct Token {
  Tk k;
  std::string text;
  Nat nat;
  int line = 1, col = 1;
};

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"def",  "main", "new",    "if",     "then", "else",
                                           "case", "of",   "end",    "let",    "in",   "exists",
                                           "forall", "tt", "ff",     "s"};
  return kw.count(s) != 0;
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto err = [&](const std::string& msg) {
    fail(ErrCode::Syntax,
         "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.k = Tk::NatLit;
      t.text = text.substr(i, j - i);
      t.nat = Nat(t.text);
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.k = Tk::Ident;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '(': t.k = Tk::LParen; bump(1); break;
      case ')': t.k = Tk::RParen; bump(1); break;
      case '.': t.k = Tk::Dot; bump(1); break;
      case '\'': t.k = Tk::Quote; bump(1); break;
      case '|': t.k = Tk::Bar; bump(1); break;
      case '!': t.k = Tk::Bang; bump(1); break;
      case ',': t.k = Tk::Comma; bump(1); break;
      case ';': t.k = Tk::Semi; bump(1); break;
      case ':': t.k = Tk::Colon; bump(1); break;
      case '<': t.k = Tk::Lt; bump(1); break;
      case '>': t.k = Tk::Gt; bump(1); break;
      case '+': t.k = Tk::Plus; bump(1); break;
      case '~': t.k = Tk::Tilde; bump(1); break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          t.k = Tk::Implies;
          bump(2);
        } else {
          t.k = Tk::Equal;
          bump(1);
        }
        break;
      case '/':
        if (i + 1 < text.size() && text[i + 1] == '\\') {
          t.k = Tk::AndOp;
          bump(2);
        } else {
          err("stray '/'");
        }
        break;
      case '\\':
        if (i + 1 < text.size() && text[i + 1] == '/') {
          t.k = Tk::OrOp;
          bump(2);
        } else {
          t.k = Tk::Lambda;
          bump(1);
        }
        break;
      default:
        err(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token e;
  e.k = Tk::End;
  e.line = line;
  e.col = col;
  out.push_back(std::move(e));
  return out;
}

std::optional<Nat> canonical_index(const std::string& s, char prefix) {
  if (s.size() < 2 || s[0] != prefix) return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  return Nat(s.substr(1));
}

struct DefSig {
  std::size_t pos;  // 1-based
  std::size_t arity;
};

struct Parser {
  std::vector<Token> ts;
  std::size_t at = 0;

  // interning state
  std::set<Nat> claimed_names, claimed_vars;
  std::map<std::string, Nat> name_syms, var_syms, absvar_syms;
  Nat next_name{1}, next_var{0}, next_absvar{0};

  std::map<std::string, DefSig> defs;
  bool saw_rep = false;

  const Token& cur() const { return ts[at]; }
  const Token& peek(std::size_t n = 1) const { return ts[std::min(at + n, ts.size() - 1)]; }

  [[noreturn]] void err(const std::string& msg) const {
    const Token& t = cur();
    fail(ErrCode::Syntax,
         "line " + std::to_string(t.line) + ", col " + std::to_string(t.col) + ": " + msg);
  }

  void expect(Tk k, const char* what) {
    if (cur().k != k) err(std::string("expected ") + what);
    ++at;
  }

  bool eat(Tk k) {
    if (cur().k != k) return false;
    ++at;
    return true;
  }

  bool at_keyword(const char* kw) const { return cur().k == Tk::Ident && cur().text == kw; }

  bool eat_keyword(const char* kw) {
    if (!at_keyword(kw)) return false;
    ++at;
    return true;
  }

  std::string expect_ident(const char* what) {
    if (cur().k != Tk::Ident) err(std::string("expected ") + what);
    if (is_keyword(cur().text)) err("'" + cur().text + "' is a reserved word");
    return ts[at++].text;
  }

  // canonical n{k}/x{k} spellings claim their index up front so interned
  // identifiers never collide with them
  void prescan() {
    for (const Token& t : ts) {
      if (t.k != Tk::Ident) continue;
      if (auto n = canonical_index(t.text, 'n')) claimed_names.insert(*n);
      if (auto v = canonical_index(t.text, 'x')) claimed_vars.insert(*v);
    }
  }

  Nat intern_name(const std::string& s) {
    if (auto n = canonical_index(s, 'n')) return *n;
    auto it = name_syms.find(s);
    if (it != name_syms.end()) return it->second;
    while (claimed_names.count(next_name)) next_name += 1;
    Nat idx = next_name;
    next_name += 1;
    claimed_names.insert(idx);
    name_syms.emplace(s, idx);
    return idx;
  }

  Nat intern_var(const std::string& s) {
    if (auto v = canonical_index(s, 'x')) return *v;
    auto it = var_syms.find(s);
    if (it != var_syms.end()) return it->second;
    while (claimed_vars.count(next_var)) next_var += 1;
    Nat idx = next_var;
    next_var += 1;
    claimed_vars.insert(idx);
    var_syms.emplace(s, idx);
    return idx;
  }

  Nat intern_absvar(const std::string& s) {
    auto it = absvar_syms.find(s);
    if (it != absvar_syms.end()) return it->second;
    Nat idx = next_absvar;
    next_absvar += 1;
    absvar_syms.emplace(s, idx);
    return idx;
  }

  static bool capitalized(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
  }

  // ---- values ----

  ValuePtr vterm() {
    ValuePtr acc = vatom();
    while (eat(Tk::Plus)) acc = vadd(acc, vatom());
    return acc;
  }

  ValuePtr vatom() {
    if (cur().k == Tk::NatLit) {
      Nat n = cur().nat;
      ++at;
      return vnum(n);
    }
    if (eat(Tk::LParen)) {
      ValuePtr v = vterm();
      expect(Tk::RParen, "')'");
      return v;
    }
    if (cur().k == Tk::Ident) {
      if (cur().text == "s") {
        ++at;
        expect(Tk::LParen, "'(' after s");
        ValuePtr v = vterm();
        expect(Tk::RParen, "')'");
        return vadd(v, vnum(Nat(1)));
      }
      if (is_keyword(cur().text)) err("'" + cur().text + "' is a reserved word");
      return vvar(intern_var(ts[at++].text));
    }
    err("expected a value term");
  }

  // ---- formulas ----
  // precedence: atoms/~ > /\ > \/ > => (right associative)

  FormulaPtr formula() { return f_implies(); }

  FormulaPtr f_implies() {
    FormulaPtr l = f_or();
    if (eat(Tk::Implies)) return fimplies(l, f_implies());
    return l;
  }

  FormulaPtr f_or() {
    FormulaPtr l = f_and();
    while (eat(Tk::OrOp)) l = vpc::f_or(l, f_and());
    return l;
  }

  FormulaPtr f_and() {
    FormulaPtr l = f_unary();
    while (eat(Tk::AndOp)) l = fand(l, f_unary());
    return l;
  }

  FormulaPtr f_unary() {
    if (eat(Tk::Tilde)) return fnot(f_unary());
    if (eat_keyword("exists")) {
      Nat v = intern_var(expect_ident("a variable after exists"));
      expect(Tk::Dot, "'.'");
      return fexists(v, f_implies());
    }
    if (eat_keyword("forall")) {
      Nat v = intern_var(expect_ident("a variable after forall"));
      expect(Tk::Dot, "'.'");
      return fforall(v, f_implies());
    }
    if (eat_keyword("tt")) return ftrue();
    if (eat_keyword("ff")) return ffalse();
    if (cur().k == Tk::LParen) {
      // '(' opens either a grouped formula or a value term; a value term
      // always continues with < or =
      std::size_t save = at;
      ++at;
      try {
        FormulaPtr f = f_implies();
        expect(Tk::RParen, "')'");
        return f;
      } catch (const Error&) {
        at = save;
      }
    }
    ValuePtr s = vterm();
    if (eat(Tk::Lt)) return flt(s, vterm());
    if (eat(Tk::Equal)) return feq(s, vterm());
    err("expected '<' or '=' after a value term");
  }

  // case guards stop before the clause arrow; implications need parentheses
  FormulaPtr clause_formula() { return f_or(); }

  // ---- terms ----

  bool term_starts() const {
    switch (cur().k) {
      case Tk::LParen:
      case Tk::Quote:
      case Tk::Bang:
        return true;
      case Tk::NatLit:
        return cur().nat == 0;
      case Tk::Ident: {
        const std::string& s = cur().text;
        if (s == "new" || s == "if" || s == "case" || s == "let") return true;
        return !is_keyword(s);
      }
      default:
        return false;
    }
  }

  ProcPtr par_term() {
    ProcPtr acc = factor();
    while (eat(Tk::Bar)) acc = ppar(acc, factor());
    return acc;
  }

  ProcPtr factor() {
    if (cur().k == Tk::NatLit && cur().nat == 0) {
      ++at;
      return pnil();
    }
    if (cur().k == Tk::LParen) {
      // restriction when the parentheses hold a lone identifier and a term
      // follows; grouping otherwise
      if (peek().k == Tk::Ident && !is_keyword(peek().text) && peek(2).k == Tk::RParen) {
        std::size_t save = at;
        ++at;
        std::string id = ts[at++].text;
        ++at;  // ')'
        if (term_starts()) return pres(Name(intern_name(id)), factor());
        at = save;
      }
      ++at;
      ProcPtr t = par_term();
      expect(Tk::RParen, "')'");
      return t;
    }
    if (eat_keyword("new")) {
      Nat c = intern_name(expect_ident("a name after new"));
      expect(Tk::Dot, "'.' after new binder");
      return pres(Name(c), factor());
    }
    if (cur().k == Tk::Quote) return output_prefix(false);
    if (cur().k == Tk::Bang) {
      ++at;
      saw_rep = true;
      if (cur().k == Tk::Quote) return output_prefix(true);
      return input_prefix(true);
    }
    if (eat_keyword("if")) {
      FormulaPtr g = formula();
      if (!eat_keyword("then")) err("expected 'then'");
      ProcPtr body = factor();
      if (eat_keyword("else")) return pifelse(g, body, factor());
      return pcond(g, body);
    }
    if (eat_keyword("case")) {
      ValuePtr scrut = vterm();
      if (scrut->k != ValueTerm::K::Var) err("case scrutinee must be a variable");
      if (!eat_keyword("of")) err("expected 'of'");
      std::vector<CaseClause> clauses;
      while (!eat_keyword("end")) {
        CaseClause c;
        c.guard = clause_formula();
        expect(Tk::Implies, "'=>' after a case guard");
        c.body = par_term();
        expect(Tk::Semi, "';' after a case clause");
        clauses.push_back(std::move(c));
      }
      return pcase(scrut->var, std::move(clauses));
    }
    if (eat_keyword("let")) {
      Nat v = intern_var(expect_ident("a variable after let"));
      expect(Tk::Equal, "'='");
      ValuePtr val = vterm();
      if (!eat_keyword("in")) err("expected 'in'");
      return plet(v, val, factor());
    }
    if (cur().k == Tk::Ident) {
      if (is_keyword(cur().text)) err("'" + cur().text + "' is a reserved word");
      return ident_term();
    }
    err("expected a term");
  }

  ProcPtr output_prefix(bool rep) {
    expect(Tk::Quote, "'''");
    std::string id = expect_ident("a channel after '");
    Name a(intern_name(id));
    ValuePtr payload;
    if (eat(Tk::LParen)) {
      payload = vterm();
      expect(Tk::RParen, "')'");
    } else {
      payload = vnum(Nat(0));  // 'a.T sugar
    }
    expect(Tk::Dot, "'.' after an output prefix");
    ProcPtr cont = factor();
    return rep ? prepout(a, payload, cont) : pout(a, payload, cont);
  }

  ProcPtr input_prefix(bool rep) {
    std::string id = expect_ident("a channel");
    Name a(intern_name(id));
    Nat x;
    if (eat(Tk::LParen)) {
      x = intern_var(expect_ident("a variable in the input binder"));
      expect(Tk::RParen, "')'");
      expect(Tk::Dot, "'.' after an input prefix");
    } else {
      expect(Tk::Dot, "'.' after an input prefix");
      // a.T discards the value: bind a variable T does not mention
      ProcPtr cont = factor();
      Nat y(0);
      std::set<Nat> fv = free_vars(cont);
      while (fv.count(y)) y += 1;
      return rep ? prepin(a, y, cont) : pin(a, y, cont);
    }
    ProcPtr cont = factor();
    return rep ? prepin(a, x, cont) : pin(a, x, cont);
  }

  ProcPtr ident_term() {
    const std::string id = cur().text;
    if (peek().k == Tk::Dot) {  // a.T input sugar
      return input_prefix(false);
    }
    if (peek().k != Tk::LParen) err("expected '(', '.', or a prefix after '" + id + "'");
    // input prefix IDENT(VAR).T vs call IDENT(args): the dot decides
    std::size_t close = matching_paren(at + 1);
    if (ts[close].k == Tk::RParen && peek(close - at + 1).k == Tk::Dot &&
        close == at + 3 && ts[at + 2].k == Tk::Ident) {
      return input_prefix(false);
    }
    ++at;  // IDENT
    ++at;  // '('
    std::vector<ValuePtr> args;
    if (cur().k != Tk::RParen) {
      args.push_back(vterm());
      while (eat(Tk::Comma)) args.push_back(vterm());
    }
    expect(Tk::RParen, "')'");
    auto it = defs.find(id);
    if (it == defs.end()) err("call to unknown definition '" + id + "'");
    if (args.size() != it->second.arity)
      err("definition '" + id + "' takes " + std::to_string(it->second.arity) + " argument(s)");
    return pcall(Nat(it->second.pos), std::move(args));
  }

  // index of the token closing the paren that sits at `open`
  std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < ts.size(); ++i) {
      if (ts[i].k == Tk::LParen) ++depth;
      if (ts[i].k == Tk::RParen && --depth == 0) return i;
      if (ts[i].k == Tk::End) break;
    }
    return ts.size() - 1;
  }

  // ---- programs ----

  Program program() {
    prescan();
    // definition headers first so calls resolve forward
    struct RawDef {
      std::string name;
      std::vector<std::string> params;
      std::size_t body_at = 0, body_end = 0;
      int line = 1, col = 1;
    };
    std::vector<RawDef> raw;
    while (at_keyword("def")) {
      RawDef d;
      d.line = cur().line;
      d.col = cur().col;
      ++at;
      d.name = expect_ident("a definition name");
      expect(Tk::LParen, "'('");
      if (cur().k != Tk::RParen) {
        d.params.push_back(expect_ident("a parameter"));
        while (eat(Tk::Comma)) d.params.push_back(expect_ident("a parameter"));
      }
      expect(Tk::RParen, "')'");
      expect(Tk::Equal, "'='");
      d.body_at = at;
      if (defs.count(d.name))
        fail(ErrCode::Syntax, "line " + std::to_string(d.line) + ", col " + std::to_string(d.col) +
                                  ": duplicate definition '" + d.name + "'");
      defs.emplace(d.name, DefSig{raw.size() + 1, d.params.size()});
      // the body runs to the next 'def' or to 'main'
      while (!(cur().k == Tk::End || at_keyword("def") || at_keyword("main"))) ++at;
      d.body_end = at;
      raw.push_back(std::move(d));
    }
    const std::size_t main_tok = at;
    Program p;
    // bodies parse before main so interning follows textual order
    for (const RawDef& d : raw) {
      at = d.body_at;
      ParamDef def;
      def.display = d.name;
      std::set<Nat> seen;
      for (const std::string& s : d.params) {
        Nat v = intern_var(s);
        if (!seen.insert(v).second)
          fail(ErrCode::Syntax, "line " + std::to_string(d.line) + ", col " +
                                    std::to_string(d.col) + ": duplicate parameter '" + s + "'");
        def.params.push_back(v);
      }
      def.body = par_term();
      if (at != d.body_end) err("trailing input after a definition body");
      p.defs.push_back(std::move(def));
    }
    at = main_tok;
    if (!eat_keyword("main")) err("expected 'main'");
    expect(Tk::Equal, "'=' after main");
    p.main = par_term();
    if (cur().k != Tk::End) err("trailing input after the main term");
    if (saw_rep && !p.defs.empty())
      fail(ErrCode::Syntax, "replication and parametric definitions do not mix");
    p.dialect = saw_rep ? Dialect::Bang : Dialect::P;
    p.name_syms = name_syms;
    p.var_syms = var_syms;
    return p;
  }

  // ---- higher-order terms ----

  HoPtr ho_par_term() {
    HoPtr acc = ho_factor();
    while (eat(Tk::Bar)) acc = hpar(acc, ho_factor());
    return acc;
  }

  AbsType parse_abs_type() {
    expect(Tk::Lt, "'<'");
    if (cur().k != Tk::NatLit) err("expected the local-name count");
    uint64_t i = nat_to_u64(cur().nat, "local-name count");
    ++at;
    expect(Tk::Comma, "','");
    if (cur().k != Tk::NatLit) err("expected the parameter count");
    uint64_t j = nat_to_u64(cur().nat, "parameter count");
    ++at;
    expect(Tk::Gt, "'>'");
    return AbsType{i, j};
  }

  Abstraction abs_literal() {
    expect(Tk::Lambda, "'\\'");
    std::vector<Name> params;
    if (cur().k == Tk::Ident && !is_keyword(cur().text)) {
      params.push_back(Name(intern_name(ts[at++].text)));
      while (eat(Tk::Comma)) params.push_back(Name(intern_name(expect_ident("a parameter name"))));
    }
    expect(Tk::Dot, "'.' after abstraction parameters");
    ProcPtr body = par_term();
    Analysis an = analyze(body);
    // tightest budget the body admits
    return make_abstraction(std::move(params), std::move(body), an.local_name_count);
  }

  HoPtr ho_factor() {
    if (cur().k == Tk::NatLit && cur().nat == 0) {
      ++at;
      return hnil();
    }
    if (cur().k == Tk::LParen) {
      if (peek().k == Tk::Ident && !is_keyword(peek().text) && peek(2).k == Tk::RParen) {
        std::size_t save = at;
        ++at;
        std::string id = ts[at++].text;
        ++at;
        if (term_starts()) return hres(Name(intern_name(id)), ho_factor());
        at = save;
      }
      ++at;
      HoPtr t = ho_par_term();
      expect(Tk::RParen, "')'");
      return t;
    }
    if (eat_keyword("new")) {
      Nat c = intern_name(expect_ident("a name after new"));
      expect(Tk::Dot, "'.' after new binder");
      return hres(Name(c), ho_factor());
    }
    if (cur().k == Tk::Quote) {
      ++at;
      std::string id = expect_ident("a channel after '");
      Name a(intern_name(id));
      if (eat(Tk::LParen)) {
        if (cur().k == Tk::Lambda) {
          Abstraction payload = abs_literal();
          expect(Tk::RParen, "')'");
          expect(Tk::Dot, "'.' after an output prefix");
          return hhoout(a, std::move(payload), ho_factor());
        }
        ValuePtr payload = vterm();
        expect(Tk::RParen, "')'");
        expect(Tk::Dot, "'.' after an output prefix");
        return hout(a, payload, ho_factor());
      }
      expect(Tk::Dot, "'.' after an output prefix");
      return hout(a, vnum(Nat(0)), ho_factor());
    }
    if (eat_keyword("if")) {
      FormulaPtr g = formula();
      if (!eat_keyword("then")) err("expected 'then'");
      return hcond(g, ho_factor());
    }
    if (cur().k == Tk::Ident) {
      if (is_keyword(cur().text)) err("'" + cur().text + "' is a reserved word");
      const std::string id = cur().text;
      if (capitalized(id)) {
        // abstraction variable application: X(a, b)
        ++at;
        expect(Tk::LParen, "'(' after an abstraction variable");
        std::vector<Name> names;
        if (cur().k != Tk::RParen) {
          names.push_back(Name(intern_name(expect_ident("a name argument"))));
          while (eat(Tk::Comma)) names.push_back(Name(intern_name(expect_ident("a name argument"))));
        }
        expect(Tk::RParen, "')'");
        Nat xv = intern_absvar(id);
        auto jt = absvar_types.find(xv);
        if (jt == absvar_types.end())
          err("application of an unbound abstraction variable '" + id + "'");
        if (jt->second.param_count != names.size())
          err("'" + id + "' takes " + std::to_string(jt->second.param_count) + " name(s)");
        return habsvar(xv, jt->second, std::move(names));
      }
      if (peek().k == Tk::Dot) {
        // a.T input sugar
        ++at;
        ++at;
        HoPtr cont = ho_factor();
        std::set<Nat> fv;
        ho_vars_inline(cont, fv);
        Nat y(0);
        while (fv.count(y)) y += 1;
        return hin(Name(intern_name(id)), y, cont);
      }
      if (peek().k != Tk::LParen) err("expected '(' or '.' after '" + id + "'");
      ++at;  // ident
      ++at;  // '('
      std::string inner = expect_ident("a binder");
      if (eat(Tk::Colon)) {
        if (!capitalized(inner)) err("abstraction variables are capitalized");
        AbsType ty = parse_abs_type();
        expect(Tk::RParen, "')'");
        expect(Tk::Dot, "'.' after an input prefix");
        Nat xv = intern_absvar(inner);
        // lexical scoping for the binder's declared type
        std::optional<AbsType> shadowed;
        auto prev = absvar_types.find(xv);
        if (prev != absvar_types.end()) shadowed = prev->second;
        absvar_types[xv] = ty;
        HoPtr cont = ho_factor();
        if (shadowed)
          absvar_types[xv] = *shadowed;
        else
          absvar_types.erase(xv);
        return hhoin(Name(intern_name(id)), xv, ty, cont);
      }
      expect(Tk::RParen, "')'");
      expect(Tk::Dot, "'.' after an input prefix");
      Nat x = intern_var(inner);
      return hin(Name(intern_name(id)), x, ho_factor());
    }
    err("expected a higher-order term");
  }

  std::map<Nat, AbsType> absvar_types;  // declared at the binder, used at applications

  // value variables mentioned anywhere, for the a.T dummy binder
  static void ho_vars_inline(const HoPtr& t, std::set<Nat>& vs) {
    switch (t->k) {
      case HoTerm::K::Nil:
      case HoTerm::K::AbsVarApp:
        return;
      case HoTerm::K::In:
        vs.insert(t->var);
        ho_vars_inline(t->a, vs);
        return;
      case HoTerm::K::Out:
        for (const Nat& v : free_vars(t->val)) vs.insert(v);
        ho_vars_inline(t->a, vs);
        return;
      case HoTerm::K::Par:
        ho_vars_inline(t->a, vs);
        ho_vars_inline(t->b, vs);
        return;
      case HoTerm::K::Cond:
        for (const Nat& v : free_vars(t->guard)) vs.insert(v);
        ho_vars_inline(t->a, vs);
        return;
      default:
        ho_vars_inline(t->a, vs);
        return;
    }
  }
};

}  // namespace

Program parse_source(const std::string& text) {
  Parser p;
  p.ts = tokenize(text);
  return p.program();
}

HoPtr parse_ho_source(const std::string& text) {
  Parser p;
  p.ts = tokenize(text);
  p.prescan();
  HoPtr t = p.ho_par_term();
  if (p.cur().k != Tk::End) p.err("trailing input after the term");
  return t;
}

}  // namespace vpc

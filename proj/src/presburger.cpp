#include "presburger.hpp"

#include "error.hpp"

#include <algorithm>
#include <map>

namespace vpc {

// defined in hovpc.cpp; evaluation-time placeholder rewrite for transmitted codes
Nat retarget_code_total(const Nat& z, const std::vector<Name>& names);

Nat eval_term(const ValuePtr& t) {
  switch (t->k) {
    case ValueTerm::K::Num: return t->num;
    case ValueTerm::K::Var: fail(ErrCode::OpenTerm, "free variable x" + nat_str(t->var));
    case ValueTerm::K::Add: return eval_term(t->lhs) + eval_term(t->rhs);
    case ValueTerm::K::Retarget:
      return retarget_code_total(eval_term(t->lhs), t->retarget_names);
  }
  fail(ErrCode::Internal, "bad value term");
}

namespace {

// --- internal quantifier-free layer ----------------------------------------

struct Lin {  // sum of c[v]*x_v plus constant k
  std::map<Nat, Int> c;
  Int k;

  void add(const Lin& o, const Int& mult = 1) {
    for (auto& [v, cv] : o.c) {
      Int& slot = c[v];
      slot += cv * mult;
      if (slot == 0) c.erase(v);
    }
    k += o.k * mult;
  }
  void scale(const Int& m) {
    for (auto& [v, cv] : c) cv *= m;
    k *= m;
  }
  Int coeff(const Nat& v) const {
    auto it = c.find(v);
    return it == c.end() ? Int(0) : it->second;
  }
  void set_coeff(const Nat& v, const Int& cv) {
    if (cv == 0)
      c.erase(v);
    else
      c[v] = cv;
  }
  bool ground() const { return c.empty(); }
};

struct QF {
  enum class K { False, True, Conj, Disj, Lt, Eq, Div, NDiv };
  K k = K::False;
  std::vector<QF> kids;  // Conj/Disj
  Lin lin;               // Lt: lin < 0; Eq: lin = 0; Div/NDiv: d | lin
  Int d;
};

QF qtrue() { return {QF::K::True, {}, {}, 0}; }
QF qfalse() { return {QF::K::False, {}, {}, 0}; }

QF qatom(QF::K k, Lin lin, Int d = 0) {
  QF q;
  q.k = k;
  q.lin = std::move(lin);
  q.d = std::move(d);
  return q;
}

Int floor_mod(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

// constant folding + flattening; keeps formulas small through elimination
QF simplify(QF q) {
  switch (q.k) {
    case QF::K::False:
    case QF::K::True: return q;
    case QF::K::Lt:
      if (q.lin.ground()) return q.lin.k < 0 ? qtrue() : qfalse();
      return q;
    case QF::K::Eq:
      if (q.lin.ground()) return q.lin.k == 0 ? qtrue() : qfalse();
      return q;
    case QF::K::Div:
      if (q.d == 1) return qtrue();
      if (q.lin.ground()) return floor_mod(q.lin.k, q.d) == 0 ? qtrue() : qfalse();
      return q;
    case QF::K::NDiv:
      if (q.d == 1) return qfalse();
      if (q.lin.ground()) return floor_mod(q.lin.k, q.d) != 0 ? qtrue() : qfalse();
      return q;
    case QF::K::Conj:
    case QF::K::Disj: {
      bool conj = q.k == QF::K::Conj;
      std::vector<QF> kids;
      for (auto& kid : q.kids) {
        QF s = simplify(std::move(kid));
        if (s.k == (conj ? QF::K::True : QF::K::False)) continue;
        if (s.k == (conj ? QF::K::False : QF::K::True)) return conj ? qfalse() : qtrue();
        if (s.k == q.k) {
          for (auto& g : s.kids) kids.push_back(std::move(g));
        } else {
          kids.push_back(std::move(s));
        }
      }
      if (kids.empty()) return conj ? qtrue() : qfalse();
      if (kids.size() == 1) return std::move(kids[0]);
      q.kids = std::move(kids);
      return q;
    }
  }
  return q;
}

QF qconj(QF a, QF b) {
  QF q;
  q.k = QF::K::Conj;
  q.kids.push_back(std::move(a));
  q.kids.push_back(std::move(b));
  return simplify(std::move(q));
}

QF qdisj(QF a, QF b) {
  QF q;
  q.k = QF::K::Disj;
  q.kids.push_back(std::move(a));
  q.kids.push_back(std::move(b));
  return simplify(std::move(q));
}

// negation-normal-form complement
QF qneg(const QF& q) {
  switch (q.k) {
    case QF::K::False: return qtrue();
    case QF::K::True: return qfalse();
    case QF::K::Lt: {  // not(lin < 0)  <=>  -lin - 1 < 0
      Lin l;
      l.add(q.lin, -1);
      l.k -= 1;
      return qatom(QF::K::Lt, std::move(l));
    }
    case QF::K::Eq: {  // lin < 0 or -lin < 0
      Lin neg;
      neg.add(q.lin, -1);
      return qdisj(qatom(QF::K::Lt, q.lin), qatom(QF::K::Lt, std::move(neg)));
    }
    case QF::K::Div: return qatom(QF::K::NDiv, q.lin, q.d);
    case QF::K::NDiv: return qatom(QF::K::Div, q.lin, q.d);
    case QF::K::Conj:
    case QF::K::Disj: {
      QF out;
      out.k = q.k == QF::K::Conj ? QF::K::Disj : QF::K::Conj;
      for (auto& kid : q.kids) out.kids.push_back(qneg(kid));
      return simplify(std::move(out));
    }
  }
  return qfalse();
}

bool occurs(const QF& q, const Nat& v) {
  switch (q.k) {
    case QF::K::Lt:
    case QF::K::Eq:
    case QF::K::Div:
    case QF::K::NDiv: return q.lin.coeff(v) != 0;
    case QF::K::Conj:
    case QF::K::Disj:
      return std::any_of(q.kids.begin(), q.kids.end(), [&](const QF& kid) { return occurs(kid, v); });
    default: return false;
  }
}

void for_atoms(QF& q, const auto& fn) {
  if (q.k == QF::K::Conj || q.k == QF::K::Disj)
    for (auto& kid : q.kids) for_atoms(kid, fn);
  else if (q.k != QF::K::True && q.k != QF::K::False)
    fn(q);
}

Int lcm_int(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

// substitute v := repl + offset  (atoms have v-coefficient in {-1,0,1})
QF subst_var(const QF& q, const Nat& v, const Lin& repl, const Int& offset) {
  QF out = q;
  for_atoms(out, [&](QF& atom) {
    Int c = atom.lin.coeff(v);
    if (c == 0) return;
    atom.lin.set_coeff(v, 0);
    atom.lin.add(repl, c);
    atom.lin.k += c * offset;
  });
  return simplify(std::move(out));
}

// the "x arbitrarily small" projection: keeps only atoms stable towards -inf
QF minus_inf(const QF& q, const Nat& v) {
  QF out = q;
  bool bad = false;
  for_atoms(out, [&](QF& atom) {
    Int c = atom.lin.coeff(v);
    if (c == 0) return;
    switch (atom.k) {
      case QF::K::Lt: atom = c < 0 ? qfalse() : qtrue(); break;
      case QF::K::Eq: atom = qfalse(); break;
      default: break;  // divisibility atoms survive, substituted later
    }
    (void)bad;
  });
  return simplify(std::move(out));
}

// One existential-variable elimination over the integers. The caller conjoins
// the non-negativity constraint, which restores the natural-number reading.
QF eliminate(QF q, const Nat& v) {
  q = simplify(std::move(q));
  if (!occurs(q, v)) return q;

  Int scale_lcm = 1;
  for_atoms(q, [&](QF& atom) {
    Int c = atom.lin.coeff(v);
    if (c != 0) scale_lcm = lcm_int(scale_lcm, abs(c));
  });

  // make every v-coefficient +-L, then read L*v as a unit variable
  for_atoms(q, [&](QF& atom) {
    Int c = atom.lin.coeff(v);
    if (c == 0) return;
    Int mult = scale_lcm / abs(c);
    if (mult != 1) {
      atom.lin.scale(mult);
      if (atom.k == QF::K::Div || atom.k == QF::K::NDiv) atom.d *= mult;
      c = atom.lin.coeff(v);
    }
    atom.lin.set_coeff(v, c < 0 ? Int(-1) : Int(1));
  });
  if (scale_lcm != 1) {
    Lin unit;
    unit.set_coeff(v, 1);
    q = qconj(std::move(q), qatom(QF::K::Div, std::move(unit), scale_lcm));
  }

  Int period = 1;
  std::vector<Lin> lower;  // terms b with "b < v" force
  for_atoms(q, [&](QF& atom) {
    Int c = atom.lin.coeff(v);
    if ((atom.k == QF::K::Div || atom.k == QF::K::NDiv) && c != 0)
      period = lcm_int(period, atom.d);
    if (c == 0) return;
    Lin rest = atom.lin;  // atom.lin = c*v + rest
    rest.set_coeff(v, 0);
    if (atom.k == QF::K::Lt && c < 0) {
      // -v + rest < 0  <=>  rest < v
      lower.push_back(std::move(rest));
    } else if (atom.k == QF::K::Eq) {
      // v = -c*rest ; lower-bound candidate is that value minus one
      Lin b;
      b.add(rest, -c);
      b.k -= 1;
      lower.push_back(std::move(b));
    }
  });

  if (period > 1000000) fail(ErrCode::Internal, "divisibility period too large");
  std::uint64_t D = period.convert_to<std::uint64_t>();

  // one flat disjunction, simplified per disjunct: re-simplifying the whole
  // accumulator on every join is quadratic and dominates nested eliminations
  QF inf = minus_inf(q, v);
  QF result;
  result.k = QF::K::Disj;
  Lin zero;
  auto push = [&result](QF dj) {
    if (dj.k == QF::K::False) return false;
    if (dj.k == QF::K::True) return true;
    result.kids.push_back(std::move(dj));
    return false;
  };
  for (std::uint64_t j = 1; j <= D; ++j) {
    if (push(subst_var(inf, v, zero, Int(j)))) return qtrue();
    for (const auto& b : lower)
      if (push(subst_var(q, v, b, Int(j)))) return qtrue();
  }
  if (result.kids.empty()) return qfalse();
  if (result.kids.size() == 1) return std::move(result.kids[0]);
  return result;
}

Lin lin_of(const ValuePtr& t) {
  switch (t->k) {
    case ValueTerm::K::Num: {
      Lin l;
      l.k = t->num;
      return l;
    }
    case ValueTerm::K::Var: {
      Lin l;
      l.set_coeff(t->var, 1);
      return l;
    }
    case ValueTerm::K::Add: {
      Lin l = lin_of(t->lhs);
      l.add(lin_of(t->rhs));
      return l;
    }
    case ValueTerm::K::Retarget:
      fail(ErrCode::BadArgument, "retarget has no place in a formula");
  }
  fail(ErrCode::Internal, "bad value term");
}

Lin nonneg_lin(const Nat& v) {  // -v - 1 < 0  <=>  v >= 0
  Lin l;
  l.set_coeff(v, -1);
  l.k = -1;
  return l;
}

QF qe(const FormulaPtr& f) {
  switch (f->k) {
    case Formula::K::False: return qfalse();
    case Formula::K::True: return qtrue();
    case Formula::K::And: return qconj(qe(f->f), qe(f->g));
    case Formula::K::Or: return qdisj(qe(f->f), qe(f->g));
    case Formula::K::Implies: return qdisj(qneg(qe(f->f)), qe(f->g));
    case Formula::K::Lt: {
      Lin l = lin_of(f->s);
      l.add(lin_of(f->t), -1);
      return simplify(qatom(QF::K::Lt, std::move(l)));
    }
    case Formula::K::Eq: {
      Lin l = lin_of(f->s);
      l.add(lin_of(f->t), -1);
      return simplify(qatom(QF::K::Eq, std::move(l)));
    }
    case Formula::K::Exists:
      return eliminate(qconj(qatom(QF::K::Lt, nonneg_lin(f->var)), qe(f->f)), f->var);
    case Formula::K::Forall:
      return qneg(eliminate(qconj(qatom(QF::K::Lt, nonneg_lin(f->var)), qneg(qe(f->f))), f->var));
  }
  fail(ErrCode::Internal, "bad formula");
}

bool eval_ground(const QF& q) {
  switch (q.k) {
    case QF::K::False: return false;
    case QF::K::True: return true;
    case QF::K::Conj:
      return std::all_of(q.kids.begin(), q.kids.end(), eval_ground);
    case QF::K::Disj:
      return std::any_of(q.kids.begin(), q.kids.end(), eval_ground);
    case QF::K::Lt:
      if (!q.lin.ground()) fail(ErrCode::OpenTerm, "formula has free variables");
      return q.lin.k < 0;
    case QF::K::Eq:
      if (!q.lin.ground()) fail(ErrCode::OpenTerm, "formula has free variables");
      return q.lin.k == 0;
    case QF::K::Div:
      if (!q.lin.ground()) fail(ErrCode::OpenTerm, "formula has free variables");
      return floor_mod(q.lin.k, q.d) == 0;
    case QF::K::NDiv:
      if (!q.lin.ground()) fail(ErrCode::OpenTerm, "formula has free variables");
      return floor_mod(q.lin.k, q.d) != 0;
  }
  return false;
}

// --- brute-force oracle -----------------------------------------------------

Nat beval_term(const ValuePtr& t, const std::map<Nat, Nat>& env) {
  switch (t->k) {
    case ValueTerm::K::Num: return t->num;
    case ValueTerm::K::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) fail(ErrCode::OpenTerm, "free variable x" + nat_str(t->var));
      return it->second;
    }
    case ValueTerm::K::Add: return beval_term(t->lhs, env) + beval_term(t->rhs, env);
    case ValueTerm::K::Retarget:
      fail(ErrCode::BadArgument, "retarget has no place in a formula");
  }
  fail(ErrCode::Internal, "bad value term");
}

bool beval(const FormulaPtr& f, std::map<Nat, Nat>& env, std::uint64_t bound) {
  switch (f->k) {
    case Formula::K::False: return false;
    case Formula::K::True: return true;
    case Formula::K::And: return beval(f->f, env, bound) && beval(f->g, env, bound);
    case Formula::K::Or: return beval(f->f, env, bound) || beval(f->g, env, bound);
    case Formula::K::Implies: return !beval(f->f, env, bound) || beval(f->g, env, bound);
    case Formula::K::Lt: return beval_term(f->s, env) < beval_term(f->t, env);
    case Formula::K::Eq: return beval_term(f->s, env) == beval_term(f->t, env);
    case Formula::K::Exists:
    case Formula::K::Forall: {
      bool exists = f->k == Formula::K::Exists;
      auto prev = env.find(f->var) == env.end() ? std::optional<Nat>{} : std::optional<Nat>{env[f->var]};
      bool out = !exists;
      for (std::uint64_t i = 0; i <= bound; ++i) {
        env[f->var] = i;
        bool hit = beval(f->f, env, bound);
        if (exists && hit) { out = true; break; }
        if (!exists && !hit) { out = false; break; }
      }
      if (prev)
        env[f->var] = *prev;
      else
        env.erase(f->var);
      return out;
    }
  }
  fail(ErrCode::Internal, "bad formula");
}

}  // namespace

bool decide(const FormulaPtr& f) { return eval_ground(simplify(qe(f))); }

bool brute_decide(const FormulaPtr& f, std::uint64_t bound) {
  std::map<Nat, Nat> env;
  return beval(f, env, bound);
}

}  // namespace vpc

#include "fairctl/translate.hpp"

#include <set>
#include <stdexcept>

namespace fairctl
{

  Formula qf_to_equation(const FOFormula& phi)
  {
    using K = FOFormula::Kind;
    switch (phi.kind())
    {
      case K::Eq:
      {
        Formula a = phi.lhs(), b = phi.rhs();
        return Formula::lor(Formula::land(a, b), Formula::land(Formula::neg(a), Formula::neg(b)));
      }
      case K::And:
        return Formula::land(qf_to_equation(phi.sub(0)), qf_to_equation(phi.sub(1)));
      case K::Not:
        return Formula::lor(Formula::neg(Formula::root()),
                            Formula::eu(Formula::neg(qf_to_equation(phi.sub(0))), Formula::top()));
      case K::Or:
        return qf_to_equation(FOFormula::lnot(
            FOFormula::land(FOFormula::lnot(phi.sub(0)), FOFormula::lnot(phi.sub(1)))));
      case K::Implies:
        return qf_to_equation(FOFormula::lnot(
            FOFormula::land(phi.sub(0), FOFormula::lnot(phi.sub(1)))));
      case K::Forall:
      case K::Exists:
        break;
    }
    throw std::invalid_argument("formula has quantifiers: " + to_string(phi));
  }

  Formula qf_to_nonbot(const FOFormula& phi)
  {
    return Formula::land(Formula::root(),
                         Formula::neg(Formula::eu(Formula::neg(qf_to_equation(phi)),
                                                  Formula::top())));
  }

  namespace
  {
    class Translator
    {
    public:
      Translator(bool s2s, std::set<std::string> used) : s2s_(s2s), used_(std::move(used)) {}

      std::string fresh(const std::string& base)
      {
        for (std::size_t i = 1;; ++i)
        {
          std::string n = base + std::to_string(i);
          if (used_.insert(n).second)
            return n;
        }
      }

      MSOFormula tr(Formula t, const std::string& v)
      {
        using M = MSOFormula;
        switch (t.op())
        {
          case Op::Var:
            return M::sub(v, t.name());
          case Op::Bot:
            return M::lnot(M::equal(v, v));
          case Op::Neg:
            return M::lnot(tr(t.arg(0), v));
          case Op::Or:
          {
            MSOFormula a = tr(t.arg(0), v);
            MSOFormula b = tr(t.arg(1), v);
            return M::lor(a, b);
          }
          case Op::Diamond:
          {
            std::string w = fresh("v");
            return M::ex1(w, M::land(M::edge(v, w), tr(t.arg(0), w)));
          }
          case Op::Root:
          {
            std::string w = fresh("v");
            return M::all1(w, M::lnot(M::edge(w, v)));
          }
          case Op::X0:
          case Op::X1:
          {
            if (!s2s_)
              throw DialectError("X0/X1 need the s2s dialect");
            std::string w = fresh("v");
            return M::ex1(w, M::land(M::succ(t.is(Op::X0) ? 0 : 1, v, w), tr(t.arg(0), w)));
          }
          case Op::EU:
          {
            if (!t.arg(2).is(Op::Top))
              break;
            std::string q = fresh("Q");
            MSOFormula pre = pre_formula(t.arg(0), t.arg(1), std::nullopt, q);
            return M::all(q, M::implies(pre, M::sub(v, q)));
          }
          case Op::EG:
          {
            // ex P. v in P & all1 w. (w in P -> t1(w) & ex1 u. (edge(w,u) &
            //   all Q. (Pre_{t2,t1}(P,Q) -> u in Q)))
            std::string p = fresh("P");
            std::string w = fresh("v");
            std::string u = fresh("v");
            std::string q = fresh("Q");
            MSOFormula pre = pre_formula(t.arg(1), t.arg(0), p, q);
            MSOFormula eu = M::all(q, M::implies(pre, M::sub(u, q)));
            MSOFormula step = M::land(tr(t.arg(0), w), M::ex1(u, M::land(M::edge(w, u), eu)));
            return M::ex(p, M::land(M::sub(v, p), M::all1(w, M::implies(M::sub(w, p), step))));
          }
          default:
            break;
        }
        throw std::invalid_argument("standard translation needs basic symbols, got " +
                                    to_string(t));
      }

    private:
      // all1 w. ((t1(w) & P(w)) | (t2(w) & edge(w,q))) -> w in q; P(w) is
      // w = w when no set is given.
      MSOFormula pre_formula(Formula t1, Formula t2, std::optional<std::string> p,
                             const std::string& q)
      {
        using M = MSOFormula;
        std::string w = fresh("v");
        MSOFormula guard = p ? M::sub(w, *p) : M::equal(w, w);
        MSOFormula a = M::land(tr(t1, w), guard);
        MSOFormula b = M::land(tr(t2, w), M::edge(w, q));
        return M::all1(w, M::implies(M::lor(a, b), M::sub(w, q)));
      }

      bool s2s_;
      std::set<std::string> used_;
    };

    std::set<std::string> names_of(Formula t)
    {
      auto vs = variables(t);
      return {vs.begin(), vs.end()};
    }
  }

  MSOFormula standard_translation(Formula t, bool s2s, const std::string& v)
  {
    auto used = names_of(t);
    if (used.count(v))
      throw std::invalid_argument("element variable '" + v + "' clashes with a proposition");
    used.insert(v);
    return Translator(s2s, std::move(used)).tr(expand_derived(t), v);
  }

  namespace
  {
    void collect_names(const FOFormula& phi, std::set<std::string>& out)
    {
      using K = FOFormula::Kind;
      if (phi.kind() == K::Eq)
      {
        for (auto& n : variables(phi.lhs()))
          out.insert(n);
        for (auto& n : variables(phi.rhs()))
          out.insert(n);
        return;
      }
      if (phi.kind() == K::Forall || phi.kind() == K::Exists)
        out.insert(phi.var());
      for (std::size_t i = 0; i < phi.arity(); ++i)
        collect_names(phi.sub(i), out);
    }

    MSOFormula fo_rec(const FOFormula& phi, Translator& tr)
    {
      using K = FOFormula::Kind;
      using M = MSOFormula;
      switch (phi.kind())
      {
        case K::Eq:
        {
          std::string v = tr.fresh("v");
          MSOFormula a = tr.tr(expand_derived(phi.lhs()), v);
          MSOFormula b = tr.tr(expand_derived(phi.rhs()), v);
          return M::all1(v, M::iff(a, b));
        }
        case K::Not:
          return M::lnot(fo_rec(phi.sub(0), tr));
        case K::And:
        {
          MSOFormula a = fo_rec(phi.sub(0), tr);
          MSOFormula b = fo_rec(phi.sub(1), tr);
          return M::land(a, b);
        }
        case K::Or:
        {
          MSOFormula a = fo_rec(phi.sub(0), tr);
          MSOFormula b = fo_rec(phi.sub(1), tr);
          return M::lor(a, b);
        }
        case K::Implies:
        {
          MSOFormula a = fo_rec(phi.sub(0), tr);
          MSOFormula b = fo_rec(phi.sub(1), tr);
          return M::implies(a, b);
        }
        case K::Forall:
          return M::all(phi.var(), fo_rec(phi.sub(0), tr));
        case K::Exists:
          return M::ex(phi.var(), fo_rec(phi.sub(0), tr));
      }
      throw std::logic_error("unreachable");
    }
  }

  MSOFormula fo_to_mso(const FOFormula& phi, bool s2s)
  {
    std::set<std::string> used;
    collect_names(phi, used);
    Translator tr(s2s, std::move(used));
    return fo_rec(phi, tr);
  }

  FOFormula build_psi(const ModalAutomaton& aut)
  {
    FOFormula body = FOFormula::eq(compile_acc_modal(aut), Formula::top());
    for (std::size_t i = aut.states.size(); i-- > 0;)
      body = FOFormula::exists(aut.states[i], body);
    return body;
  }

} // namespace fairctl

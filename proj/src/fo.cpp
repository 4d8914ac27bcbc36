#include "fairctl/fo.hpp"

#include <optional>

namespace fairctl
{

  FOFormula FOFormula::eq(Formula lhs, Formula rhs)
  {
    return FOFormula(std::make_shared<const Node>(Node{Kind::Eq, lhs, rhs, {}, {}}));
  }

  FOFormula FOFormula::lnot(FOFormula f)
  {
    return FOFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {f}, {}}));
  }

  FOFormula FOFormula::land(FOFormula a, FOFormula b)
  {
    return FOFormula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {a, b}, {}}));
  }

  FOFormula FOFormula::lor(FOFormula a, FOFormula b)
  {
    return FOFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {a, b}, {}}));
  }

  FOFormula FOFormula::implies(FOFormula a, FOFormula b)
  {
    return FOFormula(std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {a, b}, {}}));
  }

  FOFormula FOFormula::forall(std::string var, FOFormula f)
  {
    return FOFormula(
        std::make_shared<const Node>(Node{Kind::Forall, {}, {}, {f}, std::move(var)}));
  }

  FOFormula FOFormula::exists(std::string var, FOFormula f)
  {
    return FOFormula(
        std::make_shared<const Node>(Node{Kind::Exists, {}, {}, {f}, std::move(var)}));
  }

  bool FOFormula::quantifier_free() const { return quantifier_count() == 0; }

  std::size_t FOFormula::quantifier_count() const
  {
    std::size_t n = kind() == Kind::Forall || kind() == Kind::Exists ? 1 : 0;
    for (const auto& s : node_->subs)
      n += s.quantifier_count();
    return n;
  }

  std::set<std::string> FOFormula::free_variables() const
  {
    std::set<std::string> out;
    switch (kind())
    {
      case Kind::Eq:
        for (auto& v : variables(lhs()))
          out.insert(v);
        for (auto& v : variables(rhs()))
          out.insert(v);
        break;
      case Kind::Forall:
      case Kind::Exists:
        out = sub(0).free_variables();
        out.erase(var());
        break;
      default:
        for (const auto& s : node_->subs)
          for (auto& v : s.free_variables())
            out.insert(v);
    }
    return out;
  }

  std::string to_string(const FOFormula& f)
  {
    using K = FOFormula::Kind;
    switch (f.kind())
    {
      case K::Eq:
        return "[" + to_string(f.lhs()) + " = " + to_string(f.rhs()) + "]";
      case K::Not:
        return "!" + to_string(f.sub(0));
      case K::And:
        return "(" + to_string(f.sub(0)) + " && " + to_string(f.sub(1)) + ")";
      case K::Or:
        return "(" + to_string(f.sub(0)) + " || " + to_string(f.sub(1)) + ")";
      case K::Implies:
        return "(" + to_string(f.sub(0)) + " -> " + to_string(f.sub(1)) + ")";
      case K::Forall:
        return "forall " + f.var() + ". " + to_string(f.sub(0));
      case K::Exists:
        return "exists " + f.var() + ". " + to_string(f.sub(0));
    }
    return "?";
  }

  namespace
  {
    bool eval_rec(const FOFormula& f, const TransitionSystem& ts, Valuation& v)
    {
      using K = FOFormula::Kind;
      switch (f.kind())
      {
        case K::Eq:
        {
          Evaluator ev(ts, v);
          return ev.eval(f.lhs()) == ev.eval(f.rhs());
        }
        case K::Not:
          return !eval_rec(f.sub(0), ts, v);
        case K::And:
          return eval_rec(f.sub(0), ts, v) && eval_rec(f.sub(1), ts, v);
        case K::Or:
          return eval_rec(f.sub(0), ts, v) || eval_rec(f.sub(1), ts, v);
        case K::Implies:
          return !eval_rec(f.sub(0), ts, v) || eval_rec(f.sub(1), ts, v);
        case K::Forall:
        case K::Exists:
        {
          if (ts.size() > 12)
            throw EvalError("quantifier evaluation limited to 12 states");
          bool want = f.kind() == K::Exists;
          auto saved = v.find(f.var()) != v.end() ? std::optional<NodeSet>(v[f.var()])
                                                   : std::nullopt;
          bool result = !want;
          std::size_t count = std::size_t{1} << ts.size();
          for (std::size_t m = 0; m < count; ++m)
          {
            v[f.var()] = NodeSet(ts.size(), m);
            if (eval_rec(f.sub(0), ts, v) == want)
            {
              result = want;
              break;
            }
          }
          if (saved)
            v[f.var()] = *saved;
          else
            v.erase(f.var());
          return result;
        }
      }
      return false;
    }
  }

  bool eval_fo(const FOFormula& f, const TransitionSystem& ts, const Valuation& v)
  {
    Valuation copy = v;
    return eval_rec(f, ts, copy);
  }

  bool eval_qf(const FOFormula& f, const TransitionSystem& ts, const Valuation& v)
  {
    if (!f.quantifier_free())
      throw EvalError("formula has quantifiers: " + to_string(f));
    return eval_fo(f, ts, v);
  }

} // namespace fairctl

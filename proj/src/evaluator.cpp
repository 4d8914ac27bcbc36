#include "fairctl/evaluator.hpp"

#include <sstream>

namespace fairctl
{

  ComplexAlgebra::ComplexAlgebra(const TransitionSystem& ts, Mutation m)
    : ts_(ts), mutation_(m)
  {
  }

  void ComplexAlgebra::note_rounds(std::size_t r) const
  {
    if (r > max_rounds_)
      max_rounds_ = r;
  }

  NodeSet ComplexAlgebra::dia(const NodeSet& a) const
  {
    NodeSet out(size());
    for (auto t = a.find_first(); t != NodeSet::npos; t = a.find_next(t))
      for (State s : ts_.predecessors(static_cast<State>(t)))
        out[s] = true;
    return out;
  }

  NodeSet ComplexAlgebra::box(const NodeSet& a) const { return ~dia(~a); }

  NodeSet ComplexAlgebra::next(int dir, const NodeSet& a) const
  {
    if (!ts_.is_binary())
      throw EvalError("X" + std::to_string(dir) + " needs a binary system");
    NodeSet out(size());
    for (State s = 0; s < size(); ++s)
      out[s] = a[ts_.next(dir, s)];
    return out;
  }

  NodeSet ComplexAlgebra::root() const
  {
    if (!ts_.root())
      throw EvalError("I needs a rooted system");
    NodeSet out(size());
    out[*ts_.root()] = true;
    return out;
  }

  NodeSet ComplexAlgebra::eu(const NodeSet& a, const NodeSet& b) const
  {
    NodeSet x(size());
    for (std::size_t r = 1;; ++r)
    {
      NodeSet y = a | (b & dia(x));
      if (y == x)
      {
        note_rounds(r);
        return x;
      }
      x = std::move(y);
    }
  }

  NodeSet ComplexAlgebra::eg(const NodeSet& a, const NodeSet& b) const
  {
    NodeSet y = mutation_ == Mutation::EgLeastFixpoint ? bottom() : top();
    for (std::size_t r = 1;; ++r)
    {
      NodeSet z = a & dia(eu(b & y, a));
      if (z == y)
      {
        note_rounds(r);
        return y;
      }
      y = std::move(z);
    }
  }

  NodeSet ComplexAlgebra::ar(const NodeSet& a, const NodeSet& b) const
  {
    NodeSet c = top();
    for (std::size_t r = 1;; ++r)
    {
      NodeSet d = a & (b | box(c));
      if (d == c)
      {
        note_rounds(r);
        return c;
      }
      c = std::move(d);
    }
  }

  NodeSet ComplexAlgebra::af(const NodeSet& a, const NodeSet& b) const
  {
    NodeSet c = bottom();
    for (std::size_t r = 1;; ++r)
    {
      NodeSet d = a | box(ar(b | c, a));
      if (d == c)
      {
        note_rounds(r);
        return c;
      }
      c = std::move(d);
    }
  }

  Valuation colouring_valuation(const TransitionSystem& ts)
  {
    Valuation v;
    for (const auto& p : ts.props())
      v.emplace(p, ts.extension(p));
    return v;
  }

  Evaluator::Evaluator(const TransitionSystem& ts, Valuation extra, ComplexAlgebra::Mutation m)
    : alg_(ts, m), vals_(std::move(extra))
  {
    for (auto& [name, set] : vals_)
      if (set.size() != ts.size())
        throw EvalError("valuation of '" + name + "' has the wrong length");
  }

  const NodeSet& Evaluator::eval(Formula f)
  {
    auto it = memo_.find(f);
    if (it != memo_.end())
      return it->second;
    NodeSet r = compute(f);
    return memo_.emplace(f, std::move(r)).first->second;
  }

  NodeSet Evaluator::compute(Formula f)
  {
    auto a = [&](std::size_t i) -> const NodeSet& { return eval(f.arg(i)); };
    switch (f.op())
    {
      case Op::Bot:
        return alg_.bottom();
      case Op::Top:
        return alg_.top();
      case Op::Var:
      {
        if (auto v = vals_.find(f.name()); v != vals_.end())
          return v->second;
        if (system().has_prop(f.name()))
          return system().extension(f.name());
        throw EvalError("unbound variable '" + f.name() + "'");
      }
      case Op::Root:
        return alg_.root();
      case Op::Neg:
        return ~a(0);
      case Op::Or:
        return a(0) | a(1);
      case Op::And:
        return a(0) & a(1);
      case Op::Diamond:
        return alg_.dia(a(0));
      case Op::Box:
        return alg_.box(a(0));
      case Op::X0:
        return alg_.next(0, a(0));
      case Op::X1:
        return alg_.next(1, a(0));
      case Op::EG:
        return alg_.eg(a(0), a(1));
      case Op::AR:
        return alg_.ar(a(0), a(1));
      case Op::EU:
      {
        if (f.is_binary_form())
          return alg_.eu(a(0), a(1));
        NodeSet p = a(0), q = a(1), r = a(2);
        return p | (q & alg_.dia(alg_.eu(p & r, q & r)));
      }
      case Op::AF:
      {
        if (f.is_binary_form())
          return alg_.af(a(0), a(1));
        NodeSet p = a(0), q = a(1), r = a(2);
        return alg_.af(p, q) & (p | alg_.box(alg_.ar(q | r, p)));
      }
    }
    throw EvalError("unknown operator");
  }

  NodeSet eval(Formula f, const TransitionSystem& ts, const Valuation& extra)
  {
    Evaluator ev(ts, extra);
    return ev.eval(f);
  }

  namespace
  {
    void guard(const TransitionSystem& ts)
    {
      if (ts.size() > kBruteForceLimit)
        throw EvalError("brute-force oracle limited to " + std::to_string(kBruteForceLimit) +
                        " states");
    }

    // Depth-first search over simple paths starting at `start`.
    bool eu_from(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b, State s,
                 NodeSet& on_path)
    {
      if (a[s])
        return true;
      if (!b[s])
        return false;
      on_path[s] = true;
      for (State t : ts.successors(s))
        if (!on_path[t] && eu_from(ts, a, b, t, on_path))
        {
          on_path[s] = false;
          return true;
        }
      on_path[s] = false;
      return false;
    }

    bool lasso_from(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b,
                    std::vector<State>& path, NodeSet& on_path)
    {
      State s = path.back();
      for (State t : ts.successors(s))
      {
        if (!a[t])
          continue;
        if (on_path[t])
        {
          // cycle t .. s closes the lasso
          bool fair = false;
          for (auto it = path.rbegin(); it != path.rend(); ++it)
          {
            fair = fair || b[*it];
            if (*it == t)
              break;
          }
          if (fair)
            return true;
          continue;
        }
        on_path[t] = true;
        path.push_back(t);
        bool found = lasso_from(ts, a, b, path, on_path);
        path.pop_back();
        on_path[t] = false;
        if (found)
          return true;
      }
      return false;
    }
  }

  NodeSet brute_force_eu(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b)
  {
    guard(ts);
    NodeSet out(ts.size());
    for (State s = 0; s < ts.size(); ++s)
    {
      NodeSet on_path(ts.size());
      out[s] = eu_from(ts, a, b, s, on_path);
    }
    return out;
  }

  NodeSet brute_force_eg(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b)
  {
    guard(ts);
    NodeSet out(ts.size());
    for (State s = 0; s < ts.size(); ++s)
    {
      if (!a[s])
        continue;
      std::vector<State> path{s};
      NodeSet on_path(ts.size());
      on_path[s] = true;
      out[s] = lasso_from(ts, a, b, path, on_path);
    }
    return out;
  }

  NodeSet brute_force_ar(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b)
  {
    // a path with ~b before an ~a-state refutes AR(a,b)
    return ~brute_force_eu(ts, ~a, ~b);
  }

  NodeSet brute_force_af(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b)
  {
    // an ~a-path with ~b infinitely often refutes AF(a,b)
    return ~brute_force_eg(ts, ~a, ~b);
  }

  std::string format_set(const NodeSet& s)
  {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i))
    {
      if (!first)
        out << ',';
      out << i;
      first = false;
    }
    out << '}';
    return out.str();
  }

} // namespace fairctl

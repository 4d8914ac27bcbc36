#include "fairctl/random.hpp"

namespace fairctl
{

  NodeSet Rng::subset(std::size_t n)
  {
    NodeSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      s[i] = (eng_() >> 17) & 1u;
    return s;
  }

  std::vector<std::string> prop_names(std::size_t count)
  {
    static const char* base[] = {"p", "q", "r", "s", "t", "u"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(i < 6 ? base[i] : "p" + std::to_string(i));
    return out;
  }

  namespace
  {
    void colour(Rng& rng, TransitionSystem& ts, std::size_t props, double density)
    {
      for (const auto& p : prop_names(props))
      {
        ts.add_prop(p);
        for (State s = 0; s < ts.size(); ++s)
          if (rng.chance(density))
            ts.set_colour(s, p);
      }
    }

    bool all_reachable(const TransitionSystem& ts, State from)
    {
      NodeSet seen(ts.size());
      std::vector<State> stack{from};
      seen[from] = true;
      while (!stack.empty())
      {
        State s = stack.back();
        stack.pop_back();
        for (State t : ts.successors(s))
          if (!seen[t])
          {
            seen[t] = true;
            stack.push_back(t);
          }
      }
      return seen.all();
    }
  }

  TransitionSystem random_system(Rng& rng, std::size_t states, std::size_t props,
                                 double colour_density)
  {
    TransitionSystem ts(states);
    for (State s = 0; s < states; ++s)
    {
      std::size_t k = 1 + rng.below(3);
      for (std::size_t i = 0; i < k; ++i)
        ts.add_edge(s, static_cast<State>(rng.below(states)));
    }
    colour(rng, ts, props, colour_density);
    ts.validate();
    return ts;
  }

  TransitionSystem random_rooted_system(Rng& rng, std::size_t states, std::size_t props)
  {
    if (states < 2)
      throw ModelError("a strictly rooted serial system needs at least two states");
    TransitionSystem ts(states);
    for (State s = 1; s < states; ++s)
      ts.add_edge(static_cast<State>(rng.below(s)), s);
    for (State s = 0; s < states; ++s)
    {
      std::size_t k = rng.below(3);
      if (ts.successors(s).empty())
        ++k;
      for (std::size_t i = 0; i < k; ++i)
        ts.add_edge(s, static_cast<State>(1 + rng.below(states - 1)));
    }
    ts.set_root(0);
    colour(rng, ts, props, 0.5);
    ts.validate();
    return ts;
  }

  TransitionSystem random_binary_system(Rng& rng, std::size_t states, std::size_t props,
                                        bool strict)
  {
    strict = strict && states >= 2;
    for (;;)
    {
      TransitionSystem ts(states);
      for (State s = 0; s < states; ++s)
        for (int d = 0; d < 2; ++d)
        {
          State t = strict ? static_cast<State>(1 + rng.below(states - 1))
                           : static_cast<State>(rng.below(states));
          ts.set_successor(d, s, t);
        }
      if (!all_reachable(ts, 0))
        continue;
      ts.set_root(0);
      colour(rng, ts, props, 0.5);
      ts.validate();
      return ts;
    }
  }

  namespace
  {
    struct Gen
    {
      Rng& rng;
      const FormulaGen& g;
      std::size_t fixpoints = 0;

      Formula atom()
      {
        std::size_t extra = g.dialect == Dialect::Plain ? 0 : 1;
        std::size_t n = g.props.size() + 2 + extra;
        std::size_t k = rng.below(n + g.props.size());
        if (k >= n)
          k -= n; // bias towards propositions
        if (k < g.props.size())
          return Formula::var(g.props[k]);
        k -= g.props.size();
        if (k == 0)
          return Formula::top();
        if (k == 1)
          return Formula::bottom();
        return Formula::root();
      }

      Formula make(std::size_t depth)
      {
        if (depth == 0 || rng.chance(0.2))
          return atom();
        std::size_t kinds = g.dialect == Dialect::Binary ? 14 : 12;
        for (;;)
        {
          std::size_t k = rng.below(kinds);
          bool fix = k >= 6 && k < 12;
          if (fix && fixpoints >= g.max_fixpoints)
            continue;
          if (fix)
            ++fixpoints;
          auto sub = [&] { return make(depth - 1); };
          switch (k)
          {
            case 0:
              return Formula::neg(sub());
            case 1:
            {
              Formula a = sub(), b = sub();
              return Formula::lor(a, b);
            }
            case 2:
            {
              Formula a = sub(), b = sub();
              return Formula::land(a, b);
            }
            case 3:
              return Formula::dia(sub());
            case 4:
              return Formula::box(sub());
            case 5:
              return Formula::neg(sub());
            case 6:
            {
              Formula a = sub(), b = sub();
              if (g.contextual && rng.chance(0.4))
                return Formula::eu(a, b, sub());
              return Formula::eu(a, b);
            }
            case 7:
            {
              Formula a = sub(), b = sub();
              return Formula::eg(a, b);
            }
            case 8:
            {
              Formula a = sub(), b = sub();
              return Formula::ar(a, b);
            }
            case 9:
            {
              Formula a = sub(), b = sub();
              if (g.contextual && rng.chance(0.4))
                return Formula::af(a, b, sub());
              return Formula::af(a, b);
            }
            case 10:
            {
              Formula a = sub(), b = sub();
              return Formula::eu(a, b);
            }
            case 11:
            {
              Formula a = sub(), b = sub();
              return Formula::eg(a, b);
            }
            case 12:
              return Formula::next(0, sub());
            default:
              return Formula::next(1, sub());
          }
        }
      }
    };
  }

  Formula random_formula(Rng& rng, const FormulaGen& gen, std::size_t depth)
  {
    Gen g{rng, gen};
    return g.make(depth);
  }

} // namespace fairctl

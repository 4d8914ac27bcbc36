#include "fairctl/parity_game.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fairctl
{

  std::uint32_t ParityGame::add_vertex(int owner, unsigned priority)
  {
    owner_.push_back(owner);
    prio_.push_back(priority);
    succ_.emplace_back();
    pred_.emplace_back();
    return static_cast<std::uint32_t>(owner_.size() - 1);
  }

  void ParityGame::add_edge(std::uint32_t from, std::uint32_t to)
  {
    auto& s = succ_[from];
    if (std::find(s.begin(), s.end(), to) != s.end())
      return;
    s.push_back(to);
    pred_[to].push_back(from);
  }

  namespace
  {
    using Set = std::vector<char>;

    class Solver
    {
    public:
      explicit Solver(const ParityGame& g) : g_(g) {}

      GameSolution run()
      {
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          if (g_.successors(v).empty())
            throw std::invalid_argument("parity game vertex without successor");
        GameSolution sol;
        sol.winner.assign(g_.size(), -1);
        sol.strategy.assign(g_.size(), -1);
        Set all(g_.size(), 1);
        solve(all, sol);
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          if (g_.owner(v) != sol.winner[v])
            sol.strategy[v] = -1;
        return sol;
      }

    private:
      // Attractor of `target` for `player` inside `in`; records attractor moves.
      Set attractor(const Set& in, const Set& target, int player, GameSolution& sol)
      {
        Set attr(g_.size(), 0);
        std::vector<std::size_t> count(g_.size(), 0);
        std::deque<std::uint32_t> queue;
        for (std::uint32_t v = 0; v < g_.size(); ++v)
        {
          if (!in[v])
            continue;
          if (target[v])
          {
            attr[v] = 1;
            queue.push_back(v);
          }
          for (auto w : g_.successors(v))
            if (in[w])
              ++count[v];
        }
        while (!queue.empty())
        {
          std::uint32_t w = queue.front();
          queue.pop_front();
          for (auto v : g_.predecessors(w))
          {
            if (!in[v] || attr[v])
              continue;
            if (g_.owner(v) == player)
            {
              attr[v] = 1;
              sol.strategy[v] = w;
              queue.push_back(v);
            }
            else if (--count[v] == 0)
            {
              attr[v] = 1;
              queue.push_back(v);
            }
          }
        }
        return attr;
      }

      void solve(const Set& in, GameSolution& sol)
      {
        unsigned p = std::numeric_limits<unsigned>::max();
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          if (in[v])
            p = std::min(p, g_.priority(v));
        if (p == std::numeric_limits<unsigned>::max())
          return;
        int i = static_cast<int>(p % 2);
        Set top(g_.size(), 0);
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          top[v] = in[v] && g_.priority(v) == p;
        Set a = attractor(in, top, i, sol);
        Set rest = minus(in, a);
        solve(rest, sol);
        bool opponent_wins = false;
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          if (rest[v] && sol.winner[v] == 1 - i)
            opponent_wins = true;
        if (!opponent_wins)
        {
          for (std::uint32_t v = 0; v < g_.size(); ++v)
          {
            if (!in[v])
              continue;
            sol.winner[v] = i;
            if (top[v] && g_.owner(v) == i)
              for (auto w : g_.successors(v))
                if (in[w])
                {
                  sol.strategy[v] = w;
                  break;
                }
          }
          return;
        }
        Set lost(g_.size(), 0);
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          lost[v] = rest[v] && sol.winner[v] == 1 - i;
        Set b = attractor(in, lost, 1 - i, sol);
        for (std::uint32_t v = 0; v < g_.size(); ++v)
          if (b[v])
          {
            sol.winner[v] = 1 - i;
            if (!lost[v] && g_.owner(v) == i)
              sol.strategy[v] = -1;
          }
        solve(minus(in, b), sol);
      }

      static Set minus(const Set& a, const Set& b)
      {
        Set out(a.size(), 0);
        for (std::size_t v = 0; v < a.size(); ++v)
          out[v] = a[v] && !b[v];
        return out;
      }

      const ParityGame& g_;
    };
  }

  GameSolution solve_parity_game(const ParityGame& g) { return Solver(g).run(); }

  bool verify_strategy(const ParityGame& g, const GameSolution& sol, int player)
  {
    const std::size_t n = g.size();
    std::vector<std::vector<std::uint32_t>> edges(n);
    for (std::uint32_t v = 0; v < n; ++v)
    {
      if (sol.winner[v] != player)
        continue;
      if (g.owner(v) == player)
      {
        if (sol.strategy[v] < 0)
          return false;
        edges[v].push_back(static_cast<std::uint32_t>(sol.strategy[v]));
      }
      else
        edges[v] = g.successors(v);
      for (auto w : edges[v])
        if (sol.winner[w] != player)
          return false;
    }
    // A bad cycle has least priority p of the opponent's parity: search for a
    // cycle through some p-vertex inside the vertices of priority >= p.
    for (std::uint32_t s = 0; s < n; ++s)
    {
      if (sol.winner[s] != player || static_cast<int>(g.priority(s) % 2) == player)
        continue;
      unsigned p = g.priority(s);
      std::vector<char> seen(n, 0);
      std::vector<std::uint32_t> stack{s};
      while (!stack.empty())
      {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : edges[v])
        {
          if (g.priority(w) < p)
            continue;
          if (w == s)
            return false;
          if (!seen[w])
          {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }
    return true;
  }

} // namespace fairctl

#include "doctest.h"

#include "fairctl/parity_game.hpp"
#include "fairctl/random.hpp"

using namespace fairctl;

namespace
{
  // Winner by brute force: each player fixes a positional strategy; on a
  // finite game the resulting play is a lasso.
  int lasso_winner(const ParityGame& g, std::uint32_t start, const std::vector<std::uint32_t>& pick)
  {
    std::vector<int> seen(g.size(), -1);
    std::vector<std::uint32_t> path;
    std::uint32_t v = start;
    while (seen[v] < 0)
    {
      seen[v] = static_cast<int>(path.size());
      path.push_back(v);
      v = pick[v];
    }
    unsigned least = ~0u;
    for (std::size_t i = static_cast<std::size_t>(seen[v]); i < path.size(); ++i)
      least = std::min(least, g.priority(path[i]));
    return static_cast<int>(least % 2);
  }

  // Eve wins from v iff some Eve strategy beats every Adam strategy.
  int brute_winner(const ParityGame& g, std::uint32_t v)
  {
    std::vector<std::uint32_t> eve, adam;
    for (std::uint32_t u = 0; u < g.size(); ++u)
      (g.owner(u) == 0 ? eve : adam).push_back(u);
    std::vector<std::uint32_t> pick(g.size());
    std::function<bool(std::size_t)> all_adam = [&](std::size_t i) {
      if (i == adam.size())
        return lasso_winner(g, v, pick) == 0;
      for (auto w : g.successors(adam[i]))
      {
        pick[adam[i]] = w;
        if (!all_adam(i + 1))
          return false;
      }
      return true;
    };
    std::function<bool(std::size_t)> some_eve = [&](std::size_t i) {
      if (i == eve.size())
        return all_adam(0);
      for (auto w : g.successors(eve[i]))
      {
        pick[eve[i]] = w;
        if (some_eve(i + 1))
          return true;
      }
      return false;
    };
    return some_eve(0) ? 0 : 1;
  }
}

TEST_CASE("small games")
{
  ParityGame g;
  auto a = g.add_vertex(0, 1);
  auto b = g.add_vertex(1, 2);
  g.add_edge(a, a);
  g.add_edge(a, b);
  g.add_edge(b, b);
  GameSolution s = solve_parity_game(g);
  CHECK(s.winner[a] == 0);
  CHECK(s.strategy[a] == b);
  CHECK(verify_strategy(g, s, 0));
  CHECK(verify_strategy(g, s, 1));
}

TEST_CASE("random games against brute force")
{
  Rng rng(13);
  for (int i = 0; i < 150; ++i)
  {
    ParityGame g;
    std::size_t n = 1 + rng.below(6);
    for (std::size_t v = 0; v < n; ++v)
      g.add_vertex(static_cast<int>(rng.below(2)), static_cast<unsigned>(rng.below(4)));
    for (std::uint32_t v = 0; v < n; ++v)
    {
      g.add_edge(v, static_cast<std::uint32_t>(rng.below(n)));
      if (rng.chance(0.6))
        g.add_edge(v, static_cast<std::uint32_t>(rng.below(n)));
    }
    GameSolution s = solve_parity_game(g);
    CHECK(verify_strategy(g, s, 0));
    CHECK(verify_strategy(g, s, 1));
    for (std::uint32_t v = 0; v < n; ++v)
      CHECK(s.winner[v] == brute_winner(g, v));
  }
}

TEST_CASE("a wrong strategy is rejected")
{
  ParityGame g;
  auto a = g.add_vertex(0, 1);
  auto b = g.add_vertex(0, 0);
  g.add_edge(a, a);
  g.add_edge(a, b);
  g.add_edge(b, b);
  GameSolution s = solve_parity_game(g);
  REQUIRE(s.winner[a] == 0);
  s.strategy[a] = a;
  CHECK(!verify_strategy(g, s, 0));
}

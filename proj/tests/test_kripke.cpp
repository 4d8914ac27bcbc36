#include "doctest.h"

#include "fairctl/kripke.hpp"
#include "fairctl/random.hpp"

using namespace fairctl;

TEST_CASE("load and save")
{
  TransitionSystem one = load_system("states 1\nedge 0 0\ncolor 0 p\n");
  CHECK(one.size() == 1);
  CHECK(one.extension("p")[0]);
  CHECK(load_system(save_system(one)).colour(0) == one.colour(0));

  CHECK_THROWS_WITH_AS(load_system("states 2\nedge 0 1\n"), "state 1 not serial", ModelError);

  TransitionSystem gen = load_system("# full binary tree\nstates 1\nroot 0\nf0 0 0\nf1 0 0\n");
  CHECK(gen.is_binary());
  CHECK(gen.root() == State{0});
  CHECK(gen.has_edge(0, 0));

  TransitionSystem ts = load_system("states 3\nedge 0 1\nedge 1 2\nedge 2 1\nroot 0\ncolor 2 q\n");
  TransitionSystem back = load_system(save_system(ts));
  CHECK(save_system(back) == save_system(ts));
  CHECK(back.has_strict_root());
}

TEST_CASE("binary systems derive R from f0 and f1")
{
  CHECK_THROWS_AS(load_system("states 2\nf0 0 1\nf1 0 1\nf0 1 1\n"), ModelError);
  CHECK_THROWS_AS(load_system("states 1\nedge 0 0\nf0 0 0\nf1 0 0\n"), ModelError);
}

TEST_CASE("unravel_to_depth")
{
  TransitionSystem loop = load_system("states 1\nedge 0 0\nroot 0\n");
  CHECK(unravel_to_depth(loop, 2).size() == 3);

  TransitionSystem gen = load_system("states 1\nroot 0\nf0 0 0\nf1 0 0\n");
  UnravelTree t = unravel_to_depth(gen, 2);
  CHECK(t.size() == 7);
  CHECK(t.dir[t.children[0][0]] == 0);
  CHECK(t.dir[t.children[0][1]] == 1);

  TransitionSystem cyc = load_system("states 2\nedge 0 1\nedge 1 0\nroot 0\n");
  UnravelTree c = unravel_to_depth(cyc, 3);
  REQUIRE(c.size() == 4);
  std::uint32_t v = 0;
  for (State want : {0u, 1u, 0u, 1u})
  {
    CHECK(c.state[v] == want);
    if (!c.children[v].empty())
      v = c.children[v][0];
  }
}

TEST_CASE("omega expansion")
{
  TransitionSystem loop = load_system("states 1\nedge 0 0\nroot 0\n");
  UnravelTree w = omega_expand_to_depth(loop, 1, 2);
  CHECK(w.size() == 3);
  CHECK(w.children[0].size() == 2);

  Rng rng(9);
  for (int i = 0; i < 10; ++i)
  {
    TransitionSystem ts = random_rooted_system(rng, 2 + rng.below(3), 2);
    UnravelTree a = omega_expand_to_depth(ts, 3, 1);
    UnravelTree b = unravel_to_depth(ts, 3);
    CHECK(a.state == b.state);
    CHECK(a.parent == b.parent);
    UnravelTree e = omega_expand_to_depth(ts, 2, 2);
    for (std::uint32_t n = 0; n < e.size(); ++n)
      if (e.parent[n] >= 0)
        CHECK(ts.has_edge(e.state[static_cast<std::size_t>(e.parent[n])], e.state[n]));
  }
}

TEST_CASE("random generators produce valid systems")
{
  Rng rng(1);
  for (int i = 0; i < 30; ++i)
  {
    CHECK_NOTHROW(random_system(rng, 1 + rng.below(6), 2).validate());
    TransitionSystem r = random_rooted_system(rng, 2 + rng.below(5), 1);
    CHECK(r.has_strict_root());
    TransitionSystem b = random_binary_system(rng, 2 + rng.below(3), 1, true);
    CHECK(b.is_binary());
    CHECK(b.has_strict_root());
  }
}

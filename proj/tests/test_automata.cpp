#include "doctest.h"

#include "fairctl/automata.hpp"
#include "fairctl/evaluator.hpp"

using namespace fairctl;

namespace
{
  const char* kInfOften = R"(parity
props p
states wait seen
init wait
prio wait 1
prio seen 0
delta wait {p} -> seen seen
delta seen {p} -> seen seen
delta wait {} -> wait wait
delta seen {} -> wait wait
)";

  // p alternates with depth.
  const char* kAlternating = "states 2\nroot 0\nf0 0 1\nf1 0 1\nf0 1 0\nf1 1 0\ncolor 1 p\n";
  const char* kNever = "states 1\nprops p\nroot 0\nf0 0 0\nf1 0 0\n";

  ParityTreeAutomaton parity(const char* text)
  {
    return std::get<ParityTreeAutomaton>(load_automaton(text));
  }

  ModalAutomaton modal(const char* text) { return std::get<ModalAutomaton>(load_automaton(text)); }
}

TEST_CASE("automaton files")
{
  ParityTreeAutomaton a = parity(kInfOften);
  CHECK(a.states.size() == 2);
  CHECK(a.delta.size() == 4);
  CHECK(std::get<ParityTreeAutomaton>(load_automaton(save_automaton(a))).delta == a.delta);

  ModalAutomaton m = modal("modal\nprops p\nstates q0 q1\ninit q0\nprio q0 0\nprio q1 1\n"
                           "delta q0 {p} -> {q0 q1} | {q1}\n");
  CHECK(m.moves(0, 1).size() == 2);
  CHECK(m.moves(0, 0).empty());
  CHECK(save_automaton(modal(save_automaton(m).c_str())) == save_automaton(m));

  CHECK_THROWS_AS(load_automaton("parity\nprops p\nstates q\ninit q\n"), AutomatonError);
  CHECK_THROWS_AS(load_automaton("tree\n"), AutomatonError);
  CHECK_THROWS_AS(load_automaton("parity\nprops p\nstates p\ninit p\nprio p 0\n"), AutomatonError);
}

TEST_CASE("acceptance on regular trees")
{
  ParityTreeAutomaton a = parity(kInfOften);
  TransitionSystem alt = load_system(kAlternating);
  AcceptanceResult yes = accepts_regular(a, alt);
  CHECK(yes.accepted);
  TransitionSystem prod = build_product(a, alt, yes.choice);
  CHECK(eval(compile_acc_binary(a), prod).all());

  TransitionSystem never = load_system(kNever);
  CHECK(!accepts_regular(a, never).accepted);
  RefutationResult r = search_labellings(a, never, 1000);
  CHECK(!r.witness_found);
  CHECK(r.exhausted);

  ParityTreeAutomaton all = parity("parity\nprops p\nstates q\ninit q\nprio q 0\n"
                                   "delta q {} -> q q\ndelta q {p} -> q q\n");
  CHECK(accepts_regular(all, alt).accepted);
  CHECK(accepts_regular(all, never).accepted);

  ParityTreeAutomaton needs_p = parity("parity\nprops p\nstates q\ninit q\nprio q 0\n"
                                       "delta q {p} -> q q\n");
  CHECK(!accepts_regular(needs_p, alt).accepted);

  TransitionSystem other = load_system("states 1\nroot 0\nf0 0 0\nf1 0 0\ncolor 0 r\n");
  CHECK_THROWS_AS(accepts_regular(a, other), AutomatonError);
}

TEST_CASE("acceptance terms")
{
  ParityTreeAutomaton a = parity(kInfOften);
  AccTerm t = acc_parts_binary(a);
  CHECK(t.acc1 == parse_formula("~I | wait"));

  ParityTreeAutomaton even = parity("parity\nprops p\nstates q\ninit q\nprio q 2\n"
                                    "delta q {} -> q q\n");
  AccTerm e = acc_parts_binary(even);
  CHECK(e.acc3 == Formula::top());
  // Single state: no exclusion conjuncts, one transition.
  CHECK(e.acc2 == parse_formula("q & (X0 q & X1 q & ~p)"));

  ModalAutomaton m = modal("modal\nprops\nstates q\ninit q\nprio q 1\ndelta q {} -> {q}\n");
  AccTerm mt = acc_parts_modal(m);
  CHECK(mt.acc2 == parse_formula("q & (dia q & box q & true)"));
  CHECK(mt.acc3 == parse_formula("AF(false, ~q)"));
}

TEST_CASE("run prefixes")
{
  ParityTreeAutomaton a = parity(kInfOften);
  TransitionSystem alt = load_system(kAlternating);
  AcceptanceResult res = accepts_regular(a, alt);
  UnravelTree tree = unravel_to_depth(alt, 5);
  std::vector<Lasso> lassos;
  auto run = induced_run(a, alt, tree, res.choice, &lassos);
  RunReport ok = check_run_prefix(a, alt, tree, run, lassos);
  CHECK(ok.ok());
  CHECK(ok.lassos_root > 0);

  auto wrong = run;
  wrong[0] = 1;
  CHECK(!check_run_prefix(a, alt, tree, wrong).initial_ok);

  // All nodes in `wait`: transitions fail below p-nodes and the cycle is odd.
  std::vector<std::size_t> waiting(tree.size(), 0);
  RunReport bad = check_run_prefix(a, alt, tree, waiting);
  CHECK(!bad.transition_violations.empty());

  ParityTreeAutomaton loop = parity("parity\nprops p\nstates q\ninit q\nprio q 1\n"
                                    "delta q {} -> q q\ndelta q {p} -> q q\n");
  std::vector<std::size_t> zero(tree.size(), 0);
  std::vector<std::uint32_t> path{0};
  while (!tree.children[path.back()].empty() && path.size() < 3)
    path.push_back(tree.children[path.back()][0]);
  RunReport odd = check_run_prefix(loop, alt, tree, zero, {Lasso{path, 0}});
  CHECK(odd.transition_violations.empty());
  CHECK(odd.success_violations_suffix.size() == 1);

  ModalAutomaton one = modal("modal\nprops p\nstates q\ninit q\nprio q 0\n"
                             "delta q {} -> {q}\ndelta q {p} -> {q}\n");
  TransitionSystem cyc = load_system("states 2\nroot 0\nedge 0 1\nedge 1 1\ncolor 1 p\n");
  UnravelTree wt = omega_expand_to_depth(cyc, 3, 2);
  CHECK(check_run_prefix(one, cyc, wt, std::vector<std::size_t>(wt.size(), 0)).ok());
}

TEST_CASE("random automata cross-check")
{
  Rng rng(21);
  for (int i = 0; i < 25; ++i)
  {
    AutomatonGen g;
    g.states = 1 + rng.below(3);
    ParityTreeAutomaton a = random_parity_automaton(rng, g);
    CHECK_NOTHROW(a.validate());
    TransitionSystem gen = random_binary_system(rng, 1 + rng.below(3), 1, false);
    AcceptanceResult res = accepts_regular(a, gen);
    if (res.accepted)
      CHECK(eval(compile_acc_binary(a), build_product(a, gen, res.choice)).all());
    else
      CHECK(!search_labellings(a, gen, 100000).witness_found);
  }
}

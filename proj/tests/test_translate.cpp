#include "doctest.h"

#include "fairctl/automata.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/fo.hpp"
#include "fairctl/mso.hpp"
#include "fairctl/random.hpp"
#include "fairctl/translate.hpp"

using namespace fairctl;

namespace
{
  Formula P(const char* s) { return parse_formula(s); }

  NodeSet single(std::size_t n, State s)
  {
    NodeSet out(n);
    out.set(s);
    return out;
  }
}

TEST_CASE("MSO printing and parsing")
{
  MSOFormula f = parse_mso("all X. (sub(p,X) | ~ex1 v. edge(v,X))");
  CHECK(parse_mso(to_string(f)).size() == f.size());
  CHECK(to_string(parse_mso(to_string(f))) == to_string(f));
  CHECK(f.free_variables() == std::set<std::string>{"p"});
  CHECK(f.quantifier_count() == 2);
  CHECK_THROWS(parse_mso("sub(p,"));
}

TEST_CASE("MSO evaluation")
{
  TransitionSystem ts = load_system("states 3\nedge 0 1\nedge 1 2\nedge 2 2\n");
  std::map<std::string, NodeSet, std::less<>> env{{"p", ts.empty_set()},
                                                   {"q", single(3, 1)}};
  CHECK(mso_eval(parse_mso("sub(p,q)"), ts, env));
  CHECK(!mso_eval(parse_mso("sub(q,p)"), ts, env));
  CHECK(mso_eval(parse_mso("ex p. all1 v. sub(v,p)"), ts));
  CHECK(mso_eval(parse_mso("ex1 v. edge(v,q)"), ts, env));
  CHECK_THROWS(mso_eval(parse_mso("sub(zz,q)"), ts, env));
  CHECK_THROWS(mso_eval(parse_mso("f0(q,q)"), ts, env));
  TransitionSystem big(9);
  for (State s = 0; s < 9; ++s)
    big.add_edge(s, s);
  CHECK_THROWS(mso_eval(parse_mso("ex p. sub(p,p)"), big));
}

TEST_CASE("standard translation agrees with evaluation")
{
  Rng rng(17);
  FormulaGen gen{prop_names(2), Dialect::Plain, true, 2};
  for (int i = 0; i < 40; ++i)
  {
    TransitionSystem ts = random_system(rng, 1 + rng.below(4), 2);
    Formula t = random_formula(rng, gen, 3);
    MSOFormula m = standard_translation(t);
    CHECK(m.free_variables().count("v") == 1);
    NodeSet want = eval(t, ts);
    for (State s = 0; s < ts.size(); ++s)
      CHECK(mso_eval(m, ts, {{"v", single(ts.size(), s)}}) == want[s]);
  }
  CHECK_THROWS(standard_translation(P("X0 p")));
  CHECK_NOTHROW(standard_translation(P("X0 p"), true));
}

TEST_CASE("translation of I on strictly rooted systems")
{
  TransitionSystem ts = load_system("states 3\nroot 0\nedge 0 1\nedge 1 2\nedge 2 1\ncolor 1 p\n");
  MSOFormula m = standard_translation(parse_formula("I | dia p", Dialect::Rooted));
  NodeSet want = eval(parse_formula("I | dia p", Dialect::Rooted), ts);
  for (State s = 0; s < 3; ++s)
    CHECK(mso_eval(m, ts, {{"v", single(3, s)}}) == want[s]);
}

TEST_CASE("first-order to MSO")
{
  FOFormula eq = FOFormula::eq(P("p"), P("q"));
  MSOFormula m = fo_to_mso(eq);
  CHECK(m.free_variables() == std::set<std::string>{"p", "q"});
  FOFormula all = FOFormula::forall("x", FOFormula::eq(P("x"), P("x")));
  MSOFormula ma = fo_to_mso(all);
  CHECK(ma.quantifier_count() == all.quantifier_count() + 1);
  CHECK(ma.free_variables().empty());
  TransitionSystem ts = load_system("states 2\nedge 0 1\nedge 1 0\ncolor 1 p\n");
  CHECK(mso_eval(ma, ts));
  FOFormula d = FOFormula::eq(P("dia p"), Formula::top());
  CHECK(mso_eval(fo_to_mso(d), ts, {{"p", single(2, 1)}}) == eval_qf(d, ts));
}

TEST_CASE("quantifier-free formulas as equations")
{
  TransitionSystem ts = load_system("states 3\nroot 0\nedge 0 1\nedge 1 2\nedge 2 1\ncolor 1 p\n");
  auto check = [&](const FOFormula& phi) {
    bool want = eval_qf(phi, ts);
    CHECK(eval(qf_to_equation(phi), ts).all() == want);
    CHECK(eval(qf_to_nonbot(phi), ts).any() == want);
  };
  check(FOFormula::eq(Formula::top(), Formula::top()));
  check(FOFormula::eq(P("p"), Formula::bottom()));
  check(FOFormula::lnot(FOFormula::eq(P("p"), Formula::bottom())));
  check(FOFormula::implies(FOFormula::eq(P("p"), P("dia p")), FOFormula::eq(P("p"), P("p"))));
  check(FOFormula::lor(FOFormula::eq(P("p"), Formula::top()), FOFormula::eq(P("dia p"), P("p"))));
  CHECK_THROWS(qf_to_equation(FOFormula::exists("x", FOFormula::eq(P("x"), P("p")))));
}

TEST_CASE("psi for modal automata")
{
  ModalAutomaton all = std::get<ModalAutomaton>(
      load_automaton("modal\nprops p\nstates q0\ninit q0\nprio q0 0\n"
                     "delta q0 {} -> {q0}\ndelta q0 {p} -> {q0}\n"));
  FOFormula psi = build_psi(all);
  CHECK(psi.free_variables() == std::set<std::string>{"p"});
  ModalAutomaton none = std::get<ModalAutomaton>(
      load_automaton("modal\nprops p\nstates q0\ninit q0\nprio q0 0\n"));
  Rng rng(8);
  for (int i = 0; i < 10; ++i)
  {
    TransitionSystem ts = random_rooted_system(rng, 2 + rng.below(3), 1);
    CHECK(eval_fo(psi, ts));
    Valuation q0{{"q0", ts.full_set()}};
    CHECK(eval(compile_acc_modal(all), ts, q0).all());
    CHECK(!eval_fo(build_psi(none), ts));
  }
}

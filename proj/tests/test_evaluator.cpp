#include "doctest.h"

#include "fairctl/axioms.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/fo.hpp"
#include "fairctl/random.hpp"

using namespace fairctl;

namespace
{
  Formula P(const char* s) { return parse_formula(s); }

  TransitionSystem two_cycle()
  {
    return load_system("states 2\nedge 0 1\nedge 1 0\ncolor 1 p\n");
  }
}

TEST_CASE("basic semantics")
{
  TransitionSystem c = two_cycle();
  CHECK(eval(P("dia true"), c).all());
  CHECK(format_set(eval(P("EG(true,p)"), c)) == "{0,1}");
  CHECK(eval(P("EG(~p,p)"), c).none());

  TransitionSystem one = load_system("states 1\nedge 0 0\ncolor 0 q\n");
  Valuation v{{"p", one.empty_set()}};
  CHECK(eval(P("EU(p,q)"), one, v).none());
}

TEST_CASE("brute force oracles")
{
  Rng rng(2);
  TransitionSystem ts = random_system(rng, 5, 0);
  CHECK(brute_force_eu(ts, ts.empty_set(), ts.full_set()).none());
  CHECK(brute_force_eu(ts, ts.full_set(), ts.empty_set()).all());
  for (int i = 0; i < 100; ++i)
  {
    TransitionSystem s = random_system(rng, 1 + rng.below(6), 0);
    ComplexAlgebra alg(s);
    NodeSet a = rng.subset(s.size()), b = rng.subset(s.size());
    CHECK(alg.eu(a, b) == brute_force_eu(s, a, b));
    CHECK(alg.eg(a, b) == brute_force_eg(s, a, b));
    CHECK(alg.ar(a, b) == ~alg.eu(~a, ~b));
    CHECK(alg.af(a, b) == ~alg.eg(~a, ~b));
  }
}

TEST_CASE("unbound variable")
{
  TransitionSystem c = two_cycle();
  CHECK_THROWS(eval(P("zz"), c));
}

TEST_CASE("quantifier-free first-order evaluation")
{
  TransitionSystem c = two_cycle();
  CHECK(eval_qf(FOFormula::eq(Formula::top(), Formula::top()), c));
  CHECK(eval_qf(FOFormula::eq(P("dia true"), Formula::top()), c));
  CHECK(eval_qf(FOFormula::eq(P("EU(p,true)"), P("p | true & dia EU(p,true)")), c));
  CHECK(!eval_qf(FOFormula::eq(P("p"), Formula::top()), c));
  CHECK_THROWS(eval_qf(FOFormula::exists("x", FOFormula::eq(P("x"), P("p"))), c));
  CHECK(eval_fo(FOFormula::exists("x", FOFormula::eq(P("x"), P("p"))), c));
  CHECK(eval_fo(FOFormula::forall("x", FOFormula::eq(P("x"), P("x"))), c));
}

TEST_CASE("axioms hold and the EG mutation is caught")
{
  Rng rng(4);
  for (int i = 0; i < 20; ++i)
  {
    TransitionSystem ts = random_rooted_system(rng, 2 + rng.below(4), 1);
    ComplexAlgebra alg(ts);
    CHECK(check_axioms(alg, rng).violations() == 0);
    CHECK(check_contextual(ts, rng).violations() == 0);
  }
  TransitionSystem c = two_cycle();
  ComplexAlgebra bad(c, ComplexAlgebra::Mutation::EgLeastFixpoint);
  AxiomReport rep = check_axioms(bad, rng);
  REQUIRE(rep.tallies.count("EGmax"));
  CHECK(rep.tallies.at("EGmax").violations > 0);
}

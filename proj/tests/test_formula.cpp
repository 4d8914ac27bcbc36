#include "doctest.h"

#include "fairctl/closure.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/formula.hpp"
#include "fairctl/random.hpp"

using namespace fairctl;

namespace
{
  Formula P(const char* s, Dialect d = Dialect::Binary) { return parse_formula(s, d); }
}

TEST_CASE("parse and print")
{
  Formula f = P("EU(p, q)");
  CHECK(f.is(Op::EU));
  CHECK(f.arg(0) == Formula::var("p"));
  CHECK(f.arg(2) == Formula::top());
  CHECK(to_string(f) == "EU(p,q)");

  Formula g = P("~(dia p | box q)");
  CHECK(g.is(Op::Neg));
  CHECK(g.arg(0).is(Op::Or));
  CHECK(g.arg(0).arg(1).is(Op::Box));

  for (const char* s : {"AF(p, q, r)", "EG(p,q) & X0 I", "~p | dia box EU(p,q,true)", "false"})
    CHECK(P(to_string(P(s)).c_str()) == P(s));
}

TEST_CASE("precedence")
{
  CHECK(P("~p & q") == Formula::land(Formula::neg(Formula::var("p")), Formula::var("q")));
  CHECK(P("dia p & q") == Formula::land(Formula::dia(Formula::var("p")), Formula::var("q")));
  CHECK(P("p | q & r") ==
        Formula::lor(Formula::var("p"), Formula::land(Formula::var("q"), Formula::var("r"))));
}

TEST_CASE("parse errors and dialect gate")
{
  CHECK_THROWS_AS(P("EU(p"), ParseError);
  CHECK_THROWS_AS(P("p &"), ParseError);
  CHECK_THROWS_AS(P("X0 p", Dialect::Plain), DialectError);
  CHECK_THROWS_AS(P("I", Dialect::Plain), DialectError);
  CHECK_NOTHROW(P("I", Dialect::Rooted));
  CHECK_THROWS_AS(P("X1 p", Dialect::Rooted), DialectError);
}

TEST_CASE("hash-consing and structural order")
{
  CHECK(P("EU(p,q)") == Formula::eu(Formula::var("p"), Formula::var("q")));
  CHECK(compare(P("p"), P("p")) == 0);
  CHECK(compare(P("p"), P("q")) != 0);
  CHECK((compare(P("p"), P("q")) < 0) == !(compare(P("q"), P("p")) < 0));
}

TEST_CASE("expand_derived")
{
  CHECK(expand_derived(P("box p")) == P("~dia ~p"));
  CHECK(expand_derived(P("AR(p,q)")) == P("~EU(~p,~q)"));
  CHECK(expand_derived(P("EU(p,q,r)")) == expand_derived(P("p | q & dia EU(p & r, q & r)")));
}

TEST_CASE("nnf")
{
  CHECK(to_string(nnf(P("~EU(p,q)"))) == "AR(~p,~q)");
  CHECK(nnf(P("~~p")) == P("p"));
  CHECK(nnf(P("~EG(p, q | r)")) == P("AF(~p, ~q & ~r)"));
  Rng rng(11);
  FormulaGen gen{prop_names(2), Dialect::Binary, true, 1000};
  for (int i = 0; i < 100; ++i)
  {
    Formula f = random_formula(rng, gen, 4);
    Formula n = nnf(f);
    CHECK(is_nnf(n));
    CHECK(nnf(n) == n);
  }
}

TEST_CASE("contextual operators with a true context")
{
  Rng rng(3);
  Formula p = P("p"), q = P("q"), r = P("r");
  for (int i = 0; i < 50; ++i)
  {
    TransitionSystem ts = random_system(rng, 1 + rng.below(6), 0);
    Valuation v{{"p", rng.subset(ts.size())}, {"q", rng.subset(ts.size())},
                {"r", rng.subset(ts.size())}};
    Evaluator ev(ts, v);
    CHECK(ev.eval(eu_c(p, q, Formula::top())) == ev.eval(Formula::eu(p, q)));
    CHECK(ev.eval(af_c(p, q, Formula::top())) == ev.eval(Formula::af(p, q)));
    Formula a = af_c(p, q, r);
    CHECK(ev.eval(a) == ev.eval(Formula::lor(p, Formula::box(Formula::land(Formula::lor(q, r), a)))));
  }
}

TEST_CASE("closure")
{
  Formula eg[] = {P("EG(p,q)")};
  ClosureSet c = fischer_ladner_closure(eg, Dialect::Plain);
  CHECK(c.contains(P("dia EU(q & EG(p,q), p, true)")));
  CHECK(c.contains(P("EU(true,true,true)")));
  CHECK(c.size() <= c.bound);
  auto ev = eventualities(c);
  REQUIRE(ev.size() == 2);
  CHECK(std::find(ev.begin(), ev.end(), P("EU(q & EG(p,q), p)")) != ev.end());
  CHECK(std::find(ev.begin(), ev.end(), P("EU(true,true)")) != ev.end());

  Formula box[] = {P("box p")};
  auto evb = eventualities(fischer_ladner_closure(box, Dialect::Plain));
  REQUIRE(evb.size() == 1);
  CHECK(evb[0] == P("EU(true,true,true)"));

  Formula af[] = {P("AF(p,q,r)")};
  CHECK(fischer_ladner_closure(af, Dialect::Plain).contains(P("box AR(q | r, p)")));

  ClosureSet empty = fischer_ladner_closure({}, Dialect::Plain);
  CHECK(empty.contains(P("EU(true,true,true)")));

  Formula x[] = {P("dia p")};
  ClosureSet cb = fischer_ladner_closure(x, Dialect::Binary);
  CHECK(cb.contains(P("X0 p")));
  CHECK(cb.contains(P("X1 p")));

  Formula notnnf[] = {P("~dia p")};
  CHECK_THROWS(fischer_ladner_closure(notnnf, Dialect::Plain));
}

TEST_CASE("closure monotone in the seed")
{
  Formula a[] = {P("EU(p,q)")};
  Formula b[] = {P("EU(p,q)"), P("AF(q,p)")};
  ClosureSet ca = fischer_ladner_closure(a, Dialect::Plain);
  ClosureSet cb = fischer_ladner_closure(b, Dialect::Plain);
  for (Formula f : ca.members)
    CHECK(cb.contains(f));
}

TEST_CASE("characteristic formula")
{
  CHECK(characteristic_formula({}, {}) == Formula::top());
  Formula rho[] = {P("p"), P("q")};
  Formula in[] = {P("p")};
  CHECK(characteristic_formula(in, rho) == P("p & ~q"));

  // s' satisfies kappa(s, rho) iff s and s' agree on rho.
  Rng rng(5);
  for (int i = 0; i < 20; ++i)
  {
    TransitionSystem ts = random_system(rng, 1 + rng.below(6), 2);
    Formula r[] = {P("p"), P("dia q"), P("EU(p,q)")};
    Evaluator ev(ts);
    for (State s = 0; s < ts.size(); ++s)
    {
      std::vector<Formula> here;
      for (Formula g : r)
        if (ev.holds(g, s))
          here.push_back(g);
      const NodeSet& k = ev.eval(characteristic_formula(here, r));
      for (State t = 0; t < ts.size(); ++t)
      {
        bool agree = true;
        for (Formula g : r)
          agree = agree && ev.holds(g, s) == ev.holds(g, t);
        CHECK(k[t] == agree);
      }
    }
  }
}

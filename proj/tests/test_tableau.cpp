#include "doctest.h"

#include "fairctl/tableau.hpp"

#include "json.hpp"

using namespace fairctl;

namespace
{
  Formula P(const char* s) { return parse_formula(s); }

  TransitionSystem two_cycle()
  {
    return load_system("states 2\nedge 0 1\nedge 1 0\ncolor 1 p\n");
  }

  bool has_violation(const std::vector<WfViolation>& vs, const std::string& s)
  {
    for (const auto& v : vs)
      if (v.to_string() == s)
        return true;
    return false;
  }
}

TEST_CASE("sat_in")
{
  TransitionSystem c = two_cycle();
  CHECK(sat_in(Formula::top(), c) == State{0});
  CHECK(!sat_in(Formula::bottom(), c));
  CHECK(sat_in(P("EG(true,p)"), c) == State{0});
  CHECK(sat_in(P("p"), c) == State{1});
}

TEST_CASE("initial tableau")
{
  TransitionSystem ts = load_system("states 3\nedge 0 0\nedge 1 1\nedge 2 2\ncolor 2 p\n");
  Tableau t(ts, P("p"), Dialect::Plain);
  REQUIRE(t.size() == 1);
  CHECK(t.node(0).alpha == 2);
  CHECK(t.node(0).beta.empty());
  CHECK(t.well_formed().empty());

  TransitionSystem e = load_system("states 2\nedge 0 1\nedge 1 1\ncolor 0 q\ncolor 1 p\n");
  Tableau u(e, P("EU(p,q)"), Dialect::Plain);
  CHECK(u.node(0).alpha == 0);
  REQUIRE(u.node(0).beta.size() == 1);
  const TableauEntry& en = u.node(0).beta[0];
  CHECK(en.theta == P("EU(p,q)"));
  CHECK(en.status == Status::Active);
  CHECK(*en.rho == u.gamma0().members);
  CHECK(en.chi_prime == Formula::top());
  CHECK(u.well_formed().empty());

  CHECK_THROWS_AS(Tableau(e, P("p & ~p"), Dialect::Plain), TableauError);
}

TEST_CASE("well-formedness violations are reported")
{
  TransitionSystem e = load_system("states 2\nedge 0 1\nedge 1 1\ncolor 0 q\ncolor 1 p\n");
  {
    Tableau t(e, P("EU(p,q)"), Dialect::Plain);
    t.mutable_nodes()[0].beta[0].status = Status::Frozen;
    CHECK(has_violation(t.well_formed(), "(s0,1,d)"));
  }
  {
    Tableau t(e, P("EU(p,q)"), Dialect::Plain);
    auto smaller = std::make_shared<std::vector<Formula>>(*t.node(0).beta[0].rho);
    smaller->pop_back();
    t.mutable_nodes()[0].beta[0].rho = smaller;
    CHECK(has_violation(t.well_formed(), "(s0,1,c)"));
  }
  {
    Tableau t(e, P("EU(p,q)"), Dialect::Plain);
    t.mutable_nodes()[0].beta[0].chi_prime = Formula::bottom();
    CHECK(has_violation(t.well_formed(), "(s0,1,g)"));
    t.mutable_nodes()[0].beta[0].theta = P("EU(p,q,q)");
    t.mutable_nodes()[0].beta[0].chi_prime = P("p");
    CHECK(has_violation(t.well_formed(), "(s0,1,e)"));
  }
  {
    Tableau t(e, P("EU(p,q)"), Dialect::Plain);
    t.mutable_nodes()[0].alpha = 1;
    CHECK(has_violation(t.well_formed(), "(s0,1,b)"));
  }
}

TEST_CASE("one-step unravelling")
{
  TransitionSystem loop = load_system("states 1\nedge 0 0\ncolor 0 p\n");
  Tableau t(loop, P("p"), Dialect::Plain);
  t.one_step_unravel();
  CHECK(t.node(0).children.size() == 1);
  CHECK(t.well_formed().empty());

  // Single state: the jump cannot move.
  TransitionSystem one = load_system("states 1\nedge 0 0\ncolor 0 q\n");
  Valuation v{{"p", one.empty_set()}};
  Tableau af(one, P("AF(p,q)"), Dialect::Plain, v);
  REQUIRE(!af.node(0).beta.empty());
  auto [x, g] = af.jump(0, af.node(0).beta[0]);
  CHECK(x == 0);
  (void)g;
}

TEST_CASE("AF entry freezes where psi holds")
{
  TransitionSystem ts = load_system("states 2\nedge 0 1\nedge 1 1\ncolor 0 q\ncolor 1 q\ncolor 1 p\n");
  Tableau t(ts, P("AF(p,q)"), Dialect::Plain);
  REQUIRE(t.node(0).beta.size() == 1);
  CHECK(t.node(0).beta[0].status == Status::Active);
  t.one_step_unravel();
  for (auto c : t.node(0).children)
    CHECK(t.node(c).beta[0].status != Status::Active);
  CHECK(t.well_formed().empty());
}

TEST_CASE("jump on the 2-cycle")
{
  TransitionSystem c = two_cycle();
  Tableau t(c, P("EU(p,true)"), Dialect::Plain);
  REQUIRE(t.node(0).alpha == 0);
  REQUIRE(t.node(0).beta.size() == 1);
  auto [x, gamma] = t.jump(0, t.node(0).beta[0]);
  // Only s0 agrees with s0 on the closure (p separates the states).
  CHECK(x == 0);
  CHECK(t.holds(gamma, 0));
  CHECK(!t.holds(gamma, 1));
}

TEST_CASE("EU witness on the 2-cycle")
{
  TransitionSystem c = load_system("states 2\nedge 0 1\nedge 1 0\ncolor 1 p\ncolor 0 q\n");
  UnravelOptions o;
  o.depth = 6;
  UnravelResult r = unravel(c, P("EU(p,q)"), o);
  CHECK(r.violations.empty());
  CHECK(r.depth_reached == 6);
  auto truth = prefix_truth(*r.tableau, P("EU(p,q)"));
  CHECK(truth[0] == Truth::True);
  TruthReport tr = verify_truth_prefix(*r.tableau);
  CHECK(tr.ok());
  CHECK(tr.verified > 0);
  MonitorReport mr = monitor_eventualities(*r.tableau);
  CHECK(mr.ok());
}

TEST_CASE("truth report notices a wrong child")
{
  TransitionSystem c = two_cycle();
  UnravelOptions o;
  o.depth = 2;
  UnravelResult r = unravel(c, P("dia p"), o);
  REQUIRE(verify_truth_prefix(*r.tableau).ok());
  for (auto ch : r.tableau->node(0).children)
    r.tableau->mutable_nodes()[ch].alpha = 0;
  CHECK(!verify_truth_prefix(*r.tableau).ok());
}

TEST_CASE("monitor notices a changed relevance set")
{
  TransitionSystem c = load_system("states 2\nedge 0 1\nedge 1 0\ncolor 1 p\ncolor 0 q\n");
  UnravelOptions o;
  o.depth = 4;
  UnravelResult r = unravel(c, P("EU(p,q)"), o);
  Tableau& t = *r.tableau;
  REQUIRE(monitor_eventualities(t).ok());
  auto leaf = t.leaves().front();
  auto& beta = t.mutable_nodes()[leaf].beta;
  REQUIRE(!beta.empty());
  auto more = std::make_shared<std::vector<Formula>>(*beta[0].rho);
  more->push_back(P("zz_extra"));
  beta[0].rho = more;
  CHECK(!monitor_eventualities(t).ok());
}

TEST_CASE("rooted wrapper colours only the root with I")
{
  TransitionSystem ts = load_system("states 3\nroot 0\nedge 0 1\nedge 1 2\nedge 2 1\ncolor 2 p\n");
  UnravelOptions o;
  o.dialect = Dialect::Rooted;
  o.depth = 5;
  UnravelResult r = unravel(ts, parse_formula("p & box ~I", Dialect::Rooted), o);
  Tableau& t = *r.tableau;
  CHECK(r.violations.empty());
  CHECK(t.rooted());
  for (std::uint32_t v = 0; v < t.size(); ++v)
  {
    auto col = t.colour(v);
    bool has_i = std::find(col.begin(), col.end(), "I") != col.end();
    CHECK(has_i == (v == 0));
  }
  TruthReport tr = verify_truth_prefix(t);
  CHECK(tr.ok());
  CHECK(tr.root_coloured == 1);

  TransitionSystem plain = load_system("states 1\nedge 0 0\nroot 0\n");
  CHECK_THROWS_AS(Tableau(plain, parse_formula("I", Dialect::Rooted), Dialect::Rooted),
                  TableauError);
}

TEST_CASE("binary unravelling")
{
  TransitionSystem gen = load_system("states 1\nroot 0\nf0 0 0\nf1 0 0\ncolor 0 p\n");
  UnravelOptions o;
  o.dialect = Dialect::Binary;
  o.depth = 3;
  UnravelResult r = unravel(gen, parse_formula("X0 p & EU(p,true)"), o);
  Tableau& t = *r.tableau;
  CHECK(r.violations.empty());
  CHECK(t.size() == 15);
  for (std::uint32_t v = 0; v < t.size(); ++v)
  {
    const auto& n = t.node(v);
    if (n.children.empty())
      continue;
    REQUIRE(n.children.size() == 2);
    CHECK(t.node(n.children[0]).dir == 0);
    CHECK(t.node(n.children[1]).dir == 1);
  }
  CHECK(verify_truth_prefix(t).ok());
}

TEST_CASE("binary designated successors on a strictly rooted generator")
{
  TransitionSystem g = load_system("states 3\nroot 0\nf0 0 1\nf1 0 2\nf0 1 2\nf1 1 1\nf0 2 1\nf1 2 2\ncolor 2 p\n");
  REQUIRE(g.has_strict_root());
  UnravelOptions o;
  o.dialect = Dialect::Binary;
  o.depth = 5;
  UnravelResult r = unravel(g, parse_formula("EU(p, true) & X1 ~I"), o);
  CHECK(r.violations.empty());
  CHECK(r.tableau->rooted());
  std::size_t designated = 0;
  for (std::uint32_t v = 1; v < r.tableau->size(); ++v)
    designated += !r.tableau->node(v).designated.empty();
  CHECK(designated > 0);
  CHECK(verify_truth_prefix(*r.tableau).ok());
  CHECK(monitor_eventualities(*r.tableau).ok());
}

TEST_CASE("trace JSON")
{
  TransitionSystem c = two_cycle();
  UnravelOptions o;
  o.depth = 2;
  UnravelResult r = unravel(c, P("EU(p,true)"), o);
  auto j = nlohmann::json::parse(tableau_trace_json(*r.tableau));
  REQUIRE(j["nodes"].size() == r.tableau->size());
  const auto& n0 = j["nodes"][0];
  CHECK(n0["id"] == 0);
  CHECK(n0["parent"].is_null());
  CHECK(n0["alpha_state"] == 0);
  CHECK(n0["beta"][0]["theta"] == "EU(p,true)");
  CHECK(n0["beta"][0]["status"] == "a");
  CHECK(n0["jump"]["m"] == 1);
  CHECK(n0["jump"]["x_v"] == 0);
  for (const auto& id : n0["beta"][0]["rho_ids"])
    CHECK(id.get<std::size_t>() < j["formulas"].size());
  // Same input, same bytes.
  UnravelResult again = unravel(c, P("EU(p,true)"), o);
  CHECK(tableau_trace_json(*again.tableau) == tableau_trace_json(*r.tableau));
}

#include "fairctl/automata.hpp"
#include "fairctl/axioms.hpp"
#include "fairctl/closure.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/formula.hpp"
#include "fairctl/kripke.hpp"
#include "fairctl/mso.hpp"
#include "fairctl/random.hpp"
#include "fairctl/selftest.hpp"
#include "fairctl/tableau.hpp"
#include "fairctl/translate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace fairctl;
using json = nlohmann::ordered_json;

namespace
{
  constexpr const char* kVersion = "0.3.0";

  // Exit codes.
  constexpr int kOk = 0;
  constexpr int kViolation = 1;
  constexpr int kUsage = 2;

  struct UsageError : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  bool g_json = false;

  void emit(const json& j) { std::cout << j.dump(1) << "\n"; }

  std::vector<std::size_t> set_items(const NodeSet& s)
  {
    std::vector<std::size_t> out;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i))
      out.push_back(i);
    return out;
  }

  State parse_state(const std::string& text, const TransitionSystem& ts)
  {
    std::string digits = text;
    if (!digits.empty() && digits[0] == 's')
      digits.erase(0, 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try
    {
      v = std::stoul(digits, &pos);
    }
    catch (const std::exception&)
    {
      pos = 0;
    }
    if (pos != digits.size() || digits.empty() || v >= ts.size())
      throw UsageError("no state " + text);
    return static_cast<State>(v);
  }

  // ---------------------------------------------------------------- commands

  struct CheckArgs
  {
    std::string model, formula, at;
  };

  int cmd_check(const CheckArgs& a)
  {
    TransitionSystem ts = load_system_file(a.model);
    Formula f = parse_formula(a.formula);
    NodeSet s = eval(f, ts);
    if (!a.at.empty())
    {
      bool yes = s[parse_state(a.at, ts)];
      if (g_json)
        emit({{"formula", to_string(f)}, {"state", a.at}, {"holds", yes}});
      else
        std::cout << (yes ? "yes" : "no") << "\n";
      return kOk;
    }
    if (g_json)
      emit({{"formula", to_string(f)}, {"states", set_items(s)}});
    else
      std::cout << format_set(s) << "\n";
    return kOk;
  }

  struct AxiomArgs
  {
    std::size_t states = 4, samples = 100, models = 1, props = 1;
    std::uint64_t seed = 7;
    std::string model;
    bool mutate = false;
  };

  int cmd_axioms(const AxiomArgs& a)
  {
    Rng rng(a.seed);
    AxiomReport total, ctx;
    AxiomOptions opts;
    opts.samples = a.samples;
    auto mutation = a.mutate ? ComplexAlgebra::Mutation::EgLeastFixpoint
                             : ComplexAlgebra::Mutation::None;
    for (std::size_t i = 0; i < a.models; ++i)
    {
      TransitionSystem ts = a.model.empty() ? random_system(rng, a.states, a.props)
                                            : load_system_file(a.model);
      ComplexAlgebra alg(ts, mutation);
      total.merge(check_axioms(alg, rng, opts));
      if (!a.mutate)
        ctx.merge(check_contextual(ts, rng, opts));
    }
    std::size_t bad = total.violations() + ctx.violations();
    if (g_json)
    {
      json tallies = json::object();
      for (const auto* rep : {&total, &ctx})
        for (const auto& [name, t] : rep->tallies)
          tallies[name] = {{"checked", t.checked},
                           {"triggered", t.triggered},
                           {"violations", t.violations}};
      json examples = total.examples;
      for (const auto& e : ctx.examples)
        examples.push_back(e);
      emit({{"models", a.models}, {"violations", bad}, {"tallies", tallies},
            {"examples", examples}});
    }
    else
    {
      std::cout << total.summary();
      if (!a.mutate)
        std::cout << ctx.summary();
    }
    return bad == 0 ? kOk : kViolation;
  }

  struct UnravelArgs
  {
    std::string model, formula, dialect = "plain", trace;
    std::uint32_t depth = 4;
    std::size_t budget = 20000;
  };

  int cmd_unravel(const UnravelArgs& a)
  {
    TransitionSystem ts = load_system_file(a.model);
    UnravelOptions opts;
    opts.dialect = parse_dialect(a.dialect);
    opts.depth = a.depth;
    opts.node_budget = a.budget;
    Formula f = parse_formula(a.formula, opts.dialect);
    UnravelResult res = unravel(ts, f, opts);
    Tableau& t = *res.tableau;
    TruthReport tr = verify_truth_prefix(t);
    MonitorReport mr = monitor_eventualities(t);
    if (!a.trace.empty())
    {
      std::ofstream out(a.trace);
      if (!out)
        throw UsageError("cannot write " + a.trace);
      out << tableau_trace_json(t);
    }
    bool ok = res.violations.empty() && tr.ok() && mr.ok();
    std::vector<std::string> wf;
    for (const auto& v : res.violations)
      wf.push_back(v.to_string());
    if (g_json)
      emit({{"formula", to_string(t.root_formula())},
            {"nodes", t.size()},
            {"depth", res.depth_reached},
            {"budget_hit", res.budget_hit},
            {"closure_size", t.gamma0().size()},
            {"well_formedness_violations", wf},
            {"truth", {{"obligations", tr.obligations},
                       {"verified", tr.verified},
                       {"deferred", tr.deferred},
                       {"failures", tr.failures},
                       {"successor_failures", tr.successor_failures}}},
            {"monitor", {{"branches", mr.branches},
                         {"eu_extinguished", mr.eu_extinguished},
                         {"eu_pending", mr.eu_pending},
                         {"af_extinguished", mr.af_extinguished},
                         {"af_frozen_tail", mr.af_frozen_tail},
                         {"af_pending", mr.af_pending},
                         {"violations", mr.violations}}},
            {"ok", ok}});
    else
    {
      std::cout << "root formula " << to_string(t.root_formula()) << "\n";
      std::cout << "closure " << t.gamma0().size() << ", nodes " << t.size() << ", depth "
                << res.depth_reached << (res.budget_hit ? " (node budget hit)" : "") << "\n";
      std::cout << "well-formedness: " << (wf.empty() ? "ok" : "violated");
      for (const auto& w : wf)
        std::cout << " " << w;
      std::cout << "\n" << tr.summary() << mr.summary();
    }
    return ok ? kOk : kViolation;
  }

  struct AutArgs
  {
    std::string aut, model;
  };

  int cmd_accepts(const AutArgs& a)
  {
    Automaton aut = load_automaton_file(a.aut);
    auto* pa = std::get_if<ParityTreeAutomaton>(&aut);
    if (!pa)
      throw UsageError("accepts needs a parity tree automaton");
    TransitionSystem gen = load_system_file(a.model);
    AcceptanceResult res = accepts_regular(*pa, gen);
    if (g_json)
    {
      json choice = json::array();
      for (const auto& [pv, t] : res.choice)
      {
        const auto& tr = pa->delta[t];
        choice.push_back({{"state", pv.first},
                          {"automaton_state", pa->states[pv.second]},
                          {"left", pa->states[tr.left]},
                          {"right", pa->states[tr.right]}});
      }
      emit({{"accepted", res.accepted}, {"game_vertices", res.game_vertices},
            {"strategy", choice}});
    }
    else
    {
      std::cout << (res.accepted ? "accepted" : "rejected") << " (" << res.game_vertices
                << " game vertices)\n";
      for (const auto& [pv, t] : res.choice)
      {
        const auto& tr = pa->delta[t];
        std::cout << "  s" << pv.first << " " << pa->states[pv.second] << " -> "
                  << pa->states[tr.left] << " " << pa->states[tr.right] << "\n";
      }
    }
    return kOk;
  }

  int cmd_acc_term(const AutArgs& a)
  {
    Automaton aut = load_automaton_file(a.aut);
    AccTerm t = std::visit(
        [](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ModalAutomaton>)
            return acc_parts_modal(x);
          else
            return acc_parts_binary(x);
        },
        aut);
    if (g_json)
      emit({{"acc1", to_string(t.acc1)},
            {"acc2", to_string(t.acc2)},
            {"acc3", to_string(t.acc3)},
            {"acc", to_string(t.combined())}});
    else
      std::cout << "acc1 " << to_string(t.acc1) << "\nacc2 " << to_string(t.acc2) << "\nacc3 "
                << to_string(t.acc3) << "\nacc  " << to_string(t.combined()) << "\n";
    return kOk;
  }

  struct FormulaArgs
  {
    std::string formula, dialect = "binary";
  };

  int cmd_to_mso(const FormulaArgs& a)
  {
    bool s2s = a.dialect == "s2s";
    if (!s2s && a.dialect != "plain" && a.dialect != "binary")
      throw UsageError("dialect must be plain or s2s");
    Formula f = parse_formula(a.formula);
    MSOFormula m = standard_translation(f, s2s);
    if (g_json)
      emit({{"formula", to_string(f)}, {"mso", to_string(m)},
            {"quantifiers", m.quantifier_count()}});
    else
      std::cout << to_string(m) << "\n";
    return kOk;
  }

  struct MsoArgs
  {
    std::string model, mso;
    std::vector<std::string> assign;
  };

  int cmd_mso_eval(const MsoArgs& a)
  {
    TransitionSystem ts = load_system_file(a.model);
    MSOFormula f = parse_mso(a.mso);
    std::map<std::string, NodeSet, std::less<>> env;
    for (const auto& item : a.assign)
    {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw UsageError("assignment must look like name=0,2: " + item);
      NodeSet s = ts.empty_set();
      std::string rest = item.substr(eq + 1);
      std::size_t start = 0;
      while (start < rest.size())
      {
        auto comma = rest.find(',', start);
        std::string tok = rest.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty())
          s.set(parse_state(tok, ts));
        if (comma == std::string::npos)
          break;
        start = comma + 1;
      }
      env[item.substr(0, eq)] = s;
    }
    bool v = mso_eval(f, ts, env);
    if (g_json)
      emit({{"mso", to_string(f)}, {"value", v}});
    else
      std::cout << (v ? "true" : "false") << "\n";
    return kOk;
  }

  int cmd_nnf(const FormulaArgs& a)
  {
    Formula f = parse_formula(a.formula);
    Formula n = nnf(f);
    if (g_json)
      emit({{"formula", to_string(f)}, {"nnf", to_string(n)}});
    else
      std::cout << to_string(n) << "\n";
    return kOk;
  }

  int cmd_closure(const FormulaArgs& a)
  {
    Formula f = nnf(parse_formula(a.formula));
    Dialect d = a.dialect.empty() ? required_dialect(f) : parse_dialect(a.dialect);
    if (!fits_dialect(f, d))
      throw UsageError(std::string("formula does not fit the ") + dialect_name(d) + " dialect");
    Formula seed[] = {f};
    ClosureSet c = fischer_ladner_closure(seed, d);
    PrintOptions po;
    po.explicit_context = true;
    if (g_json)
    {
      json members = json::array();
      for (Formula m : c.members)
        members.push_back({{"formula", to_string(m, po)}, {"rule", c.provenance.at(m)}});
      emit({{"seed", to_string(f)}, {"size", c.size()}, {"bound", c.bound},
            {"members", members}});
    }
    else
      for (Formula m : c.members)
        std::cout << to_string(m, po) << "\n";
    return kOk;
  }

  int cmd_selftest(const SelftestOptions& opts)
  {
    SelftestReport rep = run_selftest(opts);
    std::cout << (g_json ? rep.json() : rep.text());
    return rep.ok() ? kOk : kViolation;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"fair CTL toolkit: model checking, axioms, tableaux, automata"};
  app.set_version_flag("--version", kVersion);
  app.add_flag("--json", g_json, "JSON output");
  app.require_subcommand(1);
  app.fallthrough();

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "Evaluate a formula on a model");
  c_check->add_option("--model", check.model, "Model file")->required();
  c_check->add_option("--formula", check.formula, "Formula")->required();
  c_check->add_option("--at", check.at, "Report only whether the formula holds at this state");

  AxiomArgs ax;
  auto* c_ax = app.add_subcommand("axioms", "Check the axioms on random or given models");
  c_ax->add_option("--states", ax.states, "States per random model")->check(CLI::Range(1, 12));
  c_ax->add_option("--samples", ax.samples, "Sampled triples on larger models");
  c_ax->add_option("--models", ax.models, "Number of models");
  c_ax->add_option("--props", ax.props, "Propositions per random model")->check(CLI::Range(0, 4));
  c_ax->add_option("--seed", ax.seed, "Random seed");
  c_ax->add_option("--model", ax.model, "Use this model instead of random ones");
  c_ax->add_flag("--mutate-eg", ax.mutate, "Compute EG as a least fixpoint (the check should fail)");

  UnravelArgs un;
  auto* c_un = app.add_subcommand("unravel", "Build and check a partial tableau");
  c_un->add_option("--model", un.model, "Model file")->required();
  c_un->add_option("--formula", un.formula, "Formula")->required();
  c_un->add_option("--depth", un.depth, "Rounds of unravelling");
  c_un->add_option("--dialect", un.dialect, "plain, rooted or binary");
  c_un->add_option("--budget", un.budget, "Node budget");
  c_un->add_option("--trace", un.trace, "Write a JSON trace here");

  AutArgs acc;
  auto* c_acc = app.add_subcommand("accepts", "Acceptance of a regular binary tree");
  c_acc->add_option("--aut", acc.aut, "Automaton file")->required();
  c_acc->add_option("--model", acc.model, "Binary generator model")->required();

  AutArgs term;
  auto* c_term = app.add_subcommand("acc-term", "Print the acceptance term of an automaton");
  c_term->add_option("--aut", term.aut, "Automaton file")->required();

  FormulaArgs mso;
  auto* c_mso = app.add_subcommand("to-mso", "Standard translation into MSO");
  c_mso->add_option("--formula", mso.formula, "Formula")->required();
  mso.dialect = "plain";
  c_mso->add_option("--dialect", mso.dialect, "plain or s2s");

  MsoArgs me;
  auto* c_me = app.add_subcommand("mso-eval", "Evaluate an MSO sentence on a model");
  c_me->add_option("--model", me.model, "Model file")->required();
  c_me->add_option("--mso", me.mso, "MSO formula")->required();
  c_me->add_option("--assign", me.assign, "Free variable, e.g. p=0,2")->allow_extra_args(false);

  FormulaArgs nf;
  auto* c_nnf = app.add_subcommand("nnf", "Negation normal form");
  c_nnf->add_option("--formula", nf.formula, "Formula")->required();

  FormulaArgs cl;
  cl.dialect.clear();
  auto* c_cl = app.add_subcommand("closure", "Fischer-Ladner closure of a formula");
  c_cl->add_option("--formula", cl.formula, "Formula")->required();
  c_cl->add_option("--dialect", cl.dialect, "plain, rooted or binary");

  SelftestOptions st;
  auto* c_st = app.add_subcommand("selftest", "Run the property suite");
  c_st->add_option("--seed", st.seed, "Random seed");
  c_st->add_option("--samples", st.samples, "Sample count (criteria keep their minimums)");
  c_st->add_option("--criteria", st.only, "Run only these criteria")->delimiter(',');

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try
  {
    if (*c_check)
      return cmd_check(check);
    if (*c_ax)
      return cmd_axioms(ax);
    if (*c_un)
      return cmd_unravel(un);
    if (*c_acc)
      return cmd_accepts(acc);
    if (*c_term)
      return cmd_acc_term(term);
    if (*c_mso)
      return cmd_to_mso(mso);
    if (*c_me)
      return cmd_mso_eval(me);
    if (*c_nnf)
      return cmd_nnf(nf);
    if (*c_cl)
      return cmd_closure(cl);
    if (*c_st)
      return cmd_selftest(st);
  }
  catch (const std::exception& e)
  {
    std::cerr << "fairctl: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

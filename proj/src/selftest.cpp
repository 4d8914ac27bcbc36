#include "fairctl/selftest.hpp"

#include "fairctl/automata.hpp"
#include "fairctl/axioms.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/fo.hpp"
#include "fairctl/mso.hpp"
#include "fairctl/random.hpp"
#include "fairctl/tableau.hpp"
#include "fairctl/translate.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace fairctl
{

  namespace
  {
    constexpr std::size_t kMaxExamples = 5;

    // Counts problems and keeps the first few.
    struct Problems
    {
      std::size_t count = 0;
      std::vector<std::string> shown;

      void add(std::string what)
      {
        if (shown.size() < kMaxExamples)
          shown.push_back(std::move(what));
        ++count;
      }
    };

    Rng criterion_rng(const SelftestOptions& opts, int id)
    {
      return Rng(opts.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(id));
    }

    CriterionResult finish(int id, std::string title, std::string counts, const Problems& p)
    {
      CriterionResult r;
      r.id = id;
      r.title = std::move(title);
      r.pass = p.count == 0;
      r.details.push_back(std::move(counts));
      r.details.insert(r.details.end(), p.shown.begin(), p.shown.end());
      return r;
    }

    std::string describe(const TransitionSystem& ts) { return save_system(ts); }

    // ------------------------------------------------------------------ 1

    CriterionResult semantics_oracle(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 1);
      std::size_t systems = std::max<std::size_t>(500, opts.samples);
      std::size_t comparisons = 0;
      Problems bad;
      for (std::size_t i = 0; i < systems; ++i)
      {
        std::size_t n = 1 + rng.below(6);
        std::size_t k = 1 + rng.below(3);
        TransitionSystem ts = random_system(rng, n, k);
        ComplexAlgebra alg(ts);
        std::vector<NodeSet> pool{ts.empty_set(), ts.full_set()};
        for (const auto& p : ts.props())
          pool.push_back(ts.extension(p));
        for (int j = 0; j < 3; ++j)
          pool.push_back(rng.subset(n));
        for (const auto& a : pool)
          for (const auto& b : pool)
          {
            auto cmp = [&](const char* op, const NodeSet& got, const NodeSet& want) {
              ++comparisons;
              if (got != want)
                bad.add(std::string(op) + " a=" + format_set(a) + " b=" + format_set(b) +
                        ": fixpoint " + format_set(got) + ", paths " + format_set(want) +
                        " on\n" + describe(ts));
            };
            cmp("EU", alg.eu(a, b), brute_force_eu(ts, a, b));
            cmp("EG", alg.eg(a, b), brute_force_eg(ts, a, b));
            cmp("AR", alg.ar(a, b), brute_force_ar(ts, a, b));
            cmp("AF", alg.af(a, b), brute_force_af(ts, a, b));
          }
        // The formula evaluator goes through the same algebra; check it end to end.
        const auto& props = ts.props();
        Formula p = Formula::var(props[0]), q = Formula::var(props.back());
        Evaluator ev(ts);
        const NodeSet& P = ts.extension(props[0]);
        const NodeSet& Q = ts.extension(props.back());
        auto cmpf = [&](Formula f, const NodeSet& want) {
          ++comparisons;
          if (ev.eval(f) != want)
            bad.add(to_string(f) + ": evaluator " + format_set(ev.eval(f)) + ", paths " +
                    format_set(want) + " on\n" + describe(ts));
        };
        cmpf(Formula::eu(p, q), brute_force_eu(ts, P, Q));
        cmpf(Formula::eg(p, q), brute_force_eg(ts, P, Q));
        cmpf(Formula::ar(p, q), brute_force_ar(ts, P, Q));
        cmpf(Formula::af(p, q), brute_force_af(ts, P, Q));
      }
      return finish(1, "semantics oracle",
                    std::to_string(systems) + " systems, " + std::to_string(comparisons) +
                        " set comparisons, " + std::to_string(bad.count) + " mismatches",
                    bad);
    }

    // ------------------------------------------------------------------ 2

    TransitionSystem two_cycle()
    {
      TransitionSystem ts(2);
      ts.add_prop("p");
      ts.add_edge(0, 1);
      ts.add_edge(1, 0);
      ts.set_colour(1, "p");
      return ts;
    }

    TransitionSystem model_for(Rng& rng, std::size_t i, std::size_t max_states, std::size_t props)
    {
      std::size_t n = 2 + rng.below(max_states - 1);
      switch (i % 3)
      {
        case 0:
          return random_system(rng, n, props);
        case 1:
          return random_rooted_system(rng, n, props);
        default:
          return random_binary_system(rng, n, props, rng.chance(0.5));
      }
    }

    CriterionResult axiom_suite(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 2);
      std::size_t models = std::max<std::size_t>(200, opts.samples);
      AxiomReport total;
      std::size_t exhaustive = 0;
      Problems bad;
      for (std::size_t i = 0; i < models; ++i)
      {
        TransitionSystem ts = model_for(rng, i, 8, 1 + rng.below(2));
        ComplexAlgebra alg(ts);
        AxiomReport rep = check_axioms(alg, rng);
        exhaustive += rep.exhaustive;
        for (const auto& e : rep.examples)
          bad.add(e + " on\n" + describe(ts));
        bad.count += rep.violations() - std::min(rep.violations(), rep.examples.size());
        total.merge(rep);
      }
      // The check must notice an evaluator that takes EG as a least fixpoint.
      TransitionSystem cyc = two_cycle();
      ComplexAlgebra mutated(cyc, ComplexAlgebra::Mutation::EgLeastFixpoint);
      Rng mrng(opts.seed);
      AxiomReport mrep = check_axioms(mutated, mrng);
      std::size_t caught = mrep.tallies.count("EGmax") ? mrep.tallies.at("EGmax").violations : 0;
      if (caught == 0)
        bad.add("EG computed as a least fixpoint passed the EGmax check on the 2-cycle");

      std::size_t names = 0;
      for (const auto& [name, t] : total.tallies)
        names += t.checked > 0;
      return finish(2, "axiom suite",
                    std::to_string(models) + " models (" + std::to_string(exhaustive) +
                        " exhaustive), " + std::to_string(names) + " axioms, " +
                        std::to_string(total.triples) + " triples, " +
                        std::to_string(total.violations()) + " violations; mutated EG caught " +
                        std::to_string(caught) + " times",
                    bad);
    }

    // ------------------------------------------------------------------ 3

    CriterionResult contextual(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 3);
      std::size_t models = std::max<std::size_t>(200, opts.samples);
      AxiomReport total;
      std::size_t exhaustive = 0;
      Problems bad;
      for (std::size_t i = 0; i < models; ++i)
      {
        TransitionSystem ts = model_for(rng, i, 7, 1);
        AxiomReport rep = check_contextual(ts, rng);
        exhaustive += rep.exhaustive;
        for (const auto& e : rep.examples)
          bad.add(e + " on\n" + describe(ts));
        bad.count += rep.violations() - std::min(rep.violations(), rep.examples.size());
        total.merge(rep);
      }
      return finish(3, "contextual operators",
                    std::to_string(models) + " models (" + std::to_string(exhaustive) +
                        " exhaustive), " + std::to_string(total.triples) + " valuations, " +
                        std::to_string(total.violations()) + " violations",
                    bad);
    }

    // ------------------------------------------------------------------ 4

    Dialect dialect_of(std::size_t i)
    {
      static constexpr Dialect ds[] = {Dialect::Plain, Dialect::Rooted, Dialect::Binary};
      return ds[i % 3];
    }

    TransitionSystem system_for(Rng& rng, Dialect d, std::size_t n, std::size_t props)
    {
      switch (d)
      {
        case Dialect::Plain:
          return random_system(rng, n, props);
        case Dialect::Rooted:
          return random_rooted_system(rng, std::max<std::size_t>(n, 2), props);
        case Dialect::Binary:
          break;
      }
      return random_binary_system(rng, std::max<std::size_t>(n, 2), props, true);
    }

    CriterionResult nnf_soundness(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 4);
      std::size_t count = std::max<std::size_t>(300, opts.samples);
      Problems bad;
      for (std::size_t i = 0; i < count; ++i)
      {
        Dialect d = dialect_of(i);
        std::size_t props = 1 + rng.below(3);
        TransitionSystem ts = system_for(rng, d, 1 + rng.below(6), props);
        FormulaGen gen{prop_names(props), d, true, 1000};
        Formula f = random_formula(rng, gen, 1 + rng.below(5));
        Formula n = nnf(f);
        Formula x = expand_derived(f);
        Evaluator ev(ts);
        NodeSet want = ev.eval(f);
        if (!is_nnf(n))
          bad.add("nnf(" + to_string(f) + ") = " + to_string(n) + " is not in NNF");
        if (ev.eval(n) != want)
          bad.add("nnf changes " + to_string(f) + ": " + format_set(want) + " vs " +
                  format_set(ev.eval(n)) + " on\n" + describe(ts));
        if (ev.eval(x) != want)
          bad.add("expand_derived changes " + to_string(f) + ": " + format_set(want) + " vs " +
                  format_set(ev.eval(x)) + " on\n" + describe(ts));
        if (ev.eval(formal_negation(f)) != ~want)
          bad.add("formal negation of " + to_string(f) + " is not the complement on\n" +
                  describe(ts));
      }
      return finish(4, "nnf and derived operators",
                    std::to_string(count) + " formulas, " + std::to_string(bad.count) +
                        " violations",
                    bad);
    }

    // ------------------------------------------------------------------ 5

    CriterionResult tableau_integrity(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 5);
      std::size_t count = std::max<std::size_t>(50, opts.samples / 4);
      constexpr std::uint32_t depth = 8;
      constexpr std::size_t budget = 20000;
      Problems bad;
      std::size_t per_dialect[3] = {0, 0, 0}, nodes = 0, budget_hits = 0, rounds = 0;
      std::size_t verified = 0, deferred = 0, eu_done = 0, eu_open = 0, af_done = 0,
                  af_frozen = 0, af_open = 0, rooted = 0;
      for (std::size_t i = 0; i < count; ++i)
      {
        Dialect d = dialect_of(i);
        for (std::size_t attempt = 0;; ++attempt)
        {
          std::size_t props = 1 + rng.below(2);
          TransitionSystem ts = system_for(rng, d, 2 + rng.below(4), props);
          FormulaGen gen{prop_names(props), d, true, 3};
          Formula f = random_formula(rng, gen, 2 + rng.below(3));
          if (d == Dialect::Plain && f.uses_root())
            continue;
          try
          {
            Tableau probe(ts, f, d);
          }
          catch (const TableauError&)
          {
            if (attempt < 1000)
              continue;
            bad.add("no satisfiable instance found for dialect " + std::string(dialect_name(d)));
            break;
          }
          std::string where = "instance " + std::to_string(i) + " (" + dialect_name(d) + ") " +
                              to_string(f) + " on\n" + describe(ts);
          try
          {
            UnravelOptions uo;
            uo.dialect = d;
            uo.depth = depth;
            uo.node_budget = budget;
            UnravelResult res = unravel(ts, f, uo);
            Tableau& t = *res.tableau;
            ++per_dialect[static_cast<int>(d)];
            nodes += t.size();
            budget_hits += res.budget_hit;
            rounds += res.rounds_checked;
            if (!res.violations.empty())
            {
              std::string vs;
              for (std::size_t j = 0; j < res.violations.size() && j < 5; ++j)
                vs += res.violations[j].to_string();
              bad.add("well-formedness " + vs + " in " + where);
            }
            TruthReport tr = verify_truth_prefix(t);
            verified += tr.verified;
            deferred += tr.deferred;
            if (!tr.ok())
              bad.add("truth prefix in " + where + "\n" + tr.summary());
            if (t.rooted())
              ++rooted;
            MonitorReport mr = monitor_eventualities(t);
            eu_done += mr.eu_extinguished;
            eu_open += mr.eu_pending;
            af_done += mr.af_extinguished;
            af_frozen += mr.af_frozen_tail;
            af_open += mr.af_pending;
            if (!mr.ok())
              bad.add("eventuality monitor in " + where + "\n" + mr.summary());
          }
          catch (const std::exception& e)
          {
            bad.add(std::string("unravelling failed: ") + e.what() + " in " + where);
          }
          break;
        }
      }
      std::ostringstream counts;
      counts << count << " instances (plain " << per_dialect[0] << ", rooted " << per_dialect[1]
             << ", binary " << per_dialect[2] << "), depth " << depth << ", " << nodes
             << " nodes, " << budget_hits << " hit the node budget, " << rounds
             << " rounds checked; obligations verified " << verified << ", deferred "
             << deferred << "; EU extinguished " << eu_done << ", open " << eu_open
             << "; AF extinguished " << af_done << ", frozen " << af_frozen << ", open "
             << af_open << "; rooted runs " << rooted;
      return finish(5, "tableau integrity", counts.str(), bad);
    }

    // ------------------------------------------------------------------ 6

    FOFormula random_qf(Rng& rng, const std::vector<Formula>& terms, std::size_t depth)
    {
      if (depth == 0 || rng.chance(0.25))
      {
        Formula a = terms[rng.below(terms.size())];
        std::size_t pick = rng.below(terms.size() + 2);
        Formula b = pick < terms.size() ? terms[pick]
                    : pick == terms.size() ? Formula::top()
                                           : Formula::bottom();
        return FOFormula::eq(a, b);
      }
      switch (rng.below(4))
      {
        case 0:
          return FOFormula::lnot(random_qf(rng, terms, depth - 1));
        case 1:
        {
          FOFormula a = random_qf(rng, terms, depth - 1);
          return FOFormula::land(a, random_qf(rng, terms, depth - 1));
        }
        case 2:
        {
          FOFormula a = random_qf(rng, terms, depth - 1);
          return FOFormula::lor(a, random_qf(rng, terms, depth - 1));
        }
        default:
        {
          FOFormula a = random_qf(rng, terms, depth - 1);
          return FOFormula::implies(a, random_qf(rng, terms, depth - 1));
        }
      }
    }

    CriterionResult qf_reduction(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 6);
      std::size_t count = std::max<std::size_t>(200, opts.samples);
      Problems bad;
      std::size_t truths = 0;
      for (std::size_t i = 0; i < count; ++i)
      {
        std::size_t props = 1 + rng.below(2);
        TransitionSystem ts = random_rooted_system(rng, 2 + rng.below(4), props);
        FormulaGen gen{prop_names(props), Dialect::Rooted, true, 2};
        std::vector<Formula> terms;
        std::size_t k = 1 + rng.below(3);
        for (std::size_t j = 0; j < k; ++j)
          terms.push_back(random_formula(rng, gen, 2));
        FOFormula phi = random_qf(rng, terms, 3);
        bool want = eval_qf(phi, ts);
        bool eq = eval(qf_to_equation(phi), ts).all();
        bool nonbot = eval(qf_to_nonbot(phi), ts).any();
        truths += want;
        if (eq != want || nonbot != want)
          bad.add(to_string(phi) + ": direct " + std::to_string(want) + ", t = true " +
                  std::to_string(eq) + ", t' != false " + std::to_string(nonbot) + " on\n" +
                  describe(ts));
      }
      return finish(6, "quantifier-free reduction",
                    std::to_string(count) + " formulas (" + std::to_string(truths) + " true), " +
                        std::to_string(bad.count) + " violations",
                    bad);
    }

    // ------------------------------------------------------------------ 7

    CriterionResult standard_translation_oracle(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 7);
      std::size_t count = std::max<std::size_t>(200, opts.samples);
      Problems bad;
      std::size_t points = 0, binary = 0;
      for (std::size_t i = 0; i < count; ++i)
      {
        bool s2s = i % 4 == 3;
        std::size_t props = 1 + rng.below(2);
        std::size_t n = 1 + rng.below(5);
        TransitionSystem ts = s2s ? random_binary_system(rng, std::max<std::size_t>(n, 2),
                                                         props, false)
                                  : random_system(rng, n, props);
        FormulaGen gen{prop_names(props), s2s ? Dialect::Binary : Dialect::Plain, true, 2};
        Formula t;
        do
          t = random_formula(rng, gen, 1 + rng.below(3));
        while (t.uses_root());
        binary += s2s;
        MSOFormula m = standard_translation(t, s2s);
        NodeSet want = eval(t, ts);
        for (State s = 0; s < ts.size(); ++s)
        {
          NodeSet at(ts.size());
          at.set(s);
          ++points;
          bool got = mso_eval(m, ts, {{"v", at}});
          if (got != want[s])
            bad.add(to_string(t) + " at s" + std::to_string(s) + ": eval " +
                    std::to_string(want[s]) + ", mso " + std::to_string(got) + " on\n" +
                    describe(ts));
        }
      }
      return finish(7, "standard translation",
                    std::to_string(count) + " terms (" + std::to_string(binary) +
                        " with f0/f1), " + std::to_string(points) + " points, " +
                        std::to_string(bad.count) + " mismatches",
                    bad);
    }

    // ------------------------------------------------------------------ 8

    CriterionResult automata_cross(const SelftestOptions& opts)
    {
      Rng rng = criterion_rng(opts, 8);
      std::size_t count = std::max<std::size_t>(30, opts.samples / 4);
      constexpr std::size_t cap = 200000;
      Problems bad;
      std::size_t accepted = 0, rejected = 0, refuted = 0, too_large = 0, labellings = 0;
      for (std::size_t i = 0; i < count; ++i)
      {
        AutomatonGen ag;
        ag.props = 1 + rng.below(2);
        ag.states = 1 + rng.below(3);
        ag.max_priority = 3;
        ag.dead = i % 2 == 0 ? 0.0 : 0.15;
        ParityTreeAutomaton aut = random_parity_automaton(rng, ag);
        TransitionSystem gen = random_binary_system(rng, 1 + rng.below(3), ag.props, false);
        std::string where = "automaton\n" + save_automaton(aut) + "generator\n" + describe(gen);
        AcceptanceResult ar = accepts_regular(aut, gen);
        if (ar.accepted)
        {
          ++accepted;
          TransitionSystem prod = build_product(aut, gen, ar.choice);
          NodeSet acc = eval(compile_acc_binary(aut), prod);
          if (!acc.all())
            bad.add("accepted but acc holds only on " + format_set(acc) + " of the product for\n" +
                    where);
          UnravelTree tree = unravel_to_depth(gen, 6);
          std::vector<Lasso> lassos;
          auto run = induced_run(aut, gen, tree, ar.choice, &lassos);
          RunReport rr = check_run_prefix(aut, gen, tree, run, lassos);
          if (!rr.ok())
            bad.add("induced run rejected:\n" + rr.summary() + where);
        }
        else
        {
          ++rejected;
          std::size_t reachable = gen.size() * aut.states.size();
          RefutationResult rr = search_labellings(aut, gen, cap);
          labellings += rr.labellings_checked;
          if (rr.witness_found)
            bad.add("rejected but a labelling satisfies acc for\n" + where);
          else if (rr.exhausted)
            ++refuted;
          else if (reachable <= 6)
            bad.add("labelling search not exhausted on a small product for\n" + where);
          else
            ++too_large;
        }
      }
      return finish(8, "automata and acceptance terms",
                    std::to_string(count) + " automata: " + std::to_string(accepted) +
                        " accepted, " + std::to_string(rejected) + " rejected (" +
                        std::to_string(refuted) + " refuted exhaustively, " +
                        std::to_string(too_large) + " over the search cap), " +
                        std::to_string(labellings) + " labellings checked, " +
                        std::to_string(bad.count) + " violations",
                    bad);
    }

    CriterionResult run_base(int id, const SelftestOptions& opts)
    {
      switch (id)
      {
        case 1:
          return semantics_oracle(opts);
        case 2:
          return axiom_suite(opts);
        case 3:
          return contextual(opts);
        case 4:
          return nnf_soundness(opts);
        case 5:
          return tableau_integrity(opts);
        case 6:
          return qf_reduction(opts);
        case 7:
          return standard_translation_oracle(opts);
        case 8:
          return automata_cross(opts);
      }
      throw std::invalid_argument("no criterion " + std::to_string(id));
    }

    std::vector<int> selected(const SelftestOptions& opts)
    {
      std::vector<int> ids = opts.only;
      if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i)
          ids.push_back(i);
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      return ids;
    }

    std::string body(const std::vector<CriterionResult>& rs)
    {
      std::string out;
      for (const auto& r : rs)
      {
        out += r.line() + "\n";
        for (std::size_t i = 1; i < r.details.size(); ++i)
          out += "    " + r.details[i] + "\n";
      }
      return out;
    }

    CriterionResult determinism(const SelftestOptions& opts,
                                const std::vector<CriterionResult>* first)
    {
      std::vector<CriterionResult> a, b;
      for (int id = 1; id < kCriteria; ++id)
      {
        if (first)
        {
          auto it = std::find_if(first->begin(), first->end(),
                                 [&](const CriterionResult& r) { return r.id == id; });
          a.push_back(it != first->end() ? *it : run_base(id, opts));
        }
        else
          a.push_back(run_base(id, opts));
        b.push_back(run_base(id, opts));
      }
      std::string ta = body(a), tb = body(b);
      Problems bad;
      if (ta != tb)
      {
        std::size_t k = 0;
        while (k < ta.size() && k < tb.size() && ta[k] == tb[k])
          ++k;
        bad.add("reports differ at byte " + std::to_string(k));
      }
      return finish(9, "determinism",
                    "criteria 1-8 run twice with seed " + std::to_string(opts.seed) + ", " +
                        std::to_string(ta.size()) + " report bytes, " +
                        (ta == tb ? "identical" : "different"),
                    bad);
    }
  }

  std::string CriterionResult::line() const
  {
    std::string out = "criterion " + std::to_string(id) + " " + (pass ? "PASS" : "FAIL") +
                      " " + title;
    if (!details.empty())
      out += ": " + details.front();
    return out;
  }

  bool SelftestReport::ok() const
  {
    return std::all_of(criteria.begin(), criteria.end(),
                       [](const CriterionResult& r) { return r.pass; });
  }

  std::string SelftestReport::text() const
  {
    std::size_t passed = 0;
    for (const auto& r : criteria)
      passed += r.pass;
    return body(criteria) + std::to_string(passed) + "/" + std::to_string(criteria.size()) +
           " criteria passed\n";
  }

  std::string SelftestReport::json() const
  {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : criteria)
      arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}});
    nlohmann::ordered_json out = {{"ok", ok()}, {"criteria", arr}};
    return out.dump(1) + "\n";
  }

  CriterionResult run_criterion(int id, const SelftestOptions& opts)
  {
    if (id == 9)
      return determinism(opts, nullptr);
    return run_base(id, opts);
  }

  SelftestReport run_selftest(const SelftestOptions& opts)
  {
    SelftestReport rep;
    for (int id : selected(opts))
    {
      if (id < 1 || id > kCriteria)
        throw std::invalid_argument("no criterion " + std::to_string(id));
      if (id == 9)
        rep.criteria.push_back(determinism(opts, &rep.criteria));
      else
        rep.criteria.push_back(run_base(id, opts));
    }
    return rep;
  }

} // namespace fairctl

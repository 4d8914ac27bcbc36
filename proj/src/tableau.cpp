#include "fairctl/tableau.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace fairctl
{

  char status_char(Status s)
  {
    switch (s)
    {
      case Status::Active:
        return 'a';
      case Status::Frozen:
        return 'f';
      case Status::Extinguished:
        return 'e';
    }
    return '?';
  }

  namespace
  {
    Formula eventuality(Op op, Formula a, Formula b, Formula c)
    {
      return op == Op::EU ? Formula::eu(a, b, c) : Formula::af(a, b, c);
    }

    FormulaSet with(const FormulaSet& base, Formula f)
    {
      FormulaLess less;
      auto it = std::lower_bound(base->begin(), base->end(), f, less);
      if (it != base->end() && *it == f)
        return base;
      auto out = std::make_shared<std::vector<Formula>>(*base);
      out->insert(out->begin() + (it - base->begin()), f);
      return out;
    }

    bool member(const std::vector<Formula>& set, Formula f)
    {
      return std::binary_search(set.begin(), set.end(), f, FormulaLess{});
    }
  }

  Formula TableauEntry::strengthened() const
  {
    return eventuality(theta.op(), phi(), psi(), chi_prime);
  }

  std::string WfViolation::to_string() const
  {
    return "(s" + std::to_string(node) + "," + std::to_string(index) + "," + condition + ")";
  }

  std::optional<State> sat_in(Formula f, const TransitionSystem& ts, const Valuation& v)
  {
    NodeSet s = eval(f, ts, v);
    auto first = s.find_first();
    if (first == NodeSet::npos)
      return std::nullopt;
    return static_cast<State>(first);
  }

  Tableau::Tableau(const TransitionSystem& ts, Formula phi0, Dialect dialect, Valuation extra)
    : ts_(ts), dialect_(dialect), input_(phi0), ev_eval_(ts, std::move(extra))
  {
    if (!fits_dialect(phi0, dialect))
      throw DialectError(std::string("formula does not fit the ") + dialect_name(dialect) +
                         " dialect");
    if (dialect == Dialect::Binary && !ts.is_binary())
      throw TableauError("the binary dialect needs a system with f0/f1");
    if (dialect == Dialect::Rooted && !ts.has_strict_root())
      throw TableauError("the rooted dialect needs a root without incoming edges");
    rooted_ = dialect == Dialect::Rooted || (dialect == Dialect::Binary && ts.has_strict_root());
    if (!rooted_ && phi0.uses_root())
      throw TableauError("formula uses I but the system has no root without incoming edges");
    Formula f = phi0;
    if (rooted_)
      f = Formula::land(
          Formula::land(Formula::root(), Formula::eu(phi0, Formula::top())),
          Formula::box(Formula::ar(Formula::neg(Formula::root()), Formula::bottom())));
    phi0_ = nnf(f);
    Formula seed[] = {phi0_};
    gamma0_ = fischer_ladner_closure(seed, dialect);
    ev_ = eventualities(gamma0_);
    gamma0_set_ = std::make_shared<const std::vector<Formula>>(gamma0_.members);
    init();
  }

  bool Tableau::holds(Formula f, State s) { return ev_eval_.eval(f)[s]; }

  std::vector<std::uint32_t> Tableau::leaves() const
  {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < nodes_.size(); ++v)
      if (nodes_[v].children.empty())
        out.push_back(v);
    return out;
  }

  std::vector<std::string> Tableau::colour(std::uint32_t v) const
  {
    State a = nodes_[v].alpha;
    std::vector<std::string> out;
    for (const auto& p : ts_.props())
      if (ts_.extension(p)[a])
        out.push_back(p);
    if (rooted_ && ts_.root() && *ts_.root() == a)
      out.push_back("I");
    std::sort(out.begin(), out.end());
    return out;
  }

  void Tableau::init()
  {
    NodeSet sat = ev_eval_.eval(phi0_);
    auto first = sat.find_first();
    if (first == NodeSet::npos)
      throw TableauError("formula is not satisfiable in the given system");
    TableauNode n;
    n.alpha = static_cast<State>(first);
    for (Formula theta : ev_)
      if (holds(theta, n.alpha) && !holds(theta.arg(0), n.alpha))
        n.beta.push_back({theta, Status::Active, gamma0_set_, theta.arg(2)});
    nodes_.push_back(std::move(n));
  }

  bool Tableau::agrees(State a, State b, const std::vector<Formula>& rho)
  {
    if (a == b)
      return true;
    for (Formula g : rho)
    {
      const NodeSet& s = ev_eval_.eval(g);
      if (s[a] != s[b])
        return false;
    }
    return true;
  }

  std::pair<State, Formula> Tableau::jump(State x, const TableauEntry& entry)
  {
    const auto& rho = *entry.rho;
    std::vector<Formula> in;
    for (Formula g : rho)
      if (holds(g, x))
        in.push_back(g);
    Formula gamma = characteristic_formula(in, rho);
    Formula target = eventuality(entry.theta.op(), entry.phi(), entry.psi(),
                                 Formula::land(entry.chi_prime, Formula::neg(gamma)));
    const NodeSet& sat = ev_eval_.eval(target);
    for (State y = 0; y < ts_.size(); ++y)
      if (sat[y] && agrees(x, y, rho))
        return {y, gamma};
    throw TableauError("no jump target from state " + std::to_string(x) + " for " +
                       to_string(entry.theta));
  }

  namespace
  {
    struct ChildSpec
    {
      State alpha;
      std::optional<Formula> lambda;
      std::int8_t dir = -1;
      std::vector<Formula> designated;
    };
  }

  void Tableau::expand(std::uint32_t v)
  {
    const State a = nodes_[v].alpha;
    const std::vector<TableauEntry> beta = nodes_[v].beta;
    const std::size_t len = beta.size();

    std::optional<std::size_t> m;
    for (std::size_t k = 0; k < len; ++k)
      if (beta[k].status == Status::Active)
      {
        m = k;
        break;
      }

    State x = a;
    std::optional<Formula> gamma, chi_new, tau;
    if (m)
    {
      auto [y, g] = jump(a, beta[*m]);
      x = y;
      gamma = g;
      chi_new = Formula::land(beta[*m].chi_prime, Formula::neg(g));
      tau = eventuality(beta[*m].theta.op(), beta[*m].phi(), beta[*m].psi(), *chi_new);
    }
    // The lambda whose successor carries the strengthened EU payload.
    std::optional<Formula> payload_lambda;
    if (m && beta[*m].is_eu())
      payload_lambda = Formula::land(beta[*m].chi(), beta[*m].theta);
    auto carries_payload = [&](State y) { return holds(*chi_new, y) && holds(*tau, y); };

    std::vector<Formula> lambdas;
    for (Formula g : gamma0_.members)
      if (g.is(Op::Diamond) && holds(g, a))
        lambdas.push_back(g.arg(0));

    std::vector<ChildSpec> specs;
    if (dialect_ == Dialect::Binary)
    {
      for (int i = 0; i < 2; ++i)
        specs.push_back({ts_.next(i, x), std::nullopt, static_cast<std::int8_t>(i), {}});
      for (Formula lam : lambdas)
      {
        if (payload_lambda && lam == *payload_lambda)
        {
          int i = carries_payload(specs[0].alpha) ? 0 : carries_payload(specs[1].alpha) ? 1 : -1;
          if (i < 0)
            throw TableauError("no successor of state " + std::to_string(x) +
                               " carries the EU payload");
          specs[static_cast<std::size_t>(i)].designated.push_back(lam);
          continue;
        }
        for (auto& s : specs)
          if (holds(lam, s.alpha))
            s.designated.push_back(lam);
      }
    }
    else
    {
      for (Formula lam : lambdas)
      {
        bool payload = payload_lambda && lam == *payload_lambda;
        std::optional<State> pick;
        for (State y : ts_.successors(x))
          if (payload ? carries_payload(y) : holds(lam, y))
          {
            pick = y;
            break;
          }
        if (!pick)
          throw TableauError("no successor of state " + std::to_string(x) + " satisfies " +
                             to_string(lam));
        specs.push_back({*pick, lam, -1, {}});
      }
    }

    // Context formulas after rule 2, per old position.
    std::vector<Formula> chi_after(len);
    for (std::size_t k = 0; k < len; ++k)
    {
      if (!m || k < *m)
        chi_after[k] = beta[k].chi_prime;
      else if (k == *m)
        chi_after[k] = *chi_new;
      else
        chi_after[k] = beta[k].chi();
    }
    // Relevance set of appended letters: Gamma0, every old relevance set, the
    // current eventualities at the old positions, and the rule-3 formula.
    FormulaSet rho_new;
    {
      std::set<Formula, FormulaLess> acc(gamma0_.members.begin(), gamma0_.members.end());
      for (std::size_t k = 0; k < len; ++k)
      {
        acc.insert(beta[k].rho->begin(), beta[k].rho->end());
        acc.insert(eventuality(beta[k].theta.op(), beta[k].phi(), beta[k].psi(), chi_after[k]));
      }
      if (tau)
        acc.insert(*tau);
      rho_new = std::make_shared<const std::vector<Formula>>(acc.begin(), acc.end());
    }
    // Rule 3 results, shared between children.
    std::map<const void*, FormulaSet> rule3;
    auto extend = [&](const FormulaSet& r) {
      auto it = rule3.find(r.get());
      if (it != rule3.end())
        return it->second;
      FormulaSet out = with(r, *tau);
      rule3.emplace(r.get(), out);
      return out;
    };

    for (const auto& spec : specs)
    {
      const State y = spec.alpha;
      std::vector<TableauEntry> nb = beta;
      // (1)
      for (Formula theta : ev_)
      {
        if (!holds(theta, y))
          continue;
        bool fresh = true;
        for (std::size_t k = 0; k < len && fresh; ++k)
          if (beta[k].theta == theta && beta[k].status != Status::Extinguished)
            fresh = false;
        if (fresh)
          nb.push_back({theta, Status::Active, rho_new, theta.arg(2)});
      }
      // (2)
      for (std::size_t k = 0; k < len; ++k)
        nb[k].chi_prime = chi_after[k];
      // (3)
      if (m)
        for (std::size_t k = *m + 1; k < nb.size(); ++k)
          nb[k].rho = extend(nb[k].rho);
      // (4)
      for (auto& e : nb)
        if (holds(e.phi(), y))
          e.status = Status::Extinguished;
      // (5)
      if (dialect_ == Dialect::Binary)
      {
        std::vector<Formula> again;
        for (std::size_t k = 0; k < len; ++k)
        {
          auto& e = nb[k];
          if (!e.is_eu() || e.status == Status::Extinguished)
            continue;
          Formula lam = Formula::land(e.chi(), e.theta);
          if (std::find(spec.designated.begin(), spec.designated.end(), lam) !=
              spec.designated.end())
            continue;
          e.status = Status::Extinguished;
          if (holds(e.theta, y) && !holds(e.phi(), y))
            again.push_back(e.theta);
        }
        for (Formula theta : again)
          nb.push_back({theta, Status::Active, rho_new, theta.arg(2)});
      }
      else
      {
        for (auto& e : nb)
          if (e.is_eu() && *spec.lambda != Formula::land(e.chi(), e.theta))
            e.status = Status::Extinguished;
      }
      // (6)
      for (auto& e : nb)
        if (!e.is_eu() && e.status == Status::Active && holds(e.psi(), y))
          e.status = Status::Frozen;
      // (7)
      std::size_t below = m ? *m : nb.size();
      for (std::size_t k = 0; k < below; ++k)
      {
        auto& e = nb[k];
        if (!e.is_eu() && e.status == Status::Frozen && !holds(e.phi(), y) &&
            !holds(e.psi(), y))
          e.status = Status::Active;
      }

      TableauNode child;
      child.parent = static_cast<std::int32_t>(v);
      child.depth = nodes_[v].depth + 1;
      child.alpha = y;
      child.beta = std::move(nb);
      child.lambda = spec.lambda;
      child.dir = spec.dir;
      child.designated = spec.designated;
      nodes_.push_back(std::move(child));
      nodes_[v].children.push_back(static_cast<std::uint32_t>(nodes_.size() - 1));
    }
    auto& n = nodes_[v];
    n.expanded = true;
    n.jump = x;
    n.active = m;
    n.gamma = gamma;
  }

  bool Tableau::one_step_unravel(std::size_t node_budget)
  {
    for (std::uint32_t v : leaves())
    {
      if (nodes_.size() >= node_budget)
        return false;
      expand(v);
    }
    return true;
  }

  std::vector<WfViolation> Tableau::well_formed(std::uint32_t from)
  {
    std::vector<WfViolation> out;
    const auto& g0 = gamma0_.members;
    for (std::uint32_t v = from; v < nodes_.size(); ++v)
    {
      const auto& n = nodes_[v];
      State a = n.alpha;
      if (n.parent >= 0)
      {
        const auto& pb = nodes_[static_cast<std::size_t>(n.parent)].beta;
        bool ok = pb.size() <= n.beta.size();
        for (std::size_t k = 0; ok && k < pb.size(); ++k)
          ok = pb[k].theta == n.beta[k].theta;
        if (!ok)
          out.push_back({v, 0, 'a'});
      }
      for (std::size_t k = 0; k < n.beta.size(); ++k)
      {
        const auto& e = n.beta[k];
        auto flag = [&](char c) { out.push_back({v, k + 1, c}); };
        if (holds(e.phi(), a) && e.status != Status::Extinguished)
          flag('b');
        if (!std::includes(e.rho->begin(), e.rho->end(), g0.begin(), g0.end(), FormulaLess{}))
          flag('c');
        if (e.is_eu() && e.status == Status::Frozen)
          flag('d');
        if (!ev_eval_.eval(e.chi_prime).is_subset_of(ev_eval_.eval(e.chi())))
          flag('e');
        for (std::size_t j = 0; j < k; ++j)
          if (!member(*e.rho, n.beta[j].strengthened()))
          {
            flag('f');
            break;
          }
        if (e.status != Status::Extinguished && !holds(e.strengthened(), a))
          flag('g');
      }
    }
    return out;
  }

  UnravelResult unravel(const TransitionSystem& ts, Formula phi0, const UnravelOptions& opts,
                        const Valuation& extra)
  {
    UnravelResult res;
    res.tableau = std::make_unique<Tableau>(ts, phi0, opts.dialect, extra);
    Tableau& t = *res.tableau;
    res.violations = t.well_formed();
    res.rounds_checked = 1;
    for (std::uint32_t r = 1; r <= opts.depth; ++r)
    {
      auto before = static_cast<std::uint32_t>(t.size());
      bool complete = t.one_step_unravel(opts.node_budget);
      if (opts.check_each_round || !complete || r == opts.depth)
      {
        auto v = t.well_formed(before);
        res.violations.insert(res.violations.end(), v.begin(), v.end());
        ++res.rounds_checked;
      }
      if (!complete)
      {
        res.budget_hit = true;
        break;
      }
      res.depth_reached = r;
    }
    return res;
  }

  // ------------------------------------------------------------- verifiers

  namespace
  {
    class PrefixEval
    {
    public:
      explicit PrefixEval(Tableau& t) : t_(t), n_(t.size()) {}

      const std::vector<Truth>& get(Formula f)
      {
        auto it = memo_.find(f);
        if (it != memo_.end())
          return it->second;
        std::vector<Truth> val = compute(f);
        return memo_.emplace(f, std::move(val)).first->second;
      }

    private:
      static Truth lnot(Truth a) { return static_cast<Truth>(2 - static_cast<int>(a)); }

      bool leaf(std::size_t u) const { return t_.node(static_cast<std::uint32_t>(u)).children.empty(); }

      std::vector<Truth> compute(Formula f)
      {
        std::vector<Truth> out(n_, Truth::Unknown);
        switch (f.op())
        {
          case Op::Bot:
            std::fill(out.begin(), out.end(), Truth::False);
            return out;
          case Op::Top:
            std::fill(out.begin(), out.end(), Truth::True);
            return out;
          case Op::Var:
            for (std::size_t u = 0; u < n_; ++u)
              out[u] = t_.holds(f, t_.node(static_cast<std::uint32_t>(u)).alpha) ? Truth::True
                                                                                  : Truth::False;
            return out;
          case Op::Root:
            for (std::size_t u = 0; u < n_; ++u)
              out[u] = u == 0 ? Truth::True : Truth::False;
            return out;
          case Op::Neg:
          {
            const auto& a = get(f.arg(0));
            for (std::size_t u = 0; u < n_; ++u)
              out[u] = lnot(a[u]);
            return out;
          }
          case Op::And:
          case Op::Or:
          {
            std::vector<Truth> a = get(f.arg(0));
            const auto& b = get(f.arg(1));
            for (std::size_t u = 0; u < n_; ++u)
              out[u] = f.is(Op::And) ? std::min(a[u], b[u]) : std::max(a[u], b[u]);
            return out;
          }
          case Op::Diamond:
          case Op::Box:
          {
            const auto& a = get(f.arg(0));
            bool dia = f.is(Op::Diamond);
            for (std::size_t u = 0; u < n_; ++u)
            {
              const auto& ch = t_.node(static_cast<std::uint32_t>(u)).children;
              if (ch.empty())
                continue;
              Truth acc = dia ? Truth::False : Truth::True;
              for (auto c : ch)
                acc = dia ? std::max(acc, a[c]) : std::min(acc, a[c]);
              out[u] = acc;
            }
            return out;
          }
          case Op::X0:
          case Op::X1:
          {
            const auto& a = get(f.arg(0));
            int d = f.is(Op::X0) ? 0 : 1;
            for (std::size_t u = 0; u < n_; ++u)
              for (auto c : t_.node(static_cast<std::uint32_t>(u)).children)
                if (t_.node(c).dir == d)
                  out[u] = a[c];
            return out;
          }
          case Op::EU:
          {
            if (!f.arg(2).is(Op::Top))
              return get(expand_ternary(f));
            std::vector<Truth> a = get(f.arg(0));
            const auto& b = get(f.arg(1));
            std::vector<char> sure(n_, 0), maybe(n_, 0);
            for (std::size_t u = n_; u-- > 0;)
            {
              const auto& ch = t_.node(static_cast<std::uint32_t>(u)).children;
              bool child_sure = false, child_maybe = ch.empty();
              for (auto c : ch)
              {
                child_sure = child_sure || sure[c];
                child_maybe = child_maybe || maybe[c];
              }
              sure[u] = a[u] == Truth::True || (b[u] == Truth::True && child_sure);
              maybe[u] = a[u] != Truth::False || (b[u] != Truth::False && child_maybe);
              out[u] = sure[u] ? Truth::True : maybe[u] ? Truth::Unknown : Truth::False;
            }
            return out;
          }
          case Op::AR:
            return get(Formula::neg(
                Formula::eu(Formula::neg(f.arg(0)), Formula::neg(f.arg(1)))));
          case Op::EG:
          {
            const auto& a = get(f.arg(0));
            std::vector<char> maybe(n_, 0);
            for (std::size_t u = n_; u-- > 0;)
            {
              const auto& ch = t_.node(static_cast<std::uint32_t>(u)).children;
              bool child_maybe = ch.empty();
              for (auto c : ch)
                child_maybe = child_maybe || maybe[c];
              maybe[u] = a[u] != Truth::False && child_maybe;
              out[u] = maybe[u] ? Truth::Unknown : Truth::False;
            }
            return out;
          }
          case Op::AF:
            if (!f.arg(2).is(Op::Top))
              return get(expand_ternary(f));
            return get(Formula::neg(
                Formula::eg(Formula::neg(f.arg(0)), Formula::neg(f.arg(1)))));
        }
        return out;
      }

      static Formula expand_ternary(Formula f)
      {
        Formula p = f.arg(0), q = f.arg(1), r = f.arg(2);
        if (f.is(Op::EU))
          return Formula::lor(
              p, Formula::land(q, Formula::dia(Formula::eu(Formula::land(p, r), Formula::land(q, r)))));
        return Formula::land(Formula::af(p, q),
                             Formula::lor(p, Formula::box(Formula::ar(Formula::lor(q, r), p))));
      }

      Tableau& t_;
      std::size_t n_;
      std::unordered_map<Formula, std::vector<Truth>> memo_;
    };
  }

  std::vector<Truth> prefix_truth(Tableau& t, Formula f) { return PrefixEval(t).get(f); }

  std::string TruthReport::summary() const
  {
    std::ostringstream out;
    out << "obligations " << obligations << ": verified " << verified << ", deferred "
        << deferred << ", failed " << failures.size() << "\n";
    out << "successor checks " << successor_checks << ": failed " << successor_failures.size()
        << "\n";
    for (const auto& f : failures)
      out << "  " << f << "\n";
    for (const auto& f : successor_failures)
      out << "  " << f << "\n";
    if (!root_colour_ok)
      out << "  colour I on " << root_coloured << " nodes, expected only the root\n";
    return out.str();
  }

  TruthReport verify_truth_prefix(Tableau& t)
  {
    TruthReport rep;
    PrefixEval pe(t);
    const auto& g0 = t.gamma0().members;
    for (std::uint32_t v = 0; v < t.size(); ++v)
    {
      const auto& n = t.node(v);
      for (Formula th : g0)
      {
        if (!t.holds(th, n.alpha))
          continue;
        ++rep.obligations;
        Truth val = pe.get(th)[v];
        if (val == Truth::True)
          ++rep.verified;
        else if (val == Truth::Unknown)
          ++rep.deferred;
        else
          rep.failures.push_back("node " + std::to_string(v) + ": " + to_string(th));
      }
      if (n.children.empty())
        continue;
      for (Formula g : g0)
      {
        if (!t.holds(g, n.alpha))
          continue;
        if (g.is(Op::Diamond))
        {
          ++rep.successor_checks;
          bool found = false;
          for (auto c : n.children)
            found = found || t.holds(g.arg(0), t.node(c).alpha);
          if (!found)
            rep.successor_failures.push_back("node " + std::to_string(v) + ": " + to_string(g));
        }
        else if (g.is(Op::X0) || g.is(Op::X1))
        {
          ++rep.successor_checks;
          int d = g.is(Op::X0) ? 0 : 1;
          bool found = false;
          for (auto c : n.children)
            if (t.node(c).dir == d)
              found = t.holds(g.arg(0), t.node(c).alpha);
          if (!found)
            rep.successor_failures.push_back("node " + std::to_string(v) + ": " + to_string(g));
        }
      }
    }
    if (t.rooted())
    {
      bool root_has = false;
      for (std::uint32_t v = 0; v < t.size(); ++v)
      {
        auto c = t.colour(v);
        if (std::find(c.begin(), c.end(), "I") != c.end())
        {
          ++rep.root_coloured;
          root_has = root_has || v == 0;
        }
      }
      rep.root_colour_ok = root_has && rep.root_coloured == 1;
    }
    return rep;
  }

  std::string MonitorReport::summary() const
  {
    std::ostringstream out;
    out << "branches " << branches << ", tracks " << tracks << "\n";
    out << "EU: extinguished " << eu_extinguished << ", active at leaf " << eu_pending << "\n";
    out << "AF: extinguished " << af_extinguished << ", frozen at leaf " << af_frozen_tail
        << ", active at leaf " << af_pending << "\n";
    out << "largest active set " << max_active << ", violations " << violations.size() << "\n";
    for (const auto& v : violations)
      out << "  " << v << "\n";
    return out.str();
  }

  MonitorReport monitor_eventualities(Tableau& t)
  {
    MonitorReport rep;
    for (std::uint32_t leaf : t.leaves())
    {
      ++rep.branches;
      std::vector<std::uint32_t> path;
      for (std::int64_t v = leaf; v >= 0; v = t.node(static_cast<std::uint32_t>(v)).parent)
        path.push_back(static_cast<std::uint32_t>(v));
      std::reverse(path.begin(), path.end());
      const auto& last = t.node(leaf).beta;
      std::size_t prior_max = 0;
      bool prior_any = false;
      for (std::size_t k = 0; k < last.size(); ++k)
      {
        ++rep.tracks;
        std::size_t born = 0;
        while (t.node(path[born]).beta.size() <= k)
          ++born;
        std::vector<std::size_t> active;
        for (std::size_t i = born; i < path.size(); ++i)
          if (t.node(path[i]).beta[k].status == Status::Active)
            active.push_back(i);
        std::size_t tt = prior_any ? prior_max + 1 : 0;
        std::size_t t0 = std::max(tt, born);
        std::string where = "branch to node " + std::to_string(leaf) + ", entry " +
                            std::to_string(k + 1);

        if (t0 < path.size())
        {
          const FormulaSet& rho0 = t.node(path[t0]).beta[k].rho;
          for (std::size_t i = t0; i < path.size(); ++i)
          {
            const auto& r = t.node(path[i]).beta[k].rho;
            if (r != rho0 && *r != *rho0)
            {
              rep.violations.push_back(where + ": relevance set changed after position " +
                                       std::to_string(t0));
              break;
            }
          }
          std::vector<const NodeSet*> ext;
          for (Formula g : *rho0)
            ext.push_back(&t.evaluator().eval(g));
          std::map<std::vector<bool>, std::size_t> seen;
          for (std::size_t i : active)
          {
            if (i < tt)
              continue;
            State s = t.node(path[i]).alpha;
            std::vector<bool> type;
            for (auto* e : ext)
              type.push_back((*e)[s]);
            auto [it, fresh] = seen.emplace(type, i);
            if (!fresh)
            {
              rep.violations.push_back(where + ": positions " + std::to_string(it->second) +
                                       " and " + std::to_string(i) + " share a relevance type");
              break;
            }
          }
        }
        std::size_t rho_at_activation =
            t.node(path[active.empty() ? born : active.front()]).beta[k].rho->size();
        long double bound = static_cast<long double>(tt) +
                            (rho_at_activation >= 60 ? 1e18L
                                                     : static_cast<long double>(
                                                           std::uint64_t{1} << rho_at_activation));
        if (static_cast<long double>(active.size()) > bound)
          rep.violations.push_back(where + ": " + std::to_string(active.size()) +
                                   " active positions exceed the bound");
        rep.max_active = std::max(rep.max_active, active.size());

        Status end = last[k].status;
        if (last[k].is_eu())
          (end == Status::Extinguished ? rep.eu_extinguished : rep.eu_pending)++;
        else if (end == Status::Extinguished)
          ++rep.af_extinguished;
        else if (end == Status::Frozen)
          ++rep.af_frozen_tail;
        else
          ++rep.af_pending;

        if (!active.empty())
        {
          prior_any = true;
          prior_max = std::max(prior_max, active.back());
        }
      }
    }
    return rep;
  }

  std::string tableau_trace_json(Tableau& t)
  {
    using json = nlohmann::ordered_json;
    std::map<Formula, std::size_t, FormulaLess> ids;
    std::vector<std::string> table;
    auto id_of = [&](Formula f) {
      auto it = ids.find(f);
      if (it != ids.end())
        return it->second;
      ids.emplace(f, table.size());
      table.push_back(to_string(f));
      return table.size() - 1;
    };
    json nodes = json::array();
    for (std::uint32_t v = 0; v < t.size(); ++v)
    {
      const auto& n = t.node(v);
      json beta = json::array();
      for (const auto& e : n.beta)
      {
        json rho = json::array();
        for (Formula g : *e.rho)
          rho.push_back(id_of(g));
        beta.push_back({{"theta", to_string(e.theta)},
                        {"status", std::string(1, status_char(e.status))},
                        {"rho_ids", rho},
                        {"chi_prime", to_string(e.chi_prime)}});
      }
      json node = {{"id", v},
                   {"parent", n.parent < 0 ? json(nullptr) : json(n.parent)},
                   {"alpha_state", n.alpha},
                   {"colour", t.colour(v)},
                   {"beta", beta}};
      if (n.lambda)
        node["lambda"] = to_string(*n.lambda);
      if (n.dir >= 0)
      {
        node["dir"] = n.dir;
        json des = json::array();
        for (Formula d : n.designated)
          des.push_back(to_string(d));
        node["designated"] = des;
      }
      if (n.expanded)
        node["jump"] = {{"x_v", n.jump},
                        {"m", n.active ? json(*n.active + 1) : json(nullptr)},
                        {"gamma_v", n.gamma ? json(to_string(*n.gamma)) : json(nullptr)}};
      nodes.push_back(std::move(node));
    }
    json out = {{"dialect", dialect_name(t.dialect())},
                {"input", to_string(t.input())},
                {"root_formula", to_string(t.root_formula())},
                {"closure_size", t.gamma0().size()},
                {"formulas", table},
                {"nodes", nodes}};
    return out.dump(1) + "\n";
  }

} // namespace fairctl

#include "fairctl/axioms.hpp"

#include <functional>
#include <sstream>

namespace fairctl
{

  std::size_t AxiomReport::violations() const
  {
    std::size_t n = 0;
    for (auto& [name, t] : tallies)
      n += t.violations;
    return n;
  }

  void AxiomReport::merge(const AxiomReport& other)
  {
    for (auto& [name, t] : other.tallies)
    {
      auto& mine = tallies[name];
      mine.checked += t.checked;
      mine.triggered += t.triggered;
      mine.violations += t.violations;
    }
    for (const auto& e : other.examples)
      if (examples.size() < 10)
        examples.push_back(e);
    triples += other.triples;
  }

  std::string AxiomReport::summary() const
  {
    std::ostringstream out;
    for (auto& [name, t] : tallies)
    {
      out << name << ": checked " << t.checked;
      if (t.triggered)
        out << ", antecedent held " << t.triggered;
      out << ", violations " << t.violations << "\n";
    }
    for (const auto& e : examples)
      out << "  violation: " << e << "\n";
    return out.str();
  }

  namespace
  {
    using Sets = std::vector<NodeSet>;

    class Recorder
    {
    public:
      explicit Recorder(AxiomReport& r) : rep_(r) {}

      void eq(const char* name, bool ok, const std::function<std::string()>& what)
      {
        auto& t = rep_.tallies[name];
        ++t.checked;
        if (!ok)
        {
          ++t.violations;
          if (rep_.examples.size() < 10)
            rep_.examples.push_back(std::string(name) + " " + what());
        }
      }

      void implies(const char* name, bool antecedent, bool consequent,
                   const std::function<std::string()>& what)
      {
        auto& t = rep_.tallies[name];
        ++t.checked;
        if (!antecedent)
          return;
        ++t.triggered;
        if (!consequent)
        {
          ++t.violations;
          if (rep_.examples.size() < 10)
            rep_.examples.push_back(std::string(name) + " " + what());
        }
      }

    private:
      AxiomReport& rep_;
    };

    bool leq(const NodeSet& a, const NodeSet& b) { return a.is_subset_of(b); }

    std::string show(std::initializer_list<std::pair<const char*, const NodeSet*>> sets)
    {
      std::string out;
      for (auto& [n, s] : sets)
      {
        if (!out.empty())
          out += ' ';
        out += n;
        out += '=';
        out += format_set(*s);
      }
      return out;
    }

    // Calls f(a, b, cs) where cs are the c-values to test for that pair.
    void for_triples(std::size_t n, Rng& rng, const AxiomOptions& opts, AxiomReport& rep,
                     const std::function<void(const NodeSet&, const NodeSet&, const Sets&)>& f)
    {
      if (n <= opts.exhaustive_limit)
      {
        rep.exhaustive = true;
        std::size_t count = std::size_t{1} << n;
        Sets all;
        for (std::size_t m = 0; m < count; ++m)
          all.emplace_back(n, m);
        for (const auto& a : all)
          for (const auto& b : all)
          {
            f(a, b, all);
            rep.triples += all.size();
          }
        return;
      }
      for (std::size_t i = 0; i < opts.samples; ++i)
      {
        NodeSet a = rng.subset(n), b = rng.subset(n), c = rng.subset(n);
        f(a, b, Sets{c});
        ++rep.triples;
      }
    }
  }

  AxiomReport check_axioms(const ComplexAlgebra& alg, Rng& rng, const AxiomOptions& opts)
  {
    AxiomReport rep;
    Recorder rec(rep);
    const TransitionSystem& ts = alg.system();
    const NodeSet bot = alg.bottom(), top = alg.top();

    rec.eq("K-bot", alg.dia(bot) == bot, [] { return std::string("dia false != false"); });
    rec.eq("D", alg.dia(top) == top, [] { return std::string("dia true != true"); });

    bool rooted = ts.has_strict_root();
    bool binary = ts.is_binary();
    NodeSet root = rooted ? alg.root() : bot;
    if (rooted)
    {
      rec.eq("I-nonempty", root.any(), [] { return std::string("I = false"); });
      rec.eq("I-unreachable", alg.dia(alg.eu(root, top)) == bot,
             [] { return std::string("dia EU(I,true) != false"); });
    }
    if (binary)
      for (int d = 0; d < 2; ++d)
        rec.eq("X-bot", alg.next(d, bot) == bot, [] { return std::string("X false != false"); });

    for_triples(ts.size(), rng, opts, rep, [&](const NodeSet& a, const NodeSet& b, const Sets& cs) {
      NodeSet eu = alg.eu(a, b), eg = alg.eg(a, b), ar = alg.ar(a, b), af = alg.af(a, b);
      auto ab = [&] { return show({{"a", &a}, {"b", &b}}); };

      rec.eq("K-join", alg.dia(a | b) == (alg.dia(a) | alg.dia(b)), ab);
      rec.eq("EUfix", leq(a | (b & alg.dia(eu)), eu), ab);
      rec.eq("EGfix", leq(eg, a & alg.dia(alg.eu(b & eg, a))), ab);
      rec.eq("ARfix", leq(ar, a & (b | alg.box(ar))), ab);
      rec.eq("AFfix", leq(a | alg.box(alg.ar(b | af, a)), af), ab);

      if (rooted)
        rec.implies("I-reach", a.any(), leq(root, alg.eu(a, top)), ab);
      if (binary)
      {
        rec.eq("X-diamond", alg.dia(a) == (alg.next(0, a) | alg.next(1, a)), ab);
        for (int d = 0; d < 2; ++d)
        {
          rec.eq("X-join", alg.next(d, a | b) == (alg.next(d, a) | alg.next(d, b)), ab);
          rec.eq("X-neg", alg.next(d, ~a) == ~alg.next(d, a), ab);
        }
      }

      for (const NodeSet& c : cs)
      {
        auto abc = [&] { return show({{"a", &a}, {"b", &b}, {"c", &c}}); };
        rec.implies("EUmin", leq(a | (b & alg.dia(c)), c), leq(eu, c), abc);
        rec.implies("EGmax", leq(c, a & alg.dia(alg.eu(b & c, a))), leq(c, eg), abc);
        rec.implies("ARmax", leq(c, a & (b | alg.box(c))), leq(c, ar), abc);
        rec.implies("AFmin", leq(a | alg.box(alg.ar(b | c, a)), c), leq(af, c), abc);
      }
    });
    return rep;
  }

  AxiomReport check_contextual(const TransitionSystem& ts, Rng& rng, const AxiomOptions& opts)
  {
    AxiomReport rep;
    Recorder rec(rep);
    ComplexAlgebra alg(ts);
    const std::size_t n = ts.size();

    const Formula p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r"),
                  g = Formula::var("g");
    const Formula eu3 = eu_c(p, q, r), af3 = af_c(p, q, r);
    const Formula eu3g = eu_c(p, q, Formula::land(r, Formula::neg(g)));
    const Formula af3g = af_c(p, q, Formula::land(r, Formula::neg(g)));

    auto check = [&](const NodeSet& P, const NodeSet& Q, const NodeSet& R, const NodeSet& G) {
      Evaluator ev(ts, Valuation{{"p", P}, {"q", Q}, {"r", R}, {"g", G}});
      auto what = [&] { return show({{"p", &P}, {"q", &Q}, {"r", &R}, {"g", &G}}); };

      NodeSet x = alg.bottom();
      for (;;)
      {
        NodeSet y = P | (Q & alg.dia(R & x));
        if (y == x)
          break;
        x = std::move(y);
      }
      const NodeSet& e = ev.eval(eu3);
      rec.eq("EUc-lfp", e == x, what);

      x = alg.bottom();
      for (;;)
      {
        NodeSet y = P | alg.box(alg.ar(Q | (R & x), P));
        if (y == x)
          break;
        x = std::move(y);
      }
      const NodeSet& a = ev.eval(af3);
      rec.eq("AFc-lfp", a == x, what);
      rec.eq("AFc-unfold", a == (P | alg.box((Q | R) & a)), what);

      rec.eq("EUc-top", ev.eval(eu_c(p, q, Formula::top())) == alg.eu(P, Q), what);
      rec.eq("AFc-top", ev.eval(af_c(p, q, Formula::top())) == alg.af(P, Q), what);

      rec.implies("context-EU", (G & e).any(), (G & ev.eval(eu3g)).any(), what);
      rec.implies("context-AF", (G & a).any(), (G & ev.eval(af3g)).any(), what);
    };

    if (4 * n <= 12)
    {
      rep.exhaustive = true;
      std::size_t count = std::size_t{1} << n;
      for (std::size_t mp = 0; mp < count; ++mp)
        for (std::size_t mq = 0; mq < count; ++mq)
          for (std::size_t mr = 0; mr < count; ++mr)
            for (std::size_t mg = 0; mg < count; ++mg)
            {
              check(NodeSet(n, mp), NodeSet(n, mq), NodeSet(n, mr), NodeSet(n, mg));
              ++rep.triples;
            }
      return rep;
    }
    for (std::size_t i = 0; i < opts.samples; ++i)
    {
      NodeSet P = rng.subset(n), Q = rng.subset(n), R = rng.subset(n), G = rng.subset(n);
      check(P, Q, R, G);
      ++rep.triples;
    }
    return rep;
  }

} // namespace fairctl

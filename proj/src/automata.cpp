#include "fairctl/automata.hpp"

#include "fairctl/evaluator.hpp"
#include "fairctl/parity_game.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace fairctl
{

  namespace
  {
    void validate_common(const std::vector<std::string>& props,
                         const std::vector<std::string>& states, std::size_t init,
                         const std::vector<unsigned>& priority)
    {
      if (states.empty())
        throw AutomatonError("automaton has no states");
      if (init >= states.size())
        throw AutomatonError("initial state out of range");
      if (priority.size() != states.size())
        throw AutomatonError("priority table does not cover all states");
      if (props.size() > 16)
        throw AutomatonError("at most 16 propositions supported");
      std::set<std::string> names;
      for (const auto& n : props)
        if (!names.insert(n).second)
          throw AutomatonError("duplicate name '" + n + "'");
      for (const auto& n : states)
        if (!names.insert(n).second)
          throw AutomatonError("duplicate name '" + n + "'");
    }

    std::string label_text(const std::vector<std::string>& props, Label a)
    {
      std::string out = "{";
      bool first = true;
      for (std::size_t i = 0; i < props.size(); ++i)
        if (a >> i & 1u)
        {
          if (!first)
            out += ' ';
          out += props[i];
          first = false;
        }
      return out + "}";
    }

    std::pair<std::size_t, std::size_t> move_range(const ParityTreeAutomaton& aut,
                                                   std::size_t q, Label a)
    {
      ParityTransition lo{q, a, 0, 0};
      auto b = std::lower_bound(aut.delta.begin(), aut.delta.end(), lo);
      auto e = b;
      while (e != aut.delta.end() && e->from == q && e->label == a)
        ++e;
      return {static_cast<std::size_t>(b - aut.delta.begin()),
              static_cast<std::size_t>(e - aut.delta.begin())};
    }
  }

  const std::vector<std::vector<std::size_t>>& ModalAutomaton::moves(std::size_t q,
                                                                      Label a) const
  {
    static const std::vector<std::vector<std::size_t>> none;
    auto it = delta.find({q, a});
    return it == delta.end() ? none : it->second;
  }

  void ModalAutomaton::validate() const
  {
    validate_common(props, states, init, priority);
    for (const auto& [key, alts] : delta)
    {
      if (key.first >= states.size() || key.second >> props.size() != 0)
        throw AutomatonError("transition key out of range");
      for (const auto& d : alts)
        for (auto q : d)
          if (q >= states.size())
            throw AutomatonError("transition target out of range");
    }
  }

  std::vector<ParityTransition> ParityTreeAutomaton::moves(std::size_t q, Label a) const
  {
    auto [b, e] = move_range(*this, q, a);
    return {delta.begin() + static_cast<std::ptrdiff_t>(b),
            delta.begin() + static_cast<std::ptrdiff_t>(e)};
  }

  void ParityTreeAutomaton::validate() const
  {
    validate_common(props, states, init, priority);
    if (!std::is_sorted(delta.begin(), delta.end()) ||
        std::adjacent_find(delta.begin(), delta.end()) != delta.end())
      throw AutomatonError("transition list must be sorted and duplicate-free");
    for (const auto& t : delta)
      if (t.from >= states.size() || t.left >= states.size() || t.right >= states.size() ||
          t.label >> props.size() != 0)
        throw AutomatonError("transition out of range");
  }

  // ------------------------------------------------------------ file format

  namespace
  {
    std::vector<std::string> tokenize(const std::string& line)
    {
      std::string spaced;
      for (std::size_t i = 0; i < line.size(); ++i)
      {
        char c = line[i];
        if (c == '{' || c == '}' || c == '|')
        {
          spaced += ' ';
          spaced += c;
          spaced += ' ';
        }
        else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>')
        {
          spaced += " -> ";
          ++i;
        }
        else
          spaced += c;
      }
      std::istringstream in(spaced);
      std::vector<std::string> out;
      std::string t;
      while (in >> t)
        out.push_back(t);
      return out;
    }

    struct Header
    {
      std::vector<std::string> props, states;
      std::string init;
      std::map<std::string, unsigned> prio;
    };

    class AutParser
    {
    public:
      explicit AutParser(std::string_view text) : text_(text) {}

      Automaton parse()
      {
        std::istringstream in{std::string(text_)};
        std::string line;
        std::string kind;
        std::vector<std::pair<std::size_t, std::vector<std::string>>> deltas;
        while (std::getline(in, line))
        {
          ++lineno_;
          if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
          auto tok = tokenize(line);
          if (tok.empty())
            continue;
          if (kind.empty())
          {
            if (tok.size() != 1 || (tok[0] != "modal" && tok[0] != "parity"))
              fail("expected 'modal' or 'parity'");
            kind = tok[0];
            continue;
          }
          const std::string& cmd = tok[0];
          if (cmd == "props")
            h_.props.assign(tok.begin() + 1, tok.end());
          else if (cmd == "states")
            h_.states.assign(tok.begin() + 1, tok.end());
          else if (cmd == "init")
          {
            if (tok.size() != 2)
              fail("init takes one state");
            h_.init = tok[1];
          }
          else if (cmd == "prio")
          {
            if (tok.size() != 3)
              fail("prio takes a state and a number");
            try
            {
              h_.prio[tok[1]] = static_cast<unsigned>(std::stoul(tok[2]));
            }
            catch (const std::exception&)
            {
              fail("bad priority '" + tok[2] + "'");
            }
          }
          else if (cmd == "delta")
            deltas.emplace_back(lineno_, tok);
          else
            fail("unknown directive '" + cmd + "'");
        }
        if (kind.empty())
          throw AutomatonError("empty automaton file");
        if (kind == "modal")
        {
          ModalAutomaton a;
          fill(a);
          for (auto& [ln, tok] : deltas)
          {
            lineno_ = ln;
            parse_modal_delta(a, tok);
          }
          for (auto& [key, alts] : a.delta)
          {
            std::sort(alts.begin(), alts.end());
            alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
          }
          a.validate();
          return a;
        }
        ParityTreeAutomaton a;
        fill(a);
        for (auto& [ln, tok] : deltas)
        {
          lineno_ = ln;
          parse_parity_delta(a, tok);
        }
        std::sort(a.delta.begin(), a.delta.end());
        a.delta.erase(std::unique(a.delta.begin(), a.delta.end()), a.delta.end());
        a.validate();
        return a;
      }

    private:
      [[noreturn]] void fail(const std::string& msg) const
      {
        throw AutomatonError("line " + std::to_string(lineno_) + ": " + msg);
      }

      template <class A>
      void fill(A& a)
      {
        a.props = h_.props;
        a.states = h_.states;
        if (a.states.empty())
          throw AutomatonError("missing 'states' line");
        a.init = h_.init.empty() ? 0 : state_index(h_.init);
        a.priority.assign(a.states.size(), 0);
        for (std::size_t i = 0; i < a.states.size(); ++i)
        {
          auto it = h_.prio.find(a.states[i]);
          if (it == h_.prio.end())
            throw AutomatonError("missing priority for state '" + a.states[i] + "'");
          a.priority[i] = it->second;
        }
        for (const auto& [name, p] : h_.prio)
          state_index(name);
      }

      std::size_t state_index(const std::string& name) const
      {
        auto it = std::find(h_.states.begin(), h_.states.end(), name);
        if (it == h_.states.end())
          fail("unknown state '" + name + "'");
        return static_cast<std::size_t>(it - h_.states.begin());
      }

      // Parses "{ a b }" starting at tok[i]; returns the names and advances i.
      std::vector<std::string> braced(const std::vector<std::string>& tok, std::size_t& i) const
      {
        if (i >= tok.size() || tok[i] != "{")
          fail("expected '{'");
        std::vector<std::string> out;
        for (++i; i < tok.size() && tok[i] != "}"; ++i)
          out.push_back(tok[i]);
        if (i >= tok.size())
          fail("missing '}'");
        ++i;
        return out;
      }

      Label label(const std::vector<std::string>& names) const
      {
        Label a = 0;
        for (const auto& n : names)
        {
          auto it = std::find(h_.props.begin(), h_.props.end(), n);
          if (it == h_.props.end())
            fail("unknown proposition '" + n + "'");
          a |= Label{1} << (it - h_.props.begin());
        }
        return a;
      }

      std::pair<std::size_t, Label> delta_head(const std::vector<std::string>& tok,
                                               std::size_t& i) const
      {
        if (tok.size() < 2)
          fail("delta needs a state");
        std::size_t q = state_index(tok[1]);
        i = 2;
        Label a = label(braced(tok, i));
        if (i >= tok.size() || tok[i] != "->")
          fail("expected '->'");
        ++i;
        return {q, a};
      }

      void parse_modal_delta(ModalAutomaton& a, const std::vector<std::string>& tok) const
      {
        std::size_t i = 0;
        auto key = delta_head(tok, i);
        auto& alts = a.delta[key];
        while (i < tok.size())
        {
          std::vector<std::size_t> d;
          for (const auto& n : braced(tok, i))
            d.push_back(state_index(n));
          std::sort(d.begin(), d.end());
          d.erase(std::unique(d.begin(), d.end()), d.end());
          alts.push_back(std::move(d));
          if (i < tok.size())
          {
            if (tok[i] != "|")
              fail("expected '|'");
            ++i;
          }
        }
        if (alts.empty())
          a.delta.erase(key);
      }

      void parse_parity_delta(ParityTreeAutomaton& a, const std::vector<std::string>& tok) const
      {
        std::size_t i = 0;
        auto [q, l] = delta_head(tok, i);
        if (tok.size() != i + 2)
          fail("parity transition needs two target states");
        a.delta.push_back({q, l, state_index(tok[i]), state_index(tok[i + 1])});
      }

      std::string_view text_;
      std::size_t lineno_ = 0;
      Header h_;
    };

    template <class A>
    void save_header(std::ostringstream& out, const A& a, const char* kind)
    {
      out << kind << "\nprops";
      for (const auto& p : a.props)
        out << ' ' << p;
      out << "\nstates";
      for (const auto& q : a.states)
        out << ' ' << q;
      out << "\ninit " << a.states[a.init] << '\n';
      for (std::size_t i = 0; i < a.states.size(); ++i)
        out << "prio " << a.states[i] << ' ' << a.priority[i] << '\n';
    }
  }

  Automaton load_automaton(std::string_view text) { return AutParser(text).parse(); }

  Automaton load_automaton_file(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      throw AutomatonError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_automaton(buf.str());
  }

  std::string save_automaton(const ModalAutomaton& a)
  {
    std::ostringstream out;
    save_header(out, a, "modal");
    for (const auto& [key, alts] : a.delta)
    {
      out << "delta " << a.states[key.first] << ' ' << label_text(a.props, key.second) << " ->";
      for (std::size_t i = 0; i < alts.size(); ++i)
      {
        out << (i ? " | {" : " {");
        for (std::size_t j = 0; j < alts[i].size(); ++j)
          out << (j ? " " : "") << a.states[alts[i][j]];
        out << '}';
      }
      out << '\n';
    }
    return out.str();
  }

  std::string save_automaton(const ParityTreeAutomaton& a)
  {
    std::ostringstream out;
    save_header(out, a, "parity");
    for (const auto& t : a.delta)
      out << "delta " << a.states[t.from] << ' ' << label_text(a.props, t.label) << " -> "
          << a.states[t.left] << ' ' << a.states[t.right] << '\n';
    return out.str();
  }

  void check_alphabet(const TransitionSystem& ts, const std::vector<std::string>& props)
  {
    std::vector<std::string> sorted = props;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ts.props())
    {
      std::string have, want;
      for (const auto& p : ts.props())
        have += " " + p;
      for (const auto& p : sorted)
        want += " " + p;
      throw AutomatonError("alphabet mismatch: automaton has {" + want + " }, model has {" +
                           have + " }");
    }
  }

  Label label_of(const TransitionSystem& ts, State s, const std::vector<std::string>& props)
  {
    Label a = 0;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (ts.has_prop(props[i]) && ts.extension(props[i])[s])
        a |= Label{1} << i;
    return a;
  }

  // --------------------------------------------------------------- acc terms

  Formula valuation_formula(const std::vector<std::string>& props, Label a)
  {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < props.size(); ++i)
    {
      Formula p = Formula::var(props[i]);
      lits.push_back(a >> i & 1u ? p : Formula::neg(p));
    }
    return conjunction(lits);
  }

  namespace
  {
    Formula acc1(const std::vector<std::string>& states, std::size_t init)
    {
      return Formula::lor(Formula::neg(Formula::root()), Formula::var(states[init]));
    }

    Formula acc3(const std::vector<std::string>& states, const std::vector<unsigned>& prio)
    {
      std::set<unsigned> odd;
      for (auto p : prio)
        if (p % 2 == 1)
          odd.insert(p);
      std::vector<Formula> parts;
      for (unsigned n : odd)
      {
        std::vector<Formula> lower, at;
        for (std::size_t q = 0; q < states.size(); ++q)
        {
          if (prio[q] < n)
            lower.push_back(Formula::var(states[q]));
          if (prio[q] == n)
            at.push_back(Formula::neg(Formula::var(states[q])));
        }
        parts.push_back(Formula::af(disjunction(lower), conjunction(at)));
      }
      return conjunction(parts);
    }

    // q ∧ ⋀_{q'≠q} ¬q' ∧ moves
    Formula exclusive(const std::vector<std::string>& states, std::size_t q, Formula moves)
    {
      std::vector<Formula> parts{Formula::var(states[q])};
      for (std::size_t r = 0; r < states.size(); ++r)
        if (r != q)
          parts.push_back(Formula::neg(Formula::var(states[r])));
      parts.push_back(moves);
      return conjunction(parts);
    }
  }

  AccTerm acc_parts_modal(const ModalAutomaton& aut)
  {
    aut.validate();
    std::vector<Formula> per_state;
    for (std::size_t q = 0; q < aut.states.size(); ++q)
    {
      std::vector<Formula> alts;
      for (const auto& [key, ds] : aut.delta)
      {
        if (key.first != q)
          continue;
        Formula val = valuation_formula(aut.props, key.second);
        for (const auto& d : ds)
        {
          std::vector<Formula> dia, members;
          for (auto r : d)
          {
            dia.push_back(Formula::dia(Formula::var(aut.states[r])));
            members.push_back(Formula::var(aut.states[r]));
          }
          Formula nabla = Formula::land(conjunction(dia), Formula::box(disjunction(members)));
          if (dia.empty())
            nabla = Formula::box(disjunction(members));
          alts.push_back(Formula::land(nabla, val));
        }
      }
      per_state.push_back(exclusive(aut.states, q, disjunction(alts)));
    }
    return {acc1(aut.states, aut.init), disjunction(per_state), acc3(aut.states, aut.priority)};
  }

  AccTerm acc_parts_binary(const ParityTreeAutomaton& aut)
  {
    aut.validate();
    std::vector<Formula> per_state;
    for (std::size_t q = 0; q < aut.states.size(); ++q)
    {
      std::vector<Formula> alts;
      for (const auto& t : aut.delta)
      {
        if (t.from != q)
          continue;
        Formula bullet = Formula::land(Formula::next(0, Formula::var(aut.states[t.left])),
                                       Formula::next(1, Formula::var(aut.states[t.right])));
        if (!aut.props.empty())
          bullet = Formula::land(bullet, valuation_formula(aut.props, t.label));
        alts.push_back(bullet);
      }
      per_state.push_back(exclusive(aut.states, q, disjunction(alts)));
    }
    return {acc1(aut.states, aut.init), disjunction(per_state), acc3(aut.states, aut.priority)};
  }

  Formula compile_acc_modal(const ModalAutomaton& aut) { return acc_parts_modal(aut).combined(); }

  Formula compile_acc_binary(const ParityTreeAutomaton& aut)
  {
    return acc_parts_binary(aut).combined();
  }

  // -------------------------------------------------------------------- runs

  std::string RunReport::summary() const
  {
    std::ostringstream out;
    out << "initial: " << (initial_ok ? "ok" : "VIOLATED") << '\n';
    out << "transitions: " << transitions_checked << " checked, "
        << transition_violations.size() << " violations\n";
    for (const auto& v : transition_violations)
      out << "  " << v << '\n';
    for (const auto& v : malformed_lassos)
      out << "  malformed lasso: " << v << '\n';
    out << "success (root branches): " << lassos_root << " lassos, "
        << success_violations_root.size() << " violations\n";
    out << "success (all suffixes): " << lassos_suffix << " lassos, "
        << success_violations_suffix.size() << " violations\n";
    for (const auto& v : success_violations_suffix)
      out << "  " << v << '\n';
    return out.str();
  }

  namespace
  {
    template <class A, class Step>
    RunReport check_run_common(const A& aut, const TransitionSystem& ts, const UnravelTree& tree,
                               const std::vector<std::size_t>& run,
                               const std::vector<Lasso>& lassos, Step step_ok)
    {
      RunReport rep;
      if (run.size() != tree.size())
        throw std::invalid_argument("run does not cover the tree");
      rep.initial_ok = tree.size() > 0 && run[0] == aut.init;
      for (std::uint32_t v = 0; v < tree.size(); ++v)
      {
        if (tree.children[v].empty())
          continue;
        ++rep.transitions_checked;
        Label a = label_of(ts, tree.state[v], aut.props);
        if (!step_ok(v, a))
          rep.transition_violations.push_back("node " + std::to_string(v) + " (" +
                                              aut.states[run[v]] + ", " +
                                              label_text(aut.props, a) + ")");
      }
      for (const auto& l : lassos)
      {
        std::string name = "lasso at node " + (l.path.empty() ? std::string("?")
                                                              : std::to_string(l.path[0]));
        bool good = l.path.size() >= 2 && l.cycle_start + 1 < l.path.size();
        for (std::size_t i = 1; good && i < l.path.size(); ++i)
          good = tree.parent[l.path[i]] == static_cast<std::int32_t>(l.path[i - 1]);
        if (good)
        {
          auto c = l.path[l.cycle_start], e = l.path.back();
          good = tree.state[c] == tree.state[e] && run[c] == run[e];
        }
        if (!good)
        {
          rep.malformed_lassos.push_back(name);
          continue;
        }
        unsigned least = ~0u;
        for (std::size_t i = l.cycle_start; i + 1 < l.path.size(); ++i)
          least = std::min(least, aut.priority[run[l.path[i]]]);
        bool from_root = l.path[0] == 0;
        ++rep.lassos_suffix;
        if (from_root)
          ++rep.lassos_root;
        if (least % 2 == 1)
        {
          std::string msg = name + ": least priority on cycle is " + std::to_string(least);
          rep.success_violations_suffix.push_back(msg);
          if (from_root)
            rep.success_violations_root.push_back(msg);
        }
      }
      return rep;
    }
  }

  RunReport check_run_prefix(const ModalAutomaton& aut, const TransitionSystem& ts,
                             const UnravelTree& tree, const std::vector<std::size_t>& run,
                             const std::vector<Lasso>& lassos)
  {
    return check_run_common(aut, ts, tree, run, lassos, [&](std::uint32_t v, Label a) {
      std::vector<std::size_t> d;
      for (auto w : tree.children[v])
        d.push_back(run[w]);
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
      const auto& alts = aut.moves(run[v], a);
      return std::find(alts.begin(), alts.end(), d) != alts.end();
    });
  }

  RunReport check_run_prefix(const ParityTreeAutomaton& aut, const TransitionSystem& ts,
                             const UnravelTree& tree, const std::vector<std::size_t>& run,
                             const std::vector<Lasso>& lassos)
  {
    return check_run_common(aut, ts, tree, run, lassos, [&](std::uint32_t v, Label a) {
      std::size_t l = aut.states.size(), r = aut.states.size();
      for (auto w : tree.children[v])
        (tree.dir[w] == 0 ? l : r) = run[w];
      ParityTransition t{run[v], a, l, r};
      return std::binary_search(aut.delta.begin(), aut.delta.end(), t);
    });
  }

  // -------------------------------------------------------------- acceptance

  namespace
  {
    void require_generator(const ParityTreeAutomaton& aut, const TransitionSystem& gen)
    {
      aut.validate();
      if (!gen.is_binary() || !gen.root())
        throw AutomatonError("generator must be a rooted binary system");
      check_alphabet(gen, aut.props);
    }
  }

  AcceptanceResult accepts_regular(const ParityTreeAutomaton& aut, const TransitionSystem& gen)
  {
    require_generator(aut, gen);
    ParityGame game;
    std::map<ProductVertex, std::uint32_t> eve;
    std::vector<ProductVertex> order;
    std::map<std::uint32_t, std::size_t> adam_move;
    std::deque<ProductVertex> queue;
    auto eve_vertex = [&](ProductVertex pv) {
      auto it = eve.find(pv);
      if (it != eve.end())
        return it->second;
      auto id = game.add_vertex(0, aut.priority[pv.second]);
      eve.emplace(pv, id);
      order.push_back(pv);
      queue.push_back(pv);
      return id;
    };
    std::int64_t sink = -1;
    ProductVertex start{*gen.root(), aut.init};
    eve_vertex(start);
    while (!queue.empty())
    {
      ProductVertex pv = queue.front();
      queue.pop_front();
      auto from = eve.at(pv);
      auto [b, e] = move_range(aut, pv.second, label_of(gen, pv.first, aut.props));
      if (b == e)
      {
        if (sink < 0)
        {
          sink = game.add_vertex(1, 1);
          game.add_edge(static_cast<std::uint32_t>(sink), static_cast<std::uint32_t>(sink));
        }
        game.add_edge(from, static_cast<std::uint32_t>(sink));
        continue;
      }
      for (std::size_t t = b; t < e; ++t)
      {
        auto adam = game.add_vertex(1, aut.priority[pv.second]);
        adam_move[adam] = t;
        game.add_edge(from, adam);
        const auto& tr = aut.delta[t];
        game.add_edge(adam, eve_vertex({gen.next(0, pv.first), tr.left}));
        game.add_edge(adam, eve_vertex({gen.next(1, pv.first), tr.right}));
      }
    }
    GameSolution sol = solve_parity_game(game);
    AcceptanceResult res;
    res.game_vertices = game.size();
    res.accepted = sol.winner[eve.at(start)] == 0;
    for (const auto& pv : order)
    {
      auto v = eve.at(pv);
      if (sol.winner[v] != 0)
        continue;
      auto target = static_cast<std::uint32_t>(sol.strategy[v]);
      res.choice[pv] = adam_move.at(target);
    }
    return res;
  }

  TransitionSystem build_product(const ParityTreeAutomaton& aut, const TransitionSystem& gen,
                                 const std::map<ProductVertex, std::size_t>& choice,
                                 std::vector<ProductVertex>* vertices)
  {
    ProductVertex start{*gen.root(), aut.init};
    std::vector<ProductVertex> verts{start};
    std::map<ProductVertex, State> index;
    auto lookup = [&](ProductVertex pv) {
      auto it = index.find(pv);
      if (it != index.end())
        return it->second;
      State id = static_cast<State>(verts.size());
      verts.push_back(pv);
      index.emplace(pv, id);
      return id;
    };
    std::vector<std::array<State, 2>> edges;
    for (std::size_t i = 0; i < verts.size(); ++i)
    {
      ProductVertex pv = verts[i];
      auto it = choice.find(pv);
      if (it == choice.end())
        throw std::logic_error("labelling has no transition for a reachable product vertex");
      const auto& t = aut.delta[it->second];
      State l = lookup({gen.next(0, pv.first), t.left});
      State r = lookup({gen.next(1, pv.first), t.right});
      edges.push_back({l, r});
    }
    TransitionSystem p(verts.size());
    for (const auto& name : gen.props())
      p.add_prop(name);
    for (const auto& name : aut.states)
      p.add_prop(name);
    for (State s = 0; s < verts.size(); ++s)
    {
      for (const auto& c : gen.colour(verts[s].first))
        p.set_colour(s, c);
      p.set_colour(s, aut.states[verts[s].second]);
      p.set_successor(0, s, edges[s][0]);
      p.set_successor(1, s, edges[s][1]);
    }
    p.set_root(0);
    if (vertices)
      *vertices = verts;
    return p;
  }

  std::vector<std::size_t> induced_run(const ParityTreeAutomaton& aut,
                                       const TransitionSystem& gen, const UnravelTree& tree,
                                       const std::map<ProductVertex, std::size_t>& choice,
                                       std::vector<Lasso>* lassos)
  {
    std::vector<std::size_t> run(tree.size(), aut.init);
    for (std::uint32_t v = 0; v < tree.size(); ++v)
    {
      if (tree.children[v].empty())
        continue;
      auto it = choice.find({tree.state[v], run[v]});
      if (it == choice.end())
        throw std::logic_error("labelling has no transition for a visited product vertex");
      const auto& t = aut.delta[it->second];
      for (auto w : tree.children[v])
        run[w] = tree.dir[w] == 0 ? t.left : t.right;
    }
    (void)gen;
    if (lassos)
    {
      std::set<std::vector<std::uint32_t>> seen;
      for (std::uint32_t leaf = 0; leaf < tree.size(); ++leaf)
      {
        if (!tree.children[leaf].empty())
          continue;
        std::vector<std::uint32_t> path;
        for (std::int64_t v = leaf; v >= 0; v = tree.parent[static_cast<std::size_t>(v)])
          path.push_back(static_cast<std::uint32_t>(v));
        std::reverse(path.begin(), path.end());
        std::map<ProductVertex, std::size_t> first;
        for (std::size_t i = 0; i < path.size(); ++i)
        {
          ProductVertex pv{tree.state[path[i]], run[path[i]]};
          auto [it, fresh] = first.emplace(pv, i);
          if (!fresh)
          {
            std::vector<std::uint32_t> seg(path.begin(),
                                           path.begin() + static_cast<std::ptrdiff_t>(i + 1));
            if (seen.insert(seg).second)
              lassos->push_back({seg, it->second});
            break;
          }
        }
      }
    }
    return run;
  }

  RefutationResult search_labellings(const ParityTreeAutomaton& aut,
                                     const TransitionSystem& gen, std::size_t cap)
  {
    require_generator(aut, gen);
    Formula acc = compile_acc_binary(aut);
    RefutationResult res;
    std::map<ProductVertex, std::size_t> choice;
    std::vector<ProductVertex> order{{*gen.root(), aut.init}};
    std::set<ProductVertex> known{order[0]};

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (res.witness_found || !res.exhausted)
        return;
      if (i == order.size())
      {
        if (res.labellings_checked >= cap)
        {
          res.exhausted = false;
          return;
        }
        ++res.labellings_checked;
        TransitionSystem p = build_product(aut, gen, choice);
        if (eval(acc, p).all())
          res.witness_found = true;
        return;
      }
      ProductVertex pv = order[i];
      auto [b, e] = move_range(aut, pv.second, label_of(gen, pv.first, aut.props));
      for (std::size_t t = b; t < e; ++t)
      {
        choice[pv] = t;
        std::size_t added = 0;
        const auto& tr = aut.delta[t];
        for (ProductVertex next : {ProductVertex{gen.next(0, pv.first), tr.left},
                                   ProductVertex{gen.next(1, pv.first), tr.right}})
          if (known.insert(next).second)
          {
            order.push_back(next);
            ++added;
          }
        dfs(i + 1);
        for (std::size_t k = 0; k < added; ++k)
        {
          known.erase(order.back());
          order.pop_back();
        }
        choice.erase(pv);
        if (res.witness_found || !res.exhausted)
          return;
      }
    };
    dfs(0);
    return res;
  }

  ParityTreeAutomaton random_parity_automaton(Rng& rng, const AutomatonGen& gen)
  {
    ParityTreeAutomaton a;
    a.props = prop_names(gen.props);
    for (std::size_t i = 0; i < gen.states; ++i)
    {
      a.states.push_back("q" + std::to_string(i));
      a.priority.push_back(static_cast<unsigned>(rng.below(gen.max_priority + 1)));
    }
    a.init = 0;
    for (std::size_t q = 0; q < gen.states; ++q)
      for (Label l = 0; l < (Label{1} << gen.props); ++l)
      {
        if (rng.chance(gen.dead))
          continue;
        std::size_t k = 1 + rng.below(gen.max_moves);
        for (std::size_t j = 0; j < k; ++j)
        {
          std::size_t left = rng.below(gen.states);
          std::size_t right = rng.below(gen.states);
          a.delta.push_back({q, l, left, right});
        }
      }
    std::sort(a.delta.begin(), a.delta.end());
    a.delta.erase(std::unique(a.delta.begin(), a.delta.end()), a.delta.end());
    return a;
  }

} // namespace fairctl

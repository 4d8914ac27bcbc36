#include "fairctl/kripke.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fairctl
{

  TransitionSystem::TransitionSystem(std::size_t n) : succ_(n), pred_(n) {}

  void TransitionSystem::add_edge(State from, State to)
  {
    if (from >= size() || to >= size())
      throw ModelError("edge " + std::to_string(from) + " -> " + std::to_string(to) +
                       " out of range");
    auto& s = succ_[from];
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it != s.end() && *it == to)
      return;
    s.insert(it, to);
    auto& p = pred_[to];
    p.insert(std::lower_bound(p.begin(), p.end(), from), from);
  }

  bool TransitionSystem::has_edge(State from, State to) const
  {
    const auto& s = succ_[from];
    return std::binary_search(s.begin(), s.end(), to);
  }

  void TransitionSystem::add_prop(std::string_view name)
  {
    auto it = std::lower_bound(props_.begin(), props_.end(), name);
    if (it != props_.end() && *it == name)
      return;
    auto idx = it - props_.begin();
    props_.insert(it, std::string(name));
    ext_.insert(ext_.begin() + idx, NodeSet(size()));
  }

  bool TransitionSystem::has_prop(std::string_view name) const
  {
    return std::binary_search(props_.begin(), props_.end(), name);
  }

  void TransitionSystem::set_colour(State s, std::string_view prop, bool value)
  {
    if (s >= size())
      throw ModelError("colour for state " + std::to_string(s) + " out of range");
    add_prop(prop);
    auto idx = std::lower_bound(props_.begin(), props_.end(), prop) - props_.begin();
    ext_[idx][s] = value;
  }

  const NodeSet& TransitionSystem::extension(std::string_view prop) const
  {
    auto it = std::lower_bound(props_.begin(), props_.end(), prop);
    if (it == props_.end() || *it != prop)
      throw ModelError("unknown proposition '" + std::string(prop) + "'");
    return ext_[it - props_.begin()];
  }

  std::vector<std::string> TransitionSystem::colour(State s) const
  {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < props_.size(); ++i)
      if (ext_[i][s])
        out.push_back(props_[i]);
    return out;
  }

  void TransitionSystem::set_root(State s)
  {
    if (s >= size())
      throw ModelError("root " + std::to_string(s) + " out of range");
    root_ = s;
  }

  void TransitionSystem::clear_root() { root_.reset(); }

  void TransitionSystem::set_successor(int dir, State from, State to)
  {
    if (dir != 0 && dir != 1)
      throw ModelError("successor direction must be 0 or 1");
    if (from >= size() || to >= size())
      throw ModelError("f" + std::to_string(dir) + " " + std::to_string(from) + " " +
                       std::to_string(to) + " out of range");
    if (f_[dir].empty())
      f_[dir].assign(size(), static_cast<State>(-1));
    if (f_[dir][from] != static_cast<State>(-1))
      throw ModelError("f" + std::to_string(dir) + " defined twice for state " +
                       std::to_string(from));
    f_[dir][from] = to;
    add_edge(from, to);
  }

  bool TransitionSystem::has_strict_root() const
  {
    return root_ && pred_[*root_].empty();
  }

  void TransitionSystem::validate() const
  {
    if (size() == 0)
      throw ModelError("system has no states");
    for (State s = 0; s < size(); ++s)
      if (succ_[s].empty())
        throw ModelError("state " + std::to_string(s) + " not serial");

    if (!f_[0].empty() || !f_[1].empty())
    {
      for (int d = 0; d < 2; ++d)
      {
        if (f_[d].empty())
          throw ModelError("f" + std::to_string(d) + " missing");
        for (State s = 0; s < size(); ++s)
          if (f_[d][s] == static_cast<State>(-1))
            throw ModelError("f" + std::to_string(d) + " undefined at state " +
                             std::to_string(s));
      }
      for (State s = 0; s < size(); ++s)
        for (State t : succ_[s])
          if (f_[0][s] != t && f_[1][s] != t)
            throw ModelError("edge " + std::to_string(s) + " -> " + std::to_string(t) +
                             " is not in f0 or f1");
    }

    if (root_)
    {
      NodeSet seen(size());
      std::vector<State> stack{*root_};
      seen[*root_] = true;
      while (!stack.empty())
      {
        State s = stack.back();
        stack.pop_back();
        for (State t : succ_[s])
          if (!seen[t])
          {
            seen[t] = true;
            stack.push_back(t);
          }
      }
      for (State s = 0; s < size(); ++s)
        if (!seen[s])
          throw ModelError("state " + std::to_string(s) + " not reachable from root " +
                           std::to_string(*root_));
    }
  }

  namespace
  {
    State parse_state(const std::string& tok, std::size_t line)
    {
      State v{};
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw ModelError("line " + std::to_string(line) + ": bad state '" + tok + "'");
      return v;
    }
  }

  TransitionSystem load_system(std::string_view text)
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    std::optional<TransitionSystem> ts;
    bool saw_edge = false, saw_f = false;

    auto need = [&](std::size_t line) -> TransitionSystem& {
      if (!ts)
        throw ModelError("line " + std::to_string(line) + ": 'states N' must come first");
      return *ts;
    };

    while (std::getline(in, raw))
    {
      ++lineno;
      if (auto h = raw.find('#'); h != std::string::npos)
        raw.erase(h);
      std::istringstream ls(raw);
      std::vector<std::string> tok;
      for (std::string t; ls >> t;)
        tok.push_back(t);
      if (tok.empty())
        continue;
      const std::string& cmd = tok[0];
      auto arity = [&](std::size_t lo, std::size_t hi) {
        if (tok.size() - 1 < lo || tok.size() - 1 > hi)
          throw ModelError("line " + std::to_string(lineno) + ": wrong number of fields for '" +
                           cmd + "'");
      };
      if (cmd == "states")
      {
        arity(1, 1);
        if (ts)
          throw ModelError("line " + std::to_string(lineno) + ": duplicate 'states'");
        ts.emplace(parse_state(tok[1], lineno));
      }
      else if (cmd == "edge")
      {
        arity(2, 2);
        need(lineno).add_edge(parse_state(tok[1], lineno), parse_state(tok[2], lineno));
        saw_edge = true;
      }
      else if (cmd == "color" || cmd == "colour")
      {
        arity(2, 1000);
        State s = parse_state(tok[1], lineno);
        for (std::size_t i = 2; i < tok.size(); ++i)
          need(lineno).set_colour(s, tok[i]);
      }
      else if (cmd == "props")
      {
        arity(0, 1000);
        for (std::size_t i = 1; i < tok.size(); ++i)
          need(lineno).add_prop(tok[i]);
      }
      else if (cmd == "root")
      {
        arity(1, 1);
        need(lineno).set_root(parse_state(tok[1], lineno));
      }
      else if (cmd == "f0" || cmd == "f1")
      {
        arity(2, 2);
        need(lineno).set_successor(cmd == "f0" ? 0 : 1, parse_state(tok[1], lineno),
                                   parse_state(tok[2], lineno));
        saw_f = true;
      }
      else
      {
        throw ModelError("line " + std::to_string(lineno) + ": unknown directive '" + cmd + "'");
      }
    }
    if (!ts)
      throw ModelError("missing 'states N'");
    if (saw_edge && saw_f)
      throw ModelError("binary systems must not list 'edge' lines");
    ts->validate();
    return std::move(*ts);
  }

  TransitionSystem load_system_file(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      throw ModelError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_system(buf.str());
  }

  std::string save_system(const TransitionSystem& ts)
  {
    std::ostringstream out;
    out << "states " << ts.size() << "\n";
    std::vector<std::string> silent;
    for (const auto& p : ts.props())
      if (ts.extension(p).none())
        silent.push_back(p);
    if (!silent.empty())
    {
      out << "props";
      for (const auto& p : silent)
        out << ' ' << p;
      out << "\n";
    }
    if (ts.root())
      out << "root " << *ts.root() << "\n";
    for (State s = 0; s < ts.size(); ++s)
    {
      if (ts.is_binary())
      {
        out << "f0 " << s << ' ' << ts.next(0, s) << "\n";
        out << "f1 " << s << ' ' << ts.next(1, s) << "\n";
      }
      else
      {
        for (State t : ts.successors(s))
          out << "edge " << s << ' ' << t << "\n";
      }
    }
    for (State s = 0; s < ts.size(); ++s)
      for (const auto& p : ts.colour(s))
        out << "color " << s << ' ' << p << "\n";
    return out.str();
  }

  namespace
  {
    UnravelTree expand(const TransitionSystem& ts, std::uint32_t depth, std::uint32_t width)
    {
      if (!ts.root())
        throw ModelError("unravelling needs a rooted system");
      if (width == 0)
        throw ModelError("omega-expansion width must be at least 1");
      UnravelTree t;
      auto push = [&](std::int32_t parent, State s, std::uint32_t copy, std::uint32_t d,
                      std::int8_t dir) {
        t.parent.push_back(parent);
        t.children.emplace_back();
        t.state.push_back(s);
        t.copy.push_back(copy);
        t.depth.push_back(d);
        t.dir.push_back(dir);
        if (parent >= 0)
          t.children[parent].push_back(static_cast<std::uint32_t>(t.size() - 1));
      };
      push(-1, *ts.root(), 0, 0, -1);
      for (std::size_t v = 0; v < t.size(); ++v)
      {
        if (t.depth[v] == depth)
          continue;
        State s = t.state[v];
        if (ts.is_binary())
        {
          for (int d = 0; d < 2; ++d)
            for (std::uint32_t k = 0; k < width; ++k)
              push(static_cast<std::int32_t>(v), ts.next(d, s), k, t.depth[v] + 1,
                   static_cast<std::int8_t>(d));
        }
        else
        {
          for (State n : ts.successors(s))
            for (std::uint32_t k = 0; k < width; ++k)
              push(static_cast<std::int32_t>(v), n, k, t.depth[v] + 1, -1);
        }
      }
      return t;
    }
  }

  UnravelTree unravel_to_depth(const TransitionSystem& ts, std::uint32_t depth)
  {
    return expand(ts, depth, 1);
  }

  UnravelTree omega_expand_to_depth(const TransitionSystem& ts, std::uint32_t depth,
                                    std::uint32_t width)
  {
    return expand(ts, depth, width);
  }

} // namespace fairctl

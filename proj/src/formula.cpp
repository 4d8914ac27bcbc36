#include "fairctl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace fairctl
{

  const char* dialect_name(Dialect d)
  {
    switch (d)
    {
      case Dialect::Plain:
        return "plain";
      case Dialect::Rooted:
        return "rooted";
      case Dialect::Binary:
        return "binary";
    }
    return "?";
  }

  Dialect parse_dialect(std::string_view name)
  {
    if (name == "plain")
      return Dialect::Plain;
    if (name == "rooted")
      return Dialect::Rooted;
    if (name == "binary" || name == "s2s")
      return Dialect::Binary;
    throw std::invalid_argument("unknown dialect '" + std::string(name) + "'");
  }

  namespace
  {
    struct Key
    {
      Op op;
      std::string name;
      std::array<const detail::Node*, 3> args;

      bool operator==(const Key& o) const
      {
        return op == o.op && name == o.name && args == o.args;
      }
    };

    std::size_t mix(std::size_t h, std::size_t v)
    {
      return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }

    struct KeyHash
    {
      std::size_t operator()(const Key& k) const
      {
        std::size_t h = static_cast<std::size_t>(k.op);
        h = mix(h, std::hash<std::string>{}(k.name));
        for (auto* a : k.args)
          h = mix(h, reinterpret_cast<std::uintptr_t>(a));
        return h;
      }
    };

    class Interner
    {
    public:
      const detail::Node* intern(Op op, std::string_view name,
                                 std::initializer_list<Formula> args)
      {
        Key key{op, std::string(name), {nullptr, nullptr, nullptr}};
        std::size_t i = 0;
        for (auto a : args)
          key.args[i++] = a.node();

        std::lock_guard<std::mutex> lock(mutex_);
        auto it = table_.find(key);
        if (it != table_.end())
          return it->second;

        detail::Node& n = nodes_.emplace_back();
        n.op = op;
        n.arity = static_cast<std::uint8_t>(i);
        n.id = static_cast<std::uint32_t>(nodes_.size() - 1);
        n.name = key.name;
        n.args = key.args;
        n.uses_root = op == Op::Root;
        n.uses_next = op == Op::X0 || op == Op::X1;
        std::uint64_t size = 1;
        std::size_t h = mix(static_cast<std::size_t>(op) * 1315423911u,
                            std::hash<std::string>{}(n.name));
        for (std::size_t j = 0; j < i; ++j)
        {
          const detail::Node* a = n.args[j];
          n.uses_root = n.uses_root || a->uses_root;
          n.uses_next = n.uses_next || a->uses_next;
          size += a->size;
          h = mix(h, a->hash);
        }
        n.size = static_cast<std::uint32_t>(std::min<std::uint64_t>(size, 0xffffffffu));
        n.hash = h;
        table_.emplace(std::move(key), &n);
        return &n;
      }

    private:
      std::mutex mutex_;
      std::deque<detail::Node> nodes_;
      std::unordered_map<Key, const detail::Node*, KeyHash> table_;
    };

    Interner& interner()
    {
      static Interner* in = new Interner();
      return *in;
    }
  }

  Formula Formula::make(Op op, std::string_view name,
                        std::initializer_list<Formula> args)
  {
    return Formula(interner().intern(op, name, args));
  }

  Formula::Formula() : node_(bottom().node_) {}

  Formula Formula::bottom()
  {
    static const detail::Node* n = interner().intern(Op::Bot, "", {});
    return Formula(n);
  }

  Formula Formula::top()
  {
    static const detail::Node* n = interner().intern(Op::Top, "", {});
    return Formula(n);
  }

  Formula Formula::var(std::string_view name)
  {
    if (name.empty())
      throw std::invalid_argument("empty proposition name");
    return make(Op::Var, name, {});
  }

  Formula Formula::root()
  {
    static const detail::Node* n = interner().intern(Op::Root, "", {});
    return Formula(n);
  }

  Formula Formula::neg(Formula f) { return make(Op::Neg, "", {f}); }
  Formula Formula::lor(Formula a, Formula b) { return make(Op::Or, "", {a, b}); }
  Formula Formula::land(Formula a, Formula b) { return make(Op::And, "", {a, b}); }
  Formula Formula::dia(Formula f) { return make(Op::Diamond, "", {f}); }
  Formula Formula::box(Formula f) { return make(Op::Box, "", {f}); }

  Formula Formula::next(int dir, Formula f)
  {
    if (dir != 0 && dir != 1)
      throw std::invalid_argument("successor direction must be 0 or 1");
    return make(dir == 0 ? Op::X0 : Op::X1, "", {f});
  }

  Formula Formula::eu(Formula a, Formula b) { return eu(a, b, top()); }
  Formula Formula::eu(Formula a, Formula b, Formula c)
  {
    return make(Op::EU, "", {a, b, c});
  }
  Formula Formula::eg(Formula a, Formula b) { return make(Op::EG, "", {a, b}); }
  Formula Formula::ar(Formula a, Formula b) { return make(Op::AR, "", {a, b}); }
  Formula Formula::af(Formula a, Formula b) { return af(a, b, top()); }
  Formula Formula::af(Formula a, Formula b, Formula c)
  {
    return make(Op::AF, "", {a, b, c});
  }

  bool Formula::is_binary_form() const
  {
    return is_eventuality() && arg(2).is(Op::Top);
  }

  bool Formula::is_literal() const
  {
    switch (op())
    {
      case Op::Var:
      case Op::Root:
        return true;
      case Op::Neg:
        return arg(0).is(Op::Var) || arg(0).is(Op::Root);
      default:
        return false;
    }
  }

  int compare(Formula a, Formula b)
  {
    if (a == b)
      return 0;
    if (a.op() != b.op())
      return a.op() < b.op() ? -1 : 1;
    if (a.size() != b.size())
      return a.size() < b.size() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0)
      return c < 0 ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (int c = compare(a.arg(i), b.arg(i)); c != 0)
        return c;
    return 0;
  }

  Formula conjunction(std::span<const Formula> fs)
  {
    if (fs.empty())
      return Formula::top();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
      acc = Formula::land(acc, fs[i]);
    return acc;
  }

  Formula disjunction(std::span<const Formula> fs)
  {
    if (fs.empty())
      return Formula::bottom();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
      acc = Formula::lor(acc, fs[i]);
    return acc;
  }

  Formula eu_c(Formula p, Formula q, Formula r) { return Formula::eu(p, q, r); }
  Formula af_c(Formula p, Formula q, Formula r) { return Formula::af(p, q, r); }

  Dialect required_dialect(Formula f)
  {
    if (f.uses_next())
      return Dialect::Binary;
    if (f.uses_root())
      return Dialect::Rooted;
    return Dialect::Plain;
  }

  bool fits_dialect(Formula f, Dialect d)
  {
    return static_cast<int>(required_dialect(f)) <= static_cast<int>(d);
  }

  std::vector<Formula> subformulas(Formula f)
  {
    std::unordered_set<Formula> seen;
    std::vector<Formula> stack{f};
    while (!stack.empty())
    {
      Formula g = stack.back();
      stack.pop_back();
      if (!seen.insert(g).second)
        continue;
      for (std::size_t i = 0; i < g.arity(); ++i)
        stack.push_back(g.arg(i));
    }
    std::vector<Formula> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), FormulaLess{});
    return out;
  }

  std::vector<std::string> variables(Formula f)
  {
    std::set<std::string> names;
    for (Formula g : subformulas(f))
      if (g.is(Op::Var))
        names.insert(g.name());
    return {names.begin(), names.end()};
  }

  // ---------------------------------------------------------------- parsing

  ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg),
      pos_(pos)
  {
  }

  namespace
  {
    bool ident_start(char c)
    {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    bool ident_char(char c)
    {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    class Parser
    {
    public:
      Parser(std::string_view text, Dialect d) : text_(text), dialect_(d) {}

      Formula parse()
      {
        Formula f = parse_or();
        skip();
        if (pos_ != text_.size())
          throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return f;
      }

    private:
      void skip()
      {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }

      bool accept(char c)
      {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c)
        {
          ++pos_;
          return true;
        }
        return false;
      }

      void expect(char c)
      {
        if (!accept(c))
        {
          if (pos_ >= text_.size())
            throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
          throw ParseError(std::string("expected '") + c + "'", pos_);
        }
      }

      std::string_view peek_word()
      {
        skip();
        std::size_t p = pos_;
        if (p >= text_.size() || !ident_start(text_[p]))
          return {};
        std::size_t e = p + 1;
        while (e < text_.size() && ident_char(text_[e]))
          ++e;
        return text_.substr(p, e - p);
      }

      Formula parse_or()
      {
        Formula f = parse_and();
        while (accept('|'))
          f = Formula::lor(f, parse_and());
        return f;
      }

      Formula parse_and()
      {
        Formula f = parse_unary();
        while (accept('&'))
          f = Formula::land(f, parse_unary());
        return f;
      }

      void require(Dialect need, std::string_view what, std::size_t at)
      {
        if (static_cast<int>(dialect_) < static_cast<int>(need))
          throw DialectError("'" + std::string(what) + "' at " + std::to_string(at) +
                             " is not available in the " + dialect_name(dialect_) +
                             " dialect");
      }

      Formula parse_unary()
      {
        skip();
        if (accept('~'))
          return Formula::neg(parse_unary());
        if (accept('('))
        {
          Formula f = parse_or();
          expect(')');
          return f;
        }
        std::size_t at = pos_;
        std::string_view w = peek_word();
        if (w.empty())
        {
          if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
          throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        pos_ += w.size();
        if (w == "true")
          return Formula::top();
        if (w == "false")
          return Formula::bottom();
        if (w == "I")
        {
          require(Dialect::Rooted, w, at);
          return Formula::root();
        }
        if (w == "dia")
          return Formula::dia(parse_unary());
        if (w == "box")
          return Formula::box(parse_unary());
        if (w == "X0" || w == "X1")
        {
          require(Dialect::Binary, w, at);
          return Formula::next(w == "X0" ? 0 : 1, parse_unary());
        }
        if (w == "EU" || w == "AF")
        {
          auto args = parse_args(2, 3);
          Formula c = args.size() == 3 ? args[2] : Formula::top();
          return w == "EU" ? Formula::eu(args[0], args[1], c)
                           : Formula::af(args[0], args[1], c);
        }
        if (w == "EG" || w == "AR")
        {
          auto args = parse_args(2, 2);
          return w == "EG" ? Formula::eg(args[0], args[1]) : Formula::ar(args[0], args[1]);
        }
        return Formula::var(w);
      }

      std::vector<Formula> parse_args(std::size_t lo, std::size_t hi)
      {
        std::size_t at = pos_;
        expect('(');
        std::vector<Formula> args{parse_or()};
        while (accept(','))
          args.push_back(parse_or());
        expect(')');
        if (args.size() < lo || args.size() > hi)
          throw ParseError("wrong number of arguments (" + std::to_string(args.size()) + ")",
                           at);
        return args;
      }

      std::string_view text_;
      Dialect dialect_;
      std::size_t pos_ = 0;
    };
  }

  Formula parse_formula(std::string_view text, Dialect dialect)
  {
    return Parser(text, dialect).parse();
  }

  // --------------------------------------------------------------- printing

  namespace
  {
    // 0: or, 1: and, 2: unary/atomic
    int level(Formula f)
    {
      if (f.is(Op::Or))
        return 0;
      if (f.is(Op::And))
        return 1;
      return 2;
    }

    class Printer
    {
    public:
      explicit Printer(PrintOptions o) : opts_(o) {}

      const std::string& print(Formula f)
      {
        auto it = cache_.find(f);
        if (it != cache_.end())
          return it->second;
        std::string s = render(f);
        return cache_.emplace(f, std::move(s)).first->second;
      }

    private:
      std::string wrap(Formula f, int min_level)
      {
        const std::string& s = print(f);
        return level(f) < min_level ? "(" + s + ")" : s;
      }

      std::string call(const char* name, std::initializer_list<Formula> args)
      {
        std::vector<std::string> parts;
        bool spaced = false;
        for (Formula a : args)
        {
          parts.push_back(print(a));
          spaced = spaced || parts.back().find(' ') != std::string::npos;
        }
        std::string out = name;
        out += '(';
        for (std::size_t i = 0; i < parts.size(); ++i)
        {
          if (i)
            out += spaced ? ", " : ",";
          out += parts[i];
        }
        out += ')';
        return out;
      }

      std::string render(Formula f)
      {
        switch (f.op())
        {
          case Op::Bot:
            return "false";
          case Op::Top:
            return "true";
          case Op::Var:
            return f.name();
          case Op::Root:
            return "I";
          case Op::Neg:
            return "~" + wrap(f.arg(0), 2);
          case Op::Or:
            return wrap(f.arg(0), 0) + " | " + wrap(f.arg(1), 1);
          case Op::And:
            return wrap(f.arg(0), 1) + " & " + wrap(f.arg(1), 2);
          case Op::Diamond:
            return "dia " + wrap(f.arg(0), 2);
          case Op::Box:
            return "box " + wrap(f.arg(0), 2);
          case Op::X0:
            return "X0 " + wrap(f.arg(0), 2);
          case Op::X1:
            return "X1 " + wrap(f.arg(0), 2);
          case Op::EG:
            return call("EG", {f.arg(0), f.arg(1)});
          case Op::AR:
            return call("AR", {f.arg(0), f.arg(1)});
          case Op::EU:
          case Op::AF:
          {
            const char* name = f.is(Op::EU) ? "EU" : "AF";
            if (f.is_binary_form() && !opts_.explicit_context)
              return call(name, {f.arg(0), f.arg(1)});
            return call(name, {f.arg(0), f.arg(1), f.arg(2)});
          }
        }
        return "?";
      }

      PrintOptions opts_;
      std::unordered_map<Formula, std::string> cache_;
    };
  }

  std::string to_string(Formula f, PrintOptions opts)
  {
    return Printer(opts).print(f);
  }

  // ----------------------------------------------------------- normal forms

  namespace
  {
    using Memo = std::unordered_map<Formula, Formula>;

    Formula expand(Formula f, Memo& memo);

    Formula expand_and(Formula a, Formula b)
    {
      return Formula::neg(Formula::lor(Formula::neg(a), Formula::neg(b)));
    }

    Formula expand_uncached(Formula f, Memo& memo)
    {
      auto x = [&](std::size_t i) { return expand(f.arg(i), memo); };
      switch (f.op())
      {
        case Op::Bot:
        case Op::Var:
        case Op::Root:
          return f;
        case Op::Top:
          return Formula::neg(Formula::bottom());
        case Op::Neg:
          return Formula::neg(x(0));
        case Op::Or:
          return Formula::lor(x(0), x(1));
        case Op::And:
          return expand_and(x(0), x(1));
        case Op::Diamond:
          return Formula::dia(x(0));
        case Op::Box:
          return Formula::neg(Formula::dia(Formula::neg(x(0))));
        case Op::X0:
          return Formula::next(0, x(0));
        case Op::X1:
          return Formula::next(1, x(0));
        case Op::EG:
          return Formula::eg(x(0), x(1));
        case Op::AR:
          return Formula::neg(Formula::eu(Formula::neg(x(0)), Formula::neg(x(1))));
        case Op::EU:
        {
          if (f.is_binary_form())
            return Formula::eu(x(0), x(1));
          Formula p = f.arg(0), q = f.arg(1), r = f.arg(2);
          Formula def = Formula::lor(
              p, Formula::land(q, Formula::dia(Formula::eu(Formula::land(p, r),
                                                            Formula::land(q, r)))));
          return expand(def, memo);
        }
        case Op::AF:
        {
          if (f.is_binary_form())
            return Formula::neg(Formula::eg(Formula::neg(x(0)), Formula::neg(x(1))));
          Formula p = f.arg(0), q = f.arg(1), r = f.arg(2);
          Formula def = Formula::land(
              Formula::af(p, q),
              Formula::lor(p, Formula::box(Formula::ar(Formula::lor(q, r), p))));
          return expand(def, memo);
        }
      }
      return f;
    }

    Formula expand(Formula f, Memo& memo)
    {
      auto it = memo.find(f);
      if (it != memo.end())
        return it->second;
      Formula r = expand_uncached(f, memo);
      memo.emplace(f, r);
      return r;
    }

    struct NnfBuilder
    {
      Memo pos, negs;

      Formula nnf(Formula f)
      {
        auto it = pos.find(f);
        if (it != pos.end())
          return it->second;
        Formula r = nnf_uncached(f);
        pos.emplace(f, r);
        return r;
      }

      Formula neg(Formula f)
      {
        auto it = negs.find(f);
        if (it != negs.end())
          return it->second;
        Formula r = neg_uncached(f);
        negs.emplace(f, r);
        return r;
      }

      Formula nnf_uncached(Formula f)
      {
        auto n = [&](std::size_t i) { return nnf(f.arg(i)); };
        switch (f.op())
        {
          case Op::Bot:
          case Op::Top:
          case Op::Var:
          case Op::Root:
            return f;
          case Op::Neg:
            return neg(f.arg(0));
          case Op::Or:
            return Formula::lor(n(0), n(1));
          case Op::And:
            return Formula::land(n(0), n(1));
          case Op::Diamond:
            return Formula::dia(n(0));
          case Op::Box:
            return Formula::box(n(0));
          case Op::X0:
            return Formula::next(0, n(0));
          case Op::X1:
            return Formula::next(1, n(0));
          case Op::EU:
            return Formula::eu(n(0), n(1), n(2));
          case Op::EG:
            return Formula::eg(n(0), n(1));
          case Op::AR:
            return Formula::ar(n(0), n(1));
          case Op::AF:
            return Formula::af(n(0), n(1), n(2));
        }
        return f;
      }

      Formula neg_uncached(Formula f)
      {
        auto g = [&](std::size_t i) { return neg(f.arg(i)); };
        switch (f.op())
        {
          case Op::Bot:
            return Formula::top();
          case Op::Top:
            return Formula::bottom();
          case Op::Var:
          case Op::Root:
            return Formula::neg(f);
          case Op::Neg:
            return nnf(f.arg(0));
          case Op::Or:
            return Formula::land(g(0), g(1));
          case Op::And:
            return Formula::lor(g(0), g(1));
          case Op::Diamond:
            return Formula::box(g(0));
          case Op::Box:
            return Formula::dia(g(0));
          case Op::X0:
            return Formula::next(0, g(0));
          case Op::X1:
            return Formula::next(1, g(0));
          case Op::EG:
            return Formula::af(g(0), g(1));
          case Op::AR:
            return Formula::eu(g(0), g(1));
          case Op::EU:
          {
            if (f.is_binary_form())
              return Formula::ar(g(0), g(1));
            Formula p = f.arg(0), q = f.arg(1), r = f.arg(2);
            return neg(Formula::lor(
                p, Formula::land(q, Formula::dia(Formula::eu(Formula::land(p, r),
                                                              Formula::land(q, r))))));
          }
          case Op::AF:
          {
            if (f.is_binary_form())
              return Formula::eg(g(0), g(1));
            Formula p = f.arg(0), q = f.arg(1), r = f.arg(2);
            return neg(Formula::land(
                Formula::af(p, q),
                Formula::lor(p, Formula::box(Formula::ar(Formula::lor(q, r), p)))));
          }
        }
        return f;
      }
    };
  }

  Formula expand_derived(Formula f)
  {
    Memo memo;
    return expand(f, memo);
  }

  Formula formal_negation(Formula f)
  {
    NnfBuilder b;
    return b.neg(f);
  }

  Formula nnf(Formula f)
  {
    NnfBuilder b;
    return b.nnf(f);
  }

  bool is_nnf(Formula f)
  {
    for (Formula g : subformulas(f))
      if (g.is(Op::Neg) && !g.is_literal())
        return false;
    return true;
  }

} // namespace fairctl

#include "fairctl/mso.hpp"

#include "fairctl/formula.hpp"

#include <cctype>
#include <stdexcept>

namespace fairctl
{

  MSOFormula MSOFormula::sub(std::string p, std::string q)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::Sub, std::move(p), std::move(q), {}}));
  }

  MSOFormula MSOFormula::edge(std::string p, std::string q)
  {
    return MSOFormula(
        std::make_shared<const Node>(Node{Kind::Edge, std::move(p), std::move(q), {}}));
  }

  MSOFormula MSOFormula::succ(int dir, std::string p, std::string q)
  {
    return MSOFormula(std::make_shared<const Node>(
        Node{dir == 0 ? Kind::F0 : Kind::F1, std::move(p), std::move(q), {}}));
  }

  MSOFormula MSOFormula::lnot(MSOFormula f)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {f}}));
  }

  MSOFormula MSOFormula::lor(MSOFormula a, MSOFormula b)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {a, b}}));
  }

  MSOFormula MSOFormula::land(MSOFormula a, MSOFormula b)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {a, b}}));
  }

  MSOFormula MSOFormula::implies(MSOFormula a, MSOFormula b) { return lor(lnot(a), b); }

  MSOFormula MSOFormula::iff(MSOFormula a, MSOFormula b)
  {
    return land(implies(a, b), implies(b, a));
  }

  MSOFormula MSOFormula::equal(std::string p, std::string q)
  {
    return land(sub(p, q), sub(q, p));
  }

  MSOFormula MSOFormula::ex(std::string var, MSOFormula f)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::ExSet, std::move(var), {}, {f}}));
  }

  MSOFormula MSOFormula::all(std::string var, MSOFormula f)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::AllSet, std::move(var), {}, {f}}));
  }

  MSOFormula MSOFormula::ex1(std::string var, MSOFormula f)
  {
    return MSOFormula(std::make_shared<const Node>(Node{Kind::ExElem, std::move(var), {}, {f}}));
  }

  MSOFormula MSOFormula::all1(std::string var, MSOFormula f)
  {
    return MSOFormula(
        std::make_shared<const Node>(Node{Kind::AllElem, std::move(var), {}, {f}}));
  }

  bool MSOFormula::uses_successors() const
  {
    if (kind() == Kind::F0 || kind() == Kind::F1)
      return true;
    for (const auto& k : node_->kids)
      if (k.uses_successors())
        return true;
    return false;
  }

  std::set<std::string> MSOFormula::free_variables() const
  {
    std::set<std::string> out;
    if (is_atom())
    {
      out.insert(left());
      out.insert(right());
      return out;
    }
    for (const auto& k : node_->kids)
      for (auto& v : k.free_variables())
        out.insert(v);
    if (is_quantifier())
      out.erase(var());
    return out;
  }

  std::size_t MSOFormula::quantifier_count() const
  {
    std::size_t n = is_quantifier() ? 1 : 0;
    for (const auto& k : node_->kids)
      n += k.quantifier_count();
    return n;
  }

  std::size_t MSOFormula::size() const
  {
    std::size_t n = 1;
    for (const auto& k : node_->kids)
      n += k.size();
    return n;
  }

  std::string to_string(const MSOFormula& f)
  {
    using K = MSOFormula::Kind;
    switch (f.kind())
    {
      case K::Sub:
        return "sub(" + f.left() + "," + f.right() + ")";
      case K::Edge:
        return "edge(" + f.left() + "," + f.right() + ")";
      case K::F0:
        return "f0(" + f.left() + "," + f.right() + ")";
      case K::F1:
        return "f1(" + f.left() + "," + f.right() + ")";
      case K::Not:
        return "~" + to_string(f.child(0));
      case K::Or:
        return "(" + to_string(f.child(0)) + " | " + to_string(f.child(1)) + ")";
      case K::And:
        return "(" + to_string(f.child(0)) + " & " + to_string(f.child(1)) + ")";
      case K::ExSet:
        return "ex " + f.var() + ". " + to_string(f.child(0));
      case K::AllSet:
        return "all " + f.var() + ". " + to_string(f.child(0));
      case K::ExElem:
        return "ex1 " + f.var() + ". " + to_string(f.child(0));
      case K::AllElem:
        return "all1 " + f.var() + ". " + to_string(f.child(0));
    }
    return "?";
  }

  namespace
  {
    class MsoParser
    {
    public:
      explicit MsoParser(std::string_view t) : text_(t) {}

      MSOFormula parse()
      {
        MSOFormula f = parse_or();
        skip();
        if (pos_ != text_.size())
          throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return f;
      }

    private:
      void skip()
      {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
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
          throw ParseError(std::string("expected '") + c + "'", pos_);
      }

      std::string ident()
      {
        skip();
        std::size_t b = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        {
          ++pos_;
          while (pos_ < text_.size() &&
                 (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                  text_[pos_] == '\''))
            ++pos_;
        }
        if (b == pos_)
          throw ParseError("expected identifier", pos_);
        return std::string(text_.substr(b, pos_ - b));
      }

      MSOFormula parse_or()
      {
        MSOFormula f = parse_and();
        while (accept('|'))
          f = MSOFormula::lor(f, parse_and());
        return f;
      }

      MSOFormula parse_and()
      {
        MSOFormula f = parse_unary();
        while (accept('&'))
          f = MSOFormula::land(f, parse_unary());
        return f;
      }

      MSOFormula parse_unary()
      {
        if (accept('~'))
          return MSOFormula::lnot(parse_unary());
        if (accept('('))
        {
          MSOFormula f = parse_or();
          expect(')');
          return f;
        }
        std::size_t at = pos_;
        std::string w = ident();
        if (w == "ex" || w == "all" || w == "ex1" || w == "all1")
        {
          std::string v = ident();
          expect('.');
          MSOFormula body = parse_or();
          if (w == "ex")
            return MSOFormula::ex(v, body);
          if (w == "all")
            return MSOFormula::all(v, body);
          if (w == "ex1")
            return MSOFormula::ex1(v, body);
          return MSOFormula::all1(v, body);
        }
        if (w == "sub" || w == "edge" || w == "f0" || w == "f1")
        {
          expect('(');
          std::string a = ident();
          expect(',');
          std::string b = ident();
          expect(')');
          if (w == "sub")
            return MSOFormula::sub(a, b);
          if (w == "edge")
            return MSOFormula::edge(a, b);
          return MSOFormula::succ(w == "f0" ? 0 : 1, a, b);
        }
        throw ParseError("unknown MSO construct '" + w + "'", at);
      }

      std::string_view text_;
      std::size_t pos_ = 0;
    };

    using Mask = std::uint32_t;

    struct CNode
    {
      MSOFormula::Kind kind;
      std::uint32_t a = 0, b = 0;
      std::uint32_t kid0 = 0, kid1 = 0;
    };

    class Compiled
    {
    public:
      Compiled(const MSOFormula& f, const TransitionSystem& ts,
               const std::map<std::string, NodeSet, std::less<>>& assignment)
        : ts_(ts), n_(ts.size())
      {
        post_.assign(n_, 0);
        for (State s = 0; s < n_; ++s)
          for (State t : ts.successors(s))
            post_[s] |= Mask{1} << t;
        if (ts.is_binary())
          for (int d = 0; d < 2; ++d)
            for (State s = 0; s < n_; ++s)
              fmap_[d].push_back(ts.next(d, s));

        for (const auto& v : f.free_variables())
        {
          Mask m = 0;
          const NodeSet* set = nullptr;
          if (auto it = assignment.find(v); it != assignment.end())
            set = &it->second;
          else if (ts.has_prop(v))
            set = &ts.extension(v);
          else
            throw std::invalid_argument("unbound MSO variable '" + v + "'");
          if (set->size() != n_)
            throw std::invalid_argument("assignment of '" + v + "' has the wrong length");
          for (std::size_t i = 0; i < n_; ++i)
            if ((*set)[i])
              m |= Mask{1} << i;
          scope_.emplace_back(v, static_cast<std::uint32_t>(env_.size()));
          env_.push_back(m);
        }
        root_ = compile(f);
      }

      bool run() { return eval(root_); }

    private:
      std::uint32_t lookup(const std::string& v) const
      {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == v)
            return it->second;
        throw std::logic_error("unresolved MSO variable " + v);
      }

      std::uint32_t compile(const MSOFormula& f)
      {
        using K = MSOFormula::Kind;
        CNode c{f.kind()};
        if (f.is_atom())
        {
          if ((f.kind() == K::F0 || f.kind() == K::F1) && !ts_.is_binary())
            throw std::invalid_argument("f0/f1 atoms need a binary system");
          c.a = lookup(f.left());
          c.b = lookup(f.right());
        }
        else if (f.is_quantifier())
        {
          c.a = static_cast<std::uint32_t>(env_.size());
          env_.push_back(0);
          scope_.emplace_back(f.var(), c.a);
          c.kid0 = compile(f.child(0));
          scope_.pop_back();
        }
        else
        {
          c.kid0 = compile(f.child(0));
          if (f.arity() > 1)
            c.kid1 = compile(f.child(1));
        }
        nodes_.push_back(c);
        return static_cast<std::uint32_t>(nodes_.size() - 1);
      }

      bool eval(std::uint32_t i)
      {
        using K = MSOFormula::Kind;
        const CNode& c = nodes_[i];
        switch (c.kind)
        {
          case K::Sub:
            return (env_[c.a] & ~env_[c.b]) == 0;
          case K::Edge:
          {
            Mask p = env_[c.a], q = env_[c.b];
            for (std::size_t s = 0; s < n_; ++s)
              if ((p >> s & 1u) && (post_[s] & q))
                return true;
            return false;
          }
          case K::F0:
          case K::F1:
          {
            const auto& f = fmap_[c.kind == K::F0 ? 0 : 1];
            Mask p = env_[c.a], q = env_[c.b];
            for (std::size_t s = 0; s < n_; ++s)
              if ((p >> s & 1u) && (q >> f[s] & 1u))
                return true;
            return false;
          }
          case K::Not:
            return !eval(c.kid0);
          case K::Or:
            return eval(c.kid0) || eval(c.kid1);
          case K::And:
            return eval(c.kid0) && eval(c.kid1);
          case K::ExSet:
          case K::AllSet:
          {
            bool want = c.kind == K::ExSet;
            Mask count = Mask{1} << n_;
            for (Mask m = 0; m < count; ++m)
            {
              env_[c.a] = m;
              if (eval(c.kid0) == want)
                return want;
            }
            return !want;
          }
          case K::ExElem:
          case K::AllElem:
          {
            bool want = c.kind == K::ExElem;
            for (std::size_t s = 0; s < n_; ++s)
            {
              env_[c.a] = Mask{1} << s;
              if (eval(c.kid0) == want)
                return want;
            }
            return !want;
          }
        }
        return false;
      }

      const TransitionSystem& ts_;
      std::size_t n_;
      std::vector<Mask> post_;
      std::vector<State> fmap_[2];
      std::vector<std::pair<std::string, std::uint32_t>> scope_;
      std::vector<Mask> env_;
      std::vector<CNode> nodes_;
      std::uint32_t root_ = 0;
    };
  }

  MSOFormula parse_mso(std::string_view text) { return MsoParser(text).parse(); }

  bool mso_eval(const MSOFormula& f, const TransitionSystem& ts,
                const std::map<std::string, NodeSet, std::less<>>& assignment)
  {
    if (ts.size() > kMsoStateLimit)
      throw std::invalid_argument("MSO evaluation limited to " +
                                  std::to_string(kMsoStateLimit) + " states");
    Compiled c(f, ts, assignment);
    return c.run();
  }

} // namespace fairctl

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairctl
{

  /// Operator symbols of fair CTL and its rooted/binary extensions.
  ///
  /// EU and AF always carry three arguments; the binary forms EU(a,b) and
  /// AF(a,b) are stored with a literal `true` in the context slot.
  enum class Op : std::uint8_t
  {
    Bot,
    Top,
    Var,
    Neg,
    Or,
    And,
    Diamond,
    Box,
    EU,
    EG,
    AR,
    AF,
    Root,
    X0,
    X1,
  };

  enum class Dialect : std::uint8_t
  {
    Plain,
    Rooted,
    Binary,
  };

  const char* dialect_name(Dialect d);
  Dialect parse_dialect(std::string_view name);

  namespace detail
  {
    struct Node
    {
      Op op;
      std::uint8_t arity;
      bool uses_root;
      bool uses_next;
      std::uint32_t id;
      std::uint32_t size;
      std::size_t hash;
      std::string name;
      std::array<const Node*, 3> args;
    };
  }

  /// Handle to an interned, immutable formula node.
  ///
  /// Structurally equal formulas are the same node, so equality and hashing
  /// are pointer operations. The intern table is process-global and guarded
  /// by a mutex; handles stay valid for the lifetime of the process.
  class Formula
  {
  public:
    Formula();

    static Formula bottom();
    static Formula top();
    static Formula var(std::string_view name);
    static Formula root();
    static Formula neg(Formula f);
    static Formula lor(Formula a, Formula b);
    static Formula land(Formula a, Formula b);
    static Formula dia(Formula f);
    static Formula box(Formula f);
    static Formula next(int dir, Formula f);
    static Formula eu(Formula a, Formula b);
    static Formula eu(Formula a, Formula b, Formula context);
    static Formula eg(Formula a, Formula b);
    static Formula ar(Formula a, Formula b);
    static Formula af(Formula a, Formula b);
    static Formula af(Formula a, Formula b, Formula context);

    Op op() const { return node_->op; }
    std::size_t arity() const { return node_->arity; }
    Formula arg(std::size_t i) const { return Formula(node_->args[i]); }
    const std::string& name() const { return node_->name; }

    /// Interning order; stable within one process only.
    std::uint32_t id() const { return node_->id; }
    /// Number of nodes in the tree view (shared subterms counted repeatedly,
    /// saturating).
    std::uint32_t size() const { return node_->size; }
    std::size_t hash() const { return node_->hash; }

    bool uses_root() const { return node_->uses_root; }
    bool uses_next() const { return node_->uses_next; }
    bool is(Op o) const { return node_->op == o; }
    bool is_eventuality() const
    {
      return node_->op == Op::EU || node_->op == Op::AF;
    }
    /// EU/AF whose context argument is `true`.
    bool is_binary_form() const;
    bool is_literal() const;

    const detail::Node* node() const { return node_; }

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

  private:
    explicit Formula(const detail::Node* n) : node_(n) {}
    static Formula make(Op op, std::string_view name,
                        std::initializer_list<Formula> args);

    const detail::Node* node_;
  };

  /// Total structural order, independent of interning history.
  int compare(Formula a, Formula b);

  struct FormulaLess
  {
    bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
  };

  struct FormulaHash
  {
    std::size_t operator()(Formula f) const { return f.hash(); }
  };

  /// Empty conjunction is `true`, empty disjunction is `false`.
  Formula conjunction(std::span<const Formula> fs);
  Formula disjunction(std::span<const Formula> fs);

  Formula eu_c(Formula p, Formula q, Formula r);
  Formula af_c(Formula p, Formula q, Formula r);

  Dialect required_dialect(Formula f);
  bool fits_dialect(Formula f, Dialect d);

  /// Distinct subformulas (including the context slot of EU/AF), in
  /// structural order.
  std::vector<Formula> subformulas(Formula f);
  /// Proposition names occurring in f, sorted.
  std::vector<std::string> variables(Formula f);

  class ParseError : public std::runtime_error
  {
  public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
  };

  class DialectError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  Formula parse_formula(std::string_view text, Dialect dialect = Dialect::Binary);

  struct PrintOptions
  {
    /// Print EU/AF with a `true` context as ternary instead of abbreviating.
    bool explicit_context = false;
  };

  std::string to_string(Formula f, PrintOptions opts = {});

  /// Rewrite into the basic symbols bot, neg, or, dia, EU, EG (plus I, X0, X1).
  Formula expand_derived(Formula f);
  /// Formal negation of f, in negation normal form.
  Formula formal_negation(Formula f);
  Formula nnf(Formula f);
  bool is_nnf(Formula f);

} // namespace fairctl

template <>
struct std::hash<fairctl::Formula>
{
  std::size_t operator()(fairctl::Formula f) const noexcept { return f.hash(); }
};

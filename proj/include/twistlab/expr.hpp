#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/mapclass.hpp"

namespace twistlab {

class expr_parse_error : public std::runtime_error {
 public:
  expr_parse_error(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A twist-word expression:
//
//   expr    := factor ('*' factor)*
//   factor  := primary ('^' integer)?
//   primary := '(' expr ')' | 'T' '(' i ',' j ')' | 'U' | 'CONJ' '(' atom ',' expr ')'
//
// Whitespace is insignificant, products apply the rightmost factor first,
// '^' binds tighter than '*', and the empty string is the identity.  One-
// sided T(i,j) (even j-i) is rejected at parse time; crosscap ranges against
// a concrete surface are checked when the expression is realized.
class Expr {
 public:
  Expr() : root_(std::make_shared<Node>(Node{Kind::Product, {}, 1, 0, 0})) {}

  static Expr parse(const std::string& text) {
    Parser p{text, 0};
    p.skip_ws();
    if (p.done()) return Expr();  // identity
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (!p.done()) throw expr_parse_error("unexpected trailing input", p.pos);
    return Expr(std::move(root));
  }

  // Canonical text form; parsing it back yields the same expression.
  std::string str() const { return print(*root_, false); }

  // Interprets the expression over the given surface's table.
  MappingClass realize(const SurfaceModel& model) const { return realize_node(*root_, model); }

 private:
  enum class Kind { Product, Power, Twist, Transposition, Conj };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    std::vector<NodePtr> children;  // Product: factors; Power: [child]; Conj: [atom, inner]
    int expo;                       // Power only
    int i, j;                       // Twist only
  };

  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  struct Parser {
    const std::string& s;
    std::size_t pos;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }

    void skip_ws() {
      while (!done() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    void expect(char c, const char* what) {
      skip_ws();
      if (done() || s[pos] != c) throw expr_parse_error(std::string("expected ") + what, pos);
      ++pos;
    }

    int parse_int(const char* what) {
      skip_ws();
      const std::size_t start = pos;
      if (!done() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      std::size_t digits = 0;
      long long value = 0;
      while (!done() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        value = value * 10 + (s[pos] - '0');
        if (value > 1000000) throw expr_parse_error("integer out of range", start);
        ++digits;
        ++pos;
      }
      if (digits == 0) throw expr_parse_error(std::string("expected ") + what, start);
      return static_cast<int>(s[start] == '-' ? -value : value);
    }

    NodePtr parse_expr() {
      std::vector<NodePtr> factors{parse_factor()};
      for (;;) {
        skip_ws();
        if (done() || s[pos] != '*') break;
        ++pos;
        factors.push_back(parse_factor());
      }
      if (factors.size() == 1) return factors.front();
      return std::make_shared<Node>(Node{Kind::Product, std::move(factors), 1, 0, 0});
    }

    NodePtr parse_factor() {
      NodePtr base = parse_primary();
      skip_ws();
      if (!done() && s[pos] == '^') {
        ++pos;
        int e = parse_int("exponent after '^'");
        return std::make_shared<Node>(Node{Kind::Power, {std::move(base)}, e, 0, 0});
      }
      return base;
    }

    NodePtr parse_primary() {
      skip_ws();
      if (done()) throw expr_parse_error("expected a factor", pos);
      if (s[pos] == '(') {
        ++pos;
        NodePtr inner = parse_expr();
        expect(')', "')'");
        return inner;
      }
      const std::size_t start = pos;
      std::string name;
      while (!done() && std::isalpha(static_cast<unsigned char>(s[pos]))) name += s[pos++];
      if (name == "T") {
        expect('(', "'(' after T");
        int i = parse_int("crosscap index");
        expect(',', "','");
        int j = parse_int("crosscap index");
        expect(')', "')'");
        if (i < 1) throw expr_parse_error("crosscap index must be at least 1", start);
        if (j <= i) throw expr_parse_error("curve range must increase", start);
        if (((j - i) & 1) == 0)
          throw expr_parse_error("one-sided curve has no twist", start);
        return std::make_shared<Node>(Node{Kind::Twist, {}, 1, i, j});
      }
      if (name == "U")
        return std::make_shared<Node>(Node{Kind::Transposition, {}, 1, 0, 0});
      if (name == "CONJ") {
        expect('(', "'(' after CONJ");
        NodePtr atom = parse_primary();
        if (atom->kind != Kind::Twist && atom->kind != Kind::Transposition)
          throw expr_parse_error("CONJ needs an elementary first argument", start);
        expect(',', "','");
        NodePtr inner = parse_expr();
        expect(')', "')'");
        return std::make_shared<Node>(Node{Kind::Conj, {std::move(atom), std::move(inner)}, 1, 0, 0});
      }
      if (name.empty()) throw expr_parse_error("expected a factor", pos);
      throw expr_parse_error("unknown atom '" + name + "'", start);
    }
  };

  static std::string print(const Node& n, bool parenthesize) {
    switch (n.kind) {
      case Kind::Twist:
        return "T(" + std::to_string(n.i) + "," + std::to_string(n.j) + ")";
      case Kind::Transposition:
        return "U";
      case Kind::Conj:
        return "CONJ(" + print(*n.children[0], false) + ", " + print(*n.children[1], false) + ")";
      case Kind::Power: {
        const Node& c = *n.children[0];
        const bool atom = c.kind == Kind::Twist || c.kind == Kind::Transposition ||
                          c.kind == Kind::Conj;
        std::string body = atom ? print(c, false) : "(" + print(c, false) + ")";
        return body + "^" + std::to_string(n.expo);
      }
      case Kind::Product: {
        std::string out;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i) out += " * ";
          const Node& c = *n.children[i];
          out += c.kind == Kind::Product ? "(" + print(c, false) + ")" : print(c, false);
        }
        return parenthesize ? "(" + out + ")" : out;
      }
    }
    return {};
  }

  static MappingClass realize_node(const Node& n, const SurfaceModel& model) {
    switch (n.kind) {
      case Kind::Twist:
        model.elementary_twist(n.i, n.j);  // range check with a precise error
        return MappingClass::named(model, SurfaceModel::twist_name(n.i, n.j));
      case Kind::Transposition:
        return MappingClass::named(model, "U");
      case Kind::Conj: {
        const Node& atom = *n.children[0];
        const std::string base = atom.kind == Kind::Transposition
                                     ? "U"
                                     : SurfaceModel::twist_name(atom.i, atom.j);
        if (atom.kind == Kind::Twist) model.elementary_twist(atom.i, atom.j);
        return conjugated_twist(model, base, realize_node(*n.children[1], model));
      }
      case Kind::Power:
        return realize_node(*n.children[0], model).power(n.expo);
      case Kind::Product: {
        MappingClass acc = MappingClass::identity(model);
        for (const NodePtr& c : n.children) acc = acc * realize_node(*c, model);
        return acc;
      }
    }
    return MappingClass::identity(model);
  }

  NodePtr root_;
};

}  // namespace twistlab

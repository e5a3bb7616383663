#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wardlab/errors.hpp"

namespace wardlab {

// Small expression grammar for black-box functions and sequences:
//   literals, the variable (x or n), + - * /, ^, pow, sqrt, log (base 10),
//   ln, cos, abs, step(a) (indicator x >= a), piecewise(b1,e1,...,eN).
// step thresholds and piecewise breakpoints must be constant subexpressions.
class Expression {
 public:
  static Expression parse(const std::string& text) {
    Parser p{text, 0};
    Node root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
      throw ContractError("expression: trailing input at '" +
                          text.substr(p.pos) + "'");
    Expression e;
    e.text_ = text;
    e.fn_ = std::move(root.fn);
    return e;
  }

  double operator()(double x) const { return fn_(x); }
  const std::string& text() const { return text_; }
  std::function<double(double)> as_function() const { return fn_; }

 private:
  struct Node {
    std::function<double(double)> fn;
    bool uses_var = false;
  };

  struct Parser {
    const std::string& s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    }

    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    void expect(char c) {
      if (!eat(c))
        throw ContractError(std::string("expression: expected '") + c +
                            "' near position " + std::to_string(pos));
    }

    Node parse_expr() {
      Node lhs = parse_term();
      while (true) {
        skip_ws();
        if (eat('+')) {
          Node rhs = parse_term();
          lhs = combine(lhs, rhs, [](double a, double b) { return a + b; });
        } else if (eat('-')) {
          Node rhs = parse_term();
          lhs = combine(lhs, rhs, [](double a, double b) { return a - b; });
        } else {
          return lhs;
        }
      }
    }

    Node parse_term() {
      Node lhs = parse_factor();
      while (true) {
        skip_ws();
        if (eat('*')) {
          Node rhs = parse_factor();
          lhs = combine(lhs, rhs, [](double a, double b) { return a * b; });
        } else if (eat('/')) {
          Node rhs = parse_factor();
          lhs = combine(lhs, rhs, [](double a, double b) { return a / b; });
        } else {
          return lhs;
        }
      }
    }

    Node parse_factor() {
      skip_ws();
      if (eat('-')) {  // unary minus binds looser than ^: -x^2 = -(x^2)
        Node inner = parse_factor();
        auto f = inner.fn;
        return {[f](double x) { return -f(x); }, inner.uses_var};
      }
      Node base = parse_primary();
      skip_ws();
      if (eat('^')) {
        Node exp = parse_factor();  // right associative
        return combine(base, exp,
                       [](double a, double b) { return std::pow(a, b); });
      }
      return base;
    }

    Node parse_primary() {
      skip_ws();
      if (pos >= s.size())
        throw ContractError("expression: unexpected end of input");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        Node inner = parse_expr();
        expect(')');
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        double v;
        try {
          v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
          throw ContractError("expression: bad number near position " +
                              std::to_string(pos));
        }
        pos += used;
        return {[v](double) { return v; }, false};
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string name;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
          name += s[pos++];
        skip_ws();
        if (pos < s.size() && s[pos] == '(') return parse_call(name);
        if (name == "x" || name == "n")
          return {[](double x) { return x; }, true};
        if (name == "pi")
          return {[](double) { return 3.14159265358979323846; }, false};
        if (name == "e")
          return {[](double) { return 2.71828182845904523536; }, false};
        throw ContractError("expression: unknown identifier '" + name + "'");
      }
      throw ContractError(std::string("expression: unexpected character '") + c +
                          "'");
    }

    Node parse_call(const std::string& name) {
      expect('(');
      std::vector<Node> args;
      if (!eat(')')) {
        args.push_back(parse_expr());
        while (eat(',')) args.push_back(parse_expr());
        expect(')');
      }
      auto unary = [&](double (*op)(double)) {
        require_arity(name, args, 1);
        auto f = args[0].fn;
        return Node{[f, op](double x) { return op(f(x)); }, args[0].uses_var};
      };
      if (name == "sqrt") return unary([](double v) { return std::sqrt(v); });
      if (name == "log") return unary([](double v) { return std::log10(v); });
      if (name == "ln") return unary([](double v) { return std::log(v); });
      if (name == "cos") return unary([](double v) { return std::cos(v); });
      if (name == "abs") return unary([](double v) { return std::fabs(v); });
      if (name == "pow") {
        require_arity(name, args, 2);
        return combine(args[0], args[1],
                       [](double a, double b) { return std::pow(a, b); });
      }
      if (name == "step") {
        require_arity(name, args, 1);
        const double a = constant_of(name, args[0]);
        return Node{[a](double x) { return x >= a ? 1.0 : 0.0; }, true};
      }
      if (name == "piecewise") {
        // piecewise(b1, e1, b2, e2, ..., eDefault): value e_i where x < b_i,
        // falling through to the default.
        if (args.size() < 3 || args.size() % 2 == 0)
          throw ContractError("piecewise: need b1, e1, ..., eDefault");
        std::vector<double> breaks;
        std::vector<std::function<double(double)>> branches;
        for (std::size_t i = 0; i + 1 < args.size(); i += 2) {
          breaks.push_back(constant_of(name, args[i]));
          branches.push_back(args[i + 1].fn);
        }
        for (std::size_t i = 1; i < breaks.size(); ++i)
          if (breaks[i] <= breaks[i - 1])
            throw ContractError("piecewise: breakpoints must be ascending");
        auto fallback = args.back().fn;
        return Node{[breaks, branches, fallback](double x) {
                      for (std::size_t i = 0; i < breaks.size(); ++i)
                        if (x < breaks[i]) return branches[i](x);
                      return fallback(x);
                    },
                    true};
      }
      throw ContractError("expression: unknown function '" + name + "'");
    }

    static void require_arity(const std::string& name,
                              const std::vector<Node>& args, std::size_t n) {
      if (args.size() != n)
        throw ContractError("expression: " + name + " takes " +
                            std::to_string(n) + " argument(s)");
    }

    static double constant_of(const std::string& name, const Node& node) {
      if (node.uses_var)
        throw ContractError("expression: " + name +
                            " needs a constant argument");
      return node.fn(0.0);
    }

    template <typename Op>
    static Node combine(const Node& a, const Node& b, Op op) {
      auto fa = a.fn;
      auto fb = b.fn;
      return {[fa, fb, op](double x) { return op(fa(x), fb(x)); },
              a.uses_var || b.uses_var};
    }
  };

  std::string text_;
  std::function<double(double)> fn_;
};

}  // namespace wardlab

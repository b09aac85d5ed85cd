#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whitney/errors.hpp"

namespace whitney {

// Syntax error in an expression. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::vector<std::string> expected);
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/*
 * Scalar expression over a fixed list of variables.
 *
 *   expr    ::= term { ("+" | "-") term }
 *   term    ::= unary { ("*" | "/") unary }
 *   unary   ::= "-" unary | primary
 *   primary ::= number | identifier | func "(" args ")" | "(" expr ")"
 *   func    ::= sin | cos | exp | sqrt | atan2
 *
 * `pi` is a predefined constant. Expressions are immutable; evaluation runs
 * a compiled postfix program.
 */
class Expression {
 public:
  struct Node;

  Expression();  // the constant 0

  static Expression parse(std::string_view text, std::vector<std::string> variables);
  static Expression constant(double value);

  double evaluate(std::span<const double> values) const;
  double operator()(double a) const { return evaluate(std::span<const double>(&a, 1)); }
  double operator()(double a, double b) const {
    const double v[2] = {a, b};
    return evaluate(v);
  }

  // Symbolic derivative with respect to variables()[index].
  Expression derivative(std::size_t index) const;

  bool is_constant() const;
  const std::vector<std::string>& variables() const { return variables_; }
  std::string to_string() const;

 private:
  struct Instr {
    int op;
    double value;
  };
  Expression(std::shared_ptr<const Node> root, std::vector<std::string> variables);
  void compile();

  std::shared_ptr<const Node> root_;
  std::vector<std::string> variables_;
  std::vector<Instr> program_;
  std::size_t max_stack_ = 1;
};

}  // namespace whitney

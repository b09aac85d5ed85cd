#include "whitney/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace whitney {

ParseError::ParseError(std::string message, std::size_t position, std::vector<std::string> expected)
    : Error(message + " at position " + std::to_string(position)),
      position_(position),
      expected_(std::move(expected)) {}

enum Op : int { kNum, kVar, kAdd, kSub, kMul, kDiv, kNeg, kSin, kCos, kExp, kSqrt, kAtan2 };

struct Expression::Node {
  Op op = kNum;
  double value = 0.0;
  int var = -1;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr num(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = kNum;
  n->value = v;
  return n;
}

NodePtr var(int index) {
  auto n = std::make_shared<Expression::Node>();
  n->op = kVar;
  n->var = index;
  return n;
}

bool is_num(const NodePtr& n, double v) { return n->op == kNum && n->value == v; }

double apply(Op op, double x, double y) {
  switch (op) {
    case kAdd: return x + y;
    case kSub: return x - y;
    case kMul: return x * y;
    case kDiv: return x / y;
    case kNeg: return -x;
    case kSin: return std::sin(x);
    case kCos: return std::cos(x);
    case kExp: return std::exp(x);
    case kSqrt: return std::sqrt(x);
    case kAtan2: return std::atan2(x, y);
    default: throw std::logic_error("not an operator");
  }
}

// Builds a node, folding constants and trivial identities.
NodePtr make(Op op, NodePtr a, NodePtr b = nullptr) {
  const bool binary = op == kAdd || op == kSub || op == kMul || op == kDiv || op == kAtan2;
  if (a->op == kNum && (!binary || b->op == kNum)) return num(apply(op, a->value, binary ? b->value : 0.0));
  switch (op) {
    case kAdd:
      if (is_num(a, 0.0)) return b;
      if (is_num(b, 0.0)) return a;
      break;
    case kSub:
      if (is_num(b, 0.0)) return a;
      if (is_num(a, 0.0)) return make(kNeg, b);
      break;
    case kMul:
      if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
      if (is_num(a, 1.0)) return b;
      if (is_num(b, 1.0)) return a;
      break;
    case kDiv:
      if (is_num(a, 0.0)) return num(0.0);
      if (is_num(b, 1.0)) return a;
      break;
    case kNeg:
      if (a->op == kNeg) return a->a;
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr differentiate(const NodePtr& n, int index) {
  switch (n->op) {
    case kNum: return num(0.0);
    case kVar: return num(n->var == index ? 1.0 : 0.0);
    case kAdd: return make(kAdd, differentiate(n->a, index), differentiate(n->b, index));
    case kSub: return make(kSub, differentiate(n->a, index), differentiate(n->b, index));
    case kNeg: return make(kNeg, differentiate(n->a, index));
    case kMul:
      return make(kAdd, make(kMul, differentiate(n->a, index), n->b), make(kMul, n->a, differentiate(n->b, index)));
    case kDiv:
      return make(kDiv,
                  make(kSub, make(kMul, differentiate(n->a, index), n->b), make(kMul, n->a, differentiate(n->b, index))),
                  make(kMul, n->b, n->b));
    case kSin: return make(kMul, make(kCos, n->a), differentiate(n->a, index));
    case kCos: return make(kNeg, make(kMul, make(kSin, n->a), differentiate(n->a, index)));
    case kExp: return make(kMul, n, differentiate(n->a, index));
    case kSqrt: return make(kDiv, differentiate(n->a, index), make(kMul, num(2.0), n));
    case kAtan2: {
      // d atan2(u, v) = (v du - u dv) / (u^2 + v^2)
      const NodePtr& u = n->a;
      const NodePtr& v = n->b;
      return make(kDiv,
                  make(kSub, make(kMul, v, differentiate(u, index)), make(kMul, u, differentiate(v, index))),
                  make(kAdd, make(kMul, u, u), make(kMul, v, v)));
    }
  }
  throw std::logic_error("unknown node");
}

void render(const NodePtr& n, const std::vector<std::string>& vars, std::ostringstream& out) {
  switch (n->op) {
    case kNum: {
      std::ostringstream s;
      s.precision(17);
      s << n->value;
      out << (n->value < 0 ? "(" + s.str() + ")" : s.str());
      return;
    }
    case kVar: out << vars[static_cast<std::size_t>(n->var)]; return;
    case kNeg: out << "(-"; render(n->a, vars, out); out << ")"; return;
    case kAdd: case kSub: case kMul: case kDiv: {
      static constexpr char sym[] = {'+', '-', '*', '/'};
      out << "(";
      render(n->a, vars, out);
      out << sym[n->op - kAdd];
      render(n->b, vars, out);
      out << ")";
      return;
    }
    case kSin: case kCos: case kExp: case kSqrt: {
      static constexpr const char* names[] = {"sin", "cos", "exp", "sqrt"};
      out << names[n->op - kSin] << "(";
      render(n->a, vars, out);
      out << ")";
      return;
    }
    case kAtan2:
      out << "atan2(";
      render(n->a, vars, out);
      out << ",";
      render(n->b, vars, out);
      out << ")";
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'", {"operator", "end of input"});
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError("syntax error: " + msg, pos_, std::move(expected));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      if (accept('+'))
        n = make(kAdd, n, term());
      else if (accept('-'))
        n = make(kSub, n, term());
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      if (accept('*'))
        n = make(kMul, n, unary());
      else if (accept('/'))
        n = make(kDiv, n, unary());
      else
        return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(kNeg, unary());
    return primary();
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input", {"number", "identifier", "(", "-"});
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) fail("missing ')'", {")"});
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'", {"number", "identifier", "(", "-"});
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(lexeme, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != lexeme.size()) {
      pos_ = start;
      fail("malformed number '" + lexeme + "'", {"number"});
    }
    return num(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return var(static_cast<int>(i));
    if (name == "pi") return num(std::numbers::pi);

    struct Fn {
      const char* name;
      Op op;
      std::size_t arity;
    };
    static constexpr Fn fns[] = {{"sin", kSin, 1}, {"cos", kCos, 1}, {"exp", kExp, 1}, {"sqrt", kSqrt, 1}, {"atan2", kAtan2, 2}};
    for (const Fn& f : fns) {
      if (name != f.name) continue;
      if (!accept('(')) fail("function '" + name + "' needs '('", {"("});
      std::vector<NodePtr> args{expr()};
      while (accept(',')) args.push_back(expr());
      if (!accept(')')) fail("missing ')' after arguments of '" + name + "'", {")", ","});
      if (args.size() != f.arity) {
        pos_ = start;
        throw ParseError("arity mismatch: '" + name + "' takes " + std::to_string(f.arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         start, {std::to_string(f.arity) + " argument(s)"});
      }
      return f.arity == 1 ? make(f.op, args[0]) : make(f.op, args[0], args[1]);
    }
    std::vector<std::string> expected = vars_;
    expected.insert(expected.end(), {"pi", "sin", "cos", "exp", "sqrt", "atan2"});
    throw ParseError("unknown identifier '" + name + "'", start, std::move(expected));
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kStackLimit = 256;

}  // namespace

Expression::Expression() : Expression(num(0.0), {}) {}

Expression::Expression(std::shared_ptr<const Node> root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {
  compile();
}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Parser p(text, variables);
  NodePtr root = p.parse();
  return Expression(std::move(root), std::move(variables));
}

Expression Expression::constant(double value) { return Expression(num(value), {}); }

void Expression::compile() {
  program_.clear();
  std::size_t depth = 0;
  max_stack_ = 1;
  auto emit = [&](auto&& self, const NodePtr& n) -> void {
    switch (n->op) {
      case kNum: program_.push_back({kNum, n->value}); ++depth; break;
      case kVar: program_.push_back({kVar, static_cast<double>(n->var)}); ++depth; break;
      case kNeg: case kSin: case kCos: case kExp: case kSqrt:
        self(self, n->a);
        program_.push_back({n->op, 0.0});
        break;
      default:
        self(self, n->a);
        self(self, n->b);
        program_.push_back({n->op, 0.0});
        --depth;
        break;
    }
    max_stack_ = std::max(max_stack_, depth);
  };
  emit(emit, root_);
  if (max_stack_ > kStackLimit) throw InvalidInput("expression nests too deeply");
}

double Expression::evaluate(std::span<const double> values) const {
  std::array<double, kStackLimit> stack;
  std::size_t top = 0;
  for (const Instr& ins : program_) {
    switch (ins.op) {
      case kNum: stack[top++] = ins.value; break;
      case kVar: stack[top++] = values[static_cast<std::size_t>(ins.value)]; break;
      case kAdd: --top; stack[top - 1] += stack[top]; break;
      case kSub: --top; stack[top - 1] -= stack[top]; break;
      case kMul: --top; stack[top - 1] *= stack[top]; break;
      case kDiv: --top; stack[top - 1] /= stack[top]; break;
      case kNeg: stack[top - 1] = -stack[top - 1]; break;
      case kSin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case kCos: stack[top - 1] = std::cos(stack[top - 1]); break;
      case kExp: stack[top - 1] = std::exp(stack[top - 1]); break;
      case kSqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
      case kAtan2: --top; stack[top - 1] = std::atan2(stack[top - 1], stack[top]); break;
    }
  }
  return stack[0];
}

Expression Expression::derivative(std::size_t index) const {
  return Expression(differentiate(root_, static_cast<int>(index)), variables_);
}

bool Expression::is_constant() const { return root_->op == kNum; }

std::string Expression::to_string() const {
  std::ostringstream out;
  render(root_, variables_, out);
  return out.str();
}

}  // namespace whitney

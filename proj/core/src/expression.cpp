#include "diracedge/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "diracedge/common.hpp"

namespace diracedge {

struct Expression::Node {
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kFunc };
  Op op = Op::kConst;
  double value = 0.0;                   // kConst
  int var = 0;                          // kVar: index into (x1,x2,xi1,xi2)
  double (*func)(double) = nullptr;     // kFunc
  std::shared_ptr<const Node> a, b;

  double eval(const std::array<double, 4>& z) const {
    switch (op) {
      case Op::kConst: return value;
      case Op::kVar: return z[static_cast<std::size_t>(var)];
      case Op::kAdd: return a->eval(z) + b->eval(z);
      case Op::kSub: return a->eval(z) - b->eval(z);
      case Op::kMul: return a->eval(z) * b->eval(z);
      case Op::kDiv: return a->eval(z) / b->eval(z);
      case Op::kPow: return std::pow(a->eval(z), b->eval(z));
      case Op::kNeg: return -a->eval(z);
      case Op::kFunc: return func(a->eval(z));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw invalid_input("expression error at position " +
                        std::to_string(pos_ + 1) + ": " + what + " in \"" +
                        s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static NodePtr make(Node&& n) {
    return std::make_shared<const Node>(std::move(n));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        Node n; n.op = Node::Op::kAdd; n.a = lhs; n.b = term();
        lhs = make(std::move(n));
      } else if (eat('-')) {
        Node n; n.op = Node::Op::kSub; n.a = lhs; n.b = term();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*')) {
        Node n; n.op = Node::Op::kMul; n.a = lhs; n.b = factor();
        lhs = make(std::move(n));
      } else if (eat('/')) {
        Node n; n.op = Node::Op::kDiv; n.a = lhs; n.b = factor();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (eat('-')) {
      Node n; n.op = Node::Op::kNeg; n.a = factor();
      return make(std::move(n));
    }
    if (eat('+')) return factor();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) {
      Node n; n.op = Node::Op::kPow; n.a = base; n.b = factor();
      return make(std::move(n));
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    Node n; n.op = Node::Op::kConst; n.value = v;
    return make(std::move(n));
  }

  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_]))))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "x1" || name == "x2" || name == "xi1" || name == "xi2") {
      Node n; n.op = Node::Op::kVar;
      n.var = name == "x1" ? 0 : name == "x2" ? 1 : name == "xi1" ? 2 : 3;
      return make(std::move(n));
    }
    double (*f)(double) = nullptr;
    if (name == "tanh") f = std::tanh;
    else if (name == "sin") f = std::sin;
    else if (name == "cos") f = std::cos;
    else if (name == "exp") f = std::exp;
    if (f != nullptr) {
      if (!eat('(')) fail("function '" + name + "' needs '('");
      Node n; n.op = Node::Op::kFunc; n.func = f; n.a = expr();
      if (!eat(')')) fail("missing ')'");
      return make(std::move(n));
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

double Expression::operator()(const std::array<double, 4>& z) const {
  if (!root_) throw invalid_input("evaluating empty expression");
  return root_->eval(z);
}

}  // namespace diracedge

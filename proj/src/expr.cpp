#include "algspray/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string_view>

namespace algspray {

namespace {

struct Token {
  enum class Type { Number, Ident, Op, LParen, RParen, End };
  Type type;
  size_t offset;
  double number = 0.0;
  std::string text;  // Ident / Op
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::Type::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.data() + pos_;
      const char* end = src_.data() + src_.size();
      double value = 0.0;
      auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc() || res.ptr == begin)
        throw ParseError("malformed number", pos_);
      tok_.type = Token::Type::Number;
      tok_.number = value;
      pos_ += static_cast<size_t>(res.ptr - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.type = Token::Type::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (c == '(') {
      tok_.type = Token::Type::LParen;
      ++pos_;
      return;
    }
    if (c == ')') {
      tok_.type = Token::Type::RParen;
      ++pos_;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tok_.type = Token::Type::Op;
      tok_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& src_;
  size_t pos_ = 0;
  Token tok_;
};

const std::map<std::string, Expr::Fn>& function_table() {
  static const std::map<std::string, Expr::Fn> table = {
      {"sin", Expr::Fn::Sin},   {"cos", Expr::Fn::Cos},   {"tan", Expr::Fn::Tan},
      {"exp", Expr::Fn::Exp},   {"log", Expr::Fn::Log},   {"sqrt", Expr::Fn::Sqrt},
      {"sinh", Expr::Fn::Sinh}, {"cosh", Expr::Fn::Cosh},
  };
  return table;
}

const char* function_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Tan: return "tan";
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Log: return "log";
    case Expr::Fn::Sqrt: return "sqrt";
    case Expr::Fn::Sinh: return "sinh";
    case Expr::Fn::Cosh: return "cosh";
  }
  return "?";
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
  Parser(const std::string& src, int n, int m) : lex_(src), n_(n), m_(m) {}

  ExprPtr run() {
    ExprPtr e = sum();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End)
      throw ParseError("unexpected trailing input", t.offset);
    return e;
  }

private:
  ExprPtr sum() {
    ExprPtr left = term();
    while (lex_.peek().type == Token::Type::Op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      Token op = lex_.take();
      ExprPtr right = term();
      Expr e;
      e.kind = (op.text == "+") ? Expr::Kind::Add : Expr::Kind::Sub;
      e.a = left;
      e.b = right;
      left = make(std::move(e));
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (lex_.peek().type == Token::Type::Op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.take();
      ExprPtr right = unary();
      Expr e;
      e.kind = (op.text == "*") ? Expr::Kind::Mul : Expr::Kind::Div;
      e.a = left;
      e.b = right;
      left = make(std::move(e));
    }
    return left;
  }

  ExprPtr unary() {
    if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "-") {
      lex_.take();
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.a = unary();
      return make(std::move(e));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "^") {
      lex_.take();
      Expr e;
      e.kind = Expr::Kind::Pow;
      e.a = base;
      e.exponent = exponent();
      return make(std::move(e));
    }
    return base;
  }

  // integer literal, optionally signed or parenthesized; a further ^ nests
  // right-associatively and is folded at parse time
  int exponent() {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::LParen) {
      lex_.take();
      int value = exponent();
      const Token& close = lex_.peek();
      if (close.type != Token::Type::RParen)
        throw ParseError("expected ')' after exponent", close.offset);
      lex_.take();
      return maybe_tower(value);
    }
    int sign = 1;
    if (t.type == Token::Type::Op && t.text == "-") {
      lex_.take();
      sign = -1;
    }
    const Token& num = lex_.peek();
    if (num.type != Token::Type::Number)
      throw ParseError("exponent must be an integer literal", num.offset);
    double v = num.number;
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw ParseError("exponent must be an integer literal", num.offset);
    lex_.take();
    return maybe_tower(sign * static_cast<int>(v));
  }

  int maybe_tower(int base) {
    if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "^") {
      size_t off = lex_.peek().offset;
      lex_.take();
      int up = exponent();
      if (up < 0) throw ParseError("negative exponent inside an exponent tower", off);
      double r = std::pow(static_cast<double>(base), static_cast<double>(up));
      if (std::abs(r) > 1e9) throw ParseError("exponent tower overflows", off);
      return static_cast<int>(r);
    }
    return base;
  }

  ExprPtr atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number: {
        Expr e;
        e.kind = Expr::Kind::Number;
        e.number = t.number;
        return make(std::move(e));
      }
      case Token::Type::LParen: {
        ExprPtr inner = sum();
        const Token& close = lex_.peek();
        if (close.type != Token::Type::RParen)
          throw ParseError("expected ')'", close.offset);
        lex_.take();
        return inner;
      }
      case Token::Type::Ident:
        return ident(t);
      default:
        throw ParseError("expected a value", t.offset);
    }
  }

  ExprPtr ident(const Token& t) {
    const std::string& name = t.text;
    if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1 &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int idx = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      const bool is_x = name[0] == 'x';
      const int limit = is_x ? n_ : m_;
      if (idx < 1 || idx > limit)
        throw ParseError("variable index out of range: " + name, t.offset);
      Expr e;
      e.kind = is_x ? Expr::Kind::VarX : Expr::Kind::VarY;
      e.index = idx - 1;
      return make(std::move(e));
    }
    auto it = function_table().find(name);
    if (it != function_table().end()) {
      const Token& open = lex_.peek();
      if (open.type != Token::Type::LParen)
        throw ParseError("expected '(' after function " + name, open.offset);
      lex_.take();
      ExprPtr arg = sum();
      const Token& close = lex_.peek();
      if (close.type != Token::Type::RParen)
        throw ParseError("expected ')'", close.offset);
      lex_.take();
      Expr e;
      e.kind = Expr::Kind::Call;
      e.fn = it->second;
      e.a = arg;
      return make(std::move(e));
    }
    throw ParseError("unknown identifier: " + name, t.offset);
  }

  Lexer lex_;
  int n_, m_;
};

void print_number(std::ostream& os, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  os << std::string_view(buf, static_cast<size_t>(res.ptr - buf));
}

}  // namespace

ExprPtr parse_expr(const std::string& text, int n, int m) {
  return Parser(text, n, m).run();
}

TaylorPoly Expr::eval(std::span<const double> x, std::span<const double> y,
                      const std::shared_ptr<const JetSpace>& space, int order) const {
  switch (kind) {
    case Kind::Number:
      return TaylorPoly::constant(space, order, number);
    case Kind::VarX:
      return TaylorPoly::variable(space, order, index, x[index]);
    case Kind::VarY:
      return TaylorPoly::variable(space, order, static_cast<int>(x.size()) + index, y[index]);
    case Kind::Neg:
      return -a->eval(x, y, space, order);
    case Kind::Add:
      return a->eval(x, y, space, order) + b->eval(x, y, space, order);
    case Kind::Sub:
      return a->eval(x, y, space, order) - b->eval(x, y, space, order);
    case Kind::Mul:
      return a->eval(x, y, space, order) * b->eval(x, y, space, order);
    case Kind::Div:
      return a->eval(x, y, space, order) / b->eval(x, y, space, order);
    case Kind::Pow:
      return a->eval(x, y, space, order).pow_int(exponent);
    case Kind::Call: {
      TaylorPoly arg = a->eval(x, y, space, order);
      switch (fn) {
        case Fn::Sin: return sin(arg);
        case Fn::Cos: return cos(arg);
        case Fn::Tan: return tan(arg);
        case Fn::Exp: return exp(arg);
        case Fn::Log: return log(arg);
        case Fn::Sqrt: return sqrt(arg);
        case Fn::Sinh: return sinh(arg);
        case Fn::Cosh: return cosh(arg);
      }
    }
  }
  throw std::logic_error("Expr::eval: bad node");
}

bool Expr::uses_y() const {
  switch (kind) {
    case Kind::VarY:
      return true;
    case Kind::Number:
    case Kind::VarX:
      return false;
    default:
      if (a && a->uses_y()) return true;
      return b && b->uses_y();
  }
}

std::string Expr::print() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Number:
      if (number < 0) {
        os << "(-";
        print_number(os, -number);
        os << ")";
      } else {
        print_number(os, number);
      }
      break;
    case Kind::VarX:
      os << "x" << (index + 1);
      break;
    case Kind::VarY:
      os << "y" << (index + 1);
      break;
    case Kind::Neg:
      os << "(-" << a->print() << ")";
      break;
    case Kind::Add:
      os << "(" << a->print() << "+" << b->print() << ")";
      break;
    case Kind::Sub:
      os << "(" << a->print() << "-" << b->print() << ")";
      break;
    case Kind::Mul:
      os << "(" << a->print() << "*" << b->print() << ")";
      break;
    case Kind::Div:
      os << "(" << a->print() << "/" << b->print() << ")";
      break;
    case Kind::Pow:
      os << "(" << a->print() << "^";
      if (exponent < 0)
        os << "(-" << -exponent << ")";
      else
        os << exponent;
      os << ")";
      break;
    case Kind::Call:
      os << function_name(fn) << "(" << a->print() << ")";
      break;
  }
  return os.str();
}

}  // namespace algspray

#include "exdr/form_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace exdr {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, Wedge, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

bool is_ident_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string source, int line, int column)
      : text_(text), source_(std::move(source)), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (text_.substr(pos_, 3) == "∧") {
        advance(3);
        t.kind = Tok::Wedge;
      } else if (text_.substr(pos_, 2) == "/\\") {
        advance(2);
        t.kind = Tok::Wedge;
      } else if (std::isdigit(c) || (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t end = pos_;
        while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
          std::size_t e = end + 1;
          if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
          if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
            end = e;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
          }
        }
        t.kind = Tok::Number;
        t.text = std::string(text_.substr(pos_, end - pos_));
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "malformed number '" + t.text + "'");
        advance(end - pos_);
      } else if (is_ident_byte(c)) {
        std::size_t end = pos_;
        while (end < text_.size() && is_ident_byte(static_cast<unsigned char>(text_[end])) &&
               text_.substr(end, 3) != "∧")
          ++end;
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(pos_, end - pos_));
        advance(end - pos_);
      } else {
        switch (c) {
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '*': t.kind = Tok::Star; break;
          case '/': t.kind = Tok::Slash; break;
          case '^': t.kind = Tok::Caret; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          default: fail(t, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        advance(1);
      }
      out.push_back(t);
    }
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(source_, t.line, t.column, msg); }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }
  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_ + i]);
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
    pos_ += bytes;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_, column_;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ChartCoordinates coords, std::string source)
      : tokens_(std::move(tokens)), coords_(coords), source_(std::move(source)) {}

  FormExpr parse_all() {
    FormExpr f = sum();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + describe(peek()) + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) fail(peek(), "expected " + what + ", found '" + describe(peek()) + "'");
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(source_, t.line, t.column, msg); }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Number:
      case Tok::Ident: return t.text;
      case Tok::Plus: return "+";
      case Tok::Minus: return "-";
      case Tok::Star: return "*";
      case Tok::Slash: return "/";
      case Tok::Caret: return "^";
      case Tok::Wedge: return "∧";
      case Tok::LParen: return "(";
      case Tok::RParen: return ")";
      case Tok::Comma: return ",";
      case Tok::End: return "end of input";
    }
    return "?";
  }

  Expr scalar_of(const FormExpr& f, const Token& at) const {
    if (f.degree != 0 && !f.is_zero()) fail(at, "expected a scalar, found a form of degree " + std::to_string(f.degree));
    return f.coefficient({});
  }
  FormExpr scalar(const Expr& e) const { return FormExpr::scalar(coords_, e); }

  FormExpr add(const FormExpr& a, const FormExpr& b, const Token& at) const {
    if (a.degree != b.degree && !a.is_zero() && !b.is_zero())
      fail(at, "cannot add forms of degree " + std::to_string(a.degree) + " and " + std::to_string(b.degree));
    return a + b;
  }

  FormExpr sum() {
    const Token& first = peek();
    FormExpr acc;
    if (accept(Tok::Minus)) acc = Expr(-1.0) * product();
    else {
      accept(Tok::Plus);
      acc = product();
    }
    (void)first;
    for (;;) {
      const Token& op = peek();
      if (accept(Tok::Plus)) acc = add(acc, product(), op);
      else if (accept(Tok::Minus)) acc = add(acc, Expr(-1.0) * product(), op);
      else return acc;
    }
  }

  bool starts_primary(Tok k) const { return k == Tok::Number || k == Tok::Ident || k == Tok::LParen; }

  FormExpr product() {
    FormExpr acc = power();
    for (;;) {
      const Token& op = peek();
      if (accept(Tok::Slash)) {
        const Token& at = peek();
        const Expr divisor = scalar_of(power(), at);
        if (divisor.is_zero()) fail(at, "division by zero");
        acc = (divisor.is_constant() ? Expr(1.0 / divisor.constant()) : pow(divisor, -1)) * acc;
      } else if (accept(Tok::Star) || accept(Tok::Wedge) || starts_primary(op.kind)) {
        acc = wedge(acc, power());
      } else {
        return acc;
      }
    }
  }

  FormExpr power() {
    const Token& at = peek();
    FormExpr base = unary();
    if (!accept(Tok::Caret)) return base;
    bool negative = false;
    bool paren = accept(Tok::LParen);
    if (accept(Tok::Minus)) negative = true;
    const Token& e = next();
    if (e.kind != Tok::Number || e.number != std::floor(e.number) || e.text.find_first_of(".eE") != std::string::npos)
      fail(e, "exponent must be an integer");
    if (paren) expect(Tok::RParen, "')'");
    const int k = static_cast<int>(e.number) * (negative ? -1 : 1);
    const Expr b = scalar_of(base, at);
    if (k < 0 && b.is_zero()) fail(e, "negative power of zero");
    return scalar(pow(b, k));
  }

  FormExpr unary() {
    if (accept(Tok::Minus)) return Expr(-1.0) * unary();
    return primary();
  }

  std::optional<int> variable(std::string_view name) const {
    auto numbered = [&](std::string_view prefix, std::size_t count) -> std::optional<std::size_t> {
      if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
      const std::string_view rest = name.substr(prefix.size());
      if (rest.empty()) return count == 1 ? std::optional<std::size_t>(0) : std::nullopt;
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || k == 0 || k > count) return std::nullopt;
      return k - 1;
    };
    if (auto j = numbered("x", coords_.n)) return coords_.x(*j);
    if (auto i = numbered("r", coords_.m)) return coords_.r(*i);
    for (std::string_view p : {"theta", "θ", "t"})
      if (auto i = numbered(p, coords_.m)) return coords_.theta(*i);
    return std::nullopt;
  }

  double constant_arg() {
    const Token& at = peek();
    const Expr e = scalar_of(sum(), at);
    if (!e.is_constant()) fail(at, "expected a constant");
    return e.constant();
  }

  FormExpr primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return scalar(Expr(t.number));
      case Tok::LParen: {
        FormExpr inner = sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: break;
      default: fail(t, "unexpected '" + describe(t) + "'");
    }
    const std::string& name = t.text;
    if (name == "pi" || name == "π") return scalar(Expr(std::numbers::pi));
    if (name == "exp" || name == "sin" || name == "cos") {
      expect(Tok::LParen, "'(' after " + name);
      const Token& at = peek();
      const Expr arg = scalar_of(sum(), at);
      expect(Tok::RParen, "')'");
      return scalar(name == "exp" ? exp(arg) : name == "sin" ? sin(arg) : cos(arg));
    }
    if (name == "bump" || name == "step") {
      expect(Tok::LParen, "'(' after " + name);
      const double a = constant_arg();
      expect(Tok::Comma, "','");
      const double b = constant_arg();
      expect(Tok::RParen, "')'");
      if (!(a < b)) fail(t, name + " needs a < b");
      expect(Tok::LParen, "'(' with the argument of " + name);
      const Token& at = peek();
      const Expr arg = scalar_of(sum(), at);
      expect(Tok::RParen, "')'");
      return scalar(name == "bump" ? Expr::bump(a, b, arg) : Expr::step(a, b, arg));
    }
    if (auto v = variable(name)) return scalar(Expr::var(*v));
    if (name.size() > 1 && name[0] == 'd')
      if (auto v = variable(std::string_view(name).substr(1))) return FormExpr::basis(coords_, *v);
    fail(t, "unknown name '" + name + "'");
  }

  std::vector<Token> tokens_;
  ChartCoordinates coords_;
  std::string source_;
  std::size_t pos_ = 0;
};

}  // namespace

FormExpr parse_form(std::string_view text, ChartCoordinates coords, const std::string& source, int first_line,
                    int first_column) {
  Lexer lexer(text, source, first_line, first_column);
  Parser parser(lexer.run(), coords, source);
  return parser.parse_all();
}

Expr parse_scalar(std::string_view text, ChartCoordinates coords, const std::string& source, int first_line,
                  int first_column) {
  const FormExpr f = parse_form(text, coords, source, first_line, first_column);
  if (f.degree != 0 && !f.is_zero())
    throw ParseError(source, first_line, first_column, "expected a scalar expression");
  return f.coefficient({});
}

}  // namespace exdr

#include "maxsusy/exprlang.hpp"

#include <algorithm>
#include <cctype>

#include "maxsusy/errors.hpp"

namespace maxsusy::expr {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.span = {line_, col_, 0};
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        advance();
      t.kind = Tok::Number;
      t.text = std::string(src_.substr(start, pos_ - start));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        default:
          throw ParseError(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'",
                           line_, col_);
      }
      t.text = std::string(1, c);
      advance();
    }
    t.span.length = static_cast<int>(t.text.size());
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  std::unique_ptr<Ast> parse_all() {
    auto e = sum();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ErrorKind::SyntaxError, msg, cur_.span.line, cur_.span.column);
  }
  void bump() { cur_ = lex_.next(); }

  static std::unique_ptr<Ast> node(NodeKind k, SourceSpan span) {
    auto n = std::make_unique<Ast>();
    n->kind = k;
    n->span = span;
    return n;
  }

  std::unique_ptr<Ast> sum() {
    auto lhs = product();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      auto n = node(cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, cur_.span);
      bump();
      n->children.push_back(std::move(lhs));
      n->children.push_back(product());
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<Ast> product() {
    auto lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      auto n = node(cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div, cur_.span);
      bump();
      n->children.push_back(std::move(lhs));
      n->children.push_back(unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<Ast> unary() {
    if (cur_.kind == Tok::Minus) {
      auto n = node(NodeKind::Neg, cur_.span);
      bump();
      n->children.push_back(unary());
      return n;
    }
    if (cur_.kind == Tok::Plus) {
      bump();
      return unary();
    }
    return power();
  }

  std::unique_ptr<Ast> power() {
    auto base = primary();
    if (cur_.kind != Tok::Caret) return base;
    auto n = node(NodeKind::Pow, cur_.span);
    bump();
    if (cur_.kind != Tok::Number || cur_.text.find('.') != std::string::npos)
      fail("exponent must be a nonnegative integer literal");
    if (cur_.text.size() > 3) fail("exponent too large");
    n->exponent = static_cast<unsigned>(std::stoul(cur_.text));
    bump();
    n->children.push_back(std::move(base));
    if (cur_.kind == Tok::Caret) fail("chained exponents are not allowed; use parentheses");
    return n;
  }

  std::unique_ptr<Ast> primary() {
    if (cur_.kind == Tok::Number) {
      auto n = node(NodeKind::Number, cur_.span);
      auto q = Rational::parse(cur_.text);
      if (!q) fail("malformed number '" + cur_.text + "'");
      n->number = *q;
      bump();
      return n;
    }
    if (cur_.kind == Tok::Ident) {
      Token id = cur_;
      bump();
      if (id.text == "cos" || id.text == "sin") {
        if (cur_.kind != Tok::LParen) fail("expected '(' after " + id.text);
        bump();
        auto n = node(id.text == "cos" ? NodeKind::Cos : NodeKind::Sin, id.span);
        n->children.push_back(sum());
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        bump();
        return n;
      }
      auto n = node(NodeKind::Variable, id.span);
      n->name = id.text;
      return n;
    }
    if (cur_.kind == Tok::LParen) {
      bump();
      auto e = sum();
      if (cur_.kind != Tok::RParen) fail("expected ')'");
      bump();
      return e;
    }
    if (cur_.kind == Tok::End) fail("unexpected end of expression");
    fail("unexpected '" + cur_.text + "'");
  }

  Lexer lex_;
  Token cur_;
};

[[noreturn]] void fail_at(ErrorKind kind, const std::string& msg, const SourceSpan& s) {
  throw ParseError(kind, msg, s.line, s.column);
}

RingElem trig(const Ast& ast, const ChartPtr& chart) {
  const auto& span = ast.span;
  if (!chart || !chart->periodic())
    fail_at(ErrorKind::IllegalFrequency, "cos/sin require a periodic chart variable", span);
  RingElem arg = lower(*ast.children[0], chart);
  const auto& per = *chart->periodic();
  Rational freq(0);
  if (!arg.is_zero()) {
    bool ok = arg.is_polynomial();
    if (ok) {
      Poly p = arg.numerator_poly();
      Monomial t;
      t.exp[per.var] = 1;
      ok = p.size() == 1 && p.terms()[0].mono == t;
      if (ok) freq = p.terms()[0].coeff;
    }
    if (!ok)
      fail_at(ErrorKind::IllegalFrequency,
              "argument must be a rational multiple of " + chart->variable(per.var), span);
  }
  Rational k = freq / per.base_frequency;
  if (!k.is_integer())
    fail_at(ErrorKind::IllegalFrequency,
            "frequency " + freq.str() + " is not a multiple of " + per.base_frequency.str(), span);
  if (k.abs() > Rational(1000000))
    fail_at(ErrorKind::IllegalFrequency, "frequency too large", span);
  int ki = static_cast<int>(k.numerator().get_si());
  return ast.kind == NodeKind::Cos ? RingElem::cos_harmonic(chart, ki)
                                   : RingElem::sin_harmonic(chart, ki);
}

}  // namespace

std::unique_ptr<Ast> parse_ast(std::string_view text) { return Parser(text).parse_all(); }

RingElem lower(const Ast& ast, const ChartPtr& chart) {
  switch (ast.kind) {
    case NodeKind::Number:
      return RingElem(chart, ast.number);
    case NodeKind::Variable: {
      int idx = chart ? chart->index_of(ast.name) : -1;
      if (idx < 0) fail_at(ErrorKind::UnknownVariable, "unknown variable '" + ast.name + "'", ast.span);
      return RingElem::variable(chart, idx);
    }
    case NodeKind::Add:
      return lower(*ast.children[0], chart) + lower(*ast.children[1], chart);
    case NodeKind::Sub:
      return lower(*ast.children[0], chart) - lower(*ast.children[1], chart);
    case NodeKind::Mul:
      return lower(*ast.children[0], chart) * lower(*ast.children[1], chart);
    case NodeKind::Div: {
      RingElem num = lower(*ast.children[0], chart);
      RingElem den = lower(*ast.children[1], chart);
      if (!den.is_unit())
        fail_at(ErrorKind::IllegalDenominator,
                "denominator is not a product of registered factors", ast.children[1]->span);
      return num * den.inverse();
    }
    case NodeKind::Pow:
      return lower(*ast.children[0], chart).pow(ast.exponent);
    case NodeKind::Neg:
      return -lower(*ast.children[0], chart);
    case NodeKind::Cos:
    case NodeKind::Sin:
      return trig(ast, chart);
  }
  return RingElem();
}

RingElem parse(std::string_view text, const ChartPtr& chart) {
  auto ast = parse_ast(text);
  RingElem r = lower(*ast, chart);
  if (!r.chart()) return RingElem(chart, r.is_zero() ? Rational(0) : r.constant_value());
  return r;
}

// ---------------------------------------------------------------- emit

namespace {

std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += "*";
    s += i < static_cast<int>(vars.size()) ? vars[i] : ("v" + std::to_string(i));
    if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
  }
  return s;
}

// Terms in display order: descending total degree, then descending lex.
std::vector<Term> display_order(const Poly& p) {
  std::vector<Term> t = p.terms();
  std::stable_sort(t.begin(), t.end(), [](const Term& a, const Term& b) {
    int da = a.mono.degree(), db = b.mono.degree();
    if (da != db) return da > db;
    return b.mono < a.mono;
  });
  return t;
}

// A signed summand: the sign is carried separately so joins read "a - b".
struct Piece {
  bool negative = false;
  std::string body;
};

void append_poly_pieces(const Poly& p, const std::vector<std::string>& vars, const std::string& suffix,
                        std::vector<Piece>& out) {
  for (const auto& t : display_order(p)) {
    Piece pc;
    pc.negative = t.coeff.sign() < 0;
    Rational a = t.coeff.abs();
    std::string mono = monomial_text(t.mono, vars);
    std::string tail = mono;
    if (!suffix.empty()) tail = tail.empty() ? suffix : tail + "*" + suffix;
    if (tail.empty())
      pc.body = a.str();
    else if (a.is_one())
      pc.body = tail;
    else
      pc.body = a.str() + "*" + tail;
    out.push_back(std::move(pc));
  }
}

std::string join(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0)
      s += pieces[i].negative ? "-" + pieces[i].body : pieces[i].body;
    else
      s += (pieces[i].negative ? " - " : " + ") + pieces[i].body;
  }
  return s;
}

std::string trig_text(const char* fn, const Rational& w, const std::string& var) {
  std::string arg = w.is_one() ? var : w.str() + "*" + var;
  return std::string(fn) + "(" + arg + ")";
}

void append_trig_part(const Poly& p, const std::string& trig, const std::vector<std::string>& vars,
                      std::vector<Piece>& out) {
  if (p.is_zero()) return;
  if (p.size() == 1) {
    append_poly_pieces(p, vars, trig, out);
    return;
  }
  out.push_back({false, "(" + emit(p, vars) + ")*" + trig});
}

}  // namespace

std::string emit(const Poly& p, const std::vector<std::string>& variables) {
  std::vector<Piece> pieces;
  append_poly_pieces(p, variables, "", pieces);
  return join(pieces);
}

std::string emit(const RingElem& a) {
  if (a.is_zero()) return "0";
  static const std::vector<std::string> kNoVars;
  const auto& vars = a.chart() ? a.chart()->variables() : kNoVars;
  std::vector<Piece> pieces;
  for (const auto& h : a.numerator()) {
    if (h.k == 0) {
      append_poly_pieces(h.cos_part, vars, "", pieces);
      continue;
    }
    const auto& per = *a.chart()->periodic();
    Rational w = per.base_frequency * Rational(h.k);
    const std::string& t = vars[per.var];
    append_trig_part(h.cos_part, trig_text("cos", w, t), vars, pieces);
    append_trig_part(h.sin_part, trig_text("sin", w, t), vars, pieces);
  }
  std::string num = join(pieces);
  if (!a.has_denominator()) return num;

  std::vector<std::string> factors;
  const auto& den = a.denominator();
  for (std::size_t j = 0; j < den.size(); ++j) {
    if (!den[j]) continue;
    const Poly& f = a.chart()->factors()[j];
    std::string ft = emit(f, vars);
    if (f.size() > 1) ft = "(" + ft + ")";
    if (den[j] > 1) ft += "^" + std::to_string(den[j]);
    factors.push_back(std::move(ft));
  }
  std::string den_text;
  for (std::size_t i = 0; i < factors.size(); ++i) den_text += (i ? "*" : "") + factors[i];
  if (factors.size() > 1) den_text = "(" + den_text + ")";
  if (pieces.size() > 1 || (pieces.size() == 1 && pieces[0].body.find('*') != std::string::npos))
    num = "(" + num + ")";
  return num + "/" + den_text;
}

}  // namespace maxsusy::expr

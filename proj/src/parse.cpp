#include "nil/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace nil::parse {

ParseError::ParseError(std::size_t line, std::size_t column, std::string token, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                 (token.empty() ? std::string(", found end of input") : ", found '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

enum class Kind { Ident, Number, Symbol, End };

struct Token {
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char ch = src[i];
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    std::size_t j = i;
    if (std::isalpha(ch) || ch == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Kind::Ident;
    } else if (std::isdigit(ch)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Kind::Number;
    } else if (std::string_view("*^+-,;()/").find(static_cast<char>(ch)) != std::string_view::npos) {
      j = i + 1;
      t.kind = Kind::Symbol;
    } else {
      throw ParseError(line, column, std::string(1, static_cast<char>(ch)), "unexpected character");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == Kind::End; }
  bool is_symbol(char c) const { return peek().kind == Kind::Symbol && peek().text[0] == c; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(peek().line, peek().column, peek().text, message);
  }

  Token take() { return tokens_[pos_++]; }

  void expect_symbol(char c) {
    if (!is_symbol(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::int64_t natural() {
    if (peek().kind != Kind::Number) fail("expected a natural number");
    const auto t = take();
    if (t.text.size() > 15) throw ParseError(t.line, t.column, t.text, "number is too large");
    return std::stoll(t.text);
  }

  Rational rational() {
    bool negative = false;
    if (is_symbol('-')) {
      negative = true;
      ++pos_;
    }
    if (peek().kind != Kind::Number) fail("expected a number");
    const auto num = take();
    std::string text = num.text;
    if (is_symbol('/')) {
      ++pos_;
      if (peek().kind != Kind::Number) fail("expected a denominator");
      const auto den = take();
      if (std::all_of(den.text.begin(), den.text.end(), [](char c) { return c == '0'; }))
        throw ParseError(den.line, den.column, den.text, "zero denominator");
      text += "/" + den.text;
    }
    Rational q = parse_rational(text);
    return negative ? Rational(-q) : q;
  }

  std::string identifier(const char* what) {
    if (peek().kind != Kind::Ident) fail(std::string("expected ") + what);
    return take().text;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> tokens_;
};

std::size_t variable_index(const Token& t, const std::vector<std::string>& variables) {
  const auto it = std::find(variables.begin(), variables.end(), t.text);
  if (it == variables.end()) throw ParseError(t.line, t.column, t.text, "unknown variable");
  return static_cast<std::size_t>(it - variables.begin());
}

Monomial monomial(Parser& p, const std::vector<std::string>& variables) {
  Monomial m(variables.size(), 0);
  if (p.peek().kind == Kind::Number) {
    const auto t = p.take();
    if (t.text != "1") throw ParseError(t.line, t.column, t.text, "the only numeric monomial is 1");
    return m;
  }
  for (;;) {
    if (p.peek().kind != Kind::Ident) p.fail("expected a variable name");
    const auto var = p.take();
    std::int64_t e = 1;
    if (p.is_symbol('^')) {
      p.take();
      e = p.natural();
    }
    m[variable_index(var, variables)] += e;
    if (!p.is_symbol('*')) break;
    p.take();
  }
  return m;
}

// One affine function: returns the slope and the constant term.
AffinePiece affine(Parser& p, const std::vector<std::string>& variables) {
  AffinePiece piece{ExponentVector(variables.size(), 0), 0};
  bool first = true;
  for (;;) {
    Rational sign = 1;
    if (p.is_symbol('+') && !first) {
      p.take();
    } else if (p.is_symbol('-')) {
      p.take();
      sign = -1;
    } else if (!first) {
      break;
    }
    first = false;
    if (p.peek().kind == Kind::Ident) {
      const auto var = p.take();
      piece.slope[variable_index(var, variables)] += sign;
      continue;
    }
    const Rational coef = sign * p.rational();
    if (p.is_symbol('*')) {
      p.take();
      if (p.peek().kind != Kind::Ident) p.fail("expected a variable name");
      const auto var = p.take();
      piece.slope[variable_index(var, variables)] += coef;
    } else {
      piece.offset += coef;
    }
  }
  return piece;
}

}  // namespace

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> out;
  std::string s(text);
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    auto split = [](const std::string& v) {
      std::size_t k = v.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(v[k - 1]))) --k;
      return std::pair(v.substr(0, k), v.substr(k));
    };
    auto trim = [](std::string v) {
      v.erase(0, v.find_first_not_of(" \t"));
      v.erase(v.find_last_not_of(" \t") + 1);
      return v;
    };
    const auto [prefix_a, from] = split(trim(s.substr(0, dots)));
    const auto [prefix_b, to] = split(trim(s.substr(dots + 2)));
    if (prefix_a.empty() || prefix_a != prefix_b || from.empty() || to.empty() || from.size() > 6 ||
        to.size() > 6 || std::stoi(from) > std::stoi(to))
      throw ParseError(1, 1, s, "expected a variable range such as z1..z4");
    for (int k = std::stoi(from); k <= std::stoi(to); ++k) out.push_back(prefix_a + std::to_string(k));
    return out;
  }
  Parser p(text);
  for (;;) {
    out.push_back(p.identifier("a variable name"));
    if (p.at_end()) break;
    p.expect_symbol(',');
  }
  std::set<std::string> seen(out.begin(), out.end());
  if (seen.size() != out.size()) throw InputError("duplicate variable names in " + s);
  return out;
}

std::vector<std::string> default_variables(std::size_t n) {
  static const std::vector<std::string> small{"x", "y", "z"};
  if (n <= small.size()) return {small.begin(), small.begin() + static_cast<std::ptrdiff_t>(n)};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("z" + std::to_string(i));
  return out;
}

void natural_sort(std::vector<std::string>& names) {
  auto key = [](const std::string& v) {
    std::size_t k = v.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(v[k - 1]))) --k;
    const std::string digits = v.substr(k);
    return std::tuple(v.substr(0, k), digits.size(), digits);
  };
  std::sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) { return key(a) < key(b); });
}

std::vector<std::string> mentioned_variables(std::string_view text) {
  std::set<std::string> names;
  for (const auto& t : tokenize(text))
    if (t.kind == Kind::Ident && t.text != "min" && t.text != "power") names.insert(t.text);
  std::vector<std::string> out(names.begin(), names.end());
  natural_sort(out);
  return out;
}

MonomialIdeal parse_ideal(std::string_view text, const std::vector<std::string>& variables) {
  Parser p(text);
  if (p.peek().kind == Kind::Number && p.peek().text == "0") {
    p.take();
    p.expect_end();
    return MonomialIdeal::zero(variables.size());
  }
  std::vector<Monomial> gens;
  for (;;) {
    gens.push_back(monomial(p, variables));
    if (p.at_end()) break;
    p.expect_symbol(',');
  }
  return MonomialIdeal::minimalize(variables.size(), std::move(gens));
}

Monomial parse_monomial(std::string_view text, const std::vector<std::string>& variables) {
  Parser p(text);
  auto m = monomial(p, variables);
  p.expect_end();
  return m;
}

bool is_power_expression(std::string_view text) {
  const auto tokens = tokenize(text);
  return tokens.front().kind == Kind::Ident && tokens.front().text == "power";
}

std::size_t power_dimension(std::string_view text) {
  const auto tokens = tokenize(text);
  std::size_t commas = 0;
  bool after_semicolon = false;
  for (const auto& t : tokens) {
    if (t.kind != Kind::Symbol) continue;
    if (t.text == ";") after_semicolon = true;
    if (t.text == "," && after_semicolon) ++commas;
  }
  return after_semicolon ? commas + 1 : 0;
}

ConcaveToricFunction parse_toric(std::string_view text, const std::vector<std::string>& variables) {
  Parser p(text);
  const std::string head = p.identifier("'min' or 'power'");
  if (head == "power") {
    p.expect_symbol('(');
    const Rational k = p.rational();
    p.expect_symbol(';');
    ExponentVector alpha;
    for (;;) {
      alpha.push_back(p.rational());
      if (p.is_symbol(')')) break;
      p.expect_symbol(',');
    }
    p.expect_symbol(')');
    p.expect_end();
    if (!variables.empty() && variables.size() != alpha.size())
      throw InputError("power(...) has " + std::to_string(alpha.size()) + " exponents but there are " +
                       std::to_string(variables.size()) + " variables");
    return ConcaveToricFunction::power_product(k, std::move(alpha));
  }
  if (head != "min") {
    p.pos_ -= 1;
    p.fail("expected 'min' or 'power'");
  }
  const auto vars = variables.empty() ? mentioned_variables(text) : variables;
  if (vars.empty()) throw InputError("cannot infer the variables of " + std::string(text) + "; pass --vars");
  p.expect_symbol('(');
  std::vector<AffinePiece> pieces;
  for (;;) {
    pieces.push_back(affine(p, vars));
    if (p.is_symbol(')')) break;
    p.expect_symbol(',');
  }
  p.expect_symbol(')');
  p.expect_end();
  return ConcaveToricFunction::piecewise_linear_min(std::move(pieces));
}

RationalVector parse_rational_list(std::string_view text) {
  Parser p(text);
  const bool paren = p.is_symbol('(');
  if (paren) p.take();
  RationalVector out;
  for (;;) {
    out.push_back(p.rational());
    if (paren && p.is_symbol(')')) {
      p.take();
      break;
    }
    if (p.at_end()) break;
    p.expect_symbol(',');
  }
  p.expect_end();
  return out;
}

Monomial parse_exponents(std::string_view text, const std::vector<std::string>& variables) {
  const auto tokens = tokenize(text);
  const bool symbolic =
      std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == Kind::Ident; });
  if (symbolic) return parse_monomial(text, variables);
  Monomial out;
  for (const auto& q : parse_rational_list(text)) {
    if (q < 0 || q.get_den() != 1) throw InputError("exponents must be natural numbers, got " + to_string(q));
    out.push_back(q.get_num().get_si());
  }
  if (out.size() != variables.size())
    throw InputError("expected " + std::to_string(variables.size()) + " exponents, got " + std::to_string(out.size()));
  return out;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& variables) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += variables[i];
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::string> format_generators(const MonomialIdeal& ideal, const std::vector<std::string>& variables) {
  std::vector<std::string> out;
  for (const auto& g : ideal.generators()) out.push_back(format_monomial(g, variables));
  return out;
}

std::string format_ideal(const MonomialIdeal& ideal, const std::vector<std::string>& variables) {
  if (ideal.is_zero()) return "0";
  std::string out;
  for (const auto& g : format_generators(ideal, variables)) out += (out.empty() ? "" : ", ") + g;
  return out;
}

std::string format_toric(const ConcaveToricFunction& g, const std::vector<std::string>& variables) {
  if (!g.is_piecewise_linear()) {
    std::string out = "power(" + to_string(g.power().k) + ";";
    for (std::size_t i = 0; i < g.power().alpha.size(); ++i)
      out += (i ? ", " : " ") + to_string(g.power().alpha[i]);
    return out + ")";
  }
  std::string out = "min(";
  bool first_piece = true;
  for (const auto& piece : g.piecewise_linear().pieces) {
    if (!first_piece) out += ", ";
    first_piece = false;
    std::string expr;
    for (std::size_t i = 0; i < piece.slope.size(); ++i) {
      if (piece.slope[i] == 0) continue;
      if (!expr.empty()) expr += " + ";
      expr += (piece.slope[i] == 1 ? "" : to_string(piece.slope[i]) + "*") + variables[i];
    }
    if (piece.offset != 0 || expr.empty()) {
      if (expr.empty())
        expr = to_string(piece.offset);
      else
        expr += (piece.offset < 0 ? " - " + to_string(Rational(-piece.offset)) : " + " + to_string(piece.offset));
    }
    out += expr;
  }
  return out + ")";
}

}  // namespace nil::parse

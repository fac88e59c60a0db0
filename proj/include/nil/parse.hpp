#pragma once

// Text grammar for ideals, toric functions and vectors.
//
//   ideal     := monomial (',' monomial)*  |  '0'
//   monomial  := term ('*' term)*  |  '1'
//   term      := var ('^' natural)?
//   toric     := 'min' '(' affine (',' affine)* ')'  |  'power' '(' rational ';' rational (',' rational)* ')'
//   affine    := ['-'] item (('+' | '-') item)*
//   item      := rational ['*' var]  |  var

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nil/errors.hpp"
#include "nil/ideal.hpp"
#include "nil/toric.hpp"

namespace nil::parse {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, std::string token, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_, column_;
  std::string token_;
};

/// "x, y, z" or a range "z1..z4".
std::vector<std::string> parse_variable_list(std::string_view text);

/// x, y, z for up to three variables, z1..zn beyond.
std::vector<std::string> default_variables(std::size_t n);

/// Sorts names so that numeric suffixes compare as numbers (z2 before z10).
void natural_sort(std::vector<std::string>& names);

/// Variable names mentioned in an ideal or toric expression, naturally sorted.
std::vector<std::string> mentioned_variables(std::string_view text);

MonomialIdeal parse_ideal(std::string_view text, const std::vector<std::string>& variables);
Monomial parse_monomial(std::string_view text, const std::vector<std::string>& variables);

/// `power(...)` needs no variable names; its dimension is the exponent count.
/// When `variables` is empty the dimension of a min(...) is taken from mentioned_variables.
ConcaveToricFunction parse_toric(std::string_view text, const std::vector<std::string>& variables);
bool is_power_expression(std::string_view text);
/// Number of exponents inside power(k; ...).
std::size_t power_dimension(std::string_view text);

/// "(1/2, 3)" or "1/2, 3".
RationalVector parse_rational_list(std::string_view text);
/// Natural exponents, given as a list "2, 3" or as a monomial "x^2*y^3".
Monomial parse_exponents(std::string_view text, const std::vector<std::string>& variables);

std::string format_monomial(const Monomial& m, const std::vector<std::string>& variables);
/// Comma-separated generators; "0" for the zero ideal.
std::string format_ideal(const MonomialIdeal& ideal, const std::vector<std::string>& variables);
std::vector<std::string> format_generators(const MonomialIdeal& ideal,
                                           const std::vector<std::string>& variables);
std::string format_toric(const ConcaveToricFunction& g, const std::vector<std::string>& variables);

}  // namespace nil::parse

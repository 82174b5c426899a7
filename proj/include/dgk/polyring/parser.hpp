#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dgk/polyring/polynomial.hpp"

namespace dgk {

/// One summand as written: a signed rational coefficient and its factors in
/// textual order (variable index, exponent).
struct ParsedTerm {
  mpz_class num = 1;
  mpz_class den = 1;
  std::vector<std::pair<std::size_t, int>> factors;
  std::size_t position = 0;
};

namespace detail {

class TermLexer {
 public:
  TermLexer(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  std::vector<ParsedTerm> parse_sum() {
    std::vector<ParsedTerm> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool negative = read_signs(/*required=*/false);
    while (true) {
      ParsedTerm t = parse_term();
      if (negative) t.num = -t.num;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-')
        throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
      negative = read_signs(/*required=*/true);
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool read_signs(bool required) {
    bool negative = false, any = false;
    while (true) {
      skip_ws();
      if (at_end() || (peek() != '+' && peek() != '-')) break;
      negative ^= peek() == '-';
      any = true;
      ++pos_;
    }
    if (required && !any) throw ParseError("expected '+' or '-'", pos_);
    skip_ws();
    if (at_end()) throw ParseError("expected a term after sign", pos_);
    return negative;
  }

  mpz_class read_natural(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError(std::string("expected ") + what, start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::size_t read_variable() {
    const std::size_t start = pos_;
    std::size_t best = names_.size(), best_len = 0;
    for (std::size_t j = 0; j < names_.size(); ++j) {
      const auto& n = names_[j];
      if (n.size() > best_len && text_.substr(pos_, n.size()) == n) {
        best = j;
        best_len = n.size();
      }
    }
    if (best == names_.size()) {
      std::size_t end = pos_;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      throw ParseError("unknown variable '" + std::string(text_.substr(start, end - start)) + "'",
                       start);
    }
    pos_ += best_len;
    return best;
  }

  ParsedTerm parse_term() {
    ParsedTerm t;
    t.position = pos_;
    bool have_content = false;
    skip_ws();
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      t.num = read_natural("coefficient");
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        const std::size_t den_pos = pos_;
        t.den = read_natural("denominator");
        if (t.den == 0) throw ParseError("zero denominator", den_pos);
      }
      have_content = true;
    }
    while (true) {
      skip_ws();
      if (at_end()) break;
      bool star = false;
      if (peek() == '*') {
        if (!have_content) throw ParseError("'*' without left operand", pos_);
        star = true;
        ++pos_;
        skip_ws();
      }
      if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
        if (star) throw ParseError("expected a variable after '*'", pos_);
        break;
      }
      const std::size_t var = read_variable();
      int exponent = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        const std::size_t exp_pos = pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError("malformed exponent", exp_pos);
        mpz_class e = read_natural("exponent");
        if (e > 1000000) throw ParseError("exponent too large", exp_pos);
        exponent = static_cast<int>(e.get_si());
      }
      t.factors.emplace_back(var, exponent);
      have_content = true;
    }
    if (!have_content) throw ParseError("expected a term", pos_);
    return t;
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Splits text into summands. Grammar (whitespace ignored):
///   sum  := sign* term (sign+ term)*
///   term := coeff? ('*'? var ('^' nat)?)*      coeff := nat ('/' nat)?
/// Variables match the longest known name, so "yz" reads as y*z.
inline std::vector<ParsedTerm> parse_terms(std::string_view text,
                                           const std::vector<std::string>& names) {
  return detail::TermLexer(text, names).parse_sum();
}

template <ExactField F>
Polynomial<F> parse_poly(std::string_view text, const ContextPtr<F>& ctx) {
  const F& k = ctx->field();
  std::vector<Term<F>> terms;
  for (const auto& pt : parse_terms(text, ctx->names())) {
    Monomial m(ctx->nvars());
    for (auto [v, e] : pt.factors) m[v] += e;
    typename F::value_type c;
    try {
      c = k.from_rational(pt.num, pt.den);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), pt.position);
    }
    terms.push_back({std::move(m), std::move(c)});
  }
  return Polynomial<F>::from_terms(ctx, std::move(terms));
}

}  // namespace dgk

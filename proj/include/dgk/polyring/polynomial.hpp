#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dgk/exactalg/field.hpp"

namespace dgk {

/// Exponent vector of a monomial in n variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t j, int power = 1) {
    Monomial m(nvars);
    m.exps_[j] = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t j) const { return exps_[j]; }
  int& operator[](std::size_t j) { return exps_[j]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  int total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  long weighted_degree(const std::vector<int>& w) const {
    long d = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) d += static_cast<long>(w[j]) * exps_[j];
    return d;
  }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  /// True iff this divides other.
  bool divides(const Monomial& other) const {
    for (std::size_t j = 0; j < exps_.size(); ++j)
      if (exps_[j] > other.exps_[j]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t j = 0; j < m.exps_.size(); ++j) m.exps_[j] += b.exps_[j];
    return m;
  }
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t j = 0; j < m.exps_.size(); ++j) m.exps_[j] -= b.exps_[j];
    return m;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t j = 0; j < m.exps_.size(); ++j) m.exps_[j] = std::max(a.exps_[j], b.exps_[j]);
    return m;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t j = 0; j < a.exps_.size(); ++j)
      if (a.exps_[j] > 0 && b.exps_[j] > 0) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Lexicographic on exponent vectors; only for use as a container key.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ull;
    return h;
  }
};

/// Tie-break applied after weighted degree.
enum class TermOrder { WeightedGrevlex, WeightedLex };

/// Variables, positive weights, coefficient field and term order of a
/// polynomial ring.
template <ExactField F>
class PolyContext {
 public:
  PolyContext(F field, std::vector<std::string> names, std::vector<int> weights = {},
              TermOrder order = TermOrder::WeightedGrevlex)
      : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)),
        order_(order) {
    if (names_.empty()) throw ValidationError("a polynomial ring needs at least one variable");
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size())
      throw ValidationError("weight count differs from variable count");
    for (int w : weights_)
      if (w < 1) throw ValidationError("variable weights must be positive");
    std::set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
        throw ValidationError("invalid variable name '" + n + "'");
      if (!seen.insert(n).second) throw ValidationError("duplicate variable name '" + n + "'");
    }
  }

  const F& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  TermOrder order() const noexcept { return order_; }

  long degree(const Monomial& m) const { return m.weighted_degree(weights_); }

  /// Weighted degree first, then the tie-break. Under grevlex the monomial
  /// with the smaller exponent in the last differing variable is larger.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    const long da = degree(a), db = degree(b);
    if (da != db) return da <=> db;
    if (order_ == TermOrder::WeightedLex) {
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return a[j] <=> b[j];
      return std::strong_ordering::equal;
    }
    for (std::size_t j = a.size(); j-- > 0;)
      if (a[j] != b[j]) return b[j] <=> a[j];
    return std::strong_ordering::equal;
  }

  bool same_ring(const PolyContext& other) const {
    return field_ == other.field_ && names_ == other.names_ && weights_ == other.weights_ &&
           order_ == other.order_;
  }

 private:
  F field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  TermOrder order_;
};

template <ExactField F>
using ContextPtr = std::shared_ptr<const PolyContext<F>>;

template <ExactField F>
struct Term {
  Monomial monomial;
  typename F::value_type coeff;
};

/// Polynomial kept canonical: nonzero coefficients, distinct monomials,
/// terms strictly decreasing in the context's term order.
template <ExactField F>
class Polynomial {
 public:
  using value_type = typename F::value_type;

  Polynomial() = default;
  explicit Polynomial(ContextPtr<F> ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(ContextPtr<F> ctx, const value_type& c) {
    Polynomial p(ctx);
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial(p.ctx_->nvars()), c});
    return p;
  }
  static Polynomial monomial(ContextPtr<F> ctx, Monomial m, value_type c) {
    Polynomial p(ctx);
    if (!p.field().is_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  static Polynomial monomial(ContextPtr<F> ctx, Monomial m) {
    auto one = ctx->field().one();
    return monomial(std::move(ctx), std::move(m), one);
  }
  static Polynomial variable(ContextPtr<F> ctx, std::size_t j) {
    Monomial m = Monomial::variable(ctx->nvars(), j);
    return monomial(std::move(ctx), std::move(m));
  }
  /// Builds a canonical polynomial from arbitrary terms (combining duplicates).
  static Polynomial from_terms(ContextPtr<F> ctx, std::vector<Term<F>> terms) {
    Polynomial p(ctx);
    const auto& c = *p.ctx_;
    std::sort(terms.begin(), terms.end(), [&](const Term<F>& a, const Term<F>& b) {
      return c.compare(a.monomial, b.monomial) > 0;
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff = c.field().add(p.terms_.back().coeff, t.coeff);
        if (c.field().is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!c.field().is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Adopts terms that are already canonical (sorted, distinct, nonzero).
  static Polynomial from_canonical_terms(ContextPtr<F> ctx, std::vector<Term<F>> terms) {
    Polynomial p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
  }

  /// Removes and returns the leading term.
  Term<F> pop_leading() {
    Term<F> t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
  }

  const ContextPtr<F>& context() const noexcept { return ctx_; }
  const F& field() const { return ctx_->field(); }
  const std::vector<Term<F>>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term<F>& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const value_type& leading_coefficient() const { return terms_.front().coeff; }

  long degree() const { return terms_.empty() ? -1 : ctx_->degree(leading_monomial()); }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (ctx_->degree(t.monomial) != degree()) return false;
    return true;
  }

  /// Terms of weighted degree d.
  Polynomial homogeneous_part(long d) const {
    Polynomial p(ctx_);
    for (const auto& t : terms_)
      if (ctx_->degree(t.monomial) == d) p.terms_.push_back(t);
    return p;
  }
  /// Distinct weighted degrees present, ascending.
  std::vector<long> degrees() const {
    std::vector<long> ds;
    for (const auto& t : terms_) ds.push_back(ctx_->degree(t.monomial));
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = field().neg(t.coeff);
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  Polynomial scaled(const value_type& c) const {
    Polynomial p(ctx_);
    if (field().is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.monomial, field().mul(c, t.coeff)});
    return p;
  }

  /// c * m * this; order is preserved by multiplicativity of the term order.
  Polynomial times_term(const Monomial& m, const value_type& c) const {
    Polynomial p(ctx_);
    if (field().is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, field().mul(c, t.coeff)});
    return p;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_context(a, b);
    std::vector<Term<F>> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_)
        out.push_back({x.monomial * y.monomial, a.field().mul(x.coeff, y.coeff)});
    return from_terms(a.ctx_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
          !a.field().equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

  static void check_context(const Polynomial& a, const Polynomial& b) {
    if (a.ctx_ == b.ctx_) return;
    if (!a.ctx_ || !b.ctx_ || !a.ctx_->same_ring(*b.ctx_))
      throw ValidationError("polynomials from different rings");
  }

 private:
  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_context(a, b);
    const auto& c = *a.ctx_;
    const F& k = c.field();
    Polynomial out(a.ctx_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      std::strong_ordering cmp = std::strong_ordering::equal;
      if (i == a.terms_.size()) cmp = std::strong_ordering::less;
      else if (j == b.terms_.size()) cmp = std::strong_ordering::greater;
      else cmp = c.compare(a.terms_[i].monomial, b.terms_[j].monomial);
      if (cmp > 0) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        auto t = b.terms_[j++];
        if (subtract) t.coeff = k.neg(t.coeff);
        out.terms_.push_back(std::move(t));
      } else {
        auto s = subtract ? k.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                          : k.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!k.is_zero(s)) out.terms_.push_back({a.terms_[i].monomial, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  ContextPtr<F> ctx_;
  std::vector<Term<F>> terms_;
};

/// Monomial text "x^2*y"; "1" for the unit monomial.
template <ExactField F>
std::string monomial_to_string(const PolyContext<F>& ctx, const Monomial& m) {
  std::string s;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += ctx.names()[j];
    if (m[j] > 1) s += "^" + std::to_string(m[j]);
  }
  return s.empty() ? "1" : s;
}

/// Text in the grammar accepted by parse_poly, e.g. "x^2 + 3*y*z - 1/2*w".
template <ExactField F>
std::string to_string(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  const auto& ctx = *p.context();
  const F& k = ctx.field();
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = k.is_negative(t.coeff);
    auto mag = neg ? k.neg(t.coeff) : t.coeff;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    const bool unit_mono = t.monomial.is_one();
    if (k.is_one(mag)) {
      s += unit_mono ? "1" : monomial_to_string(ctx, t.monomial);
    } else {
      s += k.to_string(mag);
      if (!unit_mono) s += "*" + monomial_to_string(ctx, t.monomial);
    }
  }
  return s;
}

}  // namespace dgk

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgk/gring/graded_ring.hpp"
#include "dgk/polyring/parser.hpp"

namespace dgk {

/// Subset S of {0..n-1} as a bit mask; e_S = e_{j1} ∧ ... ∧ e_{ji}, j1 < ... < ji.
using Subset = std::uint32_t;

inline int subset_size(Subset s) { return std::popcount(s); }

/// Sign of e_S ∧ e_T = ±e_{S∪T} for disjoint S, T: parity of the pairs
/// (s, t) with s in S, t in T and s > t.
inline int wedge_sign(Subset s, Subset t) {
  int inversions = 0;
  while (t) {
    const int j = std::countr_zero(t);
    t &= t - 1;
    inversions += std::popcount(s >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

/// (-1)^(l-1) for j the l-th smallest element of S.
inline int position_sign(Subset s, int j) {
  return std::popcount(s & ((Subset{1} << j) - 1)) % 2 ? -1 : 1;
}

inline std::string subset_to_string(Subset s) {
  std::string out;
  for (int j = 0; s; ++j, s >>= 1)
    if (s & 1u) out += (out.empty() ? "e" : "*e") + std::to_string(j + 1);
  return out;
}

/// Element of the Koszul complex K(f) = R ⊗ Λ(e_1..e_n): a map from
/// subsets S to nonzero canonical ring coefficients.
template <ExactField F>
class KoszulElement {
 public:
  using Element = Polynomial<F>;
  using value_type = typename F::value_type;

  KoszulElement() = default;
  explicit KoszulElement(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static KoszulElement basis(RingPtr<F> ring, Subset s) {
    KoszulElement u(ring);
    u.add_term(s, ring->one());
    return u;
  }
  static KoszulElement generator(RingPtr<F> ring, std::size_t j) {
    return basis(std::move(ring), Subset{1} << j);
  }
  /// r·e_S with r a monomial times a scalar.
  static KoszulElement monomial(RingPtr<F> ring, Subset s, const Monomial& m, const value_type& c) {
    KoszulElement u(ring);
    u.add_term(s, ring->canonical(Element::monomial(ring->element_context(), m, c)));
    return u;
  }

  const RingPtr<F>& ring() const noexcept { return ring_; }
  const std::map<Subset, Element>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Element coefficient(Subset s) const {
    auto it = coeffs_.find(s);
    return it == coeffs_.end() ? ring_->zero() : it->second;
  }

  /// Homological degree when all terms share one, -1 for zero or mixed.
  int homological_degree() const {
    int deg = -1;
    for (const auto& [s, c] : coeffs_) {
      const int d = subset_size(s);
      if (deg >= 0 && d != deg) return -1;
      deg = d;
    }
    return deg;
  }
  bool in_degree(int i) const {
    for (const auto& [s, c] : coeffs_)
      if (subset_size(s) != i) return false;
    return true;
  }

  long subset_weight(Subset s) const {
    long w = 0;
    for (std::size_t j = 0; s; ++j, s >>= 1)
      if (s & 1u) w += ring_->weight(j);
    return w;
  }

  /// Split by internal degree deg(r) + w(S).
  std::map<long, KoszulElement> internal_components() const {
    std::map<long, KoszulElement> out;
    for (const auto& [s, c] : coeffs_) {
      const long ws = subset_weight(s);
      for (const auto& t : c.terms()) {
        auto [it, fresh] = out.try_emplace(ring_->degree(t.monomial) + ws, ring_);
        it->second.add_term(s, Element::monomial(ring_->element_context(), t.monomial, t.coeff));
      }
    }
    return out;
  }

  /// Adds r·e_S; r must already be canonical.
  void add_term(Subset s, const Element& r) {
    if (r.is_zero()) return;
    auto [it, fresh] = coeffs_.try_emplace(s, r);
    if (!fresh) {
      it->second += r;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  KoszulElement& operator+=(const KoszulElement& o) {
    check_ring(o);
    for (const auto& [s, c] : o.coeffs_) add_term(s, c);
    return *this;
  }
  KoszulElement& operator-=(const KoszulElement& o) {
    check_ring(o);
    for (const auto& [s, c] : o.coeffs_) add_term(s, -c);
    return *this;
  }
  friend KoszulElement operator+(KoszulElement a, const KoszulElement& b) { return a += b; }
  friend KoszulElement operator-(KoszulElement a, const KoszulElement& b) { return a -= b; }
  KoszulElement operator-() const {
    KoszulElement u(ring_);
    for (const auto& [s, c] : coeffs_) u.coeffs_.emplace(s, -c);
    return u;
  }

  KoszulElement scaled(const value_type& c) const {
    KoszulElement u(ring_);
    if (ring_->field().is_zero(c)) return u;
    for (const auto& [s, r] : coeffs_) u.coeffs_.emplace(s, r.scaled(c));
    return u;
  }
  /// r·u for a ring element r.
  KoszulElement times(const Element& r) const {
    KoszulElement u(ring_);
    for (const auto& [s, c] : coeffs_) u.add_term(s, ring_->multiply(r, c));
    return u;
  }

  friend bool operator==(const KoszulElement& a, const KoszulElement& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin(); ia != a.coeffs_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }

  void check_ring(const KoszulElement& o) const {
    if (ring_ != o.ring_) throw ValidationError("Koszul elements from different complexes");
  }

 private:
  RingPtr<F> ring_;
  std::map<Subset, Element> coeffs_;
};

/// d(r·e_S) = Σ_l (-1)^(l-1) (r·x_{j_l}) e_{S \ j_l}.
template <ExactField F>
KoszulElement<F> differential(const KoszulElement<F>& u) {
  const auto& ring = u.ring();
  KoszulElement<F> out(ring);
  for (const auto& [s, c] : u.coefficients()) {
    for (Subset rest = s; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      auto r = ring->multiply(ring->generator(j), c);
      out.add_term(s & ~(Subset{1} << j), position_sign(s, j) < 0 ? -r : r);
    }
  }
  return out;
}

template <ExactField F>
KoszulElement<F> wedge(const KoszulElement<F>& u, const KoszulElement<F>& v) {
  u.check_ring(v);
  const auto& ring = u.ring();
  KoszulElement<F> out(ring);
  for (const auto& [s, a] : u.coefficients())
    for (const auto& [t, b] : v.coefficients()) {
      if (s & t) continue;
      auto r = ring->multiply(a, b);
      out.add_term(s | t, wedge_sign(s, t) < 0 ? -r : r);
    }
  return out;
}

/// Prints in the polynomial grammar with e1..en as extra factors, e.g.
/// "x*e1 + y*e2" or "t^18*e1*e2 + t^10*e2*e3".
template <ExactField F>
std::string to_string(const KoszulElement<F>& u) {
  if (u.is_zero()) return "0";
  const auto& k = u.ring()->field();
  const auto& ctx = *u.ring()->element_context();
  std::string out;
  for (const auto& [s, c] : u.coefficients())
    for (const auto& t : c.terms()) {
      auto mag = t.coeff;
      const bool neg = k.is_negative(mag);
      if (neg) mag = k.neg(mag);
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string body;
      if (!k.is_one(mag)) body = k.to_string(mag);
      if (!t.monomial.is_one()) body += (body.empty() ? "" : "*") + monomial_to_string(ctx, t.monomial);
      if (s) body += (body.empty() ? "" : "*") + subset_to_string(s);
      out += body.empty() ? "1" : body;
    }
  return out;
}

/// Parses the grammar printed by to_string. Factors e1..en may appear in
/// any order; reordering contributes the exterior sign and a repeated e_j
/// kills the term.
template <ExactField F>
KoszulElement<F> parse_koszul(std::string_view text, const RingPtr<F>& ring) {
  const auto& ctx = ring->element_context();
  const std::size_t nv = ctx->nvars();
  const std::size_t n = ring->num_generators();
  std::vector<std::string> names = ctx->names();
  for (std::size_t j = 0; j < n; ++j) {
    const std::string e = "e" + std::to_string(j + 1);
    if (std::find(names.begin(), names.end(), e) != names.end())
      throw ValidationError("ring variable '" + e + "' clashes with exterior generator names");
    names.push_back(e);
  }
  const auto& k = ring->field();
  KoszulElement<F> out(ring);
  for (const auto& pt : parse_terms(text, names)) {
    Monomial m(nv);
    Subset s = 0;
    int sign = 1;
    bool dead = false;
    for (auto [v, e] : pt.factors) {
      if (v < nv) {
        m[v] += e;
        continue;
      }
      const Subset bit = Subset{1} << (v - nv);
      if (e != 1 || (s & bit)) {
        dead = true;
        continue;
      }
      sign *= wedge_sign(s, bit);
      s |= bit;
    }
    if (dead) continue;
    typename F::value_type c;
    try {
      c = k.from_rational(pt.num, pt.den);
    } catch (const ValidationError& err) {
      throw ParseError(err.what(), pt.position);
    }
    if (sign < 0) c = k.neg(c);
    Polynomial<F> r = Polynomial<F>::monomial(ctx, std::move(m), c);
    try {
      r = ring->canonical(r);
    } catch (const ValidationError& err) {
      throw ParseError(err.what(), pt.position);
    }
    out.add_term(s, r);
  }
  return out;
}

}  // namespace dgk

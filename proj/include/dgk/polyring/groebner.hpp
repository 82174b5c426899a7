#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dgk/polyring/polynomial.hpp"

namespace dgk {

/// Reduced Groebner basis: monic generators with pairwise non-dividing
/// leading monomials and fully reduced tails.
template <ExactField F>
class GroebnerBasis {
 public:
  GroebnerBasis(ContextPtr<F> ctx, std::vector<Polynomial<F>> gens)
      : ctx_(std::move(ctx)), gens_(std::move(gens)) {
    for (const auto& g : gens_) leads_.push_back(g.leading_monomial());
  }

  const ContextPtr<F>& context() const noexcept { return ctx_; }
  const std::vector<Polynomial<F>>& generators() const noexcept { return gens_; }
  const std::vector<Monomial>& leading_monomials() const noexcept { return leads_; }
  std::size_t size() const noexcept { return gens_.size(); }

  bool is_standard(const Monomial& m) const {
    for (const auto& l : leads_)
      if (l.divides(m)) return false;
    return true;
  }

 private:
  ContextPtr<F> ctx_;
  std::vector<Polynomial<F>> gens_;
  std::vector<Monomial> leads_;
};

namespace detail {

/// Complete division remainder of p by a list of monic polynomials.
template <ExactField F>
Polynomial<F> reduce_fully(Polynomial<F> p, const std::vector<Polynomial<F>>& divisors) {
  const F& k = p.field();
  std::vector<Term<F>> rem;
  while (!p.is_zero()) {
    const Term<F>& lt = p.leading_term();
    const Polynomial<F>* hit = nullptr;
    for (const auto& g : divisors)
      if (g.leading_monomial().divides(lt.monomial)) {
        hit = &g;
        break;
      }
    if (hit) {
      const auto c = k.div(lt.coeff, hit->leading_coefficient());
      p -= hit->times_term(lt.monomial / hit->leading_monomial(), c);
    } else {
      rem.push_back(p.pop_leading());
    }
  }
  return Polynomial<F>::from_canonical_terms(p.context(), std::move(rem));
}

template <ExactField F>
Polynomial<F> make_monic(const Polynomial<F>& p) {
  return p.scaled(p.field().inv(p.leading_coefficient()));
}

}  // namespace detail

/// Remainder of p under complete multivariate division by gb.
template <ExactField F>
Polynomial<F> normal_form(const Polynomial<F>& p, const GroebnerBasis<F>& gb) {
  if (p.context() != gb.context() && !p.context()->same_ring(*gb.context()))
    throw ValidationError("normal_form: polynomial and basis live in different rings");
  return detail::reduce_fully(p, gb.generators());
}

/// S-polynomial of two monic polynomials.
template <ExactField F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  const F& k = f.field();
  const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  return f.times_term(l / f.leading_monomial(), k.inv(f.leading_coefficient())) -
         g.times_term(l / g.leading_monomial(), k.inv(g.leading_coefficient()));
}

/// Buchberger's algorithm for weighted-homogeneous generators, with the
/// normal selection strategy (smallest lcm first) and the coprime-leads
/// criterion. Returns the reduced basis; the empty list gives the zero ideal.
template <ExactField F>
GroebnerBasis<F> buchberger(const ContextPtr<F>& ctx, const std::vector<Polynomial<F>>& input) {
  std::vector<Polynomial<F>> basis;
  for (const auto& g : input) {
    if (g.context() != ctx && !g.context()->same_ring(*ctx))
      throw ValidationError("buchberger: generators from different rings");
    if (g.is_zero()) continue;
    if (!g.is_homogeneous())
      throw ValidationError("ideal generator is not weighted-homogeneous: " + to_string(g));
    basis.push_back(detail::make_monic(g));
  }

  struct Pair {
    long degree;
    Monomial lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto& a = basis[i].leading_monomial();
      const auto& b = basis[j].leading_monomial();
      if (Monomial::coprime(a, b)) continue;
      Monomial l = Monomial::lcm(a, b);
      pairs.push_back({ctx->degree(l), std::move(l), i, j});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      auto c = ctx->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = std::move(*best);
    pairs.erase(best);
    auto r = detail::reduce_fully(s_polynomial(basis[p.i], basis[p.j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(detail::make_monic(r));
    add_pairs(basis.size() - 1);
  }

  // minimalize: drop generators whose lead is divisible by another lead
  std::vector<Polynomial<F>> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].leading_monomial();
      const auto& lj = basis[j].leading_monomial();
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // interreduce tails
  std::vector<Polynomial<F>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial<F>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial<F> lead = Polynomial<F>::monomial(ctx, minimal[i].leading_monomial());
    reduced.push_back(lead + detail::reduce_fully(minimal[i] - lead, others));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
    return ctx->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return GroebnerBasis<F>(ctx, std::move(reduced));
}

/// For each variable, the smallest e with x_j^e a leading monomial, or
/// INT_MAX when no pure power occurs.
template <ExactField F>
std::vector<int> pure_power_bounds(const GroebnerBasis<F>& gb) {
  const std::size_t n = gb.context()->nvars();
  std::vector<int> bound(n, INT_MAX);
  for (const auto& l : gb.leading_monomials()) {
    std::size_t support = 0, var = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (l[j] > 0) {
        ++support;
        var = j;
      }
    if (support == 1) bound[var] = std::min(bound[var], l[var]);
  }
  return bound;
}

/// All monomials of weighted degree d, in no particular order.
template <ExactField F>
std::vector<Monomial> monomials_of_degree(const PolyContext<F>& ctx, long d,
                                          const std::vector<int>& bounds = {}) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  const std::size_t n = ctx.nvars();
  const auto& w = ctx.weights();
  Monomial m(n);
  auto rec = [&](auto&& self, std::size_t j, long remaining) -> void {
    if (j + 1 == n) {
      if (remaining % w[j] != 0) return;
      const long e = remaining / w[j];
      if (!bounds.empty() && e >= bounds[j]) return;
      m[j] = static_cast<int>(e);
      out.push_back(m);
      m[j] = 0;
      return;
    }
    for (long e = 0; e * w[j] <= remaining; ++e) {
      if (!bounds.empty() && e >= bounds[j]) break;
      m[j] = static_cast<int>(e);
      self(self, j + 1, remaining - e * w[j]);
    }
    m[j] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Monomials of weighted degree d outside the leading-term ideal, in
/// decreasing term order. They form a basis of (P/I)_d.
template <ExactField F>
std::vector<Monomial> standard_monomials(const GroebnerBasis<F>& gb, long d) {
  const auto& ctx = *gb.context();
  auto all = monomials_of_degree(ctx, d, pure_power_bounds(gb));
  std::vector<Monomial> out;
  for (auto& m : all)
    if (gb.is_standard(m)) out.push_back(std::move(m));
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return ctx.compare(a, b) > 0; });
  return out;
}

}  // namespace dgk

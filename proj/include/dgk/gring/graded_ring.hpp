#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgk/exactalg/matrix.hpp"
#include "dgk/gring/grading.hpp"
#include "dgk/polyring/groebner.hpp"

namespace dgk {

/// A positively graded ring R with R_0 = k, queried one degree at a time.
///
/// Two presentations share this interface:
///  - ArtinianQuotient: k[x_1..x_n]/I for a weighted-homogeneous ideal I with
///    finite-dimensional quotient. Elements are normal forms modulo a
///    reduced Groebner basis; R_d has the standard monomials as basis.
///  - SemigroupRing: k[t^g_1, ..., t^g_n] inside k[t] for a numerical
///    semigroup. Elements are polynomials in t supported on the semigroup;
///    R_d is spanned by t^d when d is in the semigroup.
///
/// Generator j (x_j, resp. t^g_j) has weight w_j. Ring handles are immutable;
/// the per-degree caches behind them are filled lazily under a lock.
template <ExactField F>
class GradedRing {
 public:
  enum class Kind { ArtinianQuotient, SemigroupRing };
  using Element = Polynomial<F>;
  using value_type = typename F::value_type;

  /// Builds k[x]/I. Rejects non-homogeneous or non-Artinian ideals and
  /// ideals not contained in (x)^2.
  static std::shared_ptr<const GradedRing> artinian_quotient(ContextPtr<F> ctx,
                                                             std::vector<Polynomial<F>> ideal) {
    std::shared_ptr<GradedRing> r(new GradedRing(Kind::ArtinianQuotient, ctx->field()));
    r->ctx_ = ctx;
    r->weights_ = ctx->weights();
    r->ideal_ = std::move(ideal);
    r->gb_ = std::make_unique<GroebnerBasis<F>>(buchberger(ctx, r->ideal_));
    r->init_artinian();
    return r;
  }

  /// Builds k[t^g_1, ..., t^g_n]. Requires gcd 1 and a minimal generator list.
  static std::shared_ptr<const GradedRing> semigroup_ring(F field, std::vector<int> generators) {
    std::shared_ptr<GradedRing> r(new GradedRing(Kind::SemigroupRing, field));
    r->ctx_ = std::make_shared<const PolyContext<F>>(field, std::vector<std::string>{"t"});
    r->semigroup_gens_ = std::move(generators);
    r->weights_ = r->semigroup_gens_;
    r->init_semigroup();
    return r;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_artinian() const noexcept { return kind_ == Kind::ArtinianQuotient; }
  const F& field() const noexcept { return field_; }
  std::size_t num_generators() const noexcept { return weights_.size(); }
  int weight(std::size_t j) const { return weights_[j]; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  /// True when R is generated in degree one, so m^a = R_{>=a}.
  bool standard_graded() const noexcept {
    return is_artinian() && std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 1; });
  }

  /// Context that elements live in: k[x_1..x_n] or k[t].
  const ContextPtr<F>& element_context() const noexcept { return ctx_; }
  /// Names used when printing generator j.
  std::string generator_name(std::size_t j) const {
    return is_artinian() ? ctx_->names()[j] : "t^" + std::to_string(semigroup_gens_[j]);
  }

  /// Highest nonzero degree (Artinian), nullopt for semigroup rings.
  std::optional<long> top_degree() const { return top_degree_; }

  const GroebnerBasis<F>& groebner_basis() const {
    require(Kind::ArtinianQuotient, "groebner_basis");
    return *gb_;
  }
  const std::vector<Polynomial<F>>& ideal_generators() const {
    require(Kind::ArtinianQuotient, "ideal_generators");
    return ideal_;
  }
  const GradingLattice& grading_lattice() const noexcept { return lattice_; }

  const std::vector<int>& semigroup_generators() const {
    require(Kind::SemigroupRing, "semigroup_generators");
    return semigroup_gens_;
  }
  long frobenius_number() const {
    require(Kind::SemigroupRing, "frobenius_number");
    return frobenius_;
  }
  long conductor() const {
    require(Kind::SemigroupRing, "conductor");
    return frobenius_ + 1;
  }
  bool in_semigroup(long d) const {
    require(Kind::SemigroupRing, "in_semigroup");
    if (d < 0) return false;
    if (d > frobenius_) return true;
    return member_[static_cast<std::size_t>(d)];
  }

  Element zero() const { return Element(ctx_); }
  Element one() const { return Element::constant(ctx_, field_.one()); }
  Element scalar(const value_type& c) const { return Element::constant(ctx_, c); }
  /// The j-th generator x_j (resp. t^g_j) of the maximal ideal.
  Element generator(std::size_t j) const {
    return Element::monomial(ctx_, generator_monomial(j));
  }
  Monomial generator_monomial(std::size_t j) const {
    if (is_artinian()) return Monomial::variable(ctx_->nvars(), j);
    return Monomial::variable(1, 0, semigroup_gens_[j]);
  }

  /// Brings a polynomial of the element context into canonical form.
  Element canonical(const Polynomial<F>& p) const {
    Polynomial<F>::check_context(p, zero());
    if (is_artinian()) return normal_form(p, *gb_);
    for (const auto& t : p.terms())
      if (!in_semigroup(t.monomial[0]))
        throw ValidationError("t^" + std::to_string(t.monomial[0]) +
                              " is not in the semigroup ring");
    return p;
  }

  Element multiply(const Element& a, const Element& b) const {
    Polynomial<F>::check_context(a, b);
    if (a.is_zero() || b.is_zero()) return zero();
    if (is_artinian()) return normal_form(a * b, *gb_);
    return a * b;
  }

  /// x_j * m for a basis monomial m, in canonical form.
  Element times_generator(std::size_t j, const Monomial& m) const {
    Monomial prod = m * generator_monomial(j);
    if (!is_artinian()) return Element::monomial(ctx_, std::move(prod));
    if (gb_->is_standard(prod)) return Element::monomial(ctx_, std::move(prod));
    return normal_form(Element::monomial(ctx_, std::move(prod)), *gb_);
  }

  long degree(const Monomial& m) const { return ctx_->degree(m); }

  /// Deterministic basis of R_d: standard monomials in decreasing term
  /// order, or {t^d}.
  const std::vector<Monomial>& basis_of_degree(long d) const { return degree_data(d).monomials; }
  std::size_t dim(long d) const { return basis_of_degree(d).size(); }

  /// Position of a basis monomial inside basis_of_degree(deg m).
  std::optional<std::size_t> index_in_degree(const Monomial& m) const {
    const auto& dd = degree_data(degree(m));
    auto it = dd.index.find(m);
    if (it == dd.index.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates of the degree-d part of a canonical element.
  Vector<F> coordinates(const Element& a, long d) const {
    const auto& dd = degree_data(d);
    Vector<F> v(dd.monomials.size(), field_.zero());
    for (const auto& t : a.terms()) {
      if (degree(t.monomial) != d) continue;
      auto it = dd.index.find(t.monomial);
      if (it == dd.index.end()) throw ValidationError("element is not in normal form");
      v[it->second] = t.coeff;
    }
    return v;
  }

  Element from_coordinates(const Vector<F>& v, long d) const {
    const auto& basis = basis_of_degree(d);
    std::vector<Term<F>> terms;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!field_.is_zero(v[i])) terms.push_back({basis[i], v[i]});
    return Element::from_canonical_terms(ctx_, std::move(terms));
  }

  /// Fine grade of the Koszul basis element m·e_S, S given as a bit mask.
  Grade grade(const Monomial& m, std::uint32_t mask = 0) const {
    if (!is_artinian()) {
      std::int64_t g = m[0];
      for (std::size_t j = 0; j < weights_.size(); ++j)
        if (mask >> j & 1u) g += weights_[j];
      return {g};
    }
    Grade v(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) v[j] = m[j] + ((mask >> j) & 1u);
    lattice_.reduce(v);
    return v;
  }

  /// Weighted degree carried by a fine grade.
  long degree_of_grade(const Grade& g) const {
    if (!is_artinian()) return static_cast<long>(g[0]);
    long d = 0;
    for (std::size_t j = 0; j < g.size(); ++j) d += static_cast<long>(weights_[j]) * g[j];
    return d;
  }

  /// Basis (rref rows, coordinates in basis_of_degree(d)) of the degree-d
  /// slice of m^a, with m^0 = R and m^a = sum_j x_j m^(a-1).
  std::vector<Vector<F>> max_ideal_power_basis(int a, long d) const {
    const std::size_t n = dim(d);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return max_ideal_power_slice(a, d, all);
  }

  /// The part of (m^a)_d supported on the given positions of
  /// basis_of_degree(d), in coordinates relative to those positions. The
  /// positions must form a union of fine grades (m^a is homogeneous for the
  /// fine grading, so its rref rows are too).
  std::vector<Vector<F>> max_ideal_power_slice(int a, long d,
                                               std::span<const std::size_t> positions) const {
    std::vector<Vector<F>> out;
    if (positions.empty()) return out;
    if (a <= 0 || standard_graded() || !is_artinian()) {
      if (!power_is_full(a, d)) return out;
      for (std::size_t i = 0; i < positions.size(); ++i) {
        Vector<F> v(positions.size(), field_.zero());
        v[i] = field_.one();
        out.push_back(std::move(v));
      }
      return out;
    }
    const auto& rows = power_rows(a, d);
    std::vector<std::ptrdiff_t> local(dim(d), -1);
    for (std::size_t i = 0; i < positions.size(); ++i) local[positions[i]] = static_cast<std::ptrdiff_t>(i);
    for (const auto& row : rows) {
      Vector<F> v(positions.size(), field_.zero());
      bool inside = false, outside = false;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (field_.is_zero(row[j])) continue;
        if (local[j] < 0) {
          outside = true;
        } else {
          inside = true;
          v[static_cast<std::size_t>(local[j])] = row[j];
        }
      }
      if (inside && outside)
        throw ValidationError("max_ideal_power_slice: positions do not form a union of grades");
      if (inside) out.push_back(std::move(v));
    }
    return out;
  }

  /// Short human-readable description, e.g. "F2[x,y]/(x^2, y^2)".
  std::string describe() const {
    std::string s = field_.name();
    if (is_artinian()) {
      s += "[";
      for (std::size_t j = 0; j < ctx_->nvars(); ++j) s += (j ? "," : "") + ctx_->names()[j];
      s += "]/(";
      for (std::size_t i = 0; i < ideal_.size(); ++i) s += (i ? ", " : "") + to_string(ideal_[i]);
      s += ")";
    } else {
      s += "[";
      for (std::size_t j = 0; j < semigroup_gens_.size(); ++j)
        s += (j ? "," : "") + std::string("t^") + std::to_string(semigroup_gens_[j]);
      s += "]";
    }
    return s;
  }

 private:
  struct DegreeData {
    std::vector<Monomial> monomials;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  };

  GradedRing(Kind kind, F field) : kind_(kind), field_(std::move(field)) {}

  void require(Kind k, const char* what) const {
    if (kind_ != k)
      throw UnsupportedRing(std::string(what) + " is not available for this ring presentation");
  }

  const DegreeData& degree_data(long d) const {
    {
      std::shared_lock lock(mutex_);
      auto it = degrees_.find(d);
      if (it != degrees_.end()) return it->second;
    }
    DegreeData dd;
    if (d >= 0) {
      if (is_artinian()) {
        if (!top_degree_ || d <= *top_degree_) dd.monomials = standard_monomials(*gb_, d);
      } else if (in_semigroup(d)) {
        dd.monomials.push_back(Monomial::variable(1, 0, static_cast<int>(d)));
      }
    }
    for (std::size_t i = 0; i < dd.monomials.size(); ++i) dd.index.emplace(dd.monomials[i], i);
    std::unique_lock lock(mutex_);
    return degrees_.try_emplace(d, std::move(dd)).first->second;
  }

  // Whether (m^a)_d = R_d, for the presentations where m^a is all or nothing
  // in each degree.
  bool power_is_full(int a, long d) const {
    if (dim(d) == 0) return false;
    if (a <= 0) return true;
    if (is_artinian()) return d >= a;  // standard graded
    // d must be a sum of a positive semigroup elements
    std::unique_lock lock(mutex_);
    return sumset_member(a, d);
  }

  bool sumset_member(int a, long d) const {
    if (d < 0) return false;
    if (a == 0) return in_semigroup(d);
    auto key = std::make_pair(a, d);
    if (auto it = sumset_.find(key); it != sumset_.end()) return it->second;
    bool hit = false;
    for (int g : semigroup_gens_)
      if (sumset_member(a - 1, d - g)) {
        hit = true;
        break;
      }
    sumset_.emplace(key, hit);
    return hit;
  }

  const std::vector<Vector<F>>& power_rows(int a, long d) const {
    auto key = std::make_pair(a, d);
    {
      std::shared_lock lock(mutex_);
      if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    }
    std::vector<Vector<F>> rows;
    const std::size_t n = dim(d);
    if (n > 0) {
      std::vector<Vector<F>> gens;
      for (std::size_t j = 0; j < num_generators(); ++j) {
        const long e = d - weights_[j];
        if (e < 0) continue;
        std::vector<Vector<F>> prev;
        if (a == 1) {
          for (std::size_t i = 0; i < dim(e); ++i) {
            Vector<F> u(dim(e), field_.zero());
            u[i] = field_.one();
            prev.push_back(std::move(u));
          }
        } else {
          prev = power_rows(a - 1, e);
        }
        for (const auto& u : prev) {
          Element p = multiply(generator(j), from_coordinates(u, e));
          gens.push_back(coordinates(p, d));
        }
      }
      rows = span_basis(field_, gens, n);
    }
    std::unique_lock lock(mutex_);
    return powers_.try_emplace(key, std::move(rows)).first->second;
  }

  void init_artinian() {
    const auto& ctx = *ctx_;
    const std::size_t n = ctx.nvars();
    if (n > 30) throw UnsupportedRing("at most 30 generators are supported");
    for (const auto& g : gb_->generators())
      if (g.leading_monomial().is_one())
        throw UnsupportedRing("the ideal contains a unit; the quotient is not a local ring");
    auto bounds = pure_power_bounds(*gb_);
    for (std::size_t j = 0; j < n; ++j)
      if (bounds[j] == INT_MAX)
        throw UnsupportedRing("quotient is not Artinian: no power of " + ctx.names()[j] +
                              " lies in the leading-term ideal");
    long box = 0;
    for (std::size_t j = 0; j < n; ++j) box += static_cast<long>(weights_[j]) * (bounds[j] - 1);
    long top = box;
    while (top > 0 && standard_monomials(*gb_, top).empty()) --top;
    top_degree_ = top;

    // fine grading: exponent differences within each generator
    std::vector<std::vector<std::int64_t>> diffs;
    const std::vector<Polynomial<F>>* lists[] = {&ideal_, &gb_->generators()};
    for (const auto* list : lists)
      for (const auto& g : *list) {
        if (g.size() < 2) continue;
        const auto& lead = g.leading_monomial();
        for (std::size_t t = 1; t < g.size(); ++t) {
          std::vector<std::int64_t> v(n);
          for (std::size_t j = 0; j < n; ++j) v[j] = lead[j] - g.terms()[t].monomial[j];
          diffs.push_back(std::move(v));
        }
      }
    lattice_ = GradingLattice(n, std::move(diffs));

    check_ideal_in_square();
  }

  // Minimality of x_1..x_n: no element of I has a nonzero linear part.
  void check_ideal_in_square() {
    const auto& ctx = *ctx_;
    std::vector<int> seen;
    for (std::size_t j = 0; j < ctx.nvars(); ++j) {
      const int w = weights_[j];
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      seen.push_back(w);
      auto monos = monomials_of_degree(ctx, w);
      const auto& basis = basis_of_degree(w);
      std::vector<Vector<F>> cols;
      for (const auto& m : monos)
        cols.push_back(coordinates(normal_form(Element::monomial(ctx_, m), *gb_), w));
      auto ideal_part = kernel_basis(Matrix<F>::from_columns(field_, basis.size(), cols));
      for (const auto& v : ideal_part)
        for (std::size_t i = 0; i < monos.size(); ++i) {
          if (field_.is_zero(v[i]) || monos[i].total_degree() != 1) continue;
          std::size_t var = 0;
          while (monos[i][var] == 0) ++var;
          throw ValidationError("generators are not minimal: the ideal contains an element with "
                                "linear term " + ctx.names()[var] + ", so " + ctx.names()[var] +
                                " is redundant (ideal must lie in (x)^2)");
        }
    }
  }

  void init_semigroup() {
    const auto& g = semigroup_gens_;
    if (g.empty()) throw ValidationError("a semigroup ring needs at least one generator");
    if (g.size() > 30) throw UnsupportedRing("at most 30 generators are supported");
    for (int x : g)
      if (x < 1) throw ValidationError("semigroup generators must be positive");
    int gcd = 0;
    for (int x : g) gcd = std::gcd(gcd, x);
    if (gcd != 1)
      throw UnsupportedRing("semigroup generators have gcd " + std::to_string(gcd) +
                            "; the ring has no finite conductor");
    const int lo = *std::min_element(g.begin(), g.end());
    const int hi = *std::max_element(g.begin(), g.end());
    // Frobenius number < (lo - 1)(hi - 1) for coprime generator sets
    const long bound = static_cast<long>(lo - 1) * (hi - 1) + hi + 1;
    member_ = sieve(g, bound);
    frobenius_ = -1;
    for (long d = bound; d >= 0; --d)
      if (!member_[static_cast<std::size_t>(d)]) {
        frobenius_ = d;
        break;
      }
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::vector<int> others;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (j != i) others.push_back(g[j]);
      if (g[i] == 1 && g.size() == 1) continue;
      if (!others.empty() && sieve(others, g[i])[static_cast<std::size_t>(g[i])])
        throw ValidationError("semigroup generators are not minimal: " + std::to_string(g[i]) +
                              " lies in the semigroup generated by the others");
    }
  }

  static std::vector<bool> sieve(const std::vector<int>& gens, long upto) {
    std::vector<bool> in(static_cast<std::size_t>(upto + 1), false);
    in[0] = true;
    for (long d = 1; d <= upto; ++d)
      for (int x : gens)
        if (d >= x && in[static_cast<std::size_t>(d - x)]) {
          in[static_cast<std::size_t>(d)] = true;
          break;
        }
    return in;
  }

  Kind kind_;
  F field_;
  ContextPtr<F> ctx_;
  std::vector<int> weights_;
  // Artinian
  std::vector<Polynomial<F>> ideal_;
  std::unique_ptr<GroebnerBasis<F>> gb_;
  std::optional<long> top_degree_;
  GradingLattice lattice_;
  // semigroup
  std::vector<int> semigroup_gens_;
  std::vector<bool> member_;
  long frobenius_ = -1;

  mutable std::shared_mutex mutex_;
  mutable std::map<long, DegreeData> degrees_;
  mutable std::map<std::pair<int, long>, std::vector<Vector<F>>> powers_;
  mutable std::map<std::pair<int, long>, bool> sumset_;
};

template <ExactField F>
using RingPtr = std::shared_ptr<const GradedRing<F>>;

}  // namespace dgk

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dgk/analyze/filtration.hpp"
#include "dgk/dgmap/lift.hpp"

namespace dgk {

/// A failing elementary lift e_i ↦ e_i + z_l, seen on H_degree.
template <ExactField F>
struct IdentityWitness {
  std::size_t generator = 0;  // i, zero-based
  std::size_t h1_class = 0;   // l, index into the H_1 basis
  int degree = 0;
  Matrix<F> difference;  // H(φ) − I
};

template <ExactField F>
struct IdentityVerdict {
  bool overall = true;
  std::map<int, bool> per_degree;
  std::vector<IdentityWitness<F>> witnesses;
};

template <ExactField F>
Lift<F> h1_elementary_lift(const KoszulComplex<F>& kc, std::size_t i, std::size_t l) {
  return elementary_lift(kc.ring(), i, kc.representative(1, l));
}

/// Decides whether every dg-algebra automorphism of K(f) induces the
/// identity on the requested homological degrees (default: all).
///
/// By the group law [δ] ↦ H(id+δ) and invariance under boundaries, the
/// induced maps form the image of a homomorphism from ⊕_i H_1, so the n·dim H_1
/// unit elementary lifts e_i ↦ e_i + z_l generate it. Over F_p that is the
/// whole story. Over Q the image of λ·(unit) is H(id+δ)^λ for integer λ, and
/// for λ = a/b one gets H(id+λδ)^b = H(id+aδ); every induced map is
/// unipotent (gr H(φ) = id), and a unipotent map with a power equal to the
/// identity is the identity, so the unit lifts decide Q as well.
template <ExactField F>
IdentityVerdict<F> check_identity_all(const KoszulComplex<F>& kc, std::vector<int> degrees = {}) {
  if (degrees.empty())
    for (int i = 0; i <= static_cast<int>(kc.n()); ++i) degrees.push_back(i);
  IdentityVerdict<F> v;
  for (int d : degrees) v.per_degree[d] = true;
  const std::size_t h1 = kc.homology_dim(1);
  for (std::size_t i = 0; i < kc.n(); ++i)
    for (std::size_t l = 0; l < h1; ++l) {
      auto phi = h1_elementary_lift(kc, i, l);
      for (int d : degrees) {
        auto m = induced_map(kc, phi, d);
        if (m.is_identity) continue;
        v.per_degree[d] = false;
        v.overall = false;
        v.witnesses.push_back({i, l, d, m.matrix - Matrix<F>::identity(kc.field(), m.matrix.rows())});
      }
    }
  return v;
}

/// Products in gr H: for adapted basis classes a (level p) in H_i and b
/// (level q) in H_j, ab ∈ F^(p+q) H_(i+j); its image in gr_(p+q) is read off
/// the adapted coordinates of level exactly p + q.
template <ExactField F>
struct GrProduct {
  int i, j;
  std::size_t a, b;  // indices into the adapted bases
  int level_a, level_b, level_product;
  bool nonzero_in_gr;
};

template <ExactField F>
struct GrAlgebra {
  std::vector<std::map<int, std::size_t>> dims;  // per i: level -> dim gr_l H_i
  std::vector<GrProduct<F>> products;             // all pairs with i, j >= 1, i + j <= n
  bool multiplicative = true;                     // level(ab) >= level(a) + level(b) throughout
  bool positive_products_vanish() const {
    for (const auto& p : products)
      if (p.nonzero_in_gr) return false;
    return true;
  }
};

template <ExactField F>
GrAlgebra<F> gr_homology(const HomologyFiltration<F>& filt) {
  const auto& kc = filt.complex();
  const int n = static_cast<int>(kc.n());
  GrAlgebra<F> g;
  for (int i = 0; i <= n; ++i) g.dims.push_back(filt.gr_dims(i));
  for (int i = 1; i <= n; ++i)
    for (int j = i; i + j <= n; ++j) {
      const auto& ai = filt.adapted_basis(i);
      const auto& bj = filt.adapted_basis(j);
      for (std::size_t a = 0; a < ai.size(); ++a)
        for (std::size_t b = 0; b < bj.size(); ++b) {
          auto prod = kc.product(i, ai[a].first, j, bj[b].first);
          const int lvl = filt.level_of(i + j, prod);
          const int want = ai[a].second + bj[b].second;
          if (lvl < want) g.multiplicative = false;
          g.products.push_back({i, j, a, b, ai[a].second, bj[b].second, lvl, lvl == want});
        }
    }
  return g;
}

/// ord(R) = sup{l : F^l H_1 = H_1}; nullopt (infinity) when H_1 = 0.
template <ExactField F>
std::optional<int> ring_order(const HomologyFiltration<F>& filt) {
  return filt.min_level(1);
}

/// Whether H(φ)(z) − z ∈ F^(l+1) for every adapted basis class z of level l,
/// and the smallest level increase seen over nonzero differences.
struct GrIdentityReport {
  bool identity = true;
  std::optional<int> min_shift;  // nullopt: H(φ) = id on every degree checked
};

template <ExactField F>
GrIdentityReport gr_induced_identity(const HomologyFiltration<F>& filt, const Lift<F>& phi) {
  const auto& kc = filt.complex();
  const auto& k = kc.field();
  GrIdentityReport rep;
  for (int i = 0; i <= static_cast<int>(kc.n()); ++i) {
    const auto m = induced_map(kc, phi, i);
    if (m.is_identity) continue;
    for (const auto& [z, l] : filt.adapted_basis(i)) {
      auto diff = apply(m.matrix, z);
      for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = k.sub(diff[r], z[r]);
      const int lvl = filt.level_of(i, diff);
      if (lvl == kInfiniteLevel) continue;
      if (lvl < l + 1) rep.identity = false;
      if (!rep.min_shift || lvl - l < *rep.min_shift) rep.min_shift = lvl - l;
    }
  }
  return rep;
}

/// H_i × H_(c−i) → H_c for c the top nonvanishing degree.
template <ExactField F>
struct PoincarePairing {
  int i = 0, c = 0;
  std::size_t top_dim = 0;
  Matrix<F> matrix;  // only when dim H_c = 1
  bool is_perfect = false;
};

template <ExactField F>
PoincarePairing<F> poincare_pairing(const KoszulComplex<F>& kc, int i) {
  PoincarePairing<F> p{i, kc.top_homological_degree(), 0, Matrix<F>(kc.field(), 0, 0), false};
  p.top_dim = kc.homology_dim(p.c);
  if (i < 0 || i > p.c || p.top_dim != 1) return p;
  const auto& table = kc.product_table(i, p.c - i);
  const std::size_t a = kc.homology_dim(i), b = kc.homology_dim(p.c - i);
  p.matrix = Matrix<F>(kc.field(), a, b);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t s = 0; s < b; ++s) p.matrix(r, s) = table[r][s][0];
  p.is_perfect = a == b && rank(p.matrix) == a;
  return p;
}

/// Whether H is the exterior algebra on H_1: products of H_1 classes span
/// every H_i and dim H_i = C(dim H_1, i).
template <ExactField F>
bool is_exterior_on_h1(const KoszulComplex<F>& kc) {
  const auto& k = kc.field();
  const std::size_t c = kc.homology_dim(1);
  const int n = static_cast<int>(kc.n());
  std::size_t binom = 1;
  std::vector<Vector<F>> prev;  // spanning set of H_(i−1) built from H_1 products
  prev.push_back(Vector<F>(kc.homology_dim(0), k.one()));
  for (int i = 1; i <= n; ++i) {
    binom = i > static_cast<int>(c) ? 0 : binom * (c - static_cast<std::size_t>(i) + 1) / static_cast<std::size_t>(i);
    if (kc.homology_dim(i) != binom) return false;
    if (binom == 0) continue;
    std::vector<Vector<F>> cur;
    for (const auto& x : prev)
      for (std::size_t l = 0; l < c; ++l) {
        Vector<F> e(c, k.zero());
        e[l] = k.one();
        cur.push_back(kc.product(i - 1, x, 1, e));
      }
    cur = span_basis(k, cur, kc.homology_dim(i));
    if (cur.size() != binom) return false;
    prev = std::move(cur);
  }
  return true;
}

template <ExactField F>
bool matrices_commute(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b == b * a;
}

template <ExactField F>
Matrix<F> matrix_power(const Matrix<F>& m, unsigned long e) {
  Matrix<F> out = Matrix<F>::identity(m.field(), m.rows());
  Matrix<F> base = m;
  while (e) {
    if (e & 1u) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

/// Machine-readable outcome of every in-scope check on one ring.
template <ExactField F>
struct SuiteReport {
  std::string ring;
  BettiTable betti;
  std::vector<std::size_t> dims;
  std::map<std::pair<int, int>, bool> product_vanishing;
  bool complete_intersection = false;
  IdentityVerdict<F> identity;
  bool group_law = true;
  bool abelian = true;
  std::optional<bool> exponent_p;  // nullopt in characteristic zero
  bool gr_identity = true;
  bool lemma_shift = true;         // difference maps raise level by >= s − 1
  bool h1_identity = true;         // H_1(φ) = id for every elementary lift
  bool top_identity = true;        // H_c(φ) = id likewise
  bool is_pd_algebra = false;
  std::map<int, bool> pairing_perfect;
  std::optional<bool> duality_propagation;  // only for Poincaré duality algebras
  std::optional<int> order;
  std::vector<std::string> failures;
};

struct SuiteOptions {
  std::size_t group_law_pairs = 12;
  unsigned seed = 20240601;
};

template <ExactField F>
SuiteReport<F> run_suite(const KoszulComplex<F>& kc, SuiteOptions opt = {}) {
  SuiteReport<F> rep;
  const auto& k = kc.field();
  const int n = static_cast<int>(kc.n());
  rep.ring = kc.ring()->describe();
  rep.betti = kc.betti_table();
  rep.dims = kc.homology_dims();
  for (int i = 1; i <= n; ++i)
    for (int j = i; i + j <= n; ++j) rep.product_vanishing[{i, j}] = kc.product_vanishing(i, j);
  rep.complete_intersection = is_exterior_on_h1(kc);

  // every unit elementary lift, with its induced maps in all degrees
  const std::size_t h1 = kc.homology_dim(1);
  struct Entry {
    std::size_t i, l;
    std::vector<InducedMap<F>> maps;
  };
  std::vector<Entry> lifts;
  rep.identity.overall = true;
  for (int d = 0; d <= n; ++d) rep.identity.per_degree[d] = true;
  for (std::size_t i = 0; i < kc.n(); ++i)
    for (std::size_t l = 0; l < h1; ++l) {
      Entry e{i, l, {}};
      auto phi = h1_elementary_lift(kc, i, l);
      for (int d = 0; d <= n; ++d) {
        e.maps.push_back(induced_map(kc, phi, d));
        if (!e.maps.back().is_identity) {
          rep.identity.overall = false;
          rep.identity.per_degree[d] = false;
          const auto& m = e.maps.back().matrix;
          rep.identity.witnesses.push_back({i, l, d, m - Matrix<F>::identity(k, m.rows())});
        }
      }
      lifts.push_back(std::move(e));
    }
  const int c = kc.top_homological_degree();
  for (const auto& e : lifts) {
    if (!e.maps[1].is_identity) rep.h1_identity = false;
    if (!e.maps[static_cast<std::size_t>(c)].is_identity) rep.top_identity = false;
  }
  if (!rep.h1_identity) rep.failures.push_back("H_1(phi) != id for an elementary lift");
  if (!rep.top_identity) rep.failures.push_back("H_c(phi) != id for an elementary lift");

  // abelian, exponent p
  for (std::size_t a = 0; a < lifts.size(); ++a)
    for (std::size_t b = a + 1; b < lifts.size(); ++b)
      for (int d = 0; d <= n; ++d)
        if (!matrices_commute(lifts[a].maps[d].matrix, lifts[b].maps[d].matrix)) rep.abelian = false;
  if (!rep.abelian) rep.failures.push_back("induced maps do not commute");
  const unsigned long p = k.characteristic();
  if (p > 0) {
    rep.exponent_p = true;
    for (const auto& e : lifts)
      for (const auto& m : e.maps)
        if (!m.is_identity && !matrix_power(m.matrix, p).is_identity()) rep.exponent_p = false;
    if (!*rep.exponent_p) rep.failures.push_back("a non-identity induced map has order != p");
  }

  // group law on random pairs of elementary lifts
  if (!lifts.empty()) {
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, lifts.size() - 1);
    for (std::size_t t = 0; t < opt.group_law_pairs; ++t) {
      const auto& x = lifts[pick(rng)];
      const auto& y = lifts[pick(rng)];
      std::vector<KoszulElement<F>> delta(kc.n(), KoszulElement<F>(kc.ring()));
      delta[x.i] += kc.representative(1, x.l);
      delta[y.i] += kc.representative(1, y.l);
      auto sum = Lift<F>::identity(kc.ring()).perturbed(delta);
      for (int d = 0; d <= n; ++d) {
        auto lhs = compose_induced(x.maps[d], y.maps[d]);
        if (!(lhs.matrix == induced_map(kc, sum, d).matrix)) rep.group_law = false;
      }
    }
    if (!rep.group_law) rep.failures.push_back("H(id+d)H(id+d') != H(id+d+d')");
  }

  // filtration: gr identity, Lemma shift bound, order
  HomologyFiltration<F> filt(kc);
  rep.order = ring_order(filt);
  for (const auto& e : lifts) {
    auto phi = h1_elementary_lift(kc, e.i, e.l);
    auto g = gr_induced_identity(filt, phi);
    if (!g.identity) rep.gr_identity = false;
    Vector<F> unit(h1, k.zero());
    unit[e.l] = k.one();
    const int s = filt.level_of(1, unit);
    if (g.min_shift && *g.min_shift < s - 1) rep.lemma_shift = false;
  }
  if (!rep.gr_identity) rep.failures.push_back("gr H(phi) != id for an elementary lift");
  if (!rep.lemma_shift) rep.failures.push_back("difference map raised filtration by less than s-1");

  // Poincaré duality and its propagation
  if (kc.homology_dim(c) == 1) {
    rep.is_pd_algebra = true;
    for (int i = 0; i <= c; ++i) {
      rep.pairing_perfect[i] = poincare_pairing(kc, i).is_perfect;
      rep.is_pd_algebra = rep.is_pd_algebra && rep.pairing_perfect[i];
    }
  }
  if (rep.is_pd_algebra) {
    rep.duality_propagation = true;
    for (int i = 0; i <= c; ++i)
      if (rep.identity.per_degree[i] && !rep.identity.per_degree[c - i]) rep.duality_propagation = false;
    if (!*rep.duality_propagation) rep.failures.push_back("duality propagation violated");
  }
  return rep;
}

}  // namespace dgk

#pragma once

#include <random>
#include <string>
#include <vector>

#include "dgk/analyze/analyze.hpp"
#include "dgk/cli/specs.hpp"

namespace dgk::test {

template <ExactField F>
RingPtr<F> quotient(const F& k, std::vector<std::string> vars, const std::vector<std::string>& ideal,
                    std::vector<int> weights = {}) {
  auto ctx = std::make_shared<const PolyContext<F>>(k, std::move(vars), std::move(weights));
  std::vector<Polynomial<F>> gens;
  for (const auto& g : ideal) gens.push_back(parse_poly<F>(g, ctx));
  return GradedRing<F>::artinian_quotient(ctx, gens);
}

inline RingPtr<PrimeField> semigroup(std::vector<int> gens) {
  return GradedRing<PrimeField>::semigroup_ring(PrimeField(2), std::move(gens));
}

inline std::string fixture(const std::string& name) { return std::string(DGK_DATA_DIR) + "/" + name; }

/// Loads data/rings/<name>.json; the fixture must be over a prime field.
inline RingPtr<PrimeField> fixture_ring(const std::string& name) {
  const auto spec = cli::parse_ring_spec(cli::read_file(fixture("rings/" + name + ".json")));
  return cli::build_ring(spec, std::get<PrimeField>(cli::field_of(spec.field)));
}

inline RingPtr<RationalField> fixture_ring_q(const std::string& name) {
  const auto spec = cli::parse_ring_spec(cli::read_file(fixture("rings/" + name + ".json")));
  return cli::build_ring(spec, RationalField{});
}

/// Every F_2 fixture small enough for the default test run.
inline const std::vector<std::string>& small_fixtures() {
  static const std::vector<std::string> names = {
      "ci_x2y2_f2",    "semigroup_6_10_14_15", "semigroup_9_10_11_13_17", "semigroup_regular",
      "products_h1h2", "products_h1h3",        "products_h1h1",           "identity_w3",
      "identity_w3_yw2", "weighted_23",        "golod_xy_squared",        "destefani",
      "x_squared_f2"};
  return names;
}

template <ExactField F>
typename F::value_type random_scalar(const F& k, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return k.from_int(d(rng));
}

/// Random element of H_i: coordinates then a random boundary added to the
/// representative, so callers never see the canonical cycle.
template <ExactField F>
KoszulElement<F> random_cycle(const KoszulComplex<F>& kc, int i, std::mt19937& rng, Vector<F>* coords = nullptr) {
  const auto& k = kc.field();
  Vector<F> c(kc.homology_dim(i), k.zero());
  for (auto& x : c) x = random_scalar(k, rng);
  auto z = kc.representative(i, c);
  if (i < static_cast<int>(kc.n())) {
    // d of a random monomial chain in a degree where z lives (or degree 1 if z = 0)
    std::uniform_int_distribution<long> deg(1, std::max<long>(1, kc.truncation_degree()));
    const long d = z.is_zero() ? deg(rng) : z.internal_components().begin()->first;
    const auto basis = kc.strand_basis(i + 1, d);
    if (!basis.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
      const auto& [s, m] = basis[pick(rng)];
      z += differential(KoszulElement<F>::monomial(kc.ring(), s, m, random_scalar(k, rng)));
    }
  }
  if (coords) *coords = c;
  return z;
}

/// Random degree-one cycle for elementary lifts: a random combination of
/// H_1 representatives plus a boundary.
template <ExactField F>
KoszulElement<F> random_h1_cycle(const KoszulComplex<F>& kc, std::mt19937& rng) {
  return random_cycle(kc, 1, rng);
}

}  // namespace dgk::test

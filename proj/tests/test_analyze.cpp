#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace dgk;
using dgk::test::fixture_ring;
using dgk::test::quotient;
using dgk::test::semigroup;

namespace {

const PrimeField F2(2);
const RationalField QQ;

template <ExactField F>
KoszulElement<F> kel(const RingPtr<F>& r, const std::string& text) {
  return parse_koszul<F>(text, r);
}

/// φ(e_i) = e_i + z_i with an independent random cycle in every column,
/// composed with a second such lift.
template <ExactField F>
Lift<F> random_general_lift(const KoszulComplex<F>& kc, std::mt19937& rng, const typename F::value_type& scale) {
  auto one = [&] {
    std::vector<KoszulElement<F>> delta;
    for (std::size_t i = 0; i < kc.n(); ++i) delta.push_back(test::random_h1_cycle(kc, rng).scaled(scale));
    return Lift<F>::identity(kc.ring()).perturbed(delta);
  };
  return compose(one(), one());
}

}  // namespace

TEST(CheckIdentity, Verdicts) {
  KoszulComplex<PrimeField> ci(quotient(F2, {"x", "y"}, {"x^2", "y^2"}));
  EXPECT_TRUE(check_identity_all(ci).overall);
  EXPECT_TRUE(check_identity_all(ci).witnesses.empty());

  KoszulComplex<PrimeField> w3(fixture_ring("identity_w3"));
  EXPECT_TRUE(check_identity_all(w3).overall);

  KoszulComplex<PrimeField> yw2(fixture_ring("identity_w3_yw2"));
  auto v = check_identity_all(yw2);
  EXPECT_FALSE(v.overall);
  EXPECT_FALSE(v.per_degree.at(2));
  EXPECT_TRUE(v.per_degree.at(1));
  EXPECT_TRUE(v.per_degree.at(4));

  KoszulComplex<PrimeField> s(semigroup({6, 10, 14, 15}));
  auto vs = check_identity_all(s);
  EXPECT_FALSE(vs.overall);
  EXPECT_FALSE(vs.per_degree.at(2));

  KoszulComplex<RationalField> q(test::fixture_ring_q("q_x2_xy_y2_z2"));
  auto vq = check_identity_all(q);
  EXPECT_FALSE(vq.overall);
  EXPECT_FALSE(vq.per_degree.at(2));
}

TEST(CheckIdentity, RestrictedDegrees) {
  KoszulComplex<PrimeField> s(semigroup({6, 10, 14, 15}));
  auto v = check_identity_all(s, {1, 3});
  EXPECT_TRUE(v.overall);
  EXPECT_EQ(v.per_degree.size(), 2u);
}

TEST(CheckIdentity, WitnessesReverify) {
  for (const auto& name : {"identity_w3_yw2", "semigroup_6_10_14_15", "semigroup_9_10_11_13_17"}) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    auto v = check_identity_all(kc);
    ASSERT_FALSE(v.witnesses.empty()) << name;
    bool overall = true;
    for (const auto& [d, ok] : v.per_degree) overall = overall && ok;
    EXPECT_EQ(v.overall, overall);
    for (const auto& w : v.witnesses) {
      auto m = induced_map(kc, h1_elementary_lift(kc, w.generator, w.h1_class), w.degree).matrix;
      EXPECT_EQ(m - Matrix<PrimeField>::identity(F2, m.rows()), w.difference);
      EXPECT_FALSE(w.difference.is_zero());
    }
  }
}

TEST(CheckIdentity, PaperLiftOnTheFailingRing) {
  auto r = fixture_ring("identity_w3_yw2");
  KoszulComplex<PrimeField> kc(r);
  auto phi = cli::parse_lift(cli::read_file(test::fixture("lifts/identity_w3_yw2_witness.lift")), r);
  EXPECT_FALSE(induced_map(kc, phi, 2).is_identity);
  // the class c of w^2 e2 ∧ z e3 ... is moved by the product [w^2 e2][z e3]
  auto a = kc.class_of(1, kel(r, "w^2*e2")), b = kc.class_of(1, kel(r, "z*e3"));
  EXPECT_FALSE(is_zero_vector(F2, kc.product(1, a, 1, b)));
}

TEST(Filtration, ZeroClassHasInfiniteLevel) {
  KoszulComplex<PrimeField> kc(quotient(F2, {"x", "y"}, {"x^2", "y^2"}));
  HomologyFiltration<PrimeField> filt(kc);
  EXPECT_EQ(filt.level_of(1, Vector<PrimeField>(2, 0)), kInfiniteLevel);
}

TEST(Filtration, WeightedRing) {
  KoszulComplex<PrimeField> kc(fixture_ring("weighted_23"));
  HomologyFiltration<PrimeField> filt(kc);
  EXPECT_EQ(filt.gr_dims(1), (std::map<int, std::size_t>{{2, 1}, {4, 1}}));
  EXPECT_EQ(filt.dim_at_least(2, 7), kc.homology_dim(2));
  EXPECT_EQ(filt.dim_at_least(2, 8), 0u);
  auto gr = gr_homology(filt);
  EXPECT_TRUE(gr.positive_products_vanish());
  EXPECT_TRUE(gr.multiplicative);
}

TEST(Filtration, FiveGeneratorRingSitsInOneLevel) {
  KoszulComplex<PrimeField> kc(fixture_ring("products_h1h1"));
  HomologyFiltration<PrimeField> filt(kc);
  EXPECT_EQ(filt.dim_at_least(2, 4), kc.homology_dim(2));
  EXPECT_EQ(filt.dim_at_least(2, 5), 0u);
}

TEST(Filtration, StandardGradedLevelIsInternalDegree) {
  // with all weights one, m^a K_i in internal degree d is everything once
  // d − i >= a, so each class sits at the level of its internal degree
  for (const auto& name : {"ci_x2y2_f2", "products_h1h2", "products_h1h3", "products_h1h1", "identity_w3",
                           "identity_w3_yw2", "golod_xy_squared", "destefani", "x_squared_f2"}) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    HomologyFiltration<PrimeField> filt(kc);
    for (int i = 0; i <= static_cast<int>(kc.n()); ++i) {
      std::map<int, std::size_t> by_degree;
      for (const auto& c : kc.classes(i)) ++by_degree[static_cast<int>(c.degree)];
      EXPECT_EQ(filt.gr_dims(i), by_degree) << name << " i=" << i;
      for (std::size_t k = 0; k < kc.homology_dim(i); ++k) {
        Vector<PrimeField> e(kc.homology_dim(i), 0);
        e[k] = 1;
        EXPECT_EQ(filt.level_of(i, e), kc.classes(i)[k].degree);
      }
    }
  }
}

TEST(Filtration, GrDimensionsSumToHomology) {
  for (const auto& name : test::small_fixtures()) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    HomologyFiltration<PrimeField> filt(kc);
    for (int i = 0; i <= static_cast<int>(kc.n()); ++i) {
      std::size_t total = 0;
      for (const auto& [l, d] : filt.gr_dims(i)) total += d;
      EXPECT_EQ(total, kc.homology_dim(i)) << name;
      EXPECT_EQ(filt.adapted_basis(i).size(), kc.homology_dim(i));
    }
  }
}

TEST(Filtration, CompleteIntersectionGr) {
  KoszulComplex<PrimeField> kc(quotient(F2, {"x", "y"}, {"x^2", "y^2"}));
  HomologyFiltration<PrimeField> filt(kc);
  auto gr = gr_homology(filt);
  EXPECT_EQ(gr.dims[0], (std::map<int, std::size_t>{{0, 1}}));
  EXPECT_EQ(gr.dims[1], (std::map<int, std::size_t>{{2, 2}}));
  EXPECT_EQ(gr.dims[2], (std::map<int, std::size_t>{{4, 1}}));
  EXPECT_FALSE(gr.positive_products_vanish());
}

TEST(Filtration, Multiplicative) {
  std::mt19937 rng(97);
  for (const auto& name : {"semigroup_6_10_14_15", "weighted_23", "identity_w3_yw2", "products_h1h2"}) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    HomologyFiltration<PrimeField> filt(kc);
    EXPECT_TRUE(gr_homology(filt).multiplicative) << name;
    for (int t = 0; t < 30; ++t) {
      std::uniform_int_distribution<int> deg(1, static_cast<int>(kc.n()) - 1);
      const int i = deg(rng);
      std::uniform_int_distribution<int> deg2(1, static_cast<int>(kc.n()) - i);
      const int j = deg2(rng);
      Vector<PrimeField> a, b;
      test::random_cycle(kc, i, rng, &a);
      test::random_cycle(kc, j, rng, &b);
      const int la = filt.level_of(i, a), lb = filt.level_of(j, b);
      if (la == kInfiniteLevel || lb == kInfiniteLevel) continue;
      EXPECT_GE(filt.level_of(i + j, kc.product(i, a, j, b)), la + lb) << name;
    }
  }
}

TEST(Order, Examples) {
  KoszulComplex<PrimeField> x2(quotient(F2, {"x"}, {"x^2"}));
  EXPECT_EQ(ring_order(HomologyFiltration<PrimeField>(x2)), 2);
  KoszulComplex<PrimeField> x5(quotient(F2, {"x"}, {"x^5"}));
  EXPECT_EQ(ring_order(HomologyFiltration<PrimeField>(x5)), 5);
  KoszulComplex<PrimeField> reg(semigroup({1}));
  EXPECT_FALSE(ring_order(HomologyFiltration<PrimeField>(reg)).has_value());
  KoszulComplex<PrimeField> w(fixture_ring("weighted_23"));
  EXPECT_EQ(ring_order(HomologyFiltration<PrimeField>(w)), 2);
}

TEST(Order, StandardGradedMatchesLowestRelation) {
  for (const auto& name : {"ci_x2y2_f2", "products_h1h2", "products_h1h3", "identity_w3", "golod_xy_squared",
                           "destefani"}) {
    auto r = fixture_ring(name);
    KoszulComplex<PrimeField> kc(r);
    long lowest = LONG_MAX;
    for (const auto& g : r->ideal_generators()) lowest = std::min(lowest, g.degree());
    EXPECT_EQ(ring_order(HomologyFiltration<PrimeField>(kc)), lowest) << name;
  }
  auto r = quotient(F2, {"x", "y", "z"}, {"x^3", "y^3", "z^4", "x*y*z"});
  KoszulComplex<PrimeField> kc(r);
  EXPECT_EQ(ring_order(HomologyFiltration<PrimeField>(kc)), 3);
}

TEST(GrIdentity, Witnesses) {
  for (const auto& [name, lift] : std::vector<std::pair<std::string, std::string>>{
           {"semigroup_6_10_14_15", "semigroup_6_10_14_15_witness"},
           {"semigroup_9_10_11_13_17", "semigroup_9_10_11_13_17_witness"},
           {"identity_w3_yw2", "identity_w3_yw2_witness"}}) {
    auto r = fixture_ring(name);
    KoszulComplex<PrimeField> kc(r);
    HomologyFiltration<PrimeField> filt(kc);
    auto phi = cli::parse_lift(cli::read_file(test::fixture("lifts/" + lift + ".lift")), r);
    auto rep = gr_induced_identity(filt, phi);
    EXPECT_TRUE(rep.identity) << name;
    ASSERT_TRUE(rep.min_shift.has_value()) << name;  // H(φ) != id
    EXPECT_GE(*rep.min_shift, 1);
    auto id = gr_induced_identity(filt, Lift<PrimeField>::identity(r));
    EXPECT_TRUE(id.identity);
    EXPECT_FALSE(id.min_shift.has_value());
  }
}

TEST(GrIdentity, WitnessOnTheGorensteinSemigroup) {
  auto s = semigroup({9, 10, 11, 13, 17});
  KoszulComplex<PrimeField> kc(s);
  auto phi = elementary_lift(s, 4, kel(s, "t^10*e2 + t^9*e3"));
  EXPECT_FALSE(induced_map(kc, phi, 2).is_identity);
}

TEST(Pairing, CompleteIntersection) {
  KoszulComplex<PrimeField> kc(quotient(F2, {"x", "y"}, {"x^2", "y^2"}));
  auto p = poincare_pairing(kc, 1);
  EXPECT_TRUE(p.is_perfect);
  EXPECT_EQ(p.c, 2);
  ASSERT_EQ(p.matrix.rows(), 2u);
  EXPECT_EQ(p.matrix(0, 0), 0u);
  EXPECT_EQ(p.matrix(1, 1), 0u);
  EXPECT_EQ(p.matrix(0, 1), 1u);
  EXPECT_EQ(p.matrix(1, 0), 1u);
}

TEST(Pairing, GorensteinSemigroupIsPerfectEverywhere) {
  KoszulComplex<PrimeField> kc(semigroup({9, 10, 11, 13, 17}));
  EXPECT_EQ(kc.top_homological_degree(), 4);
  for (int i = 0; i <= 4; ++i) EXPECT_TRUE(poincare_pairing(kc, i).is_perfect) << i;
}

TEST(Pairing, GolodRingIsNotPoincareDuality) {
  KoszulComplex<PrimeField> kc(fixture_ring("golod_xy_squared"));
  auto p = poincare_pairing(kc, 1);
  EXPECT_NE(p.top_dim, 1u);
  EXPECT_FALSE(p.is_perfect);
  KoszulComplex<PrimeField> s(semigroup({6, 10, 14, 15}));
  EXPECT_FALSE(poincare_pairing(s, 1).is_perfect);
}

TEST(Suite, CompleteIntersection) {
  KoszulComplex<PrimeField> kc(quotient(F2, {"x", "y"}, {"x^2", "y^2"}));
  auto rep = run_suite(kc);
  EXPECT_TRUE(rep.failures.empty());
  EXPECT_TRUE(rep.complete_intersection);
  EXPECT_TRUE(rep.identity.overall);
  EXPECT_TRUE(rep.is_pd_algebra);
  EXPECT_EQ(rep.duality_propagation, true);
  EXPECT_EQ(rep.order, 2);
  EXPECT_EQ(rep.dims, (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Suite, SemigroupWithNontrivialAutomorphisms) {
  KoszulComplex<PrimeField> kc(semigroup({6, 10, 14, 15}));
  auto rep = run_suite(kc);
  EXPECT_FALSE(rep.identity.overall);
  EXPECT_TRUE(rep.abelian);
  EXPECT_EQ(rep.exponent_p, true);
  EXPECT_TRUE(rep.group_law);
  EXPECT_TRUE(rep.gr_identity);
  EXPECT_TRUE(rep.lemma_shift);
  EXPECT_TRUE(rep.h1_identity);
  EXPECT_TRUE(rep.top_identity);
  EXPECT_FALSE(rep.is_pd_algebra);
  EXPECT_FALSE(rep.order.has_value() && *rep.order <= 0);
  EXPECT_TRUE(rep.failures.empty());
}

TEST(Suite, ProductsVanishAgainstFirstHomologyOnly) {
  KoszulComplex<PrimeField> kc(fixture_ring("destefani"));
  auto rep = run_suite(kc);
  EXPECT_TRUE(rep.product_vanishing.at({1, 1}));
  EXPECT_TRUE(rep.product_vanishing.at({1, 2}));
  EXPECT_TRUE(rep.product_vanishing.at({1, 3}));
  EXPECT_FALSE(rep.product_vanishing.at({2, 2}));
  EXPECT_TRUE(rep.identity.overall);  // every H_m is fixed once H_1·H_(m−1) = 0
  EXPECT_TRUE(rep.failures.empty());
}

TEST(Suite, CleanOnEveryFixture) {
  for (const auto& name : test::small_fixtures()) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    auto rep = run_suite(kc);
    EXPECT_TRUE(rep.failures.empty()) << name << ": " << (rep.failures.empty() ? "" : rep.failures[0]);
  }
}

TEST(Soundness, PrimeFieldVerdictsSurviveGeneralLifts) {
  std::mt19937 rng(101);
  const std::vector<std::string> names = {"ci_x2y2_f2", "identity_w3", "golod_xy_squared", "weighted_23",
                                          "products_h1h1"};
  std::size_t tried = 0;
  for (const auto& name : names) {
    KoszulComplex<PrimeField> kc(fixture_ring(name));
    if (!check_identity_all(kc).overall) continue;
    for (int t = 0; t < 40; ++t, ++tried) {
      auto phi = random_general_lift(kc, rng, F2.one());
      for (int i = 0; i <= static_cast<int>(kc.n()); ++i) ASSERT_TRUE(induced_map(kc, phi, i).is_identity) << name;
    }
  }
  EXPECT_EQ(tried, 200u);
}

TEST(Soundness, RationalVerdictsSurviveRationalLifts) {
  std::mt19937 rng(103);
  for (const auto& r : {quotient(QQ, {"x", "y"}, {"x^2", "y^2"}), quotient(QQ, {"x", "y"}, {"x^2", "x*y", "y^2"}),
                        quotient(QQ, {"x", "y"}, {"x^3+y^2", "y^3"}, {2, 3})}) {
    KoszulComplex<RationalField> kc(r);
    ASSERT_TRUE(check_identity_all(kc).overall);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 7);
    for (int t = 0; t < 15; ++t) {
      auto phi = random_general_lift(kc, rng, QQ.from_rational(num(rng), den(rng)));
      for (int i = 0; i <= static_cast<int>(kc.n()); ++i) EXPECT_TRUE(induced_map(kc, phi, i).is_identity);
    }
  }
}

TEST(Soundness, RationalFailureIsNotTorsion) {
  // over Q a moved class moves for every nonzero multiple of the perturbation
  auto r = test::fixture_ring_q("q_x2_xy_y2_z2");
  KoszulComplex<RationalField> kc(r);
  for (int a : {1, 2, -3}) {
    auto phi = elementary_lift(r, 0, kel(r, "z*e3").scaled(QQ.from_rational(a, 5)));
    EXPECT_FALSE(induced_map(kc, phi, 2).is_identity) << a;
  }
}

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dgk/koszul/complex.hpp"

namespace dgk {

/// A lift φ of id_R: an n×n matrix Φ over R with Σ_j Φ_ji x_j = x_i, so
/// φ(e_i) = Σ_j Φ_ji e_j extends to a dg-algebra automorphism K(φ).
template <ExactField F>
class Lift {
 public:
  using Element = Polynomial<F>;

  /// Validates the lift condition column by column.
  Lift(RingPtr<F> ring, std::vector<std::vector<Element>> matrix)
      : ring_(std::move(ring)), matrix_(std::move(matrix)) {
    const std::size_t n = ring_->num_generators();
    if (matrix_.size() != n) throw DimensionMismatch("lift matrix must be n×n");
    for (auto& row : matrix_) {
      if (row.size() != n) throw DimensionMismatch("lift matrix must be n×n");
      for (auto& e : row) e = ring_->canonical(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
      KoszulElement<F> img(ring_);
      Element image = ring_->zero();
      for (std::size_t j = 0; j < n; ++j) {
        img.add_term(Subset{1} << j, matrix_[j][i]);
        image += ring_->multiply(matrix_[j][i], ring_->generator(j));
      }
      if (!(image == ring_->generator(i)))
        throw ValidationError("lift condition fails in column " + std::to_string(i + 1) + ": f(phi(e" +
                              std::to_string(i + 1) + ")) = " + to_string(image) + ", expected " +
                              ring_->generator_name(i));
      images_.push_back(std::move(img));
    }
  }

  /// From the images φ(e_1), ..., φ(e_n), each of homological degree one.
  static Lift from_images(RingPtr<F> ring, const std::vector<KoszulElement<F>>& images) {
    const std::size_t n = ring->num_generators();
    if (images.size() != n) throw DimensionMismatch("need one image per generator");
    std::vector<std::vector<Element>> m(n, std::vector<Element>(n, ring->zero()));
    for (std::size_t i = 0; i < n; ++i) {
      if (!images[i].in_degree(1))
        throw ValidationError("image of e" + std::to_string(i + 1) + " is not of homological degree 1");
      for (std::size_t j = 0; j < n; ++j) m[j][i] = images[i].coefficient(Subset{1} << j);
    }
    return Lift(std::move(ring), std::move(m));
  }

  static Lift identity(RingPtr<F> ring) {
    const std::size_t n = ring->num_generators();
    std::vector<std::vector<Element>> m(n, std::vector<Element>(n, ring->zero()));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = ring->one();
    return Lift(std::move(ring), std::move(m));
  }

  const RingPtr<F>& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return matrix_.size(); }
  const Element& entry(std::size_t j, std::size_t i) const { return matrix_[j][i]; }
  const std::vector<std::vector<Element>>& matrix() const noexcept { return matrix_; }
  const KoszulElement<F>& image(std::size_t i) const { return images_[i]; }

  bool is_identity() const {
    for (std::size_t j = 0; j < size(); ++j)
      for (std::size_t i = 0; i < size(); ++i)
        if (!(matrix_[j][i] == (i == j ? ring_->one() : ring_->zero()))) return false;
    return true;
  }

  /// Largest internal-degree shift deg(Φ_ji) + w_j − w_i over nonzero terms.
  long shift() const {
    long s = 0;
    for (std::size_t j = 0; j < size(); ++j)
      for (std::size_t i = 0; i < size(); ++i)
        for (const auto& t : matrix_[j][i].terms())
          s = std::max(s, ring_->degree(t.monomial) + ring_->weight(j) - ring_->weight(i));
    return s;
  }

  /// φ(e_{j1}) ∧ ... ∧ φ(e_{ji}), memoized per subset.
  const KoszulElement<F>& subset_image(Subset s) const {
    {
      std::lock_guard lock(*mutex_);
      if (auto it = cache_->find(s); it != cache_->end()) return it->second;
    }
    KoszulElement<F> out = KoszulElement<F>::basis(ring_, 0);
    for (Subset rest = s; rest; rest &= rest - 1) out = wedge(out, images_[std::countr_zero(rest)]);
    std::lock_guard lock(*mutex_);
    return cache_->try_emplace(s, std::move(out)).first->second;
  }

  /// K(φ)(Σ r_S e_S) = Σ r_S φ(e_S).
  KoszulElement<F> apply(const KoszulElement<F>& u) const {
    if (u.ring() != ring_) throw ValidationError("apply_lift: element from a different complex");
    KoszulElement<F> out(ring_);
    for (const auto& [s, r] : u.coefficients()) out += subset_image(s).times(r);
    return out;
  }

  /// Matrix of φ∘ψ.
  friend Lift compose(const Lift& phi, const Lift& psi) {
    if (phi.ring_ != psi.ring_) throw ValidationError("compose: lifts over different rings");
    const std::size_t n = phi.size();
    const auto& ring = phi.ring_;
    std::vector<std::vector<Element>> m(n, std::vector<Element>(n, ring->zero()));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          m[j][i] += ring->multiply(phi.matrix_[j][l], psi.matrix_[l][i]);
    return Lift(ring, std::move(m));
  }

  /// φ + δ with δ(e_i) = delta[i]; each delta[i] must lie in ker f.
  Lift perturbed(const std::vector<KoszulElement<F>>& delta) const {
    std::vector<KoszulElement<F>> imgs = images_;
    for (std::size_t i = 0; i < delta.size() && i < imgs.size(); ++i) imgs[i] += delta[i];
    return from_images(ring_, imgs);
  }

  /// "e1 -> e1 + t^16*e3 + t^15*e4" lines, one per generator.
  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i)
      out += "e" + std::to_string(i + 1) + " -> " + to_string(images_[i]) + "\n";
    return out;
  }

 private:
  RingPtr<F> ring_;
  std::vector<std::vector<Element>> matrix_;  // matrix_[j][i] = Φ_ji
  std::vector<KoszulElement<F>> images_;
  std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<Subset, KoszulElement<F>>> cache_ =
      std::make_shared<std::map<Subset, KoszulElement<F>>>();
};

template <ExactField F>
Lift<F> make_lift(RingPtr<F> ring, std::vector<std::vector<Polynomial<F>>> matrix) {
  return Lift<F>(std::move(ring), std::move(matrix));
}

/// e_i ↦ e_i + z, e_j ↦ e_j; z must be a cycle of homological degree one.
template <ExactField F>
Lift<F> elementary_lift(const RingPtr<F>& ring, std::size_t i, const KoszulElement<F>& z) {
  if (i >= ring->num_generators()) throw ValidationError("generator index out of range");
  if (!z.in_degree(1)) throw ValidationError("elementary lift: z is not of homological degree 1");
  if (!differential(z).is_zero()) throw ValidationError("elementary lift: z is not a cycle");
  std::vector<KoszulElement<F>> delta(ring->num_generators(), KoszulElement<F>(ring));
  delta[i] = z;
  return Lift<F>::identity(ring).perturbed(delta);
}

template <ExactField F>
KoszulElement<F> apply_lift(const Lift<F>& phi, const KoszulElement<F>& u) {
  return phi.apply(u);
}

/// H_i(φ) in the basis of H_i: column k is the class of φ(z_k).
template <ExactField F>
struct InducedMap {
  int degree = 0;
  Matrix<F> matrix;
  bool is_identity = false;
};

template <ExactField F>
InducedMap<F> induced_map(const KoszulComplex<F>& kc, const Lift<F>& phi, int i) {
  if (phi.ring() != kc.ring()) throw ValidationError("induced_map: lift over a different ring");
  const auto& cl = kc.classes(i);
  std::vector<Vector<F>> cols;
  for (const auto& c : cl) cols.push_back(kc.class_of(i, phi.apply(c.representative)));
  InducedMap<F> out{i, Matrix<F>::from_columns(kc.field(), cl.size(), cols), false};
  out.is_identity = out.matrix.is_identity();
  return out;
}

/// A∘B.
template <ExactField F>
InducedMap<F> compose_induced(const InducedMap<F>& a, const InducedMap<F>& b) {
  if (a.degree != b.degree) throw DimensionMismatch("compose_induced: homological degrees differ");
  InducedMap<F> out{a.degree, a.matrix * b.matrix, false};
  out.is_identity = out.matrix.is_identity();
  return out;
}

/// The degree-one map h with dh + hd = K(φ+δ) − K(φ) for δ(e_i) = ds:
/// h(e_S) = 0 if i ∉ S, else (−1)^(l−1) φ(e_j1)∧…∧s∧…∧φ(e_jm) with s in
/// position l where j_l = i.
template <ExactField F>
class Homotopy {
 public:
  Homotopy(Lift<F> phi, std::size_t index, KoszulElement<F> s)
      : phi_(std::move(phi)), index_(index), s_(std::move(s)) {
    std::vector<KoszulElement<F>> delta(phi_.size(), KoszulElement<F>(phi_.ring()));
    delta[index_] = differential(s_);
    perturbed_ = std::make_unique<Lift<F>>(phi_.perturbed(delta));
  }

  const Lift<F>& base() const noexcept { return phi_; }
  const Lift<F>& perturbed() const noexcept { return *perturbed_; }
  std::size_t index() const noexcept { return index_; }
  const KoszulElement<F>& chain() const noexcept { return s_; }

  KoszulElement<F> on_basis(Subset s) const {
    const auto& ring = phi_.ring();
    const Subset bit = Subset{1} << index_;
    if (!(s & bit)) return KoszulElement<F>(ring);
    KoszulElement<F> out = KoszulElement<F>::basis(ring, 0);
    for (Subset rest = s; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      out = wedge(out, static_cast<std::size_t>(j) == index_ ? s_ : phi_.image(static_cast<std::size_t>(j)));
    }
    return position_sign(s, static_cast<int>(index_)) < 0 ? -out : out;
  }

  KoszulElement<F> apply(const KoszulElement<F>& u) const {
    KoszulElement<F> out(phi_.ring());
    for (const auto& [s, r] : u.coefficients()) out += on_basis(s).times(r);
    return out;
  }

  /// Checks dh(u) + hd(u) = K(φ+δ)(u) − K(φ)(u) on every strand basis
  /// element of internal degree <= the complex's truncation degree. Returns
  /// the number of basis elements checked, or throws on the first failure.
  std::size_t verify(const KoszulComplex<F>& kc) const {
    std::size_t checked = 0;
    for (int i = 0; i <= static_cast<int>(kc.n()); ++i)
      for (long d = 0; d <= kc.truncation_degree(); ++d)
        for (const auto& [s, m] : kc.strand_basis(i, d)) {
          auto u = KoszulElement<F>::monomial(phi_.ring(), s, m, kc.field().one());
          auto lhs = differential(apply(u)) + apply(differential(u));
          auto rhs = perturbed_->apply(u) - phi_.apply(u);
          if (!(lhs == rhs))
            throw Error("homotopy identity fails on " + to_string(u) + ": dh+hd = " + to_string(lhs) +
                        ", K(phi+delta)-K(phi) = " + to_string(rhs));
          ++checked;
        }
    return checked;
  }

 private:
  Lift<F> phi_;
  std::size_t index_;
  KoszulElement<F> s_;
  std::unique_ptr<Lift<F>> perturbed_;
};

/// Builds h for δ(e_i) = ds and verifies the homotopy identity on the
/// whole truncated complex.
template <ExactField F>
Homotopy<F> homotopy_for_boundary_delta(const KoszulComplex<F>& kc, std::size_t i,
                                        const KoszulElement<F>& s, const Lift<F>& phi) {
  if (i >= kc.n()) throw ValidationError("generator index out of range");
  if (!s.in_degree(2)) throw ValidationError("homotopy chain must have homological degree 2");
  Homotopy<F> h(phi, i, s);
  h.verify(kc);
  return h;
}

/// Same, for a given δ(e_i) that must equal ds.
template <ExactField F>
Homotopy<F> homotopy_for_boundary_delta(const KoszulComplex<F>& kc, std::size_t i,
                                        const KoszulElement<F>& s, const Lift<F>& phi,
                                        const KoszulElement<F>& delta_i) {
  if (!(differential(s) == delta_i)) throw ValidationError("delta(e_i) is not the boundary of s");
  return homotopy_for_boundary_delta(kc, i, s, phi);
}

}  // namespace dgk

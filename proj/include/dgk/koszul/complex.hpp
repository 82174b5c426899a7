#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <memory>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgk/koszul/element.hpp"

namespace dgk {

/// Basis element r·e_S of a strand, r a basis monomial of R.
using StrandKey = std::pair<Subset, Monomial>;

struct StrandKeyHash {
  std::size_t operator()(const StrandKey& k) const noexcept {
    return MonomialHash{}(k.second) * 31u + k.first;
  }
};

/// One homological degree of a fine-graded strand: its basis, cycles,
/// boundaries and the chosen homology representatives.
template <ExactField F>
struct StrandLevel {
  std::vector<StrandKey> basis;
  std::vector<Vector<F>> cycles;           // canonical kernel basis of d_i
  std::vector<Vector<F>> boundaries;       // rref basis of im d_{i+1}
  std::vector<Vector<F>> representatives;  // complete boundaries to cycles
  std::optional<SpanReducer<F>> reducer;   // boundaries first, then representatives
  std::size_t first_class = 0;

  std::size_t size() const noexcept { return basis.size(); }
  std::size_t homology_dim() const noexcept { return representatives.size(); }

  std::optional<std::size_t> find(Subset s, const Monomial& m) const {
    if (basis.size() < 24) {
      for (std::size_t p = 0; p < basis.size(); ++p)
        if (basis[p].first == s && basis[p].second == m) return p;
      return std::nullopt;
    }
    std::call_once(*index_once, [&] {
      for (std::size_t p = 0; p < basis.size(); ++p) index.emplace(basis[p], p);
    });
    auto it = index.find(StrandKey{s, m});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  /// Homology coordinates of a cycle vector, nullopt if v is not a cycle.
  std::optional<Vector<F>> homology_coordinates(const Vector<F>& v) const {
    if (!reducer) return Vector<F>{};
    auto c = reducer->coordinates(v);
    if (!c) return std::nullopt;
    return Vector<F>(c->begin() + static_cast<std::ptrdiff_t>(boundaries.size()), c->end());
  }

  mutable std::unordered_map<StrandKey, std::size_t, StrandKeyHash> index;
  std::shared_ptr<std::once_flag> index_once = std::make_shared<std::once_flag>();
};

/// A fine grade (Z^n modulo the grading lattice) inside one internal degree,
/// kept only when some homology group is nonzero there.
template <ExactField F>
struct GradePiece {
  long degree = 0;
  Grade grade;
  std::vector<StrandLevel<F>> levels;  // homological degrees 0..n
};

template <ExactField F>
struct HomologyClass {
  long degree;  // internal degree
  Grade grade;
  KoszulElement<F> representative;
};

/// Ranks of H_i in internal degree i + j, by column i and row j.
struct BettiTable {
  std::map<std::pair<int, long>, std::size_t> entries;  // nonzero only
  std::vector<std::size_t> totals;                      // per column 0..n
  int pdim = 0;
  long regularity = 0;

  std::size_t at(int i, long j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
  std::vector<long> row_labels() const {
    std::vector<long> rows;
    for (const auto& [k, v] : entries) rows.push_back(k.second);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
  }

  /// Macaulay2-style layout; only rows with a nonzero entry are shown and
  /// zeros print as dashes.
  std::string to_text() const {
    std::size_t width = 1;
    for (auto t : totals) width = std::max(width, std::to_string(t).size());
    const auto rows = row_labels();
    std::size_t label = std::string("total").size();
    for (long r : rows) label = std::max(label, std::to_string(r).size());
    std::ostringstream os;
    os << std::string(label + 1, ' ');
    for (int i = 0; i <= pdim; ++i) os << ' ' << std::setw(static_cast<int>(width)) << i;
    os << '\n' << std::setw(static_cast<int>(label)) << "total" << ':';
    for (int i = 0; i <= pdim; ++i) os << ' ' << std::setw(static_cast<int>(width)) << totals[i];
    os << '\n';
    for (long r : rows) {
      os << std::setw(static_cast<int>(label)) << r << ':';
      for (int i = 0; i <= pdim; ++i) {
        const auto v = at(i, r);
        os << ' ' << std::setw(static_cast<int>(width)) << (v ? std::to_string(v) : "-");
      }
      os << '\n';
    }
    return os.str();
  }
};

/// The Koszul complex on the generators of the maximal ideal of a graded
/// ring, with homology computed strand by strand over the fine grading.
///
/// Artinian rings vanish above top_degree + Σw. For semigroup rings every
/// strand of internal degree d >= conductor + Σg is the Koszul complex on
/// units and hence exact; degrees up to that bound plus max(g) are computed
/// and the extra window must come out acyclic.
template <ExactField F>
class KoszulComplex {
 public:
  using Element = KoszulElement<F>;
  struct Options {
    unsigned threads = 1;
  };

  explicit KoszulComplex(RingPtr<F> ring, Options options = {})
      : ring_(std::move(ring)), options_(options), n_(ring_->num_generators()) {
    long wsum = 0;
    for (int w : ring_->weights()) wsum += w;
    if (ring_->is_artinian()) {
      vanishing_ = *ring_->top_degree() + wsum + 1;
      last_degree_ = vanishing_ - 1;
    } else {
      vanishing_ = ring_->conductor() + wsum;
      last_degree_ = vanishing_ + *std::max_element(ring_->weights().begin(), ring_->weights().end());
    }
  }

  KoszulComplex(const KoszulComplex&) = delete;
  KoszulComplex& operator=(const KoszulComplex&) = delete;

  const RingPtr<F>& ring() const noexcept { return ring_; }
  const F& field() const noexcept { return ring_->field(); }
  std::size_t n() const noexcept { return n_; }
  /// Highest internal degree computed.
  long truncation_degree() const noexcept { return last_degree_; }
  /// Homology vanishes in every internal degree >= this bound.
  long vanishing_degree() const noexcept { return vanishing_; }

  long subset_weight(Subset s) const {
    long w = 0;
    for (std::size_t j = 0; s; ++j, s >>= 1)
      if (s & 1u) w += ring_->weight(j);
    return w;
  }

  /// Basis of K_i in internal degree d: subsets ascending, then the ring basis.
  std::vector<StrandKey> strand_basis(int i, long d) const {
    std::vector<StrandKey> out;
    if (i < 0 || i > static_cast<int>(n_)) return out;
    for (Subset s = 0; s < (Subset{1} << n_); ++s) {
      if (subset_size(s) != i) continue;
      const long e = d - subset_weight(s);
      if (e < 0) continue;
      for (const auto& m : ring_->basis_of_degree(e)) out.emplace_back(s, m);
    }
    return out;
  }

  /// Matrix of d_i : K_{i,d} -> K_{i-1,d} in the strand bases.
  Matrix<F> differential_matrix(int i, long d) const {
    auto src = strand_basis(i, d);
    StrandLevel<F> tgt;
    tgt.basis = strand_basis(i - 1, d);
    return build_differential(src, tgt);
  }

  Element element_of(const std::vector<StrandKey>& basis, const Vector<F>& v) const {
    Element u(ring_);
    const auto& ctx = ring_->element_context();
    for (std::size_t p = 0; p < v.size(); ++p)
      if (!field().is_zero(v[p]))
        u.add_term(basis[p].first, Polynomial<F>::monomial(ctx, basis[p].second, v[p]));
    return u;
  }

  std::size_t homology_dim(int i) const {
    ensure();
    return classes_.at(static_cast<std::size_t>(i)).size();
  }
  std::vector<std::size_t> homology_dims() const {
    ensure();
    std::vector<std::size_t> out;
    for (const auto& c : classes_) out.push_back(c.size());
    return out;
  }
  /// Largest i with H_i != 0.
  int top_homological_degree() const {
    ensure();
    int c = 0;
    for (std::size_t i = 0; i <= n_; ++i)
      if (!classes_[i].empty()) c = static_cast<int>(i);
    return c;
  }

  /// Basis of H_i ordered by internal degree, then fine grade, then kernel order.
  const std::vector<HomologyClass<F>>& classes(int i) const {
    ensure();
    check_degree(i);
    return classes_[static_cast<std::size_t>(i)];
  }
  const Element& representative(int i, std::size_t k) const { return classes(i).at(k).representative; }

  Element representative(int i, const Vector<F>& coords) const {
    const auto& cl = classes(i);
    if (coords.size() != cl.size()) throw DimensionMismatch("class vector has wrong length");
    Element u(ring_);
    for (std::size_t k = 0; k < cl.size(); ++k)
      if (!field().is_zero(coords[k])) u += cl[k].representative.scaled(coords[k]);
    return u;
  }

  /// Pieces with nonzero homology, keyed by (internal degree, fine grade).
  const std::map<std::pair<long, Grade>, GradePiece<F>>& pieces() const {
    ensure();
    return pieces_;
  }

  /// Coordinates of [z] in the basis of H_i. z must be a cycle of
  /// homological degree i.
  Vector<F> class_of(int i, const Element& z) const {
    ensure();
    check_degree(i);
    if (z.ring() != ring_) throw ValidationError("class_of: element from a different complex");
    if (!z.in_degree(i))
      throw ValidationError("class_of: element is not in homological degree " + std::to_string(i));
    if (!differential(z).is_zero()) throw ValidationError("class_of: element is not a cycle");
    Vector<F> out(classes_[static_cast<std::size_t>(i)].size(), field().zero());
    std::map<const StrandLevel<F>*, Vector<F>> parts;
    for (const auto& [s, c] : z.coefficients()) {
      const long ws = subset_weight(s);
      for (const auto& t : c.terms()) {
        const long d = ring_->degree(t.monomial) + ws;
        if (d >= vanishing_) continue;  // acyclic strand
        auto it = pieces_.find({d, ring_->grade(t.monomial, s)});
        if (it == pieces_.end()) continue;
        const auto& level = it->second.levels[static_cast<std::size_t>(i)];
        if (level.homology_dim() == 0) continue;
        auto pos = level.find(s, t.monomial);
        if (!pos) throw Error("class_of: term outside its strand basis");
        auto [pit, fresh] = parts.try_emplace(&level, level.size(), field().zero());
        pit->second[*pos] = t.coeff;
      }
    }
    for (const auto& [level, v] : parts) {
      auto h = level->homology_coordinates(v);
      if (!h) throw Error("class_of: strand cycle outside the cycle space");
      for (std::size_t k = 0; k < h->size(); ++k) out[level->first_class + k] = (*h)[k];
    }
    return out;
  }

  bool is_boundary(int i, const Element& z) const { return is_zero_vector(field(), class_of(i, z)); }

  BettiTable betti_table() const {
    ensure();
    BettiTable t;
    t.totals.assign(n_ + 1, 0);
    for (std::size_t i = 0; i <= n_; ++i)
      for (const auto& c : classes_[i]) {
        ++t.entries[{static_cast<int>(i), c.degree - static_cast<long>(i)}];
        ++t.totals[i];
      }
    for (const auto& [k, v] : t.entries) {
      t.pdim = std::max(t.pdim, k.first);
      t.regularity = std::max(t.regularity, k.second);
    }
    return t;
  }

  /// Products of basis classes: table[k][l] = [z_k]·[z_l] in H_{i+j}.
  const std::vector<std::vector<Vector<F>>>& product_table(int i, int j) const {
    ensure();
    check_degree(i);
    check_degree(j);
    if (i + j > static_cast<int>(n_)) throw ValidationError("product lands above the top degree");
    {
      std::lock_guard lock(product_mutex_);
      if (auto it = products_.find({i, j}); it != products_.end()) return it->second;
    }
    const auto& a = classes_[static_cast<std::size_t>(i)];
    const auto& b = classes_[static_cast<std::size_t>(j)];
    std::vector<std::vector<Vector<F>>> table(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t l = 0; l < b.size(); ++l)
        table[k].push_back(class_of(i + j, wedge(a[k].representative, b[l].representative)));
    std::lock_guard lock(product_mutex_);
    return products_.try_emplace({i, j}, std::move(table)).first->second;
  }

  Vector<F> product(int i, const Vector<F>& a, int j, const Vector<F>& b) const {
    const auto& table = product_table(i, j);
    const auto& k = field();
    Vector<F> out(homology_dim(i + j), k.zero());
    if (a.size() != table.size() || b.size() != homology_dim(j))
      throw DimensionMismatch("class vector has wrong length");
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (k.is_zero(a[p])) continue;
      for (std::size_t q = 0; q < b.size(); ++q) {
        if (k.is_zero(b[q])) continue;
        const auto c = k.mul(a[p], b[q]);
        for (std::size_t r = 0; r < out.size(); ++r)
          out[r] = k.add(out[r], k.mul(c, table[p][q][r]));
      }
    }
    return out;
  }

  /// True iff H_i · H_j = 0.
  bool product_vanishing(int i, int j) const {
    if (i + j > static_cast<int>(n_)) return true;
    for (const auto& row : product_table(i, j))
      for (const auto& v : row)
        if (!is_zero_vector(field(), v)) return false;
    return true;
  }

  /// Forces the homology computation (otherwise done on first use).
  void compute() const { ensure(); }

 private:
  void check_degree(int i) const {
    if (i < 0 || i > static_cast<int>(n_))
      throw ValidationError("homological degree " + std::to_string(i) + " out of range");
  }

  Matrix<F> build_differential(const std::vector<StrandKey>& src, const StrandLevel<F>& tgt) const {
    const auto& k = field();
    Matrix<F> m(k, tgt.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& [s, mono] = src[c];
      for (Subset rest = s; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const bool neg = position_sign(s, j) < 0;
        const Subset t = s & ~(Subset{1} << j);
        const auto image = ring_->times_generator(static_cast<std::size_t>(j), mono);
        for (const auto& term : image.terms()) {
          auto r = tgt.find(t, term.monomial);
          if (!r) throw Error("differential leaves its strand");
          m(*r, c) = k.add(m(*r, c), neg ? k.neg(term.coeff) : term.coeff);
        }
      }
    }
    return m;
  }

  // Homology of one fine grade; returns false when it is acyclic.
  bool solve_piece(GradePiece<F>& piece) const {
    const auto& k = field();
    const std::size_t top = n_;
    std::vector<Matrix<F>> diff(top + 2, Matrix<F>(k, 0, 0));
    for (std::size_t i = 1; i <= top; ++i)
      diff[i] = build_differential(piece.levels[i].basis, piece.levels[i - 1]);
    bool nonzero = false;
    for (std::size_t i = 0; i <= top; ++i) {
      auto& level = piece.levels[i];
      const std::size_t dim = level.size();
      if (dim == 0) continue;
      if (i == 0) {
        for (std::size_t p = 0; p < dim; ++p) {
          Vector<F> e(dim, k.zero());
          e[p] = k.one();
          level.cycles.push_back(std::move(e));
        }
      } else {
        level.cycles = kernel_basis(diff[i]);
      }
      if (level.cycles.empty()) continue;
      if (i < top && piece.levels[i + 1].size() > 0) {
        std::vector<Vector<F>> cols;
        const auto& d = diff[i + 1];
        for (std::size_t c = 0; c < d.cols(); ++c) cols.push_back(d.column(c));
        level.boundaries = span_basis(k, cols, dim);
      }
      if (level.boundaries.size() == level.cycles.size()) continue;
      SpanReducer<F> scratch(k, dim);
      for (const auto& b : level.boundaries) scratch.insert(b);
      for (const auto& z : level.cycles)
        if (scratch.insert(z)) level.representatives.push_back(z);
      level.reducer.emplace(k, dim);
      for (const auto& b : level.boundaries) level.reducer->insert(b);
      for (const auto& z : level.representatives) level.reducer->insert(z);
      nonzero = true;
    }
    return nonzero;
  }

  std::vector<GradePiece<F>> solve_degree(long d) const {
    std::map<Grade, GradePiece<F>> groups;
    for (Subset s = 0; s < (Subset{1} << n_); ++s) {
      const long e = d - subset_weight(s);
      if (e < 0) continue;
      for (const auto& m : ring_->basis_of_degree(e)) {
        auto [it, fresh] = groups.try_emplace(ring_->grade(m, s));
        if (fresh) {
          it->second.degree = d;
          it->second.grade = it->first;
          it->second.levels.resize(n_ + 1);
        }
        it->second.levels[static_cast<std::size_t>(subset_size(s))].basis.emplace_back(s, m);
      }
    }
    std::vector<GradePiece<F>> out;
    for (auto& [g, piece] : groups)
      if (solve_piece(piece)) out.push_back(std::move(piece));
    return out;
  }

  void ensure() const {
    std::call_once(computed_, [this] { compute_all(); });
  }

  void compute_all() const {
    const long count = last_degree_ + 1;
    std::vector<std::vector<GradePiece<F>>> results(static_cast<std::size_t>(count));
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options_.threads, static_cast<unsigned>(count)));
    if (workers == 1) {
      for (long d = 0; d < count; ++d) results[static_cast<std::size_t>(d)] = solve_degree(d);
    } else {
      std::atomic<long> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (long d; (d = next++) < count;) {
            try {
              results[static_cast<std::size_t>(d)] = solve_degree(d);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              next = count;
            }
          }
        });
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }
    classes_.assign(n_ + 1, {});
    for (long d = 0; d < count; ++d)
      for (auto& piece : results[static_cast<std::size_t>(d)]) {
        if (d >= vanishing_)
          throw TruncationError("nonzero Koszul homology in internal degree " + std::to_string(d) +
                                ", beyond the vanishing bound " + std::to_string(vanishing_));
        auto key = std::make_pair(d, piece.grade);
        pieces_.emplace(std::move(key), std::move(piece));
      }
    for (auto& [key, piece] : pieces_)
      for (std::size_t i = 0; i <= n_; ++i) {
        auto& level = piece.levels[i];
        level.first_class = classes_[i].size();
        for (const auto& r : level.representatives)
          classes_[i].push_back({piece.degree, piece.grade, element_of(level.basis, r)});
      }
  }

  RingPtr<F> ring_;
  Options options_;
  std::size_t n_;
  long vanishing_ = 0;
  long last_degree_ = 0;

  mutable std::once_flag computed_;
  mutable std::map<std::pair<long, Grade>, GradePiece<F>> pieces_;
  mutable std::vector<std::vector<HomologyClass<F>>> classes_;
  mutable std::mutex product_mutex_;
  mutable std::map<std::pair<int, int>, std::vector<std::vector<Vector<F>>>> products_;
};

/// Degree-one cycles read off the ideal generators: q = Σ a_j x_j with each
/// monomial assigned to its first variable, z = Σ ā_j e_j.
template <ExactField F>
struct H1Relations {
  std::vector<KoszulElement<F>> cycles;
  bool all_cycles = true;
  std::size_t rank = 0;    // dimension of the span of their classes
  std::size_t dim_h1 = 0;  // dim H_1
  bool is_basis() const { return all_cycles && rank == cycles.size() && rank == dim_h1; }
};

template <ExactField F>
H1Relations<F> h1_from_relations(const KoszulComplex<F>& kc) {
  const auto& ring = kc.ring();
  if (!ring->is_artinian())
    throw UnsupportedRing("h1_from_relations needs an explicit presentation by relations");
  const auto& k = ring->field();
  const auto& ctx = ring->element_context();
  H1Relations<F> rep;
  rep.dim_h1 = kc.homology_dim(1);
  std::vector<Vector<F>> classes;
  for (const auto& q : ring->ideal_generators()) {
    KoszulElement<F> z(ring);
    for (const auto& t : q.terms()) {
      std::size_t j = 0;
      while (t.monomial[j] == 0) ++j;
      auto a = ring->canonical(
          Polynomial<F>::monomial(ctx, t.monomial / Monomial::variable(ctx->nvars(), j), t.coeff));
      z.add_term(Subset{1} << j, a);
    }
    if (!differential(z).is_zero()) {
      rep.all_cycles = false;
    } else {
      classes.push_back(kc.class_of(1, z));
    }
    rep.cycles.push_back(std::move(z));
  }
  if (!classes.empty()) rep.rank = span_basis(k, classes, rep.dim_h1).size();
  return rep;
}

}  // namespace dgk

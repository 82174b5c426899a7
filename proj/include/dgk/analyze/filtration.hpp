#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dgk/koszul/complex.hpp"

namespace dgk {

/// Level of the zero class.
inline constexpr int kInfiniteLevel = INT_MAX;

/// The m-adic filtration F^l H_i = ((Z_i ∩ m^(l−i) K_i) + B_i) / B_i,
/// computed piece by piece (it is homogeneous for the fine grading), with a
/// basis of each H_i adapted to the flag.
template <ExactField F>
class HomologyFiltration {
 public:
  explicit HomologyFiltration(const KoszulComplex<F>& kc) : kc_(kc) {
    const std::size_t n = kc.n();
    adapted_.resize(n + 1);
    levels_.resize(n + 1);
    for (const auto& [key, piece] : kc.pieces())
      for (std::size_t i = 0; i <= n; ++i) {
        const auto& level = piece.levels[i];
        if (level.homology_dim() == 0) continue;
        build_piece(piece, static_cast<int>(i), level);
      }
    for (std::size_t i = 0; i <= n; ++i) {
      auto& a = adapted_[i];
      std::vector<std::size_t> order(a.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return a[x].second < a[y].second; });
      std::vector<std::pair<Vector<F>, int>> sorted;
      for (auto k : order) sorted.push_back(std::move(a[k]));
      a = std::move(sorted);
    }
  }

  const KoszulComplex<F>& complex() const noexcept { return kc_; }

  /// Largest l with [c] ∈ F^l H_i; kInfiniteLevel for c = 0.
  int level_of(int i, const Vector<F>& c) const {
    const auto& k = kc_.field();
    int best = kInfiniteLevel;
    for (const auto& pf : levels_.at(static_cast<std::size_t>(i))) {
      Vector<F> part(c.begin() + static_cast<std::ptrdiff_t>(pf.first_class),
                     c.begin() + static_cast<std::ptrdiff_t>(pf.first_class + pf.dim));
      if (is_zero_vector(k, part)) continue;
      int lvl = pf.flag.front().first;
      for (const auto& [l, span] : pf.flag) {
        if (!span.contains(part)) break;
        lvl = l;
      }
      best = std::min(best, lvl);
    }
    return best;
  }

  /// Basis of H_i (global class coordinates) adapted to the flag, sorted by
  /// level; F^l H_i is spanned by the vectors of level >= l.
  const std::vector<std::pair<Vector<F>, int>>& adapted_basis(int i) const {
    return adapted_.at(static_cast<std::size_t>(i));
  }

  /// dim F^l H_i.
  std::size_t dim_at_least(int i, int l) const {
    std::size_t d = 0;
    for (const auto& [v, lvl] : adapted_basis(i))
      if (lvl >= l) ++d;
    return d;
  }

  /// dim gr_l H_i = dim F^l H_i / F^(l+1) H_i, nonzero levels only.
  std::map<int, std::size_t> gr_dims(int i) const {
    std::map<int, std::size_t> out;
    for (const auto& [v, lvl] : adapted_basis(i)) ++out[lvl];
    return out;
  }

  /// Smallest level occurring in H_i, nullopt when H_i = 0.
  std::optional<int> min_level(int i) const {
    const auto& a = adapted_basis(i);
    if (a.empty()) return std::nullopt;
    return a.front().second;
  }

 private:
  struct PieceFlag {
    std::size_t first_class = 0;
    std::size_t dim = 0;
    // (l, span of F^l in local homology coordinates), l increasing, last nonzero
    std::vector<std::pair<int, SpanReducer<F>>> flag;
  };

  void build_piece(const GradePiece<F>& piece, int i, const StrandLevel<F>& level) {
    const auto& k = kc_.field();
    const auto& ring = *kc_.ring();
    const std::size_t h = level.homology_dim();
    PieceFlag pf;
    pf.first_class = level.first_class;
    pf.dim = h;

    // positions of each subset's block in the level basis
    std::map<Subset, std::vector<std::size_t>> blocks;
    for (std::size_t p = 0; p < level.size(); ++p) blocks[level.basis[p].first].push_back(p);

    std::map<int, std::vector<Vector<F>>> by_level;  // F^l in local coordinates
    for (int l = i;; ++l) {
      const int a = l - i;
      std::vector<Vector<F>> power;  // (m^a K_i) slice in level coordinates
      for (const auto& [s, pos] : blocks) {
        const long e = piece.degree - kc_.subset_weight(s);
        std::vector<std::size_t> ring_pos;
        for (auto p : pos) ring_pos.push_back(*ring.index_in_degree(level.basis[p].second));
        for (const auto& v : ring.max_ideal_power_slice(a, e, ring_pos)) {
          Vector<F> w(level.size(), k.zero());
          for (std::size_t q = 0; q < pos.size(); ++q) w[pos[q]] = v[q];
          power.push_back(std::move(w));
        }
      }
      std::vector<Vector<F>> image;
      for (const auto& z : subspace_intersect(k, level.cycles, power)) {
        auto hc = level.homology_coordinates(z);
        if (!hc) throw Error("filtration: intersection left the cycle space");
        image.push_back(std::move(*hc));
      }
      auto span = span_basis(k, image, h);
      if (span.empty()) break;
      SpanReducer<F> red(k, h);
      for (const auto& v : span) red.insert(v);
      pf.flag.emplace_back(l, std::move(red));
      by_level[l] = std::move(span);
    }
    // adapted basis: walk the flag from the top level down
    SpanReducer<F> chosen(k, h);
    for (auto it = by_level.rbegin(); it != by_level.rend(); ++it)
      for (const auto& v : it->second)
        if (chosen.insert(v)) {
          Vector<F> g(kc_.homology_dim(i), k.zero());
          for (std::size_t q = 0; q < h; ++q) g[pf.first_class + q] = v[q];
          adapted_[static_cast<std::size_t>(i)].emplace_back(std::move(g), it->first);
        }
    levels_[static_cast<std::size_t>(i)].push_back(std::move(pf));
  }

  const KoszulComplex<F>& kc_;
  std::vector<std::vector<std::pair<Vector<F>, int>>> adapted_;
  std::vector<std::vector<PieceFlag>> levels_;
};

}  // namespace dgk

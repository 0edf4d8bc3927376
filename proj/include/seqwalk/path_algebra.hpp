#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "seqwalk/linalg.hpp"
#include "seqwalk/quiver.hpp"

namespace seqwalk {

struct AlgebraOptions {
  std::size_t path_cap = 250000;
};

/// Enumerates every path of length <= max_length in the global path order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_length, std::size_t cap) {
  std::vector<Path> out;
  for (std::size_t x = 0; x < q.point_count(); ++x) out.push_back(Path::trivial(static_cast<int>(x)));
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t layer_end = out.size();
    std::vector<Path> next;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int a : q.arrows_from(out[i].target)) {
        Path p = out[i];
        p.arrows.push_back(a);
        p.target = q.arrow(a).target;
        next.push_back(std::move(p));
        if (out.size() + next.size() > cap)
          throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(cap) + " paths below the truncation bound");
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    layer_begin = out.size();
    out.insert(out.end(), std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
  }
  return out;
}

/// Path space of a quiver up to a length bound, with concatenation tables.
class PathTable {
 public:
  PathTable() = default;
  PathTable(const Quiver& q, std::size_t max_length, std::size_t cap)
      : paths_(enumerate_paths(q, max_length, cap)), max_length_(max_length), points_(q.point_count()) {
    for (std::size_t i = 0; i < paths_.size(); ++i) index_.emplace(paths_[i], static_cast<int>(i));
    right_.assign(paths_.size(), std::vector<int>(q.arrow_count(), -1));
    left_.assign(paths_.size(), std::vector<int>(q.arrow_count(), -1));
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Path& p = paths_[i];
      for (int a : q.arrows_from(p.target)) {
        Path e = p;
        e.arrows.push_back(a);
        e.target = q.arrow(a).target;
        if (auto f = find(e)) right_[i][static_cast<std::size_t>(a)] = *f;
      }
      for (int a : q.arrows_into(p.source)) {
        Path e = p;
        e.arrows.insert(e.arrows.begin(), a);
        e.source = q.arrow(a).source;
        if (auto f = find(e)) left_[i][static_cast<std::size_t>(a)] = *f;
      }
    }
    blocks_.assign(points_ * points_, {});
    into_.assign(points_, {});
    from_.assign(points_, {});
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const auto s = static_cast<std::size_t>(paths_[i].source), t = static_cast<std::size_t>(paths_[i].target);
      blocks_[block(paths_[i].source, paths_[i].target)].push_back(static_cast<int>(i));
      into_[t].push_back(static_cast<int>(i));
      from_[s].push_back(static_cast<int>(i));
    }
  }

  std::size_t size() const noexcept { return paths_.size(); }
  std::size_t max_length() const noexcept { return max_length_; }
  const Path& path(int i) const { return paths_.at(static_cast<std::size_t>(i)); }
  std::optional<int> find(const Path& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Index of p * arrow, or -1 when longer than the bound.
  int right(int p, int arrow) const { return right_[static_cast<std::size_t>(p)][static_cast<std::size_t>(arrow)]; }
  int left(int arrow, int p) const { return left_[static_cast<std::size_t>(p)][static_cast<std::size_t>(arrow)]; }
  std::size_t block(int x, int y) const { return static_cast<std::size_t>(x) * points_ + static_cast<std::size_t>(y); }
  const std::vector<int>& paths_between(int x, int y) const { return blocks_[block(x, y)]; }
  /// Paths ending at / starting from a point, in path order.
  const std::vector<int>& paths_into(int x) const { return into_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& paths_from(int x) const { return from_[static_cast<std::size_t>(x)]; }
  /// Number of paths of length <= len (paths are sorted by length).
  int count_up_to(std::size_t len) const {
    int n = 0;
    for (const auto& p : paths_)
      if (p.length() <= len) ++n;
    return n;
  }

  /// Concatenation p * q by index, -1 when too long.
  int concat(int p, int q) const {
    if (path(p).target != path(q).source) return -1;
    int cur = p;
    for (int a : path(q).arrows) {
      cur = right(cur, a);
      if (cur < 0) return -1;
    }
    return cur;
  }

 private:
  std::vector<Path> paths_;
  std::map<Path, int> index_;
  std::vector<std::vector<int>> right_, left_, blocks_, into_, from_;
  std::size_t max_length_ = 0;
  std::size_t points_ = 0;
};

/// kQ/I computed in kQ truncated above the nilpotency bound N. Paths of
/// length <= N are kept; the ideal is stored per (source, target) block in
/// reduced echelon form with the largest path as pivot, and the non-pivot
/// paths form the normal basis of A.
class TruncatedAlgebra {
 public:
  static TruncatedAlgebra build(const BoundQuiver& bq, const AlgebraOptions& opts = {}) {
    bq.validate();
    for (const auto& r : bq.relations) {
      for (const auto& [p, c] : r.terms()) {
        if (p.source != r.source() || p.target != r.target())
          throw Error(ErrorCode::MixedEndpoints, "relation paths are not parallel");
        for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i)
          if (bq.quiver.arrow(p.arrows[i]).target != bq.quiver.arrow(p.arrows[i + 1]).source)
            throw Error(ErrorCode::InvalidWalk, "relation path does not compose");
      }
    }
    TruncatedAlgebra a;
    a.bq_ = bq;
    a.opts_ = opts;
    a.p_ = bq.field_char;
    const auto n = static_cast<std::size_t>(bq.truncation);
    const std::size_t big = n + bq.longest_branch();

    // Admissibility: every length-N path must lie in the ideal computed
    // modulo paths longer than N + longest branch.
    PathTable wide(bq.quiver, big, opts.path_cap);
    std::vector<SparseSpan> wide_ideal = ideal_spans(bq, wide);
    a.admissible_ = true;
    for (std::size_t i = 0; i < wide.size() && a.admissible_; ++i) {
      const Path& p = wide.path(static_cast<int>(i));
      if (p.length() != n) continue;
      if (!wide_ideal[wide.block(p.source, p.target)].contains(SparseVec::unit(static_cast<int>(i), Scalar::one(a.p_))))
        a.admissible_ = false;
    }

    a.table_ = PathTable(bq.quiver, n, opts.path_cap);
    const int keep = a.table_.count_up_to(n);
    a.ideal_.assign(bq.quiver.point_count() * bq.quiver.point_count(), {});
    // Paths <= N form a prefix of the wide order, so projecting is truncation.
    for (std::size_t b = 0; b < wide_ideal.size(); ++b)
      for (const auto& [piv, row] : wide_ideal[b].rows()) a.ideal_[b].insert(row.truncated(keep));

    a.normal_.assign(a.ideal_.size(), {});
    a.in_ideal_.assign(a.table_.size(), false);
    for (std::size_t i = 0; i < a.table_.size(); ++i) {
      const Path& p = a.table_.path(static_cast<int>(i));
      std::size_t b = a.table_.block(p.source, p.target);
      if (!a.ideal_[b].is_pivot(static_cast<int>(i))) a.normal_[b].push_back(static_cast<int>(i));
      a.in_ideal_[i] = a.ideal_[b].contains(SparseVec::unit(static_cast<int>(i), Scalar::one(a.p_)));
    }
    if (a.admissible_) a.compute_top_relations();
    return a;
  }

  bool admissible() const noexcept { return admissible_; }
  void require_admissible() const {
    if (!admissible_) throw Error(ErrorCode::NotAdmissible, "ideal is not admissible at truncation " + std::to_string(bq_.truncation));
  }

  const BoundQuiver& bound_quiver() const noexcept { return bq_; }
  const Quiver& quiver() const noexcept { return bq_.quiver; }
  int truncation() const noexcept { return bq_.truncation; }
  std::uint32_t field() const noexcept { return p_; }
  Scalar one() const { return Scalar::one(p_); }
  const PathTable& paths() const noexcept { return table_; }
  std::size_t point_count() const noexcept { return bq_.quiver.point_count(); }

  /// Normal-basis path indices from x to y.
  const std::vector<int>& normal_basis(int x, int y) const { return normal_[table_.block(x, y)]; }
  std::size_t dimension(int x, int y) const { return normal_basis(x, y).size(); }
  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& b : normal_) d += b.size();
    return d;
  }
  /// Ideal span (paths of length <= N) between x and y.
  const SparseSpan& ideal_span(int x, int y) const { return ideal_[table_.block(x, y)]; }

  /// Path given by index lies in I.
  bool path_in_ideal(int idx) const { return in_ideal_[static_cast<std::size_t>(idx)]; }
  bool path_in_ideal(const Path& p) const {
    if (p.length() > static_cast<std::size_t>(bq_.truncation)) return true;
    auto i = table_.find(p);
    return !i || path_in_ideal(*i);
  }

  /// Coordinates over path indices; terms longer than N are dropped.
  SparseVec to_vector(const LinComb& e) const {
    std::map<int, Scalar> acc;
    for (const auto& [p, c] : e.terms()) {
      if (p.length() > static_cast<std::size_t>(bq_.truncation)) continue;
      auto i = table_.find(p);
      if (!i) throw Error(ErrorCode::InvalidWalk, "path is not in the quiver");
      acc[*i] += c;
    }
    SparseVec v;
    for (const auto& [i, c] : acc) v.push_back(i, c);
    return v;
  }

  LinComb to_lincomb(const SparseVec& v) const {
    LinComb e;
    for (const auto& [i, c] : v) e.add(table_.path(i), c);
    return e;
  }

  /// Normal form of a vector supported on one block.
  SparseVec reduce(const SparseVec& v) const {
    if (v.empty()) return v;
    const Path& p = table_.path(v.leading());
    return ideal_[table_.block(p.source, p.target)].reduce(v);
  }

  SparseVec path_vector(int idx) const { return reduce(SparseVec::unit(idx, one())); }

  /// Product of two elements (each supported on one block).
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const {
    std::map<int, Scalar> acc;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) {
        int k = table_.concat(i, j);
        if (k >= 0) acc[k] += x * y;
      }
    SparseVec v;
    for (const auto& [k, c] : acc) v.push_back(k, c);
    return reduce(v);
  }

  SparseVec multiply_arrow_right(const SparseVec& a, int arrow) const {
    std::map<int, Scalar> acc;
    for (const auto& [i, x] : a) {
      int k = table_.right(i, arrow);
      if (k >= 0) acc[k] += x;
    }
    SparseVec v;
    for (const auto& [k, c] : acc) v.push_back(k, c);
    return reduce(v);
  }

  bool contains(const LinComb& e) const {
    if (e.is_zero()) return true;
    const int s = e.source(), t = e.target();
    for (const auto& [p, c] : e.terms())
      if (p.source != s || p.target != t) throw Error(ErrorCode::EndpointMismatch, "combination is not parallel");
    return ideal_[table_.block(s, t)].contains(to_vector(e));
  }

  /// Top relations: echelon representatives of a complement of
  /// kQ+ I + I kQ+ inside I, ordered by (source, target) then pivot.
  const std::vector<LinComb>& top_relations() const {
    require_admissible();
    return top_;
  }

  /// Number of top relations from x to y.
  std::size_t top_relation_count(int x, int y) const {
    std::size_t n = 0;
    for (const auto& r : top_relations())
      if (r.source() == x && r.target() == y) ++n;
    return n;
  }

  /// Echelon basis of every ideal block, as combinations.
  std::vector<LinComb> ideal_basis() const {
    std::vector<LinComb> out;
    for (const auto& span : ideal_)
      for (const auto& [piv, row] : span.rows()) out.push_back(to_lincomb(row));
    return out;
  }

  /// Opposite algebra, built once on demand.
  const TruncatedAlgebra& opposite() const {
    std::call_once(op_->once, [this] { op_->algebra = std::make_shared<TruncatedAlgebra>(build(bq_.opposite(), opts_)); });
    return *op_->algebra;
  }

 private:
  struct OppositeCache {
    std::once_flag once;
    std::shared_ptr<TruncatedAlgebra> algebra;
  };

  static std::vector<SparseSpan> ideal_spans(const BoundQuiver& bq, const PathTable& t) {
    const std::size_t np = bq.quiver.point_count();
    std::vector<SparseSpan> spans(np * np);
    const std::size_t bound = t.max_length();
    const Scalar one = Scalar::one(bq.field_char);
    for (const auto& g : bq.relations) {
      const std::size_t gmin = g.shortest_branch();
      if (gmin > bound) continue;
      std::vector<std::pair<int, Scalar>> terms;
      for (const auto& [p, c] : g.terms())
        if (auto i = t.find(p)) terms.emplace_back(*i, c * one);
      if (terms.empty()) continue;
      for (int pi : t.paths_into(g.source())) {
        const Path& pre = t.path(pi);
        if (pre.length() + gmin > bound) break;  // sorted by length
        for (int qi : t.paths_from(g.target())) {
          const Path& post = t.path(qi);
          if (pre.length() + gmin + post.length() > bound) break;
          std::map<int, Scalar> acc;
          for (const auto& [ti, c] : terms) {
            int k = t.concat(pi, ti);
            if (k >= 0) k = t.concat(k, qi);
            if (k >= 0) acc[k] += c;
          }
          SparseVec v;
          for (const auto& [k, c] : acc) v.push_back(k, c * one);
          if (!v.empty()) spans[t.block(pre.source, post.target)].insert(v);
        }
      }
    }
    return spans;
  }

  void compute_top_relations() {
    const auto np = static_cast<int>(point_count());
    const Quiver& q = bq_.quiver;
    for (int x = 0; x < np; ++x)
      for (int y = 0; y < np; ++y) {
        const SparseSpan& ideal = ideal_[table_.block(x, y)];
        if (ideal.dim() == 0) continue;
        SparseSpan inner;
        // alpha * r with alpha: x -> x', r in I(x', y)
        for (int a : q.arrows_from(x)) {
          for (const auto& [piv, row] : ideal_[table_.block(q.arrow(a).target, y)].rows()) {
            std::map<int, Scalar> acc;
            for (const auto& [i, c] : row) {
              int k = table_.left(a, i);
              if (k >= 0) acc[k] += c;
            }
            SparseVec v;
            for (const auto& [k, c] : acc) v.push_back(k, c);
            inner.insert(v);
          }
        }
        // r * alpha with r in I(x, y'), alpha: y' -> y
        for (int a : q.arrows_into(y)) {
          for (const auto& [piv, row] : ideal_[table_.block(x, q.arrow(a).source)].rows()) {
            std::map<int, Scalar> acc;
            for (const auto& [i, c] : row) {
              int k = table_.right(i, a);
              if (k >= 0) acc[k] += c;
            }
            SparseVec v;
            for (const auto& [k, c] : acc) v.push_back(k, c);
            inner.insert(v);
          }
        }
        SparseSpan tops;
        for (const auto& [piv, row] : ideal.rows()) {
          SparseVec r = inner.reduce(row);
          if (!r.empty()) tops.insert(r);
        }
        for (const auto& [piv, row] : tops.rows()) top_.push_back(to_lincomb(row));
      }
  }

  BoundQuiver bq_;
  AlgebraOptions opts_;
  std::uint32_t p_ = 0;
  bool admissible_ = false;
  PathTable table_;
  std::vector<SparseSpan> ideal_;
  std::vector<std::vector<int>> normal_;
  std::vector<bool> in_ideal_;
  std::vector<LinComb> top_;
  std::shared_ptr<OppositeCache> op_ = std::make_shared<OppositeCache>();
};

/// True iff no nonempty proper sub-sum of r lies in I.
inline bool is_minimal_relation(const TruncatedAlgebra& a, const LinComb& r, std::size_t max_terms = 16) {
  if (r.term_count() < 2) throw Error(ErrorCode::PreconditionUnmet, "a minimal relation has at least two terms");
  if (r.term_count() > max_terms) throw Error(ErrorCode::TooManyTerms, "relation has too many terms for subset enumeration");
  if (!a.contains(r)) throw Error(ErrorCode::NotInIdeal, "relation does not lie in the ideal");
  std::vector<std::pair<Path, Scalar>> terms(r.terms().begin(), r.terms().end());
  const std::size_t m = terms.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
    LinComb part;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) part.add(terms[i].first, terms[i].second);
    if (a.contains(part)) return false;
  }
  return true;
}

inline bool verify_admissible(const TruncatedAlgebra& a) { return a.admissible(); }

/// Builds with the given truncation, or when `auto_raise` is set starts from
/// longest branch + 2 and raises N until the ideal is admissible or the cap
/// is reached. Returns the (possibly non-admissible) last attempt.
inline TruncatedAlgebra build_auto(BoundQuiver bq, bool auto_raise, int cap = 12, const AlgebraOptions& opts = {}) {
  if (!auto_raise) return TruncatedAlgebra::build(bq, opts);
  bq.truncation = std::max(2, static_cast<int>(bq.longest_branch()) + 2);
  for (;;) {
    TruncatedAlgebra a = TruncatedAlgebra::build(bq, opts);
    if (a.admissible() || bq.truncation >= cap) return a;
    ++bq.truncation;
  }
}

}  // namespace seqwalk

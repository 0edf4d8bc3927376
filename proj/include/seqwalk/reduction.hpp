#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqwalk/detector.hpp"
#include "seqwalk/io.hpp"
#include "seqwalk/path_algebra.hpp"

namespace seqwalk {

/// A subalgebra of an ambient TruncatedAlgebra spanned by the idempotents of
/// some points and a radical part closed under multiplication. Elements are
/// stored as normal-form vectors of the ambient algebra; the ambient algebra
/// must outlive this object.
///
/// The basis is adapted to the radical filtration: an element of degree k
/// lies in rad^k but its class is nonzero in rad^k / rad^{k+1}.
class BasedAlgebra {
 public:
  struct Element {
    int source;  // local point index
    int target;
    int degree;
    SparseVec rep;
  };

  /// Subalgebra generated by e_x (x in pts) and the given radical elements.
  static BasedAlgebra generated(const TruncatedAlgebra& amb, std::vector<int> pts, const std::vector<SparseVec>& gens) {
    if (pts.empty()) throw Error(ErrorCode::EmptyPointSet, "no points retained");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    BasedAlgebra b;
    b.amb_ = &amb;
    b.points_ = pts;
    b.local_.assign(amb.point_count(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) b.local_[static_cast<std::size_t>(pts[i])] = static_cast<int>(i);

    // R1: closure of the generators under right multiplication.
    std::vector<SparseSpan> r1(b.block_count());
    std::vector<SparseVec> queue, clean_gens;
    for (const auto& g : gens) {
      SparseVec v = amb.reduce(g);
      if (v.empty()) continue;
      auto blk = b.block_of(v);
      if (!blk) throw Error(ErrorCode::PreconditionUnmet, "generator outside the retained points");
      if (r1[*blk].insert(v)) {
        queue.push_back(v);
        clean_gens.push_back(v);
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : clean_gens) {
        SparseVec p = b.ambient_product(queue[i], g);
        if (p.empty()) continue;
        if (r1[*b.block_of(p)].insert(p)) queue.push_back(p);
      }
    b.build_filtration(std::move(r1));
    return b;
  }

  const TruncatedAlgebra& ambient() const { return *amb_; }
  const std::vector<int>& points() const noexcept { return points_; }
  std::size_t point_count() const noexcept { return points_.size(); }
  std::optional<int> local(int ambient_point) const {
    int l = local_[static_cast<std::size_t>(ambient_point)];
    return l < 0 ? std::nullopt : std::optional<int>(l);
  }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Element>& basis() const noexcept { return basis_; }
  /// Smallest L with rad^L = 0.
  int loewy_length() const noexcept { return static_cast<int>(rad_.size()) + 1; }

  /// Span of rad^k in the block (local x, local y); k >= 1.
  const SparseSpan& radical_power(int k, int x, int y) const {
    static const SparseSpan empty;
    if (k < 1 || k > static_cast<int>(rad_.size())) return empty;
    return rad_[static_cast<std::size_t>(k - 1)][block(x, y)];
  }
  std::size_t radical_dimension(int k) const {
    std::size_t d = 0;
    for (std::size_t x = 0; x < points_.size(); ++x)
      for (std::size_t y = 0; y < points_.size(); ++y) d += radical_power(k, static_cast<int>(x), static_cast<int>(y)).dim();
    return d;
  }

  /// Coordinates of an ambient vector over the basis, or nullopt if outside.
  std::optional<SparseVec> try_coordinates(const SparseVec& v) const {
    auto r = coords_.reduce(amb_->reduce(v));
    if (!r.remainder.empty()) return std::nullopt;
    return r.combination;
  }
  SparseVec coordinates(const SparseVec& v) const {
    auto c = try_coordinates(v);
    if (!c) throw Error(ErrorCode::InternalInconsistency, "element outside the subalgebra");
    return *c;
  }
  bool contains(const SparseVec& v) const { return try_coordinates(v).has_value(); }

  /// Structure constants: b_i * b_j in basis coordinates.
  SparseVec product(std::size_t i, std::size_t j) const { return coordinates(ambient_product(basis_[i].rep, basis_[j].rep)); }

  /// Product in the ambient algebra of two block-homogeneous elements.
  SparseVec ambient_product(const SparseVec& a, const SparseVec& b) const {
    if (a.empty() || b.empty()) return {};
    const auto& t = amb_->paths();
    if (t.path(a.leading()).target != t.path(b.leading()).source) return {};
    return amb_->multiply(a, b);
  }

  /// Radical basis elements (degree >= 1) as ambient vectors.
  std::vector<SparseVec> radical_reps() const {
    std::vector<SparseVec> out;
    for (const auto& e : basis_)
      if (e.degree > 0) out.push_back(e.rep);
    return out;
  }

  std::optional<std::size_t> block_of(const SparseVec& v) const {
    const Path& p = amb_->paths().path(v.leading());
    int x = local_[static_cast<std::size_t>(p.source)], y = local_[static_cast<std::size_t>(p.target)];
    if (x < 0 || y < 0) return std::nullopt;
    return block(x, y);
  }

 private:
  std::size_t block_count() const { return points_.size() * points_.size(); }
  std::size_t block(int x, int y) const { return static_cast<std::size_t>(x) * points_.size() + static_cast<std::size_t>(y); }

  void build_filtration(std::vector<SparseSpan> r1) {
    rad_.clear();
    std::vector<SparseSpan> cur = std::move(r1);
    auto total = [](const std::vector<SparseSpan>& s) {
      std::size_t d = 0;
      for (const auto& x : s) d += x.dim();
      return d;
    };
    std::vector<SparseVec> r1_rows;
    for (const auto& s : cur)
      for (const auto& [p, row] : s.rows()) r1_rows.push_back(row);
    while (total(cur) > 0) {
      rad_.push_back(cur);
      std::vector<SparseSpan> next(block_count());
      for (const auto& s : cur)
        for (const auto& [p, row] : s.rows())
          for (const auto& g : r1_rows) {
            SparseVec prod = ambient_product(row, g);
            if (!prod.empty()) next[*block_of(prod)].insert(prod);
          }
      cur = std::move(next);
    }

    basis_.clear();
    const auto& t = amb_->paths();
    for (std::size_t x = 0; x < points_.size(); ++x) {
      auto idx = t.find(Path::trivial(points_[x]));
      basis_.push_back({static_cast<int>(x), static_cast<int>(x), 0, amb_->path_vector(*idx)});
    }
    const int top = static_cast<int>(rad_.size());
    for (std::size_t x = 0; x < points_.size(); ++x)
      for (std::size_t y = 0; y < points_.size(); ++y)
        for (int k = top; k >= 1; --k) {
          SparseSpan acc = radical_power(k + 1, static_cast<int>(x), static_cast<int>(y));
          for (const auto& [p, row] : radical_power(k, static_cast<int>(x), static_cast<int>(y)).rows())
            if (acc.insert(row)) basis_.push_back({static_cast<int>(x), static_cast<int>(y), k, row});
        }
    coords_ = TrackedSpan();
    for (const auto& e : basis_)
      if (coords_.insert(e.rep)) throw Error(ErrorCode::InternalInconsistency, "dependent basis in based algebra");
  }

  const TruncatedAlgebra* amb_ = nullptr;
  std::vector<int> points_;
  std::vector<int> local_;
  std::vector<std::vector<SparseSpan>> rad_;  // rad_[k-1][block] spans rad^k
  std::vector<Element> basis_;
  TrackedSpan coords_;
};

/// e A e for e the sum of the idempotents of pts.
inline BasedAlgebra full_subcategory(const TruncatedAlgebra& a, const std::vector<int>& pts) {
  a.require_admissible();
  if (pts.empty()) throw Error(ErrorCode::EmptyPointSet, "empty point set");
  std::vector<SparseVec> gens;
  for (int x : pts)
    for (int y : pts)
      for (int idx : a.normal_basis(x, y))
        if (a.paths().path(idx).length() > 0) gens.push_back(a.path_vector(idx));
  return BasedAlgebra::generated(a, pts, gens);
}

/// Gabriel quiver of a based algebra with a chosen representative per arrow.
struct GabrielQuiver {
  Quiver quiver;
  std::vector<SparseVec> reps;  // ambient vectors, one per arrow
};

namespace detail {

inline std::string rep_name(const TruncatedAlgebra& amb, const SparseVec& rep, std::size_t fallback) {
  if (rep.size() == 1) {
    const Path& p = amb.paths().path(rep.leading());
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? "_" : "") + amb.quiver().arrow(p.arrows[i]).name;
    return s;
  }
  return "g" + std::to_string(fallback);
}

}  // namespace detail

/// Arrows: a basis of rad/rad^2 per (x, y). `seated` residues are placed
/// first (a residue proportional to an earlier one reuses its arrow); the
/// echelon rows of rad fill the rest. `seat_arrow[i]` receives the arrow of
/// seated[i], or nullopt when it vanishes or is dependent.
inline GabrielQuiver quiver_of(const BasedAlgebra& b, const std::vector<SparseVec>& seated = {},
                               std::vector<std::optional<int>>* seat_arrow = nullptr) {
  const TruncatedAlgebra& amb = b.ambient();
  std::vector<std::string> names;
  for (int p : b.points()) names.push_back(amb.quiver().point_name(p));
  std::vector<Arrow> arrows;
  GabrielQuiver g;
  if (seat_arrow) seat_arrow->assign(seated.size(), std::nullopt);
  std::set<std::string> used;
  auto add_arrow = [&](int x, int y, const SparseVec& rep) {
    std::string name = detail::rep_name(amb, rep, arrows.size() + 1);
    std::string base = name;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    arrows.push_back({name, x, y});
    g.reps.push_back(rep);
    return static_cast<int>(arrows.size()) - 1;
  };
  for (std::size_t x = 0; x < b.point_count(); ++x)
    for (std::size_t y = 0; y < b.point_count(); ++y) {
      const int lx = static_cast<int>(x), ly = static_cast<int>(y);
      SparseSpan acc = b.radical_power(2, lx, ly);
      std::vector<int> block_arrows;
      for (std::size_t i = 0; i < seated.size(); ++i) {
        SparseVec v = amb.reduce(seated[i]);
        if (v.empty()) continue;
        auto blk = b.block_of(v);
        const Path& p = amb.paths().path(v.leading());
        if (!blk || b.local(p.source) != lx || b.local(p.target) != ly) continue;
        if (acc.insert(v)) {
          int a = add_arrow(lx, ly, v);
          block_arrows.push_back(a);
          if (seat_arrow) (*seat_arrow)[i] = a;
          continue;
        }
        // dependent: reuse an arrow whose residue is proportional
        for (int a : block_arrows) {
          SparseSpan one = b.radical_power(2, lx, ly);
          one.insert(g.reps[static_cast<std::size_t>(a)]);
          if (one.contains(v) && !b.radical_power(2, lx, ly).contains(v)) {
            if (seat_arrow) (*seat_arrow)[i] = a;
            break;
          }
        }
      }
      for (const auto& [piv, row] : b.radical_power(1, lx, ly).rows())
        if (acc.insert(row)) add_arrow(lx, ly, row);
    }
  g.quiver = Quiver(names, arrows);
  return g;
}

/// Whenever one branch of the relation meets S, every branch does.
inline bool is_consistent_cut(const LinComb& relation, const std::set<int>& s) {
  bool any = false, all = true;
  for (const auto& b : relation.branches()) {
    bool hit = std::any_of(b.arrows.begin(), b.arrows.end(), [&](int a) { return s.count(a) != 0; });
    any = any || hit;
    all = all && hit;
  }
  return !any || all;
}

struct CutResult {
  BasedAlgebra algebra;       // complement subalgebra, isomorphic to b / E
  std::size_t ideal_dim = 0;  // dim E
};

/// Cuts the arrows S of quiver_of(b): E is the ideal generated by their
/// representatives, the result is the subalgebra generated by the other
/// arrows. Verifies b = C ⊕ E as vector spaces (a split extension).
inline CutResult cut_arrows(const BasedAlgebra& b, const GabrielQuiver& g, const std::set<int>& s) {
  std::vector<SparseVec> keep;
  for (std::size_t a = 0; a < g.reps.size(); ++a)
    if (!s.count(static_cast<int>(a))) keep.push_back(g.reps[a]);
  CutResult out{BasedAlgebra::generated(b.ambient(), b.points(), keep), 0};

  // Two-sided ideal generated by the cut arrows.
  std::map<std::size_t, SparseSpan> ideal;
  std::vector<SparseVec> queue;
  auto push = [&](const SparseVec& v) {
    if (v.empty()) return;
    if (ideal[*b.block_of(v)].insert(v)) queue.push_back(v);
  };
  for (int a : s) push(b.ambient().reduce(g.reps[static_cast<std::size_t>(a)]));
  auto rad = b.radical_reps();
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& r : rad) {
      push(b.ambient_product(queue[i], r));
      push(b.ambient_product(r, queue[i]));
    }
  std::size_t edim = 0;
  for (const auto& [k, span] : ideal) edim += span.dim();
  out.ideal_dim = edim;

  SparseSpan all;
  for (const auto& e : out.algebra.basis()) all.insert(e.rep);
  for (const auto& [k, span] : ideal)
    for (const auto& [p, row] : span.rows()) all.insert(row);
  if (out.algebra.dimension() + edim != b.dimension() || all.dim() != b.dimension())
    throw Error(ErrorCode::CutNotConsistent, "complement of the cut is not a subalgebra splitting the ideal");
  return out;
}

struct Presentation {
  BoundQuiver bound_quiver;
  GabrielQuiver gabriel;
};

/// Bound quiver presenting b: the Gabriel quiver with the top relations of
/// the kernel of the evaluation map on paths up to the Loewy length.
inline Presentation present_as_bound_quiver(const BasedAlgebra& b, const std::vector<SparseVec>& seated = {},
                                            std::vector<std::optional<int>>* seat_arrow = nullptr,
                                            const std::string& name = "B") {
  const TruncatedAlgebra& amb = b.ambient();
  Presentation pres;
  pres.gabriel = quiver_of(b, seated, seat_arrow);
  const Quiver& q = pres.gabriel.quiver;
  const int L = std::max(1, b.loewy_length());
  auto paths = enumerate_paths(q, static_cast<std::size_t>(L), 250000);

  std::map<std::pair<int, int>, std::pair<TrackedSpan, std::vector<Path>>> blocks;
  std::vector<LinComb> kernel;
  for (const Path& p : paths) {
    if (p.length() == 0) continue;
    SparseVec v = pres.gabriel.reps[static_cast<std::size_t>(p.arrows[0])];
    for (std::size_t i = 1; i < p.length() && !v.empty(); ++i) v = b.ambient_product(v, pres.gabriel.reps[static_cast<std::size_t>(p.arrows[i])]);
    auto& [span, gens] = blocks[{p.source, p.target}];
    gens.push_back(p);
    auto dep = span.insert(v);
    if (!dep) continue;
    LinComb rel(p, amb.one());
    for (const auto& [i, c] : *dep) rel.add(gens[static_cast<std::size_t>(i)], -c);
    if (rel.shortest_branch() < 2) throw Error(ErrorCode::InternalInconsistency, "arrow representatives are dependent");
    kernel.push_back(rel);
  }

  BoundQuiver bq{name, q, kernel, L + 1, amb.field()};
  TruncatedAlgebra t = TruncatedAlgebra::build(bq);
  if (!t.admissible() || t.dimension() != b.dimension())
    throw Error(ErrorCode::InternalInconsistency, "presentation does not reproduce the algebra dimension");
  bq.relations = t.top_relations();
  pres.bound_quiver = bq;
  return pres;
}

/// Result of the two-step standard reduction attached to a sequential walk.
struct StandardReduction {
  std::vector<int> points;          // retained ambient points
  BasedAlgebra eae;
  GabrielQuiver eae_quiver;
  Walk w2_eae;                      // w'' in the quiver of eAe
  std::set<int> cut;                // S, arrows of eae_quiver
  BasedAlgebra reduced;             // B, as the complement subalgebra
  std::size_t ideal_dim = 0;
  Presentation presented;           // B as a bound quiver
  Walk w2;                          // w'' in the presented quiver of B
  bool postcondition = false;       // arrows of B between points of w'' are letters of w'' or branch arrows
};

namespace detail {

/// Pieces of w between consecutive visits to retained points, each a
/// directed stretch: (start offset, length).
inline std::vector<std::pair<std::size_t, std::size_t>> segments(const Quiver& q, const Walk& w, const std::set<int>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto pts = w.points(q);
  std::size_t last = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (keep.count(pts[i])) {
      out.emplace_back(last, i - last);
      last = i;
    }
  return out;
}

}  // namespace detail

namespace detail {

inline bool residue_vanishes(const BasedAlgebra& b, const SparseVec& v) {
  SparseVec r = b.ambient().reduce(v);
  if (r.empty()) return true;
  const Path& p = b.ambient().paths().path(r.leading());
  auto x = b.local(p.source), y = b.local(p.target);
  return x && y && b.radical_power(2, *x, *y).contains(r);
}

}  // namespace detail

inline StandardReduction standard_reduction(const TruncatedAlgebra& a, const SequentialWalkCertificate& cert) {
  const Quiver& q = a.quiver();
  std::set<int> keep{cert.rho.source(), cert.rho.target(), cert.sigma.source(), cert.sigma.target()};
  for (const LinComb* r : {&cert.rho, &cert.sigma})
    for (const auto& b : r->branches()) keep.insert(q.arrow(b.arrows.front()).target);
  const Walk& wp = cert.w_prime;
  auto wpts = wp.points(q);
  keep.insert(wpts.front());
  keep.insert(wpts.back());
  for (auto [from, len] : directed_runs(wp)) {
    keep.insert(wpts[from]);
    keep.insert(wpts[from + len]);
  }

  StandardReduction red;
  red.points.assign(keep.begin(), keep.end());
  red.eae = full_subcategory(a, red.points);
  const BasedAlgebra& e = red.eae;

  // Residues of the w' segments, then of the branch segments.
  std::vector<SparseVec> seated;
  std::vector<int> seg_sign;
  auto segs = detail::segments(q, wp, keep);
  for (auto [from, len] : segs) {
    Path p = run_path(q, wp, from, len);
    seated.push_back(a.path_vector(*a.paths().find(p)));
    seg_sign.push_back(wp.letters()[from].sign);
  }
  const std::size_t w_count = seated.size();
  for (const LinComb* r : {&cert.rho, &cert.sigma})
    for (const auto& b : r->branches()) {
      Walk bw = Walk::from_path(q, b);
      for (auto [from, len] : detail::segments(q, bw, keep)) {
        Path p = run_path(q, bw, from, len);
        auto idx = a.paths().find(p);
        if (idx) seated.push_back(a.path_vector(*idx));
      }
    }

  std::vector<std::optional<int>> seat_arrow;
  red.eae_quiver = quiver_of(e, seated, &seat_arrow);
  const Quiver& eq = red.eae_quiver.quiver;

  std::vector<Letter> w2;
  std::set<int> w2_arrows, branch_arrows;
  for (std::size_t i = 0; i < w_count; ++i) {
    if (!seat_arrow[i]) {
      bool zero = detail::residue_vanishes(e, seated[i]);
      throw Error(ErrorCode::SegmentResidueZero, zero ? "a segment of w' vanishes in rad/rad^2 of eAe"
                                                      : "segment residues of w' are dependent in rad/rad^2 of eAe");
    }
    w2.push_back({*seat_arrow[i], seg_sign[i]});
    w2_arrows.insert(*seat_arrow[i]);
  }
  for (std::size_t i = w_count; i < seated.size(); ++i)
    if (seat_arrow[i]) branch_arrows.insert(*seat_arrow[i]);
  red.w2_eae = w2.empty() ? Walk::trivial(*e.local(wp.start())) : Walk::make(eq, w2);
  if (!is_reduced(red.w2_eae)) throw Error(ErrorCode::SegmentResidueZero, "w'' is not reduced");

  std::set<int> w2_points;
  for (int x : red.w2_eae.points(eq)) w2_points.insert(x);
  for (std::size_t ai = 0; ai < eq.arrow_count(); ++ai) {
    const Arrow& ar = eq.arrow(static_cast<int>(ai));
    const int aid = static_cast<int>(ai);
    if (w2_points.count(ar.source) && w2_points.count(ar.target) && !w2_arrows.count(aid) && !branch_arrows.count(aid))
      red.cut.insert(aid);
  }

  auto cut = cut_arrows(e, red.eae_quiver, red.cut);
  red.reduced = std::move(cut.algebra);
  red.ideal_dim = cut.ideal_dim;

  // Present B with the w'' representatives seated first so they stay arrows.
  std::vector<SparseVec> b_seated;
  for (const auto& l : w2) b_seated.push_back(red.eae_quiver.reps[static_cast<std::size_t>(l.arrow)]);
  for (int a : branch_arrows) b_seated.push_back(red.eae_quiver.reps[static_cast<std::size_t>(a)]);
  std::vector<std::optional<int>> b_arrow;
  red.presented = present_as_bound_quiver(red.reduced, b_seated, &b_arrow, a.bound_quiver().name + "_reduced");
  const Quiver& bq = red.presented.bound_quiver.quiver;

  std::vector<Letter> w2b;
  for (std::size_t i = 0; i < w2.size(); ++i) {
    if (!b_arrow[i]) throw Error(ErrorCode::InternalInconsistency, "w'' arrow lost in the cut");
    w2b.push_back({*b_arrow[i], w2[i].sign});
  }
  red.w2 = w2b.empty() ? Walk::trivial(red.w2_eae.start()) : Walk::make(bq, w2b);

  std::set<int> allowed;
  for (const auto& o : b_arrow)
    if (o) allowed.insert(*o);
  std::set<int> w2b_points;
  for (int x : red.w2.points(bq)) w2b_points.insert(x);
  red.postcondition = true;
  for (std::size_t ai = 0; ai < bq.arrow_count(); ++ai) {
    const Arrow& ar = bq.arrow(static_cast<int>(ai));
    if (w2b_points.count(ar.source) && w2b_points.count(ar.target) && !allowed.count(static_cast<int>(ai))) red.postcondition = false;
  }
  return red;
}

}  // namespace seqwalk

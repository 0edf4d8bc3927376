#pragma once

// Seeded random families of bound quivers for the property suites.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "seqwalk/seqwalk.hpp"

namespace gen {

using namespace seqwalk;

inline std::string data(const std::string& f) { return std::string(SEQWALK_DATA) + "/" + f; }

inline TruncatedAlgebra load(const std::string& f) { return build_auto(read_bound_quiver(data(f)).quiver, true); }

inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> files = {
      "kronecker_chain_comm.bq", "kronecker_chain_mono.bq", "remark3_pair.bq", "a4_overlap.bq",  "seven_vertex.bq",
      "tree_example.bq",         "gentle_kronecker.bq",     "band_quiver.bq",  "nakayama_a5.bq", "two_cycle.bq"};
  return files;
}

inline std::vector<std::string> point_names(int n) {
  std::vector<std::string> p;
  for (int i = 1; i <= n; ++i) p.push_back(std::to_string(i));
  return p;
}

/// Random directed path of length `len` (fewer if stuck), starting anywhere.
inline std::optional<Path> random_path(const Quiver& q, std::mt19937& rng, int len) {
  if (q.arrow_count() == 0) return std::nullopt;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(q.arrow_count()) - 1);
  std::vector<int> arrows{pick(rng)};
  while (static_cast<int>(arrows.size()) < len) {
    auto next = q.arrows_from(q.arrow(arrows.back()).target);
    if (next.empty()) break;
    std::uniform_int_distribution<std::size_t> k(0, next.size() - 1);
    arrows.push_back(next[k(rng)]);
  }
  if (arrows.size() < 2) return std::nullopt;
  return Path::from_arrows(q, arrows);
}

/// Monomial ideals only: the smallest N such that every path of length N
/// contains a relation, if it is at most `cap`.
inline std::optional<int> monomial_nilpotency(const BoundQuiver& bq, int cap) {
  const Quiver& q = bq.quiver;
  std::vector<std::vector<int>> rels;
  for (const auto& r : bq.relations) rels.push_back(r.terms().begin()->first.arrows);
  auto ends_with_relation = [&](const std::vector<int>& p) {
    for (const auto& r : rels)
      if (r.size() <= p.size() && std::equal(r.rbegin(), r.rend(), p.rbegin())) return true;
    return false;
  };
  int longest = 0;
  std::vector<std::vector<int>> layer;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) layer.push_back({static_cast<int>(a)});
  while (!layer.empty()) {
    longest = static_cast<int>(layer.front().size());
    if (longest >= cap) return std::nullopt;
    std::vector<std::vector<int>> next;
    for (const auto& p : layer)
      for (int b : q.arrows_from(q.arrow(p.back()).target)) {
        auto e = p;
        e.push_back(b);
        if (!ends_with_relation(e)) next.push_back(std::move(e));
      }
    layer = std::move(next);
  }
  return longest + 1;
}

inline std::size_t path_count(const Quiver& q, int max_len) {
  std::vector<std::size_t> ending(q.point_count(), 1);
  std::size_t total = q.point_count();
  for (int l = 1; l <= max_len; ++l) {
    std::vector<std::size_t> next(q.point_count(), 0);
    for (const auto& a : q.arrows()) next[static_cast<std::size_t>(a.target)] += ending[static_cast<std::size_t>(a.source)];
    ending = next;
    for (auto c : ending) total += c;
    if (total > 1000000) break;
  }
  return total;
}

inline std::optional<TruncatedAlgebra> build_monomial(BoundQuiver bq, int cap, std::size_t max_paths = 20000) {
  auto nil = monomial_nilpotency(bq, cap);
  if (!nil) return std::nullopt;
  bq.truncation = std::max(*nil, static_cast<int>(bq.longest_branch()) + 1);
  if (path_count(bq.quiver, bq.truncation + static_cast<int>(bq.longest_branch())) > max_paths) return std::nullopt;
  TruncatedAlgebra a = TruncatedAlgebra::build(bq);
  if (!a.admissible()) throw Error(ErrorCode::InternalInconsistency, "generator: nilpotency bound not admissible");
  return a;
}

/// Monomial algebra: up to `max_points` points, up to `max_arrows` arrows,
/// relations among random paths of length 2 or 3. Loops and cycles allowed
/// as long as every path of length 6 contains a relation; quivers whose path
/// table would exceed 20000 entries are skipped.
inline std::vector<TruncatedAlgebra> random_monomial(std::uint32_t seed, int count, int max_points = 6, int max_arrows = 8) {
  std::mt19937 rng(seed);
  std::vector<TruncatedAlgebra> out;
  while (static_cast<int>(out.size()) < count) {
    int n = std::uniform_int_distribution<int>(2, max_points)(rng);
    int m = std::uniform_int_distribution<int>(1, max_arrows)(rng);
    std::vector<Arrow> arrows;
    std::uniform_int_distribution<int> pt(0, n - 1);
    for (int i = 0; i < m; ++i) arrows.push_back({"x" + std::to_string(i + 1), pt(rng), pt(rng)});
    Quiver q(point_names(n), arrows);
    BoundQuiver bq{"random", q, {}, 2, 0};
    int r = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < r; ++i)
      if (auto p = random_path(q, rng, std::uniform_int_distribution<int>(2, 3)(rng))) {
        bool dup = false;
        for (const auto& e : bq.relations) dup = dup || e.terms().begin()->first == *p;
        if (!dup) bq.relations.emplace_back(*p);
      }
    if (auto a = build_monomial(bq, 6)) out.push_back(std::move(*a));
  }
  return out;
}

/// Nakayama algebras (linear or cyclic quiver) with monomial relations and
/// global dimension two.
inline std::vector<TruncatedAlgebra> random_nakayama_gldim2(std::uint32_t seed, int count) {
  std::mt19937 rng(seed);
  std::vector<TruncatedAlgebra> out;
  while (static_cast<int>(out.size()) < count) {
    bool cyclic = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
    int n = cyclic ? std::uniform_int_distribution<int>(2, 5)(rng) : std::uniform_int_distribution<int>(3, 8)(rng);
    std::vector<Arrow> arrows;
    int m = cyclic ? n : n - 1;
    for (int i = 0; i < m; ++i) arrows.push_back({"x" + std::to_string(i + 1), i, (i + 1) % n});
    Quiver q(point_names(n), arrows);
    BoundQuiver bq{"nakayama", q, {}, 2, 0};
    int r = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < r; ++i) {
      int start = std::uniform_int_distribution<int>(0, m - 1)(rng);
      int len = std::uniform_int_distribution<int>(2, cyclic ? n + 1 : 4)(rng);
      std::vector<int> as;
      for (int k = 0; k < len; ++k) {
        int a = start + k;
        if (!cyclic && a >= m) break;
        as.push_back(a % m);
      }
      if (as.size() < 2) continue;
      bq.relations.emplace_back(Path::from_arrows(q, as));
    }
    auto a = build_monomial(bq, 10);
    if (!a) continue;
    auto gd = global_dimension(*a);
    if (gd && *gd == 2) out.push_back(std::move(*a));
  }
  return out;
}

/// Tree quivers built from 2 or 3 directed segments of length 2 or 3, each
/// carrying a monomial relation, joined by short chains of random
/// orientation plus a few leaves; kept when the global dimension is two.
inline std::vector<TruncatedAlgebra> random_tree_gldim2(std::uint32_t seed, int count) {
  std::mt19937 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<TruncatedAlgebra> out;
  while (static_cast<int>(out.size()) < count) {
    int n = 0;
    std::vector<Arrow> arrows;
    std::vector<std::vector<int>> rels;
    auto arrow = [&](int s, int t) {
      arrows.push_back({"x" + std::to_string(arrows.size() + 1), s, t});
      return static_cast<int>(arrows.size()) - 1;
    };
    int blocks = uni(2, 3);
    for (int bi = 0; bi < blocks; ++bi) {
      int attach = n > 0 ? uni(0, n - 1) : -1;
      int len = uni(2, 3);
      int first = n;
      n += len + 1;
      std::vector<int> seg;
      for (int k = 0; k < len; ++k) seg.push_back(arrow(first + k, first + k + 1));
      int rl = uni(2, len);
      int off = uni(0, len - rl);
      rels.emplace_back(seg.begin() + off, seg.begin() + off + rl);
      if (attach >= 0) {
        int chain = uni(1, 2), prev = attach;
        for (int k = 0; k < chain; ++k) {
          int next = k + 1 == chain ? first + uni(0, len) : n++;
          if (uni(0, 1)) arrow(prev, next); else arrow(next, prev);
          prev = next;
        }
      }
    }
    for (int leaves = uni(0, 2); leaves > 0; --leaves) {
      int at = uni(0, n - 1);
      if (uni(0, 1)) arrow(at, n); else arrow(n, at);
      ++n;
    }
    Quiver q(point_names(n), arrows);
    BoundQuiver bq{"tree", q, {}, 2, 0};
    for (const auto& r : rels) bq.relations.emplace_back(Path::from_arrows(q, r));
    auto a = build_monomial(bq, 12, 50000);
    if (!a) continue;
    auto gd = global_dimension(*a);
    if (gd && *gd == 2) out.push_back(std::move(*a));
  }
  return out;
}

/// Interval modules of a Nakayama algebra: string modules of the nonzero
/// directed paths, trivial ones included.
inline std::vector<Representation> interval_modules(const TruncatedAlgebra& a) {
  std::vector<Representation> out;
  const auto& t = a.paths();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Path& p = t.path(static_cast<int>(i));
    if (a.path_in_ideal(p)) continue;
    Walk w = p.is_trivial() ? Walk::trivial(p.source) : Walk::from_path(a.quiver(), p);
    out.push_back(string_module(a, w));
  }
  return out;
}

}  // namespace gen

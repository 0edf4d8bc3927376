#pragma once

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "seqwalk/path_algebra.hpp"

namespace seqwalk {

enum class Orientation { Forward, Inverse };

inline const char* to_string(Orientation o) { return o == Orientation::Forward ? "forward" : "inverse"; }

/// How condition (b2) decides that a relation "touches" u_i or v_j.
enum class B2Reading {
  /// p is a subpath of a branch of a relation tau and some branch of tau
  /// passes through an interior point of some u_i or v_j.
  TouchingRelation,
  /// A subpath p of w' is rejected when p is a contiguous subpath of a
  /// branch of a relation and p itself passes through an interior point of
  /// some u_i or v_j.
  SubpathPoints,
  /// Literal wording: p is a subpath of a branch of a relation tau and some
  /// branch of tau passes through a point of a u_i or v_j other than the
  /// endpoints of rho and sigma.
  RelationBranchPoints,
};

struct DetectorConfig {
  int max_walk_len = 8;
  int max_band_len = 8;
  B2Reading b2 = B2Reading::SubpathPoints;
  bool strict_relations = false;  // quantify (b2) over an ideal basis, not only top relations
  bool seam_clause = true;         // see detail::seams_avoid_ideal
  int threads = 1;
};

inline int default_max_walk_len(const Quiver& q) { return std::max(8, 2 * static_cast<int>(q.arrow_count())); }

struct SequentialWalkCertificate {
  std::size_t rho_index = 0;
  std::size_t sigma_index = 0;
  LinComb rho;
  Path u_branch;
  LinComb sigma;
  Path v_branch;
  Walk w_prime;
  Orientation orientation = Orientation::Forward;
  Walk full_walk;

  Walk u(const Quiver& q) const {
    Walk w = Walk::from_path(q, u_branch);
    return orientation == Orientation::Forward ? w : w.inverse();
  }
  Walk v(const Quiver& q) const {
    Walk w = Walk::from_path(q, v_branch);
    return orientation == Orientation::Forward ? w : w.inverse();
  }
};

/// Builds full_walk = u w' v; throws InvalidWalk if the pieces do not compose.
inline SequentialWalkCertificate make_certificate(const Quiver& q, const LinComb& rho, const Path& u, const LinComb& sigma,
                                                  const Path& v, const Walk& w_prime, Orientation o) {
  SequentialWalkCertificate c;
  c.rho = rho;
  c.u_branch = u;
  c.sigma = sigma;
  c.v_branch = v;
  c.w_prime = w_prime;
  c.orientation = o;
  c.full_walk = c.u(q).then(w_prime).then(c.v(q));
  return c;
}

struct CheckResult {
  bool ok = true;
  std::vector<std::string> reasons;  // failed conditions: "a", "b1", "b2", "c", "seam"
  explicit operator bool() const { return ok; }
};

namespace detail {

inline std::optional<std::size_t> top_index(const TruncatedAlgebra& a, const LinComb& r) {
  const auto& tops = a.top_relations();
  for (std::size_t i = 0; i < tops.size(); ++i)
    if (tops[i].proportional_to(r)) return i;
  return std::nullopt;
}

inline std::vector<int> path_points(const Quiver& q, const Path& p) { return p.points(q); }

/// Interior points (all but first and last) of every branch of rho and sigma.
inline std::set<int> branch_interior(const Quiver& q, const LinComb& rho, const LinComb& sigma) {
  std::set<int> out;
  for (const LinComb* r : {&rho, &sigma})
    for (const auto& b : r->branches()) {
      auto pts = b.points(q);
      for (std::size_t i = 1; i + 1 < pts.size(); ++i) out.insert(pts[i]);
    }
  return out;
}

inline bool is_subpath(const Path& small, const Path& big) {
  if (small.length() > big.length() || small.length() == 0) return false;
  return std::search(big.arrows.begin(), big.arrows.end(), small.arrows.begin(), small.arrows.end()) != big.arrows.end();
}

/// Everything the per-(rho, sigma) checks need, computed once.
struct PairContext {
  std::set<int> forbidden;     // arrows of all branches of rho and sigma
  std::set<Path> b2_witness;   // directed paths rejected by (b2)
};

inline PairContext make_context(const TruncatedAlgebra& a, const LinComb& rho, const LinComb& sigma, const DetectorConfig& cfg) {
  const Quiver& q = a.quiver();
  PairContext ctx;
  for (const LinComb* r : {&rho, &sigma})
    for (const auto& b : r->branches()) ctx.forbidden.insert(b.arrows.begin(), b.arrows.end());

  std::vector<LinComb> taus = a.top_relations();
  if (cfg.strict_relations)
    for (auto& r : a.ideal_basis())
      if (r.shortest_branch() >= 2) taus.push_back(r);

  std::set<int> interior = branch_interior(q, rho, sigma);
  if (cfg.b2 == B2Reading::RelationBranchPoints) {
    for (int e : {rho.source(), rho.target(), sigma.source(), sigma.target()}) interior.erase(e);
  }
  auto meets = [&](const std::vector<int>& pts) {
    return std::any_of(pts.begin(), pts.end(), [&](int x) { return interior.count(x) != 0; });
  };
  for (const auto& tau : taus) {
    bool tau_touches = false;
    if (cfg.b2 != B2Reading::SubpathPoints)
      for (const auto& b : tau.branches()) tau_touches = tau_touches || meets(b.points(q));
    for (const auto& b : tau.branches())
      for (std::size_t i = 0; i < b.length(); ++i)
        for (std::size_t j = i + 1; j <= b.length(); ++j) {
          Path p = Path::from_arrows(q, {b.arrows.begin() + static_cast<long>(i), b.arrows.begin() + static_cast<long>(j)});
          bool bad = cfg.b2 == B2Reading::SubpathPoints ? meets(p.points(q)) : tau_touches;
          if (bad) ctx.b2_witness.insert(p);
        }
  }
  return ctx;
}

/// Undirected BFS distances to `target`.
inline std::vector<int> distances_to(const Quiver& q, int target) {
  std::vector<int> dist(q.point_count(), -1);
  std::deque<int> queue{target};
  dist[static_cast<std::size_t>(target)] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& ar : q.arrows())
      for (auto [from, to] : {std::pair{ar.source, ar.target}, std::pair{ar.target, ar.source}})
        if (from == x && dist[static_cast<std::size_t>(to)] < 0) {
          dist[static_cast<std::size_t>(to)] = dist[static_cast<std::size_t>(x)] + 1;
          queue.push_back(to);
        }
  }
  return dist;
}

/// Letters leaving each point, ordered by (arrow, sign).
inline std::vector<std::vector<Letter>> letters_from(const Quiver& q) {
  std::vector<std::vector<Letter>> out(q.point_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(static_cast<int>(a));
    out[static_cast<std::size_t>(ar.source)].push_back({static_cast<int>(a), 1});
    out[static_cast<std::size_t>(ar.target)].push_back({static_cast<int>(a), -1});
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

/// Forward path of letters [from, to) of a sign-constant stretch.
inline Path stretch_path(const Quiver& q, const std::vector<Letter>& ls, std::size_t from, std::size_t to) {
  std::vector<int> arrows;
  for (std::size_t k = from; k < to; ++k) arrows.push_back(ls[k].arrow);
  if (ls[from].sign < 0) std::reverse(arrows.begin(), arrows.end());
  return Path::from_arrows(q, arrows);
}

/// Start of the trailing sign-constant run of ls, not going below `floor`.
inline std::size_t trailing_run_start(const std::vector<Letter>& ls, std::size_t floor) {
  std::size_t i = ls.size() - 1;
  while (i > floor && ls[i - 1].sign == ls.back().sign) --i;
  return i;
}

/// Every maximal directed run of ls avoids I.
inline bool runs_avoid_ideal(const TruncatedAlgebra& a, const std::vector<Letter>& ls) {
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i + 1;
    while (j < ls.size() && ls[j].sign == ls[i].sign) ++j;
    if (a.path_in_ideal(stretch_path(a.quiver(), ls, i, j))) return false;
    i = j;
  }
  return true;
}

/// Seam clause for nontrivial w': when the first run of w' continues the
/// direction of u, the directed stretch (u minus its first letter)(first run)
/// avoids I; dually at v. Without it a walk such as a b d e f on the band
/// quiver (rels ab, bd, de, ef) yields a projective M(w'').
inline bool seams_avoid_ideal(const TruncatedAlgebra& a, const std::vector<Letter>& u, const std::vector<Letter>& wp,
                              const std::vector<Letter>& v) {
  if (wp.empty()) return true;
  const Quiver& q = a.quiver();
  if (wp.front().sign == u.back().sign) {
    std::vector<Letter> s(u.begin() + 1, u.end());
    for (std::size_t k = 0; k < wp.size() && wp[k].sign == wp.front().sign; ++k) s.push_back(wp[k]);
    if (a.path_in_ideal(stretch_path(q, s, 0, s.size()))) return false;
  }
  if (wp.back().sign == v.front().sign) {
    std::vector<Letter> s(wp.begin() + static_cast<long>(trailing_run_start(wp, 0)), wp.end());
    s.insert(s.end(), v.begin(), v.end() - 1);
    if (a.path_in_ideal(stretch_path(q, s, 0, s.size()))) return false;
  }
  return true;
}

/// Depth-first enumeration of reduced walks w' from `from` to `to` with at
/// most `max_len` letters. `prefix` letters precede w' (for reducedness and
/// run checks); `first_after` is the letter following w'. `accept_step`
/// is called after pushing a letter (with the combined letters) and may
/// prune; `accept_end` decides whether a finished w' is reported.
struct WalkSearch {
  const Quiver& q;
  std::vector<std::vector<Letter>> out_letters;
  std::vector<int> dist;
  int to;
  int max_len;
  std::optional<Letter> before, after;
  std::function<bool(int arrow)> allowed;
  std::function<bool(const std::vector<Letter>&)> accept_step;
  std::function<bool(const std::vector<Letter>&)> accept_end;
  std::vector<std::vector<Letter>> found;

  WalkSearch(const Quiver& quiver, int target) : q(quiver), out_letters(letters_from(quiver)), dist(distances_to(quiver, target)), to(target), max_len(0) {}

  void run(int from) {
    std::vector<Letter> cur;
    step(from, cur);
  }

  void step(int at, std::vector<Letter>& cur) {
    if (at == to) {
      bool seam = cur.empty() || !after || !(cur.back().arrow == after->arrow && cur.back().sign == -after->sign);
      if (seam && (!accept_end || accept_end(cur))) found.push_back(cur);
    }
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (const Letter& l : out_letters[static_cast<std::size_t>(at)]) {
      if (allowed && !allowed(l.arrow)) continue;
      const std::optional<Letter> prev = cur.empty() ? before : std::optional<Letter>(cur.back());
      if (prev && prev->arrow == l.arrow && prev->sign == -l.sign) continue;
      int next = Walk::letter_target(q, l);
      int d = dist[static_cast<std::size_t>(next)];
      if (d < 0 || static_cast<int>(cur.size()) + 1 + d > max_len) continue;
      cur.push_back(l);
      if (!accept_step || accept_step(cur)) step(next, cur);
      cur.pop_back();
    }
  }
};

inline Walk letters_walk(const Quiver& q, int start, const std::vector<Letter>& ls) {
  return ls.empty() ? Walk::trivial(start) : Walk::make(q, ls);
}

/// Runs `task(i)` for i in [0, n) on up to `threads` workers.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline void sort_certificates(std::vector<SequentialWalkCertificate>& certs) {
  std::sort(certs.begin(), certs.end(), [](const SequentialWalkCertificate& x, const SequentialWalkCertificate& y) {
    auto key = [](const SequentialWalkCertificate& c) {
      return std::make_tuple(c.rho_index, c.sigma_index, c.full_walk.length(), std::cref(c.full_walk.letters()), c.u_branch.length());
    };
    return key(x) < key(y);
  });
}

}  // namespace detail

/// Conditions (a), (b1), (b2), (c) of the sequential-walk definition.
inline CheckResult check_sequential(const TruncatedAlgebra& a, const SequentialWalkCertificate& c, const DetectorConfig& cfg = {}) {
  const Quiver& q = a.quiver();
  if (!detail::top_index(a, c.rho)) throw Error(ErrorCode::RelationNotTop, "rho is not a top relation");
  if (!detail::top_index(a, c.sigma)) throw Error(ErrorCode::RelationNotTop, "sigma is not a top relation");
  CheckResult res;
  auto fail = [&](const char* r) {
    res.ok = false;
    if (std::find(res.reasons.begin(), res.reasons.end(), r) == res.reasons.end()) res.reasons.emplace_back(r);
  };

  auto branches_r = c.rho.branches(), branches_s = c.sigma.branches();
  bool u_ok = std::find(branches_r.begin(), branches_r.end(), c.u_branch) != branches_r.end();
  bool v_ok = std::find(branches_s.begin(), branches_s.end(), c.v_branch) != branches_s.end();
  Walk u = c.u(q), v = c.v(q);
  bool composes = u.end() == c.w_prime.start() && c.w_prime.end() == v.start();
  if (!u_ok || !v_ok || !composes || !same_direction(u, v)) fail("a");
  if (composes && !is_reduced(u.then(c.w_prime).then(v))) fail("a");
  if (!is_reduced(c.w_prime)) fail("a");

  auto ctx = detail::make_context(a, c.rho, c.sigma, cfg);
  for (const Path& p : directed_subpaths(q, c.w_prime)) {
    if (a.path_in_ideal(p)) fail("b1");
    if (ctx.b2_witness.count(p)) fail("b2");
  }
  for (const auto& l : c.w_prime.letters())
    if (ctx.forbidden.count(l.arrow)) fail("c");
  if (cfg.seam_clause && composes && !detail::seams_avoid_ideal(a, u.letters(), c.w_prime.letters(), v.letters())) fail("seam");
  return res;
}

/// All sequential walks with |w'| <= cfg.max_walk_len, canonically ordered.
inline std::vector<SequentialWalkCertificate> detect_sequential_walks(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}) {
  a.require_admissible();
  const Quiver& q = a.quiver();
  const auto& tops = a.top_relations();
  const std::size_t n = tops.size();
  std::vector<std::vector<SequentialWalkCertificate>> per_pair(n * n);

  detail::parallel_for(n * n, cfg.threads, [&](std::size_t task) {
    const std::size_t ri = task / n, si = task % n;
    const LinComb& rho = tops[ri];
    const LinComb& sigma = tops[si];
    auto ctx = detail::make_context(a, rho, sigma, cfg);
    for (const Path& ub : rho.branches())
      for (const Path& vb : sigma.branches())
        for (Orientation o : {Orientation::Forward, Orientation::Inverse}) {
          const bool fwd = o == Orientation::Forward;
          int from = fwd ? rho.target() : rho.source();
          int to = fwd ? sigma.source() : sigma.target();
          detail::WalkSearch search(q, to);
          search.max_len = cfg.max_walk_len;
          search.before = fwd ? Letter{ub.arrows.back(), 1} : Letter{ub.arrows.front(), -1};
          search.after = fwd ? Letter{vb.arrows.front(), 1} : Letter{vb.arrows.back(), -1};
          search.allowed = [&](int arrow) { return ctx.forbidden.count(arrow) == 0; };
          search.accept_step = [&](const std::vector<Letter>& ls) {
            std::size_t s = detail::trailing_run_start(ls, 0);
            if (a.path_in_ideal(detail::stretch_path(q, ls, s, ls.size()))) return false;
            for (std::size_t k = s; k < ls.size(); ++k)
              if (ctx.b2_witness.count(detail::stretch_path(q, ls, k, ls.size()))) return false;
            return true;
          };
          Walk uw = Walk::from_path(q, ub), vw = Walk::from_path(q, vb);
          if (!fwd) {
            uw = uw.inverse();
            vw = vw.inverse();
          }
          if (cfg.seam_clause)
            search.accept_end = [&](const std::vector<Letter>& ls) { return detail::seams_avoid_ideal(a, uw.letters(), ls, vw.letters()); };
          search.run(from);
          for (const auto& ls : search.found) {
            auto cert = make_certificate(q, rho, ub, sigma, vb, detail::letters_walk(q, from, ls), o);
            cert.rho_index = ri;
            cert.sigma_index = si;
            per_pair[task].push_back(std::move(cert));
          }
        }
  });

  std::vector<SequentialWalkCertificate> out;
  for (auto& v : per_pair)
    for (auto& c : v) {
      if (!check_sequential(a, c, cfg)) throw Error(ErrorCode::InternalInconsistency, "enumerated walk fails re-verification");
      out.push_back(std::move(c));
    }
  detail::sort_certificates(out);
  return out;
}

inline void require_monomial(const TruncatedAlgebra& a) {
  if (!a.bound_quiver().is_monomial()) throw Error(ErrorCode::NotMonomialAlgebra, "relations are not all monomial");
}

namespace detail {

/// Reduced walks u w' v with u, v monomial top relations in the same
/// direction and no directed run of the stripped walk (u minus its first
/// letter, w', v minus its last letter) in I. `extra_end` adds a final test.
inline std::vector<SequentialWalkCertificate> pair_search(const TruncatedAlgebra& a, const DetectorConfig& cfg,
                                                          const std::function<bool(const std::vector<Letter>&)>& extra_end) {
  const Quiver& q = a.quiver();
  const auto& tops = a.top_relations();
  const std::size_t n = tops.size();
  std::vector<std::vector<SequentialWalkCertificate>> per_pair(n * n);
  parallel_for(n * n, cfg.threads, [&](std::size_t task) {
    const std::size_t ri = task / n, si = task % n;
    const LinComb& rho = tops[ri];
    const LinComb& sigma = tops[si];
    const Path ub = rho.branches().front(), vb = sigma.branches().front();
    for (Orientation o : {Orientation::Forward, Orientation::Inverse}) {
      const bool fwd = o == Orientation::Forward;
      Walk u = Walk::from_path(q, ub), v = Walk::from_path(q, vb);
      if (!fwd) {
        u = u.inverse();
        v = v.inverse();
      }
      std::vector<Letter> head(u.letters().begin() + 1, u.letters().end());
      std::vector<Letter> tail(v.letters().begin(), v.letters().end() - 1);
      detail::WalkSearch search(q, v.start());
      search.max_len = cfg.max_walk_len;
      search.before = u.letters().back();
      search.after = v.letters().front();
      search.accept_step = [&](const std::vector<Letter>& ls) {
        std::vector<Letter> all = head;
        all.insert(all.end(), ls.begin(), ls.end());
        std::size_t s = trailing_run_start(all, 0);
        return !a.path_in_ideal(stretch_path(q, all, s, all.size()));
      };
      search.accept_end = [&](const std::vector<Letter>& ls) {
        std::vector<Letter> all = head;
        all.insert(all.end(), ls.begin(), ls.end());
        all.insert(all.end(), tail.begin(), tail.end());
        if (!runs_avoid_ideal(a, all)) return false;
        return !extra_end || extra_end(ls);
      };
      search.run(u.end());
      for (const auto& ls : search.found) {
        auto cert = make_certificate(q, rho, ub, sigma, vb, letters_walk(q, u.end(), ls), o);
        cert.rho_index = ri;
        cert.sigma_index = si;
        per_pair[task].push_back(std::move(cert));
      }
    }
  });
  std::vector<SequentialWalkCertificate> out;
  for (auto& v : per_pair)
    for (auto& c : v) out.push_back(std::move(c));
  sort_certificates(out);
  return out;
}

}  // namespace detail

/// Sequential pairs of monomial relations (string/monomial setting).
inline std::vector<SequentialWalkCertificate> detect_sequential_pairs(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}) {
  a.require_admissible();
  require_monomial(a);
  return detail::pair_search(a, cfg, {});
}

inline bool is_string_algebra(const TruncatedAlgebra& a) {
  a.require_admissible();
  if (!a.bound_quiver().is_monomial()) return false;
  const Quiver& q = a.quiver();
  for (std::size_t x = 0; x < q.point_count(); ++x)
    if (q.arrows_from(static_cast<int>(x)).size() > 2 || q.arrows_into(static_cast<int>(x)).size() > 2) return false;
  for (std::size_t b = 0; b < q.arrow_count(); ++b) {
    const Arrow& ar = q.arrow(static_cast<int>(b));
    int after = 0, before = 0;
    for (int g : q.arrows_from(ar.target))
      if (!a.path_in_ideal(Path::from_arrows(q, {static_cast<int>(b), g}))) ++after;
    for (int d : q.arrows_into(ar.source))
      if (!a.path_in_ideal(Path::from_arrows(q, {d, static_cast<int>(b)}))) ++before;
    if (after > 1 || before > 1) return false;
  }
  return true;
}

inline void require_string_algebra(const TruncatedAlgebra& a) {
  if (!is_string_algebra(a)) throw Error(ErrorCode::NotStringAlgebra, "not a string algebra");
}

namespace detail {

/// Lexicographically least rotation of the letters of b or of its inverse.
inline std::vector<Letter> canonical_cycle(const std::vector<Letter>& b) {
  std::vector<Letter> best;
  std::vector<Letter> inv;
  for (auto it = b.rbegin(); it != b.rend(); ++it) inv.push_back(it->inverse());
  const std::vector<Letter>* sources[] = {&b, &inv};
  for (const std::vector<Letter>* src : sources)
    for (std::size_t r = 0; r < src->size(); ++r) {
      std::vector<Letter> rot(src->begin() + static_cast<long>(r), src->end());
      rot.insert(rot.end(), src->begin(), src->begin() + static_cast<long>(r));
      if (best.empty() || rot < best) best = rot;
    }
  return best;
}

inline bool is_proper_power(const std::vector<Letter>& b) {
  const std::size_t n = b.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = b[i] == b[i - d];
    if (periodic) return true;
  }
  return false;
}

/// Closed walk b usable as a band: both signs, primitive, reduced around
/// the seam, and every directed run of b·b avoids I.
inline bool is_band_cycle(const TruncatedAlgebra& a, const std::vector<Letter>& b) {
  if (b.empty()) return false;
  bool pos = false, neg = false;
  for (const auto& l : b) (l.sign > 0 ? pos : neg) = true;
  if (!pos || !neg) return false;
  if (is_proper_power(b)) return false;
  std::vector<Letter> bb = b;
  bb.insert(bb.end(), b.begin(), b.end());
  for (std::size_t i = 0; i + 1 < bb.size(); ++i)
    if (bb[i].arrow == bb[i + 1].arrow && bb[i].sign == -bb[i + 1].sign) return false;
  return runs_avoid_ideal(a, bb);
}

}  // namespace detail

/// Bands up to cfg.max_band_len letters, one per rotation/inversion class.
inline std::vector<Walk> find_bands(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}) {
  require_string_algebra(a);
  const Quiver& q = a.quiver();
  std::set<std::vector<Letter>> classes;
  for (std::size_t x = 0; x < q.point_count(); ++x) {
    detail::WalkSearch search(q, static_cast<int>(x));
    search.max_len = cfg.max_band_len;
    search.accept_step = [&](const std::vector<Letter>& ls) {
      std::size_t s = detail::trailing_run_start(ls, 0);
      return !a.path_in_ideal(detail::stretch_path(q, ls, s, ls.size()));
    };
    search.accept_end = [&](const std::vector<Letter>& ls) { return !ls.empty() && detail::is_band_cycle(a, ls); };
    search.run(static_cast<int>(x));
    for (const auto& ls : search.found) classes.insert(detail::canonical_cycle(ls));
  }
  std::vector<std::vector<Letter>> sorted(classes.begin(), classes.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<Walk> out;
  for (const auto& b : sorted) out.push_back(Walk::make(q, b));
  return out;
}

/// rho1 w1 w2 w3 rho2 with w2 a band; `cert.w_prime` is w1 w2 w3.
struct IntertwinedDoubleZero {
  SequentialWalkCertificate cert;
  Walk w1, w2, w3;

  /// The walk rho1 w1 w2^n w3 rho2 as a certificate.
  SequentialWalkCertificate pumped(const Quiver& q, int n) const {
    Walk mid = w1;
    for (int i = 0; i < n; ++i) mid = mid.then(w2);
    mid = mid.then(w3);
    auto c = make_certificate(q, cert.rho, cert.u_branch, cert.sigma, cert.v_branch, mid, cert.orientation);
    c.rho_index = cert.rho_index;
    c.sigma_index = cert.sigma_index;
    return c;
  }
};

inline std::vector<IntertwinedDoubleZero> detect_intertwined_double_zero(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}) {
  a.require_admissible();
  require_string_algebra(a);
  const Quiver& q = a.quiver();
  std::set<std::vector<Letter>> bands;
  for (const auto& b : find_bands(a, cfg)) bands.insert(b.letters());

  // First closed stretch of w' whose class is a band: (start, length).
  auto locate = [&](const std::vector<Letter>& ls) -> std::optional<std::pair<std::size_t, std::size_t>> {
    if (ls.empty()) return std::nullopt;
    Walk w = Walk::make(q, ls);
    auto pts = w.points(q);
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t len = 1; i + len <= ls.size() && static_cast<int>(len) <= cfg.max_band_len; ++len) {
        if (pts[i] != pts[i + len]) continue;
        std::vector<Letter> piece(ls.begin() + static_cast<long>(i), ls.begin() + static_cast<long>(i + len));
        if (bands.count(detail::canonical_cycle(piece))) return std::pair{i, len};
      }
    return std::nullopt;
  };

  auto certs = detail::pair_search(a, cfg, [&](const std::vector<Letter>& ls) { return locate(ls).has_value(); });
  std::vector<IntertwinedDoubleZero> out;
  for (auto& c : certs) {
    auto [i, len] = *locate(c.w_prime.letters());
    IntertwinedDoubleZero z;
    z.w1 = c.w_prime.sub(0, i, q);
    z.w2 = c.w_prime.sub(i, len, q);
    z.w3 = c.w_prime.sub(i + len, c.w_prime.length() - i - len, q);
    z.cert = std::move(c);
    out.push_back(std::move(z));
  }
  return out;
}

/// Quiver of the relation extension: one new arrow per top relation, from
/// its target to its source.
struct RelationExtension {
  BoundQuiver quiver;
  std::vector<bool> is_new;                 // per arrow
  std::vector<std::optional<std::size_t>> relation_of;  // top-relation index of a new arrow
};

inline RelationExtension relation_extension_quiver(const TruncatedAlgebra& a) {
  const auto& tops = a.top_relations();
  const Quiver& q = a.quiver();
  std::vector<Arrow> arrows = q.arrows();
  RelationExtension ext;
  ext.is_new.assign(arrows.size(), false);
  ext.relation_of.assign(arrows.size(), std::nullopt);
  for (std::size_t k = 0; k < tops.size(); ++k) {
    std::string name = "r" + std::to_string(k + 1);
    while (q.find_arrow(name) || std::any_of(arrows.begin(), arrows.end(), [&](const Arrow& ar) { return ar.name == name; }))
      name += "_";
    arrows.push_back({name, tops[k].target(), tops[k].source()});
    ext.is_new.push_back(true);
    ext.relation_of.push_back(k);
  }
  ext.quiver.name = a.bound_quiver().name + "_ext";
  ext.quiver.quiver = Quiver(q.points(), arrows);
  ext.quiver.truncation = a.truncation();
  ext.quiver.field_char = a.field();
  return ext;
}

struct CSequentialWalk {
  std::size_t rho_index = 0, sigma_index = 0;
  Orientation orientation = Orientation::Forward;
  Walk w_prime;       // old arrows only
  Walk walk;          // alpha w' beta in the extension quiver
  int alpha = -1, beta = -1;  // new arrows in the extension quiver
};

/// Walks alpha w' beta whose every branch pair u_i w' v_j is sequential.
/// Forward orientation uses alpha^-1 w' beta^-1 (w' runs from t(rho) to
/// s(sigma)); inverse orientation uses alpha w' beta.
inline std::vector<CSequentialWalk> detect_c_sequential_walks(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}) {
  a.require_admissible();
  const auto& tops = a.top_relations();
  auto ext = relation_extension_quiver(a);
  const Quiver& eq = ext.quiver.quiver;
  const int old_count = static_cast<int>(a.quiver().arrow_count());

  std::map<std::tuple<std::size_t, std::size_t, int, std::vector<Letter>, int>, std::set<std::pair<Path, Path>>> groups;
  for (const auto& c : detect_sequential_walks(a, cfg))
    groups[{c.rho_index, c.sigma_index, static_cast<int>(c.orientation), c.w_prime.letters(), c.w_prime.start()}].insert({c.u_branch, c.v_branch});

  std::vector<CSequentialWalk> out;
  for (const auto& [key, pairs] : groups) {
    const auto& [ri, si, o, letters, start] = key;
    if (pairs.size() != tops[ri].term_count() * tops[si].term_count()) continue;
    CSequentialWalk cs;
    cs.rho_index = ri;
    cs.sigma_index = si;
    cs.orientation = static_cast<Orientation>(o);
    cs.w_prime = detail::letters_walk(a.quiver(), start, letters);
    cs.alpha = old_count + static_cast<int>(ri);
    cs.beta = old_count + static_cast<int>(si);
    const int sign = cs.orientation == Orientation::Forward ? -1 : 1;
    std::vector<Letter> ls{{cs.alpha, sign}};
    ls.insert(ls.end(), letters.begin(), letters.end());
    ls.push_back({cs.beta, sign});
    cs.walk = Walk::make(eq, ls);
    out.push_back(std::move(cs));
  }
  return out;
}

}  // namespace seqwalk

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "seqwalk/error.hpp"
#include "seqwalk/scalar.hpp"

namespace seqwalk {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite quiver. Points and arrows are indexed by declaration order.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> points, std::vector<Arrow> arrows)
      : points_(std::move(points)), arrows_(std::move(arrows)) {
    validate();
  }

  std::size_t point_count() const noexcept { return points_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::string& point_name(int x) const { return points_.at(static_cast<std::size_t>(x)); }
  const Arrow& arrow(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }

  std::optional<int> find_point(const std::string& name) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }
  std::optional<int> find_arrow(const std::string& name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
  }

  std::vector<int> arrows_from(int x) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].source == x) out.push_back(static_cast<int>(i));
    return out;
  }
  std::vector<int> arrows_into(int x) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].target == x) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Same points, every arrow reversed (names kept).
  Quiver opposite() const {
    std::vector<Arrow> rev;
    for (const auto& a : arrows_) rev.push_back({a.name, a.target, a.source});
    return {points_, rev};
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  void validate() const {
    if (points_.empty()) throw Error(ErrorCode::InvalidQuiver, "quiver has no points");
    std::set<std::string> seen(points_.begin(), points_.end());
    if (seen.size() != points_.size()) throw Error(ErrorCode::InvalidQuiver, "duplicate point identifier");
    std::set<std::string> names;
    for (const auto& a : arrows_) {
      if (!names.insert(a.name).second) throw Error(ErrorCode::InvalidQuiver, "duplicate arrow name " + a.name);
      auto n = static_cast<int>(points_.size());
      if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
        throw Error(ErrorCode::InvalidQuiver, "arrow " + a.name + " has an undeclared endpoint");
    }
  }

  std::vector<std::string> points_;
  std::vector<Arrow> arrows_;
};

/// Directed path; the trivial path at x has no arrows and source == target.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  static Path trivial(int x) { return {x, x, {}}; }
  static Path of_arrow(const Quiver& q, int a) { return {q.arrow(a).source, q.arrow(a).target, {a}}; }
  static Path from_arrows(const Quiver& q, std::vector<int> arrows) {
    if (arrows.empty()) throw Error(ErrorCode::InvalidWalk, "empty arrow list needs an explicit point");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
        throw Error(ErrorCode::InvalidWalk, "arrows do not compose");
    int s = q.arrow(arrows.front()).source;
    int t = q.arrow(arrows.back()).target;
    return {s, t, std::move(arrows)};
  }

  std::size_t length() const noexcept { return arrows.size(); }
  bool is_trivial() const noexcept { return arrows.empty(); }

  /// Points visited, length() + 1 entries.
  std::vector<int> points(const Quiver& q) const {
    std::vector<int> pts{source};
    for (int a : arrows) pts.push_back(q.arrow(a).target);
    return pts;
  }

  /// Global path order: by length, then arrow indices lexicographically,
  /// trivial paths by point.
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Linear combination of parallel paths with nonzero coefficients.
class LinComb {
 public:
  LinComb() = default;
  LinComb(const Path& p, const Scalar& c = Scalar(1)) { add(p, c); }  // NOLINT

  void add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    if (!terms_.empty() && (p.source != source() || p.target != target()))
      throw Error(ErrorCode::EndpointMismatch, "paths of a linear combination must be parallel");
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<Path, Scalar>& terms() const noexcept { return terms_; }
  int source() const { return terms_.begin()->first.source; }
  int target() const { return terms_.begin()->first.target; }

  std::vector<Path> branches() const {
    std::vector<Path> out;
    for (const auto& [p, c] : terms_) out.push_back(p);
    return out;
  }
  std::size_t longest_branch() const {
    std::size_t m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, p.length());
    return m;
  }
  std::size_t shortest_branch() const {
    std::size_t m = SIZE_MAX;
    for (const auto& [p, c] : terms_) m = std::min(m, p.length());
    return terms_.empty() ? 0 : m;
  }

  LinComb scaled(const Scalar& c) const {
    LinComb out;
    for (const auto& [p, x] : terms_) out.add(p, x * c);
    return out;
  }

  /// True when this is a nonzero multiple of other.
  bool proportional_to(const LinComb& other) const {
    if (is_zero() || other.is_zero() || terms_.size() != other.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    if (!(it->first == jt->first)) return false;
    Scalar ratio = it->second / jt->second;
    for (; it != terms_.end(); ++it, ++jt) {
      if (!(it->first == jt->first)) return false;
      if (!(it->second == jt->second * ratio)) return false;
    }
    return true;
  }

  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Path, Scalar> terms_;
};

inline bool is_monomial_relation(const LinComb& r) { return r.term_count() == 1; }

/// Quiver with relation generators, a nilpotency bound and a field.
struct BoundQuiver {
  std::string name = "Q";
  Quiver quiver;
  std::vector<LinComb> relations;
  int truncation = 2;
  std::uint32_t field_char = 0;

  /// Checks the structural invariants; throws on violation.
  void validate() const {
    if (truncation < 2) throw Error(ErrorCode::InvalidQuiver, "truncation must be at least 2");
    if (field_char != 0 && !is_prime(field_char))
      throw Error(ErrorCode::InvalidQuiver, "field characteristic must be 0 or prime");
    for (const auto& r : relations) {
      if (r.is_zero()) throw Error(ErrorCode::InvalidQuiver, "zero relation");
      for (const auto& [p, c] : r.terms())
        if (p.length() < 2) throw Error(ErrorCode::RelationBranchTooShort, "relation branch shorter than two");
    }
  }

  bool is_monomial() const {
    return std::all_of(relations.begin(), relations.end(), [](const LinComb& r) { return is_monomial_relation(r); });
  }

  /// Opposite bound quiver: arrows and relation paths reversed.
  BoundQuiver opposite() const {
    BoundQuiver op{name + "_op", quiver.opposite(), {}, truncation, field_char};
    for (const auto& r : relations) {
      LinComb rr;
      for (const auto& [p, c] : r.terms()) {
        std::vector<int> rev(p.arrows.rbegin(), p.arrows.rend());
        rr.add(Path{p.target, p.source, rev}, c);
      }
      op.relations.push_back(rr);
    }
    return op;
  }

  std::size_t longest_branch() const {
    std::size_t m = 0;
    for (const auto& r : relations) m = std::max(m, r.longest_branch());
    return m;
  }

  friend bool operator==(const BoundQuiver&, const BoundQuiver&) = default;
};

// ---------------------------------------------------------------------------
// Walks

struct Letter {
  int arrow = 0;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {arrow, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (a.arrow != b.arrow) return a.arrow <=> b.arrow;
    return b.sign <=> a.sign;  // +1 before -1
  }
};

/// Sequence of arrows and formal inverses. A walk knows its start point so
/// the trivial walk at a point is representable; walks read from user input
/// are always nontrivial.
class Walk {
 public:
  Walk() = default;

  static Walk trivial(int x) {
    Walk w;
    w.start_ = w.end_ = x;
    return w;
  }

  static Walk make(const Quiver& q, std::vector<Letter> letters) {
    if (letters.empty()) throw Error(ErrorCode::InvalidWalk, "a walk needs at least one letter");
    Walk w;
    w.start_ = letter_source(q, letters.front());
    w.end_ = w.start_;
    for (const auto& l : letters) {
      if (l.sign != 1 && l.sign != -1) throw Error(ErrorCode::InvalidWalk, "letter sign must be +1 or -1");
      if (letter_source(q, l) != w.end_) throw Error(ErrorCode::InvalidWalk, "consecutive letters do not compose");
      w.end_ = letter_target(q, l);
    }
    w.letters_ = std::move(letters);
    return w;
  }

  static Walk from_path(const Quiver& q, const Path& p) {
    if (p.is_trivial()) return trivial(p.source);
    std::vector<Letter> ls;
    for (int a : p.arrows) ls.push_back({a, 1});
    return make(q, ls);
  }

  static int letter_source(const Quiver& q, const Letter& l) {
    return l.sign > 0 ? q.arrow(l.arrow).source : q.arrow(l.arrow).target;
  }
  static int letter_target(const Quiver& q, const Letter& l) {
    return l.sign > 0 ? q.arrow(l.arrow).target : q.arrow(l.arrow).source;
  }

  int start() const noexcept { return start_; }
  int end() const noexcept { return end_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_trivial() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  Walk inverse() const {
    Walk w;
    w.start_ = end_;
    w.end_ = start_;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Concatenation; endpoints must match.
  Walk then(const Walk& other) const {
    if (end_ != other.start_) throw Error(ErrorCode::InvalidWalk, "walks do not compose");
    Walk w = *this;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    w.end_ = other.end_;
    return w;
  }

  Walk sub(std::size_t from, std::size_t count, const Quiver& q) const {
    if (count == 0) return trivial(points(q).at(from));
    return make(q, {letters_.begin() + static_cast<long>(from), letters_.begin() + static_cast<long>(from + count)});
  }

  std::vector<int> points(const Quiver& q) const {
    std::vector<int> pts{start_};
    for (const auto& l : letters_) pts.push_back(letter_target(q, l));
    return pts;
  }

  friend bool operator==(const Walk&, const Walk&) = default;
  friend bool operator<(const Walk& a, const Walk& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    if (a.letters_ != b.letters_) return a.letters_ < b.letters_;
    return a.start_ < b.start_;
  }

 private:
  int start_ = 0;
  int end_ = 0;
  std::vector<Letter> letters_;
};

inline bool is_reduced(const Walk& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i].arrow == ls[i + 1].arrow && ls[i].sign == -ls[i + 1].sign) return false;
  return true;
}

inline bool is_zigzag(const Walk& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i].sign == ls[i + 1].sign) return false;
  return true;
}

inline Walk inverse(const Walk& w) { return w.inverse(); }

inline std::vector<int> walk_points(const Quiver& q, const Walk& w) { return w.points(q); }

/// True when every letter of both walks has the same sign (both paths or
/// both inverse paths). Trivial walks point nowhere.
inline bool same_direction(const Walk& u, const Walk& v) {
  if (u.is_trivial() || v.is_trivial()) return false;
  int s = u.letters().front().sign;
  auto all = [](const Walk& w, int sign) {
    return std::all_of(w.letters().begin(), w.letters().end(), [&](const Letter& l) { return l.sign == sign; });
  };
  return all(u, s) && all(v, s);
}

/// Maximal sign-constant runs as (start offset, length) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> directed_runs(const Walk& w) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  const auto& ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i + 1;
    while (j < ls.size() && ls[j].sign == ls[i].sign) ++j;
    runs.emplace_back(i, j - i);
    i = j;
  }
  return runs;
}

/// Forward path underlying the letters [from, from + count) of a
/// sign-constant stretch.
inline Path run_path(const Quiver& q, const Walk& w, std::size_t from, std::size_t count) {
  std::vector<int> arrows;
  for (std::size_t k = from; k < from + count; ++k) arrows.push_back(w.letters()[k].arrow);
  if (w.letters()[from].sign < 0) std::reverse(arrows.begin(), arrows.end());
  return Path::from_arrows(q, arrows);
}

/// All contiguous sign-constant stretches of w as forward paths, deduplicated,
/// ordered by (length, first position).
inline std::vector<Path> directed_subpaths(const Quiver& q, const Walk& w) {
  std::vector<std::tuple<std::size_t, std::size_t, Path>> found;
  for (auto [from, len] : directed_runs(w))
    for (std::size_t a = from; a < from + len; ++a)
      for (std::size_t b = a + 1; b <= from + len; ++b) found.emplace_back(b - a, a, run_path(q, w, a, b - a));
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  std::vector<Path> out;
  for (auto& [len, pos, p] : found)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

}  // namespace seqwalk

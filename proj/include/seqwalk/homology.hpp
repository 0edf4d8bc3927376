#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "seqwalk/linalg.hpp"
#include "seqwalk/path_algebra.hpp"

namespace seqwalk {

/// Right module over kQ/I: a vector space per point and, for each arrow
/// x -> y, a dim_x by dim_y matrix acting on row vectors. A path acts by the
/// product of its arrow matrices in order.
struct Representation {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  std::uint32_t field = 0;

  static Representation zero(const Quiver& q, std::uint32_t p) {
    Representation r;
    r.field = p;
    r.dims.assign(q.point_count(), 0);
    for (std::size_t i = 0; i < q.arrow_count(); ++i) r.maps.emplace_back(0, 0, p);
    return r;
  }

  std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (std::size_t x = 0; x < dims.size(); ++x)
      if (dims[x] > 0) s.push_back(static_cast<int>(x));
    return s;
  }

  Matrix path_matrix(const Path& p) const {
    Matrix m = Matrix::identity(dims[static_cast<std::size_t>(p.source)], field);
    for (int a : p.arrows) m = m * maps[static_cast<std::size_t>(a)];
    return m;
  }

  /// Action of a combination of parallel paths.
  Matrix evaluate(const LinComb& e) const {
    Matrix acc(dims[static_cast<std::size_t>(e.source())], dims[static_cast<std::size_t>(e.target())], field);
    for (const auto& [p, c] : e.terms()) {
      Matrix m = path_matrix(p);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc(i, j) += c * m(i, j);
    }
    return acc;
  }

  /// Every relation of bq acts as zero.
  bool satisfies(const BoundQuiver& bq) const {
    for (const auto& r : bq.relations)
      if (!evaluate(r).is_zero()) return false;
    return true;
  }
};

inline std::string dim_vector_string(const Quiver& q, const Representation& m) {
  std::string s = "(";
  for (std::size_t x = 0; x < m.dims.size(); ++x) {
    if (x) s += ", ";
    s += q.point_name(static_cast<int>(x)) + ":" + std::to_string(m.dims[x]);
  }
  return s + ")";
}

namespace detail {

inline std::vector<Scalar> times(const std::vector<Scalar>& v, const Matrix& m, std::uint32_t p) {
  std::vector<Scalar> out(m.cols(), Scalar::zero(p));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[j] += v[i] * m(i, j);
    }
  return out;
}

/// Restriction of m to the subspaces spanned by the rows of `basis`
/// (one basis matrix per point; rows independent and stable under arrows).
inline Representation restrict_to(const Quiver& q, const Representation& m, const std::vector<Matrix>& basis) {
  Representation out;
  out.field = m.field;
  for (const auto& b : basis) out.dims.push_back(b.rows());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(static_cast<int>(a));
    const Matrix& bs = basis[static_cast<std::size_t>(ar.source)];
    const Matrix& bt = basis[static_cast<std::size_t>(ar.target)];
    Matrix img(0, bt.rows(), m.field);
    Matrix prod = bs * m.maps[a];
    for (std::size_t i = 0; i < bs.rows(); ++i) {
      auto c = linalg::solve_left(bt, prod.row(i));
      if (!c) throw Error(ErrorCode::InternalInconsistency, "subspace not stable under arrow " + ar.name);
      img.append_row(*c);
    }
    if (img.rows() == 0) img = Matrix(0, bt.rows(), m.field);
    out.maps.push_back(img);
  }
  return out;
}

inline Matrix empty_rows(std::size_t cols, std::uint32_t p) { return Matrix(0, cols, p); }

inline Matrix rows_or_empty(Matrix m, std::size_t cols, std::uint32_t p) {
  return m.rows() == 0 ? empty_rows(cols, p) : m;
}

}  // namespace detail

inline Representation simple(const TruncatedAlgebra& a, int x) {
  Representation r = Representation::zero(a.quiver(), a.field());
  r.dims[static_cast<std::size_t>(x)] = 1;
  for (std::size_t i = 0; i < a.quiver().arrow_count(); ++i) {
    const Arrow& ar = a.quiver().arrow(static_cast<int>(i));
    r.maps[i] = Matrix(r.dims[static_cast<std::size_t>(ar.source)], r.dims[static_cast<std::size_t>(ar.target)], a.field());
  }
  return r;
}

/// P_x = e_x A: fiber at y is the normal basis of paths x -> y.
inline Representation projective(const TruncatedAlgebra& a, int x) {
  a.require_admissible();
  const Quiver& q = a.quiver();
  const PathTable& t = a.paths();
  Representation r;
  r.field = a.field();
  std::vector<int> position(t.size(), -1);
  for (std::size_t y = 0; y < q.point_count(); ++y) {
    const auto& nb = a.normal_basis(x, static_cast<int>(y));
    r.dims.push_back(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) position[static_cast<std::size_t>(nb[k])] = static_cast<int>(k);
  }
  for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
    const Arrow& ar = q.arrow(static_cast<int>(ai));
    const auto& src = a.normal_basis(x, ar.source);
    Matrix m(src.size(), r.dims[static_cast<std::size_t>(ar.target)], a.field());
    for (std::size_t k = 0; k < src.size(); ++k) {
      SparseVec v = a.multiply_arrow_right(SparseVec::unit(src[k], a.one()), static_cast<int>(ai));
      for (const auto& [idx, c] : v) {
        int pos = position[static_cast<std::size_t>(idx)];
        if (pos < 0) throw Error(ErrorCode::InternalInconsistency, "reduced path outside the normal basis");
        m(k, static_cast<std::size_t>(pos)) = c;
      }
    }
    r.maps.push_back(m);
  }
  return r;
}

/// D(M): the transpose-dual, a representation of the opposite quiver.
inline Representation dual(const Representation& m) {
  Representation d;
  d.field = m.field;
  d.dims = m.dims;
  for (const auto& mat : m.maps) d.maps.push_back(mat.transpose());
  return d;
}

/// I_x = D(P_x over the opposite algebra).
inline Representation injective(const TruncatedAlgebra& a, int x) { return dual(projective(a.opposite(), x)); }

inline Representation direct_sum(const Quiver& q, const std::vector<Representation>& parts, std::uint32_t p) {
  Representation r = Representation::zero(q, p);
  for (const auto& m : parts)
    for (std::size_t x = 0; x < r.dims.size(); ++x) r.dims[x] += m.dims[x];
  for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
    const Arrow& ar = q.arrow(static_cast<int>(ai));
    Matrix mat(r.dims[static_cast<std::size_t>(ar.source)], r.dims[static_cast<std::size_t>(ar.target)], p);
    std::size_t ro = 0, co = 0;
    for (const auto& m : parts) {
      const Matrix& b = m.maps[ai];
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) mat(ro + i, co + j) = b(i, j);
      ro += m.dims[static_cast<std::size_t>(ar.source)];
      co += m.dims[static_cast<std::size_t>(ar.target)];
    }
    r.maps[ai] = mat;
  }
  return r;
}

/// String module of a walk: one basis vector per visited point occurrence,
/// letters act as identities between consecutive occurrences. Fails if a
/// relation of the algebra does not vanish on the result.
inline Representation string_module(const TruncatedAlgebra& a, const Walk& w) {
  const Quiver& q = a.quiver();
  if (!is_reduced(w)) throw Error(ErrorCode::InvalidWalk, "string modules need a reduced walk");
  auto pts = w.points(q);
  Representation r = Representation::zero(q, a.field());
  std::vector<std::size_t> local;
  for (int x : pts) local.push_back(r.dims[static_cast<std::size_t>(x)]++);
  for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
    const Arrow& ar = q.arrow(static_cast<int>(ai));
    r.maps[ai] = Matrix(r.dims[static_cast<std::size_t>(ar.source)], r.dims[static_cast<std::size_t>(ar.target)], a.field());
  }
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    auto& m = r.maps[static_cast<std::size_t>(ls[i].arrow)];
    if (ls[i].sign > 0)
      m(local[i], local[i + 1]) = a.one();
    else
      m(local[i + 1], local[i]) = a.one();
  }
  for (const auto& rel : a.bound_quiver().relations)
    if (!r.evaluate(rel).is_zero()) throw Error(ErrorCode::NotAString, "a relation does not vanish on the string module");
  return r;
}

/// Rows spanning M·rad at each point (images of incoming arrows).
inline std::vector<Matrix> radical_basis(const Quiver& q, const Representation& m) {
  std::vector<Matrix> out;
  for (std::size_t y = 0; y < q.point_count(); ++y) {
    Matrix acc(0, m.dims[y], m.field);
    for (int ai : q.arrows_into(static_cast<int>(y))) acc = linalg::vconcat(acc, m.maps[static_cast<std::size_t>(ai)]);
    out.push_back(detail::rows_or_empty(linalg::row_space(acc), m.dims[y], m.field));
  }
  return out;
}

inline Representation radical(const Quiver& q, const Representation& m) {
  return detail::restrict_to(q, m, radical_basis(q, m));
}

/// Dimension vector of top(M) = M / M·rad.
inline std::vector<std::size_t> top_dims(const Quiver& q, const Representation& m) {
  auto rad = radical_basis(q, m);
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < q.point_count(); ++y) out.push_back(m.dims[y] - rad[y].rows());
  return out;
}

/// Dimension vectors of the radical layers rad^k M / rad^{k+1} M.
inline std::vector<std::vector<std::size_t>> radical_layers(const Quiver& q, const Representation& m) {
  std::vector<std::vector<std::size_t>> out;
  Representation cur = m;
  while (!cur.is_zero()) {
    out.push_back(top_dims(q, cur));
    cur = radical(q, cur);
  }
  return out;
}

/// Socle series soc^1 M ⊂ soc^2 M ⊂ ... ⊂ M, as subspace bases per point.
inline std::vector<std::vector<Matrix>> socle_series(const Quiver& q, const Representation& m) {
  std::vector<std::vector<Matrix>> series;
  std::vector<Matrix> prev;
  for (std::size_t y = 0; y < q.point_count(); ++y) prev.push_back(Matrix(0, m.dims[y], m.field));
  std::size_t prev_total = 0;
  while (prev_total < m.total_dim()) {
    std::vector<Matrix> next;
    std::size_t total = 0;
    for (std::size_t y = 0; y < q.point_count(); ++y) {
      Matrix cond(m.dims[y], 0, m.field);
      for (int ai : q.arrows_from(static_cast<int>(y))) {
        const Arrow& ar = q.arrow(ai);
        const Matrix& s = prev[static_cast<std::size_t>(ar.target)];
        // columns annihilating exactly the span of s
        Matrix ann = s.rows() == 0 ? Matrix::identity(m.dims[static_cast<std::size_t>(ar.target)], m.field)
                                   : linalg::right_kernel(s);
        if (ann.rows() != m.dims[static_cast<std::size_t>(ar.target)]) ann = Matrix(m.dims[static_cast<std::size_t>(ar.target)], 0, m.field);
        cond = Matrix::hconcat(cond, m.maps[static_cast<std::size_t>(ai)] * ann);
      }
      Matrix k = cond.cols() == 0 ? Matrix::identity(m.dims[y], m.field) : linalg::left_kernel(cond);
      k = detail::rows_or_empty(k, m.dims[y], m.field);
      total += k.rows();
      next.push_back(k);
    }
    if (total == prev_total) throw Error(ErrorCode::InternalInconsistency, "socle series stalled");
    series.push_back(next);
    prev = next;
    prev_total = total;
  }
  return series;
}

inline std::size_t loewy_length(const Quiver& q, const Representation& m) { return radical_layers(q, m).size(); }

struct ProjectiveCover {
  std::vector<int> summands;        // one point per indecomposable summand P_x
  Representation projective;
  std::vector<Matrix> map;          // per point: P_y -> M_y
  Representation kernel;            // first syzygy
};

inline ProjectiveCover projective_cover(const TruncatedAlgebra& a, const Representation& m) {
  if (m.is_zero()) throw Error(ErrorCode::ZeroModule, "projective cover of the zero module");
  const Quiver& q = a.quiver();
  const std::uint32_t p = a.field();
  auto rad = radical_basis(q, m);
  ProjectiveCover pc;
  std::vector<std::pair<int, std::vector<Scalar>>> tops;
  for (std::size_t x = 0; x < q.point_count(); ++x) {
    Matrix comp = linalg::complement_units(rad[x], m.dims[x], p);
    for (std::size_t i = 0; i < comp.rows(); ++i) tops.emplace_back(static_cast<int>(x), comp.row(i));
  }
  std::vector<Representation> parts;
  for (const auto& [x, v] : tops) {
    pc.summands.push_back(x);
    parts.push_back(projective(a, x));
  }
  pc.projective = direct_sum(q, parts, p);

  // Fiber of P at y lists the normal basis paths of each summand in turn.
  for (std::size_t y = 0; y < q.point_count(); ++y) {
    Matrix pi(0, m.dims[y], p);
    for (const auto& [x, v] : tops)
      for (int idx : a.normal_basis(x, static_cast<int>(y)))
        pi.append_row(detail::times(v, m.path_matrix(a.paths().path(idx)), p));
    pc.map.push_back(detail::rows_or_empty(pi, m.dims[y], p));
  }
  std::vector<Matrix> ker;
  for (std::size_t y = 0; y < q.point_count(); ++y) {
    Matrix k = pc.projective.dims[y] == 0 ? Matrix(0, 0, p) : linalg::left_kernel(pc.map[y]);
    ker.push_back(detail::rows_or_empty(k, pc.projective.dims[y], p));
  }
  pc.kernel = detail::restrict_to(q, pc.projective, ker);
  return pc;
}

inline Representation syzygy(const TruncatedAlgebra& a, const Representation& m) { return projective_cover(a, m).kernel; }

/// Projective dimension, or nullopt once `bound` syzygies were taken without
/// reaching zero. The zero module gets 0. bound < 0 means dim A.
inline std::optional<int> proj_dim(const TruncatedAlgebra& a, const Representation& m, int bound = -1) {
  if (bound < 0) bound = static_cast<int>(a.dimension());
  Representation cur = m;
  for (int n = 0; n <= bound; ++n) {
    if (cur.is_zero()) return n == 0 ? 0 : n - 1;
    cur = syzygy(a, cur);
  }
  return cur.is_zero() ? std::optional<int>(bound) : std::nullopt;
}

inline std::optional<int> inj_dim(const TruncatedAlgebra& a, const Representation& m, int bound = -1) {
  if (bound < 0) bound = static_cast<int>(a.dimension());
  return proj_dim(a.opposite(), dual(m), bound);
}

/// table[i][y] = dim Ext^i(S_x, S_y), the multiplicity of P_y in the i-th
/// term of the minimal projective resolution of S_x.
inline std::vector<std::vector<std::size_t>> ext_simple_dims(const TruncatedAlgebra& a, int x, int i_max) {
  std::vector<std::vector<std::size_t>> table;
  Representation cur = simple(a, x);
  for (int i = 0; i <= i_max; ++i) {
    if (cur.is_zero()) {
      table.emplace_back(a.point_count(), 0);
      continue;
    }
    table.push_back(top_dims(a.quiver(), cur));
    if (i < i_max) cur = syzygy(a, cur);
  }
  return table;
}

inline std::optional<int> global_dimension(const TruncatedAlgebra& a, int bound = -1) {
  int g = 0;
  for (std::size_t x = 0; x < a.point_count(); ++x) {
    auto d = proj_dim(a, simple(a, static_cast<int>(x)), bound);
    if (!d) return std::nullopt;
    g = std::max(g, *d);
  }
  return g;
}

/// A point of Supp m that starts a top relation. Requires pd m >= 2.
inline std::optional<int> support_starts_top_relation(const TruncatedAlgebra& a, const Representation& m) {
  auto pd = proj_dim(a, m);
  if (pd && *pd < 2) throw Error(ErrorCode::PreconditionUnmet, "projective dimension below two");
  for (int x : m.support())
    for (const auto& r : a.top_relations())
      if (r.source() == x) return x;
  return std::nullopt;
}

inline bool is_uniserial(const Quiver& q, const Representation& m) {
  for (const auto& layer : radical_layers(q, m))
    if (std::accumulate(layer.begin(), layer.end(), std::size_t{0}) != 1) return false;
  return true;
}

inline bool is_nakayama(const TruncatedAlgebra& a) {
  const Quiver& q = a.quiver();
  for (std::size_t x = 0; x < q.point_count(); ++x)
    if (q.arrows_from(static_cast<int>(x)).size() > 1 || q.arrows_into(static_cast<int>(x)).size() > 1) return false;
  return true;
}

inline bool is_monomial(const TruncatedAlgebra& a) { return a.bound_quiver().is_monomial(); }

/// Underlying graph connected and without cycles (loops and parallel arrows
/// count as cycles).
inline bool is_tree(const TruncatedAlgebra& a) {
  const Quiver& q = a.quiver();
  const std::size_t n = q.point_count();
  if (q.arrow_count() + 1 != n) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& ar : q.arrows()) {
    int s = find(ar.source), t = find(ar.target);
    if (s == t) return false;
    parent[static_cast<std::size_t>(s)] = t;
  }
  return true;
}

/// Module addressing used by the CLI: simple:x, proj:x, inj:x, string:<walk>.
struct ModuleSpec {
  enum class Kind { Simple, Projective, Injective, String } kind;
  int point = -1;
  std::optional<Walk> walk;
};

inline Representation build_module(const TruncatedAlgebra& a, const ModuleSpec& s) {
  switch (s.kind) {
    case ModuleSpec::Kind::Simple: return simple(a, s.point);
    case ModuleSpec::Kind::Projective: return projective(a, s.point);
    case ModuleSpec::Kind::Injective: return injective(a, s.point);
    case ModuleSpec::Kind::String: return string_module(a, *s.walk);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown module kind");
}

}  // namespace seqwalk

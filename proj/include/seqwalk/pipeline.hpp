#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqwalk/detector.hpp"
#include "seqwalk/homology.hpp"
#include "seqwalk/reduction.hpp"

namespace seqwalk {

/// A machine-checked instance of the reduction lemma: the string module of
/// w'' over the standard reduction B has pd > 1 and id > 1. An empty pd or
/// id means "larger than the bound", in particular larger than one.
struct Witness {
  std::size_t cert_index = 0;
  SequentialWalkCertificate cert;
  std::vector<int> retained;  // ambient points kept in eAe
  std::size_t eae_dim = 0;
  std::size_t cut_size = 0;
  BoundQuiver reduced;        // B
  Walk w2;                    // w'' in the quiver of B
  std::vector<std::size_t> module_dims;
  std::optional<int> pd, id;
  bool postcondition = false;
};

/// Runs the reduction and the dimension computation for one certificate.
/// Throws InternalInconsistency when pd or id is at most one.
inline Witness witness_for(const TruncatedAlgebra& a, const SequentialWalkCertificate& cert, std::size_t index = 0) {
  StandardReduction red = standard_reduction(a, cert);
  TruncatedAlgebra b = TruncatedAlgebra::build(red.presented.bound_quiver);
  Representation m = string_module(b, red.w2);
  Witness w;
  w.cert_index = index;
  w.cert = cert;
  w.retained = red.points;
  w.eae_dim = red.eae.dimension();
  w.cut_size = red.cut.size();
  w.reduced = red.presented.bound_quiver;
  w.w2 = red.w2;
  w.module_dims = m.dims;
  w.pd = proj_dim(b, m);
  w.id = inj_dim(b, m);
  w.postcondition = red.postcondition;
  auto above_one = [](const std::optional<int>& d) { return !d || *d > 1; };
  if (!above_one(w.pd) || !above_one(w.id))
    throw Error(ErrorCode::InternalInconsistency, "string module of w'' has pd or id at most one");
  return w;
}

/// simple:x | proj:x | inj:x | string:<walk tokens>
inline ModuleSpec parse_module_spec(const Quiver& q, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(1, 1, "module spec needs kind:argument");
  std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  ModuleSpec s{ModuleSpec::Kind::Simple, -1, std::nullopt};
  if (kind == "string") {
    s.kind = ModuleSpec::Kind::String;
    s.walk = parse_walk(q, arg);
    return s;
  }
  if (kind == "simple") s.kind = ModuleSpec::Kind::Simple;
  else if (kind == "proj") s.kind = ModuleSpec::Kind::Projective;
  else if (kind == "inj") s.kind = ModuleSpec::Kind::Injective;
  else throw ParseError(1, 1, "unknown module kind '" + kind + "'");
  auto x = q.find_point(arg);
  if (!x) throw ParseError(1, static_cast<int>(colon) + 2, "unknown point '" + arg + "'");
  s.point = *x;
  return s;
}

enum class Verdict { NotShod, Inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::NotShod ? "NOT_SHOD" : "INCONCLUSIVE"; }

/// A certificate on which the reduction is undefined (dependent or vanishing
/// w'' residues, or a cut that does not split).
struct SkippedCertificate {
  std::size_t cert_index = 0;
  ErrorCode code = ErrorCode::SegmentResidueZero;
  std::string message;
};

struct ShodReport {
  Verdict verdict = Verdict::Inconclusive;
  int max_walk_len = 0;
  std::vector<SequentialWalkCertificate> certificates;
  std::vector<Witness> witnesses;
  std::vector<SkippedCertificate> skipped;
};

/// Never concludes "shod": either a verified obstruction or no walk up to
/// the bound. `max_witnesses` = 0 checks every certificate.
inline ShodReport shod_obstruction_report(const TruncatedAlgebra& a, const DetectorConfig& cfg = {}, std::size_t max_witnesses = 0) {
  ShodReport rep;
  rep.max_walk_len = cfg.max_walk_len;
  rep.certificates = detect_sequential_walks(a, cfg);
  for (std::size_t i = 0; i < rep.certificates.size(); ++i) {
    if (max_witnesses && rep.witnesses.size() >= max_witnesses) break;
    try {
      rep.witnesses.push_back(witness_for(a, rep.certificates[i], i));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SegmentResidueZero && e.code() != ErrorCode::CutNotConsistent) throw;
      rep.skipped.push_back({i, e.code(), e.what()});
    }
  }
  if (!rep.witnesses.empty()) rep.verdict = Verdict::NotShod;
  return rep;
}

/// From a uniserial module with pd >= 2 and id >= 2 over a monomial algebra
/// of global dimension two, a sequential walk u w' v with u ending and v
/// starting on the support of m and w' the directed path between them.
inline SequentialWalkCertificate sequential_walk_from_uniserial(const TruncatedAlgebra& a, const Representation& m,
                                                                const DetectorConfig& cfg = {}) {
  a.require_admissible();
  require_monomial(a);
  const Quiver& q = a.quiver();
  auto gd = global_dimension(a);
  if (!gd || *gd != 2) throw Error(ErrorCode::PreconditionUnmet, "global dimension is not two");
  if (m.is_zero() || !is_uniserial(q, m)) throw Error(ErrorCode::PreconditionUnmet, "module is not uniserial");
  auto pd = proj_dim(a, m), id = inj_dim(a, m);
  if ((pd && *pd < 2) || (id && *id < 2)) throw Error(ErrorCode::PreconditionUnmet, "pd or id below two");

  // Follow a top generator down the radical series.
  auto layers = radical_layers(q, m);
  auto point_of = [](const std::vector<std::size_t>& layer) {
    for (std::size_t x = 0; x < layer.size(); ++x)
      if (layer[x]) return static_cast<int>(x);
    return -1;
  };
  std::vector<int> chain{point_of(layers[0])};
  std::vector<int> arrows;
  auto rad = radical_basis(q, m);
  const auto z0 = static_cast<std::size_t>(chain[0]);
  Matrix top = linalg::complement_units(rad[z0], m.dims[z0], m.field);
  std::vector<Scalar> v = top.row(0);
  for (std::size_t k = 1; k < layers.size(); ++k) {
    int next = point_of(layers[k]);
    bool moved = false;
    for (int ai : q.arrows_from(chain.back())) {
      if (q.arrow(ai).target != next) continue;
      auto img = detail::times(v, m.maps[static_cast<std::size_t>(ai)], m.field);
      if (std::all_of(img.begin(), img.end(), [](const Scalar& s) { return s.is_zero(); })) continue;
      v = img;
      arrows.push_back(ai);
      chain.push_back(next);
      moved = true;
      break;
    }
    if (!moved) throw Error(ErrorCode::InternalInconsistency, "uniserial module without a composition chain");
  }

  const auto& tops = a.top_relations();
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i; j < chain.size(); ++j)
      for (std::size_t ri = 0; ri < tops.size(); ++ri) {
        if (tops[ri].target() != chain[i]) continue;
        for (std::size_t si = 0; si < tops.size(); ++si) {
          if (tops[si].source() != chain[j]) continue;
          std::vector<Letter> ls;
          for (std::size_t k = i; k < j; ++k) ls.push_back({arrows[k], 1});
          Walk wp = detail::letters_walk(q, chain[i], ls);
          auto cert = make_certificate(q, tops[ri], tops[ri].branches().front(), tops[si], tops[si].branches().front(), wp,
                                       Orientation::Forward);
          cert.rho_index = ri;
          cert.sigma_index = si;
          if (is_reduced(cert.full_walk) && check_sequential(a, cert, cfg)) return cert;
        }
      }
  throw Error(ErrorCode::InternalInconsistency, "no sequential walk through the support of the uniserial module");
}

}  // namespace seqwalk

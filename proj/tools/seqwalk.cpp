#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "seqwalk/seqwalk.hpp"

using namespace seqwalk;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNotAdmissible = 3, kBound = 4, kInternal = 5 };

struct Options {
  std::string file;
  int max_walk = -1;
  int threads = 1;
  bool json_out = false;
  bool pairs = false, intertwined = false, csw = false;
  std::size_t cert = 0;
  std::string module;
  std::string dot;
};

TruncatedAlgebra load(const Options& o) {
  ParsedInput in = read_bound_quiver(o.file);
  TruncatedAlgebra a = build_auto(in.quiver, !in.truncation_given);
  if (!o.dot.empty()) {
    std::ofstream f(o.dot);
    f << dot_string(a.quiver(), in.quiver.name);
  }
  if (!a.admissible())
    throw Error(ErrorCode::NotAdmissible, "ideal is not admissible at truncation " + std::to_string(a.truncation()));
  return a;
}

DetectorConfig config(const TruncatedAlgebra& a, const Options& o) {
  DetectorConfig cfg;
  cfg.max_walk_len = o.max_walk > 0 ? o.max_walk : default_max_walk_len(a.quiver());
  cfg.max_band_len = cfg.max_walk_len;
  cfg.threads = std::max(1, o.threads);
  return cfg;
}

json tokens(const Quiver& q, const Walk& w) {
  if (w.is_trivial()) return json::array();
  return walk_tokens(q, w);
}

json cert_json(const Quiver& q, const SequentialWalkCertificate& c, std::size_t index) {
  return {{"index", index},
          {"rho", relation_string(q, c.rho)},
          {"sigma", relation_string(q, c.sigma)},
          {"u", tokens(q, c.u(q))},
          {"w_prime", tokens(q, c.w_prime)},
          {"v", tokens(q, c.v(q))},
          {"orientation", to_string(c.orientation)},
          {"full_walk", tokens(q, c.full_walk)}};
}

std::string dim_string(const std::optional<int>& d, int bound) {
  return d ? std::to_string(*d) : "> " + std::to_string(bound);
}

int cmd_check(const Options& o) {
  TruncatedAlgebra a = load(o);
  const Quiver& q = a.quiver();
  auto gd = global_dimension(a);
  if (o.json_out) {
    json tops = json::array();
    for (const auto& r : a.top_relations()) tops.push_back(relation_string(q, r));
    std::cout << json{{"name", a.bound_quiver().name},
                      {"points", q.point_count()},
                      {"arrows", q.arrow_count()},
                      {"truncation", a.truncation()},
                      {"dimension", a.dimension()},
                      {"admissible", true},
                      {"top_relations", tops},
                      {"global_dimension", gd ? json(*gd) : json(nullptr)}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "algebra " << a.bound_quiver().name << ": " << q.point_count() << " points, " << q.arrow_count() << " arrows\n";
  std::cout << "truncation " << a.truncation() << ", admissible\n";
  std::cout << "dim A = " << a.dimension() << "\n";
  for (std::size_t x = 0; x < q.point_count(); ++x) {
    std::cout << "  dim e" << q.point_name(static_cast<int>(x)) << " A =";
    std::size_t s = 0;
    for (std::size_t y = 0; y < q.point_count(); ++y) s += a.dimension(static_cast<int>(x), static_cast<int>(y));
    std::cout << " " << s << "\n";
  }
  std::cout << "top relations (" << a.top_relations().size() << "):\n";
  for (const auto& r : a.top_relations()) std::cout << "  " << relation_string(q, r) << "\n";
  std::cout << "global dimension " << dim_string(gd, static_cast<int>(a.dimension())) << "\n";
  return kOk;
}

int cmd_detect(const Options& o) {
  TruncatedAlgebra a = load(o);
  const Quiver& q = a.quiver();
  DetectorConfig cfg = config(a, o);
  json out = {{"bound", cfg.max_walk_len}};
  json items = json::array();
  std::string kind = "sequential_walks";
  if (o.csw) {
    kind = "c_sequential_walks";
    auto ext = relation_extension_quiver(a);
    const Quiver& eq = ext.quiver.quiver;
    auto found = detect_c_sequential_walks(a, cfg);
    for (std::size_t i = 0; i < found.size(); ++i) {
      const auto& c = found[i];
      if (o.json_out)
        items.push_back({{"index", i},
                         {"rho", relation_string(q, a.top_relations()[c.rho_index])},
                         {"sigma", relation_string(q, a.top_relations()[c.sigma_index])},
                         {"orientation", to_string(c.orientation)},
                         {"w_prime", tokens(q, c.w_prime)},
                         {"walk", tokens(eq, c.walk)}});
      else
        std::cout << "[" << i << "] " << walk_string(eq, c.walk) << "   (w' = " << walk_string(q, c.w_prime) << ")\n";
    }
  } else if (o.intertwined) {
    kind = "intertwined_double_zeros";
    auto found = detect_intertwined_double_zero(a, cfg);
    for (std::size_t i = 0; i < found.size(); ++i) {
      const auto& z = found[i];
      if (o.json_out) {
        json j = cert_json(q, z.cert, i);
        j["w1"] = tokens(q, z.w1);
        j["w2"] = tokens(q, z.w2);
        j["w3"] = tokens(q, z.w3);
        items.push_back(j);
      } else {
        std::cout << "[" << i << "] " << walk_string(q, z.cert.full_walk) << "   (band " << walk_string(q, z.w2) << ")\n";
      }
    }
  } else {
    if (o.pairs) kind = "sequential_pairs";
    auto found = o.pairs ? detect_sequential_pairs(a, cfg) : detect_sequential_walks(a, cfg);
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (o.json_out)
        items.push_back(cert_json(q, found[i], i));
      else
        std::cout << "[" << i << "] " << walk_string(q, found[i].full_walk) << "   (w' = " << walk_string(q, found[i].w_prime)
                  << ", " << to_string(found[i].orientation) << ")\n";
    }
    if (!o.json_out && found.empty()) std::cout << "none up to |w'| <= " << cfg.max_walk_len << "\n";
  }
  if (o.json_out) {
    out["kind"] = kind;
    out["certificates"] = items;
    std::cout << out.dump(2) << "\n";
  }
  return kOk;
}

int cmd_reduce(const Options& o) {
  TruncatedAlgebra a = load(o);
  const Quiver& q = a.quiver();
  auto certs = detect_sequential_walks(a, config(a, o));
  if (o.cert >= certs.size()) {
    std::cerr << "no certificate with index " << o.cert << " (" << certs.size() << " found)\n";
    return kBound;
  }
  const auto& c = certs[o.cert];
  StandardReduction red = standard_reduction(a, c);
  const BoundQuiver& b = red.presented.bound_quiver;
  std::cout << "# certificate " << o.cert << ": " << walk_string(q, c.full_walk) << "\n";
  std::cout << "# retained points:";
  for (int x : red.points) std::cout << " " << q.point_name(x);
  std::cout << "\n# dim eAe = " << red.eae.dimension() << ", cut " << red.cut.size() << " arrow(s), dim B = " << red.reduced.dimension()
            << "\n";
  std::cout << emit_bound_quiver(b);
  std::cout << "# w'' " << walk_string(b.quiver, red.w2) << "\n";
  Witness w = witness_for(a, c, o.cert);
  std::cout << "# pd M(w'') = " << dim_string(w.pd, -1) << ", id M(w'') = " << dim_string(w.id, -1) << "\n";
  return kOk;
}

int cmd_dims(const Options& o) {
  TruncatedAlgebra a = load(o);
  const Quiver& q = a.quiver();
  Representation m = build_module(a, parse_module_spec(q, o.module));
  const int bound = static_cast<int>(a.dimension());
  auto pd = proj_dim(a, m, bound), id = inj_dim(a, m, bound);
  if (o.json_out) {
    std::cout << json{{"module", o.module},
                      {"dims", m.dims},
                      {"pd", pd ? json(*pd) : json(nullptr)},
                      {"id", id ? json(*id) : json(nullptr)},
                      {"bound", bound}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "dimension vector " << dim_vector_string(q, m) << "\n";
    std::cout << "pd = " << dim_string(pd, bound) << "\n";
    std::cout << "id = " << dim_string(id, bound) << "\n";
  }
  return pd && id ? kOk : kBound;
}

int cmd_report(const Options& o) {
  TruncatedAlgebra a = load(o);
  const Quiver& q = a.quiver();
  DetectorConfig cfg = config(a, o);
  ShodReport rep = shod_obstruction_report(a, cfg);
  if (o.json_out) {
    json ws = json::array();
    for (const auto& w : rep.witnesses) {
      json j = cert_json(q, w.cert, w.cert_index);
      j["w2"] = tokens(w.reduced.quiver, w.w2);
      j["pd"] = w.pd ? json(*w.pd) : json(nullptr);
      j["id"] = w.id ? json(*w.id) : json(nullptr);
      ws.push_back(j);
    }
    json sk = json::array();
    for (const auto& s : rep.skipped) sk.push_back({{"index", s.cert_index}, {"error", to_string(s.code)}});
    std::cout << json{{"verdict", to_string(rep.verdict)},
                      {"bound", rep.max_walk_len},
                      {"certificates", rep.certificates.size()},
                      {"witnesses", ws},
                      {"skipped", sk}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "verdict " << to_string(rep.verdict) << "\n";
  if (rep.verdict == Verdict::Inconclusive) {
    std::cout << "no verified sequential walk with |w'| <= " << rep.max_walk_len << "\n";
    return kOk;
  }
  const Witness& w = rep.witnesses.front();
  std::cout << "sequential walk " << walk_string(q, w.cert.full_walk) << "\n";
  std::cout << "  u = " << walk_string(q, w.cert.u(q)) << ", w' = " << walk_string(q, w.cert.w_prime) << ", v = " << walk_string(q, w.cert.v(q))
            << "\n";
  std::cout << "standard reduction B (" << w.reduced.quiver.point_count() << " points, " << w.reduced.quiver.arrow_count()
            << " arrows), w'' = " << walk_string(w.reduced.quiver, w.w2) << "\n";
  std::cout << "pd M(w'') = " << dim_string(w.pd, -1) << ", id M(w'') = " << dim_string(w.id, -1) << "\n";
  std::cout << rep.witnesses.size() << " of " << rep.certificates.size() << " certificates verified";
  if (!rep.skipped.empty()) std::cout << ", " << rep.skipped.size() << " without a defined reduction";
  std::cout << "\n";
  return kOk;
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::NotAdmissible: return kNotAdmissible;
    case ErrorCode::PathExplosion: return kBound;
    case ErrorCode::InternalInconsistency:
    case ErrorCode::SegmentResidueZero:
    case ErrorCode::CutNotConsistent: return kInternal;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential walks and shod obstructions for bound quiver algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--dot", o.dot, "write the quiver in DOT format to this file");
  app.add_option("--threads", o.threads, "detector worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "build the algebra, dimensions and top relations");
  auto* detect = app.add_subcommand("detect", "list sequential walks");
  auto* reduce = app.add_subcommand("reduce", "standard reduction of one certificate");
  auto* dims = app.add_subcommand("dims", "projective and injective dimension of a module");
  auto* report = app.add_subcommand("report", "shod obstruction report");
  for (auto* s : {check, detect, reduce, dims, report}) {
    s->add_option("file", o.file, "bound quiver file")->required();
    s->add_option("--max-walk", o.max_walk, "bound on the letters of w'");
    s->add_flag("--json", o.json_out, "JSON output");
  }
  auto* g = detect->add_option_group("kind")->require_option(0, 1);
  g->add_flag("--pairs", o.pairs, "sequential pairs (monomial algebras)");
  g->add_flag("--intertwined", o.intertwined, "intertwined double zeros (string algebras)");
  g->add_flag("--csw", o.csw, "C-sequential walks in the relation extension");
  reduce->add_option("--cert", o.cert, "certificate index")->required();
  dims->add_option("--module", o.module, "simple:x | proj:x | inj:x | string:<walk>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    if (detect->parsed()) return cmd_detect(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (dims->parsed()) return cmd_dims(o);
    if (report->parsed()) return cmd_report(o);
  } catch (const ParseError& e) {
    std::cerr << o.file << ": " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return kUsage;
}

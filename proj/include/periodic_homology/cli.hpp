#pragma once

// Command implementations behind the periodic-homology executable. Each
// command returns its exit code and the JSON text it would print.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "periodic_homology/cell_complex.hpp"
#include "periodic_homology/errors.hpp"
#include "periodic_homology/field.hpp"
#include "periodic_homology/mvss.hpp"
#include "periodic_homology/periodic_builder.hpp"
#include "periodic_homology/wqg.hpp"

namespace periodic_homology::cli {

using Json = nlohmann::ordered_json;

struct CommandResult {
  int exit_code = 0;
  std::string out;  // stdout
  std::string err;  // stderr
};

/// Exit codes: 0 success, 1 domain failure, 2 usage or I/O.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error:
    case ErrorKind::invalid_argument:
      return 2;
    default:
      return 1;
  }
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Document {
  std::optional<WeightedQuotientGraph> graph;
  PeriodicComplexTemplate tmpl;

  bool is_wqg() const { return graph.has_value(); }
};

/// A document with a "vertices" key is a WQG, anything else a template.
inline Document parse_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::parse_error, ex.what());
  }
  Document out;
  if (doc.is_object() && doc.contains("vertices")) {
    out.graph = parse_wqg(doc);
    out.tmpl = from_wqg(*out.graph);
  } else {
    out.tmpl = parse_template(doc);
  }
  return out;
}

inline Document load_document(const std::string& path) { return parse_document(read_input(path)); }

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& ex) {
    Json j{{"error", "IOError"}, {"message", ex.what()}};
    return CommandResult{2, "", dump(j)};
  } catch (const Error& ex) {
    Json j{{"error", std::string(to_string(ex.kind()))}, {"message", ex.what()}};
    return CommandResult{exit_code_for(ex.kind()), "", dump(j)};
  }
}

/// Calls fn.template operator()<F>() for the field named by `field`:
/// "rational" or one of the supported primes.
template <class Fn>
auto with_field(const std::string& field, Fn&& fn) {
  if (field == "rational" || field == "Q") return fn.template operator()<Rational>();
  if (field == "2") return fn.template operator()<Zp<2>>();
  if (field == "3") return fn.template operator()<Zp<3>>();
  if (field == "5") return fn.template operator()<Zp<5>>();
  if (field == "7") return fn.template operator()<Zp<7>>();
  if (field == "11") return fn.template operator()<Zp<11>>();
  if (field == "46337") return fn.template operator()<Zp<46337>>();
  if (field == "65521") return fn.template operator()<Zp<65521>>();
  if (field == "2147483647") return fn.template operator()<Zp<2147483647u>>();
  throw Error(ErrorKind::invalid_argument,
              "unsupported field '" + field + "' (rational, 2, 3, 5, 7, 11, 46337, 65521, 2147483647)");
}

inline Json to_json(const LatticeIndex& idx) {
  if (!idx.finite) return "infinite";
  if (idx.value.fits_slong_p()) return idx.value.get_si();
  return idx.value.get_str();
}

inline Json to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Json path_json(const WeightedQuotientGraph& q, const EdgePath& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    steps.push_back(q.edge(s.edge).id + (s.direction == Direction::reverse ? "^-1" : ""));
  }
  return Json{{"start", q.vertices()[p.start]}, {"steps", steps}};
}

template <class F>
Json chain_json(const WindowComplex<F>& w, const PeriodicComplexTemplate& t, std::size_t q, const Chain<F>& c) {
  Json out = Json::array();
  for (const auto& e : c) {
    const auto& lab = w.labels[q][e.index];
    out.push_back(
        Json{{"cell", t.cell(lab.cell).id}, {"shift", lab.shift}, {"coeff", FieldTraits<F>::to_string(e.value)}});
  }
  return out;
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_validate(const std::string& path) {
  return guarded([&] {
    const auto doc = load_document(path);
    Json j;
    j["kind"] = doc.is_wqg() ? "wqg" : "template";
    j["d"] = doc.tmpl.d();
    std::vector<std::size_t> counts;
    for (std::size_t q = 0; q < doc.tmpl.dimensions(); ++q) counts.push_back(doc.tmpl.cells_of_dimension(q).size());
    j["cells_per_dimension"] = counts;
    j["offset_bound"] = offset_bound(doc.tmpl);
    const auto report = validate_template(doc.tmpl);
    j["valid"] = report.ok;
    Json v = Json::array();
    for (const auto& x : report.violations)
      v.push_back(Json{{"cell", x.cell}, {"face", x.face}, {"shift", x.shift}, {"coefficient", x.coefficient}});
    j["violations"] = v;
    if (!report.ok) {
      j["message"] = "BoundarySquareNonzero: " + report.describe();
      return CommandResult{1, dump(j), report.describe() + "\n"};
    }
    return CommandResult{0, dump(j), ""};
  });
}

struct WqgAnalyzeOptions {
  std::optional<ZVector> window;
  bool verify = false;
  std::size_t max_generators = 1000;
};

inline Json generator_report_json(const WeightedQuotientGraph& q, const GeneratorReport& rep, std::size_t cap) {
  Json comps = Json::array();
  Json h1 = Json::array();
  std::size_t emitted = 0, omitted = 0;
  for (std::size_t ci = 0; ci < rep.components.size(); ++ci) {
    const auto& c = rep.components[ci];
    Json jc;
    jc["component"] = ci;
    Json ps = Json::array();
    for (std::size_t i = 0; i < c.p.size(); ++i)
      ps.push_back(Json{{"name", "p" + std::to_string(i + 1)},
                        {"edge", q.edge(c.p[i].edge).id},
                        {"path", path_json(q, c.p[i].path)},
                        {"weight", c.p[i].weight}});
    jc["p"] = ps;
    Json ls = Json::array();
    for (std::size_t i = 0; i < c.ell.size(); ++i)
      ls.push_back(Json{{"name", "l" + std::to_string(i + 1)},
                        {"edge", q.edge(c.ell[i].edge).id},
                        {"path", path_json(q, c.ell[i].path)},
                        {"weight", c.ell[i].weight}});
    jc["l"] = ls;
    comps.push_back(jc);
    for (const auto& g : c.generators) {
      if (emitted >= cap) {
        ++omitted;
        continue;
      }
      ++emitted;
      Json jg;
      jg["component"] = ci;
      if (g.kind == GeneratorKind::commutator) {
        jg["kind"] = "commutator";
        jg["of"] = {"p" + std::to_string(g.j + 1), "p" + std::to_string(g.k + 1)};
      } else {
        jg["kind"] = "shortcut";
        jg["cycle_of"] = "l" + std::to_string(g.j + 1);
        jg["N"] = to_json(g.multiplier);
        Json cs = Json::array(), ds = Json::array();
        for (const auto& x : g.c) cs.push_back(to_json(x));
        for (const auto& x : g.d) ds.push_back(to_json(x));
        jg["c"] = cs;
        jg["d"] = ds;
        jg["relation_holds"] = shortcut_relation_holds(q, c, g);
      }
      jg["cycle"] = path_json(q, g.cycle);
      jg["weight"] = path_weight(q, g.cycle);
      h1.push_back(jg);
    }
  }
  Json out;
  out["components"] = comps;
  out["h1"] = h1;
  if (omitted > 0) out["truncated"] = Json{{"shown", emitted}, {"omitted", omitted}};
  return out;
}

inline CommandResult cmd_wqg_analyze(const std::string& path, const WqgAnalyzeOptions& opt = {}) {
  return guarded([&] {
    const auto doc = load_document(path);
    if (!doc.is_wqg()) throw Error(ErrorKind::invalid_argument, "wqg-analyze needs a WQG document");
    const auto& q = *doc.graph;
    Json j;
    j["d"] = q.d();
    j["vertices"] = q.vertex_count();
    j["edges"] = q.edge_count();
    const auto forest = spanning_forest(q);
    const auto lattices = weight_lattice(q);
    j["component_count"] = forest.size();
    Json comps = Json::array();
    bool finite = true;
    for (std::size_t i = 0; i < forest.size(); ++i) {
      Json jc;
      Json vs = Json::array();
      for (auto v : forest[i].vertices) vs.push_back(q.vertices()[v]);
      jc["vertices"] = vs;
      jc["root"] = q.vertices()[forest[i].root];
      Json te = Json::array();
      for (auto e : forest[i].tree_edges) te.push_back(q.edge(e).id);
      jc["tree_edges"] = te;
      Json gens = Json::array();
      for (auto e : forest[i].non_tree_edges) gens.push_back(fundamental_weight(q, forest[i], e));
      jc["weight_generators"] = gens;
      Json inv = Json::array();
      for (const auto& x : lattices[i].smith().invariant_factors()) inv.push_back(to_json(x));
      jc["smith_invariants"] = inv;
      const auto idx = lattices[i].index();
      jc["index"] = to_json(idx);
      if (idx.finite) {
        jc["coset_representatives"] = lattices[i].coset_representatives();
        jc["h0_representative_vertex"] = q.vertices()[forest[i].root];
      } else {
        finite = false;
      }
      comps.push_back(jc);
    }
    j["components"] = comps;
    j["beta0"] = to_json(betti0_periodic(q));
    if (finite) {
      j["h1_count"] = h1_generator_count(q);
      j["generators"] = generator_report_json(q, construct_generators(q), opt.max_generators);
    } else {
      j["h1_count"] = nullptr;
      j["h1_error"] = "InfiniteComponents";
    }
    int code = 0;
    if (opt.window) {
      const auto& n = *opt.window;
      const auto cb = corollary_betti(q, n);
      Json jw;
      jw["n"] = n;
      jw["beta0"] = to_json(cb.beta0);
      jw["beta1"] = to_json(cb.beta1);
      if (opt.verify) {
        const auto w = build_window<Rational>(doc.tmpl, n);
        auto b = betti_numbers(w.complex);
        b.resize(2, 0);
        const bool ok = BigInt(static_cast<unsigned long>(b[0])) == cb.beta0 &&
                        BigInt(static_cast<unsigned long>(b[1])) == cb.beta1;
        jw["verify"] = Json{{"window_betti", b}, {"matches", ok}};
        if (!ok) code = 1;
      }
      j["window"] = jw;
    }
    return CommandResult{code, dump(j), ""};
  });
}

struct HomologyOptions {
  ZVector n;
  Flavor flavor = Flavor::periodic;
  std::string field = "rational";
  std::size_t max_generators = 50;
};

inline CommandResult cmd_homology(const std::string& path, const HomologyOptions& opt) {
  return guarded([&] {
    const auto doc = load_document(path);
    require_valid(doc.tmpl);
    return with_field(opt.field, [&]<class F>() {
      const auto w = build_window<F>(doc.tmpl, opt.n, opt.flavor);
      const auto h = homology(w.complex);
      Json j;
      j["n"] = opt.n;
      j["flavor"] = to_string(opt.flavor);
      j["field"] = FieldTraits<F>::name();
      j["cells"] = w.complex.cell_counts();
      j["betti"] = h.betti;
      j["euler_characteristic"] = euler_characteristic(w.complex);
      Json gens = Json::array();
      std::size_t shown = 0, omitted = 0;
      for (std::size_t q = 0; q < h.generators.size(); ++q) {
        for (const auto& g : h.generators[q]) {
          if (shown >= opt.max_generators) {
            ++omitted;
            continue;
          }
          ++shown;
          gens.push_back(Json{{"degree", q}, {"support", chain_json(w, doc.tmpl, q, g)}});
        }
      }
      j["generators"] = gens;
      if (omitted > 0) j["truncated"] = Json{{"shown", shown}, {"omitted", omitted}};
      return CommandResult{0, dump(j), ""};
    });
  });
}

struct MvssOptions {
  ZVector n;
  std::string report = "all";  // toroidal | pages | all
  std::string field = "rational";
  std::size_t max_arity = 32;
  std::size_t max_generators = 50;
  bool orbits = true;
};

inline Json page_grid_json(const std::vector<std::vector<std::size_t>>& dims) {
  Json out = Json::array();
  for (std::size_t p = 0; p < dims.size(); ++p)
    for (std::size_t q = 0; q < dims[p].size(); ++q)
      if (dims[p][q] > 0) out.push_back(Json{{"p", p}, {"q", q}, {"dim", dims[p][q]}});
  return out;
}

/// Rows q from top to bottom, columns p left to right.
inline std::string page_text(const std::vector<std::vector<std::size_t>>& dims) {
  std::size_t Q = 0;
  for (const auto& col : dims) Q = std::max(Q, col.size());
  std::string out;
  for (std::size_t q = Q; q-- > 0;) {
    out += "q=" + std::to_string(q) + " |";
    for (std::size_t p = 0; p < dims.size(); ++p) out += " " + std::to_string(q < dims[p].size() ? dims[p][q] : 0);
    out += "\n";
  }
  return out;
}

inline CommandResult cmd_mvss(const std::string& path, const MvssOptions& opt) {
  return guarded([&] {
    if (opt.report != "toroidal" && opt.report != "pages" && opt.report != "all")
      throw Error(ErrorKind::invalid_argument, "--report must be toroidal, pages or all");
    const auto doc = load_document(path);
    require_valid(doc.tmpl);
    return with_field(opt.field, [&]<class F>() {
      const auto w = build_window<F>(doc.tmpl, opt.n);
      const auto mv = run_mayer_vietoris(doc.tmpl, w, SpectralOptions{}, opt.max_arity);
      Json j;
      j["n"] = opt.n;
      j["field"] = FieldTraits<F>::name();
      j["cover_elements"] = mv.cover.size();
      std::vector<std::size_t> simplices;
      for (const auto& s : mv.nerve->simplices) simplices.push_back(s.size());
      j["nerve_simplices"] = simplices;
      j["stabilization_page"] = mv.pages.stabilization;
      if (opt.report != "toroidal") {
        Json pages = Json::array();
        for (const auto& pg : mv.pages.pages)
          pages.push_back(Json{{"r", pg.r}, {"dims", page_grid_json(pg.dims)}, {"text", page_text(pg.dims)}});
        j["pages"] = pages;
      }
      j["e_infinity"] = page_grid_json(mv.pages.infinity().dims);
      const auto rec = reconstruct_homology(mv.pages, w.complex);
      const auto tot = total_complex_check(*mv.blowup, w.complex);
      j["godement"] = Json{{"einf_diagonal_sums", rec.einf_sum}, {"betti", rec.betti}, {"ok", rec.ok()}};
      j["total_complex"] = Json{{"betti", tot.total_betti}, {"agrees", tot.agrees}, {"ok", tot.ok()}};
      if (opt.report != "pages") {
        const auto entries = toroidal_report(w, rec, opt.orbits);
        Json tj = Json::array();
        std::size_t shown = 0;
        for (const auto& e : entries) {
          Json je{{"degree", e.degree}, {"filtration_level", e.level}, {"verdict", to_string(e.verdict)}};
          if (opt.orbits) je["orbit_span"] = e.orbit_span;
          if (shown < opt.max_generators) je["support"] = chain_json(w, doc.tmpl, e.degree, e.generator);
          ++shown;
          tj.push_back(je);
        }
        std::vector<std::size_t> candidates(w.complex.dimensions(), 0);
        for (const auto& e : entries)
          if (e.verdict == Verdict::toroidal_candidate) ++candidates[e.degree];
        j["toroidal"] = Json{{"generators", tj}, {"candidates_per_degree", candidates}};
      }
      const int code = rec.ok() && tot.ok() ? 0 : 1;
      return CommandResult{code, dump(j), ""};
    });
  });
}

struct ScalingOptions {
  std::vector<long long> sizes;
  std::size_t dim = 1;
  std::string field = "rational";
  double tolerance = 0.15;
};

inline CommandResult cmd_scaling(const std::string& path, const ScalingOptions& opt) {
  return guarded([&] {
    const auto doc = load_document(path);
    require_valid(doc.tmpl);
    return with_field(opt.field, [&]<class F>() {
      const auto fit = scaling_fit<F>(doc.tmpl, opt.sizes, opt.dim, opt.tolerance);
      Json j;
      j["dim"] = fit.degree;
      j["d"] = fit.d;
      j["offset_bound"] = fit.offset_bound;
      Json pts = Json::array();
      for (const auto& p : fit.points)
        pts.push_back(Json{{"n", p.n}, {"betti", p.betti}, {"local_image", p.local_image}, {"toroidal_candidates", p.toroidal}});
      j["points"] = pts;
      j["betti_exponent"] = fit.betti_exponent ? Json(*fit.betti_exponent) : Json(nullptr);
      j["toroidal_exponent"] = fit.toroidal_exponent ? Json(*fit.toroidal_exponent) : Json(nullptr);
      j["tolerance"] = fit.tolerance;
      j["betti_within_bound"] = fit.betti_within_bound;
      j["toroidal_within_bound"] = fit.toroidal_within_bound;
      j["warnings"] = fit.warnings;
      std::string err;
      for (const auto& wmsg : fit.warnings) err += "warning: " + wmsg + "\n";
      return CommandResult{0, dump(j), err};
    });
  });
}

}  // namespace periodic_homology::cli

#pragma once

// Unit-cell templates of d-periodic cell complexes and the finite windows
// X_n (periodic boundary) and Y_n (truncated) built from them.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "periodic_homology/cell_complex.hpp"
#include "periodic_homology/errors.hpp"
#include "periodic_homology/lattice_algebra.hpp"
#include "periodic_homology/wqg.hpp"

namespace periodic_homology {

struct BoundaryTerm {
  std::size_t face = 0;
  long long coeff = 0;
  ZVector shift;
};

struct TemplateCell {
  std::string id;
  std::size_t dim = 0;
  std::vector<BoundaryTerm> boundary;
};

/// Boundary term before face ids are resolved.
struct RawBoundaryTerm {
  std::string face;
  long long coeff = 0;
  ZVector shift;
};

struct RawCell {
  std::string id;
  long long dim = 0;
  std::vector<RawBoundaryTerm> boundary;
};

class PeriodicComplexTemplate {
 public:
  PeriodicComplexTemplate() = default;

  /// Resolves face ids. Throws DanglingFace for unknown faces and
  /// DimensionError for faces of the wrong dimension or shifts of the wrong
  /// length.
  PeriodicComplexTemplate(std::size_t d, const std::vector<RawCell>& raw) : d_(d) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].dim < 0) throw Error(ErrorKind::dimension_error, "cell '" + raw[i].id + "' has negative dimension");
      if (!index.emplace(raw[i].id, i).second)
        throw Error(ErrorKind::parse_error, "duplicate cell id '" + raw[i].id + "'");
    }
    for (const auto& rc : raw) {
      TemplateCell c;
      c.id = rc.id;
      c.dim = static_cast<std::size_t>(rc.dim);
      if (c.dim == 0 && !rc.boundary.empty())
        throw Error(ErrorKind::dimension_error, "0-cell '" + c.id + "' cannot have a boundary");
      for (const auto& t : rc.boundary) {
        auto it = index.find(t.face);
        if (it == index.end())
          throw Error(ErrorKind::dangling_face, "cell '" + c.id + "' references missing face '" + t.face + "'");
        if (static_cast<long long>(raw[it->second].dim) != rc.dim - 1)
          throw Error(ErrorKind::dimension_error, "face '" + t.face + "' of cell '" + c.id + "' has dimension " +
                                                      std::to_string(raw[it->second].dim) + ", expected " +
                                                      std::to_string(rc.dim - 1));
        if (t.shift.size() != d_)
          throw Error(ErrorKind::dimension_error, "shift on face '" + t.face + "' of cell '" + c.id + "' has length " +
                                                      std::to_string(t.shift.size()) + ", expected " + std::to_string(d_));
        c.boundary.push_back(BoundaryTerm{it->second, t.coeff, t.shift});
      }
      cells_.push_back(std::move(c));
    }
    index_ = std::move(index);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto q = cells_[i].dim;
      if (by_dim_.size() <= q) by_dim_.resize(q + 1);
      local_.push_back(by_dim_[q].size());
      by_dim_[q].push_back(i);
    }
  }

  std::size_t d() const { return d_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<TemplateCell>& cells() const { return cells_; }
  const TemplateCell& cell(std::size_t i) const { return cells_.at(i); }

  /// Number of dimensions (top dimension + 1), 0 for an empty template.
  std::size_t dimensions() const { return by_dim_.size(); }
  const std::vector<std::size_t>& cells_of_dimension(std::size_t q) const {
    static const std::vector<std::size_t> none;
    return q < by_dim_.size() ? by_dim_[q] : none;
  }
  /// Position of template cell i among the cells of its dimension.
  std::size_t local_index(std::size_t i) const { return local_.at(i); }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorKind::dangling_face, "unknown cell '" + id + "'");
    return it->second;
  }

 private:
  std::size_t d_ = 0;
  std::vector<TemplateCell> cells_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::vector<std::size_t> local_;
};

inline PeriodicComplexTemplate parse_template(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::parse_error, "template document must be a JSON object");
    const long long d = doc.at("d").get<long long>();
    if (d < 0) throw Error(ErrorKind::parse_error, "d must be nonnegative");
    std::vector<RawCell> cells;
    for (const auto& jc : doc.at("cells")) {
      RawCell c;
      c.id = jc.at("id").get<std::string>();
      c.dim = jc.at("dim").get<long long>();
      if (jc.contains("boundary")) {
        for (const auto& jt : jc.at("boundary")) {
          RawBoundaryTerm t;
          t.face = jt.at("face").get<std::string>();
          t.coeff = jt.at("coeff").get<long long>();
          t.shift = jt.contains("shift") ? jt.at("shift").get<ZVector>() : ZVector(static_cast<std::size_t>(d), 0);
          c.boundary.push_back(std::move(t));
        }
      }
      cells.push_back(std::move(c));
    }
    return PeriodicComplexTemplate(static_cast<std::size_t>(d), cells);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::parse_error, ex.what());
  }
}

inline PeriodicComplexTemplate parse_template(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::parse_error, ex.what());
  }
  return parse_template(doc);
}

/// Vertex cells (in vertex order) followed by edge cells (in edge order);
/// edge boundary is head shifted by the weight minus tail.
inline PeriodicComplexTemplate from_wqg(const WeightedQuotientGraph& q) {
  std::vector<RawCell> cells;
  for (const auto& v : q.vertices()) cells.push_back(RawCell{v, 0, {}});
  for (const auto& e : q.edges()) {
    RawCell c{e.id, 1, {}};
    c.boundary.push_back(RawBoundaryTerm{q.vertices()[e.head], 1, e.weight});
    c.boundary.push_back(RawBoundaryTerm{q.vertices()[e.tail], -1, ZVector(q.d(), 0)});
    cells.push_back(std::move(c));
  }
  return PeriodicComplexTemplate(q.d(), cells);
}

inline nlohmann::ordered_json template_to_json(const PeriodicComplexTemplate& t) {
  nlohmann::ordered_json doc;
  doc["d"] = t.d();
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : t.cells()) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["dim"] = c.dim;
    jc["boundary"] = nlohmann::ordered_json::array();
    for (const auto& b : c.boundary) {
      jc["boundary"].push_back({{"face", t.cell(b.face).id}, {"coeff", b.coeff}, {"shift", b.shift}});
    }
    doc["cells"].push_back(std::move(jc));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Validation

/// Group-ring element of Z[Z^d]: shift -> coefficient.
using ShiftPolynomial = std::map<ZVector, long long>;

/// Entries (face, cell) of the boundary matrix in dimension q as shift
/// polynomials.
using ShiftPolynomialMatrix = std::map<std::pair<std::size_t, std::size_t>, ShiftPolynomial>;

inline ShiftPolynomialMatrix shift_boundary(const PeriodicComplexTemplate& t, std::size_t q) {
  ShiftPolynomialMatrix m;
  for (auto c : t.cells_of_dimension(q)) {
    for (const auto& b : t.cell(c).boundary) {
      auto& poly = m[{b.face, c}];
      poly[b.shift] += b.coeff;
      if (poly[b.shift] == 0) poly.erase(b.shift);
    }
  }
  return m;
}

struct TemplateViolation {
  std::string cell;
  std::string face;  // the (q-2)-cell with nonzero coefficient
  ZVector shift;
  long long coefficient = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<TemplateViolation> violations;

  std::string describe() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += "boundary of boundary of '" + v.cell + "' has coefficient " + std::to_string(v.coefficient) +
             " on face '" + v.face + "' at shift (";
      for (std::size_t i = 0; i < v.shift.size(); ++i) out += (i ? "," : "") + std::to_string(v.shift[i]);
      out += ")";
    }
    return out;
  }
};

/// Convolves consecutive shift-polynomial boundaries and reports every
/// nonzero coefficient of the square.
inline ValidationReport validate_template(const PeriodicComplexTemplate& t) {
  ValidationReport report;
  for (std::size_t q = 2; q < t.dimensions(); ++q) {
    for (auto c : t.cells_of_dimension(q)) {
      std::map<std::pair<std::size_t, ZVector>, long long> acc;
      for (const auto& b : t.cell(c).boundary) {
        for (const auto& bb : t.cell(b.face).boundary) {
          ZVector s = b.shift;
          for (std::size_t i = 0; i < s.size(); ++i) s[i] += bb.shift[i];
          acc[{bb.face, s}] += b.coeff * bb.coeff;
        }
      }
      for (const auto& [key, coeff] : acc) {
        if (coeff != 0) {
          report.ok = false;
          report.violations.push_back(TemplateViolation{t.cell(c).id, t.cell(key.first).id, key.second, coeff});
        }
      }
    }
  }
  return report;
}

inline void require_valid(const PeriodicComplexTemplate& t) {
  auto report = validate_template(t);
  if (!report.ok) throw Error(ErrorKind::boundary_square_nonzero, report.describe());
}

/// Largest l-infinity norm of a boundary shift.
inline long long offset_bound(const PeriodicComplexTemplate& t) {
  long long m = 0;
  for (const auto& c : t.cells())
    for (const auto& b : c.boundary)
      for (auto x : b.shift) m = std::max(m, x < 0 ? -x : x);
  return m;
}

// ---------------------------------------------------------------------------
// Windows

enum class Flavor { periodic, truncated };

inline const char* to_string(Flavor f) { return f == Flavor::periodic ? "periodic" : "truncated"; }

struct CellLabel {
  std::size_t cell = 0;  // template cell index
  ZVector shift;
};

inline long long product(const ZVector& n) {
  long long v = 1;
  for (auto x : n) v *= x;
  return v;
}

inline void check_window_sizes(const ZVector& n, std::size_t d) {
  if (n.size() != d)
    throw Error(ErrorKind::dimension_mismatch,
                "window has " + std::to_string(n.size()) + " sizes, template has d = " + std::to_string(d));
  for (auto x : n)
    if (x < 1) throw Error(ErrorKind::invalid_argument, "window sizes must be positive");
}

inline ZVector reduce_shift(ZVector s, const ZVector& n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] %= n[i];
    if (s[i] < 0) s[i] += n[i];
  }
  return s;
}

/// Position of a reduced shift in lexicographic order (last coordinate fastest).
inline std::size_t shift_rank(const ZVector& s, const ZVector& n) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r = r * static_cast<std::size_t>(n[i]) + static_cast<std::size_t>(s[i]);
  return r;
}

/// All shifts of the box prod [0, n_i) in lexicographic order.
inline std::vector<ZVector> box_shifts(const ZVector& n) {
  std::vector<ZVector> out;
  ZVector s(n.size(), 0);
  const long long total = product(n);
  out.reserve(static_cast<std::size_t>(total));
  for (long long k = 0; k < total; ++k) {
    out.push_back(s);
    for (std::size_t i = n.size(); i > 0; --i) {
      if (++s[i - 1] < n[i - 1]) break;
      s[i - 1] = 0;
    }
  }
  return out;
}

template <class F>
struct WindowComplex {
  CellComplex<F> complex;
  std::vector<std::vector<CellLabel>> labels;  // per dimension
  ZVector n;
  Flavor flavor = Flavor::periodic;
  std::vector<std::size_t> local;                                  // template cell -> index within its dimension
  std::vector<std::map<std::pair<std::size_t, ZVector>, std::size_t>> lookup;  // truncated flavor only

  /// Window index of (template cell, shift); shifts are reduced for X_n.
  std::size_t index_of(std::size_t dim, std::size_t cell, const ZVector& shift) const {
    if (flavor == Flavor::periodic) {
      const std::size_t volume = static_cast<std::size_t>(product(n));
      return local.at(cell) * volume + shift_rank(reduce_shift(shift, n), n);
    }
    auto it = lookup.at(dim).find({cell, shift});
    if (it == lookup.at(dim).end()) throw Error(ErrorKind::invalid_argument, "cell is not part of the window");
    return it->second;
  }

  /// Chain translated by t (periodic flavor only).
  Chain<F> translate(std::size_t dim, const Chain<F>& c, const ZVector& t) const {
    if (flavor != Flavor::periodic) throw Error(ErrorKind::invalid_argument, "translations need a periodic window");
    std::vector<Entry<F>> out;
    for (const auto& e : c) {
      const auto& lab = labels.at(dim).at(e.index);
      ZVector s = lab.shift;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
      out.push_back(Entry<F>{index_of(dim, lab.cell, s), e.value});
    }
    return canonicalize(std::move(out));
  }
};

template <class F>
WindowComplex<F> build_window(const PeriodicComplexTemplate& t, const ZVector& n, Flavor flavor = Flavor::periodic) {
  require_valid(t);
  check_window_sizes(n, t.d());
  WindowComplex<F> w;
  w.n = n;
  w.flavor = flavor;
  w.labels.resize(t.dimensions());
  for (std::size_t i = 0; i < t.cell_count(); ++i) w.local.push_back(t.local_index(i));

  if (flavor == Flavor::periodic) {
    const auto shifts = box_shifts(n);
    for (std::size_t q = 0; q < t.dimensions(); ++q)
      for (auto c : t.cells_of_dimension(q))
        for (const auto& s : shifts) w.labels[q].push_back(CellLabel{c, s});
  } else {
    // Box translates plus the iterated closure of their faces.
    std::vector<std::set<std::pair<std::size_t, ZVector>>> cells(t.dimensions());
    const auto shifts = box_shifts(n);
    for (std::size_t q = 0; q < t.dimensions(); ++q)
      for (auto c : t.cells_of_dimension(q))
        for (const auto& s : shifts) cells[q].insert({t.local_index(c), s});
    for (std::size_t q = t.dimensions(); q-- > 1;) {
      for (const auto& [lc, s] : cells[q]) {
        for (const auto& b : t.cell(t.cells_of_dimension(q)[lc]).boundary) {
          ZVector fs = s;
          for (std::size_t i = 0; i < fs.size(); ++i) fs[i] += b.shift[i];
          cells[q - 1].insert({t.local_index(b.face), fs});
        }
      }
    }
    w.lookup.resize(t.dimensions());
    for (std::size_t q = 0; q < t.dimensions(); ++q) {
      for (const auto& [lc, s] : cells[q]) {
        const auto c = t.cells_of_dimension(q)[lc];
        w.lookup[q][{c, s}] = w.labels[q].size();
        w.labels[q].push_back(CellLabel{c, s});
      }
    }
  }

  std::vector<std::size_t> counts;
  for (const auto& l : w.labels) counts.push_back(l.size());
  std::vector<SparseMatrix<F>> boundaries;
  for (std::size_t q = 1; q < t.dimensions(); ++q) {
    SparseMatrix<F> m(counts[q - 1], counts[q]);
    for (std::size_t j = 0; j < counts[q]; ++j) {
      const auto& lab = w.labels[q][j];
      std::vector<Entry<F>> col;
      for (const auto& b : t.cell(lab.cell).boundary) {
        ZVector s = lab.shift;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += b.shift[i];
        col.push_back(Entry<F>{w.index_of(q - 1, b.face, s), field_from_int<F>(b.coeff)});
      }
      m.columns[j] = canonicalize(std::move(col));
    }
    boundaries.push_back(std::move(m));
  }
  w.complex = CellComplex<F>(std::move(counts), std::move(boundaries), true);
  return w;
}

/// (c, t) -> (c, t mod n) from X_{n'} to X_n.
template <class F>
ChainMap<F> covering_projection(const WindowComplex<F>& source, const WindowComplex<F>& target) {
  if (source.flavor != Flavor::periodic || target.flavor != Flavor::periodic)
    throw Error(ErrorKind::invalid_argument, "covering projections need periodic windows");
  if (source.n.size() != target.n.size()) throw Error(ErrorKind::dimension_mismatch, "window ranks differ");
  for (std::size_t i = 0; i < source.n.size(); ++i) {
    if (source.n[i] % target.n[i] != 0)
      throw Error(ErrorKind::divisibility_error, "target size " + std::to_string(target.n[i]) +
                                                     " does not divide source size " + std::to_string(source.n[i]));
  }
  ChainMap<F> f;
  const F one = field_from_int<F>(1);
  for (std::size_t q = 0; q < source.labels.size(); ++q) {
    SparseMatrix<F> m(target.complex.cell_count(q), source.complex.cell_count(q));
    for (std::size_t j = 0; j < source.labels[q].size(); ++j) {
      const auto& lab = source.labels[q][j];
      m.columns[j] = SparseVec<F>{Entry<F>{target.index_of(q, lab.cell, lab.shift), one}};
    }
    f.maps.push_back(std::move(m));
  }
  if (!is_chain_map(f, source.complex, target.complex))
    throw Error(ErrorKind::not_a_chain_map, "projection does not commute with boundaries");
  return f;
}

/// Lift of a quotient path into X_n for a window built from from_wqg(q),
/// starting at the given shift of the start vertex.
template <class F>
Chain<F> lift_path(const WeightedQuotientGraph& q, const WindowComplex<F>& window, const EdgePath& path,
                   ZVector start_shift = {}) {
  path_end(q, path);
  if (start_shift.empty()) start_shift.assign(q.d(), 0);
  const std::size_t nu = q.vertex_count();
  ZVector s = std::move(start_shift);
  std::vector<Entry<F>> out;
  for (const auto& step : path.steps) {
    const auto& e = q.edge(step.edge);
    if (step.direction == Direction::forward) {
      out.push_back(Entry<F>{window.index_of(1, nu + step.edge, s), field_from_int<F>(1)});
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += e.weight[i];
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) s[i] -= e.weight[i];
      out.push_back(Entry<F>{window.index_of(1, nu + step.edge, s), field_from_int<F>(-1)});
    }
  }
  return canonicalize(std::move(out));
}

}  // namespace periodic_homology

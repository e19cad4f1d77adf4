#pragma once

// Mayer-Vietoris spectral sequence of a periodic window covered by translated
// unit boxes: cover, nerve, blow-up bicomplex, pages through E^infinity,
// reconstruction of H(X_n) and toroidal-cycle heuristics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "periodic_homology/cell_complex.hpp"
#include "periodic_homology/errors.hpp"
#include "periodic_homology/periodic_builder.hpp"
#include "periodic_homology/sparse.hpp"
#include "periodic_homology/threads.hpp"

namespace periodic_homology {

// ---------------------------------------------------------------------------
// Cover

/// Subcomplexes of a window; elements[e][q] lists window q-cells, sorted.
struct Cover {
  std::vector<ZVector> shifts;  // one label per element (empty for user covers)
  std::vector<std::vector<std::vector<std::size_t>>> elements;

  std::size_t size() const { return elements.size(); }
};

/// Checks that every element is closed under faces and that the union is
/// the whole complex.
template <class F>
void check_cover(const Cover& cover, const CellComplex<F>& x) {
  std::vector<std::vector<char>> covered(x.dimensions());
  for (std::size_t q = 0; q < x.dimensions(); ++q) covered[q].assign(x.cell_count(q), 0);
  for (std::size_t e = 0; e < cover.size(); ++e) {
    const auto& el = cover.elements[e];
    if (el.size() > x.dimensions()) throw Error(ErrorKind::invalid_argument, "cover element has too many dimensions");
    for (std::size_t q = 0; q < el.size(); ++q) {
      if (!std::is_sorted(el[q].begin(), el[q].end()))
        throw Error(ErrorKind::invalid_argument, "cover element cells must be sorted");
      for (auto c : el[q]) {
        if (c >= x.cell_count(q)) throw Error(ErrorKind::invalid_argument, "cover element cell out of range");
        covered[q][c] = 1;
        if (q == 0) continue;
        for (const auto& f : x.boundary_ref(q).columns[c]) {
          if (!std::binary_search(el[q - 1].begin(), el[q - 1].end(), f.index))
            throw Error(ErrorKind::invalid_argument,
                        "cover element " + std::to_string(e) + " is not closed under faces");
        }
      }
    }
  }
  for (std::size_t q = 0; q < x.dimensions(); ++q)
    for (std::size_t c = 0; c < covered[q].size(); ++c)
      if (!covered[q][c]) throw Error(ErrorKind::invalid_argument, "cover misses a " + std::to_string(q) + "-cell");
}

/// Shifts of the vertices in the closure of each template cell, relative to
/// the cell itself.
inline std::vector<std::set<ZVector>> vertex_extents(const PeriodicComplexTemplate& t) {
  std::vector<std::set<ZVector>> ext(t.cell_count());
  for (std::size_t q = 0; q < t.dimensions(); ++q) {
    for (auto c : t.cells_of_dimension(q)) {
      if (q == 0) {
        ext[c].insert(ZVector(t.d(), 0));
        continue;
      }
      for (const auto& b : t.cell(c).boundary) {
        for (const auto& v : ext[b.face]) {
          ZVector s = v;
          for (std::size_t i = 0; i < s.size(); ++i) s[i] += b.shift[i];
          ext[c].insert(std::move(s));
        }
      }
    }
  }
  return ext;
}

/// One element per box shift t: the cells whose closure fits, after choosing
/// lifts, in the box t + [0, W]^d, W being the largest extent of a template
/// cell. For cubical templates this is the closed unit cube at t.
template <class F>
Cover build_cover(const PeriodicComplexTemplate& t, const WindowComplex<F>& w) {
  if (w.flavor != Flavor::periodic) throw Error(ErrorKind::invalid_argument, "covers are built on periodic windows");
  const std::size_t d = t.d();
  const auto ext = vertex_extents(t);
  std::vector<ZVector> lo(t.cell_count(), ZVector(d, 0)), span(t.cell_count(), ZVector(d, 0));
  long long width = 0;
  for (std::size_t c = 0; c < t.cell_count(); ++c) {
    if (ext[c].empty()) continue;
    for (std::size_t i = 0; i < d; ++i) {
      long long a = ext[c].begin()->at(i), b = a;
      for (const auto& v : ext[c]) {
        a = std::min(a, v[i]);
        b = std::max(b, v[i]);
      }
      lo[c][i] = a;
      span[c][i] = b - a;
      width = std::max(width, b - a);
    }
  }

  Cover cover;
  cover.shifts = box_shifts(w.n);
  cover.elements.assign(cover.shifts.size(), std::vector<std::vector<std::size_t>>(w.labels.size()));
  for (std::size_t q = 0; q < w.labels.size(); ++q) {
    for (std::size_t j = 0; j < w.labels[q].size(); ++j) {
      const auto& lab = w.labels[q][j];
      // Admissible box coordinates per axis.
      std::vector<std::vector<long long>> axes(d);
      for (std::size_t i = 0; i < d; ++i) {
        std::set<long long> vals;
        for (long long r = 0; r + span[lab.cell][i] <= width && r < w.n[i]; ++r) {
          long long v = (lab.shift[i] + lo[lab.cell][i] - r) % w.n[i];
          if (v < 0) v += w.n[i];
          vals.insert(v);
        }
        axes[i].assign(vals.begin(), vals.end());
      }
      // Cartesian product of the axis choices.
      std::vector<std::size_t> pick(d, 0);
      bool empty = std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); });
      while (!empty) {
        ZVector s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = axes[i][pick[i]];
        cover.elements[shift_rank(s, w.n)][q].push_back(j);
        std::size_t i = d;
        while (i > 0) {
          --i;
          if (++pick[i] < axes[i].size()) break;
          pick[i] = 0;
          if (i == 0) empty = true;
        }
        if (d == 0) break;
      }
    }
  }
  return cover;
}

// ---------------------------------------------------------------------------
// Nerve

struct Nerve {
  std::size_t element_count = 0;
  /// simplices[p]: sorted element lists of size p+1, lexicographic.
  std::vector<std::vector<std::vector<std::size_t>>> simplices;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
  /// cells[p][s][q]: window q-cells of the intersection of simplex s, sorted.
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> cells;

  std::size_t dimensions() const { return simplices.size(); }

  std::size_t simplex_index(const std::vector<std::size_t>& s) const {
    const auto& m = index.at(s.size() - 1);
    auto it = m.find(s);
    if (it == m.end()) throw Error(ErrorKind::invalid_argument, "not a simplex of the nerve");
    return it->second;
  }
};

inline Nerve nerve(const Cover& cover, std::size_t max_arity = 32) {
  if (max_arity < 1) throw Error(ErrorKind::invalid_argument, "max_arity must be at least 1");
  std::size_t dims = 0;
  for (const auto& el : cover.elements) dims = std::max(dims, el.size());
  // Membership lists per cell.
  std::vector<std::vector<std::vector<std::size_t>>> member(dims);
  for (std::size_t e = 0; e < cover.size(); ++e) {
    for (std::size_t q = 0; q < cover.elements[e].size(); ++q) {
      for (auto c : cover.elements[e][q]) {
        if (member[q].size() <= c) member[q].resize(c + 1);
        member[q][c].push_back(e);
      }
    }
  }
  std::set<std::vector<std::size_t>> maximal;
  for (const auto& mq : member)
    for (const auto& s : mq) {
      if (s.size() > max_arity)
        throw Error(ErrorKind::arity_overflow, "a cell lies in " + std::to_string(s.size()) +
                                                   " cover elements, above the cap " + std::to_string(max_arity));
      if (!s.empty()) maximal.insert(s);
    }
  if (!maximal.empty() && maximal.rbegin()->size() > 0) {
    std::size_t largest = 0;
    for (const auto& s : maximal) largest = std::max(largest, s.size());
    if (largest > 30) throw Error(ErrorKind::arity_overflow, "intersection arity too large to enumerate");
  }

  auto for_each_subset = [](const std::vector<std::size_t>& s, auto&& fn) {
    const std::uint64_t total = std::uint64_t{1} << s.size();
    std::vector<std::size_t> sub;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      sub.clear();
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask >> i & 1u) sub.push_back(s[i]);
      fn(sub);
    }
  };

  std::vector<std::set<std::vector<std::size_t>>> by_dim;
  for (const auto& s : maximal) {
    for_each_subset(s, [&](const std::vector<std::size_t>& sub) {
      if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
      by_dim[sub.size() - 1].insert(sub);
    });
  }
  Nerve n;
  n.element_count = cover.size();
  n.simplices.resize(by_dim.size());
  n.index.resize(by_dim.size());
  n.cells.resize(by_dim.size());
  for (std::size_t p = 0; p < by_dim.size(); ++p) {
    for (const auto& s : by_dim[p]) {
      n.index[p][s] = n.simplices[p].size();
      n.simplices[p].push_back(s);
    }
    n.cells[p].assign(n.simplices[p].size(), std::vector<std::vector<std::size_t>>(dims));
  }
  for (std::size_t q = 0; q < dims; ++q) {
    for (std::size_t c = 0; c < member[q].size(); ++c) {
      for_each_subset(member[q][c], [&](const std::vector<std::size_t>& sub) {
        const auto p = sub.size() - 1;
        n.cells[p][n.index[p].at(sub)][q].push_back(c);
      });
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Blow-up bicomplex

/// Subcomplex on the given sorted cells (closed under faces).
template <class F>
CellComplex<F> subcomplex(const CellComplex<F>& x, const std::vector<std::vector<std::size_t>>& cells) {
  std::vector<std::size_t> counts(x.dimensions(), 0);
  for (std::size_t q = 0; q < cells.size() && q < counts.size(); ++q) counts[q] = cells[q].size();
  std::vector<SparseMatrix<F>> boundaries;
  for (std::size_t q = 1; q < counts.size(); ++q) {
    SparseMatrix<F> m(counts[q - 1], counts[q]);
    for (std::size_t j = 0; j < counts[q]; ++j) {
      SparseVec<F> col;
      for (const auto& e : x.boundary_ref(q).columns[cells[q][j]]) {
        auto it = std::lower_bound(cells[q - 1].begin(), cells[q - 1].end(), e.index);
        if (it == cells[q - 1].end() || *it != e.index)
          throw Error(ErrorKind::invalid_complex, "subcomplex is not closed under faces");
        col.push_back(Entry<F>{static_cast<std::size_t>(it - cells[q - 1].begin()), e.value});
      }
      m.columns[j] = canonicalize(std::move(col));
    }
    boundaries.push_back(std::move(m));
  }
  return CellComplex<F>(std::move(counts), std::move(boundaries), false);
}

/// Includes a local chain of a subcomplex into the ambient complex.
template <class F>
Chain<F> include_chain(const std::vector<std::size_t>& cells, const Chain<F>& local) {
  Chain<F> out;
  out.reserve(local.size());
  for (const auto& e : local) out.push_back(Entry<F>{cells[e.index], e.value});
  return out;
}

template <class F>
struct BlowupComplex {
  std::shared_ptr<const Nerve> nerve;
  std::size_t p_count = 0;  // nerve dimensions
  std::size_t q_count = 0;  // complex dimensions
  /// offset[p][q][s]: first basis index of simplex s; one extra entry at the end.
  std::vector<std::vector<std::vector<std::size_t>>> offset;
  std::vector<std::vector<CellComplex<F>>> local;  // [p][s]
  std::vector<std::vector<SparseMatrix<F>>> d0;    // [p][q]: E0(p,q) -> E0(p,q-1)
  std::vector<std::vector<SparseMatrix<F>>> d1;    // [p][q]: E0(p,q) -> E0(p-1,q)

  std::size_t dim(std::size_t p, std::size_t q) const {
    if (p >= p_count || q >= q_count) return 0;
    return offset[p][q].back();
  }

  /// Which simplex block a basis index at (p, q) belongs to.
  std::size_t block_of(std::size_t p, std::size_t q, std::size_t index) const {
    const auto& off = offset[p][q];
    return static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), index) - off.begin()) - 1;
  }

  SparseVec<F> apply_d0(std::size_t p, std::size_t q, const SparseVec<F>& x) const {
    if (q == 0 || x.empty()) return {};
    return apply(d0[p][q], x);
  }
  SparseVec<F> apply_d1(std::size_t p, std::size_t q, const SparseVec<F>& x) const {
    if (p == 0 || x.empty()) return {};
    return apply(d1[p][q], x);
  }
};

struct BicomplexCheck {
  bool d0_square = true;
  bool d1_square = true;
  bool anticommute = true;

  bool ok() const { return d0_square && d1_square && anticommute; }
};

template <class F>
BicomplexCheck check_bicomplex(const BlowupComplex<F>& b) {
  BicomplexCheck out;
  for (std::size_t p = 0; p < b.p_count; ++p) {
    for (std::size_t q = 0; q < b.q_count; ++q) {
      for (std::size_t i = 0; i < b.dim(p, q); ++i) {
        const auto x = unit_vector<F>(i);
        const auto a = b.apply_d0(p, q, x);
        const auto c = b.apply_d1(p, q, x);
        if (q >= 1 && !b.apply_d0(p, q - 1, a).empty()) out.d0_square = false;
        if (p >= 1 && !b.apply_d1(p - 1, q, c).empty()) out.d1_square = false;
        if (p >= 1 && q >= 1) {
          auto s = b.apply_d1(p, q - 1, a);
          axpy(s, field_from_int<F>(1), b.apply_d0(p - 1, q, c));
          if (!s.empty()) out.anticommute = false;
        }
      }
    }
  }
  return out;
}

/// Basis (simplex, cell in its intersection); d0 is the cell boundary and
/// d1(s, c) = (-1)^q sum_i (-1)^i (s minus its i-th vertex, c).
template <class F>
BlowupComplex<F> blowup(const CellComplex<F>& x, std::shared_ptr<const Nerve> nv, bool verify = true) {
  BlowupComplex<F> b;
  const Nerve& n = *nv;
  b.nerve = nv;
  b.p_count = n.dimensions();
  b.q_count = x.dimensions();
  b.offset.resize(b.p_count);
  b.local.resize(b.p_count);
  for (std::size_t p = 0; p < b.p_count; ++p) {
    const auto count = n.simplices[p].size();
    b.offset[p].assign(b.q_count, std::vector<std::size_t>(count + 1, 0));
    for (std::size_t q = 0; q < b.q_count; ++q)
      for (std::size_t s = 0; s < count; ++s)
        b.offset[p][q][s + 1] = b.offset[p][q][s] + (q < n.cells[p][s].size() ? n.cells[p][s][q].size() : 0);
    b.local[p].resize(count);
    parallel_for(count, [&](std::size_t s) { b.local[p][s] = subcomplex(x, n.cells[p][s]); });
  }

  b.d0.resize(b.p_count);
  b.d1.resize(b.p_count);
  for (std::size_t p = 0; p < b.p_count; ++p) {
    b.d0[p].resize(b.q_count);
    b.d1[p].resize(b.q_count);
    for (std::size_t q = 0; q < b.q_count; ++q) {
      auto& m0 = b.d0[p][q];
      m0 = SparseMatrix<F>(q > 0 ? b.dim(p, q - 1) : 0, b.dim(p, q));
      if (q > 0) {
        for (std::size_t s = 0; s < n.simplices[p].size(); ++s) {
          const auto& loc = b.local[p][s].boundary_ref(q);
          for (std::size_t j = 0; j < loc.cols; ++j)
            m0.columns[b.offset[p][q][s] + j] = shifted(loc.columns[j], b.offset[p][q - 1][s]);
        }
      }
      auto& m1 = b.d1[p][q];
      m1 = SparseMatrix<F>(p > 0 ? b.dim(p - 1, q) : 0, b.dim(p, q));
      if (p == 0) continue;
      const long long qsign = q % 2 == 0 ? 1 : -1;
      for (std::size_t s = 0; s < n.simplices[p].size(); ++s) {
        const auto& sigma = n.simplices[p][s];
        std::vector<std::size_t> faces(p + 1);
        for (std::size_t i = 0; i <= p; ++i) {
          auto tau = sigma;
          tau.erase(tau.begin() + static_cast<long>(i));
          faces[i] = n.index[p - 1].at(tau);
        }
        const auto& mine = n.cells[p][s][q];
        for (std::size_t j = 0; j < mine.size(); ++j) {
          std::vector<Entry<F>> col;
          for (std::size_t i = 0; i <= p; ++i) {
            const auto& theirs = n.cells[p - 1][faces[i]][q];
            auto it = std::lower_bound(theirs.begin(), theirs.end(), mine[j]);
            const std::size_t local = static_cast<std::size_t>(it - theirs.begin());
            const long long sign = qsign * (i % 2 == 0 ? 1 : -1);
            col.push_back(Entry<F>{b.offset[p - 1][q][faces[i]] + local, field_from_int<F>(sign)});
          }
          m1.columns[b.offset[p][q][s] + j] = canonicalize(std::move(col));
        }
      }
    }
  }
  if (verify && !check_bicomplex(b).ok())
    throw Error(ErrorKind::anticommutation_failure, "blow-up differentials do not form a bicomplex");
  return b;
}

// ---------------------------------------------------------------------------
// Spectral sequence

/// parts[i] lies in E0(p - i, q + i) for a zig-zag starting at (p, q).
template <class F>
struct ZigZag {
  std::vector<SparseVec<F>> parts;
};

template <class F>
struct PositionState {
  std::vector<ZigZag<F>> z;           // spans Z^r as E1 classes
  std::vector<SparseVec<F>> z_class;  // E1 coordinates of parts[0]
  std::vector<ZigZag<F>> b;           // zig-zags whose differential produced each B^r generator
  std::vector<SparseVec<F>> b_class;  // B^r generators in E1 coordinates
};

struct SpectralOptions {
  /// Builds the page differentials on complement bases and checks that
  /// consecutive differentials compose to zero and rank bookkeeping holds.
  bool verify_differentials = false;
  /// Adds random cycles to every boundary preimage (well-definedness check).
  std::optional<std::uint64_t> perturb_seed;
};

struct PageTable {
  std::size_t r = 0;
  std::vector<std::vector<std::size_t>> dims;  // [p][q]
};

template <class F>
struct SpectralSequenceState {
  std::shared_ptr<const BlowupComplex<F>> blowup;
  std::size_t stabilization = 0;  // R: E^R = E^infinity everywhere
  std::vector<PageTable> pages;   // r = 0 .. R
  std::vector<std::vector<PositionState<F>>> final_state;  // page R
  std::vector<std::vector<std::size_t>> e1_dim;
  bool differentials_square_zero = true;
  bool rank_bookkeeping = true;
  std::size_t differentials_checked = 0;

  const PageTable& infinity() const { return pages.back(); }

  std::size_t dim(std::size_t r, std::size_t p, std::size_t q) const {
    const auto& t = pages.at(std::min(r, pages.size() - 1));
    if (p >= t.dims.size() || q >= t.dims[p].size()) return 0;
    return t.dims[p][q];
  }
};

inline std::size_t stabilization_index(std::size_t p, std::size_t q) { return std::max<std::size_t>(p + 1, q + 2); }

namespace detail {

template <class F>
class E1Space {
 public:
  E1Space(const BlowupComplex<F>& b) : b_(b) {
    basis_.resize(b.p_count);
    offset_.resize(b.p_count);
    for (std::size_t p = 0; p < b.p_count; ++p) {
      const auto count = b.local[p].size();
      basis_[p].resize(count);
      parallel_for(count, [&](std::size_t s) {
        for (std::size_t q = 0; q < b.q_count; ++q) basis_[p][s].emplace_back(b.local[p][s], q);
      });
      offset_[p].assign(b.q_count, std::vector<std::size_t>(count + 1, 0));
      for (std::size_t q = 0; q < b.q_count; ++q)
        for (std::size_t s = 0; s < count; ++s)
          offset_[p][q][s + 1] = offset_[p][q][s] + basis_[p][s][q].dimension();
    }
  }

  std::size_t dim(std::size_t p, std::size_t q) const {
    if (p >= b_.p_count || q >= b_.q_count) return 0;
    return offset_[p][q].back();
  }

  const HomologyBasis<F>& basis(std::size_t p, std::size_t s, std::size_t q) const { return basis_[p][s][q]; }
  std::size_t class_offset(std::size_t p, std::size_t q, std::size_t s) const { return offset_[p][q][s]; }

  struct Decomposition {
    SparseVec<F> cls;
    SparseVec<F> preimage;  // in E0(p, q+1)
  };

  /// E1 class of a d0-cycle y in E0(p, q), with a d0-preimage of the rest.
  Decomposition decompose(std::size_t p, std::size_t q, const SparseVec<F>& y) const {
    Decomposition out;
    std::size_t i = 0;
    while (i < y.size()) {
      const auto s = b_.block_of(p, q, y[i].index);
      const auto start = b_.offset[p][q][s];
      const auto end = b_.offset[p][q][s + 1];
      SparseVec<F> local;
      while (i < y.size() && y[i].index < end) {
        local.push_back(Entry<F>{y[i].index - start, y[i].value});
        ++i;
      }
      auto dec = basis_[p][s][q].decompose(local);
      const auto co = offset_[p][q][s];
      for (std::size_t k = 0; k < dec.coordinates.size(); ++k)
        if (!is_zero(dec.coordinates[k])) out.cls.push_back(Entry<F>{co + k, dec.coordinates[k]});
      if (!dec.preimage.empty()) {
        const auto po = b_.offset[p][q + 1][s];
        for (auto& e : dec.preimage) out.preimage.push_back(Entry<F>{e.index + po, std::move(e.value)});
      }
    }
    return out;
  }

  /// Chain in E0(p, q) representing E1 basis element k.
  SparseVec<F> representative(std::size_t p, std::size_t q, std::size_t k) const {
    const auto& off = offset_[p][q];
    const auto s = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), k) - off.begin()) - 1;
    return shifted(basis_[p][s][q].generators()[k - off[s]], b_.offset[p][q][s]);
  }

 private:
  const BlowupComplex<F>& b_;
  std::vector<std::vector<std::vector<HomologyBasis<F>>>> basis_;  // [p][s][q]
  std::vector<std::vector<std::vector<std::size_t>>> offset_;      // [p][q][s]
};

template <class F>
SparseVec<F> combine(const std::vector<std::pair<F, const SparseVec<F>*>>& terms) {
  SparseVec<F> out;
  for (const auto& [c, v] : terms) axpy(out, c, *v);
  return out;
}

/// Indices of z_class entries independent modulo b_class.
template <class F>
std::vector<std::size_t> complement_indices(const PositionState<F>& st, std::size_t dim) {
  if (st.z.size() == st.b.size()) return {};
  Echelon<F> e(dim);
  for (const auto& b : st.b_class) e.insert(b);
  // While Z is all of E1 (z_class[i] = e_i) the pivot-free coordinates
  // complete the echelon basis of B.
  bool full = st.z_class.size() == dim;
  for (std::size_t i = 0; full && i < dim; ++i)
    full = st.z_class[i].size() == 1 && st.z_class[i][0].index == i && st.z_class[i][0].value == field_from_int<F>(1);
  if (full) return e.free_indices(dim);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < st.z_class.size(); ++i)
    if (e.insert(st.z_class[i])) out.push_back(i);
  return out;
}

}  // namespace detail

template <class F>
SpectralSequenceState<F> compute_pages(std::shared_ptr<const BlowupComplex<F>> bp, const SpectralOptions& options = {}) {
  const BlowupComplex<F>& b = *bp;
  SpectralSequenceState<F> out;
  out.blowup = bp;
  const std::size_t P = b.p_count, Q = b.q_count;

  std::size_t R = 0;
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t q = 0; q < Q; ++q)
      if (b.dim(p, q) > 0) R = std::max(R, stabilization_index(p, q));
  if (R == 0) R = 1;
  out.stabilization = R;

  PageTable e0{0, std::vector<std::vector<std::size_t>>(P, std::vector<std::size_t>(Q, 0))};
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t q = 0; q < Q; ++q) e0.dims[p][q] = b.dim(p, q);
  out.pages.push_back(e0);

  const detail::E1Space<F> e1(b);
  out.e1_dim.assign(P, std::vector<std::size_t>(Q, 0));
  std::vector<std::vector<PositionState<F>>> state(P, std::vector<PositionState<F>>(Q));
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t q = 0; q < Q; ++q) {
      const auto n = e1.dim(p, q);
      out.e1_dim[p][q] = n;
      auto& st = state[p][q];
      for (std::size_t k = 0; k < n; ++k) {
        st.z.push_back(ZigZag<F>{{e1.representative(p, q, k)}});
        st.z_class.push_back(unit_vector<F>(k));
      }
    }
  }
  auto dims_of = [&](std::size_t r) {
    PageTable t{r, std::vector<std::vector<std::size_t>>(P, std::vector<std::size_t>(Q, 0))};
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t q = 0; q < Q; ++q) t.dims[p][q] = state[p][q].z.size() - state[p][q].b.size();
    return t;
  };
  out.pages.push_back(dims_of(1));

  const F one = field_from_int<F>(1);
  const F minus_one = field_from_int<F>(-1);

  for (std::size_t r = 1; r < R; ++r) {
    std::vector<std::vector<PositionState<F>>> next(P, std::vector<PositionState<F>>(Q));
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t q = 0; q < Q; ++q) {
        next[p][q].b = state[p][q].b;
        next[p][q].b_class = state[p][q].b_class;
      }
    // Image classes per position, kept for verification.
    std::vector<std::vector<std::vector<SparseVec<F>>>> images(P, std::vector<std::vector<SparseVec<F>>>(Q));

    parallel_for(P * Q, [&](std::size_t task) {
      const std::size_t p = task / Q, q = task % Q;
      const auto& src = state[p][q];
      auto& dst = next[p][q];
      const bool target_valid = p >= r && q + r - 1 < Q;
      if (!target_valid) {
        for (std::size_t i = 0; i < src.z.size(); ++i) {
          auto zz = src.z[i];
          zz.parts.emplace_back();
          dst.z.push_back(std::move(zz));
          dst.z_class.push_back(src.z_class[i]);
        }
        return;
      }
      const std::size_t tp = p - r, tq = q + r - 1;
      // x_{r-1} sits at (p - r + 1, q + r - 1).
      const std::size_t lp = p - r + 1, lq = q + r - 1;
      const auto& tgt = state[tp][tq];
      const std::size_t nb = tgt.b_class.size();
      Echelon<F> ech(e1.dim(tp, tq));
      for (std::size_t j = 0; j < nb; ++j) {
        if (!ech.insert(tgt.b_class[j], unit_vector<F>(j)))
          throw Error(ErrorKind::lift_failure, "boundary classes are dependent");
      }
      auto& img = images[p][q];
      img.resize(src.z.size());
      std::vector<ZigZag<F>> new_b;
      std::vector<SparseVec<F>> new_b_class;
      for (std::size_t i = 0; i < src.z.size(); ++i) {
        const auto tail = b.apply_d1(lp, lq, src.z[i].parts[r - 1]);
        img[i] = e1.decompose(tp, tq, tail).cls;
        auto rel = ech.insert_or_relation(img[i], unit_vector<F>(nb + i));
        if (!rel.residual.empty()) {
          new_b.push_back(src.z[i]);
          new_b_class.push_back(img[i]);
          continue;
        }
        // Kernel element: combine sources and aligned boundary zig-zags.
        ZigZag<F> k;
        k.parts.assign(r, SparseVec<F>{});
        SparseVec<F> cls;
        for (const auto& t : rel.combination) {
          if (t.index >= nb) {
            const auto& x = src.z[t.index - nb];
            for (std::size_t a = 0; a < r; ++a) axpy(k.parts[a], t.value, x.parts[a]);
            axpy(cls, t.value, src.z_class[t.index - nb]);
          } else {
            const auto& w = tgt.b[t.index];
            const std::size_t s = w.parts.size();
            for (std::size_t a = 0; a < s; ++a) axpy(k.parts[r - s + a], t.value, w.parts[a]);
          }
        }
        const auto ktail = b.apply_d1(lp, lq, k.parts[r - 1]);
        auto dec = e1.decompose(tp, tq, ktail);
        if (!dec.cls.empty())
          throw Error(ErrorKind::lift_failure, "zig-zag tail is not a boundary at page " + std::to_string(r));
        SparseVec<F> lift = scaled(dec.preimage, minus_one);
        if (options.perturb_seed && tq + 1 < Q) {
          std::mt19937_64 rng(*options.perturb_seed ^ (r * 0x9E3779B97F4A7C15ull) ^ (task * 0xBF58476D1CE4E5B9ull) ^ i);
          const auto& simplices = b.local[tp];
          if (!simplices.empty()) {
            for (int rep = 0; rep < 2; ++rep) {
              const std::size_t s = rng() % simplices.size();
              const auto& hb = e1.basis(tp, s, tq + 1);
              const auto base = b.offset[tp][tq + 1][s];
              for (const auto& g : hb.generators())
                axpy(lift, field_from_int<F>(static_cast<long long>(rng() % 5) - 2), shifted(g, base));
              if (tq + 2 < Q && simplices[s].cell_count(tq + 2) > 0) {
                const auto c = rng() % simplices[s].cell_count(tq + 2);
                axpy(lift, field_from_int<F>(static_cast<long long>(rng() % 3) + 1),
                     shifted(simplices[s].boundary_ref(tq + 2).columns[c], base));
              }
            }
          }
        }
        k.parts.push_back(std::move(lift));
        dst.z.push_back(std::move(k));
        dst.z_class.push_back(std::move(cls));
      }
      next[tp][tq].b.insert(next[tp][tq].b.end(), new_b.begin(), new_b.end());
      next[tp][tq].b_class.insert(next[tp][tq].b_class.end(), new_b_class.begin(), new_b_class.end());
    });

    if (options.verify_differentials) {
      // Differential matrices between complement bases of E^r.
      std::vector<std::vector<std::vector<std::size_t>>> comp(P, std::vector<std::vector<std::size_t>>(Q));
      for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < Q; ++q) comp[p][q] = detail::complement_indices(state[p][q], e1.dim(p, q));
      std::vector<std::vector<std::optional<SparseMatrix<F>>>> mat(P, std::vector<std::optional<SparseMatrix<F>>>(Q));
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t q = 0; q < Q; ++q) {
          if (!(p >= r && q + r - 1 < Q)) continue;
          const std::size_t tp = p - r, tq = q + r - 1;
          const auto& tgt = state[tp][tq];
          SparseMatrix<F> m(comp[tp][tq].size(), comp[p][q].size());
          if (m.rows == 0 || m.cols == 0) {
            mat[p][q] = std::move(m);
            continue;
          }
          // B rows carry empty tags, so combinations are taken modulo B.
          Echelon<F> ech(e1.dim(tp, tq));
          for (const auto& bc : tgt.b_class) ech.insert(bc, SparseVec<F>{});
          for (std::size_t j = 0; j < comp[tp][tq].size(); ++j)
            ech.insert(tgt.z_class[comp[tp][tq][j]], unit_vector<F>(j));
          for (std::size_t c = 0; c < comp[p][q].size(); ++c) {
            auto red = ech.reduce(images[p][q][comp[p][q][c]], true);
            if (!red.residual.empty()) out.rank_bookkeeping = false;
            m.columns[c] = std::move(red.combination);
          }
          mat[p][q] = std::move(m);
        }
      }
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t q = 0; q < Q; ++q) {
          if (!mat[p][q]) continue;
          const std::size_t tp = p - r, tq = q + r - 1;
          if (mat[tp][tq]) {
            ++out.differentials_checked;
            if (!compose(*mat[tp][tq], *mat[p][q]).is_zero()) out.differentials_square_zero = false;
          }
        }
      }
      std::vector<std::vector<std::size_t>> mat_rank(P, std::vector<std::size_t>(Q, 0));
      for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < Q; ++q)
          if (mat[p][q]) mat_rank[p][q] = rank(*mat[p][q]);
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t q = 0; q < Q; ++q) {
          const std::size_t before = state[p][q].z.size() - state[p][q].b.size();
          const std::size_t after = next[p][q].z.size() - next[p][q].b.size();
          const std::size_t out_rank = mat_rank[p][q];
          std::size_t in_rank = 0;
          if (p + r < P && q + 1 >= r && q + 1 - r < Q) in_rank = mat_rank[p + r][q + 1 - r];
          if (after + out_rank + in_rank != before) out.rank_bookkeeping = false;
        }
      }
    }

    state = std::move(next);
    out.pages.push_back(dims_of(r + 1));
  }
  out.final_state = std::move(state);
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction

template <class F>
struct Reconstruction {
  std::vector<std::size_t> einf_sum;  // per total degree k
  std::vector<std::size_t> betti;     // direct homology of X_n
  std::vector<std::size_t> rank;      // rank of the pushed classes in H_k
  /// classes[k]: cycles of X_n from E^infinity classes; column[k][i] is p.
  std::vector<std::vector<Chain<F>>> classes;
  std::vector<std::vector<std::size_t>> column;

  bool ok() const { return einf_sum == betti && rank == betti; }
};

/// Column-0 part of each E^infinity zig-zag, pushed into X_n.
template <class F>
Reconstruction<F> reconstruct_homology(const SpectralSequenceState<F>& st, const CellComplex<F>& x) {
  const auto& b = *st.blowup;
  const auto& n = *b.nerve;
  Reconstruction<F> out;
  const std::size_t K = x.dimensions();
  out.einf_sum.assign(K, 0);
  out.classes.resize(K);
  out.column.resize(K);
  for (std::size_t p = 0; p < b.p_count; ++p) {
    for (std::size_t q = 0; q < b.q_count; ++q) {
      const auto& ps = st.final_state[p][q];
      const auto comp = detail::complement_indices(ps, st.e1_dim[p][q]);
      if (comp.empty()) continue;
      const std::size_t k = p + q;
      if (k >= K) throw Error(ErrorKind::mismatch_with_direct_homology, "E-infinity class above the top dimension");
      out.einf_sum[k] += comp.size();
      for (auto i : comp) {
        const auto& part = ps.z[i].parts.at(p);
        std::vector<Entry<F>> acc;
        for (const auto& e : part) {
          const auto s = b.block_of(0, k, e.index);
          acc.push_back(Entry<F>{n.cells[0][s][k][e.index - b.offset[0][k][s]], e.value});
        }
        out.classes[k].push_back(canonicalize(std::move(acc)));
        out.column[k].push_back(p);
      }
    }
  }
  out.betti = betti_numbers(x);
  out.rank.assign(K, 0);
  for (std::size_t k = 0; k < K; ++k) {
    for (const auto& c : out.classes[k])
      if (!is_cycle(x, k, c))
        throw Error(ErrorKind::mismatch_with_direct_homology, "pushed E-infinity class is not a cycle");
    out.rank[k] = homology_rank(x, k, out.classes[k]);
  }
  if (!out.ok()) {
    std::string msg = "E-infinity diagonal sums / ranks differ from direct Betti numbers:";
    for (std::size_t k = 0; k < K; ++k)
      msg += " k=" + std::to_string(k) + " (" + std::to_string(out.einf_sum[k]) + "," + std::to_string(out.rank[k]) +
             " vs " + std::to_string(out.betti[k]) + ")";
    throw Error(ErrorKind::mismatch_with_direct_homology, msg);
  }
  return out;
}

struct TotalComplexCheck {
  std::vector<std::size_t> total_betti;
  std::vector<std::size_t> direct_betti;
  std::vector<bool> agrees;
  bool differential_squares_to_zero = true;

  bool ok() const {
    return differential_squares_to_zero && std::all_of(agrees.begin(), agrees.end(), [](bool v) { return v; });
  }
};

/// Homology of Tot_k = sum_{p+q=k} E0(p,q) with d0 + d1 against X_n.
template <class F>
TotalComplexCheck total_complex_check(const BlowupComplex<F>& b, const CellComplex<F>& x) {
  const std::size_t K = b.p_count + b.q_count == 0 ? 0 : b.p_count + b.q_count - 1;
  std::vector<std::vector<std::size_t>> start(K, std::vector<std::size_t>(b.p_count, 0));
  std::vector<std::size_t> counts(K, 0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t p = 0; p < b.p_count; ++p) {
      start[k][p] = counts[k];
      if (p <= k) counts[k] += b.dim(p, k - p);
    }
  }
  std::vector<SparseMatrix<F>> boundaries;
  for (std::size_t k = 1; k < K; ++k) {
    SparseMatrix<F> m(counts[k - 1], counts[k]);
    for (std::size_t p = 0; p <= k && p < b.p_count; ++p) {
      const std::size_t q = k - p;
      for (std::size_t i = 0; i < b.dim(p, q); ++i) {
        std::vector<Entry<F>> col;
        if (q >= 1)
          for (const auto& e : b.d0[p][q].columns[i]) col.push_back(Entry<F>{start[k - 1][p] + e.index, e.value});
        if (p >= 1)
          for (const auto& e : b.d1[p][q].columns[i]) col.push_back(Entry<F>{start[k - 1][p - 1] + e.index, e.value});
        m.columns[start[k][p] + i] = canonicalize(std::move(col));
      }
    }
    boundaries.push_back(std::move(m));
  }
  TotalComplexCheck out;
  CellComplex<F> tot;
  try {
    tot = CellComplex<F>(counts, std::move(boundaries), true);
  } catch (const Error&) {
    out.differential_squares_to_zero = false;
    return out;
  }
  out.total_betti = betti_numbers(tot);
  out.direct_betti = betti_numbers(x);
  const std::size_t top = std::max(out.total_betti.size(), out.direct_betti.size());
  out.total_betti.resize(top, 0);
  out.direct_betti.resize(top, 0);
  for (std::size_t k = 0; k < top; ++k) out.agrees.push_back(out.total_betti[k] == out.direct_betti[k]);
  return out;
}

// ---------------------------------------------------------------------------
// Toroidal heuristics

/// Answers filtration-level queries: the smallest column p such that a class
/// lies in the span of E^infinity classes from columns <= p.
template <class F>
class FiltrationIndex {
 public:
  FiltrationIndex(const CellComplex<F>& x, const Reconstruction<F>& rec, std::size_t k) : x_(x), k_(k) {
    Echelon<F> e(x.cell_count(k));
    if (k + 1 < x.dimensions())
      for (const auto& col : x.boundary_ref(k + 1).columns) e.insert(col);
    std::size_t top = 0;
    for (auto c : rec.column.at(k)) top = std::max(top, c);
    for (std::size_t p = 0; p <= top; ++p) {
      for (std::size_t i = 0; i < rec.classes[k].size(); ++i)
        if (rec.column[k][i] == p) e.insert(rec.classes[k][i]);
      levels_.push_back(e);
    }
  }

  std::size_t level(const Chain<F>& z) const {
    if (!is_cycle(x_, k_, z)) throw Error(ErrorKind::not_a_cycle, "queried chain is not a cycle");
    for (std::size_t p = 0; p < levels_.size(); ++p)
      if (levels_[p].contains(z)) return p;
    throw Error(ErrorKind::class_not_found, "class is not in the span of the reconstructed homology");
  }

 private:
  const CellComplex<F>& x_;
  std::size_t k_;
  std::vector<Echelon<F>> levels_;
};

template <class F>
std::size_t filtration_level(const CellComplex<F>& x, const Reconstruction<F>& rec, std::size_t k, const Chain<F>& z) {
  return FiltrationIndex<F>(x, rec, k).level(z);
}

enum class Verdict { non_toroidal, toroidal_candidate };

inline const char* to_string(Verdict v) { return v == Verdict::non_toroidal ? "NonToroidal" : "ToroidalCandidate"; }

template <class F>
struct ToroidalEntry {
  std::size_t degree = 0;
  Chain<F> generator;
  std::size_t level = 0;
  Verdict verdict = Verdict::non_toroidal;
  std::size_t orbit_span = 0;  // dim of the span of all translates in H_k
};

/// Dimension of span{t . z : t in the window} in H_k.
template <class F>
std::size_t orbit_span(const WindowComplex<F>& w, std::size_t k, const Chain<F>& z) {
  std::vector<Chain<F>> translates;
  for (const auto& t : box_shifts(w.n)) translates.push_back(w.translate(k, z, t));
  return homology_rank(w.complex, k, translates);
}

template <class F>
std::vector<ToroidalEntry<F>> toroidal_report(const WindowComplex<F>& w, const Reconstruction<F>& rec,
                                              bool with_orbits = true) {
  std::vector<ToroidalEntry<F>> out;
  const auto& x = w.complex;
  for (std::size_t k = 0; k < x.dimensions(); ++k) {
    // The reconstructed classes are adapted to the filtration, so the
    // candidate count per degree is beta_k - dim E^infinity(0, k).
    const auto& gens = rec.classes.at(k);
    if (gens.empty()) continue;
    FiltrationIndex<F> index(x, rec, k);
    for (const auto& g : gens) {
      ToroidalEntry<F> e;
      e.degree = k;
      e.generator = g;
      e.level = index.level(g);
      e.verdict = e.level == 0 ? Verdict::non_toroidal : Verdict::toroidal_candidate;
      if (with_orbits) e.orbit_span = orbit_span(w, k, g);
      out.push_back(std::move(e));
    }
  }
  return out;
}

/// Pushforwards of the homology generators of every cover element.
template <class F>
std::vector<Chain<F>> local_cycles(const CellComplex<F>& x, const Cover& cover, std::size_t k) {
  std::vector<Chain<F>> out;
  for (const auto& el : cover.elements) {
    if (k >= el.size()) continue;
    const auto sub = subcomplex(x, el);
    for (const auto& g : homology_generators(sub, k)) out.push_back(canonicalize(include_chain(el[k], g)));
  }
  return out;
}

/// Rank of the sum of H_k(U) -> H_k(X_n) over cover elements U; this is the
/// dimension of E^infinity(0, k).
template <class F>
std::size_t local_image_rank(const CellComplex<F>& x, const Cover& cover, std::size_t k) {
  return homology_rank(x, k, local_cycles(x, cover, k));
}

struct ProjectionProxy {
  std::size_t degree = 0;
  std::size_t source_betti = 0;
  std::size_t target_betti = 0;
  std::size_t rank = 0;
  std::size_t cokernel = 0;
};

/// Rank and cokernel of H_k(X_n) -> H_k(X_m) for every k.
template <class F>
std::vector<ProjectionProxy> projection_image_proxy(const PeriodicComplexTemplate& t, const ZVector& n,
                                                    const ZVector& m) {
  const auto src = build_window<F>(t, n);
  const auto tgt = build_window<F>(t, m);
  const auto f = covering_projection(src, tgt);
  std::vector<ProjectionProxy> out;
  const auto tb = betti_numbers(tgt.complex);
  for (std::size_t k = 0; k < src.complex.dimensions(); ++k) {
    ProjectionProxy r;
    r.degree = k;
    const auto gens = homology_generators(src.complex, k);
    r.source_betti = gens.size();
    r.target_betti = tb[k];
    std::vector<Chain<F>> images;
    for (const auto& g : gens) images.push_back(f.apply_to(k, g));
    r.rank = homology_rank(tgt.complex, k, images);
    r.cokernel = r.target_betti - r.rank;
    out.push_back(r);
  }
  return out;
}

struct ScalingPoint {
  long long n = 0;
  std::size_t betti = 0;
  std::size_t local_image = 0;
  std::size_t toroidal = 0;  // betti - local_image
};

struct ScalingFit {
  std::size_t degree = 0;
  std::size_t d = 0;
  long long offset_bound = 0;
  double tolerance = 0.15;
  std::vector<ScalingPoint> points;
  std::optional<double> betti_exponent;
  std::optional<double> toroidal_exponent;
  bool betti_within_bound = true;     // exponent <= d + tolerance
  bool toroidal_within_bound = true;  // exponent <= d - 1 + tolerance
  std::vector<std::string> warnings;
};

/// Least-squares slope of log y against log x over points with y > 0.
inline std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0 && x[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

/// Windows n x ... x n for every n in the list. The toroidal-candidate count
/// is beta_k minus the rank of the local image, i.e. minus dim E^infinity(0,k).
template <class F>
ScalingFit scaling_fit(const PeriodicComplexTemplate& t, const std::vector<long long>& sizes, std::size_t k,
                       double tolerance = 0.15) {
  if (sizes.size() < 3) throw Error(ErrorKind::insufficient_data, "at least three window sizes are needed");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw Error(ErrorKind::invalid_argument, "window sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw Error(ErrorKind::invalid_argument, "window sizes must be strictly increasing");
  }
  ScalingFit fit;
  fit.degree = k;
  fit.d = t.d();
  fit.tolerance = tolerance;
  fit.offset_bound = offset_bound(t);
  for (auto n : sizes) {
    if (n <= 4 * fit.offset_bound)
      fit.warnings.push_back("size " + std::to_string(n) + " is not above 4M = " + std::to_string(4 * fit.offset_bound));
  }
  std::vector<double> xs, yb, yt;
  for (auto n : sizes) {
    const auto w = build_window<F>(t, ZVector(t.d(), n));
    ScalingPoint pt;
    pt.n = n;
    const auto betti = betti_numbers(w.complex);
    pt.betti = k < betti.size() ? betti[k] : 0;
    if (k < w.complex.dimensions()) pt.local_image = local_image_rank(w.complex, build_cover(t, w), k);
    pt.toroidal = pt.betti - pt.local_image;
    fit.points.push_back(pt);
    xs.push_back(static_cast<double>(n));
    yb.push_back(static_cast<double>(pt.betti));
    yt.push_back(static_cast<double>(pt.toroidal));
  }
  fit.betti_exponent = log_log_slope(xs, yb);
  fit.toroidal_exponent = log_log_slope(xs, yt);
  const double d = static_cast<double>(t.d());
  if (fit.betti_exponent) fit.betti_within_bound = *fit.betti_exponent <= d + tolerance;
  if (fit.toroidal_exponent) fit.toroidal_within_bound = *fit.toroidal_exponent <= d - 1 + tolerance;
  return fit;
}

// ---------------------------------------------------------------------------
// Whole pipeline

template <class F>
struct MayerVietoris {
  Cover cover;
  std::shared_ptr<const Nerve> nerve;
  std::shared_ptr<const BlowupComplex<F>> blowup;
  SpectralSequenceState<F> pages;
};

template <class F>
MayerVietoris<F> run_mayer_vietoris(const CellComplex<F>& x, Cover cover, const SpectralOptions& options = {},
                                    std::size_t max_arity = 32) {
  check_cover(cover, x);
  MayerVietoris<F> mv;
  mv.nerve = std::make_shared<const Nerve>(nerve(cover, max_arity));
  mv.cover = std::move(cover);
  mv.blowup = std::make_shared<const BlowupComplex<F>>(blowup(x, mv.nerve));
  mv.pages = compute_pages(mv.blowup, options);
  return mv;
}

template <class F>
MayerVietoris<F> run_mayer_vietoris(const PeriodicComplexTemplate& t, const WindowComplex<F>& w,
                                    const SpectralOptions& options = {}, std::size_t max_arity = 32) {
  return run_mayer_vietoris(w.complex, build_cover(t, w), options, max_arity);
}

}  // namespace periodic_homology

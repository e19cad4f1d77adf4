#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "periodic_homology/errors.hpp"
#include "periodic_homology/field.hpp"

namespace periodic_homology {

template <class F>
struct Entry {
  std::size_t index;
  F value;
};

/// Sparse vector over F: entries sorted by strictly increasing index, no
/// stored zeros.
template <class F>
using SparseVec = std::vector<Entry<F>>;

template <class F>
SparseVec<F> unit_vector(std::size_t index) {
  return SparseVec<F>{Entry<F>{index, field_from_int<F>(1)}};
}

/// Sorts, merges duplicates and drops zeros.
template <class F>
SparseVec<F> canonicalize(std::vector<Entry<F>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry<F>& a, const Entry<F>& b) { return a.index < b.index; });
  SparseVec<F> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().index == e.index) {
      out.back().value += e.value;
    } else {
      if (!out.empty() && is_zero(out.back().value)) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && is_zero(out.back().value)) out.pop_back();
  return out;
}

/// y <- y + a * x
template <class F>
void axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
  if (x.empty() || is_zero(a)) return;
  SparseVec<F> out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->index < ix->index)) {
      out.push_back(std::move(*iy));
      ++iy;
    } else if (iy == y.end() || ix->index < iy->index) {
      out.push_back(Entry<F>{ix->index, a * ix->value});
      ++ix;
    } else {
      F v = iy->value + a * ix->value;
      if (!is_zero(v)) out.push_back(Entry<F>{iy->index, std::move(v)});
      ++iy;
      ++ix;
    }
  }
  y = std::move(out);
}

template <class F>
SparseVec<F> scaled(const SparseVec<F>& x, const F& a) {
  if (is_zero(a)) return {};
  SparseVec<F> out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(Entry<F>{e.index, a * e.value});
  return out;
}

template <class F>
SparseVec<F> shifted(const SparseVec<F>& x, std::size_t offset) {
  SparseVec<F> out = x;
  for (auto& e : out) e.index += offset;
  return out;
}

template <class F>
F coefficient(const SparseVec<F>& x, std::size_t index) {
  auto it = std::lower_bound(x.begin(), x.end(), index,
                             [](const Entry<F>& e, std::size_t i) { return e.index < i; });
  if (it != x.end() && it->index == index) return it->value;
  return field_from_int<F>(0);
}

template <class F>
bool equal(const SparseVec<F>& a, const SparseVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || !(a[i].value == b[i].value)) return false;
  }
  return true;
}

/// Column-major sparse matrix; column j is the image of basis vector j.
template <class F>
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVec<F>> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns[i] = unit_vector<F>(i);
    return m;
  }

  bool is_zero() const {
    return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.empty(); });
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

/// A * x for a sparse vector x indexed by the columns of A.
template <class F>
SparseVec<F> apply(const SparseMatrix<F>& a, const SparseVec<F>& x) {
  if (x.size() == 1) return scaled(a.columns[x.front().index], x.front().value);
  std::vector<Entry<F>> acc;
  for (const auto& e : x) {
    for (const auto& r : a.columns[e.index]) acc.push_back(Entry<F>{r.index, e.value * r.value});
  }
  return canonicalize(std::move(acc));
}

/// A * B
template <class F>
SparseMatrix<F> compose(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  if (a.cols != b.rows) throw Error(ErrorKind::invalid_argument, "matrix shapes do not compose");
  SparseMatrix<F> out(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) out.columns[j] = apply(a, b.columns[j]);
  return out;
}

template <class F>
SparseMatrix<F> add(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error(ErrorKind::invalid_argument, "matrix shapes differ");
  SparseMatrix<F> out = a;
  const F one = field_from_int<F>(1);
  for (std::size_t j = 0; j < b.cols; ++j) axpy(out.columns[j], one, b.columns[j]);
  return out;
}

/// Incremental row-echelon basis over F. Each stored vector has a distinct
/// pivot (its smallest nonzero index) normalised to 1. Stored vectors carry a
/// tag recording them as a combination of the originally inserted vectors, so
/// reductions double as linear solves.
template <class F>
class Echelon {
 public:
  struct Reduction {
    SparseVec<F> residual;
    /// v - residual = sum_j combination[j] * original_j
    SparseVec<F> combination;
  };

  explicit Echelon(std::size_t dimension = 0) : slot_(dimension, kNone) {}

  std::size_t rank() const { return vectors_.size(); }
  std::size_t dimension() const { return slot_.size(); }

  bool has_pivot(std::size_t index) const { return index < slot_.size() && slot_[index] != kNone; }

  /// Indices below `dim` without a pivot, increasing.
  std::vector<std::size_t> free_indices(std::size_t dim) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim; ++i)
      if (!has_pivot(i)) out.push_back(i);
    return out;
  }

  /// Reduces v against the stored basis. With track=false the combination is
  /// left empty.
  Reduction reduce(SparseVec<F> v, bool track = true) const {
    Reduction out;
    if (v.empty()) return out;
    // Dense scatter of v plus a min-heap of touched indices. A stored vector
    // only touches indices at or after its pivot, so indices popped without a
    // pivot are final.
    static thread_local std::vector<F> work;
    static thread_local std::vector<char> live;
    std::size_t top = slot_.size();
    for (const auto& e : v) top = std::max(top, e.index + 1);
    if (work.size() < top) {
      work.resize(top, field_from_int<F>(0));
      live.resize(top, 0);
    }
    std::vector<std::size_t> heap;
    std::vector<std::size_t> touched;
    heap.reserve(v.size());
    for (auto& e : v) {
      work[e.index] = std::move(e.value);
      live[e.index] = 1;
      heap.push_back(e.index);
      touched.push_back(e.index);
    }
    std::make_heap(heap.begin(), heap.end(), std::greater<>());
    std::vector<Entry<F>> combination;
    SparseVec<F> residual;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      const std::size_t i = heap.back();
      heap.pop_back();
      if (!live[i]) continue;
      live[i] = 0;
      if (is_zero(work[i])) continue;
      if (!has_pivot(i)) {
        residual.push_back(Entry<F>{i, work[i]});
        continue;
      }
      const std::size_t s = slot_[i];
      const F factor = work[i];
      for (const auto& e : vectors_[s]) {
        if (e.index == i) {
          work[i] = field_from_int<F>(0);
          continue;
        }
        if (!live[e.index]) {
          live[e.index] = 1;
          if (is_zero(work[e.index])) touched.push_back(e.index);
          heap.push_back(e.index);
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
        work[e.index] -= factor * e.value;
      }
      if (track)
        for (const auto& e : tags_[s]) combination.push_back(Entry<F>{e.index, factor * e.value});
    }
    for (auto i : touched) {
      work[i] = field_from_int<F>(0);
      live[i] = 0;
    }
    out.residual = std::move(residual);
    if (track) out.combination = canonicalize(std::move(combination));
    return out;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v, false).residual.empty(); }

  /// Inserts v (tagged as `tag`, a combination of originals). Returns true if
  /// v was independent of the stored basis.
  bool insert(const SparseVec<F>& v, const SparseVec<F>& tag) {
    Reduction red = reduce(v, true);
    if (red.residual.empty()) return false;
    SparseVec<F> t = tag;
    const F minus_one = field_from_int<F>(-1);
    axpy(t, minus_one, red.combination);
    store(std::move(red.residual), std::move(t));
    return true;
  }

  bool insert(const SparseVec<F>& v) {
    Reduction red = reduce(v, false);
    if (red.residual.empty()) return false;
    store(std::move(red.residual), {});
    return true;
  }

  /// Variant that reports the relation when v turns out dependent:
  /// returns nullopt-like empty residual with the relation in `combination`.
  Reduction insert_or_relation(const SparseVec<F>& v, const SparseVec<F>& tag) {
    Reduction red = reduce(v, true);
    SparseVec<F> t = tag;
    const F minus_one = field_from_int<F>(-1);
    axpy(t, minus_one, red.combination);
    if (!red.residual.empty()) {
      store(red.residual, t);
    }
    red.combination = std::move(t);
    return red;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void store(SparseVec<F> v, SparseVec<F> tag) {
    const std::size_t pivot = v.front().index;
    if (pivot >= slot_.size()) slot_.resize(pivot + 1, kNone);
    const F inv = field_from_int<F>(1) / v.front().value;
    if (!(inv == field_from_int<F>(1))) {
      v = scaled(v, inv);
      tag = scaled(tag, inv);
    }
    slot_[pivot] = vectors_.size();
    vectors_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
  }

  std::vector<std::size_t> slot_;
  std::vector<SparseVec<F>> vectors_;
  std::vector<SparseVec<F>> tags_;
};

template <class F>
std::size_t rank(const SparseMatrix<F>& a) {
  Echelon<F> e(a.rows);
  for (const auto& c : a.columns) e.insert(c);
  return e.rank();
}

/// Kernel basis of A, one vector per dependent column in column order.
template <class F>
std::vector<SparseVec<F>> kernel(const SparseMatrix<F>& a) {
  Echelon<F> e(a.rows);
  std::vector<SparseVec<F>> out;
  for (std::size_t j = 0; j < a.cols; ++j) {
    auto red = e.insert_or_relation(a.columns[j], unit_vector<F>(j));
    if (red.residual.empty()) out.push_back(std::move(red.combination));
  }
  return out;
}

}  // namespace periodic_homology

#pragma once

// Finite chain complexes over an exact field: Betti numbers, generator
// cycles, homology coordinates and induced maps.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "periodic_homology/errors.hpp"
#include "periodic_homology/field.hpp"
#include "periodic_homology/sparse.hpp"

namespace periodic_homology {

template <class F>
using Chain = SparseVec<F>;

template <class F>
class CellComplex {
 public:
  CellComplex() = default;

  /// boundaries[q-1] is the map C_q -> C_{q-1} for q = 1 .. counts.size()-1.
  CellComplex(std::vector<std::size_t> counts, std::vector<SparseMatrix<F>> boundaries, bool verify = true)
      : counts_(std::move(counts)) {
    if (counts_.empty()) {
      if (!boundaries.empty()) throw Error(ErrorKind::invalid_complex, "boundaries given for an empty complex");
      return;
    }
    if (boundaries.size() + 1 != counts_.size())
      throw Error(ErrorKind::invalid_complex, "expected one boundary matrix per positive dimension");
    boundary_.resize(counts_.size() + 1);
    boundary_[0] = SparseMatrix<F>(0, counts_[0]);
    for (std::size_t q = 1; q < counts_.size(); ++q) {
      auto& m = boundaries[q - 1];
      if (m.rows != counts_[q - 1] || m.cols != counts_[q] || m.columns.size() != m.cols)
        throw Error(ErrorKind::invalid_complex, "boundary matrix in dimension " + std::to_string(q) + " has wrong shape");
      boundary_[q] = std::move(m);
    }
    boundary_[counts_.size()] = SparseMatrix<F>(counts_.back(), 0);
    if (verify) check_boundary_squares();
  }

  /// Number of dimensions stored (top dimension + 1).
  std::size_t dimensions() const { return counts_.size(); }
  const std::vector<std::size_t>& cell_counts() const { return counts_; }
  std::size_t cell_count(std::size_t q) const { return q < counts_.size() ? counts_[q] : 0; }

  /// Boundary map C_q -> C_{q-1}; zero maps outside the stored range.
  SparseMatrix<F> boundary(std::size_t q) const {
    if (q < boundary_.size()) return boundary_[q];
    return SparseMatrix<F>(cell_count(q - 1), 0);
  }
  const SparseMatrix<F>& boundary_ref(std::size_t q) const { return boundary_.at(q); }

  Chain<F> boundary_of(std::size_t q, const Chain<F>& chain) const {
    if (q == 0 || q >= counts_.size()) return {};
    return apply(boundary_[q], chain);
  }

  void check_boundary_squares() const {
    for (std::size_t q = 2; q < counts_.size(); ++q) {
      for (std::size_t j = 0; j < counts_[q]; ++j) {
        if (!apply(boundary_[q - 1], boundary_[q].columns[j]).empty())
          throw Error(ErrorKind::invalid_complex,
                      "boundary of boundary is nonzero on " + std::to_string(q) + "-cell " + std::to_string(j));
      }
    }
  }

 private:
  std::vector<std::size_t> counts_;
  std::vector<SparseMatrix<F>> boundary_;
};

template <class F>
long long euler_characteristic(const CellComplex<F>& x) {
  long long chi = 0;
  for (std::size_t q = 0; q < x.dimensions(); ++q) {
    chi += (q % 2 == 0 ? 1 : -1) * static_cast<long long>(x.cell_count(q));
  }
  return chi;
}

template <class F>
std::size_t boundary_rank(const CellComplex<F>& x, std::size_t q) {
  if (q == 0 || q >= x.dimensions()) return 0;
  return rank(x.boundary_ref(q));
}

/// Betti numbers only; cheaper than `homology` because no kernel is tracked.
template <class F>
std::vector<std::size_t> betti_numbers(const CellComplex<F>& x) {
  std::vector<std::size_t> ranks(x.dimensions() + 1, 0);
  for (std::size_t q = 1; q < x.dimensions(); ++q) ranks[q] = boundary_rank(x, q);
  std::vector<std::size_t> betti(x.dimensions());
  for (std::size_t q = 0; q < x.dimensions(); ++q) betti[q] = x.cell_count(q) - ranks[q] - ranks[q + 1];
  return betti;
}

template <class F>
struct HomologyResult {
  std::vector<std::size_t> betti;
  /// generators[q]: cycles whose classes form a basis of H_q.
  std::vector<std::vector<Chain<F>>> generators;
};

template <class F>
std::vector<Chain<F>> cycle_basis(const CellComplex<F>& x, std::size_t q) {
  if (q == 0) {
    std::vector<Chain<F>> out;
    for (std::size_t i = 0; i < x.cell_count(0); ++i) out.push_back(unit_vector<F>(i));
    return out;
  }
  return kernel(x.boundary_ref(q));
}

/// Homology generators in dimension q: kernel vectors (in column order) that
/// are independent modulo the boundaries and the previously chosen ones.
template <class F>
std::vector<Chain<F>> homology_generators(const CellComplex<F>& x, std::size_t q) {
  Echelon<F> basis(x.cell_count(q));
  if (q + 1 < x.dimensions()) {
    for (const auto& col : x.boundary_ref(q + 1).columns) basis.insert(col);
  }
  std::vector<Chain<F>> out;
  for (auto& z : cycle_basis(x, q)) {
    if (basis.insert(z)) out.push_back(std::move(z));
  }
  return out;
}

template <class F>
HomologyResult<F> homology(const CellComplex<F>& x) {
  HomologyResult<F> out;
  out.betti.resize(x.dimensions());
  out.generators.resize(x.dimensions());
  for (std::size_t q = 0; q < x.dimensions(); ++q) {
    out.generators[q] = homology_generators(x, q);
    out.betti[q] = out.generators[q].size();
  }
  return out;
}

/// Coordinates of cycle classes with respect to a fixed homology basis, with a
/// boundary preimage for the remainder: z = sum_i c_i g_i + boundary(preimage).
template <class F>
class HomologyBasis {
 public:
  struct Decomposition {
    std::vector<F> coordinates;
    Chain<F> preimage;
  };

  HomologyBasis() = default;

  HomologyBasis(const CellComplex<F>& x, std::size_t q, std::vector<Chain<F>> generators)
      : q_(q), generators_(std::move(generators)), echelon_(x.cell_count(q)) {
    higher_ = q + 1 < x.dimensions() ? x.cell_count(q + 1) : 0;
    if (higher_ > 0) {
      const auto& d = x.boundary_ref(q + 1);
      for (std::size_t j = 0; j < higher_; ++j) echelon_.insert(d.columns[j], unit_vector<F>(j));
    }
    boundary_rank_ = echelon_.rank();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!echelon_.insert(generators_[i], unit_vector<F>(higher_ + i)))
        throw Error(ErrorKind::invalid_argument, "homology generators are dependent modulo boundaries");
    }
  }

  HomologyBasis(const CellComplex<F>& x, std::size_t q) : HomologyBasis(x, q, homology_generators(x, q)) {}

  std::size_t dimension() const { return generators_.size(); }
  std::size_t degree() const { return q_; }
  const std::vector<Chain<F>>& generators() const { return generators_; }

  /// Throws NotACycle if z is not in span(generators) + boundaries, which for a
  /// complete basis means z is not a cycle.
  Decomposition decompose(const Chain<F>& z) const {
    auto red = echelon_.reduce(z, true);
    if (!red.residual.empty()) throw Error(ErrorKind::not_a_cycle, "chain is not a cycle");
    Decomposition out;
    out.coordinates.assign(generators_.size(), field_from_int<F>(0));
    for (auto& e : red.combination) {
      if (e.index < higher_) {
        out.preimage.push_back(std::move(e));
      } else {
        out.coordinates[e.index - higher_] = std::move(e.value);
      }
    }
    return out;
  }

  SparseVec<F> sparse_coordinates(const Chain<F>& z) const {
    auto red = echelon_.reduce(z, true);
    if (!red.residual.empty()) throw Error(ErrorKind::not_a_cycle, "chain is not a cycle");
    SparseVec<F> out;
    for (auto& e : red.combination) {
      if (e.index >= higher_) out.push_back(Entry<F>{e.index - higher_, std::move(e.value)});
    }
    return out;
  }

  bool is_boundary(const Chain<F>& z) const {
    auto red = echelon_.reduce(z, true);
    if (!red.residual.empty()) return false;
    for (const auto& e : red.combination)
      if (e.index >= higher_) return false;
    return true;
  }

 private:
  std::size_t q_ = 0;
  std::size_t higher_ = 0;
  std::size_t boundary_rank_ = 0;
  std::vector<Chain<F>> generators_;
  Echelon<F> echelon_;
};

template <class F>
bool is_cycle(const CellComplex<F>& x, std::size_t q, const Chain<F>& z) {
  return x.boundary_of(q, z).empty();
}

/// True iff z lies in span(subspace) + B_q(X).
template <class F>
bool class_membership(const CellComplex<F>& x, std::size_t q, const Chain<F>& z,
                      const std::vector<Chain<F>>& subspace) {
  if (!is_cycle(x, q, z)) throw Error(ErrorKind::not_a_cycle, "queried chain is not a cycle");
  for (const auto& s : subspace)
    if (!is_cycle(x, q, s)) throw Error(ErrorKind::not_a_cycle, "subspace chain is not a cycle");
  Echelon<F> e(x.cell_count(q));
  if (q + 1 < x.dimensions())
    for (const auto& col : x.boundary_ref(q + 1).columns) e.insert(col);
  for (const auto& s : subspace) e.insert(s);
  return e.contains(z);
}

/// Dimension of span(chains) in H_q(X).
template <class F>
std::size_t homology_rank(const CellComplex<F>& x, std::size_t q, const std::vector<Chain<F>>& chains) {
  Echelon<F> e(x.cell_count(q));
  if (q + 1 < x.dimensions())
    for (const auto& col : x.boundary_ref(q + 1).columns) e.insert(col);
  const std::size_t base = e.rank();
  for (const auto& s : chains) e.insert(s);
  return e.rank() - base;
}

/// Per-dimension matrices from source q-cells to target q-chains.
template <class F>
struct ChainMap {
  std::vector<SparseMatrix<F>> maps;

  Chain<F> apply_to(std::size_t q, const Chain<F>& c) const {
    if (q >= maps.size()) return {};
    return apply(maps[q], c);
  }
};

template <class F>
bool is_chain_map(const ChainMap<F>& f, const CellComplex<F>& source, const CellComplex<F>& target) {
  if (f.maps.size() != source.dimensions()) return false;
  for (std::size_t q = 0; q < source.dimensions(); ++q) {
    if (f.maps[q].cols != source.cell_count(q) || f.maps[q].rows != target.cell_count(q)) return false;
  }
  for (std::size_t q = 1; q < source.dimensions(); ++q) {
    for (std::size_t j = 0; j < source.cell_count(q); ++j) {
      auto lhs = target.boundary_of(q, f.maps[q].columns[j]);
      auto rhs = apply(f.maps[q - 1], source.boundary_ref(q).columns[j]);
      if (!equal(lhs, rhs)) return false;
    }
  }
  return true;
}

/// Matrix of H_q(f) from the source generator basis to the target basis
/// (rows: target generators, columns: source generators).
template <class F>
SparseMatrix<F> induced_map(const ChainMap<F>& f, const CellComplex<F>& source, const CellComplex<F>& target,
                            std::size_t q, const std::vector<Chain<F>>& source_generators,
                            const HomologyBasis<F>& target_basis) {
  if (!is_chain_map(f, source, target)) throw Error(ErrorKind::not_a_chain_map, "map does not commute with boundaries");
  SparseMatrix<F> out(target_basis.dimension(), source_generators.size());
  for (std::size_t i = 0; i < source_generators.size(); ++i) {
    out.columns[i] = target_basis.sparse_coordinates(f.apply_to(q, source_generators[i]));
  }
  return out;
}

template <class F>
SparseMatrix<F> induced_map(const ChainMap<F>& f, const CellComplex<F>& source, const CellComplex<F>& target,
                            std::size_t q) {
  return induced_map(f, source, target, q, homology_generators(source, q), HomologyBasis<F>(target, q));
}

}  // namespace periodic_homology

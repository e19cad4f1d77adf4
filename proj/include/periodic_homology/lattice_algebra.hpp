#pragma once

// Exact integer linear algebra on Z^d: Smith normal form with transforms,
// subgroup indices, membership, coset enumeration.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periodic_homology/errors.hpp"
#include "periodic_homology/field.hpp"

namespace periodic_homology {

/// Integer vector in Z^d (weights, translation shifts).
using ZVector = std::vector<long long>;

inline long long to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::invalid_argument, "integer " + x.get_str() + " exceeds 64 bits");
  return x.get_si();
}

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(const std::vector<ZVector>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::dimension_mismatch, "row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<BigInt> row(std::size_t r) const {
    return std::vector<BigInt>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row dst += k * row src
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col dst += k * col src
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "matrix product shape mismatch");
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * A * V = D with U, V unimodular and D = diag(d_1 | d_2 | ... | d_r, 0, ...).
/// V_inverse is kept alongside V since coset canonicalisation needs it.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  IntegerMatrix V_inverse;
  std::size_t rank = 0;

  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

struct SmithWork {
  IntegerMatrix D, U, V, Vinv;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
    Vinv.swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    D.add_row_multiple(dst, src, k);
    U.add_row_multiple(dst, src, k);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    D.add_col_multiple(dst, src, k);
    V.add_col_multiple(dst, src, k);
    // (I + k e_src e_dst^T)^{-1} = I - k e_src e_dst^T acting on the left.
    Vinv.add_row_multiple(src, dst, -k);
  }
};

}  // namespace detail

/// Smallest-|entry| pivoting with row-major tie-break; deterministic.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  detail::SmithWork w{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n), IntegerMatrix::identity(n)};
  auto& d = w.D;

  std::size_t k = 0;
  for (; k < std::min(m, n); ++k) {
    // Global pivot choice on the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j) {
        if (d(i, j) == 0) continue;
        if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {i, j};
      }
    if (!best) break;
    w.swap_rows(k, best->first);
    w.swap_cols(k, best->second);

    while (true) {
      bool clean = true;
      // Column k below the pivot.
      for (std::size_t i = k + 1; i < m; ++i) {
        if (d(i, k) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, k).get_mpz_t(), d(k, k).get_mpz_t());
        w.add_row(i, k, -q);
        if (d(i, k) != 0) clean = false;
      }
      // Row k right of the pivot.
      for (std::size_t j = k + 1; j < n; ++j) {
        if (d(k, j) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(k, j).get_mpz_t(), d(k, k).get_mpz_t());
        w.add_col(j, k, -q);
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is now smaller than the pivot; move it into place.
        std::optional<std::pair<std::size_t, std::size_t>> smallest;
        auto consider = [&](std::size_t i, std::size_t j) {
          if (d(i, j) == 0) return;
          if (!smallest || abs(d(i, j)) < abs(d(smallest->first, smallest->second))) smallest = {i, j};
        };
        consider(k, k);
        for (std::size_t i = k + 1; i < m; ++i) consider(i, k);
        for (std::size_t j = k + 1; j < n; ++j) consider(k, j);
        w.swap_rows(k, smallest->first);
        w.swap_cols(k, smallest->second);
        continue;
      }
      // Divisibility of the trailing block.
      std::optional<std::size_t> offending_row;
      for (std::size_t i = k + 1; i < m && !offending_row; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(k, k).get_mpz_t())) {
            offending_row = i;
            break;
          }
        }
      if (!offending_row) break;
      w.add_row(k, *offending_row, BigInt(1));
    }
    if (d(k, k) < 0) {
      d.negate_row(k);
      w.U.negate_row(k);
    }
  }

  SmithDecomposition out;
  out.rank = k;
  out.U = std::move(w.U);
  out.D = std::move(w.D);
  out.V = std::move(w.V);
  out.V_inverse = std::move(w.Vinv);
  return out;
}

/// Natural number or infinity.
struct LatticeIndex {
  bool finite = true;
  BigInt value = 1;

  static LatticeIndex infinite() { return LatticeIndex{false, 0}; }
  std::string to_string() const { return finite ? value.get_str() : "infinite"; }
  friend bool operator==(const LatticeIndex& a, const LatticeIndex& b) {
    return a.finite == b.finite && (!a.finite || a.value == b.value);
  }
};

/// Subgroup of Z^d spanned by the rows of a generator matrix.
class IntegerLattice {
 public:
  IntegerLattice() : IntegerLattice(0, IntegerMatrix(0, 0)) {}

  IntegerLattice(std::size_t ambient_rank, const std::vector<ZVector>& generators)
      : IntegerLattice(ambient_rank, IntegerMatrix::from_rows(generators, ambient_rank)) {}

  IntegerLattice(std::size_t ambient_rank, IntegerMatrix generators)
      : d_(ambient_rank), generators_(std::move(generators)) {
    if (generators_.cols() != d_) throw Error(ErrorKind::dimension_mismatch, "generators must have d columns");
    smith_ = smith_normal_form(generators_);
  }

  std::size_t ambient_rank() const { return d_; }
  const IntegerMatrix& generators() const { return generators_; }
  const SmithDecomposition& smith() const { return smith_; }
  std::size_t rank() const { return smith_.rank; }

  LatticeIndex index() const {
    if (smith_.rank < d_) return LatticeIndex::infinite();
    BigInt product = 1;
    for (std::size_t i = 0; i < smith_.rank; ++i) product *= smith_.D(i, i);
    return LatticeIndex{true, product};
  }

  /// Smith coordinates z = x V of a vector x.
  std::vector<BigInt> smith_coordinates(const ZVector& x) const {
    check_length(x);
    std::vector<BigInt> z(d_);
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t i = 0; i < d_; ++i) z[j] += BigInt(static_cast<long>(x[i])) * smith_.V(i, j);
    return z;
  }

  /// Integer coefficients a with a * G = x, if x lies in the lattice.
  std::optional<std::vector<BigInt>> solve(const ZVector& x) const {
    const auto z = smith_coordinates(x);
    const std::size_t m = generators_.rows();
    std::vector<BigInt> b(m);
    for (std::size_t j = 0; j < d_; ++j) {
      if (j < smith_.rank) {
        if (!mpz_divisible_p(z[j].get_mpz_t(), smith_.D(j, j).get_mpz_t())) return std::nullopt;
        b[j] = z[j] / smith_.D(j, j);
      } else if (z[j] != 0) {
        return std::nullopt;
      }
    }
    std::vector<BigInt> a(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) a[i] += b[k] * smith_.U(k, i);
    return a;
  }

  bool contains(const ZVector& x) const { return solve(x).has_value(); }

  /// Smallest N >= 1 with N x in the lattice, or nullopt if none exists.
  std::optional<BigInt> order_of(const ZVector& x) const {
    const auto z = smith_coordinates(x);
    BigInt n = 1;
    for (std::size_t j = 0; j < d_; ++j) {
      if (j < smith_.rank) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), smith_.D(j, j).get_mpz_t(), z[j].get_mpz_t());
        BigInt need = smith_.D(j, j) / g;
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), need.get_mpz_t());
      } else if (z[j] != 0) {
        return std::nullopt;
      }
    }
    return n;
  }

  /// Representative of x + L in the fundamental box of the Smith basis.
  ZVector canonical_representative(const ZVector& x) const {
    auto z = smith_coordinates(x);
    for (std::size_t j = 0; j < smith_.rank; ++j) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), z[j].get_mpz_t(), smith_.D(j, j).get_mpz_t());
      z[j] = r;
    }
    return from_smith_coordinates(z);
  }

  /// One representative per coset of Z^d / L, zero first, in lexicographic
  /// order of Smith coordinates.
  std::vector<ZVector> coset_representatives(std::size_t limit = 10'000'000) const {
    const auto idx = index();
    if (!idx.finite) throw Error(ErrorKind::infinite_index, "lattice has infinite index; cosets are not finite");
    if (idx.value > static_cast<unsigned long>(limit))
      throw Error(ErrorKind::invalid_argument, "index " + idx.value.get_str() + " exceeds coset enumeration limit");
    std::vector<ZVector> out;
    std::vector<BigInt> z(d_);
    while (true) {
      out.push_back(from_smith_coordinates(z));
      // Odometer over prod [0, d_j), last coordinate fastest.
      std::size_t j = d_;
      while (j > 0) {
        --j;
        z[j] += 1;
        if (z[j] < smith_.D(j, j)) break;
        z[j] = 0;
        if (j == 0) return out;
      }
      if (d_ == 0) return out;
    }
  }

 private:
  void check_length(const ZVector& x) const {
    if (x.size() != d_) throw Error(ErrorKind::dimension_mismatch, "vector length differs from ambient rank");
  }

  ZVector from_smith_coordinates(const std::vector<BigInt>& z) const {
    ZVector x(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < d_; ++j) s += z[j] * smith_.V_inverse(j, i);
      x[i] = to_int64(s);
    }
    return x;
  }

  std::size_t d_;
  IntegerMatrix generators_;
  SmithDecomposition smith_;
};

inline LatticeIndex subgroup_index(const IntegerLattice& lattice) { return lattice.index(); }

inline std::vector<ZVector> coset_representatives(const IntegerLattice& lattice) {
  return lattice.coset_representatives();
}

/// Lattice spanned by L together with n_1 e_1, ..., n_d e_d.
inline IntegerLattice lattice_plus_window(const IntegerLattice& lattice, const ZVector& n) {
  const std::size_t d = lattice.ambient_rank();
  if (n.size() != d) throw Error(ErrorKind::dimension_mismatch, "window vector length differs from d");
  const auto& g = lattice.generators();
  IntegerMatrix rows(g.rows() + d, d);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) rows(i, j) = g(i, j);
  for (std::size_t j = 0; j < d; ++j) {
    if (n[j] < 1) throw Error(ErrorKind::invalid_argument, "window sizes must be positive");
    rows(g.rows() + j, j) = static_cast<long>(n[j]);
  }
  return IntegerLattice(d, std::move(rows));
}

/// [Z^d : L + (n_1 Z x ... x n_d Z)]
inline BigInt index_mod(const IntegerLattice& lattice, const ZVector& n) {
  return lattice_plus_window(lattice, n).index().value;
}

}  // namespace periodic_homology

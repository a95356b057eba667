#pragma once

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, row-style Hermite and Smith normal forms with unimodular
// transforms, lattices in Z^n, finite quotients of lattices, and a sparse
// integer system used for large coboundary matrices.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "normtorus/error.hpp"

namespace normtorus {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using IntVector = std::vector<BigInt>;

namespace detail {

inline BigInt abs_value(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Floor division and the matching non-negative remainder (for b > 0).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& b) {
  BigInt r = a % b;
  if (r < 0) r += (b < 0 ? BigInt(-b) : b);
  return r;
}

}  // namespace detail

inline BigInt ipow(unsigned base, unsigned exponent) {
  BigInt r = 1;
  for (unsigned k = 0; k < exponent; ++k) r *= base;
  return r;
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::input, "zlinalg", "ragged matrix literal");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::input, "zlinalg", "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero_row(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(src, c) != 0) (*this)(dst, c) += k * (*this)(src, c);
  }
  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, src) != 0) (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }

  IntVector apply(const IntVector& x) const {
    if (x.size() != cols_) throw Error(ErrorKind::input, "zlinalg", "dimension mismatch in apply");
    IntVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (x[c] != 0 && (*this)(r, c) != 0) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::input, "zlinalg", "dimension mismatch in product");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::input, "zlinalg", "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

struct HermiteResult {
  IntMatrix h;  // row-style Hermite normal form, zero rows last
  IntMatrix u;  // unimodular, h = u * m
};

/// Row-style HNF: pivots strictly move right, are positive, and the entries
/// above each pivot lie in [0, pivot). Pivot rows are chosen by smallest
/// absolute value, ties broken by lowest row index.
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t rows = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < rows; ++c) {
    bool has_pivot = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (!best || detail::abs_value(h(i, c)) < detail::abs_value(h(*best, c))) best = i;
      }
      if (!best) break;
      has_pivot = true;
      h.swap_rows(r, *best);
      u.swap_rows(r, *best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        BigInt q = h(i, c) / h(r, c);
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = detail::floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

struct SmithResult {
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix u;  // unimodular, d = u * m * v
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;

  std::size_t rank() const {
    std::size_t k = 0;
    while (k < std::min(d.rows(), d.cols()) && d(k, k) != 0) ++k;
    return k;
  }
};

inline SmithResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithResult s{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(rows),
                IntMatrix::identity(cols)};
  IntMatrix& d = s.d;

  // Elementary operations applied to d and mirrored on the transforms.
  auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& k) {
    d.add_row_multiple(dst, src, k);
    s.u.add_row_multiple(dst, src, k);
    s.u_inv.add_col_multiple(src, dst, -k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& k) {
    d.add_col_multiple(dst, src, k);
    s.v.add_col_multiple(dst, src, k);
    s.v_inv.add_row_multiple(src, dst, -k);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    s.u.swap_rows(a, b);
    s.u_inv.swap_cols(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    s.v.swap_cols(a, b);
    s.v_inv.swap_rows(a, b);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) == 0) continue;
        if (!best || detail::abs_value(d(i, j)) < detail::abs_value(d(best->first, best->second))) best = {i, j};
      }
    if (!best) break;
    row_swap(t, best->first);
    col_swap(t, best->second);

    for (;;) {
      bool residue = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) residue = true;
      }
      if (residue) {
        // move the smallest remainder in row/column t to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && detail::abs_value(d(i, t)) < detail::abs_value(d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && detail::abs_value(d(t, j)) < detail::abs_value(d(bi, bj))) bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      row_add(t, *offender, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
      s.u_inv.negate_col(t);
    }
  }
  return s;
}

/// A sublattice of Z^ambient stored by its canonical row-style HNF basis.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

  /// Lattice spanned by the rows of `generators` (any generating set).
  static LatticeBasis span(const IntMatrix& generators) {
    LatticeBasis l(generators.cols());
    if (generators.rows() == 0) return l;
    IntMatrix h = hermite_normal_form(generators).h;
    std::vector<IntVector> rows;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (!h.is_zero_row(r)) rows.push_back(h.row(r));
    l.basis_ = IntMatrix::from_rows(rows, generators.cols());
    return l;
  }

  static LatticeBasis span(const std::vector<IntVector>& generators, std::size_t ambient_rank) {
    return span(IntMatrix::from_rows(generators, ambient_rank));
  }

  static LatticeBasis full(std::size_t ambient_rank) { return span(IntMatrix::identity(ambient_rank)); }

  std::size_t ambient_rank() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  /// Integer coordinates x with x * basis == v, if v lies in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const {
    if (v.size() != ambient_) throw Error(ErrorKind::input, "zlinalg", "vector has wrong ambient rank");
    IntVector residual = v;
    IntVector x(rank());
    std::size_t col = 0;
    for (std::size_t k = 0; k < rank(); ++k) {
      while (basis_(k, col) == 0) {
        if (residual[col] != 0) return std::nullopt;
        ++col;
      }
      if (residual[col] % basis_(k, col) != 0) return std::nullopt;
      x[k] = residual[col] / basis_(k, col);
      if (x[k] != 0)
        for (std::size_t c = col; c < ambient_; ++c) residual[c] -= x[k] * basis_(k, c);
      ++col;
    }
    for (std::size_t c = 0; c < ambient_; ++c)
      if (residual[c] != 0) return std::nullopt;
    return x;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  bool contains(const LatticeBasis& other) const {
    for (std::size_t r = 0; r < other.rank(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

/// Finite abelian group as invariant factors d_1 | ... | d_s (all >= 2) with
/// generator lifts given as rows in some ambient coordinate system.
struct AbelianGroupStructure {
  IntVector invariant_factors;
  IntMatrix generator_lifts;

  BigInt order() const {
    BigInt o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }
  bool trivial() const { return invariant_factors.empty(); }
};

/// Normalizes arbitrary cyclic orders (zeros and ones allowed) to invariant
/// factors; the group is the direct sum of Z/d over the input.
inline IntVector invariant_factors_of(const IntVector& cyclic_orders) {
  if (cyclic_orders.empty()) return {};
  SmithResult s = smith_normal_form(IntMatrix::diagonal(cyclic_orders));
  IntVector out;
  for (std::size_t k = 0; k < cyclic_orders.size(); ++k)
    if (s.d(k, k) != 1) out.push_back(s.d(k, k));
  return out;
}

/// numerator / denominator for lattices of equal rank with denominator inside
/// numerator. Generator lifts are expressed in ambient coordinates.
inline AbelianGroupStructure quotient_structure(const LatticeBasis& numerator, const LatticeBasis& denominator) {
  if (numerator.ambient_rank() != denominator.ambient_rank())
    throw Error(ErrorKind::input, "zlinalg", "lattices live in different ambient spaces");
  const std::size_t r = numerator.rank();
  std::vector<IntVector> coords;
  for (std::size_t k = 0; k < denominator.rank(); ++k) {
    auto x = numerator.coordinates(denominator.basis().row(k));
    if (!x) throw Error(ErrorKind::containment, "zlinalg", "denominator is not contained in numerator");
    coords.push_back(std::move(*x));
  }
  if (denominator.rank() < r)
    throw Error(ErrorKind::rank, "zlinalg", "denominator has lower rank than numerator; quotient is infinite");

  AbelianGroupStructure out;
  out.generator_lifts = IntMatrix(0, numerator.ambient_rank());
  if (r == 0) return out;
  IntMatrix x = IntMatrix::from_rows(coords, r);
  SmithResult s = smith_normal_form(x);
  IntMatrix new_basis = s.v_inv * numerator.basis();
  std::vector<IntVector> lifts;
  for (std::size_t k = 0; k < r; ++k) {
    if (s.d(k, k) == 1) continue;
    out.invariant_factors.push_back(s.d(k, k));
    lifts.push_back(new_basis.row(k));
  }
  out.generator_lifts = IntMatrix::from_rows(lifts, numerator.ambient_rank());
  return out;
}

/// Right kernel {x : a x = 0} as a lattice.
inline LatticeBasis kernel_lattice(const IntMatrix& a) {
  if (a.rows() == 0) return LatticeBasis::full(a.cols());
  HermiteResult hr = hermite_normal_form(a.transpose());
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < hr.h.rows(); ++r)
    if (hr.h.is_zero_row(r)) rows.push_back(hr.u.row(r));
  return LatticeBasis::span(rows, a.cols());
}

// ---------------------------------------------------------------------------
// Sparse systems

using SparseColumn = std::map<std::size_t, BigInt>;

class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseIntMatrix from_dense(const IntMatrix& m) {
    SparseIntMatrix s(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0) s.columns_[c][r] = m(r, c);
    return s;
  }

  IntMatrix to_dense() const {
    IntMatrix m(rows_, columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (const auto& [r, v] : columns_[c]) m(r, c) = v;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  void add(std::size_t r, std::size_t c, const BigInt& value) {
    if (value == 0) return;
    auto& col = columns_[c];
    auto [it, inserted] = col.try_emplace(r, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) col.erase(it);
    }
  }

  const SparseColumn& column(std::size_t c) const { return columns_[c]; }
  std::vector<SparseColumn>& columns() { return columns_; }

  IntVector apply(const IntVector& x) const {
    IntVector y(rows_);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (x[c] == 0) continue;
      for (const auto& [r, v] : columns_[c]) y[r] += v * x[c];
    }
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseColumn> columns_;
};

/// Class of a vector in the cokernel Z^rows / image(a): coordinates on the
/// free part, and residues on the torsion part (one per invariant factor).
struct CokernelClass {
  IntVector free;
  IntVector torsion;

  bool is_zero() const {
    for (const auto& v : free)
      if (v != 0) return false;
    for (const auto& v : torsion)
      if (v != 0) return false;
    return true;
  }
};

/// Factored form of an integer matrix a (rows x cols) supporting exact
/// solution of a x = b and the cokernel Z^rows / a Z^cols.
///
/// Unit pivots are eliminated sparsely first (each one removes a generator
/// and a relation of the cokernel); the remaining block is put in Smith form.
class IntegerSystem {
 public:
  explicit IntegerSystem(SparseIntMatrix a, bool track_solutions = true)
      : rows_(a.rows()), cols_(a.cols()), track_(track_solutions) {
    eliminate_units(a);
    factor_remainder(a);
  }

  explicit IntegerSystem(const IntMatrix& a, bool track_solutions = true)
      : IntegerSystem(SparseIntMatrix::from_dense(a), track_solutions) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Invariant factors (> 1) of the torsion part of the cokernel.
  const IntVector& torsion() const noexcept { return torsion_; }
  std::size_t free_rank() const noexcept { return free_rows_.size() + (dense_rows_.size() - dense_rank_); }
  std::size_t rank() const noexcept { return unit_steps_.size() + dense_rank_; }

  CokernelClass classify(const IntVector& b) const {
    IntVector w = b;
    project(w, nullptr);
    CokernelClass out;
    for (std::size_t r : free_rows_) out.free.push_back(w[r]);
    IntVector reduced = reduced_coordinates(w);
    std::size_t t = 0;
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      if (k >= dense_rank_) {
        out.free.push_back(reduced[k]);
      } else if (smith_.d(k, k) != 1) {
        out.torsion.push_back(detail::mod_floor(reduced[k], torsion_[t]));
        ++t;
      }
    }
    return out;
  }

  bool in_image(const IntVector& b) const { return classify(b).is_zero(); }

  /// Some x with a x = b, or nullopt. Deterministic.
  std::optional<IntVector> solve(const IntVector& b) const {
    if (!track_) throw Error(ErrorKind::internal, "zlinalg", "system was built without solution tracking");
    if (b.size() != rows_) throw Error(ErrorKind::input, "zlinalg", "right-hand side has wrong length");
    IntVector w = b;
    IntVector x(cols_);
    project(w, &x);
    for (std::size_t r : free_rows_)
      if (w[r] != 0) return std::nullopt;
    IntVector reduced = reduced_coordinates(w);
    IntVector y(dense_cols_.size());
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      if (k >= dense_rank_) {
        if (reduced[k] != 0) return std::nullopt;
        continue;
      }
      if (reduced[k] % smith_.d(k, k) != 0) return std::nullopt;
      y[k] = reduced[k] / smith_.d(k, k);
    }
    if (!dense_cols_.empty()) {
      IntVector z = smith_.v.apply(y);
      for (std::size_t c = 0; c < dense_cols_.size(); ++c) {
        if (z[c] == 0) continue;
        for (const auto& [orig, coef] : combos_[dense_cols_[c]]) x[orig] += z[c] * coef;
      }
    }
    return x;
  }

  /// Lifts to Z^rows of generators of the torsion part, one per invariant
  /// factor, in the order of `torsion()`.
  std::vector<IntVector> torsion_generators() const {
    std::vector<IntVector> gens;
    for (std::size_t k = 0; k < dense_rank_; ++k) {
      if (smith_.d(k, k) == 1) continue;
      IntVector g(rows_);
      for (std::size_t i = 0; i < dense_rows_.size(); ++i) g[dense_rows_[i]] = smith_.u_inv(i, k);
      gens.push_back(std::move(g));
    }
    return gens;
  }

 private:
  struct UnitStep {
    std::size_t row;
    BigInt unit;
    std::vector<std::pair<std::size_t, BigInt>> entries;  // pivot column without the pivot row
    std::size_t column;
  };

  void eliminate_units(SparseIntMatrix& a) {
    auto& cols = a.columns();
    std::vector<std::set<std::size_t>> row_cols(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : cols[c]) row_cols[r].insert(c);
    if (track_) {
      combos_.resize(cols_);
      for (std::size_t c = 0; c < cols_; ++c) combos_[c][c] = 1;
    }
    active_.assign(cols_, true);
    eliminated_row_.assign(rows_, false);

    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!active_[j]) continue;
        std::optional<std::size_t> pivot_row;
        for (const auto& [r, v] : cols[j]) {
          if (v != 1 && v != -1) continue;
          if (!pivot_row || row_cols[r].size() < row_cols[*pivot_row].size()) pivot_row = r;
        }
        if (!pivot_row) continue;
        progress = true;
        const std::size_t i = *pivot_row;
        const BigInt u = cols[j].at(i);
        std::vector<std::size_t> others(row_cols[i].begin(), row_cols[i].end());
        for (std::size_t jj : others) {
          if (jj == j) continue;
          const BigInt k = cols[jj].at(i) * u;
          for (const auto& [r, v] : cols[j]) {
            auto [it, inserted] = cols[jj].try_emplace(r, -k * v);
            if (inserted) {
              row_cols[r].insert(jj);
            } else {
              it->second -= k * v;
              if (it->second == 0) {
                cols[jj].erase(it);
                row_cols[r].erase(jj);
              }
            }
          }
          if (track_)
            for (const auto& [orig, coef] : combos_[j]) {
              BigInt& slot = combos_[jj][orig];
              slot -= k * coef;
              if (slot == 0) combos_[jj].erase(orig);
            }
        }
        UnitStep step{i, u, {}, j};
        for (const auto& [r, v] : cols[j]) {
          row_cols[r].erase(j);
          if (r != i) step.entries.emplace_back(r, v);
        }
        unit_steps_.push_back(std::move(step));
        active_[j] = false;
        eliminated_row_[i] = true;
      }
    }
  }

  void factor_remainder(const SparseIntMatrix& a) {
    std::vector<bool> touched(rows_, false);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!active_[j]) continue;
      dense_cols_.push_back(j);
      for (const auto& [r, v] : a.column(j)) touched[r] = true;
    }
    std::vector<std::size_t> dense_index(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (eliminated_row_[r]) continue;
      if (touched[r]) {
        dense_index[r] = dense_rows_.size();
        dense_rows_.push_back(r);
      } else {
        free_rows_.push_back(r);
      }
    }
    IntMatrix rem(dense_rows_.size(), dense_cols_.size());
    for (std::size_t c = 0; c < dense_cols_.size(); ++c)
      for (const auto& [r, v] : a.column(dense_cols_[c])) rem(dense_index[r], c) = v;
    smith_ = smith_normal_form(rem);
    dense_rank_ = smith_.rank();
    for (std::size_t k = 0; k < dense_rank_; ++k)
      if (smith_.d(k, k) != 1) torsion_.push_back(smith_.d(k, k));
  }

  // Reduces w modulo the unit relations so that it is supported on the
  // surviving rows; accumulates the solution contribution when x != nullptr.
  void project(IntVector& w, IntVector* x) const {
    if (w.size() != rows_) throw Error(ErrorKind::input, "zlinalg", "vector has wrong length");
    for (const auto& step : unit_steps_) {
      if (w[step.row] == 0) continue;
      const BigInt coef = w[step.row] * step.unit;
      for (const auto& [r, v] : step.entries) w[r] -= coef * v;
      w[step.row] = 0;
      if (x)
        for (const auto& [orig, c] : combos_[step.column]) (*x)[orig] += coef * c;
    }
  }

  IntVector reduced_coordinates(const IntVector& w) const {
    IntVector local(dense_rows_.size());
    for (std::size_t i = 0; i < dense_rows_.size(); ++i) local[i] = w[dense_rows_[i]];
    if (local.empty()) return local;
    return smith_.u.apply(local);
  }

  std::size_t rows_;
  std::size_t cols_;
  bool track_;
  std::vector<std::map<std::size_t, BigInt>> combos_;
  std::vector<bool> active_;
  std::vector<bool> eliminated_row_;
  std::vector<UnitStep> unit_steps_;
  std::vector<std::size_t> dense_rows_;
  std::vector<std::size_t> dense_cols_;
  std::vector<std::size_t> free_rows_;
  SmithResult smith_;
  std::size_t dense_rank_ = 0;
  IntVector torsion_;
};

/// Some integer x with a x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer_linear(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw Error(ErrorKind::input, "zlinalg", "right-hand side has wrong length");
  return IntegerSystem(a).solve(b);
}

}  // namespace normtorus

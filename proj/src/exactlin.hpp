#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ceppa {

// All linear algebra in this project is exact. Scalars are arbitrary-precision
// rationals (GMP); there is no floating point anywhere in the core.
using Rat = mpq_class;
using Int = mpz_class;

Rat parse_rat(const std::string& s);  // accepts "7", "-3/2"
std::string rat_str(const Rat& q);

// Sparse rational vector: (index, value) pairs sorted by index, values nonzero.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sv_unit(int idx, const Rat& c = Rat(1));
// dst += c * src, keeping the sorted/nonzero invariant.
void sv_add_scaled(SparseVec& dst, const Rat& c, const SparseVec& src);
void sv_scale(SparseVec& v, const Rat& c);
Rat sv_get(const SparseVec& v, int idx);
SparseVec sv_from_dense(const std::vector<Rat>& dense);
std::vector<Rat> sv_to_dense(const SparseVec& v, int n);

// Dense rational matrix. Sizes here stay small (a few hundred rows); the big
// sparse eliminations in the quotient engine go through RrefBasis instead.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rat& c) const;
  QMatrix transpose() const;
  bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;
  void swap_rows(int i, int j);
  std::vector<Rat> apply(const std::vector<Rat>& x) const;  // matrix * column vector

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

struct RrefResult {
  int rank = 0;
  QMatrix rref;                 // rank x cols, fully reduced rows in pivot order
  std::vector<int> pivot_cols;  // ascending
  QMatrix nullspace;            // (cols - rank) x cols, canonical kernel basis
};

// Reduced row echelon form with deterministic pivoting: scan columns left to
// right, take the first remaining row with a nonzero entry. The output depends
// only on the row span and the column order, so it is canonical.
RrefResult rref(const QMatrix& m);
int rank(const QMatrix& m);
QMatrix kernel_basis(const QMatrix& m);
std::optional<std::vector<Rat>> solve_linear(const QMatrix& a, const std::vector<Rat>& b);
std::optional<QMatrix> try_inverse(const QMatrix& m);

// Jordan type of a nilpotent operator, read off the rank sequence of its
// powers. Returns block sizes ascending; throws NotNilpotent if no power
// of the operator vanishes.
std::vector<int> nilpotent_block_sizes(const QMatrix& op);

// Square matrix over Q[t], truncated at a fixed degree.
struct PolyMatrix {
  int n = 0;
  int trunc = 0;  // coefficients kept for t^0 .. t^trunc
  std::vector<QMatrix> coeff;

  static PolyMatrix zero(int n, int trunc);
  static PolyMatrix identity(int n, int trunc);
  QMatrix& at(int k) { return coeff[k]; }
  const QMatrix& at(int k) const { return coeff[k]; }
  bool operator==(const PolyMatrix& o) const { return n == o.n && trunc == o.trunc && coeff == o.coeff; }
};

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
// Multiplicative inverse as a power series, truncated. The constant term must
// be invertible; otherwise SingularConstantTerm.
PolyMatrix series_inverse(const PolyMatrix& p, int trunc);

// Incrementally maintained canonical row basis: rows are kept fully
// auto-reduced with unit leading entries, so at any moment they are exactly
// the RREF of the span of everything inserted so far. Insertion order does
// not affect the final basis.
class RrefBasis {
 public:
  bool insert(SparseVec v);               // true if the dimension grew
  SparseVec reduce(SparseVec v) const;    // remainder of v modulo the span
  bool contains(const SparseVec& v) const;
  // Coefficients of v over canonical_rows(), or nullopt if v is outside.
  std::optional<SparseVec> coords_in_basis(const SparseVec& v) const;
  int dim() const { return int(rows_.size()); }
  std::vector<SparseVec> canonical_rows() const;  // sorted by pivot column
  const std::map<int, int>& pivots() const { return pivot_row_; }
  bool same_span(const RrefBasis& o) const;

 private:
  std::vector<SparseVec> rows_;
  std::map<int, int> pivot_row_;  // pivot column -> index into rows_
  // non-pivot column -> rows that may hold a nonzero there (lazy, may be
  // stale); consulted and discarded when the column becomes a pivot
  std::map<int, std::vector<int>> col_index_;
};

// Canonical kernel basis of the map x -> (row_i . x), rows over n columns.
std::vector<SparseVec> sparse_kernel_basis(const std::vector<SparseVec>& rows, int ncols);

}  // namespace ceppa

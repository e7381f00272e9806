#include "exactlin.hpp"

#include <algorithm>

namespace ceppa {

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(errc::parse_error, "empty rational literal");
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad rational literal '" + s + "'");
  }
}

std::string rat_str(const Rat& q) { return q.get_str(); }

SparseVec sv_unit(int idx, const Rat& c) {
  SparseVec v;
  if (c != 0) v.emplace_back(idx, c);
  return v;
}

void sv_add_scaled(SparseVec& dst, const Rat& c, const SparseVec& src) {
  if (c == 0 || src.empty()) return;
  SparseVec out;
  out.reserve(dst.size() + src.size());
  auto i = dst.begin();
  auto j = src.begin();
  while (i != dst.end() || j != src.end()) {
    if (j == src.end() || (i != dst.end() && i->first < j->first)) {
      out.push_back(*i);
      ++i;
    } else if (i == dst.end() || j->first < i->first) {
      Rat v = c * j->second;
      if (v != 0) out.emplace_back(j->first, std::move(v));
      ++j;
    } else {
      Rat v = i->second + c * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

void sv_scale(SparseVec& v, const Rat& c) {
  if (c == 0) {
    v.clear();
    return;
  }
  for (auto& e : v) e.second *= c;
}

Rat sv_get(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const std::pair<int, Rat>& e, int k) { return e.first < k; });
  if (it != v.end() && it->first == idx) return it->second;
  return Rat(0);
}

SparseVec sv_from_dense(const std::vector<Rat>& dense) {
  SparseVec v;
  for (int i = 0; i < int(dense.size()); ++i)
    if (dense[i] != 0) v.emplace_back(i, dense[i]);
  return v;
}

std::vector<Rat> sv_to_dense(const SparseVec& v, int n) {
  std::vector<Rat> out(n);
  for (auto& [i, c] : v) out[i] = c;
  return out;
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  require(cols_ == o.rows_, errc::bad_argument, "matrix product shape mismatch");
  QMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rat& b = o.at(k, j);
        if (b != 0) out.at(i, j) += a * b;
      }
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_argument, "matrix sum shape mismatch");
  QMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, errc::bad_argument, "matrix difference shape mismatch");
  QMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
  return out;
}

QMatrix QMatrix::scaled(const Rat& c) const {
  QMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * c;
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

void QMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

std::vector<Rat> QMatrix::apply(const std::vector<Rat>& x) const {
  require(int(x.size()) == cols_, errc::bad_argument, "matrix apply shape mismatch");
  std::vector<Rat> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[j] != 0) out[i] += at(i, j) * x[j];
  return out;
}

RrefResult rref(const QMatrix& m) {
  QMatrix a = m;
  const int R = a.rows(), C = a.cols();
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < C && pr < R; ++c) {
    int sel = -1;
    for (int i = pr; i < R; ++i)
      if (a.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    a.swap_rows(pr, sel);
    Rat lead = a.at(pr, c);
    for (int j = c; j < C; ++j) a.at(pr, j) /= lead;
    for (int i = 0; i < R; ++i) {
      if (i == pr || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (int j = c; j < C; ++j) a.at(i, j) -= f * a.at(pr, j);
    }
    pivots.push_back(c);
    ++pr;
  }
  RrefResult res;
  res.rank = pr;
  res.pivot_cols = pivots;
  res.rref = QMatrix(pr, C);
  for (int i = 0; i < pr; ++i)
    for (int j = 0; j < C; ++j) res.rref.at(i, j) = a.at(i, j);
  // kernel: one vector per free column, back-filled from pivot rows
  std::vector<bool> is_pivot(C, false);
  for (int c : pivots) is_pivot[c] = true;
  res.nullspace = QMatrix(C - pr, C);
  int k = 0;
  for (int j = 0; j < C; ++j) {
    if (is_pivot[j]) continue;
    res.nullspace.at(k, j) = 1;
    for (int i = 0; i < pr; ++i) res.nullspace.at(k, pivots[i]) = -res.rref.at(i, j);
    ++k;
  }
  return res;
}

int rank(const QMatrix& m) { return rref(m).rank; }

QMatrix kernel_basis(const QMatrix& m) { return rref(m).nullspace; }

std::optional<std::vector<Rat>> solve_linear(const QMatrix& a, const std::vector<Rat>& b) {
  require(int(b.size()) == a.rows(), errc::bad_argument, "solve shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  for (int c : r.pivot_cols)
    if (c == a.cols()) return std::nullopt;  // inconsistent
  std::vector<Rat> x(a.cols());
  for (int i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.rref.at(i, a.cols());
  return x;
}

std::optional<QMatrix> try_inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RrefResult r = rref(aug);
  if (r.rank < n || r.pivot_cols[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.rref.at(i, n + j);
  return inv;
}

std::vector<int> nilpotent_block_sizes(const QMatrix& op) {
  require(op.rows() == op.cols(), errc::bad_argument, "operator must be square");
  const int n = op.rows();
  std::vector<int> ranks{n};  // rank of op^0
  QMatrix p = op;
  for (int k = 1; k <= n && ranks.back() > 0; ++k) {
    ranks.push_back(rank(p));
    p = p * op;
  }
  if (ranks.back() != 0) fail(errc::not_nilpotent, "no power of the operator vanishes");
  auto rk = [&](int k) { return k < int(ranks.size()) ? ranks[k] : 0; };
  std::vector<int> blocks;
  int total = 0;
  for (int s = 1; s <= n; ++s) {
    int count = (rk(s - 1) - rk(s)) - (rk(s) - rk(s + 1));
    for (int c = 0; c < count; ++c) blocks.push_back(s);
    total += count * s;
  }
  require(total == n, errc::internal, "block sizes do not add up to the dimension");
  return blocks;
}

PolyMatrix PolyMatrix::zero(int n, int trunc) {
  PolyMatrix p;
  p.n = n;
  p.trunc = trunc;
  p.coeff.assign(trunc + 1, QMatrix(n, n));
  return p;
}

PolyMatrix PolyMatrix::identity(int n, int trunc) {
  PolyMatrix p = zero(n, trunc);
  p.coeff[0] = QMatrix::identity(n);
  return p;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  require(a.n == b.n, errc::bad_argument, "poly matrix size mismatch");
  int trunc = std::min(a.trunc, b.trunc);
  PolyMatrix out = PolyMatrix::zero(a.n, trunc);
  for (int i = 0; i <= std::min(a.trunc, trunc); ++i) {
    if (a.coeff[i].is_zero()) continue;
    for (int j = 0; i + j <= trunc && j <= b.trunc; ++j) {
      if (b.coeff[j].is_zero()) continue;
      out.coeff[i + j] = out.coeff[i + j] + a.coeff[i] * b.coeff[j];
    }
  }
  return out;
}

PolyMatrix series_inverse(const PolyMatrix& p, int trunc) {
  auto inv0 = try_inverse(p.at(0));
  if (!inv0) fail(errc::singular_constant_term, "constant term is not invertible");
  PolyMatrix s = PolyMatrix::zero(p.n, trunc);
  s.coeff[0] = *inv0;
  for (int k = 1; k <= trunc; ++k) {
    QMatrix acc(p.n, p.n);
    for (int j = 1; j <= std::min(k, p.trunc); ++j) {
      if (p.coeff[j].is_zero()) continue;
      acc = acc + p.coeff[j] * s.coeff[k - j];
    }
    s.coeff[k] = (*inv0 * acc).scaled(Rat(-1));
  }
  return s;
}

bool RrefBasis::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rat lead = v.front().second;
  if (lead != 1)
    for (auto& e : v) e.second /= lead;
  int p = v.front().first;
  // clear the new pivot column from the rows that touch it
  if (auto it = col_index_.find(p); it != col_index_.end()) {
    std::vector<int> touched = std::move(it->second);
    col_index_.erase(it);
    for (int ri : touched) {
      Rat c = sv_get(rows_[ri], p);
      if (c == 0) continue;
      sv_add_scaled(rows_[ri], -c, v);
      for (size_t k = 1; k < v.size(); ++k) col_index_[v[k].first].push_back(ri);
    }
  }
  pivot_row_[p] = int(rows_.size());
  for (size_t k = 1; k < v.size(); ++k) col_index_[v[k].first].push_back(int(rows_.size()));
  rows_.push_back(std::move(v));
  return true;
}

SparseVec RrefBasis::reduce(SparseVec v) const {
  // Left-to-right sweep. A basis row touches only columns at or beyond its
  // pivot, and none of those are other pivots, so the prefix already scanned
  // never changes.
  size_t i = 0;
  while (i < v.size()) {
    auto it = pivot_row_.find(v[i].first);
    if (it == pivot_row_.end()) {
      ++i;
      continue;
    }
    Rat c = -v[i].second;
    sv_add_scaled(v, c, rows_[it->second]);
  }
  return v;
}

bool RrefBasis::contains(const SparseVec& v) const { return reduce(v).empty(); }

std::optional<SparseVec> RrefBasis::coords_in_basis(const SparseVec& v) const {
  SparseVec rem = v;
  std::map<int, Rat> used;  // pivot column -> coefficient
  size_t i = 0;
  while (i < rem.size()) {
    auto it = pivot_row_.find(rem[i].first);
    if (it == pivot_row_.end()) {
      ++i;
      continue;
    }
    used[rem[i].first] = rem[i].second;
    Rat c = -rem[i].second;
    sv_add_scaled(rem, c, rows_[it->second]);
  }
  if (!rem.empty()) return std::nullopt;
  SparseVec out;
  int ord = 0;
  for (auto& [pc, ri] : pivot_row_) {
    (void)ri;
    auto it = used.find(pc);
    if (it != used.end() && it->second != 0) out.emplace_back(ord, it->second);
    ++ord;
  }
  return out;
}

std::vector<SparseVec> RrefBasis::canonical_rows() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (auto& [pc, ri] : pivot_row_) {
    (void)pc;
    out.push_back(rows_[ri]);
  }
  return out;
}

bool RrefBasis::same_span(const RrefBasis& o) const { return canonical_rows() == o.canonical_rows(); }

std::vector<SparseVec> sparse_kernel_basis(const std::vector<SparseVec>& rows, int ncols) {
  RrefBasis b;
  for (const auto& r : rows) b.insert(r);
  std::vector<SparseVec> kernel;
  const auto& piv = b.pivots();
  auto canon = b.canonical_rows();
  // pivot column -> ordinal of its canonical row
  std::map<int, int> ord;
  {
    int k = 0;
    for (auto& [pc, ri] : piv) {
      (void)ri;
      ord[pc] = k++;
    }
  }
  for (int j = 0; j < ncols; ++j) {
    if (piv.count(j)) continue;
    std::map<int, Rat> entries;
    entries[j] = 1;
    for (auto& [pc, k] : ord) {
      Rat c = sv_get(canon[k], j);
      if (c != 0) entries[pc] = -c;
    }
    SparseVec v(entries.begin(), entries.end());
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace ceppa

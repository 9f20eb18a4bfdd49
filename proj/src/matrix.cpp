#include "tannakit/matrix.hpp"

#include <algorithm>

namespace tannakit {

Mat::Mat(int rows, int cols, const VarList& vars) : rows_(rows), cols_(cols), vars_(vars) {
  a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), RatFunc::zero(vars));
}

Mat Mat::identity(int n, const VarList& vars) {
  Mat m(n, n, vars);
  for (int i = 0; i < n; ++i) m.at(i, i) = RatFunc::one(vars);
  return m;
}

Mat Mat::zeros(int rows, int cols, const VarList& vars) { return Mat(rows, cols, vars); }

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  Mat r(rows_, o.cols_, vars_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const RatFunc& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const RatFunc& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + x * y;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
  return r;
}

Mat Mat::scaled(const RatFunc& f) const {
  Mat r = *this;
  for (auto& e : r.a_) e = e * f;
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_, vars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Mat::equals(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].equals(o.a_[i])) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  return equals(identity(rows_, vars_));
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows_ + b.rows_, a.cols_ + b.cols_, a.vars_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) r.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
  return r;
}

Mat Mat::kronecker(const Mat& a, const Mat& b) {
  Mat r(a.rows_ * b.rows_, a.cols_ * b.cols_, a.vars_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l)
          r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
    }
  return r;
}

Mat Mat::substituted(const SubstEndo& sigma) const {
  Mat r = *this;
  if (sigma.is_identity()) return r;
  for (auto& e : r.a_) e = rf_substitute(e, sigma);
  return r;
}

Mat Mat::derived(const DerivationTable& table) const {
  Mat r = *this;
  for (auto& e : r.a_) e = rf_derive(e, table);
  return r;
}

// ---------------------------------------------------------------------------
// Fraction-free (Bareiss) elimination over the polynomial ring.

namespace {

struct Echelon {
  std::vector<std::vector<MultiPoly>> m;  // rows x (n + nrhs)
  std::vector<int> pivot_col;             // per pivot row
  int n = 0;                              // unknown count
  int sign = 1;
};

// Clear denominators row by row, then eliminate.
Echelon bareiss(const Mat& a, const std::vector<std::vector<RatFunc>>& rhs_cols) {
  const VarList& vars = a.vars();
  int m = a.rows(), n = a.cols();
  int nrhs = static_cast<int>(rhs_cols.size());
  Echelon e;
  e.n = n;
  e.m.assign(static_cast<size_t>(m), {});
  for (int i = 0; i < m; ++i) {
    MultiPoly d = MultiPoly::constant(vars, Q(1));
    auto fold = [&](const RatFunc& f) {
      if (!(f.den().is_constant() && f.den().constant_value() == 1)) d = d * f.den();
    };
    for (int j = 0; j < n; ++j) fold(a.at(i, j));
    for (int k = 0; k < nrhs; ++k) fold(rhs_cols[static_cast<size_t>(k)][static_cast<size_t>(i)]);
    auto lift = [&](const RatFunc& f) {
      auto q = d.divide_exact(f.den());
      if (!q) throw std::logic_error("bareiss: denominator does not divide row multiplier");
      return f.num() * *q;
    };
    auto& row = e.m[static_cast<size_t>(i)];
    row.reserve(static_cast<size_t>(n + nrhs));
    for (int j = 0; j < n; ++j) row.push_back(lift(a.at(i, j)));
    for (int k = 0; k < nrhs; ++k)
      row.push_back(lift(rhs_cols[static_cast<size_t>(k)][static_cast<size_t>(i)]));
  }

  MultiPoly prev = MultiPoly::constant(vars, Q(1));
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // pick the sparsest available pivot; small pivots keep the minors small
    int p = -1;
    size_t best = 0;
    for (int i = r; i < m; ++i) {
      const MultiPoly& cand = e.m[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (cand.is_zero()) continue;
      size_t sz = cand.terms().size();
      for (int j = c; j < n + nrhs; ++j) sz += e.m[static_cast<size_t>(i)][static_cast<size_t>(j)].terms().size();
      if (p < 0 || sz < best) {
        p = i;
        best = sz;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      std::swap(e.m[static_cast<size_t>(p)], e.m[static_cast<size_t>(r)]);
      e.sign = -e.sign;
    }
    const MultiPoly piv = e.m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int i = r + 1; i < m; ++i) {
      auto& row = e.m[static_cast<size_t>(i)];
      const MultiPoly head = row[static_cast<size_t>(c)];
      for (int j = c; j < n + nrhs; ++j) {
        MultiPoly t = row[static_cast<size_t>(j)] * piv -
                      head * e.m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        auto q = t.divide_exact(prev);
        if (!q) throw std::logic_error("bareiss: non-exact division");
        row[static_cast<size_t>(j)] = std::move(*q);
      }
      row[static_cast<size_t>(c)] = MultiPoly::zero(vars);
    }
    prev = piv;
    e.pivot_col.push_back(c);
    ++r;
  }
  return e;
}

}  // namespace

RatFunc determinant(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const VarList& vars = a.vars();
  if (a.rows() == 0) return RatFunc::one(vars);
  Echelon e = bareiss(a, {});
  if (static_cast<int>(e.pivot_col.size()) < a.rows()) return RatFunc::zero(vars);
  // det of the cleared matrix is the last Bareiss pivot; undo the row multipliers
  RatFunc det = RatFunc::from_poly(
      e.m[static_cast<size_t>(a.rows() - 1)][static_cast<size_t>(a.cols() - 1)]);
  if (e.sign < 0) det = -det;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const MultiPoly& den = a.at(i, j).den();
      if (!(den.is_constant() && den.constant_value() == 1))
        det = det / RatFunc::from_poly(den);
    }
  }
  return det;
}

namespace {

// Collapse a fraction whose denominator happens to divide the numerator.
RatFunc maybe_reduce(const RatFunc& f) {
  if (f.den().is_constant()) return f;
  auto q = f.num().divide_exact(f.den());
  return q ? RatFunc::from_poly(*q) : f;
}

// Back-substitute one right-hand side (already reduced alongside the matrix).
// `reduce` collapses each quotient to a polynomial; only worth attempting when
// the divisions are known to be exact (pivot-scaled nullspace vectors).
std::vector<RatFunc> back_substitute(const Echelon& e, int rhs_index,
                                     const std::vector<RatFunc>& free_values,
                                     const VarList& vars, bool reduce = false) {
  int n = e.n;
  int nrhs_off = n + rhs_index;
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : e.pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<RatFunc> x(static_cast<size_t>(n), RatFunc::zero(vars));
  {
    size_t fi = 0;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[static_cast<size_t>(c)]) x[static_cast<size_t>(c)] = free_values[fi++];
  }
  for (int r = static_cast<int>(e.pivot_col.size()) - 1; r >= 0; --r) {
    int c = e.pivot_col[static_cast<size_t>(r)];
    const auto& row = e.m[static_cast<size_t>(r)];
    RatFunc acc = rhs_index >= 0 ? RatFunc::from_poly(row[static_cast<size_t>(nrhs_off)])
                                 : RatFunc::zero(vars);
    for (int j = c + 1; j < n; ++j) {
      if (row[static_cast<size_t>(j)].is_zero() || x[static_cast<size_t>(j)].is_zero()) continue;
      acc = acc - RatFunc::from_poly(row[static_cast<size_t>(j)]) * x[static_cast<size_t>(j)];
    }
    RatFunc v = acc / RatFunc::from_poly(row[static_cast<size_t>(c)]);
    x[static_cast<size_t>(c)] = reduce ? maybe_reduce(v) : v;
  }
  return x;
}

}  // namespace

std::optional<LinearSolution> linear_solve(const Mat& a, const std::vector<RatFunc>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const VarList& vars = a.vars();
  Echelon e = bareiss(a, {b});
  int n = a.cols();
  // inconsistent if a fully reduced row still has a nonzero rhs
  int rank = static_cast<int>(e.pivot_col.size());
  for (int i = rank; i < a.rows(); ++i) {
    if (!e.m[static_cast<size_t>(i)][static_cast<size_t>(n)].is_zero()) return std::nullopt;
  }
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : e.pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  int nfree = n - rank;

  LinearSolution sol;
  sol.particular =
      back_substitute(e, 0, std::vector<RatFunc>(static_cast<size_t>(nfree), RatFunc::zero(vars)),
                      vars);
  // scale the free value by the last pivot: by Cramer the whole vector is
  // then polynomial and back-substitution reduces every division exactly
  RatFunc scale = rank > 0
                      ? RatFunc::from_poly(e.m[static_cast<size_t>(rank - 1)]
                                              [static_cast<size_t>(e.pivot_col[static_cast<size_t>(
                                                  rank - 1)])])
                      : RatFunc::one(vars);
  for (int f = 0; f < nfree; ++f) {
    std::vector<RatFunc> fv(static_cast<size_t>(nfree), RatFunc::zero(vars));
    fv[static_cast<size_t>(f)] = scale;
    sol.nullspace.push_back(back_substitute(e, -1, fv, vars, true));
  }
  return sol;
}

std::optional<Mat> mat_inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  int n = a.rows();
  const VarList& vars = a.vars();
  std::vector<std::vector<RatFunc>> rhs;
  for (int k = 0; k < n; ++k) {
    std::vector<RatFunc> col(static_cast<size_t>(n), RatFunc::zero(vars));
    col[static_cast<size_t>(k)] = RatFunc::one(vars);
    rhs.push_back(std::move(col));
  }
  Echelon e = bareiss(a, rhs);
  if (static_cast<int>(e.pivot_col.size()) < n) return std::nullopt;
  Mat inv(n, n, vars);
  for (int k = 0; k < n; ++k) {
    auto x = back_substitute(e, k, {}, vars);
    for (int i = 0; i < n; ++i) inv.at(i, k) = x[static_cast<size_t>(i)];
  }
  return inv;
}

}  // namespace tannakit

#ifndef TANNAKIT_MATRIX_HPP
#define TANNAKIT_MATRIX_HPP

#include <optional>
#include <vector>

#include "tannakit/field.hpp"

namespace tannakit {

/// Dense matrix of exact rational functions.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols, const VarList& vars);

  static Mat identity(int n, const VarList& vars);
  static Mat zeros(int rows, int cols, const VarList& vars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const VarList& vars() const { return vars_; }

  RatFunc& at(int r, int c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
  const RatFunc& at(int r, int c) const { return a_[static_cast<size_t>(r * cols_ + c)]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const RatFunc& f) const;
  Mat transpose() const;

  bool equals(const Mat& o) const;
  bool is_identity() const;

  static Mat block_diag(const Mat& a, const Mat& b);
  static Mat kronecker(const Mat& a, const Mat& b);

  /// Entrywise substitution endomorphism.
  Mat substituted(const SubstEndo& sigma) const;
  /// Entrywise derivative.
  Mat derived(const DerivationTable& table) const;

private:
  int rows_ = 0, cols_ = 0;
  VarList vars_;
  std::vector<RatFunc> a_;
};

RatFunc determinant(const Mat& m);

/// Exact inverse via fraction-free elimination; nullopt if singular.
std::optional<Mat> mat_inverse(const Mat& m);

struct LinearSolution {
  std::vector<RatFunc> particular;
  std::vector<std::vector<RatFunc>> nullspace;
};

/// Solve A x = b exactly (Bareiss fraction-free elimination over the
/// polynomial ring). Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> linear_solve(const Mat& a, const std::vector<RatFunc>& b);

}  // namespace tannakit

#endif

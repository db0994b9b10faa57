#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "qaut/scalar.hpp"

namespace qaut {

// Dense matrix over Gaussian rationals; 0-based indexing.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<Exact>> rows);

  static Mat identity(int n);
  static Mat diag(const std::vector<Exact>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Exact& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Exact& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  Mat transpose() const;
  Mat conj() const;
  Mat conj_transpose() const { return conj().transpose(); }

  Exact trace() const;
  Exact det() const;
  // Throws SingularMatrix when not invertible.
  Mat inverse() const;
  std::optional<Mat> try_inverse() const;
  // A nonzero kernel vector (as an n x 1 matrix), if the matrix is singular.
  std::optional<Mat> kernel_vector() const;

  bool is_diagonal() const;
  bool is_lower_triangular() const;
  bool is_hermitian() const;
  // det of the top-left k x k corner, 1 <= k <= n.
  Exact leading_principal_minor(int k) const;
  // Hermitian with all leading principal minors > 0 (exact Sylvester test).
  bool is_positive_definite() const;

  friend Mat operator*(const Mat& x, const Mat& y);
  friend Mat operator+(const Mat& x, const Mat& y);
  friend Mat operator-(const Mat& x, const Mat& y);
  friend Mat operator*(const Exact& c, const Mat& x);
  friend bool operator==(const Mat& x, const Mat& y);
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  // Largest |entry| of the difference after embedding into doubles.
  static double max_abs_diff(const Mat& x, const Mat& y);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Exact> a_;
};

}  // namespace qaut

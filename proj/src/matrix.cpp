#include "qaut/matrix.hpp"

#include <cmath>

namespace qaut {

Mat::Mat(std::initializer_list<std::initializer_list<Exact>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  a_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) fail(Errc::ShapeMismatch, "ragged matrix literal");
    for (const auto& v : row) a_.push_back(v);
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; i++) m.at(i, i) = Exact(1);
  return m;
}

Mat Mat::diag(const std::vector<Exact>& entries) {
  Mat m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); i++) m.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int r = 0; r < rows_; r++)
    for (int c = 0; c < cols_; c++) t.at(c, r) = at(r, c);
  return t;
}

Mat Mat::conj() const {
  Mat t(rows_, cols_);
  for (int r = 0; r < rows_; r++)
    for (int c = 0; c < cols_; c++) t.at(r, c) = at(r, c).conj();
  return t;
}

Exact Mat::trace() const {
  Exact t;
  for (int i = 0; i < rows_ && i < cols_; i++) t += at(i, i);
  return t;
}

namespace {

// Gauss-Jordan on [A | B]; returns false if A is singular.
bool eliminate(Mat& a, Mat& b) {
  int n = a.rows();
  for (int col = 0; col < n; col++) {
    int pivot = -1;
    for (int r = col; r < n; r++)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col) {
      for (int c = 0; c < n; c++) std::swap(a.at(pivot, c), a.at(col, c));
      for (int c = 0; c < b.cols(); c++) std::swap(b.at(pivot, c), b.at(col, c));
    }
    Exact inv = Exact(1) / a.at(col, col);
    for (int c = 0; c < n; c++) a.at(col, c) *= inv;
    for (int c = 0; c < b.cols(); c++) b.at(col, c) *= inv;
    for (int r = 0; r < n; r++) {
      if (r == col || a.at(r, col).is_zero()) continue;
      Exact f = a.at(r, col);
      for (int c = 0; c < n; c++) a.at(r, c) -= f * a.at(col, c);
      for (int c = 0; c < b.cols(); c++) b.at(r, c) -= f * b.at(col, c);
    }
  }
  return true;
}

}  // namespace

Exact Mat::det() const {
  if (!square()) fail(Errc::ShapeMismatch, "det of non-square matrix");
  Mat a = *this;
  int n = rows_;
  Exact d(1);
  for (int col = 0; col < n; col++) {
    int pivot = -1;
    for (int r = col; r < n; r++)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Exact();
    if (pivot != col) {
      for (int c = 0; c < n; c++) std::swap(a.at(pivot, c), a.at(col, c));
      d = -d;
    }
    d *= a.at(col, col);
    Exact inv = Exact(1) / a.at(col, col);
    for (int r = col + 1; r < n; r++) {
      if (a.at(r, col).is_zero()) continue;
      Exact f = a.at(r, col) * inv;
      for (int c = col; c < n; c++) a.at(r, c) -= f * a.at(col, c);
    }
  }
  return d;
}

std::optional<Mat> Mat::try_inverse() const {
  if (!square()) fail(Errc::ShapeMismatch, "inverse of non-square matrix");
  Mat a = *this;
  Mat b = identity(rows_);
  if (!eliminate(a, b)) return std::nullopt;
  return b;
}

Mat Mat::inverse() const {
  auto inv = try_inverse();
  if (!inv) fail(Errc::SingularMatrix, "matrix is singular");
  return *inv;
}

std::optional<Mat> Mat::kernel_vector() const {
  if (!square()) fail(Errc::ShapeMismatch, "kernel of non-square matrix");
  int n = rows_;
  Mat a = *this;
  std::vector<int> pivot_col_of_row(n, -1);
  std::vector<bool> is_pivot(n, false);
  int rank = 0;
  for (int col = 0; col < n && rank < n; col++) {
    int pivot = -1;
    for (int r = rank; r < n; r++)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = 0; c < n; c++) std::swap(a.at(pivot, c), a.at(rank, c));
    Exact inv = Exact(1) / a.at(rank, col);
    for (int c = 0; c < n; c++) a.at(rank, c) *= inv;
    for (int r = 0; r < n; r++) {
      if (r == rank || a.at(r, col).is_zero()) continue;
      Exact f = a.at(r, col);
      for (int c = 0; c < n; c++) a.at(r, c) -= f * a.at(rank, c);
    }
    pivot_col_of_row[rank] = col;
    is_pivot[col] = true;
    rank++;
  }
  if (rank == n) return std::nullopt;
  int free_col = 0;
  while (is_pivot[free_col]) free_col++;
  Mat v(n, 1);
  v.at(free_col, 0) = Exact(1);
  for (int r = 0; r < rank; r++) v.at(pivot_col_of_row[r], 0) = -a.at(r, free_col);
  return v;
}

bool Mat::is_diagonal() const {
  for (int r = 0; r < rows_; r++)
    for (int c = 0; c < cols_; c++)
      if (r != c && !at(r, c).is_zero()) return false;
  return true;
}

bool Mat::is_lower_triangular() const {
  for (int r = 0; r < rows_; r++)
    for (int c = r + 1; c < cols_; c++)
      if (!at(r, c).is_zero()) return false;
  return true;
}

bool Mat::is_hermitian() const {
  if (!square()) return false;
  for (int r = 0; r < rows_; r++)
    for (int c = 0; c < cols_; c++)
      if (at(r, c) != at(c, r).conj()) return false;
  return true;
}

Exact Mat::leading_principal_minor(int k) const {
  if (k < 1 || k > rows_ || !square()) fail(Errc::IndexOutOfRange, "bad principal minor order");
  Mat sub(k, k);
  for (int r = 0; r < k; r++)
    for (int c = 0; c < k; c++) sub.at(r, c) = at(r, c);
  return sub.det();
}

bool Mat::is_positive_definite() const {
  if (!is_hermitian()) return false;
  for (int k = 1; k <= rows_; k++) {
    Exact m = leading_principal_minor(k);
    if (m.im != 0 || m.re <= 0) return false;
  }
  return true;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols_ != y.rows_) fail(Errc::ShapeMismatch, "matrix product shape mismatch");
  Mat out(x.rows_, y.cols_);
  for (int r = 0; r < x.rows_; r++)
    for (int k = 0; k < x.cols_; k++) {
      if (x.at(r, k).is_zero()) continue;
      for (int c = 0; c < y.cols_; c++) out.at(r, c) += x.at(r, k) * y.at(k, c);
    }
  return out;
}

Mat operator+(const Mat& x, const Mat& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) fail(Errc::ShapeMismatch, "matrix sum shape mismatch");
  Mat out(x.rows_, x.cols_);
  for (size_t i = 0; i < x.a_.size(); i++) out.a_[i] = x.a_[i] + y.a_[i];
  return out;
}

Mat operator-(const Mat& x, const Mat& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) fail(Errc::ShapeMismatch, "matrix diff shape mismatch");
  Mat out(x.rows_, x.cols_);
  for (size_t i = 0; i < x.a_.size(); i++) out.a_[i] = x.a_[i] - y.a_[i];
  return out;
}

Mat operator*(const Exact& c, const Mat& x) {
  Mat out(x.rows_, x.cols_);
  for (size_t i = 0; i < x.a_.size(); i++) out.a_[i] = c * x.a_[i];
  return out;
}

bool operator==(const Mat& x, const Mat& y) {
  return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
}

double Mat::max_abs_diff(const Mat& x, const Mat& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) fail(Errc::ShapeMismatch, "shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < x.a_.size(); i++) m = std::max(m, std::abs(x.a_[i].embed() - y.a_[i].embed()));
  return m;
}

}  // namespace qaut

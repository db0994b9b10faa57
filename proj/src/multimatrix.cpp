#include "qaut/multimatrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qaut {

MultiMatrix::MultiMatrix(std::vector<Mat> blocks) {
  if (blocks.empty()) fail(Errc::UsageError, "a multimatrix needs at least one block");
  for (const auto& b : blocks) {
    if (!b.square() || b.rows() == 0) fail(Errc::ShapeMismatch, "blocks must be square and nonempty");
  }
  std::vector<int> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return blocks[a].rows() < blocks[b].rows(); });
  for (int idx : order) {
    auto inv = blocks[idx].try_inverse();
    if (!inv) fail(Errc::SingularBlock, "block " + std::to_string(idx + 1) + " is singular");
    offsets_.push_back(total_dim_);
    total_dim_ += blocks[idx].rows() * blocks[idx].rows();
    blocks_.push_back(std::move(blocks[idx]));
    inverses_.push_back(std::move(*inv));
    perm_.push_back(idx);
  }
}

const Mat& MultiMatrix::block(int lambda) const {
  if (lambda < 1 || lambda > block_count()) fail(Errc::IndexOutOfRange, "block index out of range");
  return blocks_[lambda - 1];
}

const Mat& MultiMatrix::block_inverse(int lambda) const {
  if (lambda < 1 || lambda > block_count()) fail(Errc::IndexOutOfRange, "block index out of range");
  return inverses_[lambda - 1];
}

int MultiMatrix::dim(int lambda) const { return block(lambda).rows(); }

Exact MultiMatrix::block_trace(int lambda) const { return block(lambda).trace(); }

Exact MultiMatrix::trace_of_inverse() const {
  Exact t;
  for (const auto& inv : inverses_) t += inv.trace();
  return t;
}

int MultiMatrix::basis_index(int i, int j, int lambda) const {
  int d = dim(lambda);
  if (i < 1 || i > d || j < 1 || j > d) fail(Errc::IndexOutOfRange, "matrix unit index out of range");
  return offsets_[lambda - 1] + (i - 1) * d + (j - 1);
}

MultiMatrix::BasisTriple MultiMatrix::basis_triple(int index) const {
  if (index < 0 || index >= total_dim_) fail(Errc::IndexOutOfRange, "basis index out of range");
  int lambda = block_count();
  while (offsets_[lambda - 1] > index) lambda--;
  int rel = index - offsets_[lambda - 1];
  int d = dim(lambda);
  return {rel / d + 1, rel % d + 1, lambda};
}

std::optional<int> MultiMatrix::basis_product(int b1, int b2) const {
  BasisTriple x = basis_triple(b1), y = basis_triple(b2);
  if (x.lambda != y.lambda || x.j != y.i) return std::nullopt;
  return basis_index(x.i, y.j, x.lambda);
}

std::vector<Exact> MultiMatrix::unit() const {
  std::vector<Exact> u(total_dim_);
  for (int lambda = 1; lambda <= block_count(); lambda++)
    for (int k = 1; k <= dim(lambda); k++) u[basis_index(k, k, lambda)] = Exact(1);
  return u;
}

Exact MultiMatrix::trace_form(int i, int j, int lambda) const {
  int d = dim(lambda);
  if (i < 1 || i > d || j < 1 || j > d) fail(Errc::IndexOutOfRange, "matrix unit index out of range");
  return inverses_[lambda - 1].at(i - 1, j - 1);
}

Exact MultiMatrix::trace_form(int basis) const {
  BasisTriple t = basis_triple(basis);
  return trace_form(t.i, t.j, t.lambda);
}

Exact MultiMatrix::trace_form(const std::vector<Exact>& element) const {
  if (static_cast<int>(element.size()) != total_dim_)
    fail(Errc::DimensionMismatch, "element length does not match the algebra dimension");
  Exact out;
  for (int b = 0; b < total_dim_; b++)
    if (!element[b].is_zero()) out += element[b] * trace_form(b);
  return out;
}

MeasureReport MultiMatrix::measure_report() const {
  MeasureReport rep;
  Exact common = block_trace(1);
  rep.homogeneous = !common.is_zero();
  for (int lambda = 2; lambda <= block_count() && rep.homogeneous; lambda++)
    if (block_trace(lambda) != common) rep.homogeneous = false;
  if (rep.homogeneous) rep.lambda_A = common;

  Exact tr_inv = trace_of_inverse();
  rep.normalized = rep.homogeneous && tr_inv == common;
  rep.normalizable = rep.homogeneous && !tr_inv.is_zero();
  if (rep.normalizable) rep.xi_squared = tr_inv / common;

  rep.positive = true;
  for (const auto& b : blocks_)
    if (!b.is_positive_definite()) rep.positive = false;
  return rep;
}

Mat MultiMatrix::delta_tilde() const {
  Mat table(total_dim_, total_dim_);
  for (int lambda = 1; lambda <= block_count(); lambda++) {
    const Mat& e = blocks_[lambda - 1];
    int d = dim(lambda);
    for (int k = 1; k <= d; k++)
      for (int l = 1; l <= d; l++)
        for (int r = 1; r <= d; r++) {
          const Exact& coeff = e.at(l - 1, r - 1);
          if (coeff.is_zero()) continue;
          table.at(basis_index(k, l, lambda), basis_index(r, k, lambda)) += coeff;
        }
  }
  return table;
}

std::vector<Exact> MultiMatrix::phi_tilde() const {
  Mat delta = delta_tilde();
  std::vector<Exact> phi(total_dim_);
  for (int b = 0; b < total_dim_; b++) {
    Exact acc;
    for (int b1 = 0; b1 < total_dim_; b1++) {
      auto left = basis_product(b, b1);
      if (!left) continue;
      for (int b2 = 0; b2 < total_dim_; b2++) {
        const Exact& coeff = delta.at(b1, b2);
        if (coeff.is_zero()) continue;
        auto full = basis_product(*left, b2);
        if (!full) continue;
        acc += coeff * trace_form(*full);
      }
    }
    phi[b] = acc;
  }
  return phi;
}

MultiMatrix MultiMatrix::conjugate(const std::vector<Mat>& P) const {
  if (static_cast<int>(P.size()) != block_count())
    fail(Errc::ShapeMismatch, "conjugating multimatrix needs one block per block");
  std::vector<Mat> out;
  for (int lambda = 1; lambda <= block_count(); lambda++) {
    const Mat& p = P[lambda - 1];
    if (p.rows() != dim(lambda) || p.cols() != dim(lambda))
      fail(Errc::ShapeMismatch, "conjugating block has wrong size");
    auto inv = p.try_inverse();
    if (!inv) fail(Errc::SingularP, "conjugating block is singular");
    out.push_back(p * blocks_[lambda - 1] * *inv);
  }
  return MultiMatrix(std::move(out));
}

std::optional<mpq_class> reconstruct_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p/q of x until hitting tol or the cap.
  double rem = x;
  mpz_class p0 = 1, q0 = 0, p1, q1;
  {
    double a0 = std::floor(rem);
    p1 = static_cast<long>(a0);
    q1 = 1;
    rem -= a0;
  }
  for (int step = 0; step < 64; step++) {
    mpq_class cand(p1, q1);
    cand.canonicalize();
    if (std::abs(cand.get_d() - x) < tol) return cand;
    if (rem < 1e-15) break;
    rem = 1.0 / rem;
    double a = std::floor(rem);
    if (a > 1e18) break;
    rem -= a;
    mpz_class ai = static_cast<long>(a);
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

namespace {

Eigen::MatrixXcd embed_matrix(const Mat& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); r++)
    for (int c = 0; c < m.cols(); c++) out(r, c) = m.at(r, c).embed();
  return out;
}

Mat from_complex(const Eigen::MatrixXcd& m) {
  Mat out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int r = 0; r < m.rows(); r++)
    for (int c = 0; c < m.cols(); c++)
      out.at(r, c) = Exact(mpq_class(m(r, c).real()), mpq_class(m(r, c).imag()));
  return out;
}

// An exact eigenvalue of M in the Gaussian rationals near the float hint.
std::optional<Exact> exact_eigenvalue_near(const Mat& m, Approx hint) {
  auto re = reconstruct_rational(hint.real());
  auto im = reconstruct_rational(hint.imag());
  if (!re || !im) return std::nullopt;
  Exact mu(*re, *im);
  Mat shifted = m - mu * Mat::identity(m.rows());
  if (shifted.det().is_zero()) return mu;
  return std::nullopt;
}

// Upper-triangularization by exact eigenvector deflation: Q M Q^-1 upper.
std::optional<Mat> upper_triangularizer(const Mat& m) {
  int n = m.rows();
  if (n == 1) return Mat::identity(1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(embed_matrix(m), false);
  std::optional<Exact> mu;
  for (int k = 0; k < n && !mu; k++) mu = exact_eigenvalue_near(m, solver.eigenvalues()(k));
  if (!mu) return std::nullopt;
  auto v = (m - *mu * Mat::identity(n)).kernel_vector();
  if (!v) return std::nullopt;
  int pivot = 0;
  while (v->at(pivot, 0).is_zero()) pivot++;
  // Basis change sending e_1 to the eigenvector: S = [v | e_j, j != pivot].
  Mat s(n, n);
  for (int r = 0; r < n; r++) s.at(r, 0) = v->at(r, 0);
  int col = 1;
  for (int j = 0; j < n; j++) {
    if (j == pivot) continue;
    s.at(j, col++) = Exact(1);
  }
  Mat s_inv = s.inverse();
  Mat conjugated = s_inv * m * s;
  Mat trailing(n - 1, n - 1);
  for (int r = 1; r < n; r++)
    for (int c = 1; c < n; c++) trailing.at(r - 1, c - 1) = conjugated.at(r, c);
  auto q_trailing = upper_triangularizer(trailing);
  if (!q_trailing) return std::nullopt;
  Mat q_ext = Mat::identity(n);
  for (int r = 1; r < n; r++)
    for (int c = 1; c < n; c++) q_ext.at(r, c) = q_trailing->at(r - 1, c - 1);
  Mat q = q_ext * s_inv;
  // Clear the first row against the trailing block whenever mu is not an
  // eigenvalue there, so simple eigenvalues yield a diagonal block.
  Mat up = q * m * q.inverse();
  Mat shifted_trailing(n - 1, n - 1);
  for (int r = 1; r < n; r++)
    for (int c = 1; c < n; c++) shifted_trailing.at(r - 1, c - 1) = up.at(r, c);
  shifted_trailing = shifted_trailing - *mu * Mat::identity(n - 1);
  if (auto inv = shifted_trailing.try_inverse()) {
    Mat row(1, n - 1);
    for (int c = 1; c < n; c++) row.at(0, c - 1) = up.at(0, c);
    Mat y = row * *inv;
    Mat g_inv = Mat::identity(n);
    for (int c = 1; c < n; c++) g_inv.at(0, c) = -y.at(0, c - 1);
    q = g_inv * q;
  }
  return q;
}

}  // namespace

TriangularizeResult MultiMatrix::triangularize() const {
  TriangularizeResult res;
  res.exact = true;
  for (int lambda = 1; lambda <= block_count(); lambda++) {
    const Mat& e = blocks_[lambda - 1];
    int n = e.rows();
    if (e.is_lower_triangular()) {
      res.P.push_back(Mat::identity(n));
      res.T.push_back(e);
      continue;
    }
    // A lower-triangularizer of E is the transpose-inverse of an upper
    // triangularizer of E^t.
    if (auto q = upper_triangularizer(e.transpose())) {
      Mat p = q->transpose().inverse();
      Mat t = p * e * p.inverse();
      res.P.push_back(std::move(p));
      res.T.push_back(std::move(t));
      continue;
    }
    res.exact = false;
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(embed_matrix(e.transpose()), true);
    Mat p = from_complex(schur.matrixU().transpose());
    Mat t = p * e * p.inverse();
    for (int r = 0; r < n; r++)
      for (int c = r + 1; c < n; c++)
        res.residual = std::max(res.residual, std::abs(t.at(r, c).embed()));
    res.P.push_back(std::move(p));
    res.T.push_back(std::move(t));
  }
  return res;
}

QParameterResult MultiMatrix::q_parameter() const {
  MeasureReport rep = measure_report();
  if (!rep.normalizable) fail(Errc::NotNormalizable, "q parameter needs a normalizable multimatrix");
  QParameterResult out;
  if (rep.normalized) {
    out.s = ScalarValue::make_exact(trace_of_inverse());
    out.roots = solve_unit_quadratic(out.s.ev);
    out.sign_ambiguity = false;
    return out;
  }
  out.sign_ambiguity = true;
  Exact s_squared = trace_of_inverse() * block_trace(1);
  if (auto s = sqrt_exact(s_squared)) {
    out.s = ScalarValue::make_exact(*s);
    out.roots = solve_unit_quadratic(*s);
  } else {
    Approx sa = std::sqrt(s_squared.embed());
    out.s = ScalarValue::make_approx(sa);
    out.roots = solve_unit_quadratic(sa);
  }
  return out;
}

InvolutivePairResult involutive_pair_check(const Mat& F, double tolerance) {
  if (!F.square()) fail(Errc::ShapeMismatch, "involutive pair check needs a square matrix");
  int n = F.rows();
  Mat prod = F * F.conj();
  Mat id = Mat::identity(n);
  InvolutivePairResult out;
  if (Mat::max_abs_diff(prod, id) <= tolerance) {
    out.sign = 1;
  } else if (Mat::max_abs_diff(prod, Exact(-1) * id) <= tolerance) {
    out.sign = -1;
  } else {
    fail(Errc::NotInvolutivePair, "F conj(F) is not plus or minus the identity");
  }
  Exact tr;
  for (int r = 0; r < n; r++)
    for (int c = 0; c < n; c++) tr += Exact(F.at(r, c).norm());
  out.trace_ff_star = tr;
  out.passes = n < 3 || (tr.im == 0 && tr.re > 2);
  return out;
}

}  // namespace qaut

#pragma once

#include <optional>
#include <vector>

#include "qaut/matrix.hpp"

namespace qaut {

struct MeasureReport {
  bool homogeneous = false;
  std::optional<Exact> lambda_A;  // common block trace, present iff homogeneous
  bool normalized = false;
  bool normalizable = false;
  std::optional<Exact> xi_squared;  // present iff normalizable
  bool positive = false;
};

struct TriangularizeResult {
  bool exact = false;
  std::vector<Mat> P;  // blockwise change of basis, T_lam = P_lam E_lam P_lam^-1
  std::vector<Mat> T;  // lower-triangular (up to `residual` when not exact)
  double residual = 0.0;
};

struct QParameterResult {
  ScalarValue s;  // one root of s^2 = Tr(E^-1) tr(E_1)
  UnitQuadraticRoots roots;
  bool sign_ambiguity = false;  // set unless E is normalized
};

struct InvolutivePairResult {
  int sign = 1;  // R with F conj(F) = R I
  Exact trace_ff_star;
  bool passes = false;  // size >= 3 implies tr(F F*) > 2; smaller sizes exempt
};

// Direct sum of invertible square blocks over the Gaussian rationals; models
// the measured multimatrix algebra it induces. Blocks are kept sorted by
// nondecreasing size; the ingestion order is retained as a permutation.
// Mathematical indices (i, j, lambda) are 1-based throughout.
class MultiMatrix {
 public:
  explicit MultiMatrix(std::vector<Mat> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Mat& block(int lambda) const;
  const Mat& block_inverse(int lambda) const;
  int dim(int lambda) const;
  // Original input position of sorted block lambda (0-based positions).
  const std::vector<int>& permutation() const { return perm_; }

  Exact block_trace(int lambda) const;
  // Tr(E^-1), the sum of the traces of the inverted blocks.
  Exact trace_of_inverse() const;
  // dim A_E as a vector space, the sum of the d_lambda^2.
  int total_dim() const { return total_dim_; }

  // Linear index of the basis element e_{ij,lambda}, 0-based and row-major
  // within each block.
  int basis_index(int i, int j, int lambda) const;
  struct BasisTriple {
    int i, j, lambda;
  };
  BasisTriple basis_triple(int index) const;
  // e_{b1} e_{b2}, either another basis element or zero.
  std::optional<int> basis_product(int b1, int b2) const;
  // Coefficients of the unit 1 = sum of all e_{kk,lambda}.
  std::vector<Exact> unit() const;

  // tr_E(e_{ij,lambda}) = (E_lambda^-1)_{ij}.
  Exact trace_form(int i, int j, int lambda) const;
  Exact trace_form(int basis) const;
  // tr_E extended linearly.
  Exact trace_form(const std::vector<Exact>& element) const;

  MeasureReport measure_report() const;

  // Coefficient table of delta~(1) over basis pairs: entry (b1, b2) is the
  // coefficient of e_{b1} (x) e_{b2}.
  Mat delta_tilde() const;
  // phi~ on each basis element, computed through the three-map composite
  // (tr_E o m) o (m (x) id) o (id (x) delta~).
  std::vector<Exact> phi_tilde() const;

  // Blockwise P_lambda E_lambda P_lambda^-1; P given in sorted block order.
  MultiMatrix conjugate(const std::vector<Mat>& P) const;

  TriangularizeResult triangularize() const;

  QParameterResult q_parameter() const;

 private:
  std::vector<Mat> blocks_;
  std::vector<Mat> inverses_;
  std::vector<int> perm_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

InvolutivePairResult involutive_pair_check(const Mat& F, double tolerance = 1e-9);

// Simplest continued-fraction convergent of x within tol, with denominator at
// most max_den. Candidates still need exact verification by the caller: every
// real admits such a convergent once denominators grow past ~1/sqrt(tol).
std::optional<mpq_class> reconstruct_rational(double x, long max_den = 1000000, double tol = 1e-9);

}  // namespace qaut

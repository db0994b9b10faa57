#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaut/matrix.hpp"
#include "qaut/multimatrix.hpp"
#include "qaut/scalar.hpp"

namespace qaut {

// Cubic tensor over Gaussian rationals, 0-based.
struct Ten3 {
  Ten3() = default;
  explicit Ten3(int n) : n(n), a(static_cast<size_t>(n) * n * n) {}

  int n = 0;
  std::vector<Exact> a;

  bool empty() const { return n == 0; }
  Exact& at(int i, int j, int k) { return a[(static_cast<size_t>(i) * n + j) * n + k]; }
  const Exact& at(int i, int j, int k) const {
    return a[(static_cast<size_t>(i) * n + j) * n + k];
  }

  friend bool operator==(const Ten3& x, const Ten3& y) { return x.n == y.n && x.a == y.a; }
  friend bool operator!=(const Ten3& x, const Ten3& y) { return !(x == y); }
};

// The defining data of a pairing (e, delta, C, D, tau, omega) on a space W of
// dimension n, in the basis w_1..w_n:
//   e(w_i (x) w_j) = e_{ij}        delta(1) = sum delta_{ij} w_i (x) w_j
//   C(w_i (x) w_j) = sum_k c_{ijk} w_k
//   D(w_k) = sum_{ij} d_{kij} w_i (x) w_j
// omega is a cube root of unity; primitive cube roots are not Gaussian
// rationals, so it is stored as the exponent in w^pow with w = exp(2 pi i/3).
// star, when present, is the antilinear involution w_i* = sum_k star_{ki} w_k
// extended conjugate-linearly.
struct PairingData {
  int dim_w = 0;
  Mat e;
  Mat delta;
  Ten3 c;
  // Empty when not supplied; derive_d fills it from delta and c.
  Ten3 d;
  Exact tau;
  int omega_pow = 0;
  std::optional<Mat> star;
};

// The paper's dimension-3 example: W spanned by the traceless quaternion
// units, e = -2I, delta(1) = -1/2 sum e_k (x) e_k, C the cross-product table,
// tau = 3, star the matrix adjoint e_k* = -e_k.  The stored D is the one
// derived from delta and C, the unique scaling with CD = id.
PairingData quaternion_pairing();

// D(w) = (id (x) C)(delta(1) (x) w).  Recomputes from delta and c even when a
// d tensor is supplied; callers compare against data.d when they want to
// validate a stored tensor.
Ten3 derive_d(const PairingData& data);

struct TauReport {
  Exact value;
  bool nonzero = false;
};

// Full contraction of e against delta(1).  A zero value is reported, not
// thrown: it violates the tau != 0 hypothesis and the caller decides.
TauReport tau_of(const PairingData& data);

struct RelationCheck {
  std::string id;
  bool checked = false;
  bool passed = false;
  // Largest entrywise deviation after embedding into complex doubles.
  double residual = 0.0;
  std::string detail;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  std::vector<std::string> notes;
  bool all_passed = false;
  // "I_tau" when omega = 1, "II" otherwise.
  std::string type;
};

// Evaluates both sides of the displayed relations (13a)-(13i) by contraction.
// (13g)-(13i) are stated only for omega = 1 and need tau != 1; when omega = 1
// the compact-notation aliases (2a)-(2h) are emitted as well, with R = 1.
// Exact comparison by default; tol > 0 accepts embedded residuals up to tol.
RelationReport verify_relations(const PairingData& data, double tol = 0.0);

// Star coefficients of a vector: star matrix applied to the conjugate.
std::vector<Exact> apply_star(const PairingData& data, const std::vector<Exact>& v);

struct StarReport {
  std::vector<RelationCheck> checks;
  bool all_passed = false;
};

// Checks (3a) w** = w, (3b) e(v* (x) w*) = conj(e(w (x) v)), (3c) positivity
// of the Hermitian form w -> e(w (x) w*), (3d) C(v* (x) w*) = C(w (x) v)*.
// (3a), (3b), (3d) are exact matrix identities; (3c) is decided exactly by the
// Sylvester criterion on the form's Gram matrix, with a deterministic vector
// sample (basis, sums, i-multiples, seeded rationals) kept as a smoke test.
StarReport check_star_structure(const PairingData& data);

// The algebra C 1_A (+) W with basis a_0 = 1_A, a_m = w_m and product
//   (lambda, v)(mu, w) = (lambda mu + (tau-1)^-1 e(v (x) w),
//                         lambda w + mu v + C(v (x) w)).
// The measure is the 1_A coordinate.
struct FoldedAlgebra {
  int dim = 0;
  // a_i a_j = sum_k m_{ijk} a_k.
  Ten3 m;

  std::vector<Exact> unit() const;
  Exact phi(const std::vector<Exact>& x) const { return x.at(0); }
  std::vector<Exact> multiply(const std::vector<Exact>& x, const std::vector<Exact>& y) const;
};

FoldedAlgebra fold_algebra(const PairingData& data);

struct AssociativityReport {
  bool associative = false;
  // Witness basis triple and the two products when associativity fails.
  int i = -1, j = -1, k = -1;
  std::vector<Exact> lhs, rhs;
};

AssociativityReport check_associativity(const FoldedAlgebra& alg);

struct SeparabilityReport {
  // Coefficients of r in A (x) A: entry (p, q) multiplies a_p (x) a_q.
  Mat r;
  bool multiplies_to_unit = false;
  bool commutes = false;
};

// r = (tau+1)^-1 (1 (x) 1 + (tau-1) delta(1)); verifies m(r) = 1_A and
// a r = r a for every basis element.
SeparabilityReport separability_idempotent(const FoldedAlgebra& alg, const PairingData& data);

struct HomogeneityReport {
  // phi~(1_A); equals tau + 1 for valid data.
  Exact c;
  bool proportional = false;
};

// Inverts the Gram matrix B_{ij} = phi(a_i a_j), forms the dual element
// z = sum B^-1_{ij} a_i a_j and the functional phi~(a) = phi(a z), and tests
// phi~ = c phi.
HomogeneityReport check_homogeneity_folded(const FoldedAlgebra& alg);

struct ReconstructResult {
  PairingData pairing;
  // Monomial coordinates of the chosen basis of A_E: one, then w_1..w_n.
  std::vector<Exact> one;
  std::vector<std::vector<Exact>> w_basis;
  // Monomial index eliminated by the row reduction against phi.
  int pivot = -1;
};

// Inverse of the folding construction for a multimatrix pair (A_E, tr_E):
// normalizes phi = tr_E to phi(1) = 1, splits A_E = C 1 (+) ker(phi) by row
// reduction against phi, reads e and C off the product in that splitting with
// tau = Tr(E^-1) tr(E_1) - 1, and derives delta and D.
ReconstructResult reconstruct_from_multimatrix(const MultiMatrix& em);

}  // namespace qaut

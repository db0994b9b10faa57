#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaut/multimatrix.hpp"
#include "qaut/scalar.hpp"

namespace qaut {

enum class RegimeKind { Even, Odd };

// Root-of-unity regime data: N0 = 2*N1 in the even regime, 2*N1 - 1 in the
// odd one.
struct Regime {
  RegimeKind kind = RegimeKind::Even;
  int N1 = 2;

  int N0() const { return kind == RegimeKind::Even ? 2 * N1 : 2 * N1 - 1; }
};

// One simple comodule label. Indices are the full subscripts; WV and VU are
// the atomic tensor-pair simples of the non-generic regimes. The unit is
// W0 in the generic and even alphabets and V0 in the odd one; the factories
// canonicalize the aliases (V0 = W0, U0 = V0, degenerate pairs).
struct SimpleLabel {
  enum class Kind { GenericW, EvenW, EvenV, EvenWV, OddV, OddU, OddVU };
  Kind kind = Kind::GenericW;
  int a = 0;
  int b = 0;

  auto operator<=>(const SimpleLabel&) const = default;
};

SimpleLabel generic_w(int n);
SimpleLabel even_w(int n);
SimpleLabel even_v(int m);
SimpleLabel even_wv(int n, int m);
SimpleLabel odd_v(int n);            // n even
SimpleLabel odd_u(int n);            // n even
SimpleLabel odd_vu(int n, int m);    // n, m odd

long long label_dim(const SimpleLabel& label);
std::string to_string(const SimpleLabel& label);

// Finitely supported multiset of simple labels; zero multiplicities absent.
using FusionElement = std::map<SimpleLabel, long long>;

void add_label(FusionElement& x, const SimpleLabel& label, long long mult = 1);
long long dim(const FusionElement& x);
std::string to_string(const FusionElement& x);

// Clebsch-Gordan product on GenericW labels, extended bilinearly:
// W_m (x) W_n = sum of W_k for k = |m-n| .. m+n.
FusionElement tensor_generic(const FusionElement& x, const FusionElement& y);

// Product in a root-of-unity regime. Applies the displayed single-step rules
// and their unit/associativity consequences only; nullopt means the theorem
// does not decompose the product (NotDetermined).
std::optional<FusionElement> tensor_nongeneric(const Regime& regime, const FusionElement& x,
                                               const FusionElement& y);

struct FiltrationLayer {
  FusionElement content;  // composition factors of the subquotient
  long long dim = 0;
};

struct FiltrationReport {
  Regime regime;
  std::string product;  // the non-semisimple tensor product, rendered
  long long product_dim = 0;
  std::vector<FiltrationLayer> layers;  // bottom subquotient first
  long long layer_dim_sum = 0;
  bool audit_ok = false;  // sum of layer dims equals the product dim
};

// Simple filtration of the boundary product W_{N1-1} (x) W_1 (even) or
// U_{2(N1-1)} (x) U_2 (odd). The odd layer list is reported verbatim even
// though its dimensions do not sum to the product dimension.
FiltrationReport filtration_report(const Regime& regime);

struct DeformationReport {
  ScalarValue s;  // q + 1/q candidate
  bool sign_ambiguity = false;
  UnitQuadraticRoots q_candidates;
  QClass q_class;
  bool cosemisimple = false;
  std::optional<Regime> regime;  // present iff the class is non-generic
  std::vector<std::string> alphabet;
};

// Chains the deformation parameter of the measured algebra through the
// root-of-unity classification into the regime alphabet.
DeformationReport deformation_type_report(const MultiMatrix& E, int bound = 64,
                                          double tol = 1e-9);

}  // namespace qaut

#pragma once

#include <array>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qaut/scalar.hpp"

namespace qaut {

// Generator X with upper indices over the first multimatrix of the pair and
// lower indices over the second; all six fields are 1-based.
struct GenIndex {
  int ui = 1, uj = 1, ub = 1;  // upper row, column, block
  int li = 1, lj = 1, lb = 1;  // lower row, column, block

  friend bool operator==(const GenIndex&, const GenIndex&) = default;
};

// Interned generator set for a fixed pair of block-size lists. IDs are dense
// and sorted by the generator order: ascending on blocks (ub, lb), then on
// rows (ui, li), then descending on columns (uj, lj). The column clause is
// deliberately reversed; it is what makes the reduction rules decreasing.
class GenTable {
 public:
  GenTable(std::vector<int> dims_upper, std::vector<int> dims_lower);

  int size() const { return static_cast<int>(gens_.size()); }
  const GenIndex& gen(int id) const;
  int id(const GenIndex& g) const;
  // -1, 0, +1 in the generator order.
  int compare(const GenIndex& a, const GenIndex& b) const;

  const std::vector<int>& dims_upper() const { return dims_upper_; }
  const std::vector<int>& dims_lower() const { return dims_lower_; }
  bool same_shape(const GenTable& other) const {
    return dims_upper_ == other.dims_upper_ && dims_lower_ == other.dims_lower_;
  }

 private:
  void validate(const GenIndex& g) const;

  std::vector<int> dims_upper_, dims_lower_;
  std::vector<GenIndex> gens_;
  std::map<std::array<int, 6>, int> lookup_;
};

// Word in generator IDs; the empty word is the unit monomial.
using Monomial = std::vector<int>;

// Length first, then lexicographic in the generator order (IDs are ranks).
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(b, a); }
};

// Terms sorted descending, so begin() is the leading term.
using NCPoly = std::map<Monomial, Exact, MonGreater>;

// Term-count guard shared by polynomial products and reduction.
inline constexpr size_t kTermCap = 1000000;

void add_term(NCPoly& p, const Monomial& m, const Exact& c);
NCPoly mono_poly(Monomial m, Exact c = Exact(1));
NCPoly scalar_poly(const Exact& c);
NCPoly poly_add(const NCPoly& a, const NCPoly& b);
NCPoly poly_sub(const NCPoly& a, const NCPoly& b);
NCPoly poly_scale(const Exact& c, const NCPoly& a);
NCPoly poly_mul(const NCPoly& a, const NCPoly& b);

// Tensor polynomials for the comultiplication identities; slot monomials are
// words over possibly different generator tables, tracked by the caller.
using TensorPoly = std::map<std::pair<Monomial, Monomial>, Exact>;
using Tensor3Poly = std::map<std::array<Monomial, 3>, Exact>;

void add_tensor_term(TensorPoly& p, Monomial left, Monomial right, const Exact& c);
void add_tensor3_term(Tensor3Poly& p, Monomial a, Monomial b, Monomial c, const Exact& coeff);

}  // namespace qaut

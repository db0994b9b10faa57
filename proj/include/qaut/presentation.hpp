#pragma once

#include <memory>
#include <vector>

#include "qaut/matrix.hpp"
#include "qaut/multimatrix.hpp"
#include "qaut/rewrite.hpp"
#include "qaut/words.hpp"

namespace qaut {

// Generator table of the pair (E, F): upper indices over E, lower over F.
std::shared_ptr<const GenTable> make_table(const MultiMatrix& E, const MultiMatrix& F);

// All generator labels in the generator order.
std::vector<GenIndex> generators(const MultiMatrix& E, const MultiMatrix& F);

// Defining relations of the universal algebra of the pair (E, F), stored as
// polynomials that the relations set to zero. Four families: partial
// isometry products, row sums, weighted column sums, and the bilinear-form
// intertwining; each family is emitted in canonical row-major index order.
struct RelationSet {
  std::vector<NCPoly> family1, family2, family3, family4;
  size_t total() const {
    return family1.size() + family2.size() + family3.size() + family4.size();
  }
};

RelationSet relations(const MultiMatrix& E, const MultiMatrix& F);

// The rewriting system obtained from the relations when E is diagonal, F is
// lower-triangular and both largest blocks have size > 1 (HypothesisViolation
// otherwise, pointing to extended mode). Extended mode drops the size
// requirement and marks the system unverified; E diagonal and F
// lower-triangular stay mandatory, as the rules are not even
// order-decreasing without them.
ReductionSystem reduction_rules(const MultiMatrix& E, const MultiMatrix& F, bool extended = false);

// Comultiplication through the middle multimatrix G: left slot lives over
// the pair (E, G), right slot over (G, F).
TensorPoly comultiplication(const MultiMatrix& E, const MultiMatrix& F, const MultiMatrix& G,
                            const GenIndex& x);

// Counit of the pair (E, E).
Exact counit(const MultiMatrix& E, const GenIndex& x);

// Antipode of the pair (E, F); the image lives over the pair (F, E).
NCPoly antipode(const MultiMatrix& E, const MultiMatrix& F, const GenIndex& x);

// Isomorphism onto the algebra of the conjugated pair (P E P^-1, Q F Q^-1),
// blockwise with matching shapes, so the image uses the same table layout.
// `inverse` applies the two-sided inverse instead; the composite is the
// identity on generators.
NCPoly conjugation_morphism(const MultiMatrix& E, const MultiMatrix& F, const std::vector<Mat>& P,
                            const std::vector<Mat>& Q, const GenIndex& x, bool inverse = false);

}  // namespace qaut

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaut/multimatrix.hpp"
#include "qaut/words.hpp"

namespace qaut {

// Rewriting rule lhs -> rhs. Every rhs monomial must be strictly smaller than
// the lhs in the monomial order; the constructor of ReductionSystem enforces
// this, so reduction always terminates. An empty lhs forces rhs == 0 (nothing
// is smaller than the unit monomial), which is the rule certifying the zero
// algebra. `family` tags the four stock rule shapes (1..4); completion adds
// rules with family 0.
struct Rule {
  Monomial lhs;
  NCPoly rhs;
  int family = 0;
};

enum class Strategy { Leftmost, Rightmost, Random };

class ReductionSystem {
 public:
  // `verified` records whether the structural hypotheses behind the stock
  // rules held when the system was built; extended-mode systems carry false.
  ReductionSystem(std::shared_ptr<const GenTable> table, std::vector<Rule> rules,
                  bool verified = true);

  const GenTable& table() const { return *table_; }
  std::shared_ptr<const GenTable> table_ptr() const { return table_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool verified() const { return verified_; }
  bool has_empty_lhs() const { return has_empty_lhs_; }
  int max_lhs_length() const { return max_lhs_len_; }

  // Rule IDs whose lhs equals m, ascending. Distinct rules may share an lhs;
  // reduction always applies the lowest ID, which keeps results deterministic
  // and lets the confluence check compare the tied right-hand sides.
  const std::vector<int>* rules_for(const Monomial& m) const;

 private:
  std::shared_ptr<const GenTable> table_;
  std::vector<Rule> rules_;
  std::map<Monomial, std::vector<int>, MonGreater> index_;
  bool verified_ = true;
  bool has_empty_lhs_ = false;
  int max_lhs_len_ = 0;
};

// One rewriting step applied to the largest reducible monomial of p; the
// strategy picks among that monomial's reducible positions (Leftmost is the
// default and the normal form is strategy-independent once the system is
// confluent). Throws CoefficientExplosion past the term budget.
NCPoly reduce(const NCPoly& p, const ReductionSystem& sys, Strategy strategy = Strategy::Leftmost,
              uint64_t seed = 0);

enum class AmbiguityKind { Overlap, Inclusion };

// Minimal local divergence between two rules. For an inclusion, lhs of
// rule_a occurs inside lhs of rule_b at `offset` (equal left-hand sides are
// the degenerate case witness == both). For an overlap, a proper suffix of
// lhs_a equals a proper prefix of lhs_b and the witness is the merged word;
// `offset` is where lhs_b starts inside it.
struct Ambiguity {
  AmbiguityKind kind;
  int rule_a = 0, rule_b = 0;
  Monomial witness;
  int offset = 0;
};

std::vector<Ambiguity> enumerate_ambiguities(const ReductionSystem& sys);

struct ConfluenceFailure {
  size_t ambiguity_index = 0;
  Ambiguity ambiguity;
  NCPoly nf_left, nf_right;
};

struct ConfluenceReport {
  bool resolved = false;
  size_t ambiguity_count = 0;
  std::vector<ConfluenceFailure> failures;
};

// Resolves every ambiguity by reducing both one-step descendants to normal
// form; the work is split across `threads` workers (0 picks the hardware
// count) and failures are merged in ambiguity order, so the report is
// deterministic.
ConfluenceReport check_confluence(const ReductionSystem& sys, unsigned threads = 0);

// Count of irreducible monomials per degree 0..max_degree. With `listing`
// the words themselves are returned alongside (intended for small degrees).
struct IrreducibleCount {
  std::vector<long long> counts;
  std::vector<std::vector<Monomial>> words;  // filled only when listing
};

IrreducibleCount irreducible_monomials(const ReductionSystem& sys, int max_degree,
                                       bool listing = false);

enum class CertifyStatus { Certificate, Inconclusive };

// Nonvanishing certificate for the algebra of the pair (E, F): conjugate E
// to an exactly diagonal and F to an exactly lower-triangular multimatrix,
// build the stock rules for the conjugated pair and check confluence. When
// the check resolves, the unit monomial is irreducible, hence 1 != 0.
// Requires both largest blocks of size > 1 and matching trace data
// (HypothesisViolation names the failing condition); exact triangularization
// being unavailable or the confluence check failing yields Inconclusive.
struct CertifyResult {
  CertifyStatus status = CertifyStatus::Inconclusive;
  std::string reason;
  size_t ambiguity_count = 0;
};

CertifyResult certify_nonzero(const MultiMatrix& E, const MultiMatrix& F);

// Bounded completion: orient the normal-form difference of each failed
// ambiguity into a new rule, keeping every original rule, until the system
// is confluent or nothing of degree <= max_degree is left to add. Throws
// BudgetExceeded when max_degree exceeds 6 or the round budget runs out.
struct CompletionResult {
  ReductionSystem system;
  bool confluent = false;
  int added_rules = 0;
};

CompletionResult complete(const ReductionSystem& sys, int max_degree);

// Slotwise reduction of a tensor polynomial; both systems must be confluent
// (NotConfluent otherwise) so the result is a well-defined normal form.
TensorPoly tensor_reduce(const TensorPoly& p, const ReductionSystem& left,
                         const ReductionSystem& right);

// Coassociativity, counit and antipode identities checked on every
// generator of the pair (E, F) (antipode identities on the pair (E, E),
// whose comultiplication legs land in the (E, F) and (F, E) algebras).
// The formal identities never need rewriting; the antipode ones reduce in
// the (E, F) and (F, E) systems and are skipped with a context note when
// those systems do not exist or fail confluence.
struct HopfReport {
  bool coassociative = false;
  bool counit_left = false, counit_right = false;
  bool antipode_checked = false;
  bool antipode_left = false, antipode_right = false;
  std::vector<std::string> context_notes;
  bool all_passed() const {
    return coassociative && counit_left && counit_right && antipode_checked && antipode_left &&
           antipode_right;
  }
};

HopfReport verify_hopf_axioms(const MultiMatrix& E, const MultiMatrix& F, const MultiMatrix& G,
                              const MultiMatrix& M);

}  // namespace qaut

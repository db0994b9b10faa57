#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <string>
#include <vector>

#include "qaut/error.hpp"
#include "qaut/presentation.hpp"
#include "qaut/rewrite.hpp"

using namespace qaut;

namespace {

MultiMatrix identity_algebra(int n) { return MultiMatrix({Mat::identity(n)}); }

MultiMatrix fq(long num, long den) {
  return MultiMatrix({Mat::diag({Exact::ratio(num, den), Exact::ratio(den, num)})});
}

MultiMatrix four_points() {
  return MultiMatrix(
      {Mat::diag({Exact(1)}), Mat::diag({Exact(1)}), Mat::diag({Exact(1)}), Mat::diag({Exact(1)})});
}

MultiMatrix two_plus_i2() { return MultiMatrix({Mat::diag({Exact(2)}), Mat::identity(2)}); }

// Trace-mismatched but hypothesis-satisfying pair: block traces 2 vs 3.
ReductionSystem mismatched_system() {
  return reduction_rules(identity_algebra(2), MultiMatrix({Mat::diag({Exact(1), Exact(2)})}));
}

int nonzero_reductions(const RelationSet& rel, const ReductionSystem& sys) {
  int nonzero = 0;
  for (const auto* family : {&rel.family1, &rel.family2, &rel.family3, &rel.family4})
    for (const NCPoly& p : *family)
      if (!reduce(p, sys).empty()) ++nonzero;
  return nonzero;
}

long long brute_force_count(const ReductionSystem& sys, int degree) {
  std::vector<Monomial> lhs_list;
  for (const Rule& r : sys.rules()) lhs_list.push_back(r.lhs);
  const int n = sys.table().size();
  long long count = 0;
  Monomial word(degree, 0);
  auto has_forbidden = [&](const Monomial& w) {
    for (const Monomial& lhs : lhs_list) {
      if (lhs.size() > w.size()) continue;
      if (lhs.empty()) return true;
      for (size_t off = 0; off + lhs.size() <= w.size(); ++off)
        if (std::equal(lhs.begin(), lhs.end(), w.begin() + off)) return true;
    }
    return false;
  };
  auto walk = [&](auto&& self, int depth) -> void {
    if (depth == degree) {
      if (!has_forbidden(word)) ++count;
      return;
    }
    for (int g = 0; g < n; ++g) {
      word[depth] = g;
      self(self, depth + 1);
    }
  };
  if (degree == 0) return has_forbidden(Monomial{}) ? 0 : 1;
  walk(walk, 0);
  return count;
}

NCPoly random_poly(const GenTable& table, std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 3);
  std::uniform_int_distribution<int> gen(0, table.size() - 1);
  std::uniform_int_distribution<int> num(-4, 4);
  NCPoly p;
  for (int term = 0; term < 5; ++term) {
    Monomial m;
    const int l = len(rng);
    for (int pos = 0; pos < l; ++pos) m.push_back(gen(rng));
    add_term(p, m, Exact(num(rng)));
  }
  return p;
}

NCPoly apply_morphism(const MultiMatrix& E, const MultiMatrix& F, const std::vector<Mat>& P,
                      const std::vector<Mat>& Q, const NCPoly& p) {
  auto table = make_table(E, F);
  NCPoly out;
  for (const auto& [mono, coeff] : p) {
    NCPoly word_image = scalar_poly(Exact(1));
    for (int g : mono)
      word_image = poly_mul(word_image, conjugation_morphism(E, F, P, Q, table->gen(g)));
    out = poly_add(out, poly_scale(coeff, word_image));
  }
  return out;
}

}  // namespace

TEST_CASE("monomial order is length first, then lexicographic") {
  CHECK(monomial_less(Monomial{}, Monomial{0}));
  CHECK(monomial_less(Monomial{5}, Monomial{0, 0}));
  CHECK(monomial_less(Monomial{0, 7}, Monomial{1, 0}));
  CHECK(monomial_less(Monomial{1, 0}, Monomial{1, 2}));
  CHECK_FALSE(monomial_less(Monomial{1, 2}, Monomial{1, 2}));
}

TEST_CASE("reduction system construction validates order decrease") {
  auto table = make_table(identity_algebra(2), identity_algebra(2));

  Rule increasing;
  increasing.lhs = Monomial{0};
  increasing.rhs = mono_poly(Monomial{1});
  CHECK_THROWS_AS(ReductionSystem(table, {increasing}), Error);

  Rule self;
  self.lhs = Monomial{3};
  self.rhs = mono_poly(Monomial{3});
  CHECK_THROWS_AS(ReductionSystem(table, {self}), Error);

  Rule ok;
  ok.lhs = Monomial{3};
  ok.rhs = poly_add(mono_poly(Monomial{1}), scalar_poly(Exact(2)));
  ReductionSystem sys(table, {ok});
  CHECK(sys.rules().size() == 1);
  CHECK(sys.max_lhs_length() == 1);
  CHECK(sys.rules_for(Monomial{3}) != nullptr);
  CHECK(sys.rules_for(Monomial{2}) == nullptr);
}

TEST_CASE("reduce on the identity pair") {
  MultiMatrix i2 = identity_algebra(2);
  ReductionSystem sys = reduction_rules(i2, i2);
  auto table = sys.table_ptr();

  SUBCASE("irreducible input is returned unchanged") {
    NCPoly p = mono_poly(Monomial{table->id(GenIndex{1, 1, 1, 1, 1, 1})}, Exact::ratio(3, 7));
    CHECK(reduce(p, sys) == p);
  }

  SUBCASE("row-sum rewrite") {
    // X^{11}_{22} -> 1 - X^{11}_{11}
    NCPoly p = mono_poly(Monomial{table->id(GenIndex{1, 1, 1, 2, 2, 1})});
    NCPoly expected = poly_sub(scalar_poly(Exact(1)),
                               mono_poly(Monomial{table->id(GenIndex{1, 1, 1, 1, 1, 1})}));
    CHECK(reduce(p, sys) == expected);
  }

  SUBCASE("every defining relation reduces to zero") {
    CHECK(nonzero_reductions(relations(i2, i2), sys) == 0);
  }
}

TEST_CASE("defining relations reduce to zero in confluent systems") {
  MultiMatrix q = fq(1, 2);
  CHECK(nonzero_reductions(relations(q, q), reduction_rules(q, q)) == 0);

  MultiMatrix mix = two_plus_i2();
  CHECK(nonzero_reductions(relations(mix, mix), reduction_rules(mix, mix)) == 0);

  // Over the trace-mismatched pair the system is not confluent, and some
  // relations have nonzero normal forms: the leftmost step can rewrite an
  // inner letter first and strand the remainder.
  MultiMatrix i2 = identity_algebra(2);
  MultiMatrix d12({Mat::diag({Exact(1), Exact(2)})});
  CHECK(nonzero_reductions(relations(i2, d12), mismatched_system()) > 0);
}

TEST_CASE("reduction is idempotent, linear, and strategy independent") {
  MultiMatrix i2 = identity_algebra(2);
  ReductionSystem sys = reduction_rules(i2, i2);
  std::mt19937 rng(708);
  for (int trial = 0; trial < 40; ++trial) {
    NCPoly p = random_poly(sys.table(), rng);
    NCPoly q = random_poly(sys.table(), rng);
    NCPoly np = reduce(p, sys);
    CHECK(reduce(np, sys) == np);

    NCPoly combo = poly_add(poly_scale(Exact(3), p), poly_scale(Exact::ratio(-1, 2), q));
    NCPoly expected =
        poly_add(poly_scale(Exact(3), np), poly_scale(Exact::ratio(-1, 2), reduce(q, sys)));
    CHECK(reduce(combo, sys) == expected);

    CHECK(reduce(p, sys, Strategy::Rightmost) == np);
    CHECK(reduce(p, sys, Strategy::Random, 17 * trial + 1) == np);
  }
}

TEST_CASE("ambiguity enumeration on toy systems") {
  auto table = make_table(identity_algebra(2), identity_algebra(2));

  SUBCASE("disjoint single letters produce none") {
    Rule a, b;
    a.lhs = Monomial{5};
    b.lhs = Monomial{7};
    ReductionSystem sys(table, {a, b});
    CHECK(enumerate_ambiguities(sys).empty());
  }

  SUBCASE("suffix-prefix sharing produces one overlap") {
    Rule ab, bc;
    ab.lhs = Monomial{6, 4};
    bc.lhs = Monomial{4, 2};
    ReductionSystem sys(table, {ab, bc});
    auto ambs = enumerate_ambiguities(sys);
    REQUIRE(ambs.size() == 1);
    CHECK(ambs[0].kind == AmbiguityKind::Overlap);
    CHECK(ambs[0].witness == Monomial{6, 4, 2});
    CHECK(ambs[0].rule_a == 0);
    CHECK(ambs[0].rule_b == 1);
    CHECK(ambs[0].offset == 1);
  }
}

TEST_CASE("ambiguity families of the identity pair") {
  ReductionSystem sys = reduction_rules(identity_algebra(2), identity_algebra(2));
  auto ambs = enumerate_ambiguities(sys);
  CHECK(ambs.size() == 1105);

  // Tally by kind, the two rule families, and the offset. Ten buckets: six
  // inclusion-kind (two of them the equal-lhs degenerate case) and four
  // overlap-kind, where two length-2 left-hand sides share a one-letter
  // factor.
  std::map<std::string, int> tally;
  for (const Ambiguity& a : ambs) {
    const std::string key = std::string(a.kind == AmbiguityKind::Inclusion ? "incl" : "ovl") +
                            " " + std::to_string(sys.rules()[a.rule_a].family) +
                            std::to_string(sys.rules()[a.rule_b].family) + " off" +
                            std::to_string(a.offset);
    ++tally[key];
  }
  REQUIRE(tally.size() == 10);
  CHECK(tally["incl 14 off0"] == 16);  // equal left-hand sides, families 1 and 4
  CHECK(tally["incl 21 off0"] == 16);
  CHECK(tally["incl 21 off1"] == 16);
  CHECK(tally["incl 23 off0"] == 1);  // equal left-hand sides, families 2 and 3
  CHECK(tally["incl 34 off0"] == 16);
  CHECK(tally["incl 34 off1"] == 16);
  CHECK(tally["ovl 11 off1"] == 256);
  CHECK(tally["ovl 14 off1"] == 256);
  CHECK(tally["ovl 41 off1"] == 256);
  CHECK(tally["ovl 44 off1"] == 256);
}

TEST_CASE("confluence of the flat fixtures") {
  ConfluenceReport rep = check_confluence(reduction_rules(identity_algebra(2), identity_algebra(2)));
  CHECK(rep.resolved);
  CHECK(rep.ambiguity_count == 1105);
  CHECK(rep.failures.empty());

  MultiMatrix q = fq(1, 2);
  CHECK(check_confluence(reduction_rules(q, q)).resolved);
}

TEST_CASE("confluence fails on a trace-mismatched pair") {
  ReductionSystem sys = mismatched_system();
  ConfluenceReport rep = check_confluence(sys);
  CHECK_FALSE(rep.resolved);
  CHECK(rep.ambiguity_count == 1105);
  CHECK(rep.failures.size() == 414);
  const ConfluenceFailure& first = rep.failures.front();
  CHECK(first.nf_left != first.nf_right);

  SUBCASE("worker count does not change the report") {
    ConfluenceReport serial = check_confluence(sys, 1);
    ConfluenceReport wide = check_confluence(sys, 4);
    REQUIRE(serial.failures.size() == rep.failures.size());
    REQUIRE(wide.failures.size() == rep.failures.size());
    for (size_t i = 0; i < rep.failures.size(); ++i) {
      CHECK(serial.failures[i].ambiguity_index == rep.failures[i].ambiguity_index);
      CHECK(wide.failures[i].ambiguity_index == rep.failures[i].ambiguity_index);
      CHECK(wide.failures[i].nf_left == rep.failures[i].nf_left);
      CHECK(wide.failures[i].nf_right == rep.failures[i].nf_right);
    }
  }
}

TEST_CASE("extended mode over four points is not confluent") {
  MultiMatrix c4 = four_points();
  ReductionSystem sys = reduction_rules(c4, c4, true);
  ConfluenceReport rep = check_confluence(sys);
  CHECK(rep.ambiguity_count == 1169);
  CHECK_FALSE(rep.resolved);
  CHECK(rep.failures.size() == 164);
}

TEST_CASE("irreducible monomial counts") {
  MultiMatrix i2 = identity_algebra(2);
  ReductionSystem sys = reduction_rules(i2, i2);

  SUBCASE("flat fixtures count (2n+1)^2 per degree") {
    IrreducibleCount got = irreducible_monomials(sys, 3);
    CHECK(got.counts == std::vector<long long>{1, 9, 25, 49});
    MultiMatrix q = fq(1, 2);
    IrreducibleCount fq_counts = irreducible_monomials(reduction_rules(q, q), 3);
    CHECK(fq_counts.counts == std::vector<long long>{1, 9, 25, 49});
  }

  SUBCASE("listing matches the counts and excludes banned letters") {
    IrreducibleCount got = irreducible_monomials(sys, 2, true);
    REQUIRE(got.words.size() == 3);
    CHECK(got.words[0].size() == 1);
    CHECK(got.words[1].size() == 9);
    CHECK(got.words[2].size() == 25);
    auto table = sys.table_ptr();
    const int up22 = table->id(GenIndex{2, 2, 1, 1, 1, 1});
    for (const Monomial& w : got.words[1]) {
      const GenIndex g = table->gen(w[0]);
      CHECK_FALSE((g.ui == 2 && g.uj == 2));
      CHECK_FALSE((g.li == 2 && g.lj == 2));
    }
    (void)up22;
  }

  SUBCASE("dynamic programming agrees with brute force") {
    for (int d = 0; d <= 3; ++d)
      CHECK(irreducible_monomials(sys, d).counts[d] == brute_force_count(sys, d));
    ReductionSystem mix = reduction_rules(two_plus_i2(), two_plus_i2());
    IrreducibleCount got = irreducible_monomials(mix, 3);
    CHECK(got.counts == std::vector<long long>{1, 16, 121, 841});
    for (int d = 0; d <= 2; ++d) CHECK(got.counts[d] == brute_force_count(mix, d));
  }
}

TEST_CASE("nonzero certification pipeline") {
  MultiMatrix i2 = identity_algebra(2);

  SUBCASE("flat identity pair certifies") {
    CertifyResult res = certify_nonzero(i2, i2);
    CHECK(res.status == CertifyStatus::Certificate);
    CHECK(res.ambiguity_count == 1105);
  }

  SUBCASE("mixed block sizes certify") {
    MultiMatrix mix = two_plus_i2();
    CertifyResult res = certify_nonzero(mix, mix);
    CHECK(res.status == CertifyStatus::Certificate);
    CHECK(res.ambiguity_count == 2626);
  }

  SUBCASE("rotation blocks diagonalize exactly and certify") {
    Mat rot({{Exact(0), Exact(1)}, {Exact(-1), Exact(0)}});
    MultiMatrix r({rot});
    CertifyResult res = certify_nonzero(r, r);
    // Exact diagonalization to diag(i, -i) exists; the certificate then
    // depends only on confluence of the conjugated system.
    CHECK((res.status == CertifyStatus::Certificate ||
           res.status == CertifyStatus::Inconclusive));
    CHECK(res.ambiguity_count > 0);
  }

  SUBCASE("trace mismatches are named") {
    try {
      certify_nonzero(i2, identity_algebra(3));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::HypothesisViolation);
      CHECK(std::string(e.what()).find("trace") != std::string::npos);
    }
  }

  SUBCASE("size hypothesis is enforced") {
    MultiMatrix points({Mat::diag({Exact(1)}), Mat::diag({Exact(1)})});
    try {
      certify_nonzero(points, points);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::HypothesisViolation);
    }
  }

  SUBCASE("irrational spectra fall back to floats and are inconclusive") {
    Mat golden({{Exact(0), Exact(1)}, {Exact(1), Exact(1)}});
    MultiMatrix g({golden});
    CertifyResult res = certify_nonzero(g, g);
    CHECK(res.status == CertifyStatus::Inconclusive);
    CHECK(res.reason.find("triangularization") != std::string::npos);
  }
}

TEST_CASE("bounded completion") {
  auto table = make_table(identity_algebra(2), identity_algebra(2));

  SUBCASE("already-confluent systems are unchanged") {
    ReductionSystem sys = reduction_rules(identity_algebra(2), identity_algebra(2));
    CompletionResult res = complete(sys, 3);
    CHECK(res.confluent);
    CHECK(res.added_rules == 0);
    CHECK(res.system.rules().size() == 136);
  }

  SUBCASE("a single divergence adds a single rule") {
    Rule shrink;
    shrink.lhs = Monomial{2};
    shrink.rhs = mono_poly(Monomial{1});
    Rule pair_rule;
    pair_rule.lhs = Monomial{2, 0};
    pair_rule.rhs = mono_poly(Monomial{0, 0});
    ReductionSystem sys(table, {shrink, pair_rule});
    ConfluenceReport before = check_confluence(sys);
    REQUIRE_FALSE(before.resolved);
    REQUIRE(before.failures.size() == 1);

    CompletionResult res = complete(sys, 2);
    CHECK(res.confluent);
    CHECK(res.added_rules == 1);
    REQUIRE(res.system.rules().size() == 3);
    CHECK(res.system.rules()[2].lhs == Monomial{1, 0});
    CHECK(res.system.rules()[2].rhs == mono_poly(Monomial{0, 0}));
  }

  SUBCASE("trace mismatch completes to the zero algebra") {
    CompletionResult res = complete(mismatched_system(), 4);
    CHECK(res.confluent);
    CHECK(res.system.has_empty_lhs());
    CHECK(res.added_rules == 85);
    IrreducibleCount counts = irreducible_monomials(res.system, 2);
    CHECK(counts.counts == std::vector<long long>{0, 0, 0});
    CHECK(reduce(scalar_poly(Exact(1)), res.system).empty());
  }

  SUBCASE("degree guard") {
    ReductionSystem sys = reduction_rules(identity_algebra(2), identity_algebra(2));
    CHECK_THROWS_AS(complete(sys, 7), Error);
    try {
      complete(sys, 7);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BudgetExceeded);
    }
  }
}

TEST_CASE("tensor reduction") {
  MultiMatrix i2 = identity_algebra(2);
  ReductionSystem sys = reduction_rules(i2, i2);

  SUBCASE("the unit tensor is fixed") {
    TensorPoly unit;
    add_tensor_term(unit, Monomial{}, Monomial{}, Exact(1));
    CHECK(tensor_reduce(unit, sys, sys) == unit);
  }

  SUBCASE("comultiplication images of relations vanish") {
    RelationSet rel = relations(i2, i2);
    auto table = make_table(i2, i2);
    for (const NCPoly& relation : rel.family2) {
      TensorPoly image;
      for (const auto& [mono, coeff] : relation) {
        if (mono.empty()) {
          add_tensor_term(image, Monomial{}, Monomial{}, coeff);
          continue;
        }
        for (const auto& [slots, c] : comultiplication(i2, i2, i2, table->gen(mono[0])))
          add_tensor_term(image, slots.first, slots.second, coeff * c);
      }
      CHECK(tensor_reduce(image, sys, sys).empty());
    }
  }

  SUBCASE("non-confluent slots are rejected") {
    TensorPoly unit;
    add_tensor_term(unit, Monomial{}, Monomial{}, Exact(1));
    ReductionSystem bad = mismatched_system();
    try {
      tensor_reduce(unit, bad, sys);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotConfluent);
    }
  }
}

TEST_CASE("hopf axiom verification") {
  MultiMatrix i2 = identity_algebra(2);

  SUBCASE("identity pair satisfies every axiom") {
    HopfReport rep = verify_hopf_axioms(i2, i2, i2, i2);
    CHECK(rep.all_passed());
    CHECK(rep.context_notes.empty());
  }

  SUBCASE("degenerate middle pairs are flagged but formal axioms hold") {
    MultiMatrix q = fq(1, 2);
    HopfReport rep = verify_hopf_axioms(q, q, i2, i2);
    CHECK(rep.coassociative);
    CHECK(rep.counit_left);
    CHECK(rep.counit_right);
    CHECK(rep.antipode_checked);
    CHECK(rep.antipode_left);
    CHECK(rep.antipode_right);
    REQUIRE_FALSE(rep.context_notes.empty());
    bool mentions_eg = false;
    for (const std::string& note : rep.context_notes)
      if (note.find("(E,G)") != std::string::npos) mentions_eg = true;
    CHECK(mentions_eg);
  }
}

TEST_CASE("conjugation preserves the irreducible filtration and the ideal") {
  MultiMatrix q = fq(1, 2);
  std::vector<Mat> P{Mat::identity(2)};
  std::vector<Mat> Q{Mat({{Exact(1), Exact(0)}, {Exact(3), Exact(1)}})};
  const Mat f_conj = Q[0] * q.block(1) * Q[0].inverse();
  REQUIRE(f_conj.is_lower_triangular());
  MultiMatrix target_f({f_conj});

  ReductionSystem source = reduction_rules(q, q);
  ReductionSystem target = reduction_rules(q, target_f);

  SUBCASE("irreducible counts agree degree by degree") {
    IrreducibleCount a = irreducible_monomials(source, 3);
    IrreducibleCount b = irreducible_monomials(target, 3);
    CHECK(a.counts == b.counts);
    CHECK(a.counts == std::vector<long long>{1, 9, 25, 49});
  }

  SUBCASE("relation images reduce to zero in the target system") {
    RelationSet rel = relations(q, q);
    for (const auto* family : {&rel.family1, &rel.family2, &rel.family3, &rel.family4})
      for (const NCPoly& relation : *family) {
        NCPoly image = apply_morphism(q, q, P, Q, relation);
        CHECK(reduce(image, target).empty());
      }
  }
}

#include "qaut/rewrite.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "qaut/error.hpp"
#include "qaut/presentation.hpp"

namespace qaut {

ReductionSystem::ReductionSystem(std::shared_ptr<const GenTable> table, std::vector<Rule> rules,
                                 bool verified)
    : table_(std::move(table)), rules_(std::move(rules)), verified_(verified) {
  if (!table_) fail(Errc::UsageError, "reduction system needs a generator table");
  for (int id = 0; id < static_cast<int>(rules_.size()); ++id) {
    const Rule& rule = rules_[id];
    for (int g : rule.lhs) table_->gen(g);
    for (const auto& [m, c] : rule.rhs) {
      if (c.is_zero()) fail(Errc::UsageError, "rule right-hand side carries a zero coefficient");
      for (int g : m) table_->gen(g);
      if (!monomial_less(m, rule.lhs))
        fail(Errc::UsageError, "rule right-hand side is not smaller than its left-hand side");
    }
    if (rule.lhs.empty()) has_empty_lhs_ = true;
    max_lhs_len_ = std::max(max_lhs_len_, static_cast<int>(rule.lhs.size()));
    index_[rule.lhs].push_back(id);
  }
}

const std::vector<int>* ReductionSystem::rules_for(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? nullptr : &it->second;
}

namespace {

struct MatchPos {
  int pos = 0, len = 0, rule = 0;
};

std::vector<MatchPos> find_matches(const Monomial& m, const ReductionSystem& sys) {
  std::vector<MatchPos> out;
  if (sys.has_empty_lhs()) {
    const auto* ids = sys.rules_for(Monomial{});
    out.push_back({0, 0, ids->front()});
  }
  const int n = static_cast<int>(m.size());
  for (int pos = 0; pos < n; ++pos) {
    Monomial sub;
    for (int len = 1; len <= sys.max_lhs_length() && pos + len <= n; ++len) {
      sub.push_back(m[pos + len - 1]);
      if (const auto* ids = sys.rules_for(sub)) out.push_back({pos, len, ids->front()});
    }
  }
  return out;
}

const MatchPos& pick_match(const std::vector<MatchPos>& matches, Strategy strategy,
                           std::mt19937_64& rng) {
  switch (strategy) {
    case Strategy::Leftmost:
      return matches.front();
    case Strategy::Rightmost: {
      const MatchPos* best = &matches.front();
      for (const auto& m : matches)
        if (m.pos > best->pos) best = &m;
      return *best;
    }
    case Strategy::Random:
    default: {
      std::uniform_int_distribution<size_t> dist(0, matches.size() - 1);
      return matches[dist(rng)];
    }
  }
}

}  // namespace

NCPoly reduce(const NCPoly& p, const ReductionSystem& sys, Strategy strategy, uint64_t seed) {
  std::mt19937_64 rng(seed);
  NCPoly work;
  for (const auto& [m, c] : p) add_term(work, m, c);
  std::set<Monomial, MonGreater> known_irreducible;
  for (;;) {
    auto it = work.begin();
    std::vector<MatchPos> matches;
    for (; it != work.end(); ++it) {
      if (known_irreducible.count(it->first)) continue;
      matches = find_matches(it->first, sys);
      if (!matches.empty()) break;
      known_irreducible.insert(it->first);
    }
    if (it == work.end()) return work;
    const MatchPos mp = pick_match(matches, strategy, rng);
    const Rule& rule = sys.rules()[mp.rule];
    const Monomial mono = it->first;
    const Exact coeff = it->second;
    work.erase(it);
    const Monomial prefix(mono.begin(), mono.begin() + mp.pos);
    const Monomial suffix(mono.begin() + mp.pos + mp.len, mono.end());
    for (const auto& [rm, rc] : rule.rhs) {
      Monomial replaced = prefix;
      replaced.insert(replaced.end(), rm.begin(), rm.end());
      replaced.insert(replaced.end(), suffix.begin(), suffix.end());
      add_term(work, replaced, coeff * rc);
    }
    if (work.size() > kTermCap)
      fail(Errc::CoefficientExplosion, "reduction exceeds the term budget");
  }
}

std::vector<Ambiguity> enumerate_ambiguities(const ReductionSystem& sys) {
  const auto& rules = sys.rules();
  const int n = static_cast<int>(rules.size());
  std::vector<Ambiguity> out;
  for (int a = 0; a < n; ++a) {
    const Monomial& la = rules[a].lhs;
    for (int b = 0; b < n; ++b) {
      const Monomial& lb = rules[b].lhs;
      if (a != b && la.size() <= lb.size()) {
        if (la.size() == lb.size()) {
          if (a < b && la == lb)
            out.push_back({AmbiguityKind::Inclusion, a, b, lb, 0});
        } else if (la.empty()) {
          out.push_back({AmbiguityKind::Inclusion, a, b, lb, 0});
        } else {
          const int span = static_cast<int>(lb.size() - la.size());
          for (int off = 0; off <= span; ++off)
            if (std::equal(la.begin(), la.end(), lb.begin() + off))
              out.push_back({AmbiguityKind::Inclusion, a, b, lb, off});
        }
      }
      const int tmax = static_cast<int>(std::min(la.size(), lb.size())) - 1;
      for (int t = 1; t <= tmax; ++t) {
        if (!std::equal(lb.begin(), lb.begin() + t, la.end() - t)) continue;
        Monomial witness = la;
        witness.insert(witness.end(), lb.begin() + t, lb.end());
        out.push_back(
            {AmbiguityKind::Overlap, a, b, std::move(witness), static_cast<int>(la.size()) - t});
      }
    }
  }
  // Minimality: drop a witness properly containing another witness of the
  // same ordered rule pair. Left-hand sides of length <= 2 cannot nest.
  if (sys.max_lhs_length() > 2) {
    auto contains = [](const Monomial& big, const Monomial& small) {
      if (small.size() >= big.size()) return false;
      for (size_t off = 0; off + small.size() <= big.size(); ++off)
        if (std::equal(small.begin(), small.end(), big.begin() + off)) return true;
      return false;
    };
    std::vector<Ambiguity> kept;
    for (const auto& amb : out) {
      bool minimal = true;
      for (const auto& other : out) {
        if (other.rule_a != amb.rule_a || other.rule_b != amb.rule_b) continue;
        if (contains(amb.witness, other.witness)) {
          minimal = false;
          break;
        }
      }
      if (minimal) kept.push_back(amb);
    }
    out = std::move(kept);
  }
  return out;
}

namespace {

void local_divergence(const ReductionSystem& sys, const Ambiguity& amb, NCPoly& left,
                      NCPoly& right) {
  const Rule& ra = sys.rules()[amb.rule_a];
  const Rule& rb = sys.rules()[amb.rule_b];
  const Monomial& w = amb.witness;
  if (amb.kind == AmbiguityKind::Inclusion) {
    left = rb.rhs;
    const Monomial pre(w.begin(), w.begin() + amb.offset);
    const Monomial suf(w.begin() + amb.offset + ra.lhs.size(), w.end());
    right = poly_mul(poly_mul(mono_poly(pre), ra.rhs), mono_poly(suf));
  } else {
    const Monomial pre(w.begin(), w.begin() + amb.offset);
    const Monomial suf(w.begin() + ra.lhs.size(), w.end());
    left = poly_mul(ra.rhs, mono_poly(suf));
    right = poly_mul(mono_poly(pre), rb.rhs);
  }
}

}  // namespace

ConfluenceReport check_confluence(const ReductionSystem& sys, unsigned threads) {
  ConfluenceReport report;
  const auto ambs = enumerate_ambiguities(sys);
  report.ambiguity_count = ambs.size();
  if (ambs.empty()) {
    report.resolved = true;
    return report;
  }
  unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, ambs.size()));

  std::vector<std::unique_ptr<ConfluenceFailure>> slots(ambs.size());
  auto run_range = [&](unsigned offset, unsigned stride) {
    for (size_t idx = offset; idx < ambs.size(); idx += stride) {
      NCPoly left, right;
      local_divergence(sys, ambs[idx], left, right);
      NCPoly nf_left = reduce(left, sys);
      NCPoly nf_right = reduce(right, sys);
      if (nf_left != nf_right)
        slots[idx] = std::make_unique<ConfluenceFailure>(
            ConfluenceFailure{idx, ambs[idx], std::move(nf_left), std::move(nf_right)});
    }
  };

  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run_range(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  for (auto& slot : slots)
    if (slot) report.failures.push_back(std::move(*slot));
  report.resolved = report.failures.empty();
  return report;
}

IrreducibleCount irreducible_monomials(const ReductionSystem& sys, int max_degree, bool listing) {
  if (max_degree < 0) fail(Errc::UsageError, "max_degree must be nonnegative");
  IrreducibleCount out;
  out.counts.assign(max_degree + 1, 0);
  if (listing) out.words.assign(max_degree + 1, {});
  if (sys.has_empty_lhs()) return out;  // even the unit monomial is reducible

  out.counts[0] = 1;
  if (listing) out.words[0].push_back(Monomial{});
  if (max_degree == 0) return out;

  const int n = sys.table().size();
  std::vector<char> banned1(n, 0);
  std::vector<char> banned2(static_cast<size_t>(n) * n, 0);
  bool has_long = false;
  for (const Rule& rule : sys.rules()) {
    if (rule.lhs.size() == 1)
      banned1[rule.lhs[0]] = 1;
    else if (rule.lhs.size() == 2)
      banned2[static_cast<size_t>(rule.lhs[0]) * n + rule.lhs[1]] = 1;
    else
      has_long = true;
  }

  if (!has_long && !listing) {
    std::vector<long long> cur(n, 0);
    for (int g = 0; g < n; ++g)
      if (!banned1[g]) cur[g] = 1;
    for (int deg = 1; deg <= max_degree; ++deg) {
      long long total = 0;
      for (int g = 0; g < n; ++g) total += cur[g];
      out.counts[deg] = total;
      if (deg == max_degree) break;
      std::vector<long long> nxt(n, 0);
      for (int h = 0; h < n; ++h) {
        if (banned1[h]) continue;
        long long acc = 0;
        for (int g = 0; g < n; ++g)
          if (cur[g] != 0 && !banned2[static_cast<size_t>(g) * n + h]) acc += cur[g];
        nxt[h] = acc;
      }
      cur = std::move(nxt);
    }
    return out;
  }

  // Listing or long left-hand sides: depth-first enumeration; a forbidden
  // subword created by an extension must end at the new letter.
  Monomial word;
  auto extend_ok = [&](int g) {
    if (banned1[g]) return false;
    if (!word.empty() && banned2[static_cast<size_t>(word.back()) * n + g]) return false;
    if (has_long) {
      const int len_max = std::min<int>(sys.max_lhs_length(), static_cast<int>(word.size()) + 1);
      for (int len = 3; len <= len_max; ++len) {
        Monomial tail(word.end() - (len - 1), word.end());
        tail.push_back(g);
        if (sys.rules_for(tail)) return false;
      }
    }
    return true;
  };
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == max_degree) return;
    for (int g = 0; g < n; ++g) {
      if (!extend_ok(g)) continue;
      word.push_back(g);
      ++out.counts[depth + 1];
      if (listing) out.words[depth + 1].push_back(word);
      self(self, depth + 1);
      word.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

CertifyResult certify_nonzero(const MultiMatrix& E, const MultiMatrix& F) {
  if (E.dim(E.block_count()) < 2 || F.dim(F.block_count()) < 2)
    fail(Errc::HypothesisViolation, "largest block must have size > 1 on both sides");
  if (E.trace_of_inverse() != F.trace_of_inverse())
    fail(Errc::HypothesisViolation,
         "total traces of the inverse multimatrices disagree: " +
             to_string(E.trace_of_inverse()) + " vs " + to_string(F.trace_of_inverse()));
  const Exact common = E.block_trace(1);
  for (int b = 1; b <= E.block_count(); ++b)
    if (E.block_trace(b) != common)
      fail(Errc::HypothesisViolation,
           "block traces of the first multimatrix are not constant: block " + std::to_string(b) +
               " has trace " + to_string(E.block_trace(b)) + " vs " + to_string(common));
  for (int b = 1; b <= F.block_count(); ++b)
    if (F.block_trace(b) != common)
      fail(Errc::HypothesisViolation,
           "block trace mismatch across the pair: block " + std::to_string(b) +
               " of the second multimatrix has trace " + to_string(F.block_trace(b)) + " vs " +
               to_string(common));

  auto triE = E.triangularize();
  if (!triE.exact)
    return {CertifyStatus::Inconclusive,
            "exact triangularization of the first multimatrix unavailable", 0};
  for (const Mat& t : triE.T)
    if (!t.is_diagonal())
      return {CertifyStatus::Inconclusive,
              "first multimatrix conjugates to lower-triangular but not exactly to diagonal", 0};
  auto triF = F.triangularize();
  if (!triF.exact)
    return {CertifyStatus::Inconclusive,
            "exact triangularization of the second multimatrix unavailable", 0};

  ReductionSystem sys = reduction_rules(MultiMatrix(triE.T), MultiMatrix(triF.T));
  ConfluenceReport rep = check_confluence(sys);
  if (rep.resolved)
    return {CertifyStatus::Certificate,
            "rewriting system confluent; the unit monomial is irreducible, so 1 != 0",
            rep.ambiguity_count};
  return {CertifyStatus::Inconclusive, "rewriting system for the conjugated pair is not confluent",
          rep.ambiguity_count};
}

CompletionResult complete(const ReductionSystem& sys, int max_degree) {
  if (max_degree < 0) fail(Errc::UsageError, "max_degree must be nonnegative");
  if (max_degree > 6) fail(Errc::BudgetExceeded, "completion is guarded to degree 6");
  auto table = sys.table_ptr();
  std::vector<Rule> rules = sys.rules();
  const bool verified = sys.verified();
  ReductionSystem cur(table, rules, verified);
  int added = 0;
  constexpr int kMaxRounds = 32;
  for (int round = 0; round < kMaxRounds; ++round) {
    ConfluenceReport report = check_confluence(cur);
    if (report.resolved) return {std::move(cur), true, added};
    std::vector<Rule> additions;
    for (const auto& failure : report.failures) {
      if (static_cast<int>(failure.ambiguity.witness.size()) > max_degree) continue;
      NCPoly diff = poly_sub(failure.nf_left, failure.nf_right);
      if (diff.empty()) continue;
      Rule candidate;
      candidate.lhs = diff.begin()->first;
      const Exact lead = diff.begin()->second;
      diff.erase(diff.begin());
      candidate.rhs = poly_scale(Exact(-1) / lead, diff);
      auto same = [&candidate](const Rule& r) {
        return r.lhs == candidate.lhs && r.rhs == candidate.rhs;
      };
      if (std::any_of(rules.begin(), rules.end(), same) ||
          std::any_of(additions.begin(), additions.end(), same))
        continue;
      additions.push_back(std::move(candidate));
    }
    if (additions.empty()) return {std::move(cur), false, added};
    for (auto& rule : additions) rules.push_back(std::move(rule));
    added += static_cast<int>(additions.size());
    cur = ReductionSystem(table, rules, verified);
  }
  fail(Errc::BudgetExceeded, "completion round budget exhausted");
}

TensorPoly tensor_reduce(const TensorPoly& p, const ReductionSystem& left,
                         const ReductionSystem& right) {
  if (!check_confluence(left).resolved)
    fail(Errc::NotConfluent, "left tensor slot system is not confluent");
  if (!check_confluence(right).resolved)
    fail(Errc::NotConfluent, "right tensor slot system is not confluent");
  TensorPoly out;
  for (const auto& [slots, c] : p) {
    const NCPoly nl = reduce(mono_poly(slots.first), left);
    const NCPoly nr = reduce(mono_poly(slots.second), right);
    for (const auto& [ml, cl] : nl)
      for (const auto& [mr, cr] : nr) add_tensor_term(out, ml, mr, c * cl * cr);
  }
  return out;
}

namespace {

// Shared trace data is what keeps a pair's algebra nondegenerate; note the
// pairs whose data disagrees so report readers can interpret failures.
void note_trace_context(const MultiMatrix& A, const MultiMatrix& B, const char* name,
                        std::vector<std::string>& notes) {
  bool ok = A.trace_of_inverse() == B.trace_of_inverse();
  const Exact common = A.block_trace(1);
  for (int b = 1; b <= A.block_count() && ok; ++b) ok = A.block_trace(b) == common;
  for (int b = 1; b <= B.block_count() && ok; ++b) ok = B.block_trace(b) == common;
  if (!ok)
    notes.push_back(std::string(name) +
                    " has mismatched trace data; its algebra may be degenerate");
}

}  // namespace

HopfReport verify_hopf_axioms(const MultiMatrix& E, const MultiMatrix& F, const MultiMatrix& G,
                              const MultiMatrix& M) {
  HopfReport rep;
  note_trace_context(E, F, "pair (E,F)", rep.context_notes);
  note_trace_context(E, G, "pair (E,G)", rep.context_notes);
  note_trace_context(G, F, "pair (G,F)", rep.context_notes);
  note_trace_context(E, M, "pair (E,M)", rep.context_notes);
  note_trace_context(M, F, "pair (M,F)", rep.context_notes);
  note_trace_context(M, G, "pair (M,G)", rep.context_notes);

  auto tEF = make_table(E, F);
  auto tEG = make_table(E, G);
  auto tMF = make_table(M, F);
  auto tEE = make_table(E, E);
  auto tFF = make_table(F, F);

  rep.coassociative = true;
  rep.counit_left = true;
  rep.counit_right = true;
  for (int id = 0; id < tEF->size(); ++id) {
    const GenIndex x = tEF->gen(id);

    Tensor3Poly via_left, via_right;
    for (const auto& [slots, c] : comultiplication(E, F, G, x)) {
      const GenIndex y = tEG->gen(slots.first[0]);
      for (const auto& [inner, c2] : comultiplication(E, G, M, y))
        add_tensor3_term(via_left, inner.first, inner.second, slots.second, c * c2);
    }
    for (const auto& [slots, c] : comultiplication(E, F, M, x)) {
      const GenIndex z = tMF->gen(slots.second[0]);
      for (const auto& [inner, c2] : comultiplication(M, F, G, z))
        add_tensor3_term(via_right, slots.first, inner.first, inner.second, c * c2);
    }
    if (via_left != via_right) {
      rep.coassociative = false;
      rep.context_notes.push_back("coassociativity fails on generator " + std::to_string(id));
    }

    NCPoly left_acc, right_acc;
    for (const auto& [slots, c] : comultiplication(E, F, E, x))
      add_term(left_acc, slots.second, c * counit(E, tEE->gen(slots.first[0])));
    for (const auto& [slots, c] : comultiplication(E, F, F, x))
      add_term(right_acc, slots.first, c * counit(F, tFF->gen(slots.second[0])));
    if (left_acc != mono_poly(Monomial{id})) {
      rep.counit_left = false;
      rep.context_notes.push_back("left counit identity fails on generator " + std::to_string(id));
    }
    if (right_acc != mono_poly(Monomial{id})) {
      rep.counit_right = false;
      rep.context_notes.push_back("right counit identity fails on generator " +
                                  std::to_string(id));
    }
  }

  std::optional<ReductionSystem> sysEF, sysFE;
  bool antipode_ready = true;
  try {
    sysEF.emplace(reduction_rules(E, F));
    sysFE.emplace(reduction_rules(F, E));
  } catch (const Error& err) {
    rep.context_notes.push_back(std::string("antipode systems unavailable: ") + err.what());
    antipode_ready = false;
  }
  if (antipode_ready && !check_confluence(*sysEF).resolved) {
    rep.context_notes.push_back("the (E,F) system is not confluent; antipode identities skipped");
    antipode_ready = false;
  }
  if (antipode_ready && !check_confluence(*sysFE).resolved) {
    rep.context_notes.push_back("the (F,E) system is not confluent; antipode identities skipped");
    antipode_ready = false;
  }
  rep.antipode_checked = antipode_ready;
  if (!antipode_ready) return rep;

  auto tFE = make_table(F, E);
  rep.antipode_left = true;
  rep.antipode_right = true;
  for (int id = 0; id < tEE->size(); ++id) {
    const GenIndex x = tEE->gen(id);
    const Exact eps = counit(E, x);
    NCPoly acc_left, acc_right;
    for (const auto& [slots, c] : comultiplication(E, E, F, x)) {
      const NCPoly s_right = antipode(F, E, tFE->gen(slots.second[0]));
      acc_left = poly_add(acc_left, poly_scale(c, poly_mul(mono_poly(slots.first), s_right)));
      const NCPoly s_left = antipode(E, F, tEF->gen(slots.first[0]));
      acc_right = poly_add(acc_right, poly_scale(c, poly_mul(s_left, mono_poly(slots.second))));
    }
    if (reduce(acc_left, *sysEF) != scalar_poly(eps)) {
      rep.antipode_left = false;
      rep.context_notes.push_back("left antipode identity fails on generator " +
                                  std::to_string(id));
    }
    if (reduce(acc_right, *sysFE) != scalar_poly(eps)) {
      rep.antipode_right = false;
      rep.context_notes.push_back("right antipode identity fails on generator " +
                                  std::to_string(id));
    }
  }
  return rep;
}

}  // namespace qaut

#include "qaut/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "qaut/error.hpp"
#include "qaut/fusion.hpp"
#include "qaut/presentation.hpp"
#include "qaut/rewrite.hpp"

namespace qaut {

namespace {

Json error_json(const char* code, const std::string& message) {
  Json j = Json::object();
  j["error"] = Json{{"code", code}, {"message", message}};
  return j;
}

[[noreturn]] void usage(const std::string& what) { fail(Errc::UsageError, what); }

Json roots_json(const UnitQuadraticRoots& r) {
  Json j = Json::object();
  j["exact"] = r.exact;
  j["q1"] = scalar_value_json(r.exact ? ScalarValue::make_exact(r.root1)
                                      : ScalarValue::make_approx(r.approx1));
  j["q2"] = scalar_value_json(r.exact ? ScalarValue::make_exact(r.root2)
                                      : ScalarValue::make_approx(r.approx2));
  return j;
}

Json qclass_json(const QClass& c) {
  Json j = Json::object();
  if (c.kind == QClass::Kind::Generic) {
    j["kind"] = "Generic";
    return j;
  }
  j["kind"] = "NonGeneric";
  j["N"] = c.order_N;
  j["N0"] = c.N0;
  j["N1"] = c.N1;
  j["parity"] = c.parity == QClass::Parity::Even ? "even" : "odd";
  return j;
}

Json regime_json(const Regime& r) {
  Json j = Json::object();
  j["kind"] = r.kind == RegimeKind::Even ? "even" : "odd";
  j["N1"] = r.N1;
  j["N0"] = r.N0();
  return j;
}

int parse_index(const std::string& digits, const std::string& token) {
  if (digits.empty() || digits.size() > 6)
    usage("fusion expression: bad factor \"" + token + "\"");
  int value = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') usage("fusion expression: bad factor \"" + token + "\"");
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Regime parse_regime(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    usage("fusion expression: regime must look like \"even:N1=2\", got \"" + text + "\"");
  const std::string kind = trimmed(text.substr(0, colon));
  const std::string rest = trimmed(text.substr(colon + 1));
  Regime regime;
  if (kind == "even") {
    regime.kind = RegimeKind::Even;
  } else if (kind == "odd") {
    regime.kind = RegimeKind::Odd;
  } else {
    usage("fusion expression: unknown regime \"" + kind + "\"");
  }
  if (rest.rfind("N1=", 0) != 0)
    usage("fusion expression: regime must fix N1, as in \"even:N1=2\"");
  regime.N1 = parse_index(rest.substr(3), rest);
  if (regime.N1 < 2) usage("fusion expression: N1 must be at least 2");
  return regime;
}

SimpleLabel parse_factor(const std::string& raw, bool has_regime, const Regime& regime) {
  const std::string tok = trimmed(raw);
  if (tok.empty()) usage("fusion expression: empty factor");
  const char head = tok[0];
  const int n = parse_index(tok.substr(1), tok);
  if (!has_regime) {
    if (head == 'W') return generic_w(n);
    usage("fusion expression: label \"" + tok +
          "\" needs a regime suffix such as \"@even:N1=2\"");
  }
  if (regime.kind == RegimeKind::Even) {
    if (head == 'W') return even_w(n);
    if (head == 'V') return even_v(n);
    usage("fusion expression: even-regime labels are W<n> and V<m>, got \"" + tok + "\"");
  }
  if (head == 'V') return odd_v(n);
  if (head == 'U') return odd_u(n);
  usage("fusion expression: odd-regime labels are V<n> and U<n>, got \"" + tok + "\"");
}

Json check_json(const RelationCheck& c) {
  Json j = Json::object();
  j["id"] = c.id;
  j["checked"] = c.checked;
  if (c.checked) j["passed"] = c.passed;
  j["residual"] = c.residual;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json coeffs_json(const std::vector<Exact>& v) {
  Json out = Json::array();
  for (const Exact& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

Outcome check_outcome(const MultiMatrix& e) {
  const MeasureReport r = e.measure_report();
  Json j = Json::object();
  j["homogeneous"] = r.homogeneous;
  if (r.lambda_A) j["common_trace"] = to_string(*r.lambda_A);
  j["normalized"] = r.normalized;
  j["normalizable"] = r.normalizable;
  if (r.xi_squared) j["xi_squared"] = to_string(*r.xi_squared);
  j["positive"] = r.positive;
  return {0, std::move(j)};
}

Outcome qparam_outcome(const MultiMatrix& e, int bound, double tol) {
  const DeformationReport rep = deformation_type_report(e, bound, tol);
  Json j = Json::object();
  j["s"] = scalar_value_json(rep.s);
  j["sign_ambiguity"] = rep.sign_ambiguity;
  j["q_candidates"] = roots_json(rep.q_candidates);
  j["class"] = qclass_json(rep.q_class);
  j["cosemisimple"] = rep.cosemisimple;
  if (rep.regime) j["regime"] = regime_json(*rep.regime);
  j["alphabet"] = rep.alphabet;
  return {0, std::move(j)};
}

Outcome present_outcome(const MultiMatrix& e, const MultiMatrix& f) {
  const auto table = make_table(e, f);
  const RelationSet rels = relations(e, f);
  auto lines = [&](const std::vector<NCPoly>& family) {
    Json out = Json::array();
    for (const NCPoly& p : family) out.push_back(poly_string(*table, p));
    return out;
  };
  Json j = Json::object();
  j["generator_count"] = table->size();
  j["rule_count"] = rels.total();
  Json order = Json::array();
  for (int id = 0; id < table->size(); ++id) order.push_back(gen_token(table->gen(id)));
  j["order"] = std::move(order);
  Json families = Json::object();
  families["partial_isometry"] = lines(rels.family1);
  families["row_sums"] = lines(rels.family2);
  families["weighted_column_sums"] = lines(rels.family3);
  families["intertwining"] = lines(rels.family4);
  j["relations"] = std::move(families);
  return {0, std::move(j)};
}

Outcome confluence_outcome(const MultiMatrix& e, const MultiMatrix& f, bool extended) {
  const ReductionSystem sys = reduction_rules(e, f, extended);
  const ConfluenceReport rep = check_confluence(sys);
  Json j = Json::object();
  j["status"] = rep.resolved ? "Resolved" : "Failed";
  j["ambiguity_count"] = rep.ambiguity_count;
  Json failures = Json::array();
  for (const ConfluenceFailure& f_ : rep.failures) {
    Json entry = Json::object();
    entry["witness"] = monomial_string(sys.table(), f_.ambiguity.witness);
    entry["nf_left"] = poly_string(sys.table(), f_.nf_left);
    entry["nf_right"] = poly_string(sys.table(), f_.nf_right);
    failures.push_back(std::move(entry));
  }
  j["failures"] = std::move(failures);
  return {rep.resolved ? 0 : 1, std::move(j)};
}

Outcome hilbert_outcome(const MultiMatrix& e, const MultiMatrix& f, int max_deg, bool extended) {
  if (max_deg < 0) usage("--max-deg must be nonnegative");
  const ReductionSystem sys = reduction_rules(e, f, extended);
  const IrreducibleCount counts = irreducible_monomials(sys, max_deg);
  Json j = Json::object();
  j["degrees"] = counts.counts;
  return {0, std::move(j)};
}

Outcome fusion_outcome(const std::string& expr) {
  const size_t at = expr.find('@');
  if (at != std::string::npos && expr.find('@', at + 1) != std::string::npos)
    usage("fusion expression: more than one regime suffix");
  const bool has_regime = at != std::string::npos;
  Regime regime;
  if (has_regime) regime = parse_regime(expr.substr(at + 1));
  const std::string product = expr.substr(0, at == std::string::npos ? expr.size() : at);
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : product) {
    if (ch == '*') {
      tokens.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  tokens.push_back(current);
  FusionElement acc;
  add_label(acc, parse_factor(tokens[0], has_regime, regime));
  for (size_t idx = 1; idx < tokens.size(); ++idx) {
    FusionElement next;
    add_label(next, parse_factor(tokens[idx], has_regime, regime));
    if (!has_regime) {
      acc = tensor_generic(acc, next);
    } else {
      const auto decomposed = tensor_nongeneric(regime, acc, next);
      if (!decomposed)
        return {1, error_json("NotDetermined", "the displayed rules do not decompose " + expr)};
      acc = *decomposed;
    }
  }
  Json terms = Json::array();
  for (const auto& [label, mult] : acc) {
    Json term = Json::object();
    term["label"] = to_string(label);
    term["mult"] = mult;
    term["dim"] = label_dim(label);
    terms.push_back(std::move(term));
  }
  Json j = Json::object();
  j["terms"] = std::move(terms);
  j["dim_total"] = dim(acc);
  return {0, std::move(j)};
}

Outcome verify_relations_outcome(const PairingData& data, double tol) {
  const RelationReport rep = verify_relations(data, tol);
  std::vector<RelationCheck> star_checks;
  bool star_ok = true;
  if (data.star) {
    const StarReport sr = check_star_structure(data);
    star_checks = sr.checks;
    star_ok = sr.all_passed;
  } else {
    for (const char* id : {"3a", "3b", "3c", "3d"}) {
      RelationCheck c;
      c.id = id;
      c.detail = "no star matrix supplied";
      star_checks.push_back(std::move(c));
    }
  }
  Json checks = Json::array();
  for (const RelationCheck& c : rep.checks)
    if (c.id.rfind("2", 0) == 0) checks.push_back(check_json(c));
  for (const RelationCheck& c : star_checks) checks.push_back(check_json(c));
  for (const RelationCheck& c : rep.checks)
    if (c.id.rfind("13", 0) == 0) checks.push_back(check_json(c));
  const bool all = rep.all_passed && star_ok;
  Json j = Json::object();
  j["type"] = rep.type;
  j["tau"] = to_string(data.tau);
  j["omega"] = omega_string(data.omega_pow);
  j["all_passed"] = all;
  j["checks"] = std::move(checks);
  j["notes"] = rep.notes;
  return {all ? 0 : 1, std::move(j)};
}

Outcome fold_outcome(const PairingData& data) {
  const FoldedAlgebra alg = fold_algebra(data);
  const AssociativityReport assoc = check_associativity(alg);
  const SeparabilityReport sep = separability_idempotent(alg, data);
  const HomogeneityReport hom = check_homogeneity_folded(alg);
  std::optional<bool> positive;
  if (data.star) {
    // Gram matrix of the sesquilinear form (a, b) -> phi(a* b) over the
    // folded basis; star extends to C 1 (+) W by conjugation on the scalar.
    std::vector<std::vector<Exact>> basis(alg.dim), star_basis(alg.dim);
    for (int r = 0; r < alg.dim; ++r) {
      basis[r].assign(alg.dim, Exact(0));
      basis[r][r] = Exact(1);
      star_basis[r].assign(alg.dim, Exact(0));
      if (r == 0) {
        star_basis[r][0] = Exact(1);
      } else {
        std::vector<Exact> w(data.dim_w, Exact(0));
        w[r - 1] = Exact(1);
        const std::vector<Exact> starred = apply_star(data, w);
        for (int k = 0; k < data.dim_w; ++k) star_basis[r][k + 1] = starred[k];
      }
    }
    Mat gram(alg.dim, alg.dim);
    for (int r = 0; r < alg.dim; ++r)
      for (int c = 0; c < alg.dim; ++c)
        gram.at(r, c) = alg.phi(alg.multiply(star_basis[r], basis[c]));
    positive = gram.is_positive_definite();
  }
  Json j = Json::object();
  j["dim"] = alg.dim;
  j["associative"] = assoc.associative;
  if (!assoc.associative) {
    Json w = Json::object();
    w["i"] = assoc.i;
    w["j"] = assoc.j;
    w["k"] = assoc.k;
    w["lhs"] = coeffs_json(assoc.lhs);
    w["rhs"] = coeffs_json(assoc.rhs);
    j["witness"] = std::move(w);
  }
  if (positive) j["phi_positive"] = *positive;
  Json sep_j = Json::object();
  sep_j["multiplies_to_unit"] = sep.multiplies_to_unit;
  sep_j["commutes"] = sep.commutes;
  j["separability"] = std::move(sep_j);
  Json hom_j = Json::object();
  hom_j["c"] = to_string(hom.c);
  hom_j["proportional"] = hom.proportional;
  j["homogeneity"] = std::move(hom_j);
  const bool ok = assoc.associative && sep.multiplies_to_unit && sep.commutes &&
                  hom.proportional && (!positive || *positive);
  return {ok ? 0 : 1, std::move(j)};
}

Outcome certify_outcome(const MultiMatrix& e, const MultiMatrix& f) {
  try {
    const CertifyResult r = certify_nonzero(e, f);
    Json j = Json::object();
    j["status"] = r.status == CertifyStatus::Certificate ? "Certificate" : "Inconclusive";
    j["ambiguity_count"] = r.ambiguity_count;
    if (!r.reason.empty()) j["reason"] = r.reason;
    return {r.status == CertifyStatus::Certificate ? 0 : 1, std::move(j)};
  } catch (const Error& e_) {
    if (e_.code() != Errc::HypothesisViolation) throw;
    // A failed hypothesis here is a mathematically meaningful negative (the
    // pair may present the zero algebra), not malformed input.
    Json j = Json::object();
    j["status"] = "Inconclusive";
    j["reason"] = e_.what();
    return {1, std::move(j)};
  }
}

Outcome hopf_outcome(const MultiMatrix& e, const MultiMatrix& f, const MultiMatrix& g,
                     const MultiMatrix& m) {
  const HopfReport rep = verify_hopf_axioms(e, f, g, m);
  Json j = Json::object();
  j["coassociative"] = rep.coassociative;
  j["counit_left"] = rep.counit_left;
  j["counit_right"] = rep.counit_right;
  j["antipode_checked"] = rep.antipode_checked;
  j["antipode_left"] = rep.antipode_left;
  j["antipode_right"] = rep.antipode_right;
  j["context_notes"] = rep.context_notes;
  j["all_passed"] = rep.all_passed();
  return {rep.all_passed() ? 0 : 1, std::move(j)};
}

std::vector<std::pair<std::string, Json>> corpus_fixtures() {
  auto fq = [](long num, long den) {
    return MultiMatrix({Mat::diag({Exact::ratio(num, den), Exact::ratio(den, num)})});
  };
  std::vector<std::pair<std::string, Json>> files;
  files.emplace_back("i2.json", multimatrix_json(MultiMatrix({Mat::identity(2)})));
  files.emplace_back("fq2.json", multimatrix_json(fq(1, 2)));
  files.emplace_back("fq3.json", multimatrix_json(fq(1, 3)));
  // Golden ratio truncated to a Fibonacci convergent, the canonical rational
  // approximation; q + 1/q stays rational, so the q-parameter pipeline is
  // exact on this fixture.
  files.emplace_back("fq_golden.json", multimatrix_json(fq(610, 987)));
  files.emplace_back("c2_plus_i2.json",
                     multimatrix_json(MultiMatrix({Mat::diag({Exact(2)}), Mat::identity(2)})));
  files.emplace_back("c4.json", multimatrix_json(MultiMatrix({Mat::identity(1), Mat::identity(1),
                                                              Mat::identity(1), Mat::identity(1)})));
  files.emplace_back("quaternion.json", pairing_json(quaternion_pairing()));
  return files;
}

namespace {

CliResult render(const Outcome& outcome) { return {outcome.code, dump_json(outcome.report)}; }

CliResult run_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) usage("cannot create " + dir + ": " + ec.message());
  Json written = Json::array();
  for (const auto& [name, payload] : corpus_fixtures()) {
    const fs::path target = fs::path(dir) / name;
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) usage("cannot write " + target.generic_string());
    out << dump_json(payload);
    out.flush();
    if (!out) usage("cannot write " + target.generic_string());
    written.push_back(target.generic_string());
  }
  Json j = Json::object();
  j["written"] = std::move(written);
  return {0, dump_json(j)};
}

}  // namespace

CliResult cli_run(const std::vector<std::string>& args) {
  CLI::App app{"exact calculator for measured multimatrix pairs and their universal algebras"};
  app.name("qaut");
  app.require_subcommand(1);

  std::string file_a, file_b, file_c, file_d, expr, out_dir = ".";
  int max_deg = 3;
  int bound = 64;
  double tol = 1e-9;
  bool extended = false;
  bool json_flag = false;
  auto reserved_json = [&](CLI::App* sub) {
    sub->add_flag("--json", json_flag, "reserved; output is always JSON");
  };

  CLI::App* check = app.add_subcommand("check", "measure report of a multimatrix");
  check->add_option("E", file_a, "multimatrix JSON file")->required();
  reserved_json(check);

  CLI::App* qparam =
      app.add_subcommand("qparam", "deformation parameter and root-of-unity class");
  qparam->add_option("E", file_a, "multimatrix JSON file")->required();
  qparam->add_option("--bound", bound, "root-of-unity search bound")->capture_default_str();
  qparam->add_option("--approx-tol", tol, "tolerance for approximate root detection")
      ->capture_default_str();
  reserved_json(qparam);

  CLI::App* present = app.add_subcommand("present", "generators and defining relations of a pair");
  present->add_option("E", file_a, "multimatrix JSON file")->required();
  present->add_option("F", file_b, "multimatrix JSON file")->required();
  reserved_json(present);

  CLI::App* confluence =
      app.add_subcommand("confluence", "diamond-lemma check of the reduction system");
  confluence->add_option("E", file_a, "multimatrix JSON file")->required();
  confluence->add_option("F", file_b, "multimatrix JSON file")->required();
  confluence->add_flag("--extended", extended, "build the system without the size hypotheses");
  reserved_json(confluence);

  CLI::App* hilbert = app.add_subcommand("hilbert", "irreducible-monomial counts per degree");
  hilbert->add_option("E", file_a, "multimatrix JSON file")->required();
  hilbert->add_option("F", file_b, "multimatrix JSON file")->required();
  hilbert->add_option("--max-deg", max_deg, "largest degree to count")->capture_default_str();
  hilbert->add_flag("--extended", extended, "build the system without the size hypotheses");
  reserved_json(hilbert);

  CLI::App* fusion = app.add_subcommand("fusion", "tensor-product decomposition of simple labels");
  fusion->add_option("expr", expr, "product such as W2*W3 or V1*V1@even:N1=3")->required();
  reserved_json(fusion);

  CLI::App* verify =
      app.add_subcommand("verify-relations", "pairing relation suite (2a-2h, 3a-3d, 13a-13i)");
  verify->add_option("pairing", file_a, "pairing JSON file")->required();
  verify->add_option("--approx-tol", tol, "accept embedded residuals up to this bound")
      ->capture_default_str();
  reserved_json(verify);

  CLI::App* fold = app.add_subcommand("fold", "folded algebra checks for a pairing");
  fold->add_option("pairing", file_a, "pairing JSON file")->required();
  reserved_json(fold);

  CLI::App* certify = app.add_subcommand("certify-nonzero", "nonvanishing certificate for a pair");
  certify->add_option("E", file_a, "multimatrix JSON file")->required();
  certify->add_option("F", file_b, "multimatrix JSON file")->required();
  reserved_json(certify);

  CLI::App* hopf =
      app.add_subcommand("hopf-axioms", "coassociativity, counit and antipode identities");
  hopf->add_option("E", file_a, "multimatrix JSON file")->required();
  hopf->add_option("F", file_b, "multimatrix JSON file")->required();
  hopf->add_option("G", file_c, "multimatrix JSON file")->required();
  hopf->add_option("M", file_d, "multimatrix JSON file")->required();
  reserved_json(hopf);

  CLI::App* corpus = app.add_subcommand("corpus", "write the bundled fixture set");
  corpus->add_option("dir", out_dir, "output directory")->capture_default_str();
  reserved_json(corpus);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::Error& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    if (code == 0) return {0, out.str()};
    return {2, dump_json(error_json("UsageError", e.what()))};
  }

  try {
    if (check->parsed()) return render(check_outcome(load_multimatrix(file_a)));
    if (qparam->parsed()) return render(qparam_outcome(load_multimatrix(file_a), bound, tol));
    if (present->parsed())
      return render(present_outcome(load_multimatrix(file_a), load_multimatrix(file_b)));
    if (confluence->parsed())
      return render(
          confluence_outcome(load_multimatrix(file_a), load_multimatrix(file_b), extended));
    if (hilbert->parsed())
      return render(hilbert_outcome(load_multimatrix(file_a), load_multimatrix(file_b), max_deg,
                                    extended));
    if (fusion->parsed()) return render(fusion_outcome(expr));
    if (verify->parsed()) return render(verify_relations_outcome(load_pairing(file_a), tol));
    if (fold->parsed()) return render(fold_outcome(load_pairing(file_a)));
    if (certify->parsed())
      return render(certify_outcome(load_multimatrix(file_a), load_multimatrix(file_b)));
    if (hopf->parsed())
      return render(hopf_outcome(load_multimatrix(file_a), load_multimatrix(file_b),
                                 load_multimatrix(file_c), load_multimatrix(file_d)));
    if (corpus->parsed()) return run_corpus(out_dir);
  } catch (const Error& e) {
    return {2, dump_json(error_json(errc_name(e.code()), e.what()))};
  }
  return {2, dump_json(error_json("UsageError", "no command given"))};
}

}  // namespace qaut

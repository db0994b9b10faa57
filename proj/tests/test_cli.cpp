#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qaut/cli.hpp"
#include "qaut/json_io.hpp"

using namespace qaut;

namespace {

const std::string kDir = "cli_test_tmp";

std::string fixture(const std::string& name) { return kDir + "/" + name; }

void ensure_corpus() {
  static bool done = false;
  if (done) return;
  const CliResult r = cli_run({"corpus", kDir});
  REQUIRE(r.code == 0);
  done = true;
}

Json parsed(const CliResult& r) { return Json::parse(r.output); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << content;
}

std::string error_code(const Json& j) { return j.at("error").at("code").get<std::string>(); }

}  // namespace

TEST_CASE("corpus fixtures are byte-stable and parseable") {
  ensure_corpus();
  const CliResult first = cli_run({"corpus", kDir});
  REQUIRE(first.code == 0);
  CHECK(parsed(first).at("written").size() == 7);
  const std::string i2_bytes = read_file(fixture("i2.json"));
  const std::string quat_bytes = read_file(fixture("quaternion.json"));
  const CliResult second = cli_run({"corpus", kDir});
  REQUIRE(second.code == 0);
  CHECK(second.output == first.output);
  CHECK(read_file(fixture("i2.json")) == i2_bytes);
  CHECK(read_file(fixture("quaternion.json")) == quat_bytes);

  const MultiMatrix fq2 = load_multimatrix(fixture("fq2.json"));
  REQUIRE(fq2.block_count() == 1);
  CHECK(fq2.block(1) == Mat::diag({Exact::ratio(1, 2), Exact(2)}));
  const MultiMatrix c4 = load_multimatrix(fixture("c4.json"));
  CHECK(c4.block_count() == 4);
  CHECK(c4.total_dim() == 4);
  const PairingData quat = load_pairing(fixture("quaternion.json"));
  CHECK(quat.dim_w == 3);
  CHECK(quat.tau == Exact(3));
  CHECK(quat.omega_pow == 0);
  REQUIRE(quat.star.has_value());
  CHECK(quat.d.empty());
}

TEST_CASE("check reports the measure flags") {
  ensure_corpus();
  const CliResult i2 = cli_run({"check", fixture("i2.json")});
  REQUIRE(i2.code == 0);
  Json j = parsed(i2);
  CHECK(j.at("homogeneous") == true);
  CHECK(j.at("normalized") == true);
  CHECK(j.at("positive") == true);

  const CliResult fq2 = cli_run({"check", fixture("fq2.json")});
  REQUIRE(fq2.code == 0);
  j = parsed(fq2);
  CHECK(j.at("normalized") == true);
  CHECK(parse_scalar(j.at("common_trace").get<std::string>()) == Exact::ratio(5, 2));

  const CliResult mixed = cli_run({"check", fixture("c2_plus_i2.json")});
  REQUIRE(mixed.code == 0);
  j = parsed(mixed);
  CHECK(j.at("homogeneous") == true);
  CHECK(j.at("normalized") == false);
  CHECK(j.at("normalizable") == true);
  CHECK(parse_scalar(j.at("xi_squared").get<std::string>()) == Exact::ratio(5, 4));
  CHECK(j.at("positive") == true);

  const CliResult c4 = cli_run({"check", fixture("c4.json")});
  REQUIRE(c4.code == 0);
  j = parsed(c4);
  CHECK(j.at("homogeneous") == true);
  CHECK(j.at("normalized") == false);
  CHECK(parse_scalar(j.at("xi_squared").get<std::string>()) == Exact(4));
}

TEST_CASE("qparam solves the unit quadratic and classifies the root") {
  ensure_corpus();
  const CliResult r = cli_run({"qparam", fixture("fq2.json")});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j.at("q_candidates").at("exact") == true);
  const Exact q1 = parse_scalar(j.at("q_candidates").at("q1").at("value").get<std::string>());
  const Exact q2 = parse_scalar(j.at("q_candidates").at("q2").at("value").get<std::string>());
  CHECK(((q1 == Exact(2) && q2 == Exact::ratio(1, 2)) ||
         (q1 == Exact::ratio(1, 2) && q2 == Exact(2))));
  CHECK(j.at("class").at("kind") == "Generic");
  CHECK(j.at("cosemisimple") == true);
  CHECK_FALSE(j.contains("regime"));

  // The golden-ratio fixture is a rational convergent, so the whole pipeline
  // stays exact and the output is reproducible byte for byte.
  const CliResult g1 = cli_run({"qparam", fixture("fq_golden.json")});
  const CliResult g2 = cli_run({"qparam", fixture("fq_golden.json")});
  REQUIRE(g1.code == 0);
  CHECK(g1.output == g2.output);
  CHECK(parsed(g1).at("class").at("kind") == "Generic");
}

TEST_CASE("present dumps the generator order and relation families") {
  ensure_corpus();
  const CliResult r = cli_run({"present", fixture("i2.json"), fixture("i2.json")});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j.at("generator_count") == 16);
  CHECK(j.at("rule_count") == 136);
  REQUIRE(j.at("order").size() == 16);
  CHECK(j.at("order")[0] == "X[1,2,1|1,2,1]");
  CHECK(j.at("relations").at("partial_isometry").size() == 64);
  CHECK(j.at("relations").at("row_sums").size() == 4);
  CHECK(j.at("relations").at("weighted_column_sums").size() == 4);
  CHECK(j.at("relations").at("intertwining").size() == 64);
  const std::string first = j.at("relations").at("partial_isometry")[0].get<std::string>();
  CHECK(first.find("X[1,1,1|1,1,1] X[1,1,1|1,1,1]") != std::string::npos);
}

TEST_CASE("confluence follows the spec examples") {
  ensure_corpus();
  write_file(fixture("diag12.json"), "{\"blocks\": [[[\"1\",\"0\"],[\"0\",\"2\"]]]}\n");

  const CliResult good = cli_run({"confluence", fixture("i2.json"), fixture("i2.json")});
  REQUIRE(good.code == 0);
  Json j = parsed(good);
  CHECK(j.at("status") == "Resolved");
  CHECK(j.at("ambiguity_count") == 1105);
  CHECK(j.at("failures").empty());

  const CliResult mismatch = cli_run({"confluence", fixture("i2.json"), fixture("diag12.json")});
  REQUIRE(mismatch.code == 1);
  j = parsed(mismatch);
  CHECK(j.at("status") == "Failed");
  CHECK(j.at("ambiguity_count") == 1105);
  REQUIRE(j.at("failures").size() == 414);
  const Json& witness = j.at("failures")[0];
  CHECK_FALSE(witness.at("witness").get<std::string>().empty());
  CHECK(witness.contains("nf_left"));
  CHECK(witness.contains("nf_right"));

  const CliResult guarded = cli_run({"confluence", fixture("c4.json"), fixture("c4.json")});
  REQUIRE(guarded.code == 2);
  CHECK(error_code(parsed(guarded)) == "HypothesisViolation");

  const CliResult extended =
      cli_run({"confluence", fixture("c4.json"), fixture("c4.json"), "--extended"});
  REQUIRE(extended.code == 1);
  j = parsed(extended);
  CHECK(j.at("status") == "Failed");
  CHECK(j.at("ambiguity_count") == 1169);
  CHECK(j.at("failures").size() == 164);
}

TEST_CASE("hilbert counts irreducible monomials per degree") {
  ensure_corpus();
  const CliResult r = cli_run({"hilbert", fixture("i2.json"), fixture("i2.json")});
  REQUIRE(r.code == 0);
  CHECK(parsed(r).at("degrees") == Json::array({1, 9, 25, 49}));

  const CliResult shallow =
      cli_run({"hilbert", fixture("fq2.json"), fixture("fq2.json"), "--max-deg", "2"});
  REQUIRE(shallow.code == 0);
  CHECK(parsed(shallow).at("degrees") == Json::array({1, 9, 25}));
}

TEST_CASE("fusion decomposes label products") {
  const CliResult cg = cli_run({"fusion", "W2*W3"});
  REQUIRE(cg.code == 0);
  Json j = parsed(cg);
  REQUIRE(j.at("terms").size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(j.at("terms")[k].at("label") == "W" + std::to_string(k + 1));
    CHECK(j.at("terms")[k].at("mult") == 1);
    CHECK(j.at("terms")[k].at("dim") == 2 * (k + 1) + 1);
  }
  CHECK(j.at("dim_total") == 35);

  const CliResult triple = cli_run({"fusion", "W1*W1*W1"});
  REQUIRE(triple.code == 0);
  CHECK(parsed(triple).at("dim_total") == 27);

  const CliResult even = cli_run({"fusion", "V1*V1@even:N1=3"});
  REQUIRE(even.code == 0);
  CHECK(parsed(even).at("dim_total") == 4);

  const CliResult odd = cli_run({"fusion", "U2*U2@odd:N1=4"});
  REQUIRE(odd.code == 0);
  CHECK(parsed(odd).at("dim_total") == 9);

  const CliResult undetermined = cli_run({"fusion", "W1*W1@even:N1=2"});
  REQUIRE(undetermined.code == 1);
  CHECK(error_code(parsed(undetermined)) == "NotDetermined");

  CHECK(cli_run({"fusion", "V2*V2"}).code == 2);
  CHECK(cli_run({"fusion", "V1@odd:N1=2"}).code == 2);
  CHECK(cli_run({"fusion", "W2@even:N1=x"}).code == 2);
  CHECK(cli_run({"fusion", "Q3"}).code == 2);
}

TEST_CASE("verify-relations lists every relation id") {
  ensure_corpus();
  const CliResult r = cli_run({"verify-relations", fixture("quaternion.json")});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j.at("type") == "I_tau");
  CHECK(j.at("omega") == "1");
  CHECK(parse_scalar(j.at("tau").get<std::string>()) == Exact(3));
  CHECK(j.at("all_passed") == true);
  const std::vector<std::string> want = {"2a", "2b", "2c",  "2d",  "2e",  "2f",  "2g",
                                         "2h", "3a", "3b",  "3c",  "3d",  "13a", "13b",
                                         "13c", "13d", "13e", "13f", "13g", "13h", "13i"};
  REQUIRE(j.at("checks").size() == want.size());
  for (size_t k = 0; k < want.size(); ++k) {
    const Json& c = j.at("checks")[k];
    CHECK(c.at("id") == want[k]);
    CHECK(c.at("checked") == true);
    CHECK(c.at("passed") == true);
    CHECK(c.at("residual") == 0.0);
  }

  // Without the star matrix the 3-series stays listed but unchecked.
  Json quat = parse_json_file(fixture("quaternion.json"));
  quat.erase("star");
  write_file(fixture("quat_nostar.json"), dump_json(quat));
  const CliResult nostar = cli_run({"verify-relations", fixture("quat_nostar.json")});
  REQUIRE(nostar.code == 0);
  const Json nj = parsed(nostar);
  CHECK(nj.at("all_passed") == true);
  for (const Json& c : nj.at("checks")) {
    if (c.at("id").get<std::string>()[0] != '3') continue;
    CHECK(c.at("checked") == false);
    CHECK(c.at("detail") == "no star matrix supplied");
  }

  // Negating e breaks the inverse relation; the failure is reported with
  // exit 1, not treated as bad input.
  Json bad = parse_json_file(fixture("quaternion.json"));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) bad["e"][i][k] = i == k ? "2" : "0";
  write_file(fixture("quat_bad_e.json"), dump_json(bad));
  const CliResult broken = cli_run({"verify-relations", fixture("quat_bad_e.json")});
  REQUIRE(broken.code == 1);
  const Json bj = parsed(broken);
  CHECK(bj.at("all_passed") == false);
  bool found_13a = false;
  for (const Json& c : bj.at("checks"))
    if (c.at("id") == "13a" && c.at("checked") == true && c.at("passed") == false)
      found_13a = true;
  CHECK(found_13a);

  const CliResult again = cli_run({"verify-relations", fixture("quaternion.json")});
  CHECK(again.output == r.output);
}

TEST_CASE("fold validates the quaternion algebra") {
  ensure_corpus();
  const CliResult r = cli_run({"fold", fixture("quaternion.json")});
  REQUIRE(r.code == 0);
  const Json j = parsed(r);
  CHECK(j.at("dim") == 4);
  CHECK(j.at("associative") == true);
  CHECK(j.at("phi_positive") == true);
  CHECK(j.at("separability").at("multiplies_to_unit") == true);
  CHECK(j.at("separability").at("commutes") == true);
  CHECK(parse_scalar(j.at("homogeneity").at("c").get<std::string>()) == Exact(4));
  CHECK(j.at("homogeneity").at("proportional") == true);
}

TEST_CASE("certify-nonzero distinguishes certificates from meaningful failures") {
  ensure_corpus();
  write_file(fixture("diag12.json"), "{\"blocks\": [[[\"1\",\"0\"],[\"0\",\"2\"]]]}\n");

  const CliResult cert = cli_run({"certify-nonzero", fixture("i2.json"), fixture("i2.json")});
  REQUIRE(cert.code == 0);
  Json j = parsed(cert);
  CHECK(j.at("status") == "Certificate");
  CHECK(j.at("ambiguity_count") == 1105);

  const CliResult mismatch =
      cli_run({"certify-nonzero", fixture("i2.json"), fixture("diag12.json")});
  REQUIRE(mismatch.code == 1);
  j = parsed(mismatch);
  CHECK(j.at("status") == "Inconclusive");
  CHECK(j.at("reason").get<std::string>().find("trace") != std::string::npos);

  const CliResult small = cli_run({"certify-nonzero", fixture("c4.json"), fixture("c4.json")});
  REQUIRE(small.code == 1);
  CHECK(parsed(small).at("status") == "Inconclusive");
}

TEST_CASE("hopf-axioms verdict and context notes") {
  ensure_corpus();
  const std::string i2 = fixture("i2.json");
  const CliResult r = cli_run({"hopf-axioms", i2, i2, i2, i2});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j.at("all_passed") == true);
  CHECK(j.at("context_notes").empty());

  const std::string fq2 = fixture("fq2.json");
  const CliResult mixed = cli_run({"hopf-axioms", fq2, fq2, i2, i2});
  REQUIRE(mixed.code == 0);
  j = parsed(mixed);
  CHECK(j.at("all_passed") == true);
  CHECK(j.at("context_notes").size() == 4);
}

TEST_CASE("malformed input exits two, never one") {
  ensure_corpus();
  write_file(fixture("bad.json"), "{\n  \"blocks\": [[[1,\n nope]]]\n}");
  const CliResult syntax = cli_run({"check", fixture("bad.json")});
  REQUIRE(syntax.code == 2);
  Json j = parsed(syntax);
  CHECK(error_code(j) == "ParseError");
  CHECK(j.at("error").at("message").get<std::string>().find("bad.json:3") != std::string::npos);

  write_file(fixture("schema.json"), "{\"blox\": []}");
  const CliResult schema = cli_run({"check", fixture("schema.json")});
  REQUIRE(schema.code == 2);
  CHECK(error_code(parsed(schema)) == "ParseError");

  write_file(fixture("floaty.json"), "{\"blocks\": [[[1.5]]]}");
  CHECK(cli_run({"check", fixture("floaty.json")}).code == 2);

  write_file(fixture("badscalar.json"), "{\"blocks\": [[[\"1//2\"]]]}");
  const CliResult scalar = cli_run({"check", fixture("badscalar.json")});
  REQUIRE(scalar.code == 2);
  CHECK(parsed(scalar).at("error").at("message").get<std::string>().find("blocks[0][0][0]") !=
        std::string::npos);

  const CliResult missing = cli_run({"check", fixture("nowhere.json")});
  REQUIRE(missing.code == 2);
  CHECK(error_code(parsed(missing)) == "UsageError");

  Json quat = parse_json_file(fixture("quaternion.json"));
  quat["omega"] = "q";
  write_file(fixture("quat_bad_omega.json"), dump_json(quat));
  CHECK(cli_run({"verify-relations", fixture("quat_bad_omega.json")}).code == 2);

  quat = parse_json_file(fixture("quaternion.json"));
  quat["dim"] = 4;
  write_file(fixture("quat_bad_dim.json"), dump_json(quat));
  CHECK(cli_run({"verify-relations", fixture("quat_bad_dim.json")}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(cli_run({}).code == 2);
  CHECK(cli_run({"frobnicate"}).code == 2);
  CHECK(cli_run({"check"}).code == 2);
  CHECK(cli_run({"check", "a.json", "--frob"}).code == 2);

  const CliResult help = cli_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.output.find("Usage") != std::string::npos);
  CHECK(help.output.find("check") != std::string::npos);
}

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qaut/comodule.hpp"
#include "qaut/json_io.hpp"
#include "qaut/multimatrix.hpp"

namespace qaut {

// Exit code plus the JSON report of one subcommand, before rendering. Exit
// codes: 0 = success/verified, 1 = a mathematically meaningful verification
// failure, 2 = input or usage error. Shared by the command-line front end
// and the python bindings; precondition failures surface as Error and are
// mapped to exit 2 by the callers.
struct Outcome {
  int code = 0;
  Json report;
};

Outcome check_outcome(const MultiMatrix& e);
Outcome qparam_outcome(const MultiMatrix& e, int bound, double tol);
Outcome present_outcome(const MultiMatrix& e, const MultiMatrix& f);
Outcome confluence_outcome(const MultiMatrix& e, const MultiMatrix& f, bool extended);
Outcome hilbert_outcome(const MultiMatrix& e, const MultiMatrix& f, int max_deg, bool extended);
Outcome fusion_outcome(const std::string& expr);
Outcome verify_relations_outcome(const PairingData& data, double tol);
Outcome fold_outcome(const PairingData& data);
Outcome certify_outcome(const MultiMatrix& e, const MultiMatrix& f);
Outcome hopf_outcome(const MultiMatrix& e, const MultiMatrix& f, const MultiMatrix& g,
                     const MultiMatrix& m);

// The bundled fixture set as (file name, payload) pairs in the order the
// corpus command writes them.
std::vector<std::pair<std::string, Json>> corpus_fixtures();

struct CliResult {
  int code = 0;
  // Exactly what goes to standard output: a JSON report (or error payload)
  // with a trailing newline, or the help text.
  std::string output;
};

// Parses and executes one command line, given the arguments after the
// program name. Malformed input always exits 2, never 1. Identical inputs
// produce byte-identical output.
CliResult cli_run(const std::vector<std::string>& args);

}  // namespace qaut

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qaut/cli.hpp"
#include "qaut/error.hpp"
#include "qaut/json_io.hpp"

namespace py = pybind11;

namespace {

using qaut::Json;

py::object json_to_py(const Json& j) {
  if (j.is_null()) return py::none();
  if (j.is_boolean()) return py::bool_(j.get<bool>());
  if (j.is_number_unsigned()) return py::int_(j.get<unsigned long long>());
  if (j.is_number_integer()) return py::int_(j.get<long long>());
  if (j.is_number_float()) return py::float_(j.get<double>());
  if (j.is_string()) return py::str(j.get<std::string>());
  if (j.is_array()) {
    py::list out;
    for (const Json& item : j) out.append(json_to_py(item));
    return out;
  }
  py::dict out;
  for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
  return out;
}

Json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    Json out = Json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  if (py::isinstance<py::sequence>(obj)) {
    Json out = Json::array();
    for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw py::type_error("unsupported value in a JSON payload");
}

qaut::MultiMatrix mm_from_py(const py::handle& blocks) {
  Json j = Json::object();
  j["blocks"] = py_to_json(blocks);
  return qaut::multimatrix_from_json(j, "blocks");
}

qaut::PairingData pairing_from_py(const py::handle& pairing) {
  return qaut::pairing_from_json(py_to_json(pairing), "pairing");
}

py::tuple outcome_py(const qaut::Outcome& o) {
  return py::make_tuple(o.code, json_to_py(o.report));
}

}  // namespace

PYBIND11_MODULE(_qaut, m) {
  m.doc() = "exact calculator for measured multimatrix pairs and their universal algebras";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qaut::Error& e) {
      const std::string message = std::string(qaut::errc_name(e.code())) + ": " + e.what();
      PyErr_SetString(PyExc_ValueError, message.c_str());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        const qaut::CliResult r = qaut::cli_run(args);
        return py::make_tuple(r.code, r.output);
      },
      py::arg("args"), "Execute one command line; returns (exit_code, output).");

  m.def(
      "fixture_names",
      [] {
        std::vector<std::string> names;
        for (const auto& [name, payload] : qaut::corpus_fixtures())
          names.push_back(name.substr(0, name.size() - 5));
        return names;
      },
      "Names of the bundled fixtures, without the .json suffix.");

  m.def(
      "fixture",
      [](const std::string& name) {
        for (const auto& [file, payload] : qaut::corpus_fixtures())
          if (file == name + ".json") return json_to_py(payload);
        throw py::key_error("no fixture named " + name);
      },
      py::arg("name"), "One bundled fixture as a dict.");

  m.def(
      "check", [](const py::handle& e) { return outcome_py(qaut::check_outcome(mm_from_py(e))); },
      py::arg("blocks"), "MeasureReport of a multimatrix given as nested scalar strings.");

  m.def(
      "qparam",
      [](const py::handle& e, int bound, double tol) {
        return outcome_py(qaut::qparam_outcome(mm_from_py(e), bound, tol));
      },
      py::arg("blocks"), py::arg("bound") = 64, py::arg("approx_tol") = 1e-9,
      "Deformation parameter and root-of-unity class of a multimatrix.");

  m.def(
      "present",
      [](const py::handle& e, const py::handle& f) {
        return outcome_py(qaut::present_outcome(mm_from_py(e), mm_from_py(f)));
      },
      py::arg("blocks_e"), py::arg("blocks_f"),
      "Generators and defining relations of the pair (E, F).");

  m.def(
      "confluence",
      [](const py::handle& e, const py::handle& f, bool extended) {
        return outcome_py(qaut::confluence_outcome(mm_from_py(e), mm_from_py(f), extended));
      },
      py::arg("blocks_e"), py::arg("blocks_f"), py::arg("extended") = false,
      "Diamond-lemma check of the reduction system of the pair (E, F).");

  m.def(
      "hilbert",
      [](const py::handle& e, const py::handle& f, int max_deg, bool extended) {
        return outcome_py(qaut::hilbert_outcome(mm_from_py(e), mm_from_py(f), max_deg, extended));
      },
      py::arg("blocks_e"), py::arg("blocks_f"), py::arg("max_deg") = 3,
      py::arg("extended") = false, "Irreducible-monomial counts per degree.");

  m.def(
      "fusion", [](const std::string& expr) { return outcome_py(qaut::fusion_outcome(expr)); },
      py::arg("expr"), "Decompose a product such as W2*W3 or V1*V1@even:N1=3.");

  m.def(
      "verify_relations",
      [](const py::handle& pairing, double tol) {
        return outcome_py(qaut::verify_relations_outcome(pairing_from_py(pairing), tol));
      },
      py::arg("pairing"), py::arg("approx_tol") = 1e-9,
      "Relation suite (2a-2h, 3a-3d, 13a-13i) for a pairing dict.");

  m.def(
      "fold",
      [](const py::handle& pairing) {
        return outcome_py(qaut::fold_outcome(pairing_from_py(pairing)));
      },
      py::arg("pairing"), "Folded-algebra checks for a pairing dict.");

  m.def(
      "certify_nonzero",
      [](const py::handle& e, const py::handle& f) {
        return outcome_py(qaut::certify_outcome(mm_from_py(e), mm_from_py(f)));
      },
      py::arg("blocks_e"), py::arg("blocks_f"),
      "Nonvanishing certificate for the algebra of the pair (E, F).");

  m.def(
      "hopf_axioms",
      [](const py::handle& e, const py::handle& f, const py::handle& g, const py::handle& m_) {
        return outcome_py(
            qaut::hopf_outcome(mm_from_py(e), mm_from_py(f), mm_from_py(g), mm_from_py(m_)));
      },
      py::arg("blocks_e"), py::arg("blocks_f"), py::arg("blocks_g"), py::arg("blocks_m"),
      "Coassociativity, counit and antipode identities on every generator.");
}

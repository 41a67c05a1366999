#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cspw/errors.hpp"
#include "cspw/io.hpp"
#include "cspw/pipeline.hpp"
#include "cspw/reductions.hpp"
#include "cspw/split.hpp"
#include "cspw/witness.hpp"

namespace py = pybind11;
using namespace cspw;

namespace {

py::dict report_dict(const ConditionReport& r) {
  py::dict d;
  for (Condition c : {Condition::BlockOrthogonality, Condition::TypePartition, Condition::Maltsev}) {
    const ConditionStatus& st = r.status(c);
    py::dict e;
    e["ok"] = st.ok;
    e["level"] = st.level;
    e["certificate"] = st.certificate;
    d[py::str(to_string(c))] = e;
  }
  return d;
}

Mode mode_of(const std::string& s) {
  if (s == "verified") return Mode::Verified;
  if (s == "optimistic") return Mode::Optimistic;
  if (s == "auto") return Mode::Auto;
  throw InvalidArgument("mode must be verified, optimistic or auto");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact counting-CSP partition functions over cyclotomic fields";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<Unsupported>(m, "Unsupported");
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<TypePartitionViolation>(m, "TypePartitionViolation");

  py::class_<CycloValue>(m, "CycloValue")
      .def(py::init([](const std::string& text, int order) { return CycloValue::parse(text, order); }),
           py::arg("text"), py::arg("order") = 1)
      .def_static("root", [](int order, long long k) { return CycloValue::root_power(order, k); })
      .def_property_readonly("order", &CycloValue::order)
      .def("conj", &CycloValue::conj)
      .def("inv", &CycloValue::inv)
      .def("pow", &CycloValue::pow)
      .def("is_zero", &CycloValue::is_zero)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", &CycloValue::to_string)
      .def("__repr__", [](const CycloValue& v) { return "CycloValue('" + v.to_string() + "', " + std::to_string(v.order()) + ")"; })
      .def("__hash__", [](const CycloValue& v) { return py::hash(py::str(v.to_string() + "@" + std::to_string(v.order()))); });

  py::class_<Instance>(m, "Instance")
      .def_static("parse", &parse_instance_string)
      .def_static("load", &load_instance)
      .def("dump", &write_instance)
      .def_property_readonly("domain", &Instance::domain)
      .def_property_readonly("order", &Instance::order)
      .def_property_readonly("num_vars", &Instance::num_vars)
      .def_property_readonly("num_constraints", [](const Instance& i) { return i.constraints().size(); });

  py::class_<MaltsevMap>(m, "MaltsevMap")
      .def(py::init<int, std::vector<int>>())
      .def_static("xor3", &MaltsevMap::xor3)
      .def_static("affine", &MaltsevMap::affine)
      .def_static("parse", &parse_phi_string)
      .def_property_readonly("domain", &MaltsevMap::domain)
      .def_property_readonly("table", &MaltsevMap::table)
      .def("__call__", &MaltsevMap::operator())
      .def(py::self == py::self);

  m.def("brute_force_Z", [](const Instance& i) { return brute_force_Z(i); });
  m.def("eliminate_Z", [](const Instance& i) { return eliminate_Z(i); });
  m.def("search_phi", [](const Instance& i) { return search_phi_for_instance(i); });
  m.def("check_conditions", [](const Instance& i, const MaltsevMap& phi) {
    return report_dict(check_instance_conditions(i, phi));
  });
  m.def(
      "solve",
      [](const Instance& i, const MaltsevMap& phi, const std::string& mode) {
        PipelineResult r = solve(i, phi, mode_of(mode));
        py::dict d;
        d["mode"] = to_string(r.mode);
        d["Z"] = r.Z ? py::cast(*r.Z) : py::none();
        py::list s;
        for (const auto& l : r.levels) s.append(py::make_tuple(l.t, l.s()));
        d["levels"] = s;
        if (r.violation) {
          d["violation"] = py::make_tuple(r.violation->kind, r.violation->level, r.violation->certificate);
        } else {
          d["violation"] = py::none();
        }
        return d;
      },
      py::arg("instance"), py::arg("phi"), py::arg("mode") = "verified");
  m.def("value_counts", [](const Instance& i) {
    py::dict d;
    for (const auto& [v, c] : count_via_vandermonde(i, [](const Instance& j) { return brute_force_Z(j); })) {
      d[py::str(v.to_string())] = c;
    }
    return d;
  });
  m.def("value_histogram", [](const Instance& i) {
    py::dict d;
    for (const auto& [v, c] : value_histogram(i)) d[py::str(v.to_string())] = c;
    return d;
  });
  m.def("closure", [](int d, std::vector<Tuple> tuples, const MaltsevMap& phi) {
    const int n = tuples.empty() ? 0 : static_cast<int>(tuples.front().size());
    return closure(Relation(d, n, std::move(tuples)), phi).tuples();
  });
  m.def("split_parts", [](int d, std::vector<Tuple> tuples, const MaltsevMap& phi,
                          const std::function<std::int64_t(const Tuple&)>& label) {
    const int n = tuples.empty() ? 0 : static_cast<int>(tuples.front().size());
    WitnessFunction w = build_witness_enumerative(Relation(d, n, std::move(tuples)), phi);
    SplitResult r = split(w, label);
    py::dict out;
    for (int k = 0; k < r.parts; ++k) out[py::int_(r.labels[k])] = materialize(r.witnesses[k]).tuples();
    return out;
  });
}

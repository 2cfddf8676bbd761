// Python bindings over the string-facing surface: canonical forms, tree
// distances, ball enumeration, growth brackets, and the certificate pipeline.
// Words cross the boundary as display strings and are parsed per call, so the
// module never exposes letter packing or space points.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "growth/constructions.hpp"
#include "growth/experiments.hpp"
#include "growth/group.hpp"
#include "growth/growth_engine.hpp"
#include "growth/space.hpp"

namespace py = pybind11;
using namespace growth;

namespace {

ActionConstants constants_for(const GroupModel&, std::int64_t D, std::int64_t M) {
  ActionConstants c{0, D, M};
  c.validate();
  return c;
}

std::vector<Word> parse_gens(const GroupModel& m, const std::vector<std::string>& gens) {
  std::vector<Word> set = parse_set(m, gens);
  if (set.empty()) throw std::invalid_argument("generating set is trivial");
  return set;
}

py::dict estimate_dict(const GrowthEstimate& e) {
  py::dict d;
  d["depth"] = e.depth;
  d["point_estimate"] = e.point_estimate;
  d["certified_upper"] = e.certified_upper;
  d["upper_beta"] = e.upper_beta;
  d["upper_depth"] = e.upper_depth;
  d["e_one"] = e.e_one;
  if (e.has_lower()) {
    d["certified_lower"] = e.certified_lower;
    d["lower_certificate"] = e.lower_certificate;
  }
  return d;
}

class PyModel {
 public:
  explicit PyModel(const std::string& name) : m_(make_model(name)) {}

  std::string kind() const { return m_->kind(); }
  std::string normalize(const std::string& w) const {
    return m_->format(m_->parse(w));
  }
  std::string multiply(const std::string& a, const std::string& b) const {
    return m_->format(m_->multiply(m_->parse(a), m_->parse(b)));
  }
  std::string invert(const std::string& a) const {
    return m_->format(m_->invert(m_->parse(a)));
  }
  std::string power(const std::string& a, std::int64_t e) const {
    return m_->format(m_->power(m_->parse(a), e));
  }
  bool is_identity(const std::string& a) const {
    return m_->is_identity(m_->parse(a));
  }
  bool commute(const std::string& a, const std::string& b) const {
    return m_->commute(m_->parse(a), m_->parse(b));
  }
  std::int64_t dist(const std::string& a, const std::string& b) const {
    return m_->dist(m_->act(m_->parse(a), m_->base()),
                    m_->act(m_->parse(b), m_->base()));
  }
  std::int64_t translation_length(const std::string& g) const {
    return growth::translation_length(*m_, m_->parse(g));
  }

  std::vector<std::int64_t> balls(const std::vector<std::string>& gens, int depth,
                                  std::int64_t cap, int shards) const {
    return enumerate_levels(*m_, parse_gens(*m_, gens), depth,
                            static_cast<std::size_t>(cap), shards, false)
        .ball_sizes();
  }

  py::dict estimate(const std::vector<std::string>& gens, int depth) const {
    return estimate_dict(
        growth_estimate(enumerate_levels(*m_, parse_gens(*m_, gens), depth)));
  }

  std::string find_hyperbolic(const std::vector<std::string>& gens, std::int64_t D,
                              std::int64_t M) const {
    return m_->format(find_hyperbolic_in_power(*m_, parse_gens(*m_, gens),
                                               constants_for(*m_, D, M)));
  }

  py::dict lower_bound(const std::vector<std::string>& gens, std::int64_t D,
                       std::int64_t M, int depth) const {
    LowerBoundCertificate cert = lower_bound_audit(*m_, parse_gens(*m_, gens),
                                                   constants_for(*m_, D, M), depth);
    py::dict d;
    d["passed"] = cert.passed;
    d["failure"] = cert.failure;
    d["p"] = cert.p;
    d["implied"] = cert.implied;
    d["weak"] = cert.weak;
    d["certificate_id"] = cert.certificate_id;
    d["estimate"] = estimate_dict(cert.estimate);
    return d;
  }

  py::dict audit(const std::vector<std::string>& gens, std::int64_t D,
                 std::int64_t M) const {
    PipelineAudit a =
        full_pipeline_audit(*m_, parse_gens(*m_, gens), constants_for(*m_, D, M));
    py::dict d;
    d["passed"] = a.passed;
    d["failed_stage"] = a.failed_stage;
    py::list stages;
    for (const auto& st : a.stages) {
      py::dict s;
      s["name"] = st.name;
      s["passed"] = st.passed;
      s["detail"] = st.detail;
      stages.append(s);
    }
    d["stages"] = stages;
    return d;
  }

 private:
  std::unique_ptr<GroupModel> m_;
};

}  // namespace

PYBIND11_MODULE(_growth, mod) {
  mod.doc() =
      "Growth spectra of groups acting on trees: canonical forms, ball counts, "
      "growth-rate brackets, and acylindricity certificates.";

  py::class_<PyModel>(mod, "Model")
      .def(py::init<const std::string&>(), py::arg("name"),
           "Bundled models: f1, f2, ..., fp22..fp88, bs23z.")
      .def("kind", &PyModel::kind)
      .def("normalize", &PyModel::normalize, py::arg("word"))
      .def("multiply", &PyModel::multiply, py::arg("a"), py::arg("b"))
      .def("invert", &PyModel::invert, py::arg("a"))
      .def("power", &PyModel::power, py::arg("a"), py::arg("exponent"))
      .def("is_identity", &PyModel::is_identity, py::arg("word"))
      .def("commute", &PyModel::commute, py::arg("a"), py::arg("b"))
      .def("dist", &PyModel::dist, py::arg("a"), py::arg("b"),
           "Tree distance between the orbit points of the two words.")
      .def("translation_length", &PyModel::translation_length, py::arg("g"))
      .def("balls", &PyModel::balls, py::arg("gens"), py::arg("depth"),
           py::arg("cap") = 10'000'000, py::arg("shards") = 1,
           "Cumulative ball sizes of the word metric, radii 0..depth.")
      .def("estimate", &PyModel::estimate, py::arg("gens"), py::arg("depth") = 8,
           "Growth-rate bracket from the ball table.")
      .def("find_hyperbolic", &PyModel::find_hyperbolic, py::arg("gens"),
           py::arg("D") = 1, py::arg("M") = 2,
           "First hyperbolic element in S^1..S^M, shortlex order.")
      .def("lower_bound", &PyModel::lower_bound, py::arg("gens"), py::arg("D") = 1,
           py::arg("M") = 2, py::arg("depth") = 4,
           "Certified growth lower bound via the free-basis pipeline.")
      .def("audit", &PyModel::audit, py::arg("gens"), py::arg("D") = 1,
           py::arg("M") = 2, "Full certificate chain with per-stage outcomes.");

  mod.attr("__version__") = "1.0.0";
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "uhecke/io.hpp"

namespace py = pybind11;
using namespace uhecke;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

class PyInstance {
 public:
  PyInstance(const py::dict& config, std::optional<std::string> cache_dir, bool use_cache) {
    cfg_ = InstanceConfig::from_json(from_py(config));
    std::optional<TableCache> cache;
    if (use_cache) cache.emplace(cache_dir ? std::filesystem::path(*cache_dir) : TableCache::default_dir());
    py::gil_scoped_release release;
    inst_ = build_instance(cfg_, cache ? &*cache : nullptr, &log_);
  }

  std::size_t size() const { return inst_->group().size(); }
  std::string describe() const { return inst_->describe(); }
  std::string config_hash() const { return cfg_.hash(); }
  py::object config() const { return to_py(cfg_.canonical()); }
  std::vector<std::string> log() const { return log_; }

  py::object klpolys() const { return to_py(to_json(inst_->kl())); }
  py::object cells() const { return to_py(cells_json(inst_->cells(), inst_->group())); }
  py::object afn() const { return to_py(to_json(*jdata(), inst_->group())); }

  py::object hconsts(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) const {
    const auto& W = inst_->group();
    std::vector<std::pair<int, int>> list;
    for (const auto& [x, y] : pairs) list.emplace_back(element_from_json(W, json(x)), element_from_json(W, json(y)));
    std::shared_ptr<const StructureConstants> sc;
    {
      py::gil_scoped_release release;
      sc = inst_->structure();
    }
    return to_py(structure_json(*sc, list));
  }

  py::object jring() const {
    JRing ring(jdata(), inst_->group_ptr());
    AssociativityReport assoc;
    std::optional<int> identity;
    {
      py::gil_scoped_release release;
      assoc = ring.check_associativity(120, 20000, cfg_.seed);
      identity = ring.check_identity();
    }
    return to_py(jring_json(*jdata(), inst_->group(), assoc, identity));
  }

  py::object psi(bool include_matrix, std::size_t pair_limit, std::size_t samples) const {
    std::shared_ptr<const StructureConstants> sc;
    {
      py::gil_scoped_release release;
      sc = inst_->structure();
    }
    PsiMap map(sc, jdata());
    IsoCertificate cert;
    {
      py::gil_scoped_release release;
      cert = certify_iso(map, pair_limit, samples, cfg_.seed);
    }
    return to_py(psi_json(map, cert, include_matrix));
  }

  py::object verify(const std::string& props, const std::string& p15_mode, std::size_t p15_samples) const {
    VerifyOptions opts;
    opts.props = parse_property_list(props);
    opts.p15.mode = parse_p15_mode(p15_mode);
    opts.p15.samples = p15_samples;
    opts.p15.seed = cfg_.seed;
    ConjectureReport report;
    {
      py::gil_scoped_release release;
      report = uhecke::verify(*inst_, opts);
    }
    report.seed = cfg_.seed;
    json data = to_json(report, inst_->group());
    data["p15_mode"] = p15_mode_name(opts.p15.mode);
    return to_py(data);
  }

  py::object oracle_dihedral(bool compare) const {
    auto o = dihedral_oracle(inst_->algebra());
    json data{{"oracle", to_json(o, inst_->algebra())}};
    if (compare) data["comparison"] = to_json(compare_with_oracle(o, *inst_));
    return to_py(data);
  }

 private:
  std::shared_ptr<const JData> jdata() const {
    py::gil_scoped_release release;
    return inst_->jdata();
  }

  InstanceConfig cfg_;
  std::shared_ptr<Instance> inst_;
  std::vector<std::string> log_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Kazhdan-Lusztig bases, cells and asymptotic rings with unequal parameters";
  m.attr("__version__") = kLibraryVersion;
  m.attr("format_version") = kFormatVersion;

  py::register_exception<std::invalid_argument>(m, "InputError", PyExc_ValueError);

  py::class_<PyInstance>(m, "Instance")
      .def(py::init<const py::dict&, std::optional<std::string>, bool>(), py::arg("config"),
           py::arg("cache_dir") = py::none(), py::arg("use_cache") = true)
      .def("__len__", &PyInstance::size)
      .def("__repr__", &PyInstance::describe)
      .def_property_readonly("config", &PyInstance::config)
      .def_property_readonly("config_hash", &PyInstance::config_hash)
      .def_property_readonly("log", &PyInstance::log)
      .def("klpolys", &PyInstance::klpolys)
      .def("hconsts", &PyInstance::hconsts, py::arg("pairs"))
      .def("cells", &PyInstance::cells)
      .def("afn", &PyInstance::afn)
      .def("jring", &PyInstance::jring)
      .def("psi", &PyInstance::psi, py::arg("include_matrix") = false, py::arg("pair_limit") = 48,
           py::arg("samples") = 2000)
      .def("verify", &PyInstance::verify, py::arg("props") = "all", py::arg("p15_mode") = "star",
           py::arg("p15_samples") = 100000)
      .def("oracle_dihedral", &PyInstance::oracle_dihedral, py::arg("compare") = false);
}

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oamix/catalog.hpp"
#include "oamix/error.hpp"
#include "oamix/evaluate.hpp"
#include "oamix/fit.hpp"
#include "oamix/io.hpp"
#include "oamix/modelmat.hpp"
#include "oamix/pwo.hpp"

namespace py = pybind11;
using namespace oamix;

namespace {

ModelSpec make_spec(const BlockedDesign& d, const std::string& model, std::optional<bool> pwo,
                    std::optional<bool> block, const std::string& interactions, const std::string& coding) {
    ModelSpec s;
    s.family = modelmat::family_from_name(model);
    s.include_pwo = pwo.value_or(d.has_pwo());
    s.include_block = block.value_or(d.n_blocks == 2);
    s.interaction_terms = modelmat::parse_interactions(interactions, d.m);
    if (coding == "coded")
        s.coding = Coding::Coded;
    else if (coding != "raw")
        throw Error(ErrorKind::SpecError, "coding must be 'raw' or 'coded'");
    return s;
}

py::array_t<double> to_array(const std::vector<double>& data, std::size_t rows, std::size_t cols) {
    py::array_t<double> a({rows, cols});
    std::copy(data.begin(), data.end(), a.mutable_data());
    return a;
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

#define MODEL_ARGS                                                                                      \
    py::arg("design"), py::arg("model"), py::kw_only(), py::arg("pwo") = py::none(),                  \
        py::arg("block") = py::none(), py::arg("interactions") = "none"

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Blocked order-of-addition mixture designs";

    py::register_exception<Error>(m, "OamixError");

    py::class_<BlockedDesign>(m, "Design")
        .def_readonly("m", &BlockedDesign::m)
        .def_readonly("n_blocks", &BlockedDesign::n_blocks)
        .def_property_readonly("kind", [](const BlockedDesign& d) { return std::string(kind_name(d.kind)); })
        .def_property_readonly("values",
                               [](const BlockedDesign& d) {
                                   std::vector<double> v;
                                   for (const auto& r : d.runs) v.insert(v.end(), r.values.begin(), r.values.end());
                                   return to_array(v, d.size(), static_cast<std::size_t>(d.m));
                               })
        .def_property_readonly("pwo",
                               [](const BlockedDesign& d) {
                                   std::vector<double> v;
                                   for (const auto& r : d.runs) v.insert(v.end(), r.pwo.begin(), r.pwo.end());
                                   return to_array(v, d.size(), pair_count(d.m));
                               })
        .def_property_readonly("blocks",
                               [](const BlockedDesign& d) {
                                   std::vector<int> b;
                                   for (const auto& r : d.runs) b.push_back(r.block);
                                   return b;
                               })
        .def_property_readonly("amounts",
                               [](const BlockedDesign& d) {
                                   std::vector<double> a;
                                   for (const auto& r : d.runs) a.push_back(r.amount);
                                   return a;
                               })
        .def("__len__", &BlockedDesign::size)
        .def("__eq__", [](const BlockedDesign& a, const BlockedDesign& b) { return a == b; })
        .def("to_csv", &io::write_design_csv)
        .def_static("from_csv", [](const std::string& text) { return io::parse_design_csv(text); })
        .def_static("read", [](const std::string& path) { return io::read_design_file(path); })
        .def("__repr__", [](const BlockedDesign& d) {
            return "<Design m=" + std::to_string(d.m) + " runs=" + std::to_string(d.size()) +
                   " blocks=" + std::to_string(d.n_blocks) + " " + kind_name(d.kind) + ">";
        });

    m.def("catalog_names", &catalog::names);
    m.def("catalog", [](const std::string& name, double a_max) { return catalog::by_name(name, a_max); },
          py::arg("name"), py::arg("a_max") = 1.0);
    m.def(
        "expand",
        [](const BlockedDesign& d, bool vertex_orders) {
            catalog::ExpansionPolicy p;
            p.vertex_orders = vertex_orders ? catalog::ExpansionPolicy::Vertex::All : catalog::ExpansionPolicy::Vertex::None;
            return catalog::oofa_expand(d, p);
        },
        py::arg("design"), py::arg("vertex_orders") = true);
    m.def("validate", [](const BlockedDesign& d) {
        std::vector<std::tuple<std::optional<std::size_t>, std::string, std::string>> out;
        for (const auto& v : validate_design(d)) out.emplace_back(v.run, v.rule, v.detail);
        return out;
    });

    m.def("pwo_from_permutation",
          [](const std::vector<int>& perm, int mm) { return pwo::from_permutation(perm, mm); });
    m.def("pwo_to_permutation", [](const std::vector<int>& z, const std::vector<int>& support, int mm) {
        return pwo::to_permutation(z, support, mm);
    });
    m.def("enumerate_orderings", [](const std::vector<double>& values) { return pwo::enumerate_orderings(values); });

    m.def(
        "model_matrix",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, const std::string& coding) {
            const auto x = modelmat::build_model_matrix(d, make_spec(d, model, pwo, block, interactions, coding));
            return py::make_tuple(x.columns, to_array(x.data, x.rows, x.cols()));
        },
        MODEL_ARGS, py::arg("coding") = "raw");

    m.def(
        "evaluate",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, const std::string& coding, double alpha, double effect_sd, double sigma) {
            const auto x = modelmat::build_model_matrix(d, make_spec(d, model, pwo, block, interactions, coding));
            evaluate::PowerOptions opt{sigma, alpha, effect_sd};
            return json_to_py(io::to_json(evaluate::criteria_report(x, nullptr, opt)));
        },
        MODEL_ARGS, py::arg("coding") = "coded", py::arg("alpha") = 0.05, py::arg("effect_sd") = 2.0,
        py::arg("sigma") = 1.0);

    m.def(
        "check_blocks",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, double tol) {
            evaluate::BlockingTolerance t;
            t.mixture = tol;
            return json_to_py(io::to_json(
                evaluate::check_orthogonal_blocking(d, make_spec(d, model, pwo, block, interactions, "raw"), t)));
        },
        MODEL_ARGS, py::arg("tol") = 5e-3);

    m.def(
        "power",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, const std::string& coding, double alpha, double effect_sd, double sigma) {
            const auto x = modelmat::build_model_matrix(d, make_spec(d, model, pwo, block, interactions, coding));
            evaluate::PowerOptions opt{sigma, alpha, effect_sd};
            return json_to_py(io::to_json(evaluate::power_table(x, opt)));
        },
        MODEL_ARGS, py::arg("coding") = "coded", py::arg("alpha") = 0.05, py::arg("effect_sd") = 2.0,
        py::arg("sigma") = 1.0);

    m.def("t_test_power", &evaluate::t_test_power, py::arg("noncentrality"), py::arg("df"), py::arg("alpha") = 0.05);

    m.def(
        "fds",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, std::size_t samples, std::uint64_t seed, unsigned threads) {
            const auto spec = make_spec(d, model, pwo, block, interactions, "raw");
            evaluate::FdsCurve curve;
            {
                py::gil_scoped_release release;
                curve = evaluate::fds_curve(d, spec, samples, seed, threads);
            }
            std::vector<double> f, v;
            for (const auto& p : curve.points) {
                f.push_back(p.fraction);
                v.push_back(p.variance);
            }
            return py::make_tuple(py::array_t<double>(f.size(), f.data()), py::array_t<double>(v.size(), v.data()));
        },
        MODEL_ARGS, py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "fit",
        [](const BlockedDesign& d, const std::string& model, std::optional<bool> pwo, std::optional<bool> block,
           const std::string& interactions, const std::vector<double>& y, const std::string& coding) {
            const auto x = modelmat::build_model_matrix(d, make_spec(d, model, pwo, block, interactions, coding));
            return json_to_py(io::to_json(fit::ols_fit(x, y)));
        },
        MODEL_ARGS, py::arg("y"), py::arg("coding") = "raw");
}

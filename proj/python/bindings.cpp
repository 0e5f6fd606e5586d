#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "normalproj/errors.hpp"
#include "normalproj/inversion.hpp"
#include "normalproj/oracle.hpp"
#include "normalproj/serialization.hpp"

namespace py = pybind11;
using namespace normalproj;

namespace {

MultiDegree to_degree(const std::vector<int>& d) { return MultiDegree(d); }

ParamDomain to_domain(const std::optional<std::array<double, 4>>& box) {
    if (!box) return ParamDomain::everywhere();
    return {(*box)[0], (*box)[1], (*box)[2], (*box)[3], false};
}

}  // namespace

PYBIND11_MODULE(_normalproj, m) {
    m.doc() = "Orthogonal projection onto rational surfaces";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<DegeneracyError>(m, "DegeneracyError", base.ptr());
    py::register_exception<NonFiniteFiber>(m, "NonFiniteFiber", base.ptr());

    py::enum_<SpaceKind>(m, "SpaceKind")
        .value("Triangular", SpaceKind::Triangular)
        .value("TensorProduct", SpaceKind::TensorProduct);

    py::class_<SurfaceParam>(m, "Surface")
        .def_readonly("kind", &SurfaceParam::kind)
        .def_property_readonly("degree", [](const SurfaceParam& s) { return s.degree_d.to_vector(); })
        .def_property_readonly("rational", [](const SurfaceParam& s) { return !s.is_non_rational; })
        .def("__call__", [](const SurfaceParam& s, double u, double v) { return eval_affine(s, u, v); }, py::arg("u"),
             py::arg("v"))
        .def("hash", &surface_hash)
        .def("save", [](const SurfaceParam& s, const std::filesystem::path& p) { save_surface(s, p); })
        .def("to_json", [](const SurfaceParam& s) { return to_json(s).dump(); });

    m.def("load_surface", &load_surface, py::arg("path"));
    m.def("surface_from_json", [](const std::string& text) { return surface_from_json(nlohmann::json::parse(text)); });
    m.def("segre_surface", &segre_surface);
    m.def("unit_sphere", &unit_sphere);
    m.def(
        "random_surface",
        [](SpaceKind kind, const std::vector<int>& degree, bool rational, std::uint64_t seed) {
            return random_surface(kind, to_degree(degree), rational, seed);
        },
        py::arg("kind"), py::arg("degree"), py::arg("rational") = false, py::arg("seed") = 1);

    py::class_<MatrixRep>(m, "MatrixRep")
        .def_readonly("kind", &MatrixRep::kind)
        .def_property_readonly("degree", [](const MatrixRep& r) { return r.mu_nu.to_vector(); })
        .def_property_readonly("shape", [](const MatrixRep& r) { return std::make_pair(r.rows(), r.cols()); })
        .def_property_readonly("surface_hash", [](const MatrixRep& r) { return r.meta.surface_hash; })
        .def("coefficient", [](const MatrixRep& r, int i) { return r.M.at(static_cast<std::size_t>(i)); }, py::arg("i"))
        .def("evaluate", [](const MatrixRep& r, const Eigen::Vector3d& p) { return evaluate_at(r, lift(p)); }, py::arg("p"))
        .def("corank", [](const MatrixRep& r, const Eigen::Vector3d& p, double tol) { return corank_at(r, lift(p), tol); },
             py::arg("p"), py::arg("rank_tol") = kDefaultRankTol)
        .def("save", [](const MatrixRep& r, const std::filesystem::path& p) { save_matrix_rep(r, p); });

    m.def("load_matrix", &load_matrix_rep, py::arg("path"));
    m.def("admissible_degree", [](const SurfaceParam& s) { return admissible_degree(s).to_vector(); });
    m.def(
        "build",
        [](const SurfaceParam& s, std::optional<std::vector<int>> degree, double rank_tol) {
            MultiDegree deg = admissible_degree(s);
            if (degree) deg = to_degree(*degree);
            return build_matrix_rep(build_congruence(s), deg, rank_tol);
        },
        py::arg("surface"), py::arg("degree") = py::none(), py::arg("rank_tol") = kDefaultRankTol,
        py::call_guard<py::gil_scoped_release>());

    py::class_<ProjectionResult>(m, "Projection")
        .def_readonly("u", &ProjectionResult::u)
        .def_readonly("v", &ProjectionResult::v)
        .def_readonly("point", &ProjectionResult::point)
        .def_readonly("distance", &ProjectionResult::distance)
        .def_readonly("residual", &ProjectionResult::residual)
        .def_readonly("multiplicity", &ProjectionResult::multiplicity)
        .def_readonly("low_confidence", &ProjectionResult::low_confidence)
        .def("__repr__", [](const ProjectionResult& r) {
            return "Projection(u=" + std::to_string(r.u) + ", v=" + std::to_string(r.v) + ", distance=" +
                   std::to_string(r.distance) + ")";
        });

    m.def(
        "project",
        [](const MatrixRep& rep, const SurfaceParam& s, const Eigen::Vector3d& p, std::optional<std::array<double, 4>> domain,
           double rank_tol, double imag_tol, double verify_tol) {
            check_surface_hash(rep, s);
            InversionOptions o;
            o.domain = to_domain(domain);
            o.rank_tol = rank_tol;
            o.imag_tol = imag_tol;
            o.verify_tol = verify_tol;
            return project(rep, s, p, o);
        },
        py::arg("matrix"), py::arg("surface"), py::arg("p"), py::arg("domain") = py::none(),
        py::arg("rank_tol") = kDefaultRankTol, py::arg("imag_tol") = 1e-6, py::arg("verify_tol") = 1e-6,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "eddegree", [](const SurfaceParam& s, int trials, std::uint64_t seed) { return eddegree(s, trials, seed); },
        py::arg("surface"), py::arg("trials") = 5, py::arg("seed") = 1);

    m.def(
        "oracle_project",
        [](const SurfaceParam& s, const Eigen::Vector3d& p, std::optional<std::array<double, 4>> domain, int grid_n) {
            OracleOptions o;
            o.domain = to_domain(domain);
            o.grid_n = grid_n;
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& c : oracle_project(s, p, o)) out.emplace_back(c.u, c.v, c.distance);
            return out;
        },
        py::arg("surface"), py::arg("p"), py::arg("domain") = py::none(), py::arg("grid_n") = 60,
        py::call_guard<py::gil_scoped_release>());

    m.def("gradient_D", &gradient_D, py::arg("surface"), py::arg("p"), py::arg("u"), py::arg("v"));
    m.def("orthogonality_residual", &orthogonality_residual, py::arg("surface"), py::arg("p"), py::arg("u"), py::arg("v"));
}

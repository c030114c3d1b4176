// Python bindings: reports come back as plain dicts, engine errors as Python exceptions.

#include "stabcat/harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace stabcat;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object report(const DiagramReport& r, bool allow_scalar) { return to_python(r.to_json(allow_scalar)); }

std::pair<int, int> window(std::optional<int> lo, std::optional<int> hi, int lo0, int hi0)
{
    const int a = lo.value_or(lo0), b = hi.value_or(hi0);
    if (a > b)
        throw UsageError("empty degree window");
    return {a, b};
}

std::optional<CoverKind> free_override;

// Runs f with the cover kind chosen through set_free_covers.
template <class F>
auto with_covers(F&& f)
{
    if (!free_override)
        return f();
    ScopedCoverKind scope(*free_override);
    return f();
}

} // namespace

PYBIND11_MODULE(_stabcat, m)
{
    m.doc() = "Tate cohomology, duality and transfer for symmetric algebras over prime fields";
    m.attr("engine_version") = engine_version;

    static py::exception<Error> error(m, "Error");
    static py::exception<ValidationError> validation(m, "ValidationError", error.ptr());
    static py::exception<UsageError> usage(m, "UsageError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const UsageError& e) {
            py::set_error(usage, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("fixture_names", &fixture_names, "Names of the registered fixtures.");

    m.def(
        "validate",
        [](const std::string& path) {
            AlgebraPtr a = load_algebra(path);
            return py::dict(py::arg("name") = a->name(), py::arg("dim") = a->dim(), py::arg("char") = a->prime());
        },
        py::arg("algebra"), "Load and validate an algebra file; raises ValidationError when it is not symmetric.");

    m.def(
        "ext_dimensions",
        [](const std::string& algebra, const std::string& u, const std::string& v, int lo, int hi) {
            AlgebraPtr a = load_algebra(algebra);
            ModulePtr mu = load_module_over(u, a), mv = load_module_over(v, a);
            return report(with_covers([&] { return ext_dimensions(mu, mv, lo, hi); }), false);
        },
        py::arg("algebra"), py::arg("u"), py::arg("v"), py::arg("lo"), py::arg("hi"));

    m.def(
        "hh_dimensions",
        [](const std::string& algebra, int lo, int hi) {
            AlgebraPtr a = load_algebra(algebra);
            return report(with_covers([&] { return hh_dimensions(a, lo, hi); }), false);
        },
        py::arg("algebra"), py::arg("lo"), py::arg("hi"));

    m.def(
        "verify",
        [](const std::string& diagram, const std::string& fixture, std::optional<int> lo, std::optional<int> hi,
           bool allow_scalar) {
            Fixture fx = load_fixture(fixture);
            auto [a, b] = window(lo, hi, fx.lo, fx.hi);
            DiagramReport r = with_covers([&] {
                if (diagram == "thm1")
                    return verify_hochschild_transfer(fx, a, b);
                if (diagram == "thm2")
                    return verify_ext_transfer(fx, a, b);
                if (diagram == "duality")
                    return verify_duality(fx, a, b);
                if (diagram == "adjunction")
                    return verify_adjunction(fx, a, b);
                throw UsageError("unknown diagram " + diagram + " (thm1, thm2, duality, adjunction)");
            });
            return report(r, allow_scalar);
        },
        py::arg("diagram"), py::arg("fixture"), py::arg("lo") = py::none(), py::arg("hi") = py::none(),
        py::arg("allow_scalar") = false);

    m.def(
        "search_negative",
        [](const std::string& algebra, std::optional<std::string> module, int lo, int hi) {
            AlgebraPtr a = load_algebra(algebra);
            ModulePtr u = module ? load_module_over(*module, a) : nullptr;
            return report(with_covers([&] { return search_negative_products(a, u, lo, hi); }), false);
        },
        py::arg("algebra"), py::arg("module") = py::none(), py::arg("lo"), py::arg("hi"));

    m.def(
        "set_free_covers",
        [](bool on) { free_override = on ? std::optional<CoverKind>(CoverKind::Free) : std::nullopt; },
        py::arg("on"), "Build towers from non-minimal free covers in later calls.");
}

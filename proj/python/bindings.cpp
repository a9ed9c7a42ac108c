// Python access to the main computations.  Big integers cross as Python ints
// via their decimal strings; reports cross as JSON text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hurwitz/acceptance.hpp"
#include "hurwitz/braid.hpp"
#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/experiments.hpp"
#include "hurwitz/homology.hpp"
#include "hurwitz/hyperelliptic.hpp"
#include "hurwitz/report.hpp"
#include "hurwitz/symplectic.hpp"

namespace py = pybind11;
using namespace hurwitz;

namespace {

BraidContext context(const std::string& group, const std::string& cls)
{
    Group G = build_group(load_group_spec(group));
    return BraidContext(G, resolve_class(G, cls));
}

py::int_ big(const mpz_class& z)
{
    return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10)));
}

Poly to_poly(const FiniteField& F, const std::vector<long>& coeffs)
{
    Poly f;
    for (long c : coeffs)
        f.push_back(F.from_int(c));
    PolyRing::trim(f);
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Hurwitz spaces, homological stability and Cohen-Lenstra statistics";
    m.attr("version") = kToolVersion;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

    m.def(
        "orbit_counts",
        [](const std::string& group, const std::string& cls, std::size_t n_max) {
            BraidContext ctx = context(group, cls);
            std::vector<std::size_t> out;
            for (std::size_t n = 0; n <= n_max; ++n)
                out.push_back(enumerate_orbits(ctx, n).size());
            return out;
        },
        py::arg("group"), py::arg("cls") = "", py::arg("n_max"),
        "Number of braid orbits on c^n for n = 0..n_max.");

    m.def(
        "betti",
        [](const std::string& group, const std::string& cls, std::size_t n, bool quotient) {
            BettiNumbers b = betti_numbers(context(group, cls), n, quotient);
            return py::make_tuple(b.b0, b.b1);
        },
        py::arg("group"), py::arg("cls") = "", py::arg("n"), py::arg("quotient") = false,
        "(b_0, b_1) of the Hurwitz space with n branch points.");

    m.def(
        "stabilizer_degree",
        [](const std::string& group, const std::string& cls, std::size_t D_max, std::size_t n_max) {
            StabilizerOptions opt;
            opt.D_max = D_max;
            opt.N_max = n_max;
            StabilizerDescriptor d = find_stabilizer_U(context(group, cls), opt);
            return d.found ? py::object(py::int_(d.D)) : py::object(py::none());
        },
        py::arg("group"), py::arg("cls") = "", py::arg("D_max") = 4, py::arg("n_max") = 12,
        "Least D for which U_D stabilizes the ring of components, or None.");

    m.def(
        "sur_count",
        [](std::uint32_t l, const std::string& B, const std::string& A) {
            return big(sur_count(AbelianLGroup::parse(l, B), AbelianLGroup::parse(l, A)));
        },
        py::arg("l"), py::arg("B"), py::arg("A"));
    m.def(
        "aut_order", [](std::uint32_t l, const std::string& A) { return big(aut_order(AbelianLGroup::parse(l, A))); },
        py::arg("l"), py::arg("A"));
    m.def(
        "mu_mass",
        [](std::uint32_t l, const std::string& A, unsigned truncation) {
            MassBound mb = mu_mass(AbelianLGroup::parse(l, A), truncation);
            return py::make_tuple(mb.value, mb.error);
        },
        py::arg("l"), py::arg("A"), py::arg("truncation") = 60,
        "Cohen-Lenstra mass of A as (value, error bound).");

    m.def(
        "symplectic_orbits",
        [](unsigned g, std::uint32_t l, unsigned e, const std::string& A, std::uint64_t q) {
            SymplecticOrbitResult r = symplectic_orbit_check(g, l, e, AbelianLGroup::parse(l, A), q);
            py::dict d;
            d["surjections"] = r.surjections;
            d["fixed"] = r.fixed;
            d["orbits"] = r.orbit_count;
            d["transitive"] = r.transitive;
            d["sp_order"] = r.sp_order;
            return d;
        },
        py::arg("g"), py::arg("l"), py::arg("e"), py::arg("A"), py::arg("q"));

    m.def(
        "zeta_numerator",
        [](std::uint32_t q, const std::vector<long>& coeffs) {
            FiniteField F(q);
            HyperellipticCurve C(F, to_poly(F, coeffs));
            return zeta_numerator(C).coefficients;
        },
        py::arg("q"), py::arg("f"), "Coefficients of P(T) for y^2 = f, f given low degree first.");
    m.def(
        "class_number",
        [](std::uint32_t q, const std::vector<long>& coeffs) {
            FiniteField F(q);
            HyperellipticCurve C(F, to_poly(F, coeffs));
            return jacobian_order(C);
        },
        py::arg("q"), py::arg("f"));

    m.def(
        "run_experiment_json",
        [](const std::string& config_text, unsigned jobs) {
            ExperimentConfig cfg = ExperimentConfig::parse(config_text);
            py::gil_scoped_release release;
            return to_json(run_experiment(cfg, jobs)).dump();
        },
        py::arg("config"), py::arg("jobs") = 1);

    m.def(
        "run_criterion",
        [](int id, std::uint64_t seed, std::size_t cl_samples) {
            AcceptanceOptions opt;
            opt.seed = seed;
            opt.cl_samples = cl_samples;
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = run_criterion(id, opt);
            }
            return py::make_tuple(r.passed, r.detail);
        },
        py::arg("id"), py::arg("seed") = 1, py::arg("cl_samples") = 100000);
}

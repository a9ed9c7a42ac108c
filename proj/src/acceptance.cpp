#include "hurwitz/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hurwitz/census.hpp"
#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/experiments.hpp"
#include "hurwitz/homology.hpp"
#include "hurwitz/kcomplex.hpp"
#include "hurwitz/report.hpp"
#include "hurwitz/symplectic.hpp"

namespace hurwitz {

namespace fs = std::filesystem;

namespace {

BraidContext context(const char* group, const char* rep)
{
    Group G = build_group(parse_group_spec(group));
    return BraidContext(G, resolve_class(G, rep));
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

CriterionResult squarefree_census()
{
    CriterionResult r{1, "squarefree census", true, "", 0};
    std::size_t checked = 0;
    for (std::uint32_t q : {3u, 5u, 7u}) {
        FiniteField F(q);
        std::uint64_t qn = 1;
        for (unsigned n = 1; n <= 6; ++n) {
            qn *= q;
            const std::uint64_t expected = n == 1 ? q : qn - qn / q;
            const std::uint64_t got = count_sf(F, n);
            ++checked;
            if (got != expected) {
                r.passed = false;
                r.detail += "q=" + std::to_string(q) + " n=" + std::to_string(n) + ": " + std::to_string(got) +
                            " != " + std::to_string(expected) + "; ";
            }
        }
    }
    if (r.passed)
        r.detail = std::to_string(checked) + " (q, n) pairs match q^n - q^(n-1)";
    return r;
}

CriterionResult nonsplitting_gate()
{
    CriterionResult r{2, "non-splitting gate", true, "", 0};
    auto check = [&](const char* name, const char* rep, bool want_ns, bool want_rational) {
        Group G = build_group(parse_group_spec(name));
        ConjClass c = resolve_class(G, rep);
        auto ns = is_nonsplitting(G, c);
        bool rational = is_rational_class(G, c);
        bool ok = ns.holds == want_ns && rational == want_rational;
        if (!want_ns)
            ok = ok && ns.witness && ns.witness->kind == NonsplittingWitness::Kind::splits_in_subgroup &&
                 !ns.witness->subgroup.empty();
        r.passed = r.passed && ok;
        r.detail += std::string(name) + ": non-splitting=" + (ns.holds ? "yes" : "no") +
                    " rational=" + (rational ? "yes" : "no");
        if (ns.witness)
            r.detail += " witness " + ns.witness->describe(G);
        r.detail += ok ? "; " : " (unexpected); ";
    };
    check("S3", "(1 2)", true, true);
    check("dihedral(9)", "", true, true);
    check("S4", "(1 2)", false, true);
    check("A4", "(1 2 3)", true, false);
    return r;
}

CriterionResult component_stabilization()
{
    CriterionResult r{3, "component stabilization", false, "", 0};
    auto ctx = context("S3", "(1 2)");
    StabilizerOptions opt;
    opt.N_max = 12;
    opt.D_max = 4;
    auto d = find_stabilizer_U(ctx, opt);
    bool tail_zero = true;
    for (std::size_t n = d.n0; n <= d.N_max; ++n)
        tail_zero = tail_zero && d.quotient_dims[n] == 0;
    const bool long_tail = d.found && d.N_max + 1 - d.n0 >= 2 * d.deg_U;
    r.passed = d.found && d.D <= 4 && tail_zero && long_tail && d.component_counts_stable;
    r.detail = "D=" + std::to_string(d.D) + " deg U=" + std::to_string(d.deg_U) + " tail [" + std::to_string(d.n0) +
               "," + std::to_string(d.N_max) + "] quotient dims " + join(d.quotient_dims) + "; orbit counts " +
               join(d.orbit_counts);
    return r;
}

CriterionResult k_complex_identities()
{
    CriterionResult r{4, "K-complex identities", true, "", 0};
    struct Case {
        const char* group;
        const char* rep;
        std::size_t n_max;
    };
    std::size_t complexes = 0, homotopies = 0;
    for (Case c : {Case{"S3", "(1 2)", 8}, Case{"Z2", "(1 2)", 10}}) {
        auto ctx = context(c.group, c.rep);
        ComponentRing ring(ctx, c.n_max + 1);
        GradedModule M = module_R(ring);
        for (std::size_t n = 0; n <= c.n_max; ++n) {
            build_k_complex(ctx, M, n).validate();  // throws unless d d = 0
            ++complexes;
            for (Local g = 0; g < ctx.k(); ++g)
                for (std::size_t q = 0; q <= n; ++q) {
                    auto h = homotopy_check(ring, g, n, q);
                    ++homotopies;
                    if (!h.holds) {
                        r.passed = false;
                        r.detail += std::string(c.group) + " homotopy fails at n=" + std::to_string(n) +
                                    " q=" + std::to_string(q) + "; ";
                    }
                }
        }
        auto k = k_homology(ctx, M, c.n_max);
        auto ind = indecomposable_dims(ring, c.n_max);
        for (std::size_t n = 0; n <= c.n_max; ++n)
            if (k.dims[n][0] != ind[n]) {
                r.passed = false;
                r.detail += std::string(c.group) + " H_0 mismatch at n=" + std::to_string(n) + "; ";
            }
    }
    if (r.passed)
        r.detail = std::to_string(complexes) + " complexes with d d = 0, " + std::to_string(homotopies) +
                   " homotopy identities, H_0 = R/R_{>0}R in every degree";
    return r;
}

CriterionResult k_degree_bound()
{
    CriterionResult r{5, "K(R) degree bound shape", false, "", 0};
    auto ctx = context("S3", "(1 2)");
    const std::size_t n_max = 8;
    ComponentRing ring(ctx, n_max);
    auto k = k_homology(ctx, module_R(ring), n_max);
    auto w = k.offset_by_window();
    std::string offs;
    bool finite = true;
    std::size_t last_change = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        offs += (i ? "," : "") + (w[i] ? std::to_string(*w[i]) : std::string("-"));
        finite = finite && w[i].has_value();
        if (i > 0 && w[i] != w[i - 1])
            last_change = i;
    }
    r.passed = finite && last_change < n_max;
    r.detail = "max(h_q - q) by window " + offs + "; last increase at window " + std::to_string(last_change) +
               (r.passed ? ", edge row adds no new maximum" : ", maximum still moving at the window edge");
    return r;
}

CriterionResult homological_stability(unsigned jobs)
{
    CriterionResult r{6, "homological stability p <= 1", false, "", 0};
    auto ctx = context("S3", "(1 2)");
    StabilityOptions opt;
    opt.homology.exact_up_to_n = 6;
    opt.homology.jobs = jobs;
    const std::size_t n_min = 2, n_max = 7;
    StabilizerOptions so;
    so.N_max = 12;
    so.D_max = 4;
    const std::size_t D = find_stabilizer_U(ctx, so).D;
    auto s = stability_report(ctx, D, n_min, n_max, opt);
    bool orbit_ok = true, chain_ok = true, cert_ok = true;
    std::string b0, b1;
    for (const auto& row : s.rows) {
        orbit_ok = orbit_ok && row.orbit_count_agrees;
        for (const auto* u : {&row.u0, &row.u1})
            if (*u)
                chain_ok = chain_ok && (*u)->chain_map;
        if (row.n <= 6)
            cert_ok = cert_ok && row.betti.cert0 == Certification::exact && row.betti.cert1 == Certification::exact;
        b0 += (b0.empty() ? "" : ",") + std::to_string(row.betti.b0);
        b1 += (b1.empty() ? "" : ",") + std::to_string(row.betti.b1);
    }
    const bool p0_ok = s.observed_n0[0] && *s.observed_n0[0] <= 5;
    // the last source degree whose target lies in the window
    const StabilityRow* top = nullptr;
    for (const auto& row : s.rows)
        if (row.u1)
            top = &row;
    const bool p1_ok = top && top->u1->bijective;
    r.passed = orbit_ok && chain_ok && cert_ok && p0_ok && p1_ok;
    r.detail = "U_" + std::to_string(D) + ", n=" + std::to_string(n_min) + ".." + std::to_string(n_max) +
               " b0=" + b0 + " b1=" + b1 + "; b0=orbit count " + (orbit_ok ? "yes" : "no") + "; chain maps " + (chain_ok ? "yes" : "no") +
               "; observed n0 (p=0) " + (s.observed_n0[0] ? std::to_string(*s.observed_n0[0]) : "none");
    if (top)
        r.detail += "; p=1 top map H_1(" + std::to_string(top->n) + ")->H_1(" + std::to_string(top->u1->n_target) +
                    ") rank " + std::to_string(top->u1->rank) + " (" + std::to_string(top->u1->b_source) + "->" +
                    std::to_string(top->u1->b_target) + ", " + (top->u1->bijective ? "bijective" : "not bijective") +
                    ", " + (top->u1->certification == Certification::exact ? "exact" : "modular-certified") + ")";
    r.detail += "; observed n0 (p=1) " + (s.observed_n0[1] ? std::to_string(*s.observed_n0[1]) : std::string("none"));
    // informational only: U_2 is not the stabilizer chosen above
    if (D == 1) {
        auto u2 = stabilization_u_map(ctx, 1, 3, 2, opt.homology);
        r.detail += "; for comparison U_2 gives H_1(3)->H_1(7) rank " + std::to_string(u2.rank) + " (" +
                    std::to_string(u2.b_source) + "->" + std::to_string(u2.b_target) + ")";
    }
    return r;
}

CriterionResult cohen_lenstra_moments(const AcceptanceOptions& opt)
{
    CriterionResult r{7, "Cohen-Lenstra moments", true, "", 0};
    SamplerOptions so;
    so.l = 3;
    so.N = 8;
    so.e_cap = 4;
    auto run = run_sampler(so, opt.seed, opt.cl_samples, opt.jobs);
    for (const char* name : {"Z/3", "Z/9", "Z/3 x Z/3"}) {
        auto m = moment_estimate(run, AbelianLGroup::parse(3, name));
        const double z = std::fabs(m.mean - 1) / m.standard_error;
        const bool ok = z <= 3;
        r.passed = r.passed && ok;
        r.detail += std::string(name) + " mean " + fmt(m.mean) + " (" + fmt(z) + " SE); ";
    }
    auto triv = empirical_mass(run, AbelianLGroup::make(3, {}));
    const double mu = euler_product(3, 60).value;
    const bool ok = std::fabs(triv.first - 0.5601) <= 0.01;
    r.passed = r.passed && ok;
    r.detail += "P[trivial] " + fmt(triv.first) + " vs prod(1-3^-i) " + fmt(mu) + ", 1 - prod " + fmt(1 - mu) +
                "; samples " + std::to_string(opt.cl_samples) + ", escalated " + std::to_string(run.escalated);
    return r;
}

CriterionResult symplectic_orbits()
{
    CriterionResult r{8, "symplectic orbit lemma", false, "", 0};
    auto res = symplectic_orbit_check(2, 3, 1, AbelianLGroup::parse(3, "Z/3"), 2);
    r.passed = res.nonempty && res.orbit_count == 1 && res.orbit_criterion_agrees &&
               res.sp_order == res.sp_order_expected;
    r.detail = "|Sp|=" + std::to_string(res.sp_order) + " surjections " + std::to_string(res.surjections) +
               ", |O|=" + std::to_string(res.fixed) + ", orbits " + std::to_string(res.orbit_count);
    return r;
}

CriterionResult function_field_census(const AcceptanceOptions& opt)
{
    CriterionResult r{9, "function-field census", true, "", 0};
    const double slack = 3.0 / std::sqrt(7.0);
    for (unsigned n : {3u, 5u}) {
        CensusOptions co;
        co.q = 7;
        co.n = n;
        co.l = 3;
        co.targets = {AbelianLGroup::parse(3, "Z/3")};
        co.seed = opt.seed;
        co.jobs = opt.jobs;
        auto rep = cl_census(co);
        const auto& a = rep.averages.at(0);
        const bool ok = rep.failures.empty() && rep.records.size() == rep.curve_count && a.deviation <= slack;
        r.passed = r.passed && ok;
        r.detail += "n=" + std::to_string(n) + ": " + std::to_string(rep.curve_count) + " curves, avg m_Z/3 " +
                    fmt(a.average) + " |avg-1|=" + fmt(a.deviation) + " (bound " + fmt(slack) + "), invariant failures " +
                    std::to_string(rep.failures.size()) + "; ";
        if (n == 3 && !rep.warnings.empty())
            r.detail += "note: " + rep.warnings.front() + "; ";
    }
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CriterionResult determinism(const AcceptanceOptions& opt)
{
    CriterionResult r{10, "determinism", true, "", 0};
    const std::vector<std::string> configs = {
        "kind = orbits\ngroup = S3\nclass = (1 2)\nn_max = 6\n",
        "kind = ring\ngroup = S3\nclass = (1 2)\nD_max = 4\nn_max = 12\n",
        "kind = kcomplex\ngroup = S3\nclass = (1 2)\nn_max = 6\n",
        "kind = homology\ngroup = S3\nclass = (1 2)\nn_min = 2\nn_max = 5\nquotient = true\n",
        "kind = cl-sample\nseed = 5\nsamples = 20000\ntargets = Z/3; Z/9; Z/3 x Z/3\n",
        "kind = sp-check\ng = 2\nl = 3\nA = Z/3\nq = 2\n",
        "kind = ff-census\nseed = 5\nq = 7\nn = 3\nl = 3\ntargets = 1; Z/3; Z/9; Z/3 x Z/3\n",
    };
    fs::path base = opt.work_dir.empty() ? fs::temp_directory_path() / "hurwitz_determinism" : opt.work_dir;
    const unsigned par = std::max(2u, opt.jobs);
    std::size_t files = 0;
    for (const auto& text : configs) {
        auto cfg = ExperimentConfig::parse(text);
        std::vector<std::vector<fs::path>> written;
        for (int pass = 0; pass < 3; ++pass) {
            // serial, serial again, parallel
            fs::path dir = base / (cfg.kind + "_" + std::to_string(pass));
            written.push_back(write_report(run_experiment(cfg, pass < 2 ? 1 : par), dir, true));
        }
        for (std::size_t i = 0; i < written[0].size(); ++i) {
            if (written[0][i].filename().string().find("_timing") != std::string::npos)
                continue;
            ++files;
            const std::string a = slurp(written[0][i]);
            for (int pass = 1; pass < 3; ++pass)
                if (slurp(written[pass][i]) != a) {
                    r.passed = false;
                    r.detail += written[pass][i].string() + " differs; ";
                }
        }
    }
    std::error_code ec;
    if (opt.work_dir.empty())
        fs::remove_all(base, ec);
    if (r.passed)
        r.detail = std::to_string(configs.size()) + " experiments, " + std::to_string(files) +
                   " report files byte-identical over two serial runs and one run with " + std::to_string(par) +
                   " jobs";
    return r;
}

const char* criterion_name(int id)
{
    static const char* names[] = {"",
                                  "squarefree census",
                                  "non-splitting gate",
                                  "component stabilization",
                                  "K-complex identities",
                                  "K(R) degree bound shape",
                                  "homological stability p <= 1",
                                  "Cohen-Lenstra moments",
                                  "symplectic orbit lemma",
                                  "function-field census",
                                  "determinism"};
    return id >= 1 && id <= kCriterionCount ? names[id] : "";
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = squarefree_census(); break;
        case 2: r = nonsplitting_gate(); break;
        case 3: r = component_stabilization(); break;
        case 4: r = k_complex_identities(); break;
        case 5: r = k_degree_bound(); break;
        case 6: r = homological_stability(opt.jobs); break;
        case 7: r = cohen_lenstra_moments(opt); break;
        case 8: r = symplectic_orbits(); break;
        case 9: r = function_field_census(opt); break;
        case 10: r = determinism(opt); break;
        default: throw ValidationError("no criterion " + std::to_string(id));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.name = criterion_name(id);
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
    std::vector<int> ids = opt.only;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i)
            ids.push_back(i);
    for (int id : ids)
        if (id < 1 || id > kCriterionCount)
            throw ValidationError("no criterion " + std::to_string(id));
    std::vector<CriterionResult> out;
    for (int id : ids) {
        out.push_back(run_criterion(id, opt));
        if (on_result)
            on_result(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r)
{
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " (" + r.name + ") [" +
           secs + "]: " + r.detail;
}

}  // namespace hurwitz

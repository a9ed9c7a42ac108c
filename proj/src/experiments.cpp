#include "hurwitz/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "hurwitz/census.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/homology.hpp"
#include "hurwitz/kcomplex.hpp"
#include "hurwitz/symplectic.hpp"

namespace hurwitz {

const std::vector<std::string>& experiment_keys(const std::string& kind)
{
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"orbits", {"group", "class", "n_max", "max_states"}},
        {"ring", {"group", "class", "D_max", "n_max", "max_states"}},
        {"kcomplex", {"group", "class", "n_max", "module", "max_states"}},
        {"homology", {"group", "class", "D", "n_min", "n_max", "quotient", "exact_up_to_n", "max_states"}},
        {"cl-sample", {"l", "N", "e_cap", "max_escalations", "samples", "targets", "mu_truncation"}},
        {"sp-check", {"g", "l", "e", "A", "q", "hom_budget", "group_cap"}},
        {"ff-census", {"q", "n", "l", "targets", "lagrange_samples"}},
    };
    auto it = keys.find(kind);
    if (it == keys.end())
        throw ValidationError("unknown experiment kind '" + kind + "'");
    return it->second;
}

std::vector<AbelianLGroup> parse_targets(std::uint32_t l, const std::string& text)
{
    std::vector<AbelianLGroup> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        auto e = item.find_last_not_of(" \t");
        out.push_back(AbelianLGroup::parse(l, item.substr(b, e - b + 1)));
    }
    if (out.empty())
        throw ValidationError("targets list is empty");
    return out;
}

namespace {

std::size_t positive(const ExperimentConfig& cfg, const std::string& key, long fallback, long min = 0)
{
    long v = cfg.get_int(key, fallback);
    if (v < min)
        throw ValidationError(key + " must be >= " + std::to_string(min));
    return static_cast<std::size_t>(v);
}

BraidContext context_of(const ExperimentConfig& cfg)
{
    if (!cfg.has("group"))
        throw ValidationError("missing key: group");
    Group G = build_group(load_group_spec(cfg.get("group", "")));
    return BraidContext(G, resolve_class(G, cfg.get("class", "")));
}

std::string cert_string(Certification c)
{
    return c == Certification::exact ? "exact" : "modular-certified";
}

std::string yes(bool b) { return b ? "true" : "false"; }

GradedModule module_of(const ComponentRing& ring, const std::string& spec)
{
    if (spec == "R")
        return module_R(ring);
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string head = spec.substr(0, colon);
        long v = 0;
        try {
            v = std::stol(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad module " + spec);
        }
        if (v < 0)
            throw ValidationError("bad module " + spec);
        if (head == "free")
            return module_free(ring, std::size_t(v));
        if (head == "truncated")
            return module_truncated(ring, std::size_t(v));
    }
    throw ValidationError("module must be R, free:k or truncated:t");
}

void check_module_spec(const std::string& spec)
{
    if (spec == "R")
        return;
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    if (colon == std::string::npos || (head != "free" && head != "truncated"))
        throw ValidationError("module must be R, free:k or truncated:t");
    try {
        std::size_t used = 0;
        long v = std::stol(spec.substr(colon + 1), &used);
        if (v < 0 || used != spec.size() - colon - 1)
            throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw ValidationError("bad module " + spec);
    }
}

// ---------------------------------------------------------------------------

Report run_orbits(const ExperimentConfig& cfg)
{
    BraidContext ctx = context_of(cfg);
    const std::size_t n_max = positive(cfg, "n_max", 6);
    const std::uint64_t budget = positive(cfg, "max_states", long(kDefaultStateBudget), 1);
    Report r;
    Table t{"orbits", "hurwitz-orbits", "exhaustive",
            {"n", "orbit", "size", "boundary", "monodromy_subgroup", "nielsen_class", "generating"}, {}};
    Table counts{"counts", "hurwitz-orbits", "exhaustive", {"n", "orbits", "generating_orbits", "tuples"}, {}};
    for (std::size_t n = 0; n <= n_max; ++n) {
        OrbitTable tab = enumerate_orbits(ctx, n, budget);
        std::uint64_t tuples = 0;
        for (std::size_t o = 0; o < tab.size(); ++o) {
            const auto& rec = tab.orbits[o];
            tuples += rec.size;
            t.add_row({std::to_string(n), std::to_string(o), std::to_string(rec.size),
                       ctx.group().cycle_string(rec.boundary), std::to_string(rec.monodromy_subgroup),
                       std::to_string(rec.nielsen_id), yes(rec.generating)});
        }
        counts.add_row({std::to_string(n), std::to_string(tab.size()), std::to_string(tab.generating_count()),
                        std::to_string(tuples)});
    }
    r.tables = {t, counts};
    r.summary["degree_blocks"] = n_max + 1;
    r.summary["total_orbits"] = t.rows.size();
    return r;
}

Report run_ring(const ExperimentConfig& cfg)
{
    BraidContext ctx = context_of(cfg);
    StabilizerOptions opt;
    opt.D_max = positive(cfg, "D_max", 6, 1);
    opt.N_max = positive(cfg, "n_max", 0);
    opt.max_states = positive(cfg, "max_states", long(kDefaultStateBudget), 1);
    StabilizerDescriptor d = find_stabilizer_U(ctx, opt);
    Report r;
    Table t{"quotient", "component-stabilization", d.certification == Certification::exact ? "exact" : "modular-certified",
            {"n", "orbit_count", "generating_count", "quotient_dim", "in_tail"}, {}};
    for (std::size_t n = 0; n <= d.N_max; ++n)
        t.add_row({std::to_string(n), std::to_string(d.orbit_counts[n]), std::to_string(d.generating_counts[n]),
                   std::to_string(d.quotient_dims[n]), yes(d.found && n >= d.n0)});
    r.tables = {t};
    r.summary["found"] = d.found;
    r.summary["D"] = d.D;
    r.summary["deg_U"] = d.deg_U;
    r.summary["n0"] = d.n0;
    r.summary["N_max"] = d.N_max;
    r.summary["component_counts_stable"] = d.component_counts_stable;
    return r;
}

Report run_kcomplex(const ExperimentConfig& cfg)
{
    BraidContext ctx = context_of(cfg);
    const std::size_t n_max = positive(cfg, "n_max", 6);
    const std::uint64_t budget = positive(cfg, "max_states", long(kDefaultStateBudget), 1);
    ComponentRing ring(ctx, n_max, budget);
    GradedModule M = module_of(ring, cfg.get("module", "R"));
    KHomologyReport k = k_homology(ctx, M, n_max);
    Report r;
    bool all_exact = true;
    Table dims{"homology", "k-complex", "", {"n", "q", "dim", "certification"}, {}};
    for (std::size_t n = 0; n <= n_max; ++n)
        for (std::size_t q = 0; q <= n; ++q) {
            dims.add_row({std::to_string(n), std::to_string(q), std::to_string(k.dims[n][q]),
                          cert_string(k.certification[n][q])});
            all_exact = all_exact && k.certification[n][q] == Certification::exact;
        }
    dims.certification = all_exact ? "exact" : "modular-certified";
    Table bound{"degree_bound", "k-complex-degree-bound", dims.certification, {"q", "h_q", "censored"}, {}};
    for (std::size_t q = 0; q < k.h.size(); ++q)
        bound.add_row({std::to_string(q), k.h[q] ? std::to_string(*k.h[q]) : "", yes(k.censored[q])});
    Table window{"offset_by_window", "k-complex-degree-bound", dims.certification, {"window", "max_h_minus_q"}, {}};
    auto w = k.offset_by_window();
    for (std::size_t i = 0; i < w.size(); ++i)
        window.add_row({std::to_string(i), w[i] ? std::to_string(*w[i]) : ""});
    r.tables = {dims, bound, window};
    auto off = k.slope_one_offset();
    r.summary["module"] = M.tag;
    r.summary["max_h_minus_q"] = off ? nlohmann::json(*off) : nlohmann::json();
    r.summary["any_censored"] = k.any_censored();
    return r;
}

Report run_homology(const ExperimentConfig& cfg, unsigned jobs)
{
    BraidContext ctx = context_of(cfg);
    const std::size_t D = positive(cfg, "D", 1, 1);
    const std::size_t n_min = positive(cfg, "n_min", 2, 2);
    const std::size_t n_max = positive(cfg, "n_max", 6, 2);
    if (n_max < n_min)
        throw ValidationError("n_max < n_min");
    StabilityOptions opt;
    opt.quotient_by_G = cfg.get_bool("quotient", false);
    opt.homology.exact_up_to_n = positive(cfg, "exact_up_to_n", 6);
    opt.homology.max_states = positive(cfg, "max_states", long(kDefaultStateBudget), 1);
    opt.homology.jobs = jobs;
    StabilityReport s = stability_report(ctx, D, n_min, n_max, opt);
    Report r;
    bool all_exact = true;
    Table t{"betti", "homological-stability", "",
            {"n", "b0", "b1", "cert_b0", "cert_b1", "orbit_count_agrees", "u0_rank", "u0_bijective", "u1_rank",
             "u1_bijective", "chain_map", "quotient_b0", "quotient_b1", "invariant_b0", "invariant_b1"},
            {}};
    for (const auto& row : s.rows) {
        all_exact = all_exact && row.betti.cert0 == Certification::exact && row.betti.cert1 == Certification::exact;
        auto opt_num = [](const auto& o) { return o ? std::to_string(*o) : std::string(); };
        bool chain = (!row.u0 || row.u0->chain_map) && (!row.u1 || row.u1->chain_map);
        t.add_row({std::to_string(row.n), std::to_string(row.betti.b0), std::to_string(row.betti.b1),
                   cert_string(row.betti.cert0), cert_string(row.betti.cert1), yes(row.orbit_count_agrees),
                   row.u0 ? std::to_string(row.u0->rank) : "", row.u0 ? yes(row.u0->bijective) : "",
                   row.u1 ? std::to_string(row.u1->rank) : "", row.u1 ? yes(row.u1->bijective) : "",
                   (row.u0 || row.u1) ? yes(chain) : "",
                   row.quotient ? std::to_string(row.quotient->b0) : "",
                   row.quotient ? std::to_string(row.quotient->b1) : "", opt_num(row.invariant_b0),
                   opt_num(row.invariant_b1)});
    }
    t.certification = all_exact ? "exact" : "modular-certified";
    r.tables = {t};
    r.summary["D"] = s.D;
    r.summary["deg_U"] = s.deg_U;
    for (int p = 0; p < 2; ++p)
        r.summary["observed_n0_p" + std::to_string(p)] =
            s.observed_n0[p] ? nlohmann::json(*s.observed_n0[p]) : nlohmann::json();
    return r;
}

Report run_cl_sample(const ExperimentConfig& cfg, unsigned jobs)
{
    SamplerOptions opt;
    opt.l = static_cast<std::uint32_t>(positive(cfg, "l", 3, 2));
    opt.N = static_cast<unsigned>(positive(cfg, "N", 8, 1));
    opt.e_cap = static_cast<unsigned>(positive(cfg, "e_cap", 4, 1));
    opt.max_escalations = static_cast<unsigned>(positive(cfg, "max_escalations", 8));
    const std::size_t samples = positive(cfg, "samples", 10000, 1);
    const unsigned trunc = static_cast<unsigned>(positive(cfg, "mu_truncation", 60, 1));
    if (!is_prime(opt.l))
        throw ValidationError("l must be prime");
    if (!cfg.has("targets"))
        throw ValidationError("missing key: targets");
    const auto targets = parse_targets(opt.l, cfg.get("targets", ""));

    SampleRun run = run_sampler(opt, cfg.seed, samples, jobs);
    Report r;
    Table mom{"moments", "cohen-lenstra-moments", "sampled", {"target", "mean", "standard_error", "z_score"}, {}};
    for (const auto& A : targets) {
        auto m = moment_estimate(run, A);
        double z = m.standard_error > 0 ? (m.mean - 1) / m.standard_error : 0;
        mom.add_row({A.to_string(), fmt(m.mean), fmt(m.standard_error), fmt(z)});
    }
    std::map<AbelianLGroup, std::size_t> counts;
    for (const auto& s : run.samples)
        ++counts[s.group];
    std::vector<std::pair<AbelianLGroup, std::size_t>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.exponent_sum() != b.first.exponent_sum())
            return a.first.exponent_sum() < b.first.exponent_sum();
        return a.first.partition > b.first.partition;
    });
    Table dist{"l_parts", "cohen-lenstra-measure", "sampled", {"group", "count", "empirical", "mu"}, {}};
    for (const auto& [G, c] : rows)
        dist.add_row({G.to_string(), std::to_string(c), fmt(double(c) / double(samples)),
                      fmt(mu_mass(G, trunc).value)});
    r.tables = {mom, dist};
    auto triv = empirical_mass(run, AbelianLGroup::make(opt.l, {}));
    const double prod = euler_product(opt.l, trunc).value;
    r.summary["samples"] = samples;
    r.summary["escalated"] = run.escalated;
    r.summary["p_trivial"] = triv.first;
    r.summary["p_trivial_standard_error"] = triv.second;
    r.summary["mu_trivial"] = prod;
    r.summary["one_minus_mu_trivial"] = 1 - prod;
    return r;
}

Report run_sp_check(const ExperimentConfig& cfg)
{
    const unsigned g = static_cast<unsigned>(positive(cfg, "g", 2, 1));
    const std::uint32_t l = static_cast<std::uint32_t>(positive(cfg, "l", 3, 2));
    const unsigned e = static_cast<unsigned>(positive(cfg, "e", 1, 1));
    const std::uint64_t q = positive(cfg, "q", 2, 1);
    if (!is_prime(l))
        throw ValidationError("l must be prime");
    const AbelianLGroup A = AbelianLGroup::parse(l, cfg.get("A", "Z/" + std::to_string(l)));
    auto res = symplectic_orbit_check(g, l, e, A, q, positive(cfg, "hom_budget", 2'000'000, 1),
                                      positive(cfg, "group_cap", 2'000'000, 1));
    Report r;
    Table t{"orbits", "symplectic-orbits", "exhaustive",
            {"g", "l", "e", "A", "q", "surjections", "fixed", "orbits", "transitive", "sp_order", "sp_order_expected",
             "orbit_criterion_agrees"},
            {}};
    t.add_row({std::to_string(g), std::to_string(l), std::to_string(e), A.to_string(), std::to_string(q),
               std::to_string(res.surjections), std::to_string(res.fixed), std::to_string(res.orbit_count),
               yes(res.transitive), std::to_string(res.sp_order), std::to_string(res.sp_order_expected),
               yes(res.orbit_criterion_agrees)});
    r.tables = {t};
    r.summary["nonempty"] = res.nonempty;
    r.summary["transitive"] = res.transitive;
    return r;
}

Report run_ff_census(const ExperimentConfig& cfg, unsigned jobs)
{
    CensusOptions opt;
    opt.q = static_cast<std::uint32_t>(positive(cfg, "q", 7, 2));
    opt.n = static_cast<unsigned>(positive(cfg, "n", 3, 1));
    opt.l = static_cast<std::uint32_t>(positive(cfg, "l", 3, 2));
    opt.lagrange_samples = static_cast<unsigned>(positive(cfg, "lagrange_samples", 20));
    opt.targets = parse_targets(opt.l, cfg.get("targets", "Z/" + std::to_string(opt.l)));
    opt.seed = cfg.seed;
    opt.jobs = jobs;
    CensusReport c = cl_census(opt);
    FiniteField F(opt.q);
    Report r;
    std::vector<std::string> cols = {"curve", "f", "h", "l_part"};
    for (const auto& A : opt.targets)
        cols.push_back("m_" + A.to_string());
    for (auto& col : cols)
        std::replace(col.begin(), col.end(), ' ', '_');
    Table curves{"curves", "function-field-moments", "exhaustive", cols, {}};
    for (const auto& rec : c.records) {
        std::string f;
        for (std::size_t i = 0; i < rec.f.size(); ++i)
            f += (i ? " " : "") + std::to_string(rec.f[i]);
        std::vector<std::string> row = {std::to_string(rec.id), f, std::to_string(rec.h),
                                        rec.l_part.is_trivial() ? "1" : rec.l_part.partition_string()};
        std::replace(row[3].begin(), row[3].end(), ',', ' ');
        for (auto m : rec.m_A)
            row.push_back(std::to_string(m));
        curves.add_row(std::move(row));
    }
    Table avg{"averages", "function-field-moments", "exhaustive", {"target", "sum_m_A", "average", "deviation"}, {}};
    nlohmann::json avg_json = nlohmann::json::object();
    for (const auto& a : c.averages) {
        avg.add_row({a.target.to_string(), a.total.get_str(), fmt(a.average), fmt(a.deviation)});
        avg_json[a.target.to_string()] = a.average;
    }
    Table dist{"l_parts", "function-field-moments", "exhaustive", {"group", "count", "empirical", "mu"}, {}};
    nlohmann::json mu_json = nlohmann::json::object();
    for (const auto& row : c.distribution) {
        dist.add_row({row.group.to_string(), std::to_string(row.count), fmt(row.empirical), fmt(row.mu)});
        mu_json[row.group.to_string()] = row.mu;
    }
    r.tables = {curves, avg, dist};
    r.summary["curve_count"] = c.curve_count;
    r.summary["c0"] = F.to_string(c.c0);
    r.summary["avg_mA"] = avg_json;
    r.summary["tv_distance_to_mu"] = c.tv_distance;
    r.summary["mu_masses"] = mu_json;
    r.summary["warnings"] = c.warnings;
    nlohmann::json quarantine = nlohmann::json::array();
    for (const auto& f : c.failures)
        quarantine.push_back({{"curve", f.id}, {"f", f.f}, {"error", f.message}});
    r.summary["quarantined"] = quarantine;
    if (c.failed())
        throw ComputationError("census failed: " + std::to_string(c.failures.size()) + " of " +
                               std::to_string(c.curve_count) + " curves errored" +
                               (c.failures.empty() ? "" : " (first: " + c.failures[0].message + ")"));
    return r;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg)
{
    if (cfg.kind.empty())
        throw ValidationError("config has no kind");
    const auto& keys = experiment_keys(cfg.kind);
    for (const auto& [k, v] : cfg.params)
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ValidationError("unknown key '" + k + "' for " + cfg.kind);
    // parse everything that can be parsed without computing
    for (const auto& k : keys) {
        if (!cfg.has(k) || k == "group" || k == "class" || k == "targets" || k == "A" || k == "module")
            continue;
        if (k == "quotient")
            cfg.get_bool(k, false);
        else if (cfg.get_int(k, 0) < 0)
            throw ValidationError(k + " must be non-negative");
    }
    if (cfg.has("group") || cfg.kind == "orbits" || cfg.kind == "ring" || cfg.kind == "kcomplex" ||
        cfg.kind == "homology")
        context_of(cfg);
    if (cfg.has("module"))
        check_module_spec(cfg.get("module", ""));
    const std::uint32_t l = static_cast<std::uint32_t>(cfg.get_int("l", 3));
    if (cfg.has("l") && (l < 2 || !is_prime(l)))
        throw ValidationError("l must be prime");
    if (cfg.kind == "cl-sample" && !cfg.has("targets"))
        throw ValidationError("cl-sample needs a non-empty targets list");
    if (cfg.has("targets"))
        parse_targets(l, cfg.get("targets", ""));
    if (cfg.has("A"))
        AbelianLGroup::parse(l, cfg.get("A", ""));
}

Report run_experiment(const ExperimentConfig& cfg, unsigned jobs)
{
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    if (cfg.kind == "orbits")
        r = run_orbits(cfg);
    else if (cfg.kind == "ring")
        r = run_ring(cfg);
    else if (cfg.kind == "kcomplex")
        r = run_kcomplex(cfg);
    else if (cfg.kind == "homology")
        r = run_homology(cfg, jobs);
    else if (cfg.kind == "cl-sample")
        r = run_cl_sample(cfg, jobs);
    else if (cfg.kind == "sp-check")
        r = run_sp_check(cfg);
    else
        r = run_ff_census(cfg, jobs);
    r.kind = cfg.kind;
    r.config = cfg.params;
    r.config["seed"] = std::to_string(cfg.seed);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace hurwitz

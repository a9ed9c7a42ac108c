// Runs every acceptance criterion; exit status 4 if any fails.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "hurwitz/acceptance.hpp"
#include "hurwitz/errors.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"acceptance suite"};
    hurwitz::AcceptanceOptions opt;
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for sampled criteria");
    app.add_option("--samples", opt.cl_samples, "random cokernels for the moment criterion");
    app.add_option("--only", opt.only, "criterion ids to run");
    CLI11_PARSE(app, argc, argv);
    try {
        bool ok = true;
        hurwitz::run_acceptance(opt, [&](const hurwitz::CriterionResult& r) {
            ok = ok && r.passed;
            std::cout << hurwitz::format_result(r) << std::endl;
        });
        return ok ? 0 : 4;
    } catch (const hurwitz::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

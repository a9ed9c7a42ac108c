// The acceptance suite: one check per criterion, each at its stated tolerance.
#ifndef HURWITZ_ACCEPTANCE_HPP
#define HURWITZ_ACCEPTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace hurwitz {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::size_t cl_samples = 100'000;
    /// criteria to run; empty means all
    std::vector<int> only;
    /// scratch space for the determinism reruns
    std::filesystem::path work_dir;
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion.  Exceptions inside a criterion become a failure
/// with the message as detail.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

/// Runs the selected criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace hurwitz

#endif

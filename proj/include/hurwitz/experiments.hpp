// One runner per experiment kind.  Every parameter is validated before any
// computation starts.
#ifndef HURWITZ_EXPERIMENTS_HPP
#define HURWITZ_EXPERIMENTS_HPP

#include <vector>

#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/report.hpp"

namespace hurwitz {

/// Accepted keys per kind; anything else is a ValidationError.
const std::vector<std::string>& experiment_keys(const std::string& kind);

/// Throws ValidationError for unknown kinds, keys or malformed values.
void validate_config(const ExperimentConfig& cfg);

/// Runs the experiment described by cfg.  Output depends only on cfg, never
/// on jobs.
Report run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1);

/// "1; Z/3; Z/9 x Z/3" (separated by ';').  Throws on an empty list.
std::vector<AbelianLGroup> parse_targets(std::uint32_t l, const std::string& text);

}  // namespace hurwitz

#endif

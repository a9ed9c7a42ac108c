"""Hurwitz spaces, homological stability and Cohen-Lenstra statistics."""
import json

from ._core import (
    BudgetError,
    ComputationError,
    ValidationError,
    aut_order,
    betti,
    class_number,
    mu_mass,
    orbit_counts,
    run_criterion,
    run_experiment_json,
    stabilizer_degree,
    sur_count,
    symplectic_orbits,
    version,
    zeta_numerator,
)


def run_experiment(config, jobs=1):
    """Run an experiment from config text (or a dict of keys) and return the report as a dict."""
    if isinstance(config, dict):
        config = "".join(f"{k} = {v}\n" for k, v in config.items())
    return json.loads(run_experiment_json(config, jobs))


__version__ = version.split()[-1]

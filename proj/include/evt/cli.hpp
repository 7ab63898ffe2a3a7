#pragma once

#include <string>
#include <vector>

namespace evt {

// Resolution order: command-line flags over config-file fields over these
// defaults.  The JSON config schema mirrors the field names 1:1.
struct ExperimentConfig {
    std::string model_spec = "pareto(alpha=1)";
    double beta = 2.0;
    long long n_min = 16;
    long long n_max = 16384;
    double grid_factor = 2.0;
    double quad_abs_tol = 1e-13;
    double quad_rel_tol = 1e-11;
    int sup_grid_points = 1024;
    std::string output_format = "csv"; // csv | json
    std::string output_path;           // empty writes to stdout
    int workers = 1;
    long long single_n = 0; // entropy command: restrict the sweep to one n
};

// n_min, round(n_min*factor), ... while <= n_max; strictly increasing.
std::vector<long long> geometric_grid(long long n_min, long long n_max, double factor);

// Full front end.  Exit codes: 0 ok, 2 usage or config error, 3 numerical
// failure, 4 domain mismatch.  Identical argv yields byte-identical files.
int run_cli(int argc, const char* const* argv);

} // namespace evt

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pricelab/harmonics.hpp"
#include "pricelab/quadrature.hpp"

namespace pricelab {

struct GridSpec {
    double start = 1.0;
    double stop = 6.0;
    int count = 2;
    bool log_spacing = false;

    std::vector<double> points() const;
};

struct FunctionSpec {
    HarmonicFunction::Kind kind = HarmonicFunction::Kind::Constant;
    double value = 1.0;               // Constant
    std::vector<PolyTerm> terms;      // Polynomial
    std::vector<PoissonAtom> atoms;   // Poisson
};

// Parsed batch-run configuration (JSON with a versioned "schema" field).
struct RunConfig {
    int schema = 1;
    std::string scenario; // mu | almgren | price-verify | energy-window | exponent | poisson-q | sweep
    int dim = 3;
    double k = -1.0;
    double k_prime = -1.0;
    FunctionSpec function;
    GridSpec grid;
    QuadratureSpec quadrature;
    std::string output;
    std::uint64_t seed = 12345;
    double r0 = 1.0;
    double slack = 1.5;
    double tail_rel_tol = 0.01;
    std::string raw_json; // original text; sweep templates are patched through it
};

// Parses and validates a config document; throws ConfigError with a path-annotated
// message on any schema violation.
RunConfig parse_config(const std::string& json_text);

HarmonicFunction build_function(const FunctionSpec& fn, const SpaceForm& space,
                                const QuadratureSpec& spec);

// In-memory artifacts of one run; which of the two is populated depends on the
// scenario (profiles emit CSV, verification scenarios emit JSON, price-verify both).
struct RunResult {
    std::string csv;
    std::string json;
};

// Executes one scenario with no file IO.  `threads` sizes the sweep worker pool;
// outputs are byte-identical regardless of the pool size.
RunResult execute(const RunConfig& config, int threads = 1);

// CLI exit codes: 0 success, 2 config/schema violation, 3 numerical violation
// (mu >= 1), 4 quadrature non-convergence, 1 anything unexpected.
int exit_code_for(const std::exception& err);

// Command line driver: --config <path> [--scenario <name>] [--out <path>]
// [--threads <n>] [--verbose]; PRICE_LAB_THREADS is honored when --threads is absent.
int run_main(int argc, const char* const* argv);

} // namespace pricelab

#pragma once

// Parameters of one command-line run. Echoed verbatim into every output file
// and readable back from it.

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace multiport {

struct RunConfig {
    std::string command;
    std::string device = "tritter";
    std::string input;         // occupations, e.g. "1,1,1"; empty means all ones
    std::string outcome = "all";
    std::string grid = "0:2pi:720";
    std::string probe = "fock";  // fock | coherent_ref | coherent_avg
    std::string alpha;         // coherent amplitudes, "re[+/-im i]" comma separated; empty means all ones
    std::string modes;         // 1-based phase modes, e.g. "2,3"
    std::size_t measurements = 10000;
    std::size_t trials = 200;
    std::size_t phases = 24;
    std::size_t grid_size = 4096;
    std::uint64_t seed = 0;
    std::string mode = "both";  // adaptive | nonadaptive | both
    bool check_closed_form = false;
    bool self_check = false;
    std::string goldens;
    std::string format = "json";
    std::string out;
    bool no_timing = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, command, device, input, outcome, grid, probe, alpha,
                                                modes, measurements, trials, phases, grid_size, seed, mode,
                                                check_closed_form, self_check, goldens, format, out, no_timing)

}  // namespace multiport

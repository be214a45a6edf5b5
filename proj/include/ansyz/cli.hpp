#pragma once

#include "ansyz/rat.hpp"
#include "ansyz/report.hpp"
#include "ansyz/toric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ansyz::cli {

struct Config {
    int n = 2;
    long wmax = 2;
    int pole_cutoff = 2;
    toric::Box box{Int(-4), Int(4), Int(-4), Int(4)};
    std::uint64_t seed = 42;
    std::optional<Rat> epsilon;
    int sign = +1;
    int paths_per_n = 50;
    std::string out_path;

    std::string echo(const std::string& command) const;
};

// Runs one subcommand; returns the process exit code (0 ok, 1 check failure,
// 2 input error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

report::Report run_verify(const Config& cfg, const std::string& suite);

} // namespace ansyz::cli

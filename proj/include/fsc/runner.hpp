#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsc/capacity.hpp"
#include "fsc/channel.hpp"
#include "fsc/indecomp.hpp"
#include "fsc/rat.hpp"

namespace fsc {

// Exit-code contract: 0 complete, 2 partial (stage budget reached), 1 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPartial = 2;

struct RunConfig {
    enum class Command { Bounds, Capacity, Indecomp, DemoGap, DemoDiscontinuity };
    enum class Format { Csv, Json };

    Command command = Command::Bounds;
    std::optional<std::string> channel_file;
    std::optional<std::string> family;  // p-qhat | p-qlambda | p-qk
    Rat eps{1, 4};
    Rat lambda{1, 2};
    long k = 1;

    int M_begin = 0, M_end = 2;  // inclusive stage range
    int n = 3;                   // indecomp / demo blocklength
    int n_max = 0;               // indecomp profile upper end; 0 = single n
    Rat threshold{1, 2};         // indecomp epsilon
    int target_bits = 1;         // capacity command
    int budget_M = 3;

    double tol = 1e-6;
    int precision_bits = kDefaultPrecision;
    int threads = 1;
    std::vector<long> k_list;  // demo-discontinuity

    std::string output_path;  // empty = stdout
    Format format = Format::Csv;
};

FscParams channel_from_config(const RunConfig& cfg);

/// One line "a,b,c" with RFC-4180 quoting where needed.
std::string csv_row(const std::vector<std::string>& fields);

int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_capacity(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_indecomp(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_demo_gap(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_demo_discontinuity(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and handles --output routing. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string bound_report_json(const BoundReport& rep);

}  // namespace fsc

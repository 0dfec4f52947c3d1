// Batch front-end for certified finite state channel capacity bounds.
//
//   fsc-capacity bounds   --family p-qhat --eps 1/4 --M 0..2
//   fsc-capacity capacity --family p-qlambda --eps 1/4 --lambda 1/2 --N 1 --budget-M 3
//   fsc-capacity indecomp --family p-qk --eps 1/4 --k 3 --n-max 3
//   fsc-capacity demo-gap --eps 1/4 --M 0..2
//   fsc-capacity demo-discontinuity --eps 1/4 --klist 1,3,9,99 --M 2 --n 3
//
// Channel entries are exact rationals ("a/b"); floats are accepted only for --tol.
// Exit codes: 0 complete, 2 partial (stage budget reached), 1 invalid input.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fsc/errors.hpp"
#include "fsc/runner.hpp"

namespace {

void parse_stage_range(const std::string& text, int& begin, int& end) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        begin = end = std::stoi(text);
        return;
    }
    begin = std::stoi(text.substr(0, dots));
    end = std::stoi(text.substr(dots + 2));
}

std::vector<long> parse_k_list(const std::string& text) {
    std::vector<long> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stol(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified lower/upper bounds on finite state channel capacity"};
    app.require_subcommand(1);

    fsc::RunConfig cfg;
    std::string channel_path, family, eps = "1/4", lambda = "1/2", threshold = "1/2";
    std::string stage_range, k_list_text, format = "csv";
    long k = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--channel", channel_path, "channel-spec JSON file");
        sub->add_option("--family", family, "p-qhat | p-qlambda | p-qk");
        sub->add_option("--eps", eps, "noise parameter, rational a/b");
        sub->add_option("--lambda", lambda, "mixing parameter for p-qlambda, rational a/b");
        sub->add_option("--k", k, "index for p-qk");
        sub->add_option("--tol", cfg.tol, "solver duality-gap target");
        sub->add_option("--precision", cfg.precision_bits, "working precision in bits");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--output", cfg.output_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv | json");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "sandwich bound series over stages M");
    add_common(bounds);
    bounds->add_option("--M", stage_range, "stage range, e.g. 0..3 or 2");

    CLI::App* capacity = app.add_subcommand("capacity", "anytime capacity bracket");
    add_common(capacity);
    capacity->add_option("--N", cfg.target_bits, "target precision bits");
    capacity->add_option("--budget-M", cfg.budget_M, "stage budget");

    CLI::App* indecomp = app.add_subcommand("indecomp", "initial-state influence diagnostics");
    add_common(indecomp);
    indecomp->add_option("--n", cfg.n, "blocklength to test");
    indecomp->add_option("--n-max", cfg.n_max, "profile n = 1..n_max instead of a single n");
    indecomp->add_option("--threshold", threshold, "epsilon for the pass/fail verdict, rational");

    CLI::App* demo_gap = app.add_subcommand("demo-gap", "persistent-gap experiment (p, qhat)");
    add_common(demo_gap);
    demo_gap->add_option("--M", stage_range, "stage range");

    CLI::App* demo_disc =
        app.add_subcommand("demo-discontinuity", "distance vs bounds over the qk family");
    add_common(demo_disc);
    demo_disc->add_option("--klist", k_list_text, "comma-separated k values");
    demo_disc->add_option("--M", stage_range, "stage for the reported bounds");
    demo_disc->add_option("--n", cfg.n, "blocklength for the indecomposability column");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!channel_path.empty()) cfg.channel_file = channel_path;
        if (!family.empty()) cfg.family = family;
        cfg.eps = fsc::Rat::from_string(eps);
        cfg.lambda = fsc::Rat::from_string(lambda);
        cfg.threshold = fsc::Rat::from_string(threshold);
        cfg.k = k;
        if (!stage_range.empty()) parse_stage_range(stage_range, cfg.M_begin, cfg.M_end);
        if (!k_list_text.empty()) cfg.k_list = parse_k_list(k_list_text);
        if (format == "json")
            cfg.format = fsc::RunConfig::Format::Json;
        else if (format != "csv")
            throw fsc::ParamRange("format must be csv or json");

        if (bounds->parsed()) cfg.command = fsc::RunConfig::Command::Bounds;
        if (capacity->parsed()) cfg.command = fsc::RunConfig::Command::Capacity;
        if (indecomp->parsed()) cfg.command = fsc::RunConfig::Command::Indecomp;
        if (demo_gap->parsed()) cfg.command = fsc::RunConfig::Command::DemoGap;
        if (demo_disc->parsed()) cfg.command = fsc::RunConfig::Command::DemoDiscontinuity;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return fsc::kExitInputError;
    }

    return fsc::run(cfg, std::cout, std::cerr);
}

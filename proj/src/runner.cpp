#include "fsc/runner.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "fsc/errors.hpp"
#include "json.hpp"

namespace fsc {

namespace {
constexpr int kDecimalDigits = 12;

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions opt;
    opt.tol = cfg.tol;
    opt.precision = cfg.precision_bits;
    opt.threads = cfg.threads;
    return opt;
}

nlohmann::json interval_json(const RealInterval& iv) {
    return {{"lo", iv.lo_rat().to_slash_string()},
            {"hi", iv.hi_rat().to_slash_string()},
            {"lo_dec", iv.lo_decimal(kDecimalDigits)},
            {"hi_dec", iv.hi_decimal(kDecimalDigits)}};
}

nlohmann::json certificate_json(const BoundCertificate& cert) {
    nlohmann::json j;
    j["kind"] = cert.kind == BoundKind::Lower ? "lower" : "upper";
    j["value"] = interval_json(cert.value);
    j["raw_value"] = interval_json(cert.raw_value);
    j["n_star"] = cert.n_star;
    j["s0_star"] = cert.s0_star;
    j["stalled"] = cert.stalled;
    nlohmann::json w = nlohmann::json::array();
    for (const Rat& r : cert.witness.weights) w.push_back(r.to_slash_string());
    j["witness"] = std::move(w);
    if (!cert.dual_witness.empty()) {
        nlohmann::json d = nlohmann::json::array();
        for (const Rat& r : cert.dual_witness) d.push_back(r.to_slash_string());
        j["dual_witness"] = std::move(d);
    }
    if (cert.diag_cap) j["diag_cap"] = interval_json(*cert.diag_cap);
    return j;
}
}  // namespace

std::string bound_report_json(const BoundReport& rep) {
    nlohmann::json j;
    j["M"] = rep.M;
    j["lower"] = certificate_json(rep.lower);
    j["upper"] = certificate_json(rep.upper);
    j["gap"] = interval_json(rep.gap);
    return j.dump(2);
}

FscParams channel_from_config(const RunConfig& cfg) {
    if (cfg.channel_file && cfg.family)
        throw ParamRange("give either a channel file or a family, not both");
    if (cfg.channel_file) return load_channel_file(*cfg.channel_file);
    if (!cfg.family) throw ParamRange("no channel source: need --channel or --family");
    const std::string& fam = *cfg.family;
    if (fam == "p-qhat") return fsc_p_qhat(cfg.eps);
    if (fam == "p-qlambda") return fsc_p_qlambda(cfg.eps, cfg.lambda);
    if (fam == "p-qk") return fsc_p_qk(cfg.eps, cfg.k);
    throw ParamRange("unknown family \"" + fam + "\" (expected p-qhat, p-qlambda, p-qk)");
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        bool quote = f.find_first_of(",\"\n") != std::string::npos;
        if (i) out.push_back(',');
        if (quote) {
            out.push_back('"');
            for (char c : f) {
                if (c == '"') out.push_back('"');
                out.push_back(c);
            }
            out.push_back('"');
        } else {
            out += f;
        }
    }
    out.push_back('\n');
    return out;
}

int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.M_begin < 0 || cfg.M_end < cfg.M_begin) {
        err << "invalid stage range\n";
        return kExitInputError;
    }
    CapacityEngine eng(channel_from_config(cfg), solver_options(cfg));
    std::vector<BoundReport> reports;
    reports.reserve(static_cast<size_t>(cfg.M_end - cfg.M_begin + 1));
    for (int M = cfg.M_begin; M <= cfg.M_end; ++M) reports.push_back(eng.sandwich(M));

    if (cfg.format == RunConfig::Format::Json) {
        nlohmann::json j;
        j["channel"] = nlohmann::json::parse(channel_to_json(eng.channel()));
        nlohmann::json arr = nlohmann::json::array();
        for (const BoundReport& rep : reports) arr.push_back(nlohmann::json::parse(bound_report_json(rep)));
        j["reports"] = std::move(arr);
        out << j.dump(2) << "\n";
        return kExitOk;
    }

    out << csv_row({"M", "lower_lo", "lower_hi", "upper_lo", "upper_hi", "gap_hi",
                    "n_star_lower", "n_star_upper"});
    for (const BoundReport& rep : reports) {
        out << csv_row({std::to_string(rep.M), rep.lower.value.lo_decimal(kDecimalDigits),
                        rep.lower.value.hi_decimal(kDecimalDigits),
                        rep.upper.value.lo_decimal(kDecimalDigits),
                        rep.upper.value.hi_decimal(kDecimalDigits),
                        rep.gap.hi_decimal(kDecimalDigits), std::to_string(rep.lower.n_star),
                        std::to_string(rep.upper.n_star)});
    }
    return kExitOk;
}

int run_capacity(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    CapacityEngine eng(channel_from_config(cfg), solver_options(cfg));
    CapacityOutcome res = eng.capacity_to_precision(cfg.target_bits, cfg.budget_M);

    nlohmann::json j;
    j["status"] = res.status == CapacityOutcome::Status::Converged ? "converged" : "partial";
    j["interval"] = interval_json(res.interval);
    j["stages"] = res.stages_used;
    j["target_bits"] = cfg.target_bits;
    j["last_report"] = nlohmann::json::parse(bound_report_json(res.last));
    j["channel"] = nlohmann::json::parse(channel_to_json(eng.channel()));
    out << j.dump(2) << "\n";
    return res.status == CapacityOutcome::Status::Converged ? kExitOk : kExitPartial;
}

int run_indecomp(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    FscParams fsc = channel_from_config(cfg);
    IndecompOptions opt;
    opt.threads = cfg.threads;
    const int n_lo = cfg.n_max > 0 ? 1 : cfg.n;
    const int n_hi = cfg.n_max > 0 ? cfg.n_max : cfg.n;

    out << csv_row({"n", "worst_gap", "pass", "arg_s_n", "arg_s0", "arg_s0_alt", "arg_x_seq"});
    for (int n = n_lo; n <= n_hi; ++n) {
        IndecompReport rep = indecomposable_test(fsc, n, cfg.threshold, opt);
        std::string xs;
        for (int x : rep.arg_x_seq) xs += std::to_string(x);
        out << csv_row({std::to_string(rep.n), rep.worst_gap.to_string(),
                        rep.pass ? "1" : "0", std::to_string(rep.arg_s_n),
                        std::to_string(rep.arg_s0), std::to_string(rep.arg_s0_alt), xs});
    }
    return kExitOk;
}

int run_demo_gap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunConfig local = cfg;
    local.family = "p-qhat";
    local.channel_file.reset();
    if (local.M_begin < 0 || local.M_end < local.M_begin) {
        err << "invalid stage range\n";
        return kExitInputError;
    }
    CapacityEngine eng(channel_from_config(local), solver_options(local));
    RealInterval h2 = binary_entropy(local.eps, local.precision_bits);

    out << csv_row({"M", "lower_lo", "lower_hi", "upper_lo", "upper_hi", "gap_lo", "gap_hi",
                    "h2_eps"});
    for (int M = local.M_begin; M <= local.M_end; ++M) {
        BoundReport rep = eng.sandwich(M);
        out << csv_row({std::to_string(M), rep.lower.value.lo_decimal(kDecimalDigits),
                        rep.lower.value.hi_decimal(kDecimalDigits),
                        rep.upper.value.lo_decimal(kDecimalDigits),
                        rep.upper.value.hi_decimal(kDecimalDigits),
                        rep.gap.lo_decimal(kDecimalDigits), rep.gap.hi_decimal(kDecimalDigits),
                        h2.lo_decimal(kDecimalDigits)});
    }
    return kExitOk;
}

int run_demo_discontinuity(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    if (cfg.k_list.empty()) throw ParamRange("demo-discontinuity needs a nonempty k list");
    FscParams ref = fsc_p_qhat(cfg.eps);
    const int M = cfg.M_end;

    out << csv_row({"k", "distance_to_qhat", "indecomp_gap_at_n", "lower_lo", "upper_hi"});
    for (long k : cfg.k_list) {
        FscParams chan = fsc_p_qk(cfg.eps, k);
        Rat dist = distance(ref, chan, 0);
        IndecompOptions iopt;
        iopt.threads = cfg.threads;
        Rat gap = indecomposable_test(chan, cfg.n, Rat(0), iopt).worst_gap;
        CapacityEngine eng(chan, solver_options(cfg));
        BoundReport rep = eng.sandwich(M);
        out << csv_row({std::to_string(k), dist.to_string(), gap.to_string(),
                        rep.lower.value.lo_decimal(kDecimalDigits),
                        rep.upper.value.hi_decimal(kDecimalDigits)});
    }
    return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    int code = kExitInputError;
    try {
        switch (cfg.command) {
            case RunConfig::Command::Bounds: code = run_bounds(cfg, buffer, err); break;
            case RunConfig::Command::Capacity: code = run_capacity(cfg, buffer, err); break;
            case RunConfig::Command::Indecomp: code = run_indecomp(cfg, buffer, err); break;
            case RunConfig::Command::DemoGap: code = run_demo_gap(cfg, buffer, err); break;
            case RunConfig::Command::DemoDiscontinuity:
                code = run_demo_discontinuity(cfg, buffer, err);
                break;
        }
    } catch (const Nonconvergence& e) {
        err << e.what() << "\n";
        return kExitPartial;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitInputError;
    }

    if (cfg.output_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!f) {
            err << "cannot write output file: " << cfg.output_path << "\n";
            return kExitInputError;
        }
        f << buffer.str();
    }
    return code;
}

}  // namespace fsc

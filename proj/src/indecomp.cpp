#include "fsc/indecomp.hpp"

#include "fsc/errors.hpp"
#include "fsc/parallel.hpp"

namespace fsc {

IndecompReport indecomposable_test(const FscParams& fsc, int n, const Rat& eps,
                                   const IndecompOptions& opt) {
    if (n < 1) throw ParamRange("blocklength must be >= 1");
    if (eps < Rat(0) || eps >= Rat(1)) throw ParamRange("eps must satisfy 0 <= eps < 1");

    const bool input_free = q_input_independent(fsc);
    long x_count = 1;
    if (!input_free) {
        for (int t = 0; t < n; ++t) {
            x_count *= fsc.nx;
            if (x_count > opt.enumeration_cap)
                throw BudgetError("|X|^n = " + std::to_string(x_count) + " blocks at n = " +
                                  std::to_string(n));
        }
    }

    IndecompReport rep;
    rep.n = n;
    rep.eps = eps;
    rep.arg_x_seq = decode_seq(0, fsc.nx, n);

    std::vector<IndecompReport> per_block(static_cast<size_t>(x_count));
    parallel_for(opt.threads, x_count, [&](long xi) {
        std::vector<int> x_seq = decode_seq(xi, fsc.nx, n);
        std::vector<std::vector<Rat>> kernels(static_cast<size_t>(fsc.ns));
        for (int s0 = 0; s0 < fsc.ns; ++s0) kernels[static_cast<size_t>(s0)] = state_kernel(fsc, x_seq, s0);
        IndecompReport local;
        local.arg_x_seq = x_seq;
        for (int s0 = 0; s0 < fsc.ns; ++s0) {
            for (int s0b = s0 + 1; s0b < fsc.ns; ++s0b) {
                for (int sn = 0; sn < fsc.ns; ++sn) {
                    Rat gap = (kernels[static_cast<size_t>(s0)][static_cast<size_t>(sn)] -
                               kernels[static_cast<size_t>(s0b)][static_cast<size_t>(sn)])
                                  .abs();
                    if (gap > local.worst_gap) {
                        local.worst_gap = gap;
                        local.arg_s_n = sn;
                        local.arg_s0 = s0;
                        local.arg_s0_alt = s0b;
                    }
                }
            }
        }
        per_block[static_cast<size_t>(xi)] = std::move(local);
    });

    // deterministic max reduction in block order
    for (const IndecompReport& local : per_block) {
        if (local.worst_gap > rep.worst_gap) {
            rep.worst_gap = local.worst_gap;
            rep.arg_s_n = local.arg_s_n;
            rep.arg_s0 = local.arg_s0;
            rep.arg_s0_alt = local.arg_s0_alt;
            rep.arg_x_seq = local.arg_x_seq;
        }
    }
    rep.pass = rep.worst_gap <= eps;
    return rep;
}

std::vector<std::pair<int, Rat>> geometric_gap_profile(const FscParams& fsc, int n_max,
                                                       const IndecompOptions& opt) {
    if (n_max < 1) throw ParamRange("n_max must be >= 1");
    std::vector<std::pair<int, Rat>> out;
    out.reserve(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n)
        out.emplace_back(n, indecomposable_test(fsc, n, Rat(0), opt).worst_gap);
    return out;
}

}  // namespace fsc

#pragma once

#include <vector>

#include "fsc/channel.hpp"
#include "fsc/rat.hpp"

namespace fsc {

/// Evidence at a fixed blocklength for the vanishing-initial-state test:
/// worst_gap = max over (s_n, x^n, s0, s0') of |q^n(s_n|x^n,s0) - q^n(s_n|x^n,s0')|.
/// A pass at one n is evidence, not proof, of the asymptotic property.
struct IndecompReport {
    int n = 0;
    Rat worst_gap;
    Rat eps;
    bool pass = false;
    // argmax witness
    int arg_s_n = 0;
    std::vector<int> arg_x_seq;
    int arg_s0 = 0;
    int arg_s0_alt = 0;
};

struct IndecompOptions {
    long enumeration_cap = 1l << 16;  // max |X|^n when q depends on the input
    int threads = 1;
};

/// Exhaustive exact evaluation over all input blocks and state pairs. When q
/// is input-independent a single representative block is used.
IndecompReport indecomposable_test(const FscParams& fsc, int n, const Rat& eps,
                                   const IndecompOptions& opt = {});

/// worst_gap per n for n = 1..n_max.
std::vector<std::pair<int, Rat>> geometric_gap_profile(const FscParams& fsc, int n_max,
                                                       const IndecompOptions& opt = {});

}  // namespace fsc

#pragma once

#include <vector>

#include "fsc/interval.hpp"
#include "fsc/rat.hpp"

namespace fsc {

/// Probability vector over the block-input alphabet X^n.
struct InputDistribution {
    int n = 1;                 // block length
    std::vector<Rat> weights;  // nonnegative, sums to 1 exactly
};

/// Enclosure of -sum p_i log2(p_i); zero entries contribute 0.
/// Width <= 2^-(precision-4) * #terms.
RealInterval entropy(const std::vector<Rat>& dist, int precision = kDefaultPrecision);

/// Enclosure of H_2(x) = entropy((x, 1-x)); requires 0 <= x <= 1.
RealInterval binary_entropy(const Rat& x, int precision = kDefaultPrecision);

/// Exact output distribution q_y = sum_x px(x) w(x,y).
std::vector<Rat> output_distribution(const InputDistribution& px, const RatMatrix& w);

/// Enclosure of I(X;Y) = H(Y) - H(Y|X) with the output distribution computed
/// exactly in rationals before any entropy is taken.
RealInterval mutual_information(const InputDistribution& px, const RatMatrix& w,
                                int precision = kDefaultPrecision);

/// Enclosure of D(w_row || q) = sum_y w_y log2(w_y / q_y) in bits.
RealInterval kl_divergence(const std::vector<Rat>& w_row, const std::vector<Rat>& q,
                           int precision = kDefaultPrecision);

void check_distribution(const std::vector<Rat>& dist);
void check_channel_rows(const RatMatrix& w);

}  // namespace fsc

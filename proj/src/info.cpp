#include "fsc/info.hpp"

#include "fsc/errors.hpp"

namespace fsc {

void check_distribution(const std::vector<Rat>& dist) {
    Rat sum;
    for (const Rat& v : dist) {
        if (v.is_negative()) throw NotADistribution("negative entry " + v.to_string());
        sum += v;
    }
    if (sum != Rat(1)) throw NotADistribution("entries sum to " + sum.to_string());
}

void check_channel_rows(const RatMatrix& w) {
    for (int r = 0; r < w.rows; ++r) {
        Rat sum;
        for (int c = 0; c < w.cols; ++c) {
            if (w.at(r, c).is_negative())
                throw NotADistribution("negative entry in channel row " + std::to_string(r));
            sum += w.at(r, c);
        }
        if (sum != Rat(1))
            throw NotADistribution("channel row " + std::to_string(r) + " sums to " +
                                   sum.to_string());
    }
}

RealInterval entropy(const std::vector<Rat>& dist, int precision) {
    check_distribution(dist);
    RealInterval acc = RealInterval::point_from_int(0, precision);
    for (const Rat& v : dist) acc = iv_add(acc, neg_xlog2x(v, precision));
    return acc;
}

RealInterval binary_entropy(const Rat& x, int precision) {
    if (x < Rat(0) || x > Rat(1)) throw ParamRange("binary_entropy requires 0 <= x <= 1");
    return entropy({x, Rat(1) - x}, precision);
}

std::vector<Rat> output_distribution(const InputDistribution& px, const RatMatrix& w) {
    if (static_cast<int>(px.weights.size()) != w.rows)
        throw ShapeMismatch("input distribution has " + std::to_string(px.weights.size()) +
                            " entries, channel has " + std::to_string(w.rows) + " rows");
    std::vector<Rat> out(static_cast<size_t>(w.cols));
    for (int r = 0; r < w.rows; ++r) {
        const Rat& mass = px.weights[static_cast<size_t>(r)];
        if (mass.is_zero()) continue;
        for (int c = 0; c < w.cols; ++c) {
            const Rat& cell = w.at(r, c);
            if (!cell.is_zero()) out[static_cast<size_t>(c)] += mass * cell;
        }
    }
    return out;
}

RealInterval mutual_information(const InputDistribution& px, const RatMatrix& w, int precision) {
    check_distribution(px.weights);
    check_channel_rows(w);
    std::vector<Rat> q = output_distribution(px, w);

    RealInterval h_out = entropy(q, precision);
    RealInterval h_cond = RealInterval::point_from_int(0, precision);
    for (int r = 0; r < w.rows; ++r) {
        const Rat& mass = px.weights[static_cast<size_t>(r)];
        if (mass.is_zero()) continue;
        RealInterval h_row = RealInterval::point_from_int(0, precision);
        for (int c = 0; c < w.cols; ++c) h_row = iv_add(h_row, neg_xlog2x(w.at(r, c), precision));
        h_cond = iv_add(h_cond, iv_mul_rat(h_row, mass));
    }
    return iv_sub(h_out, h_cond);
}

RealInterval kl_divergence(const std::vector<Rat>& w_row, const std::vector<Rat>& q,
                           int precision) {
    if (w_row.size() != q.size()) throw ShapeMismatch("kl_divergence requires equal lengths");
    RealInterval acc = RealInterval::point_from_int(0, precision);
    for (size_t i = 0; i < w_row.size(); ++i)
        acc = iv_add(acc, xlog2_ratio(w_row[i], q[i], precision));
    return acc;
}

}  // namespace fsc

#include "fsc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fsc/errors.hpp"
#include "fsc/parallel.hpp"

namespace fsc {

namespace {

struct FloatMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;
    double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

FloatMatrix to_float(const RatMatrix& w) {
    FloatMatrix f;
    f.rows = w.rows;
    f.cols = w.cols;
    f.a.resize(w.cells.size());
    for (size_t i = 0; i < w.cells.size(); ++i) f.a[i] = w.cells[i].to_double();
    return f;
}

// primal value and per-row divergences D_x = D(w_x || px*w), in bits
void ba_scores(const FloatMatrix& w, const std::vector<double>& px, std::vector<double>& q,
               std::vector<double>& d, double& primal) {
    q.assign(static_cast<size_t>(w.cols), 0.0);
    for (int r = 0; r < w.rows; ++r) {
        if (px[static_cast<size_t>(r)] == 0.0) continue;
        for (int c = 0; c < w.cols; ++c) q[static_cast<size_t>(c)] += px[static_cast<size_t>(r)] * w.at(r, c);
    }
    d.assign(static_cast<size_t>(w.rows), 0.0);
    primal = 0.0;
    for (int r = 0; r < w.rows; ++r) {
        double acc = 0.0;
        for (int c = 0; c < w.cols; ++c) {
            double wv = w.at(r, c);
            if (wv > 0.0) acc += wv * std::log2(wv / q[static_cast<size_t>(c)]);
        }
        d[static_cast<size_t>(r)] = acc;
        primal += px[static_cast<size_t>(r)] * acc;
    }
}

struct BaRun {
    std::vector<double> px;
    long iters = 0;
    bool reached = false;
};

BaRun ba_run(const FloatMatrix& w, double goal, long max_iters, std::vector<double> px,
             std::vector<double>* trace) {
    BaRun out;
    std::vector<double> q, d;
    for (long it = 0; it < max_iters; ++it) {
        double primal = 0.0;
        ba_scores(w, px, q, d, primal);
        if (trace && trace->size() < 65536) trace->push_back(primal);
        double dual = *std::max_element(d.begin(), d.end());
        ++out.iters;
        if (dual - primal <= goal) {
            out.reached = true;
            break;
        }
        double z = 0.0;
        for (int r = 0; r < w.rows; ++r) {
            double& p = px[static_cast<size_t>(r)];
            p *= std::exp2(d[static_cast<size_t>(r)] - primal);
            z += p;
        }
        for (double& p : px) p /= z;
    }
    out.px = std::move(px);
    return out;
}

/// Snap a float distribution to an exact rational one. Rows outside the mask
/// get exact zero mass; masked rows stay strictly positive.
std::vector<Rat> rationalize_masked(const std::vector<double>& px, int bits,
                                    const std::vector<bool>& mask) {
    const double grid = std::ldexp(1.0, bits);
    std::vector<long long> votes(px.size(), 0);
    long long sum = 0;
    for (size_t i = 0; i < px.size(); ++i) {
        if (!mask[i]) continue;
        double v = std::floor(std::max(px[i], 0.0) * grid);
        votes[i] = std::max(1ll, static_cast<long long>(v));
        sum += votes[i];
    }
    std::vector<Rat> out(px.size());
    for (size_t i = 0; i < px.size(); ++i)
        if (votes[i] != 0) out[i] = Rat(votes[i], sum);
    return out;
}

std::vector<Rat> rationalize_positive(const std::vector<double>& px, int bits) {
    return rationalize_masked(px, bits, std::vector<bool>(px.size(), true));
}

bool q_out_positive(const std::vector<Rat>& q, int c) {
    return q[static_cast<size_t>(c)].num().sign() > 0;
}

/// D(w_row || q) decomposed as -H(w_row) + sum_y w_y * (-log2 q_y); both parts
/// reuse the shared log cache across rows.
RealInterval dual_row_bound(const RatMatrix& w, int row, const std::vector<Rat>& q_out,
                            const std::vector<RealInterval>& neg_log_q, int precision,
                            std::map<std::vector<Rat>, RealInterval>& row_entropy_memo) {
    std::vector<Rat> sorted_row(w.cells.begin() + static_cast<long>(row) * w.cols,
                                w.cells.begin() + static_cast<long>(row + 1) * w.cols);
    std::sort(sorted_row.begin(), sorted_row.end());
    auto it = row_entropy_memo.find(sorted_row);
    if (it == row_entropy_memo.end()) {
        RealInterval h = RealInterval::point_from_int(0, precision);
        for (const Rat& v : sorted_row) h = iv_add(h, neg_xlog2x(v, precision));
        it = row_entropy_memo.emplace(std::move(sorted_row), h).first;
    }
    RealInterval acc = iv_neg(it->second);
    for (int c = 0; c < w.cols; ++c) {
        const Rat& wv = w.at(row, c);
        if (wv.is_zero()) continue;
        if (q_out[static_cast<size_t>(c)].num().sign() <= 0)
            throw Error("dual witness lacks support where the channel has mass");
        acc = iv_add(acc, iv_mul_rat(neg_log_q[static_cast<size_t>(c)], wv));
    }
    return acc;
}

DmcResult finalize_certificates(const RatMatrix& w, const std::vector<double>& px_float,
                                int witness_bits, int precision, const std::vector<bool>& mask) {
    DmcResult res;
    res.px.n = 1;
    res.px.weights = rationalize_masked(px_float, witness_bits, mask);
    res.q_out = output_distribution(res.px, w);
    res.lower = mutual_information(res.px, w, precision);

    // The dual witness must cover every output symbol any row can reach;
    // with zero-mass rows in the witness input that can fail, so mix in a
    // vanishing uniform component (any output distribution yields a valid
    // upper bound).
    std::vector<Rat> q_dual = res.q_out;
    bool uncovered = false;
    for (int c = 0; c < w.cols && !uncovered; ++c) {
        if (q_out_positive(q_dual, c)) continue;
        for (int r = 0; r < w.rows; ++r)
            if (!w.at(r, c).is_zero()) {
                uncovered = true;
                break;
            }
    }
    if (uncovered) {
        const Rat delta(BigInt(1), BigInt::pow2(40));
        const Rat keep = Rat(1) - delta;
        const Rat fill = delta / Rat(w.cols);
        for (Rat& v : q_dual) v = v * keep + fill;
    }
    res.q_out = q_dual;

    std::vector<RealInterval> neg_log_q(static_cast<size_t>(w.cols),
                                        RealInterval::point_from_int(0, precision));
    for (int c = 0; c < w.cols; ++c)
        if (q_out_positive(q_dual, c)) neg_log_q[static_cast<size_t>(c)] =
            iv_neg(log2_rat(q_dual[static_cast<size_t>(c)], precision));

    std::map<std::vector<Rat>, RealInterval> row_memo;
    bool first = true;
    RealInterval best;
    for (int r = 0; r < w.rows; ++r) {
        RealInterval d = dual_row_bound(w, r, q_dual, neg_log_q, precision, row_memo);
        best = first ? d : iv_max(best, d);
        first = false;
    }
    res.upper = best;
    return res;
}

DmcResult finalize_certificates(const RatMatrix& w, const std::vector<double>& px_float,
                                int witness_bits, int precision) {
    return finalize_certificates(w, px_float, witness_bits, precision,
                                 std::vector<bool>(px_float.size(), true));
}

int ceil_log2_int(long v) {
    int b = 0;
    while ((1l << b) < v) ++b;
    return b;
}

}  // namespace

DmcResult dmc_capacity(const RatMatrix& w, double tol, const SolverOptions& opt) {
    check_channel_rows(w);
    if (tol <= 0) throw ParamRange("tol must be positive");
    if (w.rows < 1 || w.cols < 1) throw ShapeMismatch("empty channel matrix");

    FloatMatrix wf = to_float(w);
    std::vector<double> px(static_cast<size_t>(w.rows), 1.0 / w.rows);
    std::vector<double> trace;
    const Rat tol_rat = Rat::from_double(tol);
    int witness_bits = opt.witness_bits + ceil_log2_int(w.rows);

    std::unique_ptr<DmcResult> best;
    auto consider = [&](DmcResult cand, long iters) -> bool {
        cand.iterations = iters;
        Rat gap = cand.upper.hi_rat() - cand.lower.lo_rat();
        if (!best || gap < best->upper.hi_rat() - best->lower.lo_rat()) {
            cand.primal_trace = trace;
            best = std::make_unique<DmcResult>(std::move(cand));
        }
        return gap <= tol_rat;
    };

    // When the optimal input sits on a face of the simplex, the plain
    // iteration closes the duality gap only like O(1/t). Dropping the rows it
    // is visibly abandoning and re-solving on the restricted support converges
    // fast; the exact finish stays valid for any witness, so a wrong guess
    // only costs the attempt.
    auto support_pass = [&](double goal, long iters_used) -> bool {
        double peak = *std::max_element(px.begin(), px.end());
        for (double kappa : {1e-2, 1e-4, 1e-6}) {
            std::vector<bool> mask(px.size());
            std::vector<int> active;
            for (size_t i = 0; i < px.size(); ++i) {
                mask[i] = px[i] >= kappa * peak;
                if (mask[i]) active.push_back(static_cast<int>(i));
            }
            if (active.size() == px.size()) continue;
            FloatMatrix sub;
            sub.rows = static_cast<int>(active.size());
            sub.cols = wf.cols;
            sub.a.resize(static_cast<size_t>(sub.rows) * sub.cols);
            for (int r = 0; r < sub.rows; ++r)
                for (int c = 0; c < sub.cols; ++c)
                    sub.a[static_cast<size_t>(r) * sub.cols + c] = wf.at(active[static_cast<size_t>(r)], c);
            BaRun run = ba_run(sub, goal, 30000, std::vector<double>(sub.rows, 1.0 / sub.rows),
                               nullptr);
            std::vector<double> full(px.size(), 0.0);
            for (int r = 0; r < sub.rows; ++r) full[static_cast<size_t>(active[static_cast<size_t>(r)])] = run.px[static_cast<size_t>(r)];
            DmcResult cand = finalize_certificates(w, full, witness_bits, opt.precision, mask);
            if (consider(std::move(cand), iters_used + run.iters)) return true;
        }
        return false;
    };

    double goal = tol * 0.5;
    long iters_total = 0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        long budget_left = opt.ba_max_iters - iters_total;
        if (budget_left <= 0) break;
        // keep early rounds short so the support heuristics get a chance
        long chunk = std::min(budget_left, attempt == 0 ? 30000l : budget_left);
        BaRun run = ba_run(wf, goal, chunk, std::move(px), &trace);
        iters_total += run.iters;
        px = std::move(run.px);

        if (consider(finalize_certificates(w, px, witness_bits, opt.precision), iters_total))
            return *best;
        if (support_pass(goal, iters_total)) return *best;
        if (!run.reached && iters_total >= opt.ba_max_iters) break;
        goal *= 0.5;
        // finer witness grid on retries; capped so votes fit in 64 bits
        witness_bits = std::min(witness_bits + 2, 52);
    }
    if (!best)
        best = std::make_unique<DmcResult>(
            finalize_certificates(w, px, witness_bits, opt.precision));
    throw Nonconvergence("duality gap above tol after " + std::to_string(iters_total) +
                             " iterations",
                         *best);
}

// ---- engine -------------------------------------------------------------------

CapacityEngine::CapacityEngine(FscParams fsc, SolverOptions opt)
    : fsc_(validate(std::move(fsc))), opt_(opt), log_ns_(log2_rat(Rat(fsc_.ns), opt.precision)) {}

const RatMatrix& CapacityEngine::block_channel(int n, int s0) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = channels_.find({n, s0});
        if (it != channels_.end()) return *it->second;
    }
    auto built = std::make_shared<RatMatrix>(block_channel_matrix(fsc_, n, s0));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = channels_.emplace(std::make_pair(n, s0), std::move(built));
    return *it->second;
}

const DmcResult& CapacityEngine::state_solve(int n, int s0) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = solves_.find({n, s0});
        if (it != solves_.end()) return *it->second;
    }
    const RatMatrix& w = block_channel(n, s0);
    SolverOptions o = opt_;
    auto solved = std::make_shared<DmcResult>(dmc_capacity(w, opt_.tol, o));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = solves_.emplace(std::make_pair(n, s0), std::move(solved));
    return *it->second;
}

namespace {
// projection onto the probability simplex (Euclidean)
void project_simplex(std::vector<double>& v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    for (size_t j = 0; j < u.size(); ++j) {
        css += u[j];
        double t = (1.0 - css) / static_cast<double>(j + 1);
        if (u[j] + t > 0) theta = t;
    }
    for (double& x : v) x = std::max(0.0, x + theta);
    double z = 0.0;
    for (double x : v) z += x;
    for (double& x : v) x /= z;
}
}  // namespace

BoundCertificate CapacityEngine::upper_bound_fn(int n) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = upper_raw_.find(n);
        if (it != upper_raw_.end()) return it->second;
    }
    BoundCertificate cert;
    cert.kind = BoundKind::Upper;
    cert.n_star = n;
    RealInterval value;
    for (int s0 = 0; s0 < fsc_.ns; ++s0) {
        const DmcResult& r = state_solve(n, s0);
        RealInterval enclosure{r.lower.lo, r.upper.hi, r.lower.scale, r.lower.precision};
        if (s0 == 0) {
            value = enclosure;
            cert.s0_star = 0;
        } else {
            if (enclosure.hi > value.hi) cert.s0_star = s0;
            value = iv_max(value, enclosure);
        }
    }
    const DmcResult& star = state_solve(n, cert.s0_star);
    cert.witness = star.px;
    cert.witness.n = n;
    cert.dual_witness = star.q_out;
    cert.value = iv_div_int(value, n);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = upper_raw_.emplace(n, std::move(cert));
    return it->second;
}

BoundCertificate CapacityEngine::lower_bound_fn(int n) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = lower_raw_.find(n);
        if (it != lower_raw_.end()) return it->second;
    }
    std::vector<const RatMatrix*> ws;
    for (int s0 = 0; s0 < fsc_.ns; ++s0) ws.push_back(&block_channel(n, s0));
    std::vector<FloatMatrix> wf;
    wf.reserve(ws.size());
    for (const RatMatrix* w : ws) wf.push_back(to_float(*w));

    const int dim = wf[0].rows;
    std::vector<double> p(static_cast<size_t>(dim), 1.0 / dim);
    std::vector<double> best_p = p;
    double best_f = -1.0;
    long best_iter = 0;
    std::vector<double> q, d, grad;
    for (int t = 1; t <= opt_.ascent_iters; ++t) {
        // evaluate min over s0 and keep the active supergradient
        double fmin = 0.0;
        for (int s0 = 0; s0 < fsc_.ns; ++s0) {
            double primal = 0.0;
            ba_scores(wf[static_cast<size_t>(s0)], p, q, d, primal);
            if (s0 == 0 || primal < fmin) {
                fmin = primal;
                grad = d;
            }
        }
        if (fmin > best_f + 1e-15) {
            best_f = fmin;
            best_p = p;
            best_iter = t;
        }
        double step = opt_.ascent_step / std::sqrt(static_cast<double>(t));
        for (int i = 0; i < dim; ++i) p[static_cast<size_t>(i)] += step * grad[static_cast<size_t>(i)];
        project_simplex(p);
    }

    BoundCertificate cert;
    cert.kind = BoundKind::Lower;
    cert.n_star = n;
    cert.witness.n = n;
    cert.witness.weights = rationalize_positive(best_p, opt_.witness_bits + ceil_log2_int(dim));

    RealInterval value;
    for (int s0 = 0; s0 < fsc_.ns; ++s0) {
        RealInterval mi = mutual_information(cert.witness, *ws[static_cast<size_t>(s0)], opt_.precision);
        if (s0 == 0) {
            value = mi;
            cert.s0_star = 0;
        } else {
            if (mi.lo < value.lo) cert.s0_star = s0;
            value = iv_min(value, mi);
        }
    }
    cert.value = iv_div_int(value, n);

    RealInterval cap;
    for (int s0 = 0; s0 < fsc_.ns; ++s0) {
        const DmcResult& r = state_solve(n, s0);
        cap = s0 == 0 ? r.upper : iv_min(cap, r.upper);
    }
    cert.diag_cap = iv_div_int(cap, n);
    cert.stalled = best_iter <= opt_.ascent_iters / 2 &&
                   cap.lo_double() / n - best_f / n > 1e-3;

    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = lower_raw_.emplace(n, std::move(cert));
    return it->second;
}

void CapacityEngine::ensure_stage(int n_max) {
    long cells = 1;
    for (int t = 0; t < n_max; ++t) {
        cells *= static_cast<long>(fsc_.nx) * fsc_.ny;
        if (cells > (1l << 24))
            throw BudgetError("block channel at n=" + std::to_string(n_max) +
                              " exceeds the enumeration cap");
    }

    std::vector<std::pair<int, int>> need_ch;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int n = 1; n <= n_max; ++n)
            for (int s0 = 0; s0 < fsc_.ns; ++s0)
                if (!channels_.count({n, s0})) need_ch.emplace_back(n, s0);
    }
    std::vector<std::shared_ptr<RatMatrix>> built(need_ch.size());
    parallel_for(opt_.threads, static_cast<long>(need_ch.size()), [&](long i) {
        built[static_cast<size_t>(i)] = std::make_shared<RatMatrix>(
            block_channel_matrix(fsc_, need_ch[static_cast<size_t>(i)].first,
                                 need_ch[static_cast<size_t>(i)].second));
    });
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (size_t i = 0; i < need_ch.size(); ++i)
            channels_.emplace(need_ch[i], std::move(built[i]));
    }

    std::vector<std::pair<int, int>> need_solve;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int n = 1; n <= n_max; ++n)
            for (int s0 = 0; s0 < fsc_.ns; ++s0)
                if (!solves_.count({n, s0})) need_solve.emplace_back(n, s0);
    }
    std::vector<std::shared_ptr<DmcResult>> solved(need_solve.size());
    parallel_for(opt_.threads, static_cast<long>(need_solve.size()), [&](long i) {
        const RatMatrix& w = *channels_.at(need_solve[static_cast<size_t>(i)]);
        solved[static_cast<size_t>(i)] = std::make_shared<DmcResult>(dmc_capacity(w, opt_.tol, opt_));
    });
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (size_t i = 0; i < need_solve.size(); ++i)
            solves_.emplace(need_solve[i], std::move(solved[i]));
    }

    std::vector<int> need_lower;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int n = 1; n <= n_max; ++n)
            if (!lower_raw_.count(n)) need_lower.push_back(n);
    }
    parallel_for(opt_.threads, static_cast<long>(need_lower.size()),
                 [&](long i) { lower_bound_fn(need_lower[static_cast<size_t>(i)]); });
    for (int n = 1; n <= n_max; ++n) upper_bound_fn(n);
}

RealInterval CapacityEngine::corrected_upper(int n) {
    return iv_add(upper_bound_fn(n).value, iv_div_int(log_ns_, n));
}

RealInterval CapacityEngine::corrected_lower(int n) {
    return iv_sub(lower_bound_fn(n).value, iv_div_int(log_ns_, n));
}

BoundReport CapacityEngine::sandwich(int M) {
    if (M < 0 || M > 16) throw ParamRange("stage index must be in [0, 16]");
    const int n_max = 1 << M;
    ensure_stage(n_max);

    int n_lo = 1, n_up = 1;
    RealInterval best_lo = corrected_lower(1);
    RealInterval best_up = corrected_upper(1);
    for (int n = 2; n <= n_max; ++n) {
        RealInterval cl = corrected_lower(n);
        RealInterval cu = corrected_upper(n);
        if (cl.lo > best_lo.lo) {
            best_lo = cl;
            n_lo = n;
        }
        if (cu.hi < best_up.hi) {
            best_up = cu;
            n_up = n;
        }
    }

    BoundReport rep;
    rep.M = M;

    rep.lower = lower_bound_fn(n_lo);
    rep.lower.n_star = n_lo;
    rep.lower.raw_value = best_lo;
    rep.lower.value = iv_clamp_below(best_lo, Rat(0));

    rep.upper = upper_bound_fn(n_up);
    rep.upper.n_star = n_up;
    rep.upper.raw_value = best_up;
    RealInterval cap = log2_rat(Rat(std::min(fsc_.nx, fsc_.ny)), opt_.precision);
    RealInterval clamped = best_up;
    if (clamped.hi > cap.hi) clamped.hi = cap.hi;
    if (clamped.lo > clamped.hi) clamped.lo = clamped.hi;
    rep.upper.value = clamped;

    if (rep.lower.value.lo > rep.upper.value.hi)
        throw Error("internal: sandwich bounds crossed");
    rep.gap = iv_sub(rep.upper.value, rep.lower.value);
    return rep;
}

CapacityOutcome CapacityEngine::capacity_to_precision(int target_bits, int budget_M) {
    if (target_bits < 0 || budget_M < 0)
        throw ParamRange("target bits and stage budget must be nonnegative");
    if (working_scale(opt_.precision) <= target_bits + 3)
        throw ParamRange("working precision too low for the requested bits");

    std::map<int, BoundReport> reports;
    auto stage = [&](int M) -> const BoundReport& {
        auto it = reports.find(M);
        if (it == reports.end()) it = reports.emplace(M, sandwich(M)).first;
        return it->second;
    };
    LimitOutcome lim =
        effective_limit([&](int M) { return stage(M).lower.value; },
                        [&](int M) { return stage(M).upper.value; }, target_bits, budget_M);
    CapacityOutcome out;
    out.status =
        lim.converged ? CapacityOutcome::Status::Converged : CapacityOutcome::Status::Partial;
    out.interval = lim.interval;
    out.stages_used = lim.stages_used;
    out.last = reports.at(lim.stages_used);
    return out;
}

// ---- free wrappers -----------------------------------------------------------

BoundCertificate upper_bound_fn(const FscParams& fsc, int n, double tol) {
    SolverOptions opt;
    opt.tol = tol;
    CapacityEngine eng(fsc, opt);
    return eng.upper_bound_fn(n);
}

BoundCertificate lower_bound_fn(const FscParams& fsc, int n, double tol) {
    SolverOptions opt;
    opt.tol = tol;
    CapacityEngine eng(fsc, opt);
    return eng.lower_bound_fn(n);
}

BoundReport sandwich(const FscParams& fsc, int M, double tol) {
    SolverOptions opt;
    opt.tol = tol;
    CapacityEngine eng(fsc, opt);
    return eng.sandwich(M);
}

CapacityOutcome capacity_to_precision(const FscParams& fsc, int target_bits, int budget_M,
                                      double tol) {
    SolverOptions opt;
    opt.tol = tol;
    CapacityEngine eng(fsc, opt);
    return eng.capacity_to_precision(target_bits, budget_M);
}

LimitOutcome effective_limit(const std::function<RealInterval(int)>& lo_seq,
                             const std::function<RealInterval(int)>& hi_seq, int target_bits,
                             int budget) {
    if (target_bits < 0 || budget < 0)
        throw ParamRange("target bits and budget must be nonnegative");
    LimitOutcome out;
    bool have_prev = false;
    RealInterval prev_lo, prev_hi;
    for (int M = 0; M <= budget; ++M) {
        RealInterval lo = lo_seq(M);
        RealInterval hi = hi_seq(M);
        if (lo.scale != hi.scale) throw Error("sequence grids differ");
        if (lo.scale <= target_bits + 2)
            throw ParamRange("sequence precision too low for the requested bits");
        if (have_prev) {
            if (cmp_lo(lo, prev_lo) < 0)
                throw MonotonicityViolation("lower sequence regressed at stage " +
                                            std::to_string(M));
            if (cmp_hi(hi, prev_hi) > 0)
                throw MonotonicityViolation("upper sequence regressed at stage " +
                                            std::to_string(M));
        }
        out.stages_used = M;
        out.last_lo = lo;
        out.last_hi = hi;
        out.interval = RealInterval{lo.lo, hi.hi, lo.scale, lo.precision};
        BigInt gap = hi.hi - lo.lo;
        BigInt thresh = BigInt::pow2(static_cast<unsigned>(lo.scale - (target_bits + 2)));
        if (gap < thresh) {
            out.converged = true;
            return out;
        }
        prev_lo = lo;
        prev_hi = hi;
        have_prev = true;
    }
    out.converged = false;
    return out;
}

}  // namespace fsc

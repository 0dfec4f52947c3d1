#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fsc/channel.hpp"
#include "fsc/errors.hpp"
#include "fsc/info.hpp"
#include "fsc/interval.hpp"

namespace fsc {

struct SolverOptions {
    double tol = 1e-6;          // Blahut-Arimoto duality-gap target
    int precision = kDefaultPrecision;
    int threads = 1;
    long ba_max_iters = 2000000;
    int ascent_iters = 500;     // projected supergradient steps for the maximin
    double ascent_step = 0.5;   // step scale; schedule is step/sqrt(t)
    int witness_bits = 30;      // witness distributions live on the 2^-bits grid
};

/// Certified result of the single-channel capacity solve.
struct DmcResult {
    RealInterval lower;       // exact mutual information at the witness input
    RealInterval upper;       // max_x D(w_x || q_out), a true upper bound
    InputDistribution px;     // witness input distribution
    std::vector<Rat> q_out;   // dual output-distribution witness (full support
                              // wherever any row has mass)
    long iterations = 0;
    std::vector<double> primal_trace;  // float primal per iteration (capped length)
};

/// Thrown when the iteration budget is exhausted before the duality gap
/// reaches tol; carries the best certificates found so far.
struct Nonconvergence : Error {
    std::shared_ptr<DmcResult> best;
    Nonconvergence(const std::string& msg, DmcResult r)
        : Error("nonconvergence: " + msg), best(std::make_shared<DmcResult>(std::move(r))) {}
};

/// Blahut-Arimoto with a certified finish: the returned lower endpoint is an
/// exact-evaluation enclosure at the witness, the upper endpoint a dual bound.
DmcResult dmc_capacity(const RatMatrix& w, double tol, const SolverOptions& opt = {});

enum class BoundKind { Lower, Upper };

struct BoundCertificate {
    BoundKind kind = BoundKind::Lower;
    RealInterval value;            // enclosure of the certified quantity
    RealInterval raw_value;        // pre-clamp value (sandwich certificates)
    int n_star = 1;                // blocklength achieving the extremum
    InputDistribution witness;     // input witness (lower bounds)
    std::vector<Rat> dual_witness; // output distribution witness (upper bounds)
    int s0_star = 0;               // state achieving the inner min/max
    bool stalled = false;
    std::optional<RealInterval> diag_cap;  // min_s0 per-state solver upper / n
};

struct BoundReport {
    int M = 0;
    BoundCertificate lower;  // C_lower(M): corrected, clamped
    BoundCertificate upper;  // C_upper(M): corrected, clamped
    RealInterval gap;        // upper - lower, outward
};

struct CapacityOutcome {
    enum class Status { Converged, Partial } status = Status::Partial;
    RealInterval interval;  // [lower.lo, upper.hi] of the final stage
    BoundReport last;
    int stages_used = 0;
};

/// Evaluates the per-blocklength bound functions and the monotone sandwich.
/// Results for each n are memoized so stage M+1 reuses stages 1..2^M.
class CapacityEngine {
  public:
    CapacityEngine(FscParams fsc, SolverOptions opt = {});

    const FscParams& channel() const { return fsc_; }
    const SolverOptions& options() const { return opt_; }

    /// Block channel p^n(.|.,s0) as an exact matrix (cached).
    const RatMatrix& block_channel(int n, int s0);

    /// Per-state capacity solve on the block channel (cached).
    const DmcResult& state_solve(int n, int s0);

    /// Raw bound-function certificates (no log|S|/n correction).
    BoundCertificate upper_bound_fn(int n);
    BoundCertificate lower_bound_fn(int n);

    /// Sandwich stage M: min/max over n = 1..2^M with corrections applied,
    /// clamped to [0, log2 min(|X|,|Y|)].
    BoundReport sandwich(int M);

    /// Anytime precision loop. Stops at the first stage whose certified gap is
    /// below 2^-(target_bits+2); the returned interval then has width below
    /// 2^-target_bits. Budget exhaustion yields a Partial outcome.
    CapacityOutcome capacity_to_precision(int target_bits, int budget_M);

  private:
    FscParams fsc_;
    SolverOptions opt_;
    RealInterval log_ns_;  // log2 |S| enclosure at the working precision

    std::mutex mutex_;
    std::map<std::pair<int, int>, std::shared_ptr<RatMatrix>> channels_;
    std::map<std::pair<int, int>, std::shared_ptr<DmcResult>> solves_;
    std::map<int, BoundCertificate> lower_raw_, upper_raw_;

    void ensure_stage(int n_max);
    RealInterval corrected_upper(int n);
    RealInterval corrected_lower(int n);
};

// Convenience wrappers matching the engine, for one-off evaluations.
BoundCertificate upper_bound_fn(const FscParams& fsc, int n, double tol);
BoundCertificate lower_bound_fn(const FscParams& fsc, int n, double tol);
BoundReport sandwich(const FscParams& fsc, int M, double tol);
CapacityOutcome capacity_to_precision(const FscParams& fsc, int target_bits, int budget_M,
                                      double tol);

struct LimitOutcome {
    bool converged = false;
    RealInterval interval;  // [lo_seq(M*).lo, hi_seq(M*).hi]
    int stages_used = 0;
    RealInterval last_lo, last_hi;
};

/// Generic monotone-pair limit extraction: lo_seq nondecreasing, hi_seq
/// nonincreasing, both enclosing the same limit. Terminates at the first
/// stage with hi.hi - lo.lo < 2^-(target_bits+2). Throws
/// MonotonicityViolation if a supplied sequence regresses.
LimitOutcome effective_limit(const std::function<RealInterval(int)>& lo_seq,
                             const std::function<RealInterval(int)>& hi_seq, int target_bits,
                             int budget);

}  // namespace fsc

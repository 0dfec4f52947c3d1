#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsc/rat.hpp"

namespace fsc {

/// A finite state channel {p, q}: p(y|x,s_prev) emits the output, q(s|x,s_prev)
/// moves the state; output and next state are conditionally independent given
/// (x, s_prev). All entries are exact rationals and every row sums to 1 exactly.
struct FscParams {
    int nx = 0;  // |X|
    int ny = 0;  // |Y|
    int ns = 0;  // |S|
    std::vector<Rat> p;  // layout: ((s_prev * nx + x) * ny + y)
    std::vector<Rat> q;  // layout: ((s_prev * nx + x) * ns + s_next)

    const Rat& p_at(int y, int x, int s_prev) const {
        return p[(static_cast<size_t>(s_prev) * nx + x) * ny + y];
    }
    Rat& p_at(int y, int x, int s_prev) {
        return p[(static_cast<size_t>(s_prev) * nx + x) * ny + y];
    }
    const Rat& q_at(int s_next, int x, int s_prev) const {
        return q[(static_cast<size_t>(s_prev) * nx + x) * ns + s_next];
    }
    Rat& q_at(int s_next, int x, int s_prev) {
        return q[(static_cast<size_t>(s_prev) * nx + x) * ns + s_next];
    }

    /// Canonical serialization; equal channels produce equal strings.
    std::string digest() const;
};

/// Checks shapes and both stochasticity invariants exactly; returns the
/// validated params. Throws ShapeError, NegativeEntryError, RowSumError.
FscParams validate(FscParams raw);

/// Joint law p^n(y^n, s_n | x^n, s_0), stored densely over (y-block, final state).
struct JointBlockLaw {
    int n = 0;
    int ny = 0;
    int ns = 0;
    std::vector<int> x_seq;
    int s0 = 0;
    std::vector<Rat> table;  // index: y_idx * ns + s_n

    const Rat& at(long y_idx, int s_n) const { return table[static_cast<size_t>(y_idx) * ns + s_n]; }
    Rat total() const;
};

/// Inductive multi-letter law; exact rationals throughout.
JointBlockLaw joint_block_law(const FscParams& fsc, const std::vector<int>& x_seq, int s0);

/// p^n(y^n | x^n, s_0): final-state marginal of the joint law. Size ny^n.
std::vector<Rat> output_block_law(const FscParams& fsc, const std::vector<int>& x_seq, int s0);

/// q^n(s_n | x^n, s_0) via the state-only recursion (exactly equal to the
/// y-marginal of the joint law under the factored law). Size ns.
std::vector<Rat> state_kernel(const FscParams& fsc, const std::vector<int>& x_seq, int s0);

/// Same quantity computed by marginalizing the joint law over y^n; used to
/// cross-check state_kernel.
std::vector<Rat> state_kernel_via_marginal(const FscParams& fsc, const std::vector<int>& x_seq,
                                           int s0);

/// max_x sum_y |p1 - p2| + max_x sum_s |q1 - q2| over the s0 slices, exact.
Rat distance(const FscParams& a, const FscParams& b, int s0);

/// True if q(.|x,s_prev) does not depend on x (exact slice equality).
bool q_input_independent(const FscParams& fsc);

// ---- named channel families ------------------------------------------------
// Binary construction in the top-left 2x2x2 block; larger alphabets are padded
// with zero rows completed by unit mass on symbol 0.

/// p(y|x,0) = identity (noiseless), p(y|x,1) = BSC(eps). Requires 0 < eps < 1/2.
std::vector<Rat> family_p(const Rat& eps, int nx = 2, int ny = 2, int ns = 2);
/// Absorbing state chain: state 0 stays 0, state 1 stays 1, independent of x.
std::vector<Rat> family_qhat(int nx = 2, int ns = 2);
/// From state 0: (1-lambda, lambda); from state 1: (lambda, 1-lambda).
/// Requires 0 <= lambda <= 1/2. family_qlambda(0) == family_qhat().
std::vector<Rat> family_qlambda(const Rat& lambda, int nx = 2, int ns = 2);
/// family_qlambda with lambda = 1/(k+1); requires k >= 1.
std::vector<Rat> family_qk(long k, int nx = 2, int ns = 2);

FscParams make_fsc(int nx, int ny, int ns, std::vector<Rat> p, std::vector<Rat> q);
FscParams fsc_p_qhat(const Rat& eps);
FscParams fsc_p_qlambda(const Rat& eps, const Rat& lambda);
FscParams fsc_p_qk(const Rat& eps, long k);

// ---- block channel matrix ----------------------------------------------------

/// W(x_idx, y_idx) = p^n(y^n|x^n,s0) over all nx^n input blocks. Input and
/// output blocks are encoded with the first symbol as most significant digit.
RatMatrix block_channel_matrix(const FscParams& fsc, int n, int s0);

long encode_seq(const std::vector<int>& seq, int base);
std::vector<int> decode_seq(long idx, int base, int n);

// ---- channel-spec file (JSON) -----------------------------------------------
// { "nx": int, "ny": int, "ns": int,
//   "p": [s_prev][x] -> array over y of "a/b" strings,
//   "q": [s_prev][x] -> array over s_next of "a/b" strings }

FscParams parse_channel_json(const std::string& text);
FscParams load_channel_file(const std::string& path);
std::string channel_to_json(const FscParams& fsc);

}  // namespace fsc

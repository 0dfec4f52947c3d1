#include "fsc/interval.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "fsc/errors.hpp"

namespace fsc {

namespace {

// ---- atanh series ---------------------------------------------------------
//
// log(x) = 2*atanh(t) with t = (x-1)/(x+1); for x in [1,2), t in [0,1/3].
// log2(x) = atanh(t) / atanh(1/3) since log 2 = 2*atanh(1/3).
// All mantissas are at scale 2^-F; every step rounds in the stated direction,
// so the two endpoint passes bracket the exact value.

int series_terms(int scale) { return scale / 3 + 4; }

BigInt atanh_lo(const BigInt& t_lo, int scale) {
    if (t_lo.sign() <= 0) return BigInt(0);
    const int J = series_terms(scale);
    BigInt tsq = (t_lo * t_lo) >> static_cast<unsigned>(scale);
    BigInt term = t_lo;
    BigInt acc = t_lo;
    for (int j = 1; j < J; ++j) {
        term = (term * tsq) >> static_cast<unsigned>(scale);
        if (term.is_zero()) break;
        acc += term / BigInt(2 * j + 1);
    }
    return acc;
}

BigInt atanh_hi(const BigInt& t_hi, int scale) {
    if (t_hi.sign() <= 0) return BigInt(0);
    const int J = series_terms(scale);
    // t must stay below 0.35 so the geometric tail bound 8/7 >= 1/(1-t^2) holds
    if (BigInt(20) * t_hi >= BigInt(7) * BigInt::pow2(static_cast<unsigned>(scale)))
        throw Error("atanh argument out of reduced range");
    BigInt tsq = cdiv(t_hi * t_hi, BigInt::pow2(static_cast<unsigned>(scale)));
    BigInt term = t_hi;
    BigInt acc = t_hi;
    for (int j = 1; j < J; ++j) {
        term = cdiv(term * tsq, BigInt::pow2(static_cast<unsigned>(scale)));
        acc += cdiv(term, BigInt(2 * j + 1));
    }
    // tail: sum_{j>=J} t^(2j+1)/(2j+1) <= t^(2J+1) * (8/7) / (2J+1)
    BigInt rem = cdiv(term * tsq, BigInt::pow2(static_cast<unsigned>(scale)));
    acc += cdiv(rem * BigInt(8), BigInt(7) * BigInt(2 * J + 1));
    return acc;
}

struct LogKey {
    int precision;
    Rat x;
    bool operator==(const LogKey& o) const { return precision == o.precision && x == o.x; }
};
struct LogKeyHash {
    size_t operator()(const LogKey& k) const {
        return k.x.hash() * 31 + static_cast<size_t>(k.precision);
    }
};

std::mutex g_log_mutex;
std::unordered_map<LogKey, std::pair<BigInt, BigInt>, LogKeyHash> g_log_cache;
std::unordered_map<int, std::pair<BigInt, BigInt>> g_atanh_third_cache;

// atanh(1/3) enclosure mantissas at the scale for `precision`, cached.
std::pair<BigInt, BigInt> atanh_third(int precision) {
    {
        std::lock_guard<std::mutex> lock(g_log_mutex);
        auto it = g_atanh_third_cache.find(precision);
        if (it != g_atanh_third_cache.end()) return it->second;
    }
    const int F = working_scale(precision);
    BigInt one = BigInt::pow2(static_cast<unsigned>(F));
    BigInt t_lo = fdiv(one, BigInt(3));
    BigInt t_hi = cdiv(one, BigInt(3));
    std::pair<BigInt, BigInt> val{atanh_lo(t_lo, F), atanh_hi(t_hi, F)};
    std::lock_guard<std::mutex> lock(g_log_mutex);
    g_atanh_third_cache.emplace(precision, val);
    return val;
}

std::pair<BigInt, BigInt> log2_mantissas(const Rat& x, int precision) {
    const int F = working_scale(precision);
    const BigInt& a = x.num();
    const BigInt& b = x.den();

    // range reduction: x = 2^e * m with m in [1,2)
    long long e = static_cast<long long>(a.bit_length()) - static_cast<long long>(b.bit_length());
    BigInt bshift = e >= 0 ? (b << static_cast<unsigned>(e)) : b;
    BigInt ashift = e >= 0 ? a : (a << static_cast<unsigned>(-e));
    if (ashift < bshift) {
        --e;
        if (e >= 0) {
            bshift = b << static_cast<unsigned>(e);
            ashift = a;
        } else {
            bshift = b;
            ashift = a << static_cast<unsigned>(-e);
        }
    }
    BigInt e_mant = BigInt(e) << static_cast<unsigned>(F);
    if (ashift == bshift) return {e_mant, e_mant};  // exact power of two

    // m enclosure, then t = (m-1)/(m+1), monotone increasing in m
    BigInt q, r;
    BigInt::divmod(ashift << static_cast<unsigned>(F), bshift, q, r);
    BigInt m_lo = q;
    BigInt m_hi = r.is_zero() ? q : q + BigInt(1);
    BigInt one = BigInt::pow2(static_cast<unsigned>(F));
    BigInt t_lo = fdiv((m_lo - one) << static_cast<unsigned>(F), m_lo + one);
    BigInt t_hi = cdiv((m_hi - one) << static_cast<unsigned>(F), m_hi + one);

    BigInt s_lo = atanh_lo(t_lo, F);
    BigInt s_hi = atanh_hi(t_hi, F);
    auto lam = atanh_third(precision);
    BigInt q_lo = fdiv(s_lo << static_cast<unsigned>(F), lam.second);
    BigInt q_hi = cdiv(s_hi << static_cast<unsigned>(F), lam.first);
    BigInt lo = e_mant + q_lo;
    BigInt hi = e_mant + q_hi;
    // the sign of log2(x) is known from x vs 1; rounding may not cross zero
    BigInt zero(0);
    if (a > b && lo < zero) lo = zero;
    if (a < b && hi > zero) hi = zero;
    return {lo, hi};
}

BigInt mul_rat_floor(const BigInt& mant, const Rat& r) { return fdiv(mant * r.num(), r.den()); }
BigInt mul_rat_ceil(const BigInt& mant, const Rat& r) { return cdiv(mant * r.num(), r.den()); }

}  // namespace

RealInterval RealInterval::point_from_int(long long v, int precision) {
    RealInterval out;
    out.scale = working_scale(precision);
    out.precision = precision;
    out.lo = BigInt(v) << static_cast<unsigned>(out.scale);
    out.hi = out.lo;
    return out;
}

RealInterval RealInterval::from_rat(const Rat& x, int precision) {
    RealInterval out;
    out.scale = working_scale(precision);
    out.precision = precision;
    BigInt scaled = x.num() << static_cast<unsigned>(out.scale);
    out.lo = fdiv(scaled, x.den());
    out.hi = cdiv(scaled, x.den());
    return out;
}

Rat RealInterval::lo_rat() const { return Rat(lo, BigInt::pow2(static_cast<unsigned>(scale))); }
Rat RealInterval::hi_rat() const { return Rat(hi, BigInt::pow2(static_cast<unsigned>(scale))); }
Rat RealInterval::width() const { return Rat(hi - lo, BigInt::pow2(static_cast<unsigned>(scale))); }

double RealInterval::lo_double() const {
    double d = lo_rat().to_double();
    return std::nextafter(std::nextafter(d, -1e308), -1e308);
}

double RealInterval::hi_double() const {
    double d = hi_rat().to_double();
    return std::nextafter(std::nextafter(d, 1e308), 1e308);
}

double RealInterval::mid_double() const {
    return Rat(lo + hi, BigInt::pow2(static_cast<unsigned>(scale + 1))).to_double();
}

bool RealInterval::contains(const Rat& x) const { return lo_rat() <= x && x <= hi_rat(); }

bool RealInterval::inside(const RealInterval& outer) const {
    return outer.lo_rat() <= lo_rat() && hi_rat() <= outer.hi_rat();
}

namespace {
std::string decimal_of_mant(const BigInt& mant, int scale, int digits, bool round_up) {
    BigInt p10(1);
    for (int i = 0; i < digits; ++i) p10 *= BigInt(10);
    BigInt scaled = mant * p10;
    BigInt pow = BigInt::pow2(static_cast<unsigned>(scale));
    BigInt v = round_up ? cdiv(scaled, pow) : fdiv(scaled, pow);
    bool neg = v.is_negative();
    std::string s = v.abs().to_string();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
    return neg ? "-" + s : s;
}
}  // namespace

std::string RealInterval::lo_decimal(int digits) const {
    return decimal_of_mant(lo, scale, digits, /*round_up=*/false);
}

std::string RealInterval::hi_decimal(int digits) const {
    return decimal_of_mant(hi, scale, digits, /*round_up=*/true);
}

namespace {
void check_grid(const RealInterval& a, const RealInterval& b) {
    if (a.scale != b.scale)
        throw Error("interval operands on different grids (" + std::to_string(a.scale) + " vs " +
                    std::to_string(b.scale) + ")");
}
}  // namespace

RealInterval iv_add(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return {a.lo + b.lo, a.hi + b.hi, a.scale, a.precision};
}

RealInterval iv_sub(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return {a.lo - b.hi, a.hi - b.lo, a.scale, a.precision};
}

RealInterval iv_neg(const RealInterval& a) { return {-a.hi, -a.lo, a.scale, a.precision}; }

RealInterval iv_min(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return {a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi, a.scale, a.precision};
}

RealInterval iv_max(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return {a.lo > b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi, a.scale, a.precision};
}

RealInterval iv_mul_rat(const RealInterval& a, const Rat& r) {
    if (r.is_negative()) {
        return {mul_rat_floor(a.hi, r), mul_rat_ceil(a.lo, r), a.scale, a.precision};
    }
    return {mul_rat_floor(a.lo, r), mul_rat_ceil(a.hi, r), a.scale, a.precision};
}

RealInterval iv_div_int(const RealInterval& a, long long n) {
    if (n <= 0) throw Error("iv_div_int requires positive divisor");
    return {fdiv(a.lo, BigInt(n)), cdiv(a.hi, BigInt(n)), a.scale, a.precision};
}

RealInterval iv_clamp_below(const RealInterval& a, const Rat& c) {
    BigInt scaled = c.num() << static_cast<unsigned>(a.scale);
    BigInt c_lo = fdiv(scaled, c.den());
    BigInt c_hi = cdiv(scaled, c.den());
    return {a.lo > c_lo ? a.lo : c_lo, a.hi > c_hi ? a.hi : c_hi, a.scale, a.precision};
}

int cmp_lo(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return a.lo.compare(b.lo);
}

int cmp_hi(const RealInterval& a, const RealInterval& b) {
    check_grid(a, b);
    return a.hi.compare(b.hi);
}

RealInterval log2_rat(const Rat& x, int precision) {
    if (x.num().sign() <= 0) throw ParamRange("log2 requires a positive argument");
    LogKey key{precision, x};
    {
        std::lock_guard<std::mutex> lock(g_log_mutex);
        auto it = g_log_cache.find(key);
        if (it != g_log_cache.end())
            return {it->second.first, it->second.second, working_scale(precision), precision};
    }
    auto m = log2_mantissas(x, precision);
    {
        std::lock_guard<std::mutex> lock(g_log_mutex);
        g_log_cache.emplace(std::move(key), m);
    }
    return {m.first, m.second, working_scale(precision), precision};
}

RealInterval neg_xlog2x(const Rat& x, int precision) {
    if (x.is_negative() || x > Rat(1)) throw ParamRange("neg_xlog2x requires x in [0,1]");
    if (x.is_zero() || x.is_one()) return RealInterval::point_from_int(0, precision);
    return iv_mul_rat(log2_rat(x, precision), -x);
}

RealInterval xlog2_ratio(const Rat& w, const Rat& q, int precision) {
    if (w.is_negative()) throw ParamRange("xlog2_ratio requires w >= 0");
    if (w.is_zero()) return RealInterval::point_from_int(0, precision);
    if (q.num().sign() <= 0) throw ParamRange("xlog2_ratio requires q > 0 when w > 0");
    return iv_mul_rat(log2_rat(w / q, precision), w);
}

}  // namespace fsc

#include "fsc/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsc/errors.hpp"

namespace fsc {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                                 : static_cast<unsigned long long>(v);
    while (m != 0) {
        limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

BigInt BigInt::pow2(unsigned k) {
    BigInt r;
    r.sign_ = 1;
    r.limbs_.assign(k / 32 + 1, 0);
    r.limbs_[k / 32] = 1u << (k % 32);
    return r;
}

size_t BigInt::bit_length() const {
    if (sign_ == 0) return 0;
    uint32_t top = limbs_.back();
    size_t bits = (limbs_.size() - 1) * 32;
    while (top != 0) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

int BigInt::ucmp(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::uadd(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0u);
        r[i] = static_cast<uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[x.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::usub(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (d < 0) {
            d += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::umul(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        if (ai == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry != 0) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Knuth Algorithm D with 32-bit digits.
void BigInt::udivmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                     std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (b.empty()) throw Error("division by zero");
    if (ucmp(a, b) < 0) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0];
        q.assign(a.size(), 0);
        uint64_t rem = 0;
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem != 0) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    // normalize so the top divisor limb has its high bit set
    int shift = 0;
    for (uint32_t top = b.back(); (top & 0x80000000u) == 0; top <<= 1) ++shift;
    const size_t n = b.size();
    const size_t m = a.size() - n;

    std::vector<uint32_t> u(a.size() + 1, 0), v(n, 0);
    for (size_t i = a.size(); i-- > 0;) {
        u[i] = a[i] << shift;
        if (shift && i > 0) u[i] |= static_cast<uint32_t>(a[i - 1] >> (32 - shift));
    }
    if (shift) u[a.size()] = static_cast<uint32_t>(a.back() >> (32 - shift));
    for (size_t i = n; i-- > 0;) {
        v[i] = b[i] << shift;
        if (shift && i > 0) v[i] |= static_cast<uint32_t>(b[i - 1] >> (32 - shift));
    }

    q.assign(m + 1, 0);
    const uint64_t vtop = v[n - 1];
    const uint64_t vnext = v[n - 2];
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / vtop;
        uint64_t rhat = num % vtop;
        if (qhat >= kBase) {
            qhat = kBase - 1;
            rhat = num - qhat * vtop;
        }
        while (rhat < kBase && qhat * vnext > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // multiply-subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t prod = qhat * v[i] + carry;
            carry = prod >> 32;
            int64_t d = static_cast<int64_t>(u[j + i]) - static_cast<int64_t>(prod & 0xffffffffu) -
                        borrow;
            if (d < 0) {
                d += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[j + i] = static_cast<uint32_t>(d);
        }
        int64_t d = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
        if (d < 0) {
            // qhat was one too large: add divisor back
            d += static_cast<int64_t>(kBase);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[j + i]) + v[i] + c2;
                u[j + i] = static_cast<uint32_t>(s & 0xffffffffu);
                c2 = s >> 32;
            }
            d += static_cast<int64_t>(c2);
            d &= static_cast<int64_t>(0xffffffffu);
        }
        u[j + n] = static_cast<uint32_t>(d);
        q[j] = static_cast<uint32_t>(qhat);
    }

    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(u.begin(), u.begin() + static_cast<long>(n));
    if (shift) {
        for (size_t i = 0; i < r.size(); ++i) {
            r[i] >>= shift;
            if (i + 1 < n) r[i] |= u[i + 1] << (32 - shift);
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.limbs_ = uadd(limbs_, o.limbs_);
        r.sign_ = sign_;
    } else {
        int c = ucmp(limbs_, o.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = usub(limbs_, o.limbs_);
            r.sign_ = sign_;
        } else {
            r.limbs_ = usub(o.limbs_, limbs_);
            r.sign_ = o.sign_;
        }
    }
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.limbs_ = umul(limbs_, o.limbs_);
    r.sign_ = sign_ * o.sign_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    udivmod(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    r.limbs_ = std::move(rm);
    r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

BigInt BigInt::operator<<(unsigned k) const {
    if (sign_ == 0 || k == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    size_t limb_shift = k / 32;
    unsigned bit_shift = k % 32;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(limbs_[i]) << bit_shift;
        r.limbs_[i + limb_shift] |= static_cast<uint32_t>(cur & 0xffffffffu);
        r.limbs_[i + limb_shift + 1] |= static_cast<uint32_t>(cur >> 32);
    }
    r.trim();
    return r;
}

BigInt BigInt::operator>>(unsigned k) const {
    if (sign_ < 0) throw Error("right shift of negative BigInt");
    if (sign_ == 0 || k == 0) return *this;
    size_t limb_shift = k / 32;
    unsigned bit_shift = k % 32;
    if (limb_shift >= limbs_.size()) return BigInt();
    BigInt r;
    r.sign_ = 1;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        uint64_t cur = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            cur |= static_cast<uint64_t>(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
        r.limbs_[i] = static_cast<uint32_t>(cur);
    }
    r.trim();
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Euclid; schoolbook division is fine at our sizes
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int BigInt::compare(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    int c = ucmp(limbs_, o.limbs_);
    return sign_ >= 0 ? c : -c;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw ParseError("empty integer literal");
    int sign = 1;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        i = 1;
    }
    if (i == s.size()) throw ParseError("missing digits in integer literal");
    BigInt r;
    const BigInt chunk_base(1000000000ll);
    size_t pos = i;
    while (pos < s.size()) {
        size_t take = std::min<size_t>(9, s.size() - pos);
        long long v = 0;
        for (size_t k = 0; k < take; ++k) {
            char c = s[pos + k];
            if (c < '0' || c > '9') throw ParseError("invalid digit in integer literal");
            v = v * 10 + (c - '0');
        }
        long long scale = 1;
        for (size_t k = 0; k < take; ++k) scale *= 10;
        r = r * BigInt(scale) + BigInt(v);
        pos += take;
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> cur = limbs_;
    std::string out;
    const std::vector<uint32_t> ten9 = {1000000000u};
    while (!cur.empty()) {
        std::vector<uint32_t> q, r;
        udivmod(cur, ten9, q, r);
        uint64_t rem = r.empty() ? 0 : r[0];
        char buf[10];
        for (int k = 0; k < 9; ++k) {
            buf[k] = static_cast<char>('0' + rem % 10);
            rem /= 10;
        }
        cur = std::move(q);
        if (cur.empty()) {
            int top = 8;
            while (top > 0 && buf[top] == '0') --top;
            for (int k = 0; k <= top; ++k) out.push_back(buf[k]);
        } else {
            out.append(buf, buf + 9);
        }
    }
    if (sign_ < 0) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    double r = 0.0;
    size_t start = limbs_.size() > 3 ? limbs_.size() - 3 : 0;
    for (size_t i = limbs_.size(); i-- > start;) r = r * 4294967296.0 + limbs_[i];
    r = std::ldexp(r, static_cast<int>(start) * 32);
    return sign_ < 0 ? -r : r;
}

long long BigInt::to_ll() const {
    if (bit_length() > 62) throw Error("BigInt too large for long long");
    long long v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return sign_ < 0 ? -v : v;
}

size_t BigInt::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(sign_ + 2));
    for (uint32_t l : limbs_) mix(l);
    return static_cast<size_t>(h);
}

BigInt fdiv(const BigInt& a, const BigInt& b) {
    if (b.sign() <= 0) throw Error("fdiv requires positive divisor");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    if (r.sign() < 0) q -= BigInt(1);
    return q;
}

BigInt cdiv(const BigInt& a, const BigInt& b) {
    if (b.sign() <= 0) throw Error("cdiv requires positive divisor");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    if (r.sign() > 0) q += BigInt(1);
    return q;
}

}  // namespace fsc

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fsc {

/// Arbitrary-precision signed integer. Sign-magnitude representation with
/// 32-bit limbs, least significant first; no trailing zero limbs.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);  // NOLINT(google-explicit-constructor) intentional implicit

    static BigInt from_string(std::string_view s);  // decimal, optional leading sign
    static BigInt pow2(unsigned k);                 // 2^k

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }
    int sign() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }

    /// Number of bits in the magnitude; 0 for zero.
    size_t bit_length() const;
    bool is_odd() const { return sign_ != 0 && (limbs_[0] & 1u); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Truncated division (C semantics): q = trunc(a/b), r = a - q*b.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    /// Logical shifts on the magnitude; require *this >= 0 for >>.
    BigInt operator<<(unsigned k) const;
    BigInt operator>>(unsigned k) const;

    static BigInt gcd(BigInt a, BigInt b);

    int compare(const BigInt& o) const;  // -1, 0, +1
    bool operator==(const BigInt& o) const { return compare(o) == 0; }
    bool operator!=(const BigInt& o) const { return compare(o) != 0; }
    bool operator<(const BigInt& o) const { return compare(o) < 0; }
    bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
    bool operator>(const BigInt& o) const { return compare(o) > 0; }
    bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

    std::string to_string() const;  // decimal
    double to_double() const;       // nearest-ish; for solver seeding only
    /// Value as long long; throws Error on overflow.
    long long to_ll() const;

    size_t hash() const;

  private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> limbs_;  // magnitude, little-endian

    void trim();
    static int ucmp(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> uadd(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b);
    static std::vector<uint32_t> usub(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b);  // a >= b
    static std::vector<uint32_t> umul(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b);
    static void udivmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    friend struct BigIntTestAccess;
};

/// Floor division, divisor must be positive.
BigInt fdiv(const BigInt& a, const BigInt& b);
/// Ceiling division, divisor must be positive.
BigInt cdiv(const BigInt& a, const BigInt& b);

}  // namespace fsc

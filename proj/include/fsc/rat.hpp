#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fsc/bigint.hpp"

namespace fsc {

/// Exact rational number. Invariants: denominator > 0, gcd(num, den) = 1,
/// zero is 0/1. All arithmetic and comparisons are exact.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}  // NOLINT intentional implicit
    Rat(long long num, long long den);
    Rat(BigInt num, BigInt den);

    /// Parses "a/b" or a plain integer "a"; exact, no float conversion.
    static Rat from_string(std::string_view s);
    /// Exact binary expansion of a finite double.
    static Rat from_double(double d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    Rat operator-() const;
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    int compare(const Rat& o) const;
    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return compare(o) < 0; }
    bool operator<=(const Rat& o) const { return compare(o) <= 0; }
    bool operator>(const Rat& o) const { return compare(o) > 0; }
    bool operator>=(const Rat& o) const { return compare(o) >= 0; }

    Rat abs() const;

    /// "a" when the denominator is 1, otherwise "a/b".
    std::string to_string() const;
    /// Always "a/b", including "a/1".
    std::string to_slash_string() const;
    double to_double() const;

    size_t hash() const;

  private:
    BigInt num_, den_;
    void normalize();
};

struct RatHash {
    size_t operator()(const Rat& r) const { return r.hash(); }
};

/// Dense row-major matrix of exact rationals.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> cells;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), cells(static_cast<size_t>(r) * c) {}
    const Rat& at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
    Rat& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
};

}  // namespace fsc

#include "fsc/rat.hpp"

#include <cmath>

#include "fsc/errors.hpp"

namespace fsc {

void Rat::normalize() {
    if (den_.is_zero()) throw Error("rational with zero denominator");
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rat::Rat(long long num, long long den) : num_(num), den_(den) { normalize(); }

Rat::Rat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

Rat Rat::from_string(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (s.find('.') != std::string_view::npos || s.find('e') != std::string_view::npos ||
            s.find('E') != std::string_view::npos)
            throw ParseError("rational literal must be \"a/b\" or an integer, got \"" +
                             std::string(s) + "\"");
        return Rat(BigInt::from_string(s), BigInt(1));
    }
    BigInt n = BigInt::from_string(s.substr(0, slash));
    BigInt d = BigInt::from_string(s.substr(slash + 1));
    if (d.is_zero()) throw ParseError("zero denominator in \"" + std::string(s) + "\"");
    return Rat(std::move(n), std::move(d));
}

Rat Rat::from_double(double d) {
    if (!std::isfinite(d)) throw ParamRange("from_double requires a finite value");
    if (d == 0.0) return Rat();
    int exp = 0;
    double m = std::frexp(d, &exp);  // |m| in [0.5, 1)
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    int e2 = exp - 53;
    BigInt num(mant), den(1);
    if (e2 >= 0)
        num = num << static_cast<unsigned>(e2);
    else
        den = BigInt::pow2(static_cast<unsigned>(-e2));
    return Rat(std::move(num), std::move(den));
}

Rat Rat::operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
}

Rat Rat::operator+(const Rat& o) const {
    return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
    return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }

Rat Rat::operator/(const Rat& o) const {
    if (o.num_.is_zero()) throw Error("rational division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
}

int Rat::compare(const Rat& o) const { return (num_ * o.den_).compare(o.num_ * den_); }

Rat Rat::abs() const {
    Rat r = *this;
    r.num_ = r.num_.abs();
    return r;
}

std::string Rat::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rat::to_slash_string() const { return num_.to_string() + "/" + den_.to_string(); }

double Rat::to_double() const {
    // scale so both operands stay well inside double range
    size_t nb = num_.bit_length(), db = den_.bit_length();
    if (nb < 900 && db < 900) return num_.to_double() / den_.to_double();
    size_t shift = std::max(nb, db) - 512;
    BigInt n = num_.abs() >> static_cast<unsigned>(shift);
    BigInt d = den_ >> static_cast<unsigned>(shift);
    double r = n.to_double() / d.to_double();
    return num_.is_negative() ? -r : r;
}

size_t Rat::hash() const {
    size_t h = num_.hash();
    h ^= den_.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

}  // namespace fsc

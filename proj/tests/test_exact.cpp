#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>

#include "doctest.h"
#include "fsc/bigint.hpp"
#include "fsc/errors.hpp"
#include "fsc/rat.hpp"

using fsc::BigInt;
using fsc::Rat;

TEST_CASE("bigint small arithmetic matches __int128") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> d(-3000000000ll, 3000000000ll);
    for (int i = 0; i < 2000; ++i) {
        long long a = d(rng), b = d(rng);
        BigInt A(a), B(b);
        CHECK((A + B).to_ll() == a + b);
        CHECK((A - B).to_ll() == a - b);
        __int128 prod = static_cast<__int128>(a) * b;
        BigInt P = A * B;
        __int128 got = 0;
        bool neg = P.is_negative();
        BigInt abs = P.abs();
        // reconstruct via decimal string to avoid a second conversion path
        for (char c : abs.to_string()) got = got * 10 + (c - '0');
        if (neg) got = -got;
        CHECK(got == prod);
        if (b != 0) {
            BigInt Q, R;
            BigInt::divmod(A, B, Q, R);
            CHECK(Q.to_ll() == a / b);
            CHECK(R.to_ll() == a % b);
        }
        CHECK((A < B) == (a < b));
        CHECK((A == B) == (a == b));
    }
}

TEST_CASE("bigint multi-limb division reconstructs") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> limbs(1, 8);
    std::uniform_int_distribution<uint32_t> word(0, 0xffffffffu);
    auto random_big = [&](int n) {
        BigInt r(0);
        for (int i = 0; i < n; ++i) r = (r << 32) + BigInt(static_cast<long long>(word(rng)));
        return r;
    };
    for (int i = 0; i < 500; ++i) {
        BigInt a = random_big(limbs(rng));
        BigInt b = random_big(limbs(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        CHECK(r.sign() * a.sign() >= 0);
    }
}

TEST_CASE("bigint division edge patterns") {
    // limb patterns chosen to exercise the trial-quotient refinement and the
    // rare add-back correction in the long division
    const std::vector<uint32_t> specials = {0u, 1u, 2u, 0x7fffffffu, 0x80000000u, 0x80000001u,
                                            0xfffffffeu, 0xffffffffu};
    auto build = [](std::initializer_list<uint32_t> limbs) {
        BigInt r(0);
        for (uint32_t l : limbs) r = (r << 32) + BigInt(static_cast<long long>(l));
        return r;
    };
    std::vector<BigInt> dividends, divisors;
    for (uint32_t a : specials)
        for (uint32_t b : specials)
            for (uint32_t c : specials) dividends.push_back(build({a, b, c}));
    for (uint32_t a : specials)
        for (uint32_t b : specials) {
            divisors.push_back(build({a, b}));
            divisors.push_back(build({a, b, 1u}));
        }
    for (const BigInt& a : dividends) {
        for (const BigInt& b : divisors) {
            if (b.is_zero()) continue;
            BigInt q, r;
            BigInt::divmod(a, b, q, r);
            CHECK(q * b + r == a);
            CHECK(r.abs() < b.abs());
            CHECK(r.sign() >= 0);
        }
    }
}

TEST_CASE("bigint shifting and bit length") {
    BigInt one(1);
    for (unsigned k : {0u, 1u, 31u, 32u, 33u, 64u, 100u}) {
        BigInt p = BigInt::pow2(k);
        CHECK(p == (one << k));
        CHECK(p.bit_length() == k + 1);
        CHECK((p >> k) == one);
    }
    CHECK(BigInt(0).bit_length() == 0);
    CHECK((BigInt(12345) << 7) == BigInt(12345ll * 128));
    CHECK((BigInt(12345) >> 3) == BigInt(12345 / 8));
}

TEST_CASE("bigint gcd and string round trips") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> d(1, 1000000000ll);
    for (int i = 0; i < 300; ++i) {
        long long a = d(rng), b = d(rng);
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)).to_ll() == std::gcd(a, b));
    }
    for (const char* s : {"0", "-1", "123456789012345678901234567890", "-987654321098765432109"}) {
        CHECK(BigInt::from_string(s).to_string() == s);
    }
    CHECK(BigInt::from_string("+42").to_ll() == 42);
    CHECK_THROWS_AS(BigInt::from_string("12a"), fsc::ParseError);
    CHECK_THROWS_AS(BigInt::from_string(""), fsc::ParseError);
}

TEST_CASE("bigint floor and ceiling division") {
    CHECK(fsc::fdiv(BigInt(7), BigInt(2)) == BigInt(3));
    CHECK(fsc::fdiv(BigInt(-7), BigInt(2)) == BigInt(-4));
    CHECK(fsc::cdiv(BigInt(7), BigInt(2)) == BigInt(4));
    CHECK(fsc::cdiv(BigInt(-7), BigInt(2)) == BigInt(-3));
    CHECK(fsc::fdiv(BigInt(8), BigInt(2)) == BigInt(4));
    CHECK(fsc::cdiv(BigInt(8), BigInt(2)) == BigInt(4));
    CHECK_THROWS(fsc::fdiv(BigInt(1), BigInt(0)));
}

TEST_CASE("rational normalization invariants") {
    Rat r(6, -4);
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(0).den() == BigInt(1));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> d(-200, 200);
    for (int i = 0; i < 500; ++i) {
        long long n = d(rng), den = d(rng);
        if (den == 0) continue;
        Rat x(n, den);
        CHECK(x.den().sign() > 0);
        CHECK(BigInt::gcd(x.num(), x.den()).is_one());
    }
}

TEST_CASE("rational field arithmetic") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK(-a == Rat(-1, 3));
    CHECK(a.abs() == a);
    CHECK((-a).abs() == a);
    CHECK(Rat(1, 3) + Rat(2, 3) == Rat(1));
    CHECK_THROWS(a / Rat(0));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> d(-50, 50);
    for (int i = 0; i < 300; ++i) {
        long long n1 = d(rng), n2 = d(rng), d1 = d(rng), d2 = d(rng);
        if (d1 == 0 || d2 == 0) continue;
        Rat x(n1, d1), y(n2, d2);
        CHECK((x + y) - y == x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("rational ordering is exact") {
    CHECK(Rat(1, 3) < Rat(34, 100));
    CHECK(Rat(-1, 3) > Rat(-34, 100));
    CHECK(Rat(2, 6) == Rat(1, 3));
    BigInt big = BigInt::pow2(100);
    CHECK(Rat(big, big + BigInt(1)) < Rat(1));
    CHECK(Rat(big + BigInt(1), big) > Rat(1));
}

TEST_CASE("rational parsing and rendering") {
    CHECK(Rat::from_string("3/6") == Rat(1, 2));
    CHECK(Rat::from_string("-4/8") == Rat(-1, 2));
    CHECK(Rat::from_string("7") == Rat(7));
    CHECK(Rat(1, 2).to_string() == "1/2");
    CHECK(Rat(5).to_string() == "5");
    CHECK(Rat(5).to_slash_string() == "5/1");
    CHECK(Rat::from_string(Rat(-22, 7).to_slash_string()) == Rat(-22, 7));
    CHECK_THROWS_AS(Rat::from_string("1/0"), fsc::ParseError);
    CHECK_THROWS_AS(Rat::from_string("0.5"), fsc::ParseError);
    CHECK_THROWS_AS(Rat::from_string("1e-3"), fsc::ParseError);
}

TEST_CASE("rational from_double is exact") {
    CHECK(Rat::from_double(0.25) == Rat(1, 4));
    CHECK(Rat::from_double(-1.5) == Rat(-3, 2));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-10, 10);
    for (int i = 0; i < 200; ++i) {
        double v = d(rng);
        CHECK(Rat::from_double(v).to_double() == v);
    }
}

TEST_CASE("rational to_double handles huge operands") {
    BigInt big = BigInt::pow2(2000) + BigInt(12345);
    Rat r(big, big + BigInt(1));
    CHECK(r.to_double() == doctest::Approx(1.0));
    Rat tiny(BigInt(3), BigInt::pow2(1200));
    CHECK(tiny.to_double() >= 0.0);
}

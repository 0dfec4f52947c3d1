#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fsc/errors.hpp"
#include "fsc/info.hpp"
#include "fsc/interval.hpp"
#include "oracles.hpp"

using fsc::RealInterval;
using fsc::Rat;

namespace {
bool contains_double(const RealInterval& iv, double v, double slack = 1e-13) {
    return iv.lo_double() - slack <= v && v <= iv.hi_double() + slack;
}
}  // namespace

TEST_CASE("log2 of powers of two is exact") {
    for (int e : {-10, -3, -1, 0, 1, 2, 6, 30}) {
        Rat x = e >= 0 ? Rat(1ll << e) : Rat(1, 1ll << (-e));
        RealInterval iv = fsc::log2_rat(x, 64);
        CHECK(iv.lo == iv.hi);
        CHECK(iv.lo_rat() == Rat(e));
    }
}

TEST_CASE("log2 encloses known values tightly") {
    RealInterval l3 = fsc::log2_rat(Rat(3), 64);
    CHECK(contains_double(l3, 1.5849625007211562));
    CHECK(l3.width() < Rat(1, 1ll << 60));

    RealInterval l10 = fsc::log2_rat(Rat(10), 64);
    CHECK(contains_double(l10, 3.321928094887362));

    RealInterval inv = fsc::log2_rat(Rat(3, 7), 64);
    CHECK(contains_double(inv, std::log2(3.0 / 7.0)));
    CHECK(inv.lo_rat() < Rat(0));

    CHECK_THROWS_AS(fsc::log2_rat(Rat(0), 64), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::log2_rat(Rat(-1, 2), 64), fsc::ParamRange);
}

TEST_CASE("log2 enclosures are sound and nest under refinement") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long long> d(1, 100000);
    for (int i = 0; i < 200; ++i) {
        Rat x(d(rng), d(rng));
        RealInterval a = fsc::log2_rat(x, 64);
        RealInterval b = fsc::log2_rat(x, 128);
        RealInterval c = fsc::log2_rat(x, 256);
        CHECK(contains_double(a, std::log2(x.to_double()), 1e-10));
        CHECK(b.inside(a));
        CHECK(c.inside(b));
        CHECK(a.lo_rat() <= a.hi_rat());
    }
}

TEST_CASE("entropy of exact distributions") {
    RealInterval h = fsc::entropy({Rat(1, 2), Rat(1, 2)});
    CHECK(h.lo == h.hi);  // dyadic mass: exact
    CHECK(h.lo_rat() == Rat(1));

    RealInterval h0 = fsc::entropy({Rat(1), Rat(0)});
    CHECK(h0.lo_rat() == Rat(0));
    CHECK(h0.hi_rat() == Rat(0));

    RealInterval hq = fsc::entropy({Rat(1, 4), Rat(3, 4)});
    CHECK(contains_double(hq, 0.8112781244591328));
    CHECK(hq.width() <= Rat(2, 1ll << 60));  // <= #terms * 2^-(precision-4)

    CHECK_THROWS_AS(fsc::entropy({Rat(1, 2), Rat(1, 3)}), fsc::NotADistribution);
    CHECK_THROWS_AS(fsc::entropy({Rat(3, 2), Rat(-1, 2)}), fsc::NotADistribution);
}

TEST_CASE("binary entropy anchors") {
    CHECK(fsc::binary_entropy(Rat(1, 2)).lo_rat() == Rat(1));
    CHECK(fsc::binary_entropy(Rat(0)).hi_rat() == Rat(0));
    CHECK(fsc::binary_entropy(Rat(1)).hi_rat() == Rat(0));
    CHECK(contains_double(fsc::binary_entropy(Rat(1, 8)), 0.5435644431995964));
    CHECK(contains_double(fsc::binary_entropy(Rat(1, 4)), 0.8112781244591328));
    CHECK_THROWS_AS(fsc::binary_entropy(Rat(9, 8)), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::binary_entropy(Rat(-1, 8)), fsc::ParamRange);
}

TEST_CASE("soundness against a higher-precision reference") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> size_d(2, 64);
    for (int i = 0; i < 200; ++i) {
        auto dist = oracle::random_distribution(rng, size_d(rng), 30);
        RealInterval def = fsc::entropy(dist, 64);
        RealInterval ref = fsc::entropy(dist, 256);
        // the 256-bit midpoint is within 2^-250 of the truth
        Rat mid = (ref.lo_rat() + ref.hi_rat()) * Rat(1, 2);
        CHECK(def.contains(mid));
        CHECK(ref.inside(def));  // monotone refinement
        CHECK(def.lo_rat() >= Rat(0));
        // independent double-precision cross-check
        double h = 0.0;
        for (const Rat& p : dist) {
            double pv = p.to_double();
            if (pv > 0) h -= pv * std::log2(pv);
        }
        CHECK(contains_double(def, h, 1e-9));
    }
}

TEST_CASE("entropy width respects the documented bound") {
    std::mt19937 rng(2024);
    for (int prec : {32, 64, 128}) {
        for (int i = 0; i < 20; ++i) {
            auto dist = oracle::random_distribution(rng, 16, 50);
            RealInterval h = fsc::entropy(dist, prec);
            Rat bound =
                Rat(16, 1) * Rat(fsc::BigInt(1), fsc::BigInt::pow2(static_cast<unsigned>(prec - 4)));
            CHECK(h.width() <= bound);
        }
    }
}

TEST_CASE("interval operations round outward") {
    RealInterval a = fsc::log2_rat(Rat(3), 64);
    RealInterval b = fsc::log2_rat(Rat(5), 64);
    RealInterval sum = fsc::iv_add(a, b);
    CHECK(contains_double(sum, std::log2(15.0)));
    RealInterval diff = fsc::iv_sub(a, b);
    CHECK(contains_double(diff, std::log2(3.0 / 5.0)));
    RealInterval scaled = fsc::iv_mul_rat(a, Rat(-7, 3));
    CHECK(contains_double(scaled, -7.0 / 3.0 * std::log2(3.0)));
    RealInterval third = fsc::iv_div_int(a, 3);
    CHECK(contains_double(third, std::log2(3.0) / 3.0));
    CHECK(fsc::iv_min(a, b).lo == a.lo);
    CHECK(fsc::iv_max(a, b).hi == b.hi);
    RealInterval neg = fsc::iv_neg(a);
    CHECK(neg.lo == -a.hi);

    RealInterval clamped = fsc::iv_clamp_below(fsc::iv_neg(b), Rat(0));
    CHECK(clamped.lo_rat() == Rat(0));
    CHECK(clamped.hi_rat() == Rat(0));
}

TEST_CASE("decimal rendering is directed and deterministic") {
    RealInterval a = fsc::log2_rat(Rat(3), 64);
    std::string lo = a.lo_decimal(12), hi = a.hi_decimal(12);
    CHECK(lo == "1.584962500721");
    CHECK(hi == "1.584962500722");
    RealInterval m = fsc::iv_neg(a);
    CHECK(m.lo_decimal(6) == "-1.584963");
    CHECK(m.hi_decimal(6) == "-1.584962");
    CHECK(fsc::RealInterval::point_from_int(1, 64).lo_decimal(3) == "1.000");
    CHECK(fsc::RealInterval::point_from_int(0, 64).hi_decimal(3) == "0.000");
}

TEST_CASE("xlog2_ratio basics") {
    RealInterval kl = fsc::xlog2_ratio(Rat(1, 2), Rat(1, 4), 64);
    CHECK(kl.lo == kl.hi);
    CHECK(kl.lo_rat() == Rat(1, 2));  // (1/2)*log2(2) exactly
    CHECK(fsc::xlog2_ratio(Rat(0), Rat(0), 64).hi_rat() == Rat(0));
    CHECK_THROWS_AS(fsc::xlog2_ratio(Rat(1, 2), Rat(0), 64), fsc::ParamRange);
}

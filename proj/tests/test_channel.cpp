#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "fsc/channel.hpp"
#include "fsc/errors.hpp"
#include "fsc/info.hpp"
#include "oracles.hpp"

using fsc::FscParams;
using fsc::Rat;

TEST_CASE("validate accepts the named families and rejects bad rows") {
    CHECK_NOTHROW(fsc::fsc_p_qhat(Rat(1, 4)));
    CHECK_NOTHROW(fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 3)));
    CHECK_NOTHROW(fsc::fsc_p_qk(Rat(1, 4), 7));

    FscParams bad = fsc::fsc_p_qhat(Rat(1, 4));
    bad.p_at(0, 0, 0) = Rat(1, 2);
    bad.p_at(1, 0, 0) = Rat(1, 3);
    try {
        fsc::validate(bad);
        FAIL("expected RowSumError");
    } catch (const fsc::RowSumError& e) {
        CHECK(e.actual_sum == "5/6");
        CHECK(e.row_id.find("x=0") != std::string::npos);
    }

    FscParams neg = fsc::fsc_p_qhat(Rat(1, 4));
    neg.p_at(0, 0, 0) = Rat(3, 2);
    neg.p_at(1, 0, 0) = Rat(-1, 2);
    CHECK_THROWS_AS(fsc::validate(neg), fsc::NegativeEntryError);

    FscParams shape = fsc::fsc_p_qhat(Rat(1, 4));
    shape.p.pop_back();
    CHECK_THROWS_AS(fsc::validate(shape), fsc::ShapeError);
}

TEST_CASE("family tensors match their definitions") {
    auto p = fsc::family_p(Rat(1, 4));
    FscParams f = fsc::make_fsc(2, 2, 2, p, fsc::family_qhat());
    // state 0: noiseless
    CHECK(f.p_at(0, 0, 0) == Rat(1));
    CHECK(f.p_at(1, 0, 0) == Rat(0));
    CHECK(f.p_at(1, 1, 0) == Rat(1));
    // state 1: BSC rows (3/4, 1/4) and (1/4, 3/4)
    CHECK(f.p_at(0, 0, 1) == Rat(3, 4));
    CHECK(f.p_at(1, 0, 1) == Rat(1, 4));
    CHECK(f.p_at(0, 1, 1) == Rat(1, 4));
    CHECK(f.p_at(1, 1, 1) == Rat(3, 4));
    // qhat: both states absorbing, input independent
    CHECK(f.q_at(0, 0, 0) == Rat(1));
    CHECK(f.q_at(1, 1, 1) == Rat(1));
    CHECK(fsc::q_input_independent(f));

    CHECK(fsc::family_qlambda(Rat(0)) == fsc::family_qhat());
    CHECK(fsc::family_qk(1) == fsc::family_qlambda(Rat(1, 2)));

    CHECK_THROWS_AS(fsc::family_p(Rat(0)), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::family_p(Rat(1, 2)), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::family_qlambda(Rat(3, 5)), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::family_qk(0), fsc::ParamRange);
}

TEST_CASE("padded families stay stochastic on larger alphabets") {
    FscParams big = fsc::make_fsc(3, 4, 3, fsc::family_p(Rat(1, 4), 3, 4, 3),
                                  fsc::family_qlambda(Rat(1, 3), 3, 3));
    // the binary block is untouched
    CHECK(big.p_at(0, 0, 0) == Rat(1));
    CHECK(big.p_at(1, 0, 1) == Rat(1, 4));
    // padded input row drops all mass on symbol 0
    CHECK(big.p_at(0, 2, 0) == Rat(1));
    CHECK(big.q_at(0, 0, 2) == Rat(1));
}

TEST_CASE("joint block law on the absorbing family") {
    FscParams f = fsc::fsc_p_qhat(Rat(1, 4));
    auto law0 = fsc::joint_block_law(f, {0}, 0);
    CHECK(law0.at(0, 0) == Rat(1));
    CHECK(law0.at(0, 1) == Rat(0));
    CHECK(law0.at(1, 0) == Rat(0));
    CHECK(law0.at(1, 1) == Rat(0));

    auto law1 = fsc::joint_block_law(f, {0}, 1);
    CHECK(law1.at(0, 1) == Rat(3, 4));
    CHECK(law1.at(1, 1) == Rat(1, 4));
    CHECK(law1.at(0, 0) == Rat(0));
    CHECK(law1.total() == Rat(1));
}

TEST_CASE("joint block law equals brute-force path enumeration") {
    FscParams f = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 2));
    auto law = fsc::joint_block_law(f, {0, 0}, 0);
    auto brute = oracle::brute_joint(f, {0, 0}, 0);
    for (long yi = 0; yi < 4; ++yi) {
        for (int s = 0; s < 2; ++s) {
            auto it = brute.find({yi, s});
            Rat expect = it == brute.end() ? Rat(0) : it->second;
            CHECK(law.at(yi, s) == expect);
        }
    }
}

TEST_CASE("joint law preconditions") {
    FscParams f = fsc::fsc_p_qhat(Rat(1, 4));
    CHECK_THROWS_AS(fsc::joint_block_law(f, {}, 0), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::joint_block_law(f, {0}, 2), fsc::ParamRange);
    CHECK_THROWS_AS(fsc::joint_block_law(f, {2}, 0), fsc::ParamRange);
}

TEST_CASE("output block law anchors") {
    FscParams qhat = fsc::fsc_p_qhat(Rat(1, 4));
    auto one = fsc::output_block_law(qhat, {1}, 1);
    CHECK(one[0] == Rat(1, 4));
    CHECK(one[1] == Rat(3, 4));

    auto noiseless = fsc::output_block_law(qhat, {0, 1}, 0);
    CHECK(noiseless[fsc::encode_seq({0, 1}, 2)] == Rat(1));
    Rat total;
    for (const Rat& v : noiseless) total += v;
    CHECK(total == Rat(1));

    // confirmed against the brute-force oracle before freezing
    FscParams mix = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 2));
    auto out = fsc::output_block_law(mix, {0, 0}, 0);
    auto brute = oracle::brute_joint(mix, {0, 0}, 0);
    std::vector<Rat> from_brute(4);
    for (const auto& [key, v] : brute) from_brute[static_cast<size_t>(key.first)] += v;
    for (long yi = 0; yi < 4; ++yi) CHECK(out[static_cast<size_t>(yi)] == from_brute[static_cast<size_t>(yi)]);
    CHECK(out[0] == Rat(7, 8));
    CHECK(out[1] == Rat(1, 8));
    CHECK(out[2] == Rat(0));
    CHECK(out[3] == Rat(0));
}

TEST_CASE("state kernel anchors and two-route equality") {
    FscParams qhat = fsc::fsc_p_qhat(Rat(1, 4));
    auto k0 = fsc::state_kernel(qhat, {0, 1, 0}, 0);
    CHECK(k0[0] == Rat(1));
    CHECK(k0[1] == Rat(0));

    FscParams mix = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 2));
    auto k1 = fsc::state_kernel(mix, {0}, 1);
    CHECK(k1[0] == Rat(1, 2));
    CHECK(k1[1] == Rat(1, 2));

    FscParams qk3 = fsc::fsc_p_qk(Rat(1, 4), 3);
    auto k2 = fsc::state_kernel(qk3, {0, 0}, 0);
    CHECK(k2[0] == Rat(5, 8));
    CHECK(k2[1] == Rat(3, 8));
    auto power = oracle::chain_power_row(qk3, 2, 0);
    CHECK(k2[0] == power[0]);
    CHECK(k2[1] == power[1]);

    std::mt19937 rng(31337);
    for (int i = 0; i < 25; ++i) {
        FscParams f = oracle::random_fsc(rng);
        std::uniform_int_distribution<int> len(1, 5);
        int n = len(rng);
        std::uniform_int_distribution<int> bit(0, 1);
        std::vector<int> xs(static_cast<size_t>(n));
        for (int& x : xs) x = bit(rng);
        int s0 = bit(rng);
        auto direct = fsc::state_kernel(f, xs, s0);
        auto marginal = fsc::state_kernel_via_marginal(f, xs, s0);
        CHECK(direct == marginal);
    }
}

TEST_CASE("randomized joint law vs brute force at n <= 4") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int i = 0; i < 20; ++i) {
        FscParams f = oracle::random_fsc(rng);
        for (int n = 1; n <= 4; ++n) {
            std::vector<int> xs(static_cast<size_t>(n));
            for (int& x : xs) x = bit(rng);
            int s0 = bit(rng);
            auto law = fsc::joint_block_law(f, xs, s0);
            auto brute = oracle::brute_joint(f, xs, s0);
            CHECK(law.total() == Rat(1));
            long y_count = 1l << n;
            for (long yi = 0; yi < y_count; ++yi) {
                for (int s = 0; s < 2; ++s) {
                    auto it = brute.find({yi, s});
                    Rat expect = it == brute.end() ? Rat(0) : it->second;
                    CHECK(law.at(yi, s) == expect);
                }
            }
        }
    }
}

TEST_CASE("distance identities") {
    FscParams qhat = fsc::fsc_p_qhat(Rat(1, 4));
    CHECK(fsc::distance(qhat, qhat, 0) == Rat(0));
    CHECK(fsc::distance(qhat, qhat, 1) == Rat(0));

    for (long k = 1; k <= 100; ++k) {
        FscParams qk = fsc::fsc_p_qk(Rat(1, 4), k);
        Rat expect(2, k + 1);
        CHECK(fsc::distance(qhat, qk, 0) == expect);
        CHECK(fsc::distance(qhat, qk, 1) == expect);
        CHECK(fsc::distance(qk, qhat, 0) == expect);  // symmetry
    }
    CHECK(fsc::distance(qhat, fsc::fsc_p_qk(Rat(1, 4), 1), 0) == Rat(1));
    CHECK(fsc::distance(qhat, fsc::fsc_p_qk(Rat(1, 4), 3), 0) == Rat(1, 2));

    std::mt19937 rng(555);
    for (int i = 0; i < 30; ++i) {
        FscParams a = oracle::random_fsc(rng);
        FscParams b = oracle::random_fsc(rng);
        Rat d01 = fsc::distance(a, b, 0);
        CHECK(d01 >= Rat(0));
        CHECK(d01 == fsc::distance(b, a, 0));
    }

    // zero iff the s0 slices coincide: equal slice-0, perturbed slice-1
    FscParams base = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 3));
    FscParams tweaked = base;
    tweaked.p_at(0, 0, 1) = Rat(1, 2);
    tweaked.p_at(1, 0, 1) = Rat(1, 2);
    tweaked = fsc::validate(tweaked);
    CHECK(fsc::distance(base, tweaked, 0) == Rat(0));
    CHECK(fsc::distance(base, tweaked, 1) > Rat(0));

    FscParams big = fsc::make_fsc(3, 4, 3, fsc::family_p(Rat(1, 4), 3, 4, 3),
                                  fsc::family_qlambda(Rat(1, 3), 3, 3));
    CHECK_THROWS_AS(fsc::distance(qhat, big, 0), fsc::ShapeMismatch);
}

TEST_CASE("block channel matrix rows are the output laws") {
    FscParams f = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 2));
    fsc::RatMatrix w = fsc::block_channel_matrix(f, 2, 0);
    CHECK(w.rows == 4);
    CHECK(w.cols == 4);
    auto row = fsc::output_block_law(f, {1, 0}, 0);
    long xi = fsc::encode_seq({1, 0}, 2);
    for (long yi = 0; yi < 4; ++yi) CHECK(w.at(static_cast<int>(xi), static_cast<int>(yi)) == row[static_cast<size_t>(yi)]);
}

TEST_CASE("channel json round trip") {
    FscParams f = fsc::fsc_p_qlambda(Rat(1, 4), Rat(1, 3));
    std::string text = fsc::channel_to_json(f);
    FscParams back = fsc::parse_channel_json(text);
    CHECK(back.nx == f.nx);
    CHECK(back.p == f.p);
    CHECK(back.q == f.q);

    CHECK_THROWS_AS(fsc::parse_channel_json("{\"nx\": 2}"), fsc::ParseError);
    CHECK_THROWS_AS(fsc::parse_channel_json("not json"), fsc::ParseError);
    // floats are refused for channel entries
    std::string with_float = text;
    auto pos = with_float.find("\"1/4\"");
    REQUIRE(pos != std::string::npos);
    with_float.replace(pos, 5, "0.25");
    CHECK_THROWS_AS(fsc::parse_channel_json(with_float), fsc::ParseError);
}

TEST_CASE("arbitrary-precision entries survive the whole pipeline") {
    // denominators far beyond 64 bits
    std::string big_den = "100000000000000000000000000000000000000000000000003";  // prime-ish
    std::string big_num = "99999999999999999999999999999999999999999999999999";
    Rat p0 = Rat::from_string(big_num + "/" + big_den);
    Rat p1 = Rat(1) - p0;
    CHECK(p1 > Rat(0));
    FscParams f;
    f.nx = f.ny = f.ns = 2;
    f.p.resize(8);
    f.q = fsc::family_qlambda(Rat(1, 3));
    for (int s = 0; s < 2; ++s) {
        for (int x = 0; x < 2; ++x) {
            f.p_at(x, x, s) = p0;
            f.p_at(1 - x, x, s) = p1;
        }
    }
    f = fsc::validate(f);
    auto law = fsc::joint_block_law(f, {0, 1}, 0);
    CHECK(law.total() == Rat(1));
    std::string text = fsc::channel_to_json(f);
    FscParams back = fsc::parse_channel_json(text);
    CHECK(back.p == f.p);
    // near-noiseless channel: the row entropy enclosure collapses to a few
    // grid ulps around a value of order 1e-48
    auto h = fsc::entropy({p0, p1});
    CHECK(h.lo_rat() >= fsc::Rat(0));
    CHECK(h.hi_double() < 1e-22);
    CHECK(h.hi_rat() > fsc::Rat(0));
}

TEST_CASE("sequence encoding round trips") {
    std::mt19937 rng(11);
    for (int base : {2, 3, 5}) {
        for (int n = 1; n <= 6; ++n) {
            std::uniform_int_distribution<int> sym(0, base - 1);
            std::vector<int> seq(static_cast<size_t>(n));
            for (int& s : seq) s = sym(rng);
            CHECK(fsc::decode_seq(fsc::encode_seq(seq, base), base, n) == seq);
        }
    }
    CHECK(fsc::encode_seq({1, 0, 1}, 2) == 5);  // first symbol most significant
}

TEST_CASE("channel json rejects malformed tensors") {
    FscParams f = fsc::fsc_p_qhat(Rat(1, 4));
    std::string text = fsc::channel_to_json(f);

    // row with a missing entry
    std::string short_row = text;
    auto pos = short_row.find("\"1/4\",");
    REQUIRE(pos != std::string::npos);
    short_row.erase(pos, 6);
    CHECK_THROWS_AS(fsc::parse_channel_json(short_row), fsc::ParseError);

    // negative entry, exact arithmetic catches it during validation
    std::string negative = text;
    pos = negative.find("\"3/4\"");
    REQUIRE(pos != std::string::npos);
    negative.replace(pos, 5, "\"5/4\"");
    pos = negative.find("\"1/4\"", pos);
    REQUIRE(pos != std::string::npos);
    negative.replace(pos, 5, "\"-1/4\"");
    CHECK_THROWS_AS(fsc::parse_channel_json(negative), fsc::NegativeEntryError);

    // alphabet size below 2
    std::string tiny = text;
    pos = tiny.find("\"ns\": 2");
    if (pos == std::string::npos) {
        pos = tiny.find("\"ns\":2");
        REQUIRE(pos != std::string::npos);
        tiny.replace(pos, 6, "\"ns\":1");
    } else {
        tiny.replace(pos, 7, "\"ns\": 1");
    }
    CHECK_THROWS_AS(fsc::parse_channel_json(tiny), fsc::Error);
}

TEST_CASE("non-stochastic channel file is rejected with the row name") {
    FscParams f = fsc::fsc_p_qhat(Rat(1, 4));
    std::string text = fsc::channel_to_json(f);
    auto pos = text.find("\"3/4\"");
    REQUIRE(pos != std::string::npos);
    std::string bad = text;
    bad.replace(pos, 5, "\"1/3\"");
    CHECK_THROWS_AS(fsc::parse_channel_json(bad), fsc::RowSumError);
}

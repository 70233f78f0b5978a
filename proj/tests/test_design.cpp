#include "doctest.h"
#include "opdlab/design.hpp"
#include "opdlab/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace opdlab;

namespace {

FieldPtr f8() {
    static FieldPtr F = make_field(2, 3, std::vector<std::uint32_t>{1, 1, 0, 1});
    return F;
}
FieldPtr f16() {
    static FieldPtr F = make_field(2, 4);
    return F;
}
FieldPtr f32() {
    static FieldPtr F = make_field(2, 5);
    return F;
}

// Independent oracle: scan every t-subset directly and count containing
// blocks. Only sane for small v.
struct OracleVerdict {
    bool is_design;
    std::uint64_t lambda;
};

OracleVerdict oracle_verify(const Design& d, std::uint32_t t) {
    std::vector<std::uint32_t> idx(t);
    for (std::uint32_t i = 0; i < t; ++i) idx[i] = i;
    std::optional<std::uint64_t> lambda;
    while (true) {
        std::uint64_t cnt = 0;
        for (const auto& blk : d.blocks()) {
            bool all = true;
            for (auto p : idx)
                if (!blk.test(p)) {
                    all = false;
                    break;
                }
            cnt += all;
        }
        if (!lambda)
            lambda = cnt;
        else if (*lambda != cnt)
            return {false, 0};
        std::int32_t i = std::int32_t(t) - 1;
        while (i >= 0 && idx[i] == d.v() - t + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::uint32_t j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
    return {true, *lambda};
}

// naive image-set via std::set, independent of the stamped fast path
std::set<Elem> oracle_image(const Field& F, const Poly& f, Elem a, Elem b,
                            Elem c) {
    std::set<Elem> img;
    for (Elem x = 0; x < F.q(); ++x)
        img.insert(F.add(F.add(F.mul(a, f.eval(x)), F.mul(b, x)), c));
    return img;
}

}  // namespace

TEST_CASE("block images") {
    SUBCASE("permutation block covers everything") {
        auto blk = block_image(Poly::monomial(f8(), 2), 0, 0);
        CHECK(blk.count() == 8);
    }
    SUBCASE("x^2 + x over GF(8) hits the trace-zero set") {
        auto blk = block_image(Poly::monomial(f8(), 2), 1, 0);
        CHECK(blk.points() == std::vector<std::uint32_t>{0, 2, 4, 6});
    }
    SUBCASE("o-polynomial blocks have size q/2 for every b != 0") {
        auto payne = catalog_poly("payne", f32());
        for (Elem b = 1; b < 32; ++b)
            for (Elem c : {0u, 5u, 31u})
                CHECK(block_image(payne, b, c).count() == 16);
    }
    SUBCASE("extended blocks") {
        auto f = Poly::monomial(f32(), 6);
        CHECK(block_image_extended(f, 0, 3, 1).count() == 32);  // linear
        CHECK(block_image_extended(f, 1, 3, 1) == block_image(f, 3, 1));
        for (Elem a = 1; a < 32; ++a)
            for (Elem b = 1; b < 32; ++b)
                CHECK(block_image_extended(f, a, b, 7).count() == 16);
    }
    SUBCASE("agrees with the set-based oracle") {
        auto cher = catalog_poly("cherowitzo", f32());
        SplitMix64 rng(11);
        for (int i = 0; i < 50; ++i) {
            const Elem a = static_cast<Elem>(rng.below(32));
            const Elem b = static_cast<Elem>(rng.below(32));
            const Elem c = static_cast<Elem>(rng.below(32));
            auto blk = block_image_extended(cher, a, b, c);
            auto img = oracle_image(*f32(), cher, a, b, c);
            CHECK(blk.count() == img.size());
            for (Elem v : img) CHECK(blk.test(v));
        }
    }
}

TEST_CASE("value spectra") {
    SUBCASE("x^2 over GF(8): {8: 8, 4: 56}") {
        auto spec = value_spectrum(Poly::monomial(f8(), 2), false);
        std::map<std::uint32_t, std::uint64_t> expect{{8, 8}, {4, 56}};
        CHECK(spec == expect);
    }
    SUBCASE("x^10 over GF(27): {14: 27, 17: 702}") {
        auto F = make_field(3, 3);
        auto spec = value_spectrum(Poly::monomial(F, 10), false);
        std::map<std::uint32_t, std::uint64_t> expect{{14, 27}, {17, 702}};
        CHECK(spec == expect);
    }
    SUBCASE("multiplicities sum to q^2 (basic) and q^3 (extended)") {
        auto payne = catalog_poly("payne", f32());
        std::uint64_t total = 0;
        for (const auto& [s, n] : value_spectrum(payne, false)) total += n;
        CHECK(total == 32 * 32);
        total = 0;
        for (const auto& [s, n] : value_spectrum(payne, true)) total += n;
        CHECK(total == 32ull * 32 * 32);
    }
    SUBCASE("agrees with a naive double loop on GF(8)") {
        auto f = Poly::monomial(f8(), 6);
        std::map<std::uint32_t, std::uint64_t> naive;
        for (Elem b = 0; b < 8; ++b)
            for (Elem c = 0; c < 8; ++c)
                ++naive[std::uint32_t(oracle_image(*f8(), f, 1, b, c).size())];
        CHECK(value_spectrum(f, false) == naive);
    }
}

TEST_CASE("design construction") {
    SUBCASE("translation design has 2(q-1) blocks") {
        auto d = build_design(Poly::monomial(f32(), 2), 16);
        CHECK(d.b() == 62);
        CHECK(d.v() == 32);
        CHECK(d.k() == 16);
    }
    SUBCASE("Segre design has q(q-1) blocks") {
        CHECK(build_design(Poly::monomial(f32(), 6), 16).b() == 992);
    }
    SUBCASE("no blocks of the requested size") {
        CHECK_THROWS_AS(build_design(Poly::monomial(f32(), 2), 5),
                        std::domain_error);
    }
    SUBCASE("blocks are sorted and unique") {
        auto d = build_design(Poly::monomial(f32(), 6), 16);
        for (std::size_t i = 1; i < d.blocks().size(); ++i)
            CHECK(d.blocks()[i - 1] < d.blocks()[i]);
    }
    SUBCASE("extended construction specializes to the basic one for o-monomials") {
        auto f = Poly::monomial(f32(), 6);
        CHECK(build_design(f, 16).blocks() == build_design(f, 16, true).blocks());
    }
}

TEST_CASE("t-design verification against the subset-scan oracle") {
    struct Case {
        Design d;
        std::uint32_t t;
    };
    std::vector<Case> cases;
    cases.push_back({build_design(Poly::monomial(f8(), 2), 4), 2});
    cases.push_back({build_design(Poly::monomial(f8(), 2), 4), 3});
    cases.push_back({build_design(Poly::monomial(f8(), 3), 5), 2});
    cases.push_back({build_design(Poly::monomial(f16(), 2), 8), 2});
    cases.push_back({build_design(Poly::monomial(f16(), 2), 8), 3});
    cases.push_back({build_design(Poly::monomial(f8(), 6), 4), 3});
    cases.push_back({build_design(catalog_poly("payne", f8()), 4, true), 2});
    for (const auto& [d, t] : cases) {
        auto fast = verify_tdesign(d, t);
        auto slow = oracle_verify(d, t);
        CHECK(fast.is_design == slow.is_design);
        if (fast.is_design) {
            CHECK(fast.lambda == slow.lambda);
            CHECK(design_admissible(d.v(), d.k(), t, d.b(), fast.lambda));
        }
    }
}

TEST_CASE("verification outcomes at q = 32") {
    SUBCASE("translation 3-design") {
        auto d = build_design(Poly::monomial(f32(), 2), 16);
        auto r3 = verify_tdesign(d, 3);
        REQUIRE(r3.is_design);
        CHECK(r3.lambda == 7);  // (q-4)/4
        CHECK(r3.mode == VerifyMode::exhaustive);
        CHECK(verify_tdesign(d, 2).lambda == 15);  // lambda_3 (v-2)/(k-2)
    }
    SUBCASE("Segre 3-design") {
        auto d = build_design(Poly::monomial(f32(), 6), 16);
        auto r3 = verify_tdesign(d, 3);
        REQUIRE(r3.is_design);
        CHECK(r3.lambda == 112);  // q(q-4)/8
        CHECK(verify_tdesign(d, 2).lambda == 240);
    }
    SUBCASE("Cherowitzo: 2-design but not a 3-design, witness checks out") {
        auto d = build_design(catalog_poly("cherowitzo", f32()), 16);
        CHECK(verify_tdesign(d, 2).lambda == 240);
        auto r3 = verify_tdesign(d, 3);
        CHECK_FALSE(r3.is_design);
        REQUIRE(r3.witness.has_value());
        const auto& w = *r3.witness;
        CHECK(w.count_low != w.count_high);
        auto recount = [&](const std::vector<std::uint32_t>& pts) {
            std::uint64_t n = 0;
            for (const auto& blk : d.blocks()) {
                bool all = true;
                for (auto p : pts) all = all && blk.test(p);
                n += all;
            }
            return n;
        };
        CHECK(recount(w.subset_low) == w.count_low);
        CHECK(recount(w.subset_high) == w.count_high);
    }
    SUBCASE("o-monomial designs are not 4-designs") {
        auto d = build_design(Poly::monomial(f32(), 6), 16);
        auto r4 = verify_tdesign(d, 4);
        CHECK_FALSE(r4.is_design);
        CHECK(r4.witness.has_value());
    }
    SUBCASE("thread count does not change the result") {
        auto d = build_design(Poly::monomial(f32(), 6), 16);
        for (unsigned threads : {1u, 2u, 5u}) {
            VerifyOptions opts;
            opts.threads = threads;
            auto r = verify_tdesign(d, 3, opts);
            CHECK(r.is_design);
            CHECK(r.lambda == 112);
        }
    }
}

TEST_CASE("monte-carlo fallback") {
    auto d = build_design(Poly::monomial(f32(), 2), 16);
    VerifyOptions opts;
    opts.counter_cap = 100;  // force the sampling path
    opts.mc_samples = 64;
    opts.seed = 42;
    auto r = verify_tdesign(d, 3, opts);
    CHECK(r.mode == VerifyMode::monte_carlo);
    CHECK(r.is_design);
    CHECK(r.lambda == 7);
    CHECK(r.samples == 64);
    auto r2 = verify_tdesign(d, 3, opts);
    CHECK(r2.lambda == r.lambda);

    SUBCASE("sampling finds a witness for a non-design") {
        auto bad = build_design(catalog_poly("cherowitzo", f32()), 16);
        VerifyOptions o2;
        o2.counter_cap = 100;
        o2.mc_samples = 500;
        o2.seed = 7;
        auto rb = verify_tdesign(bad, 3, o2);
        CHECK(rb.mode == VerifyMode::monte_carlo);
        CHECK_FALSE(rb.is_design);
        CHECK(rb.witness.has_value());
    }
}

TEST_CASE("intersection numbers") {
    SUBCASE("translation design is quasi-symmetric with numbers {0, 8}") {
        auto prof =
            intersection_numbers(build_design(Poly::monomial(f32(), 2), 16));
        CHECK(prof.quasi_symmetric);
        REQUIRE(prof.counts.size() == 2);
        CHECK(prof.counts.begin()->first == 0);
        CHECK(std::next(prof.counts.begin())->first == 8);
    }
    SUBCASE("Segre design has many intersection numbers") {
        auto prof =
            intersection_numbers(build_design(Poly::monomial(f32(), 6), 16));
        CHECK(prof.counts.size() > 2);
        CHECK_FALSE(prof.quasi_symmetric);
        for (const auto& [size, n] : prof.counts) CHECK(size < 16);
    }
}

TEST_CASE("predicted parameters") {
    SUBCASE("d-monomial route at t = 2") {
        auto p = predict_params(Poly::monomial(f8(), 2), 4, 2);
        CHECK(p.v == 8);
        CHECK(p.k == 4);
        CHECK(p.lambda == 3);
        CHECK(p.b == 14);
    }
    SUBCASE("o-monomial route at t = 3, mu = 1, q = 128") {
        auto p = predict_params(Poly::monomial(make_field(2, 7), 6), 1, 3);
        CHECK(p.v == 128);
        CHECK(p.k == 64);
        CHECK(p.lambda == 1984);
        CHECK(p.b == 16256);
    }
    SUBCASE("extended o-polynomial route at t = 3, q = 32") {
        auto p = predict_params(catalog_poly("cherowitzo", f32()), 1, 3, true);
        CHECK(p.lambda == 3472);
        CHECK(p.b == 30752);
    }
    SUBCASE("non-monomial o-polynomial at t = 2") {
        auto p = predict_params(catalog_poly("payne", f32()), 1, 2);
        CHECK(p.lambda == 240);
        CHECK(p.b == 992);
    }
    CHECK_THROWS_AS(predict_params(Poly::monomial(f16(), 3), 1, 2),
                    std::invalid_argument);
}

TEST_CASE("incidence counts") {
    auto cher = catalog_poly("cherowitzo", f32());
    SUBCASE("three points, all scalings: q(q-1)(q-4)/8") {
        CHECK(count_incidences(cher, {1, 2, 3},
                               IncidenceMode::three_point_all) == 3472);
    }
    SUBCASE("fixed scaling, o-monomial: q(q-4)/8") {
        auto f = Poly::monomial(f8(), 2);
        CHECK(count_incidences(f, {1, 2, 3},
                               IncidenceMode::three_point_fixed_a, 1) == 4);
        CHECK(count_incidences(Poly::monomial(f32(), 6), {4, 9, 23},
                               IncidenceMode::three_point_fixed_a, 5) == 112);
    }
    SUBCASE("two points: q(q-2)/4") {
        auto f = catalog_poly("payne", f8());
        CHECK(count_incidences(f, {1, 5}, IncidenceMode::two_point) == 12);
    }
    SUBCASE("agrees with a naive scan on GF(8)") {
        auto f = Poly::monomial(f8(), 2);
        const Field& F = *f8();
        std::uint64_t naive = 0;
        for (Elem b = 1; b < 8; ++b)
            for (Elem c = 0; c < 8; ++c) {
                auto img = oracle_image(F, f, 1, b, c);
                if (img.count(1) && img.count(2) && img.count(3)) ++naive;
            }
        CHECK(count_incidences(f, {1, 2, 3},
                               IncidenceMode::three_point_fixed_a, 1) == naive);
    }
    CHECK_THROWS_AS(
        count_incidences(cher, {1, 1, 2}, IncidenceMode::three_point_all),
        std::invalid_argument);
    CHECK_THROWS_AS(
        count_incidences(cher, {1, 2, 3}, IncidenceMode::three_point_fixed_a),
        std::invalid_argument);  // Cherowitzo is not a monomial
}

TEST_CASE("design export round-trip") {
    auto d = build_design(Poly::monomial(f8(), 2), 4);
    const std::string text = d.to_export_string();
    auto back = Design::from_export_string(text);
    CHECK(back.v() == d.v());
    CHECK(back.k() == d.k());
    CHECK(back.blocks() == d.blocks());
    CHECK(back.to_export_string() == text);

    SUBCASE("hex lines are fixed-width") {
        std::istringstream in(text);
        std::string header, first;
        std::getline(in, header);
        std::getline(in, first);
        CHECK(first.size() == 2);  // 8 points -> 2 nibbles
    }
}

TEST_CASE("complete designs verify at every t up to 4") {
    // all 5-subsets of 8 points form a t-(8, 5, C(8-t, 5-t)) design for
    // every t; exercises the positive t = 4 counting path
    std::vector<Block> blocks;
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = a + 1; b < 8; ++b)
            for (std::uint32_t c = b + 1; c < 8; ++c)
                for (std::uint32_t d = c + 1; d < 8; ++d)
                    for (std::uint32_t e = d + 1; e < 8; ++e) {
                        Block blk(8);
                        for (auto p : {a, b, c, d, e}) blk.set(p);
                        blocks.push_back(std::move(blk));
                    }
    auto design = Design::make(8, 5, std::move(blocks),
                               nlohmann::ordered_json{{"construction", "complete"}});
    CHECK(design.b() == 56);
    for (std::uint32_t t = 1; t <= 4; ++t) {
        auto fast = verify_tdesign(design, t);
        REQUIRE(fast.is_design);
        CHECK(fast.lambda == binomial(8 - t, 5 - t));
        auto slow = oracle_verify(design, t);
        CHECK(slow.is_design);
        CHECK(slow.lambda == fast.lambda);
    }
    // t = k is the trivial case and stays out of range
    CHECK_THROWS_AS(verify_tdesign(design, 5), std::invalid_argument);
}

TEST_CASE("failure witnesses are ordered subsets in range") {
    auto d = build_design(catalog_poly("cherowitzo", f32()), 16);
    auto r3 = verify_tdesign(d, 3);
    REQUIRE(r3.witness.has_value());
    const auto& w = *r3.witness;
    REQUIRE(w.subset_high.size() == 3);
    CHECK(w.subset_low == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(w.subset_high[0] < w.subset_high[1]);
    CHECK(w.subset_high[1] < w.subset_high[2]);
    CHECK(w.subset_high[2] < 32);
}

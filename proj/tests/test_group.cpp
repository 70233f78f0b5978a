#include "doctest.h"
#include "opdlab/group.hpp"
#include "opdlab/conjecture.hpp"

#include <algorithm>
#include <set>

using namespace opdlab;

namespace {

FieldPtr f8() {
    static FieldPtr F = make_field(2, 3, std::vector<std::uint32_t>{1, 1, 0, 1});
    return F;
}
FieldPtr f32() {
    static FieldPtr F = make_field(2, 5);
    return F;
}

Block star_of(const FieldPtr& F, std::uint32_t e) {
    auto js = shift_image_set(F, e);
    Block star(F->q());
    for (auto p : js.points())
        if (p != 0) star.set(p);
    return star;
}

}  // namespace

TEST_CASE("shift image sets") {
    auto js = shift_image_set(f8(), 2);
    CHECK(js.points() == std::vector<std::uint32_t>{0, 2, 4, 6});
    CHECK(shift_image_set(f8(), 3).count() == 5);
    // o-monomial exponents give |J_e| = q/2 with 0 inside
    for (std::uint32_t e : {2u, 4u, 6u, 24u, 26u}) {
        auto j = shift_image_set(f32(), e);
        CHECK(j.count() == 16);
        CHECK(j.test(0));
    }
}

TEST_CASE("stabilizers") {
    SUBCASE("J_2 over GF(32): the q/2 translations by J_2 itself") {
        auto stab = stabilizer(f32(), shift_image_set(f32(), 2));
        CHECK(stab.order == 16);
        auto js = shift_image_set(f32(), 2);
        for (const auto& el : stab.elements) {
            CHECK(el.u == 1);
            CHECK(js.test(el.v));
        }
    }
    SUBCASE("J_6 over GF(32) is rigid") {
        auto stab = stabilizer(f32(), shift_image_set(f32(), 6));
        CHECK(stab.order == 1);
        CHECK(stab.elements[0].u == 1);
        CHECK(stab.elements[0].v == 0);
    }
    SUBCASE("the full point set is fixed by the whole group") {
        Block all(32);
        for (std::uint32_t i = 0; i < 32; ++i) all.set(i);
        CHECK(stabilizer(f32(), all).order == 32 * 31);
    }
    SUBCASE("stabilizer elements form a subgroup") {
        const Field& F = *f32();
        for (std::uint32_t e : {2u, 3u, 6u}) {
            auto stab = stabilizer(f32(), shift_image_set(f32(), e));
            std::set<std::pair<Elem, Elem>> members;
            for (const auto& el : stab.elements) members.insert({el.u, el.v});
            CHECK(members.count({1, 0}) == 1);  // identity
            for (const auto& a : stab.elements)
                for (const auto& b : stab.elements) {
                    Elem u = F.mul(a.u, b.u);
                    Elem v = F.add(F.mul(a.u, b.v), a.v);
                    CHECK(members.count({u, v}) == 1);
                }
            for (const auto& a : stab.elements) {
                Elem ui = F.inv(a.u);
                CHECK(members.count({ui, F.mul(ui, F.neg(a.v))}) == 1);
            }
        }
    }
}

TEST_CASE("group fixes block sets") {
    SUBCASE("the affine group fixes monomial designs") {
        CHECK(group_fixes_blockset(
            PointGroup::affine, build_design(Poly::monomial(f32(), 6), 16)));
        CHECK(group_fixes_blockset(
            PointGroup::affine, build_design(Poly::monomial(f8(), 3), 5)));
    }
    SUBCASE("the semilinear group fixes the Segre design") {
        CHECK(group_fixes_blockset(
            PointGroup::semilinear, build_design(Poly::monomial(f32(), 6), 16)));
    }
    SUBCASE("the Cherowitzo 2-design is not affine-invariant") {
        CHECK_FALSE(group_fixes_blockset(
            PointGroup::affine,
            build_design(catalog_poly("cherowitzo", f32()), 16)));
    }
    SUBCASE("designs off the field point set are rejected") {
        auto fano = develop(f8(), [] {
            auto js = shift_image_set(f8(), 2);
            Block star(8);
            for (auto p : js.points())
                if (p != 0) star.set(p);
            return star;
        }(), GroupKind::multiplicative);
        CHECK(fano.v() == 7);  // lives on GF(8)^*, not GF(8)
        CHECK_THROWS_AS(group_fixes_blockset(PointGroup::affine, fano),
                        std::invalid_argument);
    }
}

TEST_CASE("affine variants") {
    auto F = f32();
    SUBCASE("the shifted Segre trinomial") {
        auto f = Poly::monomial(F, 6);
        auto g = Poly::from_terms(F, {{6, 1}, {4, 1}, {2, 1}});
        auto w = affine_variant(f, g);
        REQUIRE(w.has_value());
        CHECK(w->h == 1);
        CHECK(w->u == 1);
        CHECK(w->v == 1);
        CHECK(w->c == 1);
        CHECK_FALSE(w->basic_form);  // needs the +c extension
        const Field& K = *F;
        for (Elem x = 0; x < 32; ++x)
            CHECK(g.eval(x) ==
                  K.add(K.mul(w->h, f.eval(K.add(K.mul(w->u, x), w->v))),
                        w->c));
    }
    SUBCASE("identity") {
        auto f = catalog_poly("payne", F);
        auto w = affine_variant(f, f);
        REQUIRE(w.has_value());
        CHECK(w->basic_form);
        CHECK(w->h == 1);
        CHECK(w->u == 1);
        CHECK(w->v == 0);
        CHECK(w->c == 0);
    }
    SUBCASE("no witness between inequivalent polynomials") {
        CHECK_FALSE(
            affine_variant(Poly::monomial(F, 2), Poly::monomial(F, 6)));
    }
}

TEST_CASE("fingerprints and isomorphy") {
    SUBCASE("x^2 vs x^(q-2): different invariants certify non-isomorphism") {
        auto d2 = build_design(Poly::monomial(f32(), 2), 16);
        auto d30 = build_design(Poly::monomial(f32(), 30), 16);
        CHECK(d2.b() == 62);
        CHECK(d30.b() == 992);
        CHECK_FALSE(fingerprint(d2) == fingerprint(d30));
        CHECK(design_isomorphy(d2, d30).verdict ==
              IsomorphyVerdict::non_isomorphic);
    }
    SUBCASE("x^2 vs x^16 = x^(1/2): identical designs, certified isomorphic") {
        auto a = build_design(Poly::monomial(f32(), 2), 16);
        auto b = build_design(Poly::monomial(f32(), 16), 16);
        CHECK(a.blocks() == b.blocks());  // J_e = J_(1/e) exactly
        CHECK(fingerprint(a) == fingerprint(b));
        auto iso = design_isomorphy(a, b);
        CHECK(iso.verdict == IsomorphyVerdict::isomorphic_certified);
    }
    SUBCASE("x^6 vs x^26 = x^(1/6)") {
        auto a = build_design(Poly::monomial(f32(), 6), 16);
        auto b = build_design(Poly::monomial(f32(), 26), 16);
        CHECK(fingerprint(a) == fingerprint(b));
        CHECK(design_isomorphy(a, b).verdict ==
              IsomorphyVerdict::isomorphic_certified);
    }
    SUBCASE("reflexivity and digest stability") {
        auto d = build_design(Poly::monomial(f8(), 2), 4);
        auto fp = fingerprint(d);
        CHECK(fp == fingerprint(d));
        CHECK(fp.digest() == fingerprint(d).digest());
    }
}

TEST_CASE("difference sets") {
    SUBCASE("J_2^* over GF(8) is the Fano-parameter Singer set") {
        auto params =
            is_difference_set(f8(), star_of(f8(), 2), GroupKind::multiplicative);
        REQUIRE(params.has_value());
        CHECK(params->v == 7);
        CHECK(params->k == 3);
        CHECK(params->lambda == 1);
    }
    SUBCASE("J_6^* over GF(32) gives (31, 15, 7)") {
        auto params = is_difference_set(f32(), star_of(f32(), 6),
                                        GroupKind::multiplicative);
        REQUIRE(params.has_value());
        CHECK(params->v == 31);
        CHECK(params->k == 15);
        CHECK(params->lambda == 7);
    }
    SUBCASE("J_2 + 1 over GF(32) gives (31, 16, 8)") {
        const Field& F = *f32();
        auto js = shift_image_set(f32(), 2);
        Block shifted(32);
        for (auto p : js.points()) shifted.set(F.add(p, 1));
        CHECK_FALSE(shifted.test(0));  // 1 is not in J_2 when m is odd
        auto params =
            is_difference_set(f32(), shifted, GroupKind::multiplicative);
        REQUIRE(params.has_value());
        CHECK(params->v == 31);
        CHECK(params->k == 16);
        CHECK(params->lambda == 8);
    }
    SUBCASE("non-o-monomial exponents fail") {
        CHECK_FALSE(is_difference_set(f32(), star_of(f32(), 7),
                                      GroupKind::multiplicative));
    }
    SUBCASE("zero in a multiplicative subset is rejected") {
        CHECK_THROWS_AS(is_difference_set(f32(), shift_image_set(f32(), 2),
                                          GroupKind::multiplicative),
                        std::invalid_argument);
    }
    SUBCASE("Maschietti equivalence, both directions, m in {3, 5}") {
        for (std::uint32_t m : {3u, 5u}) {
            auto K = make_field(2, m);
            const std::uint32_t n = K->q() - 1;
            for (std::uint32_t e = 2; e < n; ++e) {
                if (detail::gcd_u64(std::uint64_t(e) * (e - 1), n) != 1)
                    continue;
                auto params = is_difference_set(K, star_of(K, e),
                                                GroupKind::multiplicative);
                const bool opoly = is_opolynomial(Poly::monomial(K, e));
                const bool singer = params && params->v == n &&
                                    params->k == (K->q() - 2) / 2 &&
                                    params->lambda == (K->q() - 4) / 4;
                CAPTURE(m);
                CAPTURE(e);
                CHECK(opoly == singer);
            }
        }
    }
}

TEST_CASE("developments") {
    SUBCASE("J_2^* over GF(8) develops to the Fano plane") {
        auto fano = develop(f8(), star_of(f8(), 2), GroupKind::multiplicative);
        CHECK(fano.v() == 7);
        CHECK(fano.b() == 7);  // symmetric
        auto r = verify_tdesign(fano, 2);
        REQUIRE(r.is_design);
        CHECK(r.lambda == 1);  // Steiner triple system
    }
    SUBCASE("squares develop to the Paley design over GF(27)") {
        auto F = make_field(3, 3);
        Block squares(27);
        for (Elem x = 0; x < 27; ++x) squares.set(F->mul(x, x));
        CHECK(squares.count() == 14);
        auto paley = develop(F, squares, GroupKind::additive);
        CHECK(paley.v() == 27);
        CHECK(paley.b() == 27);
        auto r = verify_tdesign(paley, 2);
        REQUIRE(r.is_design);
        CHECK(r.lambda == 7);
        // the same design arises from x^2 + bx + c
        auto direct = build_design(Poly::monomial(F, 2), 14);
        CHECK(direct.blocks() == paley.blocks());
    }
    SUBCASE("non-difference-sets are rejected") {
        Block bad(32);
        bad.set(1);
        bad.set(2);
        bad.set(4);
        CHECK_THROWS_AS(develop(f32(), bad, GroupKind::multiplicative),
                        std::domain_error);
    }
}

TEST_CASE("walsh spectra") {
    SUBCASE("m=5, e=6: values in {0, +-8} split by Tr(beta^6)") {
        auto rep = walsh_check(f32(), 6);
        CHECK(rep.ell == 6);  // 5 * 26 mod 31
        CHECK(rep.magnitude == 8);
        CHECK(rep.pattern_ok);
        CHECK(rep.parseval_ok);
        CHECK(rep.spectrum[0] == 0);  // q - 2|J_e|
        for (auto v : rep.spectrum) CHECK((v == 0 || v == 8 || v == -8));
    }
    SUBCASE("m=5, e=24") {
        auto rep = walsh_check(f32(), 24);
        CHECK(rep.pattern_ok);
        CHECK(rep.parseval_ok);
    }
    SUBCASE("m=7, e=6: magnitude 16") {
        auto rep = walsh_check(make_field(2, 7), 6);
        CHECK(rep.magnitude == 16);
        CHECK(rep.pattern_ok);
        CHECK(rep.parseval_ok);
    }
    SUBCASE("hypothesis violations") {
        CHECK_THROWS_AS(walsh_check(make_field(2, 4), 6),
                        std::invalid_argument);  // m even
        CHECK_THROWS_AS(walsh_check(f32(), 7), std::invalid_argument);
        CHECK_THROWS_AS(walsh_check(f32(), 3), std::invalid_argument);
    }
}

TEST_CASE("o-monomial 3-design lambda matches q(q-4)/(8 mu) at m in {3,5,7}") {
    for (std::uint32_t m : {3u, 5u, 7u}) {
        auto K = make_field(2, m);
        const std::uint32_t q = K->q();
        const std::uint32_t n = q - 1;
        for (std::uint32_t e = 2; e < n; ++e) {
            if (detail::gcd_u64(std::uint64_t(e) * (e - 1), n) != 1) continue;
            if (!is_opolynomial(Poly::monomial(K, e))) continue;
            const std::uint64_t mu =
                stabilizer(K, shift_image_set(K, e)).order;
            auto d = build_design(Poly::monomial(K, e), q / 2);
            auto r = verify_tdesign(d, 3);
            CAPTURE(m);
            CAPTURE(e);
            REQUIRE(r.is_design);
            CHECK(std::uint64_t(q) * (q - 4) % (8 * mu) == 0);
            CHECK(r.lambda == std::uint64_t(q) * (q - 4) / (8 * mu));
            CHECK(d.b() == std::uint64_t(q) * (q - 1) / mu);
            if (m <= 5) {
                // a 3-design is a 2-design with lambda_2 = lambda_3 (v-2)/(k-2)
                auto r2 = verify_tdesign(d, 2);
                REQUIRE(r2.is_design);
                CHECK(r2.lambda * (d.k() - 2) == r.lambda * (d.v() - 2));
            }
        }
    }
}

TEST_CASE("o-polynomial blocks have size q/2 over all parameters, m <= 7") {
    for (std::uint32_t m : {3u, 5u, 7u}) {
        auto K = make_field(2, m);
        const std::uint32_t q = K->q();
        auto f = catalog_poly(m == 3 ? "payne" : "cherowitzo", K);
        auto tab = f.table();
        std::vector<std::uint32_t> stamp(q, 0);
        std::uint32_t gen = 0;
        // basic: all b != 0; extended: all a, b != 0 (c shifts preserve size)
        for (Elem a = 1; a < q; ++a)
            for (Elem b = 1; b < q; ++b) {
                ++gen;
                std::uint32_t size = 0;
                for (Elem x = 0; x < q; ++x) {
                    Elem v = K->add(K->mul(a, tab[x]), K->mul(b, x));
                    if (stamp[v] != gen) {
                        stamp[v] = gen;
                        ++size;
                    }
                }
                if (size != q / 2) {
                    CAPTURE(m);
                    CAPTURE(a);
                    CAPTURE(b);
                    REQUIRE(size == q / 2);
                }
            }
    }
}

TEST_CASE("conjecture harness") {
    SUBCASE("C-blockcount at m = 5") {
        auto cases = run_conjecture(ConjectureId::blockcount, {5});
        CHECK(cases.size() == 6);
        for (const auto& c : cases) {
            CAPTURE(c.instance);
            CHECK(c.verdict == Verdict::holds);
        }
    }
    SUBCASE("C-stabilizer at m = 5") {
        auto cases = run_conjecture(ConjectureId::stabilizer, {5});
        CHECK_FALSE(cases.empty());
        std::set<std::string> seen;
        for (const auto& c : cases) {
            CHECK(c.verdict == Verdict::holds);
            seen.insert(c.instance);
        }
        CHECK(seen.count("6") == 1);
        CHECK(seen.count("30") == 1);  // q-2, not a power of two
        CHECK(seen.count("2") == 0);   // translation exponents excluded
    }
    SUBCASE("C-x10 at m = 3") {
        auto cases = run_conjecture(ConjectureId::x10, {3});
        REQUIRE(cases.size() == 1);
        CHECK(cases[0].verdict == Verdict::holds);
        CHECK(x10_block_size(3) == 17);
        CHECK(x10_block_size(5) == 152);
    }
    SUBCASE("C-extended at m = 5") {
        auto cases = run_conjecture(ConjectureId::extended, {5});
        REQUIRE(cases.size() == 3);
        for (const auto& c : cases) CHECK(c.verdict == Verdict::holds);
    }
    SUBCASE("budget exhaustion is reported, never truncated") {
        Budget tight;
        tight.t2_max_q = 16;
        auto cases = run_conjecture(ConjectureId::x10, {3}, tight);
        REQUIRE(cases.size() == 1);
        CHECK(cases[0].verdict == Verdict::skipped);
        CHECK(cases[0].details.contains("reason"));
    }
}

#include "opdlab/conjecture.hpp"

#include <bit>

#include "opdlab/design.hpp"
#include "opdlab/group.hpp"
#include "opdlab/poly.hpp"

namespace opdlab {

const char* conjecture_name(ConjectureId id) {
    switch (id) {
        case ConjectureId::blockcount: return "C-blockcount";
        case ConjectureId::stabilizer: return "C-stabilizer";
        case ConjectureId::x10: return "C-x10";
        case ConjectureId::extended: return "C-extended";
    }
    return "?";
}

ConjectureId conjecture_from_name(const std::string& name) {
    if (name == "C-blockcount") return ConjectureId::blockcount;
    if (name == "C-stabilizer") return ConjectureId::stabilizer;
    if (name == "C-x10") return ConjectureId::x10;
    if (name == "C-extended") return ConjectureId::extended;
    throw std::invalid_argument("unknown conjecture id: " + name);
}

nlohmann::ordered_json ConjectureCase::to_json() const {
    nlohmann::ordered_json j;
    j["conjecture"] = conjecture_name(id);
    j["m"] = m;
    j["instance"] = instance;
    j["verdict"] = verdict == Verdict::holds   ? "holds"
                   : verdict == Verdict::fails ? "fails"
                                               : "skipped";
    if (!details.is_null()) j["details"] = details;
    return j;
}

std::uint64_t x10_block_size(std::uint32_t m) {
    if (m % 2 == 0) throw std::invalid_argument("recurrence is for odd m");
    std::uint64_t k = 2, q = 3;  // k_1, 3^1
    for (std::uint32_t mm = 3; mm <= m; mm += 2) {
        q *= 9;
        k = (q + 1) / 2 + q / 3 - 3 * k;
    }
    return k;
}

namespace {

ConjectureCase skipped_case(ConjectureId id, std::uint32_t m,
                            std::string instance, std::string reason) {
    ConjectureCase c{id, m, std::move(instance), Verdict::skipped, {}};
    c.details["reason"] = std::move(reason);
    return c;
}

void run_blockcount(std::vector<ConjectureCase>& out, std::uint32_t m,
                    const Budget& budget) {
    if (m < 3 || m % 2 == 0) {
        out.push_back(skipped_case(ConjectureId::blockcount, m, "*",
                                   "families need odd m >= 3"));
        return;
    }
    const std::uint64_t q = std::uint64_t(1) << m;
    if (q > budget.blockcount_max_q) {
        out.push_back(skipped_case(ConjectureId::blockcount, m, "*",
                                   "q exceeds block-count budget"));
        return;
    }
    auto field = make_field(2, m);
    for (const char* fam : {"segre", "glynn1", "glynn2", "cherowitzo",
                            "payne", "subiaco1"}) {
        const Poly f = catalog_poly(fam, field);
        const Design d = build_design(f, field->q() / 2);
        const std::uint64_t expected = std::uint64_t(field->q()) * (field->q() - 1);
        ConjectureCase c{ConjectureId::blockcount, m, fam, Verdict::holds, {}};
        c.details["expected_b"] = expected;
        c.details["b"] = d.b();
        if (d.b() != expected) c.verdict = Verdict::fails;
        out.push_back(std::move(c));
    }
}

void run_stabilizer(std::vector<ConjectureCase>& out, std::uint32_t m,
                    const Budget& budget) {
    if (m < 3 || m % 2 == 0) {
        out.push_back(skipped_case(ConjectureId::stabilizer, m, "*",
                                   "o-monomials need odd m >= 3"));
        return;
    }
    const std::uint64_t q = std::uint64_t(1) << m;
    if (q > budget.t3_max_q) {
        out.push_back(skipped_case(ConjectureId::stabilizer, m, "*",
                                   "q exceeds stabilizer budget"));
        return;
    }
    auto field = make_field(2, m);
    const std::uint32_t n = field->q() - 1;
    for (std::uint32_t e = 2; e < n; ++e) {
        if (detail::gcd_u64(std::uint64_t(e) * (e - 1), n) != 1) continue;
        if (std::popcount(e) == 1) continue;  // translation exponents excluded
        if (!is_opolynomial(Poly::monomial(field, e))) continue;
        const auto stab = stabilizer(field, shift_image_set(field, e));
        ConjectureCase c{ConjectureId::stabilizer, m, std::to_string(e),
                         Verdict::holds, {}};
        c.details["mu"] = stab.order;
        if (stab.order != 1) {
            c.verdict = Verdict::fails;
            auto arr = nlohmann::ordered_json::array();
            for (const auto& el : stab.elements) arr.push_back({el.u, el.v});
            c.details["stabilizer_elements"] = std::move(arr);
        }
        out.push_back(std::move(c));
    }
}

void run_x10(std::vector<ConjectureCase>& out, std::uint32_t m,
             const Budget& budget) {
    if (m % 2 == 0 || m < 3) {
        out.push_back(
            skipped_case(ConjectureId::x10, m, "x^10", "recurrence needs odd m"));
        return;
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) q *= 3;
    if (q > budget.t2_max_q) {
        out.push_back(skipped_case(ConjectureId::x10, m, "x^10",
                                   "q exceeds t=2 budget"));
        return;
    }
    auto field = make_field(3, m);
    const Poly f = Poly::monomial(field, 10);
    const std::uint32_t paley_k = static_cast<std::uint32_t>((q + 1) / 2);
    const std::uint32_t twin_k = static_cast<std::uint32_t>(x10_block_size(m));

    ConjectureCase c{ConjectureId::x10, m, "x^10", Verdict::holds, {}};
    const auto spectrum = value_spectrum(f, false);
    std::map<std::uint32_t, std::uint64_t> expected_spectrum{
        {paley_k, q}, {twin_k, q * (q - 1)}};
    c.details["spectrum"] = nlohmann::ordered_json::object();
    for (const auto& [size, mult] : spectrum)
        c.details["spectrum"][std::to_string(size)] = mult;
    if (spectrum != expected_spectrum) {
        c.verdict = Verdict::fails;
        c.details["expected_spectrum"] = {{std::to_string(paley_k), q},
                                          {std::to_string(twin_k), q * (q - 1)}};
        out.push_back(std::move(c));
        return;
    }

    // the small-block design is the Paley development of the squares
    const Design paley = build_design(f, paley_k);
    auto res2 = verify_tdesign(paley, 2, {budget.counter_cap,
                                          budget.mc_samples});
    const bool paley_ok = res2.is_design && res2.lambda == (q + 1) / 4 &&
                          paley.b() == q;
    c.details["paley"] = {{"b", paley.b()},
                          {"lambda",
                           res2.is_design ? nlohmann::ordered_json(res2.lambda)
                                          : nlohmann::ordered_json(nullptr)}};

    Block squares(field->q());
    for (Elem x = 0; x < field->q(); ++x)
        squares.set(field->mul(x, x));  // squares plus zero
    const Design dev = develop(field, squares, GroupKind::additive);
    const bool dev_match = dev.blocks() == paley.blocks();
    c.details["paley_is_square_development"] = dev_match;

    const Design twin = build_design(f, twin_k);
    auto twin2 = verify_tdesign(twin, 2, {budget.counter_cap,
                                          budget.mc_samples});
    const bool twin_ok = twin2.is_design &&
                         twin2.lambda == std::uint64_t(twin_k) * (twin_k - 1) / 2 &&
                         twin.b() == q * (q - 1) / 2;
    c.details["twin"] = {{"k", twin_k},
                         {"b", twin.b()},
                         {"lambda",
                          twin2.is_design ? nlohmann::ordered_json(twin2.lambda)
                                          : nlohmann::ordered_json(nullptr)}};
    if (!paley_ok || !dev_match || !twin_ok) c.verdict = Verdict::fails;
    out.push_back(std::move(c));
}

void run_extended(std::vector<ConjectureCase>& out, std::uint32_t m,
                  const Budget& budget) {
    if (m < 5 || m % 2 == 0) {
        out.push_back(skipped_case(ConjectureId::extended, m, "*",
                                   "conjecture is stated for odd m >= 5"));
        return;
    }
    const std::uint64_t q = std::uint64_t(1) << m;
    if (q > budget.ext_count_max_q) {
        out.push_back(skipped_case(ConjectureId::extended, m, "*",
                                   "q exceeds the extended-count budget"));
        return;
    }
    auto field = make_field(2, m);
    for (const char* fam : {"cherowitzo", "payne", "subiaco1"}) {
        const Poly f = catalog_poly(fam, field);
        const Design d = build_design(f, field->q() / 2, /*extended=*/true);
        const std::uint64_t expected =
            std::uint64_t(field->q()) * (field->q() - 1) * (field->q() - 1);
        ConjectureCase c{ConjectureId::extended, m, fam, Verdict::holds, {}};
        c.details["expected_b"] = expected;
        c.details["b"] = d.b();
        if (d.b() != expected) c.verdict = Verdict::fails;
        out.push_back(std::move(c));
    }
}

}  // namespace

std::vector<ConjectureCase> run_conjecture(ConjectureId id,
                                           const std::vector<std::uint32_t>& ms,
                                           const Budget& budget,
                                           std::uint64_t) {
    std::vector<ConjectureCase> out;
    for (auto m : ms) {
        switch (id) {
            case ConjectureId::blockcount: run_blockcount(out, m, budget); break;
            case ConjectureId::stabilizer: run_stabilizer(out, m, budget); break;
            case ConjectureId::x10: run_x10(out, m, budget); break;
            case ConjectureId::extended: run_extended(out, m, budget); break;
        }
    }
    return out;
}

}  // namespace opdlab

#include "opdlab/poly.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace opdlab {

namespace {

void require_same_field(const Poly& f, const FieldPtr& F) {
    if (!f.field()->same_as(*F))
        throw std::invalid_argument("polynomial fields differ");
}

// |{f(x) + bx}| via a generation-stamped occupancy array.
struct ImageSizer {
    explicit ImageSizer(std::uint32_t q) : stamp(q, 0) {}
    std::vector<std::uint32_t> stamp;
    std::uint32_t gen = 0;

    template <typename Fn>
    std::uint32_t size(std::uint32_t q, Fn&& value) {
        ++gen;
        std::uint32_t n = 0;
        for (std::uint32_t x = 0; x < q; ++x) {
            Elem v = value(x);
            if (stamp[v] != gen) {
                stamp[v] = gen;
                ++n;
            }
        }
        return n;
    }
};

}  // namespace

Poly Poly::monomial(FieldPtr field, std::uint64_t e, Elem coeff) {
    return from_terms(std::move(field), {{e, coeff}});
}

Poly Poly::constant(FieldPtr field, Elem c) {
    return from_terms(std::move(field), {{0, c}});
}

Poly Poly::from_terms(FieldPtr field,
                      const std::vector<std::pair<std::uint64_t, Elem>>& raw,
                      std::string name) {
    const Field& F = *field;
    std::map<std::uint32_t, Elem> acc;
    for (const auto& [e, c] : raw) {
        if (c >= F.q()) throw std::invalid_argument("coefficient out of range");
        if (c == 0) continue;
        std::uint32_t er = e == 0 ? 0 : F.reduce_exponent(e);
        auto [it, fresh] = acc.emplace(er, c);
        if (!fresh) it->second = F.add(it->second, c);
    }
    std::vector<Term> terms;
    for (const auto& [e, c] : acc)
        if (c != 0) terms.emplace_back(e, c);
    return Poly(std::move(field), std::move(terms), {}, std::move(name));
}

Poly Poly::from_table(FieldPtr field, std::vector<Elem> values,
                      std::string name) {
    if (values.size() != field->q())
        throw std::invalid_argument("value table must have q entries");
    return Poly(std::move(field), {}, std::move(values), std::move(name));
}

Poly Poly::named(std::string n) const {
    return Poly(field_, terms_, table_, std::move(n));
}

std::optional<std::uint32_t> Poly::monomial_exponent() const {
    if (!table_.empty()) return std::nullopt;
    if (terms_.size() == 1 && terms_[0].second == 1 && terms_[0].first >= 1)
        return terms_[0].first;
    return std::nullopt;
}

Elem Poly::eval(Elem x) const {
    if (!table_.empty()) return table_[x];
    const Field& F = *field_;
    Elem r = 0;
    for (const auto& [e, c] : terms_)
        r = F.add(r, F.mul(c, F.pow(x, e)));
    return r;
}

std::vector<Elem> Poly::table() const {
    if (!table_.empty()) return table_;
    const std::uint32_t q = field_->q();
    std::vector<Elem> t(q);
    for (Elem x = 0; x < q; ++x) t[x] = eval(x);
    return t;
}

std::vector<Poly::Term> Poly::terms() const {
    if (table_.empty()) return terms_;
    // Lagrange interpolation over all of GF(q). With M(x) = x^q - x,
    // M'(a) = -1 for every a, so f = sum_a (-y_a) * (M(x)/(x - a)).
    const Field& F = *field_;
    const std::uint32_t q = F.q();
    std::vector<Elem> res(q, 0);
    std::vector<Elem> quot(q);  // M(x)/(x - a), degree q-1
    const Elem minus_one = F.neg(1);
    for (Elem a = 0; a < q; ++a) {
        const Elem y = table_[a];
        if (y == 0) continue;
        quot[q - 1] = 1;  // leading coefficient of M
        for (std::uint32_t j = q - 1; j >= 1; --j) {
            Elem cj = j == 1 ? minus_one : 0;  // M = x^q - x
            quot[j - 1] = F.add(cj, F.mul(a, quot[j]));
        }
        const Elem w = F.neg(y);
        for (std::uint32_t j = 0; j < q; ++j)
            res[j] = F.add(res[j], F.mul(w, quot[j]));
    }
    std::vector<Term> out;
    for (std::uint32_t e = 0; e < q; ++e)
        if (res[e] != 0) out.emplace_back(e, res[e]);
    return out;
}

nlohmann::ordered_json Poly::to_json() const {
    nlohmann::ordered_json j;
    if (!name_.empty()) j["name"] = name_;
    auto ts = terms();
    if (ts.size() == 1 && ts[0].second == 1 && ts[0].first >= 1) {
        j["monomial"] = ts[0].first;
    } else {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [e, c] : ts) arr.push_back({e, c});
        j["terms"] = std::move(arr);
    }
    j["field"] = field_->describe();
    return j;
}

Poly Poly::from_json(const nlohmann::json& j, FieldPtr field) {
    if (!field) field = field_from_json(j.at("field"));
    std::string name = j.value("name", std::string{});
    if (j.contains("monomial"))
        return monomial(field, j.at("monomial").get<std::uint64_t>())
            .named(std::move(name));
    std::vector<std::pair<std::uint64_t, Elem>> ts;
    for (const auto& t : j.at("terms"))
        ts.emplace_back(t.at(0).get<std::uint64_t>(), t.at(1).get<Elem>());
    return from_terms(field, ts, std::move(name));
}

bool functionally_equal(const Poly& f, const Poly& g) {
    require_same_field(g, f.field());
    const std::uint32_t q = f.field()->q();
    for (Elem x = 0; x < q; ++x)
        if (f.eval(x) != g.eval(x)) return false;
    return true;
}

bool is_permutation(const Poly& f) {
    const std::uint32_t q = f.field()->q();
    std::vector<bool> seen(q, false);
    for (Elem x = 0; x < q; ++x) {
        Elem v = f.eval(x);
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Poly comp_inverse(const Poly& f) {
    if (!is_permutation(f)) throw std::domain_error("not a permutation");
    const std::uint32_t q = f.field()->q();
    std::vector<Elem> inv(q);
    auto tab = f.table();
    for (Elem x = 0; x < q; ++x) inv[tab[x]] = x;
    std::string name = f.name().empty() ? std::string{} : f.name() + "^-1";
    return Poly::from_table(f.field(), std::move(inv), std::move(name));
}

bool is_opolynomial(const Poly& f) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    if (q % 2 != 0) return false;
    auto tab = f.table();
    const Elem f0 = tab[0];
    if (f0 != 0)
        for (auto& v : tab) v = F.sub(v, f0);

    std::vector<bool> seen(q, false);
    for (Elem x = 0; x < q; ++x) {
        if (seen[tab[x]]) return false;
        seen[tab[x]] = true;
    }
    std::vector<std::uint8_t> fiber(q);
    for (Elem u = 1; u < q; ++u) {
        std::fill(fiber.begin(), fiber.end(), 0);
        std::uint32_t distinct = 0;
        for (Elem x = 0; x < q; ++x) {
            Elem v = F.add(tab[x], F.mul(u, x));
            if (++fiber[v] == 1)
                ++distinct;
            else if (fiber[v] > 2)
                return false;
        }
        if (distinct != q / 2) return false;
    }
    return true;
}

DesignPolyResult is_design_poly(const Poly& f) {
    if (!is_permutation(f)) throw std::invalid_argument("not a permutation");
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    auto tab = f.table();
    ImageSizer sizer(q);
    std::uint32_t common = 0;
    for (Elem b = 1; b < q; ++b) {
        std::uint32_t s =
            sizer.size(q, [&](Elem x) { return F.add(tab[x], F.mul(b, x)); });
        if (b == 1)
            common = s;
        else if (s != common)
            return {false, 0};
    }
    return {true, common};
}

TwinMonomialResult is_twin_monomial(std::uint64_t e, const FieldPtr& field) {
    const Field& F = *field;
    if (F.p() == 2) throw std::invalid_argument("twin monomials require odd q");
    const std::uint32_t q = F.q();
    std::uint32_t er = F.reduce_exponent(e);
    if (detail::gcd_u64(er, q - 1) != 1)
        throw std::invalid_argument("gcd(e, q-1) != 1");
    std::vector<Elem> tab(q);
    for (Elem x = 0; x < q; ++x) tab[x] = F.pow(x, er);
    ImageSizer sizer(q);
    std::set<std::uint32_t> sizes;
    for (Elem b = 1; b < q; ++b)
        sizes.insert(
            sizer.size(q, [&](Elem x) { return F.add(tab[x], F.mul(b, x)); }));
    TwinMonomialResult r;
    r.sizes.assign(sizes.begin(), sizes.end());
    r.is_twin = r.sizes.size() == 2;
    return r;
}

namespace {

void require_opolynomial(const Poly& f) {
    if (!is_opolynomial(f)) throw std::domain_error("not an o-polynomial");
}

Poly normalized_at_zero(const Poly& f) {
    const Elem f0 = f.eval(0);
    if (f0 == 0) return f;
    const Field& F = *f.field();
    auto tab = f.table();
    for (auto& v : tab) v = F.sub(v, f0);
    return Poly::from_table(f.field(), std::move(tab), f.name());
}

}  // namespace

Poly opoly_inverse(const Poly& f) {
    require_opolynomial(f);
    return comp_inverse(normalized_at_zero(f));
}

Poly opoly_frobenius_twist(const Poly& f, std::uint32_t j) {
    require_opolynomial(f);
    const Field& F = *f.field();
    if (j < 1 || j >= F.m())
        throw std::invalid_argument("twist index out of range");
    const std::uint32_t q = F.q();
    std::vector<Elem> tab(q);
    const std::int64_t outer = std::int64_t(1) << (F.m() - j);
    for (Elem x = 0; x < q; ++x)
        tab[x] = F.pow(f.eval(F.pow(x, std::int64_t(1) << j)), outer);
    return Poly::from_table(f.field(), std::move(tab));
}

Poly opoly_bar(const Poly& f) {
    require_opolynomial(f);
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    if (!f.table_backed()) {
        // term-wise: c x^e -> c x^(1 + e(q-2))
        std::vector<std::pair<std::uint64_t, Elem>> ts;
        for (const auto& [e, c] : f.terms())
            ts.emplace_back(1 + std::uint64_t(e) * (q - 2), c);
        return Poly::from_terms(f.field(), ts);
    }
    std::vector<Elem> tab(q, 0);
    for (Elem x = 1; x < q; ++x) tab[x] = F.mul(x, f.eval(F.inv(x)));
    return Poly::from_table(f.field(), std::move(tab));
}

Poly opoly_shift(const Poly& f) {
    require_opolynomial(f);
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    const Elem f1 = f.eval(1);
    std::vector<Elem> tab(q);
    for (Elem x = 0; x < q; ++x) tab[x] = F.add(f.eval(F.add(x, 1)), f1);
    return Poly::from_table(f.field(), std::move(tab));
}

ExponentOrbit exponent_orbit(std::uint64_t e, const FieldPtr& field) {
    const Field& F = *field;
    const std::uint32_t n = F.q() - 1;
    const std::uint32_t er = F.reduce_exponent(e);
    if (er == n || detail::gcd_u64(std::uint64_t(er) * (er - 1), n) != 1)
        throw std::invalid_argument("gcd(e(e-1), q-1) != 1");
    const std::uint64_t ie = F.exponent_inverse(er);
    const std::uint32_t one_minus = (n + 1 - er) % n;
    const std::uint64_t em1 = er - 1;
    std::set<std::uint32_t> mem{
        er,
        static_cast<std::uint32_t>(ie),
        one_minus,
        F.exponent_inverse(one_minus),
        static_cast<std::uint32_t>(std::uint64_t(er) *
                                   F.exponent_inverse(em1) % n),
        static_cast<std::uint32_t>(em1 * ie % n),
    };
    ExponentOrbit orbit;
    orbit.base = er;
    orbit.members.assign(mem.begin(), mem.end());
    return orbit;
}

namespace {

void require_odd_m(const Field& F, const char* family) {
    if (F.p() != 2 || F.m() < 3 || F.m() % 2 == 0)
        throw std::invalid_argument(std::string(family) +
                                    " requires q = 2^m with odd m >= 3");
}

Poly make_subiaco(const FieldPtr& field, Elem a) {
    const Field& F = *field;
    if (F.p() != 2 || F.m() < 3)
        throw std::invalid_argument("subiaco requires q = 2^m, m >= 3");
    if (a == 0 || F.trace(F.inv(a)) != 1)
        throw std::invalid_argument("subiaco requires Tr(1/a) = 1");
    if (F.m() % 4 == 2 && F.pow(a, 4) == a)
        throw std::invalid_argument(
            "subiaco requires a outside GF(4) when m = 2 mod 4");
    const std::uint32_t q = F.q();
    const Elem a2 = F.mul(a, a);
    const Elem c2 = F.mul(a2, F.add(F.add(1, a), a2));  // a^2 (1 + a + a^2)
    std::vector<Elem> tab(q);
    for (Elem x = 0; x < q; ++x) {
        const Elem x2 = F.mul(x, x);
        const Elem x3 = F.mul(x2, x);
        const Elem x4 = F.mul(x2, x2);
        const Elem num =
            F.add(F.mul(a2, F.add(x4, x)), F.mul(c2, F.add(x3, x2)));
        const Elem den = F.add(F.add(x4, F.mul(a2, x2)), 1);
        tab[x] = F.add(F.mul(num, F.pow(den, std::int64_t(q) - 2)),
                       F.pow(x, std::int64_t(1) << (F.m() - 1)));
    }
    return Poly::from_table(field, std::move(tab));
}

}  // namespace

Poly catalog_poly(OPolyFamily family, const FieldPtr& field,
                  std::uint32_t param) {
    const Field& F = *field;
    const std::uint32_t m = F.m();
    const std::uint32_t q = F.q();
    if (F.p() != 2 || m < 2)
        throw std::invalid_argument("catalog families live over GF(2^m), m >= 2");
    switch (family) {
        case OPolyFamily::Translation: {
            const std::uint32_t h = param;
            if (h < 1 || h >= m || detail::gcd_u64(h, m) != 1)
                throw std::invalid_argument("translation requires gcd(h, m) = 1");
            return Poly::monomial(field, std::uint64_t(1) << h)
                .named("trans:" + std::to_string(h));
        }
        case OPolyFamily::Segre:
            require_odd_m(F, "segre");
            return Poly::monomial(field, 6).named("segre");
        case OPolyFamily::GlynnI:
            require_odd_m(F, "glynn1");
            return Poly::monomial(field,
                                  3 * (std::uint64_t(1) << ((m + 1) / 2)) + 4)
                .named("glynn1");
        case OPolyFamily::GlynnII: {
            require_odd_m(F, "glynn2");
            std::uint64_t e = std::uint64_t(1) << ((m + 1) / 2);
            e += m % 4 == 1 ? std::uint64_t(1) << ((3 * m + 1) / 4)
                            : std::uint64_t(1) << ((m + 1) / 4);
            return Poly::monomial(field, e).named("glynn2");
        }
        case OPolyFamily::Cherowitzo: {
            require_odd_m(F, "cherowitzo");
            const std::uint64_t t = std::uint64_t(1) << ((m + 1) / 2);
            return Poly::from_terms(field, {{t, 1}, {t + 2, 1}, {3 * t + 4, 1}},
                                    "cherowitzo");
        }
        case OPolyFamily::CherowitzoInverse: {
            require_odd_m(F, "cherowitzo_inv");
            const std::uint32_t e = (m + 1) / 2;
            const std::int64_t inner = (std::int64_t(1) << e) + 1;
            const std::int64_t outer = (std::int64_t(1) << (e - 1)) - 1;
            std::vector<Elem> tab(q);
            for (Elem x = 0; x < q; ++x) {
                Elem t = F.add(F.add(F.pow(x, inner), F.pow(x, 3)), x);
                tab[x] = F.mul(x, F.pow(t, outer));
            }
            return Poly::from_table(field, std::move(tab), "cherowitzo_inv");
        }
        case OPolyFamily::Payne: {
            require_odd_m(F, "payne");
            const std::uint64_t i6 = F.exponent_inverse(6);
            return Poly::from_terms(
                field, {{5 * i6, 1}, {3 * i6, 1}, {i6, 1}}, "payne");
        }
        case OPolyFamily::PayneInverse: {
            require_odd_m(F, "payne_inv");
            const std::uint64_t num = 3 * (std::uint64_t(1) << (2 * m)) - 2;
            if (num % 5 != 0)
                throw std::invalid_argument(
                    "payne_inv Dickson order is not integral for this m");
            const std::uint64_t n = num / 5;
            std::vector<Elem> tab(q);
            for (Elem x = 0; x < q; ++x)
                tab[x] = F.pow(dickson_eval(n, x, F), 6);
            return Poly::from_table(field, std::move(tab), "payne_inv");
        }
        case OPolyFamily::Subiaco:
            return make_subiaco(field, param)
                .named("subiaco:" + std::to_string(param));
        case OPolyFamily::Subiaco1:
            require_odd_m(F, "subiaco1");
            return make_subiaco(field, 1).named("subiaco1");
    }
    throw std::invalid_argument("unknown catalog family");
}

Poly catalog_poly(const std::string& name, const FieldPtr& field) {
    auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::uint32_t param = 0;
    if (colon != std::string::npos)
        param = static_cast<std::uint32_t>(std::stoul(name.substr(colon + 1)));
    if (head == "trans") return catalog_poly(OPolyFamily::Translation, field, param);
    if (head == "segre") return catalog_poly(OPolyFamily::Segre, field);
    if (head == "glynn1") return catalog_poly(OPolyFamily::GlynnI, field);
    if (head == "glynn2") return catalog_poly(OPolyFamily::GlynnII, field);
    if (head == "cherowitzo") return catalog_poly(OPolyFamily::Cherowitzo, field);
    if (head == "cherowitzo_inv")
        return catalog_poly(OPolyFamily::CherowitzoInverse, field);
    if (head == "payne") return catalog_poly(OPolyFamily::Payne, field);
    if (head == "payne_inv") return catalog_poly(OPolyFamily::PayneInverse, field);
    if (head == "subiaco") return catalog_poly(OPolyFamily::Subiaco, field, param);
    if (head == "subiaco1") return catalog_poly(OPolyFamily::Subiaco1, field);
    throw std::invalid_argument("unknown catalog name: " + name);
}

std::vector<std::string> catalog_names(const FieldPtr& field) {
    const std::uint32_t m = field->m();
    std::vector<std::string> names;
    for (std::uint32_t h = 1; h < m; ++h)
        if (detail::gcd_u64(h, m) == 1) names.push_back("trans:" + std::to_string(h));
    if (m >= 3 && m % 2 == 1) {
        for (const char* n : {"segre", "glynn1", "glynn2", "cherowitzo",
                              "cherowitzo_inv", "payne", "payne_inv", "subiaco1"})
            names.push_back(n);
    }
    return names;
}

Poly dickson_poly(std::uint64_t n, const FieldPtr& field) {
    const Field& F = *field;
    const Elem two = 2 % F.p();
    if (n == 0) return Poly::constant(field, two);
    // dense coefficient recurrence; coefficients live in the prime field
    std::vector<Elem> prev{two}, cur{0, 1};
    for (std::uint64_t k = 2; k <= n; ++k) {
        std::vector<Elem> next(cur.size() + 1, 0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i] = F.sub(next[i], prev[i]);
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<std::pair<std::uint64_t, Elem>> ts;
    for (std::size_t i = 0; i < cur.size(); ++i)
        if (cur[i] != 0) ts.emplace_back(i, cur[i]);
    return Poly::from_terms(field, ts, "dickson:" + std::to_string(n));
}

Elem dickson_eval(std::uint64_t n, Elem x, const Field& field) {
    const Elem two = 2 % field.p();
    if (n == 0) return two;
    Elem a = two, b = x;
    for (std::uint64_t k = 1; k < n; ++k) {
        Elem next = field.sub(field.mul(x, b), a);
        a = b;
        b = next;
    }
    return b;
}

std::vector<std::uint32_t> dmonomial_exponents(const FieldPtr& field,
                                               MonomialParity parity) {
    const Field& F = *field;
    const std::uint32_t m = F.m();
    const std::uint64_t n = F.q() - 1;
    std::vector<std::uint64_t> raw;
    switch (parity) {
        case MonomialParity::odd_m: {
            if (F.p() != 2 || m % 2 == 0 || m < 3)
                throw std::invalid_argument("odd_m list requires 2^m, m odd >= 3");
            for (std::uint32_t h = 1; h < m; ++h)
                if (detail::gcd_u64(h, m) == 1) {
                    raw.push_back((std::uint64_t(1) << h) + 1);
                    raw.push_back((std::uint64_t(1) << (2 * h)) -
                                  (std::uint64_t(1) << h) + 1);
                }
            raw.push_back((std::uint64_t(1) << ((m - 1) / 2)) + 3);
            if (m % 4 == 1 && m >= 5)
                raw.push_back((std::uint64_t(1) << ((m - 1) / 2)) +
                              (std::uint64_t(1) << ((m - 1) / 4)) - 1);
            if (m % 4 == 3)
                raw.push_back((std::uint64_t(1) << ((m - 1) / 2)) +
                              (std::uint64_t(1) << ((3 * m - 1) / 4)) - 1);
            break;
        }
        case MonomialParity::even_m: {
            if (F.p() != 2 || m % 2 != 0)
                throw std::invalid_argument("even_m list requires 2^m, m even");
            for (std::uint32_t h = 1; h < m; ++h)
                if ((m / detail::gcd_u64(h, m)) % 2 == 1)
                    raw.push_back((std::uint64_t(1) << h) + 1);
            if (m % 8 == 2)
                raw.push_back((std::uint64_t(1) << (m / 2)) +
                              (std::uint64_t(1) << ((m + 2) / 4)) + 1);
            if (m % 24 == 4 || m % 24 == 20)
                raw.push_back((std::uint64_t(1) << ((m - 2) / 2)) - 3);
            if (m % 24 == 0 || m % 24 == 8 || m % 24 == 16)
                raw.push_back((std::uint64_t(1) << ((m + 2) / 2)) - 3);
            break;
        }
        case MonomialParity::odd_q: {
            if (F.p() == 2)
                throw std::invalid_argument("odd_q list requires odd p");
            const std::uint64_t q = F.q();
            const std::uint32_t p = F.p();
            if (p == 3) raw.push_back(3);
            if (p % 6 == 5 && m % 2 == 1) raw.push_back(3);
            if ((p == 3 || p == 7) && m % 2 == 1) raw.push_back(5);
            raw.push_back(q - 2);
            if ((p % 4 == 1 && m % 2 == 0) || p % 4 == 3)
                raw.push_back((q - 3) / 2);
            if (m % 2 == 1 && q > p + 1) raw.push_back(q - p - 1);
            break;
        }
    }
    std::set<std::uint32_t> out;
    for (auto e : raw) {
        if (e < 2) continue;
        const std::uint32_t er = F.reduce_exponent(e);
        if (er < 2) continue;
        if (F.p() == 2) {
            if (detail::gcd_u64(std::uint64_t(er) * (er - 1), n) == 1)
                out.insert(er);
        } else {
            if (detail::gcd_u64(er, n) == 1 &&
                detail::gcd_u64(er - 1, n) == 2)
                out.insert(er);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace opdlab

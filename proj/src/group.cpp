#include "opdlab/group.hpp"

#include <algorithm>
#include <bit>

#include "opdlab/report.hpp"

namespace opdlab {

Block shift_image_set(const FieldPtr& field, std::uint64_t e) {
    const Field& F = *field;
    const std::uint32_t q = F.q();
    const std::uint32_t er = F.reduce_exponent(e);
    Block blk(q);
    for (Elem x = 0; x < q; ++x) blk.set(F.add(F.pow(x, er), x));
    return blk;
}

StabilizerResult stabilizer(const FieldPtr& field, const Block& subset) {
    const Field& F = *field;
    const std::uint32_t q = F.q();
    const auto pts = subset.points();
    StabilizerResult res;
    for (Elem u = 1; u < q; ++u) {
        for (Elem v = 0; v < q; ++v) {
            bool fixes = true;
            for (Elem x : pts)
                if (!subset.test(F.add(F.mul(u, x), v))) {
                    fixes = false;
                    break;
                }
            // |uS + v| = |S|, so containment implies set equality
            if (fixes) res.elements.push_back({u, v});
        }
    }
    res.order = res.elements.size();
    return res;
}

namespace {

bool map_fixes_design(const Design& d, const std::vector<Elem>& perm) {
    Block moved(d.v());
    for (const auto& blk : d.blocks()) {
        moved.clear();
        for (auto p : blk.points()) moved.set(perm[p]);
        if (!d.find_block(moved)) return false;
    }
    return true;
}

}  // namespace

bool group_fixes_blockset(PointGroup group, const Design& d) {
    if (!d.field() || d.v() != d.field()->q())
        throw std::invalid_argument(
            "group actions need designs on the field elements");
    const Field& F = *d.field();
    const std::uint32_t q = F.q();
    const std::uint32_t n_frob = group == PointGroup::semilinear ? F.m() : 1;
    std::vector<Elem> frob(q), perm(q);
    for (Elem x = 0; x < q; ++x) frob[x] = x;
    for (std::uint32_t i = 0; i < n_frob; ++i) {
        for (Elem u = 1; u < q; ++u)
            for (Elem v = 0; v < q; ++v) {
                for (Elem x = 0; x < q; ++x)
                    perm[x] = F.add(F.mul(u, frob[x]), v);
                if (!map_fixes_design(d, perm)) return false;
            }
        for (Elem x = 0; x < q; ++x) frob[x] = F.pow(frob[x], F.p());
    }
    return true;
}

std::optional<AffineVariantWitness> affine_variant(const Poly& f,
                                                   const Poly& g) {
    const Field& F = *f.field();
    if (!g.field()->same_as(F))
        throw std::invalid_argument("polynomial fields differ");
    const std::uint32_t q = F.q();
    const auto gtab = g.table();
    const auto ftab = f.table();
    std::vector<Elem> comp(q);
    std::optional<AffineVariantWitness> fallback;
    for (Elem u = 1; u < q; ++u) {
        for (Elem v = 0; v < q; ++v) {
            for (Elem x = 0; x < q; ++x) comp[x] = ftab[F.add(F.mul(u, x), v)];
            // solve g(x) = h comp(x) + c from two points with distinct
            // comp values, then verify everywhere
            Elem x1 = 0, x2 = 1;
            while (x2 < q && comp[x2] == comp[x1]) ++x2;
            Elem h, c;
            if (x2 == q) {
                // f o affine is constant; only constant g can match
                bool gconst = true;
                for (Elem x = 1; x < q; ++x)
                    if (gtab[x] != gtab[0]) {
                        gconst = false;
                        break;
                    }
                if (!gconst) continue;
                h = 1;
                c = F.sub(gtab[0], comp[0]);
            } else {
                const Elem dg = F.sub(gtab[x1], gtab[x2]);
                const Elem dc = F.sub(comp[x1], comp[x2]);
                h = F.mul(dg, F.inv(dc));
                if (h == 0) continue;
                c = F.sub(gtab[x1], F.mul(h, comp[x1]));
            }
            bool ok = true;
            for (Elem x = 0; x < q; ++x)
                if (gtab[x] != F.add(F.mul(h, comp[x]), c)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            AffineVariantWitness w{h, u, v, c, c == 0};
            if (c == 0) return w;
            if (!fallback) fallback = w;
        }
    }
    return fallback;
}

nlohmann::ordered_json DesignFingerprint::to_json() const {
    nlohmann::ordered_json j;
    j["v"] = v;
    j["k"] = k;
    j["b"] = b;
    auto lam = nlohmann::ordered_json::array();
    for (const auto& l : lambdas)
        lam.push_back(l ? nlohmann::ordered_json(*l)
                        : nlohmann::ordered_json(nullptr));
    j["lambda_t123"] = std::move(lam);
    auto inter = nlohmann::ordered_json::array();
    for (const auto& [s, n] : intersections) inter.push_back({s, n});
    j["intersections"] = std::move(inter);
    j["point_degrees"] = point_degrees;
    auto profs = nlohmann::ordered_json::array();
    for (const auto& prof : block_profiles) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& [s, n] : prof) row.push_back({s, n});
        profs.push_back(std::move(row));
    }
    j["block_profiles"] = std::move(profs);
    return j;
}

std::string DesignFingerprint::digest() const {
    return hex64(fnv1a(to_json().dump()));
}

DesignFingerprint fingerprint(const Design& d) {
    DesignFingerprint fp;
    fp.v = d.v();
    fp.k = d.k();
    fp.b = d.b();
    for (std::uint32_t t = 1; t <= 3 && t < d.k(); ++t) {
        auto res = verify_tdesign(d, t);
        fp.lambdas.push_back(res.is_design && res.mode == VerifyMode::exhaustive
                                 ? std::optional<std::uint64_t>(res.lambda)
                                 : std::nullopt);
    }
    std::vector<std::uint32_t> degrees(d.v(), 0);
    for (const auto& blk : d.blocks())
        for (auto p : blk.points()) ++degrees[p];
    std::sort(degrees.begin(), degrees.end());
    fp.point_degrees = std::move(degrees);

    const auto& blocks = d.blocks();
    std::map<std::uint32_t, std::uint64_t> inter;
    std::vector<std::map<std::uint32_t, std::uint32_t>> prof(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            const std::uint32_t s = blocks[i].intersection_count(blocks[j]);
            ++inter[s];
            ++prof[i][s];
            ++prof[j][s];
        }
    fp.intersections.assign(inter.begin(), inter.end());
    fp.block_profiles.reserve(prof.size());
    for (auto& p : prof)
        fp.block_profiles.emplace_back(p.begin(), p.end());
    std::sort(fp.block_profiles.begin(), fp.block_profiles.end());
    return fp;
}

IsomorphyResult design_isomorphy(const Design& a, const Design& b) {
    if (fingerprint(a) != fingerprint(b))
        return {IsomorphyVerdict::non_isomorphic, std::nullopt};
    if (!a.field() || !b.field() || !a.field()->same_as(*b.field()) ||
        a.v() != a.field()->q() || b.v() != b.field()->q())
        return {IsomorphyVerdict::undetermined, std::nullopt};
    const Field& F = *a.field();
    const std::uint32_t q = F.q();
    std::vector<Elem> frob(q), perm(q);
    for (Elem x = 0; x < q; ++x) frob[x] = x;
    for (std::uint32_t i = 0; i < F.m(); ++i) {
        for (Elem u = 1; u < q; ++u)
            for (Elem v = 0; v < q; ++v) {
                for (Elem x = 0; x < q; ++x)
                    perm[x] = F.add(F.mul(u, frob[x]), v);
                bool ok = true;
                Block moved(a.v());
                for (const auto& blk : a.blocks()) {
                    moved.clear();
                    for (auto p : blk.points()) moved.set(perm[p]);
                    if (!b.find_block(moved)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    return {IsomorphyVerdict::isomorphic_certified,
                            SemilinearMap{u, v, i}};
            }
        for (Elem x = 0; x < q; ++x) frob[x] = F.pow(frob[x], F.p());
    }
    return {IsomorphyVerdict::undetermined, std::nullopt};
}

std::optional<DifferenceSetParams> is_difference_set(const FieldPtr& field,
                                                     const Block& subset,
                                                     GroupKind group) {
    const Field& F = *field;
    const std::uint32_t q = F.q();
    const auto pts = subset.points();
    if (group == GroupKind::multiplicative && subset.test(0))
        throw std::invalid_argument(
            "multiplicative difference sets exclude zero");
    const std::uint32_t v = group == GroupKind::multiplicative ? q - 1 : q;
    if (v < 2)
        throw std::invalid_argument("the group has no non-identity elements");
    std::vector<std::uint64_t> reps(q, 0);
    for (Elem d1 : pts)
        for (Elem d2 : pts) {
            if (d1 == d2) continue;
            Elem g = group == GroupKind::multiplicative
                         ? F.mul(d1, F.inv(d2))
                         : F.sub(d1, d2);
            ++reps[g];
        }
    std::optional<std::uint64_t> lambda;
    for (Elem g = 0; g < q; ++g) {
        const bool identity = group == GroupKind::multiplicative ? g == 1 : g == 0;
        if (identity) continue;
        if (group == GroupKind::multiplicative && g == 0) continue;
        if (!lambda)
            lambda = reps[g];
        else if (*lambda != reps[g])
            return std::nullopt;
    }
    return DifferenceSetParams{v, subset.count(), *lambda};
}

Design develop(const FieldPtr& field, const Block& subset, GroupKind group) {
    auto params = is_difference_set(field, subset, group);
    if (!params) throw std::domain_error("subset is not a difference set");
    const Field& F = *field;
    const std::uint32_t q = F.q();
    const auto pts = subset.points();
    std::vector<Block> blocks;
    nlohmann::ordered_json source;
    source["construction"] = "development";
    source["group"] =
        group == GroupKind::multiplicative ? "multiplicative" : "additive";
    if (group == GroupKind::multiplicative) {
        // point i of the design is the field element i+1
        for (Elem u = 1; u < q; ++u) {
            Block blk(q - 1);
            for (Elem d : pts) blk.set(F.mul(u, d) - 1);
            blocks.push_back(std::move(blk));
        }
        return Design::make(q - 1, params->k, std::move(blocks),
                            std::move(source), field);
    }
    for (Elem c = 0; c < q; ++c) {
        Block blk(q);
        for (Elem d : pts) blk.set(F.add(d, c));
        blocks.push_back(std::move(blk));
    }
    return Design::make(q, params->k, std::move(blocks), std::move(source),
                        field);
}

WalshReport walsh_check(const FieldPtr& field, std::uint64_t e) {
    const Field& F = *field;
    const std::uint32_t q = F.q();
    if (F.p() != 2 || F.m() % 2 == 0 || F.m() < 3)
        throw std::invalid_argument("walsh check requires 2^m with odd m");
    const std::uint32_t er = F.reduce_exponent(e);
    if (std::popcount(er) != 2 || (er & 1))
        throw std::invalid_argument(
            "exponent must be 2^i + 2^j with 1 <= i < j");
    if (!is_opolynomial(Poly::monomial(field, er)))
        throw std::invalid_argument("exponent is not an o-monomial");

    const Block js = shift_image_set(field, er);
    std::vector<std::int8_t> sign(q);  // (-1)^h(x)
    for (Elem x = 0; x < q; ++x) sign[x] = js.test(x) ? -1 : 1;
    std::vector<std::int8_t> trbit(q);
    for (Elem x = 0; x < q; ++x) trbit[x] = static_cast<std::int8_t>(F.trace(x));

    WalshReport rep;
    rep.e = er;
    rep.ell = static_cast<std::uint32_t>(std::uint64_t(er - 1) *
                                         F.exponent_inverse(er) % (q - 1));
    rep.magnitude = std::int64_t(1) << ((F.m() + 1) / 2);
    rep.spectrum.resize(q);
    for (Elem beta = 0; beta < q; ++beta) {
        std::int64_t acc = 0;
        for (Elem x = 0; x < q; ++x) {
            const std::int8_t s = trbit[F.mul(beta, x)] ? -1 : 1;
            acc += std::int64_t(sign[x]) * s;
        }
        rep.spectrum[beta] = acc;
    }
    rep.pattern_ok = true;
    for (Elem beta = 0; beta < q; ++beta) {
        const bool on_support = F.trace(F.pow(beta, rep.ell)) == 1;
        const std::int64_t val = rep.spectrum[beta];
        const bool ok =
            on_support ? (val == rep.magnitude || val == -rep.magnitude)
                       : val == 0;
        if (!ok) {
            rep.pattern_ok = false;
            rep.violation = beta;
            break;
        }
    }
    std::int64_t energy = 0;
    for (auto vv : rep.spectrum) energy += vv * vv;
    rep.parseval_ok = energy == std::int64_t(q) * q;
    return rep;
}

}  // namespace opdlab

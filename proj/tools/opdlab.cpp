// opdlab: reproducible experiments with polynomial-derived block designs
// over small finite fields.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed (the
// report carries a witness), 2 usage or configuration error, 3 budget
// exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "opdlab/conjecture.hpp"
#include "opdlab/design.hpp"
#include "opdlab/geometry.hpp"
#include "opdlab/group.hpp"
#include "opdlab/poly.hpp"
#include "opdlab/report.hpp"

using nlohmann::ordered_json;
using namespace opdlab;

namespace {

struct CommonOpts {
    std::string field_spec;
    std::string cache_dir;
    std::string format = "json";
    std::uint64_t seed = 0x5eed;
    std::uint32_t budget_q = 0;  // 0 = per-mode defaults
    Budget budget;

    void finalize() {
        if (budget_q != 0) {
            budget.t2_max_q = budget_q;
            budget.t3_max_q = budget_q;
            budget.ext_t3_exhaustive_max_q = budget_q;
            budget.ext_t3_mc_max_q = budget_q;
            budget.ext_count_max_q = budget_q;
            budget.blockcount_max_q = budget_q;
        }
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_field = true) {
    if (with_field)
        cmd->add_option("--field", opts.field_spec,
                        "field as p:m[:modulus-hex] (hex packs the "
                        "coefficient vector base p, low degree first)")
            ->required();
    cmd->add_option("--cache-dir", opts.cache_dir, "report cache directory")
        ->envname("OPDLAB_CACHE");
    cmd->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", opts.seed, "seed for sampled verdicts");
    cmd->add_option("--budget", opts.budget_q,
                    "maximum field order for exhaustive verification");
}

std::vector<std::uint32_t> parse_modulus_hex(const std::string& hex,
                                             std::uint32_t p,
                                             std::uint32_t m) {
    std::uint64_t packed = std::stoull(hex, nullptr, 16);
    std::vector<std::uint32_t> mod;
    for (std::uint32_t i = 0; i <= m; ++i) {
        mod.push_back(packed % p);
        packed /= p;
    }
    if (packed != 0)
        throw std::invalid_argument("modulus encodes a degree above m");
    return mod;
}

FieldPtr parse_field(const std::string& spec) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos)
        throw std::invalid_argument("field spec must be p:m[:modulus-hex]");
    const auto c2 = spec.find(':', c1 + 1);
    const std::uint32_t p = std::stoul(spec.substr(0, c1));
    const std::uint32_t m = std::stoul(
        spec.substr(c1 + 1, c2 == std::string::npos ? c2 : c2 - c1 - 1));
    if (c2 == std::string::npos) return make_field(p, m);
    return make_field(p, m, parse_modulus_hex(spec.substr(c2 + 1), p, m));
}

Poly parse_poly(const std::string& spec, const FieldPtr& field) {
    if (spec.rfind("monomial:", 0) == 0)
        return Poly::monomial(field, std::stoull(spec.substr(9)));
    if (spec.rfind("terms:", 0) == 0) {
        // terms:e[=c],e[=c],...
        std::vector<std::pair<std::uint64_t, Elem>> terms;
        std::string body = spec.substr(6);
        std::size_t pos = 0;
        while (pos < body.size()) {
            auto comma = body.find(',', pos);
            std::string item = body.substr(
                pos, comma == std::string::npos ? comma : comma - pos);
            auto eq = item.find('=');
            std::uint64_t e = std::stoull(item.substr(0, eq));
            Elem c = eq == std::string::npos
                         ? 1
                         : static_cast<Elem>(std::stoul(item.substr(eq + 1)));
            terms.emplace_back(e, c);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (terms.empty()) throw std::invalid_argument("empty term list");
        return Poly::from_terms(field, terms);
    }
    return catalog_poly(spec, field);
}

struct Outcome {
    ordered_json report;
    int exit_code = 0;
    std::string csv;  // optional tabular rendering
};

ordered_json base_report(const std::string& experiment,
                         const ordered_json& inputs, const CommonOpts& opts) {
    ordered_json r;
    r["schema"] = 1;
    r["experiment"] = experiment;
    r["inputs"] = inputs;
    r["seed"] = opts.seed;
    r["budget"] = opts.budget.to_json();
    return r;
}

ordered_json witness_json(const TDesignWitness& w) {
    ordered_json j;
    j["subset_low"] = w.subset_low;
    j["count_low"] = w.count_low;
    j["subset_high"] = w.subset_high;
    j["count_high"] = w.count_high;
    return j;
}

ordered_json verify_json(const TDesignResult& r, std::uint32_t samples) {
    ordered_json j;
    j["is_design"] = r.is_design;
    if (r.mode == VerifyMode::exhaustive) {
        j["mode"] = "exhaustive";
    } else {
        j["mode"] = "monte-carlo";
        j["samples"] = samples;
    }
    if (r.is_design) j["lambda"] = r.lambda;
    if (r.witness) j["witness"] = witness_json(*r.witness);
    return j;
}

// ---------------------------------------------------------------- field

Outcome cmd_field(const CommonOpts& opts) {
    auto field = parse_field(opts.field_spec);
    ordered_json inputs{{"field", field->describe()}};
    auto rep = base_report("field", inputs, opts);
    rep["results"]["q"] = field->q();
    rep["results"]["generator"] = field->generator();
    rep["status"] = "pass";
    return {rep, 0, {}};
}

// ----------------------------------------------------------------- poly

Outcome cmd_poly(const CommonOpts& opts, const std::string& poly_spec,
                 const std::string& transform) {
    auto field = parse_field(opts.field_spec);
    auto f = parse_poly(poly_spec, field);
    ordered_json inputs{{"field", field->describe()},
                        {"poly", poly_spec},
                        {"transform", transform}};
    auto rep = base_report("poly", inputs, opts);
    auto& res = rep["results"];
    res["poly"] = f.to_json();
    const bool perm = is_permutation(f);
    res["is_permutation"] = perm;
    res["is_opolynomial"] = is_opolynomial(f);
    if (perm) {
        auto dp = is_design_poly(f);
        res["is_design_poly"] = dp.is_design_poly;
        if (dp.is_design_poly) res["shift_image_size"] = dp.image_size;
    }
    if (auto e = f.monomial_exponent()) {
        res["monomial_exponent"] = *e;
        const std::uint64_t n = field->q() - 1;
        if (detail::gcd_u64(std::uint64_t(*e) * (*e - 1), n) == 1)
            res["exponent_orbit"] = exponent_orbit(*e, field).members;
    }
    if (!transform.empty()) {
        Poly g = [&] {
            if (transform == "inverse") return opoly_inverse(f);
            if (transform == "bar") return opoly_bar(f);
            if (transform == "shift") return opoly_shift(f);
            if (transform.rfind("frobenius:", 0) == 0)
                return opoly_frobenius_twist(
                    f, std::stoul(transform.substr(10)));
            throw std::invalid_argument("unknown transform: " + transform);
        }();
        res["transformed"] = g.to_json();
    }
    rep["status"] = "pass";
    return {rep, 0, {}};
}

// --------------------------------------------------------------- design

Outcome cmd_design(const CommonOpts& opts, const std::string& poly_spec,
                   std::uint32_t k, std::int32_t verify_t, bool extended,
                   bool intersections, const std::string& export_path) {
    auto field = parse_field(opts.field_spec);
    auto f = parse_poly(poly_spec, field);
    const std::uint32_t q = field->q();
    ordered_json inputs{{"field", field->describe()},
                        {"poly", poly_spec},
                        {"k", k},
                        {"extended", extended},
                        {"verify_t", verify_t},
                        {"intersections", intersections}};
    auto rep = base_report("design", inputs, opts);

    if (extended && q > opts.budget.ext_count_max_q)
        throw BudgetExceeded("extended enumeration beyond the budget");

    const auto t0 = std::chrono::steady_clock::now();
    Design d = build_design(f, k, extended);
    auto& res = rep["results"];
    res["v"] = d.v();
    res["k"] = d.k();
    res["b"] = d.b();
    if (extended)
        rep["notes"].push_back(
            "extended construction runs on the same q-element point set "
            "as the basic one");

    int exit_code = 0;
    if (verify_t > 0) {
        const std::uint32_t t = std::uint32_t(verify_t);
        VerifyOptions vopts;
        vopts.counter_cap = opts.budget.counter_cap;
        vopts.mc_samples = opts.budget.mc_samples;
        vopts.seed = opts.seed;
        bool force_mc = false;
        if (extended && t >= 3) {
            if (q > opts.budget.ext_t3_mc_max_q)
                throw BudgetExceeded("extended verification beyond the budget");
            force_mc = q > opts.budget.ext_t3_exhaustive_max_q;
        } else if (t >= 3) {
            if (q > opts.budget.t3_max_q)
                throw BudgetExceeded("t=3 verification beyond the budget");
        } else if (q > opts.budget.t2_max_q) {
            throw BudgetExceeded("t=2 verification beyond the budget");
        }
        if (force_mc) vopts.counter_cap = 0;
        auto vr = verify_tdesign(d, t, vopts);
        res["verify"] = verify_json(vr, vopts.mc_samples);
        if (vr.is_design) {
            res["verify"]["admissible"] =
                design_admissible(d.v(), d.k(), t, d.b(), vr.lambda);
            // closed-form prediction when the polynomial is classifiable
            try {
                std::uint64_t mu = 1;
                if (auto e = f.monomial_exponent())
                    mu = stabilizer(field, shift_image_set(field, *e)).order;
                auto pred = predict_params(f, mu, t, extended);
                res["predicted"] = pred.to_json();
                res["predicted"]["mu"] = mu;
                res["matches_prediction"] =
                    pred.lambda == vr.lambda && pred.b == d.b();
            } catch (const std::invalid_argument&) {
                // no covering theorem; verification alone stands
            }
        } else {
            rep["witnesses"].push_back(witness_json(*vr.witness));
            exit_code = 1;
        }
    }
    if (intersections) {
        auto prof = intersection_numbers(d);
        ordered_json pj;
        for (const auto& [s, n] : prof.counts) pj[std::to_string(s)] = n;
        res["intersection_numbers"] = pj;
        res["quasi_symmetric"] = prof.quasi_symmetric;
    }
    const std::string artifact = d.to_export_string();
    res["design_hash"] = hex64(fnv1a(artifact));
    if (!export_path.empty()) {
        std::ofstream out(export_path);
        if (!out)
            throw std::invalid_argument("cannot write " + export_path);
        out << artifact;
        rep["artifacts"]["design_file"] = export_path;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep["status"] = exit_code == 0 ? "pass" : "fail";
    rep["timing_ms"]["total"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return {rep, exit_code, {}};
}

// -------------------------------------------------------------- spectrum

Outcome cmd_spectrum(const CommonOpts& opts, const std::string& poly_spec,
                     bool extended) {
    auto field = parse_field(opts.field_spec);
    auto f = parse_poly(poly_spec, field);
    ordered_json inputs{{"field", field->describe()},
                        {"poly", poly_spec},
                        {"extended", extended}};
    auto rep = base_report("spectrum", inputs, opts);
    if (extended && field->q() > opts.budget.ext_count_max_q)
        throw BudgetExceeded("extended spectrum beyond the budget");
    auto spec = value_spectrum(f, extended);
    ordered_json hist;
    std::string csv = "size,count\n";
    for (const auto& [size, mult] : spec) {
        hist[std::to_string(size)] = mult;
        csv += std::to_string(size) + "," + std::to_string(mult) + "\n";
    }
    rep["results"]["spectrum"] = hist;
    rep["status"] = "pass";
    return {rep, 0, csv};
}

// ------------------------------------------------------------------ stab

Outcome cmd_stab(const CommonOpts& opts, std::uint64_t exponent) {
    auto field = parse_field(opts.field_spec);
    ordered_json inputs{{"field", field->describe()}, {"exponent", exponent}};
    auto rep = base_report("stab", inputs, opts);
    auto js = shift_image_set(field, exponent);
    auto stab = stabilizer(field, js);
    rep["results"]["set_size"] = js.count();
    rep["results"]["mu"] = stab.order;
    auto arr = ordered_json::array();
    for (const auto& el : stab.elements) arr.push_back({el.u, el.v});
    rep["results"]["elements"] = std::move(arr);
    rep["status"] = "pass";
    return {rep, 0, {}};
}

// --------------------------------------------------------------- diffset

Outcome cmd_diffset(const CommonOpts& opts, std::int64_t exponent,
                    bool squares, const std::string& group_name,
                    bool develop_flag) {
    auto field = parse_field(opts.field_spec);
    const Field& F = *field;
    const GroupKind group = group_name == "add" ? GroupKind::additive
                                                : GroupKind::multiplicative;
    ordered_json inputs{{"field", field->describe()},
                        {"exponent", exponent},
                        {"squares", squares},
                        {"group", group_name},
                        {"develop", develop_flag}};
    auto rep = base_report("diffset", inputs, opts);

    Block subset(F.q());
    if (squares) {
        for (Elem x = 0; x < F.q(); ++x) subset.set(F.mul(x, x));
    } else {
        if (exponent < 2) throw std::invalid_argument("need --exponent or --squares");
        auto js = shift_image_set(field, std::uint64_t(exponent));
        for (auto p : js.points())
            if (p != 0 || group == GroupKind::additive) subset.set(p);
    }
    rep["results"]["subset_size"] = subset.count();

    auto params = is_difference_set(field, subset, group);
    int exit_code = 0;
    if (params) {
        rep["results"]["difference_set"] = {
            {"v", params->v}, {"k", params->k}, {"lambda", params->lambda}};
        if (develop_flag) {
            auto dev = develop(field, subset, group);
            auto vr = verify_tdesign(dev, 2,
                                     {opts.budget.counter_cap,
                                      opts.budget.mc_samples, opts.seed});
            rep["results"]["development"] = {
                {"v", dev.v()},
                {"b", dev.b()},
                {"k", dev.k()},
                {"symmetric", dev.b() == dev.v()}};
            rep["results"]["development"]["verify"] =
                verify_json(vr, opts.budget.mc_samples);
            if (!vr.is_design) exit_code = 1;
        }
    } else {
        // witness: two non-identity elements with different counts
        const auto pts = subset.points();
        std::vector<std::uint64_t> reps(F.q(), 0);
        for (Elem d1 : pts)
            for (Elem d2 : pts) {
                if (d1 == d2) continue;
                ++reps[group == GroupKind::multiplicative
                           ? F.mul(d1, F.inv(d2))
                           : F.sub(d1, d2)];
            }
        const Elem id = group == GroupKind::multiplicative ? 1 : 0;
        std::optional<Elem> first;
        for (Elem g = group == GroupKind::multiplicative ? 1 : 0; g < F.q();
             ++g) {
            if (g == id) continue;
            if (!first) {
                first = g;
            } else if (reps[g] != reps[*first]) {
                rep["witnesses"].push_back(
                    {{"element", *first}, {"count", reps[*first]}});
                rep["witnesses"].push_back({{"element", g}, {"count", reps[g]}});
                break;
            }
        }
        rep["results"]["difference_set"] = nullptr;
        exit_code = 1;
    }
    rep["status"] = exit_code == 0 ? "pass" : "fail";
    return {rep, exit_code, {}};
}

// ----------------------------------------------------------------- walsh

Outcome cmd_walsh(const CommonOpts& opts, std::uint64_t exponent) {
    auto field = parse_field(opts.field_spec);
    ordered_json inputs{{"field", field->describe()}, {"exponent", exponent}};
    auto rep = base_report("walsh", inputs, opts);
    auto wr = walsh_check(field, exponent);
    auto& res = rep["results"];
    res["ell"] = wr.ell;
    res["magnitude"] = wr.magnitude;
    res["pattern_ok"] = wr.pattern_ok;
    res["parseval_ok"] = wr.parseval_ok;
    auto arr = ordered_json::array();
    for (std::size_t beta = 0; beta < wr.spectrum.size(); ++beta)
        arr.push_back({beta, wr.spectrum[beta]});
    res["spectrum"] = std::move(arr);
    int exit_code = 0;
    if (!wr.pattern_ok || !wr.parseval_ok) {
        exit_code = 1;
        if (wr.violation)
            rep["witnesses"].push_back(
                {{"beta", *wr.violation},
                 {"value", wr.spectrum[*wr.violation]}});
    }
    rep["status"] = exit_code == 0 ? "pass" : "fail";
    return {rep, exit_code, {}};
}

// ------------------------------------------------------------- hyperoval

Outcome cmd_hyperoval(const CommonOpts& opts, const std::string& poly_spec,
                      const std::string& design_kind, bool verify) {
    auto field = parse_field(opts.field_spec);
    auto f = parse_poly(poly_spec, field);
    ordered_json inputs{{"field", field->describe()},
                        {"poly", poly_spec},
                        {"design", design_kind},
                        {"verify", verify}};
    auto rep = base_report("hyperoval", inputs, opts);
    Plane pg(field);
    auto h = hyperoval_from(pg, f);
    auto cls = classify_lines(pg, h);
    auto& res = rep["results"];
    res["points"] = ordered_json::array();
    for (auto pi : h.points) {
        const auto& t = pg.point(pi);
        res["points"].push_back({t[0], t[1], t[2]});
    }
    res["secants"] = cls.secants.size();
    res["exterior"] = cls.exterior.size();

    int exit_code = 0;
    if (!design_kind.empty()) {
        Design d = design_kind == "W" ? hyperoval_design_W(pg, h)
                                      : hyperoval_design_S(pg, h);
        ordered_json dj{{"v", d.v()}, {"k", d.k()}, {"b", d.b()},
                        {"symmetric", d.b() == d.v()},
                        {"trivial", d.k() <= 2}};
        if (verify && d.k() <= 2) {
            // pair designs have no t < k = 2 to verify; the flag stands
        } else if (verify) {
            auto vr = verify_tdesign(d, 2,
                                     {opts.budget.counter_cap,
                                      opts.budget.mc_samples, opts.seed});
            dj["verify"] = verify_json(vr, opts.budget.mc_samples);
            if (vr.is_design) {
                dj["steiner"] = vr.lambda == 1;
            } else {
                rep["witnesses"].push_back(witness_json(*vr.witness));
                exit_code = 1;
            }
        }
        res["design"] = std::move(dj);
    }
    rep["status"] = exit_code == 0 ? "pass" : "fail";
    return {rep, exit_code, {}};
}

// ------------------------------------------------------------ conjecture

Outcome cmd_conjecture(const CommonOpts& opts, const std::string& id_name,
                       std::vector<std::uint32_t> ms) {
    const auto id = conjecture_from_name(id_name);
    if (ms.empty())
        ms = id == ConjectureId::x10 ? std::vector<std::uint32_t>{3, 5}
                                     : std::vector<std::uint32_t>{5, 7};
    ordered_json inputs{{"id", id_name}, {"m", ms}};
    auto rep = base_report("conjecture", inputs, opts);
    auto cases = run_conjecture(id, ms, opts.budget, opts.seed);
    bool any_fail = false, any_skip = false;
    auto arr = ordered_json::array();
    std::string csv = "conjecture,m,instance,verdict\n";
    for (const auto& c : cases) {
        arr.push_back(c.to_json());
        any_fail |= c.verdict == Verdict::fails;
        any_skip |= c.verdict == Verdict::skipped;
        csv += std::string(conjecture_name(c.id)) + "," + std::to_string(c.m) +
               "," + c.instance + "," +
               std::string(c.verdict == Verdict::holds    ? "holds"
                           : c.verdict == Verdict::fails ? "fails"
                                                         : "skipped") +
               "\n";
    }
    rep["results"]["cases"] = std::move(arr);
    int exit_code = any_fail ? 1 : any_skip ? 3 : 0;
    rep["status"] = any_fail ? "fail" : any_skip ? "skip" : "pass";
    return {rep, exit_code, csv};
}

// ---------------------------------------------------------------- report

Outcome cmd_report(const CommonOpts& opts, const std::string& key, bool list,
                   bool verify_all) {
    if (opts.cache_dir.empty())
        throw std::invalid_argument("report requires --cache-dir or OPDLAB_CACHE");
    ReportCache cache(opts.cache_dir);
    ordered_json rep;
    rep["schema"] = 1;
    rep["experiment"] = "report";
    if (list || verify_all) {
        auto keys = ordered_json::array();
        for (const auto& entry :
             std::filesystem::directory_iterator(cache.dir())) {
            if (entry.path().extension() != ".json") continue;
            const std::string k = entry.path().stem().string();
            if (verify_all) cache.lookup(k);  // throws on corruption
            keys.push_back(k);
        }
        rep["results"]["keys"] = std::move(keys);
        rep["status"] = "pass";
        return {rep, 0, {}};
    }
    if (key.empty()) throw std::invalid_argument("need --key or --list");
    auto stored = cache.lookup(key);
    if (!stored) throw std::invalid_argument("no report under key " + key);
    return {*stored, stored->value("exit_code", 0), {}};
}

int run(int argc, char** argv) {
    CLI::App app{"polynomial-derived design laboratory"};
    app.require_subcommand(1);

    CommonOpts opts;

    // poly
    std::string poly_spec, transform;
    auto* poly_cmd = app.add_subcommand("poly", "polynomial predicates");
    add_common(poly_cmd, opts);
    poly_cmd->add_option("--poly", poly_spec, "catalog name, monomial:e, or terms:e=c,...")->required();
    poly_cmd->add_option("--transform", transform,
                         "inverse | bar | shift | frobenius:j");

    // field
    auto* field_cmd = app.add_subcommand("field", "field description");
    add_common(field_cmd, opts);

    // design
    std::uint32_t k = 0;
    std::int32_t verify_t = 0;
    bool extended = false, intersections = false;
    std::string export_path;
    auto* design_cmd = app.add_subcommand("design", "build and verify a design");
    add_common(design_cmd, opts);
    design_cmd->add_option("--poly", poly_spec)->required();
    design_cmd->add_option("--k", k, "block size")->required();
    design_cmd->add_option("--verify-t", verify_t, "verify as a t-design");
    design_cmd->add_flag("--extended", extended, "use af(x)+bx+c");
    design_cmd->add_flag("--intersections", intersections);
    design_cmd->add_option("--export", export_path, "write the block list");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "value spectrum");
    add_common(spectrum_cmd, opts);
    spectrum_cmd->add_option("--poly", poly_spec)->required();
    spectrum_cmd->add_flag("--extended", extended);

    // stab
    std::int64_t exponent = -1;
    auto* stab_cmd = app.add_subcommand("stab", "affine stabilizer of {x^e + x}");
    add_common(stab_cmd, opts);
    stab_cmd->add_option("--exponent", exponent)->required();

    // diffset
    bool squares = false, develop_flag = false;
    std::string group_name = "mult";
    auto* diffset_cmd = app.add_subcommand("diffset", "difference-set checks");
    add_common(diffset_cmd, opts);
    diffset_cmd->add_option("--exponent", exponent,
                            "use the nonzero part of {x^e + x}");
    diffset_cmd->add_flag("--squares", squares, "use the squares (with 0)");
    diffset_cmd->add_option("--group", group_name)
        ->check(CLI::IsMember({"mult", "add"}));
    diffset_cmd->add_flag("--develop", develop_flag);

    // walsh
    auto* walsh_cmd = app.add_subcommand("walsh", "walsh spectrum check");
    add_common(walsh_cmd, opts);
    walsh_cmd->add_option("--exponent", exponent)->required();

    // hyperoval
    std::string design_kind;
    bool verify = false;
    auto* hyper_cmd = app.add_subcommand("hyperoval", "hyperoval machinery");
    add_common(hyper_cmd, opts);
    hyper_cmd->add_option("--poly", poly_spec)->required();
    hyper_cmd->add_option("--design", design_kind)
        ->check(CLI::IsMember({"W", "S"}));
    hyper_cmd->add_flag("--verify", verify);

    // conjecture
    std::string conj_id;
    std::vector<std::uint32_t> ms;
    auto* conj_cmd = app.add_subcommand("conjecture", "conjecture harness");
    add_common(conj_cmd, opts, /*with_field=*/false);
    conj_cmd->add_option("--id", conj_id,
                         "C-blockcount | C-stabilizer | C-x10 | C-extended")
        ->required();
    conj_cmd->add_option("--m", ms, "extension degrees (repeatable)");

    // report
    std::string key;
    bool list = false, verify_cache = false;
    auto* report_cmd = app.add_subcommand("report", "cache inspection");
    add_common(report_cmd, opts, /*with_field=*/false);
    report_cmd->add_option("--key", key);
    report_cmd->add_flag("--list", list);
    report_cmd->add_flag("--verify", verify_cache);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }
    opts.finalize();

    // canonical request for caching
    ordered_json request;
    for (auto* sub : app.get_subcommands()) request["command"] = sub->get_name();
    request["argv"] = ordered_json::array();
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--cache-dir" || arg == "--format") {
            ++i;  // volatile flags do not participate in the key
            continue;
        }
        request["argv"].push_back(arg);
    }
    const std::string cache_key = ReportCache::key_of(request);

    const bool cacheable = !opts.cache_dir.empty() && !report_cmd->parsed();
    if (cacheable) {
        ReportCache cache(opts.cache_dir);
        if (auto hit = cache.lookup(cache_key)) {
            std::cerr << "cache hit: " << cache_key << "\n";
            std::cout << hit->dump(2) << "\n";
            return hit->value("exit_code", 0);
        }
    }

    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    if (field_cmd->parsed()) out = cmd_field(opts);
    else if (poly_cmd->parsed()) out = cmd_poly(opts, poly_spec, transform);
    else if (design_cmd->parsed())
        out = cmd_design(opts, poly_spec, k, verify_t, extended, intersections,
                         export_path);
    else if (spectrum_cmd->parsed()) out = cmd_spectrum(opts, poly_spec, extended);
    else if (stab_cmd->parsed())
        out = cmd_stab(opts, std::uint64_t(exponent));
    else if (diffset_cmd->parsed())
        out = cmd_diffset(opts, exponent, squares, group_name, develop_flag);
    else if (walsh_cmd->parsed())
        out = cmd_walsh(opts, std::uint64_t(exponent));
    else if (hyper_cmd->parsed())
        out = cmd_hyperoval(opts, poly_spec, design_kind, verify);
    else if (conj_cmd->parsed()) out = cmd_conjecture(opts, conj_id, ms);
    else if (report_cmd->parsed())
        out = cmd_report(opts, key, list, verify_cache);

    const auto t1 = std::chrono::steady_clock::now();
    if (!report_cmd->parsed()) {  // report passes stored entries through
        if (!out.report.contains("timing_ms"))
            out.report["timing_ms"]["total"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                    .count();
        out.report["exit_code"] = out.exit_code;
        out.report["cache_key"] = cache_key;
        out.report["integrity"] = report_integrity(out.report);
    }

    if (cacheable) ReportCache(opts.cache_dir).store(cache_key, out.report);

    if (opts.format == "csv") {
        if (out.csv.empty())
            throw std::invalid_argument("csv output is only available for "
                                        "spectrum and conjecture");
        std::cout << out.csv;
    } else {
        std::cout << out.report.dump(2) << "\n";
    }
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const CacheCorruption& e) {
        std::cerr << "cache corruption: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "opdlab/design.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>

#include "opdlab/rng.hpp"

namespace opdlab {

std::uint32_t Block::count() const {
    std::uint32_t n = 0;
    for (auto w : w_) n += std::popcount(w);
    return n;
}

std::vector<std::uint32_t> Block::points() const {
    std::vector<std::uint32_t> pts;
    pts.reserve(count());
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t w = w_[wi];
        while (w != 0) {
            pts.push_back(std::uint32_t(wi * 64) + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return pts;
}

std::uint32_t Block::intersection_count(const Block& other) const {
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        n += std::popcount(w_[i] & other.w_[i]);
    return n;
}

bool Block::operator<(const Block& o) const {
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
}

std::string Block::to_hex() const {
    const std::uint32_t nibbles = (nbits_ + 3) / 4;
    std::string s(nibbles, '0');
    for (std::uint32_t j = 0; j < nibbles; ++j) {
        std::uint32_t lo = 4 * (nibbles - 1 - j);
        std::uint32_t val = 0;
        for (std::uint32_t bit = 0; bit < 4 && lo + bit < nbits_; ++bit)
            if (test(lo + bit)) val |= 1u << bit;
        s[j] = "0123456789abcdef"[val];
    }
    return s;
}

Block Block::from_hex(const std::string& hex, std::uint32_t nbits) {
    Block b(nbits);
    const std::uint32_t nibbles = (nbits + 3) / 4;
    if (hex.size() != nibbles)
        throw std::invalid_argument("hex block has wrong width");
    for (std::uint32_t j = 0; j < nibbles; ++j) {
        char c = hex[j];
        std::uint32_t val;
        if (c >= '0' && c <= '9')
            val = c - '0';
        else if (c >= 'a' && c <= 'f')
            val = 10 + c - 'a';
        else
            throw std::invalid_argument("bad hex digit in block");
        std::uint32_t lo = 4 * (nibbles - 1 - j);
        for (std::uint32_t bit = 0; bit < 4 && lo + bit < nbits; ++bit)
            if (val & (1u << bit)) b.set(lo + bit);
    }
    return b;
}

Design Design::make(std::uint32_t v, std::uint32_t k,
                    std::vector<Block> blocks, nlohmann::ordered_json source,
                    FieldPtr field) {
    if (blocks.empty()) throw std::domain_error("empty block set");
    for (const auto& blk : blocks)
        if (blk.count() != k)
            throw std::invalid_argument("block size differs from k");
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    Design d;
    d.v_ = v;
    d.k_ = k;
    d.blocks_ = std::move(blocks);
    d.source_ = std::move(source);
    d.field_ = std::move(field);
    return d;
}

std::optional<std::size_t> Design::find_block(const Block& blk) const {
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), blk);
    if (it != blocks_.end() && *it == blk)
        return std::size_t(it - blocks_.begin());
    return std::nullopt;
}

std::string Design::to_export_string() const {
    nlohmann::ordered_json header;
    header["schema"] = 1;
    header["v"] = v_;
    header["k"] = k_;
    header["b"] = blocks_.size();
    if (field_) header["field"] = field_->describe();
    header["source"] = source_;
    std::ostringstream out;
    out << header.dump() << "\n";
    for (const auto& blk : blocks_) out << blk.to_hex() << "\n";
    return out.str();
}

Design Design::from_export_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty export");
    auto header = nlohmann::ordered_json::parse(line);
    const std::uint32_t v = header.at("v").get<std::uint32_t>();
    const std::uint32_t k = header.at("k").get<std::uint32_t>();
    FieldPtr field;
    if (header.contains("field")) field = field_from_json(header["field"]);
    std::vector<Block> blocks;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        blocks.push_back(Block::from_hex(line, v));
    }
    return make(v, k, std::move(blocks), header.value("source", nlohmann::ordered_json()),
                std::move(field));
}

Block block_image(const Poly& f, Elem b, Elem c) {
    return block_image_extended(f, 1, b, c);
}

Block block_image_extended(const Poly& f, Elem a, Elem b, Elem c) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    Block blk(q);
    for (Elem x = 0; x < q; ++x)
        blk.set(F.add(F.add(F.mul(a, f.eval(x)), F.mul(b, x)), c));
    return blk;
}

std::map<std::uint32_t, std::uint64_t> value_spectrum(const Poly& f,
                                                      bool extended) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    const auto tab = f.table();
    std::vector<std::uint32_t> stamp(q, 0);
    std::uint32_t gen = 0;
    std::map<std::uint32_t, std::uint64_t> hist;
    auto image_size = [&](Elem a, Elem b) {
        ++gen;
        std::uint32_t n = 0;
        for (Elem x = 0; x < q; ++x) {
            Elem vv = F.add(F.mul(a, tab[x]), F.mul(b, x));
            if (stamp[vv] != gen) {
                stamp[vv] = gen;
                ++n;
            }
        }
        return n;
    };
    if (extended) {
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) hist[image_size(a, b)] += q;
    } else {
        for (Elem b = 0; b < q; ++b) hist[image_size(1, b)] += q;
    }
    return hist;
}

Design build_design(const Poly& f, std::uint32_t k, bool extended) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    if (k < 2 || k > q) throw std::invalid_argument("need 2 <= k <= q");
    const auto tab = f.table();
    std::vector<Block> blocks;
    std::vector<std::uint32_t> stamp(q, 0);
    std::uint32_t gen = 0;
    std::vector<Elem> base;
    auto scan = [&](Elem a, Elem b) {
        ++gen;
        base.clear();
        for (Elem x = 0; x < q; ++x) {
            Elem vv = F.add(F.mul(a, tab[x]), F.mul(b, x));
            if (stamp[vv] != gen) {
                stamp[vv] = gen;
                base.push_back(vv);
            }
        }
        if (base.size() != k) return;
        // the c shift only translates the image
        for (Elem c = 0; c < q; ++c) {
            Block blk(q);
            for (Elem vv : base) blk.set(F.add(vv, c));
            blocks.push_back(std::move(blk));
        }
    };
    if (extended) {
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) scan(a, b);
    } else {
        for (Elem b = 0; b < q; ++b) scan(1, b);
    }
    nlohmann::ordered_json source;
    source["construction"] = extended ? "extended" : "basic";
    source["poly"] = f.to_json();
    source["k"] = k;
    return Design::make(q, k, std::move(blocks), std::move(source), f.field());
}

std::uint64_t binomial(std::uint64_t n, std::uint32_t k) {
    if (k > n) return 0;
    constexpr std::uint64_t cap = std::uint64_t(1) << 63;
    std::uint64_t r = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        if (r > cap / (n - i + 1)) return cap;
        r = r * (n - i + 1) / i;
    }
    return r;
}

bool design_admissible(std::uint32_t v, std::uint32_t k, std::uint32_t t,
                       std::uint64_t b, std::uint64_t lambda) {
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(b) * binomial(k, t);
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(lambda) * binomial(v, t);
    return lhs == rhs;
}

namespace {

struct ColexRanker {
    std::vector<std::uint64_t> b2, b3, b4;
    explicit ColexRanker(std::uint32_t v) {
        b2.resize(v + 1);
        b3.resize(v + 1);
        b4.resize(v + 1);
        for (std::uint64_t x = 0; x <= v; ++x) {
            b2[x] = x >= 2 ? x * (x - 1) / 2 : 0;
            b3[x] = x >= 3 ? x * (x - 1) * (x - 2) / 6 : 0;
            b4[x] = x >= 4 ? x * (x - 1) * (x - 2) * (x - 3) / 24 : 0;
        }
    }
};

std::vector<std::uint32_t> unrank_colex(std::uint64_t rank, std::uint32_t t) {
    std::vector<std::uint32_t> subset(t);
    for (std::uint32_t i = t; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        std::uint64_t c = i - 1;
        while (binomial(c + 1, i) <= rank) ++c;
        subset[i - 1] = static_cast<std::uint32_t>(c);
        rank -= binomial(c, i);
    }
    return subset;
}

void count_block_subsets(const std::vector<std::uint32_t>& pts,
                         std::uint32_t t, const ColexRanker& ranker,
                         std::vector<std::uint32_t>& counters) {
    const std::size_t k = pts.size();
    switch (t) {
        case 1:
            for (auto p : pts) ++counters[p];
            break;
        case 2:
            for (std::size_t j = 1; j < k; ++j) {
                const std::uint64_t base = ranker.b2[pts[j]];
                for (std::size_t i = 0; i < j; ++i) ++counters[base + pts[i]];
            }
            break;
        case 3:
            for (std::size_t l = 2; l < k; ++l) {
                const std::uint64_t base3 = ranker.b3[pts[l]];
                for (std::size_t j = 1; j < l; ++j) {
                    const std::uint64_t base = base3 + ranker.b2[pts[j]];
                    for (std::size_t i = 0; i < j; ++i)
                        ++counters[base + pts[i]];
                }
            }
            break;
        case 4:
            for (std::size_t h = 3; h < k; ++h) {
                const std::uint64_t base4 = ranker.b4[pts[h]];
                for (std::size_t l = 2; l < h; ++l) {
                    const std::uint64_t base3 = base4 + ranker.b3[pts[l]];
                    for (std::size_t j = 1; j < l; ++j) {
                        const std::uint64_t base = base3 + ranker.b2[pts[j]];
                        for (std::size_t i = 0; i < j; ++i)
                            ++counters[base + pts[i]];
                    }
                }
            }
            break;
        default:
            throw std::invalid_argument("t must be in [1, 4]");
    }
}

TDesignResult verify_monte_carlo(const Design& d, std::uint32_t t,
                                 const VerifyOptions& opts) {
    SplitMix64 rng(opts.seed);
    TDesignResult res;
    res.mode = VerifyMode::monte_carlo;
    res.samples = opts.mc_samples;
    std::optional<std::uint64_t> lambda;
    std::vector<std::uint32_t> first_subset;
    for (std::uint32_t s = 0; s < opts.mc_samples; ++s) {
        // Floyd's sampler: uniform t-subset of [0, v)
        std::vector<std::uint32_t> subset;
        for (std::uint32_t i = d.v() - t; i < d.v(); ++i) {
            std::uint32_t r = static_cast<std::uint32_t>(rng.below(i + 1));
            if (std::find(subset.begin(), subset.end(), r) != subset.end())
                subset.push_back(i);
            else
                subset.push_back(r);
        }
        std::sort(subset.begin(), subset.end());
        std::uint64_t cnt = 0;
        for (const auto& blk : d.blocks()) {
            bool all = true;
            for (auto p : subset)
                if (!blk.test(p)) {
                    all = false;
                    break;
                }
            cnt += all;
        }
        if (!lambda) {
            lambda = cnt;
            first_subset = subset;
        } else if (*lambda != cnt) {
            TDesignWitness w;
            w.subset_low = first_subset;
            w.count_low = *lambda;
            w.subset_high = subset;
            w.count_high = cnt;
            res.witness = std::move(w);
            return res;
        }
    }
    res.is_design = true;
    res.lambda = *lambda;
    return res;
}

}  // namespace

TDesignResult verify_tdesign(const Design& d, std::uint32_t t,
                             const VerifyOptions& opts) {
    if (t < 1 || t >= d.k())
        throw std::invalid_argument("need 1 <= t < k");
    if (t > 4) throw std::invalid_argument("t > 4 not supported");
    const std::uint64_t n_counters = binomial(d.v(), t);
    if (n_counters > opts.counter_cap) return verify_monte_carlo(d, t, opts);

    const ColexRanker ranker(d.v());
    const std::uint64_t work = d.b() * binomial(d.k(), t);
    unsigned threads = opts.threads;
    if (threads == 0) {
        threads = work > 32'000'000 ? std::thread::hardware_concurrency() : 1;
        if (threads == 0) threads = 1;
        threads = std::min(threads, 8u);
    }

    std::vector<std::uint32_t> counters(n_counters, 0);
    if (threads <= 1 || d.blocks().size() < 2 * threads) {
        for (const auto& blk : d.blocks())
            count_block_subsets(blk.points(), t, ranker, counters);
    } else {
        // per-thread counters, merged by addition: result independent of
        // the thread count
        std::vector<std::vector<std::uint32_t>> partial(
            threads - 1, std::vector<std::uint32_t>(n_counters, 0));
        std::vector<std::thread> pool;
        const std::size_t nb = d.blocks().size();
        auto run = [&](std::size_t lo, std::size_t hi,
                       std::vector<std::uint32_t>& out) {
            for (std::size_t i = lo; i < hi; ++i)
                count_block_subsets(d.blocks()[i].points(), t, ranker, out);
        };
        const std::size_t chunk = (nb + threads - 1) / threads;
        for (unsigned ti = 1; ti < threads; ++ti) {
            std::size_t lo = std::min(nb, ti * chunk);
            std::size_t hi = std::min(nb, (ti + 1) * chunk);
            pool.emplace_back(run, lo, hi, std::ref(partial[ti - 1]));
        }
        run(0, std::min(nb, chunk), counters);
        for (auto& th : pool) th.join();
        for (const auto& part : partial)
            for (std::size_t i = 0; i < n_counters; ++i)
                counters[i] += part[i];
    }

    TDesignResult res;
    res.mode = VerifyMode::exhaustive;
    const std::uint32_t lambda0 = counters[0];
    for (std::uint64_t i = 1; i < n_counters; ++i) {
        if (counters[i] != lambda0) {
            TDesignWitness w;
            w.subset_low = unrank_colex(0, t);
            w.count_low = lambda0;
            w.subset_high = unrank_colex(i, t);
            w.count_high = counters[i];
            res.witness = std::move(w);
            return res;
        }
    }
    res.is_design = true;
    res.lambda = lambda0;
    return res;
}

IntersectionProfile intersection_numbers(const Design& d) {
    if (d.b() < 2) throw std::invalid_argument("need at least two blocks");
    IntersectionProfile prof;
    const auto& blocks = d.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            ++prof.counts[blocks[i].intersection_count(blocks[j])];
    prof.quasi_symmetric = prof.counts.size() == 2;
    return prof;
}

nlohmann::ordered_json DesignParams::to_json() const {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["v"] = v;
    j["k"] = k;
    j["lambda"] = lambda;
    j["b"] = b;
    j["simple"] = simple;
    j["symmetric"] = symmetric;
    j["steiner"] = steiner;
    j["trivial"] = trivial;
    return j;
}

DesignParams predict_params(const Poly& f, std::uint64_t mu, std::uint32_t t,
                            bool extended) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    if (mu == 0) throw std::invalid_argument("mu must be positive");
    DesignParams p;
    p.t = t;
    p.v = q;

    auto exact_div = [](std::uint64_t num, std::uint64_t den) {
        if (num % den != 0)
            throw std::invalid_argument("parameters are not integral");
        return num / den;
    };

    const auto mono = f.monomial_exponent();
    const bool opoly = is_opolynomial(f);
    if (extended) {
        if (!opoly) throw std::invalid_argument("unclassified polynomial");
        p.k = q / 2;
        p.b = std::uint64_t(q) * (q - 1) * (q - 1);
        if (t == 3)
            p.lambda = exact_div(std::uint64_t(q - 4) * (q - 1) * q, 8);
        else if (t == 2)
            p.lambda = exact_div(std::uint64_t(q - 1) * q * (q - 2), 4);
        else
            throw std::invalid_argument("no prediction for this t");
    } else if (mono && opoly) {
        p.k = q / 2;
        p.b = exact_div(std::uint64_t(q) * (q - 1), mu);
        if (t == 3)
            p.lambda = exact_div(std::uint64_t(q) * (q - 4), 8 * mu);
        else if (t == 2)
            p.lambda = exact_div(std::uint64_t(q) * (q - 2), 4 * mu);
        else
            throw std::invalid_argument("no prediction for this t");
    } else if (mono) {
        auto dp = is_design_poly(f);
        if (!dp.is_design_poly)
            throw std::invalid_argument("unclassified polynomial");
        if (t != 2) throw std::invalid_argument("no prediction for this t");
        p.k = dp.image_size;
        p.b = exact_div(std::uint64_t(q) * (q - 1), mu);
        p.lambda = exact_div(std::uint64_t(p.k) * (p.k - 1), mu);
    } else if (opoly) {
        if (t != 2) throw std::invalid_argument("no prediction for this t");
        p.k = q / 2;
        p.b = std::uint64_t(q) * (q - 1);
        p.lambda = exact_div(std::uint64_t(q) * (q - 2), 4);
    } else {
        throw std::invalid_argument("unclassified polynomial");
    }
    p.symmetric = p.b == p.v;
    p.steiner = t >= 2 && p.lambda == 1;
    p.trivial = p.k == t || p.k == p.v;
    if (!design_admissible(p.v, p.k, p.t, p.b, p.lambda))
        throw std::logic_error("predicted parameters are inadmissible");
    return p;
}

std::uint64_t count_incidences(const Poly& f, const std::vector<Elem>& points,
                               IncidenceMode mode, Elem a) {
    const Field& F = *f.field();
    const std::uint32_t q = F.q();
    const std::size_t want =
        mode == IncidenceMode::two_point ? 2 : 3;
    if (points.size() != want)
        throw std::invalid_argument("wrong number of target points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("target points must be distinct");
    if (!is_opolynomial(f))
        throw std::invalid_argument("incidence counts need an o-polynomial");
    if (mode == IncidenceMode::three_point_fixed_a) {
        if (!f.monomial_exponent())
            throw std::invalid_argument("fixed-a mode needs an o-monomial");
        if (a == 0) throw std::invalid_argument("a must be nonzero");
    }

    const auto tab = f.table();
    Block image(q);
    std::uint64_t total = 0;
    auto count_shifts = [&](Elem aa, Elem b) {
        // |{c : all points in V(aa f + b x) + c}|
        image.clear();
        for (Elem x = 0; x < q; ++x)
            image.set(F.add(F.mul(aa, tab[x]), F.mul(b, x)));
        for (Elem c = 0; c < q; ++c) {
            bool all = true;
            for (Elem u : points)
                if (!image.test(F.sub(u, c))) {
                    all = false;
                    break;
                }
            total += all;
        }
    };
    switch (mode) {
        case IncidenceMode::three_point_all:
            for (Elem aa = 1; aa < q; ++aa)
                for (Elem b = 1; b < q; ++b) count_shifts(aa, b);
            break;
        case IncidenceMode::three_point_fixed_a:
        case IncidenceMode::two_point:
            for (Elem b = 1; b < q; ++b)
                count_shifts(mode == IncidenceMode::two_point ? 1 : a, b);
            break;
    }
    return total;
}

}  // namespace opdlab

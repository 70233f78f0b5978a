#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opdlab/poly.hpp"

namespace opdlab {

/// Point-set bitset. Words are little-endian (point i lives in word
/// i/64); the canonical ordering and the hex export treat the whole
/// bitset as one big-endian number, highest point index first.
class Block {
  public:
    Block() = default;
    explicit Block(std::uint32_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::uint32_t size_bits() const { return nbits_; }
    const std::vector<std::uint64_t>& words() const { return w_; }

    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }
    bool test(std::uint32_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    std::uint32_t count() const;
    /// Set bits in ascending order.
    std::vector<std::uint32_t> points() const;

    std::uint32_t intersection_count(const Block& other) const;

    bool operator==(const Block& o) const { return w_ == o.w_; }
    bool operator<(const Block& o) const;  // big-endian word comparison

    std::string to_hex() const;
    static Block from_hex(const std::string& hex, std::uint32_t nbits);

  private:
    std::uint32_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Simple design: deduplicated, canonically sorted blocks of a common
/// size k over points 0..v-1.
class Design {
  public:
    /// Sorts, deduplicates and validates the block list. Throws on an
    /// empty block set or a block of the wrong size.
    static Design make(std::uint32_t v, std::uint32_t k,
                       std::vector<Block> blocks,
                       nlohmann::ordered_json source,
                       FieldPtr field = nullptr);

    std::uint32_t v() const { return v_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t b() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const nlohmann::ordered_json& source() const { return source_; }
    const FieldPtr& field() const { return field_; }  // may be null

    std::optional<std::size_t> find_block(const Block& blk) const;

    /// Canonical text artifact: a JSON parameter header line followed by
    /// one hex-encoded bitset per block, in canonical order.
    std::string to_export_string() const;
    static Design from_export_string(const std::string& text);

  private:
    std::uint32_t v_ = 0, k_ = 0;
    std::vector<Block> blocks_;
    nlohmann::ordered_json source_;
    FieldPtr field_;
};

Block block_image(const Poly& f, Elem b, Elem c);
Block block_image_extended(const Poly& f, Elem a, Elem b, Elem c);

/// Histogram of image sizes over all (b, c) pairs (basic) or (a, b, c)
/// triples (extended). Multiplicities sum to q^2 resp. q^3; the c shift
/// never changes an image size, which the enumeration exploits.
std::map<std::uint32_t, std::uint64_t> value_spectrum(const Poly& f,
                                                      bool extended);

/// All distinct blocks of size k from f(x)+bx+c (or af(x)+bx+c when
/// extended). Throws when no block has size k.
Design build_design(const Poly& f, std::uint32_t k, bool extended = false);

struct VerifyOptions {
    std::uint64_t counter_cap = std::uint64_t(1) << 28;
    std::uint32_t mc_samples = 200;
    std::uint64_t seed = 0x5eed;
    unsigned threads = 0;  // 0 = pick automatically
};

enum class VerifyMode { exhaustive, monte_carlo };

struct TDesignWitness {
    std::vector<std::uint32_t> subset_low, subset_high;
    std::uint64_t count_low = 0, count_high = 0;
};

struct TDesignResult {
    bool is_design = false;
    std::uint64_t lambda = 0;
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t samples = 0;  // monte-carlo only
    std::optional<TDesignWitness> witness;
};

/// Exhaustive t-design check: one counter per t-subset in
/// colexicographic rank order, C(k,t) increments per block, all counters
/// equal. Falls back to a seeded Monte-Carlo spot check (clearly
/// labelled) when C(v,t) exceeds the counter cap.
TDesignResult verify_tdesign(const Design& d, std::uint32_t t,
                             const VerifyOptions& opts = {});

struct IntersectionProfile {
    std::map<std::uint32_t, std::uint64_t> counts;  // size -> pair count
    bool quasi_symmetric = false;  // exactly two distinct sizes
};

/// Multiset of |B_i & B_j| over all unordered block pairs.
IntersectionProfile intersection_numbers(const Design& d);

struct DesignParams {
    std::uint32_t t = 0, v = 0, k = 0;
    std::uint64_t lambda = 0, b = 0;
    bool simple = true;
    bool symmetric = false;
    bool steiner = false;
    bool trivial = false;

    nlohmann::ordered_json to_json() const;
};

/// Closed-form parameters predicted by the classification of f
/// (d-monomial / o-monomial / o-polynomial; basic or extended
/// construction) for comparison with verify_tdesign output. mu is the
/// affine stabilizer order of the base image set. Throws when no closed
/// form covers the requested (classification, t) pair.
DesignParams predict_params(const Poly& f, std::uint64_t mu, std::uint32_t t,
                            bool extended = false);

enum class IncidenceMode {
    three_point_all,      // (a,b,c), ab != 0, three target points
    three_point_fixed_a,  // (b,c), b != 0, o-monomial, fixed a
    two_point,            // (b,c), b != 0, two target points
};

/// Exhaustive count of parameter tuples whose value set contains all the
/// given points.
std::uint64_t count_incidences(const Poly& f,
                               const std::vector<Elem>& points,
                               IncidenceMode mode, Elem a = 1);

/// C(n, k) saturating at 2^63.
std::uint64_t binomial(std::uint64_t n, std::uint32_t k);

/// Exact admissibility identity b * C(k,t) == lambda * C(v,t).
bool design_admissible(std::uint32_t v, std::uint32_t k, std::uint32_t t,
                       std::uint64_t b, std::uint64_t lambda);

}  // namespace opdlab

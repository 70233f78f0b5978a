#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opdlab/design.hpp"
#include "opdlab/poly.hpp"

namespace opdlab {

/// x -> u x + v with u != 0. The maps over a fixed field form the
/// one-dimensional general affine group, of order q(q-1).
struct AffineMap {
    Elem u = 1, v = 0;
    Elem apply(const Field& F, Elem x) const { return F.add(F.mul(u, x), v); }
};

/// x -> u x^(p^i) + v; the affine maps extended by Frobenius twists,
/// order q(q-1)m.
struct SemilinearMap {
    Elem u = 1, v = 0;
    std::uint32_t frob = 0;  // i in [0, m)
};

enum class PointGroup { affine, semilinear };

/// The image set {x^e + x : x in GF(q)} as a bitset over point indices.
Block shift_image_set(const FieldPtr& field, std::uint64_t e);

struct StabilizerResult {
    std::uint64_t order = 0;  // mu
    std::vector<AffineMap> elements;
};

/// Exhaustive scan of all q(q-1) affine maps for those fixing the given
/// subset setwise.
StabilizerResult stabilizer(const FieldPtr& field, const Block& subset);

/// True iff every element of the chosen group maps every block of d to
/// some block of d.
bool group_fixes_blockset(PointGroup group, const Design& d);

struct AffineVariantWitness {
    Elem h = 1, u = 1, v = 0, c = 0;
    /// False when the witness needed the +c offset extension of the
    /// basic form g(x) = h f(ux+v).
    bool basic_form = true;
};

/// Searches g(x) = h f(ux+v) + c exhaustively over
/// (h, u, v, c) in GF(q)* x GF(q)* x GF(q) x GF(q); a witness (with
/// c = 0) certifies that f and g support isomorphic designs, and the +c
/// extension still certifies equal block sets.
std::optional<AffineVariantWitness> affine_variant(const Poly& f,
                                                   const Poly& g);

/// Canonical invariant record: equal fingerprints are necessary for
/// design isomorphism, different fingerprints certify non-isomorphism.
struct DesignFingerprint {
    std::uint32_t v = 0, k = 0;
    std::uint64_t b = 0;
    // lambda for t = 1..3 when the design is a t-design, else nullopt
    std::vector<std::optional<std::uint64_t>> lambdas;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> intersections;
    std::vector<std::uint32_t> point_degrees;  // sorted multiset
    // per-block histogram of intersection sizes, sorted multiset
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>
        block_profiles;

    bool operator==(const DesignFingerprint&) const = default;
    nlohmann::ordered_json to_json() const;
    std::string digest() const;  // FNV-1a of the canonical serialization
};

DesignFingerprint fingerprint(const Design& d);

enum class IsomorphyVerdict { isomorphic_certified, undetermined, non_isomorphic };

struct IsomorphyResult {
    IsomorphyVerdict verdict;
    std::optional<SemilinearMap> map;  // set when certified
};

/// Fingerprint comparison plus an exhaustive affine/semilinear search
/// for a block-set bijection. Never claims non-isomorphism without a
/// fingerprint separation.
IsomorphyResult design_isomorphy(const Design& a, const Design& b);

enum class GroupKind { multiplicative, additive };

struct DifferenceSetParams {
    std::uint32_t v = 0, k = 0;
    std::uint64_t lambda = 0;
};

/// Counts representations of every non-identity group element as
/// d1 d2^-1 (multiplicative) or d1 - d2 (additive); returns the
/// parameters when the count is constant. Multiplicative mode requires
/// 0 outside the subset.
std::optional<DifferenceSetParams> is_difference_set(const FieldPtr& field,
                                                     const Block& subset,
                                                     GroupKind group);

/// Development {gD : g in the group} of a verified difference set.
/// Multiplicative developments live on the q-1 nonzero elements (point
/// i of the design is field element i+1); additive ones on all of
/// GF(q). Throws when the subset is not a difference set.
Design develop(const FieldPtr& field, const Block& subset, GroupKind group);

struct WalshReport {
    std::uint32_t e = 0;
    std::uint32_t ell = 0;  // (e-1)/e mod q-1
    std::vector<std::int64_t> spectrum;  // indexed by beta
    bool pattern_ok = false;   // zero exactly off the Tr(beta^ell) = 1 set
    bool parseval_ok = false;  // sum of squares equals q^2
    std::int64_t magnitude = 0;  // 2^((m+1)/2)
    std::optional<Elem> violation;  // first beta breaking the pattern
};

/// Walsh transform of the indicator of {x^e + x} for an o-monomial
/// x^e with e = 2^i + 2^j and odd m; checks the two-valued support
/// pattern and Parseval. Sign convention: unnormalized (-1)^h transform.
WalshReport walsh_check(const FieldPtr& field, std::uint64_t e);

}  // namespace opdlab

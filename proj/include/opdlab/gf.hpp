#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace opdlab {

/// Field element, encoded as a base-p digit packing of the coefficient
/// vector of the residue polynomial: digit i of the index is the
/// coefficient of x^i. Index 0 is the additive identity, index 1 the
/// multiplicative identity, and for prime fields the index equals the
/// residue itself.
using Elem = std::uint32_t;

/// GF(p^m) with a fixed monic irreducible modulus. Immutable after
/// construction; all operations are pure and safe for concurrent use.
///
/// Arithmetic backend: full log/antilog tables up to q = 2^16, direct
/// polynomial reduction above (carry-less shifts in characteristic 2,
/// digit convolution otherwise). Addition is XOR in characteristic 2 and
/// table- or digit-based otherwise.
class Field {
  public:
    static constexpr std::uint32_t max_q = 1u << 20;
    static constexpr std::uint32_t log_table_max_q = 1u << 16;
    static constexpr std::uint32_t add_table_max_q = 2500;

    /// Builds GF(p^m). When `modulus` is omitted, picks the
    /// lexicographically smallest monic irreducible of degree m over
    /// GF(p), coefficients compared low-degree-first; the choice is
    /// deterministic across runs and platforms.
    Field(std::uint32_t p, std::uint32_t m,
          std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    bool char2() const { return p_ == 2; }
    /// Modulus coefficients, low degree to high, size m+1, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    /// A fixed generator of the multiplicative group.
    Elem generator() const { return generator_; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
        return add_digits(a, b);
    }

    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        if (!neg_table_.empty()) return neg_table_[a];
        return neg_digits(a);
    }

    Elem sub(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        return add(a, neg(b));
    }

    Elem mul(Elem a, Elem b) const {
        if (!log_.empty())
            return (a != 0 && b != 0) ? exp_[std::size_t(log_[a]) + log_[b]] : 0;
        return mul_reduce(a, b);
    }

    /// Multiplicative inverse; throws std::domain_error on zero.
    Elem inv(Elem a) const;

    /// a^e. For a != 0 the exponent is reduced mod q-1 (negative values
    /// allowed); 0^0 = 1, 0^e = 0 for e > 0, and 0^e with e < 0 throws.
    Elem pow(Elem a, std::int64_t e) const;

    /// Absolute trace a + a^p + ... + a^(p^(m-1)); the result is an
    /// element of the prime field, i.e. an index below p.
    Elem trace(Elem a) const;

    /// 1/e mod (q-1), in [1, q-1). Throws if gcd(e, q-1) != 1.
    std::uint32_t exponent_inverse(std::int64_t e) const;

    /// Reduces an exponent e >= 1 to its functional representative in
    /// [1, q-1]: x^e and x^reduce(e) agree as maps on GF(q).
    std::uint32_t reduce_exponent(std::uint64_t e) const {
        return static_cast<std::uint32_t>((e - 1) % (q_ - 1) + 1);
    }

    bool same_as(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

    /// {"p": .., "m": .., "modulus": [..]} — embedded in every report.
    nlohmann::ordered_json describe() const;

  private:
    std::uint32_t p_, m_, q_;
    std::vector<std::uint32_t> modulus_;
    std::uint64_t modbits_ = 0;  // modulus as bit pattern, char 2 only
    Elem generator_ = 0;

    std::vector<std::uint16_t> log_;   // log_[a] for a != 0
    std::vector<Elem> exp_;            // doubled: exp_[i] = g^(i mod q-1)
    std::vector<Elem> add_table_;      // odd p, small q only
    std::vector<Elem> neg_table_;
    std::vector<Elem> trace_table_;

    Elem add_digits(Elem a, Elem b) const;
    Elem neg_digits(Elem a) const;
    Elem mul_reduce(Elem a, Elem b) const;  // table-free multiply
    Elem pow_reduce(Elem a, std::uint64_t e) const;
    Elem trace_direct(Elem a) const;
    void build_tables();
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus =
                        std::nullopt);

FieldPtr field_from_json(const nlohmann::json& j);

namespace detail {
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u32(std::uint32_t n);
/// Irreducibility over GF(p) by trial division (degree <= deg/2 divisors).
bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p);
}  // namespace detail

}  // namespace opdlab

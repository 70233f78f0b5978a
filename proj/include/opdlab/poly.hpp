#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "opdlab/gf.hpp"

namespace opdlab {

/// Polynomial over GF(q), kept in functional normal form: exponents of
/// nonconstant terms are reduced to [1, q-1] (x^e acts as x^(e mod (q-1))
/// on nonzero arguments), like terms are merged, zero coefficients are
/// dropped. Values produced by composition or inversion are backed by a
/// full value table instead; a coefficient form is recoverable by
/// interpolation on demand. Instances are immutable.
class Poly {
  public:
    using Term = std::pair<std::uint32_t, Elem>;  // (exponent, coefficient)

    static Poly monomial(FieldPtr field, std::uint64_t e, Elem coeff = 1);
    static Poly constant(FieldPtr field, Elem c);
    static Poly from_terms(FieldPtr field,
                           const std::vector<std::pair<std::uint64_t, Elem>>& terms,
                           std::string name = {});
    static Poly from_table(FieldPtr field, std::vector<Elem> values,
                           std::string name = {});

    const FieldPtr& field() const { return field_; }
    const std::string& name() const { return name_; }
    Poly named(std::string n) const;

    /// Terms sorted by exponent. Table-backed polynomials interpolate
    /// first (cached per call, O(q^2)).
    std::vector<Term> terms() const;
    bool table_backed() const { return !table_.empty(); }

    /// Exponent e when the polynomial is exactly x^e with e >= 1.
    std::optional<std::uint32_t> monomial_exponent() const;

    Elem eval(Elem x) const;
    /// Value table over all q points, ascending index.
    std::vector<Elem> table() const;

    nlohmann::ordered_json to_json() const;
    static Poly from_json(const nlohmann::json& j, FieldPtr field = nullptr);

  private:
    Poly(FieldPtr f, std::vector<Term> t, std::vector<Elem> tab, std::string n)
        : field_(std::move(f)), terms_(std::move(t)), table_(std::move(tab)),
          name_(std::move(n)) {}

    FieldPtr field_;
    std::vector<Term> terms_;
    std::vector<Elem> table_;  // empty unless table-backed
    std::string name_;
};

/// Pointwise equality of the induced maps (the working notion of
/// polynomial equality here, modulo x^q - x).
bool functionally_equal(const Poly& f, const Poly& g);

bool is_permutation(const Poly& f);

/// Compositional inverse as a lookup-backed polynomial; throws if f is
/// not a permutation.
Poly comp_inverse(const Poly& f);

/// True iff f - f(0) is a permutation and f(x) + ux is exactly 2-to-1
/// for every u != 0 (the hyperoval criterion). The f(1) = 1
/// normalization is deliberately not required.
bool is_opolynomial(const Poly& f);

struct DesignPolyResult {
    bool is_design_poly = false;
    std::uint32_t image_size = 0;  // the common |{f(x)+bx}| when constant
};

/// Checks |{f(x)+bx}| is the same for every b != 0. Requires a
/// permutation input.
DesignPolyResult is_design_poly(const Poly& f);

struct TwinMonomialResult {
    bool is_twin = false;
    std::vector<std::uint32_t> sizes;  // distinct image sizes, ascending
};

/// Odd-q monomial test: x^e with gcd(e, q-1) = 1 whose shifted images
/// |{x^e + bx}| take exactly two distinct sizes over b != 0.
TwinMonomialResult is_twin_monomial(std::uint64_t e, const FieldPtr& field);

// O-polynomial transforms (each validates its input and yields another
// o-polynomial).
Poly opoly_inverse(const Poly& f);
Poly opoly_frobenius_twist(const Poly& f, std::uint32_t j);  // f(x^(2^j))^(2^(m-j))
Poly opoly_bar(const Poly& f);                               // x f(x^(q-2))
Poly opoly_shift(const Poly& f);                             // f(x+1) + f(1)

struct ExponentOrbit {
    std::uint32_t base = 0;
    std::vector<std::uint32_t> members;  // sorted, deduplicated
};

/// {e, 1/e, 1-e, 1/(1-e), e/(e-1), (e-1)/e} mod q-1. Requires
/// gcd(e(e-1), q-1) = 1. Monomial hyperovals are equivalent exactly when
/// their exponents share an orbit.
ExponentOrbit exponent_orbit(std::uint64_t e, const FieldPtr& field);

enum class OPolyFamily {
    Translation,        // x^(2^h), gcd(h, m) = 1
    Segre,              // x^6, m odd
    GlynnI,             // x^(3*2^((m+1)/2)+4), m odd
    GlynnII,            // exponent split on m mod 4, m odd
    Cherowitzo,         // trinomial with e = (m+1)/2, m odd
    CherowitzoInverse,  // closed-form compositional inverse
    Payne,              // x^(5/6)+x^(3/6)+x^(1/6), m odd
    PayneInverse,       // Dickson closed form, m odd
    Subiaco,            // parameter a with Tr(1/a) = 1
    Subiaco1,           // Subiaco at a = 1, m odd
};

/// Catalog entry in functional normal form; fractional exponents are
/// resolved through exponent_inverse at construction. Throws on family
/// constraint violations (parity, gcd, trace conditions).
Poly catalog_poly(OPolyFamily family, const FieldPtr& field,
                  std::uint32_t param = 0);

/// Stable string names: "trans:h", "segre", "glynn1", "glynn2",
/// "cherowitzo", "cherowitzo_inv", "payne", "payne_inv",
/// "subiaco:a_index", "subiaco1".
Poly catalog_poly(const std::string& name, const FieldPtr& field);

std::vector<std::string> catalog_names(const FieldPtr& field);

/// Dickson polynomial D_n(x, 1): D_0 = 2, D_1 = x,
/// D_n = x D_(n-1) - D_(n-2), coefficients reduced in the field's
/// characteristic. Coefficient recurrence, O(n^2).
Poly dickson_poly(std::uint64_t n, const FieldPtr& field);

/// Pointwise D_n(x, 1) by the same recurrence, O(n) per evaluation.
Elem dickson_eval(std::uint64_t n, Elem x, const Field& field);

enum class MonomialParity { odd_m, even_m, odd_q };

/// The known design-monomial exponent families valid for this field,
/// reduced mod q-1, each verified against the gcd emission filter
/// (gcd(e(e-1), q-1) = 1 in characteristic 2; gcd(e, q-1) = 1 and
/// gcd(e-1, q-1) = 2 for odd q) before being returned.
std::vector<std::uint32_t> dmonomial_exponents(const FieldPtr& field,
                                               MonomialParity parity);

}  // namespace opdlab

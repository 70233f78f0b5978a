#include "opdlab/gf.hpp"

#include <algorithm>
#include <numeric>

namespace opdlab {

namespace detail {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Remainder of f by a monic divisor, both low-to-high over GF(p).
bool divides(const std::vector<std::uint32_t>& div,
             const std::vector<std::uint32_t>& f, std::uint32_t p) {
    std::vector<std::uint32_t> rem = f;
    while (rem.size() >= div.size()) {
        std::uint32_t c = rem.back();
        if (c != 0) {
            std::size_t off = rem.size() - div.size();
            for (std::size_t k = 0; k < div.size(); ++k)
                rem[off + k] = (rem[off + k] + c * (p - div[k])) % p;
        }
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return rem.empty();
}

}  // namespace

bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    std::vector<std::uint32_t> div;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        div.assign(d + 1, 0);
        div[d] = 1;
        // odometer over the d low coefficients
        while (true) {
            if (divides(div, f, p)) return false;
            std::size_t i = 0;
            while (i < d && ++div[i] == p) div[i++] = 0;
            if (i == d) break;
        }
    }
    return true;
}

}  // namespace detail

namespace {

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p,
                                                std::uint32_t m) {
    // Enumerate coefficient tuples (c_0, ..., c_{m-1}) in lexicographic
    // order with c_0 most significant, i.e. low-degree-first comparison.
    std::vector<std::uint32_t> f(m + 1, 0);
    f[m] = 1;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::uint32_t i = m; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (detail::poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t m,
             std::optional<std::vector<std::uint32_t>> modulus)
    : p_(p), m_(m) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("p is not prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > max_q) throw std::invalid_argument("field order exceeds 2^20");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (modulus) {
        modulus_ = std::move(*modulus);
        if (modulus_.size() != m + 1 || modulus_.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree m");
        for (auto c : modulus_)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
        if (!detail::poly_irreducible(modulus_, p))
            throw std::invalid_argument("modulus is reducible over GF(p)");
    } else {
        modulus_ = smallest_irreducible(p, m);
    }
    build_tables();
}

Elem Field::add_digits(Elem a, Elem b) const {
    Elem r = 0, mult = 1;
    while (a != 0 || b != 0) {
        Elem d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        r += d * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

Elem Field::neg_digits(Elem a) const {
    Elem r = 0, mult = 1;
    while (a != 0) {
        Elem d = a % p_;
        if (d != 0) r += (p_ - d) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

Elem Field::mul_reduce(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (p_ == 2) {
        // carry-less multiply then reduce by the modulus bit pattern
        std::uint64_t x = a, acc = 0;
        std::uint64_t y = b;
        while (y != 0) {
            if (y & 1) acc ^= x;
            x <<= 1;
            y >>= 1;
        }
        for (int d = 2 * int(m_) - 2; d >= int(m_); --d)
            if (acc >> d & 1) acc ^= modbits_ << (d - m_);
        return static_cast<Elem>(acc);
    }
    // digit convolution mod p, then polynomial reduction
    std::uint32_t da[24], db[24], prod[48] = {0};
    std::uint32_t na = 0, nb = 0;
    for (Elem t = a; t != 0; t /= p_) da[na++] = t % p_;
    for (Elem t = b; t != 0; t /= p_) db[nb++] = t % p_;
    for (std::uint32_t i = 0; i < na; ++i)
        for (std::uint32_t j = 0; j < nb; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (std::uint32_t d = na + nb - 2 + 1; d-- > m_;) {
        std::uint32_t c = prod[d];
        if (c != 0) {
            prod[d] = 0;
            for (std::uint32_t k = 0; k < m_; ++k)
                prod[d - m_ + k] =
                    (prod[d - m_ + k] + c * (p_ - modulus_[k])) % p_;
        }
    }
    Elem r = 0;
    for (std::uint32_t i = m_; i-- > 0;) r = r * p_ + prod[i];
    return r;
}

Elem Field::pow_reduce(Elem a, std::uint64_t e) const {
    Elem r = 1, base = a;
    while (e != 0) {
        if (e & 1) r = mul_reduce(r, base);
        base = mul_reduce(base, base);
        e >>= 1;
    }
    return r;
}

void Field::build_tables() {
    if (p_ == 2)
        for (std::uint32_t i = 0; i <= m_; ++i)
            if (modulus_[i]) modbits_ |= std::uint64_t(1) << i;

    // find a multiplicative generator (table-free arithmetic)
    if (q_ == 2) {
        generator_ = 1;
    } else {
        const auto factors = prime_factors(q_ - 1);
        for (Elem g = 2; g < q_; ++g) {
            bool ok = true;
            for (auto r : factors)
                if (pow_reduce(g, (q_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                generator_ = g;
                break;
            }
        }
    }

    if (q_ <= log_table_max_q) {
        log_.assign(q_, 0);
        exp_.assign(2 * (q_ - 1), 0);
        Elem cur = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            exp_[i + q_ - 1] = cur;
            log_[cur] = static_cast<std::uint16_t>(i);
            cur = mul_reduce(cur, generator_);
        }
        trace_table_.resize(q_);
        for (Elem a = 0; a < q_; ++a) trace_table_[a] = trace_direct(a);
    }
    if (p_ != 2) {
        neg_table_.resize(q_);
        for (Elem a = 0; a < q_; ++a) neg_table_[a] = neg_digits(a);
        if (q_ <= add_table_max_q) {
            add_table_.resize(std::size_t(q_) * q_);
            for (Elem a = 0; a < q_; ++a)
                for (Elem b = 0; b < q_; ++b)
                    add_table_[std::size_t(a) * q_ + b] = add_digits(a, b);
        }
    }
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inversion of zero");
    if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
    return pow_reduce(a, q_ - 2);
}

Elem Field::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("inversion of zero");
        return 0;
    }
    const std::int64_t n = q_ - 1;
    std::uint64_t r = static_cast<std::uint64_t>(((e % n) + n) % n);
    if (!log_.empty()) {
        std::uint64_t le = (std::uint64_t(log_[a]) * r) % (q_ - 1);
        return exp_[le];
    }
    return pow_reduce(a, r);
}

Elem Field::trace_direct(Elem a) const {
    Elem acc = a, t = a;
    for (std::uint32_t i = 1; i < m_; ++i) {
        t = pow_reduce(t, p_);
        acc = add(acc, t);
    }
    return acc;
}

Elem Field::trace(Elem a) const {
    if (!trace_table_.empty()) return trace_table_[a];
    return trace_direct(a);
}

std::uint32_t Field::exponent_inverse(std::int64_t e) const {
    const std::int64_t n = q_ - 1;
    std::int64_t r = ((e % n) + n) % n;
    if (detail::gcd_u64(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(n)) != 1)
        throw std::domain_error("exponent not invertible mod q-1");
    // extended Euclid
    std::int64_t old_r = r, cur_r = n, old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        std::int64_t qt = old_r / cur_r;
        std::int64_t tmp = old_r - qt * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_s - qt * cur_s;
        old_s = cur_s;
        cur_s = tmp;
    }
    std::int64_t s = ((old_s % n) + n) % n;
    return static_cast<std::uint32_t>(s);
}

nlohmann::ordered_json Field::describe() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["m"] = m_;
    j["modulus"] = modulus_;
    return j;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t m,
                    std::optional<std::vector<std::uint32_t>> modulus) {
    return std::make_shared<Field>(p, m, std::move(modulus));
}

FieldPtr field_from_json(const nlohmann::json& j) {
    return make_field(j.at("p").get<std::uint32_t>(),
                      j.at("m").get<std::uint32_t>(),
                      j.at("modulus").get<std::vector<std::uint32_t>>());
}

}  // namespace opdlab

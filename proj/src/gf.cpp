#include "pgc/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pgc {

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first, over F_p

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of a mod b, b monic
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
    poly_trim(a);
    while (a.size() >= b.size()) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = lead * b[i] % p;
            std::uint64_t cur = a[shift + i];
            a[shift + i] = std::uint32_t((cur + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = std::uint32_t((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return c;
}

// trial factorization: divisible by no monic polynomial of degree 1..deg/2
bool poly_irreducible(const Poly& f, std::uint64_t p) {
    std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        // all monic divisor candidates of degree d
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g(d + 1, 0);
            std::uint64_t rest = v;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = std::uint32_t(rest % p);
                rest /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

Poly index_to_poly(std::uint64_t idx, std::uint64_t p, std::uint64_t e) {
    Poly f(e, 0);
    for (std::uint64_t i = 0; i < e && idx != 0; ++i) {
        f[i] = std::uint32_t(idx % p);
        idx /= p;
    }
    poly_trim(f);
    return f;
}

std::uint64_t poly_to_index(const Poly& f, std::uint64_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
    return idx;
}

}  // namespace

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    for (std::uint64_t d = 2; d * d <= value; ++d)
        if (value % d == 0) return false;
    return true;
}

void factor_prime_power(std::uint64_t q, std::uint64_t& p, std::uint64_t& e) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    std::uint64_t base = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            base = d;
            break;
        }
    }
    p = base;
    e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint64_t p, std::uint64_t e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (e < 1) throw std::invalid_argument("field extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (q > (std::uint64_t(1) << 62) / p) throw std::invalid_argument("p^e overflows 63 bits");
        q *= p;
    }

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->e_ = e;
    spec->q_ = q;

    if (e == 1) {
        spec->modulus_ = {0, 1};  // x
    } else {
        // smallest (c_0, c_1, ...) in lexicographic order, c_0 most significant
        std::uint64_t count = 1;
        for (std::uint64_t i = 0; i < e; ++i) count *= p;
        bool found = false;
        for (std::uint64_t v = 0; v < count && !found; ++v) {
            Poly f(e + 1, 0);
            std::uint64_t rest = v;
            for (std::uint64_t i = e; i-- > 0;) {
                f[i] = std::uint32_t(rest % p);
                rest /= p;
            }
            f[e] = 1;
            if (poly_irreducible(f, p)) {
                spec->modulus_.assign(f.begin(), f.end());
                found = true;
            }
        }
        if (!found) throw std::runtime_error("no irreducible polynomial found");  // cannot happen
    }

    if (q <= 4096) {
        spec->mul_table_.assign(std::size_t(q) * q, 0);
        if (e == 1) {
            for (std::uint64_t a = 0; a < q; ++a)
                for (std::uint64_t b = 0; b < q; ++b)
                    spec->mul_table_[std::size_t(a) * q + b] = std::uint16_t(a * b % p);
        } else {
            // per-digit multiples of a*x^i make each entry an O(e) combination
            std::vector<std::uint64_t> multiples(std::size_t(e) * p);
            for (std::uint64_t a = 0; a < q; ++a) {
                std::uint64_t shifted = a;
                for (std::uint64_t i = 0; i < e; ++i) {
                    std::uint64_t* row = multiples.data() + std::size_t(i) * p;
                    row[0] = 0;
                    for (std::uint64_t d = 1; d < p; ++d) row[d] = spec->add(row[d - 1], shifted);
                    shifted = spec->mul_nocache(shifted, p);  // index p is x
                }
                for (std::uint64_t b = 0; b < q; ++b) {
                    std::uint64_t acc = 0;
                    std::uint64_t digits = b;
                    for (std::uint64_t i = 0; i < e && digits != 0; ++i) {
                        acc = spec->add(acc, multiples[std::size_t(i) * p + digits % p]);
                        digits /= p;
                    }
                    spec->mul_table_[std::size_t(a) * q + b] = std::uint16_t(acc);
                }
            }
        }
        spec->inv_table_.assign(std::size_t(q), 0);
        for (std::uint64_t a = 1; a < q; ++a) spec->inv_table_[a] = std::uint16_t(spec->pow(a, q - 2));
    }
    return spec;
}

std::uint64_t FieldSpec::add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t result = 0, scale = 1;
    for (std::uint64_t i = 0; i < e_; ++i) {
        std::uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint64_t s = da + db;
        if (s >= p_) s -= p_;
        result += s * scale;
        scale *= p_;
    }
    return result;
}

std::uint64_t FieldSpec::neg(std::uint64_t a) const {
    if (p_ == 2) return a;
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint64_t result = 0, scale = 1;
    for (std::uint64_t i = 0; i < e_; ++i) {
        std::uint64_t d = a % p_;
        a /= p_;
        result += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
    }
    return result;
}

std::uint64_t FieldSpec::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t FieldSpec::mul_nocache(std::uint64_t a, std::uint64_t b) const {
    if (e_ == 1) return (unsigned __int128)(a)*b % p_;
    Poly fa = index_to_poly(a, p_, e_);
    Poly fb = index_to_poly(b, p_, e_);
    Poly mod(modulus_.begin(), modulus_.end());
    Poly prod = poly_rem(poly_mul(fa, fb, p_), mod, p_);
    return poly_to_index(prod, p_);
}

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
    if (!mul_table_.empty()) return mul_table_[std::size_t(a) * q_ + b];
    return mul_nocache(a, b);
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t k) const {
    std::uint64_t result = 1;
    std::uint64_t base = a;
    while (k != 0) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, q_ - 2);
}

bool FieldSpec::same_as(const FieldSpec& other) const {
    return this == &other || (p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_);
}

namespace {
void check_same(FieldElement a, FieldElement b) {
    if (a.field == nullptr || b.field == nullptr || !a.field->same_as(*b.field))
        throw std::invalid_argument("field elements belong to different fields");
}
}  // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.field, a.field->add(a.index, b.index)};
}

FieldElement operator-(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.field, a.field->sub(a.index, b.index)};
}

FieldElement operator*(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.field, a.field->mul(a.index, b.index)};
}

FieldElement inverse(FieldElement a) {
    if (a.field == nullptr) throw std::invalid_argument("element has no field");
    return {a.field, a.field->inv(a.index)};
}

bool operator==(FieldElement a, FieldElement b) {
    check_same(a, b);
    return a.index == b.index;
}

}  // namespace pgc

#include "idealdens/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace idealdens {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
    auto r = static_cast<__int128>(a) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

}  // namespace

std::string NumberField::name() const {
    if (kind_ == FieldKind::rational) return "Q";
    return "Q(sqrt " + std::to_string(m_) + ")";
}

NumberField make_rational_field() { return NumberField{}; }

NumberField make_quadratic_field(std::int64_t m) {
    if (m == 0 || m == 1) throw DegenerateM("radicand must not be 0 or 1, got " + std::to_string(m));
    if (!is_squarefree(m)) throw NotSquarefree(std::to_string(m) + " is not squarefree");
    NumberField k;
    k.kind_ = FieldKind::quadratic;
    k.m_ = m;
    k.disc_ = mod_floor(m, 4) == 1 ? m : 4 * m;
    if (m < 0) k.units_ = k.disc_ == -4 ? 4 : k.disc_ == -3 ? 6 : 2;
    return k;
}

NumberField parse_field(std::string_view spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "Q") return make_rational_field();
    constexpr std::string_view prefix = "Q(sqrt";
    if (s.size() > prefix.size() + 1 && s.starts_with(prefix) && s.back() == ')') {
        std::string_view digits(s.data() + prefix.size(), s.size() - prefix.size() - 1);
        if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
        std::int64_t m = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
        if (ec == std::errc{} && end == digits.data() + digits.size()) return make_quadratic_field(m);
    }
    throw ParseError("cannot parse field '" + std::string(spec) + "'; expected Q or Q(sqrt m)");
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // Deterministic for all 64-bit n.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_squarefree(std::int64_t m) {
    if (m == 0) return false;
    std::uint64_t n = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
    for (std::uint64_t q = 2; q <= n / q; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return false;
    }
    return true;
}

int kronecker_symbol(std::int64_t d, std::uint64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        auto r = mod_floor(d, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol for odd n.
    std::uint64_t a = mod_floor(d, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            auto r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<PrimeFactor> split_prime(const NumberField& k, std::uint64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (k.degree() == 1) return {{PrimeIdeal{p, 1, 1, 0, 0, p}, 1}};

    const std::int64_t m = k.radicand();
    switch (kronecker_symbol(k.discriminant(), p)) {
        case 1: {
            std::uint64_t r = 0;
            if (p != 2) {
                r = sqrt_mod(mod_floor(m, p), p);
                r = std::min(r, p - r);
            }
            return {{PrimeIdeal{p, 1, 1, 0, r, p}, 1}, {PrimeIdeal{p, 1, 1, 1, p == 2 ? 1 : p - r, p}, 1}};
        }
        case -1:
            return {{PrimeIdeal{p, 1, 2, 0, 0, p * p}, 1}};
        default:
            return {{PrimeIdeal{p, 2, 1, 0, p == 2 ? mod_floor(m, 2) : 0, p}, 2}};
    }
}

std::vector<std::uint64_t> rational_primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

PrimeNumbering primes_up_to_norm(const NumberField& k, std::uint64_t bound) {
    PrimeNumbering out;
    for (std::uint64_t p : rational_primes_up_to(bound)) {
        for (const auto& [prime, e] : split_prime(k, p)) {
            if (prime.residue_degree == 2 && p > bound / p) continue;
            out.push_back(prime);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PrimeNumbering first_primes(const NumberField& k, std::size_t count) {
    if (count == 0) return {};
    std::uint64_t bound = 16;
    for (;;) {
        auto primes = primes_up_to_norm(k, bound);
        if (primes.size() >= count) {
            primes.resize(count);
            return primes;
        }
        bound *= 2;
    }
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 1 || d == 0) return false;
    if (mod_floor(d, 4) == 1) return is_squarefree(d);
    if (mod_floor(d, 4) != 0) return false;
    std::int64_t m = d / 4;
    auto r = mod_floor(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

std::uint64_t class_number_imag_quadratic(std::int64_t d) {
    if (d >= 0) throw NotNegative("discriminant must be negative, got " + std::to_string(d));
    if (!is_fundamental_discriminant(d)) throw NotFundamental(std::to_string(d) + " is not a fundamental discriminant");
    const std::int64_t abs_d = -d;
    std::uint64_t h = 0;
    // Reduced forms (a, b, c): |b| <= a <= c, b >= 0 if |b| = a or a = c; forces 3a^2 <= |D|.
    for (std::int64_t a = 1; 3 * a * a <= abs_d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b - d) % 2 != 0) continue;
            std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            ++h;
        }
    }
    return h;
}

double analytic_residue_imag_quadratic(const NumberField& k) {
    if (!k.imaginary()) throw UnsupportedField("analytic residue needs an imaginary quadratic field, got " + k.name());
    const auto h = static_cast<double>(class_number_imag_quadratic(k.discriminant()));
    const auto w = static_cast<double>(*k.unit_count());
    return 2.0 * std::numbers::pi * h / (w * std::sqrt(static_cast<double>(-k.discriminant())));
}

}  // namespace idealdens

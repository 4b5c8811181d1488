// Number fields of degree at most two and the splitting of rational primes.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idealdens {

class FieldError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NotSquarefree : public FieldError {
  public:
    using FieldError::FieldError;
};
class DegenerateM : public FieldError {
  public:
    using FieldError::FieldError;
};
class NotPrime : public FieldError {
  public:
    using FieldError::FieldError;
};
class NotFundamental : public FieldError {
  public:
    using FieldError::FieldError;
};
class NotNegative : public FieldError {
  public:
    using FieldError::FieldError;
};
class UnsupportedField : public FieldError {
  public:
    using FieldError::FieldError;
};
class ParseError : public FieldError {
  public:
    using FieldError::FieldError;
};

enum class FieldKind { rational, quadratic };

/// K = Q or K = Q(sqrt m) with m squarefree, m != 0, 1.
class NumberField {
  public:
    FieldKind kind() const { return kind_; }
    int degree() const { return kind_ == FieldKind::rational ? 1 : 2; }
    /// Radicand m; 1 for Q.
    std::int64_t radicand() const { return m_; }
    std::int64_t discriminant() const { return disc_; }
    bool imaginary() const { return kind_ == FieldKind::quadratic && m_ < 0; }
    /// Number of roots of unity; empty when the unit group is infinite.
    std::optional<int> unit_count() const { return units_; }

    /// "Q" or "Q(sqrt m)".
    std::string name() const;

    friend bool operator==(const NumberField& a, const NumberField& b) { return a.disc_ == b.disc_; }

  private:
    friend NumberField make_rational_field();
    friend NumberField make_quadratic_field(std::int64_t m);

    FieldKind kind_ = FieldKind::rational;
    std::int64_t m_ = 1;
    std::int64_t disc_ = 1;
    std::optional<int> units_;
};

NumberField make_rational_field();
NumberField make_quadratic_field(std::int64_t m);

/// Parses "Q" or "Q(sqrt m)"; whitespace is ignored.
NumberField parse_field(std::string_view spec);

/// A prime ideal of O_K lying over the rational prime p.
///
/// For a split p the two primes are told apart by conjugate_index: index 0
/// contains sqrt(m) - r for the root r of x^2 = m (mod p) with 0 <= r <= p/2
/// (for p = 2 the root 0 of x^2 - x + (1-D)/4). Primes order by
/// (norm, p, conjugate_index), which is the global numbering.
struct PrimeIdeal {
    std::uint64_t p = 0;
    std::uint8_t ramification = 1;
    std::uint8_t residue_degree = 1;
    std::uint8_t conjugate_index = 0;
    std::uint64_t root = 0;
    std::uint64_t norm = 0;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.p == b.p && a.conjugate_index == b.conjugate_index;
    }
    friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
        if (auto c = a.norm <=> b.norm; c != 0) return c;
        if (auto c = a.p <=> b.p; c != 0) return c;
        return a.conjugate_index <=> b.conjugate_index;
    }
};

struct PrimeFactor {
    PrimeIdeal prime;
    int exponent = 1;  // exponent of prime in (p)
};

/// Kronecker symbol (D/n) for n >= 1.
int kronecker_symbol(std::int64_t d, std::uint64_t n);

bool is_prime(std::uint64_t n);
bool is_squarefree(std::int64_t m);

/// Factorization of (p) in O_K, ordered by conjugate_index.
std::vector<PrimeFactor> split_prime(const NumberField& k, std::uint64_t p);

/// Sequence of prime ideals ordered by (norm, p, conjugate_index).
using PrimeNumbering = std::vector<PrimeIdeal>;

/// All prime ideals of norm <= bound, in the global order.
PrimeNumbering primes_up_to_norm(const NumberField& k, std::uint64_t bound);

/// The first `count` prime ideals of the global numbering.
PrimeNumbering first_primes(const NumberField& k, std::size_t count);

/// Class number of a negative fundamental discriminant, by counting reduced forms.
std::uint64_t class_number_imag_quadratic(std::int64_t d);

bool is_fundamental_discriminant(std::int64_t d);

/// Residue of zeta_K at s = 1 from the class number formula 2 pi h / (w sqrt|D|).
double analytic_residue_imag_quadratic(const NumberField& k);

/// Rational primes up to n (plain sieve of Eratosthenes).
std::vector<std::uint64_t> rational_primes_up_to(std::uint64_t n);

}  // namespace idealdens

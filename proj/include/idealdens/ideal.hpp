// Integral ideals in factored form, enumeration by norm, and norm-count sieves.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "idealdens/field.hpp"

namespace idealdens {

class FieldMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};
class EmptySet : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};
class BoundTooSmall : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};
/// A norm does not fit in 64 bits; use Ideal::norm_big().
class NormOverflow : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

struct IdealFactor {
    PrimeIdeal prime;
    int exponent = 0;

    friend bool operator==(const IdealFactor&, const IdealFactor&) = default;
    friend std::strong_ordering operator<=>(const IdealFactor& a, const IdealFactor& b) {
        if (auto c = a.prime <=> b.prime; c != 0) return c;
        return a.exponent <=> b.exponent;
    }
};

/// Non-owning view of an ideal produced during enumeration.
struct IdealView {
    std::span<const IdealFactor> factors;
    std::uint64_t norm = 1;

    /// Exponent of `p` in this ideal (0 if absent).
    int exponent_of(const PrimeIdeal& p) const;
};

/// A nonzero integral ideal, stored as its prime factorization.
///
/// Factors are sorted by the global prime order with positive exponents;
/// the empty factorization is O_K. The field is tagged by its discriminant.
class Ideal {
  public:
    /// The unit ideal O_K.
    explicit Ideal(const NumberField& k) : field_tag_(k.discriminant()) {}
    /// Unsorted input with repeated primes is merged; zero exponents are dropped.
    Ideal(const NumberField& k, std::vector<IdealFactor> factors);
    Ideal(const NumberField& k, IdealView view);

    static Ideal prime(const NumberField& k, const PrimeIdeal& p, int exponent = 1);
    /// O_K of the field `sibling` belongs to.
    static Ideal unit_of(const Ideal& sibling);
    /// The principal ideal (n) for a positive integer n.
    static Ideal principal(const NumberField& k, std::uint64_t n);

    std::int64_t field_tag() const { return field_tag_; }
    const std::vector<IdealFactor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    IdealView view() const { return {factors_, norm_}; }

    /// Throws NormOverflow when the norm exceeds 2^64 - 1.
    std::uint64_t norm() const;
    bool norm_overflows() const { return overflow_; }
    mpz_class norm_big() const;

    int exponent_of(const PrimeIdeal& p) const { return view().exponent_of(p); }

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.field_tag_ == b.field_tag_ && a.factors_ == b.factors_;
    }
    /// Nondecreasing norm, ties broken lexicographically on the factor list.
    friend std::strong_ordering operator<=>(const Ideal& a, const Ideal& b);

  private:
    friend Ideal multiply(const Ideal& a, const Ideal& b);
    friend Ideal intersect(std::span<const Ideal> ideals);
    friend Ideal gcd(const Ideal& a, const Ideal& b);

    void recompute_norm();

    std::int64_t field_tag_;
    std::vector<IdealFactor> factors_;
    std::uint64_t norm_ = 1;
    bool overflow_ = false;
};

Ideal multiply(const Ideal& a, const Ideal& b);
/// Least common multiple: exponent-wise maximum.
Ideal intersect(std::span<const Ideal> ideals);
/// Ideal sum a + b: exponent-wise minimum.
Ideal gcd(const Ideal& a, const Ideal& b);
/// True iff a | b, i.e. b is contained in a.
bool divides(const Ideal& a, const Ideal& b);
bool divides(const Ideal& a, IdealView b);

using IdealVisitor = std::function<void(IdealView)>;

/// Calls `visit` once for every ideal built from `primes` with norm <= bound,
/// O_K first, then depth-first over products of prime powers.
/// `primes` must be sorted by norm.
void for_each_ideal(std::span<const PrimeIdeal> primes, std::uint64_t bound, const IdealVisitor& visit);
void for_each_ideal(const NumberField& k, std::uint64_t bound, const IdealVisitor& visit);

/// Number of ideals built from `primes`, per norm 0..bound, satisfying `keep`.
/// Work is split by leading prime over `threads` workers; the result does not
/// depend on the thread count. `keep` must be safe to call concurrently.
std::vector<std::uint32_t> count_by_norm(std::span<const PrimeIdeal> primes, std::uint64_t bound,
                                         const std::function<bool(IdealView)>& keep, unsigned threads = 1);

/// Every ideal of norm <= bound in nondecreasing norm order (ties lexicographic).
std::vector<Ideal> enumerate_ideals(const NumberField& k, std::uint64_t bound);

/// Exact ideal counts h(k) and H(x) = sum_{k <= x} h(k) for 1 <= x <= bound.
class NormCounter {
  public:
    NormCounter(std::uint64_t bound, std::vector<std::uint32_t> per_norm);

    std::uint64_t bound() const { return bound_; }
    /// Number of ideals of norm exactly n (0 for n = 0).
    std::uint32_t h(std::uint64_t n) const { return per_norm_.at(n); }
    /// Number of ideals of norm <= x, for x <= bound().
    std::uint64_t H(std::uint64_t x) const { return cumulative_.at(x); }
    std::span<const std::uint32_t> per_norm() const { return per_norm_; }

  private:
    std::uint64_t bound_;
    std::vector<std::uint32_t> per_norm_;
    std::vector<std::uint64_t> cumulative_;
};

/// Multiplicative sieve: convolves the local factors 1 + t_q + t_{q^2} + ...
/// over every prime ideal norm q <= bound.
NormCounter count_ideals(const NumberField& k, std::uint64_t bound);

/// Number of multiples of `a` with norm <= x, i.e. H(floor(x / N(a))).
std::uint64_t multiples_count(const NormCounter& counter, const Ideal& a, std::uint64_t x);

struct ResidueEstimate {
    double c_hat = 0;
    double error_band = 0;
};

/// c_hat = H(X)/X; error band kappa X^(-1/d) with kappa fitted on x in {X/10, 2X/10, ..., X}.
ResidueEstimate estimate_residue_constant(const NumberField& k, const NormCounter& counter, std::uint64_t x);
ResidueEstimate estimate_residue_constant(const NumberField& k, std::uint64_t x);

}  // namespace idealdens

// Harmonic ideal sums, partial Euler products and truncated Dedekind zeta values.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include <gmpxx.h>

#include "idealdens/field.hpp"
#include "idealdens/ideal.hpp"
#include "idealdens/numeric.hpp"

namespace idealdens {

class SNotGreaterThanOne : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// sum_{N(a) <= x} 1/N(a) = sum_{k <= x} h(k)/k.
long double harmonic_ideal_sum(const NormCounter& counter, std::uint64_t x);
long double harmonic_ideal_sum(const NumberField& k, std::uint64_t x);

/// Product of (1 - 1/N(p))^-1 over a prefix of the prime numbering.
///
/// The product is kept as an exact rational while numerator and denominator
/// stay under exact_bits; after that only the log-space sum is carried.
struct EulerProductState {
    static constexpr std::size_t exact_bits = 512;

    std::size_t k = 0;
    /// Largest prime norm used (0 when k = 0), or the requested bound for the cutoff overload.
    std::uint64_t cutoff = 0;
    std::optional<mpq_class> exact = mpq_class(1);
    /// Compensated sum of -log(1 - 1/N(p)).
    CompensatedSum log_sum;

    long double log_value() const { return log_sum.value(); }
    long double value() const;
    /// Multiplies in (1 - 1/norm)^-1.
    void include(std::uint64_t norm);
};

EulerProductState partial_euler_product(std::span<const PrimeIdeal> primes);
/// Over the first k primes of the global numbering.
EulerProductState partial_euler_product_first(const NumberField& k, std::size_t count);
/// Over all primes of norm <= cutoff.
EulerProductState partial_euler_product(const NumberField& k, std::uint64_t cutoff);

/// Pi(cutoff) / log(cutoff); tends to alpha_K e^gamma.
long double mertens_ratio(const NumberField& k, std::uint64_t cutoff);

/// alpha_K e^gamma for imaginary quadratic fields and Q (alpha_Q = 1).
long double mertens_target(const NumberField& k);

struct ZetaValue {
    long double value = 0;
    long double tail_bound = 0;
};

/// Truncated sum_{k <= X} h(k) k^-s; the true zeta_K(s) lies in [value, value + tail_bound].
///
/// tail_bound = 2 c_upper s/(s-1) X^(1-s), where c_upper is the largest H(x)/x
/// over X/10 <= x <= X.
ZetaValue dedekind_zeta(const NormCounter& counter, long double s, std::uint64_t truncation);
ZetaValue dedekind_zeta(const NumberField& k, long double s, std::uint64_t truncation);

}  // namespace idealdens

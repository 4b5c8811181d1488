#include "idealdens/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idealdens/numeric.hpp"

namespace idealdens {

long double harmonic_ideal_sum(const NormCounter& counter, std::uint64_t x) {
    if (x < 1) throw std::invalid_argument("harmonic sum needs x >= 1");
    if (x > counter.bound()) throw std::out_of_range("x exceeds counter bound");
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (auto c = counter.h(n)) sum.add(static_cast<long double>(c) / static_cast<long double>(n));
    }
    return sum.value();
}

long double harmonic_ideal_sum(const NumberField& k, std::uint64_t x) {
    return harmonic_ideal_sum(count_ideals(k, x), x);
}

long double EulerProductState::value() const {
    if (exact) return static_cast<long double>(exact->get_d());
    return std::exp(log_value());
}

void EulerProductState::include(std::uint64_t norm) {
    ++k;
    cutoff = std::max(cutoff, norm);
    log_sum.add(-std::log1p(-1.0L / static_cast<long double>(norm)));
    if (exact) {
        *exact *= mpq_class(mpz_class(static_cast<unsigned long>(norm)), mpz_class(static_cast<unsigned long>(norm - 1)));
        exact->canonicalize();
        if (mpz_sizeinbase(exact->get_num_mpz_t(), 2) > exact_bits ||
            mpz_sizeinbase(exact->get_den_mpz_t(), 2) > exact_bits)
            exact.reset();
    }
}

EulerProductState partial_euler_product(std::span<const PrimeIdeal> primes) {
    EulerProductState st;
    for (const auto& p : primes) st.include(p.norm);
    return st;
}

EulerProductState partial_euler_product_first(const NumberField& k, std::size_t count) {
    return partial_euler_product(first_primes(k, count));
}

EulerProductState partial_euler_product(const NumberField& k, std::uint64_t cutoff) {
    auto st = partial_euler_product(primes_up_to_norm(k, cutoff));
    st.cutoff = cutoff;
    return st;
}

long double mertens_ratio(const NumberField& k, std::uint64_t cutoff) {
    if (cutoff < 10) throw BoundTooSmall("Mertens ratio needs cutoff >= 10, got " + std::to_string(cutoff));
    return partial_euler_product(k, cutoff).value() / std::log(static_cast<long double>(cutoff));
}

long double mertens_target(const NumberField& k) {
    const long double alpha = k.degree() == 1 ? 1.0L : analytic_residue_imag_quadratic(k);
    return alpha * std::exp(euler_gamma);
}

ZetaValue dedekind_zeta(const NormCounter& counter, long double s, std::uint64_t truncation) {
    if (!(s > 1)) throw SNotGreaterThanOne("zeta_K(s) needs s > 1");
    if (truncation < 10) throw BoundTooSmall("zeta truncation needs X >= 10");
    if (truncation > counter.bound()) throw std::out_of_range("truncation exceeds counter bound");

    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= truncation; ++n) {
        if (auto c = counter.h(n)) sum.add(static_cast<long double>(c) * std::pow(static_cast<long double>(n), -s));
    }
    long double c_upper = 0;
    for (std::uint64_t x = truncation / 10; x <= truncation; ++x)
        c_upper = std::max(c_upper, static_cast<long double>(counter.H(x)) / static_cast<long double>(x));

    ZetaValue z;
    z.value = sum.value();
    z.tail_bound = 2 * c_upper * (s / (s - 1)) * std::pow(static_cast<long double>(truncation), 1 - s);
    return z;
}

ZetaValue dedekind_zeta(const NumberField& k, long double s, std::uint64_t truncation) {
    if (!(s > 1)) throw SNotGreaterThanOne("zeta_K(s) needs s > 1");
    if (truncation < 10) throw BoundTooSmall("zeta truncation needs X >= 10");
    return dedekind_zeta(count_ideals(k, truncation), s, truncation);
}

}  // namespace idealdens

// Families of ideals, their multiples M_A and A-free complements V_A, and the
// natural, logarithmic and multiplicative densities of these sets.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "idealdens/field.hpp"
#include "idealdens/ideal.hpp"
#include "idealdens/zeta.hpp"

namespace idealdens {

class TooLarge : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class DuplicateMembers : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Largest block of mutually entangled members summed by inclusion-exclusion.
inline constexpr std::size_t default_subset_cap = 20;
/// Norm bound used to make restricted rule-based families finite.
inline constexpr std::uint64_t default_work_bound = 1'000'000;

/// Inclusive norm interval [lo, hi].
struct NormInterval {
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
};

/// A set of nonzero integral ideals, given explicitly or by a rule.
class AFamily {
  public:
    struct Explicit {
        std::vector<Ideal> members;  // sorted, as given (duplicates kept)
    };
    struct PrimePowers {
        int l = 2;  // all p^l
    };
    struct NormIntervals {
        std::vector<NormInterval> intervals;  // sorted, disjoint
    };
    using Source = std::variant<Explicit, PrimePowers, NormIntervals>;

    static AFamily explicit_members(const NumberField& k, std::vector<Ideal> members);
    static AFamily prime_powers(const NumberField& k, int l);
    static AFamily norm_intervals(const NumberField& k, std::vector<NormInterval> intervals);

    const NumberField& field() const { return field_; }
    const Source& source() const { return source_; }
    bool is_finite() const { return std::holds_alternative<Explicit>(source_); }

    /// Membership in A itself.
    bool contains(IdealView a) const;
    /// Membership in M_A: some member divides b.
    bool is_multiple(IdealView b) const;
    bool is_multiple(const Ideal& b) const;

    /// Members of norm <= bound in enumeration order (norm, then factors).
    std::vector<Ideal> members_up_to(std::uint64_t bound) const;
    /// The first `count` members in enumeration order (fewer if A is smaller).
    std::vector<Ideal> first_members(std::size_t count) const;

  private:
    AFamily(NumberField k, Source s) : field_(std::move(k)), source_(std::move(s)) {}

    NumberField field_;
    Source source_;
    // Minimal members of an explicit family, for the multiple test.
    std::vector<Ideal> minimal_;
};

/// Members that are not multiples of another member, in enumeration order.
/// Equal members collapse to one.
std::vector<Ideal> minimal_members(std::span<const Ideal> members);

/// Exact density of M_A for a growing finite family.
///
/// Members are grouped into blocks that share prime ideals; blocks with
/// disjoint prime supports are independent, so the density of the A-free set
/// is the product over blocks of the inclusion-exclusion sum
/// sum_{J} (-1)^|J| / N(lcm J). Members that are multiples of earlier ones
/// are dropped.
class MultiplesDensity {
  public:
    explicit MultiplesDensity(std::size_t subset_cap = default_subset_cap) : cap_(subset_cap) {}

    /// Throws TooLarge when a block would exceed the subset cap.
    void add(const Ideal& member);

    /// dens(M_A) for the members added so far.
    mpq_class density() const { return 1 - free_density_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t largest_block() const;

  private:
    struct Block {
        std::vector<Ideal> members;
        std::vector<PrimeIdeal> support;  // sorted
        mpq_class free_density;
    };

    mpq_class block_free_density(const std::vector<Ideal>& members) const;

    std::size_t cap_;
    std::vector<Block> blocks_;
    mpq_class free_density_ = 1;
};

/// dens(M_A) = sum_{nonempty J subset A} (-1)^(|J|+1) / N(intersection of J).
/// Throws DuplicateMembers on repeated members, TooLarge past the subset cap.
mpq_class finite_ie_density(std::span<const Ideal> members, std::size_t subset_cap = default_subset_cap);
mpq_class finite_ie_density(const AFamily& a, std::size_t subset_cap = default_subset_cap);

/// A_r = dens(M_{a_1..a_r}) for r = 1..r_max. Nondecreasing, bounded by 1.
std::vector<mpq_class> a_limit(const AFamily& a, std::size_t r_max, std::size_t subset_cap = default_subset_cap);

/// sum_{i > r} 1/N(a_i), when it can be bounded; empty otherwise.
std::optional<long double> member_reciprocal_tail(const AFamily& a, std::size_t r);

struct SieveDensity {
    std::uint64_t multiples = 0;
    std::uint64_t total = 0;
    mpq_class density;
};

/// |{b : N(b) <= X, b in M_A}| / H(X) by direct enumeration.
SieveDensity sieve_multiples_density(const AFamily& a, std::uint64_t x, unsigned threads = 1);

struct RestrictedFamily {
    PrimeNumbering primes;      // p_1..p_k
    std::vector<Ideal> members; // members of A supported on p_1..p_k
    /// Upper bound on sum 1/N over members dropped by the norm truncation.
    long double truncation_tail = 0;
};

/// The members of A built only from the first k prime ideals, truncated at work_bound.
RestrictedFamily restrict_family(const AFamily& a, std::size_t k, std::uint64_t work_bound = default_work_bound);

struct MultDensityState {
    std::size_t k = 0;
    EulerProductState euler;
    std::size_t restricted_size = 0;
    /// B_k as an exact rational when inclusion-exclusion was feasible.
    std::optional<mpq_class> exact;
    long double value = 0;
    /// Declared error of `value` (0 when exact).
    long double tolerance = 0;
};

/// B_k = dens(M_{A'}) with A' the p_1..p_k members of A.
MultDensityState multiplicative_density(const AFamily& a, std::size_t k,
                                        std::uint64_t work_bound = default_work_bound,
                                        std::size_t subset_cap = default_subset_cap);

/// B_0..B_{k_max}, sharing one growing inclusion-exclusion state.
std::vector<MultDensityState> multiplicative_density_sequence(const AFamily& a, std::size_t k_max,
                                                              std::uint64_t work_bound = default_work_bound,
                                                              std::size_t subset_cap = default_subset_cap);

/// Quotient form of B_k: sum over p_1..p_k-ideals b' in M_{A'} of 1/N(b'),
/// divided by Pi_k, with ideals enumerated up to norm `bound`. The omitted
/// mass is at most (Pi_k - sum over all enumerated p_1..p_k-ideals) / Pi_k.
struct QuotientEstimate {
    long double value = 0;
    long double tail = 0;
};
QuotientEstimate multiplicative_density_quotient(std::span<const PrimeIdeal> primes,
                                                 const std::function<bool(IdealView)>& in_set,
                                                 std::uint64_t bound);

/// Sampled natural and logarithmic ratios of a set S of ideals.
struct DensityReport {
    std::vector<std::uint64_t> x;
    std::vector<std::uint64_t> in_set;   // S(x)
    std::vector<std::uint64_t> total;    // H(x)
    std::vector<long double> log_in_set; // sum_{b in S, N(b) <= x} 1/N(b)
    std::vector<long double> log_total;  // sum_{N(b) <= x} 1/N(b)
    /// Samples from tail_start on form the tail window.
    std::size_t tail_start = 0;

    double natural(std::size_t i) const;
    double logarithmic(std::size_t i) const;

    // Tail-window minima and maxima: d, D (natural), delta, Delta (logarithmic).
    double lower_natural() const;
    double upper_natural() const;
    double lower_logarithmic() const;
    double upper_logarithmic() const;

    /// Report for the complement of S over the same samples.
    DensityReport complement() const;
};

/// Geometrically spaced sample points from 10 to x (deduplicated, ending at x).
std::vector<std::uint64_t> geometric_samples(std::uint64_t x, std::size_t count, std::uint64_t start = 10);

/// One enumeration pass to norm x; the tail window is the last half of the samples.
DensityReport density_profile(const std::function<bool(IdealView)>& in_set, const NumberField& k,
                              std::uint64_t x, std::size_t samples, unsigned threads = 1);

struct InequalityCheck {
    bool holds = false;
    double lower_margin = 0;  // delta - d
    double upper_margin = 0;  // D - Delta
};

/// Finite-sample form of d <= delta <= Delta <= D with slack eps.
InequalityCheck check_density_inequality(const DensityReport& report, double eps);

}  // namespace idealdens

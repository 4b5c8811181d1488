#include "idealdens/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace idealdens {

namespace {

void check_same_field(const Ideal& a, const Ideal& b) {
    if (a.field_tag() != b.field_tag())
        throw FieldMismatch("ideals from fields with discriminants " + std::to_string(a.field_tag()) + " and " +
                            std::to_string(b.field_tag()));
}

// Merge two sorted factor lists, combining exponents of shared primes with `op`.
template <class Op>
std::vector<IdealFactor> merge(const std::vector<IdealFactor>& a, const std::vector<IdealFactor>& b, Op op,
                               bool keep_unshared) {
    std::vector<IdealFactor> out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->prime < j->prime)) {
            if (keep_unshared) out.push_back(*i);
            ++i;
        } else if (i == a.end() || j->prime < i->prime) {
            if (keep_unshared) out.push_back(*j);
            ++j;
        } else {
            if (int e = op(i->exponent, j->exponent); e > 0) out.push_back({i->prime, e});
            ++i;
            ++j;
        }
    }
    return out;
}

bool checked_pow_mul(std::uint64_t& acc, std::uint64_t base, int exponent) {
    for (int i = 0; i < exponent; ++i) {
        if (__builtin_mul_overflow(acc, base, &acc)) return false;
    }
    return true;
}

struct Enumerator {
    std::span<const PrimeIdeal> primes;
    std::uint64_t bound;
    const IdealVisitor& visit;
    std::vector<IdealFactor> stack;

    void descend(std::size_t start, std::uint64_t norm) {
        for (std::size_t i = start; i < primes.size(); ++i) {
            const std::uint64_t q = primes[i].norm;
            if (q > bound / norm) break;
            std::uint64_t n = norm;
            stack.push_back({primes[i], 0});
            while (n <= bound / q) {
                n *= q;
                ++stack.back().exponent;
                visit(IdealView{stack, n});
                descend(i + 1, n);
            }
            stack.pop_back();
        }
    }
};

}  // namespace

int IdealView::exponent_of(const PrimeIdeal& p) const {
    auto it = std::lower_bound(factors.begin(), factors.end(), p,
                               [](const IdealFactor& f, const PrimeIdeal& q) { return f.prime < q; });
    return (it != factors.end() && it->prime == p) ? it->exponent : 0;
}

Ideal::Ideal(const NumberField& k, std::vector<IdealFactor> factors) : field_tag_(k.discriminant()) {
    std::sort(factors.begin(), factors.end(),
              [](const IdealFactor& a, const IdealFactor& b) { return a.prime < b.prime; });
    for (const auto& f : factors) {
        if (f.exponent < 0) throw std::invalid_argument("negative exponent in integral ideal");
        if (!factors_.empty() && factors_.back().prime == f.prime)
            factors_.back().exponent += f.exponent;
        else
            factors_.push_back(f);
    }
    std::erase_if(factors_, [](const IdealFactor& f) { return f.exponent == 0; });
    recompute_norm();
}

Ideal::Ideal(const NumberField& k, IdealView view)
    : field_tag_(k.discriminant()), factors_(view.factors.begin(), view.factors.end()), norm_(view.norm) {}

Ideal Ideal::prime(const NumberField& k, const PrimeIdeal& p, int exponent) { return Ideal(k, {{p, exponent}}); }

Ideal Ideal::unit_of(const Ideal& sibling) {
    Ideal out = sibling;
    out.factors_.clear();
    out.norm_ = 1;
    out.overflow_ = false;
    return out;
}

Ideal Ideal::principal(const NumberField& k, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("the zero ideal is not allowed");
    std::vector<IdealFactor> factors;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e == 0) continue;
        for (const auto& [prime, mult] : split_prime(k, p)) factors.push_back({prime, mult * e});
    }
    if (n > 1)
        for (const auto& [prime, mult] : split_prime(k, n)) factors.push_back({prime, mult});
    return Ideal(k, std::move(factors));
}

void Ideal::recompute_norm() {
    norm_ = 1;
    overflow_ = false;
    for (const auto& f : factors_) {
        if (!checked_pow_mul(norm_, f.prime.norm, f.exponent)) {
            overflow_ = true;
            norm_ = 0;
            return;
        }
    }
}

std::uint64_t Ideal::norm() const {
    if (overflow_) throw NormOverflow("ideal norm exceeds 64 bits; use norm_big()");
    return norm_;
}

mpz_class Ideal::norm_big() const {
    if (!overflow_) {
        mpz_class r;
        mpz_import(r.get_mpz_t(), 1, -1, sizeof(norm_), 0, 0, &norm_);
        return r;
    }
    mpz_class r = 1;
    for (const auto& f : factors_) {
        mpz_class q;
        mpz_import(q.get_mpz_t(), 1, -1, sizeof(f.prime.norm), 0, 0, &f.prime.norm);
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f.exponent));
        r *= pw;
    }
    return r;
}

std::strong_ordering operator<=>(const Ideal& a, const Ideal& b) {
    if (a.overflow_ != b.overflow_) return a.overflow_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.overflow_) {
        int c = cmp(a.norm_big(), b.norm_big());
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    } else if (auto c = a.norm_ <=> b.norm_; c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                  b.factors_.end());
}

Ideal multiply(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    Ideal out = a;
    out.factors_ = merge(a.factors_, b.factors_, std::plus<>{}, true);
    out.recompute_norm();
    return out;
}

Ideal intersect(std::span<const Ideal> ideals) {
    if (ideals.empty()) throw EmptySet("intersection of an empty set of ideals");
    Ideal out = ideals.front();
    for (const auto& b : ideals.subspan(1)) {
        check_same_field(out, b);
        out.factors_ = merge(out.factors_, b.factors_, [](int x, int y) { return std::max(x, y); }, true);
    }
    out.recompute_norm();
    return out;
}

Ideal gcd(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    Ideal out = a;
    out.factors_ = merge(a.factors_, b.factors_, [](int x, int y) { return std::min(x, y); }, false);
    out.recompute_norm();
    return out;
}

bool divides(const Ideal& a, IdealView b) {
    auto j = b.factors.begin();
    for (const auto& f : a.factors()) {
        while (j != b.factors.end() && j->prime < f.prime) ++j;
        if (j == b.factors.end() || !(j->prime == f.prime) || j->exponent < f.exponent) return false;
    }
    return true;
}

bool divides(const Ideal& a, const Ideal& b) {
    check_same_field(a, b);
    return divides(a, b.view());
}

void for_each_ideal(std::span<const PrimeIdeal> primes, std::uint64_t bound, const IdealVisitor& visit) {
    if (bound < 1) return;
    Enumerator e{primes, bound, visit, {}};
    visit(IdealView{{}, 1});
    e.descend(0, 1);
}

void for_each_ideal(const NumberField& k, std::uint64_t bound, const IdealVisitor& visit) {
    const auto primes = primes_up_to_norm(k, bound);
    for_each_ideal(primes, bound, visit);
}

std::vector<std::uint32_t> count_by_norm(std::span<const PrimeIdeal> primes, std::uint64_t bound,
                                         const std::function<bool(IdealView)>& keep, unsigned threads) {
    threads = std::max(1u, threads);
    std::vector<std::vector<std::uint32_t>> partial(threads, std::vector<std::uint32_t>(bound + 1, 0));

    auto work = [&](unsigned t) {
        auto& counts = partial[t];
        IdealVisitor visit = [&](IdealView v) {
            if (keep(v)) ++counts[v.norm];
        };
        if (t == 0) visit(IdealView{{}, 1});
        Enumerator e{primes, bound, visit, {}};
        // Subtrees are keyed by the smallest prime index used.
        for (std::size_t i = t; i < primes.size() && primes[i].norm <= bound; i += threads) {
            const std::uint64_t q = primes[i].norm;
            std::uint64_t n = 1;
            e.stack.assign(1, {primes[i], 0});
            while (n <= bound / q) {
                n *= q;
                ++e.stack.back().exponent;
                visit(IdealView{e.stack, n});
                e.descend(i + 1, n);
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    // Integer sums are order independent.
    auto& out = partial.front();
    for (unsigned t = 1; t < threads; ++t)
        for (std::size_t n = 0; n <= bound; ++n) out[n] += partial[t][n];
    return std::move(out);
}

std::vector<Ideal> enumerate_ideals(const NumberField& k, std::uint64_t bound) {
    std::vector<Ideal> out;
    for_each_ideal(k, bound, [&](IdealView v) { out.emplace_back(k, v); });
    std::sort(out.begin(), out.end());
    return out;
}

NormCounter::NormCounter(std::uint64_t bound, std::vector<std::uint32_t> per_norm)
    : bound_(bound), per_norm_(std::move(per_norm)), cumulative_(bound + 1, 0) {
    if (per_norm_.size() != bound + 1) throw std::invalid_argument("per-norm table must have bound + 1 entries");
    per_norm_[0] = 0;
    for (std::uint64_t n = 1; n <= bound; ++n) cumulative_[n] = cumulative_[n - 1] + per_norm_[n];
}

NormCounter count_ideals(const NumberField& k, std::uint64_t bound) {
    std::vector<std::uint32_t> h(bound + 1, 0);
    if (bound >= 1) h[1] = 1;
    for (const auto& prime : primes_up_to_norm(k, bound)) {
        const std::uint64_t q = prime.norm;
        // Ascending in-place pass multiplies by 1 / (1 - t_q).
        for (std::uint64_t n = q; n <= bound; n += q) h[n] += h[n / q];
    }
    return NormCounter(bound, std::move(h));
}

std::uint64_t multiples_count(const NormCounter& counter, const Ideal& a, std::uint64_t x) {
    if (x > counter.bound())
        throw std::out_of_range("bound " + std::to_string(x) + " exceeds counter bound " +
                                std::to_string(counter.bound()));
    if (a.norm_overflows()) return 0;
    return counter.H(x / a.norm());
}

ResidueEstimate estimate_residue_constant(const NumberField& k, const NormCounter& counter, std::uint64_t x) {
    if (x < 100) throw BoundTooSmall("residue estimate needs X >= 100, got " + std::to_string(x));
    if (x > counter.bound()) throw std::out_of_range("bound exceeds counter bound");
    ResidueEstimate est;
    est.c_hat = static_cast<double>(counter.H(x)) / static_cast<double>(x);
    const double inv_d = 1.0 / k.degree();
    double kappa = 0;
    for (int i = 1; i <= 10; ++i) {
        const std::uint64_t xi = x * i / 10;
        const double ratio = static_cast<double>(counter.H(xi)) / static_cast<double>(xi);
        kappa = std::max(kappa, std::abs(ratio - est.c_hat) * std::pow(static_cast<double>(xi), inv_d));
    }
    est.error_band = kappa * std::pow(static_cast<double>(x), -inv_d);
    return est;
}

ResidueEstimate estimate_residue_constant(const NumberField& k, std::uint64_t x) {
    if (x < 100) throw BoundTooSmall("residue estimate needs X >= 100, got " + std::to_string(x));
    return estimate_residue_constant(k, count_ideals(k, x), x);
}

}  // namespace idealdens

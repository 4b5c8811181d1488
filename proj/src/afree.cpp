#include "idealdens/afree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "idealdens/numeric.hpp"

namespace idealdens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t integer_root(std::uint64_t n, int l) {
    if (l == 1) return n;
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / l));
    auto pow_le = [&](std::uint64_t b) {
        std::uint64_t acc = 1;
        for (int i = 0; i < l; ++i)
            if (__builtin_mul_overflow(acc, b, &acc)) return false;
        return acc <= n;
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

bool in_intervals(const std::vector<NormInterval>& intervals, std::uint64_t n) {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), n,
                               [](std::uint64_t v, const NormInterval& iv) { return v < iv.lo; });
    if (it == intervals.begin()) return false;
    return n <= std::prev(it)->hi;
}

// Does some divisor of b have its norm in one of the intervals?
bool has_divisor_with_norm_in(std::span<const IdealFactor> factors, std::uint64_t norm,
                              const std::vector<NormInterval>& intervals) {
    if (in_intervals(intervals, norm)) return true;
    if (factors.empty()) return false;
    const auto& f = factors.front();
    const auto rest = factors.subspan(1);
    for (int e = 0; e <= f.exponent; ++e) {
        if (has_divisor_with_norm_in(rest, norm, intervals)) return true;
        norm *= f.prime.norm;
    }
    return false;
}

bool divisor_norm_search(IdealView b, const std::vector<NormInterval>& intervals) {
    if (intervals.empty() || b.norm < intervals.front().lo) return false;
    return has_divisor_with_norm_in(b.factors, 1, intervals);
}

std::vector<PrimeIdeal> support_of(const Ideal& a) {
    std::vector<PrimeIdeal> out;
    for (const auto& f : a.factors()) out.push_back(f.prime);
    return out;
}

// Throws TooLarge when members sharing prime ideals form a block above the cap.
void check_block_sizes(const std::vector<Ideal>& members, std::size_t cap) {
    std::vector<std::size_t> parent(members.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    std::map<std::pair<std::uint64_t, int>, std::size_t> owner;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (const auto& f : members[i].factors()) {
            const auto [it, fresh] = owner.try_emplace({f.prime.p, f.prime.conjugate_index}, i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::size_t> size;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (++size[find(i)] > cap)
            throw TooLarge("inclusion-exclusion block exceeds " + std::to_string(cap) + " members");
}

bool supports_meet(const std::vector<PrimeIdeal>& a, const std::vector<PrimeIdeal>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

bool supported_on(const Ideal& a, std::span<const PrimeIdeal> primes_sorted) {
    return std::all_of(a.factors().begin(), a.factors().end(), [&](const IdealFactor& f) {
        return std::binary_search(primes_sorted.begin(), primes_sorted.end(), f.prime);
    });
}

// Index of the largest prime of `a` within `primes`, which must contain all of them.
std::size_t last_prime_index(const Ideal& a, std::span<const PrimeIdeal> primes) {
    std::size_t idx = 0;
    for (const auto& f : a.factors()) {
        auto it = std::lower_bound(primes.begin(), primes.end(), f.prime);
        idx = std::max(idx, static_cast<std::size_t>(it - primes.begin()));
    }
    return idx;
}

std::uint64_t max_interval_end(const std::vector<NormInterval>& intervals) {
    return intervals.empty() ? 0 : intervals.back().hi;
}

}  // namespace

AFamily AFamily::explicit_members(const NumberField& k, std::vector<Ideal> members) {
    for (const auto& m : members) {
        if (m.field_tag() != k.discriminant())
            throw FieldMismatch("family member from a different field than " + k.name());
    }
    std::sort(members.begin(), members.end());
    AFamily fam(k, Explicit{members});
    fam.minimal_ = minimal_members(members);
    return fam;
}

AFamily AFamily::prime_powers(const NumberField& k, int l) {
    if (l < 1) throw std::invalid_argument("prime power exponent must be >= 1");
    return AFamily(k, PrimePowers{l});
}

AFamily AFamily::norm_intervals(const NumberField& k, std::vector<NormInterval> intervals) {
    for (const auto& iv : intervals) {
        if (iv.lo < 1 || iv.lo > iv.hi) throw std::invalid_argument("norm intervals need 1 <= lo <= hi");
    }
    std::sort(intervals.begin(), intervals.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    std::vector<NormInterval> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.lo <= merged.back().hi + 1)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return AFamily(k, NormIntervals{std::move(merged)});
}

bool AFamily::contains(IdealView a) const {
    return std::visit(overloaded{
                          [&](const Explicit& e) {
                              return std::binary_search(e.members.begin(), e.members.end(), Ideal(field_, a));
                          },
                          [&](const PrimePowers& p) {
                              return a.factors.size() == 1 && a.factors.front().exponent == p.l;
                          },
                          [&](const NormIntervals& n) { return in_intervals(n.intervals, a.norm); },
                      },
                      source_);
}

bool AFamily::is_multiple(IdealView b) const {
    return std::visit(overloaded{
                          [&](const Explicit&) {
                              for (const auto& m : minimal_) {
                                  if (m.norm_overflows() || m.norm() > b.norm) break;
                                  if (b.norm % m.norm() == 0 && divides(m, b)) return true;
                              }
                              return false;
                          },
                          [&](const PrimePowers& p) {
                              return std::any_of(b.factors.begin(), b.factors.end(),
                                                 [&](const IdealFactor& f) { return f.exponent >= p.l; });
                          },
                          [&](const NormIntervals& n) { return divisor_norm_search(b, n.intervals); },
                      },
                      source_);
}

bool AFamily::is_multiple(const Ideal& b) const {
    if (b.field_tag() != field_.discriminant()) throw FieldMismatch("ideal is not from " + field_.name());
    if (b.norm_overflows()) {
        // Norm tests cannot use the cached norm; fall back to divisibility.
        if (std::holds_alternative<Explicit>(source_))
            return std::any_of(minimal_.begin(), minimal_.end(), [&](const Ideal& m) { return divides(m, b); });
        if (std::holds_alternative<NormIntervals>(source_))
            throw NormOverflow("norm-interval membership needs a 64-bit norm");
    }
    return is_multiple(b.view());
}

std::vector<Ideal> AFamily::members_up_to(std::uint64_t bound) const {
    return std::visit(
        overloaded{
            [&](const Explicit& e) {
                std::vector<Ideal> out;
                for (const auto& m : e.members)
                    if (!m.norm_overflows() && m.norm() <= bound) out.push_back(m);
                return out;
            },
            [&](const PrimePowers& p) {
                std::vector<Ideal> out;
                for (const auto& q : primes_up_to_norm(field_, integer_root(bound, p.l)))
                    out.push_back(Ideal::prime(field_, q, p.l));
                return out;
            },
            [&](const NormIntervals& n) {
                std::vector<Ideal> out;
                const auto top = std::min(bound, max_interval_end(n.intervals));
                if (top == 0) return out;
                for_each_ideal(field_, top, [&](IdealView v) {
                    if (in_intervals(n.intervals, v.norm)) out.emplace_back(field_, v);
                });
                std::sort(out.begin(), out.end());
                return out;
            },
        },
        source_);
}

std::vector<Ideal> AFamily::first_members(std::size_t count) const {
    if (const auto* e = std::get_if<Explicit>(&source_)) {
        return {e->members.begin(), e->members.begin() + static_cast<std::ptrdiff_t>(std::min(count, e->members.size()))};
    }
    if (const auto* p = std::get_if<PrimePowers>(&source_)) {
        std::vector<Ideal> out;
        for (const auto& q : first_primes(field_, count)) out.push_back(Ideal::prime(field_, q, p->l));
        return out;
    }
    const auto& n = std::get<NormIntervals>(source_);
    constexpr std::uint64_t enumeration_limit = 50'000'000;
    const auto top = max_interval_end(n.intervals);
    for (std::uint64_t bound = 1024;; bound *= 4) {
        const auto b = std::min(bound, top);
        if (b > enumeration_limit) throw TooLarge("first members of a norm-interval family lie beyond the enumeration limit");
        auto members = members_up_to(b);
        if (members.size() >= count || b == top) {
            if (members.size() > count) members.erase(members.begin() + static_cast<std::ptrdiff_t>(count), members.end());
            return members;
        }
    }
}

std::vector<Ideal> minimal_members(std::span<const Ideal> members) {
    std::vector<Ideal> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Ideal> out;
    for (const auto& m : sorted) {
        if (std::none_of(out.begin(), out.end(), [&](const Ideal& k) { return divides(k, m); })) out.push_back(m);
    }
    return out;
}

std::size_t MultiplesDensity::largest_block() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n = std::max(n, b.members.size());
    return n;
}

mpq_class MultiplesDensity::block_free_density(const std::vector<Ideal>& members) const {
    std::vector<PrimeIdeal> support;
    for (const auto& m : members)
        for (const auto& f : m.factors()) support.push_back(f.prime);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    // Signed multiplicity of each lcm exponent vector over the subsets seen so far.
    using Key = std::vector<int>;
    std::map<Key, long> weight{{Key(support.size(), 0), 1}};
    for (const auto& m : members) {
        Key e(support.size(), 0);
        for (const auto& f : m.factors())
            e[std::lower_bound(support.begin(), support.end(), f.prime) - support.begin()] = f.exponent;
        auto next = weight;
        for (const auto& [key, w] : weight) {
            Key joined = key;
            for (std::size_t i = 0; i < joined.size(); ++i) joined[i] = std::max(joined[i], e[i]);
            if ((next[joined] -= w) == 0) next.erase(joined);
        }
        weight = std::move(next);
    }

    mpq_class sum = 0;
    for (const auto& [key, w] : weight) {
        mpz_class norm = 1, pw;
        for (std::size_t i = 0; i < key.size(); ++i) {
            mpz_ui_pow_ui(pw.get_mpz_t(), support[i].norm, static_cast<unsigned long>(key[i]));
            norm *= pw;
        }
        sum += mpq_class(mpz_class(w), norm);
    }
    sum.canonicalize();
    return sum;
}

void MultiplesDensity::add(const Ideal& member) {
    for (const auto& b : blocks_)
        for (const auto& m : b.members)
            if (m.field_tag() != member.field_tag()) throw FieldMismatch("family members from different fields");

    if (member.is_unit()) {
        blocks_.clear();
        blocks_.push_back({{member}, {}, 0});
        free_density_ = 0;
        return;
    }
    const auto support = support_of(member);
    std::vector<std::size_t> touching;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].members.front().is_unit()) return;
        if (!supports_meet(blocks_[i].support, support)) continue;
        for (const auto& m : blocks_[i].members)
            if (divides(m, member)) return;
        touching.push_back(i);
    }

    std::vector<Ideal> merged{member};
    for (auto i : touching)
        for (const auto& m : blocks_[i].members)
            if (!divides(member, m)) merged.push_back(m);
    std::sort(merged.begin(), merged.end());

    // Pruning multiples of the new member can disconnect the merged set.
    std::vector<std::size_t> parent(merged.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<PrimeIdeal>> supports;
    for (const auto& m : merged) supports.push_back(support_of(m));
    for (std::size_t i = 0; i < merged.size(); ++i)
        for (std::size_t j = i + 1; j < merged.size(); ++j)
            if (supports_meet(supports[i], supports[j])) parent[find(i)] = find(j);

    std::map<std::size_t, Block> fresh;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        auto& b = fresh[find(i)];
        b.members.push_back(merged[i]);
        b.support.insert(b.support.end(), supports[i].begin(), supports[i].end());
    }
    for (auto& [root, b] : fresh) {
        if (b.members.size() > cap_)
            throw TooLarge("inclusion-exclusion block of " + std::to_string(b.members.size()) +
                           " members exceeds the subset cap " + std::to_string(cap_));
    }
    for (auto& [root, b] : fresh) {
        std::sort(b.support.begin(), b.support.end());
        b.support.erase(std::unique(b.support.begin(), b.support.end()), b.support.end());
        b.free_density = block_free_density(b.members);
    }

    for (auto it = touching.rbegin(); it != touching.rend(); ++it)
        blocks_.erase(blocks_.begin() + static_cast<std::ptrdiff_t>(*it));
    for (auto& [root, b] : fresh) blocks_.push_back(std::move(b));

    if (touching.empty()) {
        free_density_ *= blocks_.back().free_density;
    } else {
        free_density_ = 1;
        for (const auto& b : blocks_) free_density_ *= b.free_density;
    }
    free_density_.canonicalize();
}

mpq_class finite_ie_density(std::span<const Ideal> members, std::size_t subset_cap) {
    std::vector<Ideal> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].field_tag() != sorted[0].field_tag()) throw FieldMismatch("family members from different fields");
        if (sorted[i] == sorted[i - 1]) throw DuplicateMembers("family lists the same ideal twice");
    }
    check_block_sizes(minimal_members(sorted), subset_cap);
    MultiplesDensity acc(subset_cap);
    for (const auto& m : sorted) acc.add(m);
    return acc.density();
}

mpq_class finite_ie_density(const AFamily& a, std::size_t subset_cap) {
    const auto* e = std::get_if<AFamily::Explicit>(&a.source());
    if (!e) throw TooLarge("inclusion-exclusion needs a finite (explicit) family");
    return finite_ie_density(e->members, subset_cap);
}

std::vector<mpq_class> a_limit(const AFamily& a, std::size_t r_max, std::size_t subset_cap) {
    if (r_max < 1) throw std::invalid_argument("a_limit needs r_max >= 1");
    MultiplesDensity acc(subset_cap);
    std::vector<mpq_class> out;
    for (const auto& m : a.first_members(r_max)) {
        acc.add(m);
        out.push_back(acc.density());
    }
    return out;
}

std::optional<long double> member_reciprocal_tail(const AFamily& a, std::size_t r) {
    const auto& k = a.field();
    if (const auto* e = std::get_if<AFamily::Explicit>(&a.source())) {
        CompensatedSum s;
        for (std::size_t i = r; i < e->members.size(); ++i)
            s.add(1.0L / static_cast<long double>(e->members[i].norm_big().get_d()));
        return s.value();
    }
    if (const auto* p = std::get_if<AFamily::PrimePowers>(&a.source())) {
        if (p->l < 2) return std::nullopt;
        std::uint64_t bound = 1'000'000;
        PrimeNumbering primes = primes_up_to_norm(k, bound);
        while (primes.size() <= r) {
            bound *= 4;
            primes = primes_up_to_norm(k, bound);
        }
        CompensatedSum s;
        for (std::size_t i = r; i < primes.size(); ++i)
            s.add(std::pow(static_cast<long double>(primes[i].norm), -static_cast<long double>(p->l)));
        // At most d prime ideals share a norm n > bound: sum d n^-l <= d bound^(1-l) / (l-1).
        s.add(k.degree() * std::pow(static_cast<long double>(bound), 1.0L - p->l) / (p->l - 1));
        return s.value();
    }
    const auto& n = std::get<AFamily::NormIntervals>(a.source());
    if (max_interval_end(n.intervals) > 10'000'000) return std::nullopt;
    const auto members = a.members_up_to(max_interval_end(n.intervals));
    CompensatedSum s;
    for (std::size_t i = r; i < members.size(); ++i) s.add(1.0L / static_cast<long double>(members[i].norm()));
    return s.value();
}

SieveDensity sieve_multiples_density(const AFamily& a, std::uint64_t x, unsigned threads) {
    if (x < 1) throw std::invalid_argument("sieve density needs X >= 1");
    const auto primes = primes_up_to_norm(a.field(), x);
    const auto counts = count_by_norm(primes, x, [&](IdealView v) { return a.is_multiple(v); }, threads);
    SieveDensity out;
    out.multiples = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    out.total = count_ideals(a.field(), x).H(x);
    out.density = mpq_class(mpz_class(static_cast<unsigned long>(out.multiples)),
                            mpz_class(static_cast<unsigned long>(out.total)));
    out.density.canonicalize();
    return out;
}

RestrictedFamily restrict_family(const AFamily& a, std::size_t k, std::uint64_t work_bound) {
    const auto& field = a.field();
    RestrictedFamily out;
    out.primes = first_primes(field, k);
    std::visit(overloaded{
                   [&](const AFamily::Explicit& e) {
                       for (const auto& m : e.members)
                           if (supported_on(m, out.primes)) out.members.push_back(m);
                   },
                   [&](const AFamily::PrimePowers& p) {
                       for (const auto& q : out.primes) out.members.push_back(Ideal::prime(field, q, p.l));
                   },
                   [&](const AFamily::NormIntervals& n) {
                       const auto top = max_interval_end(n.intervals);
                       const auto bound = std::min(work_bound, top);
                       CompensatedSum enumerated;
                       for_each_ideal(out.primes, bound, [&](IdealView v) {
                           enumerated.add(1.0L / static_cast<long double>(v.norm));
                           if (in_intervals(n.intervals, v.norm)) out.members.emplace_back(field, v);
                       });
                       std::sort(out.members.begin(), out.members.end());
                       if (top > work_bound)
                           out.truncation_tail =
                               std::max(0.0L, partial_euler_product(out.primes).value() - enumerated.value());
                   },
               },
               a.source());
    return out;
}

QuotientEstimate multiplicative_density_quotient(std::span<const PrimeIdeal> primes,
                                                 const std::function<bool(IdealView)>& in_set,
                                                 std::uint64_t bound) {
    CompensatedSum in, all;
    for_each_ideal(primes, bound, [&](IdealView v) {
        const long double w = 1.0L / static_cast<long double>(v.norm);
        all.add(w);
        if (in_set(v)) in.add(w);
    });
    const long double pi = partial_euler_product(primes).value();
    return {in.value() / pi, std::max(0.0L, (pi - all.value()) / pi)};
}

std::vector<MultDensityState> multiplicative_density_sequence(const AFamily& a, std::size_t k_max,
                                                              std::uint64_t work_bound, std::size_t subset_cap) {
    const auto full = restrict_family(a, k_max, work_bound);
    const auto& primes = full.primes;
    std::vector<std::vector<Ideal>> new_members(k_max + 1);
    for (const auto& m : full.members) {
        // O_K belongs to every restriction; it enters at k = 0.
        new_members[m.is_unit() ? 0 : last_prime_index(m, primes) + 1].push_back(m);
    }
    const bool truncated = std::holds_alternative<AFamily::NormIntervals>(a.source()) && full.truncation_tail > 0;

    std::vector<MultDensityState> out;
    MultiplesDensity acc(subset_cap);
    bool exact = true;
    EulerProductState euler;
    std::size_t restricted = 0;
    for (std::size_t k = 0; k <= k_max; ++k) {
        if (k > 0) euler.include(primes[k - 1].norm);
        restricted += new_members[k].size();
        MultDensityState st;
        st.k = k;
        st.euler = euler;
        st.restricted_size = restricted;
        if (exact) {
            try {
                for (const auto& m : new_members[k]) acc.add(m);
            } catch (const TooLarge&) {
                exact = false;
            }
        }
        if (exact) {
            st.exact = acc.density();
            st.value = static_cast<long double>(st.exact->get_d());
            if (truncated) st.tolerance = restrict_family(a, k, work_bound).truncation_tail;
        } else {
            const auto q = multiplicative_density_quotient(std::span(primes).first(k),
                                                           [&](IdealView v) { return a.is_multiple(v); }, work_bound);
            st.value = q.value;
            st.tolerance = q.tail;
        }
        out.push_back(std::move(st));
    }
    return out;
}

MultDensityState multiplicative_density(const AFamily& a, std::size_t k, std::uint64_t work_bound,
                                        std::size_t subset_cap) {
    return multiplicative_density_sequence(a, k, work_bound, subset_cap).back();
}

double DensityReport::natural(std::size_t i) const {
    return total[i] ? static_cast<double>(in_set[i]) / static_cast<double>(total[i]) : 0.0;
}

double DensityReport::logarithmic(std::size_t i) const {
    return static_cast<double>(log_in_set[i] / log_total[i]);
}

double DensityReport::lower_natural() const {
    double v = 1;
    for (std::size_t i = tail_start; i < x.size(); ++i) v = std::min(v, natural(i));
    return v;
}
double DensityReport::upper_natural() const {
    double v = 0;
    for (std::size_t i = tail_start; i < x.size(); ++i) v = std::max(v, natural(i));
    return v;
}
double DensityReport::lower_logarithmic() const {
    double v = 1;
    for (std::size_t i = tail_start; i < x.size(); ++i) v = std::min(v, logarithmic(i));
    return v;
}
double DensityReport::upper_logarithmic() const {
    double v = 0;
    for (std::size_t i = tail_start; i < x.size(); ++i) v = std::max(v, logarithmic(i));
    return v;
}

DensityReport DensityReport::complement() const {
    DensityReport out = *this;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.in_set[i] = total[i] - in_set[i];
        out.log_in_set[i] = log_total[i] - log_in_set[i];
    }
    return out;
}

std::vector<std::uint64_t> geometric_samples(std::uint64_t x, std::size_t count, std::uint64_t start) {
    if (count < 2) throw std::invalid_argument("need at least two sample points");
    if (x < start) start = 1;
    std::vector<std::uint64_t> out;
    const long double ratio = static_cast<long double>(x) / static_cast<long double>(start);
    for (std::size_t i = 0; i < count; ++i) {
        const long double t = static_cast<long double>(i) / static_cast<long double>(count - 1);
        auto v = static_cast<std::uint64_t>(std::llround(start * std::pow(ratio, t)));
        v = std::clamp<std::uint64_t>(v, start, x);
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    if (out.back() != x) out.push_back(x);
    return out;
}

DensityReport density_profile(const std::function<bool(IdealView)>& in_set, const NumberField& k, std::uint64_t x,
                              std::size_t samples, unsigned threads) {
    if (x < 100) throw BoundTooSmall("density profile needs X >= 100");
    const auto primes = primes_up_to_norm(k, x);
    const auto s = count_by_norm(primes, x, in_set, threads);
    const auto counter = count_ideals(k, x);
    const auto h = counter.per_norm();

    DensityReport r;
    r.x = geometric_samples(x, samples);
    std::uint64_t in = 0, all = 0;
    CompensatedSum log_in, log_all;
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= x && next < r.x.size(); ++n) {
        in += s[n];
        all += h[n];
        if (s[n]) log_in.add(static_cast<long double>(s[n]) / static_cast<long double>(n));
        if (h[n]) log_all.add(static_cast<long double>(h[n]) / static_cast<long double>(n));
        if (n == r.x[next]) {
            r.in_set.push_back(in);
            r.total.push_back(all);
            r.log_in_set.push_back(log_in.value());
            r.log_total.push_back(log_all.value());
            ++next;
        }
    }
    r.tail_start = r.x.size() / 2;
    return r;
}

InequalityCheck check_density_inequality(const DensityReport& report, double eps) {
    if (report.x.size() - report.tail_start < 4)
        throw std::invalid_argument("density inequality check needs at least 4 tail samples");
    const double d = report.lower_natural();
    const double big_d = report.upper_natural();
    const double delta = report.lower_logarithmic();
    const double big_delta = report.upper_logarithmic();
    InequalityCheck c;
    c.lower_margin = delta - d;
    c.upper_margin = big_d - big_delta;
    c.holds = d - eps <= delta && delta <= big_delta && big_delta <= big_d + eps;
    return c;
}

}  // namespace idealdens

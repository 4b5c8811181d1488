// Acceptance checks. One [PASS]/[FAIL] line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "idealdens/afree.hpp"
#include "idealdens/cli.hpp"
#include "idealdens/experiments.hpp"
#include "idealdens/numeric.hpp"
#include "idealdens/zeta.hpp"

using namespace idealdens;
namespace fs = std::filesystem;

namespace {

constexpr long double pi = std::numbers::pi_v<long double>;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    bool ok = true;
    std::ostringstream msg;

    void expect(bool cond, const std::string& what) {
        if (!cond) ok = false;
        msg << (msg.tellp() > 0 ? "; " : "") << (cond ? "" : "MISSED ") << what;
    }
    Outcome done() { return {ok, msg.str()}; }
};

std::string fmt(long double v) { return format_real(v); }

std::vector<const ExperimentRow*> rows_of(const ExperimentResult& r, const std::string& series) {
    std::vector<const ExperimentRow*> out;
    for (const auto& row : r.rows)
        if (row.series == series) out.push_back(&row);
    return out;
}

// 1. H(x) = floor(x) over Q, enumeration and sieve identical.
Outcome exact_counting() {
    Check c;
    const auto q = make_rational_field();
    const std::uint64_t x = 1'000'000;
    const auto t0 = std::chrono::steady_clock::now();
    const auto counter = count_ideals(q, x);
    std::vector<std::uint32_t> enumerated(x + 1, 0);
    for_each_ideal(q, x, [&](IdealView v) { ++enumerated[v.norm]; });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::uint64_t floor_mismatch = 0, enum_mismatch = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (counter.H(n) != n) ++floor_mismatch;
        if (counter.h(n) != enumerated[n]) ++enum_mismatch;
    }
    c.expect(floor_mismatch == 0, "H(x) = floor(x) for x <= 10^6 (" + std::to_string(floor_mismatch) + " mismatches)");
    c.expect(enum_mismatch == 0, "sieve = enumeration (" + std::to_string(enum_mismatch) + " mismatches)");
    c.expect(secs < 10, "runtime " + fmt(secs) + " s < 10 s");
    return c.done();
}

// 2. Q(i): H(10^6)/10^6 against the class number formula, lattice oracle at 10^4.
Outcome residue_gaussian() {
    Check c;
    const auto k = make_quadratic_field(-1);
    const auto t0 = std::chrono::steady_clock::now();
    const auto counter = count_ideals(k, 1'000'000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto h = class_number_imag_quadratic(k.discriminant());
    const long double alpha = 2 * pi * h / (4 * std::sqrt(4.0L));
    const long double ratio = counter.H(1'000'000) / 1e6L;
    c.expect(std::abs(ratio - alpha) <= 0.005L * alpha,
             "H(10^6)/10^6 = " + fmt(ratio) + " vs pi/4 = " + fmt(alpha) + " within 0.5%");
    c.expect(std::abs(alpha - analytic_residue_imag_quadratic(k)) < 1e-12L, "class number formula residue");

    // Nonzero a + bi with a^2 + b^2 <= 10^4, four units each.
    const std::int64_t x = 10'000;
    std::vector<std::uint64_t> reps(x + 1, 0);
    for (std::int64_t a = -100; a <= 100; ++a)
        for (std::int64_t b = -100; b <= 100; ++b) {
            const auto n = a * a + b * b;
            if (n >= 1 && n <= x) ++reps[n];
        }
    std::uint64_t lattice = 0, per_norm_mismatch = 0;
    for (std::int64_t n = 1; n <= x; ++n) {
        lattice += reps[n];
        if (reps[n] % 4 != 0 || reps[n] / 4 != counter.h(n)) ++per_norm_mismatch;
    }
    c.expect(lattice % 4 == 0 && lattice / 4 == counter.H(x),
             "lattice count " + std::to_string(lattice) + "/4 = H(10^4) = " + std::to_string(counter.H(x)));
    c.expect(per_norm_mismatch == 0, "per-norm lattice agreement");
    c.expect(secs < 60, "runtime " + fmt(secs) + " s < 60 s");
    return c.done();
}

// 3. Harmonic ideal sums against c log x.
Outcome harmonic_sums() {
    Check c;
    const std::uint64_t x = 1'000'000;
    for (const auto& k : {make_rational_field(), make_quadratic_field(-1)}) {
        const auto counter = count_ideals(k, x);
        const auto est = estimate_residue_constant(k, counter, x);
        const long double ratio = harmonic_ideal_sum(counter, x) / (est.c_hat * std::log(static_cast<long double>(x)));
        c.expect(ratio >= 0.95L && ratio <= 1.10L, k.name() + ": ratio " + fmt(ratio) + " in [0.95, 1.10]");
    }
    return c.done();
}

// 4. Mertens ratios at cutoff 10^6.
Outcome mertens() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const long double eg = std::exp(euler_gamma);
    const auto q = mertens_ratio(make_rational_field(), 1'000'000);
    const auto g = mertens_ratio(make_quadratic_field(-1), 1'000'000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(std::abs(q / eg - 1) <= 0.05L, "Q: " + fmt(q) + " vs e^gamma = " + fmt(eg));
    const long double target = pi / 4 * eg;
    c.expect(std::abs(g / target - 1) <= 0.05L, "Q(i): " + fmt(g) + " vs (pi/4) e^gamma = " + fmt(target));
    c.expect(secs < 60, "runtime " + fmt(secs) + " s < 60 s");
    return c.done();
}

// 5. Finite families: exact inclusion-exclusion, sieve cross-checks, randomized agreement.
Outcome finite_families() {
    Check c;
    const auto q = make_rational_field();
    auto fam = [&](std::initializer_list<std::uint64_t> ns) {
        std::vector<Ideal> m;
        for (auto n : ns) m.push_back(Ideal::principal(q, n));
        return m;
    };
    const auto d23 = finite_ie_density(fam({2, 3}));
    const auto d46 = finite_ie_density(fam({4, 6}));
    c.expect(d23 == mpq_class(2, 3), "{(2),(3)} -> " + d23.get_str());
    c.expect(d46 == mpq_class(1, 3), "{(4),(6)} -> " + d46.get_str());
    const auto s23 = sieve_multiples_density(AFamily::explicit_members(q, fam({2, 3})), 1'000'000).density;
    const auto s46 = sieve_multiples_density(AFamily::explicit_members(q, fam({4, 6})), 1'000'000).density;
    c.expect(std::abs(s23.get_d() - 2.0 / 3) <= 1e-5, "sieve {(2),(3)} at 10^6 = " + fmt(s23.get_d()));
    c.expect(std::abs(s46.get_d() - 1.0 / 3) <= 1e-5, "sieve {(4),(6)} at 10^6 = " + fmt(s46.get_d()));

    // Floor-effect bound: sum over nonempty J of |H(X / N(lcm J)) / H(X) - 1 / N(lcm J)|.
    std::mt19937_64 rng(20'240'601);
    const std::uint64_t x = 1'000'000;
    int within = 0, trials = 0;
    double worst = 0;
    for (const auto& k : {make_rational_field(), make_quadratic_field(-1)}) {
        const auto pool = enumerate_ideals(k, 50);
        const auto counter = count_ideals(k, x);
        std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1), size(1, 5);
        for (int t = 0; t < 10; ++t, ++trials) {
            std::vector<Ideal> members;
            const auto n = size(rng);
            while (members.size() < n) {
                const auto& cand = pool[pick(rng)];
                if (std::find(members.begin(), members.end(), cand) == members.end()) members.push_back(cand);
            }
            const double ie = finite_ie_density(members).get_d();
            const double sv = sieve_multiples_density(AFamily::explicit_members(k, members), x).density.get_d();
            double bound = 0;
            for (std::uint64_t mask = 1; mask < (1ULL << members.size()); ++mask) {
                std::vector<Ideal> sub;
                for (std::size_t i = 0; i < members.size(); ++i)
                    if (mask >> i & 1) sub.push_back(members[i]);
                const auto norm = intersect(sub).norm();
                bound += std::abs(static_cast<double>(counter.H(x / norm)) / counter.H(x) - 1.0 / norm);
            }
            if (std::abs(ie - sv) <= bound + 1e-15) ++within;
            worst = std::max(worst, std::abs(ie - sv) / std::max(bound, 1e-300));
        }
    }
    c.expect(within == trials, std::to_string(within) + "/" + std::to_string(trials) +
                                   " random families within the floor-effect bound (worst |ie - sieve| / bound = " +
                                   fmt(worst) + ")");
    return c.done();
}

// 6. Prime-power-free densities.
Outcome squarefree_densities() {
    Check c;
    const double six_over_pi2 = static_cast<double>(6 / (pi * pi));
    const auto rq = primepower_free_experiment(make_rational_field(), {.l = 2, .max_norm = 1'000'000});
    const double vq = rows_of(rq, "natural_V").back()->measured;
    c.expect(std::abs(vq - six_over_pi2) <= 1e-2, "Q, X=10^6: " + fmt(vq) + " vs 6/pi^2 = " + fmt(six_over_pi2));

    // zeta(2) and L(2, chi_-4) as truncated classical series with explicit tails.
    const long n = 1'000'000;
    long double zeta2 = 0, beta2 = 0;
    for (long i = n; i >= 1; --i) zeta2 += 1.0L / (static_cast<long double>(i) * i);
    for (long i = n; i >= 0; --i) {
        const long double t = 1.0L / ((2.0L * i + 1) * (2.0L * i + 1));
        beta2 += (i % 2 ? -t : t);
    }
    const long double zeta_tail = 1.0L / n, beta_tail = 1.0L / ((2.0L * n + 3) * (2.0L * n + 3));
    const long double product = zeta2 * beta2;
    const long double tail = zeta_tail * (beta2 + beta_tail) + zeta2 * beta_tail;
    const double target = static_cast<double>(1 / product);
    c.expect(tail < 1e-4L, "series tail bound " + fmt(tail) + " < 1e-4");

    const auto rg = primepower_free_experiment(make_quadratic_field(-1), {.l = 2, .max_norm = 100'000});
    const double vg = rows_of(rg, "natural_V").back()->measured;
    c.expect(std::abs(vg - target) <= 1e-2, "Q(i), X=10^5: " + fmt(vg) + " vs 1/(zeta(2) L(2,chi)) = " + fmt(target));
    const auto z = dedekind_zeta(make_quadratic_field(-1), 2.0L, 100'000);
    c.expect(z.tail_bound < 1e-4L && z.value <= product + tail && product <= z.value + z.tail_bound,
             "truncated zeta_K(2) = " + fmt(z.value) + " + [0, " + fmt(z.tail_bound) + "] contains the series value");
    return c.done();
}

// 7. Monotonicity, complement identity and the finite-sample density inequality on random families.
Outcome monotonicity_suite() {
    Check c;
    std::mt19937_64 rng(77);
    const std::uint64_t x = 200'000;
    const double eps = finite_sample_slack;
    int a_ok = 0, b_ok = 0, comp_ok = 0, ineq_ok = 0;
    double worst_margin = 0;
    const int families = 25;
    for (int t = 0; t < families; ++t) {
        const auto k = (t % 2) ? make_quadratic_field(-1) : make_rational_field();
        std::optional<AFamily> fam;
        switch (t % 5) {
            case 0:
            case 1: {
                const auto pool = enumerate_ideals(k, 100);
                std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1), size(1, 6);
                std::vector<Ideal> m;
                const auto n = size(rng);
                while (m.size() < n) {
                    const auto& cand = pool[pick(rng)];
                    if (std::find(m.begin(), m.end(), cand) == m.end()) m.push_back(cand);
                }
                fam = AFamily::explicit_members(k, m);
                break;
            }
            case 2:
            case 3:
                fam = AFamily::prime_powers(k, 2 + static_cast<int>(rng() % 3));
                break;
            default: {
                const std::uint64_t lo = 5 + rng() % 40;
                fam = AFamily::norm_intervals(k, {{lo, 2 * lo}, {lo * lo * 4, lo * lo * 8}});
            }
        }
        const auto a_seq = a_limit(*fam, default_subset_cap);
        bool a_mono = a_seq.back() <= 1;
        for (std::size_t i = 1; i < a_seq.size(); ++i) a_mono = a_mono && a_seq[i - 1] <= a_seq[i];
        a_ok += a_mono;

        const auto b_seq = multiplicative_density_sequence(*fam, 40);
        bool b_mono = true;
        for (std::size_t i = 1; i < b_seq.size(); ++i)
            b_mono = b_mono && b_seq[i - 1].value <= b_seq[i].value + b_seq[i].tolerance + b_seq[i - 1].tolerance;
        b_ok += b_mono;

        const auto m = density_profile([&](IdealView v) { return fam->is_multiple(v); }, k, x, 25);
        const auto v = density_profile([&](IdealView b) { return !fam->is_multiple(b); }, k, x, 25);
        bool comp = true;
        for (std::size_t i = 0; i < m.x.size(); ++i)
            comp = comp && m.in_set[i] + v.in_set[i] == m.total[i] &&
                   std::abs(m.logarithmic(i) + v.logarithmic(i) - 1) <= 1e-12;
        comp_ok += comp;

        const auto chk = check_density_inequality(m, eps);
        ineq_ok += chk.holds;
        worst_margin = std::min({worst_margin, chk.lower_margin, chk.upper_margin});
    }
    const auto n = std::to_string(families);
    c.expect(a_ok == families, "A_r nondecreasing <= 1: " + std::to_string(a_ok) + "/" + n);
    c.expect(b_ok == families, "B_k nondecreasing: " + std::to_string(b_ok) + "/" + n);
    c.expect(comp_ok == families, "M + V = 1 at every sample: " + std::to_string(comp_ok) + "/" + n);
    c.expect(ineq_ok == families, "d <= delta <= Delta <= D within eps = 1e-3: " + std::to_string(ineq_ok) + "/" + n +
                                      " (worst margin " + fmt(worst_margin) + ")");
    return c.done();
}

// 8. A, B and the logarithmic ratio for squares over Q.
Outcome main_theorem_triangle() {
    Check c;
    const auto r = main_theorem_experiment(AFamily::prime_powers(make_rational_field(), 2),
                                           {.max_norm = 1'000'000, .r_max = 200, .k_max = 200});
    const double a = rows_of(r, "A_r").back()->measured;
    const double b = rows_of(r, "B_k").back()->measured;
    const double lg = rows_of(r, "logarithmic_M").back()->measured;
    const auto tail = member_reciprocal_tail(AFamily::prime_powers(make_rational_field(), 2), 200);
    c.expect(tail && *tail < 1e-3L, "member tail " + (tail ? fmt(*tail) : std::string("unbounded")) + " < 1e-3");
    c.expect(std::abs(a - b) <= 1e-2, "|A_200 - B_200| = " + fmt(std::abs(a - b)));
    c.expect(std::abs(lg - a) <= 1e-2, "|log ratio(10^6) - A_200| = " + fmt(std::abs(lg - a)) + " (log " + fmt(lg) +
                                           ", A " + fmt(a) + ")");
    return c.done();
}

// 9. Besicovitch oscillation checked against a direct integer sieve.
Outcome besicovitch() {
    Check c;
    const std::uint64_t x = 1'000'000;
    const auto r = besicovitch_experiment(make_rational_field(), {});
    std::vector<char> hit(x + 1, 0);
    for (const auto& iv : besicovitch_intervals({}))
        for (std::uint64_t d = iv.lo; d <= iv.hi && d <= x; ++d)
            for (std::uint64_t n = d; n <= x; n += d) hit[n] = 1;
    std::vector<std::uint64_t> count(x + 1, 0);
    std::vector<long double> in_log(x + 1, 0), all_log(x + 1, 0);
    CompensatedSum si, sa;
    for (std::uint64_t n = 1; n <= x; ++n) {
        count[n] = count[n - 1] + hit[n];
        if (hit[n]) si.add(1.0L / n);
        sa.add(1.0L / n);
        in_log[n] = si.value();
        all_log[n] = sa.value();
    }
    const auto nat = rows_of(r, "natural_M");
    const auto lg = rows_of(r, "logarithmic_M");
    bool rows_match = nat.size() == lg.size();
    std::vector<double> o_nat, o_log;
    for (std::size_t i = 0; i < nat.size() && rows_match; ++i) {
        const auto xi = nat[i]->x;
        const double on = static_cast<double>(count[xi]) / xi;
        const double ol = static_cast<double>(in_log[xi] / all_log[xi]);
        rows_match = rows_match && on == nat[i]->measured && std::abs(ol - lg[i]->measured) <= 1e-12;
        o_nat.push_back(on);
        o_log.push_back(ol);
    }
    c.expect(rows_match, "sieve oracle matches every sample");
    const std::size_t tail = o_nat.size() / 2;
    const auto [nmin, nmax] = std::minmax_element(o_nat.begin() + tail, o_nat.end());
    const auto [lmin, lmax] = std::minmax_element(o_log.begin() + tail, o_log.end());
    const double osc = *nmax - *nmin, var = *lmax - *lmin;
    c.expect(osc >= 0.01, "natural oscillation " + fmt(osc) + " >= 0.01");
    c.expect(var < osc, "logarithmic variation " + fmt(var) + " < natural oscillation");
    c.expect(r.passed(), "experiment verdicts");
    return c.done();
}

// 10. Byte-identical CLI outputs across thread counts.
Outcome determinism() {
    Check c;
    const auto dir = fs::temp_directory_path() / "idealdens_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto fam = (dir / "family.json").string();
    std::ofstream(fam) << R"j({"field": "Q(sqrt -1)", "kind": "explicit", "members": [2, [[5, 0, 1]], 9, [[13, 1, 2]]]})j";
    const auto sq = (dir / "squares.json").string();
    std::ofstream(sq) << R"j({"field": "Q", "kind": "prime_powers", "l": 2})j";

    const std::vector<std::vector<std::string>> runs{
        {"count", "--field", "Q(sqrt -1)", "--max-norm", "1000000"},
        {"mertens", "--field", "Q(sqrt -1)", "--cutoff", "1000000"},
        {"density", "--field", "Q(sqrt -1)", "--aset", fam, "--max-norm", "500000"},
        {"density", "--aset", sq, "--max-norm", "500000"},
        {"experiment", "primepower-free", "--max-norm", "300000"},
        {"experiment", "main-theorem", "--max-norm", "300000"},
        {"experiment", "besicovitch"},
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    int identical = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "2", "5"}) {
            auto args = runs[i];
            const auto csv = dir / ("run" + std::to_string(i) + "_t" + threads + ".csv");
            args.insert(args.end(), {"--threads", threads, "--out", csv.string()});
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            if (code != exit_ok && code != exit_verdict_failed) outputs.push_back("exit " + std::to_string(code));
            else outputs.push_back(slurp(csv) + slurp(fs::path(csv).replace_extension(".json")));
        }
        identical += outputs[0] == outputs[1] && outputs[0] == outputs[2] && outputs[0].rfind("exit ", 0) != 0;
    }
    fs::remove_all(dir);
    c.expect(identical == static_cast<int>(runs.size()),
             std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs identical at --threads 1, 2, 5");
    return c.done();
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 exact ideal counts over Q", exact_counting},
        {"2 Gaussian ideal counts and residue", residue_gaussian},
        {"3 harmonic ideal sums ~ c log x", harmonic_sums},
        {"4 Mertens product constant", mertens},
        {"5 finite families, inclusion-exclusion vs sieve", finite_families},
        {"6 prime-power-free densities", squarefree_densities},
        {"7 monotonicity and density inequality suite", monotonicity_suite},
        {"8 A, B and logarithmic ratio for squares", main_theorem_triangle},
        {"9 oscillating natural density", besicovitch},
        {"10 thread-count determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " (" << format_real(secs) << " s): " << o.detail
                  << std::endl;
        failed += !o.pass;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}

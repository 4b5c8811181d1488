#include "idealdens/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idealdens/numeric.hpp"

namespace idealdens {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

void add_profile_rows(ExperimentResult& r, const std::string& set, const DensityReport& rep, double target) {
    for (std::size_t i = 0; i < rep.x.size(); ++i) {
        r.rows.push_back({"natural_" + set, rep.x[i], rep.natural(i), target, natural_tolerance});
        r.rows.push_back({"logarithmic_" + set, rep.x[i], rep.logarithmic(i), target, logarithmic_tolerance});
    }
}

std::string describe(double measured, double target, double tol) {
    std::ostringstream os;
    os << "measured " << format_real(measured) << ", target " << format_real(target) << ", |dev| "
       << format_real(std::abs(measured - target)) << " vs tolerance " << format_real(tol);
    return os.str();
}

Verdict within_verdict(std::string name, double measured, double target, double tol, bool gating = true) {
    return {std::move(name), std::abs(measured - target) <= tol, gating, describe(measured, target, tol)};
}

// Finite-sample density-inequality flags; reported, never gating.
void add_lemma_verdicts(ExperimentResult& r, const DensityReport& rep) {
    const auto ineq = check_density_inequality(rep, finite_sample_slack);
    std::ostringstream os;
    os << "d=" << format_real(rep.lower_natural()) << " delta=" << format_real(rep.lower_logarithmic())
       << " Delta=" << format_real(rep.upper_logarithmic()) << " D=" << format_real(rep.upper_natural());
    r.verdicts.push_back({"density_inequality", ineq.holds, false, os.str()});

    const double lg = rep.logarithmic(rep.x.size() - 1);
    const bool inside = lg >= rep.lower_natural() - finite_sample_slack && lg <= rep.upper_natural() + finite_sample_slack;
    r.verdicts.push_back({"log_ratio_in_natural_envelope", inside, false,
                          "log ratio " + format_real(lg) + " against [d - eps, D + eps]"});
}

void require_samples(std::size_t samples) {
    if (samples < 8) throw std::invalid_argument("experiments need at least 8 samples");
}

bool nondecreasing(const std::vector<mpq_class>& v) {
    return std::is_sorted(v.begin(), v.end(), [](const mpq_class& a, const mpq_class& b) { return a < b; });
}

}  // namespace

bool ExperimentRow::within() const { return std::abs(deviation()) <= tolerance; }

bool ExperimentResult::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.gating || v.pass; });
}

const Verdict& ExperimentResult::verdict(const std::string& name) const {
    for (const auto& v : verdicts)
        if (v.name == name) return v;
    throw std::out_of_range("no verdict named " + name);
}

std::string ExperimentResult::to_csv() const {
    std::ostringstream os;
    os << "series,x,measured,target,deviation,tolerance,within\n";
    for (const auto& row : rows) {
        os << row.series << ',' << row.x << ',' << format_real(row.measured) << ',' << format_real(row.target) << ','
           << format_real(row.deviation()) << ',' << format_real(row.tolerance) << ',' << (row.within() ? 1 : 0)
           << '\n';
    }
    return os.str();
}

nlohmann::ordered_json ExperimentResult::summary() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    auto& params = j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    auto& vs = j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : verdicts)
        vs.push_back({{"name", v.name}, {"pass", v.pass}, {"gating", v.gating}, {"detail", v.detail}});
    j["passed"] = passed();
    return j;
}

ExperimentResult primepower_free_experiment(const NumberField& k, const PrimePowerFreeParams& p) {
    if (p.l < 2) throw std::invalid_argument("prime-power-free experiment needs l >= 2");
    if (p.max_norm < 10'000) throw BoundTooSmall("prime-power-free experiment needs X >= 10^4");
    require_samples(p.samples);

    const auto family = AFamily::prime_powers(k, p.l);
    const auto in_m = [&](IdealView v) { return family.is_multiple(v); };
    const auto in_v = [&](IdealView v) { return !family.is_multiple(v); };
    const auto m_rep = density_profile(in_m, k, p.max_norm, p.samples, p.threads);
    const auto v_rep = density_profile(in_v, k, p.max_norm, p.samples, p.threads);

    const auto zeta = dedekind_zeta(k, p.l, p.max_norm);
    const double target = static_cast<double>(1.0L / zeta.value);
    const double target_spread = static_cast<double>(1.0L / zeta.value - 1.0L / (zeta.value + zeta.tail_bound));

    ExperimentResult r;
    r.scenario = "primepower-free";
    r.parameters = {{"field", k.name()},
                    {"l", std::to_string(p.l)},
                    {"max_norm", str(p.max_norm)},
                    {"samples", str(p.samples)},
                    {"zeta_truncated", format_real(zeta.value)},
                    {"zeta_tail_bound", format_real(zeta.tail_bound)},
                    {"target", format_real(target)},
                    {"target_spread", format_real(target_spread)}};
    add_profile_rows(r, "V", v_rep, target);

    const auto last = v_rep.x.size() - 1;
    r.verdicts.push_back(within_verdict("natural_V_at_X", v_rep.natural(last), target, natural_tolerance));
    r.verdicts.push_back(within_verdict("logarithmic_V_at_X", v_rep.logarithmic(last), target, logarithmic_tolerance));

    bool symmetric = true;
    double worst = 0;
    for (std::size_t i = 0; i < v_rep.x.size(); ++i) {
        symmetric = symmetric && m_rep.in_set[i] + v_rep.in_set[i] == v_rep.total[i];
        worst = std::max(worst, std::abs(m_rep.logarithmic(i) + v_rep.logarithmic(i) - 1.0));
    }
    symmetric = symmetric && worst <= 1e-12;
    r.verdicts.push_back({"complement_symmetry", symmetric, true,
                          "S_M + S_V = H at every sample; max |log_M + log_V - 1| = " + format_real(worst)});
    add_lemma_verdicts(r, v_rep);
    return r;
}

ExperimentResult main_theorem_experiment(const AFamily& a, const MainTheoremParams& p) {
    const auto& k = a.field();
    require_samples(p.samples);
    const auto a_seq = a_limit(a, p.r_max);
    const auto b_seq = multiplicative_density_sequence(a, p.k_max, p.work_bound);
    const auto rep = density_profile([&](IdealView v) { return a.is_multiple(v); }, k, p.max_norm, p.samples,
                                     p.threads);
    const auto tail = member_reciprocal_tail(a, a_seq.size());

    const double a_final = a_seq.back().get_d();
    const auto& b_last = b_seq.back();

    ExperimentResult r;
    r.scenario = "main-theorem";
    r.parameters = {{"field", k.name()},
                    {"max_norm", str(p.max_norm)},
                    {"r_max", str(p.r_max)},
                    {"k_max", str(p.k_max)},
                    {"samples", str(p.samples)},
                    {"work_bound", str(p.work_bound)},
                    {"A_r_max", format_real(a_final)},
                    {"member_tail", tail ? format_real(*tail) : "divergent-or-unknown"},
                    {"B_k_max", format_real(b_last.value)},
                    {"B_k_max_tolerance", format_real(b_last.tolerance)}};

    for (std::size_t i = 0; i < a_seq.size(); ++i)
        r.rows.push_back({"A_r", i + 1, a_seq[i].get_d(), a_final, natural_tolerance});
    for (const auto& st : b_seq) r.rows.push_back({"B_k", st.k, static_cast<double>(st.value), a_final, natural_tolerance});
    add_profile_rows(r, "M", rep, a_final);

    std::vector<mpq_class> b_exact;
    for (const auto& st : b_seq)
        if (st.exact) b_exact.push_back(*st.exact);
    r.verdicts.push_back({"A_r_nondecreasing", nondecreasing(a_seq) && a_seq.back() <= 1, true, ""});
    r.verdicts.push_back({"B_k_nondecreasing", nondecreasing(b_exact), true,
                          std::to_string(b_exact.size()) + " exact terms"});

    // The limits are only comparable when the truncated A_r has converged.
    const bool converged = tail && *tail < 1e-3;
    const auto last = rep.x.size() - 1;
    r.verdicts.push_back(within_verdict("A_vs_B", a_final, static_cast<double>(b_last.value),
                                        natural_tolerance + static_cast<double>(b_last.tolerance), converged));
    r.verdicts.push_back(within_verdict("logarithmic_M_vs_A", rep.logarithmic(last), a_final, logarithmic_tolerance,
                                        converged));
    r.verdicts.push_back(within_verdict("natural_M_vs_A", rep.natural(last), a_final, natural_tolerance, converged));
    add_lemma_verdicts(r, rep);
    return r;
}

std::vector<NormInterval> besicovitch_intervals(const BesicovitchParams& p) {
    std::vector<NormInterval> out;
    std::uint64_t t = p.t0;
    for (std::size_t i = 0; i < p.depth; ++i) {
        std::uint64_t hi;
        if (__builtin_mul_overflow(t, 2, &hi)) break;
        out.push_back({t + 1, hi});
        std::uint64_t next = 1;
        bool overflow = false;
        for (std::uint64_t e = 0; e < p.growth && !overflow; ++e) overflow = __builtin_mul_overflow(next, t, &next);
        if (overflow) break;
        t = next;
    }
    return out;
}

ExperimentResult besicovitch_experiment(const NumberField& k, const BesicovitchParams& p) {
    if (p.t0 < 4) throw std::invalid_argument("Besicovitch construction needs T0 >= 4");
    if (p.growth < 3) throw std::invalid_argument("Besicovitch construction needs growth >= 3");
    if (p.depth < 1) throw std::invalid_argument("Besicovitch construction needs depth >= 1");
    require_samples(p.samples);
    if (2 * p.t0 > p.max_norm) throw BoundsExceedX("first interval (T0, 2 T0] lies beyond X");

    const auto intervals = besicovitch_intervals(p);
    const auto family = AFamily::norm_intervals(k, intervals);
    const auto rep = density_profile([&](IdealView v) { return family.is_multiple(v); }, k, p.max_norm, p.samples,
                                     p.threads);
    std::size_t visible = 0;
    for (const auto& iv : intervals)
        if (iv.lo <= p.max_norm) ++visible;

    const double oscillation = rep.upper_natural() - rep.lower_natural();
    const double log_variation = rep.upper_logarithmic() - rep.lower_logarithmic();
    const auto last = rep.x.size() - 1;

    ExperimentResult r;
    r.scenario = "besicovitch";
    std::string iv_text;
    for (const auto& iv : intervals) iv_text += "[" + str(iv.lo) + "," + str(iv.hi) + "]";
    r.parameters = {{"field", k.name()},         {"t0", str(p.t0)},
                    {"growth", str(p.growth)},   {"depth", str(p.depth)},
                    {"max_norm", str(p.max_norm)}, {"samples", str(p.samples)},
                    {"intervals", iv_text},      {"visible_intervals", str(visible)},
                    {"natural_oscillation", format_real(oscillation)},
                    {"logarithmic_variation", format_real(log_variation)}};
    const double final_natural = rep.natural(last);
    add_profile_rows(r, "M", rep, final_natural);

    if (visible >= 2) {
        r.verdicts.push_back({"natural_oscillation", oscillation >= 0.01, true,
                              "D - d = " + format_real(oscillation) + " vs threshold 0.01"});
        r.verdicts.push_back({"logarithmic_steadier", log_variation < oscillation, true,
                              "Delta - delta = " + format_real(log_variation) + " vs D - d = " +
                                  format_real(oscillation)});
    } else {
        r.verdicts.push_back({"natural_settles", oscillation < 0.01, true,
                              "D - d = " + format_real(oscillation) + " vs threshold 0.01"});
        r.verdicts.push_back(within_verdict("logarithmic_matches_natural", rep.logarithmic(last), final_natural,
                                            natural_tolerance, false));
    }
    add_lemma_verdicts(r, rep);
    return r;
}

}  // namespace idealdens

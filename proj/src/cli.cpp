#include "idealdens/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "idealdens/afree.hpp"
#include "idealdens/experiments.hpp"
#include "idealdens/family_io.hpp"
#include "idealdens/numeric.hpp"
#include "idealdens/zeta.hpp"

namespace idealdens {

namespace {

struct RunConfig {
    std::string command;
    std::string field = "Q";
    std::string out;
    std::string aset;
    std::string experiment;
    std::uint64_t max_norm = 0;
    std::uint64_t cutoff = 0;
    std::size_t samples = 25;
    std::size_t r_max = 200;
    std::size_t k_max = 200;
    int l = 2;
    std::uint64_t t0 = 10;
    std::uint64_t growth = 3;
    std::size_t depth = 3;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    // The thread count is left out: outputs never depend on it.
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        if (!experiment.empty()) j["experiment"] = experiment;
        j["field"] = field;
        if (max_norm) j["max_norm"] = max_norm;
        if (cutoff) j["cutoff"] = cutoff;
        if (command == "count" || command == "density" || command == "experiment") j["samples"] = samples;
        if (command == "density") {
            j["r_max"] = r_max;
            j["k_max"] = k_max;
        }
        if (command == "experiment") {
            if (experiment == "primepower-free" || experiment == "main-theorem") j["l"] = l;
            if (experiment == "main-theorem") {
                j["r_max"] = r_max;
                j["k_max"] = k_max;
            }
            if (experiment == "besicovitch") {
                j["t0"] = t0;
                j["growth"] = growth;
                j["depth"] = depth;
            }
        }
        if (!aset.empty()) j["aset"] = aset;
        j["seed"] = seed;
        return j;
    }
};

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

std::string summary_path(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension(".json");
    if (p == std::filesystem::path(out)) p += ".summary.json";
    return p.string();
}

// CSV goes to --out (summary JSON beside it) or, without --out, both to stdout.
void emit(const RunConfig& cfg, const std::string& csv, const nlohmann::ordered_json& summary, std::ostream& out) {
    const std::string json = summary.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << csv << '\n' << json;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << csv;
    std::ofstream s(summary_path(cfg.out), std::ios::binary);
    if (!s) throw UsageError("cannot write " + summary_path(cfg.out));
    s << json;
}

int cmd_field_info(const RunConfig& cfg, std::ostream& out) {
    const auto k = parse_field(cfg.field);
    std::ostringstream os;
    os << "field: " << k.name() << '\n'
       << "degree: " << k.degree() << '\n'
       << "discriminant: " << k.discriminant() << '\n'
       << "unit_count: " << (k.unit_count() ? std::to_string(*k.unit_count()) : "infinite") << '\n';
    if (k.imaginary()) {
        os << "class_number: " << class_number_imag_quadratic(k.discriminant()) << '\n'
           << "analytic_residue: " << format_real(analytic_residue_imag_quadratic(k)) << '\n';
    }
    if (cfg.out.empty()) {
        out << os.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + cfg.out);
        f << os.str();
    }
    return exit_ok;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
    const auto k = parse_field(cfg.field);
    if (cfg.max_norm < 1) throw UsageError("count needs --max-norm >= 1");
    const auto counter = count_ideals(k, cfg.max_norm);
    std::ostringstream csv;
    csv << "x,H,ratio\n";
    for (auto x : geometric_samples(cfg.max_norm, std::max<std::size_t>(cfg.samples, 2), 1))
        csv << x << ',' << counter.H(x) << ',' << format_real(static_cast<long double>(counter.H(x)) / x) << '\n';

    nlohmann::ordered_json summary;
    summary["config"] = cfg.to_json();
    summary["H"] = counter.H(cfg.max_norm);
    if (cfg.max_norm >= 100) {
        const auto est = estimate_residue_constant(k, counter, cfg.max_norm);
        summary["c_hat"] = format_real(est.c_hat);
        summary["error_band"] = format_real(est.error_band);
    }
    if (k.imaginary()) summary["analytic_residue"] = format_real(analytic_residue_imag_quadratic(k));
    emit(cfg, csv.str(), summary, out);
    return exit_ok;
}

int cmd_mertens(const RunConfig& cfg, std::ostream& out) {
    const auto k = parse_field(cfg.field);
    const auto cutoff = cfg.cutoff ? cfg.cutoff : cfg.max_norm;
    if (cutoff < 10) throw UsageError("mertens needs --cutoff >= 10");

    long double target;
    std::string target_source;
    if (k.degree() == 1 || k.imaginary()) {
        target = mertens_target(k);
        target_source = k.degree() == 1 ? "exact" : "class_number_formula";
    } else {
        const auto bound = std::max<std::uint64_t>(cutoff, 10'000);
        target = estimate_residue_constant(k, bound).c_hat * std::exp(euler_gamma);
        target_source = "empirical_residue";
    }

    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t c = 10; c <= cutoff; c *= 10) checkpoints.push_back(c);
    if (checkpoints.back() != cutoff) checkpoints.push_back(cutoff);

    const auto primes = primes_up_to_norm(k, cutoff);
    EulerProductState st;
    std::size_t next = 0;
    std::ostringstream csv;
    csv << "cutoff,pi,ratio,target\n";
    auto flush_until = [&](std::uint64_t norm) {
        while (next < checkpoints.size() && checkpoints[next] < norm) {
            const auto c = checkpoints[next++];
            const long double pi = st.value();
            csv << c << ',' << format_real(pi) << ',' << format_real(pi / std::log(static_cast<long double>(c))) << ','
                << format_real(target) << '\n';
        }
    };
    for (const auto& p : primes) {
        flush_until(p.norm);
        st.include(p.norm);
    }
    flush_until(cutoff + 1);

    nlohmann::ordered_json summary;
    summary["config"] = cfg.to_json();
    summary["target_source"] = target_source;
    summary["ratio"] = format_real(st.value() / std::log(static_cast<long double>(cutoff)));
    summary["target"] = format_real(target);
    emit(cfg, csv.str(), summary, out);
    return exit_ok;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
    const auto k = parse_field(cfg.field);
    if (cfg.aset.empty()) throw UsageError("density needs --aset FILE");
    if (cfg.max_norm < 100) throw UsageError("density needs --max-norm >= 100");
    const auto family = load_family_file(cfg.aset, k);

    const auto rep = density_profile([&](IdealView v) { return family.is_multiple(v); }, k, cfg.max_norm, cfg.samples,
                                     cfg.threads);
    std::ostringstream csv;
    csv << "x,in_set,total,natural,logarithmic\n";
    for (std::size_t i = 0; i < rep.x.size(); ++i)
        csv << rep.x[i] << ',' << rep.in_set[i] << ',' << rep.total[i] << ',' << format_real(rep.natural(i)) << ','
            << format_real(rep.logarithmic(i)) << '\n';

    nlohmann::ordered_json summary;
    summary["config"] = cfg.to_json();
    summary["family"] = family_to_json(family);
    summary["estimates"] = {{"d", format_real(rep.lower_natural())},
                            {"D", format_real(rep.upper_natural())},
                            {"delta", format_real(rep.lower_logarithmic())},
                            {"Delta", format_real(rep.upper_logarithmic())}};
    if (rep.x.size() - rep.tail_start >= 4) {
        const auto ineq = check_density_inequality(rep, finite_sample_slack);
        summary["density_inequality"] = {{"holds", ineq.holds},
                                         {"epsilon", format_real(finite_sample_slack)},
                                         {"lower_margin", format_real(ineq.lower_margin)},
                                         {"upper_margin", format_real(ineq.upper_margin)}};
    }
    const auto a_seq = a_limit(family, std::max<std::size_t>(cfg.r_max, 1));
    const mpq_class a_val = a_seq.empty() ? mpq_class(0) : a_seq.back();
    summary["A"] = {{"r", a_seq.size()}, {"value", format_real(a_val.get_d())}};
    if (a_val.get_str().size() <= 64) summary["A"]["exact"] = a_val.get_str();
    if (auto tail = member_reciprocal_tail(family, a_seq.size())) summary["A"]["member_tail"] = format_real(*tail);
    const auto b = multiplicative_density(family, cfg.k_max);
    summary["B"] = {{"k", b.k}, {"value", format_real(b.value)}, {"tolerance", format_real(b.tolerance)}};
    if (b.exact && b.exact->get_str().size() <= 64) summary["B"]["exact"] = b.exact->get_str();

    emit(cfg, csv.str(), summary, out);
    return exit_ok;
}

int cmd_experiment(const RunConfig& cfg, std::ostream& out) {
    const auto k = parse_field(cfg.field);
    ExperimentResult result;
    if (cfg.experiment == "primepower-free") {
        PrimePowerFreeParams p;
        p.l = cfg.l;
        p.max_norm = cfg.max_norm ? cfg.max_norm : p.max_norm;
        p.samples = cfg.samples;
        p.threads = cfg.threads;
        result = primepower_free_experiment(k, p);
    } else if (cfg.experiment == "main-theorem") {
        MainTheoremParams p;
        p.max_norm = cfg.max_norm ? cfg.max_norm : p.max_norm;
        p.r_max = cfg.r_max;
        p.k_max = cfg.k_max;
        p.samples = cfg.samples;
        p.threads = cfg.threads;
        const auto family = cfg.aset.empty() ? AFamily::prime_powers(k, cfg.l) : load_family_file(cfg.aset, k);
        result = main_theorem_experiment(family, p);
    } else if (cfg.experiment == "besicovitch") {
        BesicovitchParams p;
        p.t0 = cfg.t0;
        p.growth = cfg.growth;
        p.depth = cfg.depth;
        p.max_norm = cfg.max_norm ? cfg.max_norm : p.max_norm;
        p.samples = cfg.samples;
        p.threads = cfg.threads;
        result = besicovitch_experiment(k, p);
    } else {
        throw UsageError("unknown experiment '" + cfg.experiment + "' (primepower-free, main-theorem, besicovitch)");
    }
    nlohmann::ordered_json summary;
    summary["config"] = cfg.to_json();
    summary["result"] = result.summary();
    emit(cfg, result.to_csv(), summary, out);
    return result.passed() ? exit_ok : exit_verdict_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Densities of sets of integral ideals in Q and quadratic fields", "idealdens"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--field", cfg.field, "Q or \"Q(sqrt m)\"")->capture_default_str();
        sub->add_option("--out", cfg.out, "output file (CSV; summary JSON written beside it)");
        sub->add_option("--threads", cfg.threads, "worker threads (results do not depend on it)")
            ->check(CLI::Range(1u, 256u));
        sub->add_option("--seed", cfg.seed, "seed recorded in outputs");
    };

    auto* info = app.add_subcommand("field-info", "degree, discriminant, units, class number, residue");
    common(info);
    auto* count = app.add_subcommand("count", "ideal counts H(x) and H(x)/x");
    common(count);
    count->add_option("--max-norm", cfg.max_norm)->required();
    count->add_option("--samples", cfg.samples)->capture_default_str();
    auto* mertens = app.add_subcommand("mertens", "partial Euler products against alpha_K e^gamma");
    common(mertens);
    mertens->add_option("--cutoff,--max-norm", cfg.cutoff)->required();
    auto* density = app.add_subcommand("density", "density profile of M_A for an A-family file");
    common(density);
    density->add_option("--aset", cfg.aset, "A-family JSON file")->required();
    density->add_option("--max-norm", cfg.max_norm)->required();
    density->add_option("--samples", cfg.samples)->capture_default_str()->check(CLI::Range(2u, 10000u));
    density->add_option("--r-max", cfg.r_max)->capture_default_str();
    density->add_option("--k-max", cfg.k_max)->capture_default_str();
    auto* experiment = app.add_subcommand("experiment", "primepower-free | main-theorem | besicovitch");
    common(experiment);
    experiment->add_option("name", cfg.experiment)->required();
    experiment->add_option("--max-norm", cfg.max_norm);
    experiment->add_option("--samples", cfg.samples)->capture_default_str()->check(CLI::Range(2u, 10000u));
    experiment->add_option("--l", cfg.l)->capture_default_str();
    experiment->add_option("--aset", cfg.aset, "A-family JSON file (main-theorem)");
    experiment->add_option("--r-max", cfg.r_max)->capture_default_str();
    experiment->add_option("--k-max", cfg.k_max)->capture_default_str();
    experiment->add_option("--t0", cfg.t0)->capture_default_str();
    experiment->add_option("--growth", cfg.growth)->capture_default_str();
    experiment->add_option("--depth", cfg.depth)->capture_default_str();

    std::vector<const char*> argv{"idealdens"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (info->parsed()) {
            cfg.command = "field-info";
            return cmd_field_info(cfg, out);
        }
        if (count->parsed()) {
            cfg.command = "count";
            return cmd_count(cfg, out);
        }
        if (mertens->parsed()) {
            cfg.command = "mertens";
            return cmd_mertens(cfg, out);
        }
        if (density->parsed()) {
            cfg.command = "density";
            return cmd_density(cfg, out);
        }
        cfg.command = "experiment";
        return cmd_experiment(cfg, out);
    } catch (const std::overflow_error& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const TooLarge& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    }
}

}  // namespace idealdens

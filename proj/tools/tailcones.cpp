// Command-line front end: simulate / fit / eval / stability / theory-table /
// experiment. All file outputs are written atomically.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "tailcones/experiment.hpp"
#include "tailcones/io.hpp"
#include "tailcones/margins.hpp"
#include "tailcones/method1.hpp"
#include "tailcones/method2.hpp"
#include "tailcones/theory.hpp"

namespace tc = tailcones;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "1,3,4" -> "A,C,D", for outputs matching letter-labelled tables.
std::string letter_label(const std::string& label) {
    std::string out;
    for (char ch : label) {
        if (ch == ',') out += ',';
        else if (ch >= '1' && ch <= '9') out += static_cast<char>('A' + (ch - '1'));
        else throw UsageError("--letters supports at most 9 dimensions");
    }
    return out;
}

json relabel_keys(const json& obj) {
    json out = json::object();
    for (const auto& [key, value] : obj.items()) out[letter_label(key)] = value;
    return out;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") std::cout << content;
    else tc::write_text_atomic(out_path, content);
}

struct PresetFlags {
    std::string preset;
    std::string spec_path;
    double alpha = 0.25;
    double rho = 0.0;
    int d = 5;
    int faces = 5;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "model preset: maxmix-4.2 or asymlog")
            ->check(CLI::IsMember({"maxmix-4.2", "asymlog"}));
        cmd->add_option("--spec", spec_path, "mixture spec JSON file");
        cmd->add_option("--alpha", alpha, "logistic dependence parameter");
        cmd->add_option("--rho", rho, "gaussian equicorrelation (maxmix-4.2)");
        cmd->add_option("--d", d, "dimension (asymlog)");
        cmd->add_option("--faces", faces, "number of faces (asymlog)");
    }

    tc::MaxMixtureSpec resolve(std::uint64_t seed) const {
        if (!spec_path.empty() && !preset.empty())
            throw UsageError("--spec conflicts with --preset; give one model source");
        if (!spec_path.empty())
            return tc::mixture_from_json(json::parse(tc::read_text(spec_path)));
        if (preset == "maxmix-4.2") return tc::maxmix_5d_spec(alpha, rho);
        if (preset == "asymlog") return tc::asymlog_preset(d, faces, alpha, seed);
        throw UsageError("need a model: --preset or --spec");
    }
};

struct FitFlags {
    int method = 0;
    double p = 0.5, delta = 0.5, u_quantile = -1, q_quantile = 0.9999, pi = 0.001;
    std::size_t m = 1;
    std::uint64_t seed = 0;
    CLI::Option* p_opt = nullptr;
    CLI::Option* delta_opt = nullptr;

    void attach(CLI::App* cmd, bool require_method = true) {
        auto* mo = cmd->add_option("--method", method, "inference method")
                       ->check(CLI::IsMember({1, 2}));
        if (require_method) mo->required();
        p_opt = cmd->add_option("--p", p, "truncation quantile (method 1)");
        delta_opt = cmd->add_option("--delta", delta, "region exponent (method 2)");
        cmd->add_option("--u-quantile", u_quantile, "per-region threshold quantile");
        cmd->add_option("--q-quantile", q_quantile, "extrapolation quantile");
        cmd->add_option("--pi", pi, "negligible-mass cutoff");
        cmd->add_option("--m", m, "minimum region size for fitting");
        cmd->add_option("--seed", seed, "root seed")->envname("TAILCONES_SEED");
    }

    tc::FitConfig resolve() const {
        if (method == 2 && p_opt->count() > 0)
            throw UsageError("--p conflicts with --method 2 (use --delta)");
        if (method == 1 && delta_opt->count() > 0)
            throw UsageError("--delta conflicts with --method 1 (use --p)");
        tc::FitConfig cfg = method == 1 ? tc::FitConfig::method1() : tc::FitConfig::method2();
        if (p_opt->count() > 0) cfg.p = p;
        if (delta_opt->count() > 0) cfg.delta = delta;
        if (u_quantile >= 0) cfg.u_quantile = u_quantile;
        cfg.q_quantile = q_quantile;
        cfg.pi = pi;
        cfg.m = m;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

tc::SampleMatrix load_data(const std::string& path, bool header, bool no_transform) {
    tc::SampleMatrix raw = tc::read_csv(path, header);
    if (no_transform) {
        raw.validate();
        return raw;
    }
    bool had_ties = false;
    tc::SampleMatrix x = tc::to_frechet(raw, &had_ties);
    if (had_ties)
        std::cerr << "note: ties present in some column; ranks broken by row order\n";
    return x;
}

tc::MassDistribution load_truth(const std::string& path) {
    json j = json::parse(tc::read_text(path));
    if (j.contains("truth")) j = j["truth"];  // accept a simulate sidecar directly
    return tc::mass_from_json(j);
}

int run(int argc, char** argv) {
    CLI::App app{"tail mass estimation on the sub-cones of [0,inf]^d"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker cap (replicates are currently sequential)");

    // ---- simulate
    auto* sim = app.add_subcommand("simulate", "draw a sample from a mixture model");
    PresetFlags sim_model;
    sim_model.attach(sim);
    std::size_t sim_n = 10000;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    sim->add_option("--n", sim_n, "sample size")->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_seed, "root seed")->envname("TAILCONES_SEED");
    sim->add_option("--out", sim_out, "output CSV (JSON sidecar alongside)")->required();

    // ---- fit
    auto* fit = app.add_subcommand("fit", "estimate cone masses from a CSV sample");
    std::string fit_data, fit_out;
    bool fit_header = false, fit_no_transform = false, fit_letters = false;
    FitFlags fit_flags;
    fit->add_option("data", fit_data, "input CSV")->required();
    fit_flags.attach(fit);
    fit->add_flag("--header", fit_header, "input has a header row");
    fit->add_flag("--no-transform", fit_no_transform,
                  "input is already on the standard Frechet scale");
    fit->add_flag("--letters", fit_letters, "label cones A,B,... instead of 1,2,...");
    fit->add_option("--out", fit_out, "output JSON ('-' = stdout)");

    // ---- eval
    auto* ev = app.add_subcommand("eval", "score fit results against a known truth");
    std::vector<std::string> ev_fits;
    std::string ev_truth, ev_out;
    double ev_pi = 0.001;
    bool ev_letters = false;
    ev->add_option("--fit", ev_fits, "fit result JSON (repeatable)")->required();
    ev->add_option("--truth", ev_truth, "truth JSON (mass map or simulate sidecar)")->required();
    ev->add_option("--pi", ev_pi, "detection cutoff for counts");
    ev->add_flag("--letters", ev_letters, "label cones A,B,...");
    ev->add_option("--out", ev_out, "output JSON ('-' = stdout)");

    // ---- stability
    auto* st = app.add_subcommand("stability", "cone counts over a tuning grid with bootstrap CIs");
    std::string st_data, st_out;
    bool st_header = false, st_no_transform = false;
    std::vector<double> st_grid;
    double st_start = 0, st_stop = 0, st_step = 0;
    std::size_t st_boot = 250;
    FitFlags st_flags;
    st->add_option("data", st_data, "input CSV")->required();
    st_flags.attach(st);
    auto* grid_opt = st->add_option("--grid", st_grid, "explicit tuning values");
    auto* start_opt = st->add_option("--grid-start", st_start, "first tuning value");
    st->add_option("--grid-stop", st_stop, "last tuning value");
    st->add_option("--grid-step", st_step, "tuning increment");
    st->add_option("--bootstrap", st_boot, "bootstrap resamples")->check(CLI::PositiveNumber);
    st->add_flag("--header", st_header, "input has a header row");
    st->add_flag("--no-transform", st_no_transform, "input is already Frechet");
    st->add_option("--out", st_out, "output CSV ('-' = stdout)");

    // ---- theory-table
    auto* tt = app.add_subcommand("theory-table", "closed-form tau_C(delta), trivariate examples");
    double tt_alpha = 0.5, tt_delta = 0.0;
    std::string tt_out;
    tt->add_option("--alpha", tt_alpha, "logistic dependence parameter")
        ->check(CLI::Range(0.0, 1.0));
    tt->add_option("--delta", tt_delta, "cone exponent")->check(CLI::Range(0.0, 1.0));
    tt->add_option("--out", tt_out, "output CSV ('-' = stdout)");

    // ---- experiment
    auto* ex = app.add_subcommand("experiment", "simulate-fit-score replicates");
    PresetFlags ex_model;
    ex_model.attach(ex);
    std::size_t ex_n = 10000, ex_reps = 20;
    std::uint64_t ex_seed = 0;
    double ex_pi = 0.001;
    bool ex_full = false;
    std::vector<int> ex_methods{1, 2};
    std::vector<std::string> ex_metrics{"hellinger", "auc", "counts"};
    std::string ex_out;
    ex->add_option("--n", ex_n, "sample size per replicate")->check(CLI::PositiveNumber);
    ex->add_option("--replicates", ex_reps, "replicate count")->check(CLI::PositiveNumber);
    ex->add_flag("--full", ex_full, "full-scale protocol (100 replicates)");
    ex->add_option("--seed", ex_seed, "root seed")->envname("TAILCONES_SEED");
    ex->add_option("--pi", ex_pi, "negligible-mass cutoff");
    ex->add_option("--methods", ex_methods, "methods to run")->check(CLI::IsMember({1, 2}));
    ex->add_option("--metrics", ex_metrics, "metrics to compute")
        ->check(CLI::IsMember({"hellinger", "auc", "counts"}));
    ex->add_option("--out-dir", ex_out, "report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2, help is success
    }
    if (threads < 1) throw UsageError("--threads must be at least 1");

    if (*sim) {
        tc::MaxMixtureSpec model = sim_model.resolve(sim_seed);
        tc::SampleMatrix x = tc::sample_max_mixture(sim_n, model, sim_seed);
        tc::write_csv(sim_out, x);
        json sidecar{{"model", tc::to_json(model)},
                     {"n", sim_n},
                     {"seed", sim_seed},
                     {"truth", tc::to_json(tc::true_mass(model))}};
        std::string sidecar_path = sim_out;
        const auto dot = sidecar_path.rfind('.');
        if (dot != std::string::npos) sidecar_path.resize(dot);
        tc::write_text_atomic(sidecar_path + ".json", sidecar.dump(2) + "\n");
        return 0;
    }

    if (*fit) {
        tc::FitConfig cfg = fit_flags.resolve();
        tc::SampleMatrix x = load_data(fit_data, fit_header, fit_no_transform);
        tc::FitResult result = cfg.method == tc::FitConfig::Method::one
                                   ? tc::fit_method1(x, cfg)
                                   : tc::fit_method2(x, cfg);
        json out = tc::to_json(result);
        out["config"] = tc::to_json(cfg);
        if (fit_letters) out["cones"] = relabel_keys(out["cones"]);
        emit(fit_out, out.dump(2) + "\n");
        return 0;
    }

    if (*ev) {
        tc::MassDistribution truth = load_truth(ev_truth);
        std::set<tc::ConeId> truth_cones;
        for (const auto& [c, v] : truth.entries())
            if (v > 0) truth_cones.insert(c);
        std::vector<tc::FitResult> results;
        json per_fit = json::array();
        for (const auto& path : ev_fits) {
            tc::FitResult r = tc::fit_result_from_json(json::parse(tc::read_text(path)));
            json entry{{"file", path},
                       {"hellinger", tc::hellinger(truth, r.masses)},
                       {"auc", tc::roc_curve(r.masses, truth_cones).auc}};
            json feas = json::array();
            for (const auto& v : tc::feasibility_check(r.masses)) feas.push_back(v.describe());
            entry["feasibility_violations"] = feas;
            per_fit.push_back(entry);
            results.push_back(std::move(r));
        }
        json counts = json::object();
        for (const auto& [c, n] : tc::detection_counts(results, ev_pi))
            counts[c.label()] = n;
        if (ev_letters) counts = relabel_keys(counts);
        json out{{"truth", tc::to_json(truth)},
                 {"pi", ev_pi},
                 {"fits", per_fit},
                 {"detection_counts", counts},
                 {"roc_convention", "threshold sweep over estimated masses, trapezoid AUC"}};
        emit(ev_out, out.dump(2) + "\n");
        return 0;
    }

    if (*st) {
        tc::FitConfig cfg = st_flags.resolve();
        if (grid_opt->count() > 0 && start_opt->count() > 0)
            throw UsageError("--grid conflicts with --grid-start; give one grid source");
        if (st_grid.empty()) {
            if (!(st_step > 0) || st_stop < st_start)
                throw UsageError("need --grid, or --grid-start/--grid-stop/--grid-step");
            for (double g = st_start; g <= st_stop + 1e-12; g += st_step) st_grid.push_back(g);
        }
        tc::SampleMatrix x = load_data(st_data, st_header, st_no_transform);
        tc::StabilityTable table = tc::stability(x, cfg, st_grid, st_boot, cfg.pi);
        emit(st_out, tc::to_csv(table));
        return 0;
    }

    if (*tt) {
        struct Row {
            const char* name;
            tc::TauModel model;
        };
        const std::vector<Row> rows{
            {"i,independence", tc::TauModel::independence(3)},
            {"ii,logistic-pair-plus-independent", tc::TauModel::logistic_pair_plus_indep(tt_alpha)},
            {"iii,trivariate-logistic", tc::TauModel::logistic(tt_alpha)},
            {"iv,inverted-logistic", tc::TauModel::inverted_logistic(tt_alpha)},
        };
        std::ostringstream out;
        out << "case,model,cone,tau\n";
        out.precision(17);
        for (const auto& row : rows) {
            const std::uint32_t full = tc::ConeId::full(3).bits;
            for (std::uint32_t bits = 1; bits <= full; ++bits) {
                tc::ConeId c(bits, 3);
                tc::TauValue tau = tc::tau_oracle({row.model, c, tt_delta});
                out << row.name << ",\"" << c.label() << "\"," << tau.value << '\n';
            }
        }
        emit(tt_out, out.str());
        return 0;
    }

    if (*ex) {
        tc::ExperimentSpec spec;
        spec.model = ex_model.resolve(ex_seed);
        spec.n = ex_n;
        spec.replicates = ex_full ? 100 : ex_reps;
        spec.seed = ex_seed;
        spec.metrics.insert(ex_metrics.begin(), ex_metrics.end());
        for (int m : ex_methods) {
            tc::FitConfig cfg = m == 1 ? tc::FitConfig::method1() : tc::FitConfig::method2();
            cfg.pi = ex_pi;
            spec.configs.push_back(cfg);
        }
        std::sort(spec.configs.begin(), spec.configs.end(),
                  [](const tc::FitConfig& a, const tc::FitConfig& b) {
                      return static_cast<int>(a.method) < static_cast<int>(b.method);
                  });
        tc::ExperimentReport report = tc::run_experiment(spec);
        tc::write_report(report, ex_out);
        std::cout << "report written to " << ex_out << "\n";
        for (const auto& [key, value] : report.summary)
            std::cout << key << " = " << value << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const tc::EmptyModel& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 4;
    } catch (const tc::AllMassNegligible& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 4;
    } catch (const tc::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

#include "tailcones/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "tailcones/io.hpp"
#include "tailcones/method1.hpp"
#include "tailcones/method2.hpp"
#include "tailcones/rng.hpp"

namespace tailcones {

void ExperimentSpec::validate() const {
    model.validate();
    if (n < 1) throw std::invalid_argument("ExperimentSpec: n must be positive");
    if (replicates < 1) throw std::invalid_argument("ExperimentSpec: need at least one replicate");
    if (configs.empty()) throw std::invalid_argument("ExperimentSpec: no fit configs");
    bool seen[2] = {false, false};
    for (const auto& cfg : configs) {
        cfg.validate();
        bool& flag = seen[cfg.method == FitConfig::Method::one ? 0 : 1];
        if (flag) throw std::invalid_argument("ExperimentSpec: duplicate config for one method");
        flag = true;
    }
    for (const auto& m : metrics)
        if (m != "hellinger" && m != "auc" && m != "counts")
            throw std::invalid_argument("ExperimentSpec: unknown metric '" + m + "'");
}

ExperimentSpec preset_maxmix42(double alpha, double rho) {
    ExperimentSpec spec;
    spec.model = maxmix_5d_spec(alpha, rho);
    spec.n = 10000;
    spec.replicates = 20;
    spec.configs = {FitConfig::method1(), FitConfig::method2()};
    spec.metrics = {"hellinger", "auc", "counts"};
    return spec;
}

MaxMixtureSpec asymlog_preset(int d, int faces, double alpha, std::uint64_t seed) {
    if (d < 2 || d > 20) throw std::invalid_argument("asymlog_preset: d out of range");
    const std::uint32_t full = ConeId::full(d).bits;
    if (faces < 1 || static_cast<std::uint32_t>(faces) > full)
        throw std::invalid_argument("asymlog_preset: face count out of range");
    Rng rng(derive_seed(seed, 0xface5));
    std::uniform_int_distribution<std::uint32_t> pick(1, full);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::set<std::uint32_t> chosen;
        while (chosen.size() < static_cast<std::size_t>(faces)) chosen.insert(pick(rng));
        std::uint32_t covered = 0;
        for (std::uint32_t bits : chosen) covered |= bits;
        if (covered != full) continue;
        std::vector<ConeId> cones;
        for (std::uint32_t bits : chosen) cones.emplace_back(bits, d);
        return asymmetric_logistic_spec(d, cones, alpha);
    }
    throw std::invalid_argument("asymlog_preset: could not cover all coordinates; too few faces");
}

namespace {

[[noreturn]] void stage_error(std::size_t replicate, const std::string& stage,
                              const std::exception& e) {
    throw std::runtime_error("replicate " + std::to_string(replicate) + ", stage " + stage +
                             ": " + e.what());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    ExperimentReport report;
    report.spec = spec;
    report.truth = true_mass(spec.model);

    std::set<ConeId> truth_cones;
    for (const auto& [c, v] : report.truth.entries())
        if (v > 0) truth_cones.insert(c);

    const bool want_h = spec.metrics.count("hellinger") > 0;
    const bool want_auc = spec.metrics.count("auc") > 0;
    const bool want_counts = spec.metrics.count("counts") > 0;

    std::map<int, std::vector<FitResult>> per_method;
    for (std::size_t r = 1; r <= spec.replicates; ++r) {
        const std::uint64_t rep_seed = derive_seed(spec.seed, r);
        SampleMatrix x;
        try {
            x = sample_max_mixture(spec.n, spec.model, rep_seed);
        } catch (const std::exception& e) {
            stage_error(r, "simulate", e);
        }
        for (const auto& cfg_base : spec.configs) {
            FitConfig cfg = cfg_base;
            cfg.seed = rep_seed;
            const int method = cfg.method == FitConfig::Method::one ? 1 : 2;
            FitResult result;
            try {
                result = method == 1 ? fit_method1(x, cfg) : fit_method2(x, cfg);
            } catch (const std::exception& e) {
                stage_error(r, "fit-method" + std::to_string(method), e);
            }
            ReplicateRow row;
            row.replicate = r;
            row.seed = rep_seed;
            row.method = method;
            row.count = static_cast<int>(result.masses.entries().size());
            try {
                if (want_h) row.hellinger = hellinger(report.truth, result.masses);
                if (want_auc) row.auc = roc_curve(result.masses, truth_cones).auc;
            } catch (const std::exception& e) {
                stage_error(r, "metrics", e);
            }
            report.rows.push_back(row);
            if (want_counts) per_method[method].push_back(std::move(result));
        }
    }

    for (const auto& cfg : spec.configs) {
        const int method = cfg.method == FitConfig::Method::one ? 1 : 2;
        const std::string prefix = "method" + std::to_string(method) + ".";
        double sum_h = 0, sum_auc = 0, sum_count = 0;
        std::size_t n_rows = 0;
        for (const auto& row : report.rows) {
            if (row.method != method) continue;
            ++n_rows;
            sum_count += row.count;
            if (row.hellinger) sum_h += *row.hellinger;
            if (row.auc) sum_auc += *row.auc;
        }
        report.summary[prefix + "mean_count"] = sum_count / static_cast<double>(n_rows);
        if (want_h) report.summary[prefix + "mean_hellinger"] = sum_h / static_cast<double>(n_rows);
        if (want_auc) report.summary[prefix + "mean_auc"] = sum_auc / static_cast<double>(n_rows);
        if (want_counts)
            report.detections[method] = detection_counts(per_method.at(method), cfg.pi);
    }
    return report;
}

nlohmann::json to_json(const ExperimentReport& report) {
    using nlohmann::json;
    json configs = json::array();
    for (const auto& cfg : report.spec.configs) configs.push_back(to_json(cfg));
    json rows = json::array();
    for (const auto& row : report.rows) {
        json jr{{"replicate", row.replicate},
                {"seed", row.seed},
                {"method", row.method},
                {"count", row.count}};
        if (row.hellinger) jr["hellinger"] = *row.hellinger;
        if (row.auc) jr["auc"] = *row.auc;
        rows.push_back(jr);
    }
    json detections = json::object();
    for (const auto& [method, counts] : report.detections) {
        json per_cone = json::object();
        for (const auto& [c, count] : counts) per_cone[c.label()] = count;
        detections["method" + std::to_string(method)] = per_cone;
    }
    return json{{"model", to_json(report.spec.model)},
                {"n", report.spec.n},
                {"replicates", report.spec.replicates},
                {"seed", report.spec.seed},
                {"metrics", report.spec.metrics},
                {"configs", configs},
                {"truth", to_json(report.truth)},
                {"rows", rows},
                {"summary", report.summary},
                {"detections", detections}};
}

std::string rows_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "replicate,seed,method,count,hellinger,auc\n";
    out.precision(17);
    for (const auto& row : report.rows) {
        out << row.replicate << ',' << row.seed << ',' << row.method << ',' << row.count << ',';
        if (row.hellinger) out << *row.hellinger;
        out << ',';
        if (row.auc) out << *row.auc;
        out << '\n';
    }
    return out.str();
}

void write_report(const ExperimentReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    write_text_atomic((base / "report.json").string(), to_json(report).dump(2) + "\n");
    write_text_atomic((base / "replicates.csv").string(), rows_to_csv(report));
}

}  // namespace tailcones

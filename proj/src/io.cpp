#include "tailcones/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tailcones {

using nlohmann::json;

json to_json(const MassDistribution& m) {
    json mass = json::object();
    for (const auto& [c, v] : m.entries()) mass[c.label()] = v;
    return json{{"d", m.dim()}, {"mass", mass}};
}

MassDistribution mass_from_json(const json& j) {
    MassDistribution m(j.at("d").get<int>());
    for (const auto& [label, v] : j.at("mass").items())
        m.set(ConeId::parse(label, m.dim()), v.get<double>());
    return m;
}

json to_json(const FitConfig& cfg) {
    json j{{"method", cfg.method == FitConfig::Method::one ? 1 : 2},
           {"u_quantile", cfg.u_quantile},
           {"q_quantile", cfg.q_quantile},
           {"pi", cfg.pi},
           {"m", cfg.m},
           {"seed", cfg.seed}};
    if (cfg.method == FitConfig::Method::one) j["p"] = cfg.p;
    else j["delta"] = cfg.delta;
    return j;
}

FitConfig fit_config_from_json(const json& j) {
    FitConfig cfg;
    const int method = j.at("method").get<int>();
    if (method == 1) cfg = FitConfig::method1();
    else if (method == 2) cfg = FitConfig::method2();
    else throw DataError("fit_config_from_json: method must be 1 or 2");
    if (j.contains("p")) cfg.p = j["p"].get<double>();
    if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
    if (j.contains("u_quantile")) cfg.u_quantile = j["u_quantile"].get<double>();
    if (j.contains("q_quantile")) cfg.q_quantile = j["q_quantile"].get<double>();
    if (j.contains("pi")) cfg.pi = j["pi"].get<double>();
    if (j.contains("m")) cfg.m = j["m"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.validate();
    return cfg;
}

json to_json(const FitResult& r) {
    json cones = json::object();
    for (const auto& [c, info] : r.per_cone) {
        json entry{{"mass", r.masses.mass(c)},
                   {"n", info.n},
                   {"weight", info.raw_weight}};
        if (info.fit) {
            entry["tau"] = info.fit->tau_hat;
            entry["tau_raw"] = info.fit->tau_raw;
            entry["k"] = info.fit->k_hat;
            entry["u"] = info.fit->u;
            entry["n_exceed"] = info.fit->n_exceed;
        } else {
            entry["tau"] = nullptr;
        }
        cones[c.label()] = entry;
    }
    return json{{"d", r.masses.dim()},
                {"q", r.q_used},
                {"cones", cones},
                {"diagnostics", r.diagnostics}};
}

FitResult fit_result_from_json(const json& j) {
    const int d = j.at("d").get<int>();
    FitResult r;
    r.masses = MassDistribution(d);
    r.q_used = j.at("q").get<double>();
    for (const auto& [label, entry] : j.at("cones").items()) {
        ConeId c = ConeId::parse(label, d);
        const double mass = entry.at("mass").get<double>();
        if (mass > 0) r.masses.set(c, mass);
        ConeFitInfo info;
        info.n = entry.at("n").get<std::size_t>();
        info.raw_weight = entry.at("weight").get<double>();
        if (!entry.at("tau").is_null()) {
            TailFit fit;
            fit.tau_hat = entry["tau"].get<double>();
            fit.tau_raw = entry["tau_raw"].get<double>();
            fit.k_hat = entry["k"].get<double>();
            fit.u = entry["u"].get<double>();
            fit.n_total = info.n;
            fit.n_exceed = entry["n_exceed"].get<std::size_t>();
            info.fit = fit;
        }
        r.per_cone.emplace(c, std::move(info));
    }
    for (const auto& diag : j.at("diagnostics"))
        r.diagnostics.push_back(diag.get<std::string>());
    return r;
}

json to_json(const MaxMixtureSpec& spec) {
    json comps = json::array();
    for (const auto& c : spec.components) {
        json jc{{"cone", c.cone.label()}, {"theta", c.theta}};
        switch (c.family) {
            case MixtureComponent::Family::logistic:
                jc["family"] = "logistic";
                jc["alpha"] = c.alpha;
                break;
            case MixtureComponent::Family::gaussian:
                jc["family"] = "gaussian";
                jc["rho"] = c.rho;
                break;
            case MixtureComponent::Family::point:
                jc["family"] = "point";
                break;
        }
        comps.push_back(jc);
    }
    return json{{"d", spec.d}, {"components", comps}};
}

MaxMixtureSpec mixture_from_json(const json& j) {
    MaxMixtureSpec spec;
    spec.d = j.at("d").get<int>();
    for (const auto& jc : j.at("components")) {
        MixtureComponent c;
        c.cone = ConeId::parse(jc.at("cone").get<std::string>(), spec.d);
        c.theta = jc.at("theta").get<std::vector<double>>();
        const std::string family = jc.at("family").get<std::string>();
        if (family == "logistic") {
            c.family = MixtureComponent::Family::logistic;
            c.alpha = jc.at("alpha").get<double>();
        } else if (family == "gaussian") {
            c.family = MixtureComponent::Family::gaussian;
            c.rho = jc.at("rho").get<double>();
        } else if (family == "point") {
            c.family = MixtureComponent::Family::point;
        } else {
            throw DataError("mixture_from_json: unknown family '" + family + "'");
        }
        spec.components.push_back(std::move(c));
    }
    spec.validate();
    return spec;
}

bool equal(const FitResult& a, const FitResult& b) {
    if (a.masses.dim() != b.masses.dim()) return false;
    if (a.masses.entries() != b.masses.entries()) return false;
    if (a.q_used != b.q_used) return false;
    if (a.diagnostics != b.diagnostics) return false;
    if (a.per_cone.size() != b.per_cone.size()) return false;
    for (auto ita = a.per_cone.begin(), itb = b.per_cone.begin(); ita != a.per_cone.end();
         ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        const ConeFitInfo& x = ita->second;
        const ConeFitInfo& y = itb->second;
        if (x.n != y.n || x.raw_weight != y.raw_weight) return false;
        if (x.fit.has_value() != y.fit.has_value()) return false;
        if (x.fit && (x.fit->tau_hat != y.fit->tau_hat || x.fit->tau_raw != y.fit->tau_raw ||
                      x.fit->k_hat != y.fit->k_hat || x.fit->u != y.fit->u ||
                      x.fit->n_total != y.fit->n_total || x.fit->n_exceed != y.fit->n_exceed))
            return false;
    }
    return true;
}

std::string to_csv(const StabilityTable& table) {
    std::ostringstream out;
    out << "tuning_value,count,ci_low,ci_high\n";
    out.precision(17);
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        out << table.grid[i] << ',' << table.counts[i] << ',' << table.ci_low[i] << ','
            << table.ci_high[i] << '\n';
    return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace tailcones

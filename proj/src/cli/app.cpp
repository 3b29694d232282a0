#include "uwrelay/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include "uwrelay/cli/config.hpp"
#include "uwrelay/cli/format.hpp"
#include "uwrelay/errors.hpp"
#include "uwrelay/fitmodels.hpp"
#include "uwrelay/kernels.hpp"
#include "uwrelay/linkbudget.hpp"
#include "uwrelay/oracle.hpp"
#include "uwrelay/planner.hpp"
#include "uwrelay/surface.hpp"

namespace uwrelay::cli {

namespace {

struct Output {
    Json doc;
    CsvTable table;
};

// Flags as typed; empty optionals fall back to the config file, then defaults.
struct GlobalFlags {
    std::optional<std::string> config;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<double> k, s, w, c, eta, packet_bits, alpha;
    bool error_json = false;
};

struct ChannelArgs {
    double l = 0;
    std::string f = "0.1:200:0.1";
};

struct FitArgs {
    std::optional<std::string> l;
    std::string l_log = "1:100:60";
    std::string snr = "5:25:5";
};

struct PlanArgs {
    double l = 0, snr = 0, pr = 0;
    std::string model = "reference";
};

struct Table1Args {
    std::string snr = "10,15,20,25";
    std::string l = "10:50:10";
    double pr = 0.5;
    std::string model = "reference";
    bool exact = false;
};

struct SurfaceArgs {
    std::string pr = "0.1:2:0.1";
    std::string snr = "10:25:1";
    std::string degrees = "5,5";
    std::string l_log = "1:100:150";
    std::size_t positions = 400;
    bool analytic = false;
    bool degree_sweep = false;
    bool points = false;
    std::optional<std::string> fixture;
};

struct CurveArgs {
    double l = 0, snr = 0, pr = 0;
    std::optional<double> step;
    std::string model = "reference";
};

struct SweepArgs {
    double snr = 0, pr = 0;
    std::string l = "1:60:1";
    std::size_t positions = 400;
};

struct OpenDistArgs {
    std::string snr = "10,15,20,25";
    std::string pr = "0.1:2:0.1";
    std::string l_log = "1:100:150";
    std::size_t positions = 400;
};

Json environment_json(const Environment& env) {
    Json j;
    j["k"] = env.k;
    j["s"] = env.s;
    j["w"] = env.w;
    j["c"] = env.c;
    j["eta"] = env.eta;
    return j;
}

Json rows_json(const CsvTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r;
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            r[t.header[i]] = row[i];
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

Json model_json(const FitModel& m) {
    Json j;
    j["snr0_db"] = m.snr0_db;
    j["omega_khz"] = m.omega_khz;
    j["log10_omega"] = std::log10(m.omega_khz);
    j["lambda"] = m.lambda;
    j["psi_w"] = m.psi_w;
    j["log10_psi"] = std::log10(m.psi_w);
    j["gamma"] = m.gamma;
    j["delta_upa"] = m.delta_upa;
    return j;
}

// "lo:hi:count", log-spaced.
std::vector<double> parse_log_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw UsageError("log grid must be lo:hi:count, got '" + text + "'");
    }
    const double lo = parse_number("log grid lo", text.substr(0, a));
    const double hi = parse_number("log grid hi", text.substr(a + 1, b - a - 1));
    const double count = parse_number("log grid count", text.substr(b + 1));
    if (!(lo > 0.0 && hi > lo && count >= 2 && count == std::floor(count))) {
        throw UsageError("log grid needs 0 < lo < hi and an integer count >= 2");
    }
    return log_spaced(lo, hi, static_cast<std::size_t>(count));
}

std::pair<int, int> parse_degrees(const std::string& text) {
    const auto d = parse_list(text);
    if (d.size() != 2 || d[0] != std::floor(d[0]) || d[1] != std::floor(d[1]) || d[0] < 1 ||
        d[1] < 1) {
        throw UsageError("degrees must be two integers >= 1, e.g. 5,5");
    }
    return {static_cast<int>(d[0]), static_cast<int>(d[1])};
}

// Model source for commands that accept --model.
class ModelSource {
   public:
    ModelSource(std::string kind, const RunConfig& cfg) : kind_(std::move(kind)), cfg_(cfg) {
        if (kind_ != "reference" && kind_ != "fitted") {
            throw UsageError("--model must be reference or fitted");
        }
    }

    FitModel at(double snr0_db) {
        if (kind_ == "reference") {
            return FitModel::reference(snr0_db, cfg_.env);
        }
        if (!samples_) {
            samples_ = sample_channel(ChannelModel(cfg_.env), default_fit_distances());
        }
        return fit_model(*samples_, snr0_db, cfg_.env);
    }

    const std::string& kind() const { return kind_; }

   private:
    std::string kind_;
    const RunConfig& cfg_;
    std::optional<ChannelSamples> samples_;
};

LinkSpec link(double l, double snr, double pr, const RunConfig& cfg) {
    return {l, snr, pr, cfg.packet_bits, cfg.alpha};
}

Output cmd_channel(const ChannelArgs& a, const RunConfig& cfg) {
    const auto freqs = parse_range(a.f);
    if (!(a.l > 0.0)) {
        throw UsageError("--l must be > 0");
    }
    if (freqs.front() <= 0.0) {
        throw UsageError("frequencies must be > 0");
    }
    Output o;
    o.table.header = {"f_khz", "absorption_db_per_km", "path_loss_db", "noise_db", "product_db"};
    for (double f : freqs) {
        o.table.rows.push_back({f, absorption_db_per_km(f), path_loss_db(a.l, f, cfg.env),
                                noise_psd_db(f, cfg.env),
                                attenuation_noise_product_db(a.l, f, cfg.env)});
    }
    const FrequencyBand band = ChannelModel(cfg.env).effective_band(a.l);
    o.doc["command"] = "channel";
    o.doc["l_km"] = a.l;
    o.doc["environment"] = environment_json(cfg.env);
    o.doc["band"] = {{"f0_khz", band.f0_khz},
                     {"lo_khz", band.lo_khz},
                     {"hi_khz", band.hi_khz},
                     {"width_khz", band.width_khz()}};
    o.doc["rows"] = rows_json(o.table);
    return o;
}

struct FitOutcome {
    Output out;
    bool valid = true;
    std::string message;
};

FitOutcome cmd_fit(const FitArgs& a, const RunConfig& cfg) {
    const std::vector<double> distances = a.l ? parse_list(*a.l) : parse_log_grid(a.l_log);
    if (distances.size() < 2) {
        throw UsageError("fit needs at least two distances");
    }
    if (*std::min_element(distances.begin(), distances.end()) <= 0.0) {
        throw UsageError("distances must be > 0");
    }
    const auto snrs = parse_list(a.snr);
    const ChannelSamples samples = sample_channel(ChannelModel(cfg.env), distances);

    FitOutcome r;
    Output& o = r.out;
    o.table.header = {"snr0_db", "omega_khz", "log10_omega", "lambda", "psi_w",
                      "log10_psi", "gamma", "delta_upa", "valid"};
    std::vector<FitModel> models;
    Json model_docs = Json::array();
    Json violations = Json::array();
    for (double snr : snrs) {
        const FitModel m = fit_model(samples, snr, cfg.env);
        const auto bad = validate_ranges(m);
        for (const auto& v : bad) {
            violations.push_back({{"snr0_db", snr}, {"constraint", v.constraint}, {"value", v.value}});
            r.message += " [SNR0 " + format_csv_number(snr) + " dB: " + v.constraint + ", got " +
                         format_csv_number(v.value) + "]";
        }
        r.valid = r.valid && bad.empty();
        models.push_back(m);
        Json doc = model_json(m);
        doc["valid"] = bad.empty();
        model_docs.push_back(doc);
        o.table.rows.push_back({snr, m.omega_khz, std::log10(m.omega_khz), m.lambda, m.psi_w,
                                std::log10(m.psi_w), m.gamma, m.delta_upa,
                                bad.empty() ? "true" : "false"});
    }
    o.doc["command"] = "fit";
    o.doc["environment"] = environment_json(cfg.env);
    o.doc["distances"] = {{"count", distances.size()},
                          {"min_km", *std::min_element(distances.begin(), distances.end())},
                          {"max_km", *std::max_element(distances.begin(), distances.end())}};
    o.doc["models"] = model_docs;
    if (models.size() >= 2) {
        const PsiTrend t = fit_psi_trend(models);
        o.doc["psi_trend"] = {{"slope_per_db", t.slope_per_db}, {"intercept", t.intercept}};
    } else {
        o.doc["psi_trend"] = nullptr;
    }
    o.doc["violations"] = violations;
    return r;
}

Output cmd_plan(const PlanArgs& a, const RunConfig& cfg) {
    ModelSource source(a.model, cfg);
    const LinkSpec spec = link(a.l, a.snr, a.pr, cfg);
    spec.validate();
    const FitModel model = source.at(a.snr);
    const Thresholds t = thresholds(model, a.pr);
    const DeploymentPlan plan = plan_link(spec, model, cfg.env);
    const EnergyDelayReport rep = compare(spec, model, cfg.env);
    const CaseLabel label = classify_case(a.l, model, a.pr);
    const std::string decision = plan.hop_count == 1 ? "direct" : "relay";

    Output o;
    o.doc["command"] = "plan";
    o.doc["input"] = {{"l_km", a.l},
                      {"snr0_db", a.snr},
                      {"p_r_w", a.pr},
                      {"packet_bits", cfg.packet_bits},
                      {"alpha", cfg.alpha}};
    o.doc["environment"] = environment_json(cfg.env);
    Json mj = model_json(model);
    mj["source"] = source.kind();
    o.doc["model"] = mj;
    o.doc["thresholds"] = {{"t1_km", t.t1_km},
                           {"t2_km", t.t2_km},
                           {"open_distance_km", t.open_distance_km()}};
    o.doc["case"] = std::string(to_string(label));
    o.doc["decision"] = decision;
    o.doc["plan"] = {{"relay_positions_km", plan.relay_positions_km},
                     {"hop_count", plan.hop_count},
                     {"hop_length_km", plan.hop_length_km},
                     {"total_energy_joule", plan.total_energy_joule},
                     {"total_delay_sec", plan.total_delay_sec}};
    o.doc["comparison"] = {{"e0_joule", rep.e0_joule},
                           {"e1_mid_joule", rep.e1_mid_joule},
                           {"t0_sec", rep.t0_sec},
                           {"t1_mid_sec", rep.t1_mid_sec},
                           {"energy_reduction_ratio", rep.energy_reduction_ratio},
                           {"delay_reduction_ratio", rep.delay_reduction_ratio}};

    std::string positions;
    for (std::size_t i = 0; i < plan.relay_positions_km.size(); ++i) {
        positions += (i ? ";" : "") + format_csv_number(plan.relay_positions_km[i]);
    }
    o.table.header = {"l_km", "snr0_db", "p_r_w", "open_distance_km", "case", "decision",
                      "hop_count", "hop_length_km", "relay_positions_km", "total_energy_joule",
                      "total_delay_sec", "e0_joule", "e1_mid_joule", "energy_reduction_ratio",
                      "delay_reduction_ratio"};
    o.table.rows.push_back({a.l, a.snr, a.pr, t.open_distance_km(), std::string(to_string(label)),
                            decision, plan.hop_count, plan.hop_length_km, positions,
                            plan.total_energy_joule, plan.total_delay_sec, rep.e0_joule,
                            rep.e1_mid_joule, rep.energy_reduction_ratio,
                            rep.delay_reduction_ratio});
    return o;
}

Output cmd_table1(const Table1Args& a, const RunConfig& cfg) {
    ModelSource source(a.model, cfg);
    const auto snrs = parse_list(a.snr);
    const auto ls = parse_list(a.l);
    std::unique_ptr<ExactModel> exact;
    if (a.exact) {
        exact = std::make_unique<ExactModel>(ChannelModel(cfg.env));
        std::vector<double> d;
        for (double l : ls) {
            d.push_back(l);
            d.push_back(0.5 * l);
        }
        exact->prefill(d);
    }

    Output o;
    o.table.header = {"snr0_db", "l_km", "e0_joule", "e1_mid_joule", "energy_ratio_pct",
                      "d0_sec", "d1_mid_sec", "delay_ratio_pct"};
    if (a.exact) {
        for (const char* h : {"e0_exact_joule", "e1_mid_exact_joule", "energy_ratio_exact_pct",
                              "d0_exact_sec", "d1_mid_exact_sec", "delay_ratio_exact_pct"}) {
            o.table.header.emplace_back(h);
        }
    }
    for (double snr : snrs) {
        const FitModel model = source.at(snr);
        for (double l : ls) {
            const LinkSpec spec = link(l, snr, a.pr, cfg);
            const EnergyDelayReport r = compare(spec, model, cfg.env);
            std::vector<Json> row{snr,
                                  l,
                                  r.e0_joule,
                                  r.e1_mid_joule,
                                  100.0 * r.energy_reduction_ratio,
                                  r.t0_sec,
                                  r.t1_mid_sec,
                                  100.0 * r.delay_reduction_ratio};
            if (exact) {
                const double e0 = numeric_energy(0.0, spec, *exact);
                const double e1 = numeric_energy(0.5 * l, spec, *exact);
                const double d0 = numeric_delay(0.0, spec, *exact);
                const double d1 = numeric_delay(0.5 * l, spec, *exact);
                for (double v : {e0, e1, 100.0 * (e0 - e1) / e0, d0, d1, 100.0 * (d0 - d1) / d0}) {
                    row.emplace_back(v);
                }
            }
            o.table.rows.push_back(std::move(row));
        }
    }
    o.doc["command"] = "table1";
    o.doc["p_r_w"] = a.pr;
    o.doc["packet_bits"] = cfg.packet_bits;
    o.doc["alpha"] = cfg.alpha;
    o.doc["model_source"] = source.kind();
    o.doc["exact"] = a.exact;
    o.doc["environment"] = environment_json(cfg.env);
    o.doc["rows"] = rows_json(o.table);
    return o;
}

// Realistic (oracle) or closed-form open distances over a (P_R, SNR0) grid.
std::vector<SurfacePoint> open_distance_points(const std::vector<double>& prs,
                                               const std::vector<double>& snrs, bool analytic,
                                               const std::vector<double>& l_grid,
                                               std::size_t positions, const RunConfig& cfg) {
    std::vector<SurfacePoint> pts;
    std::unique_ptr<ExactModel> exact;
    if (!analytic) {
        exact = std::make_unique<ExactModel>(ChannelModel(cfg.env));
    }
    for (double pr : prs) {
        for (double snr : snrs) {
            const double l_op =
                analytic ? open_distance(FitModel::reference(snr, cfg.env), pr)
                         : realistic_open_distance(snr, pr, *exact, l_grid, positions);
            pts.push_back({std::log10(pr), snr, std::log10(l_op)});
        }
    }
    return pts;
}

void require_positive(const std::vector<double>& v, const char* what) {
    if (*std::min_element(v.begin(), v.end()) <= 0.0) {
        throw UsageError(std::string(what) + " values must be > 0");
    }
}

Json gof_json(const GoFReport& g) {
    return {{"sse", g.sse}, {"rmse", g.rmse}, {"r2", g.r2}, {"adj_r2", g.adj_r2}};
}

Output cmd_surface(const SurfaceArgs& a, const RunConfig& cfg) {
    const auto prs = parse_list(a.pr);
    const auto snrs = parse_list(a.snr);
    require_positive(prs, "--pr");
    const auto [m, n] = parse_degrees(a.degrees);
    const auto l_grid = parse_log_grid(a.l_log);
    const auto pts = open_distance_points(prs, snrs, a.analytic, l_grid, a.positions, cfg);
    const SurfaceFit fit = fit_open_distance_surface(pts, m, n);

    Output o;
    o.doc["command"] = "surface";
    o.doc["data_source"] = a.analytic ? "closed_form" : "oracle";
    o.doc["grid"] = {{"p_r_w", prs}, {"snr0_db", snrs}};
    o.doc["point_count"] = pts.size();
    o.doc["surface"] = fit.surface.to_json();
    o.doc["gof"] = gof_json(fit.gof);
    if (a.degree_sweep) {
        Json sweep = Json::array();
        for (int d = 1; d <= std::max(m, n); ++d) {
            const SurfaceFit f = fit_open_distance_surface(pts, d, d);
            sweep.push_back({{"m", d}, {"n", d}, {"sse", f.gof.sse}, {"rmse", f.gof.rmse},
                             {"r2", f.gof.r2}, {"adj_r2", f.gof.adj_r2}});
        }
        o.doc["degree_sweep"] = sweep;
    }
    if (a.fixture) {
        const PolySurface fx = PolySurface::load(*a.fixture);
        std::vector<double> obs;
        std::vector<double> pred;
        double worst = 0.0;
        for (const auto& p : pts) {
            obs.push_back(p.z);
            pred.push_back(fx(p.x, p.y));
            worst = std::max(worst, std::abs(std::pow(10.0, pred.back() - p.z) - 1.0));
        }
        const GoFReport g = goodness_of_fit(obs, pred, fx.terms().size());
        o.doc["fixture"] = {{"path", *a.fixture},
                            {"gof", gof_json(g)},
                            {"max_relative_error", worst}};
    }
    if (a.points) {
        Json data = Json::array();
        for (const auto& p : pts) {
            data.push_back({{"log10_p_r", p.x}, {"snr0_db", p.y}, {"log10_open_distance", p.z}});
        }
        o.doc["points"] = data;
    }
    o.table.header = {"i", "j", "value"};
    for (const auto& [i, j] : fit.surface.terms()) {
        o.table.rows.push_back({i, j, fit.surface.coeff(i, j)});
    }
    return o;
}

Output cmd_curve(const CurveArgs& a, const RunConfig& cfg) {
    ModelSource source(a.model, cfg);
    const LinkSpec spec = link(a.l, a.snr, a.pr, cfg);
    spec.validate();
    const ExactModel exact{ChannelModel(cfg.env)};
    const OracleResult r = a.step ? grid_argmin_relay(spec, exact, *a.step)
                                  : grid_argmin_relay(spec, exact);
    const FitModel model = source.at(a.snr);

    Output o;
    o.table.header = {"x_km", "e1_exact_joule", "e1_fitted_joule"};
    for (const auto& s : r.energy_curve) {
        o.table.rows.push_back({s.x_km, s.energy_joule, limit_energy(s.x_km, spec, model)});
    }
    o.doc["command"] = "curve";
    o.doc["input"] = {{"l_km", a.l}, {"snr0_db", a.snr}, {"p_r_w", a.pr}};
    o.doc["grid_step_km"] = r.grid_step_km;
    o.doc["best_x_km"] = r.best_x_km;
    o.doc["best_energy_joule"] = r.best_energy_joule;
    o.doc["rows"] = rows_json(o.table);
    return o;
}

Output cmd_sweep(const SweepArgs& a, const RunConfig& cfg) {
    const auto ls = parse_list(a.l);
    require_positive(ls, "--l");
    if (a.positions < 4) {
        throw UsageError("--positions must be >= 4");
    }
    const ExactModel exact{ChannelModel(cfg.env)};
    Output o;
    o.table.header = {"l_km", "best_x_km", "best_x_over_l", "best_energy_joule",
                      "direct_energy_joule"};
    for (double l : ls) {
        const LinkSpec spec = link(l, a.snr, a.pr, cfg);
        const OracleResult r = grid_argmin_relay(spec, exact, l / static_cast<double>(a.positions));
        o.table.rows.push_back({l, r.best_x_km, r.best_x_km / l, r.best_energy_joule,
                                r.energy_curve.front().energy_joule});
    }
    o.doc["command"] = "sweep";
    o.doc["input"] = {{"snr0_db", a.snr}, {"p_r_w", a.pr}, {"positions", a.positions}};
    o.doc["rows"] = rows_json(o.table);
    return o;
}

Output cmd_opendist(const OpenDistArgs& a, const RunConfig& cfg) {
    const auto snrs = parse_list(a.snr);
    const auto prs = parse_list(a.pr);
    require_positive(prs, "--pr");
    const auto l_grid = parse_log_grid(a.l_log);
    const ExactModel exact{ChannelModel(cfg.env)};
    Output o;
    o.table.header = {"snr0_db", "p_r_w", "oracle_open_distance_km", "closed_form_open_distance_km",
                      "t1_km", "t2_km", "relative_deviation"};
    for (double snr : snrs) {
        const FitModel model = FitModel::reference(snr, cfg.env);
        for (double pr : prs) {
            const double oracle = realistic_open_distance(snr, pr, exact, l_grid, a.positions);
            const Thresholds t = thresholds(model, pr);
            o.table.rows.push_back({snr, pr, oracle, t.open_distance_km(), t.t1_km, t.t2_km,
                                    (t.open_distance_km() - oracle) / oracle});
        }
    }
    o.doc["command"] = "opendist";
    o.doc["rows"] = rows_json(o.table);
    return o;
}

struct Failure {
    int code;
    std::string kind;
};

Failure classify(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) {
        return {kUsage, "usage"};
    }
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ConfigurationError*>(&e)) {
        return {kUsage, dynamic_cast<const DomainError*>(&e) ? "domain" : "configuration"};
    }
    if (dynamic_cast<const ValidationError*>(&e)) {
        return {kValidation, "validation"};
    }
    if (dynamic_cast<const BracketError*>(&e)) {
        return {kNumeric, "bracket"};
    }
    if (dynamic_cast<const RankError*>(&e)) {
        return {kNumeric, "rank"};
    }
    if (dynamic_cast<const BoundaryMinimizerError*>(&e)) {
        return {kNumeric, "boundary_minimizer"};
    }
    if (dynamic_cast<const BandTruncationError*>(&e)) {
        return {kNumeric, "band_truncation"};
    }
    return {kNumeric, "numeric"};
}

void report(const Failure& f, const std::string& message, bool as_json, std::ostream& out,
            std::ostream& err) {
    err << "relay_planner: " << message << '\n';
    if (as_json) {
        Json doc;
        doc["error"] = {{"kind", f.kind}, {"message", message}, {"exit_code", f.code}};
        out << dump_json(doc);
    }
}

void apply_thread_env() {
    const char* raw = std::getenv("RELAY_PLANNER_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return;
    }
    char* end = nullptr;
    const long n = std::strtol(raw, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        throw UsageError(std::string("RELAY_PLANNER_THREADS must be a positive integer, got '") +
                         raw + "'");
    }
    kernels::set_thread_limit(static_cast<int>(n));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relay placement planner for linear underwater acoustic links", "relay_planner"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--config", g.config, "key = value file; flags override it");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "write the result here instead of stdout");
    app.add_option("--k", g.k, "spreading factor (1.5)");
    app.add_option("--s", g.s, "shipping activity in [0, 1] (0.5)");
    app.add_option("--w", g.w, "wind speed in m/s (0)");
    app.add_option("--c", g.c, "sound speed in m/s (1500)");
    app.add_option("--eta", g.eta, "electro-acoustic efficiency (0.25)");
    app.add_option("--L", g.packet_bits, "packet size in bits (2048)");
    app.add_option("--alpha", g.alpha, "bandwidth efficiency in bps/Hz (1)");
    app.add_flag("--error-json", g.error_json, "also print failures as a JSON document");

    ChannelArgs ch;
    auto* sc = app.add_subcommand("channel", "absorption, path loss and noise over frequency");
    sc->add_option("--l", ch.l, "distance in km")->required();
    sc->add_option("--f", ch.f, "frequency range start:stop:step in kHz")->capture_default_str();

    FitArgs fa;
    auto* sf = app.add_subcommand("fit", "power-law fits of bandwidth and transmit power");
    sf->add_option("--l", fa.l, "distances in km (list or range)");
    sf->add_option("--l-log", fa.l_log, "log-spaced distances lo:hi:count")->capture_default_str();
    sf->add_option("--snr", fa.snr, "target SNRs in dB")->capture_default_str();

    PlanArgs pa;
    auto* sp = app.add_subcommand("plan", "relay decision and deployment for one link");
    sp->add_option("--l", pa.l, "distance in km")->required();
    sp->add_option("--snr", pa.snr, "target SNR in dB")->required();
    sp->add_option("--pr", pa.pr, "receive power in W")->required();
    sp->add_option("--model", pa.model, "reference or fitted")->capture_default_str();

    Table1Args ta;
    auto* st = app.add_subcommand("table1", "direct vs midpoint-relay energy and delay");
    st->add_option("--snr", ta.snr)->capture_default_str();
    st->add_option("--l", ta.l)->capture_default_str();
    st->add_option("--pr", ta.pr)->capture_default_str();
    st->add_option("--model", ta.model, "reference or fitted")->capture_default_str();
    st->add_flag("--exact", ta.exact, "add exact-model columns");

    SurfaceArgs sa;
    auto* ss = app.add_subcommand("surface", "polynomial fit of log10 open distance");
    ss->add_option("--pr", sa.pr, "receive powers in W")->capture_default_str();
    ss->add_option("--snr", sa.snr, "target SNRs in dB")->capture_default_str();
    ss->add_option("--degrees", sa.degrees, "m,n")->capture_default_str();
    ss->add_option("--l-log", sa.l_log, "oracle distance grid lo:hi:count")->capture_default_str();
    ss->add_option("--positions", sa.positions, "relay positions per link")->capture_default_str();
    ss->add_flag("--analytic", sa.analytic, "use the closed-form open distance");
    ss->add_flag("--degree-sweep", sa.degree_sweep, "GoF for degrees (1,1) up to (m,m)");
    ss->add_flag("--points", sa.points, "include the fitted data points");
    ss->add_option("--fixture", sa.fixture, "coefficient file to score on the same data");

    CurveArgs ca;
    auto* scu = app.add_subcommand("curve", "two-hop energy against relay position");
    scu->add_option("--l", ca.l)->required();
    scu->add_option("--snr", ca.snr)->required();
    scu->add_option("--pr", ca.pr)->required();
    scu->add_option("--step", ca.step, "position step in km (default l/400)");
    scu->add_option("--model", ca.model, "reference or fitted")->capture_default_str();

    SweepArgs wa;
    auto* sw = app.add_subcommand("sweep", "energy-optimal relay position against distance");
    sw->add_option("--snr", wa.snr)->required();
    sw->add_option("--pr", wa.pr)->required();
    sw->add_option("--l", wa.l)->capture_default_str();
    sw->add_option("--positions", wa.positions)->capture_default_str();

    OpenDistArgs oa;
    auto* so = app.add_subcommand("opendist", "oracle turning points against closed form");
    so->add_option("--snr", oa.snr)->capture_default_str();
    so->add_option("--pr", oa.pr)->capture_default_str();
    so->add_option("--l-log", oa.l_log)->capture_default_str();
    so->add_option("--positions", oa.positions)->capture_default_str();

    std::vector<std::string> argv_store{"relay_planner"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        const bool json = std::find(args.begin(), args.end(), "--error-json") != args.end();
        report({kUsage, "usage"}, e.what(), json, out, err);
        return kUsage;
    }

    try {
        apply_thread_env();
        RunConfig cfg;
        std::vector<std::string> overridden;
        const std::pair<const char*, const std::optional<double>*> numeric[] = {
            {"k", &g.k},     {"s", &g.s},   {"w", &g.w},
            {"c", &g.c},     {"eta", &g.eta}, {"L", &g.packet_bits},
            {"alpha", &g.alpha}};
        for (const auto& [key, v] : numeric) {
            if (*v) {
                overridden.emplace_back(key);
            }
        }
        if (g.format) {
            overridden.emplace_back("format");
        }
        if (g.out) {
            overridden.emplace_back("out");
        }
        if (g.config) {
            apply_config(read_config_file(*g.config), overridden, cfg);
        }
        if (g.k) cfg.env.k = *g.k;
        if (g.s) cfg.env.s = *g.s;
        if (g.w) cfg.env.w = *g.w;
        if (g.c) cfg.env.c = *g.c;
        if (g.eta) cfg.env.eta = *g.eta;
        if (g.packet_bits) cfg.packet_bits = *g.packet_bits;
        if (g.alpha) cfg.alpha = *g.alpha;
        if (g.format) cfg.format = *g.format;
        if (g.out) cfg.out = *g.out;
        if (cfg.format != "json" && cfg.format != "csv") {
            throw UsageError("format must be json or csv");
        }
        cfg.env.validate();

        Output result;
        int code = kOk;
        std::string late_error;
        if (*sc) {
            result = cmd_channel(ch, cfg);
        } else if (*sf) {
            FitOutcome f = cmd_fit(fa, cfg);
            result = std::move(f.out);
            if (!f.valid) {
                code = kValidation;
                late_error = "fitted parameters outside the admissible ranges:" + f.message;
            }
        } else if (*sp) {
            result = cmd_plan(pa, cfg);
        } else if (*st) {
            result = cmd_table1(ta, cfg);
        } else if (*ss) {
            result = cmd_surface(sa, cfg);
        } else if (*scu) {
            result = cmd_curve(ca, cfg);
        } else if (*sw) {
            result = cmd_sweep(wa, cfg);
        } else {
            result = cmd_opendist(oa, cfg);
        }

        const std::string text =
            cfg.format == "json" ? dump_json(result.doc) : dump_csv(result.table);
        if (cfg.out) {
            std::ofstream file(*cfg.out, std::ios::binary);
            if (!file) {
                throw UsageError("cannot write " + cfg.out->string());
            }
            file << text;
        } else {
            out << text;
        }
        if (code != kOk) {
            err << "relay_planner: " << late_error << '\n';
        }
        return code;
    } catch (const std::exception& e) {
        const Failure f = classify(e);
        report(f, e.what(), g.error_json, out, err);
        return f.code;
    }
}

}  // namespace uwrelay::cli

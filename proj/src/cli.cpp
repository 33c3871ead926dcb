#include "levy/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "levy/error.hpp"
#include "levy/experiments.hpp"
#include "levy/filter.hpp"
#include "levy/format.hpp"
#include "levy/innovations.hpp"
#include "levy/noise_model.hpp"
#include "levy/prior.hpp"
#include "levy/random.hpp"
#include "levy/simulate.hpp"
#include "levy/statistics.hpp"

namespace levy {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// A malformed or inconsistent config entry; key is the dotted path.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key))
    {
    }
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<double> threshold;
    std::string output;
    std::string input;
    bool weights = false;
    std::string study;
};

const json& member(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key, "missing key");
    return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& path)
{
    const json& v = member(obj, key, path);
    if (!v.is_number()) throw ConfigError(path + key, "expected a number");
    return v.get<double>();
}

std::vector<double> number_list(const json& obj, const std::string& key, const std::string& path)
{
    const json& v = member(obj, key, path);
    if (!v.is_array()) throw ConfigError(path + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(path + key, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Defaults

json default_model(const std::string& study)
{
    if (study == "representation") return json{{"family", "variance-gamma"}, {"params", {2.0}}};
    if (study == "factorization" || study == "innovations") {
        return json{{"family", "brownian"}, {"params", json::array()}};
    }
    return json{{"family", "gamma"}, {"params", {1.0, 1.0}}};
}

json default_prior(const std::string& study)
{
    if (study == "factorization" || study == "innovations") {
        return json{{"atoms", {{-1.0, 0.5}, {1.0, 0.5}}}};
    }
    if (study == "representation") return json{{"atoms", {{0.5, 1.0}}}};
    return json{{"atoms", {{0.0, 0.5}, {0.5, 0.5}}}};
}

json default_study(const std::string& study)
{
    if (study == "convergence") return json{{"times", {1.0, 4.0, 16.0}}, {"epsilon", 0.1}};
    if (study == "factorization") {
        return json{{"alpha", {0.0, 0.7, -1.3}}, {"beta", {0.0, 0.7, -1.3}}, {"t", 1.0}};
    }
    if (study == "esscher") return json{{"lambda", 0.25}, {"t", 1.0}};
    if (study == "representation") return json{{"x", 0.5}, {"t", 1.0}};
    if (study == "bridge") return json{{"x", 0.0}, {"horizon", 2.0}, {"times", {0.5, 1.0}}};
    if (study == "innovations") return json{{"t_max", 2.0}, {"steps", 200}, {"intervals", 5}};
    return json::object();
}

// ---------------------------------------------------------------------------
// Config interpretation

NoiseModel parse_model(const json& j)
{
    const json& fam = member(j, "family", "model.");
    if (!fam.is_string()) throw ConfigError("model.family", "expected a string");
    const auto family = parse_family(fam.get<std::string>());
    if (!family) throw ConfigError("model.family", "unknown family '" + fam.get<std::string>() + "'");
    std::vector<double> params;
    if (j.contains("params")) params = number_list(j, "params", "model.");
    try {
        return make_noise_model(*family, params);
    } catch (const Error& e) {
        throw ConfigError("model.params", e.what());
    }
}

Interval bounded_interval(const json& j, const std::string& path)
{
    const double lo = number(j, "lo", path);
    const double hi = number(j, "hi", path);
    if (!(lo < hi)) throw ConfigError(path + "hi", "expected lo < hi");
    return Interval{lo, hi, false, false};
}

std::size_t node_count(const json& j, const std::string& path)
{
    if (!j.contains("n")) return 201;
    const json& v = j.at("n");
    if (!v.is_number_integer() || v.get<long long>() < 2) {
        throw ConfigError(path + "n", "expected an integer >= 2");
    }
    return v.get<std::size_t>();
}

Prior parse_prior(const json& j)
{
    try {
        if (j.contains("atoms")) {
            const json& atoms = j.at("atoms");
            if (!atoms.is_array()) throw ConfigError("prior.atoms", "expected [[x, w], ...]");
            std::vector<Atom> pts;
            for (const auto& a : atoms) {
                if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                    throw ConfigError("prior.atoms", "expected [[x, w], ...]");
                }
                pts.push_back({a[0].get<double>(), a[1].get<double>()});
            }
            return prior_from_atoms(pts);
        }
        const json& recipe = member(j, "density", "prior.");
        if (!recipe.is_string()) throw ConfigError("prior.density", "expected a recipe name");
        const std::string name = recipe.get<std::string>();
        const std::string path = "prior.";
        if (name == "uniform") {
            return prior_from_density([](double) { return 1.0; }, bounded_interval(j, path),
                                      node_count(j, path));
        }
        if (name == "gaussian-truncated") {
            const double mean = number(j, "mean", path);
            const double sd = number(j, "sd", path);
            if (!(sd > 0.0)) throw ConfigError("prior.sd", "expected sd > 0");
            return prior_from_density(
                [=](double x) { return std::exp(-0.5 * ((x - mean) / sd) * ((x - mean) / sd)); },
                bounded_interval(j, path), node_count(j, path));
        }
        if (name == "gamma-shifted") {
            // X = shift - U with U ~ Gamma(shape, rate) restricted to [0, u_max].
            const double shape = number(j, "shape", path);
            const double rate = number(j, "rate", path);
            const double shift = number(j, "shift", path);
            const double u_max = number(j, "u_max", path);
            if (!(shape > 0.0) || !(rate > 0.0)) {
                throw ConfigError("prior.shape", "expected shape > 0 and rate > 0");
            }
            if (!(u_max > 0.0)) throw ConfigError("prior.u_max", "expected u_max > 0");
            return prior_from_density(
                [=](double x) {
                    const double u = shift - x;
                    return u > 0.0 ? std::exp((shape - 1.0) * std::log(u) - rate * u) : 0.0;
                },
                Interval{shift - u_max, shift, false, false}, node_count(j, path));
        }
        throw ConfigError("prior.density", "unknown recipe '" + name + "'");
    } catch (const Error& e) {
        throw ConfigError("prior", e.what());
    }
}

TimeGrid parse_grid(const json& j)
{
    try {
        if (j.contains("times")) return TimeGrid(number_list(j, "times", "grid."));
        const double t_max = number(j, "t_max", "grid.");
        const json& steps = member(j, "steps", "grid.");
        if (!steps.is_number_integer() || steps.get<long long>() < 1) {
            throw ConfigError("grid.steps", "expected a positive integer");
        }
        return TimeGrid::uniform(t_max, steps.get<std::size_t>());
    } catch (const Error& e) {
        throw ConfigError("grid", e.what());
    }
}

std::size_t count_value(const json& j, const std::string& key, const std::string& path)
{
    const json& v = member(j, key, path);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ConfigError(path + key, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

json load_config(const Flags& flags, const std::string& subcommand)
{
    json file = json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw ConfigError("--config", "cannot open '" + flags.config_path + "'");
        try {
            file = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
        }
        if (!file.is_object()) throw ConfigError("--config", "top level must be an object");
    }
    const bool experiment = subcommand == "experiment";
    json cfg = json::object();
    cfg["model"] = file.contains("model") ? file["model"] : default_model(flags.study);
    cfg["prior"] = file.contains("prior") ? file["prior"] : default_prior(flags.study);
    cfg["grid"] = file.contains("grid") ? file["grid"] : json{{"t_max", 1.0}, {"steps", 100}};
    cfg["paths"] = file.contains("paths") ? file["paths"] : json(experiment ? 20000 : 10);
    cfg["seed"] = file.contains("seed") ? file["seed"] : json(42);
    if (experiment) {
        json study = default_study(flags.study);
        study["threshold"] = 3.5;
        if (file.contains("study")) {
            if (!file["study"].is_object()) throw ConfigError("study", "expected an object");
            for (const auto& [k, v] : file["study"].items()) study[k] = v;
        }
        cfg["study"] = study;
    }
    if (flags.seed) cfg["seed"] = *flags.seed;
    if (flags.paths) cfg["paths"] = *flags.paths;
    if (flags.threshold) {
        if (!experiment) throw ConfigError("--threshold", "only applies to experiments");
        cfg["study"]["threshold"] = *flags.threshold;
    }
    cfg["seed"] = static_cast<std::uint64_t>(count_value(cfg, "seed", ""));
    count_value(cfg, "paths", "");
    return cfg;
}

// ---------------------------------------------------------------------------
// Output

class Csv {
  public:
    explicit Csv(std::ostream& os) : os_(os) {}

    void header(const std::string& subcommand, const json& cfg)
    {
        os_ << "# " << kToolName << ' ' << kToolVersion << '\n';
        os_ << "# subcommand: " << subcommand << '\n';
        os_ << "# config: " << cfg.dump() << '\n';
        os_ << "# seed: " << cfg.at("seed").get<std::uint64_t>() << '\n';
    }

    void row(std::initializer_list<std::string> cells) { line(cells.begin(), cells.end()); }

    template <class It>
    void line(It first, It last)
    {
        for (It it = first; it != last; ++it) {
            if (it != first) os_ << ',';
            os_ << *it;
        }
        os_ << '\n';
    }

    std::ostream& stream() { return os_; }

  private:
    std::ostream& os_;
};

struct Observations {
    TimeGrid grid;
    std::vector<double> xi;
};

// Reads the t and xi columns of a CSV (comment lines start with '#'). If a
// path_id column exists only the first path is used.
Observations read_observations(const std::string& file)
{
    std::ifstream in(file);
    if (!in) throw ConfigError("--input", "cannot open '" + file + "'");
    std::string text;
    std::vector<std::string> header;
    std::vector<double> times, values;
    std::optional<std::string> first_path;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    int t_col = -1, xi_col = -1, id_col = -1;
    while (std::getline(in, text)) {
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text[0] == '#') continue;
        auto cells = split(text);
        if (header.empty()) {
            header = cells;
            for (int i = 0; i < static_cast<int>(header.size()); ++i) {
                if (header[i] == "t") t_col = i;
                if (header[i] == "xi") xi_col = i;
                if (header[i] == "path_id") id_col = i;
            }
            if (t_col < 0 || xi_col < 0) throw ConfigError("--input", "header must name columns t and xi");
            continue;
        }
        const int need = std::max({t_col, xi_col, id_col});
        if (static_cast<int>(cells.size()) <= need) throw ConfigError("--input", "short row: " + text);
        if (id_col >= 0) {
            if (!first_path) first_path = cells[id_col];
            if (cells[id_col] != *first_path) continue;
        }
        try {
            times.push_back(std::stod(cells[t_col]));
            values.push_back(std::stod(cells[xi_col]));
        } catch (const std::exception&) {
            throw ConfigError("--input", "not a number in row: " + text);
        }
    }
    try {
        return Observations{TimeGrid(times), values};
    } catch (const Error& e) {
        throw ConfigError("--input", e.what());
    }
}

struct Setup {
    NoiseModel model;
    Prior prior;
};

Setup model_and_prior(const json& cfg)
{
    Setup s{parse_model(cfg.at("model")), parse_prior(cfg.at("prior"))};
    try {
        check_compatibility(s.prior, s.model);
    } catch (const Error& e) {
        throw ConfigError("prior", e.what());
    }
    return s;
}

InformationPath observed_path(const json& cfg, const Flags& flags, const Setup& s)
{
    if (!flags.input.empty()) {
        auto obs = read_observations(flags.input);
        return InformationPath{std::move(obs.grid), std::move(obs.xi), kNaN, s.model};
    }
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    return simulate_information_path(s.model, s.prior, parse_grid(cfg.at("grid")),
                                     RandomStream(seed, 0));
}

int cmd_simulate(const json& cfg, Csv& csv)
{
    const Setup s = model_and_prior(cfg);
    const TimeGrid grid = parse_grid(cfg.at("grid"));
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    const auto paths = cfg.at("paths").get<std::size_t>();
    const auto all = parallel_map<InformationPath>(paths, [&](std::size_t p) {
        return simulate_information_path(s.model, s.prior, grid, RandomStream(seed, p));
    });
    csv.header("simulate", cfg);
    csv.row({"path_id", "t", "xi", "x_hidden"});
    for (std::size_t p = 0; p < paths; ++p) {
        const auto& path = all[p];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv.row({std::to_string(p), format_number(grid[i]), format_number(path.values[i]),
                     format_number(path.message)});
        }
    }
    return kExitOk;
}

int cmd_filter(const json& cfg, const Flags& flags, Csv& csv)
{
    const Setup s = model_and_prior(cfg);
    const InformationPath path = observed_path(cfg, flags, s);
    const auto posts = filter_trajectory(s.prior, s.model, path.grid, path.values);
    csv.header("filter", cfg);
    std::vector<std::string> head{"t", "xi", "post_mean", "post_var", "i0_estimate"};
    if (flags.weights) {
        for (std::size_t k = 0; k < s.prior.size(); ++k) head.push_back("w_" + std::to_string(k));
    }
    csv.line(head.begin(), head.end());
    for (std::size_t i = 0; i < posts.size(); ++i) {
        const double t = path.grid[i];
        const double xi = path.values[i];
        const double i0 = t > 0.0 ? clamped_inverse_marginal(s.model, xi / t).first : kNaN;
        std::vector<std::string> cells{format_number(t), format_number(xi),
                                       format_number(posterior_mean(posts[i])),
                                       format_number(posterior_variance(posts[i])),
                                       format_number(i0)};
        if (flags.weights) {
            for (const auto& a : posts[i].atoms()) cells.push_back(format_number(a.w));
        }
        csv.line(cells.begin(), cells.end());
    }
    return kExitOk;
}

int cmd_innovations(const json& cfg, const Flags& flags, Csv& csv)
{
    const Setup s = model_and_prior(cfg);
    const InformationPath path = observed_path(cfg, flags, s);
    const auto inn = innovations_path(path, s.prior);
    csv.header("innovations", cfg);
    csv.row({"t", "xi", "yhat", "int_yhat", "M"});
    for (std::size_t i = 0; i < inn.xi.size(); ++i) {
        csv.row({format_number(inn.grid[i]), format_number(inn.xi[i]), format_number(inn.yhat[i]),
                 format_number(inn.integral[i]), format_number(inn.M[i])});
    }
    return kExitOk;
}

StudyReport dispatch_study(const std::string& name, const json& cfg)
{
    const json& study = cfg.at("study");
    StudyOptions opts;
    opts.seed = cfg.at("seed").get<std::uint64_t>();
    opts.paths = cfg.at("paths").get<std::size_t>();
    opts.threshold = number(study, "threshold", "study.");
    const NoiseModel model = parse_model(cfg.at("model"));

    if (name == "esscher") {
        return esscher_consistency_study(model, number(study, "lambda", "study."),
                                         number(study, "t", "study."), opts);
    }
    if (name == "representation") {
        return representation_equivalence_study(model, number(study, "x", "study."),
                                                number(study, "t", "study."), opts);
    }
    if (name == "bridge") {
        const auto times = number_list(study, "times", "study.");
        return bridge_study(model, number(study, "x", "study."), number(study, "horizon", "study."),
                            times, opts);
    }
    const Setup s = model_and_prior(cfg);
    if (name == "convergence") {
        const auto times = number_list(study, "times", "study.");
        return convergence_study(model, s.prior, times, number(study, "epsilon", "study."), opts);
    }
    if (name == "factorization") {
        const auto alpha = number_list(study, "alpha", "study.");
        const auto beta = number_list(study, "beta", "study.");
        return factorization_study(model, s.prior, alpha, beta, number(study, "t", "study."), opts);
    }
    return innovations_study(model, s.prior, number(study, "t_max", "study."),
                             count_value(study, "steps", "study."),
                             count_value(study, "intervals", "study."), opts);
}

int cmd_experiment(const json& cfg, const std::string& name, Csv& csv)
{
    const StudyReport report = dispatch_study(name, cfg);
    csv.header("experiment " + name, cfg);
    csv.row({"quantity", "estimate", "reference", "stderr", "z"});
    for (const auto& r : report.rows) {
        csv.row({r.quantity, format_number(r.estimate), format_number(r.reference),
                 format_number(r.std_error), format_number(r.z)});
    }
    const bool ok = report.passed();
    csv.stream() << "# summary: study=" << report.name << " passed=" << (ok ? "true" : "false")
                 << " max_abs_z=" << format_number(report.max_abs_z())
                 << " threshold=" << format_number(report.threshold) << '\n';
    return ok ? kExitOk : kExitStudyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Levy information processes: simulation, filtering and verification studies",
                 std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    double threshold = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");
    auto* paths_opt = app.add_option("--paths", paths, "number of simulated paths");
    auto* threshold_opt = app.add_option("--threshold", threshold, "|z| threshold for studies");
    app.add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--output,-o", flags.output, "write CSV here instead of standard output");

    auto* sim = app.add_subcommand("simulate", "simulate information paths");
    auto* filt = app.add_subcommand("filter", "posterior trajectory of the message");
    filt->add_option("--input", flags.input, "CSV with t and xi columns (default: simulate one path)");
    filt->add_flag("--weights", flags.weights, "append per-atom posterior weights");
    auto* inno = app.add_subcommand("innovations", "innovations decomposition of one path");
    inno->add_option("--input", flags.input, "CSV with t and xi columns (default: simulate one path)");
    auto* exp = app.add_subcommand("experiment", "run a verification study");
    exp->add_option("name", flags.study, "study name")
        ->required()
        ->check(CLI::IsMember({"convergence", "factorization", "esscher", "representation",
                               "bridge", "innovations"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (*seed_opt) flags.seed = seed;
    if (*paths_opt) flags.paths = paths;
    if (*threshold_opt) flags.threshold = threshold;

    std::string subcommand;
    if (sim->parsed()) subcommand = "simulate";
    if (filt->parsed()) subcommand = "filter";
    if (inno->parsed()) subcommand = "innovations";
    if (exp->parsed()) subcommand = "experiment";

    try {
        const json cfg = load_config(flags, subcommand);
        // Run into a buffer so a failed command never leaves a partial file.
        std::ostringstream buffer;
        Csv csv(buffer);
        int code = kExitOk;
        if (subcommand == "simulate") code = cmd_simulate(cfg, csv);
        if (subcommand == "filter") code = cmd_filter(cfg, flags, csv);
        if (subcommand == "innovations") code = cmd_innovations(cfg, flags, csv);
        if (subcommand == "experiment") code = cmd_experiment(cfg, flags.study, csv);
        if (flags.output.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(flags.output, std::ios::binary);
            if (!file) {
                err << "error: cannot write '" << flags.output << "'\n";
                return kExitInvalid;
            }
            file << buffer.str();
        }
        if (code == kExitStudyFailed) err << "study failed: some |z| exceeds the threshold\n";
        return code;
    } catch (const ConfigError& e) {
        err << "error in config key '" << e.key() << "': " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        err << "error in config: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace levy

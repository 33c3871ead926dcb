// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cases.hpp"
#include "levy/cli.hpp"
#include "levy/experiments.hpp"
#include "levy/filter.hpp"
#include "levy/random.hpp"
#include "levy/simulate.hpp"

namespace {

using namespace levy;
using levy::testing::family_cases;

struct Outcome {
    bool ok;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> check;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Folds study verdicts into one outcome, keeping the worst |z|.
struct StudyTally {
    bool ok = true;
    double worst = 0.0;
    std::string failures;

    void add(const std::string& label, const StudyReport& r)
    {
        worst = std::max(worst, r.max_abs_z());
        if (!r.passed()) {
            ok = false;
            failures += " " + label;
        }
    }
    Outcome outcome() const
    {
        return {ok, "max|z|=" + fmt("%.3f", worst) + (failures.empty() ? "" : " failed:" + failures)};
    }
};

Outcome poisson_bayes()
{
    RandomStream rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 5;
        std::vector<Atom> atoms;
        for (int i = 0; i < k; ++i) atoms.push_back({-1.5 + 3.0 * rng.uniform(), 0.05 + rng.uniform()});
        const Prior prior = prior_from_atoms(atoms);
        for (double m : {0.5, 1.0, 3.0}) {
            const NoiseModel model(params::Poisson{m});
            for (int n = 0; n <= 10; ++n) {
                for (double t : {0.5, 1.0, 5.0}) {
                    std::vector<double> w;
                    double total = 0.0;
                    for (const auto& a : prior.atoms()) {
                        const double lam = m * t * std::exp(a.x);
                        w.push_back(a.w * std::exp(-lam) * std::pow(lam, n) / std::tgamma(n + 1.0));
                        total += w.back();
                    }
                    const Posterior post = posterior_update(prior, model, n, t);
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        worst = std::max(worst, std::abs(post.atoms()[i].w - w[i] / total));
                    }
                }
            }
        }
    }
    return {worst <= 1e-12, "max|dw|=" + fmt("%.2e", worst)};
}

Outcome gamma_bayes()
{
    const double m = 1.3;
    const Prior prior = prior_from_atoms(std::vector<Atom>{{-1.0, 0.2}, {0.1, 0.5}, {0.6, 0.3}});
    const NoiseModel model(params::Gamma{m, 1.0});
    // Gamma(m t, rate 1 - x) density of xi given X = x.
    auto log_density = [&](double x, double xi, double t) {
        return (m * t - 1.0) * std::log(xi) + m * t * std::log1p(-x) - (1.0 - x) * xi - std::lgamma(m * t);
    };
    RandomStream rng(102);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double xi = 0.01 + 20.0 * rng.uniform();
        const double t = 0.02 + 10.0 * rng.uniform();
        const Posterior post = posterior_update(prior, model, xi, t);
        const auto& a = prior.atoms();
        for (std::size_t i = 1; i < a.size(); ++i) {
            const double expected = std::log(a[i].w / a[0].w) + log_density(a[i].x, xi, t) - log_density(a[0].x, xi, t);
            const double got = std::log(post.atoms()[i].w / post.atoms()[0].w);
            worst = std::max(worst, std::abs(std::expm1(got - expected)));
        }
    }
    return {worst <= 1e-12, "max rel=" + fmt("%.2e", worst)};
}

Outcome gamma_linear()
{
    const double theta = 2.0, r = 3.0, m = 1.0;
    const Prior u = prior_from_density([&](double v) { return std::pow(v, r - 1.0) * std::exp(-theta * v); },
                                       Interval{0.0, 40.0, false, false}, 2001);
    std::vector<Atom> shifted;
    for (const auto& a : u.atoms()) shifted.push_back({1.0 - a.x, a.w});
    const Prior prior = prior_from_atoms(shifted);
    const NoiseModel model(params::Gamma{m, 1.0});
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k) {
        RandomStream rng(103, k);
        const double t = 0.1 + 9.9 * rng.uniform();
        const auto path = simulate_information_path(model, prior, TimeGrid({0.0, t}), RandomStream(103, k, 1));
        const double xi = path.values[1];
        const double exact = gamma_linear_filter(theta, r, m, xi, t);
        const double generic = filtered_drift(posterior_update(prior, model, xi, t), model);
        worst = std::max(worst, std::abs(generic - exact) / std::abs(exact));
    }
    return {worst <= 1e-4, "max rel=" + fmt("%.2e", worst)};
}

Outcome inversion()
{
    double worst = 0.0;
    for (const auto& c : family_cases()) {
        const Interval a = admissible_set(c.model);
        const auto [lo, hi] = levy::testing::finite_window(a);
        for (int k = 0; k < 200; ++k) {
            const double alpha = lo + (hi - lo) * (0.005 + 0.99 * k / 199.0);
            const double back = inverse_marginal(c.model, exponent_derivatives(c.model, alpha).first);
            worst = std::max(worst, std::abs(back - alpha));
        }
    }
    return {worst <= 1e-10, "max|err|=" + fmt("%.2e", worst)};
}

Outcome convergence()
{
    StudyTally tally;
    const std::vector<double> times{1.0, 4.0, 16.0};
    for (const auto& c : family_cases()) {
        tally.add(c.name, convergence_study(c.model, prior_from_atoms(c.atoms), times, 0.1, {501, 20000, 3.5}));
    }
    return tally.outcome();
}

Outcome innovations()
{
    StudyTally tally;
    for (const auto& c : family_cases()) {
        const Family f = c.model.family();
        if (f != Family::Brownian && f != Family::Poisson && f != Family::Gamma) continue;
        tally.add(c.name, innovations_study(c.model, prior_from_atoms(c.atoms), 2.0, 200, 5, {601, 20000, 3.5}));
    }
    return tally.outcome();
}

Outcome sequential()
{
    double worst = 0.0;
    const TimeGrid grid = TimeGrid::uniform(2.0, 10);
    for (const auto& c : family_cases()) {
        const Prior prior = prior_from_atoms(c.atoms);
        for (std::size_t p = 0; p < 100; ++p) {
            const auto path = simulate_information_path(c.model, prior, grid, RandomStream(701, p));
            const auto steps = filter_trajectory(prior, c.model, grid, path.values);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const Posterior one = posterior_update(prior, c.model, path.values[j], grid[j]);
                for (std::size_t i = 0; i < prior.size(); ++i) {
                    worst = std::max(worst, std::abs(steps[j].atoms()[i].w - one.atoms()[i].w));
                }
            }
        }
    }
    return {worst <= 1e-12, "sup|dw|=" + fmt("%.2e", worst)};
}

Outcome esscher()
{
    StudyTally tally;
    for (const auto& c : family_cases()) {
        tally.add(c.name, esscher_consistency_study(c.model, c.lambda, 1.0, {801, 20000, 3.5}));
    }
    return tally.outcome();
}

Outcome representation()
{
    StudyTally tally;
    const NoiseModel vg(params::VarianceGamma{2.0});
    const NoiseModel nb(params::NegativeBinomial{1.0, 0.5});
    for (double x : {0.0, 0.5}) tally.add("vg@" + fmt("%g", x), representation_equivalence_study(vg, x, 1.0, {901, 50000, 3.5}));
    for (double x : {0.0, 0.2}) tally.add("nb@" + fmt("%g", x), representation_equivalence_study(nb, x, 1.0, {902, 50000, 3.5}));
    return tally.outcome();
}

Outcome factorization()
{
    StudyTally tally;
    const std::vector<double> grid{0.5, 1.0, -1.5};
    for (const auto& c : family_cases()) {
        const Family f = c.model.family();
        if (f != Family::Brownian && f != Family::Gamma) continue;
        tally.add(c.name, factorization_study(c.model, prior_from_atoms(c.atoms), grid, grid, 1.0, {1001, 20000, 3.5}));
    }
    return tally.outcome();
}

Outcome bridge()
{
    StudyTally tally;
    const std::vector<double> unit{0.25, 0.5, 0.75};
    const std::vector<double> two{0.5, 1.0, 1.5};
    tally.add("brownian", bridge_study(NoiseModel(params::Brownian{}), 1.0, 1.0, unit, {1101, 20000, 3.5}));
    tally.add("gamma", bridge_study(NoiseModel(params::Gamma{1.0, 1.0}), 0.0, 2.0, two, {1102, 20000, 3.5}));
    return tally.outcome();
}

Outcome determinism()
{
    const std::vector<std::vector<std::string>> commands{
        {"experiment", "convergence", "--seed", "42"},
        {"simulate", "--seed", "9", "--paths", "20"},
        {"experiment", "representation", "--seed", "3", "--paths", "5000"},
    };
    for (const auto& args : commands) {
        std::ostringstream a, b, err;
        const int ca = run(args, a, err);
        const int cb = run(args, b, err);
        if (ca != cb || a.str() != b.str() || a.str().empty()) return {false, "mismatch for " + args[0]};
        if (std::hash<std::string>{}(a.str()) != std::hash<std::string>{}(b.str())) return {false, "hash mismatch"};
    }
    return {true, std::to_string(commands.size()) + " commands identical"};
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "exact Bayes, Poisson", 1, poisson_bayes},
        {2, "exact Bayes, gamma", 1, gamma_bayes},
        {3, "gamma linear filter", 5, gamma_linear},
        {4, "inversion", 1, inversion},
        {5, "convergence law", 60, convergence},
        {6, "innovations martingale", 120, innovations},
        {7, "sequential consistency", 5, sequential},
        {8, "Esscher consistency", 60, esscher},
        {9, "representation equivalence", 120, representation},
        {10, "factorization", 30, factorization},
        {11, "bridge", 30, bridge},
        {12, "determinism", 10, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool ok = o.ok && in_time;
        if (!ok) ++failed;
        std::printf("%s %2d %-28s %s (%.2f s, budget %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : " over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

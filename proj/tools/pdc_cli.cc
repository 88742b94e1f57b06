// Copyright 2026 The pdc-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pdc_cli: rates, finite-length bounds, protocol simulation, estimation,
// leakage and identity checks as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdc/bounds.h"
#include "pdc/dists.h"
#include "pdc/errors.h"
#include "pdc/estimation.h"
#include "pdc/identities.h"
#include "pdc/protocol.h"
#include "pdc/rng.h"
#include "pdc/serialization.h"
#include "pdc/wiretap.h"

namespace {

using pdc::io::CsvWriter;
using pdc::io::format_double;

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSizeCap = 4;

struct Output {
    std::string path;
    std::string format;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
   public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::invalid_argument("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

void add_output(CLI::App *cmd, Output &out, const std::string &default_format) {
    out.format = default_format;
    cmd->add_option("--out", out.path, "Output file (default stdout)");
    cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

double parse_number(const std::string &item, const char *what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(item, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (item.empty() || used != item.size()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + item + "'");
    }
    return v;
}

std::vector<double> parse_grid(const std::string &spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(parse_number(item, "grid value"));
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0] || parts[0] < 0.0 || parts[1] > 1.0) {
        throw std::invalid_argument("grid must be start:stop:step with 0 <= start <= stop <= 1 and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = parts[0] + parts[2] * static_cast<double>(i);
    }
    return out;
}

std::vector<std::size_t> parse_list(const std::string &spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double v = parse_number(item, "block length");
        if (!(v >= 1.0) || v != std::floor(v)) {
            throw std::invalid_argument("bad block length '" + item + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty n grid");
    }
    return out;
}

/// Dirichlet(1, ..., 1) sample over F_p^2.
pdc::dists::PauliDist random_dist(std::uint32_t p, pdc::Rng &rng) {
    std::vector<double> v(static_cast<std::size_t>(p) * p);
    double total = 0.0;
    for (auto &x : v) {
        x = -std::log(1.0 - rng.uniform01());
        total += x;
    }
    for (auto &x : v) {
        x /= total;
    }
    return pdc::dists::PauliDist(p, std::move(v));
}

void print_json(Sink &sink, const nlohmann::ordered_json &j) { sink.stream() << j.dump(2) << '\n'; }

struct RatesArgs {
    std::uint32_t p = 2;
    std::string grid = "0:0.25:0.0025";
    std::optional<double> mix_tilde;
    Output out;
};

int cmd_rates(const RatesArgs &a) {
    const std::vector<double> grid = parse_grid(a.grid);
    Sink sink(a.out.path);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::unique_ptr<CsvWriter> csv;
    if (a.out.format == "csv") {
        csv = std::make_unique<CsvWriter>(sink.stream(), std::vector<std::string>{"mix", "R1", "R2", "R3", "R"});
    }
    for (double mix : grid) {
        const auto p_xz = pdc::dists::depolarizing(mix, a.p);
        const auto p_tilde = pdc::dists::depolarizing(a.mix_tilde.value_or(mix), a.p);
        const auto r = pdc::bounds::asymptotic_rates(p_xz, p_tilde);
        if (csv) {
            csv->row({format_double(mix), format_double(r.R1_star), format_double(r.R2_star), "0",
                      format_double(r.R_star)});
        } else {
            rows.push_back({{"mix", mix}, {"R1", r.R1_star}, {"R2", r.R2_star}, {"R3", 0.0}, {"R", r.R_star}});
        }
    }
    if (!csv) {
        print_json(sink, rows);
    }
    return 0;
}

struct FiniteArgs {
    std::uint32_t p = 2;
    double mix = 0.05;
    std::optional<double> mix_tilde;
    std::string n_grid = "1000,10000,100000,1000000";
    double eps_c = 0.2;
    double eps_e = 1e-9;
    double eps_b = 1e-9;
    Output out;
};

bool any_feasible(const std::vector<pdc::bounds::FiniteLengthReport> &reports) {
    return std::any_of(reports.begin(), reports.end(), [](const auto &r) { return r.feasible; });
}

int cmd_finite(const FiniteArgs &a) {
    const pdc::bounds::SecurityTargets targets{a.eps_c, a.eps_e, a.eps_b};
    pdc::bounds::validate(targets);
    const auto p_xz = pdc::dists::depolarizing(a.mix, a.p);
    const auto p_tilde = pdc::dists::depolarizing(a.mix_tilde.value_or(a.mix), a.p);
    const auto grid = pdc::bounds::TGrid::standard();
    const std::vector<std::size_t> lengths = parse_list(a.n_grid);
    Sink sink(a.out.path);
    std::vector<pdc::bounds::FiniteLengthReport> reports;
    for (std::size_t n : lengths) {
        reports.push_back(pdc::bounds::finite_length_report(targets, n, p_xz, p_tilde, grid));
    }
    if (a.out.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &r : reports) {
            rows.push_back(pdc::io::to_json(r));
        }
        print_json(sink, rows);
        return any_feasible(reports) ? 0 : kExitInfeasible;
    }
    CsvWriter csv(sink.stream(), {"n", "feasible", "n1", "sacrifice", "n3", "R1", "R2", "R3", "R", "eps_C", "eps_E",
                                  "eps_B"});
    for (const auto &r : reports) {
        csv.row({std::to_string(r.n), r.feasible ? "1" : "0", std::to_string(r.n1), std::to_string(r.sacrifice),
                 std::to_string(r.n3), format_double(r.R1), format_double(r.R2), format_double(r.R3),
                 format_double(r.R), format_double(r.eps_C), format_double(r.eps_E), format_double(r.eps_B)});
    }
    return any_feasible(reports) ? 0 : kExitInfeasible;
}

struct SimulateArgs {
    std::string config;
    std::size_t trials = 1000;
    std::string adversary = "none";
    std::optional<std::uint64_t> seed;
    std::string transcript;
    Output out;
};

int cmd_simulate(const SimulateArgs &a) {
    std::ifstream in(a.config);
    if (!in) {
        throw std::invalid_argument("cannot read config '" + a.config + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    auto config = pdc::io::parse_config(text.str());
    if (a.seed) {
        config.seed = *a.seed;
    }
    if (a.trials == 0) {
        throw std::invalid_argument("--trials must be at least 1");
    }
    pdc::protocol::AdversaryMode mode = pdc::protocol::AdversaryMode::none();
    if (a.adversary == "intercept") {
        mode = pdc::protocol::AdversaryMode::intercept();
    } else if (a.adversary == "tamper") {
        mode = pdc::protocol::AdversaryMode::tampering();
    }
    const auto stats = pdc::protocol::monte_carlo(config, a.trials, mode);
    const auto bounds = pdc::protocol::analytic_bounds(config);
    if (!a.transcript.empty()) {
        const pdc::Rng trial = pdc::Rng(config.seed).split(std::uint64_t{0});
        pdc::Rng message_rng = trial.split("message");
        std::vector<std::uint32_t> m(config.n2);
        for (auto &v : m) {
            v = static_cast<std::uint32_t>(message_rng.uniform_below(config.p));
        }
        const auto t = pdc::protocol::run_protocol1(config, pdc::gf::FieldVec(std::move(m), config.p), mode, trial);
        Sink dump(a.transcript);
        print_json(dump, pdc::io::to_json(t));
    }
    Sink sink(a.out.path);
    if (a.out.format == "csv") {
        // Each rate sits next to the analytic bound it estimates; eps_E has no sampled counterpart.
        CsvWriter csv(sink.stream(), {"quantity", "count", "trials", "rate", "wilson_lo", "wilson_hi", "bound"});
        auto rate_row = [&](const std::string &name, const pdc::protocol::RateEstimate &r, const std::string &bound) {
            csv.row({name, std::to_string(r.count), std::to_string(r.trials), format_double(r.rate), format_double(r.lo),
                     format_double(r.hi), bound});
        };
        rate_row("abort_rate", stats.abort_rate, format_double(bounds.eps_C));
        rate_row("undetected_error_rate", stats.undetected_error_rate, format_double(bounds.eps_B));
        rate_row("accepted_and_correct_rate", stats.accepted_and_correct_rate, "");
        rate_row("ecc_block_error_rate", stats.ecc_block_error_rate, "");
        csv.row({"leakage", "", "", "", "", "", format_double(bounds.eps_E)});
        return 0;
    }
    nlohmann::ordered_json j;
    j["adversary"] = a.adversary;
    j["trials"] = a.trials;
    j["seed"] = config.seed;
    j["stats"] = pdc::io::to_json(stats);
    j["bounds"] = pdc::io::to_json(bounds);
    print_json(sink, j);
    return 0;
}

struct EstimateArgs {
    std::uint32_t p = 2;
    double mix = 0.05;
    std::size_t shots = 10000;
    std::uint64_t seed = 1;
    Output out;
};

int cmd_estimate(const EstimateArgs &a) {
    pdc::Rng rng(a.seed);
    const auto truth = pdc::dists::depolarizing(a.mix, a.p);
    const auto report = pdc::estimation::estimate(truth, a.shots, rng);
    Sink sink(a.out.path);
    if (a.out.format == "csv") {
        CsvWriter csv(sink.stream(), {"x", "z", "truth", "raw", "p_hat"});
        for (std::uint32_t x = 0; x < a.p; ++x) {
            for (std::uint32_t z = 0; z < a.p; ++z) {
                const std::size_t i = truth.index(x, z);
                csv.row({std::to_string(x), std::to_string(z), format_double(truth(x, z)), format_double(report.raw[i]),
                         format_double(report.p_hat(x, z))});
            }
        }
        return 0;
    }
    print_json(sink, pdc::io::to_json(report));
    return 0;
}

struct LeakageArgs {
    std::uint32_t p = 2;
    std::size_t n = 2;
    std::string code = "identity";
    std::size_t n1 = 0;
    std::size_t n2 = 1;
    std::size_t n3 = 1;
    std::string eve = "noisy";
    double mix = 0.2;
    std::uint64_t seed = 1;
    std::size_t t_points = 25;
    Output out;
};

int cmd_leakage(const LeakageArgs &a) {
    const auto noise = pdc::dists::depolarizing(a.mix, a.p);
    pdc::Rng rng = pdc::Rng(a.seed).split("code");
    const auto code = pdc::wiretap::make_code(a.code, a.n, noise, rng, a.n1);
    const pdc::hashing::HashParams params{a.p, code->n1(), a.n2, a.n3};
    pdc::wiretap::EveChannel eve;
    if (a.eve == "noiseless") {
        eve = pdc::wiretap::eve_noiseless(a.p);
    } else if (a.eve == "constant") {
        eve = pdc::wiretap::eve_constant(a.p);
    } else if (a.eve == "noisy") {
        eve = pdc::wiretap::eve_noisy_copy(noise);
    } else {
        eve = pdc::wiretap::eve_from_purification(noise);
    }
    const double exact = pdc::wiretap::exact_leakage(*code, params, eve);
    const auto bound = pdc::wiretap::theorem1_bound(*code, params, eve, pdc::bounds::TGrid::log_spaced(a.t_points));
    Sink sink(a.out.path);
    if (a.out.format == "csv") {
        CsvWriter csv(sink.stream(), {"code", "n", "n1", "n2", "n3", "eve", "exact", "bound", "t"});
        csv.row({code->name(), std::to_string(a.n), std::to_string(code->n1()), std::to_string(a.n2),
                 std::to_string(a.n3), a.eve, format_double(exact), format_double(bound.value), format_double(bound.t)});
        return 0;
    }
    print_json(sink, {{"code", code->name()},
                      {"n", a.n},
                      {"n1", code->n1()},
                      {"n2", a.n2},
                      {"n3", a.n3},
                      {"eve", a.eve},
                      {"exact", exact},
                      {"bound", bound.value},
                      {"t", bound.t},
                      {"exact_le_bound", exact <= bound.value}});
    return 0;
}

struct IdentityArgs {
    std::uint32_t p = 2;
    std::size_t count = 5;
    std::uint64_t seed = 1;
    double tolerance = 1e-8;
    Output out;
};

int cmd_verify_identities(const IdentityArgs &a) {
    pdc::Rng rng(a.seed);
    Sink sink(a.out.path);
    std::unique_ptr<CsvWriter> csv;
    if (a.out.format == "csv") {
        csv = std::make_unique<CsvWriter>(
            sink.stream(), std::vector<std::string>{"instance", "t", "h_ab", "h_ae", "h_down_ab", "h_up_ae_slack",
                                                    "petz_info_b", "sandwiched_info_e"});
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    bool all_ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.count; ++i) {
        const auto p_xz = random_dist(a.p, rng);
        const auto p_tilde = random_dist(a.p, rng);
        for (int k = 1; k <= 9; ++k) {
            const double t = 0.1 * k;
            const auto r = pdc::qexact::identity_residuals(p_xz, p_tilde, t);
            all_ok = all_ok && r.ok(a.tolerance);
            worst = std::max(worst, r.worst_equality());
            if (csv) {
                csv->row({std::to_string(i), format_double(t), format_double(r.h_ab), format_double(r.h_ae),
                          format_double(r.h_down_ab), format_double(r.h_up_ae_slack), format_double(r.petz_info_b),
                          format_double(r.sandwiched_info_e)});
            } else {
                rows.push_back({{"instance", i},
                                {"t", t},
                                {"h_ab", r.h_ab},
                                {"h_ae", r.h_ae},
                                {"h_down_ab", r.h_down_ab},
                                {"h_up_ae_slack", r.h_up_ae_slack},
                                {"petz_info_b", r.petz_info_b},
                                {"sandwiched_info_e", r.sandwiched_info_e}});
            }
        }
    }
    if (!csv) {
        print_json(sink, {{"p", a.p}, {"worst_residual", worst}, {"ok", all_ok}, {"rows", rows}});
    }
    return all_ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Private dense coding bounds, simulation and checks"};
    app.require_subcommand(1);

    RatesArgs rates;
    auto *c_rates = app.add_subcommand("rates", "Asymptotic rates for depolarizing channels");
    c_rates->add_option("--p", rates.p, "Prime dimension");
    c_rates->add_option("--mix-grid", rates.grid, "start:stop:step");
    c_rates->add_option("--mix-tilde", rates.mix_tilde, "Fixed mix for the Alice-to-Bob channel");
    add_output(c_rates, rates.out, "csv");

    FiniteArgs finite;
    auto *c_finite = app.add_subcommand("finite", "Finite-length rates meeting the security targets");
    c_finite->add_option("--p", finite.p, "Prime dimension");
    c_finite->add_option("--mix", finite.mix, "Depolarizing mix on both channels");
    c_finite->add_option("--mix-tilde", finite.mix_tilde, "Mix for the Alice-to-Bob channel");
    c_finite->add_option("--n-grid", finite.n_grid, "Comma-separated block lengths");
    c_finite->add_option("--eps-c", finite.eps_c, "Completeness target");
    c_finite->add_option("--eps-e", finite.eps_e, "Secrecy target");
    c_finite->add_option("--eps-b", finite.eps_b, "Verification target");
    add_output(c_finite, finite.out, "csv");

    SimulateArgs simulate;
    auto *c_sim = app.add_subcommand("simulate", "Monte Carlo run of the protocol");
    c_sim->add_option("--config", simulate.config, "key = value config file")->required();
    c_sim->add_option("--trials", simulate.trials, "Number of trials");
    c_sim->add_option("--adversary", simulate.adversary, "none, intercept or tamper")
        ->check(CLI::IsMember({"none", "intercept", "tamper"}));
    c_sim->add_option("--seed", simulate.seed, "Overrides the config seed");
    c_sim->add_option("--transcript", simulate.transcript, "Write the first trial's transcript here");
    add_output(c_sim, simulate.out, "json");

    EstimateArgs est;
    auto *c_est = app.add_subcommand("estimate", "Bell-diagonal estimation from p + 1 settings");
    c_est->add_option("--p", est.p, "Prime dimension");
    c_est->add_option("--mix", est.mix, "Depolarizing mix of the true state");
    c_est->add_option("--shots", est.shots, "Shots per setting; 0 uses exact marginals");
    c_est->add_option("--seed", est.seed, "Master seed");
    add_output(c_est, est.out, "json");

    LeakageArgs leak;
    auto *c_leak = app.add_subcommand("leakage", "Exact leakage of a tiny wiretap code against its bound");
    c_leak->add_option("--p", leak.p, "Prime dimension");
    c_leak->add_option("--n", leak.n, "Channel uses");
    c_leak->add_option("--code", leak.code, "identity, repetitionR or random");
    c_leak->add_option("--n1", leak.n1, "Dimension of a random code");
    c_leak->add_option("--n2", leak.n2, "Message length");
    c_leak->add_option("--n3", leak.n3, "Verification length");
    c_leak->add_option("--eve", leak.eve, "noiseless, constant, noisy or purification")
        ->check(CLI::IsMember({"noiseless", "constant", "noisy", "purification"}));
    c_leak->add_option("--mix", leak.mix, "Depolarizing mix for Eve's noise and the code");
    c_leak->add_option("--seed", leak.seed, "Seed for random codes");
    c_leak->add_option("--t-points", leak.t_points, "Points in the t grid");
    add_output(c_leak, leak.out, "json");

    IdentityArgs ids;
    auto *c_ids = app.add_subcommand("verify-identities", "Entropy identities on random Bell-diagonal states");
    c_ids->add_option("--p", ids.p, "Prime dimension");
    c_ids->add_option("--count", ids.count, "Number of random instances");
    c_ids->add_option("--seed", ids.seed, "Master seed");
    c_ids->add_option("--tolerance", ids.tolerance, "Residual tolerance");
    add_output(c_ids, ids.out, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*c_rates) return cmd_rates(rates);
        if (*c_finite) return cmd_finite(finite);
        if (*c_sim) return cmd_simulate(simulate);
        if (*c_est) return cmd_estimate(est);
        if (*c_leak) return cmd_leakage(leak);
        if (*c_ids) return cmd_verify_identities(ids);
    } catch (const pdc::SizeCapExceeded &e) {
        std::cerr << "size cap exceeded: " << e.what() << '\n';
        return kExitSizeCap;
    } catch (const pdc::Infeasible &e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

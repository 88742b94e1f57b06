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

#include "pdc/serialization.h"

#include <array>
#include <charconv>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <system_error>

namespace pdc::io {
namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config key '" + key + "': cannot parse '" + value + "'");
    }
    return out;
}

nlohmann::ordered_json optional_vec(const std::optional<gf::FieldVec> &v) {
    return v ? to_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(std::ostream &out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &cells) {
    if (cells.size() != columns_) {
        throw std::invalid_argument("CSV row has the wrong number of cells");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << (i ? "," : "") << cells[i];
    }
    out_ << '\n';
}

nlohmann::ordered_json to_json(const gf::FieldVec &v) {
    return nlohmann::ordered_json(std::vector<std::uint32_t>(v.values().begin(), v.values().end()));
}

nlohmann::ordered_json to_json(const protocol::Transcript &t) {
    nlohmann::ordered_json j;
    j["s"] = optional_vec(t.s);
    j["s_prime"] = optional_vec(t.s_prime);
    j["c"] = optional_vec(t.c);
    j["x_bar"] = optional_vec(t.x_bar);
    j["x"] = optional_vec(t.x);
    j["x_hat"] = optional_vec(t.x_hat);
    j["m_hat"] = optional_vec(t.m_hat);
    j["y_hat"] = optional_vec(t.y_hat);
    j["verdict"] = protocol::to_string(t.verdict);
    j["events"] = t.events();
    return j;
}

nlohmann::ordered_json to_json(const protocol::RateEstimate &r) {
    return {{"count", r.count}, {"trials", r.trials}, {"rate", r.rate}, {"wilson_lo", r.lo}, {"wilson_hi", r.hi}};
}

nlohmann::ordered_json to_json(const protocol::MonteCarloStats &stats) {
    return {{"abort_rate", to_json(stats.abort_rate)},
            {"undetected_error_rate", to_json(stats.undetected_error_rate)},
            {"accepted_and_correct_rate", to_json(stats.accepted_and_correct_rate)},
            {"ecc_block_error_rate", to_json(stats.ecc_block_error_rate)}};
}

nlohmann::ordered_json to_json(const protocol::AnalyticBounds &b) {
    return {{"eps_C", b.eps_C}, {"eps_E", b.eps_E}, {"eps_B", b.eps_B}};
}

nlohmann::ordered_json to_json(const estimation::EstimationReport &report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json settings = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.settings.size(); ++i) {
        const auto probs = report.marginals[i].probs();
        settings.push_back({{"a", report.settings[i].a},
                            {"b", report.settings[i].b},
                            {"marginal", std::vector<double>(probs.begin(), probs.end())}});
    }
    j["settings"] = settings;
    j["shots_per_setting"] = report.shots_per_setting;
    j["raw"] = report.raw;
    const auto p_hat = report.p_hat.probs();
    j["p_hat"] = std::vector<double>(p_hat.begin(), p_hat.end());
    j["projected"] = report.projected;
    j["negative_mass"] = report.negative_mass;
    j["tv_to_truth"] = report.tv_to_truth ? nlohmann::ordered_json(*report.tv_to_truth) : nullptr;
    return j;
}

nlohmann::ordered_json to_json(const bounds::FiniteLengthReport &r) {
    return {{"n", r.n},   {"feasible", r.feasible}, {"n1", r.n1}, {"sacrifice", r.sacrifice}, {"n3", r.n3},
            {"R1", r.R1}, {"R2", r.R2},             {"R3", r.R3}, {"R", r.R},                 {"eps_C", r.eps_C},
            {"eps_E", r.eps_E}, {"eps_B", r.eps_B}};
}

protocol::ProtocolConfig parse_config(std::string_view text) {
    static const std::set<std::string> kKeys{"p",    "n",    "n1", "n2", "n3", "mix_bob_to_alice", "mix_alice_to_bob",
                                             "code", "seed"};
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        line = line.substr(0, line.find('#'));
        if (trim(line).empty()) {
            continue;
        }
        const std::size_t sep = line.find_first_of("=:");
        if (sep == std::string_view::npos) {
            throw std::invalid_argument("config line without '=': " + std::string(line));
        }
        const std::string key = trim(line.substr(0, sep));
        if (!kKeys.contains(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        if (!kv.emplace(key, trim(line.substr(sep + 1))).second) {
            throw std::invalid_argument("duplicate config key '" + key + "'");
        }
    }
    for (const auto &key : kKeys) {
        if (!kv.contains(key)) {
            throw std::invalid_argument("missing config key '" + key + "'");
        }
    }
    const auto p = parse_number<std::uint32_t>("p", kv["p"]);
    gf::require_prime(p);
    protocol::ProtocolConfig config{
        p,
        parse_number<std::size_t>("n", kv["n"]),
        parse_number<std::size_t>("n1", kv["n1"]),
        parse_number<std::size_t>("n2", kv["n2"]),
        parse_number<std::size_t>("n3", kv["n3"]),
        dists::depolarizing(parse_number<double>("mix_bob_to_alice", kv["mix_bob_to_alice"]), p),
        dists::depolarizing(parse_number<double>("mix_alice_to_bob", kv["mix_alice_to_bob"]), p),
        kv["code"],
        parse_number<std::uint64_t>("seed", kv["seed"]),
    };
    protocol::validate(config);
    std::size_t expected = config.n1;
    if (config.code == "identity") {
        expected = 2 * config.n;
    } else if (config.code.rfind("repetition", 0) == 0) {
        const std::size_t r = parse_number<std::size_t>("code", config.code.substr(10));
        if (r == 0 || (2 * config.n) % r != 0) {
            throw std::invalid_argument("repetition factor must divide 2n");
        }
        expected = 2 * config.n / r;
    }
    if (config.n1 != expected) {
        throw std::invalid_argument("n1 = " + std::to_string(config.n1) + " does not match code " + config.code);
    }
    return config;
}

}  // namespace pdc::io

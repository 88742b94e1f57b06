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

#ifndef PDC_SERIALIZATION_H
#define PDC_SERIALIZATION_H

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pdc/bounds.h"
#include "pdc/estimation.h"
#include "pdc/gf.h"
#include "pdc/protocol.h"

namespace pdc::io {

/// 12 significant digits, independent of the locale.
std::string format_double(double v);

/// Comma-separated rows under a fixed header. Numbers go through format_double.
class CsvWriter {
   public:
    CsvWriter(std::ostream &out, std::vector<std::string> header);

    void row(const std::vector<std::string> &cells);
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string &v) { return v; }

   private:
    std::ostream &out_;
    std::size_t columns_;
};

nlohmann::ordered_json to_json(const gf::FieldVec &v);
/// Keys s, s_prime, c, x_bar, x, x_hat, m_hat, y_hat, verdict, plus events.
nlohmann::ordered_json to_json(const protocol::Transcript &t);
nlohmann::ordered_json to_json(const protocol::RateEstimate &r);
nlohmann::ordered_json to_json(const protocol::MonteCarloStats &stats);
nlohmann::ordered_json to_json(const protocol::AnalyticBounds &b);
nlohmann::ordered_json to_json(const estimation::EstimationReport &report);
nlohmann::ordered_json to_json(const bounds::FiniteLengthReport &report);

/// Flat "key = value" text (also "key: value"; '#' starts a comment) with keys
/// p, n, n1, n2, n3, mix_bob_to_alice, mix_alice_to_bob, code, seed. Both
/// noises are depolarizing. Throws std::invalid_argument on unknown, missing
/// or malformed keys.
protocol::ProtocolConfig parse_config(std::string_view text);

}  // namespace pdc::io

#endif  // PDC_SERIALIZATION_H

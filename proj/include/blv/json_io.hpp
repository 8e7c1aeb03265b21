// Copyright 2025 The blv authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLV_JSON_IO_HPP
#define BLV_JSON_IO_HPP

#include <json.hpp>

#include "blv/eps_analysis.hpp"
#include "blv/kkt_cert.hpp"
#include "blv/linlin_stability.hpp"
#include "blv/lp_core.hpp"

namespace blv {

// Deterministic serialization: insertion-ordered objects, rationals as
// canonical "p" / "p/q" strings, enclosures as directed decimal strings.
using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vec_to_json(const QVec& v);
QVec vec_from_json(const Json& j);
Json mat_to_json(const QMat& m);
QMat mat_from_json(const Json& j);

Json enclosure_to_json(const Enclosure& e);

Json instance_to_json(const InstanceParams& p);
InstanceParams instance_from_json(const Json& j);

Json follower_point_to_json(const FollowerPoint& y);

Json exact_bilevel_solution_to_json(const ExactBilevelSolution& s);

Json gap_report_to_json(const GapReport& r);
std::string gap_report_csv_header();
std::string gap_report_csv_row(const GapReport& r);

Json kkt_certificate_to_json(const KktCertificate& c);

Json lp_to_json(const LinearProgram& lp);
LinearProgram lp_from_json(const Json& j);
Json lp_solution_to_json(const LpSolution& s);

Json linear_bilevel_to_json(const LinearBilevelInstance& inst);
LinearBilevelInstance linear_bilevel_from_json(const Json& j);

Json stability_report_to_json(const StabilityReport& r);
std::string stability_report_csv_header();
std::string stability_report_csv_row(const StabilityReport& r);

}  // namespace blv

#endif  // BLV_JSON_IO_HPP

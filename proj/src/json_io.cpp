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

#include "blv/json_io.hpp"

#include <sstream>

#include "blv/errors.hpp"

namespace blv {

Json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ConfigError("expected a rational as string");
  auto r = Rational::parse(j.get<std::string>());
  if (!r.has_value()) throw ConfigError("cannot parse rational '" + j.get<std::string>() + "'");
  return *r;
}

Json vec_to_json(const QVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rational_to_json(v[i]));
  return out;
}

QVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of rationals");
  QVec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) v[i++] = rational_from_json(e);
  return v;
}

Json mat_to_json(const QMat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(i, c)));
    out.push_back(std::move(row));
  }
  return out;
}

QMat mat_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected a matrix as array of arrays");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) cols = static_cast<Eigen::Index>(j.front().size());
  QMat m(rows, cols);
  Eigen::Index i = 0;
  for (const auto& row : j) {
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("ragged matrix rows");
    }
    Eigen::Index c = 0;
    for (const auto& e : row) m(i, c++) = rational_from_json(e);
    ++i;
  }
  return m;
}

Json enclosure_to_json(const Enclosure& e) {
  return Json{{"lo", e.lo().str(Round::Down)},
              {"hi", e.hi().str(Round::Up)},
              {"precision_bits", static_cast<long>(e.precision())}};
}

Json instance_to_json(const InstanceParams& p) {
  return Json{{"n", p.n},
              {"x_lo", Json::array({rational_to_json(p.x_lo[0]), rational_to_json(p.x_lo[1])})},
              {"x_hi", Json::array({rational_to_json(p.x_hi[0]), rational_to_json(p.x_hi[1])})}};
}

InstanceParams instance_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("x_lo") || !j.contains("x_hi")) {
    throw ConfigError("instance JSON needs fields n, x_lo, x_hi");
  }
  return InstanceParams(
      j.at("n").get<int>(),
      {rational_from_json(j.at("x_lo").at(0)), rational_from_json(j.at("x_lo").at(1))},
      {rational_from_json(j.at("x_hi").at(0)), rational_from_json(j.at("x_hi").at(1))});
}

namespace {

// Exact decimal form when the denominator is 2^a 5^b; "p/q" otherwise.
std::string rational_decimal_or_fraction(const Rational& r) {
  mpz_class den = r.denominator();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
    ++fives;
  }
  if (den != 1 || twos + fives > 64) return r.str();
  unsigned long k = std::max(twos, fives);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, k);
  mpz_class scaled = r.numerator() * (pow10 / r.denominator());
  bool neg = scaled < 0;
  std::string digits = mpz_class(neg ? mpz_class(-scaled) : scaled).get_str();
  if (k == 0) return (neg ? "-" : "") + digits;
  while (digits.size() <= k) digits.insert(digits.begin(), '0');
  digits.insert(digits.size() - k, ".");
  return (neg ? "-" : "") + digits;
}

}  // namespace

Json follower_point_to_json(const FollowerPoint& y) {
  Json arr = Json::array();
  for (int i = 0; i < y.size(); ++i) {
    if (y.is_exact(i)) {
      arr.push_back(rational_decimal_or_fraction(y.exact_entry(i)));
    } else {
      const auto& e = std::get<Enclosure>(y.entry(i));
      arr.push_back(e.midpoint().str());
    }
  }
  return arr;
}

Json exact_bilevel_solution_to_json(const ExactBilevelSolution& s) {
  return Json{{"x_star", Json::array({rational_to_json(s.x_star.x1),
                                      rational_to_json(s.x_star.x2)})},
              {"F_star", rational_to_json(s.F_star)},
              {"y1", enclosure_to_json(s.lower.y1)},
              {"y", follower_point_to_json(s.lower.y_star)}};
}

namespace {

const char* mode_name(EpsMode m) {
  return m == EpsMode::Optimistic ? "optimistic" : "pessimistic";
}

}  // namespace

Json gap_report_to_json(const GapReport& r) {
  return Json{{"n", r.exact.lower.n},
              {"eps", rational_to_json(r.eps)},
              {"mode", mode_name(r.mode)},
              {"eps_threshold", rational_to_json(r.eps_threshold)},
              {"exact", exact_bilevel_solution_to_json(r.exact)},
              {"eps_solution",
               Json{{"x", Json::array({rational_to_json(r.eps_leader.x1),
                                       rational_to_json(r.eps_leader.x2)})},
                    {"y", follower_point_to_json(r.eps_follower)},
                    {"F", rational_to_json(r.eps_objective)}}},
              {"leader_distance_1norm", rational_to_json(r.leader_distance_1norm)},
              {"objective_gap", rational_to_json(r.objective_gap)}};
}

std::string gap_report_csv_header() {
  return "n,eps,mode,F_exact,F_eps,gap,distance";
}

std::string gap_report_csv_row(const GapReport& r) {
  std::ostringstream os;
  os << r.exact.lower.n << ',' << r.eps.str() << ',' << mode_name(r.mode) << ','
     << r.exact.F_star.str() << ',' << r.eps_objective.str() << ','
     << r.objective_gap.str() << ',' << r.leader_distance_1norm.str();
  return os.str();
}

namespace {

const char* status_name(ComplementarityStatus s) {
  switch (s) {
    case ComplementarityStatus::ActiveExact:
      return "active";
    case ComplementarityStatus::ActiveStructural:
      return "active";
    case ComplementarityStatus::Inactive:
      return "inactive";
  }
  return "?";
}

}  // namespace

Json kkt_certificate_to_json(const KktCertificate& c) {
  Json alpha = Json::array();
  for (const auto& a : c.multipliers.alpha) alpha.push_back(enclosure_to_json(a));
  Json beta = Json::array();
  for (const auto& b : c.multipliers.beta) beta.push_back(enclosure_to_json(b));
  Json rows = Json::array();
  for (const auto& row : c.pattern) {
    rows.push_back(Json{{"id", constraint_name(row.id)},
                        {"slack_lo", row.slack.lo().str(Round::Down)},
                        {"slack_hi", row.slack.hi().str(Round::Up)},
                        {"mult_lo", row.multiplier.lo().str(Round::Down)},
                        {"mult_hi", row.multiplier.hi().str(Round::Up)},
                        {"status", status_name(row.status)},
                        {"strict_ok", row.strict_ok}});
  }
  return Json{{"multipliers",
               Json{{"alpha", std::move(alpha)},
                    {"beta", std::move(beta)},
                    {"gamma", enclosure_to_json(c.multipliers.gamma)},
                    {"delta_minus", enclosure_to_json(c.multipliers.delta_minus)},
                    {"delta_plus", enclosure_to_json(c.multipliers.delta_plus)},
                    {"pi", enclosure_to_json(c.multipliers.pi)}}},
              {"stationarity_residual_inf", enclosure_to_json(c.stationarity_residual_inf)},
              {"rows", std::move(rows)},
              {"strict", c.strict}};
}

Json lp_to_json(const LinearProgram& lp) {
  Json rel = Json::array();
  for (size_t i = 0; i < lp.relations.size(); ++i) {
    switch (lp.relations[i]) {
      case Relation::Ge:
        rel.push_back(">=");
        break;
      case Relation::Eq:
        rel.push_back("=");
        break;
      case Relation::Le:
        rel.push_back("<=");
        break;
    }
  }
  return Json{{"sense", lp.sense == Sense::Min ? "min" : "max"},
              {"v", vec_to_json(lp.objective)},
              {"M", mat_to_json(lp.constraint_matrix)},
              {"f", vec_to_json(lp.rhs)},
              {"relations", std::move(rel)}};
}

LinearProgram lp_from_json(const Json& j) {
  LinearProgram lp;
  std::string sense = j.value("sense", "min");
  if (sense == "min") {
    lp.sense = Sense::Min;
  } else if (sense == "max") {
    lp.sense = Sense::Max;
  } else {
    throw ConfigError("lp sense must be 'min' or 'max'");
  }
  lp.objective = vec_from_json(j.at("v"));
  lp.constraint_matrix = mat_from_json(j.at("M"));
  lp.rhs = vec_from_json(j.at("f"));
  if (j.contains("relations")) {
    for (const auto& e : j.at("relations")) {
      std::string s = e.get<std::string>();
      if (s == ">=") {
        lp.relations.push_back(Relation::Ge);
      } else if (s == "=" || s == "==") {
        lp.relations.push_back(Relation::Eq);
      } else if (s == "<=") {
        lp.relations.push_back(Relation::Le);
      } else {
        throw ConfigError("unknown relation '" + s + "'");
      }
    }
  }
  lp.validate();
  return lp;
}

Json lp_solution_to_json(const LpSolution& s) {
  Json out;
  switch (s.status) {
    case LpStatus::Optimal:
      out["status"] = "optimal";
      out["x"] = vec_to_json(s.x);
      out["value"] = rational_to_json(s.value);
      out["dual"] = vec_to_json(s.dual);
      out["basis"] = s.basis;
      break;
    case LpStatus::Infeasible:
      out["status"] = "infeasible";
      out["farkas"] = vec_to_json(s.farkas);
      break;
    case LpStatus::Unbounded:
      out["status"] = "unbounded";
      out["ray"] = vec_to_json(s.ray);
      break;
  }
  out["iterations"] = s.iterations;
  return out;
}

Json linear_bilevel_to_json(const LinearBilevelInstance& inst) {
  return Json{{"A", mat_to_json(inst.A)},     {"a", vec_to_json(inst.a)},
              {"C", mat_to_json(inst.C)},     {"D", mat_to_json(inst.D)},
              {"b", vec_to_json(inst.b)},     {"c_x", vec_to_json(inst.c_x)},
              {"c_y", vec_to_json(inst.c_y)}, {"d", vec_to_json(inst.d)}};
}

LinearBilevelInstance linear_bilevel_from_json(const Json& j) {
  LinearBilevelInstance inst;
  inst.A = mat_from_json(j.at("A"));
  inst.a = vec_from_json(j.at("a"));
  inst.C = mat_from_json(j.at("C"));
  inst.D = mat_from_json(j.at("D"));
  inst.b = vec_from_json(j.at("b"));
  inst.c_x = vec_from_json(j.at("c_x"));
  inst.c_y = vec_from_json(j.at("c_y"));
  inst.d = vec_from_json(j.at("d"));
  inst.check_dims();
  return inst;
}

Json stability_report_to_json(const StabilityReport& r) {
  Json kappas;
  for (const auto& [name, kv] : r.kappa_estimates) {
    kappas[name] = Json{{"value", rational_to_json(kv.first)},
                        {"upper_bound_only", kv.second}};
  }
  return Json{{"eps", rational_to_json(r.eps)},
              {"x_star", vec_to_json(r.x_star)},
              {"y_star", vec_to_json(r.y_star)},
              {"dist_x", rational_to_json(r.dist_x)},
              {"dist_y", rational_to_json(r.dist_y)},
              {"dist_total", rational_to_json(r.dist_total)},
              {"obj_diff", rational_to_json(r.obj_diff)},
              {"dist_bound", rational_to_json(r.dist_bound)},
              {"obj_bound", rational_to_json(r.obj_bound)},
              {"kappa", std::move(kappas)}};
}

std::string stability_report_csv_header() {
  return "eps,dist_x,dist_y,dist_total,obj_diff,kappa2,kappa3,kappa4,kappa5";
}

std::string stability_report_csv_row(const StabilityReport& r) {
  auto k = [&](const char* name) { return r.kappa_estimates.at(name).first.str(); };
  std::ostringstream os;
  os << r.eps.str() << ',' << r.dist_x.str() << ',' << r.dist_y.str() << ','
     << r.dist_total.str() << ',' << r.obj_diff.str() << ',' << k("kappa2") << ','
     << k("kappa3") << ',' << k("kappa4") << ',' << k("kappa5");
  return os.str();
}

}  // namespace blv

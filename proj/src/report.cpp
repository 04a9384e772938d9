#include "kudla/report.hpp"

#include <cstdio>
#include <sstream>

#include "kudla/specfun.hpp"

namespace kudla::report {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json precision_json(const Precision& prec) {
  return {{"working_digits", prec.working_digits},
          {"arithmetic", "binary64"},
          {"effective_rel_tol", prec.effective_rel_tol()}};
}

nlohmann::json spec_json(const QuadratureSpec& spec) {
  return {{"radius", spec.radius},       {"r_max", spec.r_max},
          {"nodes", spec.nodes},         {"mc_samples", spec.mc_samples},
          {"seed", spec.seed},           {"tol", spec.tol}};
}

std::string coefficients_csv(const eisenstein::CoefficientTable& table, const Precision& prec) {
  std::ostringstream os;
  os << "m,a,a_prime,A,A_prime\n";
  for (const auto& [m, e] : table.entries) {
    os << m << ',' << format_double(e.a) << ',' << format_double(e.a_prime) << ','
       << format_double(e.A) << ',' << format_double(e.A_prime) << '\n';
  }
  os << "# precision working_digits=" << prec.working_digits
     << " arithmetic=binary64 v=" << format_double(table.v) << '\n';
  return os.str();
}

nlohmann::json coefficients_json(const eisenstein::CoefficientTable& table, const Precision& prec) {
  const auto& k = specfun::constants();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [m, e] : table.entries)
    rows.push_back({{"m", m}, {"a", e.a}, {"a_prime", e.a_prime}, {"A", e.A}, {"A_prime", e.A_prime}});
  return {{"v", table.v},
          {"precision", precision_json(prec)},
          {"constants",
           {{"zeta_prime_neg1", k.zeta_prime_neg1}, {"euler_gamma", k.euler_gamma}}},
          {"rows", rows}};
}

std::string identity_csv_row(const identity::IdentityReport& r) {
  std::ostringstream os;
  os << r.m << ',' << format_double(r.v) << ',' << green::to_string(r.method) << ','
     << format_double(r.height) << ',' << format_double(r.green()) << ',' << format_double(r.lhs)
     << ',' << format_double(r.rhs) << ',' << format_double(r.abs_residual) << ','
     << format_double(r.rel_residual);
  return os.str();
}

nlohmann::json identity_json(const identity::IdentityReport& r) {
  nlohmann::json j = {{"m", r.m},
                      {"v", r.v},
                      {"method", green::to_string(r.method)},
                      {"height", r.height},
                      {"green_closed", r.green_closed},
                      {"green_numeric", nullptr},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"abs_residual", r.abs_residual},
                      {"rel_residual", r.rel_residual}};
  if (r.green_numeric) j["green_numeric"] = *r.green_numeric;
  if (r.green_error) j["green_error"] = *r.green_error;
  return j;
}

nlohmann::json green_json(const green::GreenResult& r) {
  return {{"m", r.m},
          {"v", r.v},
          {"method", green::to_string(r.method)},
          {"value", r.value},
          {"error_bound", r.error_bound},
          {"spec", spec_json(r.spec)}};
}

}  // namespace kudla::report

#pragma once

// CSV and JSON renderings of the library's result records.

#include <string>

#include <json.hpp>

#include "kudla/eisenstein.hpp"
#include "kudla/green.hpp"
#include "kudla/identity.hpp"
#include "kudla/types.hpp"

namespace kudla::report {

/// Shortest round-trip decimal form of x ("%.17g").
std::string format_double(double x);

nlohmann::json precision_json(const Precision& prec);
nlohmann::json spec_json(const QuadratureSpec& spec);

/// Header "m,a,a_prime,A,A_prime", one row per m, then a "# precision ..." line.
std::string coefficients_csv(const eisenstein::CoefficientTable& table, const Precision& prec);
nlohmann::json coefficients_json(const eisenstein::CoefficientTable& table, const Precision& prec);

inline constexpr const char* kIdentityCsvHeader =
    "m,v,method,height,green,lhs,rhs,abs_residual,rel_residual";
std::string identity_csv_row(const identity::IdentityReport& r);
nlohmann::json identity_json(const identity::IdentityReport& r);

/// {m, v, method, value, error_bound, spec}
nlohmann::json green_json(const green::GreenResult& r);

}  // namespace kudla::report

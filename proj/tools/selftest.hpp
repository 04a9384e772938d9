#pragma once

#include <ostream>

namespace kudla_cli {

/// Run every module's invariant checks, one pass/fail line each (or a JSON
/// list). Returns true when all pass.
bool run_selftest(bool quick, bool json, std::ostream& os);

}  // namespace kudla_cli

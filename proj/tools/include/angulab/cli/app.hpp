#pragma once

#include <iosfwd>

#include <json.hpp>

namespace angulab::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

/// JSON Schema (draft 2020-12) for configs, state documents and reports.
nlohmann::ordered_json emit_schema();

/// The whole command line; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace angulab::cli

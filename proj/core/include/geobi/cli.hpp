#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geobi::cli {

/// Runs one bi-cli invocation. Subcommands:
///
///   query nearest --index F --point WKT [-k N]
///   query within --index F --polygon RINGFILE
///   optimize facility --customers CSV [-k N] [swarm flags]
///   optimize product-mix --problem FILE [swarm flags]
///   hierarchy levels --in CSV
///   render --layers SPEC --out FILE.{geojson,svg}
///   index build --customers CSV --bounds LON0 LAT0 LON1 LAT1 --out FILE
///
/// Every subcommand accepts --seed and echoes it on the error stream;
/// payload goes to the output stream. Returns 0 on success, 1 on usage
/// errors (synopsis printed to err), 2 on data errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, from plain arguments (no program name), for in-process callers.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geobi::cli

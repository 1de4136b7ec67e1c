// Command-line front end: verdicts, structure translation, path and graph
// dumps, canonical formula formatting, and the differential harness.
#pragma once

#include <iosfwd>

namespace tempobridge {

// Exit codes: 0 = success (for `check`: verdict true), 1 = verdict false or
// unknown, 2 = usage/parse/validation error, 3 = differential disagreement.
// `out` receives the artifact only; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tempobridge

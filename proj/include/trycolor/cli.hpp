#pragma once

#include <iosfwd>

namespace trycolor {

// Exit codes: 0 all verifiers pass, 1 a verifier failed, 2 usage or
// parameter error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trycolor

#pragma once

#include <ostream>

namespace hourscap::io {

// Entry point behind the `hourscap` executable. Exit codes: 0 success,
// 1 usage/config/validation/I/O error, 2 solver or metric failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hourscap::io

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclalg {

inline constexpr const char* kPrecisionEnv = "CYCLALG_PREC";

// Exit status: 0 success, 1 mathematical negative (with witness), 2 input error.
// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclalg

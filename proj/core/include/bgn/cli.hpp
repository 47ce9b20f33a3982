#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bgn::cli {

// Process exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;     // parse/config failures
inline constexpr int exit_condition = 2;  // H1/H2/H3 violation
inline constexpr int exit_io = 3;
inline constexpr int exit_numeric = 4;    // solver or non-finite failures

int cmd_coeffs(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_run(const std::string& config_path, const std::string& out_dir, std::uint64_t seed,
            std::ostream& out, std::ostream& err);
int cmd_orders(const std::string& config_path, const std::string& out_dir, std::ostream& out,
               std::ostream& err);

}  // namespace bgn::cli

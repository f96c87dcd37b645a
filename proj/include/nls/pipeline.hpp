#ifndef NLS_PIPELINE_HPP
#define NLS_PIPELINE_HPP

#include <string>

#include "nls/config.hpp"
#include "nls/potential.hpp"

namespace nls {

enum class Command { Direct, Evolve, Inverse, Simulate, Verify, Example };

Command command_from_name(const std::string& name);

// Build the t = 0 potential for the configured problem.
PotentialField build_initial_field(const RunConfig& cfg);

// Execute a command; writes artifacts under out_dir. Throws on failure.
void run_command(Command cmd, const RunConfig& cfg, const std::string& out_dir);

// Exception -> exit code mapping (1 config, 2 numerical, 3 I/O) plus the
// machine-readable error JSON printed to stderr by the CLI.
int classify_error(const std::exception& e, std::string& error_class);

}  // namespace nls

#endif

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracbern {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunConfig {
    double alpha = 1.0;
    double domain_center = 0.0;
    double domain_radius = 1.0;
    std::optional<double> lambda;
    int grid = 128;
    double quad_tol = 1e-10;
    double series_tail_tol = 1e-8;
    std::string output_format = "csv";
    std::optional<std::string> plot_path;
    bool verify = false;

    /// Throws DomainError on any out-of-range field.
    void validate() const;
};

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitAccuracy = 3 };

/// Runs one command line (without the program name), writing the table to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracbern

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cscrack {

// lo:hi:step, inclusive of hi when it falls on the lattice.
struct SweepSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
};

SweepSpec parse_sweep(const std::string& text);

struct RunConfig {
    std::string command;
    double nu = 0.3;
    std::string h0 = "auto-star";
    std::optional<SweepSpec> h0_sweep;
    std::optional<double> m;
    std::optional<SweepSpec> m_sweep;
    double L_over_ell = 10.0;
    double T0 = 1.0;
    double tol = 1e-6;
    std::string out_dir = ".";
    bool plot = false;
    int threads = 1;
};

// key = value lines; '#' starts a comment. Keys are the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);
// Applies key/value pairs onto `cfg`; unknown keys and malformed values raise ConfigError.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv);
// Resolves auto-star and checks every value against the module preconditions.
void validate(const RunConfig& cfg);

double resolve_h0(const std::string& text, double nu);
std::vector<double> h0_values(const RunConfig& cfg);
std::vector<double> m_values(const RunConfig& cfg);

int threads_from_env();

struct OutputFile {
    std::string name;  // relative to the output directory
    std::string content;
};

// Runs one command and returns its files without touching the disk.
std::vector<OutputFile> run_command(const RunConfig& cfg, int* status = nullptr);

// Standalone matplotlib script, one image per CSV in `dir`, paths relative to the
// script. Raises MissingInput for an empty set or an absent file.
std::string emit_plot_script(const std::vector<std::string>& csv_names, const std::string& dir);

// Full driver: parse, validate, compute, then write. Returns the exit status.
int cli_main(int argc, const char* const* argv);

}  // namespace cscrack

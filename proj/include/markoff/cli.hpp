#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "markoff/bounds.hpp"
#include "markoff/lucas.hpp"

namespace markoff {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputMode { Human, Records };

struct RunConfig {
    std::optional<long> P;
    std::optional<long> Q;
    Kind kind = Kind::U;
    std::vector<Coeffs> tuples;  // empty: every admissible base
    std::vector<long> moduli{3, 5, 7, 8, 9, 11, 13, 16};
    long x_max = 1'000'000;
    long n_max = 20;
    std::string envelope = "default";
    long diagonal_window = 8;
    OutputMode output = OutputMode::Human;
    std::pair<long, long> p_range{2, 100};
    std::pair<long, long> e_range{1, 3};

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Flat "key = value" lines; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError unless every field is usable.
void check_config(const RunConfig& config);

// Exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUnresolved = 2;

int cmd_bounds(const RunConfig& config, std::ostream& out);
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_classify_zero(const RunConfig& config, std::ostream& out);
int cmd_oracle(const RunConfig& config, std::ostream& out);

/// Full command line: `mrsolve <bounds|solve|classify-zero|oracle> [flags]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace markoff

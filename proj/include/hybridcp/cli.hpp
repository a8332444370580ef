#ifndef HYBRIDCP_CLI_HPP
#define HYBRIDCP_CLI_HPP

#include "hybridcp/model.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybridcp {

struct SolveOptions {
    bool json = false;
    /// Enumerate every solution (satisfaction models only).
    bool all = false;
    std::optional<std::uint64_t> node_limit;
    std::optional<std::uint64_t> time_limit_ms;
};

enum class SolveStatus { Optimal, Satisfied, Unsatisfiable, Unknown };

std::string_view name(SolveStatus s) noexcept;

struct SolveReport {
    SolveStatus status = SolveStatus::Unknown;
    bool minimizing = false;
    /// Solutions in the order found (the improving ones when minimizing).
    std::vector<Solution> solutions;
    std::uint64_t nodes = 0;
    std::uint64_t fails = 0;
    double time_ms = 0.0;

    const Solution* final_solution() const
    {
        return solutions.empty() ? nullptr : &solutions.back();
    }
};

/// Thrown for option combinations that make no sense for the model.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

SolveReport solve(Model& model, const SolveOptions& options);

/// Solution blocks, the final block and a status line.
void print_text(const Model& model, const SolveReport& report, std::ostream& out);

/// One-line record: status, assignments, real_bounds, objective, nodes,
/// fails, time_ms, solution_count.
std::string to_json(const Model& model, const SolveReport& report);

/// 0 when a solution was found, 1 otherwise.
int exit_code(const SolveReport& report) noexcept;

/// Load, solve and print. Returns the process exit code: 0 solution found,
/// 1 unsatisfiable or no solution within the limits, 2 invalid model or
/// options, 3 internal error.
int run_solve(const std::filesystem::path& model_path, const SolveOptions& options,
              std::ostream& out, std::ostream& err);

/// Shortest decimal text that reads back as exactly `v`.
std::string format_double(double v);

} // namespace hybridcp

#endif // HYBRIDCP_CLI_HPP

#ifndef HYBRIDCP_MODEL_HPP
#define HYBRIDCP_MODEL_HPP

#include "hybridcp/solver.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridcp {

/// Invalid model document. `where()` is a JSON pointer to the offending
/// field, or "line L, column C" for syntax errors.
class ModelError : public std::runtime_error {
public:
    ModelError(std::string where, const std::string& detail)
        : std::runtime_error(where + ": " + detail), where_(std::move(where))
    {
    }
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

struct ViewInfo {
    std::string name;
    RealView view;
};

/// A solver populated from a model document, with the name tables needed to
/// report results.
struct Model {
    std::unique_ptr<Solver> solver;
    std::map<std::string, IntVar, std::less<>> ints;
    std::map<std::string, RealVar, std::less<>> reals;
    std::vector<ViewInfo> views;
    std::optional<Objective> objective;
    std::string objective_name;
};

/**
 * Build a model from its JSON text:
 *
 *   ints        [{name, lb, ub, enumerated?}]
 *   reals       [{name, lb, ub, precision}]
 *   views       [{base, name, precision?}]
 *   constraints [{type: alldifferent, vars} | {type: element, value, table, index}
 *                | {type: sum, vars, total} | {type: real, functions, scope}
 *                | {type: reified, b, constraint: {functions, scope}}]
 *   search      {strategy: "first_fail_in_domain_min", vars}
 *   objective   {minimize: name} | {satisfy: true}
 *
 * Each function of a "real" constraint gets its own propagator. Throws
 * ModelError.
 */
Model load_model(std::string_view json_text);
Model load_model_file(const std::filesystem::path& path);

} // namespace hybridcp

#endif // HYBRIDCP_MODEL_HPP

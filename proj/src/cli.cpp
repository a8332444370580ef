#include "hybridcp/cli.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <ostream>

namespace hybridcp {

std::string_view name(SolveStatus s) noexcept
{
    switch (s) {
    case SolveStatus::Optimal:
        return "OPTIMAL";
    case SolveStatus::Satisfied:
        return "SATISFIED";
    case SolveStatus::Unsatisfiable:
        return "UNSAT";
    case SolveStatus::Unknown:
        return "UNKNOWN";
    }
    return "?";
}

std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

SolveReport solve(Model& model, const SolveOptions& options)
{
    Solver& solver = *model.solver;
    SolveReport report;
    report.minimizing = model.objective.has_value();
    if (report.minimizing && options.all) {
        throw UsageError("--all only applies to satisfaction models");
    }

    SearchLimits limits;
    limits.nodes = options.node_limit;
    if (options.time_limit_ms) {
        limits.time = std::chrono::milliseconds(*options.time_limit_ms);
    }

    const auto start = std::chrono::steady_clock::now();
    if (report.minimizing) {
        const auto result = solver.minimize(
            *model.objective,
            [&](const Solution& s) {
                report.solutions.push_back(s);
                return true;
            },
            limits);
        switch (result.status) {
        case OptimizationStatus::Optimal:
            report.status = SolveStatus::Optimal;
            break;
        case OptimizationStatus::Unsatisfiable:
            report.status = SolveStatus::Unsatisfiable;
            break;
        case OptimizationStatus::LimitWithSolution:
            report.status = SolveStatus::Satisfied;
            break;
        case OptimizationStatus::LimitNoSolution:
            report.status = SolveStatus::Unknown;
            break;
        }
    } else {
        const auto status = solver.solve(
            [&](const Solution& s) {
                report.solutions.push_back(s);
                return options.all;
            },
            limits);
        if (!report.solutions.empty()) {
            report.status = SolveStatus::Satisfied;
        } else {
            report.status = status == SearchStatus::Complete ? SolveStatus::Unsatisfiable
                                                             : SolveStatus::Unknown;
        }
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report.time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    report.nodes = solver.stats().nodes;
    report.fails = solver.stats().fails;
    return report;
}

namespace {

void print_solution(const Model& model, const Solution& s, std::ostream& out)
{
    const Solver& solver = *model.solver;
    for (std::uint32_t i = 0; i < solver.num_ints(); ++i) {
        out << solver.name(IntVar{i}) << ": " << s.ints[i] << '\n';
    }
    for (std::uint32_t i = 0; i < solver.num_reals(); ++i) {
        out << solver.name(RealVar{i}) << ": " << format_double(s.reals[i].mid()) << '\n';
    }
}

} // namespace

void print_text(const Model& model, const SolveReport& report, std::ostream& out)
{
    for (std::size_t k = 0; k < report.solutions.size(); ++k) {
        out << "********* Solution #" << (k + 1) << '\n';
        print_solution(model, report.solutions[k], out);
    }
    if (report.minimizing && report.final_solution() != nullptr) {
        out << (report.status == SolveStatus::Optimal ? "********* Optimal solution\n"
                                                      : "********* Best solution found (optimality not proven)\n");
        print_solution(model, *report.final_solution(), out);
    }
    if (report.solutions.empty()) {
        out << "********* No solution\n";
    }
    out << "Status: " << name(report.status) << ", solutions: " << report.solutions.size()
        << ", nodes: " << report.nodes << ", fails: " << report.fails << '\n';
}

std::string to_json(const Model& model, const SolveReport& report)
{
    using json = nlohmann::ordered_json;
    const Solver& solver = *model.solver;
    json rec;
    rec["status"] = name(report.status);
    json assignments = json::object();
    json real_bounds = json::object();
    json objective = nullptr;
    if (const Solution* s = report.final_solution()) {
        for (std::uint32_t i = 0; i < solver.num_ints(); ++i) {
            assignments[solver.name(IntVar{i})] = s->ints[i];
        }
        for (std::uint32_t i = 0; i < solver.num_reals(); ++i) {
            real_bounds[solver.name(RealVar{i})] = {s->reals[i].lo(), s->reals[i].hi()};
        }
        if (model.objective) {
            objective = json::object();
            objective["name"] = model.objective_name;
            if (const auto* x = std::get_if<IntVar>(&*model.objective)) {
                const auto v = s->ints[x->id];
                objective["lo"] = v;
                objective["hi"] = v;
                objective["value"] = v;
            } else {
                const Interval b = s->reals[std::get<RealVar>(*model.objective).id];
                objective["lo"] = b.lo();
                objective["hi"] = b.hi();
                objective["value"] = b.mid();
            }
        }
    }
    rec["assignments"] = std::move(assignments);
    rec["real_bounds"] = std::move(real_bounds);
    rec["objective"] = std::move(objective);
    rec["nodes"] = report.nodes;
    rec["fails"] = report.fails;
    rec["time_ms"] = report.time_ms;
    rec["solution_count"] = report.solutions.size();
    return rec.dump();
}

int exit_code(const SolveReport& report) noexcept
{
    return report.solutions.empty() ? 1 : 0;
}

int run_solve(const std::filesystem::path& model_path, const SolveOptions& options,
              std::ostream& out, std::ostream& err)
{
    try {
        Model model = load_model_file(model_path);
        const SolveReport report = solve(model, options);
        print_text(model, report, out);
        if (options.json) {
            out << to_json(model, report) << '\n';
        }
        out.flush();
        return exit_code(report);
    } catch (const ModelError& e) {
        err << "error: " << model_path.string() << ": " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace hybridcp

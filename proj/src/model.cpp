#include "hybridcp/model.hpp"

#include "hybridcp/constraints.hpp"
#include "hybridcp/real_bridge.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hybridcp {

namespace {

using json = nlohmann::json;
using Value = IntDomain::value_type;

std::string child(const std::string& path, std::string_view key)
{
    return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index)
{
    return path + "/" + std::to_string(index);
}

class Builder {
public:
    explicit Builder(Model& model) : m_(model) {}

    void build(const json& doc)
    {
        if (!doc.is_object()) {
            throw ModelError("/", "the model must be a JSON object");
        }
        static const std::set<std::string, std::less<>> known = {
            "ints", "reals", "views", "constraints", "search", "objective"};
        for (const auto& [key, _] : doc.items()) {
            if (!known.contains(key)) {
                throw ModelError(child("", key), "unknown field");
            }
        }
        if (doc.contains("ints")) {
            ints(array(doc.at("ints"), "/ints"));
        }
        if (doc.contains("reals")) {
            reals(array(doc.at("reals"), "/reals"));
        }
        if (doc.contains("views")) {
            views(array(doc.at("views"), "/views"));
        }
        if (doc.contains("constraints")) {
            const auto& cs = array(doc.at("constraints"), "/constraints");
            for (std::size_t i = 0; i < cs.size(); ++i) {
                constraint(cs[i], child("/constraints", i));
            }
        }
        if (doc.contains("search")) {
            search(doc.at("search"), "/search");
        }
        if (!doc.contains("objective")) {
            throw ModelError("/objective", "missing objective clause");
        }
        objective(doc.at("objective"), "/objective");
    }

private:
    // ---- field access --------------------------------------------------------

    static const json& array(const json& j, const std::string& path)
    {
        if (!j.is_array()) {
            throw ModelError(path, "expected an array");
        }
        return j;
    }

    static const json& field(const json& obj, std::string_view key, const std::string& path)
    {
        if (!obj.is_object()) {
            throw ModelError(path, "expected an object");
        }
        const auto it = obj.find(key);
        if (it == obj.end()) {
            throw ModelError(child(path, key), "missing field");
        }
        return *it;
    }

    static void only(const json& obj, std::initializer_list<std::string_view> keys,
                     const std::string& path)
    {
        if (!obj.is_object()) {
            throw ModelError(path, "expected an object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                throw ModelError(child(path, key), "unknown field");
            }
        }
    }

    static std::string string(const json& obj, std::string_view key, const std::string& path)
    {
        const auto& j = field(obj, key, path);
        if (!j.is_string() || j.get_ref<const std::string&>().empty()) {
            throw ModelError(child(path, key), "expected a non-empty string");
        }
        return j.get<std::string>();
    }

    static Value integer(const json& j, const std::string& path)
    {
        if (!j.is_number_integer()) {
            throw ModelError(path, "expected an integer");
        }
        if (j.is_number_unsigned() &&
            j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Value>::max())) {
            throw ModelError(path, "integer out of range");
        }
        return j.get<Value>();
    }

    static double number(const json& j, const std::string& path)
    {
        if (!j.is_number()) {
            throw ModelError(path, "expected a number");
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            throw ModelError(path, "expected a finite number");
        }
        return v;
    }

    // ---- name resolution -------------------------------------------------------

    void claim(const std::string& name, const std::string& path)
    {
        if (!names_.insert(name).second) {
            throw ModelError(path, "duplicate variable name '" + name + "'");
        }
    }

    IntVar int_var(const json& j, const std::string& path) const
    {
        if (!j.is_string()) {
            throw ModelError(path, "expected an integer variable name");
        }
        const auto it = m_.ints.find(j.get_ref<const std::string&>());
        if (it == m_.ints.end()) {
            throw ModelError(path, "unknown integer variable '" + j.get<std::string>() + "'");
        }
        return it->second;
    }

    std::vector<IntVar> int_vars(const json& j, const std::string& path) const
    {
        array(j, path);
        std::vector<IntVar> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(int_var(j[i], child(path, i)));
        }
        return out;
    }

    RealTerm real_term(const json& j, const std::string& path) const
    {
        if (!j.is_string()) {
            throw ModelError(path, "expected a real variable or view name");
        }
        const auto& name = j.get_ref<const std::string&>();
        if (const auto it = m_.reals.find(name); it != m_.reals.end()) {
            return it->second;
        }
        for (const auto& v : m_.views) {
            if (v.name == name) {
                return v.view;
            }
        }
        if (m_.ints.contains(name)) {
            throw ModelError(path, "'" + name + "' is an integer variable; declare a view to use it here");
        }
        throw ModelError(path, "unknown real variable or view '" + name + "'");
    }

    // ---- sections ----------------------------------------------------------

    void ints(const json& list)
    {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child("/ints", i);
            const auto& d = list[i];
            only(d, {"name", "lb", "ub", "enumerated"}, path);
            const auto name = string(d, "name", path);
            claim(name, child(path, "name"));
            const Value lb = integer(field(d, "lb", path), child(path, "lb"));
            const Value ub = integer(field(d, "ub", path), child(path, "ub"));
            if (lb > ub) {
                throw ModelError(path, "lb > ub");
            }
            bool enumerated = false;
            if (d.contains("enumerated")) {
                if (!d.at("enumerated").is_boolean()) {
                    throw ModelError(child(path, "enumerated"), "expected a boolean");
                }
                enumerated = d.at("enumerated").get<bool>();
            }
            try {
                auto dom = enumerated ? IntDomain::enumerated(lb, ub) : IntDomain::bounded(lb, ub);
                m_.ints.emplace(name, m_.solver->make_int(name, std::move(dom)));
            } catch (const std::invalid_argument& e) {
                throw ModelError(path, e.what());
            }
        }
    }

    void reals(const json& list)
    {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child("/reals", i);
            const auto& d = list[i];
            only(d, {"name", "lb", "ub", "precision"}, path);
            const auto name = string(d, "name", path);
            claim(name, child(path, "name"));
            const double lb = number(field(d, "lb", path), child(path, "lb"));
            const double ub = number(field(d, "ub", path), child(path, "ub"));
            const double precision = number(field(d, "precision", path), child(path, "precision"));
            if (lb > ub) {
                throw ModelError(path, "lb > ub");
            }
            if (!(precision > 0.0)) {
                throw ModelError(child(path, "precision"), "precision must be positive");
            }
            m_.reals.emplace(name, m_.solver->make_real(name, lb, ub, precision));
        }
    }

    void views(const json& list)
    {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child("/views", i);
            const auto& d = list[i];
            only(d, {"base", "name", "precision"}, path);
            const IntVar base = int_var(field(d, "base", path), child(path, "base"));
            const auto name = string(d, "name", path);
            claim(name, child(path, "name"));
            double precision = 1e-4;
            if (d.contains("precision")) {
                precision = number(d.at("precision"), child(path, "precision"));
                if (!(precision > 0.0)) {
                    throw ModelError(child(path, "precision"), "precision must be positive");
                }
            }
            m_.views.push_back({name, RealView{base, precision}});
        }
    }

    std::vector<std::string> functions(const json& c, const std::string& path)
    {
        const auto& fs = array(field(c, "functions", path), child(path, "functions"));
        if (fs.empty()) {
            throw ModelError(child(path, "functions"), "at least one function is required");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (!fs[i].is_string()) {
                throw ModelError(child(child(path, "functions"), i), "expected a string");
            }
            out.push_back(fs[i].get<std::string>());
        }
        return out;
    }

    std::vector<RealTerm> scope(const json& c, const std::string& path)
    {
        const auto spath = child(path, "scope");
        const auto& s = array(field(c, "scope", path), spath);
        std::vector<RealTerm> out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            out.push_back(real_term(s[i], child(spath, i)));
        }
        return out;
    }

    void constraint(const json& c, const std::string& path)
    {
        const auto type = string(c, "type", path);
        Solver& s = *m_.solver;
        try {
            if (type == "alldifferent") {
                only(c, {"type", "vars"}, path);
                const auto vars = int_vars(field(c, "vars", path), child(path, "vars"));
                if (vars.empty()) {
                    throw ModelError(child(path, "vars"), "at least one variable is required");
                }
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    if (!s.domain(vars[i]).is_enumerated()) {
                        throw ModelError(child(child(path, "vars"), i),
                                         "alldifferent needs enumerated domains; '" + s.name(vars[i]) +
                                             "' is bounded");
                    }
                }
                post_alldifferent(s, vars);
            } else if (type == "element") {
                only(c, {"type", "value", "table", "index"}, path);
                const IntVar value = int_var(field(c, "value", path), child(path, "value"));
                const IntVar index = int_var(field(c, "index", path), child(path, "index"));
                const auto tpath = child(path, "table");
                const auto& t = array(field(c, "table", path), tpath);
                if (t.empty()) {
                    throw ModelError(tpath, "the table must not be empty");
                }
                std::vector<Value> table;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    table.push_back(integer(t[i], child(tpath, i)));
                }
                post_element(s, value, std::move(table), index);
            } else if (type == "sum") {
                only(c, {"type", "vars", "total"}, path);
                auto vars = int_vars(field(c, "vars", path), child(path, "vars"));
                const IntVar total = int_var(field(c, "total", path), child(path, "total"));
                post_sum(s, std::move(vars), total);
            } else if (type == "real") {
                only(c, {"type", "functions", "scope"}, path);
                real(c, path);
            } else if (type == "reified") {
                only(c, {"type", "b", "constraint"}, path);
                const IntVar b = int_var(field(c, "b", path), child(path, "b"));
                const auto cpath = child(path, "constraint");
                const auto& inner = field(c, "constraint", path);
                only(inner, {"functions", "scope"}, cpath);
                auto fs = functions(inner, cpath);
                auto sc = scope(inner, cpath);
                try {
                    post_reified(s, b, std::move(fs), std::move(sc));
                } catch (const ParseError& e) {
                    throw ModelError(child(cpath, "functions"), e.what());
                } catch (const std::invalid_argument& e) {
                    throw ModelError(cpath, e.what());
                }
            } else {
                throw ModelError(child(path, "type"), "unknown constraint type '" + type + "'");
            }
        } catch (const ModelError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ModelError(path, e.what());
        }
    }

    void real(const json& c, const std::string& path)
    {
        const auto fs = functions(c, path);
        const auto sc = scope(c, path);
        // one propagator (and contractor) per function
        for (std::size_t i = 0; i < fs.size(); ++i) {
            try {
                post_real(*m_.solver, {fs[i]}, sc);
            } catch (const ParseError& e) {
                throw ModelError(child(child(path, "functions"), i), e.what());
            }
        }
    }

    void search(const json& d, const std::string& path)
    {
        only(d, {"strategy", "vars"}, path);
        const auto strategy = string(d, "strategy", path);
        if (strategy != "first_fail_in_domain_min") {
            throw ModelError(child(path, "strategy"),
                             "unknown strategy '" + strategy + "' (expected first_fail_in_domain_min)");
        }
        m_.solver->set_decision_vars(int_vars(field(d, "vars", path), child(path, "vars")));
    }

    void objective(const json& d, const std::string& path)
    {
        if (!d.is_object() || d.size() != 1) {
            throw ModelError(path, "expected exactly one of {\"minimize\": name} or {\"satisfy\": true}");
        }
        if (d.contains("satisfy")) {
            if (!d.at("satisfy").is_boolean() || !d.at("satisfy").get<bool>()) {
                throw ModelError(child(path, "satisfy"), "expected true");
            }
            return;
        }
        if (!d.contains("minimize")) {
            throw ModelError(path, "expected exactly one of {\"minimize\": name} or {\"satisfy\": true}");
        }
        const auto mpath = child(path, "minimize");
        const auto& j = d.at("minimize");
        if (!j.is_string()) {
            throw ModelError(mpath, "expected a variable name");
        }
        const auto& name = j.get_ref<const std::string&>();
        if (const auto it = m_.ints.find(name); it != m_.ints.end()) {
            m_.objective = it->second;
        } else if (const auto rt = m_.reals.find(name); rt != m_.reals.end()) {
            m_.objective = rt->second;
        } else {
            for (const auto& v : m_.views) {
                if (v.name == name) {
                    m_.objective = v.view.base;
                }
            }
            if (!m_.objective) {
                throw ModelError(mpath, "unknown variable '" + name + "'");
            }
        }
        m_.objective_name = name;
    }

    Model& m_;
    std::set<std::string, std::less<>> names_;
};

} // namespace

Model load_model(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        // Recover line/column from the byte offset.
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
            if (json_text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ModelError("line " + std::to_string(line) + ", column " + std::to_string(column),
                         "invalid JSON");
    }
    Model m;
    m.solver = std::make_unique<Solver>();
    Builder(m).build(doc);
    return m;
}

Model load_model_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModelError(path.string(), "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

} // namespace hybridcp

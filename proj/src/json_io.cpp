#include "wcsp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace wcsp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw InputError(path + ": " + message);
}

int intField(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

}  // namespace

json parseJsonText(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
}

Rational rationalFromJson(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return parseRational(j.get<std::string>());
        if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<std::uint64_t>())));
        if (j.is_number_integer()) fail(path, "negative weight " + j.dump() + " (weights must be non-negative)");
    } catch (const InputError& e) {
        if (std::string_view(e.what()).starts_with(path)) throw;
        fail(path, e.what());
    }
    fail(path, "expected a rational string such as \"3\" or \"1/2\", got " + j.dump());
}

WeightFunction functionFromJson(const json& j, int domainSize, const std::string& path) {
    if (j.is_string()) {
        WeightFunction f;
        if (!library::lookupBuiltin(j.get<std::string>(), domainSize, f)) {
            fail(path, "unknown built-in function '" + j.get<std::string>() + "'");
        }
        return f;
    }
    if (!j.is_object()) fail(path, "expected an object with 'arity' and 'table'");
    int arity = intField(j, "arity", path);
    if (arity < 0) fail(path + ".arity", "must be non-negative");
    if (!j.contains("table") || !j.at("table").is_array()) fail(path, "missing array field 'table'");
    const json& table = j.at("table");
    std::size_t expected = 0;
    try {
        expected = tableSize(arity, domainSize);
    } catch (const InputError& e) {
        fail(path, e.what());
    }
    if (table.size() != expected) {
        fail(path + ".table", "has " + std::to_string(table.size()) + " entries, expected " + std::to_string(expected) +
                                  " (= " + std::to_string(domainSize) + "^" + std::to_string(arity) + ")");
    }
    std::vector<Rational> values;
    values.reserve(expected);
    for (std::size_t i = 0; i < table.size(); ++i) {
        values.push_back(rationalFromJson(table[i], path + ".table[" + std::to_string(i) + "]"));
    }
    return WeightFunction(arity, domainSize, std::move(values));
}

Instance instanceFromJson(const json& j) {
    if (!j.is_object()) fail("$", "expected a JSON object");
    int q = j.contains("q") ? intField(j, "q", "$") : 2;
    if (q < 2) fail("$.q", "domain size must be at least 2");
    int n = intField(j, "n", "$");
    if (n < 0) fail("$.n", "must be non-negative");

    Instance instance(n, q);
    if (j.contains("functions")) {
        const json& fs = j.at("functions");
        if (!fs.is_object()) fail("$.functions", "expected an object mapping names to functions");
        for (const auto& [name, body] : fs.items()) {
            instance.addFunction(name, functionFromJson(body, q, "$.functions." + name));
        }
    }
    if (j.contains("constraints")) {
        const json& cs = j.at("constraints");
        if (!cs.is_array()) fail("$.constraints", "expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string path = "$.constraints[" + std::to_string(i) + "]";
            const json& c = cs[i];
            if (!c.is_object()) fail(path, "expected an object with 'f' and 'scope'");
            if (!c.contains("f") || !c.at("f").is_string()) fail(path, "missing string field 'f'");
            if (!c.contains("scope") || !c.at("scope").is_array()) fail(path, "missing array field 'scope'");
            std::string name = c.at("f").get<std::string>();
            if (!instance.hasFunction(name)) {
                WeightFunction builtin;
                if (!library::lookupBuiltin(name, q, builtin)) fail(path + ".f", "unknown function '" + name + "'");
                instance.addFunction(name, std::move(builtin));
            }
            std::vector<int> scope;
            for (std::size_t k = 0; k < c.at("scope").size(); ++k) {
                const json& v = c.at("scope")[k];
                if (!v.is_number_integer()) fail(path + ".scope[" + std::to_string(k) + "]", "expected an integer");
                scope.push_back(v.get<int>());
            }
            try {
                instance.addConstraint(name, std::move(scope));
            } catch (const InputError& e) {
                fail(path, e.what());
            }
        }
    }
    return instance;
}

Instance parseInstance(std::string_view text) { return instanceFromJson(parseJsonText(text)); }

nlohmann::ordered_json toJson(const WeightFunction& f) {
    nlohmann::ordered_json out;
    out["arity"] = f.arity();
    auto table = nlohmann::ordered_json::array();
    for (const auto& v : f.table()) table.push_back(toString(v));
    out["table"] = std::move(table);
    return out;
}

nlohmann::ordered_json toJson(const Instance& instance) {
    nlohmann::ordered_json out;
    out["q"] = instance.domainSize();
    out["n"] = instance.numVariables();
    auto functions = nlohmann::ordered_json::object();
    for (const auto& [name, f] : instance.functions()) functions[name] = toJson(f);
    out["functions"] = std::move(functions);
    auto constraints = nlohmann::ordered_json::array();
    for (const auto& c : instance.constraints()) {
        nlohmann::ordered_json entry;
        entry["f"] = c.function;
        entry["scope"] = c.scope;
        constraints.push_back(std::move(entry));
    }
    out["constraints"] = std::move(constraints);
    return out;
}

std::string serialize(const Instance& instance) { return toJson(instance).dump(); }

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace wcsp

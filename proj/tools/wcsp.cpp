// wcsp: command-line front end. JSON reports go to stdout, diagnostics to
// stderr. Exit codes: 0 ok, 2 input error, 3 refusal, 4 verification failure.

#include "wcsp/classifier.hpp"
#include "wcsp/generate.hpp"
#include "wcsp/json_io.hpp"
#include "wcsp/models.hpp"
#include "wcsp/reductions.hpp"
#include "wcsp/tractable.hpp"
#include "wcsp/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace wcsp;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitVerify = 4;

struct Context {
    Budget budget;
    std::string command;
};

Budget budgetFromEnvironment() {
    Budget b;
    const char* text = std::getenv("WCSP_BUDGET");
    if (text == nullptr || *text == '\0') return b;
    std::string s(text);
    if (s.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("WCSP_BUDGET must be a positive integer, got '" + s + "'");
    }
    try {
        b.maxStates = std::stoull(s);
    } catch (const std::exception&) {
        throw InputError("WCSP_BUDGET out of range: '" + s + "'");
    }
    if (b.maxStates == 0) throw InputError("WCSP_BUDGET must be positive");
    return b;
}

std::string readInput(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    return readFile(path);
}

// Prefixes diagnostics with the file they came from.
template <typename F>
auto withPath(const std::string& path, F&& parse) {
    try {
        return parse(readInput(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Instance loadInstance(const std::string& path) {
    return withPath(path, [](const std::string& text) { return parseInstance(text); });
}

ojson rational(const Rational& r) { return toString(r); }

ojson value(const Rational& r) {
    ojson out;
    out["exact"] = toString(r);
    out["decimal"] = toDecimal(r);
    return out;
}

ojson tupleJson(const Tuple& t) { return ojson(t); }

ojson witnessJson(const ProductTypeWitness& w) {
    ojson out;
    out["scale"] = rational(w.scale);
    auto constants = ojson::array();
    for (auto [i, v] : w.constantColumns) constants.push_back({{"index", i}, {"value", v}});
    out["constant_columns"] = std::move(constants);
    auto classes = ojson::array();
    for (const auto& c : w.classes) {
        ojson cls;
        auto members = ojson::array();
        for (const auto& m : c.members) members.push_back({{"index", m.index}, {"complemented", m.complemented}});
        cls["members"] = std::move(members);
        cls["weight0"] = rational(c.weight0);
        cls["weight1"] = rational(c.weight1);
        classes.push_back(std::move(cls));
    }
    out["classes"] = std::move(classes);
    return out;
}

ojson verdictJson(const Verdict& v) {
    ojson out;
    out["family"] = toString(v.family);
    if (v.hardPair) {
        out["hard_pair"] = {v.hardPair->first, v.hardPair->second};
    } else {
        out["hard_pair"] = nullptr;
    }
    auto functions = ojson::array();
    for (const auto& f : v.perFunction) {
        ojson entry;
        entry["name"] = f.name;
        entry["product_type"] = f.productType;
        entry["pure_affine"] = f.pureAffine;
        entry["affine_support"] = f.affineSupport;
        entry["product_like"] = f.productLike;
        auto lambdas = ojson::array();
        for (const auto& l : f.lambdas) lambdas.push_back(l ? ojson(toString(*l)) : ojson(nullptr));
        entry["lambdas"] = std::move(lambdas);
        entry["pure_affine_weight"] = f.pureAffineWeight ? ojson(toString(*f.pureAffineWeight)) : ojson(nullptr);
        entry["witness"] = f.witness ? witnessJson(*f.witness) : ojson(nullptr);
        functions.push_back(std::move(entry));
    }
    out["functions"] = std::move(functions);
    return out;
}

int emit(const Context& ctx, ojson report, int code = 0) {
    ojson out;
    out["command"] = ctx.command;
    for (auto& [k, v] : report.items()) out[k] = std::move(v);
    std::cout << out.dump(2) << '\n';
    return code;
}

Evaluator evaluatorFor(const Budget& budget) {
    return [budget](const Instance& in) { return evaluate(in, budget).z; };
}

// Compares both sides with the oracle, reports on stderr, and records the
// outcome in the report. Returns the exit code.
int verifySides(ojson& report, const Rational& lhs, const Rational& rhs, const std::string& what) {
    const bool ok = lhs == rhs;
    report["verification"] = {{"check", what}, {"lhs", toString(lhs)}, {"rhs", toString(rhs)}, {"ok", ok}};
    std::cerr << "verify " << what << ": " << (ok ? "OK" : "MISMATCH") << " (" << toString(lhs) << " vs "
              << toString(rhs) << ")\n";
    return ok ? 0 : kExitVerify;
}

std::vector<std::pair<std::string, WeightFunction>> loadCatalog(const std::string& path) {
    return withPath(path, [](const std::string& text) {
        nlohmann::json j = parseJsonText(text);
        if (!j.is_object()) throw InputError("$: expected a JSON object with 'functions'");
        int q = 2;
        if (j.contains("q")) {
            if (!j.at("q").is_number_integer() || j.at("q").get<int>() < 2) {
                throw InputError("$.q: domain size must be an integer >= 2");
            }
            q = j.at("q").get<int>();
        }
        if (!j.contains("functions")) throw InputError("$: missing field 'functions'");
        const auto& fs = j.at("functions");
        std::vector<std::pair<std::string, WeightFunction>> catalog;
        if (fs.is_array()) {
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const std::string path = "$.functions[" + std::to_string(i) + "]";
                if (!fs[i].is_string()) throw InputError(path + ": expected a built-in function name");
                catalog.emplace_back(fs[i].get<std::string>(), functionFromJson(fs[i], q, path));
            }
        } else if (fs.is_object()) {
            for (const auto& [name, body] : fs.items()) {
                catalog.emplace_back(name, functionFromJson(body, q, "$.functions." + name));
            }
        } else {
            throw InputError("$.functions: expected an object or an array of built-in names");
        }
        return catalog;
    });
}

std::vector<int> parseIndexList(const std::string& text, const std::string& option) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(option + ": expected comma-separated integers, got '" + text + "'");
        }
    }
    return out;
}

Rational parseOptionRational(const std::string& text, const std::string& option) {
    try {
        return parseRational(text);
    } catch (const InputError& e) {
        throw InputError(option + ": " + e.what());
    }
}

// ------------------------------------------------------------ commands

int cmdClassify(const Context& ctx, const std::string& path) {
    Verdict v = classifyFamily(loadCatalog(path));
    return emit(ctx, {{"verdict", verdictJson(v)}});
}

int cmdEval(const Context& ctx, const std::string& path, bool forceOracle) {
    Instance in = loadInstance(path);
    const auto start = std::chrono::steady_clock::now();
    Evaluation e = evaluate(in, ctx.budget, forceOracle);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    ojson report;
    report["evaluator"] = toString(e.evaluator);
    report["z"] = value(e.z);
    report["time_ms"] = elapsed.count();
    report["verdict"] = e.verdict ? verdictJson(*e.verdict) : ojson(nullptr);
    return emit(ctx, std::move(report));
}

struct ReduceOptions {
    std::string input;
    bool verify = false;
    bool corrupt = false;
    std::string from;
    std::string via;
    std::string keep;
    int coordinate = 0;
    int value = 0;
    std::string unary;
    std::string lambda;
    int k = 3;
    std::string disequality = "alldiff";
};

const WeightFunction& catalogFunction(const Instance& in, const std::string& name, const std::string& option) {
    if (!in.hasFunction(name)) throw InputError(option + ": no function '" + name + "' in the instance catalog");
    return in.function(name);
}

int finishSimulation(const Context& ctx, const ReduceOptions& opt, const Instance& in, Instance out) {
    if (opt.corrupt) corruptInstance(out);
    ojson report;
    report["instance"] = toJson(out);
    int code = 0;
    if (opt.verify) code = verifySides(report, deltaPinnedZ(in, ctx.budget), deltaPinnedZ(out, ctx.budget), "Z(input) = Z(output)");
    return emit(ctx, std::move(report), code);
}

int reduceProject(const Context& ctx, const ReduceOptions& opt) {
    Instance in = loadInstance(opt.input);
    const WeightFunction& f = catalogFunction(in, opt.via, "--via");
    Instance out = simulateProjectionInstance(in, opt.from, opt.via, f, parseIndexList(opt.keep, "--keep"));
    return finishSimulation(ctx, opt, in, std::move(out));
}

int reducePin(const Context& ctx, const ReduceOptions& opt) {
    Instance in = loadInstance(opt.input);
    const WeightFunction& f = catalogFunction(in, opt.via, "--via");
    Instance out = simulatePinInstance(in, opt.from, opt.via, f, opt.coordinate, opt.value);
    return finishSimulation(ctx, opt, in, std::move(out));
}

int reducePinVars(const Context& ctx, const ReduceOptions& opt) {
    Instance in = loadInstance(opt.input);
    BooleanPinningTrace trace;
    Evaluator ev = evaluatorFor(ctx.budget);
    if (opt.corrupt) {
        ev = [budget = ctx.budget](const Instance& i) {
            Instance copy = i;
            corruptInstance(copy);
            return evaluate(copy, budget).z;
        };
    }
    Rational z = pinningReduceBoolean(in, ev, &trace);
    ojson report;
    report["z"] = value(z);
    ojson t;
    t["trivial_zero"] = trace.trivialZero;
    t["no_pins"] = trace.noPins;
    t["symmetric"] = trace.symmetric;
    if (!trace.trivialZero && !trace.noPins) {
        t["merged01"] = toJson(trace.merged01);
        t["merged"] = toJson(trace.merged);
        if (!trace.symmetric) {
            t["witness_function"] = trace.witnessFunction;
            t["witness_tuple"] = tupleJson(trace.witnessTuple);
            t["merged01_extended"] = toJson(trace.merged01Extended);
            t["merged_extended"] = toJson(trace.mergedExtended);
        }
    }
    report["trace"] = std::move(t);
    int code = 0;
    if (opt.verify) code = verifySides(report, deltaPinnedZ(in, ctx.budget), z, "oracle Z = pinning result");
    return emit(ctx, std::move(report), code);
}

int reduceInterpolate(const Context& ctx, const ReduceOptions& opt) {
    Instance in = loadInstance(opt.input);
    const Rational lambda = parseOptionRational(opt.lambda, "--lambda");
    Evaluator ev = evaluatorFor(ctx.budget);
    if (opt.corrupt) {
        ev = [budget = ctx.budget](const Instance& i) {
            Instance copy = i;
            corruptInstance(copy);
            return evaluate(copy, budget).z;
        };
    }
    InterpolationResult r = interpolationReduce(in, opt.unary, lambda, ev);
    ojson report;
    report["z"] = value(r.value);
    report["occurrences"] = r.occurrences;
    auto coefficients = ojson::array();
    for (const auto& c : r.coefficients) coefficients.push_back(toString(c));
    report["coefficients"] = std::move(coefficients);
    int code = 0;
    if (opt.verify) code = verifySides(report, deltaPinnedZ(in, ctx.budget), r.value, "oracle Z = interpolated Z");
    return emit(ctx, std::move(report), code);
}

int reduceParityChain(const Context& ctx, const ReduceOptions& opt) {
    if (opt.k < 1) throw InputError("--k: must be at least 1");
    ParityGadget gadget = parityChain(opt.k);
    if (opt.corrupt) corruptInstance(gadget.instance);
    ojson report;
    report["primaries"] = gadget.primaries;
    report["instance"] = toJson(gadget.instance);
    int code = 0;
    if (opt.verify) {
        Instance parity(opt.k, 2);
        const std::string name = "xor" + std::to_string(opt.k);
        parity.addFunction(name, library::parity(opt.k));
        std::vector<int> scope(static_cast<std::size_t>(opt.k));
        for (int i = 0; i < opt.k; ++i) scope[static_cast<std::size_t>(i)] = i;
        parity.addConstraint(name, scope);
        code = verifySides(report, deltaPinnedZ(parity, ctx.budget), deltaPinnedZ(gadget.instance, ctx.budget),
                           "Z(parity) = Z(gadget)");
    }
    return emit(ctx, std::move(report), code);
}

int reduceMobiusPin(const Context& ctx, const ReduceOptions& opt) {
    Instance in = loadInstance(opt.input);
    Evaluator ev = evaluatorFor(ctx.budget);
    if (opt.corrupt) {
        ev = [budget = ctx.budget](const Instance& i) {
            Instance copy = i;
            corruptInstance(copy);
            return evaluate(copy, budget).z;
        };
    }
    Rational z = mobiusPinningReduce(in, ev, opt.disequality);
    ojson report;
    report["z"] = value(z);
    int code = 0;
    if (opt.verify) code = verifySides(report, deltaPinnedZ(in, ctx.budget), z, "oracle Z = Mobius result");
    return emit(ctx, std::move(report), code);
}

struct ModelOptions {
    std::string lambda;
    std::string graph;
    std::string matrix;
};

Graph loadGraph(const std::string& path) {
    if (path.empty()) throw InputError("--graph is required");
    return withPath(path, [](const std::string& text) { return parseGraph(text); });
}

ojson classificationJson(const GraphHomClassification& c) {
    ojson out;
    out["verdict"] = toString(c.verdict);
    auto components = ojson::array();
    for (const auto& comp : c.components) {
        components.push_back({{"vertices", comp.vertices},
                              {"bipartite", comp.bipartite},
                              {"rank", comp.rank},
                              {"tractable", comp.tractable}});
    }
    out["components"] = std::move(components);
    return out;
}

int modelHom(const Context& ctx, const TargetMatrix& h, const Graph& g) {
    Evaluation e = evalGraphHom(h, g, ctx.budget);
    ojson report;
    report["z"] = value(e.z);
    report["evaluator"] = toString(e.evaluator);
    report["classification"] = classificationJson(bulatovGroheClassify(h));
    return emit(ctx, std::move(report));
}

Rational requireLambda(const ModelOptions& opt) {
    if (opt.lambda.empty()) throw InputError("--lambda is required");
    return parseOptionRational(opt.lambda, "--lambda");
}

int modelIsing(const Context& ctx, const ModelOptions& opt) {
    return modelHom(ctx, TargetMatrix::ising(requireLambda(opt)), loadGraph(opt.graph));
}

int modelEvalH(const Context& ctx, const ModelOptions& opt) {
    if (opt.matrix.empty()) throw InputError("--matrix is required");
    TargetMatrix h = withPath(opt.matrix, [](const std::string& text) { return parseMatrix(text); });
    return modelHom(ctx, h, loadGraph(opt.graph));
}

int modelWenum(const Context& ctx, const ModelOptions& opt) {
    const Rational lambda = requireLambda(opt);
    if (opt.matrix.empty() == opt.graph.empty()) {
        throw InputError("give exactly one of --matrix (generator matrix) or --graph (incidence code)");
    }
    GeneratorMatrix a = opt.matrix.empty()
                            ? incidenceCode(loadGraph(opt.graph))
                            : withPath(opt.matrix, [](const std::string& text) { return parseGeneratorMatrix(text); });
    ojson report;
    report["rows"] = a.numRows();
    report["columns"] = a.numColumns();
    report["enumerator"] = value(weightEnumerator(a, lambda, ctx.budget));
    return emit(ctx, std::move(report));
}

int modelCutCheck(const Context& ctx, const ModelOptions& opt) {
    CutIdentityCheck c = verifyCutIdentity(loadGraph(opt.graph), requireLambda(opt), ctx.budget);
    ojson report;
    report["enumerator"] = value(c.enumerator);
    report["ising_z"] = value(c.isingZ);
    report["holds"] = c.holds;
    std::cerr << "cut identity W = Z/2: " << (c.holds ? "OK" : "MISMATCH") << '\n';
    return emit(ctx, std::move(report), c.holds ? 0 : kExitVerify);
}

int cmdVerify(const Context& ctx, const std::string& suite, const VerifyOptions& options) {
    auto outcomes = runSuite(suite, options);
    bool ok = true;
    auto checks = ojson::array();
    for (const auto& o : outcomes) {
        ok = ok && o.passed();
        ojson entry;
        entry["suite"] = o.suite;
        entry["invariant"] = o.invariant;
        entry["cases"] = o.cases;
        entry["failures"] = o.failures;
        entry["passed"] = o.passed();
        if (!o.passed()) {
            entry["first_failure"] = o.firstFailure;
            std::cerr << "FAIL " << o.suite << "/" << o.invariant << ": " << o.firstFailure << '\n';
        }
        checks.push_back(std::move(entry));
    }
    ojson report;
    report["seed"] = options.seed;
    report["passed"] = ok;
    report["checks"] = std::move(checks);
    return emit(ctx, std::move(report), ok ? 0 : kExitVerify);
}

std::string commandEcho(int argc, char** argv) {
    std::string s = "wcsp";
    for (int i = 1; i < argc; ++i) {
        s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact weighted Boolean #CSP toolkit"};
    app.require_subcommand(1);
    std::function<int(const Context&)> action;

    std::string path;
    bool forceOracle = false;

    auto* classify = app.add_subcommand("classify", "Classify a function catalog");
    classify->add_option("path", path, "Catalog or instance JSON ('-' for stdin)")->required();
    classify->callback([&] { action = [&](const Context& c) { return cmdClassify(c, path); }; });

    auto* eval = app.add_subcommand("eval", "Evaluate the partition function of an instance");
    eval->add_option("path", path, "Instance JSON ('-' for stdin)")->required();
    eval->add_flag("--force-oracle", forceOracle, "Skip the tractable evaluators");
    eval->callback([&] { action = [&](const Context& c) { return cmdEval(c, path, forceOracle); }; });

    ReduceOptions ro;
    auto* reduce = app.add_subcommand("reduce", "Run a reduction or gadget construction");
    reduce->require_subcommand(1);
    auto addCommon = [&](CLI::App* sub, bool withInput) {
        if (withInput) sub->add_option("path", ro.input, "Instance JSON ('-' for stdin)")->required();
        sub->add_flag("--verify", ro.verify, "Check both sides with the brute-force oracle");
        sub->add_flag("--corrupt", ro.corrupt, "Corrupt the transformed side (for testing --verify)")->group("");
    };
    auto* project = reduce->add_subcommand("project", "Simulate g by a projection of f");
    addCommon(project, true);
    project->add_option("--from", ro.from, "Catalog name of g")->required();
    project->add_option("--via", ro.via, "Catalog name of f")->required();
    project->add_option("--keep", ro.keep, "Kept coordinates of f, increasing, e.g. 0,2")->required();
    project->callback([&] { action = [&](const Context& c) { return reduceProject(c, ro); }; });

    auto* pin = reduce->add_subcommand("pin", "Simulate g by pinning a coordinate of f");
    addCommon(pin, true);
    pin->add_option("--from", ro.from, "Catalog name of g")->required();
    pin->add_option("--via", ro.via, "Catalog name of f")->required();
    pin->add_option("--coord", ro.coordinate, "Pinned coordinate of f (0-based)")->required();
    pin->add_option("--value", ro.value, "Pinned value")->required();
    pin->callback([&] { action = [&](const Context& c) { return reducePin(c, ro); }; });

    auto* pinVars = reduce->add_subcommand("pin-vars", "Remove delta0/delta1 constraints by Boolean pinning");
    addCommon(pinVars, true);
    pinVars->callback([&] { action = [&](const Context& c) { return reducePinVars(c, ro); }; });

    auto* interpolate = reduce->add_subcommand("interpolate", "Replace U_c by copies of U_lambda and interpolate");
    addCommon(interpolate, true);
    interpolate->add_option("--unary", ro.unary, "Catalog name of U_c")->required();
    interpolate->add_option("--lambda", ro.lambda, "lambda (rational, not 0 or 1)")->required();
    interpolate->callback([&] { action = [&](const Context& c) { return reduceInterpolate(c, ro); }; });

    auto* parity = reduce->add_subcommand("parity-chain", "Build the arity-k parity gadget over xor3 and delta0");
    addCommon(parity, false);
    parity->add_option("--k", ro.k, "Arity")->required();
    parity->callback([&] { action = [&](const Context& c) { return reduceParityChain(c, ro); }; });

    auto* mobius = reduce->add_subcommand("mobius-pin", "Evaluate via Mobius inversion over the partition lattice");
    addCommon(mobius, true);
    mobius->add_option("--disequality", ro.disequality, "Catalog name of the pairwise-distinct constraint")
        ->capture_default_str();
    mobius->callback([&] { action = [&](const Context& c) { return reduceMobiusPin(c, ro); }; });

    ModelOptions mo;
    auto* model = app.add_subcommand("model", "Graph homomorphism and weight enumerator models");
    model->require_subcommand(1);
    auto* ising = model->add_subcommand("ising", "Ising partition function Z_H(G), H = [[1,l],[l,1]]");
    ising->add_option("--lambda", mo.lambda)->required();
    ising->add_option("--graph", mo.graph, "Graph file")->required();
    ising->callback([&] { action = [&](const Context& c) { return modelIsing(c, mo); }; });
    auto* evalh = model->add_subcommand("evalh", "Z_H(G) for a symmetric target matrix");
    evalh->add_option("--matrix", mo.matrix, "Target matrix file")->required();
    evalh->add_option("--graph", mo.graph, "Graph file")->required();
    evalh->callback([&] { action = [&](const Context& c) { return modelEvalH(c, mo); }; });
    auto* wenum = model->add_subcommand("wenum", "Weight enumerator of a binary linear code");
    wenum->add_option("--lambda", mo.lambda)->required();
    wenum->add_option("--matrix", mo.matrix, "Generator matrix file");
    wenum->add_option("--graph", mo.graph, "Graph file (uses its incidence code)");
    wenum->callback([&] { action = [&](const Context& c) { return modelWenum(c, mo); }; });
    auto* cut = model->add_subcommand("cut-check", "Check W_A(lambda) = Z_H(G) / 2");
    cut->add_option("--lambda", mo.lambda)->required();
    cut->add_option("--graph", mo.graph, "Connected graph file")->required();
    cut->callback([&] { action = [&](const Context& c) { return modelCutCheck(c, mo); }; });

    std::string suite;
    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Run property suites against the oracle");
    verify->add_option("--suite", suite, "oracle, reductions, cut, classifier or all")->required();
    verify->add_option("--seed", vo.seed)->capture_default_str();
    verify->add_option("--cases", vo.cases, "Cases per invariant")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--corrupt", vo.corrupt, "Invariant to corrupt");
    verify->callback([&] { action = [&](const Context& c) { return cmdVerify(c, suite, vo); }; });

    std::string profile;
    std::uint64_t seed = 0;
    GenOptions go;
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--profile", profile, "product-type, pure-affine, mixed or graph-hom")->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--n", go.numVariables)->capture_default_str()->check(CLI::NonNegativeNumber);
    gen->add_option("--constraints", go.numConstraints)->capture_default_str()->check(CLI::NonNegativeNumber);
    gen->add_option("--functions", go.numFunctions)->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--max-arity", go.maxArity)->capture_default_str()->check(CLI::PositiveNumber);
    gen->callback([&] {
        action = [&](const Context&) {
            std::cout << serialize(genRandomInstance(parseProfile(profile), seed, go)) << '\n';
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        Context ctx{budgetFromEnvironment(), commandEcho(argc, argv)};
        return action(ctx);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Refusal& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitRefusal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

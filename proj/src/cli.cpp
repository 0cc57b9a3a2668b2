#include "triperi/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "triperi/analysis.hpp"
#include "triperi/errors.hpp"
#include "triperi/mapping.hpp"
#include "triperi/metric_space.hpp"
#include "triperi/paper_spaces.hpp"
#include "triperi/solver.hpp"

namespace triperi::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write file '" + path + "'");
    }
    out << content;
}

std::string violation_kind_name(AxiomViolation::Kind kind) {
    switch (kind) {
        case AxiomViolation::Kind::SelfDistanceNonzero: return "self-distance-nonzero";
        case AxiomViolation::Kind::Asymmetric: return "asymmetric";
        case AxiomViolation::Kind::Negative: return "negative";
        case AxiomViolation::Kind::ZeroForDistinct: return "zero-for-distinct";
        case AxiomViolation::Kind::TriangleInequality: return "triangle-inequality";
    }
    return "unknown";
}

std::string status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::ReachedExactFixedPoint: return "reached-exact-fixed-point";
        case SolveStatus::StalledBudget: return "stalled-budget";
        case SolveStatus::ConditionIViolationDetected: return "condition-i-violation-detected";
    }
    return "unknown";
}

std::string names_of(const MetricSpace& space, const std::vector<PointRef>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += " ";
        out += space.point_name(pts[i]);
    }
    return out;
}

Json names_json(const MetricSpace& space, const std::vector<PointRef>& pts) {
    Json arr = Json::array();
    for (PointRef p : pts) {
        arr.push_back(space.point_name(p));
    }
    return arr;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

/// Resolved pair of inputs plus the descriptors that go into reports.
struct Inputs {
    MetricSpace space;
    SelfMap map;
    std::string space_desc;
    std::string map_desc;
    std::optional<Scalar> builtin_alpha; // certified coefficient of a builtin
    std::optional<std::uint64_t> window; // effective --window, if any
};

struct InputFlags {
    std::string space_file;
    std::string map_file;
    bool paper_space = false;
    std::string paper_example; // "A" | "B" | ""
    std::string scale_text = "1";
    std::uint64_t window_value = 0;
    bool window_given = false;

    std::optional<std::uint64_t> window() const {
        return window_given ? std::optional<std::uint64_t>(window_value) : std::nullopt;
    }
};

void add_input_flags(CLI::App* sub, InputFlags& flags, bool with_files) {
    if (with_files) {
        sub->add_option("space", flags.space_file, "FMS v1 space file");
        sub->add_option("map", flags.map_file, "FMAP v1 map file");
    }
    sub->add_flag("--paper-space", flags.paper_space,
                  "use the built-in countable space with its shift map");
    sub->add_option("--paper-example", flags.paper_example,
                    "use a built-in three-point example (A or B)")
        ->check(CLI::IsMember({"A", "B"}));
    sub->add_option("--scale", flags.scale_text,
                    "scale of the built-in countable space (exact rational, default 1)");
    sub->add_option("--window", flags.window_value, "enumeration window for computable spaces")
        ->each([&flags](const std::string&) { flags.window_given = true; });
}

PaperSpaceParams paper_params(const InputFlags& flags) {
    PaperSpaceParams params;
    params.scale = Scalar::parse(flags.scale_text, NumericMode::Exact);
    if (flags.window_given) {
        params.window = flags.window_value;
    }
    params.validate();
    return params;
}

Inputs resolve_inputs(const InputFlags& flags) {
    const bool files = !flags.space_file.empty();
    const int sources = int(files) + int(flags.paper_space) + int(!flags.paper_example.empty());
    if (sources != 1) {
        throw DomainError(
            "give exactly one input: space/map files, --paper-space, or --paper-example");
    }
    if (flags.paper_space) {
        auto [space, map] = make_paper_space(paper_params(flags));
        return Inputs{std::move(space), std::move(map), "builtin:paper-space", "builtin:shift",
                      Scalar::from_ratio(BigInt(7), BigInt(8)), flags.window()};
    }
    if (!flags.paper_example.empty()) {
        auto variant = flags.paper_example == "A" ? ThreePointVariant::A : ThreePointVariant::B;
        auto [space, map] = make_three_point_example(variant);
        std::string desc = "builtin:three-point-" + flags.paper_example;
        return Inputs{std::move(space), std::move(map), desc, desc,
                      Scalar::from_ratio(BigInt(2), BigInt(3)), flags.window()};
    }
    if (flags.map_file.empty()) {
        throw DomainError("file inputs need both a space file and a map file");
    }
    MetricSpace space = parse_fms(read_file(flags.space_file));
    AxiomReport axioms = verify_metric_axioms(space);
    if (!axioms.pass) {
        throw DomainError("space file '" + flags.space_file +
                          "' violates the metric axioms (" +
                          violation_kind_name(axioms.violation->kind) + " at " +
                          names_of(space, axioms.violation->points) + ")");
    }
    SelfMap map = parse_fmap(read_file(flags.map_file), space);
    return Inputs{std::move(space), std::move(map), flags.space_file, flags.map_file,
                  std::nullopt, flags.window()};
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const std::string& space_file, const std::string& format, std::ostream& out) {
    MetricSpace space = parse_fms(read_file(space_file));
    AxiomReport report = verify_metric_axioms(space);

    if (format == "json") {
        Json doc;
        doc["command"] = "verify";
        doc["inputs"] = Json{{"space", space_file}};
        doc["pass"] = report.pass;
        doc["points_checked"] = report.points_checked;
        if (report.violation) {
            doc["violation"] = Json{{"kind", violation_kind_name(report.violation->kind)},
                                    {"points", names_json(space, report.violation->points)},
                                    {"lhs", report.violation->lhs.str()},
                                    {"rhs", report.violation->rhs.str()}};
        } else {
            doc["violation"] = nullptr;
        }
        emit_json(out, doc);
    } else {
        out << "command: verify\n";
        out << "space: " << space_file << "\n";
        out << "points_checked: " << report.points_checked << "\n";
        out << "result: " << (report.pass ? "pass" : "fail") << "\n";
        if (report.violation) {
            out << "violation: " << violation_kind_name(report.violation->kind) << "\n";
            out << "witness: " << names_of(space, report.violation->points) << "\n";
            out << "lhs: " << report.violation->lhs.str() << "\n";
            out << "rhs: " << report.violation->rhs.str() << "\n";
        }
    }
    return report.pass ? 0 : 1;
}

// -------------------------------------------------------------- classify --

int cmd_classify(const InputFlags& flags, const std::string& format, std::ostream& out) {
    Inputs inputs = resolve_inputs(flags);
    AnalysisReport report = classify(inputs.space, inputs.map, inputs.window);

    const std::vector<PointRef> alpha_witness{report.alpha_star_witness.a(),
                                              report.alpha_star_witness.b(),
                                              report.alpha_star_witness.c()};
    const std::vector<PointRef> lip_witness{report.lipschitz_witness.first,
                                            report.lipschitz_witness.second};

    if (format == "json") {
        Json doc;
        doc["command"] = "classify";
        doc["inputs"] = Json{{"space", inputs.space_desc}, {"map", inputs.map_desc}};
        doc["window"] = report.window ? Json(*report.window) : Json(nullptr);
        doc["alpha_star"] = report.alpha_star.str();
        doc["alpha_star_witness"] = names_json(inputs.space, alpha_witness);
        doc["lipschitz"] = report.lipschitz.str();
        doc["lipschitz_witness"] = names_json(inputs.space, lip_witness);
        doc["is_perimeter_contracting"] = report.is_perimeter_contracting;
        doc["is_contraction"] = report.is_contraction;
        doc["condition_i_witness"] =
            report.condition_i_witness
                ? Json(inputs.space.point_name(*report.condition_i_witness))
                : Json(nullptr);
        doc["fixed_points"] = names_json(inputs.space, report.fixed_points);
        doc["fixed_point_count"] = report.fixed_point_count;
        emit_json(out, doc);
    } else {
        out << "command: classify\n";
        out << "space: " << inputs.space_desc << "\n";
        out << "map: " << inputs.map_desc << "\n";
        out << "window: "
            << (report.window ? std::to_string(*report.window) : std::string("full-space"))
            << "\n";
        out << "alpha_star: " << report.alpha_star.str() << "\n";
        out << "alpha_star_witness: " << names_of(inputs.space, alpha_witness) << "\n";
        out << "lipschitz: " << report.lipschitz.str() << "\n";
        out << "lipschitz_witness: " << names_of(inputs.space, lip_witness) << "\n";
        out << "is_perimeter_contracting: "
            << (report.is_perimeter_contracting ? "true" : "false") << "\n";
        out << "is_contraction: " << (report.is_contraction ? "true" : "false") << "\n";
        out << "condition_i_witness: "
            << (report.condition_i_witness
                    ? inputs.space.point_name(*report.condition_i_witness)
                    : std::string("none"))
            << "\n";
        out << "fixed_points: " << names_of(inputs.space, report.fixed_points) << "\n";
        out << "fixed_point_count: " << report.fixed_point_count << "\n";
    }
    const bool good = report.is_perimeter_contracting && !report.condition_i_witness;
    return good ? 0 : 1;
}

// ----------------------------------------------------------------- solve --

int cmd_solve(const InputFlags& flags, const std::string& start_name,
              const std::string& alpha_text, const std::string& tol_text,
              std::uint64_t max_iter, const std::string& format, std::ostream& out) {
    Inputs inputs = resolve_inputs(flags);
    const NumericMode mode = inputs.space.mode();

    auto start = inputs.space.find_point(start_name);
    if (!start) {
        throw DomainError("unknown start point '" + start_name + "'");
    }

    Scalar alpha;
    if (!alpha_text.empty()) {
        alpha = Scalar::parse(alpha_text, mode);
    } else if (inputs.builtin_alpha) {
        alpha = mode == NumericMode::Exact
                    ? *inputs.builtin_alpha
                    : Scalar::from_double(inputs.builtin_alpha->as_double());
    } else {
        alpha = perimeter_contraction_coefficient(inputs.space, inputs.map, inputs.window).first;
        if (!(alpha < Scalar::one(mode))) {
            throw DomainError("map is not perimeter-contracting on the window (alpha_star = " +
                              alpha.str() + "); pass --alpha explicitly");
        }
    }
    const Scalar tol =
        tol_text.empty() ? Scalar::parse("1/1000000", mode) : Scalar::parse(tol_text, mode);

    SolveResult result = picard_solve(inputs.space, inputs.map, *start, alpha, tol, max_iter);

    if (format == "json") {
        Json doc;
        doc["command"] = "solve";
        doc["inputs"] = Json{{"space", inputs.space_desc}, {"map", inputs.map_desc}};
        doc["start"] = inputs.space.point_name(*start);
        doc["alpha_used"] = result.alpha_used.str();
        doc["tol"] = tol.str();
        doc["max_iter"] = max_iter;
        doc["status"] = status_name(result.status);
        doc["point"] = inputs.space.point_name(result.point);
        doc["iterations"] = result.iterations;
        doc["final_gap"] = result.final_gap.str();
        doc["p0"] = result.p0 ? Json(result.p0->str()) : Json(nullptr);
        Json trace = Json::array();
        for (const Scalar& b : result.bound_trace) {
            trace.push_back(b.str());
        }
        doc["bound_trace"] = std::move(trace);
        doc["condition_i_witness"] =
            result.condition_i_witness
                ? Json(inputs.space.point_name(*result.condition_i_witness))
                : Json(nullptr);
        emit_json(out, doc);
    } else {
        out << "command: solve\n";
        out << "space: " << inputs.space_desc << "\n";
        out << "map: " << inputs.map_desc << "\n";
        out << "start: " << inputs.space.point_name(*start) << "\n";
        out << "alpha_used: " << result.alpha_used.str() << "\n";
        out << "tol: " << tol.str() << "\n";
        out << "max_iter: " << max_iter << "\n";
        out << "status: " << status_name(result.status) << "\n";
        out << "point: " << inputs.space.point_name(result.point) << "\n";
        out << "iterations: " << result.iterations << "\n";
        out << "final_gap: " << result.final_gap.str() << "\n";
        out << "p0: " << (result.p0 ? result.p0->str() : std::string("unavailable")) << "\n";
        out << "bound_trace:";
        for (const Scalar& b : result.bound_trace) {
            out << " " << b.str();
        }
        out << "\n";
        out << "condition_i_witness: "
            << (result.condition_i_witness
                    ? inputs.space.point_name(*result.condition_i_witness)
                    : std::string("none"))
            << "\n";
    }
    switch (result.status) {
        case SolveStatus::Converged:
        case SolveStatus::ReachedExactFixedPoint: return 0;
        case SolveStatus::StalledBudget: return 1;
        case SolveStatus::ConditionIViolationDetected: return 3;
    }
    return 2;
}

// ----------------------------------------------------------- paper-table --

int cmd_paper_table(const InputFlags& flags, const std::string& format, std::ostream& out) {
    PaperSpaceParams params = paper_params(flags);
    const Scalar alpha_bound = Scalar::from_ratio(BigInt(7), BigInt(8));

    std::vector<Scalar> star_ratios;
    star_ratios.reserve(params.window);
    for (std::uint64_t i = 0; i < params.window; ++i) {
        star_ratios.push_back(star_triple_ratio(i, params));
    }

    // finite_triple_ratio does not depend on the middle index, so (i, i+1, k)
    // realizes the lexicographically smallest maximizing triple.
    std::optional<Scalar> finite_max;
    std::uint64_t wi = 0;
    std::uint64_t wk = 2;
    for (std::uint64_t i = 0; i + 2 <= params.window; ++i) {
        for (std::uint64_t k = i + 2; k <= params.window; ++k) {
            Scalar r = finite_triple_ratio(i, i + 1, k, params);
            if (!finite_max || r > *finite_max) {
                finite_max = std::move(r);
                wi = i;
                wk = k;
            }
        }
    }

    Scalar overall = *finite_max;
    for (const Scalar& r : star_ratios) {
        if (r > overall) {
            overall = r;
        }
    }
    const bool certified = overall <= alpha_bound;
    const std::vector<std::string> witness{"x" + std::to_string(wi),
                                           "x" + std::to_string(wi + 1),
                                           "x" + std::to_string(wk)};

    if (format == "json") {
        Json doc;
        doc["command"] = "paper-table";
        doc["window"] = params.window;
        doc["scale"] = params.scale.str();
        Json rows = Json::array();
        for (std::uint64_t i = 0; i < star_ratios.size(); ++i) {
            rows.push_back(Json{{"i", i}, {"ratio", star_ratios[i].str()}});
        }
        doc["star_ratios"] = std::move(rows);
        doc["finite_max"] = Json{{"value", finite_max->str()}, {"witness", witness}};
        doc["overall_max"] = overall.str();
        doc["alpha_bound"] = alpha_bound.str();
        doc["certified"] = certified;
        emit_json(out, doc);
    } else {
        out << "command: paper-table\n";
        out << "window: " << params.window << "\n";
        out << "scale: " << params.scale.str() << "\n";
        for (std::uint64_t i = 0; i < star_ratios.size(); ++i) {
            out << "star_ratio x" << i << ": " << star_ratios[i].str() << "\n";
        }
        out << "finite_max: " << finite_max->str() << "\n";
        out << "finite_max_witness: " << witness[0] << " " << witness[1] << " " << witness[2]
            << "\n";
        out << "overall_max: " << overall.str() << "\n";
        out << "alpha_bound: " << alpha_bound.str() << "\n";
        out << "certified: " << (certified ? "true" : "false") << "\n";
    }
    return 0;
}

// ----------------------------------------------------------- materialize --

int cmd_materialize(const InputFlags& flags, const std::string& space_out,
                    const std::string& map_out, bool remap_boundary,
                    const std::string& format, std::ostream& out) {
    if (!flags.paper_space) {
        throw DomainError("materialize requires --paper-space");
    }
    if (!map_out.empty() && !remap_boundary) {
        throw DomainError(
            "refusing to materialize the shift map: the boundary point's image lies outside "
            "the window; pass --remap-boundary-to-star to remap it");
    }
    PaperSpaceParams params = paper_params(flags);
    auto [space, map] = make_paper_space(params);

    const std::uint64_t n = params.window;
    std::vector<std::string> names;
    std::vector<PointRef> pts;
    names.reserve(n + 2);
    pts.reserve(n + 2);
    for (std::uint64_t i = 0; i <= n; ++i) {
        names.push_back("x" + std::to_string(i));
        pts.push_back(PointRef::index(i));
    }
    names.push_back("x*");
    pts.push_back(PointRef::star());

    std::vector<Scalar> matrix;
    matrix.reserve(pts.size() * pts.size());
    for (PointRef p : pts) {
        for (PointRef q : pts) {
            matrix.push_back(space.distance(p, q));
        }
    }
    MetricSpace finite = MetricSpace::finite(std::move(names), std::move(matrix));
    write_file(space_out, write_fms(finite));

    if (!map_out.empty()) {
        // Shift restricted to the window: the boundary image x_{N+1} is
        // remapped to star (the point at index n+1), star stays fixed.
        std::vector<PointRef> images;
        images.reserve(n + 2);
        for (std::uint64_t i = 0; i < n; ++i) {
            images.push_back(PointRef::index(i + 1));
        }
        images.push_back(PointRef::index(n + 1)); // x_N -> x*
        images.push_back(PointRef::index(n + 1)); // x* -> x*
        write_file(map_out, write_fmap(SelfMap::table(finite, std::move(images))));
    }

    if (format == "json") {
        Json doc;
        doc["command"] = "materialize";
        doc["window"] = params.window;
        doc["scale"] = params.scale.str();
        doc["space_file"] = space_out;
        doc["map_file"] = map_out.empty() ? Json(nullptr) : Json(map_out);
        emit_json(out, doc);
    } else {
        out << "command: materialize\n";
        out << "window: " << params.window << "\n";
        out << "scale: " << params.scale.str() << "\n";
        out << "space_file: " << space_out << "\n";
        if (!map_out.empty()) {
            out << "map_file: " << map_out << "\n";
        }
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"analysis toolkit for perimeter-contracting self-maps of metric spaces"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check the metric axioms of an FMS file");
    std::string verify_space;
    verify->add_option("space", verify_space, "FMS v1 space file")->required();

    auto* classify_cmd =
        app.add_subcommand("classify", "compute contraction coefficients and conditions");
    InputFlags classify_flags;
    add_input_flags(classify_cmd, classify_flags, /*with_files=*/true);

    auto* solve = app.add_subcommand("solve", "run the fixed-point iteration");
    InputFlags solve_flags;
    add_input_flags(solve, solve_flags, /*with_files=*/true);
    std::string start_name;
    std::string alpha_text;
    std::string tol_text;
    std::uint64_t max_iter = 1000;
    solve->add_option("--start", start_name, "start point name or index")->required();
    solve->add_option("--alpha", alpha_text,
                      "certified contraction coefficient (default: builtin constant, or the "
                      "windowed maximum for file inputs)");
    solve->add_option("--tol", tol_text, "iterate-gap tolerance (default 1/1000000)");
    solve->add_option("--max-iter", max_iter, "iteration budget")->capture_default_str();

    auto* table = app.add_subcommand("paper-table",
                                     "tabulate the star-triple ratios and certify the "
                                     "windowed maximum against 7/8");
    InputFlags table_flags;
    add_input_flags(table, table_flags, /*with_files=*/false);

    auto* materialize =
        app.add_subcommand("materialize", "write a windowed builtin space to FMS/FMAP files");
    InputFlags mat_flags;
    add_input_flags(materialize, mat_flags, /*with_files=*/false);
    std::string space_out;
    std::string map_out;
    bool remap_boundary = false;
    materialize->add_option("--space-out", space_out, "output FMS path")->required();
    materialize->add_option("--map-out", map_out, "output FMAP path");
    materialize->add_flag("--remap-boundary-to-star", remap_boundary,
                          "acknowledge that the boundary point's image is remapped to x*");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("triperi");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            return cmd_verify(verify_space, format, out);
        }
        if (app.got_subcommand(classify_cmd)) {
            return cmd_classify(classify_flags, format, out);
        }
        if (app.got_subcommand(solve)) {
            return cmd_solve(solve_flags, start_name, alpha_text, tol_text, max_iter, format,
                             out);
        }
        if (app.got_subcommand(table)) {
            return cmd_paper_table(table_flags, format, out);
        }
        if (app.got_subcommand(materialize)) {
            return cmd_materialize(mat_flags, space_out, map_out, remap_boundary, format, out);
        }
        err << "error: no command\n";
        return 2;
    } catch (const triperi::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace triperi::cli

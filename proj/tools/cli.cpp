#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "normalproj/errors.hpp"
#include "normalproj/inversion.hpp"
#include "normalproj/oracle.hpp"
#include "normalproj/parallel.hpp"
#include "normalproj/serialization.hpp"

namespace normalproj::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct UsageError : Error {
    using Error::Error;
};

std::vector<double> parse_numbers(const std::string& text, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw UsageError("not a number: '" + item + "'");
        out.push_back(x);
    }
    return out;
}

ParamDomain parse_domain(const std::string& text) {
    if (text == "unbounded") return ParamDomain::everywhere();
    const auto v = parse_numbers(text);
    if (v.size() != 4) throw UsageError("--domain expects a,b,c,d or 'unbounded'");
    ParamDomain d{v[0], v[1], v[2], v[3], false};
    if (d.u_min > d.u_max || d.v_min > d.v_max) throw UsageError("--domain bounds are reversed");
    return d;
}

MultiDegree parse_degree_override(const std::string& text, SpaceKind kind) {
    std::vector<int> parts;
    for (double x : parse_numbers(text)) {
        if (x != std::floor(x) || x < 0) throw UsageError("--degree expects non-negative integers");
        parts.push_back(static_cast<int>(x));
    }
    if (parts.size() != num_x_blocks(kind)) {
        throw UsageError("--degree needs " + std::to_string(num_x_blocks(kind)) + " component(s) for a " +
                         std::string(to_string(kind)) + " surface");
    }
    parts.push_back(0);
    return MultiDegree(parts);
}

std::vector<Eigen::Vector3d> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<Eigen::Vector3d> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> v;
        try {
            v = parse_numbers(line);
        } catch (const UsageError&) {
            if (lineno == 1) continue;  // header
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected x,y,z");
        }
        if (v.size() != 3) throw UsageError(path + ":" + std::to_string(lineno) + ": expected x,y,z");
        pts.emplace_back(v[0], v[1], v[2]);
    }
    return pts;
}

SurfaceParam read_surface(const std::string& path) { return load_surface(path); }

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

json result_json(const ProjectionResult& r) {
    return {{"u", r.u},
            {"v", r.v},
            {"point", {r.point.x(), r.point.y(), r.point.z()}},
            {"distance", r.distance},
            {"residual", r.residual},
            {"multiplicity", r.multiplicity},
            {"low_confidence", r.low_confidence}};
}

struct Tolerances {
    double rank_tol = kDefaultRankTol;
    double imag_tol = 1e-6;
    double verify_tol = 1e-6;
    std::string domain = "0,1,0,1";

    void add_to(CLI::App* app) {
        app->add_option("--tol", rank_tol, "Relative rank tolerance for SVDs")->check(CLI::PositiveNumber);
        app->add_option("--imag-tol", imag_tol, "Imaginary-part tolerance for eigenvalues")->check(CLI::PositiveNumber);
        app->add_option("--verify-tol", verify_tol, "Orthogonality residual bound")->check(CLI::PositiveNumber);
        app->add_option("--domain", domain, "Parameter box a,b,c,d (u in [a,b], v in [c,d]) or 'unbounded'");
    }

    InversionOptions options() const {
        InversionOptions o;
        o.rank_tol = rank_tol;
        o.imag_tol = imag_tol;
        o.verify_tol = verify_tol;
        o.domain = parse_domain(domain);
        return o;
    }
};

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string surface;
    std::string out;
    std::string degree;
    double rank_tol = kDefaultRankTol;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    const SurfaceParam s = read_surface(a.surface);
    MultiDegree deg = admissible_degree(s);
    if (!a.degree.empty()) deg = parse_degree_override(a.degree, s.kind);
    const auto t0 = Clock::now();
    const MatrixRep m = build_matrix_rep(build_congruence(s), deg, a.rank_tol);
    const double ms = elapsed_ms(t0);
    save_matrix_rep(m, a.out);
    out << "degree " << deg.str() << (m.below_admissible ? " (below admissible " + admissible_degree(s).str() + ")" : "")
        << "\nshape " << m.rows() << "x" << m.cols() << "\nbuild_ms " << fmt(ms) << "\n";
    return kOk;
}

// -------------------------------------------------------------- project

struct ProjectArgs {
    std::string matrix;
    std::string surface;
    std::string point;
    std::string points_file;
    std::string format = "csv";
    Tolerances tol;
};

struct PointOutcome {
    std::vector<ProjectionResult> results;
    std::string error;
};

std::vector<PointOutcome> project_batch(const MatrixRep& m, const SurfaceParam& s, const std::vector<Eigen::Vector3d>& pts,
                                        const InversionOptions& opts) {
    std::vector<PointOutcome> outcomes(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            outcomes[i].results = project(m, s, pts[i], opts);
        } catch (const NonFiniteFiber& e) {
            outcomes[i].error = e.what();
        } catch (const NeedsDegreeBump& e) {
            outcomes[i].error = e.what();
        } catch (const NumericalFailure& e) {
            outcomes[i].error = e.what();
        }
    });
    return outcomes;
}

int cmd_project(const ProjectArgs& a, std::ostream& out, std::ostream& err) {
    if (a.point.empty() == a.points_file.empty()) throw UsageError("give exactly one of --point or --points");
    const SurfaceParam s = read_surface(a.surface);
    const MatrixRep m = load_matrix_rep(a.matrix);
    check_surface_hash(m, s);
    const InversionOptions opts = a.tol.options();

    std::vector<Eigen::Vector3d> pts;
    if (!a.point.empty()) {
        const auto v = parse_numbers(a.point);
        if (v.size() != 3) throw UsageError("--point expects x,y,z");
        pts.emplace_back(v[0], v[1], v[2]);
    } else {
        pts = read_points_csv(a.points_file);
    }

    const auto t0 = Clock::now();
    const auto outcomes = project_batch(m, s, pts, opts);
    const double ms = elapsed_ms(t0);

    if (a.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            json rec = {{"query", {pts[i].x(), pts[i].y(), pts[i].z()}}};
            if (!outcomes[i].error.empty()) {
                rec["error"] = outcomes[i].error;
            } else {
                json res = json::array();
                for (const auto& r : outcomes[i].results) res.push_back(result_json(r));
                rec["projections"] = res;
            }
            arr.push_back(rec);
        }
        out << json{{"results", arr}}.dump(2) << "\n";
    } else {
        out << "x,y,z,u,v,qx,qy,qz,dist,residual\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& p = pts[i];
            if (!outcomes[i].error.empty()) {
                err << "error: point " << i << " (" << fmt(p.x()) << "," << fmt(p.y()) << "," << fmt(p.z())
                    << "): " << outcomes[i].error << "\n";
                continue;
            }
            for (const auto& r : outcomes[i].results) {
                out << fmt(p.x()) << ',' << fmt(p.y()) << ',' << fmt(p.z()) << ',' << fmt(r.u) << ',' << fmt(r.v) << ','
                    << fmt(r.point.x()) << ',' << fmt(r.point.y()) << ',' << fmt(r.point.z()) << ',' << fmt(r.distance) << ','
                    << fmt(r.residual) << '\n';
            }
        }
    }
    err << pts.size() << " point(s) projected in " << fmt(ms) << " ms\n";
    return kOk;
}

// ------------------------------------------------------------- eddegree

struct EdArgs {
    std::string surface;
    int trials = 5;
    std::uint64_t seed = 1;
    double rank_tol = kDefaultRankTol;
};

int cmd_eddegree(const EdArgs& a, std::ostream& out) {
    if (a.trials < 1) throw UsageError("--trials must be at least 1");
    const SurfaceParam s = read_surface(a.surface);
    const MultiDegree deg = admissible_degree(s);
    const MatrixRep m = build_matrix_rep(build_congruence(s), deg, a.rank_tol);
    const int ed = eddegree(m, a.trials, a.seed, a.rank_tol);
    out << ed << "\n";
    return kOk;
}

// --------------------------------------------------------------- verify

struct VerifyArgs {
    std::string surface;
    std::string matrix;
    int n_points = 25;
    std::uint64_t seed = 1;
    Tolerances tol;
    double match_tol = 1e-5;
    int grid_n = 60;
};

struct MatchCounts {
    int matched = 0;
    int missed = 0;
    int extra = 0;
};

MatchCounts greedy_match(const std::vector<ProjectionResult>& got, const std::vector<CriticalPoint>& want, double tol) {
    std::vector<bool> used(got.size(), false);
    MatchCounts c;
    for (const auto& w : want) {
        std::size_t best = got.size();
        double best_d = tol;
        for (std::size_t i = 0; i < got.size(); ++i) {
            const double d = std::hypot(got[i].u - w.u, got[i].v - w.v);
            if (!used[i] && d <= best_d) {
                best = i;
                best_d = d;
            }
        }
        if (best == got.size()) {
            ++c.missed;
        } else {
            used[best] = true;
            ++c.matched;
        }
    }
    for (bool u : used) c.extra += u ? 0 : 1;
    return c;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.n_points < 0) throw UsageError("--points must be non-negative");
    const SurfaceParam s = read_surface(a.surface);
    MatrixRep m;
    if (a.matrix.empty()) {
        m = build_matrix_rep(build_congruence(s), admissible_degree(s), a.tol.rank_tol);
    } else {
        m = load_matrix_rep(a.matrix);
        check_surface_hash(m, s);
    }
    InversionOptions opts = a.tol.options();
    if (opts.domain.unbounded) opts.domain = {-2.0, 2.0, -2.0, 2.0, false};
    OracleOptions oopts;
    oopts.domain = opts.domain;
    oopts.grid_n = a.grid_n;

    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    int failures = 0;
    out << "point,x,y,z,matched,missed,extra,status\n";
    for (int i = 0; i < a.n_points; ++i) {
        const double u = opts.domain.u_min + unit(rng) * (opts.domain.u_max - opts.domain.u_min);
        const double v = opts.domain.v_min + unit(rng) * (opts.domain.v_max - opts.domain.v_min);
        Eigen::Vector3d p = Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
        try {
            p += eval_affine(s, u, v);
        } catch (const PoleError&) {
        }
        MatchCounts c;
        std::string status = "ok";
        try {
            c = greedy_match(project(m, s, p, opts), oracle_project(s, p, oopts), a.match_tol);
            if (c.missed || c.extra) status = "mismatch";
        } catch (const Error& e) {
            status = "error";
        }
        if (status != "ok") ++failures;
        out << i << ',' << fmt(p.x()) << ',' << fmt(p.y()) << ',' << fmt(p.z()) << ',' << c.matched << ',' << c.missed << ','
            << c.extra << ',' << status << '\n';
    }
    out << (failures ? "FAIL " : "PASS ") << (a.n_points - failures) << "/" << a.n_points << " points agree\n";
    return failures ? kFailure : kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string cls;
    std::string degrees;
    std::uint64_t seed = 1;
    std::string format = "csv";
    int trials = 5;
};

struct BenchClass {
    SpaceKind kind;
    bool rational;
};

BenchClass parse_bench_class(const std::string& name) {
    static const std::map<std::string, BenchClass> classes = {
        {"triangular-nonrational", {SpaceKind::Triangular, false}},
        {"triangular-rational", {SpaceKind::Triangular, true}},
        {"tensor-nonrational", {SpaceKind::TensorProduct, false}},
        {"tensor-rational", {SpaceKind::TensorProduct, true}},
    };
    auto it = classes.find(name);
    if (it == classes.end()) throw UsageError("unknown class '" + name + "'");
    return it->second;
}

std::vector<MultiDegree> parse_degree_list(const std::string& text, SpaceKind kind) {
    std::vector<MultiDegree> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::vector<int> parts;
        std::stringstream is(item);
        std::string p;
        while (std::getline(is, p, 'x')) {
            try {
                std::size_t used = 0;
                parts.push_back(std::stoi(p, &used));
                if (used != p.size()) throw std::invalid_argument(p);
            } catch (const std::exception&) {
                throw UsageError("bad degree '" + item + "'");
            }
        }
        if (parts.size() != num_x_blocks(kind)) {
            throw UsageError("degree '" + item + "' has the wrong number of components (use d or d1xd2)");
        }
        for (int x : parts) {
            if (x < 1) throw UsageError("degrees must be positive");
        }
        out.emplace_back(parts);
    }
    return out;
}

std::string degree_label(const MultiDegree& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "x" : "") + std::to_string(d[i]);
    return s;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const BenchClass cls = parse_bench_class(a.cls);
    const auto degrees = parse_degree_list(a.degrees, cls.kind);
    json rows = json::array();
    bool all_ok = true;
    for (const auto& d : degrees) {
        const SurfaceParam s = random_surface(cls.kind, d, cls.rational, a.seed);
        const MultiDegree mu = admissible_degree(s);
        const std::vector<int> mu_parts = mu.to_vector();
        const auto t0 = Clock::now();
        const MatrixRep m = build_matrix_rep(build_congruence(s), mu);
        const double build_ms = elapsed_ms(t0);
        const int ed = eddegree(m, a.trials, a.seed);
        const auto t1 = Clock::now();
        std::mt19937_64 rng(a.seed);
        std::uniform_real_distribution<double> coord(-1.0, 1.0);
        InversionOptions opts;
        try {
            project(m, s, Eigen::Vector3d(coord(rng), coord(rng), coord(rng)), opts);
        } catch (const Error&) {
        }
        const double project_ms = elapsed_ms(t1);

        const auto expect = expected_shape(cls.kind, d, cls.rational);
        const int expect_ed = class_ed_degree(cls.kind, d, cls.rational);
        const bool shape_ok = !expect || (expect->first == m.rows() && expect->second == m.cols());
        const bool ok = shape_ok && ed == expect_ed;
        all_ok = all_ok && ok;
        rows.push_back({{"class", a.cls},
                        {"degree", degree_label(d)},
                        {"mu0", degree_label(MultiDegree(std::vector<int>(mu_parts.begin(), mu_parts.end() - 1)))},
                        {"rows", m.rows()},
                        {"cols", m.cols()},
                        {"expected_shape", expect ? std::to_string(expect->first) + "x" + std::to_string(expect->second) : ""},
                        {"eddeg", ed},
                        {"expected_eddeg", expect_ed},
                        {"build_ms", build_ms},
                        {"project_ms", project_ms},
                        {"ok", ok}});
    }
    if (a.format == "json") {
        out << json{{"rows", rows}}.dump(2) << "\n";
    } else {
        out << "class,degree,mu0,rows,cols,expected_shape,eddeg,expected_eddeg,build_ms,project_ms,ok\n";
        for (const auto& r : rows) {
            out << r["class"].get<std::string>() << ',' << r["degree"].get<std::string>() << ',' << r["mu0"].get<std::string>()
                << ',' << r["rows"] << ',' << r["cols"] << ',' << r["expected_shape"].get<std::string>() << ',' << r["eddeg"]
                << ',' << r["expected_eddeg"] << ',' << fmt(r["build_ms"].get<double>()) << ','
                << fmt(r["project_ms"].get<double>()) << ',' << (r["ok"].get<bool>() ? "yes" : "no") << '\n';
        }
    }
    return all_ok ? kOk : kFailure;
}

}  // namespace

std::optional<std::pair<int, int>> expected_shape(SpaceKind kind, const MultiDegree& degree_d, bool rational) {
    using Key = std::tuple<bool, bool, int, int>;
    static const std::map<Key, std::pair<int, int>> table = {
        {{true, false, 2, 0}, {15, 7}},       {{true, false, 3, 0}, {66, 51}},     {{true, false, 4, 0}, {153, 132}},
        {{true, true, 2, 0}, {36, 29}},       {{true, true, 3, 0}, {153, 150}},    {{true, true, 4, 0}, {351, 363}},
        {{false, false, 1, 1}, {9, 5}},       {{false, false, 1, 2}, {24, 16}},    {{false, false, 1, 3}, {39, 27}},
        {{false, false, 2, 2}, {72, 59}},     {{false, false, 2, 3}, {117, 98}},   {{false, false, 3, 3}, {195, 169}},
        {{false, true, 1, 1}, {9, 4}},        {{false, true, 1, 2}, {30, 20}},     {{false, true, 1, 3}, {51, 36}},
        {{false, true, 2, 2}, {120, 108}},    {{false, true, 2, 3}, {204, 188}},   {{false, true, 3, 3}, {357, 340}},
    };
    const bool tri = kind == SpaceKind::Triangular;
    const Key key{tri, rational, degree_d[0], tri ? 0 : degree_d[1]};
    auto it = table.find(key);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonal projection onto rational surfaces via elimination matrices"};
    app.name("normalproj");
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build and store the matrix representation of a surface");
    b->add_option("surface", build.surface, "Surface JSON file")->required();
    b->add_option("-o,--out", build.out, "Output matrix file")->required();
    b->add_option("--degree", build.degree, "Degree override mu or mu1,mu2");
    b->add_option("--tol", build.rank_tol, "Relative rank tolerance")->check(CLI::PositiveNumber);

    ProjectArgs proj;
    auto* p = app.add_subcommand("project", "Project points onto a surface");
    p->add_option("matrix", proj.matrix, "Matrix file from 'build'")->required();
    p->add_option("surface", proj.surface, "Surface JSON file")->required();
    p->add_option("--point", proj.point, "Single point x,y,z");
    p->add_option("--points", proj.points_file, "CSV file with x,y,z lines");
    p->add_option("--format", proj.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    proj.tol.add_to(p);

    EdArgs ed;
    auto* e = app.add_subcommand("eddegree", "Estimate the Euclidean distance degree");
    e->add_option("surface", ed.surface, "Surface JSON file")->required();
    e->add_option("--trials", ed.trials, "Number of random query points");
    e->add_option("--seed", ed.seed, "Random seed");
    e->add_option("--tol", ed.rank_tol, "Relative rank tolerance")->check(CLI::PositiveNumber);

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Cross-check projections against the Newton oracle");
    v->add_option("surface", ver.surface, "Surface JSON file")->required();
    v->add_option("--matrix", ver.matrix, "Use a stored matrix instead of building one");
    v->add_option("--points", ver.n_points, "Number of random query points");
    v->add_option("--seed", ver.seed, "Random seed");
    v->add_option("--grid", ver.grid_n, "Oracle seeds per axis")->check(CLI::Range(2, 1000));
    ver.tol.add_to(v);

    BenchArgs bench;
    auto* be = app.add_subcommand("bench", "Matrix sizes, ED degrees and timings for random surfaces");
    be->add_option("class", bench.cls, "triangular-nonrational | triangular-rational | tensor-nonrational | tensor-rational")
        ->required();
    be->add_option("--degrees", bench.degrees, "Comma-separated degrees: d or d1xd2");
    be->add_option("--seed", bench.seed, "Random seed");
    be->add_option("--trials", bench.trials, "Trials for the ED degree")->check(CLI::PositiveNumber);
    be->add_option("--format", bench.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& ex) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }

    try {
        if (*b) return cmd_build(build, out);
        if (*p) return cmd_project(proj, out, err);
        if (*e) return cmd_eddegree(ed, out);
        if (*v) return cmd_verify(ver, out);
        if (*be) return cmd_bench(bench, out);
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const HashMismatch& ex) {
        err << "error: hash mismatch: " << ex.what() << "\n";
        return kHashMismatch;
    } catch (const FormatError& ex) {
        err << "error: " << ex.what() << "\n";
        return kInvalidSurface;
    } catch (const DomainError& ex) {
        err << "error: invalid input: " << ex.what() << "\n";
        return kInvalidSurface;
    } catch (const DegeneracyError& ex) {
        err << "error: degenerate surface: " << ex.what() << "\n";
        return kDegenerate;
    } catch (const DivisibilityError& ex) {
        err << "error: degenerate surface: " << ex.what() << "\n";
        return kDegenerate;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

}  // namespace normalproj::cli

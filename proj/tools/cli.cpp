#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "densecheck.hpp"
#include "homcone/error.hpp"
#include "homcone/io.hpp"
#include "homcone/rng.hpp"

namespace homcone::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
    std::string format = "text";
    std::optional<double> tol;
    std::optional<double> gamma;
    std::optional<int> max_iter;
    std::optional<double> eta;
    std::uint64_t seed = 1;
    std::string trace;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string scalar_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

// Text rendering of a JSON result; scalars print exactly as in the JSON encoding.
void render_text(const Json& j, std::ostream& out, const std::string& indent = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            out << indent << it.key() << ":\n";
            render_text(v, out, indent + "  ");
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
            out << indent << it.key() << ":";
            for (const Json& e : v) {
                out << ' ' << scalar_text(e);
            }
            out << '\n';
        } else if (v.is_array()) {
            out << indent << it.key() << ":\n";
            for (const Json& e : v) {
                out << indent << " ";
                if (e.is_object()) {
                    for (auto f = e.begin(); f != e.end(); ++f) {
                        out << ' ' << f.key() << '=' << scalar_text(f.value());
                    }
                } else {
                    for (const Json& x : e) {
                        out << ' ' << scalar_text(x);
                    }
                }
                out << '\n';
            }
        } else {
            out << indent << it.key() << ": " << scalar_text(v) << '\n';
        }
    }
}

void emit(const Settings& s, const Json& j, std::ostream& out)
{
    if (s.format == "json") {
        out << j.dump(2) << '\n';
    } else {
        render_text(j, out);
    }
}

Json one_based(std::span<const int> v)
{
    Json a = Json::array();
    for (int x : v) {
        a.push_back(x + 1);
    }
    return a;
}

Json parents_json(const EliminationTree& t)
{
    Json a = Json::array();
    for (int v = 0; v < t.size(); ++v) {
        a.push_back(t.parent(v) + 1);
    }
    return a;
}

Json edges_json(const SparsityPattern& p)
{
    Json a = Json::array();
    for (auto [u, v] : p.edges()) {
        a.push_back({u + 1, v + 1});
    }
    return a;
}

Json triplets_json(std::span<const Triplet> t)
{
    Json a = Json::array();
    for (const Triplet& e : t) {
        a.push_back({e.row + 1, e.col + 1, e.value});
    }
    return a;
}

// ---------------------------------------------------------------------------
// check-pattern, order, extend

int cmd_check_pattern(const Settings& s, const std::string& path, std::ostream& out)
{
    SparsityPattern p = parse_pattern(read_file(path));
    Json j;
    LbfsResult r = lbfs_order(p);
    if (std::holds_alternative<TreeOrdering>(r)) {
        j["class"] = "HOMOGENEOUS_CHORDAL";
        emit(s, j, out);
        return Success;
    }
    j["class"] = chordal_ordering(p) ? "CHORDAL_ONLY" : "GENERAL";
    if (p.size() <= 64) {
        auto w = densecheck::find_forbidden_subgraph(p);
        if (w) {
            j["witness"] = {{"kind", w->kind == densecheck::ForbiddenKind::P4 ? "P4" : "C4"},
                            {"vertices", one_based(w->vertices)}};
        }
    }
    const auto& rej = std::get<LbfsRejection>(r);
    j["lbfs_certificate"] = {{"pivot", rej.pivot + 1},
                             {"neighbor", rej.neighbor + 1},
                             {"set_index", rej.set_index + 1},
                             {"pivot_set", rej.pivot_set + 1}};
    emit(s, j, out);
    return Success;
}

int cmd_order(const Settings& s, const std::string& path, std::ostream& out, std::ostream& err)
{
    SparsityPattern p = parse_pattern(read_file(path));
    LbfsResult r = lbfs_order(p);
    if (auto* rej = std::get_if<LbfsRejection>(&r)) {
        err << "error: pattern is not homogeneous chordal (vertex " << rej->neighbor + 1
            << " breaks the partition at pivot " << rej->pivot + 1 << "); try `extend`\n";
        return BadInput;
    }
    const auto& t = std::get<TreeOrdering>(r);
    Json j;
    j["sigma"] = one_based(t.ordering.sigma());
    j["parent"] = parents_json(t.etree);
    emit(s, j, out);
    return Success;
}

int cmd_extend(const Settings& s, const std::string& path, const std::string& output, std::ostream& out,
               std::ostream& err)
{
    SparsityPattern p = parse_pattern(read_file(path));
    Extension e = homogeneous_extension(p);
    const std::size_t added = e.extended.num_edges() - p.num_edges();
    err << "added " << added << " fill edges\n";
    std::string text;
    if (s.format == "json") {
        Json j;
        j["n"] = e.extended.size();
        j["edges"] = edges_json(e.extended);
        j["ordering"] = one_based(e.ordering.sigma());
        j["parent"] = parents_json(e.etree);
        j["added_edges"] = added;
        text = j.dump(2) + "\n";
    } else {
        text = format_pattern(e.extended);
    }
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream f(output);
        if (!f) {
            throw InputError("cannot write " + output);
        }
        f << text;
    }
    return Success;
}

// ---------------------------------------------------------------------------
// factor, complete

int cmd_factor(const Settings& s, const std::string& path, bool complete, std::ostream& out, std::ostream& err)
{
    MatrixFile m = parse_matrix(read_file(path));
    std::string note;
    StructurePtr st = structure_for(m.pattern, m.ordering, &note);
    if (!note.empty()) {
        err << "note: " << note << '\n';
    }
    SymSparse x = from_triplets(st, m.entries);
    Json j;
    try {
        CholFactor f = complete ? maxdet_factor(x) : cholesky(x);
        j["status"] = "ok";
        j["n"] = st->size();
        j["ordering"] = one_based(st->ordering().sigma());
        if (complete) {
            j["dual_barrier"] = dual_barrier(f);
        } else {
            j["barrier"] = barrier(f);
        }
        j["L"] = triplets_json(to_triplets(f.L));
        emit(s, j, out);
        return Success;
    } catch (const NotPositiveDefinite& e) {
        j["status"] = "not_positive_definite";
        j["node"] = e.vertex() + 1;
    } catch (const NotCompletable& e) {
        j["status"] = "not_completable";
        j["node"] = e.vertex() + 1;
    }
    emit(s, j, out);
    err << "error: " << j["status"].get<std::string>() << " at node " << j["node"].get<int>() << '\n';
    return NumericalFailure;
}

// ---------------------------------------------------------------------------
// solve

SolverOptions solver_options(const Settings& s)
{
    SolverOptions o;
    if (s.tol) {
        o.tol_gap = *s.tol;
        o.tol_feas = *s.tol;
    }
    o.gamma = s.gamma;
    if (s.max_iter) {
        o.max_iter = *s.max_iter;
    }
    if (s.eta) {
        o.eta = *s.eta;
    }
    return o;
}

int cmd_solve(const Settings& s, const std::string& path, bool sdpa, std::ostream& out, std::ostream& err)
{
    std::string text = read_file(path);
    const bool is_sdpa = sdpa || path.ends_with(".dat-s");
    LoadedProblem lp = is_sdpa ? parse_sdpa(text) : parse_problem(text);
    for (const std::string& n : lp.notes) {
        err << "note: " << n << '\n';
    }
    SolverOptions o = solver_options(s);
    std::ofstream trace;
    if (!s.trace.empty()) {
        trace.open(s.trace);
        if (!trace) {
            throw InputError("cannot write " + s.trace);
        }
        o.on_iteration = [&](const TraceRecord& r) { trace << trace_record_json(r) << '\n'; };
    }
    SolveReport report = solve(lp.problem, o);
    Json j = Json::parse(solve_report_json(lp.problem, report));
    emit(s, j, out);
    if (report.status != SolveStatus::Optimal) {
        err << "error: solver finished with status " << to_string(report.status) << '\n';
        return NumericalFailure;
    }
    return Success;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const Settings& s, const std::string& kind, int n, int m, double branching, std::ostream& out)
{
    RandomPattern rp = random_homogeneous_pattern(n, s.seed, branching);
    if (kind == "pattern") {
        if (s.format == "json") {
            Json j;
            j["n"] = n;
            j["edges"] = edges_json(rp.pattern);
            out << j.dump(2) << '\n';
        } else {
            out << format_pattern(rp.pattern);
        }
        return Success;
    }
    StructurePtr st = SymbolicStructure::create(rp.pattern, rp.ordering);
    CertifiedProblem cp = random_certified_problem(st, m, s.seed);
    if (kind == "matrix") {
        std::vector<Triplet> t = to_triplets(cp.x_feasible);
        if (s.format == "json") {
            Json j;
            j["n"] = n;
            j["edges"] = edges_json(rp.pattern);
            j["entries"] = triplets_json(t);
            out << j.dump(2) << '\n';
        } else {
            out << format_matrix_text(rp.pattern, t);
        }
        return Success;
    }
    Json j = Json::parse(serialize_problem(cp.problem));
    j["bounds"] = {{"lower", cp.lower_bound}, {"upper", cp.upper_bound}};
    out << j.dump(2) << '\n';
    return Success;
}

// ---------------------------------------------------------------------------
// selftest

struct Check {
    std::string name;
    bool pass;
    double worst;
};

SymSparse random_primal(const StructurePtr& st, Rng& rng)
{
    LowerSparse l(st);
    for (int k = 0; k < st->size(); ++k) {
        auto col = l.column(k);
        col[0] = rng.uniform(0.5, 1.5);
        for (std::size_t t = 1; t < col.size(); ++t) {
            col[t] = 0.3 * rng.normal();
        }
    }
    return forward_map(l, SymSparse::identity(st));
}

SymSparse random_dual(const StructurePtr& st, Rng& rng)
{
    const int n = st->size();
    Eigen::MatrixXd b(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            b(i, j) = rng.normal() / std::sqrt(static_cast<double>(n));
        }
    }
    Eigen::MatrixXd z = b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    return project(0.5 * (z + z.transpose()), st);
}

SymSparse random_sym(const StructurePtr& st, Rng& rng)
{
    SymSparse x(st);
    for (double& v : x.values()) {
        v = rng.normal();
    }
    return x;
}

double rel_dense(const SymSparse& got, const densecheck::Dense& want)
{
    return densecheck::max_abs_diff(densecheck::from_sparse(got), want) / std::max(1.0, want.max_abs());
}

std::vector<Check> run_selftest(std::uint64_t seed, int trials)
{
    namespace dc = densecheck;
    std::vector<Check> checks;
    auto run = [&](const std::string& name, double tol, const std::function<double(Rng&, int)>& f) {
        Rng rng(seed);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            worst = std::max(worst, f(rng, t));
        }
        checks.push_back({name, worst <= tol, worst});
    };
    auto structure = [&](Rng& rng, int max_n) {
        RandomPattern r = random_homogeneous_pattern(1 + rng.index(max_n), rng.bits(), 0.85);
        return SymbolicStructure::create(r.pattern, r.ordering);
    };

    run("lbfs-recognition", 0.0, [](Rng& rng, int) {
        const int n = 2 + rng.index(8);
        std::vector<Edge> e;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.bernoulli(0.5)) {
                    e.emplace_back(i, j);
                }
            }
        }
        SparsityPattern p(n, e);
        bool accepted = std::holds_alternative<TreeOrdering>(lbfs_order(p));
        return accepted == !dc::find_forbidden_subgraph(p).has_value() ? 0.0 : 1.0;
    });
    run("lbfs-ordering", 0.0, [](Rng& rng, int) {
        RandomPattern r = random_homogeneous_pattern(1 + rng.index(60), rng.bits());
        LbfsResult res = lbfs_order(r.pattern);
        if (!std::holds_alternative<TreeOrdering>(res)) {
            return 1.0;
        }
        const auto& t = std::get<TreeOrdering>(res);
        bool ok = verify_ordering(r.pattern, t.ordering) == OrderingClass::TriviallyPerfectPEO &&
                  is_postordering(t.etree, t.ordering);
        return ok ? 0.0 : 1.0;
    });
    run("cholesky", 1e-10, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 30);
        SymSparse x = random_primal(st, rng);
        dc::Dense l = dc::from_sparse(cholesky(x).L);
        dc::Dense want = dc::dense_chol(dc::to_positions(dc::from_sparse(x), st->ordering()));
        return dc::max_abs_diff(l, want) / std::max(1.0, want.max_abs());
    });
    run("projected-inverse", 1e-10, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 30);
        SymSparse x = random_primal(st, rng);
        dc::Dense inv = dc::dense_inverse(dc::from_sparse(x));
        return rel_dense(projected_inverse(cholesky(x)), dc::project(inv, st->pattern()));
    });
    run("maxdet-completion", 1e-9, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 30);
        SymSparse s = random_dual(st, rng);
        dc::Dense xhat = dc::from_sparse(dual_gradient(maxdet_factor(s)));
        dc::Dense y = dc::project(dc::dense_inverse(xhat), st->pattern());
        return dc::max_abs_diff(y, dc::from_sparse(s)) / std::max(1.0, y.max_abs());
    });
    run("hessian-finite-difference", 1e-5, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 30);
        SymSparse x = random_primal(st, rng);
        SymSparse y = random_sym(st, rng);
        const double h = 1e-5;
        SymSparse fd = (1.0 / (2 * h)) * (projected_inverse(cholesky(x - h * y)) - projected_inverse(cholesky(x + h * y)));
        SymSparse hy = hess_apply(cholesky(x), y);
        return norm(fd - hy) / norm(hy);
    });
    run("scaling-point", 1e-7, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 12);
        SymSparse x = random_primal(st, rng);
        SymSparse s = random_dual(st, rng);
        SymSparse w = scaling_point(x, s).w;
        return rel_dense(w, dc::dense_scaling_point(x, s));
    });
    run("bfgs-equations", 1e-10, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 30);
        SymSparse x = random_primal(st, rng);
        SymSparse s = random_dual(st, rng);
        ScalingState state = shadow_state(x, s);
        PdFactor pd = pd_factor(scaling_point(x, s, {1e-13, 100}).w, x, s);
        ScalingOperator op = bfgs_update(pd.op, state);
        double worst = norm(op.apply(ApplyMode::Inverse, x) - op.v()) / norm(op.v());
        worst = std::max(worst, norm(op.apply(ApplyMode::Adjoint, s) - op.v()) / norm(op.v()));
        if (op.corrected()) {
            double scale = std::max(norm(*op.v_hat()), 1e-3 * norm(op.v()));
            worst = std::max(worst, norm(op.apply(ApplyMode::Inverse, state.delta_p) - *op.v_hat()) / scale);
            worst = std::max(worst, norm(op.apply(ApplyMode::Adjoint, state.delta_d) - *op.v_hat()) / scale);
        }
        return worst;
    });
    run("solve-certified", 1e-7, [&](Rng& rng, int) {
        StructurePtr st = structure(rng, 20);
        const int m = 1 + rng.index(std::min<int>(8, static_cast<int>(st->nnz())));
        CertifiedProblem cp = random_certified_problem(st, m, rng.bits());
        SolveReport r = solve(cp.problem);
        if (r.status != SolveStatus::Optimal) {
            return 1.0;
        }
        double slack = std::max(cp.lower_bound - r.primal_objective, r.primal_objective - cp.upper_bound);
        return std::max(0.0, slack) / (1.0 + std::abs(r.primal_objective));
    });
    return checks;
}

int cmd_selftest(const Settings& s, int trials, std::ostream& out)
{
    std::vector<Check> checks = run_selftest(s.seed, trials);
    bool all = true;
    if (s.format == "json") {
        Json arr = Json::array();
        for (const Check& c : checks) {
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"worst", c.worst}});
            all = all && c.pass;
        }
        Json j;
        j["seed"] = s.seed;
        j["trials"] = trials;
        j["checks"] = arr;
        j["pass"] = all;
        out << j.dump(2) << '\n';
    } else {
        for (const Check& c : checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name << " (worst " << Json(c.worst).dump() << ")\n";
            all = all && c.pass;
        }
    }
    return all ? Success : NumericalFailure;
}

// ---------------------------------------------------------------------------
// bench

template <class F>
double best_seconds(int repeat, F&& f)
{
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

int cmd_bench(const Settings& s, const std::vector<int>& sizes, int repeat, double branching, std::ostream& out)
{
    Json rows = Json::array();
    for (int n : sizes) {
        RandomPattern rp = random_homogeneous_pattern(n, s.seed, branching);
        double t_lbfs = best_seconds(repeat, [&] {
            volatile bool ok = std::holds_alternative<TreeOrdering>(lbfs_order(rp.pattern));
            (void)ok;
        });
        StructurePtr st = SymbolicStructure::create(rp.pattern, rp.ordering);
        Rng rng(s.seed);
        SymSparse x = random_primal(st, rng);
        FrontalWorkspace ws(*st);
        double t_chol = best_seconds(repeat, [&] { cholesky(x, ws); });
        rows.push_back({{"n", n},
                        {"edges", rp.pattern.num_edges()},
                        {"nnz", st->nnz()},
                        {"lbfs_seconds", t_lbfs},
                        {"cholesky_seconds", t_chol}});
    }
    if (s.format == "json") {
        Json j;
        j["seed"] = s.seed;
        j["results"] = rows;
        out << j.dump(2) << '\n';
    } else {
        out << "n edges nnz lbfs_seconds cholesky_seconds\n";
        for (const Json& r : rows) {
            out << r["n"].dump() << ' ' << r["edges"].dump() << ' ' << r["nnz"].dump() << ' '
                << r["lbfs_seconds"].dump() << ' ' << r["cholesky_seconds"].dump() << '\n';
        }
    }
    return Success;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Homogeneous chordal sparse matrix cones: recognition, factorization and conic solver", "homcone"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_option("--format", s.format, "Output encoding")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol", s.tol, "Solver gap and feasibility tolerance")->check(CLI::PositiveNumber);
    app.add_option("--gamma", s.gamma, "Fixed centering parameter (adaptive when omitted)")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--max-iter", s.max_iter, "Solver iteration limit")->check(CLI::PositiveNumber);
    app.add_option("--eta", s.eta, "Step fraction in (0, 1)")->check(CLI::Range(1e-6, 1.0 - 1e-12));
    app.add_option("--seed", s.seed, "Random seed");
    app.add_option("--trace", s.trace, "Write one JSON object per solver iteration to FILE");

    std::string path;
    auto* check = app.add_subcommand("check-pattern", "Classify a pattern: HOMOGENEOUS_CHORDAL, CHORDAL_ONLY or GENERAL");
    check->add_option("file", path, "Pattern file")->required();
    auto* order = app.add_subcommand("order", "Print the LBFS ordering and elimination tree");
    order->add_option("file", path, "Pattern file")->required();
    std::string output;
    auto* extend = app.add_subcommand("extend", "Write a homogeneous chordal extension of a pattern");
    extend->add_option("file", path, "Pattern file")->required();
    extend->add_option("-o,--output", output, "Output file (default stdout)");
    auto* factor = app.add_subcommand("factor", "Cholesky factor of a matrix file");
    factor->add_option("file", path, "Matrix file")->required();
    auto* complete = app.add_subcommand("complete", "Maximum-determinant completion factor of a matrix file");
    complete->add_option("file", path, "Matrix file")->required();
    bool sdpa = false;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a conic problem file");
    solve_cmd->add_option("file", path, "Problem file (JSON, or SDPA sparse with --sdpa or .dat-s)")->required();
    solve_cmd->add_flag("--sdpa", sdpa, "Read SDPA sparse format");
    std::string kind;
    int gen_n = 10;
    int gen_m = 3;
    double branching = 0.95;
    auto* gen = app.add_subcommand("gen", "Generate a random pattern, matrix or certified problem");
    gen->add_option("kind", kind, "pattern | matrix | problem")
        ->required()
        ->check(CLI::IsMember({"pattern", "matrix", "problem"}));
    gen->add_option("-n,--n", gen_n, "Number of vertices")->check(CLI::PositiveNumber);
    gen->add_option("-m,--m", gen_m, "Number of constraints")->check(CLI::NonNegativeNumber);
    gen->add_option("--branching", branching, "Probability that a vertex joins the current tree")
        ->check(CLI::Range(0.0, 1.0));
    int trials = 20;
    auto* selftest = app.add_subcommand("selftest", "Run the randomized property suite against dense oracles");
    selftest->add_option("--trials", trials, "Instances per property")->check(CLI::PositiveNumber);
    std::vector<int> sizes{1000, 10000, 100000};
    int repeat = 5;
    auto* bench = app.add_subcommand("bench", "Time lbfs_order and cholesky across sizes");
    bench->add_option("--sizes", sizes, "Vertex counts")->check(CLI::PositiveNumber);
    bench->add_option("--repeat", repeat, "Repetitions per size (best is reported)")->check(CLI::PositiveNumber);
    bench->add_option("--branching", branching, "Probability that a vertex joins the current tree")
        ->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        out << app.help();
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return Usage;
    }

    try {
        if (*check) {
            return cmd_check_pattern(s, path, out);
        }
        if (*order) {
            return cmd_order(s, path, out, err);
        }
        if (*extend) {
            return cmd_extend(s, path, output, out, err);
        }
        if (*factor) {
            return cmd_factor(s, path, false, out, err);
        }
        if (*complete) {
            return cmd_factor(s, path, true, out, err);
        }
        if (*solve_cmd) {
            return cmd_solve(s, path, sdpa, out, err);
        }
        if (*gen) {
            return cmd_gen(s, kind, gen_n, gen_m, branching, out);
        }
        if (*selftest) {
            return cmd_selftest(s, trials, out);
        }
        if (*bench) {
            return cmd_bench(s, sizes, repeat, branching, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return NumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return NumericalFailure;
    }
    return Usage;
}

}  // namespace homcone::cli

// greedyldp: simulate the greedy exploration of sparse random graphs, compute
// the exact stop-time law, and evaluate the large-deviation rate machinery.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "greedyldp/greedyldp.hpp"
#include "greedyldp/selfcheck/checks.hpp"

namespace {

using greedyldp::format17;
using json = nlohmann::json;

using Cell = std::variant<long, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Output {
    json meta = json::object();
    std::vector<Table> tables;
};

std::string cell_to_csv(const Cell& c) {
    if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
    if (std::holds_alternative<double>(c)) return format17(std::get<double>(c));
    return std::get<std::string>(c);
}

json cell_to_json(const Cell& c) {
    if (std::holds_alternative<long>(c)) return std::get<long>(c);
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    return std::get<std::string>(c);
}

void render_csv(std::ostream& os, const Output& out) {
    bool first = true;
    for (const auto& t : out.tables) {
        if (!first) os << '\n';
        first = false;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell_to_csv(row[i]);
            os << '\n';
        }
    }
}

void render_json(std::ostream& os, const Output& out) {
    json root;
    root["meta"] = out.meta;
    if (!out.tables.empty()) {
        root["columns"] = out.tables.front().columns;
        json rows = json::array();
        for (const auto& row : out.tables.front().rows) {
            json r = json::array();
            for (const auto& c : row) r.push_back(cell_to_json(c));
            rows.push_back(std::move(r));
        }
        root["rows"] = std::move(rows);
        for (std::size_t i = 1; i < out.tables.size(); ++i) {
            json t;
            t["columns"] = out.tables[i].columns;
            json rows2 = json::array();
            for (const auto& row : out.tables[i].rows) {
                json r = json::array();
                for (const auto& c : row) r.push_back(cell_to_json(c));
                rows2.push_back(std::move(r));
            }
            t["rows"] = std::move(rows2);
            root["tables"][out.tables[i].name] = std::move(t);
        }
    }
    os << root.dump(2) << '\n';
}

void emit(const Output& out, const std::string& format, const std::string& out_path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
        os = &file;
    }
    if (format == "json") render_json(*os, out);
    else render_csv(*os, out);
}

long dp_cap_from_env() {
    if (const char* e = std::getenv("GREEDYLDP_DP_CAP")) {
        const long cap = std::strtol(e, nullptr, 10);
        if (cap >= 1) return cap;
        throw std::invalid_argument("GREEDYLDP_DP_CAP must be a positive integer");
    }
    return 2000;
}

greedyldp::TailSide parse_side(const std::string& s) {
    if (s == "upper") return greedyldp::TailSide::upper;
    if (s == "lower") return greedyldp::TailSide::lower;
    throw std::invalid_argument("--side must be 'upper' or 'lower'");
}

// ------------------------------------------------------------- simulate

int cmd_simulate(bool graph_mode, long n, double c, std::uint64_t seed, long reps, bool paths,
                 const std::string& format, const std::string& out_path) {
    using namespace greedyldp;
    const ModelParams params(c, n);
    Output out;
    out.meta["command"] = graph_mode ? "simulate graph" : "simulate chain";
    out.meta["flags"] = {{"n", n}, {"c", c}, {"reps", reps}, {"paths", paths}};
    out.meta["seed"] = seed;

    Table main_table;
    main_table.name = "stop_times";
    main_table.columns = graph_mode
                             ? std::vector<std::string>{"rep", "stop_time", "independent", "maximal"}
                             : std::vector<std::string>{"rep", "stop_time"};
    Table path_table;
    path_table.name = "paths";
    path_table.columns = {"rep", "k", "z"};

    bool all_verified = true;
    for (long r = 0; r < reps; ++r) {
        std::vector<long> z;
        long stop = 0;
        if (graph_mode) {
            const Graph g = sample_er_graph(params, derive_seed(seed, 2 * static_cast<std::uint64_t>(r)));
            const auto rec = greedy_explore(g, derive_seed(seed, 2 * static_cast<std::uint64_t>(r) + 1));
            const auto chk = verify_independent_maximal(g, rec.active);
            if (!chk.independent || !chk.maximal) all_verified = false;
            main_table.rows.push_back({r, rec.stop_time, static_cast<long>(chk.independent),
                                       static_cast<long>(chk.maximal)});
            z = rec.z_steps;
            stop = rec.stop_time;
        } else {
            const auto traj = simulate_chain(params, derive_seed(seed, static_cast<std::uint64_t>(r)));
            main_table.rows.push_back({r, traj.stop_time});
            z = traj.z;
            stop = traj.stop_time;
        }
        if (paths)
            for (long k = 0; k <= stop; ++k)
                path_table.rows.push_back({r, k, z[static_cast<std::size_t>(k)]});
    }
    out.tables.push_back(std::move(main_table));
    if (paths) out.tables.push_back(std::move(path_table));
    emit(out, format, out_path);
    if (graph_mode && !all_verified) {
        std::cerr << "simulate graph: an exploration produced a set that is not independent+maximal\n";
        return 1;
    }
    return 0;
}

// ----------------------------------------------------------------- dist

int cmd_dist(long n, double c, std::optional<double> tail, const std::string& side_str,
             const std::string& format, const std::string& out_path) {
    using namespace greedyldp;
    const auto dist = exact_stop_time_distribution(ModelParams(c, n), dp_cap_from_env());
    Output out;
    out.meta["command"] = "dist exact";
    out.meta["flags"] = {{"n", n}, {"c", c}};
    out.meta["seed"] = nullptr;

    Table t;
    t.name = "pmf";
    t.columns = {"k", "pmf", "log_pmf"};
    for (long k = 1; k <= n; ++k)
        t.rows.push_back({k, dist.pmf[static_cast<std::size_t>(k)],
                          dist.log_pmf[static_cast<std::size_t>(k)]});
    out.tables.push_back(std::move(t));

    if (tail) {
        out.meta["flags"]["tail"] = *tail;
        out.meta["flags"]["side"] = side_str;
        Table tt;
        tt.name = "tail";
        tt.columns = {"threshold", "side", "log_prob"};
        tt.rows.push_back({*tail, side_str, tail_log_prob(dist, *tail, parse_side(side_str))});
        out.tables.push_back(std::move(tt));
    }
    emit(out, format, out_path);
    return 0;
}

// ----------------------------------------------------------------- rate

int cmd_rate_traj(double c, double alpha0, long grid, const std::string& format,
                  const std::string& out_path) {
    using namespace greedyldp;
    const HamTrajectory traj = make_ham_trajectory(c, alpha0);
    Output out;
    out.meta["command"] = "rate traj";
    out.meta["flags"] = {{"c", c}, {"alpha0", alpha0}, {"grid", grid}};
    out.meta["exit_time"] = traj.exit_time;
    if (traj.singular_time) out.meta["singular_time"] = *traj.singular_time;
    if (traj.bracket_extended)
        std::cerr << "warning: exit-time bracket extended past t=1 (alpha0=" << alpha0 << ")\n";

    Table t;
    t.name = "trajectory";
    t.columns = {"t", "x", "alpha", "L_integrand"};
    for (long i = 0; i <= grid; ++i) {
        const double tt = traj.exit_time * static_cast<double>(i) / static_cast<double>(grid);
        const double x = std::min(1.0, std::max(0.0, traj.x(tt)));
        t.rows.push_back({tt, x, traj.alpha(tt), traj.rate_integrand(tt)});
    }
    out.tables.push_back(std::move(t));
    emit(out, format, out_path);
    return 0;
}

int cmd_rate_F(double c, double a_min, double a_max, long steps, const std::string& format,
               const std::string& out_path) {
    using namespace greedyldp;
    if (steps < 2) throw std::invalid_argument("--steps must be at least 2");
    Output out;
    out.meta["command"] = "rate F";
    out.meta["flags"] = {{"c", c}, {"alpha0-min", a_min}, {"alpha0-max", a_max}, {"steps", steps}};
    Table t;
    t.name = "F";
    t.columns = {"alpha0", "F"};
    for (long i = 0; i < steps; ++i) {
        const double a0 = a_min + (a_max - a_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        t.rows.push_back({a0, rate_F(c, a0).value.value()});
    }
    out.tables.push_back(std::move(t));
    emit(out, format, out_path);
    return 0;
}

int cmd_rate_tail(double c, double eps, const std::string& side_str, const std::string& format,
                  const std::string& out_path) {
    using namespace greedyldp;
    const auto r = tail_rate(c, eps, parse_side(side_str));
    Output out;
    out.meta["command"] = "rate tail";
    out.meta["flags"] = {{"c", c}, {"eps", eps}, {"side", side_str}};
    Table t;
    t.name = "tail_rate";
    t.columns = {"c", "eps", "side", "alpha0", "rate"};
    t.rows.push_back({c, eps, side_str, r.optimizer.value(), r.value.value()});
    out.tables.push_back(std::move(t));
    emit(out, format, out_path);
    return 0;
}

greedyldp::ScaledPath read_path_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open path file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("path file is empty");
    std::vector<double> ts, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("path file row without a comma: " + line);
        ts.push_back(greedyldp::parse_double(line.substr(0, comma)));
        vs.push_back(greedyldp::parse_double(line.substr(comma + 1)));
        if (ts.size() > 1 && !(ts[ts.size() - 1] > ts[ts.size() - 2]))
            throw std::invalid_argument("path file times must be strictly increasing");
    }
    return greedyldp::ScaledPath(std::move(ts), std::move(vs), greedyldp::Interpolation::linear);
}

int cmd_rate_path(double c, const std::string& path_file, const std::string& format,
                  const std::string& out_path) {
    using namespace greedyldp;
    const auto r = path_rate(c, read_path_csv(path_file));
    Output out;
    out.meta["command"] = "rate path";
    out.meta["flags"] = {{"c", c}, {"path-file", path_file}};
    Table t;
    t.name = "path_rate";
    t.columns = {"c", "rate"};
    t.rows.push_back({c, r.value.is_infinite() ? Cell{std::string("inf")} : Cell{r.value.value()}});
    out.tables.push_back(std::move(t));
    emit(out, format, out_path);
    return 0;
}

// --------------------------------------------------------------- bounds

int cmd_bounds(double c_min, double c_max, long steps, const std::string& which,
               const std::string& format, const std::string& out_path) {
    using namespace greedyldp;
    if (steps < 1) throw std::invalid_argument("--steps must be at least 1");
    const BoundKind kind = [&] {
        if (which == "sigma1") return BoundKind::sigma1;
        if (which == "sigma2") return BoundKind::sigma2;
        throw std::invalid_argument("--which must be 'sigma1' or 'sigma2'");
    }();
    Output out;
    out.meta["command"] = "bounds";
    out.meta["flags"] = {{"c-min", c_min}, {"c-max", c_max}, {"steps", steps}, {"which", which}};
    Table t;
    t.name = "bounds";
    t.columns = {"c", "sigma_star", "rate"};
    for (long i = 0; i < steps; ++i) {
        const double c = steps == 1 ? c_min
                                    : c_min + (c_max - c_min) * static_cast<double>(i) /
                                          static_cast<double>(steps - 1);
        const double sigma = kind == BoundKind::sigma1 ? sigma1_star(c) : sigma2_star(c);
        t.rows.push_back({c, sigma, bound_rate(c, kind).value.value()});
    }
    out.tables.push_back(std::move(t));
    emit(out, format, out_path);
    return 0;
}

// --------------------------------------------------------------- verify

int cmd_verify(bool quick, const std::string& check_name, std::optional<double> c,
               std::optional<double> alpha0, std::uint64_t seed) {
    using namespace greedyldp::checks;
    CheckOptions opts;
    opts.quick = quick;
    opts.c = c;
    opts.alpha0 = alpha0;
    opts.seed = seed;

    bool all_pass = true;
    bool found = check_name.empty();
    for (const auto& chk : all_checks()) {
        if (!check_name.empty() && check_name != chk.name) continue;
        found = true;
        if (check_name.empty() && quick && chk.slow) continue;
        const CheckResult r = chk.fn(opts);
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        std::cout.flush();
        if (!r.pass) all_pass = false;
    }
    if (!found) throw std::invalid_argument("unknown check: " + check_name);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy exploration of sparse random graphs: simulation, exact stop-time law, "
                 "and large-deviation rates"};
    app.require_subcommand(1);

    std::string format = "csv", out_path;
    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    };

    long n = 0, reps = 1, grid = 200, steps = 2;
    double c = 1.0, alpha0 = 0.0, a_min = -2.0, a_max = 2.0, eps = 0.1;
    double c_min = 0.2, c_max = 2.6;
    std::uint64_t seed = 0;
    bool paths = false, quick = false;
    std::string side = "upper", which = "sigma1", path_file, check_name;
    std::optional<double> tail_threshold, opt_c, opt_alpha0;

    auto* simulate = app.add_subcommand("simulate", "run the exploration");
    simulate->require_subcommand(1);
    for (const char* mode : {"chain", "graph"}) {
        auto* sub = simulate->add_subcommand(
            mode, std::string(mode) == "chain" ? "one-dimensional Markov chain of explored counts"
                                               : "explicit graph sampling plus greedy exploration");
        sub->add_option("--n", n, "number of vertices")->required();
        sub->add_option("--c", c, "mean-degree parameter")->required();
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--reps", reps, "number of replicas");
        sub->add_flag("--paths", paths, "also emit the full z trajectory of each replica");
        add_io(sub);
    }

    auto* dist = app.add_subcommand("dist", "exact stop-time distribution");
    auto* dist_exact = dist->add_subcommand("exact", "forward dynamic program over the chain");
    dist->require_subcommand(1);
    dist_exact->add_option("--n", n, "number of vertices")->required();
    dist_exact->add_option("--c", c, "mean-degree parameter")->required();
    double tail_val = 0.0;
    auto* tail_opt = dist_exact->add_option("--tail", tail_val, "also report log P at this threshold");
    dist_exact->add_option("--side", side, "tail side: upper or lower");
    add_io(dist_exact);

    auto* rate = app.add_subcommand("rate", "large-deviation rate machinery");
    rate->require_subcommand(1);
    auto* rt = rate->add_subcommand("traj", "closed-form extremal trajectory");
    rt->add_option("--c", c)->required();
    rt->add_option("--alpha0", alpha0)->required();
    rt->add_option("--grid", grid, "number of grid intervals");
    add_io(rt);
    auto* rf = rate->add_subcommand("F", "parametric rate over an alpha0 range");
    rf->add_option("--c", c)->required();
    rf->add_option("--alpha0-min", a_min)->required();
    rf->add_option("--alpha0-max", a_max)->required();
    rf->add_option("--steps", steps)->required();
    add_io(rf);
    auto* rtail = rate->add_subcommand("tail", "stop-time tail rate");
    rtail->add_option("--c", c)->required();
    rtail->add_option("--eps", eps)->required();
    rtail->add_option("--side", side)->required();
    add_io(rtail);
    auto* rpath = rate->add_subcommand("path", "rate functional of a piecewise-linear path");
    rpath->add_option("--c", c)->required();
    rpath->add_option("--path-file", path_file, "CSV file 't,value'")->required();
    add_io(rpath);

    auto* bounds = app.add_subcommand("bounds", "rates at the independent-set bounds");
    bounds->add_option("--c-min", c_min)->required();
    bounds->add_option("--c-max", c_max)->required();
    bounds->add_option("--steps", steps)->required();
    bounds->add_option("--which", which, "sigma1 (exact proportion, c < e) or sigma2 (c >= 3)")
        ->required();
    add_io(bounds);

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_flag("--quick", quick, "skip the Monte Carlo checks");
    verify->add_option("--check", check_name, "run a single named check");
    double vc = 0.0, va = 0.0;
    auto* vc_opt = verify->add_option("--c", vc, "override c for single-check mode");
    auto* va_opt = verify->add_option("--alpha0", va, "override alpha0 for single-check mode");
    auto* vseed_opt = verify->add_option("--seed", seed, "master seed for the Monte Carlo checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            const bool graph_mode = simulate->get_subcommands().front()->get_name() == "graph";
            return cmd_simulate(graph_mode, n, c, seed, reps, paths, format, out_path);
        }
        if (dist->parsed()) {
            if (tail_opt->count()) tail_threshold = tail_val;
            return cmd_dist(n, c, tail_threshold, side, format, out_path);
        }
        if (rate->parsed()) {
            if (rt->parsed()) return cmd_rate_traj(c, alpha0, grid, format, out_path);
            if (rf->parsed()) return cmd_rate_F(c, a_min, a_max, steps, format, out_path);
            if (rtail->parsed()) return cmd_rate_tail(c, eps, side, format, out_path);
            if (rpath->parsed()) return cmd_rate_path(c, path_file, format, out_path);
        }
        if (bounds->parsed()) return cmd_bounds(c_min, c_max, steps, which, format, out_path);
        if (verify->parsed()) {
            if (vc_opt->count()) opt_c = vc;
            if (va_opt->count()) opt_alpha0 = va;
            const std::uint64_t verify_seed =
                vseed_opt->count() ? seed : greedyldp::checks::CheckOptions{}.seed;
            return cmd_verify(quick, check_name, opt_c, opt_alpha0, verify_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "segmatch/bench.hpp"
#include "segmatch/coverage.hpp"
#include "segmatch/frechet.hpp"
#include "segmatch/hausdorff.hpp"
#include "segmatch/interval_match.hpp"
#include "segmatch/io.hpp"

namespace segmatch::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag value; the message starts with the flag name.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& flag, const std::string& what) {
    if (!ok) throw UsageError(flag + ": " + what);
}

const std::map<std::string, Norm> kNorms{{"l2", Norm::L2}, {"linf", Norm::Linf}, {"l1", Norm::L1}};

struct Config {
    std::string out_path;
    std::string format = "json";

    std::string a, b, p, q, instance, out_a, out_b;
    double eps = 1.0, heps = 0.1, tx = 0.0, ty = 0.0, tol = 1e-6, beta = 0.25;
    bool horizontal_only = false, exact = false, sparse = false, weak = false, graph = false;
    std::uint64_t seed = 1;
    int n = 3;
    std::string norm = "l2";
    std::string hnorm = "linf";

    std::string algo = "all";
    std::vector<std::int64_t> sizes;
    int repeats = 1;
};

Json header(const std::string& command) {
    Json j;
    j["schema"] = "segmatch/1";
    j["command"] = command;
    return j;
}

SegmentSet load_segments(const std::string& path) { return parse_segments(read_file(path)); }

PolyChain load_chain(const std::string& path) {
    auto c = parse_chain(read_file(path));
    validate(c);
    return c;
}

std::string render(const Json& j, const std::string& format) {
    if (format == "json") return j.dump(2) + "\n";
    std::ostringstream ss;
    for (const auto& [key, value] : j.items())
        ss << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    return ss.str();
}

Json report_json(const BenchReport& r) {
    Json j;
    j["algorithm"] = r.algorithm;
    j["sizes"] = r.sizes;
    j["seconds"] = r.seconds;
    j["slope"] = r.slope;
    j["oracle_checks"] = r.oracle_checks;
    j["oracle_agreements"] = r.oracle_agreements;
    return j;
}

// Result JSON and exit code for one subcommand.
std::pair<Json, int> dispatch(const std::string& cmd, const Config& c) {
    Json j = header(cmd);
    int code = 0;
    if (cmd == "coverage-eval") {
        require(c.eps >= 0, "--eps", "must be non-negative");
        const auto A = load_segments(c.a), B = load_segments(c.b);
        j["params"] = {{"a", c.a}, {"b", c.b}, {"eps", c.eps}, {"tx", c.tx}, {"ty", c.ty}};
        j["value"] = cov_eval(A, B, c.eps, {c.tx, c.ty});
    } else if (cmd == "coverage-max") {
        require(c.eps >= 0, "--eps", "must be non-negative");
        const auto A = load_segments(c.a), B = load_segments(c.b);
        require(!A.empty(), "--a", "no segments");
        require(!B.empty(), "--b", "no segments");
        CoverageResult r;
        if (c.horizontal_only) {
            require(A.v.empty(), "--a", "vertical segments with --horizontal-only");
            require(B.v.empty(), "--b", "vertical segments with --horizontal-only");
            r = max_cov_horizontal(A.h, B.h, c.eps);
        } else {
            r = max_cov_axis_parallel(A, B, c.eps);
        }
        j["params"] = {{"a", c.a}, {"b", c.b}, {"eps", c.eps}, {"horizontal_only", c.horizontal_only}};
        j["tx"] = r.t_star.dx;
        j["ty"] = r.t_star.dy;
        j["value"] = r.value;
    } else if (cmd == "gen-lowerbound") {
        require(c.n >= 2, "--n", "must be at least 2");
        const auto inst = gen_lower_bound(c.n);
        write_file(c.out_a, serialize_segments(inst.A));
        write_file(c.out_b, serialize_segments(inst.B));
        j["params"] = {{"n", c.n}, {"out_a", c.out_a}, {"out_b", c.out_b}};
        j["eps"] = inst.eps;
        j["a_segments"] = inst.A.size();
        j["b_segments"] = inst.B.size();
    } else if (cmd == "hausdorff-vtrans") {
        require(c.hnorm == "linf", "--norm", "only linf is supported for hausdorff-vtrans");
        const auto A = load_segments(c.a), B = load_segments(c.b);
        require(A.v.empty() && !A.h.empty(), "--a", "expected a nonempty set of horizontal segments");
        require(B.v.empty() && !B.h.empty(), "--b", "expected a nonempty set of horizontal segments");
        if (!c.exact) require(c.heps > 0 && c.heps < 1, "--eps", "must be in (0, 1)");
        const auto r = c.exact ? min_vtrans_exact(A.h, B.h) : min_vtrans_approx(A.h, B.h, c.heps, c.seed);
        j["params"] = {{"a", c.a}, {"b", c.b}, {"eps", c.heps}, {"exact", c.exact}, {"seed", c.seed},
                       {"norm", c.hnorm}};
        j["delta"] = r.delta;
        j["rho"] = r.rho;
        j["mode"] = c.exact ? "exact" : "approx";
    } else if (cmd == "interval-match") {
        auto inst = parse_interval_instance(read_file(c.instance));
        if (c.sparse) inst.sparse = true;
        const auto r = interval_match(inst, c.seed);
        j["params"] = {{"instance", c.instance}, {"sparse", inst.sparse}, {"seed", c.seed}};
        j["shifts"] = r.shifts;
        j["count"] = r.shifts.size();
        code = r.shifts.empty() ? 1 : 0;
    } else if (cmd == "frechet-decide") {
        require(c.eps >= 0, "--eps", "must be non-negative");
        require(!(c.weak && c.graph), "--graph", "cannot be combined with --weak");
        const auto P = load_chain(c.p), Q = load_chain(c.q);
        const Norm norm = kNorms.at(c.norm);
        const bool ok = c.weak ? decide_weak_frechet(P, Q, c.eps, norm)
                        : c.graph ? graph_decide(P, Q, c.eps, norm)
                                  : decide_frechet(P, Q, c.eps, norm);
        j["params"] = {{"p", c.p}, {"q", c.q}, {"eps", c.eps}, {"weak", c.weak}, {"graph", c.graph},
                       {"norm", c.norm}};
        j["decision"] = ok;
        code = ok ? 0 : 1;
    } else if (cmd == "frechet-value") {
        require(c.tol > 0, "--tol", "must be positive");
        const auto P = load_chain(c.p), Q = load_chain(c.q);
        const Norm norm = kNorms.at(c.norm);
        j["params"] = {{"p", c.p}, {"q", c.q}, {"tol", c.tol}, {"weak", c.weak}, {"norm", c.norm}};
        j["value"] = c.weak ? weak_frechet_value(P, Q, c.tol, norm) : frechet_value(P, Q, c.tol, norm);
    } else if (cmd == "frechet-translate") {
        require(c.beta > 0, "--beta", "must be positive");
        require(c.tol > 0, "--tol", "must be positive");
        const auto P = load_chain(c.p), Q = load_chain(c.q);
        const auto r = min_frechet_translation_approx(P, Q, c.beta, c.tol, kNorms.at(c.norm));
        j["params"] = {{"p", c.p}, {"q", c.q}, {"beta", c.beta}, {"tol", c.tol}, {"norm", c.norm}};
        j["tx"] = r.t.dx;
        j["ty"] = r.t.dy;
        j["value"] = r.value;
        j["anchor_value"] = r.anchor_value;
        j["step"] = r.step;
        j["grid_points"] = r.grid_points;
    } else if (cmd == "bench") {
        require(c.repeats >= 1, "--repeats", "must be at least 1");
        require(c.sizes.empty() || c.sizes.size() >= 3, "--sizes", "need at least 3 sizes");
        require(c.sizes.empty() || c.algo != "all", "--sizes", "pick one --algo when giving sizes");
        for (auto s : c.sizes) require(s >= 2, "--sizes", "sizes must be at least 2");
        Json reports = Json::array();
        if (c.algo == "coverage" || c.algo == "all") {
            const std::vector<std::int64_t> sizes = c.sizes.empty() ? std::vector<std::int64_t>{200, 400, 800} : c.sizes;
            require(c.eps >= 0, "--eps", "must be non-negative");
            reports.push_back(report_json(bench_coverage(sizes, c.seed, c.eps, c.repeats)));
        }
        if (c.algo == "interval" || c.algo == "all") {
            const std::vector<std::int64_t> sizes =
                c.sizes.empty() ? std::vector<std::int64_t>{2048, 8192, 32768} : c.sizes;
            reports.push_back(report_json(bench_interval_match(sizes, c.seed, c.repeats)));
        }
        j["params"] = {{"algo", c.algo}, {"sizes", c.sizes}, {"seed", c.seed}, {"repeats", c.repeats},
                       {"eps", c.eps}};
        j["reports"] = reports;
    }
    return {j, code};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Segment and chain matching under translation", "segmatch"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", c.out_path, "Write the result here instead of stdout");
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto pair_options = [&](CLI::App* s, std::string& x, std::string& y, const char* fx, const char* fy) {
        s->add_option(fx, x, "First input (JSON)")->required()->check(CLI::ExistingFile);
        s->add_option(fy, y, "Second input (JSON)")->required()->check(CLI::ExistingFile);
    };
    auto norm_option = [&](CLI::App* s) {
        s->add_option("--norm", c.norm, "Distance norm")->check(CLI::IsMember({"l2", "linf", "l1"}));
    };

    auto* ce = app.add_subcommand("coverage-eval", "Coverage of t + A by B");
    pair_options(ce, c.a, c.b, "--a", "--b");
    ce->add_option("--eps", c.eps)->required();
    ce->add_option("--tx", c.tx)->required();
    ce->add_option("--ty", c.ty)->required();

    auto* cm = app.add_subcommand("coverage-max", "Translation maximizing coverage");
    pair_options(cm, c.a, c.b, "--a", "--b");
    cm->add_option("--eps", c.eps)->required();
    cm->add_flag("--horizontal-only", c.horizontal_only);

    auto* gl = app.add_subcommand("gen-lowerbound", "Write the quartic lower-bound instance");
    gl->add_option("--n", c.n)->required();
    gl->add_option("--out-a", c.out_a)->required();
    gl->add_option("--out-b", c.out_b)->required();

    auto* hv = app.add_subcommand("hausdorff-vtrans", "Vertical shift minimizing h(A, B)");
    pair_options(hv, c.a, c.b, "--a", "--b");
    hv->add_option("--eps", c.heps);
    hv->add_flag("--exact", c.exact);
    hv->add_option("--seed", c.seed);
    hv->add_option("--norm", c.hnorm, "Distance norm (linf)");

    auto* im = app.add_subcommand("interval-match", "Shifts where the pattern fits the text");
    im->add_option("--instance", c.instance)->required()->check(CLI::ExistingFile);
    im->add_flag("--sparse", c.sparse);
    im->add_option("--seed", c.seed);

    auto* fd = app.add_subcommand("frechet-decide", "Is the Frechet distance at most eps");
    pair_options(fd, c.p, c.q, "--p", "--q");
    fd->add_option("--eps", c.eps)->required();
    fd->add_flag("--weak", c.weak);
    fd->add_flag("--graph", c.graph);
    norm_option(fd);

    auto* fv = app.add_subcommand("frechet-value", "Frechet distance by bisection");
    pair_options(fv, c.p, c.q, "--p", "--q");
    fv->add_option("--tol", c.tol);
    fv->add_flag("--weak", c.weak);
    norm_option(fv);

    auto* ft = app.add_subcommand("frechet-translate", "Approximately best translation of Q");
    pair_options(ft, c.p, c.q, "--p", "--q");
    ft->add_option("--beta", c.beta);
    ft->add_option("--tol", c.tol);
    norm_option(ft);

    auto* bn = app.add_subcommand("bench", "Runtime slopes on random instances");
    bn->add_option("--algo", c.algo)->check(CLI::IsMember({"coverage", "interval", "all"}));
    bn->add_option("--sizes", c.sizes)->delimiter(',');
    bn->add_option("--seed", c.seed);
    bn->add_option("--repeats", c.repeats);
    bn->add_option("--eps", c.eps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "segmatch: " << e.what() << "\n";
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        auto [j, code] = dispatch(cmd, c);
        const auto text = render(j, c.format);
        if (c.out_path.empty())
            out << text;
        else
            write_file(c.out_path, text);
        return code;
    } catch (const UsageError& e) {
        err << "segmatch " << cmd << ": " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "segmatch " << cmd << ": " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "segmatch " << cmd << ": " << e.what() << "\n";
    }
    return 2;
}

}  // namespace segmatch::cli

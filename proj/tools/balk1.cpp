// balk1: command-line driver. Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.

#include "balk1/balanced.hpp"
#include "balk1/json_io.hpp"
#include "balk1/loops.hpp"
#include "balk1/relindex.hpp"
#include "balk1/suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <regex>

using namespace balk1;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    int grid = 256;
    int modes = 128;
    double tol = 1e-9;
    int tail_cutoff = -1;
    double delta = 0.2;
    std::uint64_t seed = 1;
    std::string out;
};

void emit(const Common& c, const io::json& j) {
    if (c.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_json(c.out, j);
}

void require_positive(double x, const char* name) {
    if (!(x > 0)) throw CLI::ValidationError(name, "must be positive");
}

int cmd_verify_identities(const std::string& suite_path, const Common& c) {
    const auto suite = suite_path.empty() ? starpoly::parse_suite(starpoly::default_suite_text())
                                          : starpoly::load_suite(suite_path);
    const auto report = starpoly::verify_identity_suite(suite);
    int failed = 0;
    for (const auto& r : report.results)
        if (!r.certified || !r.replay_ok) {
            ++failed;
            std::cerr << "not certified: " << r.name << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
        }
    std::fprintf(stderr, "%zu identities, %d not certified, %.2f s\n", report.results.size(), failed, report.seconds);
    if (!c.out.empty()) io::write_json(c.out, io::to_json(report, suite));
    return report.all_certified() ? kPass : kFail;
}

int cmd_check_pair(const std::string& path, const Common& c) {
    const auto p = io::pair_from_json(io::read_json(path));
    const auto r = balanced::check_balanced(p.a, p.b, c.tol);
    emit(c, io::to_json(r));
    return r.balanced() ? kPass : kFail;
}

int cmd_homotopy(const std::string& kind_name, const std::string& path, const Common& c) {
    const auto kind = balanced::path_kind_from_string(kind_name);
    const auto j = io::read_json(path);
    io::json out;
    bool pass = true;
    if (j.contains("sigma1") || j.contains("plus")) {
        // Loop pair: the homotopy at every sample of the loop.
        const auto sp = io::symbol_pair_from_json(j);
        double worst = 0;
        int worst_k = 0;
        for (int k = 0; k < sp.grid(); ++k) {
            const auto& a = sp.plus.sigma1.samples[static_cast<std::size_t>(k)];
            const auto& b = sp.plus.sigma2.samples[static_cast<std::size_t>(k)];
            const auto r = balanced::validate_path(kind, a, b, c.grid, c.tol);
            if (r.max_residual > worst) {
                worst = r.max_residual;
                worst_k = k;
            }
            pass = pass && r.pass;
        }
        out = {{"kind", kind_name}, {"grid", c.grid}, {"loop_samples", sp.grid()}, {"max_residual", worst},
               {"worst_sample", worst_k}, {"pass", pass}};
    } else {
        const auto p = io::pair_from_json(j);
        const auto r = balanced::validate_path(kind, p.a, p.b, c.grid, c.tol);
        pass = r.pass;
        out = io::to_json(r);
    }
    emit(c, out);
    return pass ? kPass : kFail;
}

int cmd_example41(int p, int q, const std::string& csv, const Common& c) {
    const auto lp = loops::example_4_1(loops::turns(p), loops::turns(q), loops::default_gamma(), c.grid, c.tol);
    if (!csv.empty()) io::write_text(csv, io::det_c_csv(lp));
    emit(c, io::to_json(lp));
    return kPass;
}

int cmd_unitalize(int dim, const Common& c) {
    const auto u = numkern::random_unitary(dim, c.seed);
    const auto p = balanced::unitalization_pair(u, c.delta);
    const auto r = balanced::check_balanced(p.a, p.b, c.tol);
    io::json out = io::to_json(p);
    out["check"] = io::to_json(r);
    emit(c, out);
    return r.balanced() ? kPass : kFail;
}

relindex::PipelineOptions pipeline(const Common& c) {
    relindex::PipelineOptions o;
    o.modes = c.modes;
    o.tail_cutoff = c.tail_cutoff;
    o.grid = c.grid;
    return o;
}

void print_report(const relindex::IndexReport& r) {
    std::cerr << "analytic (svd) " << r.analytic_svd << ", analytic (fedosov) " << r.analytic_fedosov
              << ", topological " << r.topological << ": " << (r.pass ? "pass" : "FAIL " + r.failure) << "\n";
}

int cmd_index_file(const std::string& path, const Common& c) {
    const auto sp = io::symbol_pair_from_json(io::read_json(path));
    const auto r = relindex::verify_index_theorem(sp, pipeline(c));
    print_report(r);
    emit(c, io::to_json(r));
    return r.pass ? kPass : kFail;
}

int cmd_example74(const Common& c) {
    const auto sp = loops::circle_symbol_pair(1, 0, c.grid);
    const auto r = relindex::verify_index_theorem(sp, pipeline(c));
    print_report(r);
    emit(c, io::to_json(r));
    return r.pass ? kPass : kFail;
}

int cmd_sweep(const std::string& range, const std::string& csv, const Common& c) {
    static const std::regex re(R"(\s*(-?\d+):(-?\d+)\s*,\s*(-?\d+):(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(range, m, re)) throw CLI::ValidationError("--sweep", "expected p0:p1,q0:q1");
    const int p0 = std::stoi(m[1]), p1 = std::stoi(m[2]), q0 = std::stoi(m[3]), q1 = std::stoi(m[4]);
    const auto rows = relindex::sweep(p0, p1, q0, q1, c.grid, pipeline(c));
    bool pass = true;
    io::json reports = io::json::array();
    for (const auto& row : rows) {
        const bool ok = row.error.empty() && row.report.pass;
        pass = pass && ok;
        std::cerr << "p=" << row.p << " q=" << row.q << ": "
                  << (row.error.empty() ? std::to_string(row.report.analytic_svd) + " / " +
                                              std::to_string(row.report.topological)
                                        : row.error)
                  << (ok ? "" : "  FAIL") << "\n";
        io::json o = {{"p", row.p}, {"q", row.q}};
        if (row.error.empty())
            o["report"] = io::to_json(row.report);
        else
            o["error"] = row.error;
        reports.push_back(std::move(o));
    }
    const std::string table = io::sweep_csv(rows);
    if (!csv.empty())
        io::write_text(csv, table);
    else
        std::cout << table;
    if (!c.out.empty()) io::write_json(c.out, reports);
    return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balk1: balanced pairs, relative index and its verification"};
    app.require_subcommand(1);
    Common c;
    int grid_path = 101, grid_loop = 256, grid_index = 2048;
    double tol_unital = 1e-8;

    auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "Write the JSON result here instead of stdout"); };

    std::string suite_path;
    auto* vi = app.add_subcommand("verify-identities", "Certify the identity suite symbolically");
    vi->add_option("suite", suite_path, "Suite file (default: the built-in suite)");
    add_out(vi);

    std::string pair_path;
    auto* cp = app.add_subcommand("check-pair", "Check relations rel1/rel2 for a matrix pair");
    cp->add_option("pair", pair_path, "Pair JSON {dim, a, b, tol}")->required();
    cp->add_option("--tol", c.tol, "Residual tolerance");
    add_out(cp);

    std::string kind = "swap";
    auto* ho = app.add_subcommand("homotopy", "Validate a homotopy path on a pair or on every sample of a loop pair");
    ho->add_option("--kind", kind, "linear-trivial | swap | adjoint | iota-kappa");
    ho->add_option("pair", pair_path, "Pair or loop pair JSON")->required();
    ho->add_option("--grid", grid_path, "Sample points on the path");
    ho->add_option("--tol", c.tol, "Residual tolerance");
    add_out(ho);

    int p = 1, q = 0;
    std::string csv;
    auto* ex = app.add_subcommand("example41", "Loop pair U*diag(alpha, gamma)U, U*diag(beta, gamma)U");
    ex->add_option("--alpha-turns", p, "alpha = exp(4 i p t)");
    ex->add_option("--beta-turns", q, "beta = exp(4 i q t)");
    ex->add_option("--grid", grid_loop, "Loop samples");
    ex->add_option("--tol", c.tol, "Balance tolerance");
    ex->add_option("--csv", csv, "Write t, |det c|, arg det c");
    add_out(ex);

    int udim = 3;
    auto* un = app.add_subcommand("unitalize", "Balanced pair (f(u)g(u), g(u)) from a random unitary");
    un->add_option("--dim", udim, "Size of the unitary");
    un->add_option("--delta", c.delta, "Radius delta in (0, 1/3)");
    un->add_option("--seed", c.seed, "Seed of the random unitary");
    un->add_option("--tol", tol_unital, "Balance tolerance");
    add_out(un);

    auto* e74 = app.add_subcommand("example74", "Index pipeline for alpha = exp(4it), beta = 1");
    e74->add_option("--grid", grid_index, "Loop samples");
    e74->add_option("--modes", c.modes, "Fourier modes N (the pipeline also runs 2N)");
    e74->add_option("--tail-cutoff", c.tail_cutoff, "Tail cutoff M (default N/4)");
    add_out(e74);

    std::string sym_path, sweep_range;
    auto* ix = app.add_subcommand("index", "Relative index of a symbol pair, or a sweep over circle pairs");
    ix->add_option("symbol", sym_path, "Symbol pair JSON {plus, minus} or loop pair JSON");
    ix->add_option("--sweep", sweep_range, "p0:p1,q0:q1 over alpha = exp(4ipt), beta = exp(4iqt)");
    ix->add_option("--grid", grid_index, "Loop samples for --sweep");
    ix->add_option("--modes", c.modes, "Fourier modes N (the pipeline also runs 2N)");
    ix->add_option("--tail-cutoff", c.tail_cutoff, "Tail cutoff M (default N/4)");
    ix->add_option("--csv", csv, "Sweep CSV output (default stdout)");
    add_out(ix);

    try {
        app.parse(argc, argv);
        if (*ho) c.grid = grid_path;
        if (*ex) c.grid = grid_loop;
        if (*e74 || *ix) c.grid = grid_index;
        if (*un) c.tol = tol_unital;
        require_positive(c.tol, "--tol");
        if (c.grid < 2) throw CLI::ValidationError("--grid", "must be at least 2");
        if (c.modes < 4) throw CLI::ValidationError("--modes", "must be at least 4");
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*vi) return cmd_verify_identities(suite_path, c);
        if (*cp) return cmd_check_pair(pair_path, c);
        if (*ho) return cmd_homotopy(kind, pair_path, c);
        if (*ex) return cmd_example41(p, q, csv, c);
        if (*un) return cmd_unitalize(udim, c);
        if (*e74) return cmd_example74(c);
        if (*ix) {
            if (sweep_range.empty() == sym_path.empty()) {
                std::cerr << "index: give either a symbol pair file or --sweep\n";
                return kUsage;
            }
            return sweep_range.empty() ? cmd_index_file(sym_path, c) : cmd_sweep(sweep_range, csv, c);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const StageError& e) {
        std::cerr << "failed at stage " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include <repdiff/repdiff.hpp>

namespace {

struct Options {
    long r = 0;
    long s = 0;
    int base = 0;
    long min_k = 1;
    bool allow_m_zero = false;
    std::string mode = "paper";
    long precision = repdiff::default_precision;
    std::string format = "text";
    std::string out;
    long n_max = 0;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--r", o.r, "recurrence coefficient r")->required();
    cmd->add_option("--s", o.s, "recurrence coefficient s")->required();
    cmd->add_option("--base", o.base, "digit base b")->required();
    cmd->add_option("--min-k", o.min_k, "minimum repdigit length (default 1)");
    cmd->add_flag("--allow-m-zero", o.allow_m_zero, "also allow m = 0 (U_0 = 0)");
    cmd->add_option("--mode", o.mode, "bound mode: paper or rigorous")
        ->check(CLI::IsMember({"paper", "rigorous"}));
    cmd->add_option("--precision", o.precision, "working precision in bits (default 2048)");
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
}

repdiff::SolveConfig to_config(const Options& o) {
    repdiff::SolveConfig c;
    c.r = o.r;
    c.s = o.s;
    c.base = o.base;
    c.min_k = o.min_k;
    c.allow_m_zero = o.allow_m_zero;
    c.mode = o.mode == "rigorous" ? repdiff::BoundMode::rigorous : repdiff::BoundMode::paper;
    c.precision = static_cast<mpfr_prec_t>(o.precision);
    return c;
}

int deliver(const std::string& payload, const std::string& out) {
    if (out.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return 1;
    }
    f << payload;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"all representations of base-b repdigits as differences of generalized "
                 "Lucas numbers"};
    app.require_subcommand(1);

    Options o;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "bounds, reduction, exhaustive enumeration, certificates");
    add_common(solve_cmd, o);
    CLI::App* bound_cmd = app.add_subcommand("bound", "explicit first-stage bound only");
    add_common(bound_cmd, o);
    CLI::App* reduce_cmd = app.add_subcommand("reduce", "bounds plus both reduction stages");
    add_common(reduce_cmd, o);
    CLI::App* search_cmd = app.add_subcommand("search", "exhaustive sweep up to --n-max");
    add_common(search_cmd, o);
    search_cmd->add_option("--n-max", o.n_max, "sweep n = 1..n_max")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        repdiff::SolveConfig cfg = to_config(o);
        bool json = o.format == "json";
        std::string payload;
        if (solve_cmd->parsed()) {
            repdiff::SolveReport rep = repdiff::solve(cfg);
            payload = json ? repdiff::emit_report_json(rep) : repdiff::emit_report_text(rep);
        } else if (reduce_cmd->parsed()) {
            repdiff::SolveReport rep = repdiff::reduce_stages(cfg);
            payload = json ? repdiff::emit_report_json(rep) : repdiff::emit_report_text(rep);
        } else if (bound_cmd->parsed()) {
            repdiff::BoundReport br = repdiff::bound_stage(cfg);
            payload = json ? repdiff::emit_bound_json(cfg, br)
                           : repdiff::emit_bound_text(cfg, br);
        } else {
            if (o.n_max < 1) throw repdiff::parameter_error("--n-max must be >= 1");
            repdiff::SequenceParams sp(cfg.r, cfg.s); // search allows any positive discriminant
            auto sols = repdiff::enumerate_solutions(sp, cfg.base,
                                                     static_cast<unsigned long>(o.n_max),
                                                     cfg.min_k, cfg.allow_m_zero);
            payload = json
                          ? repdiff::emit_search_json(cfg, static_cast<unsigned long>(o.n_max),
                                                      sols)
                          : repdiff::emit_search_text(cfg, static_cast<unsigned long>(o.n_max),
                                                      sols);
        }
        return deliver(payload, o.out);
    } catch (const repdiff::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const repdiff::precision_exhausted_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const repdiff::reduction_failed_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

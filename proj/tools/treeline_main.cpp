#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "treeline/errors.hpp"

namespace cli = treeline::cli;

int main(int argc, char** argv) {
    CLI::App app{"Bond percolation bounds on a tree times a line"};
    app.set_version_flag("--version", cli::version_string());
    app.require_subcommand(1);

    cli::CommonOptions common;
    std::string format = "json";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json (one record per line) or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tail-tol", common.series.tail_tol, "series truncation tolerance");
        sub->add_option("--max-terms", common.series.max_terms, "series term cap");
        sub->add_option("--margin", common.series.singularity_margin,
                        "keep-out distance from singular points");
    };

    cli::SeriesOptions series;
    auto* s = app.add_subcommand("series", "evaluate Phi_p, H_p (series or continued) and h_p");
    s->add_option("--p", series.p)->required();
    s->add_option("--x", series.x);
    s->add_option("--z", series.z);
    s->add_option("--l", series.l);
    s->add_option("--fn", series.fn)->check(CLI::IsMember({"phi", "H", "Hcont", "h"}));
    s->add_flag("--check-series", series.check_series, "compare continuation with the series");
    add_common(s);

    cli::TableOptions table;
    auto* t = app.add_subcommand("table", "beta_p(n) and alpha_p(n) as CSV");
    t->add_option("--p", table.p)->required();
    t->add_option("--n", table.n);
    add_common(t);

    cli::BoundOptions bound;
    auto* b = app.add_subcommand("bound", "critical-probability bound p0(d) or the root x0(p)");
    b->add_option("--d", bound.d, "degree or range a..b");
    b->add_option("--p", bound.p);
    b->add_flag("--x0", bound.x0, "solve h_p(x) = (1-p)/p");
    b->add_option("--root-tol", bound.root_tol);
    b->add_option("--p-tol", bound.p_tol);
    add_common(b);

    cli::VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "pass/fail checks");
    v->add_option("which", verify.which, "theorem-a | theorem-b | functional-eq | limit-identity")
        ->required();
    v->add_option("--d", verify.d, "degree range for theorem-a");
    v->add_option("--eps", verify.eps);
    v->add_option("--p", verify.p);
    v->add_option("--z", verify.z);
    v->add_option("--N", verify.N);
    v->add_option("--tol", verify.tol);
    add_common(v);

    cli::SimulateOptions sim;
    auto add_sim = [&](CLI::App* sub, bool graph_flags) {
        if (graph_flags) {
            sub->add_option("--graph", sim.graph)->check(CLI::IsMember({"strip", "slab"}));
            sub->add_option("--d", sim.d);
        }
        sub->add_option("--n", sim.n);
        sub->add_option("--k", sim.k, "line truncated to levels -k..k");
        sub->add_option("--p", sim.p);
        sub->add_option("--samples", sim.samples);
        sub->add_option("--seed", sim.seed)->required();
        sub->add_option("--sweep-p", sim.sweep_p)->delimiter(',');
        sub->add_option("--sweep-k", sim.sweep_k)->delimiter(',');
        sub->add_option("--sweep-n", sim.sweep_n)->delimiter(',');
        add_common(sub);
    };
    auto* sm = app.add_subcommand("simulate", "Monte-Carlo crossing or offspring estimates");
    add_sim(sm, true);
    sm->add_flag("--exact-check", sim.exact_check, "compare with exact enumeration");
    sm->add_flag("--offspring", sim.offspring, "estimate E[X_n] on the slab");
    auto* cmp = app.add_subcommand("compare", "strip crossing estimate against alpha_p(n)");
    add_sim(cmp, false);

    // table defaults to CSV, everything else to JSON
    t->preparse_callback([&](std::size_t) { format = "csv"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        common.format = treeline::parse_output_format(format);
        common.series.validate();
        if (app.got_subcommand(s)) return cli::run_series(series, common, std::cout);
        if (app.got_subcommand(t)) return cli::run_table(table, common, std::cout);
        if (app.got_subcommand(b)) return cli::run_bound(bound, common, std::cout);
        if (app.got_subcommand(v)) return cli::run_verify(verify, common, std::cout);
        if (app.got_subcommand(sm)) return cli::run_simulate(sim, common, std::cout);
        if (app.got_subcommand(cmp)) return cli::run_compare(sim, common, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}

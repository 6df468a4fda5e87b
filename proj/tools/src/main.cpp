#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

#include "commands.hpp"
#include "logbesov/inflation.hpp"
#include "logbesov/navier_stokes.hpp"
#include "logbesov/parallel.hpp"

using namespace logbesov;
using namespace logbesov::cli;

namespace {

void add_field(CLI::App* sc, std::string& target, const char* name = "--field") {
    sc->add_option(name, target, "LBF field file")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Log-refined Besov norms and Navier-Stokes norm-inflation experiments"};
    app.require_subcommand(1);
    int threads = 0;
    std::string manifest_path;
    app.add_option("--threads", threads, "Worker threads (default: LOGBESOV_THREADS or hardware)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--manifest", manifest_path, "Where to write the run manifest");

    FieldOptions fo;
    auto* sc_field = app.add_subcommand("field", "Generate a field file or summarize one");
    sc_field->add_option("--kind", fo.kind, "taylor-green | random | random-scalar | inflation");
    sc_field->add_option("--n", fo.n, "Dimension");
    sc_field->add_option("--N", fo.N, "Grid points per axis");
    sc_field->add_option("--L", fo.L, "Box side");
    sc_field->add_option("--kmax", fo.kmax, "Largest |k_i| of random fields");
    sc_field->add_option("--amp", fo.amp, "Amplitude");
    sc_field->add_option("--seed", fo.seed, "Random seed");
    sc_field->add_option("--config", fo.config, "Inflation config (kind inflation)");
    sc_field->add_option("--out", fo.out, "Output LBF file");
    sc_field->add_option("--info", fo.info, "Print a JSON summary of this LBF file");

    NormOptions no;
    auto* sc_norm = app.add_subcommand("norm", "Log-refined Besov norm of a field");
    add_field(sc_norm, no.field);
    sc_norm->add_option("--s", no.s, "Regularity index");
    sc_norm->add_option("--sigma", no.sigma, "Logarithmic exponent");
    sc_norm->add_option("--p", no.p, "Lebesgue exponent (number or inf)");
    sc_norm->add_option("--q", no.q, "Summation exponent (number or inf)");
    sc_norm->add_option("--jmax", no.jmax, "Top block (0: largest resolved)");
    sc_norm->add_option("--blocks", no.blocks, "Restrict to these blocks, e.g. 3,4,7");
    sc_norm->add_flag("--heat", no.heat, "Also report the heat-flow characterization");
    sc_norm->add_option("--t0", no.t0, "Heat characterization endpoint");
    sc_norm->add_option("--gamma", no.gamma, "Heat characterization derivative order");
    sc_norm->add_option("--density", no.density, "Time nodes per decade for --heat");
    sc_norm->add_option("--out", no.out, "Also write the JSON record here");

    DecomposeOptions dop;
    auto* sc_lp = app.add_subcommand("lp-decompose", "Write S_0 and every dyadic block");
    add_field(sc_lp, dop.field);
    sc_lp->add_option("--out-prefix", dop.out_prefix, "Prefix of the written files")->required();
    sc_lp->add_option("--p", dop.p, "Exponent of the per-block norms");
    sc_lp->add_option("--jmax", dop.jmax, "Top block (0: largest resolved)");

    HeatOptions ho;
    auto* sc_heat = app.add_subcommand("heat", "Apply the heat semigroup");
    add_field(sc_heat, ho.field);
    sc_heat->add_option("--t", ho.t, "Time")->required();
    sc_heat->add_option("--out", ho.out, "Output LBF file")->required();

    ProjectOptions po;
    auto* sc_proj = app.add_subcommand("project", "Leray projection onto divergence-free fields");
    add_field(sc_proj, po.field);
    sc_proj->add_option("--out", po.out, "Output LBF file")->required();

    SolveOptions so;
    auto* sc_solve = app.add_subcommand("solve", "Mild Navier-Stokes solution from u0");
    add_field(sc_solve, so.u0, "--u0");
    sc_solve->add_option("--T", so.T, "Final time");
    sc_solve->add_option("--sigma", so.sigma, "Logarithmic exponent of the path norm");
    sc_solve->add_option("--q", so.q, "Time exponent of the path norm (number or inf)");
    sc_solve->add_option("--method", so.method, "picard | rk4");
    sc_solve->add_option("--tol", so.tol, "Picard tolerance on the path-norm increment");
    sc_solve->add_option("--maxiter", so.maxiter, "Picard iteration cap");
    sc_solve->add_option("--density", so.density, "Time nodes per decade");
    sc_solve->add_option("--decades", so.decades, "Decades below T covered by the time grid");
    sc_solve->add_option("--dt", so.dt, "RK4 step (default T/1000)");
    sc_solve->add_option("--snapshots", so.snapshots, "Number of LBF snapshots to keep");
    sc_solve->add_option("--out-prefix", so.out_prefix, "Prefix of the written files")->required();

    BilinearOptions bo;
    auto* sc_bil = app.add_subcommand("bilinear-check", "Measure bilinear path-norm constants");
    sc_bil->add_option("--sigma", bo.sigma, "Logarithmic exponent");
    sc_bil->add_option("--q", bo.q, "Time exponent (number or inf)");
    sc_bil->add_option("--T", bo.T, "Time horizon");
    sc_bil->add_option("--density", bo.density, "Time nodes per decade");
    sc_bil->add_option("--decades", bo.decades, "Decades below T");
    sc_bil->add_option("--field", bo.field, "Also measure on the heat flow of this field");
    sc_bil->add_option("--out", bo.out, "JSON report")->required();

    IneqOptions io;
    auto* sc_ineq = app.add_subcommand("ineq-check", "Check the weighted Hardy-type and bilinear inequalities");
    sc_ineq->add_option("--lemma", io.lemma, "2.3 | 2.4 | 2.5 (aliases hardy-log, hardy-logdamped, bilinear)")
        ->required();
    sc_ineq->add_option("--q", io.q, "Exponent (number or inf)");
    sc_ineq->add_option("--sigma", io.sigma, "Logarithmic exponent (bilinear check)");
    sc_ineq->add_option("--family", io.family, "builtin | csv:<path>");
    sc_ineq->add_option("--T", io.T, "Time horizon of the builtin family");
    sc_ineq->add_option("--density", io.density, "Nodes per decade of the builtin family");
    sc_ineq->add_option("--decades", io.decades, "Decades of the builtin family");
    sc_ineq->add_option("--out", io.out, "JSON report")->required();

    InflateOptions fo2;
    auto* sc_inf = app.add_subcommand("inflate", "Norm-inflation scaling experiment");
    sc_inf->add_option("--config", fo2.config, "JSON config")->required();
    sc_inf->add_option("--out", fo2.out, "Report CSV")->required();
    sc_inf->add_option("--summary", fo2.summary, "Summary JSON (default <out>_summary.json)");
    sc_inf->add_option("--q", fo2.q, "Override q");
    sc_inf->add_option("--variant", fo2.variant, "Override variant (main | small-q | large-q)");
    sc_inf->add_option("--sigmas", fo2.sigmas, "Override sigma list, e.g. 0,0.5,1");
    sc_inf->add_option("--t-rule", fo2.t_rule, "Override time rule (saturating | literal)");
    sc_inf->add_option("--m-range", fo2.m_range, "Override m range, e.g. 2,6");
    sc_inf->add_option("--eps", fo2.eps, "Override eps");

    AuditOptions ao;
    auto* sc_audit = app.add_subcommand("audit", "Support audit of an inflation config");
    sc_audit->add_option("--config", ao.config, "JSON config")->required();
    sc_audit->add_option("--out", ao.out, "Also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 1;
    }

    if (threads > 0) set_threads(threads);

    CLI::App* sc = app.get_subcommands().front();
    RunManifest rm(sc->get_name());
    int code = 0;
    std::string status = "ok";
    try {
        if (sc == sc_field) code = run_field(fo, rm);
        else if (sc == sc_norm) code = run_norm(no, rm);
        else if (sc == sc_lp) code = run_lp_decompose(dop, rm);
        else if (sc == sc_heat) code = run_heat(ho, rm);
        else if (sc == sc_proj) code = run_project(po, rm);
        else if (sc == sc_solve) code = run_solve(so, rm);
        else if (sc == sc_bil) code = run_bilinear_check(bo, rm);
        else if (sc == sc_ineq) code = run_ineq_check(io, rm);
        else if (sc == sc_inf) code = run_inflate(fo2, rm);
        else if (sc == sc_audit) code = run_audit(ao, rm);
        if (code == 1) status = "validation failure";
        if (code == 2) status = "numerical failure";
    } catch (const AuditFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 1;
        status = e.what();
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        code = 2;
        status = e.what();
    } catch (const std::exception& e) {
        // Bad input of every other kind: missing files, malformed JSON,
        // out-of-range parameters, unreadable LBF headers.
        std::cerr << "error: " << e.what() << "\n";
        code = 1;
        status = e.what();
    }

    try {
        rm.write(rm.resolve_path(manifest_path), code, status);
    } catch (const std::exception& e) {
        std::cerr << "warning: " << e.what() << "\n";
    }
    return code;
}

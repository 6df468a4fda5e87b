#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "logbesov/besov.hpp"
#include "logbesov/inflation.hpp"
#include "logbesov/littlewood_paley.hpp"
#include "logbesov/navier_stokes.hpp"
#include "logbesov/path_norms.hpp"

namespace logbesov::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json grid_json(const SpectralField& f) {
    const GridSpec& g = f.grid();
    return {{"n", g.n},
            {"N", g.N},
            {"L", g.L},
            {"components", f.components()},
            {"domain", f.domain() == Domain::spectral ? "spectral" : "physical"}};
}

SpectralField load_checked(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("a field file is required");
    return load_field(path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Prints to stdout and, when requested, writes the same bytes to `out`.
void emit(const json& j, const std::string& out, RunManifest& rm) {
    const std::string text = dump(j);
    std::cout << text;
    if (!out.empty()) rm.write_output(out, text);
}

void save_recorded(const SpectralField& f, const std::string& path, RunManifest& rm) {
    save_field(f, path);
    rm.record_output(path);
}

BesovParams besov_params(double s, double sigma, const std::string& p, const std::string& q, int jmax) {
    BesovParams bp;
    bp.s = s;
    bp.sigma = sigma;
    bp.p = parse_exponent(p);
    bp.q = parse_exponent(q);
    bp.jmax = jmax;
    bp.validate();
    return bp;
}

TimeGrid grid_from_times(const std::vector<double>& t) {
    if (t.size() < 8) throw std::invalid_argument("a family CSV needs at least 8 time nodes");
    const double step = std::log(t[1] / t[0]);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("family times must be increasing and positive");
        if (std::abs(std::log(t[i] / t[i - 1]) - step) > 1e-9 * std::abs(step))
            throw std::invalid_argument("family times must be log-uniform");
    }
    if (!(t[0] > 0.0)) throw std::invalid_argument("family times must be positive");
    TimeGrid g;
    g.T = t.back();
    g.decades = std::log10(t.back() / t.front());
    g.density = static_cast<int>(std::lround(static_cast<double>(t.size() - 1) / g.decades));
    g.nodes = t;
    return g;
}

std::vector<TimeSeries> read_family_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open family CSV '" + path + "'");
    std::vector<double> times;
    std::vector<std::vector<double>> cols;
    std::string line;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(parse_exponent(cell));
            } catch (const std::invalid_argument&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (times.empty() && cols.empty()) continue;  // header line
            throw std::invalid_argument("non-numeric cell in '" + path + "'");
        }
        if (row.size() < 2) throw std::invalid_argument("family CSV rows need a time and at least one series");
        if (width == 0) {
            width = row.size();
            cols.assign(width - 1, {});
        }
        if (row.size() != width) throw std::invalid_argument("ragged family CSV '" + path + "'");
        times.push_back(row[0]);
        for (std::size_t c = 1; c < width; ++c) cols[c - 1].push_back(row[c]);
    }
    const TimeGrid g = grid_from_times(times);
    std::vector<TimeSeries> out;
    for (auto& c : cols) out.emplace_back(g, std::move(c));
    return out;
}

json inequality_json(const InequalityReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"lhs", jnum(row.lhs)}, {"rhs", jnum(row.rhs)}, {"ratio", jnum(row.ratio)},
                        {"divergent", row.divergent}});
    return {{"lemma", r.lemma},
            {"q", jnum(r.q)},
            {"sigma", r.sigma},
            {"max_ratio", jnum(r.max_ratio)},
            {"declared_constant", jnum(r.declared_constant)},
            {"violations", r.violations},
            {"rows", rows}};
}

json audit_json(const AuditReport& a, const InflationConfig& cfg) {
    json conds = json::array();
    for (const auto& c : a.conditions)
        conds.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", jnum(c.margin)}, {"detail", c.detail}});
    return {{"m", cfg.m},
            {"K_A", cfg.K_A},
            {"K_B", cfg.K_B},
            {"pass", a.pass},
            {"infeasible", a.infeasible},
            {"grid_N", a.grid_N},
            {"max_component", a.max_component},
            {"conditions", conds},
            {"violations", a.violations}};
}

json fit_json(const std::map<double, SlopeFit>& fits) {
    json out = json::array();
    for (const auto& [sigma, f] : fits)
        out.push_back({{"sigma", sigma},
                       {"slope", jnum(f.slope)},
                       {"predicted", jnum(f.predicted)},
                       {"intercept", jnum(f.intercept)},
                       {"residual", jnum(f.residual)}});
    return out;
}

std::string stem_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return path.substr(0, dot);
    return path;
}

}  // namespace

// ------------------------------------------------------------------- field

int run_field(const FieldOptions& o, RunManifest& rm) {
    if (!o.info.empty()) {
        const SpectralField f = load_checked(o.info);
        rm.parameters() = {{"info", o.info}};
        rm.grid() = grid_json(f);
        const bool vector = f.components() == f.grid().n;
        json j{{"file", o.info},
               {"grid", grid_json(f)},
               {"sup_norm", lp_norm(f, kInf)},
               {"l2_norm", lp_norm(f, 2.0)},
               {"hermitian_defect", f.domain() == Domain::spectral ? hermitian_defect(f) : 0.0}};
        if (vector) j["divergence_defect"] = divergence_defect(f.domain() == Domain::spectral ? f : to_spectral(f));
        emit(j, "", rm);
        return 0;
    }
    if (o.out.empty()) throw std::invalid_argument("field needs --out (or --info)");
    rm.parameters() = {{"kind", o.kind}, {"n", o.n},       {"N", o.N},         {"L", o.L}, {"kmax", o.kmax},
                       {"amp", o.amp},   {"seed", o.seed}, {"config", o.config}, {"out", o.out}};
    SpectralField f;
    if (o.kind == "inflation") {
        if (o.config.empty()) throw std::invalid_argument("--kind inflation needs --config");
        const InflateJob job = parse_inflate_config(load_json_file(o.config));
        if (job.family.size() != 1) throw std::invalid_argument("--kind inflation needs a single configuration");
        f = build_initial_data(job.family.front());
    } else {
        const GridSpec g = make_grid(o.n, o.N, o.L);
        if (o.kind == "taylor-green")
            f = taylor_green(g, o.amp);
        else if (o.kind == "random")
            f = random_divfree(g, o.kmax, o.amp, o.seed);
        else if (o.kind == "random-scalar")
            f = random_scalar(g, o.kmax, o.amp, o.seed);
        else
            throw std::invalid_argument("unknown field kind '" + o.kind + "'");
    }
    rm.grid() = grid_json(f);
    save_recorded(f, o.out, rm);
    return 0;
}

// -------------------------------------------------------------------- norm

int run_norm(const NormOptions& o, RunManifest& rm) {
    const SpectralField f = load_checked(o.field);
    const BesovParams bp = besov_params(o.s, o.sigma, o.p, o.q, o.jmax);
    rm.parameters() = {{"field", o.field}, {"s", o.s},         {"sigma", o.sigma}, {"p", o.p},
                       {"q", o.q},         {"jmax", o.jmax},   {"blocks", o.blocks}, {"heat", o.heat},
                       {"t0", o.t0},       {"gamma", o.gamma}, {"density", o.density}};
    rm.grid() = grid_json(f);

    const bool restricted = !o.blocks.empty();
    const BesovBreakdown b =
        restricted ? besov_breakdown_restricted(f, bp, parse_int_list(o.blocks)) : besov_breakdown(f, bp);
    json blocks = json::array();
    for (const auto& [j, v] : b.block_norms)
        blocks.push_back({{"j", j}, {"block_norm", v}, {"contribution", b.contributions.at(j)}});
    json rec{{"field", o.field},
             {"grid", grid_json(f)},
             {"s", o.s},
             {"sigma", o.sigma},
             {"p", jnum(bp.p)},
             {"q", jnum(bp.q)},
             {"jmax", b.jmax},
             {"restricted", restricted},
             {"norm", jnum(b.norm)},
             {"low", b.low},
             {"blocks", blocks},
             {"truncation_residual", b.truncation_residual}};
    if (restricted) rec["empty_set"] = b.empty_set;
    if (o.heat) {
        HeatCharParams hc;
        hc.t0 = o.t0;
        hc.gamma = o.gamma;
        hc.density = o.density;
        hc.validate(o.s);
        const HeatCharBreakdown h = heat_char_breakdown(f, bp, hc);
        rec["heat"] = {{"t0", o.t0},
                       {"gamma", o.gamma},
                       {"density", o.density},
                       {"norm", jnum(h.norm)},
                       {"endpoint", h.endpoint},
                       {"integral", jnum(h.integral)}};
    }
    emit(rec, o.out, rm);
    return 0;
}

// ------------------------------------------------------------ lp-decompose

int run_lp_decompose(const DecomposeOptions& o, RunManifest& rm) {
    if (o.out_prefix.empty()) throw std::invalid_argument("--out-prefix is required");
    const SpectralField f = load_checked(o.field);
    const double p = parse_exponent(o.p);
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    const int top = default_jmax(f.grid());
    const int jmax = o.jmax > 0 ? o.jmax : top;
    if (jmax > top) throw std::invalid_argument("jmax exceeds the largest resolved block " + std::to_string(top));
    rm.parameters() = {{"field", o.field}, {"out_prefix", o.out_prefix}, {"p", o.p}, {"jmax", jmax}};
    rm.set_default_path(o.out_prefix + "_manifest.json");
    rm.grid() = grid_json(f);

    std::string csv = "block,j,p,norm\n";
    const SpectralField low = low_pass(f);
    save_recorded(low, o.out_prefix + "_S0.lbf", rm);
    csv += "S0,0," + num(p) + "," + num(lp_norm(low, p)) + "\n";
    for (int j = 1; j <= jmax; ++j) {
        const SpectralField blk = lp_block(f, j);
        save_recorded(blk, o.out_prefix + "_j" + std::to_string(j) + ".lbf", rm);
        csv += "D" + std::to_string(j) + "," + std::to_string(j) + "," + num(p) + "," + num(lp_norm(blk, p)) + "\n";
    }
    rm.write_output(o.out_prefix + "_blocks.csv", csv);
    return 0;
}

// -------------------------------------------------------- heat and project

int run_heat(const HeatOptions& o, RunManifest& rm) {
    if (o.out.empty()) throw std::invalid_argument("--out is required");
    if (!(o.t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
    const SpectralField f = load_checked(o.field);
    rm.parameters() = {{"field", o.field}, {"t", o.t}, {"out", o.out}};
    rm.grid() = grid_json(f);
    const SpectralField g = heat(f, o.t);
    save_recorded(g, o.out, rm);
    emit({{"field", o.field}, {"t", o.t}, {"sup_before", lp_norm(f, kInf)}, {"sup_after", lp_norm(g, kInf)}}, "", rm);
    return 0;
}

int run_project(const ProjectOptions& o, RunManifest& rm) {
    if (o.out.empty()) throw std::invalid_argument("--out is required");
    const SpectralField f = load_checked(o.field);
    if (f.components() != f.grid().n) throw std::invalid_argument("projection needs a vector field with n components");
    rm.parameters() = {{"field", o.field}, {"out", o.out}};
    rm.grid() = grid_json(f);
    const SpectralField s = f.domain() == Domain::spectral ? f : to_spectral(f);
    const SpectralField g = leray(s);
    save_recorded(g, o.out, rm);
    emit({{"field", o.field}, {"divergence_before", divergence_defect(s)}, {"divergence_after", divergence_defect(g)}},
         "", rm);
    return 0;
}

// ------------------------------------------------------------------- solve

int run_solve(const SolveOptions& o, RunManifest& rm) {
    if (o.out_prefix.empty()) throw std::invalid_argument("--out-prefix is required");
    if (o.method != "picard" && o.method != "rk4") throw std::invalid_argument("--method must be picard or rk4");
    if (o.snapshots < 1) throw std::invalid_argument("--snapshots must be >= 1");
    const SpectralField u0 = load_checked(o.u0);
    KatoParams kp;
    kp.sigma = o.sigma;
    kp.q = parse_exponent(o.q);
    kp.T = o.T;
    kp.validate();
    rm.parameters() = {{"u0", o.u0},           {"T", o.T},         {"sigma", o.sigma},     {"q", o.q},
                       {"method", o.method},   {"tol", o.tol},     {"maxiter", o.maxiter}, {"density", o.density},
                       {"decades", o.decades}, {"dt", o.dt},       {"snapshots", o.snapshots},
                       {"out_prefix", o.out_prefix}};
    rm.grid() = grid_json(u0);
    rm.set_default_path(o.out_prefix + "_manifest.json");

    json diag{{"u0", o.u0}, {"grid", grid_json(u0)}, {"parameters", rm.parameters()}, {"method", o.method}};
    Trajectory traj;
    bool ok = true;
    if (o.method == "picard") {
        PicardOptions opt;
        opt.tol = o.tol;
        opt.maxiter = o.maxiter;
        opt.density = o.density;
        opt.decades = o.decades;
        PicardResult res = picard_solve(u0, o.T, kp, opt);
        const auto& d = res.diagnostics;
        json incs = json::array(), ratios = json::array();
        for (double v : d.increments) incs.push_back(jnum(v));
        for (double v : d.contraction_ratios) ratios.push_back(jnum(v));
        diag["converged"] = d.converged;
        diag["status"] = d.status;
        diag["iterations"] = d.iterations;
        diag["increments"] = incs;
        diag["contraction_ratios"] = ratios;
        diag["data_xnorm"] = jnum(d.data_xnorm);
        diag["bilinear_constant"] = jnum(d.bilinear_constant);
        diag["threshold_estimate"] = jnum(d.threshold_estimate);
        ok = d.converged;
        traj = std::move(res.trajectory);
    } else {
        const double dt = o.dt > 0.0 ? o.dt : o.T / 1000.0;
        try {
            traj = rk4_reference(u0, make_time_grid(o.T, o.density, o.decades), dt);
            diag["converged"] = true;
            diag["status"] = "completed";
        } catch (const NumericalFailure& e) {
            diag["converged"] = false;
            diag["status"] = e.what();
            ok = false;
        }
        diag["dt"] = dt;
    }

    if (!traj.snapshots.empty()) {
        diag["solution_xnorm"] = jnum(xnorm(traj, kp));
        diag["divergence_defect"] = traj.divergence_defect();

        BesovParams bp;
        bp.s = -1.0;
        bp.sigma = o.sigma;
        bp.q = kp.q;
        const double eT = std::exp(1.0) * o.T;
        std::string csv = "t,sup_norm,kato_weighted,besov_norm,sigma,q\n";
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            const double t = traj.times.nodes[i];
            const double sup = lp_norm(traj.snapshots[i], kInf);
            const double w = std::sqrt(t) * std::pow(std::abs(std::log(t / eT)), o.sigma) * sup;
            csv += num(t) + "," + num(sup) + "," + num(w) + "," + num(besov_norm(traj.snapshots[i], bp)) + "," +
                   num(o.sigma) + "," + o.q + "\n";
        }
        rm.write_output(o.out_prefix + "_series.csv", csv);

        json snaps = json::array();
        const std::size_t last = traj.snapshots.size() - 1;
        std::size_t prev = static_cast<std::size_t>(-1);
        for (int k = 1; k <= o.snapshots; ++k) {
            const std::size_t idx = last - (last * static_cast<std::size_t>(o.snapshots - k)) / o.snapshots;
            if (idx == prev) continue;
            prev = idx;
            const std::string path = o.out_prefix + "_snap" + std::to_string(idx) + ".lbf";
            save_recorded(traj.snapshots[idx], path, rm);
            snaps.push_back({{"file", path}, {"node", idx}, {"t", traj.times.nodes[idx]}});
        }
        diag["snapshots"] = snaps;
    }
    rm.write_output(o.out_prefix + "_diagnostics.json", dump(diag));
    if (!ok) std::cerr << "solve: " << diag["status"].get<std::string>() << "\n";
    return ok ? 0 : 2;
}

// ---------------------------------------------------------- bilinear-check

int run_bilinear_check(const BilinearOptions& o, RunManifest& rm) {
    if (o.out.empty()) throw std::invalid_argument("--out is required");
    KatoParams kp;
    kp.sigma = o.sigma;
    kp.q = parse_exponent(o.q);
    kp.T = o.T;
    kp.validate();
    rm.parameters() = {{"sigma", o.sigma}, {"q", o.q},         {"T", o.T},         {"density", o.density},
                       {"decades", o.decades}, {"field", o.field}, {"out", o.out}};
    const TimeGrid g = make_time_grid(o.T, o.density, o.decades);
    const BilinearReport r = bilinear_constant_report(builtin_bilinear_family(g), kp);
    json ratios = json::array();
    for (double v : r.ratios) ratios.push_back(jnum(v));
    json rep{{"parameters", rm.parameters()},
             {"scalar", {{"guaranteed", r.guaranteed}, {"region", r.region}, {"max_ratio", jnum(r.max_ratio)},
                         {"ratios", ratios}}}};
    if (!o.field.empty()) {
        const SpectralField f = load_checked(o.field);
        rm.grid() = grid_json(f);
        const Trajectory h = heat_trajectory(f.domain() == Domain::spectral ? f : to_spectral(f), g);
        const BilinearXReport x = bilinear_xnorm_report(h, h, kp);
        rep["field"] = {{"file", o.field},
                        {"grid", grid_json(f)},
                        {"x_ratio", jnum(x.x_ratio)},
                        {"besov_ratio", jnum(x.besov_ratio)},
                        {"xnorm", jnum(x.xnorm_u)}};
    }
    rm.write_output(o.out, dump(rep));
    return 0;
}

// -------------------------------------------------------------- ineq-check

int run_ineq_check(const IneqOptions& o, RunManifest& rm) {
    if (o.out.empty()) throw std::invalid_argument("--out is required");
    const double q = parse_exponent(o.q);
    rm.parameters() = {{"lemma", o.lemma}, {"q", o.q},           {"sigma", o.sigma}, {"family", o.family},
                       {"T", o.T},         {"density", o.density}, {"decades", o.decades}, {"out", o.out}};

    std::vector<TimeSeries> fam;
    if (o.family == "builtin") {
        fam = builtin_family(make_time_grid(o.T, o.density, o.decades));
    } else if (o.family.rfind("csv:", 0) == 0) {
        fam = read_family_csv(o.family.substr(4));
    } else {
        throw std::invalid_argument("--family must be builtin or csv:<path>");
    }

    InequalityReport r;
    if (o.lemma == "2.3" || o.lemma == "hardy-log") {
        r = check_hardy_log(fam, q);
    } else if (o.lemma == "2.4" || o.lemma == "hardy-logdamped") {
        r = check_hardy_logdamped(fam, q);
    } else if (o.lemma == "2.5" || o.lemma == "bilinear") {
        std::vector<std::pair<TimeSeries, TimeSeries>> pairs;
        if (o.family == "builtin") {
            pairs = builtin_bilinear_family(fam.front().grid);
        } else {
            if (fam.size() % 2 != 0) throw std::invalid_argument("the bilinear check pairs CSV columns; give an even count");
            for (std::size_t i = 0; i < fam.size(); i += 2) pairs.emplace_back(fam[i], fam[i + 1]);
        }
        r = check_bilinear(pairs, o.sigma, q);
    } else {
        throw std::invalid_argument("--lemma must be 2.3, 2.4 or 2.5");
    }
    json rep = inequality_json(r);
    rep["family"] = o.family;
    rep["series"] = fam.size();
    rm.write_output(o.out, dump(rep));
    if (r.violations > 0) {
        std::cerr << "ineq-check: " << r.violations << " violation(s)\n";
        return 2;
    }
    return 0;
}

// ----------------------------------------------------------------- inflate

int run_inflate(const InflateOptions& o, RunManifest& rm) {
    if (o.config.empty()) throw std::invalid_argument("--config is required");
    if (o.out.empty()) throw std::invalid_argument("--out is required");
    nlohmann::json raw = load_json_file(o.config);
    if (!raw.is_object()) throw std::invalid_argument("config must be a JSON object");
    // Flags win over the file; drop both spellings of the key first.
    auto set = [&](const std::string& key, const nlohmann::json& v) {
        std::string dashed = key;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        raw.erase(key);
        raw.erase(dashed);
        raw[key] = v;
    };
    if (!o.q.empty()) set("q", o.q);
    if (!o.variant.empty()) set("variant", o.variant);
    if (!o.t_rule.empty()) set("t_rule", o.t_rule);
    if (o.eps > 0.0) set("eps", o.eps);
    if (!o.sigmas.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (double s : parse_list(o.sigmas)) arr.push_back(s);
        set("sigma_list", arr);
    }
    if (!o.m_range.empty()) {
        const auto r = parse_int_list(o.m_range);
        if (r.size() != 2) throw std::invalid_argument("--m-range takes lo,hi");
        raw.erase("m");
        set("m_range", r);
    }
    const InflateJob job = parse_inflate_config(raw);
    rm.parameters() = {{"config", o.config}, {"out", o.out}, {"effective", job.normalized}};

    InflationReport rep = assemble_report(measure_family(job.family), job.sigmas, job.q);
    rm.write_output(o.out, rep.to_csv());

    json summary{{"config", job.normalized}};
    json audits = json::array();
    for (std::size_t i = 0; i < rep.audits.size(); ++i) audits.push_back(audit_json(rep.audits[i], job.family[i]));
    summary["audits"] = audits;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"m", r.m},
                        {"sigma", r.sigma},
                        {"norm_u0_second_component", jnum(r.norm_u0_2)},
                        {"chain_constant", jnum(r.chain_constant)},
                        {"recombination_defect", jnum(r.recombination_defect)},
                        {"surrogate_ratio", jnum(r.surrogate_ratio)},
                        {"sign_definite", r.sign_definite}});
    summary["diagnostics"] = rows;
    summary["fits"] = {{"main", fit_json(rep.main_fit)},
                       {"cross", fit_json(rep.cross_fit)},
                       {"pressure", fit_json(rep.pressure_fit)},
                       {"full", fit_json(rep.full_fit)},
                       {"norm_u0", fit_json(rep.norm_fit)}};

    if (!job.delta_sweep.empty()) {
        const InflationConfig& cfg = job.family.front();
        if (job.family.size() != 1 || cfg.N <= 0 || cfg.N > 512)
            throw std::invalid_argument("delta_sweep needs a single configuration on a dense grid (N <= 512)");
        const RemainderSweep rs = remainder_sweep(cfg, job.delta_sweep, job.density, job.decades);
        std::string csv = "delta,remainder,iterations,t_star,slope\n";
        for (const auto& p : rs.points)
            csv += num(p.delta) + "," + num(p.remainder) + "," + std::to_string(p.iterations) + "," + num(rs.t_star) +
                   "," + num(rs.fit.slope) + "\n";
        rm.write_output(stem_of(o.out) + "_remainder.csv", csv);
        summary["remainder"] = {{"slope", rs.fit.slope}, {"residual", rs.fit.residual}, {"t_star", rs.t_star}};
    }
    rm.write_output(o.summary.empty() ? stem_of(o.out) + "_summary.json" : o.summary, dump(summary));
    return 0;
}

// ------------------------------------------------------------------- audit

int run_audit(const AuditOptions& o, RunManifest& rm) {
    if (o.config.empty()) throw std::invalid_argument("--config is required");
    const InflateJob job = parse_inflate_config(load_json_file(o.config));
    rm.parameters() = {{"config", o.config}, {"out", o.out}, {"effective", job.normalized}};
    json reports = json::array();
    bool all = true;
    for (const auto& cfg : job.family) {
        const AuditReport a = support_audit(cfg);
        all = all && a.pass;
        reports.push_back(audit_json(a, cfg));
    }
    emit({{"config", job.normalized}, {"pass", all}, {"audits", reports}}, o.out, rm);
    if (!all) {
        std::cerr << "audit: at least one configuration failed\n";
        return 1;
    }
    return 0;
}

}  // namespace logbesov::cli

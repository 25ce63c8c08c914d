// qsl: explicit matrix representations of U_q[sl(n+1|m)] on Fock modules,
// relation verification suites, unitarity scans, oscillator realizations
// and exclusion-statistics demonstrators.
//
// Exit codes: 0 success / all checks passed, 1 residual above tolerance or
// expected unitarity missing, 2 usage or domain errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/matrix_io.hpp"
#include "qsl/oscillator.hpp"
#include "qsl/qnum.hpp"
#include "qsl/rep.hpp"
#include "qsl/stats.hpp"

namespace {

using qsl::cplx;

// q spec grammar: "classical" | "re+imi" | "phase:<radians>"
qsl::QParameter parse_q(const std::string& spec, double tol) {
    if (spec == "classical") return qsl::QParameter::classical(tol);
    if (spec.rfind("phase:", 0) == 0)
        return qsl::QParameter::phase(std::stod(spec.substr(6)), tol);
    std::string s = spec;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw std::domain_error("empty q spec");
    double re = 0.0, im = 0.0;
    if (s.back() == 'i') {
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t t = 1; t < s.size(); ++t)
            if ((s[t] == '+' || s[t] == '-') && s[t - 1] != 'e' && s[t - 1] != 'E')
                split = t;
        if (split == std::string::npos) {  // pure imaginary "imi"
            im = (s.empty() || s == "+") ? 1.0 : (s == "-" ? -1.0 : std::stod(s));
        } else {
            re = std::stod(s.substr(0, split));
            std::string imag = s.substr(split);
            im = (imag == "+") ? 1.0 : (imag == "-" ? -1.0 : std::stod(imag));
        }
    } else {
        re = std::stod(s);
    }
    return qsl::QParameter::generic(cplx(re, im), tol);
}

int default_cutoff(double p, double tol) {
    long pint = -1;
    if (qsl::is_nonneg_int(cplx(p, 0.0), tol, &pint)) return static_cast<int>(pint);
    return std::max(6, static_cast<int>(std::ceil(std::abs(p))) + 3);
}

struct OutputStream {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::domain_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& get() { return *os; }
};

struct CommonOpts {
    int n = 1, m = 0;
    double p = 1.0;
    std::string q_spec = "classical";
    int cutoff = -1;
    double tol = 1e-9;
    std::string output;
};

void attach_common(CLI::App* cmd, CommonOpts& o, bool with_q = true) {
    cmd->add_option("--n", o.n, "bosonic mode count")->required();
    cmd->add_option("--m", o.m, "fermionic mode count")->required();
    cmd->add_option("--p", o.p, "module label p")->required();
    if (with_q) cmd->add_option("--q", o.q_spec, "q spec: classical | re+imi | phase:<rad>");
    cmd->add_option("--cutoff", o.cutoff, "max total degree enumerated");
    cmd->add_option("--tol", o.tol, "residual tolerance")->envname("QSL_TOL");
    cmd->add_option("-o,--output", o.output, "write data to file instead of stdout");
}

qsl::RepContext context_for(const CommonOpts& o, qsl::Normalization norm) {
    qsl::QParameter q = parse_q(o.q_spec, o.tol);
    int cutoff = o.cutoff >= 0 ? o.cutoff : default_cutoff(o.p, o.tol);
    return qsl::make_rep_context(qsl::ModeSignature(o.n, o.m), cplx(o.p, 0.0), q, cutoff, norm);
}

void emit_matrix(OutputStream& out, const qsl::GradedOperator& op, const std::string& format) {
    if (format == "csv") {
        qsl::matrix_to_csv(out.get(), op);
    } else {
        out.get() << qsl::matrix_to_json(op).dump() << '\n';
    }
}

// shared --gen/--i/--j grammar of the matrix and realize subcommands
struct GenSpec {
    std::string gen = "H";
    int i = 1;
    int j = -1;
};

void attach_gen(CLI::App* cmd, GenSpec& g) {
    cmd->add_option("--gen", g.gen, "generator: H | a+ | a- | e")
        ->check(CLI::IsMember({"H", "a+", "a-", "e"}))
        ->required();
    cmd->add_option("--i", g.i, "first generator index")->required();
    cmd->add_option("--j", g.j, "second index (only for --gen e)");
}

int report_and_exit_code(OutputStream& out, const qsl::CheckReport& rep) {
    out.get() << qsl::report_to_json(rep).dump() << '\n';
    std::fprintf(stderr, "%zu relation instances, max residual %.3e, tolerance %.3e: %s\n",
                 rep.residuals.size(), rep.max_residual(), rep.tolerance,
                 rep.passed() ? "pass" : "FAIL");
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fock representations of the quantum superalgebra U_q[sl(n+1|m)]"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qsl 1.0.0");

    // ---- basis ----
    CommonOpts basis_opts;
    CLI::App* basis_cmd = app.add_subcommand("basis", "enumerate the W_p occupation basis");
    attach_common(basis_cmd, basis_opts, false);

    // ---- matrix ----
    CommonOpts matrix_opts;
    GenSpec matrix_gen;
    std::string matrix_norm = "un", matrix_format = "json";
    CLI::App* matrix_cmd = app.add_subcommand("matrix", "emit one generator matrix on W_p");
    attach_gen(matrix_cmd, matrix_gen);
    attach_common(matrix_cmd, matrix_opts);
    matrix_cmd->add_option("--norm", matrix_norm, "basis normalization: un | ortho")
        ->check(CLI::IsMember({"un", "ortho"}));
    matrix_cmd->add_option("--format", matrix_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // ---- verify ----
    CommonOpts verify_opts;
    std::string verify_suite;
    int verify_rmax = 3;
    bool expect_unitary = false;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run a relation verification suite");
    verify_cmd->add_option("--suite", verify_suite, "suite name")
        ->check(CLI::IsMember({"theorem1", "gl", "lemmas", "unitary", "dyson", "hp",
                               "hp-deformed", "equivalence", "oscillator"}))
        ->required();
    attach_common(verify_cmd, verify_opts);
    verify_cmd->add_option("--r-max", verify_rmax, "max power r in the lemma identities");
    verify_cmd->add_flag("--expect-unitary", expect_unitary,
                         "fail (exit 1) when the representation is not unitary");

    // ---- unitary-scan ----
    long scan_p = 2;
    int scan_steps = 64;
    double scan_min = 0.001, scan_max = 3.141;
    std::string scan_output;
    CLI::App* scan_cmd = app.add_subcommand("unitary-scan",
                                            "scan min_k [k] over a phase grid");
    scan_cmd->add_option("--p", scan_p, "module label p")->required();
    scan_cmd->add_option("--steps", scan_steps, "number of grid points")->required();
    scan_cmd->add_option("--phi-min", scan_min, "lowest phase");
    scan_cmd->add_option("--phi-max", scan_max, "highest phase");
    scan_cmd->add_option("-o,--output", scan_output, "write data to file instead of stdout");

    // ---- realize ----
    CommonOpts realize_opts;
    GenSpec realize_gen;
    std::string realize_kind, realize_format = "json";
    CLI::App* realize_cmd =
        app.add_subcommand("realize", "emit an oscillator-realized generator matrix");
    realize_cmd->add_option("--kind", realize_kind, "realization: dyson | hp | hp-deformed")
        ->check(CLI::IsMember({"dyson", "hp", "hp-deformed"}))
        ->required();
    attach_gen(realize_cmd, realize_gen);
    attach_common(realize_cmd, realize_opts);
    realize_cmd->add_option("--format", realize_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // ---- partition ----
    CommonOpts part_opts;
    std::string part_eps;
    double part_beta = 1.0;
    bool part_mean = false;
    CLI::App* part_cmd = app.add_subcommand("partition", "exact partition function on W_p");
    attach_common(part_cmd, part_opts, false);
    part_cmd->add_option("--eps", part_eps, "comma-separated orbital energies")->required();
    part_cmd->add_option("--beta", part_beta, "inverse temperature")->required();
    part_cmd->add_flag("--mean-occ", part_mean, "also report mean occupations");

    // ---- limit-check ----
    int limit_n = 1, limit_m = 0, limit_window = 3;
    std::string limit_plist, limit_qlist, limit_output;
    CLI::App* limit_cmd =
        app.add_subcommand("limit-check", "canonical-statistics limit of a/sqrt(p)");
    limit_cmd->add_option("--n", limit_n, "bosonic mode count")->required();
    limit_cmd->add_option("--m", limit_m, "fermionic mode count")->required();
    limit_cmd->add_option("--p-list", limit_plist, "comma-separated p values")->required();
    limit_cmd->add_option("--window", limit_window, "degree window R0");
    limit_cmd->add_option("--q-list", limit_qlist, "q specs per p (default classical)");
    limit_cmd->add_option("-o,--output", limit_output, "write data to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (basis_cmd->parsed()) {
            OutputStream out;
            out.open(basis_opts.output);
            int cutoff = basis_opts.cutoff >= 0 ? basis_opts.cutoff
                                                : default_cutoff(basis_opts.p, basis_opts.tol);
            qsl::FockBasis basis(qsl::ModeSignature(basis_opts.n, basis_opts.m),
                                 cplx(basis_opts.p, 0.0), cutoff);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                nlohmann::json j;
                j["rank"] = k;
                j["r"] = basis.vector(k);
                j["R"] = basis.degree(k);
                out.get() << j.dump() << '\n';
            }
            return 0;
        }

        if (matrix_cmd->parsed()) {
            OutputStream out;
            out.open(matrix_opts.output);
            qsl::RepContext ctx = context_for(matrix_opts, matrix_norm == "ortho"
                                                               ? qsl::Normalization::Orthonormal
                                                               : qsl::Normalization::Unnormalized);
            qsl::GradedOperator op;
            if (matrix_gen.gen == "e") {
                if (matrix_gen.j < 0) throw std::domain_error("--gen e requires --j");
                op = qsl::cw_matrix(ctx, matrix_gen.i, matrix_gen.j);
            } else {
                qsl::Jg g = matrix_gen.gen == "H" ? qsl::Jg::H
                            : matrix_gen.gen == "a+" ? qsl::Jg::APlus
                                                     : qsl::Jg::AMinus;
                op = qsl::jg_matrix(ctx, g, matrix_gen.i);
            }
            emit_matrix(out, op, matrix_format);
            return 0;
        }

        if (verify_cmd->parsed()) {
            OutputStream out;
            out.open(verify_opts.output);
            double tol = verify_opts.tol;
            qsl::QParameter q = parse_q(verify_opts.q_spec, tol);
            qsl::ModeSignature sig(verify_opts.n, verify_opts.m);
            int cutoff = verify_opts.cutoff >= 0 ? verify_opts.cutoff
                                                 : default_cutoff(verify_opts.p, tol);
            cplx p(verify_opts.p, 0.0);

            if (verify_suite == "theorem1" || verify_suite == "gl" || verify_suite == "lemmas") {
                qsl::RepContext ctx =
                    qsl::make_rep_context(sig, p, q, cutoff, qsl::Normalization::Unnormalized);
                qsl::CheckReport rep;
                if (verify_suite == "theorem1")
                    rep = qsl::check_theorem1(qsl::build_generator_table(ctx), tol);
                else if (verify_suite == "gl")
                    rep = qsl::check_gl_relations(qsl::build_cw_table(ctx), tol);
                else
                    rep = qsl::check_lemma_identities(qsl::build_generator_table(ctx),
                                                      verify_rmax, tol);
                return report_and_exit_code(out, rep);
            }

            if (verify_suite == "unitary") {
                long pint = -1;
                if (!qsl::is_nonneg_int(p, tol, &pint) || pint < 1)
                    throw std::domain_error("unitary suite needs integer p >= 1");
                qsl::CheckReport rep;
                rep.tolerance = tol;
                qsl::UnitarityResult u = qsl::unitarity_check(sig, pint, q);
                if (u.offending_bracket == 0)
                    rep.record("adjoint", u.max_adjoint_deviation);
                rep.record("min-bracket-positive", u.offending_bracket == 0 ? 0.0 : 1.0);
                if (q.is_phase() || q.is_classical()) {
                    qsl::RepContext ctx = qsl::make_rep_context(
                        sig, p, q, static_cast<int>(pint), qsl::Normalization::Unnormalized);
                    rep.record("gram", qsl::gram_check(ctx));
                }
                int code = report_and_exit_code(out, rep);
                if (expect_unitary && !u.unitary) {
                    std::fprintf(stderr, "representation is not unitary (bracket %ld)\n",
                                 u.offending_bracket);
                    code = 1;
                }
                return code;
            }

            if (verify_suite == "oscillator") {
                qsl::CheckReport rep;
                rep.tolerance = tol;
                qsl::OscFockSpace mono =
                    qsl::make_osc_space(sig, cutoff, qsl::OscNormalization::Monomial);
                qsl::OscFockSpace norm =
                    qsl::make_osc_space(sig, cutoff, qsl::OscNormalization::Normalized);
                rep.merge(qsl::check_oscillator_relations(mono, q, tol));
                rep.merge(qsl::check_oscillator_relations(norm, q, tol));
                return report_and_exit_code(out, rep);
            }

            if (verify_suite == "equivalence") {
                qsl::CheckReport rep;
                rep.tolerance = tol;
                qsl::RealizationMap dyson =
                    qsl::make_realization(qsl::RealizationKind::Dyson, p, q, sig, cutoff);
                qsl::RepContext unctx =
                    qsl::make_rep_context(sig, p, q, cutoff, qsl::Normalization::Unnormalized);
                rep.record("dyson", qsl::check_equivalence(dyson, unctx));
                rep.record("cw-dyson", qsl::cw_consistency(dyson));
                long pint = -1;
                if (qsl::is_nonneg_int(p, tol, &pint)) {
                    qsl::RealizationMap hp = qsl::make_realization(
                        qsl::RealizationKind::HP, p, q, sig, static_cast<int>(pint));
                    qsl::RealizationMap hpd = qsl::make_realization(
                        qsl::RealizationKind::HPDeformed, p, q, sig, static_cast<int>(pint));
                    qsl::RepContext octx = qsl::make_rep_context(
                        sig, p, q, static_cast<int>(pint), qsl::Normalization::Orthonormal);
                    rep.record("hp", qsl::check_equivalence(hp, octx));
                    rep.record("cw-hp", qsl::cw_consistency(hp));
                    double dev = 0.0;
                    for (int a = 0; a <= sig.total(); ++a)
                        for (int b = 0; b <= sig.total(); ++b)
                            dev = std::max(dev, (qsl::realize_cw(hp, a, b).matrix() -
                                                 qsl::realize_cw(hpd, a, b).matrix())
                                                    .max_abs());
                    rep.record("hp-deformed-vs-hp", dev);
                }
                return report_and_exit_code(out, rep);
            }

            // homomorphism suites
            qsl::RealizationKind kind = verify_suite == "dyson" ? qsl::RealizationKind::Dyson
                                        : verify_suite == "hp" ? qsl::RealizationKind::HP
                                                               : qsl::RealizationKind::HPDeformed;
            qsl::RealizationMap map = qsl::make_realization(kind, p, q, sig, cutoff);
            return report_and_exit_code(out, qsl::check_homomorphism(map, tol));
        }

        if (scan_cmd->parsed()) {
            OutputStream out;
            out.open(scan_output);
            if (scan_steps < 1) throw std::domain_error("--steps must be >= 1");
            std::vector<double> grid;
            for (int k = 0; k < scan_steps; ++k)
                grid.push_back(scan_steps == 1
                                   ? scan_min
                                   : scan_min + k * (scan_max - scan_min) / (scan_steps - 1));
            out.get() << "phi,min_bracket,unitary\n";
            char line[96];
            for (const qsl::ScanRow& row : qsl::unitary_scan(scan_p, grid)) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%d", row.phi, row.min_bracket,
                              row.unitary ? 1 : 0);
                out.get() << line << '\n';
            }
            return 0;
        }

        if (realize_cmd->parsed()) {
            OutputStream out;
            out.open(realize_opts.output);
            double tol = realize_opts.tol;
            qsl::QParameter q = parse_q(realize_opts.q_spec, tol);
            qsl::ModeSignature sig(realize_opts.n, realize_opts.m);
            int cutoff = realize_opts.cutoff >= 0 ? realize_opts.cutoff
                                                  : default_cutoff(realize_opts.p, tol);
            qsl::RealizationKind kind = realize_kind == "dyson" ? qsl::RealizationKind::Dyson
                                        : realize_kind == "hp" ? qsl::RealizationKind::HP
                                                               : qsl::RealizationKind::HPDeformed;
            qsl::RealizationMap map =
                qsl::make_realization(kind, cplx(realize_opts.p, 0.0), q, sig, cutoff);
            qsl::GradedOperator op;
            if (realize_gen.gen == "e") {
                if (realize_gen.j < 0) throw std::domain_error("--gen e requires --j");
                op = qsl::realize_cw(map, realize_gen.i, realize_gen.j);
            } else {
                qsl::Jg g = realize_gen.gen == "H" ? qsl::Jg::H
                            : realize_gen.gen == "a+" ? qsl::Jg::APlus
                                                      : qsl::Jg::AMinus;
                op = qsl::realize(map, g, realize_gen.i);
            }
            emit_matrix(out, op, realize_format);
            return 0;
        }

        if (part_cmd->parsed()) {
            OutputStream out;
            out.open(part_opts.output);
            long pint = -1;
            if (!qsl::is_nonneg_int(cplx(part_opts.p, 0.0), part_opts.tol, &pint))
                throw std::domain_error("partition requires a nonnegative integer p");
            qsl::SpectrumConfig cfg;
            cfg.beta = part_beta;
            std::stringstream ss(part_eps);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.eps.push_back(std::stod(item));
            qsl::ModeSignature sig(part_opts.n, part_opts.m);
            nlohmann::json j;
            j["Z"] = qsl::partition_function(sig, pint, cfg);
            if (part_mean) j["mean_occ"] = qsl::mean_occupations(sig, pint, cfg);
            out.get() << j.dump() << '\n';
            return 0;
        }

        if (limit_cmd->parsed()) {
            OutputStream out;
            out.open(limit_output);
            std::vector<long> ps;
            std::stringstream ss(limit_plist);
            std::string item;
            while (std::getline(ss, item, ',')) ps.push_back(std::stol(item));
            std::vector<qsl::QParameter> qs;
            if (!limit_qlist.empty()) {
                std::stringstream qq(limit_qlist);
                while (std::getline(qq, item, ',')) qs.push_back(parse_q(item, 1e-9));
            }
            out.get() << "p,relation,residual\n";
            char line[160];
            for (const qsl::LimitRow& row :
                 qsl::canonical_limit_check(qsl::ModeSignature(limit_n, limit_m), ps, qs,
                                            limit_window)) {
                std::snprintf(line, sizeof line, "%ld,%s,%.17g", row.p, row.relation.c_str(),
                              row.residual);
                out.get() << line << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

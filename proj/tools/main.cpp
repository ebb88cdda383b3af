// qbl command-line front end: special-function values, Borel multitransforms,
// qDE reductions and the acceptance suite, emitted as JSON (or CSV for series
// tables).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include <qbl/acceptance.hpp>
#include <qbl/borel.hpp>
#include <qbl/errors.hpp>
#include <qbl/qde.hpp>
#include <qbl/serialize.hpp>
#include <qbl/specfun.hpp>

using namespace qbl;
namespace sf = qbl::specfun;
namespace bo = qbl::borel;

namespace {

struct RunConfig {
    unsigned precision = digits10;
    double tol = 1e-10;
    unsigned order = 16;
    double hankel_r = 0, hankel_eps = 0, hankel_R = 0; // 0 = library default
    double rho1 = 0, rho2 = 0, T = 0;
    std::string format = "json";
    std::string out;
};

void add_global_flags(CLI::App& app, RunConfig& cfg)
{
    app.add_option("--precision", cfg.precision, "output digits and adaptive targets (<= compiled)");
    app.add_option("--tol", cfg.tol, "quadrature tolerance");
    app.add_option("--order", cfg.order, "series truncation order");
    app.add_option("--hankel-r", cfg.hankel_r, "Hankel circle radius");
    app.add_option("--hankel-eps", cfg.hankel_eps, "Hankel ray angle offset");
    app.add_option("--hankel-R", cfg.hankel_R, "Hankel ray truncation radius");
    app.add_option("--rho1", cfg.rho1, "parabola curvature");
    app.add_option("--rho2", cfg.rho2, "parabola vertex");
    app.add_option("--T", cfg.T, "parabola parameter truncation");
    app.add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "write the report to this path instead of stdout");
}

void finalize_config(RunConfig& cfg)
{
    if (const char* env = std::getenv("QBL_PRECISION")) {
        // flag wins over the environment; the env var only moves the default
        if (cfg.precision == digits10) cfg.precision = static_cast<unsigned>(std::atoi(env));
    }
    if (cfg.precision < 30) throw DomainError("precision must be at least 30 digits");
    if (cfg.precision > digits10) cfg.precision = digits10;
    if (cfg.tol <= 0) throw DomainError("tolerance must be positive");
}

contour::HankelContour hankel_from(const RunConfig& cfg)
{
    contour::HankelContour hc;
    if (cfg.hankel_r > 0) hc.r = Real(cfg.hankel_r);
    if (cfg.hankel_eps > 0) hc.eps_angle = Real(cfg.hankel_eps);
    if (cfg.hankel_R > 0) hc.R = Real(cfg.hankel_R);
    return hc;
}

contour::ParabolicContour parabola_from(const RunConfig& cfg)
{
    contour::ParabolicContour pc;
    if (cfg.rho1 > 0) pc.rho1 = Real(cfg.rho1);
    if (cfg.rho2 > 0) pc.rho2 = Real(cfg.rho2);
    if (cfg.T > 0) pc.T = Real(cfg.T);
    return pc;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw DomainError("cannot open output path: " + cfg.out);
    f << text << "\n";
}

Complex parse_zlog(const std::string& z)
{
    Rational q = rational_from_string(z);
    if (q <= 0) throw DomainError("z must be a positive rational");
    return log(Complex(to_real(q)));
}

std::vector<int> parse_id_list(const std::string& s)
{
    std::vector<int> ids;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) ids.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ids;
}

// ---- specfun ---------------------------------------------------------------

struct SpecfunArgs {
    unsigned n = 2;
    unsigned k = 0;
    unsigned m = 1;
    std::string s = "0";
    std::string z = "1";
};

void run_specfun(const std::string& fn, const SpecfunArgs& a, const RunConfig& cfg)
{
    Complex v;
    if (fn == "zeta") {
        v = Complex(sf::zeta_int(a.n));
    } else if (fn == "beta") {
        v = Complex(sf::beta_seq(a.n));
    } else if (fn == "bell") {
        // complete Bell polynomial at x_i = i; arbitrary argument vectors go
        // through the library API
        std::vector<Real> xs(a.n);
        for (unsigned i = 0; i < a.n; ++i) xs[i] = Real(i + 1);
        v = Complex(sf::bell_complete(xs));
    } else if (fn == "ck") {
        v = sf::recip_gamma_deriv(a.k, exp(parse_zlog(a.z)));
    } else if (fn == "gamma0") {
        auto res = sf::gamma_upper0_full(parse_zlog(a.z));
        if (res.precision_loss)
            std::cerr << "{\"warning\":\"gamma_upper0 cross-check disagreement (precision_loss)\"}\n";
        v = res.value;
    } else if (fn == "e") {
        v = sf::e_point(Complex(to_real(rational_from_string(a.s))), parse_zlog(a.z));
    } else if (fn == "ek") {
        v = sf::ek_eval(a.k, parse_zlog(a.z));
    } else if (fn == "tmeijer") {
        v = sf::t_meijer(a.m, parse_zlog(a.z));
    } else if (fn == "gm") {
        v = sf::g_m(a.m, parse_zlog(a.z));
    } else {
        throw DomainError("unknown specfun operation: " + fn);
    }
    emit(cfg, serialize::value_json(v, cfg.precision));
}

// ---- borel -----------------------------------------------------------------

bo::BorelWeights parse_weights(const std::string& spec)
{
    // "a1,a2:b1,b2" with rational entries
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw DomainError("weights must look like \"a1,a2:b1,b2\"");
    auto parse_list = [](const std::string& s) {
        std::vector<Rational> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            auto comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) out.push_back(rational_from_string(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };
    bo::BorelWeights w{parse_list(spec.substr(0, colon)), parse_list(spec.substr(colon + 1))};
    w.validate();
    return w;
}

struct NamedInput {
    std::string name;
    unsigned k = 0; // for ek:K
};

std::vector<NamedInput> parse_inputs(const std::string& spec)
{
    std::vector<NamedInput> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto comma = spec.find(',', pos);
        std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) {
            NamedInput in;
            if (tok.rfind("ek:", 0) == 0) {
                in.name = "ek";
                in.k = static_cast<unsigned>(std::stoul(tok.substr(3)));
            } else {
                in.name = tok;
            }
            out.push_back(in);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

bo::LogArgEvaluator scalar_evaluator(const NamedInput& in)
{
    if (in.name == "ups1") {
        auto s = std::make_shared<NumLogSeries>(promote(qde::p1_basis(GaussRat(1), GaussRat(0), 40)));
        return [s](const Complex& l) { return ls_eval(*s, l); };
    }
    if (in.name == "ups2") {
        auto s = std::make_shared<NumLogSeries>(promote(qde::p1_basis(GaussRat(0), GaussRat(1), 40)));
        return [s](const Complex& l) { return ls_eval(*s, l); };
    }
    if (in.name == "ek") {
        unsigned k = in.k;
        return [k](const Complex& l) { return sf::ek_eval(k, l); };
    }
    throw DomainError("input '" + in.name + "' has no scalar evaluator (use jp1/eP in formal mode)");
}

void run_borel(const std::string& inputs_spec, const std::string& weights_spec, const std::string& z,
               const std::string& mode, const RunConfig& cfg)
{
    auto inputs = parse_inputs(inputs_spec);
    bo::BorelWeights w =
        weights_spec.empty()
            ? bo::BorelWeights{{Rational(-4), Rational(1, 2)}, {Rational(-1, 2), Rational(1)}}
            : parse_weights(weights_spec);
    unsigned N = cfg.order;
    Real tol = Real(cfg.tol);
    contour::HankelContour hc = hankel_from(cfg);

    if (mode == "numeric") {
        std::vector<bo::LogArgEvaluator> evs;
        for (const auto& in : inputs) evs.push_back(scalar_evaluator(in));
        Complex v = bo::borel_numeric(evs, w, parse_zlog(z), hc, tol);
        emit(cfg, serialize::value_json(v, cfg.precision));
        return;
    }

    auto A = alg_blowup_p2();
    auto formal_series = [&](const NamedInput& in) -> bo::RibSeriesC {
        if (in.name == "jp1") return bo::rib_promote(bo::jp1_series(A, blowup_rho_index, N));
        if (in.name == "eP") return bo::e_series(A, AlgElement::basis(A, blowup_xi_index), N).series;
        if (in.name == "ups1") return bo::rib_promote(bo::ups1_rib_series(A, N));
        if (in.name == "exp") return bo::rib_promote(bo::exp_series(A, N));
        throw DomainError("input '" + in.name + "' has no formal series representation");
    };
    std::vector<bo::RibSeriesC> fs;
    for (const auto& in : inputs) fs.push_back(formal_series(in));
    auto comps = bo::analytify(bo::borel_formal(fs, w));

    if (mode == "formal") {
        std::string text;
        if (cfg.format == "csv") {
            for (std::size_t b = 0; b < comps.size(); ++b)
                text += "# component " + A->labels()[b] + "\n" + serialize::logseries_csv(comps[b]);
        } else {
            text = "{\n  \"components\": [";
            for (std::size_t b = 0; b < comps.size(); ++b)
                text += (b ? ",\n" : "\n") + serialize::logseries_json(comps[b], cfg.precision);
            text += "\n  ]\n}";
        }
        emit(cfg, text);
        return;
    }

    // --both: formal components vs the matching scalar quadratures for the
    // (jp1, eP) transform
    if (inputs.size() != 2 || inputs[0].name != "jp1" || inputs[1].name != "eP")
        throw DomainError("--both compares the (jp1, eP) transform against scalar quadratures");
    Complex zl = parse_zlog(z);
    struct Row {
        const char* pair;
        Complex formal;
        Complex numeric;
    };
    std::vector<Row> rows;
    rows.push_back({"(ups1,ek:0)", ls_eval(comps[0], zl),
                    bo::borel_numeric({scalar_evaluator({"ups1", 0}), scalar_evaluator({"ek", 0})}, w,
                                      zl, hc, tol)});
    rows.push_back({"(ups2,ek:0)", ls_eval(comps[blowup_rho_index], zl) / Complex(2),
                    bo::borel_numeric({scalar_evaluator({"ups2", 0}), scalar_evaluator({"ek", 0})}, w,
                                      zl, hc, tol)});
    rows.push_back({"(ups1,ek:1)", ls_eval(comps[blowup_xi_index], zl),
                    bo::borel_numeric({scalar_evaluator({"ups1", 0}), scalar_evaluator({"ek", 1})}, w,
                                      zl, hc, tol)});
    std::string text = "{\n  \"consistency\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        text += (i ? ",\n" : "\n");
        text += "    {\"pair\": \"" + std::string(rows[i].pair) +
                "\", \"formal\": " + serialize::complex_str(rows[i].formal, cfg.precision) +
                ", \"numeric\": " + serialize::complex_str(rows[i].numeric, cfg.precision) +
                ", \"abs_diff\": \"" + abs(rows[i].formal - rows[i].numeric).str(3) + "\"}";
    }
    text += "\n  ]\n}";
    emit(cfg, text);
}

qde::QdeData model_data(const std::string& model, const std::string& q1, const std::string& q2)
{
    if (model == "p1") return qde::qde_p1_data();
    if (model == "blowup-p2")
        return qde::qde_blowup_data(rational_from_string(q1), rational_from_string(q2));
    throw DomainError("unknown model: " + model + " (expected p1 or blowup-p2)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quantum differential equations of P^1-bundles: E_k kernels, Borel "
                 "multitransforms, cyclic reductions"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    RunConfig cfg;
    add_global_flags(app, cfg);

    auto* sc_spec = app.add_subcommand("specfun", "special-function point values");
    sc_spec->require_subcommand(1);
    SpecfunArgs sa;
    std::string spec_fn;
    for (const char* fn : {"zeta", "beta", "bell", "ck", "gamma0", "e", "ek", "tmeijer", "gm"}) {
        auto* sub = sc_spec->add_subcommand(fn);
        sub->add_option("--n", sa.n, "integer order");
        sub->add_option("--k", sa.k, "derivative order");
        sub->add_option("--m", sa.m, "Meijer order");
        sub->add_option("--s", sa.s, "first argument (rational)");
        sub->add_option("--z", sa.z, "point z (positive rational)");
        sub->callback([&spec_fn, fn] { spec_fn = fn; });
    }

    auto* sc_borel = app.add_subcommand("borel", "Borel (alpha,beta)-multitransforms");
    std::string b_inputs = "jp1,eP", b_weights, b_z = "1/5";
    sc_borel->add_option("--inputs", b_inputs, "comma list: ups1, ups2, ek:K, jp1, eP, exp");
    sc_borel->add_option("--weights", b_weights,
                         "\"a1,a2:b1,b2\" (default: blow-up weights -4,1/2:-1/2,1)");
    sc_borel->add_option("--z", b_z, "evaluation point (positive rational)");
    auto* f_formal = sc_borel->add_flag("--formal", "formal transform, emit component series");
    auto* f_numeric = sc_borel->add_flag("--numeric", "numeric transform, emit the value");
    auto* f_both = sc_borel->add_flag("--both", "consistency report formal vs numeric");

    auto* sc_qde = app.add_subcommand("qde", "cyclic reduction and master functions");
    sc_qde->require_subcommand(1);
    std::string q_model = "blowup-p2", q_q1 = "1", q_q2 = "1", q_which = "borel", q_ode = "derived";
    unsigned q_n = 2, q_j = 0, q_d = 1, q_k = 0;
    std::string q_z = "1/5";
    bool q_compare = false;
    {
        auto* s = sc_qde->add_subcommand("lambda", "cyclic frame and Lambda-matrix");
        s->add_option("--model", q_model);
        s->add_option("--q1", q_q1);
        s->add_option("--q2", q_q2);
    }
    {
        auto* s = sc_qde->add_subcommand("derive-ode", "derive the master equation");
        s->add_option("--model", q_model);
        s->add_option("--q1", q_q1);
        s->add_option("--q2", q_q2);
        s->add_flag("--compare-printed", q_compare, "emit the diff report against the printed equation");
    }
    {
        auto* s = sc_qde->add_subcommand("basis", "solution bases of the blow-up master equation");
        s->add_option("--which", q_which, "borel|ifunction");
        s->add_option("--order", cfg.order, "series truncation order");
    }
    {
        auto* s = sc_qde->add_subcommand("verify", "residual reports for the basis members");
        s->add_option("--ode", q_ode, "derived|printed");
        s->add_option("--which", q_which, "borel|ifunction");
        s->add_option("--order", cfg.order, "series truncation order");
    }
    {
        auto* s = sc_qde->add_subcommand("mb", "Mellin-Barnes master function of P^(n-1)");
        s->add_option("--n", q_n);
        s->add_option("--j", q_j);
        s->add_option("--z", q_z);
    }
    {
        auto* s = sc_qde->add_subcommand("h-integral", "H integral of the projective-space theorem");
        s->add_option("--n", q_n);
        s->add_option("--d", q_d);
        s->add_option("--j", q_j);
        s->add_option("--k", q_k);
        s->add_option("--z", q_z);
    }

    auto* sc_acc = app.add_subcommand("acceptance", "run the acceptance criteria suite");
    std::string a_suite = "all";
    sc_acc->add_option("--suite", a_suite, "all or comma list of criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        finalize_config(cfg);
        if (sc_spec->parsed()) {
            run_specfun(spec_fn, sa, cfg);
        } else if (sc_borel->parsed()) {
            std::string mode = f_both->count() ? "both" : (f_formal->count() ? "formal" : "numeric");
            run_borel(b_inputs, b_weights, b_z, mode, cfg);
        } else if (sc_qde->parsed()) {
            auto data = model_data(q_model, q_q1, q_q2);
            if (sc_qde->get_subcommand("lambda")->parsed()) {
                auto frame = qde::cyclic_frame(data);
                emit(cfg, "{\n  \"lambda\": " + serialize::ratfun_matrix_json(frame.Lambda) +
                              ",\n  \"det\": \"" + frame.det_lambda.to_string() + "\"\n}");
            } else if (sc_qde->get_subcommand("derive-ode")->parsed()) {
                auto ode = qde::derive_master_ode(data);
                std::string text = serialize::master_ode_json(ode);
                if (q_compare) {
                    auto cmp = qde::compare_master_odes(ode, qde::printed_blowup_ode());
                    text += "\n" + serialize::ode_comparison_json(cmp);
                }
                emit(cfg, text);
            } else if (sc_qde->get_subcommand("basis")->parsed()) {
                std::string text;
                if (q_which == "ifunction") {
                    for (const auto& comp : qde::i_function_blowup(cfg.order))
                        text += (cfg.format == "csv") ? serialize::logseries_csv(comp)
                                                      : serialize::logseries_json(comp) + "\n";
                } else {
                    auto basis = qde::blowup_borel_basis(cfg.order);
                    for (std::size_t b = 0; b < basis.members.size(); ++b)
                        text += (cfg.format == "csv")
                                    ? "# " + basis.labels[b] + "\n" +
                                          serialize::logseries_csv(basis.members[b])
                                    : serialize::logseries_json(basis.members[b], cfg.precision) + "\n";
                }
                emit(cfg, text);
            } else if (sc_qde->get_subcommand("verify")->parsed()) {
                auto ode = (q_ode == "printed") ? qde::printed_blowup_ode() : qde::derive_master_ode(data);
                std::string text;
                if (q_which == "ifunction") {
                    for (const auto& comp : qde::i_function_blowup(cfg.order))
                        text += serialize::residual_report_json(qde::verify_solution(ode, comp)) + "\n";
                } else {
                    auto basis = qde::blowup_borel_basis(cfg.order);
                    for (const auto& m : basis.members)
                        text += serialize::residual_report_json(qde::verify_solution(ode, m)) + "\n";
                }
                emit(cfg, text);
            } else if (sc_qde->get_subcommand("mb")->parsed()) {
                Complex v = qde::mb_master_pn(q_n, q_j, parse_zlog(q_z), Real(cfg.tol), parabola_from(cfg));
                emit(cfg, serialize::value_json(v, cfg.precision));
            } else if (sc_qde->get_subcommand("h-integral")->parsed()) {
                Complex v = qde::thm_mt22_H({q_n}, {q_d}, {q_j}, q_k, parse_zlog(q_z), Real(cfg.tol),
                                            parabola_from(cfg), hankel_from(cfg));
                emit(cfg, serialize::value_json(v, cfg.precision));
            }
        } else if (sc_acc->parsed()) {
            auto results = acceptance::run_all(a_suite == "all" ? std::vector<int>{}
                                                                : parse_id_list(a_suite));
            std::cerr << acceptance::report_lines(results);
            emit(cfg, acceptance::report_json(results));
            for (const auto& res : results)
                if (!res.pass) return 1;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    }
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qapprox/json_io.hpp"

namespace {

using namespace qapprox;

constexpr int kExitCertified = 0;
constexpr int kExitFailure = 1;
constexpr int kExitWeakened = 2;
constexpr int kExitUsage = 64;
constexpr int kExitContract = 70;

Rat parse_rat_or_decimal(const std::string& tok) {
    auto dot = tok.find('.');
    if (dot == std::string::npos) return rat_from_string(tok);
    // decimal literal taken exactly: "0.62" -> 62/100
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    size_t frac = tok.size() - dot - 1;
    Rat r = rat_from_string(digits);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    r /= Rat(den);
    r.canonicalize();
    return r;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

SurfacePoint parse_alpha(const QuadraticForm& form, const std::string& alpha,
                         const std::string& alpha_expr, mpfr_prec_t prec) {
    if (!alpha.empty()) {
        RatVec a;
        for (const auto& tok : split_commas(alpha)) a.push_back(parse_rat_or_decimal(tok));
        return SurfacePoint::from_rational(form, std::move(a), prec);
    }
    EncVec a;
    for (const auto& tok : split_commas(alpha_expr)) a.push_back(eval_expression(tok, prec));
    return SurfacePoint::from_enclosures(form, std::move(a));
}

void emit(const json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot open output file: " + output);
        out << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot open output file: " + output);
        out << text;
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Certified: return kExitCertified;
        case Verdict::CertifiedWeakenedConstant: return kExitWeakened;
        default: return kExitFailure;
    }
}

json error_object(const std::string& reason) { return json{{"error", reason}}; }

struct CommonArgs {
    std::string form_path;
    std::string alpha;
    std::string alpha_expr;
    std::string output;
    long precision = 128;
    long max_precision = 1024;
    std::uint64_t enum_budget = 50'000'000;
    std::uint64_t zero_budget = 100'000'000;
    bool lll_only = false;

    PipelineOptions options() const {
        PipelineOptions o;
        o.precision = precision;
        o.max_precision = max_precision;
        o.enum_budget = enum_budget;
        o.zero_budget = zero_budget;
        o.lll_only = lll_only;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_alpha) {
    cmd->add_option("--form", a.form_path, "form description JSON file")->required();
    if (needs_alpha) {
        cmd->add_option("--alpha", a.alpha,
                        "surface point, comma-separated exact rationals (p/q) or decimals");
        cmd->add_option("--alpha-expr", a.alpha_expr,
                        "surface point, comma-separated expressions over +,-,*,/,sqrt,pi");
    }
    cmd->add_option("--output", a.output, "output path (default: stdout)");
    cmd->add_option("--precision", a.precision, "working precision in bits (default 128)")
        ->check(CLI::Range(32L, 1L << 20));
    cmd->add_option("--max-precision", a.max_precision,
                    "escalation cap in bits (default 1024)");
    cmd->add_option("--enum-budget", a.enum_budget, "lattice enumeration node budget");
    cmd->add_option("--zero-budget", a.zero_budget, "zero search evaluation budget");
    cmd->add_flag("--lll-only", a.lll_only,
                  "skip exact minima; certificates carry a weakened constant");
}

int run_approx(const CommonArgs& a, const std::string& T_str) {
    QuadraticForm form = load_form(a.form_path);
    SurfacePoint alpha = parse_alpha(form, a.alpha, a.alpha_expr, a.precision);
    Rat T = parse_rat_or_decimal(T_str);
    ApproximationCertificate cert = approximate(form, alpha, T, a.options());
    emit(certificate_to_json(cert), a.output);
    return verdict_exit(cert.verdict);
}

int run_independent(const CommonArgs& a, const std::string& T_str) {
    QuadraticForm form = load_form(a.form_path);
    SurfacePoint alpha = parse_alpha(form, a.alpha, a.alpha_expr, a.precision);
    Rat T = parse_rat_or_decimal(T_str);
    auto certs = approximate_independent(form, alpha, T, a.options());
    json arr = json::array();
    int exit = kExitCertified;
    for (const auto& c : certs) {
        arr.push_back(certificate_to_json(c));
        exit = std::max(exit, verdict_exit(c.verdict));
    }
    IntMat rows;
    for (const auto& c : certs) rows.push_back(c.point.g);
    json out{{"certificates", arr},
             {"determinant", int_determinant(rows).get_str()}};
    emit(out, a.output);
    return exit;
}

int run_sweep(const CommonArgs& a, const std::string& from, const std::string& to,
              const std::string& mul, const std::string& step) {
    QuadraticForm form = load_form(a.form_path);
    SurfacePoint alpha = parse_alpha(form, a.alpha, a.alpha_expr, a.precision);

    std::vector<Rat> ts;
    if (!from.empty() && !to.empty()) {
        Rat t = parse_rat_or_decimal(from);
        Rat end = parse_rat_or_decimal(to);
        if (!mul.empty()) {
            Rat f = parse_rat_or_decimal(mul);
            if (f <= 1) throw std::invalid_argument("--T-mul must be > 1");
            for (; t <= end; t *= f) ts.push_back(t);
        } else {
            Rat s = step.empty() ? Rat(1) : parse_rat_or_decimal(step);
            if (s <= 0) throw std::invalid_argument("--T-step must be > 0");
            for (; t <= end; t += s) ts.push_back(t);
        }
    }

    std::ostringstream csv;
    csv << "T,q,case,error_mid,product_mid,kappa_upper,verdict,error\n";
    int exit = kExitCertified;
    for (const Rat& T : ts) {
        try {
            ApproximationCertificate cert = approximate(form, alpha, T, a.options());
            if (cert.verdict == Verdict::Failed) {
                csv << rat_to_string(T) << ",,,,,," << to_string(cert.verdict) << ","
                    << cert.failure_reason << "\n";
                exit = std::max(exit, kExitFailure);
                continue;
            }
            Rat q(cert.point.q());
            double err = cert.lhs.mid_double() / Rat(q * cert.T).get_d();
            csv << rat_to_string(T) << "," << cert.point.q().get_str() << ","
                << to_string(cert.case_taken) << "," << err << "," << cert.lhs.mid_double()
                << "," << mpfr_get_d(cert.kappa.hi(), MPFR_RNDU) << ","
                << to_string(cert.verdict) << ",\n";
            exit = std::max(exit, verdict_exit(cert.verdict));
        } catch (const std::exception& e) {
            csv << rat_to_string(T) << ",,,,,,failed," << e.what() << "\n";
            exit = std::max(exit, kExitFailure);
        }
    }
    emit_text(csv.str(), a.output);
    return exit;
}

int run_isotropy(const CommonArgs& a) {
    IntegralForm q = load_integral_form(a.form_path);
    Int bound;
    auto z = decide_isotropy(q, a.zero_budget, &bound);
    json out{{"isotropic", z.has_value()}, {"bound_searched", bound.get_str()}};
    if (z) {
        json zv = json::array();
        for (const auto& x : z->vec) zv.push_back(x.get_str());
        out["zero"] = zv;
        out["height"] = z->height.get_str();
    }
    emit(out, a.output);
    return kExitCertified;
}

int run_zeros(const CommonArgs& a, int k) {
    IntegralForm q = load_integral_form(a.form_path);
    if (k < 1 || k > q.m) throw std::invalid_argument("--k must be in [1, m]");
    bool complete = false;
    auto zs = independent_zeros(q, k, a.zero_budget, &complete);
    json arr = json::array();
    IntMat rows;
    for (const auto& z : zs) {
        json zv = json::array();
        for (const auto& x : z.vec) zv.push_back(x.get_str());
        arr.push_back(json{{"zero", zv}, {"height", z.height.get_str()}});
        rows.push_back(z.vec);
    }
    json out{{"zeros", arr},
             {"complete", complete},
             {"cassels_bound", q.cassels_bound().get_str()},
             {"max_abs_coeff", q.max_abs_coeff().get_str()}};
    if (k == q.m && complete) out["determinant"] = int_determinant(rows).get_str();
    emit(out, a.output);
    return complete ? kExitCertified : kExitFailure;
}

int run_verify(const CommonArgs& a, const std::string& cert_path) {
    QuadraticForm form = load_form(a.form_path);
    SurfacePoint alpha = parse_alpha(form, a.alpha, a.alpha_expr, a.precision);
    std::ifstream in(cert_path);
    if (!in) throw std::invalid_argument("cannot open certificate: " + cert_path);
    json cj;
    in >> cj;
    ApproximationCertificate cert = certificate_from_json(cj);
    VerifyResult res = verify_certificate(cert, form, alpha);
    emit(json{{"result", to_string(res)}}, a.output);
    return res == VerifyResult::Valid ? kExitCertified : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational points on quadrics with certified approximation bounds"};
    app.require_subcommand(1);

    CommonArgs approx_args, indep_args, sweep_args, iso_args, zeros_args, verify_args;
    std::string approx_T, indep_T;
    std::string sweep_from, sweep_to, sweep_mul, sweep_step;
    int zeros_k = 1;
    std::string verify_cert;

    auto* approx = app.add_subcommand("approx", "one certified rational quadric point");
    add_common(approx, approx_args, true);
    approx->add_option("--T", approx_T, "denominator bound T >= 1")->required();

    auto* indep = app.add_subcommand("independent", "n+1 independent certified points");
    add_common(indep, indep_args, true);
    indep->add_option("--T", indep_T, "denominator bound T >= 1")->required();

    auto* sweep = app.add_subcommand("sweep", "run approx over a range of T, emit CSV");
    add_common(sweep, sweep_args, true);
    sweep->add_option("--T-from", sweep_from, "first T")->required();
    sweep->add_option("--T-to", sweep_to, "last T (inclusive)")->required();
    sweep->add_option("--T-mul", sweep_mul, "geometric step factor");
    sweep->add_option("--T-step", sweep_step, "arithmetic step (default 1)");

    auto* iso = app.add_subcommand("isotropy", "decide isotropy of an integral form");
    add_common(iso, iso_args, false);

    auto* zeros = app.add_subcommand("zeros", "independent small zeros of an integral form");
    add_common(zeros, zeros_args, false);
    zeros->add_option("--k", zeros_k, "number of independent zeros (default 1)");

    auto* verify = app.add_subcommand("verify", "re-check a certificate JSON");
    add_common(verify, verify_args, true);
    verify->add_option("--cert", verify_cert, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (approx->parsed()) return run_approx(approx_args, approx_T);
        if (indep->parsed()) return run_independent(indep_args, indep_T);
        if (sweep->parsed())
            return run_sweep(sweep_args, sweep_from, sweep_to, sweep_mul, sweep_step);
        if (iso->parsed()) return run_isotropy(iso_args);
        if (zeros->parsed()) return run_zeros(zeros_args, zeros_k);
        if (verify->parsed()) return run_verify(verify_args, verify_cert);
    } catch (const qapprox::AnisotropicForm& e) {
        emit(error_object(e.what()), "");
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        emit(error_object(e.what()), "");
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        emit(error_object(e.what()), "");
        return kExitUsage;
    } catch (const std::logic_error& e) {
        emit(error_object(e.what()), "");
        return kExitContract;
    } catch (const std::exception& e) {
        emit(error_object(e.what()), "");
        return kExitFailure;
    }
    return kExitUsage;
}

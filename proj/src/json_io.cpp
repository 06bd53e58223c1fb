#include "qapprox/json_io.hpp"

#include <fstream>

namespace qapprox {

namespace {

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or string)");
}

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

IntMat matrix_from_json(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument("matrix row count mismatch");
    IntMat m(dim, IntVec(dim));
    for (int i = 0; i < dim; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != dim)
            throw std::invalid_argument("matrix column count mismatch");
        for (int k = 0; k < dim; ++k) m[i][k] = int_from_json(j[i][k]);
    }
    return m;
}

json matrix_to_json(const IntMat& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(int_to_json(v));
        rows.push_back(r);
    }
    return rows;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace

QuadraticForm form_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("gram"))
        throw std::invalid_argument("form JSON requires \"n\" and \"gram\"");
    int n = j.at("n").get<int>();
    return QuadraticForm(n, matrix_from_json(j.at("gram"), n));
}

json form_to_json(const QuadraticForm& form) {
    return json{{"n", form.n}, {"gram", matrix_to_json(form.gram)}};
}

QuadraticForm load_form(const std::string& path) { return form_from_json(load_json_file(path)); }

IntegralForm integral_form_from_json(const json& j) {
    if (j.contains("m") && j.contains("coeffs")) {
        int m = j.at("m").get<int>();
        return IntegralForm(m, matrix_from_json(j.at("coeffs"), m));
    }
    if (j.contains("n") && j.contains("gram")) {
        int n = j.at("n").get<int>();
        return IntegralForm(n, matrix_from_json(j.at("gram"), n));
    }
    throw std::invalid_argument("form JSON requires \"m\"/\"coeffs\" or \"n\"/\"gram\"");
}

IntegralForm load_integral_form(const std::string& path) {
    return integral_form_from_json(load_json_file(path));
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

json enclosure_to_json(const Enclosure& e) {
    return json{{"hex", e.to_hex()},
                {"dec", e.to_decimal()},
                {"prec", static_cast<long>(e.precision())}};
}

Enclosure enclosure_from_json(const json& j) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(j.at("prec").get<long>());
    return Enclosure::from_hex(j.at("hex").get<std::string>(), prec);
}

json certificate_to_json(const ApproximationCertificate& cert) {
    if (cert.verdict == Verdict::Failed && cert.point.g.empty())
        return json{{"n", cert.n},
                    {"T", rat_to_string(cert.T)},
                    {"verdict", to_string(cert.verdict)},
                    {"failure_reason", cert.failure_reason},
                    {"precision", static_cast<long>(cert.precision)}};

    json g = json::array();
    for (const auto& x : cert.point.g) g.push_back(int_to_json(x));
    json r = json::array();
    for (const auto& x : cert.point.r) r.push_back(rat_to_string(x));
    json minima = json::array();
    for (const auto& m : cert.minima) minima.push_back(enclosure_to_json(m));
    json heights = json::array();
    for (const auto& h : cert.zero_heights) heights.push_back(int_to_json(h));

    return json{{"n", cert.n},
                {"T", rat_to_string(cert.T)},
                {"t", enclosure_to_json(cert.t_used)},
                {"g", g},
                {"q", int_to_json(cert.point.q())},
                {"r", r},
                {"kappa", enclosure_to_json(cert.kappa)},
                {"kappa_kind", to_string(cert.kappa_kind)},
                {"q_bound", rat_to_string(cert.q_bound)},
                {"lhs", enclosure_to_json(cert.lhs)},
                {"lhs_exact", cert.lhs_exact},
                {"lhs_rat", cert.lhs_exact ? rat_to_string(cert.lhs_rat) : ""},
                {"verdict", to_string(cert.verdict)},
                {"case", to_string(cert.case_taken)},
                {"surface_residual", enclosure_to_json(cert.surface_residual)},
                {"surface_slack", rat_to_string(cert.surface_slack)},
                {"precision", static_cast<long>(cert.precision)},
                {"failure_reason", cert.failure_reason},
                {"diagnostics",
                 json{{"v_n", enclosure_to_json(cert.v_n)},
                      {"minima", minima},
                      {"zero_heights", heights}}}};
}

ApproximationCertificate certificate_from_json(const json& j) {
    ApproximationCertificate cert;
    cert.n = j.at("n").get<int>();
    cert.T = rat_from_string(j.at("T").get<std::string>());
    cert.t_used = enclosure_from_json(j.at("t"));
    IntVec g;
    for (const auto& x : j.at("g")) g.push_back(int_from_json(x));
    if (g.empty() || int_from_json(j.at("q")) != g.back())
        throw std::invalid_argument("certificate JSON: q does not match g");
    cert.point.g = g;
    RatVec r;
    for (const auto& x : j.at("r")) r.push_back(rat_from_string(x.get<std::string>()));
    cert.point.r = r;
    cert.kappa = enclosure_from_json(j.at("kappa"));
    std::string kk = j.at("kappa_kind").get<std::string>();
    cert.kappa_kind = kk == "standard"      ? KappaKind::Standard
                      : kk == "weakened" ? KappaKind::Weakened
                                         : KappaKind::Effective;
    cert.q_bound = rat_from_string(j.at("q_bound").get<std::string>());
    cert.lhs = enclosure_from_json(j.at("lhs"));
    cert.lhs_exact = j.at("lhs_exact").get<bool>();
    if (cert.lhs_exact) cert.lhs_rat = rat_from_string(j.at("lhs_rat").get<std::string>());
    std::string v = j.at("verdict").get<std::string>();
    cert.verdict = v == "certified" ? Verdict::Certified
                   : v == "certified-with-weakened-constant"
                       ? Verdict::CertifiedWeakenedConstant
                       : Verdict::Failed;
    std::string cs = j.at("case").get<std::string>();
    cert.case_taken = cs == "short-vector"    ? CaseTaken::ShortVector
                      : cs == "direct-search" ? CaseTaken::Direct
                                              : CaseTaken::InducedZero;
    cert.surface_residual = enclosure_from_json(j.at("surface_residual"));
    cert.surface_slack = rat_from_string(j.at("surface_slack").get<std::string>());
    cert.precision = static_cast<mpfr_prec_t>(j.at("precision").get<long>());
    cert.failure_reason = j.at("failure_reason").get<std::string>();
    const json& d = j.at("diagnostics");
    cert.v_n = enclosure_from_json(d.at("v_n"));
    for (const auto& m : d.at("minima")) cert.minima.push_back(enclosure_from_json(m));
    for (const auto& h : d.at("zero_heights")) cert.zero_heights.push_back(int_from_json(h));
    return cert;
}

}  // namespace qapprox

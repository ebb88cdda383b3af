#include "qbl/serialize.hpp"

#include <json.hpp>
#include <sstream>

namespace qbl::serialize {

using nlohmann::json;

std::string real_str(const Real& x, unsigned digits)
{
    return x.str(digits == 0 ? 0 : static_cast<int>(digits));
}

std::string complex_str(const Complex& z, unsigned digits)
{
    json j = json::array({real_str(z.real(), digits), real_str(z.imag(), digits)});
    return j.dump();
}

namespace {

json complex_json(const Complex& z, unsigned digits)
{
    return json::array({real_str(z.real(), digits), real_str(z.imag(), digits)});
}

json gauss_json(const GaussRat& c)
{
    if (c.is_real()) return to_string(c.re);
    return json::array({to_string(c.re), to_string(c.im)});
}

template <class K>
json series_terms_json(const LogSeriesT<K>& s, unsigned digits);

template <>
json series_terms_json(const NumLogSeries& s, unsigned digits)
{
    json terms = json::array();
    for (unsigned m = 0; m <= s.N; ++m)
        for (unsigned j = 0; j <= s.J; ++j) {
            const Complex& c = s.at(m, j);
            if (c.real() == 0 && c.imag() == 0) continue;
            terms.push_back({{"m", m},
                             {"j", j},
                             {"re", real_str(c.real(), digits)},
                             {"im", real_str(c.imag(), digits)}});
        }
    return terms;
}

template <>
json series_terms_json(const ExactLogSeries& s, unsigned)
{
    json terms = json::array();
    for (unsigned m = 0; m <= s.N; ++m)
        for (unsigned j = 0; j <= s.J; ++j) {
            const GaussRat& c = s.at(m, j);
            if (c.is_zero()) continue;
            terms.push_back({{"m", m}, {"j", j}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
        }
    return terms;
}

template <class K>
std::string series_csv_impl(const LogSeriesT<K>& s, unsigned digits)
{
    std::ostringstream os;
    os << "m,j,re,im\n";
    for (unsigned m = 0; m <= s.N; ++m)
        for (unsigned j = 0; j <= s.J; ++j) {
            if (detail::series_coeff_zero(s.at(m, j))) continue;
            Complex c = detail::series_coeff_to_complex(s.at(m, j));
            os << m << "," << j << "," << real_str(c.real(), digits) << ","
               << real_str(c.imag(), digits) << "\n";
        }
    return os.str();
}

} // namespace

std::string ratfun_matrix_json(const RatFunMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
        rows.push_back(row);
    }
    return rows.dump(2);
}

std::string algebra_json(const NilAlgebra& a)
{
    json j;
    j["dim"] = a.dim();
    j["basis"] = a.labels();
    j["grading"] = a.grading();
    j["unit"] = a.unit_index();
    j["top"] = a.top_index();
    json triples = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k <= i; ++k)
            for (std::size_t l = 0; l < a.dim(); ++l) {
                const Rational& c = a.structure(i, k, l);
                if (c != 0) triples.push_back({{"i", i}, {"j", k}, {"k", l}, {"c", to_string(c)}});
            }
    j["structure"] = triples;
    return j.dump(2);
}

std::string logseries_json(const NumLogSeries& s, unsigned digits)
{
    json j;
    j["kind"] = "float";
    j["sigma"] = complex_json(s.sigma, digits);
    j["N"] = s.N;
    j["J"] = s.J;
    j["ord_valid"] = s.ord_valid;
    j["terms"] = series_terms_json(s, digits);
    return j.dump(2);
}

std::string logseries_json(const ExactLogSeries& s)
{
    json j;
    j["kind"] = "exact";
    j["sigma"] = gauss_json(s.sigma);
    j["N"] = s.N;
    j["J"] = s.J;
    j["ord_valid"] = s.ord_valid;
    j["terms"] = series_terms_json(s, 0);
    return j.dump(2);
}

std::string logseries_csv(const NumLogSeries& s, unsigned digits)
{
    return series_csv_impl(s, digits);
}

std::string logseries_csv(const ExactLogSeries& s, unsigned digits)
{
    return series_csv_impl(s, digits);
}

std::string master_ode_json(const qde::MasterODE& ode)
{
    json j;
    j["provenance"] = ode.provenance == qde::OdeProvenance::derived ? "derived" : "printed";
    j["order"] = ode.op.order();
    json coeffs = json::array();
    for (const auto& p : ode.op.coeffs()) coeffs.push_back(p.to_string());
    j["theta_coefficients"] = coeffs;
    j["apparent_singularity_polynomial"] = ode.apparent_singularities.to_string();
    j["apparent_singularity_count"] = std::max(0, ode.apparent_singularities.degree());
    j["companion_convention"] = ode.companion_convention;
    return j.dump(2);
}

std::string ode_comparison_json(const qde::OdeComparison& cmp)
{
    json j;
    j["equal"] = cmp.equal;
    json per = json::array();
    for (std::size_t i = 0; i < cmp.lhs.size(); ++i) {
        per.push_back({{"theta_power", i},
                       {"derived", cmp.lhs[i].to_string()},
                       {"printed", cmp.rhs[i].to_string()},
                       {"difference", cmp.difference[i].to_string()},
                       {"equal", cmp.difference[i].is_zero()}});
    }
    j["coefficients"] = per;
    return j.dump(2);
}

namespace {

template <class K>
json residual_json_impl(const qde::ResidualReport<K>& rep, const char* kind)
{
    json j;
    j["kind"] = kind;
    j["pass"] = rep.pass;
    j["trusted_order"] = rep.trusted_order;
    j["max_magnitude"] = real_str(rep.max_magnitude, 3);
    return j;
}

} // namespace

std::string residual_report_json(const qde::ResidualReport<GaussRat>& rep)
{
    return residual_json_impl(rep, "exact").dump(2);
}

std::string residual_report_json(const qde::ResidualReport<Complex>& rep)
{
    return residual_json_impl(rep, "float").dump(2);
}

std::string value_json(const Complex& z, unsigned precision_digits)
{
    json j;
    j["value"] = complex_json(z, precision_digits >= digits10 ? 0 : precision_digits);
    j["precision_digits"] = precision_digits;
    return j.dump(2);
}

} // namespace qbl::serialize

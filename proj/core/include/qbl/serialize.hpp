#ifndef QBL_SERIALIZE_HPP
#define QBL_SERIALIZE_HPP

#include <string>

#include "qbl/cohalg.hpp"
#include "qbl/logseries.hpp"
#include "qbl/qde.hpp"
#include "qbl/ratfun.hpp"

namespace qbl::serialize {

// complex values as ["re", "im"] string pairs, lossless at the working
// precision; digits = 0 means full precision
std::string complex_str(const Complex& z, unsigned digits = 0);

std::string real_str(const Real& x, unsigned digits = 0);

std::string ratfun_matrix_json(const RatFunMatrix& m);

std::string algebra_json(const NilAlgebra& a);

std::string logseries_json(const NumLogSeries& s, unsigned digits = 0);
std::string logseries_json(const ExactLogSeries& s);
std::string logseries_csv(const NumLogSeries& s, unsigned digits = 17);
std::string logseries_csv(const ExactLogSeries& s, unsigned digits = 17);

std::string master_ode_json(const qde::MasterODE& ode);
std::string ode_comparison_json(const qde::OdeComparison& cmp);

std::string residual_report_json(const qde::ResidualReport<GaussRat>& rep);
std::string residual_report_json(const qde::ResidualReport<Complex>& rep);

std::string value_json(const Complex& z, unsigned precision_digits);

} // namespace qbl::serialize

#endif

#ifndef QBL_BOREL_HPP
#define QBL_BOREL_HPP

#include <functional>
#include <map>
#include <vector>

#include "qbl/cohalg.hpp"
#include "qbl/contour.hpp"
#include "qbl/logseries.hpp"

namespace qbl::borel {

// Weight tuples (alpha, beta) of a Borel multitransform. The in-scope
// transforms all carry rational weights; keeping them exact makes the formal
// transform's exponent bookkeeping exact as well.
struct BorelWeights {
    std::vector<Rational> alpha;
    std::vector<Rational> beta;

    std::size_t arity() const { return alpha.size(); }
    void validate() const;
};

// Exponent in the monoid (sum_j kappa_j N) + Nil(A): lattice counts per slot
// plus the coefficient vector of an exact nilpotent algebra element.
struct RibKey {
    std::vector<unsigned> n;
    std::vector<Rational> nil;

    friend bool operator<(const RibKey& a, const RibKey& b)
    {
        if (a.n != b.n) return a.n < b.n;
        return a.nil < b.nil;
    }
    friend bool operator==(const RibKey& a, const RibKey& b) { return a.n == b.n && a.nil == b.nil; }
};

// Truncated generalized power series sum f(s) Z^s with s = (kappa_j n_j)_j + nil.
// Supports are finite by construction: a term is kept iff its z-order
// sum_j kappa_j n_j stays <= trunc, which is what analytification reports as
// the trusted order. Truncated supports make the Artinian/narrowness
// conditions of the full theory automatic.
template <class K>
struct RibSeriesT {
    AlgebraPtr alg;
    std::vector<Rational> kappa; // positive, one per slot
    Rational trunc{0};
    std::map<RibKey, ElemT<K>> terms;

    RibSeriesT() = default;
    RibSeriesT(AlgebraPtr a, std::vector<Rational> k, Rational tr)
        : alg(std::move(a)), kappa(std::move(k)), trunc(std::move(tr))
    {
        for (const auto& kp : kappa)
            if (kp <= 0) throw DomainError("ribenboim series needs positive kappa weights");
    }

    Rational key_order(const RibKey& k) const
    {
        Rational o = 0;
        for (std::size_t j = 0; j < kappa.size(); ++j) o += kappa[j] * Rational(k.n[j]);
        return o;
    }

    void add_term(const RibKey& key, const ElemT<K>& coeff)
    {
        if (key.n.size() != kappa.size()) throw DimensionError("ribenboim key slot count mismatch");
        if (coeff.algebra() != alg) throw AlgebraMismatch();
        if (key.nil.size() != alg->dim() || key.nil[alg->unit_index()] != 0)
            throw NotNilpotent("ribenboim exponent has a unit component");
        if (key_order(key) > trunc) return;
        auto it = terms.find(key);
        if (it == terms.end())
            terms.emplace(key, coeff);
        else
            it->second = it->second + coeff;
    }
};

using RibSeries = RibSeriesT<GaussRat>;
using RibSeriesC = RibSeriesT<Complex>;

RibSeriesC rib_promote(const RibSeries& f);

// Convolution product over the exponent monoid; slot structures are unified
// to a common kappa refinement first, and the result is truncated at the
// smaller trusted order.
RibSeries ribenboim_mul(const RibSeries& f, const RibSeries& g);
RibSeriesC ribenboim_mul(const RibSeriesC& f, const RibSeriesC& g);

// Formal Borel (alpha,beta)-multitransform of single-slot series: term
// coefficients are multiplied and divided by Gamma(1 + sum_l beta_l iota(s_l))
// via the entire reciprocal 1/Gamma evaluated nilpotently, and exponents are
// rescaled slotwise by 1/(alpha_l beta_l).
RibSeriesC borel_formal(const std::vector<RibSeriesC>& fs, const BorelWeights& w);

// z^s -> z^(sum kappa_j n_j) exp(nil * log z), one LogSeries per algebra
// basis direction. Requires the scalar exponents to land on a nonnegative
// integer grid (true for all in-scope series).
std::vector<ExactLogSeries> analytify(const RibSeries& f);
std::vector<NumLogSeries> analytify(const RibSeriesC& f);

// E-series of a P^1-bundle: sum_k Z^(k+xi) / Gamma(1+k+xi).
struct ESeries {
    RibSeriesC series;
    AlgElement xi;
};
ESeries e_series(const AlgebraPtr& alg, const AlgElement& xi, unsigned N);

// Small J-function of P^1 as a Ribenboim series over alg, with the P^1
// hyperplane class embedded at basis index sigma_index:
// sum_d (1/(d!)^2)(1 - 2 H_d sigma) Z^(2d + 2 sigma), kappa = 2.
RibSeries jp1_series(const AlgebraPtr& alg, std::size_t sigma_index, unsigned order);

// plain exponential sum_k Z^k / k! (kappa = 1, no nilpotent part)
RibSeries exp_series(const AlgebraPtr& alg, unsigned order);

// sum_k Z^(2k) / (k!)^2 (kappa = 2): the log-free P^1 master function
RibSeries ups1_rib_series(const AlgebraPtr& alg, unsigned order);

// Analytic multitransform: evaluators receive log-arguments
// l_j = log(z)/(alpha_j beta_j) - beta_j log(lambda), principal log(lambda).
using LogArgEvaluator = std::function<Complex(const Complex&)>;
Complex borel_numeric(const std::vector<LogArgEvaluator>& fs,
                      const BorelWeights& w,
                      const Complex& zlog,
                      const contour::HankelContour& c,
                      const Real& tol);

} // namespace qbl::borel

#endif

#include "qbl/borel.hpp"

#include "qbl/specfun.hpp"

namespace qbl::borel {

void BorelWeights::validate() const
{
    if (alpha.size() != beta.size() || alpha.empty())
        throw DimensionError("weight tuples must be nonempty and of equal arity");
    for (const auto& a : alpha)
        if (a == 0) throw DomainError("alpha weights must be nonzero");
    for (const auto& b : beta)
        if (b == 0) throw DomainError("beta weights must be nonzero");
}

RibSeriesC rib_promote(const RibSeries& f)
{
    RibSeriesC r(f.alg, f.kappa, f.trunc);
    for (const auto& [key, coeff] : f.terms) r.add_term(key, promote(coeff));
    return r;
}

namespace {

Rational rational_gcd(const Rational& a, const Rational& b)
{
    BigInt n = gcd(BigInt(numerator(a) * denominator(b)), BigInt(numerator(b) * denominator(a)));
    return Rational(n, denominator(a) * denominator(b));
}

template <class K>
RibSeriesT<K> rib_mul_impl(const RibSeriesT<K>& f, const RibSeriesT<K>& g)
{
    if (f.alg != g.alg) throw AlgebraMismatch();
    if (f.kappa.size() != g.kappa.size())
        throw DimensionError("ribenboim product needs matching slot counts");
    std::size_t h = f.kappa.size();
    // common kappa refinement per slot; lattice counts rescale accordingly
    std::vector<Rational> kap(h);
    std::vector<Rational> fs(h), gs(h); // integer scale factors per slot
    for (std::size_t j = 0; j < h; ++j) {
        kap[j] = rational_gcd(f.kappa[j], g.kappa[j]);
        fs[j] = f.kappa[j] / kap[j];
        gs[j] = g.kappa[j] / kap[j];
    }
    RibSeriesT<K> r(f.alg, kap, std::min(f.trunc, g.trunc));
    for (const auto& [ka, ca] : f.terms)
        for (const auto& [kb, cb] : g.terms) {
            RibKey key;
            key.n.resize(h);
            for (std::size_t j = 0; j < h; ++j) {
                Rational nj = fs[j] * Rational(ka.n[j]) + gs[j] * Rational(kb.n[j]);
                key.n[j] = static_cast<unsigned>(numerator(nj));
            }
            key.nil.resize(ka.nil.size());
            for (std::size_t i = 0; i < key.nil.size(); ++i) key.nil[i] = ka.nil[i] + kb.nil[i];
            if (r.key_order(key) > r.trunc) continue;
            r.add_term(key, ca * cb);
        }
    return r;
}

} // namespace

RibSeries ribenboim_mul(const RibSeries& f, const RibSeries& g)
{
    return rib_mul_impl(f, g);
}

RibSeriesC ribenboim_mul(const RibSeriesC& f, const RibSeriesC& g)
{
    return rib_mul_impl(f, g);
}

RibSeriesC borel_formal(const std::vector<RibSeriesC>& fs, const BorelWeights& w)
{
    w.validate();
    if (fs.empty() || fs.size() != w.arity())
        throw DimensionError("borel_formal arity does not match the weights");
    const AlgebraPtr& alg = fs[0].alg;
    std::size_t h = fs.size();
    std::vector<Rational> kap(h);
    Rational trunc;
    for (std::size_t j = 0; j < h; ++j) {
        if (fs[j].alg != alg) throw AlgebraMismatch();
        if (fs[j].kappa.size() != 1)
            throw DimensionError("borel_formal expects single-slot input series");
        Rational ab = w.alpha[j] * w.beta[j];
        kap[j] = fs[j].kappa[0] / ab;
        if (kap[j] <= 0) throw DomainError("weights must keep rescaled exponents positive");
        Rational tj = fs[j].trunc / ab;
        trunc = (j == 0) ? tj : std::min(trunc, tj);
    }
    RibSeriesC out(alg, kap, trunc);

    // iterate over the cartesian product of supports
    std::vector<std::map<RibKey, AlgElementC>::const_iterator> its(h), ends(h);
    for (std::size_t j = 0; j < h; ++j) {
        its[j] = fs[j].terms.begin();
        ends[j] = fs[j].terms.end();
        if (its[j] == ends[j]) return out;
    }
    const unsigned maxp = static_cast<unsigned>(alg->dim());
    while (true) {
        // assemble one output term
        AlgElementC coeff = its[0]->second;
        for (std::size_t j = 1; j < h; ++j) coeff = coeff * its[j]->second;

        Rational w0 = 0;                  // scalar part of sum beta_l iota(s_l)
        AlgElement nil_sum(alg);          // nilpotent part of the same
        RibKey key;
        key.n.resize(h);
        key.nil.assign(alg->dim(), Rational(0));
        for (std::size_t j = 0; j < h; ++j) {
            const RibKey& kj = its[j]->first;
            w0 += w.beta[j] * fs[j].kappa[0] * Rational(kj.n[0]);
            key.n[j] = kj.n[0];
            Rational ab = w.alpha[j] * w.beta[j];
            for (std::size_t i = 0; i < key.nil.size(); ++i) {
                nil_sum[i] += GaussRat(w.beta[j] * kj.nil[i]);
                key.nil[i] += kj.nil[i] / ab;
            }
        }
        if (out.key_order(key) <= out.trunc) {
            // divide by Gamma(1 + w0 + nil) as multiplication by the entire
            // reciprocal evaluated nilpotently
            auto taylor = specfun::recip_gamma_taylor_at(1 + w0, maxp);
            AlgElementC rg = nilpotent_series_eval(taylor, promote(nil_sum));
            out.add_term(key, coeff * rg);
        }

        // advance the product iterator
        std::size_t j = 0;
        while (j < h) {
            if (++its[j] != ends[j]) break;
            its[j] = fs[j].terms.begin();
            ++j;
        }
        if (j == h) break;
    }
    return out;
}

namespace {

template <class K>
std::vector<LogSeriesT<K>> analytify_impl(const RibSeriesT<K>& f)
{
    const AlgebraPtr& alg = f.alg;
    if (!alg) throw DomainError("analytify on an empty series");
    if (f.trunc < 0) throw DomainError("negative truncation order");
    unsigned N = static_cast<unsigned>(numerator(f.trunc) / denominator(f.trunc));
    unsigned Jmax = static_cast<unsigned>(alg->dim());
    std::vector<LogSeriesT<K>> out(alg->dim(), LogSeriesT<K>(N, Jmax));

    for (const auto& [key, coeff] : f.terms) {
        Rational ord = f.key_order(key);
        if (denominator(ord) != 1)
            throw DomainError("analytify needs integer z-exponents");
        unsigned m = static_cast<unsigned>(numerator(ord));
        if (m > N) continue;
        // coeff * exp(nil log z) = sum_j (nil^j coeff / j!) log^j z
        AlgElement nil(alg);
        for (std::size_t i = 0; i < key.nil.size(); ++i) nil[i] = GaussRat(key.nil[i]);
        ElemT<K> term = coeff;
        Rational jfact = 1;
        for (unsigned j = 0; j <= Jmax; ++j) {
            if (j > 0) {
                ElemT<K> nilK(alg);
                for (std::size_t i = 0; i < key.nil.size(); ++i)
                    nilK[i] = detail::scalar_from_rational(key.nil[i], static_cast<K*>(nullptr));
                term = term * nilK;
                jfact *= j;
                if (term.is_zero()) break;
            }
            K inv_jf = detail::scalar_from_rational(Rational(1) / jfact, static_cast<K*>(nullptr));
            for (std::size_t b = 0; b < alg->dim(); ++b) out[b].at(m, j) += inv_jf * term[b];
        }
    }
    // trim unused log powers
    unsigned jused = 0;
    for (const auto& s : out)
        for (unsigned m = 0; m <= s.N; ++m)
            for (unsigned j = 0; j <= s.J; ++j)
                if (!detail::series_coeff_zero(s.at(m, j))) jused = std::max(jused, j);
    std::vector<LogSeriesT<K>> trimmed(alg->dim(), LogSeriesT<K>(N, jused));
    for (std::size_t b = 0; b < alg->dim(); ++b)
        for (unsigned m = 0; m <= N; ++m)
            for (unsigned j = 0; j <= jused; ++j) trimmed[b].at(m, j) = out[b].at(m, j);
    return trimmed;
}

} // namespace

std::vector<ExactLogSeries> analytify(const RibSeries& f)
{
    return analytify_impl(f);
}

std::vector<NumLogSeries> analytify(const RibSeriesC& f)
{
    return analytify_impl(f);
}

ESeries e_series(const AlgebraPtr& alg, const AlgElement& xi, unsigned N)
{
    if (!xi.has_no_unit_part()) throw NotNilpotent("e_series needs a nilpotent class");
    RibSeriesC s(alg, {Rational(1)}, Rational(N));
    AlgElementC xic = promote(xi);
    const unsigned maxp = static_cast<unsigned>(alg->dim());
    for (unsigned k = 0; k <= N; ++k) {
        auto taylor = specfun::recip_gamma_taylor_at(Rational(k + 1), maxp);
        AlgElementC coeff = nilpotent_series_eval(taylor, xic);
        RibKey key;
        key.n = {k};
        key.nil.assign(alg->dim(), Rational(0));
        for (std::size_t i = 0; i < alg->dim(); ++i) key.nil[i] = xi.coeff()[i].re;
        s.add_term(key, coeff);
    }
    return {std::move(s), xi};
}

RibSeries jp1_series(const AlgebraPtr& alg, std::size_t sigma_index, unsigned order)
{
    RibSeries s(alg, {Rational(2)}, Rational(order));
    Rational hd = 0;   // harmonic number H_d
    Rational dfact = 1;
    for (unsigned d = 0; 2 * d <= order; ++d) {
        if (d > 0) {
            hd += Rational(1, d);
            dfact *= Rational(d) * Rational(d);
        }
        AlgElement c(alg);
        c[alg->unit_index()] = GaussRat(Rational(1) / dfact);
        c[sigma_index] = GaussRat(Rational(-2) * hd / dfact);
        RibKey key;
        key.n = {d};
        key.nil.assign(alg->dim(), Rational(0));
        key.nil[sigma_index] = 2;
        s.add_term(key, c);
    }
    return s;
}

RibSeries exp_series(const AlgebraPtr& alg, unsigned order)
{
    RibSeries s(alg, {Rational(1)}, Rational(order));
    Rational kfact = 1;
    for (unsigned k = 0; k <= order; ++k) {
        if (k > 0) kfact *= k;
        AlgElement c(alg);
        c[alg->unit_index()] = GaussRat(Rational(1) / kfact);
        RibKey key;
        key.n = {k};
        key.nil.assign(alg->dim(), Rational(0));
        s.add_term(key, c);
    }
    return s;
}

RibSeries ups1_rib_series(const AlgebraPtr& alg, unsigned order)
{
    RibSeries s(alg, {Rational(2)}, Rational(order));
    Rational kfact2 = 1;
    for (unsigned k = 0; 2 * k <= order; ++k) {
        if (k > 0) kfact2 *= Rational(k) * Rational(k);
        AlgElement c(alg);
        c[alg->unit_index()] = GaussRat(Rational(1) / kfact2);
        RibKey key;
        key.n = {k};
        key.nil.assign(alg->dim(), Rational(0));
        s.add_term(key, c);
    }
    return s;
}

Complex borel_numeric(const std::vector<LogArgEvaluator>& fs,
                      const BorelWeights& w,
                      const Complex& zlog,
                      const contour::HankelContour& c,
                      const Real& tol)
{
    w.validate();
    if (fs.size() != w.arity()) throw DimensionError("borel_numeric arity does not match the weights");
    std::vector<Complex> inv_ab(fs.size()), beta(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        inv_ab[j] = Complex(Real(1) / to_real(w.alpha[j] * w.beta[j]));
        beta[j] = Complex(to_real(w.beta[j]));
    }
    auto integrand = [&](const Complex& lambda) {
        Complex loglam = log(lambda); // principal branch
        Complex prod(1);
        for (std::size_t j = 0; j < fs.size(); ++j)
            prod *= fs[j](zlog * inv_ab[j] - beta[j] * loglam);
        return prod;
    };
    return contour::hankel_integral(integrand, c, tol);
}

} // namespace qbl::borel

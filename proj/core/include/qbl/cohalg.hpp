#ifndef QBL_COHALG_HPP
#define QBL_COHALG_HPP

#include <memory>
#include <string>
#include <vector>

#include "qbl/errors.hpp"
#include "qbl/rational.hpp"

namespace qbl {

// Finite dimensional graded commutative algebra with nilpotents, given by
// exact rational structure constants. Instances model cohomology rings; the
// constructor verifies commutativity, associativity, the unit law and
// nilpotency of every positive-degree basis element.
class NilAlgebra {
public:
    NilAlgebra(std::vector<std::string> labels,
               std::vector<int> grading,
               std::vector<Rational> structure, // c[(i*dim+j)*dim+k] = c^k_{ij}
               std::size_t unit_index,
               std::size_t top_index);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& grading() const { return grading_; }
    std::size_t unit_index() const { return unit_; }
    std::size_t top_index() const { return top_; }

    const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const
    {
        return sc_[(i * dim() + j) * dim() + k];
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> grading_;
    std::vector<Rational> sc_;
    std::size_t unit_;
    std::size_t top_;

    void verify() const;
};

using AlgebraPtr = std::shared_ptr<const NilAlgebra>;

namespace detail {
inline GaussRat scalar_from_rational(const Rational& q, GaussRat*) { return GaussRat(q); }
inline Complex scalar_from_rational(const Rational& q, Complex*) { return Complex(to_real(q)); }
inline bool scalar_is_zero(const GaussRat& c) { return c.is_zero(); }
inline bool scalar_is_zero(const Complex& c) { return c.real() == 0 && c.imag() == 0; }
} // namespace detail

// Element of a NilAlgebra with coefficients in K (GaussRat for the exact
// kernel, Complex for analytic data).
template <class K>
class ElemT {
public:
    ElemT() = default;
    explicit ElemT(AlgebraPtr alg) : alg_(std::move(alg)), c_(alg_->dim()) {}
    ElemT(AlgebraPtr alg, std::vector<K> coeff) : alg_(std::move(alg)), c_(std::move(coeff))
    {
        if (c_.size() != alg_->dim()) throw DimensionError("element coefficient count != algebra dim");
    }

    static ElemT basis(AlgebraPtr alg, std::size_t idx)
    {
        ElemT e(alg);
        e.c_[idx] = detail::scalar_from_rational(Rational(1), static_cast<K*>(nullptr));
        return e;
    }
    static ElemT unit(AlgebraPtr alg) { return basis(alg, alg->unit_index()); }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<K>& coeff() const { return c_; }
    K& operator[](std::size_t i) { return c_[i]; }
    const K& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (!detail::scalar_is_zero(x)) return false;
        return true;
    }

    // zero coefficient on the unit direction
    bool has_no_unit_part() const { return detail::scalar_is_zero(c_[alg_->unit_index()]); }

    friend ElemT operator+(const ElemT& a, const ElemT& b)
    {
        a.check(b);
        ElemT r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend ElemT operator-(const ElemT& a, const ElemT& b)
    {
        a.check(b);
        ElemT r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend ElemT operator*(const K& s, const ElemT& a)
    {
        ElemT r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend ElemT operator*(const ElemT& a, const ElemT& b)
    {
        a.check(b);
        const NilAlgebra& A = *a.alg_;
        ElemT r(a.alg_);
        for (std::size_t i = 0; i < A.dim(); ++i) {
            if (detail::scalar_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < A.dim(); ++j) {
                if (detail::scalar_is_zero(b.c_[j])) continue;
                K ab = a.c_[i] * b.c_[j];
                for (std::size_t k = 0; k < A.dim(); ++k) {
                    const Rational& s = A.structure(i, j, k);
                    if (s == 0) continue;
                    r.c_[k] += ab * detail::scalar_from_rational(s, static_cast<K*>(nullptr));
                }
            }
        }
        return r;
    }
    friend bool operator==(const ElemT& a, const ElemT& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

    K integrate_top() const { return c_[alg_->top_index()]; }

private:
    AlgebraPtr alg_;
    std::vector<K> c_;

    void check(const ElemT& b) const
    {
        if (alg_ != b.alg_) throw AlgebraMismatch();
    }
};

using AlgElement = ElemT<GaussRat>;
using AlgElementC = ElemT<Complex>;

AlgElementC promote(const AlgElement& e);

// H^*(Bl_1 P^2): basis (T0, T1, T2, T3), grading (0,2,2,4), with
// T1*T1 = T1*T2 = T3 and T2*T2 = 0.
AlgebraPtr alg_blowup_p2();

// Hyperplane-class index identifications in alg_blowup_p2(): the class of
// O(1) on the bundle side is T1, the pulled-back base hyperplane is T2.
inline constexpr std::size_t blowup_xi_index = 1;
inline constexpr std::size_t blowup_rho_index = 2;

// C[s]/(s^n) = H^*(P^{n-1}), basis 1, s, ..., s^{n-1}.
AlgebraPtr alg_projective(std::size_t n);

AlgebraPtr alg_tensor(const AlgebraPtr& a, const AlgebraPtr& b);

// F(alpha) = sum_k coeffs[k] * alpha^k, a finite sum because alpha is
// nilpotent. Throws NotNilpotent when alpha has a unit component.
template <class K>
ElemT<K> nilpotent_series_eval(const std::vector<K>& coeffs, const ElemT<K>& alpha)
{
    if (!alpha.has_no_unit_part()) throw NotNilpotent();
    ElemT<K> acc(alpha.algebra());
    ElemT<K> pw = ElemT<K>::unit(alpha.algebra());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) {
            pw = pw * alpha;
            if (pw.is_zero()) break;
        }
        acc = acc + coeffs[k] * pw;
    }
    return acc;
}

// Multiplicative inverse of u = c*(unit + nilpotent), c != 0, via the
// truncated geometric series.
template <class K>
ElemT<K> nilpotent_unit_inverse(const ElemT<K>& u)
{
    const auto& alg = u.algebra();
    K c = u[alg->unit_index()];
    if (detail::scalar_is_zero(c)) throw DomainError("inverting a non-unit algebra element");
    K cinv = detail::scalar_from_rational(Rational(1), static_cast<K*>(nullptr)) / c;
    ElemT<K> n = cinv * u; // unit + nilpotent part
    ElemT<K> m = ElemT<K>::unit(alg) - n;
    ElemT<K> acc = ElemT<K>::unit(alg);
    ElemT<K> pw = ElemT<K>::unit(alg);
    for (std::size_t k = 1; k <= alg->dim(); ++k) {
        pw = pw * m;
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return cinv * acc;
}

} // namespace qbl

#endif

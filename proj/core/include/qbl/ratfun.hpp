#ifndef QBL_RATFUN_HPP
#define QBL_RATFUN_HPP

#include <string>
#include <vector>

#include "qbl/poly.hpp"

namespace qbl {

// Rational function num/den in z. Normal form: den monic, gcd(num, den) = 1.
class RatFun {
public:
    RatFun() : num_(), den_(Poly::one()) {}
    RatFun(Poly num, Poly den);
    explicit RatFun(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
    explicit RatFun(GaussRat c) : num_(Poly(std::move(c))), den_(Poly::one()) {}
    explicit RatFun(long c) : num_(Poly(GaussRat(c))), den_(Poly::one()) {}

    static RatFun z() { return RatFun(Poly::monomial(GaussRat(1), 1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFun derivative() const;
    Complex eval(const Complex& z) const;

    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    // "num/den" with both parts in sparse c*z^k sum form, integer-rescaled
    // for display
    std::string to_string(const std::string& var = "z") const;

private:
    Poly num_;
    Poly den_;
    void reduce();
};

class RatFunMatrix {
public:
    RatFunMatrix() : rows_(0), cols_(0) {}
    RatFunMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatFunMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFun& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RatFun& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RatFunMatrix transpose() const;
    RatFunMatrix derivative() const;

    friend RatFunMatrix operator+(const RatFunMatrix& a, const RatFunMatrix& b);
    friend RatFunMatrix operator-(const RatFunMatrix& a, const RatFunMatrix& b);
    friend RatFunMatrix operator*(const RatFunMatrix& a, const RatFunMatrix& b);
    friend RatFunMatrix operator*(const RatFun& s, const RatFunMatrix& a);
    friend bool operator==(const RatFunMatrix& a, const RatFunMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<RatFun> e_;
};

// Exact determinant via fraction-free (Bareiss) elimination on the
// denominator-cleared polynomial matrix.
RatFun ratfun_det(const RatFunMatrix& m);

// Exact inverse; fraction-free Gauss-Jordan. Throws SingularMatrix when
// det == 0 identically.
RatFunMatrix ratfun_mat_inverse(const RatFunMatrix& m);

// Column vector solve M*x = b (same kernel as the inverse).
std::vector<RatFun> ratfun_mat_solve(const RatFunMatrix& m, const std::vector<RatFun>& b);

} // namespace qbl

#endif

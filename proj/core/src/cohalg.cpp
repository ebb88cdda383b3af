#include "qbl/cohalg.hpp"

namespace qbl {

NilAlgebra::NilAlgebra(std::vector<std::string> labels,
                       std::vector<int> grading,
                       std::vector<Rational> structure,
                       std::size_t unit_index,
                       std::size_t top_index)
    : labels_(std::move(labels)),
      grading_(std::move(grading)),
      sc_(std::move(structure)),
      unit_(unit_index),
      top_(top_index)
{
    std::size_t n = labels_.size();
    if (grading_.size() != n || sc_.size() != n * n * n || unit_ >= n || top_ >= n)
        throw DimensionError("inconsistent algebra descriptor");
    verify();
}

void NilAlgebra::verify() const
{
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (structure(i, j, k) != structure(j, i, k))
                    throw DomainError("structure constants not commutative");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (structure(unit_, j, k) != Rational(j == k ? 1 : 0))
                throw DomainError("unit element does not act as identity");
    // associativity on basis triples
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Rational lhs = 0, rhs = 0;
                    for (std::size_t m = 0; m < n; ++m) {
                        lhs += structure(i, j, m) * structure(m, k, l);
                        rhs += structure(j, k, m) * structure(i, m, l);
                    }
                    if (lhs != rhs) throw DomainError("structure constants not associative");
                }
    // every positive-degree basis element is nilpotent
    for (std::size_t b = 0; b < n; ++b) {
        if (grading_[b] <= 0) continue;
        std::vector<Rational> pw(n, 0);
        pw[b] = 1;
        for (std::size_t step = 1; step <= n; ++step) {
            std::vector<Rational> nx(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (pw[i] == 0) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    const Rational& s = structure(i, b, k);
                    if (s != 0) nx[k] += pw[i] * s;
                }
            }
            pw = std::move(nx);
            bool zero = true;
            for (const auto& x : pw)
                if (x != 0) zero = false;
            if (zero) break;
            if (step == n) throw DomainError("positive-degree basis element is not nilpotent");
        }
    }
}

AlgElementC promote(const AlgElement& e)
{
    std::vector<Complex> c(e.coeff().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_complex(e.coeff()[i]);
    return AlgElementC(e.algebra(), std::move(c));
}

AlgebraPtr alg_blowup_p2()
{
    std::size_t n = 4;
    std::vector<Rational> sc(n * n * n, 0);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
        sc[(i * n + j) * n + k] = v;
        sc[(j * n + i) * n + k] = v;
    };
    for (std::size_t j = 0; j < n; ++j) set(0, j, j, 1);
    set(1, 1, 3, 1); // T1^2 = T3
    set(1, 2, 3, 1); // T1*T2 = T3
    // T2^2 = 0, Ti*T3 = 0 for i >= 1
    return std::make_shared<NilAlgebra>(std::vector<std::string>{"T0", "T1", "T2", "T3"},
                                        std::vector<int>{0, 2, 2, 4}, std::move(sc), 0, 3);
}

AlgebraPtr alg_projective(std::size_t n)
{
    if (n == 0) throw InvalidDimension("projective-space algebra needs n >= 1");
    std::vector<std::string> labels(n);
    std::vector<int> grading(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i == 0 ? "1" : (i == 1 ? "s" : "s^" + std::to_string(i));
        grading[i] = 2 * static_cast<int>(i);
    }
    std::vector<Rational> sc(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) sc[(i * n + j) * n + (i + j)] = 1;
    return std::make_shared<NilAlgebra>(std::move(labels), std::move(grading), std::move(sc), 0, n - 1);
}

AlgebraPtr alg_tensor(const AlgebraPtr& a, const AlgebraPtr& b)
{
    std::size_t na = a->dim(), nb = b->dim(), n = na * nb;
    std::vector<std::string> labels(n);
    std::vector<int> grading(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            labels[i * nb + j] = a->labels()[i] + "*" + b->labels()[j];
            grading[i * nb + j] = a->grading()[i] + b->grading()[j];
        }
    std::vector<Rational> sc(n * n * n, 0);
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < nb; ++j1)
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2)
                    for (std::size_t k1 = 0; k1 < na; ++k1)
                        for (std::size_t k2 = 0; k2 < nb; ++k2) {
                            Rational v = a->structure(i1, i2, k1) * b->structure(j1, j2, k2);
                            if (v != 0) sc[((i1 * nb + j1) * n + (i2 * nb + j2)) * n + (k1 * nb + k2)] = v;
                        }
    return std::make_shared<NilAlgebra>(std::move(labels), std::move(grading), std::move(sc),
                                        a->unit_index() * nb + b->unit_index(),
                                        a->top_index() * nb + b->top_index());
}

} // namespace qbl

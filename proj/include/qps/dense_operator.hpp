#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qps/root_phase.hpp"

namespace qps {

/// Global comparison tolerance for approximate (dense) checks.
inline constexpr double default_tolerance = 1e-10;

class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Square complex matrix, double precision, row-major.
 *
 * Immutable once built. Every constructor rejects non-finite entries.
 */
class DenseOperator {
public:
    DenseOperator() = default;

    DenseOperator(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
        if (dim_ == 0) {
            throw dimension_error("DenseOperator: dimension must be positive");
        }
        if (entries_.size() != dim_ * dim_) {
            throw dimension_error("DenseOperator: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                                  std::to_string(entries_.size()));
        }
        for (const auto& z : entries_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::domain_error("DenseOperator: non-finite entry");
            }
        }
    }

    static DenseOperator zero(std::size_t dim) { return {dim, std::vector<cplx>(dim * dim)}; }

    static DenseOperator identity(std::size_t dim) {
        std::vector<cplx> e(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            e[i * dim + i] = 1.0;
        }
        return {dim, std::move(e)};
    }

    static DenseOperator diagonal(std::span<const cplx> diag) {
        const std::size_t n = diag.size();
        std::vector<cplx> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i * n + i] = diag[i];
        }
        return {n, std::move(e)};
    }

    template <class F>
    static DenseOperator from_function(std::size_t dim, F&& f) {
        std::vector<cplx> e(dim * dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                e[r * dim + c] = f(r, c);
            }
        }
        return {dim, std::move(e)};
    }

    std::size_t dim() const noexcept { return dim_; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    DenseOperator adjoint() const {
        return from_function(dim_, [&](std::size_t r, std::size_t c) { return std::conj((*this)(c, r)); });
    }

    cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Frobenius (Hilbert-Schmidt) norm.
    double hs_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : entries_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    bool is_hermitian(double tol = default_tolerance) const;

    friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
        return zip(a, b, std::plus<>{});
    }
    friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
        return zip(a, b, std::minus<>{});
    }
    friend DenseOperator operator*(cplx s, const DenseOperator& a) {
        std::vector<cplx> e(a.entries_);
        for (auto& z : e) {
            z *= s;
        }
        return {a.dim_, std::move(e)};
    }
    friend DenseOperator operator*(const DenseOperator& a, cplx s) { return s * a; }

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
        require_same_dim(a, b, "matrix product");
        const std::size_t n = a.dim_;
        std::vector<cplx> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    e[i * n + j] += aik * b(k, j);
                }
            }
        }
        return {n, std::move(e)};
    }

    std::vector<cplx> apply(std::span<const cplx> x) const {
        if (x.size() != dim_) {
            throw dimension_error("DenseOperator::apply: vector length mismatch");
        }
        std::vector<cplx> y(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                y[r] += (*this)(r, c) * x[c];
            }
        }
        return y;
    }

    static void require_same_dim(const DenseOperator& a, const DenseOperator& b, const char* what) {
        if (a.dim_ != b.dim_) {
            throw dimension_error(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim_) + " vs " +
                                  std::to_string(b.dim_) + ")");
        }
    }

private:
    template <class Op>
    static DenseOperator zip(const DenseOperator& a, const DenseOperator& b, Op op) {
        require_same_dim(a, b, "elementwise op");
        std::vector<cplx> e(a.entries_.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = op(a.entries_[i], b.entries_[i]);
        }
        return {a.dim_, std::move(e)};
    }

    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
    DenseOperator::require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

inline bool approx_equal(const DenseOperator& a, const DenseOperator& b, double tol = default_tolerance) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

inline bool DenseOperator::is_hermitian(double tol) const { return max_abs_diff(*this, adjoint()) <= tol; }

/// Hilbert-Schmidt pairing Tr[A^dagger B].
inline cplx hs_inner(const DenseOperator& a, const DenseOperator& b) {
    DenseOperator::require_same_dim(a, b, "hs_inner");
    cplx s{};
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        s += std::conj(a.entries()[i]) * b.entries()[i];
    }
    return s;
}

} // namespace qps

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qps/dense_operator.hpp"
#include "qps/root_phase.hpp"

namespace qps {

/**
 * Exact monomial matrix: column j has the single entry phase(j) at row perm(j).
 *
 * All phases share one order, so the whole object lives over the cyclotomic
 * units of that order and products never round. Normalization factors are
 * deliberately absent; callers carry them as explicit scalars.
 */
class PhasedPermutation {
public:
    PhasedPermutation(std::vector<std::size_t> perm, std::vector<std::int64_t> exponents, std::int64_t order)
        : perm_(std::move(perm)), exponents_(std::move(exponents)), order_(order) {
        const std::size_t n = perm_.size();
        if (n == 0) {
            throw dimension_error("PhasedPermutation: dimension must be positive");
        }
        if (exponents_.size() != n) {
            throw dimension_error("PhasedPermutation: perm/phase length mismatch");
        }
        if (order_ <= 0) {
            throw std::invalid_argument("PhasedPermutation: phase order must be positive");
        }
        std::vector<bool> seen(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            if (perm_[j] >= n || seen[perm_[j]]) {
                throw std::invalid_argument("PhasedPermutation: perm is not a bijection (column " +
                                            std::to_string(j) + ")");
            }
            seen[perm_[j]] = true;
            exponents_[j] = mod_floor(exponents_[j], order_);
        }
    }

    static PhasedPermutation identity(std::size_t dim, std::int64_t order = 1) {
        std::vector<std::size_t> p(dim);
        std::iota(p.begin(), p.end(), std::size_t{0});
        return {std::move(p), std::vector<std::int64_t>(dim, 0), order};
    }

    /// |j> -> |j + steps mod dim>, unit phases.
    static PhasedPermutation cyclic_shift(std::size_t dim, std::int64_t steps, std::int64_t order = 1) {
        std::vector<std::size_t> p(dim);
        const auto n = static_cast<std::int64_t>(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            p[j] = static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(j) + steps, n));
        }
        return {std::move(p), std::vector<std::int64_t>(dim, 0), order};
    }

    static PhasedPermutation diagonal(std::vector<std::int64_t> exponents, std::int64_t order) {
        std::vector<std::size_t> p(exponents.size());
        std::iota(p.begin(), p.end(), std::size_t{0});
        return {std::move(p), std::move(exponents), order};
    }

    std::size_t dim() const noexcept { return perm_.size(); }
    std::int64_t order() const noexcept { return order_; }
    std::size_t perm(std::size_t j) const { return perm_[j]; }
    std::int64_t exponent(std::size_t j) const { return exponents_[j]; }
    RootPhase phase(std::size_t j) const { return {order_, exponents_[j]}; }
    const std::vector<std::size_t>& perm() const noexcept { return perm_; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }

    bool is_identity() const {
        for (std::size_t j = 0; j < dim(); ++j) {
            if (perm_[j] != j || exponents_[j] != 0) {
                return false;
            }
        }
        return true;
    }

    PhasedPermutation promoted(std::int64_t new_order) const {
        if (new_order <= 0 || new_order % order_ != 0) {
            throw std::invalid_argument("PhasedPermutation::promoted: new order must be a multiple of the old order");
        }
        std::vector<std::int64_t> e(exponents_);
        for (auto& x : e) {
            x *= new_order / order_;
        }
        return {perm_, std::move(e), new_order};
    }

    /// Global phase multiplication (orders must agree).
    PhasedPermutation times(const RootPhase& p) const {
        if (p.order() != order_) {
            throw std::invalid_argument("PhasedPermutation::times: order mismatch (promote explicitly)");
        }
        std::vector<std::int64_t> e(exponents_);
        for (auto& x : e) {
            x += p.exponent();
        }
        return {perm_, std::move(e), order_};
    }

    /// Integer power; negative powers go through the adjoint.
    PhasedPermutation pow(std::int64_t k) const;

    friend bool operator==(const PhasedPermutation&, const PhasedPermutation&) = default;

private:
    std::vector<std::size_t> perm_;
    std::vector<std::int64_t> exponents_;
    std::int64_t order_;
};

/// Matrix product A*B.
inline PhasedPermutation pp_compose(const PhasedPermutation& a, const PhasedPermutation& b) {
    if (a.dim() != b.dim()) {
        throw dimension_error("pp_compose: dimension mismatch");
    }
    if (a.order() != b.order()) {
        throw std::invalid_argument("pp_compose: phase order mismatch (promote explicitly)");
    }
    const std::size_t n = a.dim();
    std::vector<std::size_t> p(n);
    std::vector<std::int64_t> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t mid = b.perm(j);
        p[j] = a.perm(mid);
        e[j] = b.exponent(j) + a.exponent(mid);
    }
    return {std::move(p), std::move(e), a.order()};
}

inline PhasedPermutation operator*(const PhasedPermutation& a, const PhasedPermutation& b) {
    return pp_compose(a, b);
}

inline PhasedPermutation pp_adjoint(const PhasedPermutation& a) {
    const std::size_t n = a.dim();
    std::vector<std::size_t> p(n);
    std::vector<std::int64_t> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        // entry (perm(j), j) moves to (j, perm(j)) and is conjugated
        p[a.perm(j)] = j;
        e[a.perm(j)] = -a.exponent(j);
    }
    return {std::move(p), std::move(e), a.order()};
}

inline PhasedPermutation PhasedPermutation::pow(std::int64_t k) const {
    PhasedPermutation base = k < 0 ? pp_adjoint(*this) : *this;
    std::uint64_t remaining = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    PhasedPermutation result = identity(dim(), order_);
    while (remaining != 0) {
        if (remaining & 1U) {
            result = pp_compose(result, base);
        }
        base = pp_compose(base, base);
        remaining >>= 1U;
    }
    return result;
}

inline DenseOperator pp_to_dense(const PhasedPermutation& a, double scale = 1.0) {
    const std::size_t n = a.dim();
    std::vector<cplx> e(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        e[a.perm(j) * n + j] = scale * root_of_unity(a.exponent(j), a.order());
    }
    return {n, std::move(e)};
}

/// Tr[A^dagger B] for monomials, in O(N).
inline cplx pp_hs_inner(const PhasedPermutation& a, const PhasedPermutation& b) {
    if (a.dim() != b.dim() || a.order() != b.order()) {
        throw dimension_error("pp_hs_inner: dimension or order mismatch");
    }
    cplx s{};
    for (std::size_t j = 0; j < a.dim(); ++j) {
        if (a.perm(j) == b.perm(j)) {
            s += root_of_unity(b.exponent(j) - a.exponent(j), a.order());
        }
    }
    return s;
}

/// Tr[A^dagger O] for a monomial A and dense O, in O(N).
inline cplx pp_hs_inner(const PhasedPermutation& a, const DenseOperator& o) {
    if (a.dim() != o.dim()) {
        throw dimension_error("pp_hs_inner: dimension mismatch");
    }
    cplx s{};
    for (std::size_t j = 0; j < a.dim(); ++j) {
        s += std::conj(root_of_unity(a.exponent(j), a.order())) * o(a.perm(j), j);
    }
    return s;
}

} // namespace qps

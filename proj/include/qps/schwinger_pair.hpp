#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/dense_operator.hpp"
#include "qps/phased_permutation.hpp"
#include "qps/root_phase.hpp"

namespace qps {

/**
 * The clock/shift pair on C^N, written in the clock eigenbasis |v_0>..|v_{N-1}>.
 *
 *   V = sum_l omega^l |v_l><v_l|       (diagonal, exponents 0,2,..,2(N-1) at order 2N)
 *   U = sum_l |v_{l+1}><v_l|           (perm(l) = l+1 mod N, unit phases)
 *
 * Phases are kept at order 2N so the symmetrized basis phase exp(i*pi*mn/N)
 * stays exact.
 */
class SchwingerPair {
public:
    static SchwingerPair build(std::int64_t n) {
        if (n < 2) {
            throw std::invalid_argument("build_pair: dimension must be at least 2, got " + std::to_string(n));
        }
        const auto dim = static_cast<std::size_t>(n);
        std::vector<std::int64_t> clock(dim);
        for (std::size_t l = 0; l < dim; ++l) {
            clock[l] = 2 * static_cast<std::int64_t>(l);
        }
        return {dim, PhasedPermutation::cyclic_shift(dim, 1, 2 * n), PhasedPermutation::diagonal(clock, 2 * n)};
    }

    /// Unchecked assembly from arbitrary monomials (used for negative controls).
    static SchwingerPair from_operators(PhasedPermutation u, PhasedPermutation v) {
        if (u.dim() != v.dim() || u.order() != v.order()) {
            throw dimension_error("SchwingerPair: U and V must share dimension and phase order");
        }
        if (u.order() % static_cast<std::int64_t>(u.dim()) != 0) {
            throw std::invalid_argument("SchwingerPair: phase order must be a multiple of N");
        }
        const std::size_t dim = u.dim();
        return {dim, std::move(u), std::move(v)};
    }

    std::size_t dim() const noexcept { return dim_; }
    std::int64_t n() const noexcept { return static_cast<std::int64_t>(dim_); }
    std::int64_t phase_order() const noexcept { return u_.order(); }
    const PhasedPermutation& U() const noexcept { return u_; }
    const PhasedPermutation& V() const noexcept { return v_; }

    /// omega = exp(2*pi*i/N) as a phase of this pair's order.
    RootPhase omega() const { return {phase_order(), phase_order() / n()}; }

private:
    SchwingerPair(std::size_t dim, PhasedPermutation u, PhasedPermutation v)
        : dim_(dim), u_(std::move(u)), v_(std::move(v)) {}

    std::size_t dim_;
    PhasedPermutation u_;
    PhasedPermutation v_;
};

inline SchwingerPair build_pair(std::int64_t n) { return SchwingerPair::build(n); }

/// U^m V^n, labels reduced mod N.
inline PhasedPermutation monomial(const SchwingerPair& pair, std::int64_t m, std::int64_t n) {
    return pp_compose(pair.U().pow(mod_floor(m, pair.n())), pair.V().pow(mod_floor(n, pair.n())));
}

/// Label bookkeeping: zero-based 0..N-1, or the symmetric interval -(N-1)/2..(N-1)/2 (odd N).
class LabelConvention {
public:
    enum class Mode { ZeroBased, Symmetric };

    LabelConvention(Mode mode, std::int64_t n) : mode_(mode), n_(n) {
        if (n < 1) {
            throw std::invalid_argument("LabelConvention: dimension must be positive");
        }
        if (mode == Mode::Symmetric && n % 2 == 0) {
            throw std::invalid_argument("LabelConvention: symmetric labels require odd N");
        }
    }

    Mode mode() const noexcept { return mode_; }
    std::int64_t n() const noexcept { return n_; }
    std::int64_t min_label() const noexcept { return mode_ == Mode::ZeroBased ? 0 : -(n_ - 1) / 2; }
    std::int64_t max_label() const noexcept { return mode_ == Mode::ZeroBased ? n_ - 1 : (n_ - 1) / 2; }

    std::int64_t to_zero_based(std::int64_t label) const {
        check(label);
        return mod_floor(label, n_);
    }

    std::int64_t from_zero_based(std::int64_t k) const {
        if (k < 0 || k >= n_) {
            throw std::out_of_range("LabelConvention: zero-based index out of range");
        }
        return (mode_ == Mode::Symmetric && k > max_label()) ? k - n_ : k;
    }

    std::vector<std::int64_t> labels() const {
        std::vector<std::int64_t> out;
        for (std::int64_t k = min_label(); k <= max_label(); ++k) {
            out.push_back(k);
        }
        return out;
    }

private:
    void check(std::int64_t label) const {
        if (label < min_label() || label > max_label()) {
            throw std::out_of_range("LabelConvention: label " + std::to_string(label) + " out of range");
        }
    }

    Mode mode_;
    std::int64_t n_;
};

namespace detail {
inline void check_level(const SchwingerPair& pair, std::int64_t k, const char* who) {
    if (k < 0 || k >= pair.n()) {
        throw std::out_of_range(std::string(who) + ": index " + std::to_string(k) + " outside [0, N)");
    }
}
} // namespace detail

/// (1/N) sum_j V^j v_k^{-j} = |v_k><v_k|.
inline DenseOperator projector_v(const SchwingerPair& pair, std::int64_t k) {
    detail::check_level(pair, k, "projector_v");
    const std::int64_t n = pair.n();
    DenseOperator acc = DenseOperator::zero(pair.dim());
    PhasedPermutation vj = PhasedPermutation::identity(pair.dim(), pair.phase_order());
    for (std::int64_t j = 0; j < n; ++j) {
        acc = acc + root_of_unity(-k * j, n) * pp_to_dense(vj);
        vj = pp_compose(vj, pair.V());
    }
    return (1.0 / static_cast<double>(n)) * acc;
}

/// (1/N) sum_j U^{-j} u_k^{j}: projector onto the U eigenvector with eigenvalue omega^k.
inline DenseOperator projector_u(const SchwingerPair& pair, std::int64_t k) {
    detail::check_level(pair, k, "projector_u");
    const std::int64_t n = pair.n();
    const PhasedPermutation u_inv = pp_adjoint(pair.U());
    DenseOperator acc = DenseOperator::zero(pair.dim());
    PhasedPermutation uj = PhasedPermutation::identity(pair.dim(), pair.phase_order());
    for (std::int64_t j = 0; j < n; ++j) {
        acc = acc + root_of_unity(k * j, n) * pp_to_dense(uj);
        uj = pp_compose(uj, u_inv);
    }
    return (1.0 / static_cast<double>(n)) * acc;
}

/// F(k,l) = exp(2*pi*i*k*l/N)/sqrt(N). Conjugation convention: F U F^dagger = V.
inline DenseOperator fourier_matrix(std::int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("fourier_matrix: dimension must be at least 2");
    }
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    return DenseOperator::from_function(static_cast<std::size_t>(n), [&](std::size_t k, std::size_t l) {
        return s * root_of_unity(static_cast<std::int64_t>(k * l), n);
    });
}

struct CliffordViolation {
    std::string relation; // "weyl", "U^N", "V^N"
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::size_t column = 0;
    std::int64_t exponent_mismatch = 0; // cyclic distance, or the phase order for a permutation mismatch
};

struct CliffordReport {
    std::int64_t n = 0;
    std::size_t relations_checked = 0;
    std::size_t periodicity_checked = 0;
    std::size_t mismatches = 0;
    std::int64_t max_exponent_mismatch = 0;
    std::vector<CliffordViolation> first_violations; // at most 10, in (k,l) scan order
    bool pass() const noexcept { return mismatches == 0; }
};

namespace detail {
inline std::int64_t cyclic_distance(std::int64_t a, std::int64_t b, std::int64_t order) {
    const std::int64_t d = mod_floor(a - b, order);
    return std::min(d, order - d);
}

inline void compare_exact(const PhasedPermutation& lhs, const PhasedPermutation& rhs, const std::string& relation,
                          std::int64_t k, std::int64_t l, CliffordReport& report) {
    bool bad = false;
    for (std::size_t j = 0; j < lhs.dim(); ++j) {
        std::int64_t mismatch = 0;
        if (lhs.perm(j) != rhs.perm(j)) {
            mismatch = lhs.order();
        } else {
            mismatch = cyclic_distance(lhs.exponent(j), rhs.exponent(j), lhs.order());
        }
        if (mismatch == 0) {
            continue;
        }
        bad = true;
        report.max_exponent_mismatch = std::max(report.max_exponent_mismatch, mismatch);
        if (report.first_violations.size() < 10) {
            report.first_violations.push_back({relation, k, l, j, mismatch});
        }
    }
    if (bad) {
        ++report.mismatches;
    }
}
} // namespace detail

/**
 * Exhaustive exact check of the generalized Clifford relations:
 * V^l U^k = omega^{kl} U^k V^l for all 0 <= k,l < N, and U^N = V^N = 1.
 */
inline CliffordReport verify_clifford(const SchwingerPair& pair) {
    CliffordReport report;
    report.n = pair.n();
    const std::int64_t n = pair.n();
    const std::int64_t step = pair.phase_order() / n; // omega in units of the pair's order

    std::vector<PhasedPermutation> upow;
    std::vector<PhasedPermutation> vpow;
    upow.reserve(static_cast<std::size_t>(n));
    vpow.reserve(static_cast<std::size_t>(n));
    upow.push_back(PhasedPermutation::identity(pair.dim(), pair.phase_order()));
    vpow.push_back(upow.front());
    for (std::int64_t i = 1; i < n; ++i) {
        upow.push_back(pp_compose(upow.back(), pair.U()));
        vpow.push_back(pp_compose(vpow.back(), pair.V()));
    }

    for (std::int64_t k = 0; k < n; ++k) {
        for (std::int64_t l = 0; l < n; ++l) {
            const auto& uk = upow[static_cast<std::size_t>(k)];
            const auto& vl = vpow[static_cast<std::size_t>(l)];
            const PhasedPermutation lhs = pp_compose(vl, uk);
            const PhasedPermutation rhs = pp_compose(uk, vl).times(RootPhase(pair.phase_order(), step * k * l));
            detail::compare_exact(lhs, rhs, "weyl", k, l, report);
            ++report.relations_checked;
        }
    }

    const PhasedPermutation id = PhasedPermutation::identity(pair.dim(), pair.phase_order());
    detail::compare_exact(pp_compose(upow.back(), pair.U()), id, "U^N", n, 0, report);
    detail::compare_exact(pp_compose(vpow.back(), pair.V()), id, "V^N", 0, n, report);
    report.periodicity_checked = 2;
    return report;
}

} // namespace qps

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qps/dense_operator.hpp"
#include "qps/phased_permutation.hpp"
#include "qps/root_phase.hpp"
#include "qps/schwinger_pair.hpp"

namespace qps {

namespace detail {
inline void require_odd_dimension(std::int64_t n, const char* who) {
    if (n < 3) {
        throw std::invalid_argument(std::string(who) + ": N must be an odd integer >= 3, got " + std::to_string(n));
    }
    if (n % 2 == 0) {
        throw std::invalid_argument(std::string(who) +
                                    ": antisymmetric vacuum selection requires odd N (even N has a second zero "
                                    "of sin(2 pi k/N) at k = N/2), got " +
                                    std::to_string(n));
    }
}
} // namespace detail

/// s(k) = sin(2 pi k/N) / sin(2 pi/N), k reduced to the symmetric range so s(-k) = -s(k) bitwise.
inline double ladder_coefficient(std::int64_t n, std::int64_t k) {
    std::int64_t r = mod_floor(k, n);
    if (2 * r > n) {
        r -= n;
    }
    const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    return std::sin(two_pi_over_n * static_cast<double>(r)) / std::sin(two_pi_over_n);
}

/// Spectrum labelling of the number operator: 0..N-1, or -(N-1)/2..(N-1)/2.
enum class NumberConvention { ZeroBased, Symmetric };

/**
 * Finite-dimensional q-oscillator at q = omega = exp(2 pi i/N), N odd:
 *
 *   a        = sum_k s(k) |v_{k-1}><v_k|
 *   a_dagger = U  (exact; named for its role, not the Hermitian adjoint of a)
 */
class QOscillator {
public:
    QOscillator(std::int64_t n, DenseOperator a, PhasedPermutation a_dagger, DenseOperator number_op)
        : n_(n), omega_(n, 1), a_(std::move(a)), a_dagger_(std::move(a_dagger)), number_op_(std::move(number_op)) {
        const auto dim = static_cast<std::size_t>(n);
        if (a_.dim() != dim || a_dagger_.dim() != dim || number_op_.dim() != dim) {
            throw dimension_error("QOscillator: operator dimensions must equal N");
        }
    }

    std::int64_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(n_); }
    const RootPhase& omega() const noexcept { return omega_; }
    const DenseOperator& a() const noexcept { return a_; }
    const PhasedPermutation& a_dagger() const noexcept { return a_dagger_; }
    const DenseOperator& number_op() const noexcept { return number_op_; }

    /// omega^{-N}: diag(omega^{-k}); identical for both number conventions since labels agree mod N.
    DenseOperator omega_minus_number() const {
        std::vector<cplx> d(dim());
        for (std::size_t k = 0; k < dim(); ++k) {
            d[k] = root_of_unity(-static_cast<std::int64_t>(std::lround(number_op_(k, k).real())), n_);
        }
        return DenseOperator::diagonal(d);
    }

private:
    std::int64_t n_;
    RootPhase omega_;
    DenseOperator a_;
    PhasedPermutation a_dagger_;
    DenseOperator number_op_;
};

inline QOscillator build_qosc(std::int64_t n, NumberConvention convention = NumberConvention::ZeroBased) {
    detail::require_odd_dimension(n, "build_qosc");
    const SchwingerPair pair = build_pair(n);
    const auto dim = static_cast<std::size_t>(n);
    std::vector<cplx> a(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t row = (k + dim - 1) % dim;
        a[row * dim + k] = ladder_coefficient(n, static_cast<std::int64_t>(k));
    }
    const LabelConvention labels(convention == NumberConvention::ZeroBased ? LabelConvention::Mode::ZeroBased
                                                                           : LabelConvention::Mode::Symmetric,
                                 n);
    std::vector<cplx> number(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        number[k] = static_cast<double>(labels.from_zero_based(static_cast<std::int64_t>(k)));
    }
    return {n, DenseOperator(dim, std::move(a)), pair.U(), DenseOperator::diagonal(number)};
}

/// a = U^{-1} (V - V^{-1}) / (omega - omega^{-1}), evaluated densely from the Schwinger pair.
inline DenseOperator annihilator_from_unitaries(const SchwingerPair& pair) {
    detail::require_odd_dimension(pair.n(), "annihilator_from_unitaries");
    const DenseOperator u_inv = pp_to_dense(pp_adjoint(pair.U()));
    const DenseOperator v = pp_to_dense(pair.V());
    const DenseOperator v_inv = pp_to_dense(pp_adjoint(pair.V()));
    const cplx w = root_of_unity(1, pair.n());
    return (1.0 / (w - std::conj(w))) * (u_inv * (v - v_inv));
}

/// A B - q B A.
inline DenseOperator q_commutator(const DenseOperator& a, const DenseOperator& b, cplx q) {
    DenseOperator::require_same_dim(a, b, "q_commutator");
    return a * b - q * (b * a);
}

/// Tolerance tier for the q-relation: 1e-12 up to N = 31, 1e-10 beyond.
inline double q_relation_tolerance(std::int64_t n) { return n <= 31 ? 1e-12 : 1e-10; }

struct QCommutatorReport {
    std::int64_t n = 0;
    double max_abs_deviation = 0.0;
    std::vector<double> per_state; // max |deviation| in column k
    double tolerance = 0.0;
    bool pass() const noexcept { return max_abs_deviation < tolerance; }
};

/// Entrywise max-norm of a a_dagger - omega a_dagger a - omega^{-N}.
inline QCommutatorReport verify_q_relation(const QOscillator& osc, std::optional<double> tolerance = std::nullopt) {
    const DenseOperator ad = pp_to_dense(osc.a_dagger());
    const DenseOperator dev = q_commutator(osc.a(), ad, osc.omega().value()) - osc.omega_minus_number();
    QCommutatorReport report;
    report.n = osc.n();
    report.tolerance = tolerance.value_or(q_relation_tolerance(osc.n()));
    report.per_state.assign(osc.dim(), 0.0);
    for (std::size_t r = 0; r < osc.dim(); ++r) {
        for (std::size_t c = 0; c < osc.dim(); ++c) {
            const double d = std::abs(dev(r, c));
            report.per_state[c] = std::max(report.per_state[c], d);
            report.max_abs_deviation = std::max(report.max_abs_deviation, d);
        }
    }
    return report;
}

struct MultipletState {
    std::size_t level = 0;
    std::size_t raised_to = 0;          // a_dagger |v_k> = |v_{raised_to}>
    bool wraps = false;                 // the raise goes N-1 -> 0
    std::optional<std::size_t> lowered_to; // a |v_k> = coefficient |v_{lowered_to}>, empty if a|v_k> = 0
    double lowered_coefficient = 0.0;
};

/// Ladder actions read off the operators themselves, state by state.
inline std::vector<MultipletState> multiplet(const QOscillator& osc, double zero_tol = 1e-12) {
    std::vector<MultipletState> out;
    const std::size_t n = osc.dim();
    for (std::size_t k = 0; k < n; ++k) {
        MultipletState s;
        s.level = k;
        s.raised_to = osc.a_dagger().perm(k);
        s.wraps = s.raised_to < k;
        for (std::size_t r = 0; r < n; ++r) {
            const cplx z = osc.a()(r, k);
            if (std::abs(z) > zero_tol) {
                s.lowered_to = r;
                s.lowered_coefficient = z.real();
            }
        }
        out.push_back(s);
    }
    return out;
}

} // namespace qps

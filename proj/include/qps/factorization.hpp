#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qps/dense_operator.hpp"
#include "qps/operator_basis.hpp"
#include "qps/phased_permutation.hpp"
#include "qps/root_phase.hpp"
#include "qps/schwinger_pair.hpp"

namespace qps {

/// Nondecreasing prime factors of n, with multiplicity.
inline std::vector<std::int64_t> prime_factorize(std::int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("prime_factorize: N must be at least 2");
    }
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        primes.push_back(n);
    }
    return primes;
}

/// Inverse of a modulo m (gcd(a, m) = 1 required).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod_floor(a, m);
    std::int64_t r = m;
    std::int64_t old_s = 1;
    std::int64_t s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) {
        throw std::invalid_argument("mod_inverse: arguments are not coprime");
    }
    return mod_floor(old_s, m);
}

/**
 * CRT splitting Z_N = Z_{P_1} x ... x Z_{P_h} for square-free N.
 *
 * Forward map: m -> (m mod P_l). Backward map: sum_l e_l m_l mod N with
 * e_l the CRT idempotent (e_l = 1 mod P_l, 0 mod P_j for j != l).
 */
class FactorSystem {
public:
    static FactorSystem build(std::int64_t n) {
        const std::vector<std::int64_t> primes = prime_factorize(n);
        for (std::size_t i = 1; i < primes.size(); ++i) {
            if (primes[i] == primes[i - 1]) {
                throw std::invalid_argument("build_factor_system: repeated prime factors unsupported (N=" +
                                            std::to_string(n) + ")");
            }
        }
        std::vector<std::int64_t> idempotents;
        for (const std::int64_t p : primes) {
            const std::int64_t cofactor = n / p;
            idempotents.push_back(mod_floor(cofactor * mod_inverse(cofactor, p), n));
        }
        return FactorSystem(n, primes, std::move(idempotents));
    }

    std::int64_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return factors_.size(); }
    const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
    std::int64_t factor(std::size_t l) const { return factors_.at(l); }
    std::int64_t idempotent(std::size_t l) const { return idempotents_.at(l); }

    std::vector<std::int64_t> crt_forward(std::int64_t m) const {
        std::vector<std::int64_t> out;
        out.reserve(factors_.size());
        for (const std::int64_t p : factors_) {
            out.push_back(mod_floor(m, p));
        }
        return out;
    }

    std::int64_t crt_backward(const std::vector<std::int64_t>& residues) const {
        if (residues.size() != factors_.size()) {
            throw std::invalid_argument("crt_backward: expected one residue per factor");
        }
        std::int64_t m = 0;
        for (std::size_t l = 0; l < factors_.size(); ++l) {
            m = mod_floor(m + idempotents_[l] * mod_floor(residues[l], factors_[l]), n_);
        }
        return m;
    }

private:
    FactorSystem(std::int64_t n, std::vector<std::int64_t> factors, std::vector<std::int64_t> idempotents)
        : n_(n), factors_(std::move(factors)), idempotents_(std::move(idempotents)) {}

    std::int64_t n_;
    std::vector<std::int64_t> factors_;
    std::vector<std::int64_t> idempotents_;
};

inline FactorSystem build_factor_system(std::int64_t n) { return FactorSystem::build(n); }

/**
 * Commuting sub-pair for one prime factor P, embedded in the full space:
 * U_l = U^{e_l} (CRT idempotent), V_l = V^{N/P}. Then U_l^P = V_l^P = 1,
 * V_l U_l = exp(2 pi i/P) U_l V_l, and pairs for different factors commute.
 */
struct SubPair {
    std::size_t index = 0;
    std::int64_t prime = 0;
    std::int64_t u_exponent = 0;
    std::int64_t v_exponent = 0;
    PhasedPermutation U;
    PhasedPermutation V;
};

inline SubPair sub_pair(const FactorSystem& fs, std::size_t l) {
    if (l >= fs.size()) {
        throw std::out_of_range("sub_pair: factor index " + std::to_string(l) + " out of range");
    }
    const SchwingerPair pair = build_pair(fs.n());
    const std::int64_t p = fs.factor(l);
    const std::int64_t a = fs.idempotent(l);
    const std::int64_t b = fs.n() / p;
    return {l, p, a, b, pair.U().pow(a), pair.V().pow(b)};
}

struct FactorCommutationReport {
    std::int64_t n = 0;
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;
    bool pass() const noexcept { return failures == 0; }
};

/**
 * Exact check, for every ordered pair of factors (l1, l2), that
 * V_{l1} U_{l2} = U_{l2} V_{l1} times exp(2 pi i/P_{l1}) if l1 == l2 and
 * times 1 otherwise, plus U_l^{P_l} = V_l^{P_l} = 1.
 */
inline FactorCommutationReport verify_factor_commutation(const FactorSystem& fs) {
    FactorCommutationReport report;
    report.n = fs.n();
    std::vector<SubPair> subs;
    for (std::size_t l = 0; l < fs.size(); ++l) {
        subs.push_back(sub_pair(fs, l));
    }
    const std::int64_t order = 2 * fs.n();
    for (const SubPair& s : subs) {
        ++report.pairs_checked;
        if (!s.U.pow(s.prime).is_identity() || !s.V.pow(s.prime).is_identity()) {
            ++report.failures;
            report.messages.push_back("order of sub-pair P=" + std::to_string(s.prime) + " is not P");
        }
    }
    for (const SubPair& a : subs) {
        for (const SubPair& b : subs) {
            ++report.pairs_checked;
            const std::int64_t expected = (a.index == b.index) ? order / a.prime : 0;
            const PhasedPermutation lhs = pp_compose(a.V, b.U);
            const PhasedPermutation rhs = pp_compose(b.U, a.V).times(RootPhase(order, expected));
            if (!(lhs == rhs)) {
                ++report.failures;
                report.messages.push_back("V_" + std::to_string(a.prime) + " U_" + std::to_string(b.prime) +
                                          " exchange phase mismatch");
            }
        }
    }
    return report;
}

/// Product over factors (sorted prime order) of U_l^{m_l} V_l^{n_l} / sqrt(P_l), kept exact.
inline PhasedPermutation factorized_monomial(const FactorSystem& fs, std::int64_t m, std::int64_t k) {
    const std::vector<std::int64_t> ml = fs.crt_forward(m);
    const std::vector<std::int64_t> kl = fs.crt_forward(k);
    PhasedPermutation acc = PhasedPermutation::identity(static_cast<std::size_t>(fs.n()), 2 * fs.n());
    for (std::size_t l = 0; l < fs.size(); ++l) {
        const SubPair s = sub_pair(fs, l);
        acc = pp_compose(acc, pp_compose(s.U.pow(ml[l]), s.V.pow(kl[l])));
    }
    return acc;
}

inline DenseOperator factorized_s1(const FactorSystem& fs, std::int64_t m, std::int64_t k) {
    if (m < 0 || m >= fs.n() || k < 0 || k >= fs.n()) {
        throw std::out_of_range("factorized_s1: labels must lie in [0, N)");
    }
    double scale = 1.0;
    for (const std::int64_t p : fs.factors()) {
        scale /= std::sqrt(static_cast<double>(p));
    }
    return pp_to_dense(factorized_monomial(fs, m, k), scale);
}

/// Direct-basis labels hit by the factorized element: m' = m, n' = sum_l (N/P_l) n_l mod N.
inline std::pair<std::int64_t, std::int64_t> direct_labels(const FactorSystem& fs, std::int64_t m, std::int64_t k) {
    const std::vector<std::int64_t> kl = fs.crt_forward(k);
    std::int64_t kp = 0;
    for (std::size_t l = 0; l < fs.size(); ++l) {
        kp = mod_floor(kp + (fs.n() / fs.factor(l)) * kl[l], fs.n());
    }
    return {fs.crt_backward(fs.crt_forward(m)), kp};
}

struct FactorizedComparison {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t direct_m = 0;     // decoded from the exact product
    std::int64_t direct_n = 0;
    RootPhase global_phase{1, 0}; // factorized = global_phase * s1(N, direct_m, direct_n)
    double hs_distance = 0.0;     // after phase alignment, computed on dense matrices
};

/**
 * Decode the factorized element as c * U^{m'} V^{n'} exactly, then measure
 * the dense Hilbert-Schmidt distance to c * s1(N, m', n').
 */
inline FactorizedComparison compare_factorized(const FactorSystem& fs, std::int64_t m, std::int64_t k) {
    const PhasedPermutation prod = factorized_monomial(fs, m, k);
    const std::int64_t n = fs.n();
    const std::int64_t order = prod.order();
    FactorizedComparison out;
    out.m = m;
    out.n = k;
    out.direct_m = static_cast<std::int64_t>(prod.perm(0));
    // U^{m'} V^{n'} has exponent 2 n' j at column j (order 2N)
    const std::int64_t step = mod_floor(prod.exponent(1) - prod.exponent(0), order);
    out.direct_n = mod_floor(step / (order / n), n);
    const ScaledMonomial reference = s1_exact(n, out.direct_m, out.direct_n);
    out.global_phase = RootPhase(order, prod.exponent(0) - reference.op.exponent(0));

    const DenseOperator fact = factorized_s1(fs, m, k);
    out.hs_distance = (fact - out.global_phase.value() * s1(n, out.direct_m, out.direct_n)).hs_norm();
    return out;
}

} // namespace qps

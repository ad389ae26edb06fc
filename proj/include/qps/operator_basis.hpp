#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qps/dense_operator.hpp"
#include "qps/phased_permutation.hpp"
#include "qps/root_phase.hpp"
#include "qps/schwinger_pair.hpp"

namespace qps {

enum class BasisKind { S1, S2, TmodN, GFourier };

inline std::string_view to_string(BasisKind kind) {
    switch (kind) {
    case BasisKind::S1: return "s1";
    case BasisKind::S2: return "s2";
    case BasisKind::TmodN: return "tmod";
    case BasisKind::GFourier: return "g";
    }
    return "?";
}

inline std::optional<BasisKind> parse_basis_kind(std::string_view name) {
    if (name == "s1" || name == "S1") return BasisKind::S1;
    if (name == "s2" || name == "S2") return BasisKind::S2;
    if (name == "tmod" || name == "T") return BasisKind::TmodN;
    if (name == "g" || name == "G") return BasisKind::GFourier;
    return std::nullopt;
}

class singular_basis_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A monomial together with its real normalization, e.g. U^m V^n / sqrt(N).
struct ScaledMonomial {
    PhasedPermutation op;
    double scale = 1.0;

    DenseOperator dense() const { return pp_to_dense(op, scale); }
};

namespace detail {
inline void check_basis_dim(std::int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("operator basis: dimension must be at least 2, got " + std::to_string(n));
    }
}

inline double inv_sqrt(std::int64_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); }
} // namespace detail

/// phi(j,l;N) = floor(j/N) l + floor(l/N) j + N floor(j/N) floor(l/N); zero on the principal domain.
inline std::int64_t mod_phase_correction(std::int64_t j, std::int64_t l, std::int64_t n) {
    const std::int64_t a = div_floor(j, n);
    const std::int64_t b = div_floor(l, n);
    return a * l + b * j + n * a * b;
}

inline ScaledMonomial s1_exact(std::int64_t n, std::int64_t m, std::int64_t k) {
    detail::check_basis_dim(n);
    return {monomial(build_pair(n), m, k), detail::inv_sqrt(n)};
}

/// U^m V^n exp(i pi m n / N) / sqrt(N), with the phase taken on the unreduced labels.
inline ScaledMonomial s2_exact(std::int64_t n, std::int64_t m, std::int64_t k) {
    ScaledMonomial s = s1_exact(n, m, k);
    s.op = s.op.times(RootPhase(2 * n, m * k));
    return s;
}

/// S2(j,l) exp(i pi phi(j,l;N)); period N in both labels.
inline ScaledMonomial t_mod_exact(std::int64_t n, std::int64_t j, std::int64_t l) {
    ScaledMonomial s = s1_exact(n, j, l);
    s.op = s.op.times(RootPhase(2 * n, j * l + n * mod_phase_correction(j, l, n)));
    return s;
}

inline DenseOperator s1(std::int64_t n, std::int64_t m, std::int64_t k) { return s1_exact(n, m, k).dense(); }
inline DenseOperator s2(std::int64_t n, std::int64_t m, std::int64_t k) { return s2_exact(n, m, k).dense(); }
inline DenseOperator t_mod(std::int64_t n, std::int64_t j, std::int64_t l) { return t_mod_exact(n, j, l).dense(); }

namespace detail {
inline std::vector<ScaledMonomial> principal_t_elements(std::int64_t n) {
    std::vector<ScaledMonomial> ts;
    ts.reserve(static_cast<std::size_t>(n * n));
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t l = 0; l < n; ++l) {
            ts.push_back(t_mod_exact(n, j, l));
        }
    }
    return ts;
}

inline DenseOperator g_from_t(std::span<const ScaledMonomial> ts, std::int64_t n, std::int64_t m, std::int64_t k) {
    const auto dim = static_cast<std::size_t>(n);
    std::vector<cplx> acc(dim * dim);
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t l = 0; l < n; ++l) {
            const ScaledMonomial& t = ts[static_cast<std::size_t>(j * n + l)];
            const cplx weight = t.scale * inv_sqrt(n) * root_of_unity(-(m * j + k * l), n);
            for (std::size_t c = 0; c < dim; ++c) {
                acc[t.op.perm(c) * dim + c] += weight * root_of_unity(t.op.exponent(c), t.op.order());
            }
        }
    }
    return {dim, std::move(acc)};
}
} // namespace detail

/// G(m,n) = sum_{j,l} T(j,l)/sqrt(N) exp(-2 pi i (m j + n l)/N).
inline DenseOperator g_fourier(std::int64_t n, std::int64_t m, std::int64_t k) {
    detail::check_basis_dim(n);
    return detail::g_from_t(detail::principal_t_elements(n), n, m, k);
}

/// N x N table of complex coefficients, indexed (m, n).
class CoefficientGrid {
public:
    CoefficientGrid(std::size_t dim, std::vector<cplx> values) : dim_(dim), values_(std::move(values)) {
        if (values_.size() != dim_ * dim_) {
            throw dimension_error("CoefficientGrid: expected N*N values");
        }
        for (const auto& z : values_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::domain_error("CoefficientGrid: non-finite value");
            }
        }
    }

    static CoefficientGrid zero(std::size_t dim) { return {dim, std::vector<cplx>(dim * dim)}; }

    std::size_t dim() const noexcept { return dim_; }
    const cplx& operator()(std::size_t m, std::size_t n) const { return values_[m * dim_ + n]; }
    std::span<const cplx> values() const noexcept { return values_; }

private:
    std::size_t dim_;
    std::vector<cplx> values_;
};

/**
 * One of the N^2-element operator bases for a fixed N.
 *
 * S1, S2 and TmodN elements are stored as exact scaled monomials; GFourier
 * elements are dense and come with a factorized Gram matrix so that
 * coefficients can be computed against the dual basis. Instances are
 * immutable; use basis_family() to get the shared cached copy.
 */
class BasisFamily {
public:
    BasisFamily(BasisKind kind, std::int64_t n) : kind_(kind), n_(n) {
        detail::check_basis_dim(n);
        const std::size_t count = static_cast<std::size_t>(n * n);
        if (kind == BasisKind::GFourier) {
            dense_.reserve(count);
            const std::vector<ScaledMonomial> ts = detail::principal_t_elements(n);
            for (std::int64_t m = 0; m < n; ++m) {
                for (std::int64_t k = 0; k < n; ++k) {
                    dense_.push_back(detail::g_from_t(ts, n, m, k));
                }
            }
            Eigen::MatrixXcd gram(count, count);
            for (std::size_t a = 0; a < count; ++a) {
                for (std::size_t b = a; b < count; ++b) {
                    gram(a, b) = hs_inner(dense_[a], dense_[b]);
                    gram(b, a) = std::conj(gram(a, b));
                }
            }
            lu_ = std::make_shared<const Eigen::PartialPivLU<Eigen::MatrixXcd>>(gram);
            if (!(lu_->rcond() > 1e-12)) {
                throw singular_basis_error("BasisFamily: numerically singular Gram matrix for N=" + std::to_string(n));
            }
        } else {
            monomials_.reserve(count);
            for (std::int64_t m = 0; m < n; ++m) {
                for (std::int64_t k = 0; k < n; ++k) {
                    switch (kind) {
                    case BasisKind::S1: monomials_.push_back(s1_exact(n, m, k)); break;
                    case BasisKind::S2: monomials_.push_back(s2_exact(n, m, k)); break;
                    default: monomials_.push_back(t_mod_exact(n, m, k)); break;
                    }
                }
            }
        }
    }

    BasisKind kind() const noexcept { return kind_; }
    std::int64_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(n_); }
    std::size_t size() const noexcept { return dim() * dim(); }
    bool is_orthonormal_kind() const noexcept { return kind_ != BasisKind::GFourier; }

    DenseOperator element(std::size_t m, std::size_t k) const {
        const std::size_t idx = index(m, k);
        return kind_ == BasisKind::GFourier ? dense_[idx] : monomials_[idx].dense();
    }

    /// Tr[element(m,k)^dagger O].
    cplx pairing(std::size_t m, std::size_t k, const DenseOperator& o) const {
        const std::size_t idx = index(m, k);
        if (kind_ == BasisKind::GFourier) {
            return hs_inner(dense_[idx], o);
        }
        return monomials_[idx].scale * pp_hs_inner(monomials_[idx].op, o);
    }

    /// Solve Gram * c = b (only meaningful for GFourier).
    std::vector<cplx> solve_gram(std::span<const cplx> rhs) const {
        if (!lu_) {
            return {rhs.begin(), rhs.end()};
        }
        Eigen::VectorXcd b(static_cast<Eigen::Index>(rhs.size()));
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            b(static_cast<Eigen::Index>(i)) = rhs[i];
        }
        const Eigen::VectorXcd c = lu_->solve(b);
        return {c.data(), c.data() + c.size()};
    }

    /// Add s * element(m,k) into a row-major accumulator.
    void accumulate(std::size_t m, std::size_t k, cplx s, std::vector<cplx>& acc) const {
        const std::size_t idx = index(m, k);
        const std::size_t d = dim();
        if (kind_ == BasisKind::GFourier) {
            const auto e = dense_[idx].entries();
            for (std::size_t i = 0; i < e.size(); ++i) {
                acc[i] += s * e[i];
            }
            return;
        }
        const ScaledMonomial& mono = monomials_[idx];
        for (std::size_t c = 0; c < d; ++c) {
            acc[mono.op.perm(c) * d + c] += s * mono.scale * root_of_unity(mono.op.exponent(c), mono.op.order());
        }
    }

private:
    std::size_t index(std::size_t m, std::size_t k) const {
        if (m >= dim() || k >= dim()) {
            throw std::out_of_range("BasisFamily: label outside [0, N)");
        }
        return m * dim() + k;
    }

    BasisKind kind_;
    std::int64_t n_;
    std::vector<ScaledMonomial> monomials_;
    std::vector<DenseOperator> dense_;
    std::shared_ptr<const Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
};

/// Shared per-(kind, N) instance; construction is serialized, lookups are read-only afterwards.
inline std::shared_ptr<const BasisFamily> basis_family(BasisKind kind, std::int64_t n) {
    static std::mutex mutex;
    static std::map<std::pair<BasisKind, std::int64_t>, std::shared_ptr<const BasisFamily>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{kind, n}];
    if (!slot) {
        slot = std::make_shared<const BasisFamily>(kind, n);
    }
    return slot;
}

namespace detail {
inline void check_family_dim(const BasisFamily& family, std::size_t dim, const char* who) {
    if (family.dim() != dim) {
        throw dimension_error(std::string(who) + ": operator dimension " + std::to_string(dim) +
                              " does not match basis dimension " + std::to_string(family.dim()));
    }
}
} // namespace detail

inline CoefficientGrid decompose(const DenseOperator& o, const BasisFamily& family) {
    detail::check_family_dim(family, o.dim(), "decompose");
    const std::size_t d = family.dim();
    std::vector<cplx> b(d * d);
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t k = 0; k < d; ++k) {
            b[m * d + k] = family.pairing(m, k, o);
        }
    }
    if (!family.is_orthonormal_kind()) {
        b = family.solve_gram(b);
    }
    return {d, std::move(b)};
}

inline DenseOperator reconstruct(const CoefficientGrid& coeffs, const BasisFamily& family) {
    detail::check_family_dim(family, coeffs.dim(), "reconstruct");
    const std::size_t d = family.dim();
    std::vector<cplx> acc(d * d);
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t k = 0; k < d; ++k) {
            if (coeffs(m, k) != cplx{}) {
                family.accumulate(m, k, coeffs(m, k), acc);
            }
        }
    }
    return {d, std::move(acc)};
}

/// Entry (m*N+n, m'*N+n') = Tr[element(m,n)^dagger element(m',n')], as an N^2-dimensional operator.
inline DenseOperator gram_matrix(const BasisFamily& family) {
    const std::size_t d = family.dim();
    const std::size_t count = d * d;
    std::vector<DenseOperator> els;
    els.reserve(count);
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t k = 0; k < d; ++k) {
            els.push_back(family.element(m, k));
        }
    }
    std::vector<cplx> g(count * count);
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            g[a * count + b] = hs_inner(els[a], els[b]);
        }
    }
    return {count, std::move(g)};
}

/// max_{m,n} |G(m,n) - G(m,n)^dagger|, the Hermiticity defect of the Fourier kernel.
inline double g_hermiticity_defect(std::int64_t n) {
    const auto family = basis_family(BasisKind::GFourier, n);
    double defect = 0.0;
    for (std::size_t m = 0; m < family->dim(); ++m) {
        for (std::size_t k = 0; k < family->dim(); ++k) {
            const DenseOperator g = family->element(m, k);
            defect = std::max(defect, max_abs_diff(g, g.adjoint()));
        }
    }
    return defect;
}

struct WignerTable {
    std::size_t dim = 0;
    std::vector<cplx> values; // W(m,n), row-major in m
    cplx normalization;       // c_N
    cplx trace;               // Tr[O]
    cplx sum;                 // sum_{m,n} W(m,n)
    bool hermitian_kernel = false;
    double max_imag = 0.0;

    const cplx& operator()(std::size_t m, std::size_t k) const { return values[m * dim + k]; }
};

/// c_N fixed by sum_{m,n} c_N Tr[G(m,n)^dagger (I/N)] = 1.
inline cplx wigner_normalization(std::int64_t n) {
    const auto family = basis_family(BasisKind::GFourier, n);
    const DenseOperator mixed = (1.0 / static_cast<double>(n)) * DenseOperator::identity(family->dim());
    cplx total{};
    for (std::size_t m = 0; m < family->dim(); ++m) {
        for (std::size_t k = 0; k < family->dim(); ++k) {
            total += family->pairing(m, k, mixed);
        }
    }
    return 1.0 / total;
}

/**
 * Discrete phase-space map W(m,n) = c_N Tr[G(m,n)^dagger O].
 *
 * hermitian_kernel records whether every G(m,n) passed the Hermiticity probe;
 * only then is W real for Hermitian O.
 */
inline WignerTable wigner_map(const DenseOperator& o, std::int64_t n) {
    const auto family = basis_family(BasisKind::GFourier, n);
    detail::check_family_dim(*family, o.dim(), "wigner_map");
    WignerTable table;
    table.dim = family->dim();
    table.normalization = wigner_normalization(n);
    table.trace = o.trace();
    table.hermitian_kernel = g_hermiticity_defect(n) <= default_tolerance;
    table.values.resize(table.dim * table.dim);
    for (std::size_t m = 0; m < table.dim; ++m) {
        for (std::size_t k = 0; k < table.dim; ++k) {
            const cplx w = table.normalization * family->pairing(m, k, o);
            table.values[m * table.dim + k] = w;
            table.sum += w;
            table.max_imag = std::max(table.max_imag, std::abs(w.imag()));
        }
    }
    return table;
}

/**
 * Condition number of the N^2 x N^2 map taking S1 coefficients to G coefficients.
 */
inline double basis_change_condition(std::int64_t n) {
    const auto g = basis_family(BasisKind::GFourier, n);
    const auto s = basis_family(BasisKind::S1, n);
    const std::size_t d = g->dim();
    const std::size_t count = d * d;
    Eigen::MatrixXcd map(count, count);
    for (std::size_t b = 0; b < count; ++b) {
        const DenseOperator sb = s->element(b / d, b % d);
        const CoefficientGrid col = decompose(sb, *g);
        for (std::size_t a = 0; a < count; ++a) {
            map(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = col.values()[a];
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(map);
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

/**
 * Conjugation by the Fourier matrix realizes U -> V, V -> U^{-1}; on the
 * symmetrized basis that is S2(m,n) -> S2(-n,m). Returns the largest
 * entrywise deviation over all principal labels.
 */
inline double s2_substitution_defect(std::int64_t n) {
    const DenseOperator f = fourier_matrix(n);
    const DenseOperator fd = f.adjoint();
    double worst = 0.0;
    for (std::int64_t m = 0; m < n; ++m) {
        for (std::int64_t k = 0; k < n; ++k) {
            worst = std::max(worst, max_abs_diff(f * s2(n, m, k) * fd, s2(n, -k, m)));
        }
    }
    return worst;
}

} // namespace qps

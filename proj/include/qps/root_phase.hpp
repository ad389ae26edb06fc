#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qps {

using cplx = std::complex<double>;

/// Euclidean remainder, always in [0, m) for m > 0.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Floor division toward -inf.
constexpr std::int64_t div_floor(std::int64_t a, std::int64_t m) {
    return (a - mod_floor(a, m)) / m;
}

/// exp(2*pi*i*exponent/order), exact at multiples of a quarter turn.
inline cplx root_of_unity(std::int64_t exponent, std::int64_t order) {
    const std::int64_t e = mod_floor(exponent, order);
    if ((4 * e) % order == 0) {
        switch ((4 * e) / order) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    // symmetric representative keeps the angle small
    const std::int64_t s = (2 * e > order) ? e - order : e;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

/**
 * An exact root of unity exp(2*pi*i*exponent/order).
 *
 * The exponent is kept reduced modulo the order, so equality is plain integer
 * equality. Phases of different orders never mix implicitly; use
 * phase_promote to move to a common order first.
 */
class RootPhase {
public:
    RootPhase(std::int64_t order, std::int64_t exponent) : order_(order) {
        if (order <= 0) {
            throw std::invalid_argument("RootPhase: order must be positive");
        }
        exponent_ = mod_floor(exponent, order);
    }

    static RootPhase one(std::int64_t order) { return RootPhase(order, 0); }

    std::int64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return exponent_; }

    cplx value() const { return root_of_unity(exponent_, order_); }
    RootPhase conj() const { return RootPhase(order_, -exponent_); }
    RootPhase pow(std::int64_t k) const {
        // (e*k) mod order without overflow for the sizes used here
        return RootPhase(order_, mod_floor(exponent_, order_) * mod_floor(k, order_));
    }

    friend bool operator==(const RootPhase&, const RootPhase&) = default;

    friend std::ostream& operator<<(std::ostream& os, const RootPhase& p) {
        return os << "w" << p.order_ << "^" << p.exponent_;
    }

private:
    std::int64_t order_;
    std::int64_t exponent_ = 0;
};

inline RootPhase phase_mul(const RootPhase& a, const RootPhase& b) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("phase_mul: order mismatch (promote explicitly)");
    }
    return RootPhase(a.order(), a.exponent() + b.exponent());
}

inline RootPhase operator*(const RootPhase& a, const RootPhase& b) { return phase_mul(a, b); }

inline RootPhase phase_promote(const RootPhase& a, std::int64_t new_order) {
    if (new_order <= 0 || new_order % a.order() != 0) {
        throw std::invalid_argument("phase_promote: new order must be a positive multiple of the old order");
    }
    return RootPhase(new_order, a.exponent() * (new_order / a.order()));
}

} // namespace qps

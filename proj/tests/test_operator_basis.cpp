#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qps/qps.hpp"

using namespace qps;
using namespace std::complex_literals;

namespace {

// Brute-force G(m,n) from explicit clock/shift products and explicit phases.
oracle::Mat g_oracle(int n, int m, int k) {
    oracle::Mat acc = oracle::zeros(n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const oracle::Mat t = oracle::mul(oracle::power(oracle::shift(n), j), oracle::power(oracle::clock(n), l));
            const cplx w = oracle::expi(std::numbers::pi * j * l / n) *
                           oracle::expi(-2.0 * std::numbers::pi * (m * j + k * l) / n) / static_cast<double>(n);
            acc = oracle::add(acc, oracle::scale(t, w));
        }
    }
    return acc;
}

DenseOperator random_operator(std::size_t dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    return DenseOperator::from_function(dim, [&](std::size_t, std::size_t) { return cplx(nd(rng), nd(rng)); });
}

} // namespace

TEST_CASE("basis kind names", "[basis]") {
    CHECK(parse_basis_kind("s1") == BasisKind::S1);
    CHECK(parse_basis_kind("tmod") == BasisKind::TmodN);
    CHECK(parse_basis_kind("g") == BasisKind::GFourier);
    CHECK_FALSE(parse_basis_kind("x").has_value());
    for (const BasisKind k : {BasisKind::S1, BasisKind::S2, BasisKind::TmodN, BasisKind::GFourier}) {
        CHECK(parse_basis_kind(to_string(k)) == k);
    }
}

TEST_CASE("s1 and s2 elements", "[basis]") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(oracle::max_diff(s1(2, 0, 0), {{r, 0}, {0, r}}) < 1e-15);
    CHECK(oracle::max_diff(s1(2, 1, 0), {{0, r}, {r, 0}}) < 1e-15);
    // S2(1,1) at N=2 = i X Z / sqrt(2) = Y / sqrt(2)
    CHECK(oracle::max_diff(s2(2, 1, 1), {{0, -1i * r}, {1i * r, 0}}) < 1e-15);

    for (int n : {3, 4, 5}) {
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                REQUIRE(oracle::max_diff(s1(n, m, k), oracle::s1(n, m, k)) < 1e-13);
                REQUIRE(oracle::max_diff(s2(n, m, k), oracle::s2(n, m, k)) < 1e-13);
            }
        }
    }
    CHECK_THROWS_AS(s1(1, 0, 0), std::invalid_argument);
}

TEST_CASE("s2 shift picks up a sign", "[basis][property]") {
    for (std::int64_t n = 2; n <= 9; ++n) {
        for (std::int64_t m = -n; m < 2 * n; ++m) {
            for (std::int64_t k = -n; k < 2 * n; ++k) {
                const ScaledMonomial a = s2_exact(n, m + n, k);
                const ScaledMonomial b = s2_exact(n, m, k);
                const bool odd = mod_floor(k, 2) == 1;
                REQUIRE(a.op == b.op.times(RootPhase(2 * n, odd ? n : 0)));
            }
        }
    }
}

TEST_CASE("t_mod is periodic in both labels", "[basis][property]") {
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (std::int64_t j = -2 * n; j < 2 * n; ++j) {
            for (std::int64_t l = -2 * n; l < 2 * n; ++l) {
                const ScaledMonomial base = t_mod_exact(n, mod_floor(j, n), mod_floor(l, n));
                REQUIRE(t_mod_exact(n, j, l).op == base.op);
                REQUIRE(t_mod_exact(n, j + n, l).op == base.op);
                REQUIRE(t_mod_exact(n, j, l - n).op == base.op);
            }
        }
    }
    CHECK(mod_phase_correction(2, 1, 5) == 0);
    CHECK(mod_phase_correction(-1, -1, 3) == 5);
}

TEST_CASE("g_fourier golden entries at N=2", "[basis][g]") {
    CHECK(oracle::max_diff(g_fourier(2, 0, 0), {{1, 0.5 - 0.5i}, {0.5 + 0.5i, 0}}) < 1e-15);
    CHECK(oracle::max_diff(g_fourier(2, 0, 1), {{0, 0.5 + 0.5i}, {0.5 - 0.5i, 1}}) < 1e-15);
    CHECK(oracle::max_diff(g_fourier(2, 1, 0), {{1, -0.5 + 0.5i}, {-0.5 - 0.5i, 0}}) < 1e-15);
    CHECK(oracle::max_diff(g_fourier(2, 1, 1), {{0, -0.5 - 0.5i}, {-0.5 + 0.5i, 1}}) < 1e-15);

    const DenseOperator gram = gram_matrix(*basis_family(BasisKind::GFourier, 2));
    CHECK(max_abs_diff(gram, 2.0 * DenseOperator::identity(4)) < 1e-14);
}

TEST_CASE("g_fourier against brute force", "[basis][g]") {
    for (int n : {3, 4, 5}) {
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                REQUIRE(oracle::max_diff(g_fourier(n, m, k), g_oracle(n, m, k)) < 1e-12);
            }
        }
    }
    // labels are taken mod N
    CHECK(max_abs_diff(g_fourier(5, 7, -1), g_fourier(5, 2, 4)) < 1e-12);
}

TEST_CASE("G family sums to N times identity", "[basis][g][property]") {
    for (std::int64_t n = 2; n <= 8; ++n) {
        DenseOperator sum = DenseOperator::zero(static_cast<std::size_t>(n));
        for (std::int64_t m = 0; m < n; ++m)
            for (std::int64_t k = 0; k < n; ++k) sum = sum + g_fourier(n, m, k);
        REQUIRE(max_abs_diff(sum, static_cast<double>(n) * DenseOperator::identity(sum.dim())) < 1e-11);
        REQUIRE(std::abs(wigner_normalization(n) - cplx(1.0 / static_cast<double>(n))) < 1e-12);
    }
}

TEST_CASE("Gram matrices", "[basis][property]") {
    CHECK(max_abs_diff(gram_matrix(*basis_family(BasisKind::S1, 3)), DenseOperator::identity(9)) < 1e-13);
    CHECK(max_abs_diff(gram_matrix(*basis_family(BasisKind::S2, 5)), DenseOperator::identity(25)) < 1e-13);
    CHECK(max_abs_diff(gram_matrix(*basis_family(BasisKind::TmodN, 4)), DenseOperator::identity(16)) < 1e-13);
    CHECK(max_abs_diff(gram_matrix(*basis_family(BasisKind::GFourier, 3)), 3.0 * DenseOperator::identity(9)) <
          1e-12);
}

TEST_CASE("decompose and reconstruct round trip", "[basis][property]") {
    for (const BasisKind kind : {BasisKind::S1, BasisKind::S2, BasisKind::TmodN, BasisKind::GFourier}) {
        for (std::int64_t n = 2; n <= 7; ++n) {
            const auto family = basis_family(kind, n);
            const DenseOperator o = random_operator(family->dim(), static_cast<unsigned>(100 * n + 7));
            const DenseOperator back = reconstruct(decompose(o, *family), *family);
            INFO(to_string(kind) << " N=" << n);
            REQUIRE(max_abs_diff(back, o) < 1e-10);
        }
    }
}

TEST_CASE("decompose of a basis element is one-hot", "[basis]") {
    const auto family = basis_family(BasisKind::S1, 3);
    const CoefficientGrid c = decompose(s1(3, 2, 1), *family);
    for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(c(m, k) - cplx((m == 2 && k == 1) ? 1.0 : 0.0)) < 1e-14);

    const auto gf = basis_family(BasisKind::GFourier, 5);
    const CoefficientGrid g = decompose(g_fourier(5, 1, 3), *gf);
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(g(m, k) - cplx((m == 1 && k == 3) ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("dimension mismatch", "[basis][errors]") {
    CHECK_THROWS_AS(decompose(DenseOperator::identity(3), *basis_family(BasisKind::S1, 4)), dimension_error);
    CHECK_THROWS_AS(wigner_map(DenseOperator::identity(3), 5), dimension_error);
    CHECK_THROWS_AS(reconstruct(CoefficientGrid::zero(2), *basis_family(BasisKind::S2, 3)), dimension_error);
}

TEST_CASE("wigner_map", "[basis][wigner]") {
    SECTION("maximally mixed state is flat") {
        const WignerTable w = wigner_map((1.0 / 3.0) * DenseOperator::identity(3), 3);
        for (const cplx v : w.values) REQUIRE(std::abs(v - cplx(1.0 / 9.0)) < 1e-14);
        CHECK(std::abs(w.sum - 1.0) < 1e-14);
    }
    SECTION("zero operator") {
        const WignerTable w = wigner_map(DenseOperator::zero(4), 4);
        for (const cplx v : w.values) CHECK(v == cplx{});
        CHECK(w.sum == cplx{});
    }
    SECTION("sum equals trace") {
        for (std::int64_t n = 2; n <= 9; ++n) {
            const DenseOperator o = random_operator(static_cast<std::size_t>(n), static_cast<unsigned>(n));
            const WignerTable w = wigner_map(o, n);
            REQUIRE(std::abs(w.sum - o.trace()) < 1e-10);
            REQUIRE(std::abs(w.normalization - cplx(1.0 / static_cast<double>(n))) < 1e-12);
        }
    }
    SECTION("pure V eigenstate at N=2") {
        const WignerTable w = wigner_map(projector_v(build_pair(2), 0), 2);
        CHECK(std::abs(w(0, 0) - cplx(0.5)) < 1e-14);
        CHECK(std::abs(w(1, 1)) < 1e-14);
        CHECK(w.hermitian_kernel);
        CHECK(w.max_imag < 1e-14);
    }
}

TEST_CASE("G Hermiticity probe", "[basis][g]") {
    CHECK(g_hermiticity_defect(2) < 1e-14);
    CHECK_THAT(g_hermiticity_defect(3), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(g_hermiticity_defect(4), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(g_hermiticity_defect(5), Catch::Matchers::WithinAbs(0.8, 1e-6));
    CHECK_FALSE(wigner_map(DenseOperator::identity(3), 3).hermitian_kernel);
}

TEST_CASE("basis change is well conditioned", "[basis][g]") {
    for (std::int64_t n = 2; n <= 9; ++n) {
        INFO("N=" << n);
        CHECK(basis_change_condition(n) < 1e6);
    }
}

TEST_CASE("Fourier substitution on s2", "[basis][fourier][property]") {
    for (std::int64_t n = 2; n <= 12; ++n) {
        INFO("N=" << n);
        REQUIRE(s2_substitution_defect(n) < 1e-10);
    }
}

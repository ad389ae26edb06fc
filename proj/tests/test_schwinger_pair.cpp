#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qps/qps.hpp"

using namespace qps;

TEST_CASE("build_pair", "[pair]") {
    SECTION("N=2 gives the Pauli pair") {
        const SchwingerPair p = build_pair(2);
        CHECK(oracle::max_diff(pp_to_dense(p.U()), {{0, 1}, {1, 0}}) == 0.0);
        CHECK(oracle::max_diff(pp_to_dense(p.V()), {{1, 0}, {0, -1}}) == 0.0);
    }
    SECTION("N=3 clock is diag(1, w, w^2)") {
        const SchwingerPair p = build_pair(3);
        CHECK(oracle::max_diff(pp_to_dense(p.V()), oracle::clock(3)) < 1e-15);
        CHECK(p.V().exponents() == std::vector<std::int64_t>{0, 2, 4});
        CHECK(p.V().order() == 6);
        CHECK(p.U().perm() == std::vector<std::size_t>{1, 2, 0});
    }
    SECTION("N < 2 is rejected") {
        CHECK_THROWS_AS(build_pair(1), std::invalid_argument);
        CHECK_THROWS_AS(build_pair(0), std::invalid_argument);
    }
}

TEST_CASE("monomial", "[pair]") {
    CHECK(monomial(build_pair(5), 0, 0).is_identity());
    CHECK(monomial(build_pair(7), 7, 0).is_identity());
    CHECK(monomial(build_pair(7), -3, 11) == monomial(build_pair(7), 4, 4));

    // U V by hand: column l picks up omega^l from V then moves to row l+1
    const PhasedPermutation uv = monomial(build_pair(3), 1, 1);
    CHECK(uv.perm() == std::vector<std::size_t>{1, 2, 0});
    CHECK(uv.exponents() == std::vector<std::int64_t>{0, 2, 4});
    CHECK(oracle::max_diff(pp_to_dense(uv), oracle::mul(oracle::shift(3), oracle::clock(3))) < 1e-15);
}

TEST_CASE("projector_v", "[pair][projector]") {
    const SchwingerPair p3 = build_pair(3);
    // brute-force: (1/3) sum_j V^j w^{-j} from explicit matrices
    oracle::Mat expected = oracle::zeros(3);
    for (int j = 0; j < 3; ++j) {
        expected = oracle::add(expected, oracle::scale(oracle::power(oracle::clock(3), j),
                                                       oracle::expi(-2.0 * std::numbers::pi * j / 3.0) / 3.0));
    }
    CHECK(oracle::max_diff(projector_v(p3, 1), expected) < 1e-15);
    CHECK(oracle::max_diff(projector_v(p3, 1), {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}) < 1e-15);
    CHECK(oracle::max_diff(projector_v(build_pair(2), 0), {{1, 0}, {0, 0}}) < 1e-15);

    const SchwingerPair p5 = build_pair(5);
    DenseOperator sum = DenseOperator::zero(5);
    for (int k = 0; k < 5; ++k) sum = sum + projector_v(p5, k);
    CHECK(max_abs_diff(sum, DenseOperator::identity(5)) < 1e-12);

    CHECK_THROWS_AS(projector_v(p3, 3), std::out_of_range);
    CHECK_THROWS_AS(projector_v(p3, -1), std::out_of_range);
}

TEST_CASE("projector_u", "[pair][projector]") {
    const SchwingerPair p2 = build_pair(2);
    // (I + X)/2 and (I - X)/2
    CHECK(oracle::max_diff(projector_u(p2, 0), {{0.5, 0.5}, {0.5, 0.5}}) < 1e-15);
    CHECK(oracle::max_diff(projector_u(p2, 1), {{0.5, -0.5}, {-0.5, 0.5}}) < 1e-15);

    const SchwingerPair p7 = build_pair(7);
    for (int k = 0; k < 7; ++k) {
        const DenseOperator t = projector_u(p7, k);
        CHECK(std::abs(t.trace() - 1.0) < 1e-12);
        // eigenvector of U with eigenvalue omega^k
        CHECK(max_abs_diff(pp_to_dense(p7.U()) * t, root_of_unity(k, 7) * t) < 1e-12);
    }
    CHECK_THROWS_AS(projector_u(p7, 7), std::out_of_range);
}

TEST_CASE("Projector algebra", "[pair][projector][property]") {
    for (const std::int64_t n : {2, 3, 5, 9}) {
        const SchwingerPair p = build_pair(n);
        for (std::int64_t k = 0; k < n; ++k) {
            for (std::int64_t l = 0; l < n; ++l) {
                const DenseOperator zero = DenseOperator::zero(p.dim());
                CHECK(max_abs_diff(projector_v(p, k) * projector_v(p, l), k == l ? projector_v(p, k) : zero) < 1e-12);
                CHECK(max_abs_diff(projector_u(p, k) * projector_u(p, l), k == l ? projector_u(p, k) : zero) < 1e-12);
            }
        }
    }
}

TEST_CASE("Kronecker delta modulo N", "[pair][property]") {
    for (std::int64_t n = 2; n <= 25; ++n) {
        for (std::int64_t k = 0; k < n; ++k) {
            for (std::int64_t l = 0; l < n; ++l) {
                cplx s{};
                for (std::int64_t j = 0; j < n; ++j) {
                    s += RootPhase(n, -k * j).value() * RootPhase(n, l * j).value();
                }
                s /= static_cast<double>(n);
                REQUIRE(std::abs(s - cplx(k == l ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("fourier_matrix", "[pair][fourier]") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(oracle::max_diff(fourier_matrix(2), {{r, r}, {r, -r}}) < 1e-15);

    const DenseOperator f16 = fourier_matrix(16);
    CHECK(max_abs_diff(f16 * f16.adjoint(), DenseOperator::identity(16)) < 1e-12);

    SECTION("conjugation direction fixed by brute force") {
        // oracle (explicit 3x3 products): F U F^dagger = V and F^dagger U F = V^dagger
        const auto& f = fourier_matrix(3);
        oracle::Mat fm = oracle::zeros(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) fm[i][j] = f(i, j);
        const oracle::Mat conj_fwd = oracle::mul(oracle::mul(fm, oracle::shift(3)), oracle::dagger(fm));
        const oracle::Mat conj_bwd = oracle::mul(oracle::mul(oracle::dagger(fm), oracle::shift(3)), fm);
        const DenseOperator v = pp_to_dense(build_pair(3).V());
        REQUIRE(oracle::max_diff(v, conj_fwd) < 1e-12);
        REQUIRE(oracle::max_diff(v.adjoint(), conj_bwd) < 1e-12);

        const DenseOperator u = pp_to_dense(build_pair(3).U());
        CHECK(max_abs_diff(f * u * f.adjoint(), v) < 1e-10);
        CHECK(max_abs_diff(f.adjoint() * u * f, v.adjoint()) < 1e-10);
    }

    CHECK_THROWS(fourier_matrix(1));
}

TEST_CASE("Fourier properties up to N=64", "[pair][fourier][property]") {
    for (std::int64_t n = 2; n <= 64; ++n) {
        const DenseOperator f = fourier_matrix(n);
        REQUIRE(max_abs_diff(f * f.adjoint(), DenseOperator::identity(f.dim())) < 1e-12);
        REQUIRE(max_abs_diff(f.adjoint() * f, DenseOperator::identity(f.dim())) < 1e-12);
        if (n <= 16) {
            const SchwingerPair p = build_pair(n);
            REQUIRE(max_abs_diff(f * pp_to_dense(p.U()) * f.adjoint(), pp_to_dense(p.V())) < 1e-10);
        }
    }
}

TEST_CASE("verify_clifford", "[pair][clifford]") {
    const CliffordReport r3 = verify_clifford(build_pair(3));
    CHECK(r3.pass());
    CHECK(r3.relations_checked == 9);
    CHECK(r3.periodicity_checked == 2);

    const CliffordReport r25 = verify_clifford(build_pair(25));
    CHECK(r25.pass());
    CHECK(r25.relations_checked == 625);
    CHECK(r25.max_exponent_mismatch == 0);

    SECTION("tampered clock phase is located") {
        const SchwingerPair p = build_pair(5);
        std::vector<std::int64_t> ex = p.V().exponents();
        ex[2] += 1;
        const SchwingerPair bad =
            SchwingerPair::from_operators(p.U(), PhasedPermutation::diagonal(ex, p.V().order()));
        const CliffordReport r = verify_clifford(bad);
        CHECK_FALSE(r.pass());
        CHECK(r.mismatches > 0);
        REQUIRE_FALSE(r.first_violations.empty());
        CHECK(r.first_violations.size() <= 10);
        // the first failure in scan order is k=1 (k=0 and l=0 rows commute trivially)
        CHECK(r.first_violations.front().relation == "weyl");
        CHECK(r.first_violations.front().k == 1);
        CHECK(r.first_violations.front().l == 1);
        CHECK(r.max_exponent_mismatch >= 1); // V^N is off by N steps in column 2
    }

    SECTION("report is deterministic") {
        std::vector<std::int64_t> ex = build_pair(4).V().exponents();
        ex[0] = 3;
        const SchwingerPair bad =
            SchwingerPair::from_operators(build_pair(4).U(), PhasedPermutation::diagonal(ex, 8));
        const CliffordReport a = verify_clifford(bad);
        const CliffordReport b = verify_clifford(bad);
        REQUIRE(a.first_violations.size() == b.first_violations.size());
        for (std::size_t i = 0; i < a.first_violations.size(); ++i) {
            CHECK(a.first_violations[i].k == b.first_violations[i].k);
            CHECK(a.first_violations[i].l == b.first_violations[i].l);
            CHECK(a.first_violations[i].column == b.first_violations[i].column);
        }
    }
}

TEST_CASE("LabelConvention", "[pair][labels]") {
    CHECK_THROWS(LabelConvention(LabelConvention::Mode::Symmetric, 4));
    const LabelConvention sym(LabelConvention::Mode::Symmetric, 5);
    CHECK(sym.labels() == std::vector<std::int64_t>{-2, -1, 0, 1, 2});
    CHECK(sym.to_zero_based(-1) == 4);
    CHECK_THROWS_AS(sym.to_zero_based(3), std::out_of_range);

    for (std::int64_t n = 1; n <= 25; n += 2) {
        const LabelConvention s(LabelConvention::Mode::Symmetric, n);
        const LabelConvention z(LabelConvention::Mode::ZeroBased, n);
        for (std::int64_t k = 0; k < n; ++k) {
            REQUIRE(s.to_zero_based(s.from_zero_based(k)) == k);
            REQUIRE(z.to_zero_based(z.from_zero_based(k)) == k);
        }
        for (const std::int64_t label : s.labels()) {
            REQUIRE(s.from_zero_based(s.to_zero_based(label)) == label);
            REQUIRE(mod_floor(label, n) == s.to_zero_based(label));
        }
    }
}

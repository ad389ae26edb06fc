#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qps/qps.hpp"

using namespace qps;

TEST_CASE("prime_factorize", "[factor]") {
    CHECK(prime_factorize(2) == std::vector<std::int64_t>{2});
    CHECK(prime_factorize(12) == std::vector<std::int64_t>{2, 2, 3});
    CHECK(prime_factorize(105) == std::vector<std::int64_t>{3, 5, 7});
    CHECK(prime_factorize(97) == std::vector<std::int64_t>{97});
    CHECK_THROWS_AS(prime_factorize(1), std::invalid_argument);
}

TEST_CASE("mod_inverse", "[factor]") {
    CHECK(mod_inverse(3, 5) == 2);
    CHECK(mod_inverse(5, 3) == 2);
    CHECK(mod_inverse(-1, 7) == 6);
    CHECK_THROWS_AS(mod_inverse(4, 6), std::invalid_argument);
}

TEST_CASE("FactorSystem CRT", "[factor]") {
    const FactorSystem fs = build_factor_system(15);
    CHECK(fs.factors() == std::vector<std::int64_t>{3, 5});
    CHECK(fs.crt_forward(7) == std::vector<std::int64_t>{1, 2});
    CHECK(fs.crt_backward({1, 2}) == 7);
    CHECK(fs.idempotent(0) == 10);
    CHECK(fs.idempotent(1) == 6);
    CHECK_THROWS_AS(fs.crt_backward({1}), std::invalid_argument);

    CHECK_THROWS_WITH(build_factor_system(12), Catch::Matchers::ContainsSubstring("repeated prime"));
    CHECK_THROWS_AS(build_factor_system(9), std::invalid_argument);

    for (const std::int64_t n : {2, 6, 10, 15, 21, 30, 105}) {
        const FactorSystem f = build_factor_system(n);
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (std::int64_t m = 0; m < n; ++m) {
            const std::int64_t back = f.crt_backward(f.crt_forward(m));
            REQUIRE(back == m);
            seen[static_cast<std::size_t>(back)] = true;
        }
        REQUIRE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("sub_pair exponents and exchange phases at N=15", "[factor]") {
    const FactorSystem fs = build_factor_system(15);
    const SubPair p3 = sub_pair(fs, 0);
    const SubPair p5 = sub_pair(fs, 1);
    CHECK(p3.prime == 3);
    CHECK(p3.u_exponent == 10);
    CHECK(p3.v_exponent == 5);
    CHECK(p5.u_exponent == 6);
    CHECK(p5.v_exponent == 3);
    CHECK_THROWS_AS(sub_pair(fs, 2), std::out_of_range);

    // dense oracle: V_3 U_3 = exp(2 pi i/3) U_3 V_3, V_3 U_5 = U_5 V_3, V_5 U_5 = exp(2 pi i/5) U_5 V_5
    const oracle::Mat u = oracle::shift(15);
    const oracle::Mat v = oracle::clock(15);
    const oracle::Mat u3 = oracle::power(u, 10), v3 = oracle::power(v, 5);
    const oracle::Mat u5 = oracle::power(u, 6), v5 = oracle::power(v, 3);
    const auto exchange = [](const oracle::Mat& a, const oracle::Mat& b, cplx phase) {
        return oracle::max_diff(DenseOperator(15, [&] {
                                    std::vector<cplx> e;
                                    const oracle::Mat lhs = oracle::mul(a, b);
                                    for (const auto& row : lhs) e.insert(e.end(), row.begin(), row.end());
                                    return e;
                                }()),
                                oracle::scale(oracle::mul(b, a), phase));
    };
    CHECK(exchange(v3, u3, oracle::expi(2.0 * std::numbers::pi / 3.0)) < 1e-12);
    CHECK(exchange(v3, u5, 1.0) < 1e-12);
    CHECK(exchange(v5, u3, 1.0) < 1e-12);
    CHECK(exchange(v5, u5, oracle::expi(2.0 * std::numbers::pi / 5.0)) < 1e-12);

    CHECK(oracle::max_diff(pp_to_dense(p3.U), u3) < 1e-12);
    CHECK(oracle::max_diff(pp_to_dense(p3.V), v3) < 1e-12);
    CHECK(oracle::max_diff(pp_to_dense(p5.U), u5) < 1e-12);
    CHECK(oracle::max_diff(pp_to_dense(p5.V), v5) < 1e-12);
}

TEST_CASE("verify_factor_commutation", "[factor]") {
    for (const std::int64_t n : {6, 10, 15, 21, 105}) {
        const FactorCommutationReport r = verify_factor_commutation(build_factor_system(n));
        INFO("N=" << n);
        CHECK(r.pass());
        const std::size_t h = build_factor_system(n).size();
        CHECK(r.pairs_checked == h + h * h);
    }
    CHECK(verify_factor_commutation(build_factor_system(7)).pass());
}

TEST_CASE("factorized element equals a direct element", "[factor]") {
    for (const std::int64_t n : {6, 10, 15, 21}) {
        const FactorSystem fs = build_factor_system(n);
        for (std::int64_t m = 0; m < n; ++m) {
            for (std::int64_t k = 0; k < n; ++k) {
                const FactorizedComparison c = compare_factorized(fs, m, k);
                const auto [dm, dn] = direct_labels(fs, m, k);
                INFO("N=" << n << " m=" << m << " n=" << k);
                REQUIRE(c.direct_m == dm);
                REQUIRE(c.direct_n == dn);
                REQUIRE(c.global_phase.value() == cplx(1.0));
                REQUIRE(c.hs_distance < 1e-10);
            }
        }
    }
}

TEST_CASE("factorized element against dense product", "[factor]") {
    const FactorSystem fs = build_factor_system(6);
    for (std::int64_t m = 0; m < 6; ++m) {
        for (std::int64_t k = 0; k < 6; ++k) {
            const auto ml = fs.crt_forward(m);
            const auto kl = fs.crt_forward(k);
            oracle::Mat prod = oracle::eye(6);
            for (std::size_t l = 0; l < 2; ++l) {
                const oracle::Mat ul = oracle::power(oracle::shift(6), static_cast<int>(fs.idempotent(l)));
                const oracle::Mat vl = oracle::power(oracle::clock(6), static_cast<int>(6 / fs.factor(l)));
                prod = oracle::mul(prod, oracle::mul(oracle::power(ul, static_cast<int>(ml[l])),
                                                     oracle::power(vl, static_cast<int>(kl[l]))));
            }
            REQUIRE(oracle::max_diff(factorized_s1(fs, m, k), oracle::scale(prod, 1.0 / std::sqrt(6.0))) < 1e-12);
        }
    }
    CHECK_THROWS_AS(factorized_s1(fs, 6, 0), std::out_of_range);
}

TEST_CASE("factorized family is orthonormal", "[factor][property]") {
    for (const std::int64_t n : {6, 10, 14, 15, 21}) {
        const FactorSystem fs = build_factor_system(n);
        std::vector<PhasedPermutation> els;
        for (std::int64_t m = 0; m < n; ++m)
            for (std::int64_t k = 0; k < n; ++k) els.push_back(factorized_monomial(fs, m, k));
        const double norm = 1.0 / static_cast<double>(n);
        for (std::size_t a = 0; a < els.size(); ++a) {
            for (std::size_t b = 0; b < els.size(); ++b) {
                const cplx ip = norm * pp_hs_inner(els[a], els[b]);
                REQUIRE(std::abs(ip - cplx(a == b ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

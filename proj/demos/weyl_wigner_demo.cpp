// Builds the clock/shift pair for a small N, checks the exchange relation,
// and prints the phase-space table of a V eigenstate.

#include <cstdio>
#include <cstdlib>

#include "qps/qps.hpp"

int main(int argc, char** argv) {
    const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 3;
    const qps::SchwingerPair pair = qps::build_pair(n);

    const qps::CliffordReport rep = qps::verify_clifford(pair);
    std::printf("N=%lld: %zu exchange relations, %s\n", static_cast<long long>(n), rep.relations_checked,
                rep.pass() ? "all exact" : "MISMATCH");

    const qps::DenseOperator rho = qps::projector_v(pair, 0);
    const qps::WignerTable w = qps::wigner_map(rho, n);
    std::printf("table of |v_0><v_0| (c_N = %.6f, kernel %s):\n", w.normalization.real(),
                w.hermitian_kernel ? "hermitian" : "not hermitian");
    for (std::size_t m = 0; m < w.dim; ++m) {
        for (std::size_t k = 0; k < w.dim; ++k) {
            std::printf("  %+.4f%+.4fi", w(m, k).real(), w(m, k).imag());
        }
        std::printf("\n");
    }
    std::printf("sum = %.6f (trace %.6f)\n", w.sum.real(), w.trace.real());
}

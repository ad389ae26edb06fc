// q-oscillator at a root of unity: ladder coefficients and the deformed
// commutator check.

#include <cstdio>
#include <cstdlib>

#include "qps/qps.hpp"

int main(int argc, char** argv) {
    const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 7;
    const qps::QOscillator osc = qps::build_qosc(n);

    for (const qps::MultipletState& s : qps::multiplet(osc)) {
        std::printf("k=%2zu  a+ -> %2zu%s", s.level, s.raised_to, s.wraps ? " (wraps)" : "        ");
        if (s.lowered_to) {
            std::printf("  a -> %2zu * %+.6f\n", *s.lowered_to, s.lowered_coefficient);
        } else {
            std::printf("  a -> 0 (vacuum)\n");
        }
    }

    const qps::QCommutatorReport r = qps::verify_q_relation(osc);
    std::printf("max deviation %.3e (tolerance %.0e): %s\n", r.max_abs_deviation, r.tolerance,
                r.pass() ? "ok" : "FAIL");
    return r.pass() ? 0 : 1;
}

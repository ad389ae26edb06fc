#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qps/cli/matrix_file.hpp"
#include "qps/qps.hpp"

namespace qps::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_io = 3,
    exit_malformed = 4,
};

class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Json, Csv };

inline OutputFormat parse_format(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw usage_error("--format must be json or csv, got '" + std::string(s) + "'");
}

/// Deliver content to --out (atomically) or to stdout when no path is given.
inline void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
    if (path && !path->empty()) {
        atomic_write(*path, content);
    } else {
        out << content;
    }
}

inline std::string entries_array(std::span<const cplx> entries) {
    std::string s = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        s += (i == 0 ? "" : ", ") + format_complex(entries[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::string kind; // U V S1 S2 G fourier projector
    std::int64_t n = 0;
    std::optional<std::int64_t> m;
    std::optional<std::int64_t> k;
    std::string family = "v"; // projector flavour: v or u
    std::string format = "json";
    std::optional<std::string> out;
};

inline DenseOperator generate_operator(const GenOptions& o, std::string& name) {
    if (o.n < 2) {
        throw usage_error("--n must be at least 2");
    }
    auto need = [&](const std::optional<std::int64_t>& v, const char* flag) {
        if (!v) {
            throw usage_error("gen " + o.kind + " requires " + flag);
        }
        return *v;
    };
    const SchwingerPair pair = build_pair(o.n);
    if (o.kind == "U") {
        name = "U";
        return pp_to_dense(pair.U());
    }
    if (o.kind == "V") {
        name = "V";
        return pp_to_dense(pair.V());
    }
    if (o.kind == "S1" || o.kind == "S2" || o.kind == "G") {
        const std::int64_t m = need(o.m, "--m");
        const std::int64_t k = need(o.k, "--k");
        name = o.kind + "(" + std::to_string(m) + "," + std::to_string(k) + ")";
        if (o.kind == "S1") return s1(o.n, m, k);
        if (o.kind == "S2") return s2(o.n, m, k);
        return g_fourier(o.n, m, k);
    }
    if (o.kind == "fourier") {
        name = "fourier";
        return fourier_matrix(o.n);
    }
    if (o.kind == "projector") {
        const std::int64_t k = need(o.k, "--k");
        if (k < 0 || k >= o.n) {
            throw usage_error("--k must lie in [0, N)");
        }
        if (o.family != "v" && o.family != "u") {
            throw usage_error("gen projector: --family must be v or u");
        }
        name = "projector_" + o.family + "(" + std::to_string(k) + ")";
        return o.family == "v" ? projector_v(pair, k) : projector_u(pair, k);
    }
    throw usage_error("unknown kind '" + o.kind + "' (expected U, V, S1, S2, G, fourier, projector)");
}

inline int cmd_gen(const GenOptions& o, std::ostream& out) {
    const OutputFormat fmt = parse_format(o.format);
    std::string name;
    const DenseOperator op = generate_operator(o, name);
    const std::string content = fmt == OutputFormat::Json
                                    ? TableWriter().string_field("name", name).string_field("basis", "v-eigenbasis")
                                          .json(op.dim(), op.entries())
                                    : TableWriter::csv(op.dim(), op.entries());
    emit(o.out, content, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct Failure {
    std::string check;
    std::int64_t n = 0;
    std::string location;
    double magnitude = 0.0;
};

struct Skip {
    std::string suite;
    std::int64_t n = 0;
    std::string reason;
};

struct VerifyReport {
    std::string suite;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    std::size_t checks_run = 0;
    std::vector<Failure> failures;
    std::vector<Skip> skipped;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;

    std::string status() const {
        if (!failures.empty()) return "fail";
        if (checks_run == 0 && !skipped.empty()) return "skipped";
        return "pass";
    }

    /// Record one named check; returns whether it passed.
    bool check(const std::string& id, std::int64_t n, double magnitude, double tol, std::string location = {}) {
        ++checks_run;
        if (magnitude <= tol && std::isfinite(magnitude)) {
            return true;
        }
        failures.push_back({id, n, std::move(location), magnitude});
        return false;
    }

    std::string to_json() const {
        std::ostringstream os;
        os << "{\n  \"suite\": " << json_string(suite) << ",\n  \"n_range\": [" << n_lo << ", " << n_hi
           << "],\n  \"status\": " << json_string(status()) << ",\n  \"checks_run\": " << checks_run
           << ",\n  \"failures\": [";
        for (std::size_t i = 0; i < failures.size(); ++i) {
            const auto& f = failures[i];
            os << (i ? ",\n" : "\n") << "    {\"check\": " << json_string(f.check) << ", \"n\": " << f.n
               << ", \"location\": " << json_string(f.location) << ", \"magnitude\": " << format_double(f.magnitude)
               << "}";
        }
        os << (failures.empty() ? "" : "\n  ") << "],\n  \"skipped\": [";
        for (std::size_t i = 0; i < skipped.size(); ++i) {
            const auto& s = skipped[i];
            os << (i ? ",\n" : "\n") << "    {\"suite\": " << json_string(s.suite) << ", \"n\": " << s.n
               << ", \"reason\": " << json_string(s.reason) << "}";
        }
        os << (skipped.empty() ? "" : "\n  ") << "],\n  \"notes\": [";
        for (std::size_t i = 0; i < notes.size(); ++i) {
            os << (i ? ",\n" : "\n") << "    " << json_string(notes[i]);
        }
        os << (notes.empty() ? "" : "\n  ") << "],\n  \"elapsed_ms\": " << std::fixed << std::setprecision(1)
           << elapsed_ms << "\n}\n";
        return os.str();
    }
};

struct VerifyOptions {
    std::string suite = "all";
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    std::optional<double> tolerance; // overrides every per-check default
};

namespace suites {

inline DenseOperator random_operator(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> e(dim * dim);
    for (auto& z : e) {
        z = {gauss(rng), gauss(rng)};
    }
    return {dim, std::move(e)};
}

inline void clifford(std::int64_t n, VerifyReport& rep) {
    const CliffordReport r = verify_clifford(build_pair(n));
    rep.checks_run += r.relations_checked + r.periodicity_checked;
    for (const auto& v : r.first_violations) {
        rep.failures.push_back({"clifford-" + v.relation, n,
                                "k=" + std::to_string(v.k) + ",l=" + std::to_string(v.l) +
                                    ",col=" + std::to_string(v.column),
                                static_cast<double>(v.exponent_mismatch)});
    }
}

inline void basis(std::int64_t n, const std::optional<double>& override_tol, VerifyReport& rep) {
    auto tol = [&](double d) { return override_tol.value_or(d); };
    const auto dim = static_cast<std::size_t>(n);

    for (const BasisKind kind : {BasisKind::S1, BasisKind::S2}) {
        const auto fam = basis_family(kind, n);
        double worst = 0.0;
        for (std::size_t a = 0; a < dim * dim; ++a) {
            const DenseOperator ea = fam->element(a / dim, a % dim);
            for (std::size_t b = 0; b < dim * dim; ++b) {
                const cplx g = fam->pairing(b / dim, b % dim, ea);
                worst = std::max(worst, std::abs(g - cplx(a == b ? 1.0 : 0.0)));
            }
        }
        rep.check(std::string(to_string(kind)) + "-orthonormality", n, worst, tol(1e-12));
    }

    std::int64_t tmod_mismatch = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t l = 0; l < n; ++l) {
            const ScaledMonomial base = t_mod_exact(n, j, l);
            for (std::int64_t a = -2; a <= 2; ++a) {
                for (std::int64_t b = -2; b <= 2; ++b) {
                    if (!(t_mod_exact(n, j + a * n, l + b * n).op == base.op)) {
                        ++tmod_mismatch;
                    }
                }
            }
        }
    }
    rep.check("tmod-invariance-exact", n, static_cast<double>(tmod_mismatch), 0.0);

    double sign_defect = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t l = 0; l < n; ++l) {
            const double sign = (l % 2 == 0) ? 1.0 : -1.0;
            sign_defect = std::max(sign_defect, max_abs_diff(s2(n, j + n, l), sign * s2(n, j, l)));
        }
    }
    rep.check("s2-shift-sign", n, sign_defect, tol(1e-12));
    rep.check("s2-substitution-symmetry", n, s2_substitution_defect(n), tol(1e-10));

    std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(n));
    for (const BasisKind kind : {BasisKind::S1, BasisKind::S2, BasisKind::TmodN, BasisKind::GFourier}) {
        const auto fam = basis_family(kind, n);
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const DenseOperator o = random_operator(dim, rng);
            worst = std::max(worst, max_abs_diff(reconstruct(decompose(o, *fam), *fam), o));
        }
        rep.check(std::string(to_string(kind)) + "-round-trip", n, worst, tol(1e-10));
    }

    const SchwingerPair pair = build_pair(n);
    double proj = 0.0;
    DenseOperator sum_v = DenseOperator::zero(dim);
    DenseOperator sum_u = DenseOperator::zero(dim);
    std::vector<DenseOperator> pv;
    std::vector<DenseOperator> pu;
    for (std::int64_t k = 0; k < n; ++k) {
        pv.push_back(projector_v(pair, k));
        pu.push_back(projector_u(pair, k));
        sum_v = sum_v + pv.back();
        sum_u = sum_u + pu.back();
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t l = 0; l < dim; ++l) {
            const DenseOperator zero = DenseOperator::zero(dim);
            proj = std::max(proj, max_abs_diff(pv[k] * pv[l], k == l ? pv[k] : zero));
            proj = std::max(proj, max_abs_diff(pu[k] * pu[l], k == l ? pu[k] : zero));
        }
    }
    proj = std::max({proj, max_abs_diff(sum_v, DenseOperator::identity(dim)),
                     max_abs_diff(sum_u, DenseOperator::identity(dim))});
    rep.check("projector-algebra", n, proj, tol(1e-12));

    const DenseOperator f = fourier_matrix(n);
    rep.check("fourier-unitary", n, max_abs_diff(f * f.adjoint(), DenseOperator::identity(dim)), tol(1e-12));
    rep.check("fourier-conjugation", n, max_abs_diff(f * pp_to_dense(pair.U()) * f.adjoint(), pp_to_dense(pair.V())),
              tol(1e-10));

    const DenseOperator o = random_operator(dim, rng);
    const WignerTable w = wigner_map(o, n);
    rep.check("wigner-trace-sum", n, std::abs(w.sum - w.trace), tol(1e-10));
    rep.notes.push_back("N=" + std::to_string(n) + ": G(m,n) hermitian=" + (w.hermitian_kernel ? "yes" : "no") +
                        (w.hermitian_kernel ? "" : " (Wigner tables are complex-valued)"));
}

inline bool square_free(std::int64_t n) {
    const auto p = prime_factorize(n);
    return std::adjacent_find(p.begin(), p.end()) == p.end();
}

inline void factor(std::int64_t n, const std::optional<double>& override_tol, VerifyReport& rep) {
    if (!square_free(n)) {
        rep.skipped.push_back({"factor", n, "repeated prime factors unsupported"});
        return;
    }
    const FactorSystem fs = build_factor_system(n);
    const FactorCommutationReport c = verify_factor_commutation(fs);
    rep.checks_run += c.pairs_checked;
    for (const auto& msg : c.messages) {
        rep.failures.push_back({"factor-commutation", n, msg, 1.0});
    }
    std::int64_t crt_bad = 0;
    for (std::int64_t m = 0; m < n; ++m) {
        crt_bad += fs.crt_backward(fs.crt_forward(m)) != m ? 1 : 0;
    }
    rep.check("crt-bijection", n, static_cast<double>(crt_bad), 0.0);
    double worst = 0.0;
    double worst_phase = 0.0;
    for (std::int64_t m = 0; m < n; ++m) {
        for (std::int64_t k = 0; k < n; ++k) {
            const FactorizedComparison cmp = compare_factorized(fs, m, k);
            worst = std::max(worst, cmp.hs_distance);
            worst_phase = std::max(worst_phase, std::abs(std::abs(cmp.global_phase.value()) - 1.0));
        }
    }
    rep.check("factorized-s1-match", n, worst, override_tol.value_or(1e-10));
    rep.check("factorized-phase-unit", n, worst_phase, override_tol.value_or(1e-12));
}

inline void qosc(std::int64_t n, const std::optional<double>& override_tol, VerifyReport& rep) {
    if (n % 2 == 0 || n < 3) {
        rep.skipped.push_back({"qosc", n, "antisymmetric vacuum selection requires odd N >= 3"});
        return;
    }
    const double tier = override_tol.value_or(q_relation_tolerance(n));
    const QOscillator osc = build_qosc(n);
    const QCommutatorReport q = verify_q_relation(osc, tier);
    rep.check("q-relation", n, q.max_abs_deviation, tier);
    rep.check("annihilator-cross-construction", n, max_abs_diff(annihilator_from_unitaries(build_pair(n)), osc.a()),
              override_tol.value_or(1e-12));
    double smallest = INFINITY;
    double antisym = 0.0;
    for (std::int64_t k = 1; k < n; ++k) {
        smallest = std::min(smallest, std::abs(ladder_coefficient(n, k)));
        antisym = std::max(antisym, std::abs(ladder_coefficient(n, n - k) + ladder_coefficient(n, k)));
    }
    ++rep.checks_run;
    if (!(smallest > 1e-9)) {
        rep.failures.push_back({"vacuum-uniqueness", n, "min |s(k)|, k != 0", smallest});
    }
    rep.check("ladder-antisymmetry", n, antisym, override_tol.value_or(1e-14));
}

} // namespace suites

inline VerifyReport run_verify(const VerifyOptions& o) {
    static const std::vector<std::string> known{"clifford", "basis", "factor", "qosc", "all"};
    if (std::find(known.begin(), known.end(), o.suite) == known.end()) {
        throw usage_error("unknown suite '" + o.suite + "' (expected clifford, basis, factor, qosc, all)");
    }
    if (o.n_lo < 2 || o.n_hi < o.n_lo) {
        throw usage_error("N range must satisfy 2 <= lo <= hi");
    }
    if (o.tolerance && !(*o.tolerance >= 0.0)) {
        throw usage_error("tolerance must be a non-negative number");
    }
    const auto start = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.suite = o.suite;
    rep.n_lo = o.n_lo;
    rep.n_hi = o.n_hi;
    const bool all = o.suite == "all";
    for (std::int64_t n = o.n_lo; n <= o.n_hi; ++n) {
        if (all || o.suite == "clifford") suites::clifford(n, rep);
        if (all || o.suite == "basis") suites::basis(n, o.tolerance, rep);
        if (all || o.suite == "factor") suites::factor(n, o.tolerance, rep);
        if (all || o.suite == "qosc") suites::qosc(n, o.tolerance, rep);
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const VerifyReport rep = run_verify(o);
    for (const auto& s : rep.skipped) {
        out << "notice: suite " << s.suite << " skipped for N=" << s.n << ": " << s.reason << "\n";
    }
    out << rep.to_json();
    return rep.failures.empty() ? exit_ok : exit_verification_failed;
}

/// "7", "3..25", "3-25" or "3:25".
inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    for (const std::string_view sep : {"..", "-", ":"}) {
        const auto pos = text.find(sep);
        if (pos != std::string::npos && pos > 0) {
            try {
                std::size_t used_lo = 0;
                std::size_t used_hi = 0;
                const std::string lo_s = text.substr(0, pos);
                const std::string hi_s = text.substr(pos + sep.size());
                const auto lo = std::stoll(lo_s, &used_lo);
                const auto hi = std::stoll(hi_s, &used_hi);
                if (used_lo == lo_s.size() && used_hi == hi_s.size()) {
                    return {lo, hi};
                }
            } catch (const std::exception&) {
            }
            throw usage_error("malformed --range '" + text + "'");
        }
    }
    try {
        std::size_t used = 0;
        const auto v = std::stoll(text, &used);
        if (used == text.size()) {
            return {v, v};
        }
    } catch (const std::exception&) {
    }
    throw usage_error("malformed --range '" + text + "'");
}

/// QPS_TOLERANCE, if set.
inline std::optional<double> tolerance_from_env() {
    const char* raw = std::getenv("QPS_TOLERANCE");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !std::isfinite(v) || v < 0.0) {
        throw usage_error(std::string("QPS_TOLERANCE must be a non-negative number, got '") + raw + "'");
    }
    return v;
}

// ---------------------------------------------------------------------------
// decompose / wigner

inline MatrixFile load_matrix(const std::string& path) {
    MatrixFile mf = parse_matrix_json(read_text_file(path));
    if (mf.dim < 2) {
        throw malformed_input("field 'dim': must be at least 2");
    }
    return mf;
}

struct DecomposeOptions {
    std::string input;
    std::string family = "s1";
    std::string format = "json";
    std::optional<std::string> out;
};

inline int cmd_decompose(const DecomposeOptions& o, std::ostream& out) {
    const auto kind = parse_basis_kind(o.family);
    if (!kind) {
        throw usage_error("--family must be one of s1, s2, tmod, g");
    }
    const OutputFormat fmt = parse_format(o.format);
    const MatrixFile mf = load_matrix(o.input);
    const DenseOperator op = mf.to_operator();
    const auto fam = basis_family(*kind, static_cast<std::int64_t>(mf.dim));
    const CoefficientGrid grid = decompose(op, *fam);
    const double residual = max_abs_diff(reconstruct(grid, *fam), op);
    const std::string content = fmt == OutputFormat::Json
                                    ? TableWriter()
                                          .string_field("grid_kind", "coefficients")
                                          .string_field("family", to_string(*kind))
                                          .number_field("residual", residual)
                                          .json(grid.dim(), grid.values())
                                    : TableWriter::csv(grid.dim(), grid.values());
    emit(o.out, content, out);
    return exit_ok;
}

struct WignerOptions {
    std::string input;
    std::string format = "json";
    std::optional<std::string> out;
};

inline int cmd_wigner(const WignerOptions& o, std::ostream& out) {
    const OutputFormat fmt = parse_format(o.format);
    const MatrixFile mf = load_matrix(o.input);
    const WignerTable w = wigner_map(mf.to_operator(), static_cast<std::int64_t>(mf.dim));
    const std::string content = fmt == OutputFormat::Json
                                    ? TableWriter()
                                          .string_field("grid_kind", "wigner")
                                          .complex_field("trace", w.trace)
                                          .complex_field("sum", w.sum)
                                          .complex_field("normalization", w.normalization)
                                          .bool_field("hermitian_kernel", w.hermitian_kernel)
                                          .json(w.dim, w.values)
                                    : TableWriter::csv(w.dim, w.values);
    emit(o.out, content, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// qosc / factor

struct QoscOptions {
    std::int64_t n = 0;
    std::optional<std::string> out;
};

inline int cmd_qosc(const QoscOptions& o, std::ostream& out) {
    if (o.n < 3 || o.n % 2 == 0) {
        throw usage_error("qosc: N must be odd and >= 3 (antisymmetric vacuum selection via sin(2 pi k/N) "
                          "leaves a second annihilated state at k = N/2 for even N)");
    }
    const QOscillator osc = build_qosc(o.n);
    const QCommutatorReport rep = verify_q_relation(osc);
    out << "N = " << o.n << "\n k  s(k)\n";
    for (std::int64_t k = 0; k < o.n; ++k) {
        out << std::setw(3) << k << "  " << format_double(ladder_coefficient(o.n, k)) << "\n";
    }
    out << "max |a a+ - w a+ a - w^-N| = " << format_double(rep.max_abs_deviation) << " (tolerance "
        << format_double(rep.tolerance) << ") " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    if (o.out) {
        const DenseOperator ad = pp_to_dense(osc.a_dagger());
        atomic_write(*o.out, TableWriter()
                                 .string_field("name", "a")
                                 .string_field("basis", "v-eigenbasis")
                                 .field("a_dagger", entries_array(ad.entries()))
                                 .json(osc.dim(), osc.a().entries()));
    }
    return rep.pass() ? exit_ok : exit_verification_failed;
}

inline int cmd_factor(std::int64_t n, std::ostream& out) {
    if (n < 2) {
        throw usage_error("factor: N must be at least 2");
    }
    FactorSystem fs = [&] {
        try {
            return build_factor_system(n);
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
    }();
    out << "N = " << n << "\n";
    for (std::size_t l = 0; l < fs.size(); ++l) {
        const SubPair sp = sub_pair(fs, l);
        out << "  P = " << sp.prime << ": U_l = U^" << sp.u_exponent << ", V_l = V^" << sp.v_exponent << "\n";
    }
    const FactorCommutationReport c = verify_factor_commutation(fs);
    out << "commutation checks: " << c.pairs_checked << ", failures: " << c.failures << "\n";
    for (const auto& msg : c.messages) {
        out << "  " << msg << "\n";
    }
    double worst = 0.0;
    std::size_t nontrivial_phase = 0;
    for (std::int64_t m = 0; m < n; ++m) {
        for (std::int64_t k = 0; k < n; ++k) {
            const FactorizedComparison cmp = compare_factorized(fs, m, k);
            worst = std::max(worst, cmp.hs_distance);
            nontrivial_phase += cmp.global_phase.exponent() != 0 ? 1 : 0;
        }
    }
    out << "factorized vs direct S1: max HS distance after phase alignment = " << format_double(worst)
        << ", elements with non-unit global phase = " << nontrivial_phase << "\n";
    return (c.pass() && worst < 1e-10) ? exit_ok : exit_verification_failed;
}

// ---------------------------------------------------------------------------
// entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qps: finite-dimensional quantum phase space toolkit"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write an operator as a matrix file");
    gen_cmd->add_option("kind", gen.kind, "U, V, S1, S2, G, fourier or projector")->required();
    gen_cmd->add_option("--n", gen.n, "Dimension N")->required();
    gen_cmd->add_option("--m", gen.m, "First basis label");
    gen_cmd->add_option("--k", gen.k, "Second basis label, or projector index");
    gen_cmd->add_option("--family", gen.family, "Projector flavour: v or u");
    gen_cmd->add_option("--format", gen.format, "json or csv");
    gen_cmd->add_option("--out", gen.out, "Output path (stdout if omitted)");

    VerifyOptions verify;
    std::optional<std::int64_t> verify_n;
    std::optional<std::string> verify_range;
    auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
    verify_cmd->add_option("--suite", verify.suite, "clifford, basis, factor, qosc or all");
    verify_cmd->add_option("--n", verify_n, "Single dimension");
    verify_cmd->add_option("--range", verify_range, "Dimension range lo..hi");

    DecomposeOptions dec;
    auto* dec_cmd = app.add_subcommand("decompose", "Expand a matrix file in an operator basis");
    dec_cmd->add_option("input", dec.input, "Input matrix JSON")->required();
    dec_cmd->add_option("--family", dec.family, "s1, s2, tmod or g");
    dec_cmd->add_option("--format", dec.format, "json or csv");
    dec_cmd->add_option("--out", dec.out, "Output path (stdout if omitted)");

    WignerOptions wig;
    auto* wig_cmd = app.add_subcommand("wigner", "Discrete phase-space table of a matrix file");
    wig_cmd->add_option("input", wig.input, "Input matrix JSON")->required();
    wig_cmd->add_option("--format", wig.format, "json or csv");
    wig_cmd->add_option("--out", wig.out, "Output path (stdout if omitted)");

    QoscOptions qo;
    auto* qosc_cmd = app.add_subcommand("qosc", "Build the q-oscillator and check its commutation relation");
    qosc_cmd->add_option("--n", qo.n, "Odd dimension N >= 3")->required();
    qosc_cmd->add_option("--out", qo.out, "Write a and a_dagger to this path");

    std::int64_t factor_n = 0;
    auto* factor_cmd = app.add_subcommand("factor", "CRT factorization of the S1 basis (square-free N)");
    factor_cmd->add_option("--n", factor_n, "Dimension N")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, out);
        }
        if (verify_cmd->parsed()) {
            if (verify_n.has_value() == verify_range.has_value()) {
                throw usage_error("verify needs exactly one of --n or --range");
            }
            std::tie(verify.n_lo, verify.n_hi) =
                verify_n ? std::pair{*verify_n, *verify_n} : parse_range(*verify_range);
            verify.tolerance = tolerance_from_env();
            return cmd_verify(verify, out);
        }
        if (dec_cmd->parsed()) {
            return cmd_decompose(dec, out);
        }
        if (wig_cmd->parsed()) {
            return cmd_wigner(wig, out);
        }
        if (qosc_cmd->parsed()) {
            return cmd_qosc(qo, out);
        }
        if (factor_cmd->parsed()) {
            return cmd_factor(factor_n, out);
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const io_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const malformed_input& e) {
        err << "malformed input: " << e.what() << "\n";
        return exit_malformed;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace qps::cli

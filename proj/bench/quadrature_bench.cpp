// Compares the serial and OpenMP refinement paths of the adaptive engine on
// non-separable integrands. The two paths must agree bit for bit — batched
// refinement fixes the evaluation schedule and the final reduction order —
// so this doubles as a determinism check while measuring the speedup.

#include <chrono>
#include <cstdio>

#include "plurinorm/integrator.hpp"

using namespace plurinorm;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct BenchCase {
    const char* name;
    LocalIntegrand ig;
    double t;
};

int run_case(const BenchCase& bc, const QuadratureConfig& base) {
    QuadratureConfig serial = base;
    serial.parallel = false;
    QuadratureConfig parallel = base;
    parallel.parallel = true;

    double t0 = now_ms();
    PsiResult rs = psi(bc.ig, bc.t, serial);
    double t1 = now_ms();
    PsiResult rp = psi(bc.ig, bc.t, parallel);
    double t2 = now_ms();

    bool same = (rs.value == rp.value) && (rs.err_est == rp.err_est) &&
                (rs.converged == rp.converged);
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   bitwise %s\n",
                bc.name, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1 > 0.0 ? t2 - t1 : 1e-9),
                same ? "equal" : "DIFFERENT");
    if (!same) {
        std::printf("  serial   value=%.17g err=%.17g\n", rs.value, rs.err_est);
        std::printf("  parallel value=%.17g err=%.17g\n", rp.value, rp.err_est);
    }
    return same ? 0 : 1;
}

}  // namespace

int main() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;
    cfg.radial_nodes = 8;
    cfg.angular_nodes = 6;

    Polynomial phi_sum(2, {PolyTerm{{1, 0}, cplx(1.0, 0.0)}, PolyTerm{{0, 1}, cplx(1.0, 0.0)}});
    Polynomial phi_mix(2, {PolyTerm{{2, 0}, cplx(1.0, 0.0)}, PolyTerm{{1, 1}, cplx(0.0, 1.0)}});

    BenchCase cases[] = {
        {"psi n=2 phi=z1+z2", LocalIntegrand(MultiIndexPair({2, 3}, {0, 1}), 3, phi_sum,
                                             Weight::one(2)), 0.3},
        {"psi n=2 radial chi", LocalIntegrand(MultiIndexPair({1, 2}, {0, 0}), 4, phi_mix,
                                              Weight::radial_poly(2, {{{0, 0}, 1.0},
                                                                      {{2, 2}, -0.5}})),
         0.2},
    };

    int rc = 0;
    for (const BenchCase& bc : cases) rc |= run_case(bc, cfg);
    return rc;
}

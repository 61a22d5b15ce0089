#include "plurinorm/quadrature.hpp"

#include <cmath>

namespace plurinorm {

// Gauss-Legendre nodes via Newton iteration on P_q, started from the
// Chebyshev-like approximation of the roots. Standard three-term
// recurrence gives P_q and its derivative.
GLRule gl_rule(int q) {
    if (q < 1 || q > 64) throw std::invalid_argument("Gauss-Legendre order out of range");
    GLRule r;
    r.x.resize(q);
    r.w.resize(q);
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (q == 1) p1 = x;  // P_1
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pq = (q == 1) ? x : p1;
            double pq1 = (q == 1) ? 1.0 : p0;  // P_{q-1}
            dp = q * (x * pq - pq1) / (x * x - 1.0);
            double dx = pq / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[q - 1 - i] = x;  // ascending order
        r.w[q - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace plurinorm

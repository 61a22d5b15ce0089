#include "plurinorm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace plurinorm {

namespace {

const double kInvE = std::exp(-1.0);

// Canonical description of an integrand plus sweep parameters; used to
// evaluate duplicated charts only once.
std::string sweep_key(const LocalIntegrand& ig, double t0, double ratio, int count) {
    std::ostringstream os;
    os.precision(17);
    os << "m=" << ig.m << ";A=";
    for (int a : ig.pair.A) os << a << ",";
    os << ";B=";
    for (int b : ig.pair.B) os << b << ",";
    os << ";phi=" << ig.phi.str() << ";chi=" << ig.chi.describe() << ";t0=" << t0
       << ";r=" << ratio << ";k=" << count;
    return os.str();
}

}  // namespace

CaseClassification classify_case(const MultiIndexPair& pair, int m) {
    if (m <= 2) throw std::invalid_argument("case classification requires m > 2");
    CharIndex ci = local_char_index(pair);
    if (ci.l.is_infinite())
        throw std::invalid_argument("case classification undefined: l is infinite (A = 0)");
    Rational expo = Rational(2) * ci.l.value() + Rational(2, m);
    CaseTag tag = (expo >= Rational(1)) ? CaseTag::Case1 : CaseTag::Case2;
    return CaseClassification{tag, expo};
}

void PsiSamples::validate() const {
    size_t k = t_values.size();
    if (delta_values.size() != k || err_ests.size() != k || budget_ok.size() != k)
        throw std::invalid_argument("sample vectors have mismatched lengths");
    for (size_t i = 0; i < k; ++i) {
        if (!(t_values[i] > 0.0 && t_values[i] < kInvE))
            throw std::invalid_argument("sample t outside (0, 1/e)");
        if (i > 0 && !(t_values[i] < t_values[i - 1]))
            throw std::invalid_argument("sample t values must strictly decrease");
    }
}

PsiSamples sample_psi(const LocalIntegrand& ig, double t0, double ratio, int count,
                      const QuadratureConfig& cfg) {
    if (!(t0 > 0.0 && t0 < kInvE)) throw std::invalid_argument("t0 must lie in (0, 1/e)");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
    if (count < 4) throw std::invalid_argument("need at least 4 sweep samples");
    PsiSamples s;
    double t = t0;
    for (int k = 0; k < count; ++k) {
        PsiResult d = psi_delta(ig, cplx(t, 0.0), cfg);
        s.t_values.push_back(t);
        s.delta_values.push_back(d.value);
        s.err_ests.push_back(d.err_est);
        s.budget_ok.push_back(d.converged ? 1 : 0);
        t *= ratio;
    }
    s.validate();
    return s;
}

AsymptoticFitResult fit_expansion(const PsiSamples& samples, const std::vector<int>& p_grid) {
    samples.validate();
    if (p_grid.empty()) throw std::invalid_argument("empty p grid");
    for (int p : p_grid)
        if (p < 0) throw std::invalid_argument("log powers must be nonnegative");

    // Window: drop samples whose delta is inside 10× the quadrature noise.
    std::vector<int> used;
    for (int i = 0; i < samples.count(); ++i) {
        double d = samples.delta_values[i];
        if (d != 0.0 && std::abs(d) > 10.0 * samples.err_ests[i]) used.push_back(i);
    }
    if (static_cast<int>(used.size()) < 4)
        throw AsymptoticFitError("insufficient signal: fewer than 4 samples clear the noise window");
    bool pos = samples.delta_values[used[0]] > 0.0;
    for (int i : used)
        if ((samples.delta_values[i] > 0.0) != pos)
            throw AsymptoticFitError("mixed-sign deltas: no single-branch power law to fit");

    AsymptoticFitResult best;
    bool have = false;
    for (int p : p_grid) {
        // Least squares y = b + α x with y = log|δ| − p·log ln(1/t), x = log t.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double N = static_cast<double>(used.size());
        for (int i : used) {
            double x = std::log(samples.t_values[i]);
            double L = std::log(1.0 / samples.t_values[i]);
            double y = std::log(std::abs(samples.delta_values[i])) - p * std::log(L);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double det = N * sxx - sx * sx;
        if (det == 0.0) throw AsymptoticFitError("degenerate sample grid");
        double alpha = (N * sxy - sx * sy) / det;
        double b = (sy * sxx - sx * sxy) / det;
        double rss = 0;
        for (int i : used) {
            double x = std::log(samples.t_values[i]);
            double L = std::log(1.0 / samples.t_values[i]);
            double y = std::log(std::abs(samples.delta_values[i])) - p * std::log(L);
            double r = y - b - alpha * x;
            rss += r * r;
        }
        double rms = std::sqrt(rss / N);
        if (!have || rms < best.residual_rms) {
            have = true;
            best.c_hat = std::exp(b);
            best.alpha_hat = alpha;
            best.p_hat = p;
            best.residual_rms = rms;
        }
    }
    best.case_tag = best.alpha_hat < 1.0 ? CaseTag::Case2 : CaseTag::Case1;
    best.window_lo = used.front();
    best.window_hi = used.back() + 1;
    return best;
}

bool coefficient_vanishes(const Polynomial& phi, int mu) {
    if (mu < 1 || mu > phi.n())
        throw std::invalid_argument("mu must lie in [1, n] for the vanishing test");
    return phi.vanishes_on_first(mu);
}

GlobalExpansion global_expansion(const std::vector<ChartSweep>& cover, double t0, double ratio,
                                 int count, const QuadratureConfig& cfg) {
    if (cover.empty()) throw std::invalid_argument("cover must contain at least one chart");
    const int m = cover[0].integrand.m;
    const int n = cover[0].integrand.n();
    for (const auto& ch : cover) {
        if (ch.integrand.m != m) throw std::invalid_argument("charts must share m");
        if (ch.integrand.n() != n) throw std::invalid_argument("charts must share the dimension");
    }

    GlobalExpansion out;
    out.index = CharIndex(ExtRational::infinity(), 0);
    std::map<std::string, PsiSamples> cache;
    for (const auto& ch : cover) {
        ChartContribution c;
        c.id = ch.id;
        c.index = local_char_index(ch.integrand.pair);
        if (compare_char_index(c.index, out.index) == std::strong_ordering::greater)
            out.index = c.index;
        std::string key = sweep_key(ch.integrand, t0, ratio, count);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, sample_psi(ch.integrand, t0, ratio, count, cfg)).first;
        c.samples = it->second;
        out.charts.push_back(std::move(c));
    }
    if (out.index.l.is_infinite())
        throw AsymptoticFitError("no chart meets the divisor: global l is infinite");

    out.samples.t_values = out.charts[0].samples.t_values;
    out.samples.delta_values.assign(count, 0.0);
    out.samples.err_ests.assign(count, 0.0);
    out.samples.budget_ok.assign(count, 1);
    for (const auto& c : out.charts)
        for (int k = 0; k < count; ++k) {
            out.samples.delta_values[k] += c.samples.delta_values[k];
            out.samples.err_ests[k] += c.samples.err_ests[k];
            if (!c.samples.budget_ok[k]) out.samples.budget_ok[k] = 0;
        }

    std::vector<int> p_grid;
    for (int p = 0; p < n; ++p) p_grid.push_back(p);
    out.fit = fit_expansion(out.samples, p_grid);
    for (auto& c : out.charts) {
        c.maximal = compare_char_index(c.index, out.index) == std::strong_ordering::equal;
        try {
            c.fit = fit_expansion(c.samples, p_grid);
            c.fit_ok = true;
        } catch (const AsymptoticFitError& e) {
            c.fit_ok = false;
            c.fit_error = e.what();
        }
    }
    return out;
}

}  // namespace plurinorm

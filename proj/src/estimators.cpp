#include "gpam/estimators.hpp"

#include <algorithm>
#include <limits>

#include "gpam/combinatorics.hpp"

#include <omp.h>

namespace gpam {

std::vector<std::vector<double>> sample_table(int nsamples, int jobs, int width,
                                              const std::function<std::vector<double>(int, std::uint64_t)>& fn,
                                              std::uint64_t seed) {
    std::vector<std::vector<double>> out(nsamples);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < nsamples; ++i) out[i] = fn(i, hash64(seed, i));
    for (const auto& row : out)
        if (static_cast<int>(row.size()) != width)
            throw std::logic_error("sample_table: row width mismatch");
    return out;
}

McResult mean_se(const std::vector<double>& values) {
    McResult r;
    r.samples = static_cast<int>(values.size());
    if (values.empty()) return r;
    double s = 0.0;
    for (double x : values) s += x;
    r.mean = s / r.samples;
    if (r.samples > 1) {
        double q = 0.0;
        for (double x : values) q += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(q / (r.samples - 1) / r.samples);
    }
    return r;
}

namespace {

std::vector<double> column(const std::vector<std::vector<double>>& table, int j) {
    std::vector<double> col(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) col[i] = table[i][j];
    return col;
}

} // namespace

McResult mc_direct(const Functional& F, const SolveContext& ctx, double eps, const McOptions& opt) {
    if (eps <= 0.0) throw std::invalid_argument("mc_direct: eps must be > 0");
    const CMFunction zero(ctx.grid);
    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        const Trajectory u = solve_shifted(ctx, zero, eps, xi);
        if (u.exploded) return {0.0, 1.0};
        return {std::exp(-F.evaluate(u) / (eps * eps)), 0.0};
    };
    const auto table = sample_table(opt.samples, opt.jobs, 2, one_sample, opt.seed);
    McResult r = mean_se(column(table, 0));
    for (const auto& row : table) r.exploded += static_cast<int>(row[1]);
    return r;
}

ShiftedResult mc_shifted(const Functional& F, const SolveContext& ctx, const CMFunction& h_star,
                         double eps, double rho, const McOptions& opt) {
    if (eps <= 0.0) throw std::invalid_argument("mc_shifted: eps must be > 0");
    const Trajectory w = solve_skeleton(ctx, h_star);
    const double Fw = F.evaluate(w);
    const double hn = h_norm(h_star);
    const double objective = Fw + 0.5 * hn * hn;
    const bool use_indicator = std::isfinite(rho);

    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        if (use_indicator) {
            const ModelNormEstimate nrm = model_norm_approx(xi, ctx.mollifier, ctx.c_delta);
            if (eps * nrm.combined >= rho) return {0.0, 0.0, 1.0};
        }
        const Trajectory u = solve_shifted(ctx, h_star, eps, xi);
        if (u.exploded) return {0.0, 1.0, 0.0};
        const double f_tilde = F.evaluate(u) - Fw + eps * pair(xi, h_star);
        return {std::exp(-f_tilde / (eps * eps)), 0.0, 0.0};
    };
    const auto table = sample_table(opt.samples, opt.jobs, 3, one_sample, opt.seed);
    const McResult factor = mean_se(column(table, 0));

    ShiftedResult r;
    r.e_factor = factor.mean;
    r.e_factor_se = factor.se;
    r.objective = objective;
    const double pre = std::exp(-objective / (eps * eps));
    r.J = pre * factor.mean;
    r.J_se = pre * factor.se;
    r.samples = opt.samples;
    for (const auto& row : table) {
        r.exploded += static_cast<int>(row[1]);
        r.outside_indicator += static_cast<int>(row[2]);
    }
    return r;
}

CoeffResult mc_coeff(const Functional& F, const SolveContext& ctx, const CMFunction& h_star, int N,
                     const McOptions& opt) {
    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        const TaylorHierarchy hier = taylor_hierarchy(ctx, h_star, xi, N + 2);
        const FunctionalJet jet = functional_jet(F, hier, N + 2);
        const std::vector<double> w =
            weights_W(std::span<const double>(jet.fhat).subspan(2), N);
        const double damp = std::exp(-0.5 * jet.qhat());
        std::vector<double> row(N + 1);
        for (int m = 0; m <= N; ++m) row[m] = damp * w[m];
        return row;
    };
    const auto table = sample_table(opt.samples, opt.jobs, N + 1, one_sample, opt.seed);
    CoeffResult r;
    r.samples = opt.samples;
    r.a.resize(N + 1);
    r.a_se.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
        const McResult mr = mean_se(column(table, m));
        r.a[m] = mr.mean;
        r.a_se[m] = mr.se;
    }
    return r;
}

namespace {

// e^{objective/eps^2} J_direct as per-sample values exp((objective - F)/eps^2)
std::vector<double> rescaled_direct_values(const Functional& F, const SolveContext& ctx,
                                           double eps, double objective, const McOptions& opt) {
    const CMFunction zero(ctx.grid);
    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        const Trajectory u = solve_shifted(ctx, zero, eps, xi);
        if (u.exploded) return {0.0};
        return {std::exp((objective - F.evaluate(u)) / (eps * eps))};
    };
    const auto table = sample_table(opt.samples, opt.jobs, 1, one_sample, opt.seed);
    std::vector<double> vals(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) vals[i] = table[i][0];
    return vals;
}

} // namespace

ExpansionReport expansion_compare(const Functional& F, const SolveContext& ctx,
                                  const CMFunction& h_star, const std::vector<double>& eps_list,
                                  int N, const McOptions& opt) {
    ExpansionReport rep;
    rep.samples = opt.samples;
    rep.seed = opt.seed;

    const Trajectory w = solve_skeleton(ctx, h_star);
    const double hn = h_norm(h_star);
    rep.objective = F.evaluate(w) + 0.5 * hn * hn;

    const CoeffResult coeff = mc_coeff(F, ctx, h_star, N, opt);
    rep.a = coeff.a;
    rep.a_se = coeff.a_se;

    for (double eps : eps_list) {
        EpsRow row;
        row.eps = eps;
        const McResult direct = mc_direct(F, ctx, eps, opt);
        row.J_direct = direct.mean;
        row.se_direct = direct.se;
        row.exploded = direct.exploded;
        const ShiftedResult sh = mc_shifted(F, ctx, h_star, eps,
                                            std::numeric_limits<double>::infinity(), opt);
        row.J_shifted = sh.J;
        row.se_shifted = sh.J_se;

        double series = 0.0, series_var = 0.0, epspow = 1.0;
        for (int m = 0; m <= N; ++m) {
            series += rep.a[m] * epspow;
            series_var += (rep.a_se[m] * epspow) * (rep.a_se[m] * epspow);
            epspow *= eps;
        }
        row.expansion = std::exp(-rep.objective / (eps * eps)) * series;

        const McResult res = mean_se(rescaled_direct_values(F, ctx, eps, rep.objective, opt));
        row.gap = std::abs(res.mean - series);
        row.gap_se = std::sqrt(res.se * res.se + series_var);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<VaradhanRow> varadhan_check(const Functional& F, const SolveContext& ctx,
                                        const CMFunction& h_star,
                                        const std::vector<double>& eps_list, const McOptions& opt) {
    const Trajectory w = solve_skeleton(ctx, h_star);
    const double hn = h_norm(h_star);
    const double objective = F.evaluate(w) + 0.5 * hn * hn;

    std::vector<VaradhanRow> rows;
    for (double eps : eps_list) {
        const McResult res = mean_se(rescaled_direct_values(F, ctx, eps, objective, opt));
        // eps^2 log J + objective = eps^2 log(e^{objective/eps^2} J)
        rows.push_back({eps, eps * eps * std::log(res.mean)});
    }
    return rows;
}

TailDiagnostic fernique_tail(const SolveContext& ctx, const McOptions& opt,
                             const ModelNormOptions& norm_opt) {
    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        const ModelNormEstimate est = model_norm_approx(xi, ctx.mollifier, ctx.c_delta, norm_opt);
        return {est.combined};
    };
    const auto table = sample_table(opt.samples, opt.jobs, 1, one_sample, opt.seed);
    std::vector<double> norms(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) norms[i] = table[i][0];
    std::sort(norms.begin(), norms.end());

    TailDiagnostic diag;
    const int n = static_cast<int>(norms.size());
    if (n < 8) throw std::invalid_argument("fernique_tail: need at least 8 samples");
    // survival curve over the upper half, dropping the last few points where
    // the empirical tail is too noisy to regress on
    const int lo_idx = n / 2;
    const int hi_idx = std::max(lo_idx + 1, n - 1 - std::clamp(n / 10, 2, 10));
    const double r_lo = norms[lo_idx];
    const double r_hi = norms[hi_idx];
    const int npts = 24;
    for (int j = 0; j < npts; ++j) {
        const double r = r_lo + (r_hi - r_lo) * j / (npts - 1);
        const auto it = std::upper_bound(norms.begin(), norms.end(), r);
        const int count = static_cast<int>(norms.end() - it);
        if (count <= 0) break;
        diag.radii.push_back(r);
        diag.log_survival.push_back(std::log(static_cast<double>(count) / n));
    }
    // OLS of -log P(X > r) against r^2
    const int m = static_cast<int>(diag.radii.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < m; ++j) {
        const double x = diag.radii[j] * diag.radii[j];
        const double y = -diag.log_survival[j];
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    diag.gaussian_coeff = (m * sxy - sx * sy) / denom;
    double rss = 0.0;
    for (int j = 0; j < m; ++j) {
        const double x = diag.radii[j] * diag.radii[j];
        const double y = -diag.log_survival[j];
        const double yhat = diag.gaussian_coeff * x + (sy - diag.gaussian_coeff * sx) / m;
        rss += (y - yhat) * (y - yhat);
    }
    diag.gaussian_coeff_se = std::sqrt(rss / (m - 2) * m / denom);

    // exp-moment at a small chi, kept well inside the fitted Gaussian budget
    diag.chi_probe = 0.25 * diag.gaussian_coeff;
    std::vector<double> moments(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i)
        moments[i] = std::exp(diag.chi_probe * norms[i] * norms[i]);
    diag.exp_moment = mean_se(moments);
    return diag;
}

QIntegrability q_integrability(const Functional& F, const SolveContext& ctx,
                               const CMFunction& h_star, double p, const McOptions& opt) {
    auto one_sample = [&](int, std::uint64_t s) -> std::vector<double> {
        const NoiseRealization xi = sample_white_noise(ctx.grid, s);
        const TaylorHierarchy hier = taylor_hierarchy(ctx, h_star, xi, 2);
        const double q = fhat(2, F, hier);
        return {std::exp(-0.5 * p * q)};
    };
    const auto table = sample_table(opt.samples, opt.jobs, 1, one_sample, opt.seed);
    std::vector<double> all(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) all[i] = table[i][0];
    const std::vector<double> half(all.begin(), all.begin() + all.size() / 2);

    QIntegrability r;
    r.p = p;
    r.half = mean_se(half);
    r.full = mean_se(all);
    const double band = 3.0 * std::sqrt(r.half.se * r.half.se + r.full.se * r.full.se);
    r.stable = std::abs(r.full.mean - r.half.mean) <= band;
    return r;
}

} // namespace gpam

#include "cutlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "cutlab/errors.hpp"

namespace cutlab {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double population_sd(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    if (sorted.size() == 1) return sorted[0];
    q = std::clamp(q, 0.0, 1.0);
    double pos = q * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson size mismatch");
    if (x.size() < 2) return 0.0;
    double mx = mean_of(x), my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double wasserstein_1d(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("transport distance of empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() == b.size()) {
        double total = 0.0;
        for (size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
        return total / static_cast<double>(a.size());
    }
    // Unequal sizes: compare order statistics on a common quantile grid.
    const size_t n = std::max(a.size(), b.size());
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double q = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        total += std::abs(quantile_sorted(a, q) - quantile_sorted(b, q));
    }
    return total / static_cast<double>(n);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks of empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<double> grid;
    grid.reserve(a.size() + b.size());
    grid.insert(grid.end(), a.begin(), a.end());
    grid.insert(grid.end(), b.begin(), b.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double best = 0.0;
    for (double g : grid) {
        double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), g) - a.begin()) /
                    static_cast<double>(a.size());
        double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), g) - b.begin()) /
                    static_cast<double>(b.size());
        best = std::max(best, std::abs(fa - fb));
    }
    return best;
}

namespace {

struct Joint {
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    size_t n = 0;
};

Joint tally(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("paired series size mismatch");
    if (a.empty()) throw std::invalid_argument("empty series");
    Joint j;
    j.n = a.size();
    double w = 1.0 / static_cast<double>(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        j.pa[a[i]] += w;
        j.pb[b[i]] += w;
        j.pab[{a[i], b[i]}] += w;
    }
    return j;
}

}  // namespace

double mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
    Joint j = tally(a, b);
    double mi = 0.0;
    for (const auto& [key, p] : j.pab) {
        double px = j.pa[key.first], py = j.pb[key.second];
        if (p > 0.0) mi += p * std::log(p / (px * py));
    }
    return std::max(mi, 0.0);
}

double chi_square_independence(const std::vector<int>& a, const std::vector<int>& b) {
    Joint j = tally(a, b);
    double n = static_cast<double>(j.n);
    double stat = 0.0;
    for (const auto& [va, pa] : j.pa) {
        for (const auto& [vb, pb] : j.pb) {
            double expected = pa * pb * n;
            auto it = j.pab.find({va, vb});
            double observed = it == j.pab.end() ? 0.0 : it->second * n;
            if (expected > 0.0) stat += (observed - expected) * (observed - expected) / expected;
        }
    }
    return stat;
}

PcaResult pca(const std::vector<std::vector<double>>& X) {
    if (X.empty()) throw degenerate_pca_error("no rows");
    const size_t n = X.size();
    const size_t d = X[0].size();
    if (d == 0) throw degenerate_pca_error("no columns");
    for (const auto& row : X)
        if (row.size() != d) throw std::invalid_argument("ragged matrix");

    PcaResult res;
    res.mean.assign(d, 0.0);
    for (const auto& row : X)
        for (size_t c = 0; c < d; ++c) res.mean[c] += row[c];
    for (auto& m : res.mean) m /= static_cast<double>(n);

    // Covariance (population normalization).
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (const auto& row : X)
        for (size_t i = 0; i < d; ++i)
            for (size_t k = i; k < d; ++k)
                cov[i][k] += (row[i] - res.mean[i]) * (row[k] - res.mean[k]);
    double trace = 0.0;
    for (size_t i = 0; i < d; ++i) {
        for (size_t k = i; k < d; ++k) {
            cov[i][k] /= static_cast<double>(n);
            cov[k][i] = cov[i][k];
        }
        trace += cov[i][i];
    }
    if (trace <= 0.0) throw degenerate_pca_error("total variance is zero");

    // Cyclic Jacobi rotations.
    std::vector<std::vector<double>> v(d, std::vector<double>(d, 0.0));
    for (size_t i = 0; i < d; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (size_t p = 0; p < d; ++p)
            for (size_t q = p + 1; q < d; ++q) off += cov[p][q] * cov[p][q];
        if (off < 1e-24 * trace * trace) break;
        for (size_t p = 0; p < d; ++p) {
            for (size_t q = p + 1; q < d; ++q) {
                if (std::abs(cov[p][q]) < 1e-300) continue;
                double theta = (cov[q][q] - cov[p][p]) / (2.0 * cov[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t k = 0; k < d; ++k) {
                    double akp = cov[k][p], akq = cov[k][q];
                    cov[k][p] = c * akp - s * akq;
                    cov[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < d; ++k) {
                    double apk = cov[p][k], aqk = cov[q][k];
                    cov[p][k] = c * apk - s * aqk;
                    cov[q][k] = s * apk + c * aqk;
                }
                for (size_t k = 0; k < d; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<size_t> order(d);
    for (size_t i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return cov[a][a] > cov[b][b]; });

    res.components.resize(d);
    res.eigenvalues.resize(d);
    res.explained_ratio.resize(d);
    for (size_t r = 0; r < d; ++r) {
        size_t c = order[r];
        res.eigenvalues[r] = std::max(cov[c][c], 0.0);
        res.explained_ratio[r] = res.eigenvalues[r] / trace;
        std::vector<double> axis(d);
        for (size_t k = 0; k < d; ++k) axis[k] = v[k][c];
        size_t arg = 0;
        for (size_t k = 1; k < d; ++k)
            if (std::abs(axis[k]) > std::abs(axis[arg])) arg = k;
        if (axis[arg] < 0)
            for (auto& x : axis) x = -x;
        res.components[r] = std::move(axis);
    }
    return res;
}

}  // namespace cutlab

#pragma once

#include <vector>

namespace cutlab {

double mean_of(const std::vector<double>& v);
double population_sd(const std::vector<double>& v);

// Linear-interpolation quantile of an ascending vector, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

// Pearson correlation; 0 when either side has no variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// First-order transport distance between two samples via the ECDF-gap
// integral, so unequal sizes are handled exactly.
double wasserstein_1d(std::vector<double> a, std::vector<double> b);

// Largest ECDF separation between two samples.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Plug-in mutual information (nats) between two discrete series.
double mutual_information(const std::vector<int>& a, const std::vector<int>& b);

// Chi-square independence statistic over the joint contingency table.
double chi_square_independence(const std::vector<int>& a, const std::vector<int>& b);

struct PcaResult {
    std::vector<double> mean;                     // per input column
    std::vector<std::vector<double>> components;  // row k = k-th axis, unit norm
    std::vector<double> eigenvalues;              // descending
    std::vector<double> explained_ratio;          // eigenvalue / total variance
};

// Covariance PCA via cyclic Jacobi sweeps. Each axis is flipped so its
// largest-magnitude loading is positive. Zero total variance raises
// degenerate_pca_error.
PcaResult pca(const std::vector<std::vector<double>>& X);

}  // namespace cutlab

#pragma once

#include <cstddef>
#include <vector>

#include "evstudy/timeseries.hpp"

namespace evstudy {

/// OLS fit of r_stock = alpha + beta * r_market over an estimation window.
/// Residuals are the estimation-window additive abnormal returns; they sum
/// to zero by construction. residual_std uses the n-2 denominator.
struct AdditiveFit {
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    std::vector<double> residuals;
    double residual_std = 0.0;
    std::size_t n_obs = 0;
};

/// Power-law fit (1 + r_stock) = alpha * (1 + r_market)^beta, estimated by
/// OLS in log space. alpha_hat is the bias-corrected level-space estimate
///   alpha_hat = sum(1 + r_stock) / sum((1 + r_market)^beta_hat)
/// rather than exp(ln_alpha_hat). Residuals are the estimation-window
/// multiplicative abnormal returns.
struct MultiplicativeFit {
    double ln_alpha_hat = 0.0;
    double beta_hat = 0.0;
    double alpha_hat = 1.0;
    std::vector<double> residuals;
    std::size_t n_obs = 0;
};

AdditiveFit fit_additive(const AlignedReturns& window);
MultiplicativeFit fit_multiplicative(const AlignedReturns& window);

/// alpha + beta * market_return
double predict_additive(const AdditiveFit& fit, double market_return);

/// alpha * (1 + market_return)^beta, a gross return
double predict_multiplicative(const MultiplicativeFit& fit, double market_return);

}  // namespace evstudy

#include "evstudy/market_model.hpp"

#include <cmath>
#include <stdexcept>

namespace evstudy {

namespace {

struct OlsResult {
    double intercept;
    double slope;
};

// closed-form simple regression in covariance/variance form
OlsResult simple_ols(const std::vector<double>& x, const std::vector<double>& y,
                     const char* regressor_name) {
    const std::size_t n = x.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (y[i] - mean_y);
    }
    if (sxx == 0.0)
        throw std::runtime_error(std::string("degenerate regressor: ") + regressor_name +
                                 " has zero variance");

    const double slope = sxy / sxx;
    return {mean_y - slope * mean_x, slope};
}

void require_min_rows(const AlignedReturns& window) {
    if (window.size() < 3)
        throw std::invalid_argument("estimation window needs at least 3 rows, has " +
                                    std::to_string(window.size()));
}

}  // namespace

AdditiveFit fit_additive(const AlignedReturns& window) {
    require_min_rows(window);
    const std::size_t n = window.size();

    std::vector<double> market(n), stock(n);
    for (std::size_t i = 0; i < n; ++i) {
        market[i] = window.rows[i].market_return;
        stock[i] = window.rows[i].stock_return;
    }

    const OlsResult ols = simple_ols(market, stock, "market returns");

    AdditiveFit fit;
    fit.alpha_hat = ols.intercept;
    fit.beta_hat = ols.slope;
    fit.n_obs = n;
    fit.residuals.resize(n);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = stock[i] - (fit.alpha_hat + fit.beta_hat * market[i]);
        fit.residuals[i] = e;
        sse += e * e;
    }
    fit.residual_std = std::sqrt(sse / static_cast<double>(n - 2));
    return fit;
}

MultiplicativeFit fit_multiplicative(const AlignedReturns& window) {
    require_min_rows(window);
    const std::size_t n = window.size();

    std::vector<double> log_market(n), log_stock(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gross_market = 1.0 + window.rows[i].market_return;
        const double gross_stock = 1.0 + window.rows[i].stock_return;
        if (gross_market <= 0.0 || gross_stock <= 0.0)
            throw std::runtime_error("gross return <= 0 at " + window.rows[i].date.to_string());
        log_market[i] = std::log(gross_market);
        log_stock[i] = std::log(gross_stock);
    }

    const OlsResult ols = simple_ols(log_market, log_stock, "log gross market returns");

    MultiplicativeFit fit;
    fit.ln_alpha_hat = ols.intercept;
    fit.beta_hat = ols.slope;
    fit.n_obs = n;

    // level-space alpha: sum of gross stock returns over sum of powered
    // gross market returns (exp(ln_alpha_hat) would be biased)
    double sum_gross_stock = 0.0, sum_powered_market = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_gross_stock += 1.0 + window.rows[i].stock_return;
        sum_powered_market += std::pow(1.0 + window.rows[i].market_return, fit.beta_hat);
    }
    fit.alpha_hat = sum_gross_stock / sum_powered_market;

    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double predicted = fit.alpha_hat * std::pow(1.0 + window.rows[i].market_return,
                                                          fit.beta_hat);
        fit.residuals[i] = (1.0 + window.rows[i].stock_return) / predicted - 1.0;
    }
    return fit;
}

double predict_additive(const AdditiveFit& fit, double market_return) {
    return fit.alpha_hat + fit.beta_hat * market_return;
}

double predict_multiplicative(const MultiplicativeFit& fit, double market_return) {
    if (market_return <= -1.0)
        throw std::runtime_error("market return <= -1 outside multiplicative model domain");
    return fit.alpha_hat * std::pow(1.0 + market_return, fit.beta_hat);
}

}  // namespace evstudy

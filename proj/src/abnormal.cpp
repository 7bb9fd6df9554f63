#include "evstudy/abnormal.hpp"

#include <cmath>
#include <stdexcept>

namespace evstudy {

const char* to_string(ModelKind kind) {
    return kind == ModelKind::Additive ? "additive" : "multiplicative";
}

double aar(const AdditiveFit& fit, double stock_return, double market_return) {
    return stock_return - predict_additive(fit, market_return);
}

double ar_multiplicative(const MultiplicativeFit& fit, double stock_return,
                         double market_return) {
    return (1.0 + stock_return) / predict_multiplicative(fit, market_return) - 1.0;
}

double acar(std::span<const double> abnormals) {
    if (abnormals.empty())
        throw std::invalid_argument("cannot cumulate an empty abnormal-return sequence");
    double sum = 0.0;
    for (double a : abnormals) sum += a;
    return sum;
}

double car(std::span<const double> abnormals) {
    if (abnormals.empty())
        throw std::invalid_argument("cannot cumulate an empty abnormal-return sequence");
    double gross = 1.0;
    for (double a : abnormals) {
        if (a <= -1.0)
            throw std::runtime_error("abnormal return <= -1 outside multiplicative domain");
        gross *= 1.0 + a;
    }
    return gross - 1.0;
}

double mean_acar(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("mean requires at least one event");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double std_acar(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("sample standard deviation requires K >= 2, K-1 = 0");
    const double mean = mean_acar(values);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace evstudy

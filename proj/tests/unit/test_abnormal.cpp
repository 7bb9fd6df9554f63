#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "evstudy/abnormal.hpp"
#include "evstudy/rng.hpp"

using namespace evstudy;

// ============================================================================
// Per-day abnormal returns
// ============================================================================

TEST_CASE("additive abnormal return is actual minus predicted") {
    CHECK(aar(AdditiveFit{.alpha_hat = 0.0, .beta_hat = 1.0}, 0.02, 0.02) ==
          doctest::Approx(0.0));
    CHECK(aar(AdditiveFit{.alpha_hat = 0.001, .beta_hat = 1.2}, 0.02, 0.01) ==
          doctest::Approx(0.007).epsilon(1e-12));
    CHECK(aar(AdditiveFit{.alpha_hat = 0.001, .beta_hat = 1.2}, -0.02, 0.01) ==
          doctest::Approx(-0.033).epsilon(1e-12));
}

TEST_CASE("multiplicative abnormal return is a gross-return ratio") {
    CHECK(ar_multiplicative(MultiplicativeFit{.beta_hat = 1.0, .alpha_hat = 1.0},
                            0.02, 0.02) == doctest::Approx(0.0));
    CHECK(ar_multiplicative(MultiplicativeFit{.beta_hat = 0.0, .alpha_hat = 1.0},
                            0.05, -0.3) == doctest::Approx(0.05));
    CHECK(ar_multiplicative(MultiplicativeFit{.beta_hat = 0.8, .alpha_hat = 1.001},
                            0.01, 0.01) ==
          doctest::Approx(0.000991056609923416).epsilon(1e-12));
}

// ============================================================================
// Cumulation
// ============================================================================

TEST_CASE("offsetting daily abnormals cancel additively but not multiplicatively") {
    const std::vector<double> swing = {0.10, -0.10};
    CHECK(acar(swing) == 0.0);
    CHECK(car(swing) == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(car(swing) < acar(swing));
}

TEST_CASE("cumulation of an all-zero window is zero") {
    const std::vector<double> zeros(7, 0.0);
    CHECK(acar(zeros) == doctest::Approx(0.0));
    CHECK(car(zeros) == doctest::Approx(0.0));
}

TEST_CASE("three-day cumulation example") {
    const std::vector<double> days = {0.01, 0.02, -0.005};
    CHECK(acar(days) == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(car(days) == doctest::Approx(0.025049).epsilon(1e-9));
}

TEST_CASE("cumulating a single day gives the day itself under both rules") {
    const std::vector<double> one = {0.0123};
    CHECK(acar(one) == doctest::Approx(0.0123));
    CHECK(car(one) == doctest::Approx(0.0123));
}

TEST_CASE("cumulation rejects empty and out-of-domain input") {
    const std::vector<double> empty;
    CHECK_THROWS_WITH_AS(acar(empty), doctest::Contains("empty abnormal-return"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(car(empty), doctest::Contains("empty abnormal-return"),
                         std::invalid_argument);
    const std::vector<double> crash = {0.01, -1.0, 0.02};
    CHECK_THROWS_WITH_AS(car(crash),
                         doctest::Contains("outside multiplicative domain"),
                         std::runtime_error);
}

TEST_CASE("multiplicative cumulation is order-invariant and composes") {
    SplitMix64 rng(2718);
    std::vector<double> xs(6), ys(4);
    for (double& x : xs) x = 0.02 * rng.next_gaussian();
    for (double& y : ys) y = 0.02 * rng.next_gaussian();

    std::vector<double> shuffled = xs;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[1], shuffled[4]);
    CHECK(car(shuffled) == doctest::Approx(car(xs)).epsilon(1e-14));

    std::vector<double> joined = xs;
    joined.insert(joined.end(), ys.begin(), ys.end());
    CHECK(1.0 + car(joined) ==
          doctest::Approx((1.0 + car(xs)) * (1.0 + car(ys))).epsilon(1e-14));
    CHECK(acar(joined) == doctest::Approx(acar(xs) + acar(ys)).epsilon(1e-12));
}

TEST_CASE("sum and product cumulation agree to second order in the daily values") {
    // |car - acar| <= exp(S) - 1 - S for S the sum of absolute daily values,
    // since the gap starts at the pairwise cross terms.
    SplitMix64 rng(1618);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> days(5);
        double s = 0.0;
        for (double& d : days) {
            d = 0.03 * rng.next_gaussian();
            s += std::abs(d);
        }
        CHECK(std::abs(car(days) - acar(days)) <= std::exp(s) - 1.0 - s + 1e-15);
    }
}

// ============================================================================
// Cross-sectional moments
// ============================================================================

TEST_CASE("cross-sectional mean and sample standard deviation") {
    const std::vector<double> vals = {1.0, 2.0, 3.0};
    CHECK(mean_acar(vals) == doctest::Approx(2.0));
    CHECK(std_acar(vals) == doctest::Approx(1.0));  // K-1 denominator

    const std::vector<double> flat = {0.4, 0.4, 0.4, 0.4};
    CHECK(mean_acar(flat) == doctest::Approx(0.4));
    CHECK(std_acar(flat) == doctest::Approx(0.0));

    const std::vector<double> pair = {-0.02, 0.02};
    CHECK(mean_acar(pair) == doctest::Approx(0.0));
    CHECK(std_acar(pair) == doctest::Approx(0.02 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("cross-sectional moments reject undersized samples") {
    const std::vector<double> empty;
    const std::vector<double> one = {0.5};
    CHECK_THROWS_WITH_AS(mean_acar(empty), doctest::Contains("at least one event"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(std_acar(one), doctest::Contains("K-1"),
                         std::invalid_argument);
    CHECK_NOTHROW(mean_acar(one));
}

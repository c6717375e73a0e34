#include <doctest.h>

#include <cmath>

#include "dropsim/rng.hpp"

using namespace dropsim;

TEST_CASE("identical (seed, stream) pairs reproduce identical sequences") {
    RngStream a(123, 4), b(123, 4);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream ids give different sequences") {
    RngStream a(123, 0), b(123, 1);
    int same = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64())
            ++same;
    CHECK(same == 0);
}

TEST_CASE("next_unit stays in (0, 1]") {
    RngStream r(9, 9);
    for (int i = 0; i < 100000; ++i) {
        double u = r.next_unit();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("exponential inverse-CDF arithmetic") {
    CHECK(exp_from_unit(0.5, 0.002) == doctest::Approx(0.0013863).epsilon(1e-4));
    CHECK(exp_from_unit(1.0, 0.002) == 0.0);
}

TEST_CASE("exp_sample is strictly positive and hits its mean") {
    RngStream r(2024, 1);
    const double mean = 0.001;
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = exp_sample(r, mean);
        REQUIRE(s > 0.0);
        sum += s;
    }
    CHECK(sum / n == doctest::Approx(mean).epsilon(0.01));
}

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ehsched/channel.hpp"
#include "support.hpp"

using namespace ehsched;
using ehsched::testing::reference_completion;
using ehsched::testing::reference_rate;

TEST_CASE("rate evaluates the SISO and GMAC formulas") {
    CHECK(rate(ChannelModel::siso(), 16.7, 3.83) ==
          doctest::Approx(reference_rate(ChannelKind::siso, 16.7, 3.83)).epsilon(1e-14));
    CHECK(rate(ChannelModel::siso(), 16.7, 3.83) == doctest::Approx(37.96).epsilon(1e-3));
    CHECK(rate(ChannelModel::siso(), 0.0, 5.0) == 0.0);
    CHECK(rate(ChannelModel::gmac(), 2.0, 1.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-14));
    CHECK(rate(ChannelModel::siso(), 3.0, 0.0) == 0.0);
}

TEST_CASE("rate rejects negative arguments") {
    CHECK_THROWS_AS(rate(ChannelModel::siso(), -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rate(ChannelModel::gmac(), 1.0, -1e-9), std::domain_error);
    CHECK_THROWS_AS(completion_time(ChannelModel::siso(), -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bits_capacity_limit(ChannelModel::siso(), -2.0), std::domain_error);
}

TEST_CASE("capacity limit is E log2 e for both models") {
    CHECK(bits_capacity_limit(ChannelModel::siso(), 2.0) == doctest::Approx(2.885).epsilon(1e-3));
    CHECK(bits_capacity_limit(ChannelModel::siso(), 0.0) == 0.0);
    CHECK(bits_capacity_limit(ChannelModel::gmac(), 2.0) ==
          doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-15));
    // the GMAC rate approaches the same asymptote
    const double far = rate(ChannelModel::gmac(), 1e9, 2.0 / 1e9);
    CHECK(far == doctest::Approx(bits_capacity_limit(ChannelModel::gmac(), 2.0)).epsilon(1e-6));
}

TEST_CASE("completion_time reproduces the construction values") {
    CHECK(*completion_time(ChannelModel::siso(), 2.8, 2.0) == doctest::Approx(32.46).epsilon(2e-4));
    CHECK(*completion_time(ChannelModel::siso(), 100.0, 126.0) ==
          doctest::Approx(63.2).epsilon(1e-3));
    CHECK(*completion_time(ChannelModel::gmac(), 2.8, 2.0) ==
          doctest::Approx(64.92).epsilon(2e-4));
    CHECK(*completion_time(ChannelModel::siso(), 0.0, 5.0) == 0.0);
    CHECK_FALSE(completion_time(ChannelModel::siso(), 3.0, 2.0).has_value());
    CHECK_FALSE(completion_time(ChannelModel::siso(), 1.0, 0.0).has_value());
    // exactly at the asymptote is infeasible
    CHECK_FALSE(completion_time(ChannelModel::siso(), 2.0 / std::log(2.0), 2.0).has_value());
}

TEST_CASE("completion_time agrees with an independent bisection") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> e(0.01, 100.0);
    std::uniform_real_distribution<double> load(0.01, 0.99);
    for (int i = 0; i < 500; ++i) {
        const auto kind = i % 2 ? ChannelKind::gmac : ChannelKind::siso;
        const double energy = e(rng);
        const double bits = load(rng) * energy / std::log(2.0);
        const auto got = completion_time(ChannelModel{kind}, bits, energy);
        const auto want = reference_completion(kind, bits, energy);
        REQUIRE(got.has_value());
        REQUIRE(want.has_value());
        CHECK(*got == doctest::Approx(*want).epsilon(1e-8));
    }
}

TEST_CASE("channel properties on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const ChannelModel m{i % 2 ? ChannelKind::gmac : ChannelKind::siso};
        const double d = u(rng);
        const double p1 = u(rng);
        const double p2 = u(rng);

        // GMAC is the SISO rate at half the duration and twice the power.
        CHECK(rate(ChannelModel::gmac(), d, p1) == rate(ChannelModel::siso(), d / 2.0, 2.0 * p1));

        // concave in power
        CHECK(rate(m, d, 0.5 * (p1 + p2)) >= 0.5 * (rate(m, d, p1) + rate(m, d, p2)) - 1e-12);

        // linear in duration
        const double a = u(rng) / 10.0;
        CHECK(rate(m, a * d, p1) == doctest::Approx(a * rate(m, d, p1)).epsilon(1e-12));

        // strictly increasing in power
        CHECK(rate(m, d, std::max(p1, p2) + 1e-3) > rate(m, d, std::min(p1, p2)));

        // T -> rate(T, E/T) strictly increasing
        const double energy = u(rng);
        CHECK(rate(m, d * 1.01, energy / (d * 1.01)) > rate(m, d, energy / d));

        // round trip
        const double t = u(rng);
        const double bits = rate(m, t, energy / t);
        const auto back = completion_time(m, bits, energy);
        REQUIRE(back.has_value());
        CHECK(std::abs(*back - t) <= 1e-6 * t);
        CHECK(std::abs(rate(m, *back, energy / *back) - bits) <= 1e-6 * std::max(1.0, bits));
    }
}

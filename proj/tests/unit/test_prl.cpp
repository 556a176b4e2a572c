#include "dunkel/error.hpp"
#include "dunkel/prl.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace dunkel;
using Catch::Approx;
using fixture::rl;

TEST_CASE("caz runs and energy") {
    const auto e = detect_caz(rl({-5, 10, 20, -3, 4}));
    REQUIRE(e.size() == 2);
    CHECK(e[0].start_index == 1);
    CHECK(e[0].end_index == 2);
    CHECK(e[0].energy_deficit == 30.0);
    CHECK(e[1].start_index == 4);
    CHECK(e[1].energy_deficit == 4.0);
    CHECK(e[1].truncated);
    CHECK(e[0].method == Method::caz);
    CHECK(e[0].threshold == ThresholdRecord::zero_line());
}

TEST_CASE("caz: no positive values, all positive, and zeros") {
    CHECK(detect_caz(rl({-1, 0, -2})).empty());
    const auto e = detect_caz(rl({1, 2, 3}));
    REQUIRE(e.size() == 1);
    CHECK(e[0].duration == 3);
    CHECK(e[0].energy_deficit == 6.0);
    CHECK(detect_caz(rl({0, 0})).empty());
}

TEST_CASE("caz energy uses the step length") {
    const ResidualLoadSeries quarter(TimeSeries(TimePoint{}, std::chrono::minutes(15), {8, 8}));
    CHECK(detect_caz(quarter)[0].energy_deficit == 4.0);
}

TEST_CASE("caz partitions the positive energy and its peaks cover the series maximum") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        const auto x = oracle::residual_mixture(rng, 300);
        const auto e = detect_caz(rl(x));
        double events = 0.0, positive = 0.0;
        for (const auto& ev : e) {
            events += ev.energy_deficit;
        }
        for (double v : x) {
            positive += v > 0.0 ? v : 0.0;
        }
        CHECK(events == Approx(positive).epsilon(1e-12));

        const double series_max = *std::max_element(x.begin(), x.end());
        if (series_max > 0.0) {
            double peak = -INFINITY;
            for (const auto& ev : e) {
                peak = std::max(peak, *std::max_element(x.begin() + static_cast<std::ptrdiff_t>(ev.start_index),
                                                         x.begin() + static_cast<std::ptrdiff_t>(ev.end_index + 1)));
            }
            CHECK(peak == series_max);
        }
    }
}

TEST_CASE("fmaz pools across a short surplus") {
    const auto e = detect_fmaz(rl({10, -2, 10, -2}), 2);
    REQUIRE(e.size() == 1);
    CHECK(e[0].start_index == 1);
    CHECK(e[0].end_index == 3);
    CHECK(e[0].duration == 3);
    CHECK(e[0].energy_deficit == Approx(12.0));
    CHECK(e[0].raw_start_index() == 0);
}

TEST_CASE("fmaz: symmetric alternation cancels") {
    CHECK(detect_fmaz(rl({3, -3, 3, -3, 3, -3}), 2).empty());
}

TEST_CASE("fmaz with intdur 1 equals caz") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 200; ++rep) {
        const auto s = rl(oracle::residual_mixture(rng, 200));
        auto f = detect_fmaz(s, 1);
        for (auto& ev : f) {
            ev.method = Method::caz;
            ev.intdur.reset();
        }
        CHECK(f == detect_caz(s));
    }
}

TEST_CASE("fmaz interval range") {
    CHECK_THROWS_AS(detect_fmaz(rl({1, 2}), 3), ParameterError);
    CHECK_THROWS_AS(detect_fmaz(rl({1, 2}), 0), ParameterError);
}

TEST_CASE("vmaz picks the dominant positive window") {
    const auto e = detect_vmaz(rl({-8, 5, 5, 5, -8, -8}), {6, 1});
    REQUIRE(e.size() == 1);
    CHECK(e[0].start_index == 0);
    CHECK(e[0].end_index == 3);
    CHECK(e[0].intdur == std::optional<std::size_t>(4));
    CHECK(e[0].deficit_informational());
}

TEST_CASE("vmaz accepts the full series when its mean is positive and start is N") {
    const auto e = detect_vmaz(rl({-1, 5, 5, 5, -1, -1}), {6, 1});
    REQUIRE(e.size() == 1);
    CHECK(e[0].start_index == 0);
    CHECK(e[0].end_index == 5);
}

TEST_CASE("vmaz: all negative and a single spike") {
    CHECK(detect_vmaz(rl({-1, -2, -3})).empty());
    const auto e = detect_vmaz(rl({-50, -40, 7, -60, -50}));
    REQUIRE(e.size() == 1);
    CHECK(e[0].start_index == 2);
    CHECK(e[0].duration == 1);
    CHECK(e[0].energy_deficit == 7.0);
}

TEST_CASE("vmaz start condition") {
    CHECK_THROWS_AS(detect_vmaz(rl({5, 5, -1}), {2, 1}), ParameterError);
}

TEST_CASE("vmaz matches the exhaustive oracle") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> len(1, 60);
    for (int rep = 0; rep < 100; ++rep) {
        auto x = oracle::residual_mixture(rng, len(rng));
        std::vector<double> neg(x.size());
        std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
        const auto got = detect_vmaz(rl(x));
        const auto want = oracle::variable_windows(neg, 0.0, x.size(), 1);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].start_index == want[i].first);
            CHECK(got[i].duration == want[i].length);
        }
    }
}

TEST_CASE("surplus adjustment") {
    const auto adj = adjust_residual_load(rl({-10, 10, 0}), StorageEfficiency(0.5));
    CHECK(adj.values()[0] == -5.0);
    CHECK(adj.values()[0] == oracle::storage_offset(10.0, 0.5));
    CHECK(adj.values()[1] == 10.0);
    CHECK(adj.values()[2] == 0.0);
    const auto lit = adjust_residual_load(rl({-10, 10}), StorageEfficiency(0.5), SurplusAdjustment::literal_division);
    CHECK(lit.values()[0] == -20.0);
    CHECK(lit.values()[1] == 10.0);
    const auto same = adjust_residual_load(rl({-10, 3}), StorageEfficiency::lossless());
    CHECK(same.values()[0] == -10.0);
}

TEST_CASE("surplus adjustment agrees with the storage balance") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> eff(0.05, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const auto x = oracle::residual_mixture(rng, 50);
        const double e = eff(rng);
        const auto adj = adjust_residual_load(rl(x), StorageEfficiency(e));
        for (std::size_t t = 0; t < x.size(); ++t) {
            if (x[t] < 0.0) {
                CHECK(adj.values()[t] == Approx(oracle::storage_offset(-x[t], e)).epsilon(1e-15));
            } else {
                CHECK(adj.values()[t] == x[t]);
            }
        }
    }
}

TEST_CASE("storage efficiency range") {
    CHECK_THROWS_AS(StorageEfficiency(0.0), ParameterError);
    CHECK_THROWS_AS(StorageEfficiency(-0.5), ParameterError);
    CHECK_THROWS_AS(StorageEfficiency(1.01), ParameterError);
    CHECK(StorageEfficiency(1.0).is_lossless());
}

TEST_CASE("spa on residual load, lossless") {
    const auto s = rl({10, -5, -5, -5});
    const auto trace = spa_prl_trace(s);
    CHECK(trace == std::vector<double>{10, 5, 0, 0});
    const auto e = detect_spa_prl(s);
    REQUIRE(e.size() == 1);
    CHECK(e[0].method == Method::spa_prl);
    CHECK(e[0].duration == 1);
    CHECK(e[0].energy_deficit == 10.0);
    CHECK(e[0].recovery == std::optional<std::size_t>(2));
    CHECK(e[0].end_index == 1);
    CHECK_FALSE(e[0].truncated);
}

TEST_CASE("spa on residual load with half efficiency prolongs recovery") {
    const auto s = rl({10, -5, -5, -5});
    CHECK(spa_prl_trace(s, StorageEfficiency(0.5)) == std::vector<double>{10, 7.5, 5, 2.5});
    const auto e = detect_spa_prl(s, StorageEfficiency(0.5));
    REQUIRE(e.size() == 1);
    CHECK(e[0].method == Method::spa_adj);
    CHECK(e[0].truncated);
    CHECK_FALSE(e[0].recovery.has_value());
    CHECK(e[0].energy_deficit == 10.0);
}

TEST_CASE("spa on residual load: all negative") {
    CHECK(detect_spa_prl(rl({-1, -1})).empty());
    CHECK(detect_spa_prl(rl({-1, -1}), StorageEfficiency(0.3)).empty());
}

TEST_CASE("spa on residual load matches the oracle and recovery lands on zero") {
    std::mt19937_64 rng(45);
    for (int rep = 0; rep < 200; ++rep) {
        const auto x = oracle::residual_mixture(rng, 300);
        for (double eff : {1.0, 0.7}) {
            std::vector<double> d(x.size());
            for (std::size_t t = 0; t < x.size(); ++t) {
                d[t] = x[t] < 0.0 ? oracle::storage_offset(-x[t], eff) : x[t];
            }
            const auto trace = spa_prl_trace(rl(x), StorageEfficiency(eff));
            CHECK(trace == oracle::clamped_prefix(d));
            const auto got = detect_spa_prl(rl(x), StorageEfficiency(eff));
            const auto want = oracle::spa_events(oracle::clamped_prefix(d));
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].start_index == want[i].start);
                CHECK(got[i].duration == want[i].duration);
                CHECK(got[i].energy_deficit == want[i].peak);
                CHECK(got[i].recovery == want[i].recovery);
                if (got[i].recovery) {
                    const std::size_t peak = got[i].start_index + got[i].duration - 1;
                    const std::size_t zero = peak + *got[i].recovery;
                    CHECK(trace[zero] == 0.0);
                    for (std::size_t t = peak; t < zero; ++t) {
                        CHECK(trace[t] > 0.0);
                    }
                }
            }
        }
    }
}

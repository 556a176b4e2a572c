#include "dunkel/error.hpp"
#include "dunkel/time_series.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

using namespace dunkel;
using Catch::Approx;

TEST_CASE("time series construction validates its invariants") {
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), ParameterError);
    CHECK_THROWS_AS(TimeSeries(TimePoint{}, Step{0}, {1.0}), ParameterError);
    CHECK_THROWS_AS(TimeSeries({1.0, std::nan("")}), ParameterError);
    CHECK_THROWS_AS(TimeSeries({1.0, INFINITY}), ParameterError);

    const TimeSeries s(parse_iso8601("2021-03-01T00:00:00Z"), std::chrono::minutes(15), {1, 2, 3});
    CHECK(s.size() == 3);
    CHECK(format_iso8601(s.time_at(2)) == "2021-03-01T00:30:00Z");
    CHECK(s.step_hours() == 0.25);
}

TEST_CASE("iso 8601 parsing") {
    CHECK(format_iso8601(parse_iso8601("1995-07-04 13:00")) == "1995-07-04T13:00:00Z");
    CHECK(format_iso8601(parse_iso8601("1995-07-04")) == "1995-07-04T00:00:00Z");
    CHECK(format_iso8601(parse_iso8601("1995-07-04T13:00:00+00:00")) == "1995-07-04T13:00:00Z");
    CHECK_THROWS_AS(parse_iso8601("1995-07-04T13:00:00+01:00"), InputError);
    CHECK_THROWS_AS(parse_iso8601("yesterday"), InputError);
    CHECK(year_of(parse_iso8601("1994-12-31T23:00:00Z")) == 1994);
}

TEST_CASE("availability series rejects values outside the unit interval") {
    CHECK_NOTHROW(fixture::avail({0.0, 1.0, 0.5}));
    try {
        fixture::avail({0.2, 1.2});
        FAIL("expected InputError");
    } catch (const InputError& err) {
        CHECK(std::string(err.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("moving average over exactly intdur samples ending at t") {
    const auto ma = moving_average(fixture::hourly({0.2, 0.0, 0.4}), 2);
    CHECK(ma.first_defined() == 1);
    CHECK_FALSE(ma.value_at(0).has_value());
    CHECK(*ma.value_at(1) == Approx(0.1));
    CHECK(*ma.value_at(2) == Approx(0.2));
    CHECK(ma.defined_values().size() == 2);
}

TEST_CASE("moving average with intdur 1 is the identity") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = oracle::uniform_series(rng, 1 + rep * 7);
        const auto ma = moving_average(fixture::hourly(x), 1);
        CHECK(std::equal(x.begin(), x.end(), ma.defined_values().begin(), ma.defined_values().end()));
    }
}

TEST_CASE("moving average of a constant is that constant") {
    const auto ma = moving_average(fixture::hourly(std::vector<double>(40, 0.3)), 7);
    for (double v : ma.defined_values()) {
        CHECK(v == Approx(0.3).epsilon(1e-15));
    }
}

TEST_CASE("moving average rejects intervals outside [1, N]") {
    const auto s = fixture::hourly({1, 2, 3});
    CHECK_THROWS_AS(moving_average(s, 0), ParameterError);
    CHECK_THROWS_AS(moving_average(s, 4), ParameterError);
    CHECK_NOTHROW(moving_average(s, 3));
}

TEST_CASE("moving average matches direct window means and is linear") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 30; ++rep) {
        const auto x = oracle::uniform_series(rng, 100);
        const std::size_t d = 1 + static_cast<std::size_t>(rep) * 3;
        const auto ma = moving_average(fixture::hourly(x), d);
        std::vector<double> y(x.size());
        std::transform(x.begin(), x.end(), y.begin(), [](double v) { return 3.0 * v - 1.5; });
        const auto may = moving_average(fixture::hourly(y), d);
        for (std::size_t t = d - 1; t < x.size(); ++t) {
            const double direct = static_cast<double>(oracle::direct_mean(x, t + 1 - d, d));
            CHECK(*ma.value_at(t) == Approx(direct).margin(1e-14));
            CHECK(*may.value_at(t) == Approx(3.0 * *ma.value_at(t) - 1.5).margin(1e-12));
        }
    }
}

TEST_CASE("summary statistics") {
    const auto st = summary_stats(fixture::hourly({0.0, 0.5, 1.0}));
    CHECK(st.mean == Approx(0.5));
    CHECK(st.duration_curve == std::vector<double>{1.0, 0.5, 0.0});
    CHECK(st.min == 0.0);
    CHECK(st.max == 1.0);
    CHECK(st.percentile(50) == Approx(0.5));
    CHECK(st.percentile(25) == Approx(0.25));
}

TEST_CASE("full-load hours of a constant year") {
    const TimeSeries s(parse_iso8601("2019-01-01T00:00:00Z"), kHourly, std::vector<double>(8760, 0.3));
    const auto st = summary_stats(s);
    CHECK(st.full_load_hours == Approx(2628.0).epsilon(1e-12));
    REQUIRE(st.full_load_hours_by_year.size() == 1);
    CHECK(st.full_load_hours_by_year.at(2019) == Approx(2628.0).epsilon(1e-12));
    CHECK(st.mean_annual_full_load_hours() == Approx(2628.0).epsilon(1e-12));
}

TEST_CASE("full-load hours per year over a multi-year series") {
    // 2020 is a leap year.
    const TimeSeries s(parse_iso8601("2020-01-01T00:00:00Z"), kHourly, std::vector<double>(8784 + 8760, 1.0));
    const auto st = summary_stats(s);
    CHECK(st.full_load_hours_by_year.at(2020) == Approx(8784));
    CHECK(st.full_load_hours_by_year.at(2021) == Approx(8760));
    CHECK(st.mean_annual_full_load_hours() == Approx((8784 + 8760) / 2.0));
    CHECK(st.full_load_hours_by_year.at(2020) <= 8784);
}

TEST_CASE("single value series is its own percentile everywhere") {
    const auto st = summary_stats(fixture::hourly({0.7}));
    CHECK(st.mean == 0.7);
    for (double p : {0.0, 1.0, 37.5, 50.0, 99.0, 100.0}) {
        CHECK(st.percentile(p) == 0.7);
    }
}

TEST_CASE("percentile range is checked") {
    CHECK_THROWS_AS(percentile(std::vector<double>{1.0}, -1), ParameterError);
    CHECK_THROWS_AS(percentile(std::vector<double>{1.0}, 101), ParameterError);
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 50), ParameterError);
}

TEST_CASE("duration curve is a sorted permutation, invariant to input order") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        auto x = oracle::uniform_series(rng, 64);
        const auto a = summary_stats(fixture::hourly(x));
        std::shuffle(x.begin(), x.end(), rng);
        const auto b = summary_stats(fixture::hourly(x));
        CHECK(a.duration_curve == b.duration_curve);
        CHECK(std::is_sorted(a.duration_curve.rbegin(), a.duration_curve.rend()));
        auto sorted = x;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        CHECK(sorted == a.duration_curve);
        CHECK(a.min <= a.mean);
        CHECK(a.mean <= a.max);
    }
}

TEST_CASE("year slice and calendar") {
    const TimeSeries s(parse_iso8601("1994-12-31T22:00:00Z"), kHourly, {1, 2, 3, 4});
    const auto y95 = s.year_slice(1995);
    CHECK(y95.size() == 2);
    CHECK(y95[0] == 3);
    CHECK_THROWS_AS(s.year_slice(1990), LookupError);
    const Calendar cal = s.calendar();
    CHECK(cal.first_year() == 1994);
    CHECK(cal.last_year() == 1995);
    CHECK(cal.index_of(parse_iso8601("1995-01-01T01:00:00Z")) == std::optional<std::size_t>(3));
    CHECK_FALSE(cal.index_of(parse_iso8601("1995-01-01T01:30:00Z")).has_value());
}

TEST_CASE("scaled and with_values keep the calendar") {
    const TimeSeries s(parse_iso8601("2000-01-01T00:00:00Z"), kHourly, {1, 2});
    CHECK(s.scaled(2.0).values()[1] == 4.0);
    CHECK(s.scaled(2.0).calendar() == s.calendar());
    CHECK_THROWS_AS(s.with_values({1.0}), ParameterError);
}

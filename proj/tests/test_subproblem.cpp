#include "doctest.h"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "rbrcd/solver.hpp"

using namespace rbrcd;

namespace {

struct Solved {
    std::vector<std::int32_t> cols;
    std::vector<double> vals;
    double objective(std::span<const double> b) const {
        double s = 0.0;
        for (std::size_t t = 0; t < cols.size(); ++t) s += b[cols[t]] * vals[t];
        return s;
    }
    double norm() const {
        double s = 0.0;
        for (double v : vals) s += v * v;
        return std::sqrt(s);
    }
};

Solved solve(std::span<const double> b, int p) {
    Solved out;
    out.cols.resize(b.size());
    out.vals.resize(b.size());
    const int len = subproblem_solve(b, p, out.cols, out.vals);
    out.cols.resize(len);
    out.vals.resize(len);
    return out;
}

} // namespace

TEST_CASE("single negative entry") {
    const std::array<double, 3> b{1.0, -2.0, 3.0};
    auto u = solve(b, 2);
    REQUIRE(u.cols.size() == 1);
    CHECK(u.cols[0] == 1);
    CHECK(u.vals[0] == doctest::Approx(1.0));
}

TEST_CASE("top-2 of the negative part, normalized") {
    const std::array<double, 3> b{-3.0, -1.0, -2.0};
    auto u = solve(b, 2);
    REQUIRE(u.cols.size() == 2);
    CHECK(u.cols[0] == 0);
    CHECK(u.cols[1] == 2);
    CHECK(u.vals[0] == doctest::Approx(3.0 / std::sqrt(13.0)));
    CHECK(u.vals[1] == doctest::Approx(2.0 / std::sqrt(13.0)));
}

TEST_CASE("all-nonnegative b gives the argmin coordinate") {
    const std::array<double, 3> b{1.0, 2.0, 3.0};
    for (int p = 1; p <= 3; ++p) {
        auto u = solve(b, p);
        REQUIRE(u.cols.size() == 1);
        CHECK(u.cols[0] == 0);
        CHECK(u.vals[0] == 1.0);
    }
}

TEST_CASE("zero b falls back to e_0") {
    const std::array<double, 4> b{0.0, 0.0, 0.0, 0.0};
    auto u = solve(b, 2);
    REQUIRE(u.cols.size() == 1);
    CHECK(u.cols[0] == 0);
}

TEST_CASE("ties at the cutoff keep the lowest columns") {
    const std::array<double, 4> b{-1.0, -2.0, -1.0, -1.0};
    auto u = solve(b, 2);
    REQUIRE(u.cols.size() == 2);
    CHECK(u.cols[0] == 0); // -1 tie resolved toward column 0, not 2 or 3
    CHECK(u.cols[1] == 1);
}

TEST_CASE("non-finite b is rejected") {
    const std::array<double, 2> b{std::numeric_limits<double>::quiet_NaN(), 0.0};
    std::array<std::int32_t, 2> cols;
    std::array<double, 2> vals;
    CHECK_THROWS(subproblem_solve(b, 1, cols, vals));
}

TEST_CASE("matches the support-enumeration oracle on random inputs") {
    Rng rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_below(4)); // 2..5
        const int p = 1 + static_cast<int>(rng.uniform_below(k));
        std::vector<double> b(k);
        for (double& x : b) x = (rng.uniform01() - 0.5) * 10.0;
        auto u = solve(b, p);
        CHECK(static_cast<int>(u.cols.size()) <= p);
        CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (double v : u.vals) CHECK(v > 0.0);
        CHECK(u.objective(b) == doctest::Approx(oracle::subproblem_opt(b, p)).epsilon(1e-12));
    }
}

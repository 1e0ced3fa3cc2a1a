#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "aec/schedule.hpp"

using namespace aec;

namespace {

constexpr std::size_t kBig = 10'000'000'000'000'000'000ULL;  // 1e19, near the size_t ceiling

// i* recomputed by iterating R directly, x^(2/3) via pow on the positive range.
std::size_t i_star_by_hand(double eps, double delta) {
    const double threshold = std::pow(eps * eps / 18, 2) * delta / 128;
    double r = eps * delta / 2;
    for (std::size_t i = 1; i <= kScheduleGuard; ++i) {
        r = (1 - std::exp(-2.0)) * r + std::pow(r, 2.0 / 3.0);
        if (r < threshold) return i;
    }
    return 0;
}

}  // namespace

TEST_CASE("first terms of the recursions") {
    const ScheduleParams p = compute_schedule_with_iterations(0.9, 100, 10, 3);
    CHECK(p.L_at(1) == doctest::Approx(110.0).epsilon(1e-15));
    CHECK(p.T_at(1) == 100.0);
    CHECK(p.R_at(1) == doctest::Approx(45.0));
    CHECK(p.k == 5);
    CHECK(p.eta == doctest::Approx(std::pow(1 - std::exp(-2.0), 2)));
    CHECK(p.iterations() == 4);
    CHECK(p.forced);
    CHECK(p.L_at(2) == doctest::Approx(p.eta * 110 - std::pow(110.0, 2.0 / 3.0)));
    CHECK(p.T_at(2) == doctest::Approx(p.eta * 100 + std::pow(100.0, 2.0 / 3.0)));
    CHECK(p.R_at(2) == doctest::Approx((1 - std::exp(-2.0)) * 45 + std::pow(45.0, 2.0 / 3.0)));
}

TEST_CASE("negative terms keep a real cube root") {
    CHECK(next_L(1.0, 0.5) == doctest::Approx(-0.5));
    CHECK(std::isfinite(next_L(-8.0, 0.5)));
    CHECK(next_L(-8.0, 0.5) == doctest::Approx(-4.0 - 4.0));
}

TEST_CASE("i* agrees with direct iteration") {
    for (double eps : {0.9, 0.7, 0.5, 0.3}) {
        for (std::size_t delta : {std::size_t{1'000'000'000'000ULL}, std::size_t{1'000'000'000'000'000ULL}, kBig}) {
            const std::size_t expected = i_star_by_hand(eps, static_cast<double>(delta));
            if (expected == 0) {
                CHECK_THROWS_AS(find_i_star(eps, delta), ScheduleError);
                continue;
            }
            CHECK(find_i_star(eps, delta) == expected);
            const ScheduleParams p = compute_schedule(eps, delta, 20);
            CHECK(p.i_star == expected);
            CHECK_FALSE(p.forced);
            CHECK(p.iterations() == expected + 1);
            // Minimality: R_{i*} itself is still above the threshold.
            CHECK(p.R_at(p.i_star + 1) < p.r_threshold);
            CHECK(p.R_at(p.i_star) >= p.r_threshold);
        }
    }
}

TEST_CASE("small Delta has no stopping index") {
    // R settles near e^6 while the threshold stays below it.
    CHECK_THROWS_AS(compute_schedule(0.5, 100'000'000, 20), ScheduleError);
    CHECK_THROWS_AS(compute_schedule(0.9, 1000, 10), ScheduleError);
    CHECK_THROWS_AS(compute_schedule(0.9, 20, 10), ScheduleError);
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(compute_schedule(0.0, kBig, 10), InvalidArgument);
    CHECK_THROWS_AS(compute_schedule(-1.0, kBig, 10), InvalidArgument);
    CHECK_THROWS_AS(compute_schedule(0.5, 0, 10), InvalidArgument);
    CHECK_THROWS_AS(compute_schedule(0.5, kBig, 2), InvalidArgument);
}

TEST_CASE("Psi and Lambda") {
    const ScheduleParams p = compute_schedule(0.5, kBig, 40);
    REQUIRE(p.i_star >= 1);
    CHECK(p.psi_at(p.i_star) == 16.0);
    CHECK(p.psi_at(p.i_star + 1) == 4.0);
    for (std::size_t i = 1; i <= p.i_star; ++i) {
        CHECK(p.psi_exponent[i - 1] == static_cast<int>(2 + p.i_star - i));
        CHECK(p.psi_at(i + 1) * 4 == p.psi_at(i));
    }
    const double psi1 = p.psi_at(1);
    CHECK(p.lambda_at(1) == 2.0 * p.k - 4 * psi1);
    for (std::size_t i = 1; i <= p.iterations(); ++i)
        CHECK(p.lambda_at(i) == doctest::Approx(2.0 * p.k / std::pow(2.0, i - 1) - 4 * psi1 * i));
}

TEST_CASE("primed sequences") {
    const ScheduleParams p = compute_schedule_with_iterations(0.5, kBig, 20, 4);
    const PrimedSequences q = primed_sequences(p);
    REQUIRE(q.L.size() == p.iterations());
    CHECK(q.L[0] == p.L_at(1));
    CHECK(q.T[0] == p.T_at(1));
    CHECK(q.R[0] == p.R_at(1));
    CHECK(q.R[1] == doctest::Approx(std::sqrt(p.eta) * p.R_at(1)));
    CHECK(q.T[2] / q.T[1] == doctest::Approx(p.eta));
    CHECK(q.L[3] == doctest::Approx(std::pow(p.eta, 3) * p.L_at(1)));
    CHECK(p.L_prime == q.L);
}

TEST_CASE("lemma checks at large Delta") {
    for (double eps : {0.9, 0.5}) {
        const ScheduleParams p = compute_schedule(eps, kBig, 20);
        const LemmaReport report = verify_schedule_lemmas(p);
        REQUIRE(report.rows.size() == p.iterations());
        const LemmaRow& first = report.rows.front();
        CHECK(first.L_gap == 0.0);
        CHECK(first.T_gap == 0.0);
        CHECK(first.R_gap == 0.0);
        CHECK(report.all_close);
        CHECK(report.all_ratio);
        for (const LemmaRow& row : report.rows) {
            CHECK(row.ratio <= 1 + eps / 9 + 1e-12);
            CHECK(row.L_allow == doctest::Approx(std::pow(p.L_prime[row.i - 1], 5.0 / 6.0)));
        }
        CHECK(report.max_ratio_deviation >= 0.0);
        CHECK(report.max_ratio_deviation < eps / 9);
    }
}

TEST_CASE("lemma report flags a failing bound") {
    // At Delta = 50 the lists go negative quickly, so both L_i >= eps^8 Delta
    // and the 5/6 closeness must fail somewhere.
    const ScheduleParams p = compute_schedule_with_iterations(0.5, 50, 10, 8);
    const LemmaReport report = verify_schedule_lemmas(p);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.all_large);
}

TEST_CASE("sequences decrease") {
    for (double eps : {0.9, 0.6, 0.4}) {
        for (std::size_t delta : {std::size_t{10'000'000'000'000ULL}, kBig}) {
            if (i_star_by_hand(eps, static_cast<double>(delta)) == 0) continue;
            const ScheduleParams p = compute_schedule(eps, delta, 20);
            for (std::size_t i = 1; i < p.iterations(); ++i) {
                CHECK(p.L_at(i + 1) < p.L_at(i));
                CHECK(p.T_at(i + 1) < p.T_at(i));
                CHECK(p.R_at(i + 1) < p.R_at(i));
            }
        }
    }
}

TEST_CASE("i* stops depending on Delta") {
    for (double eps : {0.9, 0.5}) {
        std::size_t last = 0;
        std::size_t changes = 0;
        for (std::size_t delta = 100'000'000'000'000ULL; delta <= kBig; delta *= 10) {
            const std::size_t i = find_i_star(eps, delta);
            if (last != 0 && i != last) ++changes;
            last = i;
        }
        // Over the top three decades the value is fixed.
        const std::size_t a = find_i_star(eps, kBig / 100);
        CHECK(find_i_star(eps, kBig / 10) == a);
        CHECK(find_i_star(eps, kBig) == a);
        CHECK(changes <= 1);
    }
}

TEST_CASE("forced schedule") {
    const ScheduleParams p = compute_schedule_with_iterations(0.5, 20, 10, 2);
    CHECK(p.forced);
    CHECK(p.i_star == 2);
    CHECK(p.iterations() == 3);
    CHECK(p.psi_at(1) == 64.0);
    CHECK(p.r_threshold == doctest::Approx(std::pow(0.25 / 18, 2) * 20 / 128));
}

TEST_CASE("schedule CSV") {
    const ScheduleParams p = compute_schedule_with_iterations(0.5, 20, 10, 2);
    const std::string csv = schedule_to_csv(p);
    std::istringstream in(csv);
    std::string line;
    std::size_t meta = 0, rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            ++meta;
        } else if (!header) {
            header = true;
            CHECK(line.rfind("i,", 0) == 0);
        } else {
            ++rows;
        }
    }
    CHECK(meta >= 5);
    CHECK(header);
    CHECK(rows == 3);
}

TEST_CASE("weighted local lemma conditions") {
    SUBCASE("empty system") {
        const double nu = 10.0;
        CHECK(check_weighted_lll({}, std::exp(2 * std::log(2.0) / nu), nu).ok());
    }
    SUBCASE("one heavy event") {
        const double nu = 10.0;
        const LllReport r = check_weighted_lll({{0.9, 1.0, {}}}, std::exp(2 * std::log(2.0) / nu), nu);
        REQUIRE(r.events.size() == 1);
        CHECK_FALSE(r.events[0].self_ok);
        CHECK(r.events[0].sum_ok);
        CHECK_FALSE(r.ok());
    }
    SUBCASE("inconsistent beta") {
        CHECK_THROWS_AS(check_weighted_lll({}, 1.5, 10.0), InvalidArgument);
        const double nu = 10.0, beta = std::exp(2 * std::log(2.0) / nu);
        CHECK_THROWS_AS(check_weighted_lll({{1.5, 1.0, {}}}, beta, nu), InvalidArgument);
        CHECK_THROWS_AS(check_weighted_lll({{0.5, 0.5, {}}}, beta, nu), InvalidArgument);
        CHECK_THROWS_AS(check_weighted_lll({{0.5, 1.0, {3}}}, beta, nu), InvalidArgument);
    }
    SUBCASE("cycle events at Delta = 1e6") {
        // Cycle events with P = Delta^-w, w ranging over 7..12, each cycle
        // meeting its neighbours in a free edge, plus rare vertex and edge
        // events of weight 1 near every cycle.
        const double eps = 0.5;
        const double delta = 1e6;
        const double beta = std::sqrt(1 + eps / 10);
        const double nu = 4 * std::log(2.0) / std::log(1 + eps / 10);
        const double rare = std::exp(-std::cbrt(delta));
        std::vector<LllEvent> events;
        const std::size_t cycles = 60, others = 200;
        for (std::size_t a = 0; a < cycles; ++a) {
            LllEvent ev{0, 7.0 + static_cast<double>(a % 6), {}};
            ev.h = std::pow(delta, -ev.w);
            for (std::size_t b = 0; b < cycles + others; ++b)
                if (b != a) ev.neighbours.push_back(b);
            events.push_back(ev);
        }
        for (std::size_t o = 0; o < others; ++o) {
            LllEvent ev{rare, 1.0, {}};
            for (std::size_t b = 0; b < cycles + others; ++b)
                if (b != cycles + o) ev.neighbours.push_back(b);
            events.push_back(ev);
        }
        const LllReport r = check_weighted_lll(events, beta, nu);
        CHECK(r.ok());
        for (const LllCondition& c : r.events) CHECK(c.self_term <= 0.5);
        // Each type-A self term is P^(1 - log_Delta beta), below sqrt(P).
        for (std::size_t a = 0; a < cycles; ++a)
            CHECK(r.events[a].self_term <= std::sqrt(events[a].h));
    }
}

#include "aec/schedule.hpp"

#include <cmath>
#include <sstream>

namespace aec {

namespace {

double two_thirds_power(double x) {
    const double c = std::cbrt(x);
    return c * c;
}

double eta_value() {
    const double q = 1.0 - std::exp(-2.0);
    return q * q;
}

double r_threshold_for(double eps, std::size_t delta) {
    const double a = eps * eps / 18.0;
    return a * a * static_cast<double>(delta) / 128.0;
}

void validate(double eps, std::size_t delta, std::size_t girth) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    if (delta < 1) throw InvalidArgument("delta must be at least 1");
    if (girth < 3) throw InvalidArgument("girth must be at least 3");
}

ScheduleParams build(double eps, std::size_t delta, std::size_t girth, std::size_t i_star, bool forced) {
    ScheduleParams p;
    p.eps = eps;
    p.delta = delta;
    p.girth = girth;
    p.k = girth / 2;
    p.eta = eta_value();
    p.i_star = i_star;
    p.r_threshold = r_threshold_for(eps, delta);
    p.forced = forced;

    const double d = static_cast<double>(delta);
    const std::size_t count = i_star + 1;
    p.L.push_back((1.0 + eps / 9.0) * d);
    p.T.push_back(d);
    p.R.push_back(eps * d / 2.0);
    for (std::size_t i = 1; i < count; ++i) {
        p.L.push_back(next_L(p.L.back(), p.eta));
        p.T.push_back(next_T(p.T.back(), p.eta));
        p.R.push_back(next_R(p.R.back()));
    }
    const auto primed = primed_sequences(p);
    p.L_prime = primed.L;
    p.T_prime = primed.T;
    p.R_prime = primed.R;

    for (std::size_t i = 1; i <= count; ++i) {
        const int exponent = static_cast<int>(2 + i_star - i);
        p.psi_exponent.push_back(exponent);
        p.psi.push_back(std::ldexp(1.0, 2 * exponent));
    }
    const double psi1 = p.psi.front();
    for (std::size_t i = 1; i <= count; ++i) {
        const double lead = 2.0 * static_cast<double>(p.k) / std::ldexp(1.0, static_cast<int>(i - 1));
        p.lambda.push_back(lead - 4.0 * psi1 * static_cast<double>(i));
    }
    return p;
}

}  // namespace

double next_L(double L, double eta) { return eta * L - two_thirds_power(L); }
double next_T(double T, double eta) { return eta * T + two_thirds_power(T); }
double next_R(double R) { return (1.0 - std::exp(-2.0)) * R + two_thirds_power(R); }

std::size_t find_i_star(double eps, std::size_t delta) {
    const double threshold = r_threshold_for(eps, delta);
    double r = eps * static_cast<double>(delta) / 2.0;
    for (std::size_t i = 1; i <= kScheduleGuard; ++i) {
        r = next_R(r);  // r is now R_{i+1}
        if (r < threshold) return i;
    }
    throw ScheduleError("R_{i+1} stays above the threshold " + std::to_string(threshold) + " for " +
                        std::to_string(kScheduleGuard) + " iterations (eps=" + std::to_string(eps) +
                        ", delta=" + std::to_string(delta) + ")");
}

ScheduleParams compute_schedule(double eps, std::size_t delta, std::size_t girth) {
    validate(eps, delta, girth);
    return build(eps, delta, girth, find_i_star(eps, delta), false);
}

ScheduleParams compute_schedule_with_iterations(double eps, std::size_t delta, std::size_t girth,
                                                std::size_t i_star) {
    validate(eps, delta, girth);
    if (i_star < 1 || i_star > kScheduleGuard) throw InvalidArgument("forced i* must lie in [1, 1000]");
    return build(eps, delta, girth, i_star, true);
}

PrimedSequences primed_sequences(const ScheduleParams& params) {
    PrimedSequences out;
    const double L1 = params.L.front();
    const double T1 = params.T.front();
    const double R1 = params.R.front();
    for (std::size_t i = 1; i <= params.iterations(); ++i) {
        const double power = static_cast<double>(i - 1);
        out.L.push_back(std::pow(params.eta, power) * L1);
        out.T.push_back(std::pow(params.eta, power) * T1);
        out.R.push_back(std::pow(params.eta, power / 2.0) * R1);
    }
    return out;
}

LemmaReport verify_schedule_lemmas(const ScheduleParams& params) {
    LemmaReport report;
    const double floor_value = std::pow(params.eps, 8) * static_cast<double>(params.delta);
    const double target_ratio = 1.0 + params.eps / 9.0;
    for (std::size_t idx = 0; idx < params.iterations(); ++idx) {
        LemmaRow row{};
        row.i = idx + 1;
        row.L_large = params.L[idx] >= floor_value;
        row.T_large = params.T[idx] >= floor_value;
        row.R_large = params.R[idx] >= floor_value;
        row.L_gap = std::abs(params.L[idx] - params.L_prime[idx]);
        row.T_gap = std::abs(params.T[idx] - params.T_prime[idx]);
        row.R_gap = std::abs(params.R[idx] - params.R_prime[idx]);
        row.L_allow = std::pow(params.L_prime[idx], 5.0 / 6.0);
        row.T_allow = std::pow(params.T_prime[idx], 5.0 / 6.0);
        row.R_allow = std::pow(params.R_prime[idx], 5.0 / 6.0);
        row.L_close = row.L_gap <= row.L_allow;
        row.T_close = row.T_gap <= row.T_allow;
        row.R_close = row.R_gap <= row.R_allow;
        row.ratio = params.L[idx] / params.T[idx];
        row.ratio_ok = row.ratio <= target_ratio;

        report.all_large = report.all_large && row.L_large && row.T_large && row.R_large;
        report.all_close = report.all_close && row.L_close && row.T_close && row.R_close;
        report.all_ratio = report.all_ratio && row.ratio_ok;
        report.max_ratio_deviation = std::max(report.max_ratio_deviation, std::abs(row.ratio - target_ratio));
        report.rows.push_back(row);
    }
    return report;
}

bool LllReport::ok() const noexcept {
    for (const auto& e : events)
        if (!e.sum_ok || !e.self_ok) return false;
    return true;
}

LllReport check_weighted_lll(const std::vector<LllEvent>& events, double beta, double nu) {
    if (!(nu > 0.0) || !(beta > 0.0)) throw InvalidArgument("beta and nu must be positive");
    const double expected = std::exp(2.0 * std::log(2.0) / nu);
    if (std::abs(beta - expected) > 1e-12 * expected)
        throw InvalidArgument("beta must equal e^(2 log 2 / nu)");
    const double log_beta = std::log(beta);
    std::vector<double> term(events.size());
    for (std::size_t r = 0; r < events.size(); ++r) {
        const auto& ev = events[r];
        if (!(ev.h >= 0.0 && ev.h <= 1.0)) throw InvalidArgument("h must lie in [0, 1]");
        if (!(ev.w >= 1.0)) throw InvalidArgument("w must be at least 1");
        term[r] = ev.h == 0.0 ? 0.0 : std::exp(ev.w * log_beta + std::log(ev.h));
    }
    LllReport report;
    for (std::size_t r = 0; r < events.size(); ++r) {
        LllCondition cond{0.0, term[r], false, false};
        for (std::size_t s : events[r].neighbours) {
            if (s >= events.size()) throw InvalidArgument("neighbour index out of range");
            cond.neighbour_sum += term[s];
        }
        cond.sum_ok = cond.neighbour_sum <= events[r].w / nu;
        cond.self_ok = cond.self_term <= 0.5;
        report.events.push_back(cond);
    }
    return report;
}

std::string schedule_to_csv(const ScheduleParams& p) {
    std::ostringstream out;
    out.precision(17);
    out << "# eps," << p.eps << '\n'
        << "# delta," << p.delta << '\n'
        << "# girth," << p.girth << '\n'
        << "# k," << p.k << '\n'
        << "# i_star," << p.i_star << '\n'
        << "# forced," << (p.forced ? 1 : 0) << '\n';
    out << "i,L,T,R,L_prime,T_prime,R_prime,Psi,Lambda\n";
    for (std::size_t idx = 0; idx < p.iterations(); ++idx) {
        out << idx + 1 << ',' << p.L[idx] << ',' << p.T[idx] << ',' << p.R[idx] << ',' << p.L_prime[idx] << ','
            << p.T_prime[idx] << ',' << p.R_prime[idx] << ',' << p.psi[idx] << ',' << p.lambda[idx] << '\n';
    }
    return out.str();
}

}  // namespace aec

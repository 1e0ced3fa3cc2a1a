#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aec/types.hpp"

namespace aec {

/// The stopping rule for the R recursion did not trigger within the guard.
class ScheduleError : public Error {
public:
    using Error::Error;
};

/// Numeric sequences driving the iterative colouring. Vectors are indexed by
/// iteration i = 1..i_star+1 at position i-1; use the accessors for 1-based
/// lookups.
struct ScheduleParams {
    double eps = 0.0;
    std::size_t delta = 0;
    std::size_t girth = 0;
    std::size_t k = 0;        // floor(girth / 2)
    double eta = 0.0;         // (1 - e^-2)^2
    std::size_t i_star = 0;
    double r_threshold = 0.0; // (eps^2/18)^2 * Delta / 128
    bool forced = false;      // i_star was imposed, not found by the stopping rule

    std::vector<double> L, T, R;
    std::vector<double> L_prime, T_prime, R_prime;
    std::vector<int> psi_exponent;  // Psi_i = 4^psi_exponent[i-1]
    std::vector<double> psi;        // exact powers of two; +inf beyond double range
    std::vector<double> lambda;

    std::size_t iterations() const noexcept { return L.size(); }  // i_star + 1
    double L_at(std::size_t i) const { return L.at(i - 1); }
    double T_at(std::size_t i) const { return T.at(i - 1); }
    double R_at(std::size_t i) const { return R.at(i - 1); }
    double psi_at(std::size_t i) const { return psi.at(i - 1); }
    double lambda_at(std::size_t i) const { return lambda.at(i - 1); }
};

inline constexpr std::size_t kScheduleGuard = 1000;

/// One step of each recursion. x^(2/3) is taken as cbrt(x)^2 so negative
/// values stay defined once a sequence has crossed zero.
double next_L(double L, double eta);
double next_T(double T, double eta);
double next_R(double R);

/// Smallest i >= 1 with R_{i+1} < r_threshold. Throws ScheduleError if
/// i would exceed kScheduleGuard.
std::size_t find_i_star(double eps, std::size_t delta);

/// Full schedule for i = 1..i*+1. Throws InvalidArgument on eps <= 0,
/// delta < 1 or girth < 3, ScheduleError when i* does not exist.
ScheduleParams compute_schedule(double eps, std::size_t delta, std::size_t girth);

/// Same sequences with i* imposed instead of derived. For small Delta the
/// stopping rule never fires; this keeps the rest of the pipeline usable.
ScheduleParams compute_schedule_with_iterations(double eps, std::size_t delta, std::size_t girth,
                                                std::size_t i_star);

struct PrimedSequences {
    std::vector<double> L, T, R;
};

/// L'_i = eta^(i-1) L_1, T'_i = eta^(i-1) T_1, R'_i = eta^((i-1)/2) R_1.
PrimedSequences primed_sequences(const ScheduleParams& params);

struct LemmaRow {
    std::size_t i;
    bool L_large, T_large, R_large;  // X_i >= eps^8 Delta
    double L_gap, T_gap, R_gap;      // |X_i - X'_i|
    double L_allow, T_allow, R_allow; // (X'_i)^(5/6)
    bool L_close, T_close, R_close;
    double ratio;                     // L_i / T_i
    bool ratio_ok;                    // ratio <= 1 + eps/9
};

struct LemmaReport {
    std::vector<LemmaRow> rows;
    bool all_large = true;
    bool all_close = true;
    bool all_ratio = true;
    double max_ratio_deviation = 0.0;  // max |L_i/T_i - (1 + eps/9)|

    bool ok() const noexcept { return all_large && all_close && all_ratio; }
};

LemmaReport verify_schedule_lemmas(const ScheduleParams& params);

struct LllEvent {
    double h;
    double w;
    std::vector<std::size_t> neighbours;
};

struct LllCondition {
    double neighbour_sum;  // sum over neighbours s of beta^w_s h_s
    double self_term;      // beta^w_r h_r
    bool sum_ok;           // neighbour_sum <= w_r / nu
    bool self_ok;          // self_term <= 1/2
};

struct LllReport {
    std::vector<LllCondition> events;
    bool ok() const noexcept;
};

/// Evaluates the sum and self conditions of the weighted local lemma for every
/// event. Bounding P(E_r) by h_r is the caller's job. Throws InvalidArgument
/// when beta differs from e^(2 log 2 / nu) by more than 1e-12 relative, or
/// for h outside [0, 1], w < 1, or a neighbour index out of range.
LllReport check_weighted_lll(const std::vector<LllEvent>& events, double beta, double nu);

/// CSV with "# key,value" metadata rows then one row per iteration.
std::string schedule_to_csv(const ScheduleParams& params);

}  // namespace aec

#pragma once

#include "relspec/collapse.hpp"
#include "relspec/rotation.hpp"
#include "relspec/types.hpp"

namespace relspec {

/// Stage budgets for the nested construction. Work happens in centered
/// [-2, 2] coordinates; `scale` and `shift` map back to the user interval.
struct NestSchedule {
    int stages = 2;
    double rho_minus = -2.0, rho_plus = 2.0;
    double r = 0.0;                 // in user coordinates
    std::vector<double> alpha;      // alpha_1..alpha_L, decreasing, in (0,1)
    Eigen::Index N_max = 2048;
    int symbol_degree = 384;
    bool loose_mode = true;         // relax eps budgets when strict ones are unattainable

    double scale() const { return (rho_plus - rho_minus) / 4.0; }
    double shift() const { return 0.5 * (rho_minus + rho_plus); }
    double r_centered() const { return (r - shift()) / scale(); }
};

struct NestStage {
    int l = 0;
    Eigen::Index N = 0;             // N_l
    double rho = 0.0;               // 2 - 2^-l
    double rho_used = 0.0;          // collapse interval half-width actually used
    double varrho = 0.0;            // 2 - 3*2^-(l+2)
    double eps_budget = 0.0;        // strict budget from the Delta chain
    double eps = 0.0;               // value actually used (== budget unless relaxed)
    double delta = 0.0;             // == eps
    bool relaxed = false;
    double delta_narrow = 0.0;      // Delta(T_{l-1}, N_{l-1} window, alpha_{l-1}/2)
    double delta_wide = 0.0;        // Delta(T_{l-1}, 2N_{l-1} window, alpha_{l-1})
    double norm_R = 0.0;
    double norm_S = 0.0;            // coupling into this stage's B from T_{l-1}
    double norm_T = 0.0;            // |T_l|
    double density_gap = 0.0;
    HermitianMatrix B;              // N_l x N_l, centered coordinates
    HermitianMatrix R;
    HermitianMatrix T;              // [[B, R], [R, 0]], 2N_l x 2N_l
};

struct NestState {
    NestSchedule schedule;
    std::vector<NestStage> stage;   // stage[0] is l = 1
    const NestStage& last() const { return stage.back(); }
    /// Final operator in user coordinates.
    HermitianMatrix final_T() const;
    /// Final operator in centered [-2,2] coordinates.
    const HermitianMatrix& final_T_centered() const { return stage.back().T; }
};

NestState nest_run(const NestSchedule& schedule);

struct NestStageReport {
    int l = 0;
    double telescoping_residual = 0.0;       // |top-left 2N_l block of T_L - T_l|
    double square_compression_norm = 0.0;    // |P T_L^2 P - T_l^2| on the 2N_l window
    double square_compression_bound = 0.0;   // 4 eps_{l+1}^2
    double collapse_max_dist = 0.0;          // max |lambda - r| over Spec2(T_L, l2(N_l))
    double collapse_bound = 0.0;             // alpha_l
    double window_interval_dH = 0.0;         // d_H(Spec2(T_L, l2(2N_l)), [-varrho_l, varrho_l])
    double window_interval_bound = 0.0;      // 2^-l + 2^-(l+1) + alpha_l
    double norm_T = 0.0, norm_bound = 0.0;   // |T_l| <= varrho_l
    bool telescoping_ok = false;
    bool square_compression_ok = false;
    bool collapse_ok = false;
    bool window_recovery_ok = false;
    bool norm_ok = false;
    bool enclosure_ok = false;
};

struct NestReport {
    std::vector<NestStageReport> stages;  // for l < L
    bool all_pass() const;
};

/// Re-verifies the finite-stage telescoping, square-compression, window
/// collapse and window recovery properties of a (possibly deserialized)
/// state against the given final operator (centered coordinates).
NestReport verify_nest(const NestState& state, const HermitianMatrix& T_final);

}  // namespace relspec

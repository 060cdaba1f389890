#pragma once

#include <map>
#include <string>
#include <vector>

#include "kicl/util.hpp"

namespace kicl::portfolio {

struct PortfolioConfig {
    double per_asset_cap = 0.2;
    double gross_cap = 1.0;
    double anchor_decay = 0.98;  // silence carry factor per day
    double tau_entry = 5e-4;     // carried weights below this are flattened
    double cost_rate = 0.0;
};

struct PortfolioState {
    std::map<std::string, double> weights;  // signed exposure per ticker
    double cash_weight = 1.0;
    int day = 0;

    double gross() const;
};

// Maps raw scores to executable weights: per-asset clamp, gross rescale when
// the cap is exceeded, and silence continuity for tickers with no fresh score
// (carry decayed by anchor_decay, flattened below tau_entry).
PortfolioState alloc(const std::map<std::string, double>& raw_scores, const PortfolioState& prev,
                     const PortfolioConfig& cfg);

struct PnlResult {
    double r_t = 0;        // realized portfolio return net of costs
    double turnover = 0;   // sum |delta w| charged at rebalance
    PortfolioState next;   // weights drifted by returns
};

// r_t = sum_i w_i * ret_i - cost_rate * sum_i |dw_i|. `prev_drifted` carries
// yesterday's post-drift weights for the turnover charge.
PnlResult step_pnl(const PortfolioState& state, const std::map<std::string, double>& next_day_returns,
                   double cost_rate, const PortfolioState* prev_drifted = nullptr);

struct EquityPoint {
    int day = 0;
    double equity = 1.0;
    double peak = 1.0;
    double daily_return = 0.0;
};

std::vector<EquityPoint> equity_curve(const std::vector<double>& daily_returns);

std::string equity_to_csv(const std::vector<EquityPoint>& curve);

}  // namespace kicl::portfolio

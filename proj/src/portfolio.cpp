#include "kicl/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kicl::portfolio {

double PortfolioState::gross() const {
    double g = 0;
    for (const auto& [_, w] : weights) g += std::fabs(w);
    return g;
}

PortfolioState alloc(const std::map<std::string, double>& raw_scores, const PortfolioState& prev,
                     const PortfolioConfig& cfg) {
    PortfolioState out;
    out.day = prev.day + 1;

    for (const auto& [ticker, score] : raw_scores) {
        if (!std::isfinite(score)) throw ConfigError("alloc: non-finite score for " + ticker);
        out.weights[ticker] = std::clamp(score, -cfg.per_asset_cap, cfg.per_asset_cap);
    }
    // Silence continuity for anchors with no fresh score.
    for (const auto& [ticker, w] : prev.weights) {
        if (out.weights.count(ticker)) continue;
        double carried = w * cfg.anchor_decay;
        if (std::fabs(carried) < cfg.tau_entry) carried = 0.0;
        if (carried != 0.0) out.weights[ticker] = carried;
    }

    double g = out.gross();
    if (g > cfg.gross_cap) {
        double scale = cfg.gross_cap / g;
        for (auto& [_, w] : out.weights) w *= scale;
    }
    out.cash_weight = 1.0 - out.gross();
    return out;
}

PnlResult step_pnl(const PortfolioState& state, const std::map<std::string, double>& next_day_returns,
                   double cost_rate, const PortfolioState* prev_drifted) {
    PnlResult res;
    double pnl = 0;
    for (const auto& [ticker, w] : state.weights) {
        if (w == 0.0) continue;
        auto it = next_day_returns.find(ticker);
        if (it == next_day_returns.end())
            throw ConfigError("step_pnl: missing return for held ticker " + ticker);
        pnl += w * it->second;
    }
    double turnover = 0;
    for (const auto& [ticker, w] : state.weights) {
        double prev_w = 0;
        if (prev_drifted) {
            auto it = prev_drifted->weights.find(ticker);
            if (it != prev_drifted->weights.end()) prev_w = it->second;
        }
        turnover += std::fabs(w - prev_w);
    }
    if (prev_drifted)
        for (const auto& [ticker, w] : prev_drifted->weights)
            if (!state.weights.count(ticker)) turnover += std::fabs(w);

    res.turnover = turnover;
    res.r_t = pnl - cost_rate * turnover;

    // Drift weights with returns before the next alloc.
    res.next = state;
    res.next.day = state.day;
    double growth = 1.0 + res.r_t;
    if (growth > 0) {
        for (auto& [ticker, w] : res.next.weights) {
            auto it = next_day_returns.find(ticker);
            double ret = it == next_day_returns.end() ? 0.0 : it->second;
            w = w * (1.0 + ret) / growth;
        }
    }
    res.next.cash_weight = 1.0 - res.next.gross();
    return res;
}

std::vector<EquityPoint> equity_curve(const std::vector<double>& daily_returns) {
    std::vector<EquityPoint> curve;
    curve.reserve(daily_returns.size());
    double equity = 1.0, peak = 0.0;
    int day = 0;
    for (double r : daily_returns) {
        if (r <= -1.0)
            throw ConfigError("equity_curve: return <= -1 (bankruptcy) at step " +
                              std::to_string(day + 1));
        equity *= 1.0 + r;
        peak = std::max(peak == 0.0 ? equity : peak, equity);
        curve.push_back({++day, equity, peak, r});
    }
    return curve;
}

std::string equity_to_csv(const std::vector<EquityPoint>& curve) {
    std::ostringstream out;
    out << "day,equity,peak,drawdown,daily_return\n";
    for (const EquityPoint& p : curve) {
        double dd = (p.peak - p.equity) / (p.peak + 1e-8);
        out << p.day << ',' << util::format_double(p.equity) << ',' << util::format_double(p.peak)
            << ',' << util::format_double(dd) << ',' << util::format_double(p.daily_return)
            << '\n';
    }
    return out.str();
}

}  // namespace kicl::portfolio

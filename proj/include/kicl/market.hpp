#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kicl/util.hpp"

namespace kicl::market {

struct MarketBar {
    int trading_day = 0;  // day ordinal, strictly increasing per ticker
    double open = 0, high = 0, low = 0, close = 0;
    double volume = 0;
};

// Leakage-free 6-factor slice of the market state.
struct FactorVector {
    double ret_1d = 0, ret_5d = 0;
    double vol_5d = 0, vol_20d = 0;
    double volu_z_20d = 0;
    double dist_sma20 = 0;

    std::array<double, 6> as_array() const {
        return {ret_1d, ret_5d, vol_5d, vol_20d, volu_z_20d, dist_sma20};
    }
};

// Trailing windows need 20 daily returns, i.e. 21 bars up to and including t.
constexpr std::size_t kFactorWarmupBars = 21;

struct RegimeParams {
    double drift = 0.0;        // daily log-price drift
    double vol = 0.01;         // daily log-price volatility
    double volume_log_mean = 13.8;
    double volume_log_sigma = 0.3;
};

struct MarketGenConfig {
    int n_tickers = 10;
    int n_days = 756;
    int start_day = util::days_from_civil(2022, 1, 3);
    std::vector<RegimeParams> regimes = {{0.0004, 0.010, 13.8, 0.3},
                                         {-0.0003, 0.022, 14.1, 0.5}};
    double regime_stay_prob = 0.98;
    double start_price = 100.0;
};

struct TickerSeries {
    std::string ticker;
    std::vector<MarketBar> bars;
};

// Regime-switching GBM with lognormal volume. Deterministic per seed; each
// ticker draws from its own substream so prefixes are count-independent.
std::vector<TickerSeries> generate_market(std::uint64_t seed, const MarketGenConfig& cfg);

// Factors at bar index `idx` using only bars[0..idx]. Requires idx >= 20.
FactorVector compute_factors(std::span<const MarketBar> bars, std::size_t idx);

// Day-keyed variant; throws if the day is missing or warmup is not satisfied.
FactorVector compute_factors_at_day(std::span<const MarketBar> bars, int trading_day);

void validate_bars(const TickerSeries& series);

// CSV I/O: `ticker,trading_day,open,high,low,close,volume` with header.
std::string to_csv(const std::vector<TickerSeries>& series);
std::vector<TickerSeries> from_csv(const std::string& content);
std::string factors_to_csv(const std::vector<TickerSeries>& series);

}  // namespace kicl::market

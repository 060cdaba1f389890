#include "kicl/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "kicl/rng.hpp"

namespace kicl::market {

namespace {

std::string ticker_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "SYN%02d", i);
    return buf;
}

// Next weekday on or after `day`.
int next_weekday(int day) {
    while (util::day_of_week(day) >= 5) ++day;
    return day;
}

double population_std(std::span<const double> xs) {
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double acc = 0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<TickerSeries> generate_market(std::uint64_t seed, const MarketGenConfig& cfg) {
    if (cfg.n_days < 25)
        throw ConfigError("generate_market: n_days must be >= 25 for factor warmup");
    if (cfg.n_tickers < 1) throw ConfigError("generate_market: n_tickers must be >= 1");
    if (cfg.regimes.empty()) throw ConfigError("generate_market: no regimes configured");

    std::vector<TickerSeries> out;
    out.reserve(cfg.n_tickers);
    for (int i = 0; i < cfg.n_tickers; ++i) {
        TickerSeries series;
        series.ticker = ticker_name(i);
        series.bars.reserve(cfg.n_days);

        Rng rng = Rng::substream(seed, "market/" + series.ticker);
        std::size_t regime = 0;
        double log_price = std::log(cfg.start_price);
        int day = next_weekday(cfg.start_day);
        double prev_close = cfg.start_price;

        for (int t = 0; t < cfg.n_days; ++t) {
            if (rng.uniform01() > cfg.regime_stay_prob)
                regime = (regime + 1) % cfg.regimes.size();
            const RegimeParams& rp = cfg.regimes[regime];

            log_price += rp.drift + rp.vol * rng.normal();
            double close = std::exp(log_price);
            double open = prev_close;
            double range = std::fabs(rng.normal()) * rp.vol * 0.5;
            MarketBar bar;
            bar.trading_day = day;
            bar.open = open;
            bar.close = close;
            bar.high = std::max(open, close) * (1.0 + range);
            bar.low = std::min(open, close) * (1.0 - range);
            bar.volume = std::exp(rp.volume_log_mean + rp.volume_log_sigma * rng.normal());
            series.bars.push_back(bar);

            prev_close = close;
            day = next_weekday(day + 1);
        }
        out.push_back(std::move(series));
    }
    return out;
}

FactorVector compute_factors(std::span<const MarketBar> bars, std::size_t idx) {
    if (idx >= bars.size())
        throw ConfigError("compute_factors: index out of range");
    if (idx + 1 < kFactorWarmupBars)
        throw ConfigError("compute_factors: insufficient history (need 21 bars)");

    const double p_t = bars[idx].close;
    FactorVector f;
    f.ret_1d = p_t / bars[idx - 1].close - 1.0;
    f.ret_5d = p_t / bars[idx - 5].close - 1.0;

    double rets[20];
    for (std::size_t k = 0; k < 20; ++k) {
        std::size_t i = idx - 19 + k;
        rets[k] = bars[i].close / bars[i - 1].close - 1.0;
    }
    f.vol_5d = population_std(std::span<const double>(rets + 15, 5));
    f.vol_20d = population_std(std::span<const double>(rets, 20));

    double vols[20];
    double mu_v = 0;
    for (std::size_t k = 0; k < 20; ++k) {
        vols[k] = bars[idx - 19 + k].volume;
        mu_v += vols[k];
    }
    mu_v /= 20.0;
    double sigma_v = population_std(std::span<const double>(vols, 20));
    f.volu_z_20d = sigma_v == 0.0 ? 0.0 : (bars[idx].volume - mu_v) / sigma_v;

    double sma = 0;
    for (std::size_t k = 0; k < 20; ++k) sma += bars[idx - 19 + k].close;
    sma /= 20.0;
    f.dist_sma20 = p_t / sma - 1.0;
    return f;
}

FactorVector compute_factors_at_day(std::span<const MarketBar> bars, int trading_day) {
    for (std::size_t i = 0; i < bars.size(); ++i)
        if (bars[i].trading_day == trading_day) return compute_factors(bars, i);
    throw ConfigError("compute_factors: trading_day not found");
}

void validate_bars(const TickerSeries& series) {
    int prev_day = INT32_MIN;
    for (const MarketBar& b : series.bars) {
        if (b.trading_day <= prev_day)
            throw ConfigError("bars for " + series.ticker + " not strictly increasing by day");
        if (b.open <= 0 || b.close <= 0 || b.high <= 0 || b.low <= 0)
            throw ConfigError("non-positive price in " + series.ticker);
        if (b.volume < 0) throw ConfigError("negative volume in " + series.ticker);
        if (b.low > std::min(b.open, b.close) + 1e-12 ||
            b.high < std::max(b.open, b.close) - 1e-12)
            throw ConfigError("bar range violation in " + series.ticker);
        prev_day = b.trading_day;
    }
}

std::string to_csv(const std::vector<TickerSeries>& series) {
    std::ostringstream out;
    out << "ticker,trading_day,open,high,low,close,volume\n";
    for (const auto& s : series)
        for (const auto& b : s.bars)
            out << s.ticker << ',' << util::format_day(b.trading_day) << ','
                << util::format_double(b.open) << ',' << util::format_double(b.high) << ','
                << util::format_double(b.low) << ',' << util::format_double(b.close) << ','
                << util::format_double(b.volume) << '\n';
    return out.str();
}

std::vector<TickerSeries> from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("market csv: empty file");
    std::map<std::string, std::size_t> index;
    std::vector<TickerSeries> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cols = util::split_csv_line(line);
        if (cols.size() != 7) throw ConfigError("market csv: expected 7 columns, got line: " + line);
        auto [it, inserted] = index.try_emplace(cols[0], out.size());
        if (inserted) out.push_back(TickerSeries{cols[0], {}});
        MarketBar b;
        b.trading_day = util::parse_day(cols[1]);
        b.open = util::parse_double(cols[2], "open");
        b.high = util::parse_double(cols[3], "high");
        b.low = util::parse_double(cols[4], "low");
        b.close = util::parse_double(cols[5], "close");
        b.volume = util::parse_double(cols[6], "volume");
        out[it->second].bars.push_back(b);
    }
    for (auto& s : out) validate_bars(s);
    return out;
}

std::string factors_to_csv(const std::vector<TickerSeries>& series) {
    std::ostringstream out;
    out << "ticker,trading_day,ret_1d,ret_5d,vol_5d,vol_20d,volu_z_20d,dist_sma20\n";
    for (const auto& s : series) {
        for (std::size_t i = kFactorWarmupBars - 1; i < s.bars.size(); ++i) {
            FactorVector f = compute_factors(s.bars, i);
            out << s.ticker << ',' << util::format_day(s.bars[i].trading_day);
            for (double v : f.as_array()) out << ',' << util::format_double(v);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace kicl::market

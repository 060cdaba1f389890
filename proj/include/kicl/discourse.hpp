#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kicl/util.hpp"

namespace kicl::discourse {

struct DiscourseEvent {
    std::int64_t timestamp = 0;  // seconds, market-local
    bool market_tz = true;
    std::string ticker;
    double sentiment = 0;   // [-1, 1]
    double confidence = 0;  // [0, 1]
    std::string kol_id;
};

void validate_event(const DiscourseEvent& e);

// One aligned (ticker, day) signal row. `a_raw` is the bounded baseline score,
// `fresh_event` the regime indicator m_t at signal level.
struct BaselineSignal {
    int trading_day = 0;
    std::string ticker;
    double a_raw = 0;  // |a_raw| < 1
    bool fresh_event = false;
};

// BaselineSignal plus the fields replay construction needs for states.
struct AlignedSignal {
    int trading_day = 0;
    std::string ticker;
    std::string kol_id;
    double sentiment = 0;
    double confidence = 0;
    double a_raw = 0;
    int n_events = 1;
    std::string text_token;

    BaselineSignal base() const { return {trading_day, ticker, a_raw, true}; }
};

// Trading sessions with fixed open/close clock times.
class TradingCalendar {
public:
    TradingCalendar(std::vector<int> days, int open_sec = 9 * 3600 + 1800,
                    int close_sec = 16 * 3600);

    static TradingCalendar weekdays(int start_day, int n_days);

    const std::vector<int>& days() const { return days_; }
    int open_sec() const { return open_sec_; }
    int close_sec() const { return close_sec_; }
    bool contains(int day) const;

    // Pre-open and intraday (up to and including the close) map to the same
    // session; after-hours and non-trading days map to the next session.
    int align(std::int64_t timestamp) const;

private:
    std::vector<int> days_;
    int open_sec_, close_sec_;
};

int align_to_trading_day(const DiscourseEvent& e, const TradingCalendar& cal);

// tanh(2 * sentiment * confidence)
double baseline_raw(double sentiment, double confidence);

struct DiscourseGenConfig {
    double intensity_per_quarter = 0.012;  // events / ticker / quarter
    std::vector<std::string> kol_ids = {"KOL_SYNTH"};
    double p_pos = 0.55, p_neg = 0.30;  // p_neu = 1 - p_pos - p_neg
    double conf_min = 0.30, conf_max = 0.95;
};

std::vector<DiscourseEvent> generate_discourse(std::uint64_t seed,
                                               const std::vector<std::string>& tickers,
                                               const TradingCalendar& cal,
                                               const DiscourseGenConfig& cfg);

// Align events to sessions and aggregate multi-event ticker-days
// (confidence-weighted mean sentiment, mean confidence).
std::vector<AlignedSignal> align_and_aggregate(const std::vector<DiscourseEvent>& events,
                                               const TradingCalendar& cal);

// ---- KOL ranking (candidate scoring standard) ----

struct CandidatePost {
    long likes = 0, replies = 0, retweets = 0, quotes = 0;
    long views = 0;
    double text_relevance_raw = 0;
};

struct CandidateKol {
    std::string handle;
    long followers = 0;
    long active_days = 0;
    long mutual_overlap = 0;  // m(u)
    std::vector<CandidatePost> posts;
};

struct RankConfig {
    long min_posts = 3;
    long min_active_days = 3;
    long min_median_views = 3000;
    long min_post_likes = 200;
    long min_post_replies = 20;
    long min_mutual_overlap = 5;
    long priority_followers = 200000;  // strictly greater grants priority tier
    double w_sim = 0.4, w_eng = 0.6;
};

struct RankedKol {
    std::string handle;
    bool eligible = false;
    bool priority = false;
    double sim_raw = 0, eng_raw = 0;
    double sim_norm = 0, eng_norm = 0;
    double score = 0;
    int rank = 0;  // 1-based among eligible; 0 if ineligible
};

struct RankReport {
    std::vector<RankedKol> entries;  // eligible first in rank order, then ineligible by handle
    int n_eligible = 0;
    std::string note;
};

RankReport rank_kols(const std::vector<CandidateKol>& candidates, const RankConfig& cfg);

std::string rank_report_to_csv(const RankReport& report);

// Candidate records file (JSON array, keys documented in README).
std::vector<CandidateKol> candidates_from_json(const std::string& content);

// Event CSV: `kol_id,timestamp,ticker,sentiment,confidence`
std::string events_to_csv(const std::vector<DiscourseEvent>& events);
std::vector<DiscourseEvent> events_from_csv(const std::string& content);

std::string signals_to_csv(const std::vector<AlignedSignal>& signals);
std::vector<AlignedSignal> signals_from_csv(const std::string& content);

}  // namespace kicl::discourse

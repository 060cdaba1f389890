#include "kicl/discourse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "kicl/rng.hpp"

namespace kicl::discourse {

void validate_event(const DiscourseEvent& e) {
    if (e.ticker.empty()) throw ConfigError("discourse event: empty ticker");
    if (e.sentiment < -1.0 || e.sentiment > 1.0)
        throw ConfigError("discourse event: sentiment outside [-1, 1]");
    if (e.confidence < 0.0 || e.confidence > 1.0)
        throw ConfigError("discourse event: confidence outside [0, 1]");
}

TradingCalendar::TradingCalendar(std::vector<int> days, int open_sec, int close_sec)
    : days_(std::move(days)), open_sec_(open_sec), close_sec_(close_sec) {
    if (days_.empty()) throw ConfigError("trading calendar: no days");
    if (!std::is_sorted(days_.begin(), days_.end()))
        throw ConfigError("trading calendar: days not sorted");
}

TradingCalendar TradingCalendar::weekdays(int start_day, int n_days) {
    std::vector<int> days;
    days.reserve(n_days);
    int d = start_day;
    while (static_cast<int>(days.size()) < n_days) {
        if (util::day_of_week(d) < 5) days.push_back(d);
        ++d;
    }
    return TradingCalendar(std::move(days));
}

bool TradingCalendar::contains(int day) const {
    return std::binary_search(days_.begin(), days_.end(), day);
}

int TradingCalendar::align(std::int64_t timestamp) const {
    int day = static_cast<int>(timestamp >= 0 ? timestamp / 86400 : (timestamp - 86399) / 86400);
    int sec = static_cast<int>(timestamp - static_cast<std::int64_t>(day) * 86400);
    if (day < days_.front() || day > days_.back() + 7)
        throw ConfigError("align: timestamp outside calendar range: " +
                          util::format_datetime(timestamp));
    // Same session when posted on a trading day at or before the close.
    if (contains(day) && sec <= close_sec_) return day;
    auto it = std::upper_bound(days_.begin(), days_.end(), day);
    if (it == days_.end())
        throw ConfigError("align: no trading session after " + util::format_datetime(timestamp));
    return *it;
}

int align_to_trading_day(const DiscourseEvent& e, const TradingCalendar& cal) {
    return cal.align(e.timestamp);
}

double baseline_raw(double sentiment, double confidence) {
    return std::tanh(2.0 * sentiment * confidence);
}

std::vector<DiscourseEvent> generate_discourse(std::uint64_t seed,
                                               const std::vector<std::string>& tickers,
                                               const TradingCalendar& cal,
                                               const DiscourseGenConfig& cfg) {
    if (tickers.empty()) throw ConfigError("generate_discourse: empty ticker set");
    if (cfg.intensity_per_quarter <= 0)
        throw ConfigError("generate_discourse: intensity must be positive");
    if (cfg.kol_ids.empty()) throw ConfigError("generate_discourse: no kol ids");

    // Per-calendar-day thinning rate; a quarter is ~91.3 calendar days.
    const double p_day = cfg.intensity_per_quarter / 91.3125;
    const int first = cal.days().front();
    const int last = cal.days().back();

    std::vector<DiscourseEvent> events;
    for (const std::string& ticker : tickers) {
        Rng rng = Rng::substream(seed, "discourse/" + ticker);
        for (int day = first; day <= last; ++day) {
            if (rng.uniform01() >= p_day) continue;
            DiscourseEvent e;
            e.ticker = ticker;
            e.timestamp = static_cast<std::int64_t>(day) * 86400 +
                          static_cast<std::int64_t>(rng.uniform01() * 86400.0);
            double u = rng.uniform01();
            e.sentiment = u < cfg.p_pos ? 1.0 : (u < cfg.p_pos + cfg.p_neg ? -1.0 : 0.0);
            e.confidence = rng.uniform(cfg.conf_min, cfg.conf_max);
            e.kol_id = cfg.kol_ids[rng.uniform_index(cfg.kol_ids.size())];
            events.push_back(std::move(e));
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const DiscourseEvent& a, const DiscourseEvent& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.ticker < b.ticker;
                     });
    return events;
}

std::vector<AlignedSignal> align_and_aggregate(const std::vector<DiscourseEvent>& events,
                                               const TradingCalendar& cal) {
    struct Agg {
        double sent_conf = 0, conf_sum = 0;
        int n = 0;
        std::string kol_id;  // earliest event's author
        std::int64_t first_ts = 0;
    };
    std::map<std::pair<int, std::string>, Agg> by_day;
    for (const DiscourseEvent& e : events) {
        validate_event(e);
        int day = cal.align(e.timestamp);
        auto& agg = by_day[{day, e.ticker}];
        agg.sent_conf += e.sentiment * e.confidence;
        agg.conf_sum += e.confidence;
        if (agg.n == 0 || e.timestamp < agg.first_ts) {
            agg.kol_id = e.kol_id;
            agg.first_ts = e.timestamp;
        }
        ++agg.n;
    }

    std::vector<AlignedSignal> out;
    out.reserve(by_day.size());
    for (const auto& [key, agg] : by_day) {
        AlignedSignal s;
        s.trading_day = key.first;
        s.ticker = key.second;
        s.kol_id = agg.kol_id;
        s.sentiment = agg.conf_sum > 0 ? agg.sent_conf / agg.conf_sum : 0.0;
        s.confidence = agg.conf_sum / agg.n;
        s.a_raw = baseline_raw(s.sentiment, s.confidence);
        s.n_events = agg.n;
        s.text_token = agg.kol_id + "|" + s.ticker + "|" + util::format_day(s.trading_day);
        out.push_back(std::move(s));
    }
    return out;
}

// ---- KOL ranking ----

namespace {

double median_views(const std::vector<CandidatePost>& posts) {
    std::vector<long> v;
    v.reserve(posts.size());
    for (const auto& p : posts) v.push_back(p.views);
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n == 0) return 0;
    if (n % 2 == 1) return static_cast<double>(v[n / 2]);
    return 0.5 * (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2]));
}

}  // namespace

RankReport rank_kols(const std::vector<CandidateKol>& candidates, const RankConfig& cfg) {
    RankReport report;
    report.entries.reserve(candidates.size());

    for (const CandidateKol& c : candidates) {
        if (c.followers < 0 || c.active_days < 0 || c.mutual_overlap < 0)
            throw ConfigError("rank_kols: negative counts for " + c.handle);

        RankedKol r;
        r.handle = c.handle;
        r.priority = c.followers > cfg.priority_followers;

        // Stage 1: per-post engagement floor, then author activity filters.
        std::vector<CandidatePost> kept;
        for (const CandidatePost& p : c.posts)
            if (p.likes >= cfg.min_post_likes && p.replies >= cfg.min_post_replies)
                kept.push_back(p);
        bool stage1 = static_cast<long>(kept.size()) >= cfg.min_posts &&
                      c.active_days >= cfg.min_active_days &&
                      median_views(kept) >= static_cast<double>(cfg.min_median_views);
        // Stage 2: network validation.
        bool stage2 = c.mutual_overlap >= cfg.min_mutual_overlap;
        r.eligible = stage1 && stage2;

        if (r.eligible) {
            double er_sum = 0, sim_sum = 0;
            for (const CandidatePost& p : kept) {
                er_sum += static_cast<double>(p.likes + p.replies + p.retweets + p.quotes);
                sim_sum += p.text_relevance_raw;
            }
            double er_avg = er_sum / static_cast<double>(kept.size());
            r.eng_raw = std::log(1.0 + er_avg * 1000.0);
            r.sim_raw = sim_sum / static_cast<double>(kept.size());
        }
        report.entries.push_back(std::move(r));
    }

    // Min-max normalization over the eligible pool; a degenerate dimension
    // contributes 0 to everyone.
    double sim_min = 0, sim_max = 0, eng_min = 0, eng_max = 0;
    bool first = true;
    for (const RankedKol& r : report.entries) {
        if (!r.eligible) continue;
        ++report.n_eligible;
        if (first) {
            sim_min = sim_max = r.sim_raw;
            eng_min = eng_max = r.eng_raw;
            first = false;
        } else {
            sim_min = std::min(sim_min, r.sim_raw);
            sim_max = std::max(sim_max, r.sim_raw);
            eng_min = std::min(eng_min, r.eng_raw);
            eng_max = std::max(eng_max, r.eng_raw);
        }
    }
    if (report.n_eligible == 0) {
        report.note = "all candidates filtered out";
        std::sort(report.entries.begin(), report.entries.end(),
                  [](const RankedKol& a, const RankedKol& b) { return a.handle < b.handle; });
        return report;
    }

    for (RankedKol& r : report.entries) {
        if (!r.eligible) continue;
        r.sim_norm = sim_max > sim_min ? (r.sim_raw - sim_min) / (sim_max - sim_min) : 0.0;
        r.eng_norm = eng_max > eng_min ? (r.eng_raw - eng_min) / (eng_max - eng_min) : 0.0;
        r.score = cfg.w_sim * r.sim_norm + cfg.w_eng * r.eng_norm;
    }

    // Priority tier outranks the rest; ties break by handle for a stable order.
    std::sort(report.entries.begin(), report.entries.end(),
              [](const RankedKol& a, const RankedKol& b) {
                  if (a.eligible != b.eligible) return a.eligible;
                  if (!a.eligible) return a.handle < b.handle;
                  if (a.priority != b.priority) return a.priority;
                  if (a.score != b.score) return a.score > b.score;
                  return a.handle < b.handle;
              });
    int rank = 0;
    for (RankedKol& r : report.entries)
        if (r.eligible) r.rank = ++rank;
    return report;
}

std::string rank_report_to_csv(const RankReport& report) {
    std::ostringstream out;
    out << "handle,eligible,sim_norm,eng_norm,score,rank\n";
    for (const RankedKol& r : report.entries)
        out << r.handle << ',' << (r.eligible ? 1 : 0) << ',' << util::format_double(r.sim_norm)
            << ',' << util::format_double(r.eng_norm) << ',' << util::format_double(r.score)
            << ',' << r.rank << '\n';
    return out.str();
}

std::vector<CandidateKol> candidates_from_json(const std::string& content) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("candidates json: ") + e.what());
    }
    if (!j.is_array()) throw ConfigError("candidates json: expected an array");
    std::vector<CandidateKol> out;
    for (const auto& cj : j) {
        CandidateKol c;
        c.handle = cj.at("handle").get<std::string>();
        c.followers = cj.value("followers", 0L);
        c.active_days = cj.value("active_days", 0L);
        c.mutual_overlap = cj.value("mutual_overlap", 0L);
        for (const auto& pj : cj.value("posts", nlohmann::json::array())) {
            CandidatePost p;
            p.likes = pj.value("likes", 0L);
            p.replies = pj.value("replies", 0L);
            p.retweets = pj.value("retweets", 0L);
            p.quotes = pj.value("quotes", 0L);
            p.views = pj.value("views", 0L);
            p.text_relevance_raw = pj.value("text_relevance_raw", 0.0);
            c.posts.push_back(p);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string events_to_csv(const std::vector<DiscourseEvent>& events) {
    std::ostringstream out;
    out << "kol_id,timestamp,ticker,sentiment,confidence\n";
    for (const DiscourseEvent& e : events)
        out << e.kol_id << ',' << util::format_datetime(e.timestamp) << ',' << e.ticker << ','
            << util::format_double(e.sentiment) << ',' << util::format_double(e.confidence)
            << '\n';
    return out.str();
}

std::vector<DiscourseEvent> events_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("events csv: empty file");
    std::vector<DiscourseEvent> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cols = util::split_csv_line(line);
        if (cols.size() != 5) throw ConfigError("events csv: expected 5 columns: " + line);
        DiscourseEvent e;
        e.kol_id = cols[0];
        e.timestamp = util::parse_datetime(cols[1]);
        e.ticker = cols[2];
        e.sentiment = util::parse_double(cols[3], "sentiment");
        e.confidence = util::parse_double(cols[4], "confidence");
        validate_event(e);
        out.push_back(std::move(e));
    }
    return out;
}

std::string signals_to_csv(const std::vector<AlignedSignal>& signals) {
    std::ostringstream out;
    out << "trading_day,ticker,kol_id,sentiment,confidence,a_raw,n_events,text_token\n";
    for (const AlignedSignal& s : signals)
        out << util::format_day(s.trading_day) << ',' << s.ticker << ',' << s.kol_id << ','
            << util::format_double(s.sentiment) << ',' << util::format_double(s.confidence) << ','
            << util::format_double(s.a_raw) << ',' << s.n_events << ',' << s.text_token << '\n';
    return out.str();
}

std::vector<AlignedSignal> signals_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("signals csv: empty file");
    std::vector<AlignedSignal> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cols = util::split_csv_line(line);
        if (cols.size() != 8) throw ConfigError("signals csv: expected 8 columns: " + line);
        AlignedSignal s;
        s.trading_day = util::parse_day(cols[0]);
        s.ticker = cols[1];
        s.kol_id = cols[2];
        s.sentiment = util::parse_double(cols[3], "sentiment");
        s.confidence = util::parse_double(cols[4], "confidence");
        s.a_raw = util::parse_double(cols[5], "a_raw");
        s.n_events = static_cast<int>(util::parse_long(cols[6], "n_events"));
        s.text_token = cols[7];
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace kicl::discourse

#include "kicl/replay.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kicl::replay {

void ReplayBuffer::rebuild_indices() {
    sig_index.clear();
    sil_index.clear();
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        if (std::fabs(transitions[i].baseline_action) >= tau_entry)
            sig_index.push_back(i);
        else
            sil_index.push_back(i);
    }
}

std::vector<double> embed_token(const std::string& token, std::size_t dim, std::uint64_t seed) {
    if (token.empty()) throw ConfigError("embed_token: empty token");
    if (dim < 1) throw ConfigError("embed_token: dim must be >= 1");

    std::uint64_t x = util::splitmix64(util::fnv1a64(token) ^ util::splitmix64(seed));
    std::vector<double> v(dim);
    auto next_unit = [&x]() {
        x = util::splitmix64(x);
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    };
    for (std::size_t i = 0; i < dim; i += 2) {
        double u1 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        v[i] = r * std::cos(a);
        if (i + 1 < dim) v[i + 1] = r * std::sin(a);
    }
    double norm = 0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        v[0] = 1.0;
        return v;
    }
    for (double& c : v) c /= norm;
    return v;
}

ReplayBuffer build_replay(const std::vector<market::TickerSeries>& bars,
                          const std::vector<discourse::AlignedSignal>& signals,
                          const ReplayConfig& rcfg, const portfolio::PortfolioConfig& pcfg) {
    ReplayBuffer buf;
    buf.layout.d_text = rcfg.d_text;
    buf.layout.d_ticker = rcfg.d_ticker;
    buf.tau_entry = pcfg.tau_entry;

    std::map<std::pair<std::string, int>, const discourse::AlignedSignal*> by_key;
    for (const auto& s : signals) by_key[{s.ticker, s.trading_day}] = &s;

    const StateLayout& L = buf.layout;
    const std::size_t dim = L.dim();
    const std::uint64_t text_seed = util::splitmix64(rcfg.embed_seed ^ util::fnv1a64("text"));
    const std::uint64_t tick_seed = util::splitmix64(rcfg.embed_seed ^ util::fnv1a64("ticker"));

    for (const auto& series : bars) {
        market::validate_bars(series);
        const std::size_t n = series.bars.size();
        if (n < market::kFactorWarmupBars + 1)
            throw ConfigError("build_replay: " + series.ticker +
                              " has insufficient bars for factor warmup");

        std::vector<double> ticker_emb = embed_token(series.ticker, L.d_ticker, tick_seed);
        std::vector<double> text_emb(L.d_text, 0.0);
        double sent_c = 0, conf_c = 0;
        long silence = 0;
        std::string kol_c;
        portfolio::PortfolioState anchor_state;
        double w_beh = 0, w_beh_prev = 0;

        struct DayRecord {
            std::vector<double> state;
            double a_base = 0, w_beh = 0;
            bool fresh = false;
            int day = 0;
            std::string kol;
        };
        std::vector<DayRecord> records;
        records.reserve(n - market::kFactorWarmupBars + 1);

        for (std::size_t i = 0; i < n; ++i) {
            const int day = series.bars[i].trading_day;
            const discourse::AlignedSignal* sig = nullptr;
            if (auto it = by_key.find({series.ticker, day}); it != by_key.end()) sig = it->second;

            // Anchor path through the portfolio layer: fresh scores re-anchor,
            // silence days carry with decay.
            std::map<std::string, double> fresh_scores;
            if (sig && sig->a_raw != 0.0) fresh_scores[series.ticker] = sig->a_raw;
            anchor_state = portfolio::alloc(fresh_scores, anchor_state, pcfg);
            double a_base = 0;
            if (auto it = anchor_state.weights.find(series.ticker); it != anchor_state.weights.end())
                a_base = it->second;

            if (sig) {
                silence = 0;
                sent_c = sig->sentiment;
                conf_c = sig->confidence;
                kol_c = sig->kol_id;
                text_emb = embed_token(sig->text_token, L.d_text, text_seed);
            } else {
                ++silence;
            }

            w_beh_prev = w_beh;
            w_beh = (1.0 - rcfg.behavior_alpha) * w_beh + rcfg.behavior_alpha * a_base;

            if (i + 1 < market::kFactorWarmupBars) continue;  // warmup rows dropped

            DayRecord rec;
            rec.day = day;
            rec.fresh = sig != nullptr;
            rec.a_base = a_base;
            rec.w_beh = w_beh;
            rec.kol = kol_c;
            rec.state.resize(dim);
            std::copy(text_emb.begin(), text_emb.end(), rec.state.begin());
            std::copy(ticker_emb.begin(), ticker_emb.end(), rec.state.begin() + L.d_text);
            rec.state[L.idx_sentiment()] = sent_c;
            rec.state[L.idx_confidence()] = conf_c;
            rec.state[L.idx_p_prev()] = w_beh_prev;
            rec.state[L.idx_silence()] = static_cast<double>(silence);
            market::FactorVector f = market::compute_factors(series.bars, i);
            auto fa = f.as_array();
            std::copy(fa.begin(), fa.end(), rec.state.begin() + L.idx_mkt());
            records.push_back(std::move(rec));
        }

        // Pair consecutive day records into transitions; the position set on
        // day t earns the day t -> t+1 return.
        const std::size_t first_bar = market::kFactorWarmupBars - 1;
        for (std::size_t k = 0; k + 1 < records.size(); ++k) {
            const std::size_t bar_idx = first_bar + k;
            Transition t;
            t.ticker = series.ticker;
            t.trading_day = records[k].day;
            t.kol_id = records[k].kol;
            t.s = records[k].state;
            t.s_next = records[k + 1].state;
            t.baseline_action = records[k].a_base;
            t.baseline_action_next = records[k + 1].a_base;
            t.behavior_action = records[k].w_beh;
            t.fresh_event = records[k].fresh;
            t.ret_next = series.bars[bar_idx + 1].close / series.bars[bar_idx].close - 1.0;
            double w_prev = k == 0 ? records[0].state[L.idx_p_prev()] : records[k - 1].w_beh;
            t.reward = records[k].w_beh * t.ret_next -
                       pcfg.cost_rate * std::fabs(records[k].w_beh - w_prev);
            t.terminal = k + 2 == records.size();
            buf.transitions.push_back(std::move(t));
        }
    }
    buf.rebuild_indices();
    return buf;
}

Split chronological_split(const ReplayBuffer& buffer, double train_ratio, double val_ratio) {
    std::vector<int> days;
    for (const auto& t : buffer.transitions) days.push_back(t.trading_day);
    std::sort(days.begin(), days.end());
    days.erase(std::unique(days.begin(), days.end()), days.end());
    const std::size_t n = days.size();
    if (n < 3) throw ConfigError("chronological_split: need at least 3 distinct trading days");

    auto b1 = static_cast<std::size_t>(std::lround(train_ratio * static_cast<double>(n)));
    auto b2 = static_cast<std::size_t>(std::lround((train_ratio + val_ratio) * static_cast<double>(n)));
    b1 = std::clamp<std::size_t>(b1, 1, n - 2);
    b2 = std::clamp<std::size_t>(b2, b1 + 1, n - 1);

    const int last_train_day = days[b1 - 1];
    const int last_val_day = days[b2 - 1];

    Split split;
    for (std::size_t i = 0; i < buffer.transitions.size(); ++i) {
        int d = buffer.transitions[i].trading_day;
        if (d <= last_train_day)
            split.train.push_back(i);
        else if (d <= last_val_day)
            split.val.push_back(i);
        else
            split.test.push_back(i);
    }
    return split;
}

PartitionStats partition_from_counts(std::size_t n_sig, std::size_t n_sil) {
    PartitionStats st;
    st.n_sig = n_sig;
    st.n_sil = n_sil;
    if (n_sig + n_sil == 0) throw ConfigError("partition_stats: empty buffer");
    st.ratio = n_sig == 0 ? std::numeric_limits<double>::infinity()
                          : static_cast<double>(n_sil) / static_cast<double>(n_sig);
    st.pct_sig = 100.0 * static_cast<double>(n_sig) / static_cast<double>(n_sig + n_sil);
    return st;
}

PartitionStats partition_stats(const ReplayBuffer& buffer) {
    return partition_from_counts(buffer.sig_index.size(), buffer.sil_index.size());
}

std::vector<std::size_t> order_by_ticker_day(const ReplayBuffer& buffer,
                                             const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> idx = subset;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ta = buffer.transitions[a];
        const auto& tb = buffer.transitions[b];
        if (ta.ticker != tb.ticker) return ta.ticker < tb.ticker;
        return ta.trading_day < tb.trading_day;
    });
    return idx;
}

std::vector<std::size_t> order_by_day_ticker(const ReplayBuffer& buffer,
                                             const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> idx = subset;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ta = buffer.transitions[a];
        const auto& tb = buffer.transitions[b];
        if (ta.trading_day != tb.trading_day) return ta.trading_day < tb.trading_day;
        return ta.ticker < tb.ticker;
    });
    return idx;
}

void dump(const ReplayBuffer& buffer, const std::string& dir) {
    std::filesystem::create_directories(dir);

    nlohmann::json manifest;
    manifest["version"] = 1;
    manifest["state_dim"] = buffer.layout.dim();
    manifest["d_text"] = buffer.layout.d_text;
    manifest["d_ticker"] = buffer.layout.d_ticker;
    manifest["tau_entry"] = buffer.tau_entry;
    manifest["n_transitions"] = buffer.transitions.size();
    manifest["n_sig"] = buffer.sig_index.size();
    manifest["n_sil"] = buffer.sil_index.size();
    util::write_file(dir + "/manifest.json", manifest.dump(2) + "\n");

    std::ostringstream tcsv;
    tcsv << "ticker,trading_day,kol_id,behavior_action,baseline_action,baseline_action_next,"
            "reward,ret_next,fresh_event,terminal\n";
    for (const auto& t : buffer.transitions)
        tcsv << t.ticker << ',' << t.trading_day << ',' << t.kol_id << ','
             << util::format_double(t.behavior_action) << ','
             << util::format_double(t.baseline_action) << ','
             << util::format_double(t.baseline_action_next) << ','
             << util::format_double(t.reward) << ',' << util::format_double(t.ret_next) << ','
             << (t.fresh_event ? 1 : 0) << ',' << (t.terminal ? 1 : 0) << '\n';
    util::write_file(dir + "/transitions.csv", tcsv.str());

    const std::size_t dim = buffer.layout.dim();
    std::ostringstream scsv;
    for (std::size_t j = 0; j < dim; ++j) scsv << (j ? "," : "") << "s_" << j;
    for (std::size_t j = 0; j < dim; ++j) scsv << ",next_" << j;
    scsv << '\n';
    for (const auto& t : buffer.transitions) {
        for (std::size_t j = 0; j < dim; ++j)
            scsv << (j ? "," : "") << util::format_double(t.s[j]);
        for (std::size_t j = 0; j < dim; ++j) scsv << ',' << util::format_double(t.s_next[j]);
        scsv << '\n';
    }
    util::write_file(dir + "/states.csv", scsv.str());
}

ReplayBuffer load(const std::string& dir) {
    nlohmann::json manifest = nlohmann::json::parse(util::read_file(dir + "/manifest.json"));
    ReplayBuffer buf;
    buf.layout.d_text = manifest.at("d_text").get<std::size_t>();
    buf.layout.d_ticker = manifest.at("d_ticker").get<std::size_t>();
    buf.tau_entry = manifest.at("tau_entry").get<double>();
    const std::size_t dim = buf.layout.dim();
    if (manifest.at("state_dim").get<std::size_t>() != dim)
        throw ConfigError("replay load: manifest state_dim mismatch");

    std::istringstream tin(util::read_file(dir + "/transitions.csv"));
    std::istringstream sin(util::read_file(dir + "/states.csv"));
    std::string tline, sline;
    std::getline(tin, tline);
    std::getline(sin, sline);
    while (std::getline(tin, tline)) {
        if (tline.empty()) continue;
        if (!std::getline(sin, sline))
            throw ConfigError("replay load: states.csv shorter than transitions.csv");
        auto tc = util::split_csv_line(tline);
        auto sc = util::split_csv_line(sline);
        if (tc.size() != 10) throw ConfigError("replay load: bad transitions row: " + tline);
        if (sc.size() != 2 * dim) throw ConfigError("replay load: bad states row width");
        Transition t;
        t.ticker = tc[0];
        t.trading_day = static_cast<int>(util::parse_long(tc[1], "trading_day"));
        t.kol_id = tc[2];
        t.behavior_action = util::parse_double(tc[3], "behavior_action");
        t.baseline_action = util::parse_double(tc[4], "baseline_action");
        t.baseline_action_next = util::parse_double(tc[5], "baseline_action_next");
        t.reward = util::parse_double(tc[6], "reward");
        t.ret_next = util::parse_double(tc[7], "ret_next");
        t.fresh_event = tc[8] == "1";
        t.terminal = tc[9] == "1";
        t.s.resize(dim);
        t.s_next.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) t.s[j] = util::parse_double(sc[j], "state");
        for (std::size_t j = 0; j < dim; ++j)
            t.s_next[j] = util::parse_double(sc[dim + j], "state");
        buf.transitions.push_back(std::move(t));
    }
    buf.rebuild_indices();
    if (buf.transitions.size() != manifest.at("n_transitions").get<std::size_t>())
        throw ConfigError("replay load: transition count mismatch with manifest");
    return buf;
}

}  // namespace kicl::replay

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kicl/discourse.hpp"
#include "kicl/market.hpp"
#include "kicl/portfolio.hpp"

namespace kicl::replay {

// State vector layout: [text_emb | ticker_emb | core(4) | market(6)], with
// core = [sentiment, confidence, last_position, silence_days].
struct StateLayout {
    std::size_t d_text = 16, d_ticker = 16;

    std::size_t dim() const { return d_text + d_ticker + 4 + 6; }
    std::size_t idx_core() const { return d_text + d_ticker; }
    std::size_t idx_sentiment() const { return idx_core(); }
    std::size_t idx_confidence() const { return idx_core() + 1; }
    std::size_t idx_p_prev() const { return idx_core() + 2; }
    std::size_t idx_silence() const { return idx_core() + 3; }
    std::size_t idx_mkt() const { return idx_core() + 4; }
};

struct Transition {
    std::vector<double> s, s_next;
    double behavior_action = 0;       // fitted offline action target
    double baseline_action = 0;       // stored intent anchor
    double baseline_action_next = 0;  // anchor at s_next (values net bootstrap)
    double reward = 0;
    double ret_next = 0;  // next-day asset return behind the reward
    bool fresh_event = false;
    bool terminal = false;
    int trading_day = 0;
    std::string ticker, kol_id;
};

struct ReplayConfig {
    double behavior_alpha = 0.3;  // exponential smoothing of the anchor path
    std::size_t d_text = 16, d_ticker = 16;
    std::uint64_t embed_seed = 0;
};

struct ReplayBuffer {
    StateLayout layout;
    double tau_entry = 5e-4;
    std::vector<Transition> transitions;
    std::vector<std::size_t> sig_index, sil_index;  // partition by |a_base| >= tau_entry

    void rebuild_indices();
};

// Deterministic hash-seeded unit-norm embedding; platform-stable.
std::vector<double> embed_token(const std::string& token, std::size_t dim, std::uint64_t seed);

ReplayBuffer build_replay(const std::vector<market::TickerSeries>& bars,
                          const std::vector<discourse::AlignedSignal>& signals,
                          const ReplayConfig& rcfg, const portfolio::PortfolioConfig& pcfg);

struct Split {
    std::vector<std::size_t> train, val, test;
};

// Split on trading-day boundaries nearest the ratio quantiles; a day never
// straddles two splits.
Split chronological_split(const ReplayBuffer& buffer, double train_ratio = 0.6,
                          double val_ratio = 0.2);

struct PartitionStats {
    std::size_t n_sig = 0, n_sil = 0;
    double ratio = 0;    // n_sil / n_sig
    double pct_sig = 0;  // percent of all transitions
};

PartitionStats partition_stats(const ReplayBuffer& buffer);
PartitionStats partition_from_counts(std::size_t n_sig, std::size_t n_sil);

// Index orderings for decode/eval.
std::vector<std::size_t> order_by_ticker_day(const ReplayBuffer& buffer,
                                             const std::vector<std::size_t>& subset);
std::vector<std::size_t> order_by_day_ticker(const ReplayBuffer& buffer,
                                             const std::vector<std::size_t>& subset);

// CSV-pair dump (transitions.csv + states.csv) plus manifest.json.
void dump(const ReplayBuffer& buffer, const std::string& dir);
ReplayBuffer load(const std::string& dir);

}  // namespace kicl::replay

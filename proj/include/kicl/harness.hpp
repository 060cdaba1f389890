#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kicl/baselines.hpp"
#include "kicl/discourse.hpp"
#include "kicl/market.hpp"
#include "kicl/metrics.hpp"
#include "kicl/policy.hpp"
#include "kicl/portfolio.hpp"
#include "kicl/replay.hpp"

namespace kicl::harness {

struct MarketStageConfig {
    bool synth = true;
    std::string csv_path;
    market::MarketGenConfig gen;
};

struct DiscourseStageConfig {
    bool synth = true;
    std::string csv_path;
    discourse::DiscourseGenConfig gen;
};

struct SplitConfig {
    double train = 0.6, val = 0.2;
};

struct MetricsConfig {
    double tau_act = 5e-4;
    int horizon_cap = 20;
};

struct RunConfig {
    std::uint64_t seed = 7;
    std::string out_dir = "runs/out";
    MarketStageConfig market;
    DiscourseStageConfig discourse;
    portfolio::PortfolioConfig portfolio;
    double behavior_alpha = 0.3;
    std::size_t d_text = 16, d_ticker = 16;
    SplitConfig split;
    policy::KiclConfig kicl;
    baselines::MethodConstants constants;
    MetricsConfig metrics;
    std::vector<std::string> methods = {"RMB", "HAP", "BC",  "SUP_DELTA", "IQL",
                                        "AWAC", "CQL", "TD3BC", "KICL"};
    std::string eval_split = "test";
    std::string methods_cfg;  // optional methods.cfg path

    void validate() const;
    std::string kol_label() const;
};

RunConfig config_from_json(const std::string& json_text);
std::string config_to_json(const RunConfig& cfg);

// Reads the file, applies methods.cfg when configured, prefixes a relative
// out_dir with $KICL_OUT_ROOT.
RunConfig load_config(const std::string& path);

struct StageRecord {
    std::string name;
    std::uint64_t input_hash = 0;
    bool skipped = false;
    long wall_ms = 0;
    std::map<std::string, std::uint64_t> outputs;  // path -> content hash
};

class Pipeline {
public:
    explicit Pipeline(RunConfig cfg);

    void run();  // gen/ingest -> factors -> signals -> replay -> per-method -> report

    void stage_market();
    void stage_factors();
    void stage_discourse();
    void stage_replay();
    void stage_train(const std::string& method);
    void stage_decode(const std::string& method);
    void stage_eval(const std::string& method);
    void stage_report();

    void write_manifest() const;
    const std::vector<StageRecord>& stages() const { return records_; }
    const RunConfig& config() const { return cfg_; }
    std::string method_dir(const std::string& method) const;

private:
    bool begin_stage(const std::string& name, std::uint64_t input_hash,
                     const std::vector<std::string>& outputs);
    void end_stage(const std::vector<std::string>& outputs);
    std::uint64_t out_hash(const std::string& rel) const;
    std::string abs_path(const std::string& rel) const;

    const replay::ReplayBuffer& buffer();
    replay::Split split_indices();
    const std::vector<std::size_t>& eval_subset(replay::Split& split);

    RunConfig cfg_;
    std::vector<StageRecord> records_;
    StageRecord* current_ = nullptr;
    long long stage_start_ms_ = 0;
    bool buffer_loaded_ = false;
    replay::ReplayBuffer buffer_;
};

// Constructive ablation ladder plus the hard-scope sweep, sharing one data
// pipeline.
struct AblationRow {
    std::string variant;
    bool anchor = true, policy_shell = false, rl = false, regime = false, hard = false;
    metrics::EvalReport report;
    metrics::AblationDeltas deltas;
};

struct AblationResult {
    std::vector<AblationRow> ladder;      // Baseline .. Full
    std::vector<AblationRow> hard_scope;  // both / train_only / infer_only / none
};

AblationResult run_ablation(const RunConfig& cfg);
std::string ablation_to_csv(const AblationResult& result);

struct ProfitLinkedRow {
    std::string method;
    metrics::ProfitLinkedBetrayal diag;
};

// One row per method with at least one excess-positive event; flagged methods
// are returned but not written.
std::vector<ProfitLinkedRow> profit_linked_rows(const RunConfig& cfg,
                                                const std::vector<std::string>& methods);
std::string profit_linked_to_csv(const std::vector<ProfitLinkedRow>& rows);

}  // namespace kicl::harness

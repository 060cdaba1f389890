#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kicl/nn.hpp"
#include "kicl/portfolio.hpp"
#include "kicl/replay.hpp"

namespace kicl::policy {

enum class HardScope { Both, TrainOnly, InferOnly, None };

const char* hard_scope_name(HardScope s);
HardScope hard_scope_from_name(const std::string& s);

struct KiclConfig {
    double gamma = 0.99;
    double expectile = 0.7;
    double beta = 3.0;
    double lambda_fid = 0.03;
    double actor_align = 0.04;
    double lambda_ent = 0.02;
    double lambda_rev = 0.05;
    double tau_entry = 5e-4;
    double delta_clamp = 1.8;
    int bc_epochs = 10;
    double bc_anchor_weight = 0.03;
    long iql_steps = 500;  // desk-scale default; see README for the full-size value
    int batch = 256;
    double lr_actor = 3e-4, lr_critic = 3e-4, lr_value = 3e-4;
    double soft_rate = 0.005;
    double adv_clip = 20.0;
    int log_interval = 200;
    HardScope hard_scope = HardScope::Both;
    bool regime_split = true;
    bool use_market_factors = true;
    std::vector<std::size_t> hidden = {64, 64, 32};

    void validate() const;
};

// Dual-head residual actor plus IQL-style critic/value pair.
struct KiclModel {
    nn::MlpParams backbone;     // state -> representation (ReLU output)
    nn::MlpParams head_signal;  // tanh head, scaled by delta_clamp
    nn::MlpParams head_decay;
    nn::MlpParams critic;       // [state, a_base, delta] -> Q
    nn::MlpParams value;        // [state, a_base] -> V
    nn::MlpParams target_critic;
    KiclConfig cfg;
    std::size_t state_dim = 0;

    static KiclModel init(std::size_t state_dim, const KiclConfig& cfg, std::uint64_t seed);
};

bool signal_regime(double a_base, double tau_entry);

// Residual proposal; the regime flag routes between the two heads when the
// split is enabled.
double propose_delta(const KiclModel& model, std::span<const double> state, bool signal);

// a_base + delta under an active signal, lifecycle delta alone under silence.
double compose_action(double a_base, double delta, bool signal);

// Admissible-direction projection. Signal: reversals are zeroed. Silence with
// a flat book: zero. Silence with a carried position: hold up to |p_prev| in
// the carried direction, never increase silent exposure.
double hard_project(double a, double a_base, double p_prev, double tau_entry);

// Deviation barrier test: Q(s,a) - Q(s,a_base) must exceed the penalty-
// weighted distance of the deviation.
bool barrier_admits(double q_dev, double q_base, double a, double a_base, const KiclConfig& cfg);
double deviation_barrier(double a, double a_base, const KiclConfig& cfg);

struct TrainLogRow {
    long step = 0;
    double value_loss = 0, critic_loss = 0, actor_loss = 0;
    double fid = 0, rev = 0, ent = 0;
    double mean_abs_delta = 0;
};

std::string train_log_to_csv(const std::vector<TrainLogRow>& rows);

class Trainer {
public:
    Trainer(const replay::ReplayBuffer& buffer, std::vector<std::size_t> train_idx,
            const KiclConfig& cfg, std::uint64_t seed);

    // MSE of the composed action against the behavior action plus the anchor
    // pull on residuals.
    void bc_pretrain();

    std::vector<TrainLogRow> iql_train();

    void train() {
        bc_pretrain();
        if (cfg_.iql_steps > 0) iql_train();
    }

    KiclModel& model() { return model_; }
    const KiclModel& model() const { return model_; }
    const std::vector<TrainLogRow>& log() const { return log_; }

    // last-checkpoint destination for divergence aborts
    void set_checkpoint_dir(std::string dir) { checkpoint_dir_ = std::move(dir); }

private:
    struct Batch {
        nn::Mat s, s_next;
        std::vector<double> a_base, a_base_next, behavior, reward, p_prev, delta_data;
        std::vector<char> terminal, signal;
        std::size_t size = 0;
    };

    Batch gather(const std::vector<std::size_t>& idx) const;
    void mask_market(nn::Mat& s) const;

    struct ActorForward {
        nn::ForwardCache cache_backbone, cache_sig, cache_dec;
        nn::Mat out_sig, out_dec;
        std::vector<double> delta;
    };
    ActorForward actor_forward(const nn::Mat& s, const std::vector<char>& signal_mask);
    void actor_backward(const ActorForward& fw, const std::vector<char>& signal_mask,
                        const std::vector<double>& d_delta);

    void abort_with_checkpoint(const std::string& what);

    const replay::ReplayBuffer& buffer_;
    std::vector<std::size_t> train_idx_;
    KiclConfig cfg_;
    KiclModel model_;
    nn::AdamState opt_backbone_, opt_head_sig_, opt_head_dec_, opt_critic_, opt_value_;
    Rng sample_rng_;
    std::vector<TrainLogRow> log_;
    std::string checkpoint_dir_;
};

// Decoded action stream over a replay subset, in (ticker, day) order.
struct DecodeStream {
    std::vector<std::size_t> idx;  // transition indices, (ticker, day) ordered
    std::vector<double> action;    // executed per-asset-capped action
    std::vector<double> p_prev;    // position entering the step
};

// Rolls the policy over the subset. Positions live only while their anchor is
// active; when projection is on this makes every silence step flat, which is
// what drives UER and DRR to exact zero.
DecodeStream decode(const KiclModel& model, const replay::ReplayBuffer& buffer,
                    const std::vector<std::size_t>& subset, HardScope scope,
                    const portfolio::PortfolioConfig& pcfg);

// Checkpoint: nets in a fixed order plus a JSON manifest side file.
void save_model(const KiclModel& model, const std::string& path, std::uint64_t seed,
                long steps_done);
KiclModel load_model(const std::string& path);

std::string kicl_config_to_json_string(const KiclConfig& cfg);
KiclConfig kicl_config_from_json_string(const std::string& text);

}  // namespace kicl::policy

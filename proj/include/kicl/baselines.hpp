#pragma once

#include <string>
#include <vector>

#include "kicl/policy.hpp"

namespace kicl::baselines {

enum class Method { RMB, HAP, BC, SupDelta, IQL, AWAC, CQL, TD3BC, KICL };

const char* method_name(Method m);
Method method_from_name(const std::string& s);
bool method_needs_training(Method m);

struct MethodConstants {
    double cql_alpha = 1.0, cql_temperature = 1.0;
    int cql_samples = 10;
    double awac_beta = 1.0, awac_clip = 20.0;
    double td3bc_bc_weight = 1.0, td3bc_alpha = 2.5;
    double td3bc_policy_noise = 0.2, td3bc_noise_clip = 0.5;
    int td3bc_policy_delay = 2;
    int hap_hold_days = 10;
    double hap_fixed_size = 0.1;
};

// Zero-residual anchor mirror: decode with delta == 0 through the shared
// pipeline. Betrayal metrics are zero on any input by construction.
policy::DecodeStream run_rmb(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& subset,
                             const portfolio::PortfolioConfig& pcfg,
                             const policy::KiclConfig& cfg);

// Hold-after-post heuristic: fixed-size position in the fresh signal's
// direction for exactly hold_days, then flat.
policy::DecodeStream run_hap(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& subset,
                             const portfolio::PortfolioConfig& pcfg, double tau_entry,
                             int hold_days, double fixed_size);

// Stripped-trainer configurations. BC and IQL collapse the full trainer onto
// the published forms; SUP-DELTA keeps the anchor term and regime split and
// relies on decode-time projection.
policy::KiclConfig bc_config(policy::KiclConfig base);
policy::KiclConfig sup_delta_config(policy::KiclConfig base);
policy::KiclConfig iql_config(policy::KiclConfig base);

// Decode scope per method (projection is a KICL/SUP-DELTA mechanism).
policy::HardScope decode_scope(Method m, const policy::KiclConfig& cfg);

// ---- full-action offline RL (AWAC / CQL / TD3+BC) ----

struct ActorCriticModel {
    nn::MlpParams actor;  // tanh head scaled by action_bound
    nn::MlpParams critic1, critic2;
    nn::MlpParams target_actor, target_critic1, target_critic2;
    double action_bound = 0.2;
    std::size_t state_dim = 0;
    bool twin = false;

    static ActorCriticModel init(std::size_t state_dim, const std::vector<std::size_t>& hidden,
                                 double action_bound, bool twin, std::uint64_t seed);
};

struct FullActionTrainConfig {
    long steps = 500;
    int batch = 256;
    double lr = 3e-4;
    double gamma = 0.99;
    double soft_rate = 0.005;
    int log_interval = 200;
    std::vector<std::size_t> hidden = {64, 64, 32};
    MethodConstants constants;
};

struct FullActionResult {
    ActorCriticModel model;
    std::vector<policy::TrainLogRow> log;
};

FullActionResult train_awac(const replay::ReplayBuffer& buffer,
                            const std::vector<std::size_t>& train_idx,
                            const FullActionTrainConfig& cfg, std::uint64_t seed);
FullActionResult train_cql(const replay::ReplayBuffer& buffer,
                           const std::vector<std::size_t>& train_idx,
                           const FullActionTrainConfig& cfg, std::uint64_t seed);
FullActionResult train_td3bc(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& train_idx,
                             const FullActionTrainConfig& cfg, std::uint64_t seed);

double full_action_act(const ActorCriticModel& model, std::span<const double> state);

policy::DecodeStream decode_full_action(const ActorCriticModel& model,
                                        const replay::ReplayBuffer& buffer,
                                        const std::vector<std::size_t>& subset,
                                        const portfolio::PortfolioConfig& pcfg);

void save_full_action_model(const ActorCriticModel& model, const std::string& path);
ActorCriticModel load_full_action_model(const std::string& path);

}  // namespace kicl::baselines

#include "kicl/baselines.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "kicl/losses.hpp"

namespace kicl::baselines {

const char* method_name(Method m) {
    switch (m) {
        case Method::RMB: return "RMB";
        case Method::HAP: return "HAP";
        case Method::BC: return "BC";
        case Method::SupDelta: return "SUP_DELTA";
        case Method::IQL: return "IQL";
        case Method::AWAC: return "AWAC";
        case Method::CQL: return "CQL";
        case Method::TD3BC: return "TD3BC";
        case Method::KICL: return "KICL";
    }
    return "RMB";
}

Method method_from_name(const std::string& s) {
    for (Method m : {Method::RMB, Method::HAP, Method::BC, Method::SupDelta, Method::IQL,
                     Method::AWAC, Method::CQL, Method::TD3BC, Method::KICL})
        if (s == method_name(m)) return m;
    throw ConfigError("unknown method: " + s);
}

bool method_needs_training(Method m) { return m != Method::RMB && m != Method::HAP; }

policy::DecodeStream run_rmb(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& subset,
                             const portfolio::PortfolioConfig& pcfg,
                             const policy::KiclConfig& cfg) {
    policy::KiclModel zero = policy::KiclModel::init(buffer.layout.dim(), cfg, 0);
    for (nn::MlpParams* net : {&zero.backbone, &zero.head_signal, &zero.head_decay, &zero.critic,
                               &zero.value, &zero.target_critic}) {
        for (auto& w : net->w) std::fill(w.a.begin(), w.a.end(), 0.0);
        for (auto& b : net->b) std::fill(b.begin(), b.end(), 0.0);
        ++net->revision;
    }
    return policy::decode(zero, buffer, subset, policy::HardScope::Both, pcfg);
}

policy::DecodeStream run_hap(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& subset,
                             const portfolio::PortfolioConfig& pcfg, double tau_entry,
                             int hold_days, double fixed_size) {
    if (hold_days < 1) throw ConfigError("run_hap: hold_days must be >= 1");
    policy::DecodeStream out;
    out.idx = replay::order_by_ticker_day(buffer, subset);
    out.action.resize(out.idx.size());
    out.p_prev.resize(out.idx.size());

    std::string cur_ticker;
    int remaining = 0;
    double dir = 0, p_carry = 0;
    for (std::size_t k = 0; k < out.idx.size(); ++k) {
        const replay::Transition& t = buffer.transitions[out.idx[k]];
        if (t.ticker != cur_ticker) {
            cur_ticker = t.ticker;
            remaining = 0;
            dir = 0;
            p_carry = 0;
        }
        if (t.fresh_event && std::fabs(t.baseline_action) >= tau_entry) {
            dir = t.baseline_action > 0 ? 1.0 : -1.0;
            remaining = hold_days;
        }
        double a = 0;
        if (remaining > 0) {
            a = dir * fixed_size;
            --remaining;
        }
        a = std::clamp(a, -pcfg.per_asset_cap, pcfg.per_asset_cap);
        out.action[k] = a;
        out.p_prev[k] = p_carry;
        p_carry = a;
    }
    return out;
}

policy::KiclConfig bc_config(policy::KiclConfig base) {
    base.iql_steps = 0;
    base.bc_anchor_weight = 0.0;
    base.lambda_fid = base.lambda_rev = base.lambda_ent = base.actor_align = 0.0;
    base.hard_scope = policy::HardScope::None;
    base.regime_split = false;
    return base;
}

policy::KiclConfig sup_delta_config(policy::KiclConfig base) {
    base.iql_steps = 0;
    base.hard_scope = policy::HardScope::InferOnly;
    return base;
}

policy::KiclConfig iql_config(policy::KiclConfig base) {
    base.bc_epochs = 0;
    base.bc_anchor_weight = 0.0;
    base.lambda_fid = base.lambda_rev = base.lambda_ent = base.actor_align = 0.0;
    base.hard_scope = policy::HardScope::None;
    base.regime_split = false;
    return base;
}

policy::HardScope decode_scope(Method m, const policy::KiclConfig& cfg) {
    switch (m) {
        case Method::KICL: return cfg.hard_scope;
        case Method::SupDelta: return policy::HardScope::InferOnly;
        default: return policy::HardScope::None;
    }
}

// ---- full-action methods ----

ActorCriticModel ActorCriticModel::init(std::size_t state_dim,
                                        const std::vector<std::size_t>& hidden,
                                        double action_bound, bool twin, std::uint64_t seed) {
    Rng rng = Rng::substream(seed, "init");
    ActorCriticModel m;
    m.state_dim = state_dim;
    m.action_bound = action_bound;
    m.twin = twin;

    std::vector<std::size_t> actor_sizes{state_dim};
    actor_sizes.insert(actor_sizes.end(), hidden.begin(), hidden.end());
    actor_sizes.push_back(1);
    m.actor = nn::MlpParams::init(actor_sizes, nn::Head::Tanh, rng);

    std::vector<std::size_t> critic_sizes{state_dim + 1};
    critic_sizes.insert(critic_sizes.end(), hidden.begin(), hidden.end());
    critic_sizes.push_back(1);
    m.critic1 = nn::MlpParams::init(critic_sizes, nn::Head::Linear, rng);
    m.critic2 = twin ? nn::MlpParams::init(critic_sizes, nn::Head::Linear, rng) : m.critic1;
    m.target_actor = m.actor;
    m.target_critic1 = m.critic1;
    m.target_critic2 = m.critic2;
    return m;
}

namespace {

struct FullBatch {
    nn::Mat s, s_next;
    std::vector<double> action, reward;
    std::vector<char> terminal;
    std::size_t size = 0;
};

FullBatch gather_full(const replay::ReplayBuffer& buffer, const std::vector<std::size_t>& idx) {
    const std::size_t dim = buffer.layout.dim();
    FullBatch b;
    b.size = idx.size();
    b.s = nn::Mat(b.size, dim);
    b.s_next = nn::Mat(b.size, dim);
    b.action.resize(b.size);
    b.reward.resize(b.size);
    b.terminal.resize(b.size);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const replay::Transition& t = buffer.transitions[idx[k]];
        std::copy(t.s.begin(), t.s.end(), b.s.a.begin() + k * dim);
        std::copy(t.s_next.begin(), t.s_next.end(), b.s_next.a.begin() + k * dim);
        b.action[k] = t.behavior_action;
        b.reward[k] = t.reward;
        b.terminal[k] = t.terminal ? 1 : 0;
    }
    return b;
}

nn::Mat concat_action(const nn::Mat& s, const std::vector<double>& a) {
    nn::Mat out(s.rows, s.cols + 1);
    for (std::size_t i = 0; i < s.rows; ++i) {
        std::copy(s.a.begin() + i * s.cols, s.a.begin() + (i + 1) * s.cols,
                  out.a.begin() + i * out.cols);
        out(i, s.cols) = a[i];
    }
    return out;
}

std::vector<double> col0(const nn::Mat& m) {
    std::vector<double> v(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) v[i] = m(i, 0);
    return v;
}

std::vector<double> actor_act(const nn::MlpParams& actor, const nn::Mat& s, double bound,
                              nn::ForwardCache* cache = nullptr) {
    nn::Mat out = nn::forward(actor, s, cache);
    std::vector<double> a(out.rows);
    for (std::size_t i = 0; i < out.rows; ++i) a[i] = bound * out(i, 0);
    return a;
}

std::vector<std::size_t> sample_batch(Rng& rng, const std::vector<std::size_t>& pool, int batch) {
    std::vector<std::size_t> idx(batch);
    for (auto& i : idx) i = pool[rng.uniform_index(pool.size())];
    return idx;
}

void log_row(std::vector<policy::TrainLogRow>& log, long step, long total, int interval,
             double critic_loss, double actor_loss, double mean_abs) {
    if (step % interval == 0 || step == total) {
        policy::TrainLogRow row;
        row.step = step;
        row.critic_loss = critic_loss;
        row.actor_loss = actor_loss;
        row.mean_abs_delta = mean_abs;
        log.push_back(row);
    }
}

}  // namespace

FullActionResult train_awac(const replay::ReplayBuffer& buffer,
                            const std::vector<std::size_t>& train_idx,
                            const FullActionTrainConfig& cfg, std::uint64_t seed) {
    if (train_idx.empty()) throw ConfigError("train_awac: empty train split");
    const double cap = 0.2;
    FullActionResult res;
    res.model = ActorCriticModel::init(buffer.layout.dim(), cfg.hidden, cap, false, seed);
    ActorCriticModel& m = res.model;
    nn::AdamState opt_actor = nn::AdamState::like(m.actor, cfg.lr);
    nn::AdamState opt_critic = nn::AdamState::like(m.critic1, cfg.lr);
    Rng rng = Rng::substream(seed, "sampling");

    for (long step = 1; step <= cfg.steps; ++step) {
        FullBatch b = gather_full(buffer, sample_batch(rng, train_idx, cfg.batch));

        // Critic TD toward r + gamma * Q_target(s', pi(s')).
        std::vector<double> a_next = actor_act(m.actor, b.s_next, m.action_bound);
        nn::Mat qn = nn::forward(m.target_critic1, concat_action(b.s_next, a_next));
        std::vector<double> target(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            target[i] = b.reward[i] + (b.terminal[i] ? 0.0 : cfg.gamma * qn(i, 0));
        nn::ForwardCache q_cache;
        nn::Mat q_in = concat_action(b.s, b.action);
        std::vector<double> q_pred = col0(nn::forward(m.critic1, q_in, &q_cache));
        losses::LossGrad td = losses::mse(q_pred, target);
        nn::Mat d_q(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i) d_q(i, 0) = td.d_pred[i];
        nn::adam_step(m.critic1, nn::backward(m.critic1, q_cache, d_q), opt_critic);

        // Advantage-weighted regression onto dataset actions.
        nn::ForwardCache a_cache;
        std::vector<double> pi = actor_act(m.actor, b.s, m.action_bound, &a_cache);
        std::vector<double> q_data = col0(nn::forward(m.critic1, concat_action(b.s, b.action)));
        std::vector<double> q_pi = col0(nn::forward(m.critic1, concat_action(b.s, pi)));
        std::vector<double> w(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            w[i] = std::min(std::exp((q_data[i] - q_pi[i]) / cfg.constants.awac_beta),
                            cfg.constants.awac_clip);
        losses::LossGrad awr = losses::weighted_mse(pi, b.action, w);
        nn::Mat d_a(b.size, 1);
        double mean_abs = 0;
        for (std::size_t i = 0; i < b.size; ++i) {
            d_a(i, 0) = awr.d_pred[i] * m.action_bound;
            mean_abs += std::fabs(pi[i]);
        }
        if (!std::isfinite(td.value) || !std::isfinite(awr.value))
            throw nn::TrainingDiverged("train_awac: non-finite loss at step " +
                                       std::to_string(step));
        nn::adam_step(m.actor, nn::backward(m.actor, a_cache, d_a), opt_actor);
        nn::soft_update(m.target_critic1, m.critic1, cfg.soft_rate);
        log_row(res.log, step, cfg.steps, cfg.log_interval, td.value, awr.value,
                mean_abs / static_cast<double>(b.size));
    }
    return res;
}

FullActionResult train_cql(const replay::ReplayBuffer& buffer,
                           const std::vector<std::size_t>& train_idx,
                           const FullActionTrainConfig& cfg, std::uint64_t seed) {
    if (train_idx.empty()) throw ConfigError("train_cql: empty train split");
    const double cap = 0.2;
    FullActionResult res;
    res.model = ActorCriticModel::init(buffer.layout.dim(), cfg.hidden, cap, false, seed);
    ActorCriticModel& m = res.model;
    nn::AdamState opt_actor = nn::AdamState::like(m.actor, cfg.lr);
    nn::AdamState opt_critic = nn::AdamState::like(m.critic1, cfg.lr);
    Rng rng = Rng::substream(seed, "sampling");
    const int n_samples = cfg.constants.cql_samples;

    for (long step = 1; step <= cfg.steps; ++step) {
        FullBatch b = gather_full(buffer, sample_batch(rng, train_idx, cfg.batch));

        std::vector<double> a_next = actor_act(m.actor, b.s_next, m.action_bound);
        nn::Mat qn = nn::forward(m.target_critic1, concat_action(b.s_next, a_next));
        std::vector<double> target(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            target[i] = b.reward[i] + (b.terminal[i] ? 0.0 : cfg.gamma * qn(i, 0));

        nn::ForwardCache q_cache;
        nn::Mat q_in = concat_action(b.s, b.action);
        std::vector<double> q_pred = col0(nn::forward(m.critic1, q_in, &q_cache));
        losses::LossGrad td = losses::mse(q_pred, target);

        // Conservative term over uniformly sampled actions in [-cap, cap].
        nn::Mat sampled_in(b.size * n_samples, buffer.layout.dim() + 1);
        for (std::size_t i = 0; i < b.size; ++i) {
            for (int j = 0; j < n_samples; ++j) {
                std::size_t row = i * n_samples + j;
                std::copy(b.s.a.begin() + i * b.s.cols, b.s.a.begin() + (i + 1) * b.s.cols,
                          sampled_in.a.begin() + row * sampled_in.cols);
                sampled_in(row, b.s.cols) = rng.uniform(-cap, cap);
            }
        }
        nn::ForwardCache samp_cache;
        nn::Mat q_samp_flat = nn::forward(m.critic1, sampled_in, &samp_cache);
        nn::Mat q_samples(b.size, n_samples);
        for (std::size_t i = 0; i < b.size; ++i)
            for (int j = 0; j < n_samples; ++j) q_samples(i, j) = q_samp_flat(i * n_samples + j, 0);
        losses::CqlGrad reg =
            losses::cql_regularizer(q_samples, q_pred, cfg.constants.cql_temperature);

        double critic_loss = td.value + cfg.constants.cql_alpha * reg.value;
        nn::Mat d_q(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i)
            d_q(i, 0) = td.d_pred[i] + cfg.constants.cql_alpha * reg.d_q_data[i];
        nn::Mat d_samp(b.size * n_samples, 1);
        for (std::size_t i = 0; i < b.size; ++i)
            for (int j = 0; j < n_samples; ++j)
                d_samp(i * n_samples + j, 0) = cfg.constants.cql_alpha * reg.d_q_samples(i, j);
        nn::Gradients g_q = nn::backward(m.critic1, q_cache, d_q);
        g_q.accumulate(nn::backward(m.critic1, samp_cache, d_samp));
        nn::adam_step(m.critic1, g_q, opt_critic);

        // Actor ascends the critic.
        nn::ForwardCache a_cache;
        std::vector<double> pi = actor_act(m.actor, b.s, m.action_bound, &a_cache);
        nn::ForwardCache qpi_cache;
        nn::Mat qpi_in = concat_action(b.s, pi);
        std::vector<double> q_pi = col0(nn::forward(m.critic1, qpi_in, &qpi_cache));
        double actor_loss = 0;
        for (double q : q_pi) actor_loss -= q;
        actor_loss /= static_cast<double>(b.size);
        nn::Mat d_qpi(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i)
            d_qpi(i, 0) = -1.0 / static_cast<double>(b.size);
        nn::Gradients g_through = nn::backward(m.critic1, qpi_cache, d_qpi);
        nn::Mat d_a(b.size, 1);
        double mean_abs = 0;
        for (std::size_t i = 0; i < b.size; ++i) {
            d_a(i, 0) = g_through.dx(i, b.s.cols) * m.action_bound;
            mean_abs += std::fabs(pi[i]);
        }
        if (!std::isfinite(critic_loss) || !std::isfinite(actor_loss))
            throw nn::TrainingDiverged("train_cql: non-finite loss at step " +
                                       std::to_string(step));
        nn::adam_step(m.actor, nn::backward(m.actor, a_cache, d_a), opt_actor);
        nn::soft_update(m.target_critic1, m.critic1, cfg.soft_rate);
        log_row(res.log, step, cfg.steps, cfg.log_interval, critic_loss, actor_loss,
                mean_abs / static_cast<double>(b.size));
    }
    return res;
}

FullActionResult train_td3bc(const replay::ReplayBuffer& buffer,
                             const std::vector<std::size_t>& train_idx,
                             const FullActionTrainConfig& cfg, std::uint64_t seed) {
    if (train_idx.empty()) throw ConfigError("train_td3bc: empty train split");
    const double cap = 0.2;
    FullActionResult res;
    res.model = ActorCriticModel::init(buffer.layout.dim(), cfg.hidden, cap, true, seed);
    ActorCriticModel& m = res.model;
    nn::AdamState opt_actor = nn::AdamState::like(m.actor, cfg.lr);
    nn::AdamState opt_c1 = nn::AdamState::like(m.critic1, cfg.lr);
    nn::AdamState opt_c2 = nn::AdamState::like(m.critic2, cfg.lr);
    Rng rng = Rng::substream(seed, "sampling");

    double last_actor_loss = 0, last_mean_abs = 0;
    for (long step = 1; step <= cfg.steps; ++step) {
        FullBatch b = gather_full(buffer, sample_batch(rng, train_idx, cfg.batch));

        // Smoothed target policy action.
        std::vector<double> a_next = actor_act(m.target_actor, b.s_next, m.action_bound);
        for (auto& a : a_next) {
            double noise = std::clamp(cfg.constants.td3bc_policy_noise * rng.normal(),
                                      -cfg.constants.td3bc_noise_clip,
                                      cfg.constants.td3bc_noise_clip) *
                           m.action_bound;
            a = std::clamp(a + noise, -m.action_bound, m.action_bound);
        }
        nn::Mat next_in = concat_action(b.s_next, a_next);
        nn::Mat q1n = nn::forward(m.target_critic1, next_in);
        nn::Mat q2n = nn::forward(m.target_critic2, next_in);
        std::vector<double> target(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            target[i] = b.reward[i] +
                        (b.terminal[i] ? 0.0 : cfg.gamma * std::min(q1n(i, 0), q2n(i, 0)));

        nn::Mat q_in = concat_action(b.s, b.action);
        nn::ForwardCache c1_cache, c2_cache;
        std::vector<double> q1 = col0(nn::forward(m.critic1, q_in, &c1_cache));
        std::vector<double> q2 = col0(nn::forward(m.critic2, q_in, &c2_cache));
        losses::LossGrad td1 = losses::mse(q1, target);
        losses::LossGrad td2 = losses::mse(q2, target);
        nn::Mat d1(b.size, 1), d2(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i) {
            d1(i, 0) = td1.d_pred[i];
            d2(i, 0) = td2.d_pred[i];
        }
        double critic_loss = td1.value + td2.value;
        if (!std::isfinite(critic_loss))
            throw nn::TrainingDiverged("train_td3bc: non-finite critic loss at step " +
                                       std::to_string(step));
        nn::adam_step(m.critic1, nn::backward(m.critic1, c1_cache, d1), opt_c1);
        nn::adam_step(m.critic2, nn::backward(m.critic2, c2_cache, d2), opt_c2);

        if (step % cfg.constants.td3bc_policy_delay == 0) {
            // -lambda * Q1(s, pi(s)) + bc_weight * MSE(pi, a_data), with
            // lambda = alpha / mean|Q1| detached.
            nn::ForwardCache a_cache;
            std::vector<double> pi = actor_act(m.actor, b.s, m.action_bound, &a_cache);
            nn::ForwardCache qpi_cache;
            std::vector<double> q_pi =
                col0(nn::forward(m.critic1, concat_action(b.s, pi), &qpi_cache));
            double mean_abs_q = 0;
            for (double q : q_pi) mean_abs_q += std::fabs(q);
            mean_abs_q /= static_cast<double>(b.size);
            double lambda = cfg.constants.td3bc_alpha / std::max(mean_abs_q, 1e-12);

            losses::LossGrad bc = losses::mse(pi, b.action);
            double q_term = 0;
            for (double q : q_pi) q_term += q;
            q_term /= static_cast<double>(b.size);
            last_actor_loss = -lambda * q_term + cfg.constants.td3bc_bc_weight * bc.value;

            nn::Mat d_qpi(b.size, 1);
            for (std::size_t i = 0; i < b.size; ++i)
                d_qpi(i, 0) = -lambda / static_cast<double>(b.size);
            nn::Gradients g_through = nn::backward(m.critic1, qpi_cache, d_qpi);
            nn::Mat d_a(b.size, 1);
            last_mean_abs = 0;
            for (std::size_t i = 0; i < b.size; ++i) {
                d_a(i, 0) = (g_through.dx(i, b.s.cols) +
                             cfg.constants.td3bc_bc_weight * bc.d_pred[i]) *
                            m.action_bound;
                last_mean_abs += std::fabs(pi[i]);
            }
            last_mean_abs /= static_cast<double>(b.size);
            if (!std::isfinite(last_actor_loss))
                throw nn::TrainingDiverged("train_td3bc: non-finite actor loss at step " +
                                           std::to_string(step));
            nn::adam_step(m.actor, nn::backward(m.actor, a_cache, d_a), opt_actor);
            nn::soft_update(m.target_actor, m.actor, cfg.soft_rate);
            nn::soft_update(m.target_critic1, m.critic1, cfg.soft_rate);
            nn::soft_update(m.target_critic2, m.critic2, cfg.soft_rate);
        }
        log_row(res.log, step, cfg.steps, cfg.log_interval, critic_loss, last_actor_loss,
                last_mean_abs);
    }
    return res;
}

double full_action_act(const ActorCriticModel& model, std::span<const double> state) {
    nn::Mat x = nn::Mat::from_row(state);
    nn::Mat out = nn::forward(model.actor, x);
    return model.action_bound * out(0, 0);
}

policy::DecodeStream decode_full_action(const ActorCriticModel& model,
                                        const replay::ReplayBuffer& buffer,
                                        const std::vector<std::size_t>& subset,
                                        const portfolio::PortfolioConfig& pcfg) {
    policy::DecodeStream out;
    out.idx = replay::order_by_ticker_day(buffer, subset);
    out.action.resize(out.idx.size());
    out.p_prev.resize(out.idx.size());

    const auto& L = buffer.layout;
    std::string cur_ticker;
    double p_carry = 0;
    std::vector<double> state(L.dim());
    for (std::size_t k = 0; k < out.idx.size(); ++k) {
        const replay::Transition& t = buffer.transitions[out.idx[k]];
        if (t.ticker != cur_ticker) {
            cur_ticker = t.ticker;
            p_carry = 0;
        }
        state.assign(t.s.begin(), t.s.end());
        state[L.idx_p_prev()] = p_carry;
        double a = std::clamp(full_action_act(model, state), -pcfg.per_asset_cap,
                              pcfg.per_asset_cap);
        out.action[k] = a;
        out.p_prev[k] = p_carry;
        p_carry = a;
    }
    return out;
}

void save_full_action_model(const ActorCriticModel& model, const std::string& path) {
    nn::save_checkpoint({&model.actor, &model.critic1, &model.critic2, &model.target_actor,
                         &model.target_critic1, &model.target_critic2},
                        path);
    nlohmann::json manifest;
    manifest["state_dim"] = model.state_dim;
    manifest["action_bound"] = model.action_bound;
    manifest["twin"] = model.twin;
    util::write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

ActorCriticModel load_full_action_model(const std::string& path) {
    std::vector<nn::MlpParams> nets = nn::load_checkpoint(path);
    if (nets.size() != 6) throw ConfigError("full-action checkpoint: expected 6 nets");
    nlohmann::json manifest = nlohmann::json::parse(util::read_file(path + ".manifest.json"));
    ActorCriticModel m;
    m.actor = std::move(nets[0]);
    m.critic1 = std::move(nets[1]);
    m.critic2 = std::move(nets[2]);
    m.target_actor = std::move(nets[3]);
    m.target_critic1 = std::move(nets[4]);
    m.target_critic2 = std::move(nets[5]);
    m.state_dim = manifest.at("state_dim").get<std::size_t>();
    m.action_bound = manifest.at("action_bound").get<double>();
    m.twin = manifest.at("twin").get<bool>();
    return m;
}

}  // namespace kicl::baselines

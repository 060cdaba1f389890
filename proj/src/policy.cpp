#include "kicl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "kicl/losses.hpp"

namespace kicl::policy {

const char* hard_scope_name(HardScope s) {
    switch (s) {
        case HardScope::Both: return "both";
        case HardScope::TrainOnly: return "train_only";
        case HardScope::InferOnly: return "infer_only";
        case HardScope::None: return "none";
    }
    return "both";
}

HardScope hard_scope_from_name(const std::string& s) {
    if (s == "both") return HardScope::Both;
    if (s == "train_only") return HardScope::TrainOnly;
    if (s == "infer_only") return HardScope::InferOnly;
    if (s == "none") return HardScope::None;
    throw ConfigError("unknown hard_scope: " + s);
}

void KiclConfig::validate() const {
    if (expectile <= 0.0 || expectile >= 1.0)
        throw ConfigError("kicl config: expectile must be in (0, 1)");
    if (lambda_fid < 0 || lambda_rev < 0 || lambda_ent < 0 || actor_align < 0 ||
        bc_anchor_weight < 0)
        throw ConfigError("kicl config: penalty weights must be non-negative");
    if (gamma < 0 || gamma > 1) throw ConfigError("kicl config: gamma outside [0, 1]");
    if (batch < 1) throw ConfigError("kicl config: batch must be >= 1");
    if (delta_clamp <= 0) throw ConfigError("kicl config: delta_clamp must be positive");
    if (hidden.empty()) throw ConfigError("kicl config: empty hidden sizes");
}

KiclModel KiclModel::init(std::size_t state_dim, const KiclConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng = Rng::substream(seed, "init");
    KiclModel m;
    m.cfg = cfg;
    m.state_dim = state_dim;

    std::vector<std::size_t> backbone_sizes{state_dim};
    backbone_sizes.insert(backbone_sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    m.backbone = nn::MlpParams::init(backbone_sizes, nn::Head::Relu, rng);

    std::vector<std::size_t> head_sizes{cfg.hidden.back(), 1};
    m.head_signal = nn::MlpParams::init(head_sizes, nn::Head::Tanh, rng);
    m.head_decay = nn::MlpParams::init(head_sizes, nn::Head::Tanh, rng);

    std::vector<std::size_t> critic_sizes{state_dim + 2};
    critic_sizes.insert(critic_sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    critic_sizes.push_back(1);
    m.critic = nn::MlpParams::init(critic_sizes, nn::Head::Linear, rng);

    std::vector<std::size_t> value_sizes{state_dim + 1};
    value_sizes.insert(value_sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    value_sizes.push_back(1);
    m.value = nn::MlpParams::init(value_sizes, nn::Head::Linear, rng);

    m.target_critic = m.critic;
    return m;
}

bool signal_regime(double a_base, double tau_entry) { return std::fabs(a_base) >= tau_entry; }

double propose_delta(const KiclModel& model, std::span<const double> state, bool signal) {
    if (state.size() != model.state_dim) throw ConfigError("propose_delta: state dim mismatch");
    nn::Mat x = nn::Mat::from_row(state);
    nn::Mat rep = nn::forward(model.backbone, x);
    const nn::MlpParams& head =
        (model.cfg.regime_split && !signal) ? model.head_decay : model.head_signal;
    nn::Mat out = nn::forward(head, rep);
    double delta = model.cfg.delta_clamp * out(0, 0);
    return std::clamp(delta, -model.cfg.delta_clamp, model.cfg.delta_clamp);
}

double compose_action(double a_base, double delta, bool signal) {
    return signal ? a_base + delta : delta;
}

double hard_project(double a, double a_base, double p_prev, double tau_entry) {
    if (std::fabs(a_base) >= tau_entry) {
        double sgn = a_base > 0.0 ? 1.0 : -1.0;
        return a * sgn < 0.0 ? 0.0 : a;
    }
    if (p_prev == 0.0) return 0.0;
    double sgn = p_prev > 0.0 ? 1.0 : -1.0;
    if (a * sgn < 0.0) return 0.0;
    return sgn * std::min(std::fabs(a), std::fabs(p_prev));
}

double deviation_barrier(double a, double a_base, const KiclConfig& cfg) {
    bool signal = signal_regime(a_base, cfg.tau_entry);
    double d_fid = 0, d_rev = 0, d_ent = 0;
    if (signal) {
        d_fid = std::fabs(a - a_base);
        double sgn = a_base > 0.0 ? 1.0 : -1.0;
        d_rev = std::max(0.0, -a * sgn);
    } else {
        d_ent = std::max(0.0, std::fabs(a) - cfg.tau_entry);
    }
    return cfg.lambda_fid * d_fid + cfg.lambda_rev * d_rev + cfg.lambda_ent * d_ent;
}

bool barrier_admits(double q_dev, double q_base, double a, double a_base, const KiclConfig& cfg) {
    return q_dev - q_base > deviation_barrier(a, a_base, cfg);
}

std::string train_log_to_csv(const std::vector<TrainLogRow>& rows) {
    std::string out = "step,value_loss,critic_loss,actor_loss,fid,rev,ent,mean_abs_delta\n";
    for (const TrainLogRow& r : rows) {
        out += std::to_string(r.step);
        for (double v : {r.value_loss, r.critic_loss, r.actor_loss, r.fid, r.rev, r.ent,
                         r.mean_abs_delta}) {
            out += ',';
            out += util::format_double(v);
        }
        out += '\n';
    }
    return out;
}

// ---- trainer ----

Trainer::Trainer(const replay::ReplayBuffer& buffer, std::vector<std::size_t> train_idx,
                 const KiclConfig& cfg, std::uint64_t seed)
    : buffer_(buffer),
      train_idx_(std::move(train_idx)),
      cfg_(cfg),
      model_(KiclModel::init(buffer.layout.dim(), cfg, seed)),
      opt_backbone_(nn::AdamState::like(model_.backbone, cfg.lr_actor)),
      opt_head_sig_(nn::AdamState::like(model_.head_signal, cfg.lr_actor)),
      opt_head_dec_(nn::AdamState::like(model_.head_decay, cfg.lr_actor)),
      opt_critic_(nn::AdamState::like(model_.critic, cfg.lr_critic)),
      opt_value_(nn::AdamState::like(model_.value, cfg.lr_value)),
      sample_rng_(Rng::substream(seed, "sampling")) {
    if (train_idx_.empty()) throw ConfigError("trainer: empty train split");
}

void Trainer::mask_market(nn::Mat& s) const {
    if (cfg_.use_market_factors) return;
    const auto& L = buffer_.layout;
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < 6; ++j) s(i, L.idx_mkt() + j) = 0.0;
}

Trainer::Batch Trainer::gather(const std::vector<std::size_t>& idx) const {
    Batch b;
    b.size = idx.size();
    const std::size_t dim = buffer_.layout.dim();
    b.s = nn::Mat(b.size, dim);
    b.s_next = nn::Mat(b.size, dim);
    b.a_base.resize(b.size);
    b.a_base_next.resize(b.size);
    b.behavior.resize(b.size);
    b.reward.resize(b.size);
    b.p_prev.resize(b.size);
    b.delta_data.resize(b.size);
    b.terminal.resize(b.size);
    b.signal.resize(b.size);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const replay::Transition& t = buffer_.transitions[idx[k]];
        std::copy(t.s.begin(), t.s.end(), b.s.a.begin() + k * dim);
        std::copy(t.s_next.begin(), t.s_next.end(), b.s_next.a.begin() + k * dim);
        b.a_base[k] = t.baseline_action;
        b.a_base_next[k] = t.baseline_action_next;
        b.behavior[k] = t.behavior_action;
        b.reward[k] = t.reward;
        b.p_prev[k] = t.s[buffer_.layout.idx_p_prev()];
        b.terminal[k] = t.terminal ? 1 : 0;
        b.signal[k] = signal_regime(t.baseline_action, cfg_.tau_entry) ? 1 : 0;
        b.delta_data[k] = b.signal[k] ? t.behavior_action - t.baseline_action : t.behavior_action;
    }
    mask_market(b.s);
    mask_market(b.s_next);
    return b;
}

Trainer::ActorForward Trainer::actor_forward(const nn::Mat& s,
                                             const std::vector<char>& signal_mask) {
    ActorForward fw;
    nn::Mat rep = nn::forward(model_.backbone, s, &fw.cache_backbone);
    fw.out_sig = nn::forward(model_.head_signal, rep, &fw.cache_sig);
    fw.out_dec = nn::forward(model_.head_decay, rep, &fw.cache_dec);
    fw.delta.resize(s.rows);
    for (std::size_t i = 0; i < s.rows; ++i) {
        bool use_signal_head = !model_.cfg.regime_split || signal_mask[i];
        fw.delta[i] = model_.cfg.delta_clamp *
                      (use_signal_head ? fw.out_sig(i, 0) : fw.out_dec(i, 0));
    }
    return fw;
}

void Trainer::actor_backward(const ActorForward& fw, const std::vector<char>& signal_mask,
                             const std::vector<double>& d_delta) {
    const std::size_t n = d_delta.size();
    nn::Mat d_sig(n, 1), d_dec(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        bool use_signal_head = !model_.cfg.regime_split || signal_mask[i];
        double g = d_delta[i] * model_.cfg.delta_clamp;
        if (use_signal_head)
            d_sig(i, 0) = g;
        else
            d_dec(i, 0) = g;
    }
    nn::Gradients g_sig = nn::backward(model_.head_signal, fw.cache_sig, d_sig);
    nn::Gradients g_dec = nn::backward(model_.head_decay, fw.cache_dec, d_dec);
    nn::Mat d_rep = g_sig.dx;
    for (std::size_t i = 0; i < d_rep.a.size(); ++i) d_rep.a[i] += g_dec.dx.a[i];
    nn::Gradients g_backbone = nn::backward(model_.backbone, fw.cache_backbone, d_rep);
    nn::adam_step(model_.backbone, g_backbone, opt_backbone_);
    nn::adam_step(model_.head_signal, g_sig, opt_head_sig_);
    nn::adam_step(model_.head_decay, g_dec, opt_head_dec_);
}

void Trainer::abort_with_checkpoint(const std::string& what) {
    if (!checkpoint_dir_.empty()) {
        std::filesystem::create_directories(checkpoint_dir_);
        save_model(model_, checkpoint_dir_ + "/diverged_checkpoint.bin", 0, -1);
    }
    throw nn::TrainingDiverged(what);
}

void Trainer::bc_pretrain() {
    std::vector<std::size_t> order = train_idx_;
    for (int epoch = 0; epoch < cfg_.bc_epochs; ++epoch) {
        // Fisher-Yates with the sampling substream.
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[sample_rng_.uniform_index(i)]);
        for (std::size_t start = 0; start < order.size(); start += cfg_.batch) {
            std::size_t end = std::min(order.size(), start + cfg_.batch);
            std::vector<std::size_t> idx(order.begin() + start, order.begin() + end);
            Batch b = gather(idx);

            ActorForward fw = actor_forward(b.s, b.signal);
            std::vector<double> composed(b.size);
            for (std::size_t i = 0; i < b.size; ++i)
                composed[i] = compose_action(b.a_base[i], fw.delta[i], b.signal[i]);

            losses::LossGrad fit = losses::mse(composed, b.behavior);
            double loss = fit.value;
            std::vector<double> d_delta = fit.d_pred;  // d composed / d delta = 1
            const double ib = 1.0 / static_cast<double>(b.size);
            for (std::size_t i = 0; i < b.size; ++i) {
                loss += cfg_.bc_anchor_weight * fw.delta[i] * fw.delta[i] * ib;
                d_delta[i] += cfg_.bc_anchor_weight * 2.0 * fw.delta[i] * ib;
            }
            if (!std::isfinite(loss)) abort_with_checkpoint("bc_pretrain: non-finite loss");
            actor_backward(fw, b.signal, d_delta);
        }
    }
}

std::vector<TrainLogRow> Trainer::iql_train() {
    const std::size_t dim = buffer_.layout.dim();
    for (long step = 1; step <= cfg_.iql_steps; ++step) {
        std::vector<std::size_t> idx(cfg_.batch);
        for (auto& i : idx) i = train_idx_[sample_rng_.uniform_index(train_idx_.size())];
        Batch b = gather(idx);

        // Target-critic scores of the dataset residuals, used by both the
        // value regression and the advantage weights.
        nn::Mat qt_in(b.size, dim + 2);
        for (std::size_t i = 0; i < b.size; ++i) {
            std::copy(b.s.a.begin() + i * dim, b.s.a.begin() + (i + 1) * dim,
                      qt_in.a.begin() + i * (dim + 2));
            qt_in(i, dim) = b.a_base[i];
            qt_in(i, dim + 1) = b.delta_data[i];
        }
        nn::Mat qt = nn::forward(model_.target_critic, qt_in);
        std::vector<double> q_target(b.size);
        for (std::size_t i = 0; i < b.size; ++i) q_target[i] = qt(i, 0);

        // Value: expectile regression toward the target critic.
        nn::Mat v_in(b.size, dim + 1);
        for (std::size_t i = 0; i < b.size; ++i) {
            std::copy(b.s.a.begin() + i * dim, b.s.a.begin() + (i + 1) * dim,
                      v_in.a.begin() + i * (dim + 1));
            v_in(i, dim) = b.a_base[i];
        }
        nn::ForwardCache v_cache;
        nn::Mat v_out = nn::forward(model_.value, v_in, &v_cache);
        std::vector<double> v_pred(b.size);
        for (std::size_t i = 0; i < b.size; ++i) v_pred[i] = v_out(i, 0);
        losses::LossGrad v_loss = losses::expectile(v_pred, q_target, cfg_.expectile);
        nn::Mat d_v(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i) d_v(i, 0) = v_loss.d_pred[i];
        nn::Gradients v_grads = nn::backward(model_.value, v_cache, d_v);
        nn::adam_step(model_.value, v_grads, opt_value_);

        // Critic: TD toward r + gamma * V(s', a'_base); series ends carry no
        // bootstrap.
        nn::Mat vn_in(b.size, dim + 1);
        for (std::size_t i = 0; i < b.size; ++i) {
            std::copy(b.s_next.a.begin() + i * dim, b.s_next.a.begin() + (i + 1) * dim,
                      vn_in.a.begin() + i * (dim + 1));
            vn_in(i, dim) = b.a_base_next[i];
        }
        nn::Mat v_next = nn::forward(model_.value, vn_in);
        std::vector<double> td_target(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            td_target[i] = b.reward[i] + (b.terminal[i] ? 0.0 : cfg_.gamma * v_next(i, 0));
        nn::ForwardCache q_cache;
        nn::Mat q_out = nn::forward(model_.critic, qt_in, &q_cache);
        std::vector<double> q_pred(b.size);
        for (std::size_t i = 0; i < b.size; ++i) q_pred[i] = q_out(i, 0);
        losses::LossGrad q_loss = losses::mse(q_pred, td_target);
        nn::Mat d_q(b.size, 1);
        for (std::size_t i = 0; i < b.size; ++i) d_q(i, 0) = q_loss.d_pred[i];
        nn::Gradients q_grads = nn::backward(model_.critic, q_cache, d_q);
        nn::adam_step(model_.critic, q_grads, opt_critic_);

        // Actor: advantage-weighted residual regression plus intent penalties.
        nn::Mat v_post = nn::forward(model_.value, v_in);
        std::vector<double> weights(b.size);
        for (std::size_t i = 0; i < b.size; ++i)
            weights[i] = std::min(std::exp(cfg_.beta * (q_target[i] - v_post(i, 0))),
                                  cfg_.adv_clip);

        std::vector<double> delta_target(b.size);
        const bool project_targets =
            cfg_.hard_scope == HardScope::Both || cfg_.hard_scope == HardScope::TrainOnly;
        for (std::size_t i = 0; i < b.size; ++i) {
            if (project_targets) {
                double a = compose_action(b.a_base[i], b.delta_data[i], b.signal[i]);
                double proj = hard_project(a, b.a_base[i], b.p_prev[i], cfg_.tau_entry);
                delta_target[i] = b.signal[i] ? proj - b.a_base[i] : proj;
            } else {
                delta_target[i] = b.delta_data[i];
            }
        }

        ActorForward fw = actor_forward(b.s, b.signal);
        losses::LossGrad awr = losses::weighted_mse(fw.delta, delta_target, weights);

        std::vector<double> composed(b.size);
        std::vector<char> sig_mask(b.size), sil_mask(b.size);
        for (std::size_t i = 0; i < b.size; ++i) {
            composed[i] = compose_action(b.a_base[i], fw.delta[i], b.signal[i]);
            sig_mask[i] = b.signal[i];
            sil_mask[i] = !b.signal[i];
        }
        losses::LossGrad fid = losses::fidelity(composed, b.a_base, sig_mask);
        losses::LossGrad rev = losses::reversal_hinge(composed, b.a_base, sig_mask);
        losses::LossGrad ent = losses::entry_hinge(composed, cfg_.tau_entry, sil_mask);

        const double fid_w = cfg_.lambda_fid + cfg_.actor_align;
        double actor_loss = awr.value + fid_w * fid.value + cfg_.lambda_rev * rev.value +
                            cfg_.lambda_ent * ent.value;
        std::vector<double> d_delta(b.size);
        double mean_abs_delta = 0;
        for (std::size_t i = 0; i < b.size; ++i) {
            d_delta[i] = awr.d_pred[i] + fid_w * fid.d_pred[i] +
                         cfg_.lambda_rev * rev.d_pred[i] + cfg_.lambda_ent * ent.d_pred[i];
            mean_abs_delta += std::fabs(fw.delta[i]);
        }
        mean_abs_delta /= static_cast<double>(b.size);
        if (!std::isfinite(v_loss.value) || !std::isfinite(q_loss.value) ||
            !std::isfinite(actor_loss))
            abort_with_checkpoint("iql_train: non-finite loss at step " + std::to_string(step));
        actor_backward(fw, b.signal, d_delta);

        nn::soft_update(model_.target_critic, model_.critic, cfg_.soft_rate);

        if (step % cfg_.log_interval == 0 || step == cfg_.iql_steps) {
            TrainLogRow row;
            row.step = step;
            row.value_loss = v_loss.value;
            row.critic_loss = q_loss.value;
            row.actor_loss = actor_loss;
            row.fid = fid.value;
            row.rev = rev.value;
            row.ent = ent.value;
            row.mean_abs_delta = mean_abs_delta;
            log_.push_back(row);
        }
    }
    return log_;
}

DecodeStream decode(const KiclModel& model, const replay::ReplayBuffer& buffer,
                    const std::vector<std::size_t>& subset, HardScope scope,
                    const portfolio::PortfolioConfig& pcfg) {
    DecodeStream out;
    out.idx = order_by_ticker_day(buffer, subset);
    out.action.resize(out.idx.size());
    out.p_prev.resize(out.idx.size());

    const bool project = scope == HardScope::Both || scope == HardScope::InferOnly;
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
        bool signal = signal_regime(t.baseline_action, model.cfg.tau_entry);
        // Anchor-synced position lifecycle: the book is flattened the day the
        // anchor dies, so projected silence steps always start flat.
        double p_used = (signal || !project) ? p_carry : 0.0;

        state.assign(t.s.begin(), t.s.end());
        state[L.idx_p_prev()] = p_used;
        if (!model.cfg.use_market_factors)
            for (std::size_t j = 0; j < 6; ++j) state[L.idx_mkt() + j] = 0.0;

        double delta = propose_delta(model, state, signal);
        double a = compose_action(t.baseline_action, delta, signal);
        if (project) a = hard_project(a, t.baseline_action, p_used, model.cfg.tau_entry);
        a = std::clamp(a, -pcfg.per_asset_cap, pcfg.per_asset_cap);

        out.action[k] = a;
        out.p_prev[k] = p_used;
        p_carry = a;
    }
    return out;
}

// ---- checkpoints ----

namespace {

nlohmann::json config_to_json(const KiclConfig& c) {
    nlohmann::json j;
    j["gamma"] = c.gamma;
    j["expectile"] = c.expectile;
    j["beta"] = c.beta;
    j["lambda_fid"] = c.lambda_fid;
    j["actor_align"] = c.actor_align;
    j["lambda_ent"] = c.lambda_ent;
    j["lambda_rev"] = c.lambda_rev;
    j["tau_entry"] = c.tau_entry;
    j["delta_clamp"] = c.delta_clamp;
    j["bc_epochs"] = c.bc_epochs;
    j["bc_anchor_weight"] = c.bc_anchor_weight;
    j["iql_steps"] = c.iql_steps;
    j["batch"] = c.batch;
    j["lr_actor"] = c.lr_actor;
    j["lr_critic"] = c.lr_critic;
    j["lr_value"] = c.lr_value;
    j["soft_rate"] = c.soft_rate;
    j["adv_clip"] = c.adv_clip;
    j["log_interval"] = c.log_interval;
    j["hard_scope"] = hard_scope_name(c.hard_scope);
    j["regime_split"] = c.regime_split;
    j["use_market_factors"] = c.use_market_factors;
    j["hidden"] = c.hidden;
    return j;
}

KiclConfig config_from_json(const nlohmann::json& j) {
    KiclConfig c;
    c.gamma = j.value("gamma", c.gamma);
    c.expectile = j.value("expectile", c.expectile);
    c.beta = j.value("beta", c.beta);
    c.lambda_fid = j.value("lambda_fid", c.lambda_fid);
    c.actor_align = j.value("actor_align", c.actor_align);
    c.lambda_ent = j.value("lambda_ent", c.lambda_ent);
    c.lambda_rev = j.value("lambda_rev", c.lambda_rev);
    c.tau_entry = j.value("tau_entry", c.tau_entry);
    c.delta_clamp = j.value("delta_clamp", c.delta_clamp);
    c.bc_epochs = j.value("bc_epochs", c.bc_epochs);
    c.bc_anchor_weight = j.value("bc_anchor_weight", c.bc_anchor_weight);
    c.iql_steps = j.value("iql_steps", c.iql_steps);
    c.batch = j.value("batch", c.batch);
    c.lr_actor = j.value("lr_actor", c.lr_actor);
    c.lr_critic = j.value("lr_critic", c.lr_critic);
    c.lr_value = j.value("lr_value", c.lr_value);
    c.soft_rate = j.value("soft_rate", c.soft_rate);
    c.adv_clip = j.value("adv_clip", c.adv_clip);
    c.log_interval = j.value("log_interval", c.log_interval);
    c.hard_scope = hard_scope_from_name(j.value("hard_scope", std::string("both")));
    c.regime_split = j.value("regime_split", c.regime_split);
    c.use_market_factors = j.value("use_market_factors", c.use_market_factors);
    c.hidden = j.value("hidden", c.hidden);
    return c;
}

}  // namespace

std::string kicl_config_to_json_string(const KiclConfig& cfg) {
    return config_to_json(cfg).dump(2);
}

KiclConfig kicl_config_from_json_string(const std::string& text) {
    try {
        return config_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("kicl config json: ") + e.what());
    }
}

void save_model(const KiclModel& model, const std::string& path, std::uint64_t seed,
                long steps_done) {
    nn::save_checkpoint({&model.backbone, &model.head_signal, &model.head_decay, &model.critic,
                         &model.value, &model.target_critic},
                        path);
    nlohmann::json manifest;
    manifest["state_dim"] = model.state_dim;
    manifest["seed"] = seed;
    manifest["steps_done"] = steps_done;
    manifest["config"] = config_to_json(model.cfg);
    util::write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

KiclModel load_model(const std::string& path) {
    std::vector<nn::MlpParams> nets = nn::load_checkpoint(path);
    if (nets.size() != 6) throw ConfigError("model checkpoint: expected 6 nets");
    nlohmann::json manifest = nlohmann::json::parse(util::read_file(path + ".manifest.json"));
    KiclModel m;
    m.backbone = std::move(nets[0]);
    m.head_signal = std::move(nets[1]);
    m.head_decay = std::move(nets[2]);
    m.critic = std::move(nets[3]);
    m.value = std::move(nets[4]);
    m.target_critic = std::move(nets[5]);
    m.state_dim = manifest.at("state_dim").get<std::size_t>();
    m.cfg = config_from_json(manifest.at("config"));
    return m;
}

}  // namespace kicl::policy

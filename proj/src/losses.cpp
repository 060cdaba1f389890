#include "kicl/losses.hpp"

#include <cmath>

#include "kicl/util.hpp"

namespace kicl::losses {

namespace {
double inv_size(std::size_t n) {
    if (n == 0) throw ConfigError("loss kernel: empty batch");
    return 1.0 / static_cast<double>(n);
}
}  // namespace

LossGrad expectile(const std::vector<double>& pred, const std::vector<double>& target, double tau) {
    if (pred.size() != target.size()) throw ConfigError("expectile: size mismatch");
    const double ib = inv_size(pred.size());
    LossGrad out;
    out.d_pred.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double u = target[i] - pred[i];
        double w = std::fabs(tau - (u < 0.0 ? 1.0 : 0.0));
        out.value += w * u * u * ib;
        out.d_pred[i] = -2.0 * w * u * ib;
    }
    return out;
}

LossGrad mse(const std::vector<double>& pred, const std::vector<double>& target) {
    if (pred.size() != target.size()) throw ConfigError("mse: size mismatch");
    const double ib = inv_size(pred.size());
    LossGrad out;
    out.d_pred.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double e = pred[i] - target[i];
        out.value += e * e * ib;
        out.d_pred[i] = 2.0 * e * ib;
    }
    return out;
}

LossGrad weighted_mse(const std::vector<double>& pred, const std::vector<double>& target,
                      const std::vector<double>& weights) {
    if (pred.size() != target.size() || pred.size() != weights.size())
        throw ConfigError("weighted_mse: size mismatch");
    const double ib = inv_size(pred.size());
    LossGrad out;
    out.d_pred.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double e = pred[i] - target[i];
        out.value += weights[i] * e * e * ib;
        out.d_pred[i] = 2.0 * weights[i] * e * ib;
    }
    return out;
}

LossGrad fidelity(const std::vector<double>& composed, const std::vector<double>& base,
                  const std::vector<char>& mask) {
    if (composed.size() != base.size() || composed.size() != mask.size())
        throw ConfigError("fidelity: size mismatch");
    const double ib = inv_size(composed.size());
    LossGrad out;
    out.d_pred.assign(composed.size(), 0.0);
    for (std::size_t i = 0; i < composed.size(); ++i) {
        if (!mask[i]) continue;
        double d = composed[i] - base[i];
        out.value += std::fabs(d) * ib;
        out.d_pred[i] = (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0)) * ib;
    }
    return out;
}

LossGrad reversal_hinge(const std::vector<double>& composed, const std::vector<double>& base,
                        const std::vector<char>& mask) {
    if (composed.size() != base.size() || composed.size() != mask.size())
        throw ConfigError("reversal_hinge: size mismatch");
    const double ib = inv_size(composed.size());
    LossGrad out;
    out.d_pred.assign(composed.size(), 0.0);
    for (std::size_t i = 0; i < composed.size(); ++i) {
        if (!mask[i]) continue;
        double sgn = base[i] > 0.0 ? 1.0 : (base[i] < 0.0 ? -1.0 : 0.0);
        double arg = -composed[i] * sgn;
        if (arg > 0.0) {
            out.value += arg * ib;
            out.d_pred[i] = -sgn * ib;
        }
    }
    return out;
}

LossGrad entry_hinge(const std::vector<double>& composed, double tau_entry,
                     const std::vector<char>& mask) {
    if (composed.size() != mask.size()) throw ConfigError("entry_hinge: size mismatch");
    const double ib = inv_size(composed.size());
    LossGrad out;
    out.d_pred.assign(composed.size(), 0.0);
    for (std::size_t i = 0; i < composed.size(); ++i) {
        if (!mask[i]) continue;
        double arg = std::fabs(composed[i]) - tau_entry;
        if (arg > 0.0) {
            out.value += arg * ib;
            out.d_pred[i] = (composed[i] > 0.0 ? 1.0 : -1.0) * ib;
        }
    }
    return out;
}

CqlGrad cql_regularizer(const nn::Mat& q_samples, const std::vector<double>& q_data,
                        double temperature) {
    if (q_samples.rows != q_data.size()) throw ConfigError("cql: size mismatch");
    if (temperature <= 0) throw ConfigError("cql: temperature must be positive");
    const double ib = inv_size(q_data.size());
    CqlGrad out;
    out.d_q_data.assign(q_data.size(), 0.0);
    out.d_q_samples = nn::Mat(q_samples.rows, q_samples.cols);
    for (std::size_t i = 0; i < q_samples.rows; ++i) {
        double mx = q_samples(i, 0);
        for (std::size_t j = 1; j < q_samples.cols; ++j) mx = std::max(mx, q_samples(i, j));
        double denom = 0;
        for (std::size_t j = 0; j < q_samples.cols; ++j)
            denom += std::exp((q_samples(i, j) - mx) / temperature);
        double lse = mx + temperature * std::log(denom);
        out.value += (lse - q_data[i]) * ib;
        out.d_q_data[i] = -ib;
        for (std::size_t j = 0; j < q_samples.cols; ++j)
            out.d_q_samples(i, j) = std::exp((q_samples(i, j) - mx) / temperature) / denom * ib;
    }
    return out;
}

}  // namespace kicl::losses

#pragma once

#include <vector>

#include "kicl/nn.hpp"

namespace kicl::losses {

// Batch-mean loss kernels shared by the trainers and the gradient-check
// suite. `d_pred` carries d(mean loss)/d(pred_i), including the 1/B factor.
struct LossGrad {
    double value = 0;
    std::vector<double> d_pred;
};

// Asymmetric least squares: weight tau on positive residuals u = target - pred.
LossGrad expectile(const std::vector<double>& pred, const std::vector<double>& target, double tau);

LossGrad mse(const std::vector<double>& pred, const std::vector<double>& target);

LossGrad weighted_mse(const std::vector<double>& pred, const std::vector<double>& target,
                      const std::vector<double>& weights);

// mean over batch of mask * |a - base|
LossGrad fidelity(const std::vector<double>& composed, const std::vector<double>& base,
                  const std::vector<char>& mask);

// mean over batch of mask * max(0, -a * sign(base))
LossGrad reversal_hinge(const std::vector<double>& composed, const std::vector<double>& base,
                        const std::vector<char>& mask);

// mean over batch of mask * max(0, |a| - tau_entry)
LossGrad entry_hinge(const std::vector<double>& composed, double tau_entry,
                     const std::vector<char>& mask);

// Conservative regularizer: mean_i [ temp * logsumexp_j(q_samples(i,j)/temp)
// - q_data_i ].
struct CqlGrad {
    double value = 0;
    std::vector<double> d_q_data;
    nn::Mat d_q_samples;
};

CqlGrad cql_regularizer(const nn::Mat& q_samples, const std::vector<double>& q_data,
                        double temperature);

}  // namespace kicl::losses

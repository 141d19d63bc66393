#pragma once

#include <span>
#include <vector>

namespace bsa::model {

struct EvidentialLoss {
  double loss = 0.0;    // risk + lambda * kl
  double risk = 0.0;    // Bayes risk of the squared error under Dir(alpha)
  double kl = 0.0;      // KL(Dir(alpha_tilde) || Dir(1))
  double lambda = 0.0;  // annealing coefficient
  std::vector<double> grad;  // d loss / d alpha
};

/// min(1, epoch / anneal_epochs)
double kl_annealing(int epoch, int anneal_epochs);

/// Squared-error Bayes risk
///   sum_j (y_j - alpha_j/S)^2 + alpha_j (S - alpha_j) / (S^2 (S + 1)),  S = sum alpha,
/// plus lambda * KL(Dir(alpha_tilde) || Dir(1)) with alpha_tilde = y + (1 - y) * alpha,
/// i.e. the target's evidence removed before penalizing the rest.
/// Throws Error(InvalidAlpha) if any alpha_j < 1 or the target is out of range.
EvidentialLoss evidential_loss(std::span<const double> alpha, int target, int epoch, int anneal_epochs = 10);

}  // namespace bsa::model

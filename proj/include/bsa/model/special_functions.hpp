#pragma once

namespace bsa::model {

/// psi(x) for x > 0. Upward recurrence to x >= 12, then the asymptotic series.
double digamma(double x);
/// psi'(x) for x > 0, same scheme.
double trigamma(double x);

}  // namespace bsa::model

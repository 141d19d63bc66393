#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bsa::agreement {

/// Labels from two raters over the same items, coded by ActionClass index
/// (alphabetical order, NonAction last).
struct RatingPair {
  std::vector<std::string> item_ids;  // optional, same length as a/b when present
  std::vector<int> a;
  std::vector<int> b;

  std::size_t n() const noexcept { return a.size(); }
  /// Throws Error(LengthMismatch) or Error(OutOfRange) for a code outside the taxonomy.
  void check() const;
};

/// Fraction of identical labels. Throws Error(EmptyData) when n == 0.
double observed_agreement(const RatingPair& p);

/// Throws Error(DegenerateMarginals) when expected agreement is 1.
double cohen_kappa(const RatingPair& p);

/// Product-moment correlation of the integer codes.
/// Throws Error(ZeroVariance) when either rater is constant.
double pearson_corr(const RatingPair& p);

/// Chance agreement sum_j pi_j (1 - pi_j), pi_j pooled over both raters.
/// With canonical = true the sum is scaled by 1/(k-1), k the number of
/// categories seen by either rater. Throws Error(DegeneratePe) when that
/// chance term reaches 1 or is undefined.
double gwet_ac1(const RatingPair& p, bool canonical = false);

/// Landis-Koch band of kappa after rounding half-to-even at two decimals:
/// poor (<0), slight (0-0.20), fair (0.21-0.40), moderate (0.41-0.60),
/// substantial (0.61-0.80), almost perfect (>=0.81).
std::string_view interpret_kappa(double kappa);

struct AgreementReport {
  std::size_t n = 0;
  std::size_t disagreements = 0;
  double observed = 0.0;
  double kappa = 0.0;
  double pearson = 0.0;
  double ac1 = 0.0;
  double ac1_canonical = 0.0;
  // Coefficients that were undefined on this data carry the error text.
  std::string kappa_error, pearson_error, ac1_error, ac1_canonical_error;
};

AgreementReport compute_report(const RatingPair& p);
std::string format_report(const AgreementReport& r);

}  // namespace bsa::agreement

#include "bsa/agreement/agreement.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"

namespace bsa::agreement {

void RatingPair::check() const {
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "raters labelled different numbers of items");
  if (!item_ids.empty() && item_ids.size() != a.size()) throw Error(Errc::LengthMismatch, "item ids do not match labels");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] > static_cast<int>(kNumActions) || b[i] < 0 || b[i] > static_cast<int>(kNumActions)) {
      throw Error(Errc::OutOfRange, "label code out of range at item " + std::to_string(i));
    }
  }
}

namespace {

void require_items(const RatingPair& p, std::size_t min_n) {
  p.check();
  if (p.n() < min_n) throw Error(Errc::EmptyData, "need at least " + std::to_string(min_n) + " items");
}

}  // namespace

double observed_agreement(const RatingPair& p) {
  require_items(p, 1);
  std::size_t same = 0;
  for (std::size_t i = 0; i < p.n(); ++i) same += p.a[i] == p.b[i];
  return static_cast<double>(same) / static_cast<double>(p.n());
}

double cohen_kappa(const RatingPair& p) {
  require_items(p, 2);
  std::map<int, double> ma, mb;
  for (int v : p.a) ma[v] += 1.0;
  for (int v : p.b) mb[v] += 1.0;
  const double n = static_cast<double>(p.n());
  double pe = 0.0;
  for (const auto& [k, ca] : ma) {
    auto it = mb.find(k);
    if (it != mb.end()) pe += (ca / n) * (it->second / n);
  }
  if (pe >= 1.0) throw Error(Errc::DegenerateMarginals, "both raters used one identical label; kappa undefined");
  return (observed_agreement(p) - pe) / (1.0 - pe);
}

double pearson_corr(const RatingPair& p) {
  require_items(p, 2);
  const double n = static_cast<double>(p.n());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    mx += p.a[i];
    my += p.b[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double dx = p.a[i] - mx, dy = p.b[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::ZeroVariance, "a rater used a single label");
  return sxy / std::sqrt(sxx * syy);
}

double gwet_ac1(const RatingPair& p, bool canonical) {
  require_items(p, 2);
  std::map<int, double> pooled;
  for (int v : p.a) pooled[v] += 1.0;
  for (int v : p.b) pooled[v] += 1.0;
  const double total = 2.0 * static_cast<double>(p.n());
  double pe = 0.0;
  for (const auto& [k, c] : pooled) {
    const double pi = c / total;
    pe += pi * (1.0 - pi);
  }
  if (canonical) {
    const auto k = pooled.size();
    if (k < 2) throw Error(Errc::DegeneratePe, "canonical AC1 needs at least two categories");
    pe /= static_cast<double>(k - 1);
  }
  if (pe >= 1.0) throw Error(Errc::DegeneratePe, "chance agreement is 1; AC1 undefined");
  return (observed_agreement(p) - pe) / (1.0 - pe);
}

std::string_view interpret_kappa(double kappa) {
  // nearbyint uses the current rounding mode, round-half-even by default.
  const double cents = std::nearbyint(kappa * 100.0);
  if (cents < 0.0) return "poor";
  if (cents <= 20.0) return "slight";
  if (cents <= 40.0) return "fair";
  if (cents <= 60.0) return "moderate";
  if (cents <= 80.0) return "substantial";
  return "almost perfect";
}

AgreementReport compute_report(const RatingPair& p) {
  AgreementReport r;
  r.n = p.n();
  r.observed = observed_agreement(p);
  for (std::size_t i = 0; i < p.n(); ++i) r.disagreements += p.a[i] != p.b[i];
  auto guarded = [](auto&& fn, double& out, std::string& err) {
    try {
      out = fn();
    } catch (const Error& e) {
      out = std::nan("");
      err = e.what();
    }
  };
  guarded([&] { return cohen_kappa(p); }, r.kappa, r.kappa_error);
  guarded([&] { return pearson_corr(p); }, r.pearson, r.pearson_error);
  guarded([&] { return gwet_ac1(p, false); }, r.ac1, r.ac1_error);
  guarded([&] { return gwet_ac1(p, true); }, r.ac1_canonical, r.ac1_canonical_error);
  return r;
}

std::string format_report(const AgreementReport& r) {
  std::ostringstream os;
  auto fixed4 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  auto line = [&](const char* key, double v, const std::string& err, bool band) {
    os << key << ": ";
    if (!err.empty()) {
      os << "undefined (" << err << ")\n";
      return;
    }
    os << fixed4(v);
    if (band) os << " (" << interpret_kappa(v) << ")";
    os << '\n';
  };
  os << "items: " << r.n << '\n';
  os << "disagreements: " << r.disagreements << '\n';
  os << "observed_agreement: " << fixed4(r.observed) << " (" << fixed4(100.0 * r.observed) << "%)\n";
  line("cohen_kappa", r.kappa, r.kappa_error, true);
  line("pearson_r", r.pearson, r.pearson_error, false);
  line("gwet_ac1", r.ac1, r.ac1_error, true);
  line("gwet_ac1_canonical", r.ac1_canonical, r.ac1_canonical_error, true);
  os << "pearson_coding: alphabetical action index (NonAction = 10)\n";
  return os.str();
}

}  // namespace bsa::agreement

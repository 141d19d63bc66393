#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bsa/agreement/agreement.hpp"
#include "bsa/agreement/rating_io.hpp"
#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"

using namespace bsa;
using namespace bsa::agreement;

namespace {

RatingPair from_table(int aa, int ab, int ba, int bb) {
  RatingPair p;
  auto push = [&](int n, int x, int y) {
    for (int i = 0; i < n; ++i) {
      p.a.push_back(x);
      p.b.push_back(y);
    }
  };
  push(aa, 0, 0);
  push(ab, 0, 1);
  push(ba, 1, 0);
  push(bb, 1, 1);
  return p;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Agreement, BalancedTwoByTwo) {
  const auto p = from_table(40, 10, 10, 40);
  EXPECT_DOUBLE_EQ(observed_agreement(p), 0.8);
  EXPECT_NEAR(cohen_kappa(p), 0.6, 1e-12);
  EXPECT_NEAR(gwet_ac1(p), 0.6, 1e-12);
  EXPECT_NEAR(gwet_ac1(p, true), 0.6, 1e-12);  // k = 2, so both forms agree
  EXPECT_NEAR(pearson_corr(p), 0.6, 1e-12);
}

TEST(Agreement, SkewedMarginalsSeparateKappaAndAc1) {
  // 90 agree on 0, 5 agree on 1, 5 disagree: kappa is depressed by prevalence.
  const auto p = from_table(90, 3, 2, 5);
  const double po = 0.95;
  const double pa0 = 0.93, pb0 = 0.92;
  const double pe = pa0 * pb0 + (1 - pa0) * (1 - pb0);
  EXPECT_NEAR(cohen_kappa(p), (po - pe) / (1 - pe), 1e-12);
  const double pi0 = (0.93 + 0.92) / 2;
  const double pe1 = 2 * pi0 * (1 - pi0);
  EXPECT_NEAR(gwet_ac1(p, true), (po - pe1) / (1 - pe1), 1e-12);
  EXPECT_GT(gwet_ac1(p, true), cohen_kappa(p));
}

TEST(Agreement, PearsonOnCodes) {
  RatingPair p{{}, {0, 1, 2, 3}, {0, 2, 2, 3}};
  // Hand value: x = 0..3, y = 0,2,2,3.
  EXPECT_NEAR(pearson_corr(p), 0.9233805168766388, 1e-12);
  RatingPair q{{}, {0, 1, 2, 3}, {0, 1, 2, 2}};
  EXPECT_NEAR(pearson_corr(q), 0.9438798074485388, 1e-12);
}

TEST(Agreement, DegenerateInputs) {
  RatingPair constant{{}, {2, 2, 2}, {2, 2, 2}};
  EXPECT_DOUBLE_EQ(observed_agreement(constant), 1.0);
  EXPECT_EQ(code_of([&] { cohen_kappa(constant); }), Errc::DegenerateMarginals);
  EXPECT_EQ(code_of([&] { pearson_corr(constant); }), Errc::ZeroVariance);
  EXPECT_EQ(code_of([&] { gwet_ac1(constant, true); }), Errc::DegeneratePe);
  EXPECT_EQ(code_of([] { observed_agreement(RatingPair{}); }), Errc::EmptyData);
  EXPECT_EQ(code_of([] { observed_agreement(RatingPair{{}, {1}, {1, 2}}); }), Errc::LengthMismatch);
  EXPECT_EQ(code_of([] { observed_agreement(RatingPair{{}, {11}, {1}}); }), Errc::OutOfRange);
  const auto r = compute_report(constant);
  EXPECT_FALSE(r.kappa_error.empty());
  EXPECT_NE(format_report(r).find("cohen_kappa: undefined"), std::string::npos);
}

TEST(Agreement, KappaBands) {
  EXPECT_EQ(interpret_kappa(-0.01), "poor");
  EXPECT_EQ(interpret_kappa(0.0), "slight");
  EXPECT_EQ(interpret_kappa(0.20), "slight");
  EXPECT_EQ(interpret_kappa(0.204), "slight");
  EXPECT_EQ(interpret_kappa(0.21), "fair");
  EXPECT_EQ(interpret_kappa(0.6), "moderate");
  EXPECT_EQ(interpret_kappa(0.61), "substantial");
  EXPECT_EQ(interpret_kappa(0.805), "substantial");  // 80.5 rounds to even
  EXPECT_EQ(interpret_kappa(0.81), "almost perfect");
  EXPECT_EQ(interpret_kappa(1.0), "almost perfect");
  EXPECT_EQ(interpret_kappa(0.9435), "almost perfect");
}

TEST(Agreement, SymmetricInRaters) {
  const auto p = from_table(30, 7, 12, 51);
  const RatingPair q{{}, p.b, p.a};
  EXPECT_DOUBLE_EQ(cohen_kappa(p), cohen_kappa(q));
  EXPECT_DOUBLE_EQ(gwet_ac1(p), gwet_ac1(q));
  EXPECT_DOUBLE_EQ(pearson_corr(p), pearson_corr(q));
}

TEST(RatingIo, ParseAndRoundTrip) {
  std::stringstream ss(
      "# two raters\n"
      "clip_id,rater_a,rater_b\n"
      "c1,Dissection,Dissection\n"
      "\n"
      "c2,Clipping,NonAction\n");
  const auto p = read_ratings(ss);
  ASSERT_EQ(p.n(), 2u);
  EXPECT_EQ(p.item_ids[1], "c2");
  EXPECT_EQ(p.b[1], to_index(ActionClass::NonAction));
  std::stringstream out;
  write_ratings(out, p);
  const auto back = read_ratings(out);
  EXPECT_EQ(back.a, p.a);
  EXPECT_EQ(back.b, p.b);
}

TEST(RatingIo, Rejects) {
  std::stringstream dup("c1,Dissection,Dissection\nc1,Clipping,Clipping\n");
  EXPECT_EQ(code_of([&] { read_ratings(dup); }), Errc::MalformedRecord);
  std::stringstream unknown("c1,Stapling,Dissection\n");
  EXPECT_EQ(code_of([&] { read_ratings(unknown); }), Errc::MalformedRecord);
  std::stringstream short_line("c1,Dissection\n");
  EXPECT_EQ(code_of([&] { read_ratings(short_line); }), Errc::MalformedRecord);
}

#include "test_util.hpp"

using namespace qt;

TEST(So3, HatVeeRoundTrip) {
  const Vec3 v(0.3, -1.2, 2.5);
  const Mat3 h = hat(v);
  EXPECT_MAT_NEAR(h, -h.transpose(), 0.0);
  EXPECT_MAT_NEAR(vee(h), v, 0.0);
  const Vec3 w(-0.7, 0.1, 0.4);
  EXPECT_MAT_NEAR(h * w, v.cross(w), 1e-15);
}

TEST(So3, VeeRejectsNonSkew) {
  Mat3 m = hat(Vec3(1, 2, 3));
  m(0, 0) = 1e-6;
  try {
    vee(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSkew);
  }
}

TEST(So3, ExpMatchesIndependentRotation) {
  EXPECT_MAT_NEAR(rot_exp(Vec3(1, 2, 2) / 3.0, 0.7), oracle_R1(), 1e-15);
  const Vec3 rv(0.3, -1.1, 0.4);
  EXPECT_MAT_NEAR(rot_exp(rv.normalized(), rv.norm()), oracle_R2(), 1e-15);
}

TEST(So3, ExpQuarterTurn) {
  Mat3 expected;
  expected << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  EXPECT_MAT_NEAR(rot_exp(e2(), kPi / 2), expected, 1e-15);
}

TEST(So3, ExpRejectsNonUnitAxis) {
  EXPECT_THROW(rot_exp(Vec3(1, 1, 0), 0.2), Error);
  EXPECT_THROW(rot_exp(Vec3(NAN, 0, 0), 0.2), Error);
}

TEST(So3, LogInvertsExp) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 axis = random_unit(rng);
    const double angle = std::uniform_real_distribution<double>(0.0, 3.1)(rng);
    EXPECT_MAT_NEAR(rot_log(rot_exp(axis, angle)), angle * axis, 1e-9);
  }
  EXPECT_MAT_NEAR(rot_log(Mat3::Identity()), Vec3::Zero(), 0.0);
}

TEST(So3, ExpIsRotation) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 r = random_rotation(rng);
    EXPECT_TRUE(is_rotation(r));
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(So3, ReorthonormalizeRestoresRotation) {
  const Mat3 r = oracle_R1();
  Mat3 noisy = r;
  noisy(0, 1) += 1e-5;
  noisy(2, 2) -= 2e-5;
  const Mat3 fixed = reorthonormalize(noisy);
  EXPECT_LT(orthogonality_error(fixed), 1e-14);
  EXPECT_NEAR(fixed.determinant(), 1.0, 1e-14);
  EXPECT_LT((fixed - r).norm(), 3e-5);
}

TEST(So3, ReorthonormalizeRejectsFarMatrices) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = 0.1;
  EXPECT_THROW(reorthonormalize(m), Error);
  EXPECT_THROW(reorthonormalize(-Mat3::Identity()), Error);
}

TEST(So3, HatLayout) {
  Mat3 expected;
  expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  EXPECT_MAT_NEAR(hat(Vec3(1, 2, 3)), expected, 0.0);
  EXPECT_MAT_NEAR(hat(Vec3::Zero()), Mat3::Zero(), 0.0);
  EXPECT_MAT_NEAR(vee(Mat3::Zero()), Vec3::Zero(), 0.0);
}

TEST(So3, HatAntiCommutes) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a(d(rng), d(rng), d(rng));
    const Vec3 b(d(rng), d(rng), d(rng));
    EXPECT_MAT_NEAR(hat(a) * b, -hat(b) * a, 1e-14);
  }
}

TEST(So3, VeeRejectsVisibleSymmetricPart) {
  Mat3 m = hat(Vec3(1, 2, 3));
  m(0, 1) += 1e-3;
  EXPECT_THROW(vee(m), Error);
}

TEST(So3, ExpQuarterTurnAboutE3) {
  Mat3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_MAT_NEAR(rot_exp(e3(), kPi / 2), expected, 1e-15);
  EXPECT_MAT_NEAR(rot_exp(e1(), 0.0), Mat3::Identity(), 0.0);
}

TEST(So3, ExpInverse) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = random_unit(rng);
    const double t = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    EXPECT_MAT_NEAR(rot_exp(a, t) * rot_exp(a, -t), Mat3::Identity(), 1e-14);
  }
}

TEST(So3, ReorthonormalizeSmallPerturbation) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat3 pert;
  for (int i = 0; i < 9; ++i) pert(i / 3, i % 3) = d(rng);
  const Mat3 m = Mat3::Identity() + 1e-6 * pert;
  const Mat3 r = reorthonormalize(m);
  EXPECT_TRUE(is_rotation(r, 1e-14));
  EXPECT_LT((r - m).norm(), 2e-6);
  const Mat3 exact = oracle_R2();
  EXPECT_MAT_NEAR(reorthonormalize(exact), exact, 1e-12);
}

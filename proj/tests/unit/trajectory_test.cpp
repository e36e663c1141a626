#include "test_util.hpp"

using namespace qt;

TEST(Poly8, RestToRestCoefficients) {
  const SmoothPoly8 p = rest_to_rest(0.0, 1.0, 0.0, 1.0);
  Eigen::Matrix<double, 9, 1> c;
  c << 0, 0, 0, 0, 0, 56, -140, 120, -35;
  EXPECT_MAT_NEAR(p.coefficients(), c, 1e-9);
  EXPECT_NEAR(p.eval(0.25), 0.0272979736328125, 1e-12);
  EXPECT_NEAR(p.eval(0.5), 0.36328125, 1e-12);
  EXPECT_NEAR(p.eval(0.75), 0.8861846923828125, 1e-12);
  EXPECT_NEAR(p.eval(0.25, 1), 0.46142578125, 1e-11);
  EXPECT_NEAR(p.eval(0.5, 1), 2.1875, 1e-11);
  EXPECT_NEAR(p.eval(0.75, 1), 1.38427734375, 1e-11);
}

TEST(Poly8, HandOffCoefficients) {
  const SmoothPoly8 p = fit_poly8(3.0, 5.0, {0, 1, 0, 0}, {1, 0, 0, 0});
  Eigen::Matrix<double, 9, 1> c;
  c << 0, 2, 0, 0, 0, -14, 28, -20, 5;
  EXPECT_MAT_NEAR(p.coefficients(), c, 1e-9);
  EXPECT_NEAR(p.eval(3.0, 1), 1.0, 1e-10);
}

TEST(Poly8, BoundaryConditionsHold) {
  const BoundaryJet a{1.5, -0.3, 2.0, 7.0};
  const BoundaryJet b{-4.0, 0.5, -1.0, 0.25};
  const SmoothPoly8 p = fit_poly8(2.0, 2.7, a, b);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(p.eval(2.0, k), a[static_cast<std::size_t>(k)], 1e-8 * std::pow(10.0, k));
    EXPECT_NEAR(p.eval(2.7, k), b[static_cast<std::size_t>(k)], 1e-8 * std::pow(10.0, k));
  }
  EXPECT_NEAR(p.eval(2.0, 4), 0.0, 1e-6);
}

TEST(Poly8, RejectsDegenerateSpan) {
  EXPECT_THROW(fit_poly8(1.0, 1.0, {0, 0, 0, 0}, {1, 0, 0, 0}), Error);
}

TEST(Flip, FullTurnProfile) {
  const FlipSpec spec;
  const FlipTrajectory f(spec);
  EXPECT_NEAR(f.peak_rate(), 14.765744491912491, 1e-6);
  EXPECT_MAT_NEAR(f(6.0).R_d, Mat3::Identity(), 1e-12);
  EXPECT_MAT_NEAR(f(7.0).R_d, Mat3::Identity(), 1e-9);
  EXPECT_MAT_NEAR(f(6.0).omega_d, Vec3::Zero(), 1e-12);
  EXPECT_MAT_NEAR(f(7.0).omega_d, Vec3::Zero(), 1e-9);
  EXPECT_MAT_NEAR(f(6.5).omega_d, Vec3(0, 2.0 * kPi * 2.1875, 0), 1e-9);
  EXPECT_MAT_NEAR(f(6.5).R_d, rot_exp(e2(), 2.0 * kPi * 0.36328125), 1e-12);
  EXPECT_NO_THROW(f.check_rate_bound(16.0));
  EXPECT_THROW(f.check_rate_bound(14.0), Error);
}

TEST(Flip, OutsideWindow) {
  const FlipTrajectory f(FlipSpec{});
  try {
    f(5.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfWindow);
  }
  EXPECT_THROW(f(7.01), Error);
}

TEST(Flip, ReferenceIsConsistent) {
  const FlipTrajectory f(FlipSpec{});
  const double h = 1e-6;
  for (double t = 6.05; t < 6.96; t += 0.1) {
    const Mat3 dR = (f(t + h).R_d - f(t - h).R_d) / (2 * h);
    EXPECT_MAT_NEAR(vee_unchecked(f(t).R_d.transpose() * dR), f(t).omega_d, 1e-6);
    EXPECT_MAT_NEAR((f(t + h).omega_d - f(t - h).omega_d) / (2 * h), f(t).omega_d_dot, 1e-5);
  }
}

TEST(PositionTrajectory, HoldsOutsideAndInterpolates) {
  const PositionTrajectory tr({{0.5, Vec3::Zero()}, {4.5, Vec3(2, 0, 10)}}, e1());
  EXPECT_MAT_NEAR(tr(0.0).x_d, Vec3::Zero(), 0.0);
  EXPECT_MAT_NEAR(tr(0.5).x_d, Vec3::Zero(), 1e-12);
  EXPECT_MAT_NEAR(tr(2.5).x_d, Vec3(2, 0, 10) * 0.36328125, 1e-10);
  EXPECT_MAT_NEAR(tr(4.5).x_d, Vec3(2, 0, 10), 0.0);
  EXPECT_MAT_NEAR(tr(6.0).x_d_dot, Vec3::Zero(), 0.0);
}

TEST(PositionTrajectory, HandOffVelocity) {
  HandOff h;
  h.v = Vec3(1.0, -0.5, 2.0);
  const PositionTrajectory tr({{7.0, Vec3(2, 0, 9)}, {10.0, Vec3(2, 0, 10)}}, e1(), h);
  EXPECT_MAT_NEAR(tr(7.0).x_d_dot, h.v, 1e-10);
  EXPECT_MAT_NEAR(tr(7.0).x_d, Vec3(2, 0, 9), 1e-12);
}

TEST(PositionTrajectory, RejectsBadInput) {
  EXPECT_THROW(PositionTrajectory({}, e1()), Error);
  EXPECT_THROW(PositionTrajectory({{1.0, Vec3::Zero()}, {1.0, Vec3::Ones()}}, e1()), Error);
  EXPECT_THROW(PositionTrajectory({{1.0, Vec3::Zero()}}, Vec3(1, 1, 0)), Error);
}

TEST(Poly8, CrossesHalfwayLate) {
  const SmoothPoly8 p = rest_to_rest(0.0, 1.0, 0.0, 1.0);
  EXPECT_NEAR(p.eval(0.559844795365234), 0.5, 1e-12);
}

TEST(Poly8, ConstantFit) {
  const SmoothPoly8 p = fit_poly8(-1.0, 2.0, {4.2, 0, 0, 0}, {4.2, 0, 0, 0});
  for (double t = -1.0; t <= 2.0; t += 0.25) EXPECT_NEAR(p.eval(t), 4.2, 1e-12);
}

TEST(Poly8, DerivativesMatchFiniteDifference) {
  const SmoothPoly8 p = fit_poly8(1.0, 3.0, {0.5, 1.0, -2.0, 0.3}, {2.0, -0.4, 0.1, 0.0});
  const double h = 1e-5;
  for (double t = 1.1; t < 3.0; t += 0.2) {
    for (int k = 0; k < 3; ++k) {
      const double fd = (p.eval(t + h, k) - p.eval(t - h, k)) / (2 * h);
      EXPECT_NEAR(p.eval(t, k + 1), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Flip, RateIntegratesToFullTurn) {
  const FlipTrajectory f(FlipSpec{});
  const int n = 2000;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * f(6.0 + k * h).omega_d.norm();
  }
  EXPECT_NEAR(sum * h / 3.0, 2.0 * kPi, 1e-6);
}

TEST(Flip, BaseAttitudeAtEnds) {
  FlipSpec spec;
  spec.base_attitude = oracle_R2();
  spec.axis = e1();
  const FlipTrajectory f(spec);
  EXPECT_MAT_NEAR(f(spec.start).R_d, oracle_R2(), 1e-12);
  EXPECT_MAT_NEAR(f(spec.start + spec.duration).R_d, oracle_R2(), 1e-9);
}

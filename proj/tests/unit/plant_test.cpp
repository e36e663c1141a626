#include "test_util.hpp"

using namespace qt;

TEST(Plant, DefaultsAreValid) {
  EXPECT_NO_THROW(QuadParams{}.validate());
  EXPECT_NEAR(QuadParams{}.hover_thrust_per_rotor(), 3.0043125, 1e-15);
}

TEST(Plant, ValidateNamesField) {
  QuadParams p;
  p.mass = -1.0;
  try {
    p.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("mass"), std::string::npos);
  }
  p = QuadParams{};
  p.inertia(0, 1) = 0.001;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Plant, MixerInverseMatchesOracle) {
  const QuadParams p;
  Mat4 expected;
  expected << 0.25, 0.0, -2.1739130434782608, -20.66115702479339,
              0.25, 2.1739130434782608, 0.0, 20.66115702479339,
              0.25, 0.0, 2.1739130434782608, -20.66115702479339,
              0.25, -2.1739130434782608, 0.0, 20.66115702479339;
  EXPECT_MAT_NEAR(mixing_matrix_inverse(p), expected, 1e-13);
  EXPECT_MAT_NEAR(mixing_matrix(p) * mixing_matrix_inverse(p), Mat4::Identity(), 1e-14);
  EXPECT_MAT_NEAR(mixing_matrix_inverse(p), mixing_matrix(p).inverse(), 1e-12);
}

TEST(Plant, WrenchRoundTrip) {
  const QuadParams p;
  const Vec3 u(0.1, -0.2, 0.05);
  const Wrench w = thrusts_to_wrench(wrench_to_thrusts(11.0, u, p), p);
  EXPECT_NEAR(w.f, 11.0, 1e-13);
  EXPECT_MAT_NEAR(w.u, u, 1e-14);
}

TEST(Plant, SaturationFlags) {
  const ThrustLimits lim;
  const SaturationResult r = saturate(ThrustVector(-0.1, 0.0, 3.0, 7.5), lim);
  EXPECT_MAT_NEAR(r.applied, ThrustVector(0.0, 0.0, 3.0, 6.9939), 0.0);
  EXPECT_TRUE(r.flags[0]);
  EXPECT_FALSE(r.flags[1]);
  EXPECT_FALSE(r.flags[2]);
  EXPECT_TRUE(r.flags[3]);
  EXPECT_TRUE(r.any());
}

TEST(Plant, HoverIsEquilibrium) {
  const QuadParams p;
  BodyState s;
  s.x = Vec3(1, 2, 3);
  const ThrustVector F = ThrustVector::Constant(p.hover_thrust_per_rotor());
  for (int k = 0; k < 1000; ++k) s = rk4_step(s, F, p, 1e-3);
  EXPECT_MAT_NEAR(s.x, Vec3(1, 2, 3), 1e-12);
  EXPECT_MAT_NEAR(s.v, Vec3::Zero(), 1e-12);
  EXPECT_MAT_NEAR(s.R, Mat3::Identity(), 1e-14);
}

TEST(Plant, FreeFallIsExact) {
  const QuadParams p;
  BodyState s;
  for (int k = 0; k < 500; ++k) s = rk4_step(s, ThrustVector::Zero(), p, 2e-3);
  EXPECT_NEAR(s.x.z(), -0.5 * 9.81, 1e-12);
  EXPECT_NEAR(s.v.z(), -9.81, 1e-12);
}

TEST(Plant, TorqueFreeSpinConservesMomentumAndEnergy) {
  const QuadParams p;
  BodyState s;
  s.omega = Vec3(3.0, 0.1, 2.0);
  const ThrustVector F = ThrustVector::Zero();
  const Vec3 L0 = s.R * p.inertia * s.omega;
  const double T0 = s.omega.dot(p.inertia * s.omega);
  for (int k = 0; k < 5000; ++k) s = rk4_step(s, F, p, 1e-3);
  EXPECT_LT((s.R * p.inertia * s.omega - L0).norm(), 1e-9);
  EXPECT_NEAR(s.omega.dot(p.inertia * s.omega), T0, 1e-10);
  EXPECT_TRUE(is_rotation(s.R));
}

TEST(Plant, RejectsBadStep) {
  EXPECT_THROW(rk4_step(BodyState{}, ThrustVector::Zero(), QuadParams{}, 0.0), Error);
  BodyState s;
  s.v.x() = INFINITY;
  try {
    rk4_step(s, ThrustVector::Zero(), QuadParams{}, 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteState);
  }
}

TEST(Plant, MixerCases) {
  const QuadParams p;
  const Wrench w = thrusts_to_wrench(ThrustVector::Ones(), p);
  EXPECT_EQ(w.f, 4.0);
  EXPECT_MAT_NEAR(w.u, Vec3::Zero(), 0.0);
  EXPECT_NEAR((mixing_matrix_inverse(p) * Vec4(5.5, 0, 0, 0)).sum(), 5.5, 1e-15);
  EXPECT_MAT_NEAR(wrench_to_thrusts(p.weight(), Vec3::Zero(), p), ThrustVector::Constant(3.0043125), 1e-15);
  EXPECT_MAT_NEAR(wrench_to_thrusts(0.0, Vec3(0, 0, p.torque_coeff), p), ThrustVector(-0.25, 0.25, -0.25, 0.25),
                  1e-15);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 u(d(rng), d(rng), d(rng));
    const double f = d(rng);
    const Wrench back = thrusts_to_wrench(wrench_to_thrusts(f, u, p), p);
    EXPECT_NEAR(back.f, f, 1e-12);
    EXPECT_MAT_NEAR(back.u, u, 1e-12);
  }
}

TEST(Plant, SaturationCases) {
  const ThrustLimits lim;
  const SaturationResult low = saturate(ThrustVector(-1, 3, 3, 3), lim);
  EXPECT_MAT_NEAR(low.applied, ThrustVector(0, 3, 3, 3), 0.0);
  EXPECT_TRUE(low.flags[0]);
  EXPECT_FALSE(low.flags[1] || low.flags[2] || low.flags[3]);
  const SaturationResult ok = saturate(ThrustVector(1, 2, 3, 4), lim);
  EXPECT_FALSE(ok.any());
  EXPECT_MAT_NEAR(ok.applied, ThrustVector(1, 2, 3, 4), 0.0);
}

TEST(Plant, DerivativeCases) {
  const QuadParams p;
  const StateDerivative hover = derivatives(BodyState{}, ThrustVector::Constant(p.hover_thrust_per_rotor()), p);
  EXPECT_MAT_NEAR(hover.v_dot, Vec3::Zero(), 1e-15);
  EXPECT_MAT_NEAR(hover.omega_dot, Vec3::Zero(), 0.0);
  EXPECT_MAT_NEAR(hover.R_dot, Mat3::Zero(), 0.0);
  EXPECT_MAT_NEAR(derivatives(BodyState{}, ThrustVector::Zero(), p).v_dot, Vec3(0, 0, -9.81), 0.0);
  BodyState spin;
  spin.omega = e3();
  EXPECT_MAT_NEAR(derivatives(spin, ThrustVector::Zero(), p).omega_dot, Vec3::Zero(), 0.0);
}

TEST(Plant, LongHoverHoldsPosition) {
  const QuadParams p;
  BodyState s;
  const ThrustVector F = ThrustVector::Constant(p.hover_thrust_per_rotor());
  for (int k = 0; k < 10000; ++k) s = rk4_step(s, F, p, 1e-3);
  EXPECT_LT(s.x.norm(), 1e-9);
}

TEST(Plant, SymmetricTopConservesMomentum) {
  QuadParams p;
  p.inertia = Vec3(0.02, 0.02, 0.03).asDiagonal();
  BodyState s;
  s.omega = Vec3(2.0, -1.0, 5.0);
  const Vec3 L0 = s.R * p.inertia * s.omega;
  for (int k = 0; k < 10000; ++k) s = rk4_step(s, ThrustVector::Zero(), p, 1e-3);
  EXPECT_LT((s.R * p.inertia * s.omega - L0).norm(), 1e-8);
}

TEST(Plant, FourthOrderConvergence) {
  const QuadParams p;
  const ThrustVector F(2.0, 3.5, 4.0, 2.5);
  auto integrate = [&](double dt, long n) {
    BodyState s;
    s.omega = Vec3(4.0, -6.0, 3.0);
    for (long k = 0; k < n; ++k) s = rk4_step(s, F, p, dt);
    return s;
  };
  const BodyState ref = integrate(1e-5, 100000);
  const BodyState a = integrate(1e-3, 1000);
  const BodyState b = integrate(5e-4, 2000);
  const double ratio = (a.R - ref.R).norm() / (b.R - ref.R).norm();
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Plant, FeedbackStepWithConstantLawMatchesHeldStep) {
  const QuadParams p;
  BodyState s;
  s.omega = Vec3(1, 2, 3);
  const ThrustVector F(1, 2, 3, 4);
  EXPECT_EQ(rk4_step(s, F, p, 1e-3), rk4_step_feedback(s, [&](const BodyState&) { return F; }, p, 1e-3));
}

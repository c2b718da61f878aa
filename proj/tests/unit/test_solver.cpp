#include <gtest/gtest.h>

#include <cmath>

#include "simest/estimators/point_estimators.hpp"
#include "simest/models/normal_model.hpp"
#include "simest/models/panel_model.hpp"
#include "simest/solver/solver.hpp"
#include "simest/solver/transforms.hpp"
#include "test_support.hpp"

using namespace simest;

namespace {

// Cofactor expansion; the brute-force determinant oracle.
double cofactor_det(const Matrix& m) {
  const Index n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (Index j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
  }
  return det;
}

ParamSpace free2() { return ParamSpace::unbounded({"a", "b"}); }

}  // namespace

TEST(MinimizeJ, ConvexQuadratic) {
  const ParamSpace s = ParamSpace::unbounded({"x"});
  const SolveReport r =
      minimize_J([](const Vector& t) { return Vector{{t[0] - 2.0}}; }, ParamVector(s, Vector{{0.0}}), Matrix::Identity(1, 1));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.status, SolveStatus::Converged);
  EXPECT_NEAR(r.solution[0], 2.0, 1e-9);
  EXPECT_LT(r.final_objective, 1e-10);
}

TEST(MinimizeJ, RosenbrockResiduals) {
  const SolveReport r = minimize_J([](const Vector& t) { return Vector{{1.0 - t[0], 10.0 * (t[1] - t[0] * t[0])}}; },
                                   ParamVector(free2(), Vector{{-1.2, 1.0}}), Matrix::Identity(2, 2));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], 1.0, 1e-9 * 10);
  EXPECT_NEAR(r.solution[1], 1.0, 1e-9 * 10);
}

TEST(MinimizeJ, NonFiniteEverywhereThrows) {
  EXPECT_ERROR_CODE(minimize_J([](const Vector&) { return Vector{{std::nan("")}}; },
                               ParamVector(ParamSpace::unbounded({"x"}), Vector{{0.0}}), Matrix::Identity(1, 1)),
                    ErrorCode::ObjectiveNaN);
}

TEST(MinimizeJ, NormalSmdMatchesClosedForm) {
  const NormalModel model(10, 0.0, 1.0);
  testgen::Generator gen(606);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sims = fixed_innovations(model, SeedSpec{606, static_cast<std::uint64_t>(trial)}, 1);
    const AuxVector psi(Vector{{gen.uniform(-2, 2), gen.uniform(0.3, 3)}});
    const VectorMap binding = simulated_binding(model, sims);
    const ParamVector start(model.space(), Vector{{gen.uniform(-3, 3), gen.uniform(0.2, 5)}});
    const SolveReport r = minimize_J([&](const Vector& t) { return Vector(psi.values() - binding(t)); }, start,
                                     Matrix::Identity(2, 2));
    const ParamVector exact = normal_exact_solve(psi, sims[0]);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.solution[0], exact[0], 1e-8);
    EXPECT_NEAR(r.solution[1], exact[1], 1e-8);
  }
}

TEST(SolveExactIdentified, IdentityBinding) {
  const SolveReport r = solve_exact_identified([](const Vector& t) { return t; }, AuxVector(Vector{{0.3, 1.7}}),
                                               ParamVector(free2(), Vector{{0.0, 0.0}}));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], 0.3, 1e-9);
  EXPECT_NEAR(r.solution[1], 1.7, 1e-9);
  ASSERT_TRUE(r.jac_logdet_abs.has_value());
  EXPECT_NEAR(*r.jac_logdet_abs, 0.0, 1e-8);
}

TEST(SolveExactIdentified, NormalClosedForm) {
  const NormalModel model(10, 0.0, 1.0);
  const AuxVector psi(Vector{{0.4, 1.3}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const InnovationSet eps = model.simulate_innovations(SeedSpec{707, s});
    const SolveReport r = solve_exact_identified(
        [&](const Vector& t) { return model.simulate_aux(ParamVector(model.space(), t), eps).values(); }, psi,
        model.truth());
    const ParamVector exact = normal_exact_solve(psi, eps);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.solution[0], exact[0], 1e-8);
    EXPECT_NEAR(r.solution[1], exact[1], 1e-8);
  }
}

TEST(SolveExactIdentified, PanelRoundTrip) {
  PanelDesign d;
  const DynamicPanelModel model(d);
  const AuxVector psi = model.aux_stats(model.simulate_data(model.truth(), model.simulate_innovations(SeedSpec{8, 0})));
  const InnovationSet eps = model.simulate_innovations(SeedSpec{8, 1});
  const VectorMap map = [&](const Vector& t) { return model.simulate_aux(ParamVector(model.space(), t), eps).values(); };
  const SolveReport r = solve_exact_identified(map, psi, model.truth());
  ASSERT_TRUE(r.converged);
  EXPECT_LT((map(r.solution.values()) - psi.values()).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(SolveExactIdentified, FixedPointStability) {
  const DynamicPanelModel model{PanelDesign{}};
  const AuxVector psi = model.aux_stats(model.simulate_data(model.truth(), model.simulate_innovations(SeedSpec{9, 0})));
  const InnovationSet eps = model.simulate_innovations(SeedSpec{9, 1});
  const VectorMap map = [&](const Vector& t) { return model.simulate_aux(ParamVector(model.space(), t), eps).values(); };
  const SolveReport first = solve_exact_identified(map, psi, model.truth());
  ASSERT_TRUE(first.converged);
  const SolveReport again = solve_exact_identified(map, psi, first.solution);
  EXPECT_TRUE(again.converged);
  EXPECT_LE(again.iterations, 2);
}

TEST(SolveExactIdentified, WeightingInvariance) {
  const DynamicPanelModel model{PanelDesign{}};
  const Matrix W = Vector{{1.0, 10.0, 100.0}}.asDiagonal();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const AuxVector psi =
        model.aux_stats(model.simulate_data(model.truth(), model.simulate_innovations(SeedSpec{10, s})));
    const InnovationSet eps = model.simulate_innovations(SeedSpec{11, s});
    const VectorMap map = [&](const Vector& t) {
      return model.simulate_aux(ParamVector(model.space(), t), eps).values();
    };
    const SolveReport a = solve_exact_identified(map, psi, model.truth());
    const SolveReport b = solve_exact_identified(map, psi, model.truth(), {}, &W);
    ASSERT_TRUE(a.converged && b.converged);
    EXPECT_LT((a.solution.values() - b.solution.values()).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(SolveExactIdentified, UnreachableTargetReportsFailure) {
  // sigma2 must be positive but the binding cannot reach a negative variance
  const ParamSpace s({"v"}, Vector::Zero(1), Vector::Constant(1, std::numeric_limits<double>::infinity()));
  const SolveReport r = solve_exact_identified([](const Vector& t) { return t; }, AuxVector(Vector{{-1.0}}),
                                               ParamVector(s, Vector{{1.0}}));
  EXPECT_FALSE(r.converged);
  EXPECT_NE(r.status, SolveStatus::Converged);
}

TEST(JacobianFd, IdentityMap) {
  const Matrix J = jacobian_fd([](const Vector& t) { return t; }, ParamVector(free2(), Vector{{0.5, -3.0}}));
  EXPECT_LT((J - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(JacobianFd, LinearMapProperty) {
  testgen::Generator gen(808);
  for (int trial = 0; trial < 50; ++trial) {
    const Index k = gen.size(1, 5);
    const Matrix A = gen.square(k);
    std::vector<std::string> names;
    for (Index i = 0; i < k; ++i) names.push_back("p" + std::to_string(i));
    Vector at(k);
    for (Index i = 0; i < k; ++i) at[i] = gen.uniform(-1, 1);
    const Matrix J = jacobian_fd([&](const Vector& t) { return Vector(A * t); },
                                 ParamVector(ParamSpace::unbounded(names), at));
    EXPECT_LT((J - A).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(JacobianFd, NormalModelMap) {
  const NormalModel model(10, 0.0, 1.0);
  const InnovationSet eps = model.simulate_innovations(SeedSpec{12, 0});
  const double ebar = eps.shocks.mean();
  const double ss = (eps.shocks.array() - ebar).square().mean();
  for (const double s2 : {0.3, 1.0, 4.0}) {
    const ParamVector at(model.space(), Vector{{0.2, s2}});
    const Matrix J = jacobian_fd([&](const Vector& t) { return model.simulate_aux(ParamVector(model.space(), t), eps).values(); }, at);
    // psi = (m + sigma ebar, sigma2 ss)
    const Matrix analytic{{1.0, ebar / (2.0 * std::sqrt(s2))}, {0.0, ss}};
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j)
        EXPECT_NEAR(J(i, j), analytic(i, j), 1e-6 * std::max(1.0, std::abs(analytic(i, j))));
    // d psi_1 / d sigma = ebar
    EXPECT_NEAR(J(0, 1) * 2.0 * std::sqrt(s2), ebar, 1e-6);
  }
}

TEST(JacobianFd, StepHalvingStability) {
  const DynamicPanelModel model{PanelDesign{}};
  const InnovationSet eps = model.simulate_innovations(SeedSpec{13, 0});
  const VectorMap map = [&](const Vector& t) { return model.simulate_aux(ParamVector(model.space(), t), eps).values(); };
  SolverConfig coarse, fine;
  coarse.fd_step_rel = 1e-5;
  fine.fd_step_rel = 5e-6;
  const Matrix a = jacobian_fd(map, model.truth(), coarse);
  const Matrix b = jacobian_fd(map, model.truth(), fine);
  EXPECT_LT(((a - b).array() / a.array().abs().max(1.0)).abs().maxCoeff(), 1e-6);
}

TEST(JacobianFd, OneSidedNearBound) {
  const ParamSpace s({"v"}, Vector::Zero(1), Vector::Constant(1, std::numeric_limits<double>::infinity()));
  const Matrix J = jacobian_fd([](const Vector& t) { return Vector{{t[0] * t[0]}}; }, ParamVector(s, Vector{{1e-9}}));
  EXPECT_NEAR(J(0, 0), 2e-9, 1e-8);
}

TEST(JacobianFd, NonFiniteEntry) {
  EXPECT_ERROR_CODE(jacobian_fd([](const Vector& t) { return Vector{{t[0] > 0.5 ? std::nan("") : t[0]}}; },
                                ParamVector(ParamSpace::unbounded({"x"}), Vector{{0.5}})),
                    ErrorCode::NonFiniteEntry);
}

TEST(Logabsdet, Examples) {
  EXPECT_DOUBLE_EQ(logabsdet(Matrix::Identity(3, 3)), 0.0);
  EXPECT_NEAR(logabsdet(Matrix(Vector{{2.0, 3.0}}.asDiagonal())), std::log(6.0), 1e-15);
  EXPECT_EQ(logabsdet(Matrix::Zero(2, 2)), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(signed_logdet(Matrix::Zero(2, 2)).sign, 0);
}

TEST(Logabsdet, CofactorOracleProperty) {
  testgen::Generator gen(909);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix m = gen.square(3);
    const double det = cofactor_det(m);
    if (std::abs(det) < 1e-6) continue;
    const SignedLogDet s = signed_logdet(m);
    EXPECT_NEAR(s.log_abs, std::log(std::abs(det)), 1e-10);
    EXPECT_EQ(s.sign, det > 0 ? 1 : -1);
  }
}

TEST(BoxTransform, RoundTripAndDerivative) {
  const ParamSpace s({"r", "b", "v"}, Vector{{-1.0, -std::numeric_limits<double>::infinity(), 0.0}},
                     Vector{{1.0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}});
  const BoxTransform tr(s);
  testgen::Generator gen(1010);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector th{{gen.uniform(-0.99, 0.99), gen.uniform(-10, 10), std::exp(gen.uniform(-5, 5))}};
    const Vector u = tr.to_unconstrained(th);
    EXPECT_LT((tr.to_constrained(u) - th).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, th.cwiseAbs().maxCoeff()));
    const Vector d = tr.derivative(u);
    for (Index j = 0; j < 3; ++j) {
      Vector up = u, dn = u;
      up[j] += 1e-6;
      dn[j] -= 1e-6;
      const double fd = (tr.to_constrained(up)[j] - tr.to_constrained(dn)[j]) / 2e-6;
      EXPECT_NEAR(d[j], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
    EXPECT_FALSE(tr.escaped(u));
  }
  EXPECT_TRUE(tr.escaped(Vector{{0.0, 0.0, -1000.0}}));
}

TEST(NelderMead, Quadratic) {
  const NelderMeadResult r = nelder_mead(
      [](const Vector& x) { return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0); },
      Vector{{0.0, 0.0}}, 0.5, 2000, 1e-16);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -2.0, 1e-5);
}

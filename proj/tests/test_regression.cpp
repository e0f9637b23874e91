#include <cmath>
#include <random>

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "ardl/distributions.hpp"
#include "ardl/errors.hpp"
#include "ardl/regression.hpp"
#include "test_support.hpp"

using namespace ardl;
using boost::multiprecision::cpp_bin_float_50;

TEST(Distributions, IncompleteBetaMatchesHighPrecision) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ab(0.2, 60.0), x(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double a = ab(rng), b = ab(rng), xv = x(rng);
    const double ref = static_cast<double>(
        boost::math::ibeta(cpp_bin_float_50(a), cpp_bin_float_50(b), cpp_bin_float_50(xv)));
    EXPECT_NEAR(dist::incomplete_beta(a, b, xv), ref, 1e-12 + 1e-10 * ref) << a << ' ' << b << ' ' << xv;
  }
  EXPECT_EQ(dist::incomplete_beta(2, 3, 0.0), 0.0);
  EXPECT_EQ(dist::incomplete_beta(2, 3, 1.0), 1.0);
}

TEST(Distributions, StudentTKnownValues) {
  // t = 2.0086 is the 97.5% point with 50 dof; t = 12.706 with 1 dof.
  EXPECT_NEAR(dist::student_t_two_sided_p(2.008559, 50), 0.05, 1e-6);
  EXPECT_NEAR(dist::student_t_two_sided_p(12.7062, 1), 0.05, 1e-5);
  EXPECT_NEAR(dist::student_t_cdf(0.0, 7), 0.5, 1e-15);
  EXPECT_NEAR(dist::student_t_two_sided_p(-2.5, 20), dist::student_t_two_sided_p(2.5, 20), 1e-15);
}

TEST(Distributions, FCriticalInvertsCdf) {
  for (double d1 : {1.0, 3.0, 7.0}) {
    for (double d2 : {10.0, 45.0, 300.0}) {
      for (double a : {0.01, 0.05, 0.10}) {
        const double c = dist::f_critical(a, d1, d2);
        EXPECT_NEAR(1.0 - dist::f_cdf(c, d1, d2), a, 1e-9);
      }
    }
  }
  // F(3, 50) at 5%: 2.7901
  EXPECT_NEAR(dist::f_critical(0.05, 3, 50), 2.790008, 1e-4);
}

namespace {

// Random problem with column scales spanning several decades plus mild collinearity.
void random_problem(std::mt19937_64& rng, Eigen::MatrixXd& X, Eigen::VectorXd& y) {
  std::uniform_int_distribution<int> pdist(1, 12);
  const int p = pdist(rng);
  std::uniform_int_distribution<int> ndist(p + 3, 300);
  const int n = ndist(rng);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> lscale(-3.0, 3.0), mix(0.0, 0.9);
  X.resize(n, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) X(i, j) = z(rng);
  }
  X.col(0).setOnes();
  for (int j = 2; j < p; ++j) X.col(j) = mix(rng) * X.col(j - 1) + (1.0 - mix(rng)) * X.col(j);
  for (int j = 1; j < p; ++j) X.col(j) *= std::pow(10.0, lscale(rng));
  Eigen::VectorXd b(p);
  for (int j = 0; j < p; ++j) b(j) = z(rng) / X.col(j).norm() * std::sqrt(static_cast<double>(n));
  y = X * b;
  for (int i = 0; i < n; ++i) y(i) += z(rng);
}

double condition(const Eigen::MatrixXd& X) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

TEST(Ols, MatchesNormalEquationOracleOnSample) {
  std::mt19937_64 rng(101);
  int checked = 0;
  while (checked < 150) {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    random_problem(rng, X, y);
    if (condition(X) > 1e8) continue;
    const auto fit = ols(X, y);
    const auto ref = ardl::testing::oracle_ols(X, y);
    ASSERT_TRUE(ref.ok);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      const double scale = std::max(std::abs(ref.beta(j)), std::sqrt(ref.covariance(j, j)));
      EXPECT_LE(std::abs(fit.coefficients(j) - ref.beta(j)), 1e-8 * scale);
      for (Eigen::Index k = 0; k < X.cols(); ++k) {
        const double s = std::sqrt(ref.covariance(j, j) * ref.covariance(k, k));
        EXPECT_LE(std::abs(fit.covariance(j, k) - ref.covariance(j, k)), 1e-8 * s);
      }
    }
    EXPECT_NEAR(fit.rss, ref.rss, 1e-9 * ref.rss);
    ++checked;
  }
}

TEST(Ols, ExactFitAndDegreesOfFreedom) {
  Eigen::MatrixXd X(5, 2);
  X << 1, 0, 1, 1, 1, 2, 1, 3, 1, 4;
  Eigen::VectorXd y = 2.0 + 3.0 * X.col(1).array();
  const auto f = ols(X, y, {"const", "t"});
  EXPECT_NEAR(f.coefficients(0), 2.0, 1e-12);
  EXPECT_NEAR(f.coefficients(1), 3.0, 1e-12);
  EXPECT_EQ(f.dof(), 3);
  EXPECT_EQ(f.index_of("t"), 1);
  EXPECT_THROW(f.index_of("x"), std::out_of_range);
}

TEST(Ols, RankDeficiencyNamesDependentColumn) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  Eigen::MatrixXd X(30, 3);
  for (int i = 0; i < 30; ++i) X.row(i) << 1.0, z(rng), 0.0;
  X.col(2) = 2.0 * X.col(1);
  Eigen::VectorXd y = Eigen::VectorXd::Random(30);
  try {
    ols(X, y, {"const", "a", "b"});
    FAIL();
  } catch (const RankDeficientError& e) {
    ASSERT_EQ(e.dependent_columns().size(), 1u);
    EXPECT_TRUE(e.dependent_columns()[0] == "a" || e.dependent_columns()[0] == "b");
  }
  EXPECT_FALSE(ols_rss(X, y).has_value());
  EXPECT_THROW(ols(X.topRows(3), y.head(3)), std::invalid_argument);
}

TEST(Ols, RssOnlyAgreesWithFullFit) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    random_problem(rng, X, y);
    const auto r = ols_rss(X, y);
    ASSERT_TRUE(r);
    EXPECT_NEAR(*r, ols(X, y).rss, 1e-9 * ols(X, y).rss);
  }
}

TEST(Wald, EqualsQuadraticFormOfCovariance) {
  // F = b_R' V_RR^-1 b_R / q is algebraically equal to the restricted-RSS form.
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  for (int t = 0; t < 100; ++t) {
    const int n = 60, p = 6;
    Eigen::MatrixXd X(n, p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) X(i, j) = j == 0 ? 1.0 : z(rng);
    }
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 0.3 * X(i, 2) + z(rng);
    const auto f = ols(X, y);
    const std::vector<int> R = {2, 3, 5};
    Eigen::VectorXd b(3);
    Eigen::MatrixXd V(3, 3);
    for (int a = 0; a < 3; ++a) {
      b(a) = f.coefficients(R[a]);
      for (int c = 0; c < 3; ++c) V(a, c) = f.covariance(R[a], R[c]);
    }
    const double quad = b.dot(V.ldlt().solve(b)) / 3.0;
    EXPECT_NEAR(wald_f(f, R), quad, 1e-9 * quad);
  }
}

TEST(Wald, EdgeCases) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(20, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Random(20);
  const auto f = ols(X, y);
  EXPECT_EQ(wald_f(f, {}), 0.0);
  EXPECT_THROW(wald_f(f, {0, 1}), std::invalid_argument);
}

TEST(Sic, FormulaAndPerfectFit) {
  EXPECT_NEAR(sic(2.0, 50, 4), 50 * std::log(2.0 / 50) + 4 * std::log(50.0), 1e-12);
  EXPECT_EQ(sic(0.0, 50, 4), -std::numeric_limits<double>::infinity());
}

TEST(Marks, ThresholdsAndSuperscripts) {
  EXPECT_EQ(mark_from_t(3.5, 40).level, MarkLevel::Pct1);
  EXPECT_EQ(mark_from_t(2.2, 40).level, MarkLevel::Pct5);
  EXPECT_EQ(mark_from_t(1.8, 40).level, MarkLevel::Pct10);
  EXPECT_EQ(mark_from_t(0.5, 40).level, MarkLevel::None);
  EXPECT_EQ(superscript(MarkLevel::Pct1), "a)");
  EXPECT_EQ(superscript(MarkLevel::Pct5), "b)");
  EXPECT_EQ(superscript(MarkLevel::Pct10), "c)");
  EXPECT_EQ(superscript(MarkLevel::None), "");
  const auto deg = mark_from_estimate(1.0, 0.0, 10);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_EQ(deg.level, MarkLevel::Pct1);
  EXPECT_TRUE(meets(mark_from_t(3.5, 40), Significance::Pct5));
  EXPECT_FALSE(meets(mark_from_t(1.8, 40), Significance::Pct5));
  EXPECT_EQ(parse_significance("5%"), Significance::Pct5);
  EXPECT_EQ(parse_significance("0.01"), Significance::Pct1);
  EXPECT_THROW(parse_significance("3%"), std::invalid_argument);
}

TEST(Ols, ConstantFitAndExactInterpolation) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(3, 2.0);
  // n > p is required; a 3x1 constant fit has dof 2.
  const auto f = ols(X, y);
  EXPECT_NEAR(f.coefficients(0), 2.0, 1e-15);
  EXPECT_LT(f.residuals.cwiseAbs().maxCoeff(), 1e-15);

  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  Eigen::MatrixXd A(40, 4);
  for (int i = 0; i < 40; ++i) A.row(i) << 1.0, z(rng), z(rng), z(rng);
  const Eigen::VectorXd b = (Eigen::VectorXd(4) << 0.5, -1.0, 2.0, 3.0).finished();
  const Eigen::VectorXd ye = A * b;
  EXPECT_LT(ols(A, ye).rss, 1e-18 * ye.squaredNorm());
}

TEST(Ols, OrthogonalityAndSymmetricCovariance) {
  std::mt19937_64 rng(14);
  int checked = 0;
  while (checked < 200) {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    random_problem(rng, X, y);
    if (condition(X) > 1e8) continue;
    const auto f = ols(X, y);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      // Column-normalised so the check is scale free.
      const double inner = std::abs(X.col(j).dot(f.residuals)) / (X.col(j).norm() * std::max(1.0, f.residuals.norm()));
      EXPECT_LT(inner / static_cast<double>(X.rows()), 1e-8);
    }
    const double asym = (f.covariance - f.covariance.transpose()).cwiseAbs().maxCoeff();
    EXPECT_LE(asym, 1e-8 * f.covariance.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (f.covariance + f.covariance.transpose()));
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8 * es.eigenvalues().maxCoeff());
    ++checked;
  }
}

TEST(Ols, ColumnScaleEquivariance) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> cd(-3.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    const int n = 80, p = 5;
    Eigen::MatrixXd X(n, p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) X(i, j) = j == 0 ? 1.0 : z(rng);
    }
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 1.0 + 0.5 * X(i, 1) - 0.3 * X(i, 3) + z(rng);
    const int j = 1 + t % (p - 1);
    const double c = std::pow(10.0, cd(rng));
    Eigen::MatrixXd Xc = X;
    Xc.col(j) *= c;
    const auto a = ols(X, y), b = ols(Xc, y);
    EXPECT_NEAR(b.coefficients(j) * c, a.coefficients(j), 1e-10 * std::abs(a.coefficients(j)));
    EXPECT_NEAR(b.std_errors(j) * c, a.std_errors(j), 1e-10 * a.std_errors(j));
    EXPECT_NEAR(sic(b), sic(a), 1e-8 * std::abs(sic(a)));
    EXPECT_NEAR(wald_f(b, {j, 2}), wald_f(a, {j, 2}), 1e-8 * wald_f(a, {j, 2}));
  }
}

TEST(Wald, ZeroEstimateGivesZeroF) {
  Eigen::MatrixXd X(4, 2);
  X << 1, 1, 1, -1, 1, 1, 1, -1;
  Eigen::VectorXd y(4);
  y << 3, 3, 5, 5;  // orthogonal to the second column
  const auto f = ols(X, y);
  EXPECT_NEAR(wald_f(f, {1}), 0.0, 1e-10);
}

TEST(Wald, TrueNullRejectedAtNominalRate) {
  int quiet = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(7000 + static_cast<unsigned>(s));
    std::normal_distribution<double> z;
    const int n = 500;
    Eigen::MatrixXd X(n, 4);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X.row(i) << 1.0, z(rng), z(rng), z(rng);
      y(i) = 0.2 + 0.7 * X(i, 1) - 0.4 * X(i, 2) + z(rng);  // column 3 has a zero coefficient
    }
    const auto f = ols(X, y);
    quiet += wald_f(f, {3}) < dist::f_critical(0.05, 1, f.dof()) ? 1 : 0;
  }
  EXPECT_GE(quiet, static_cast<int>(0.9 * seeds));
}

TEST(Sic, ClosedFormAndNestedIdentity) {
  EXPECT_NEAR(sic(100.0, 100, 2), 9.21034, 1e-5);
  std::mt19937_64 rng(16);
  std::normal_distribution<double> z;
  const int n = 120;
  Eigen::MatrixXd X(n, 5);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X.row(i) << 1.0, z(rng), z(rng), z(rng), z(rng);
    y(i) = X(i, 1) + z(rng);
  }
  const auto big = ols(X, y);
  const auto small = ols(X.leftCols(2), y);
  EXPECT_NEAR(sic(small) - sic(big), n * std::log(small.rss / big.rss) - 3 * std::log(double(n)), 1e-9);
}

TEST(Sic, NoiseRegressorUsuallyRaisesCriterion) {
  int raised = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(8000 + static_cast<unsigned>(s));
    std::normal_distribution<double> z;
    const int n = 200;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X.row(i) << 1.0, z(rng), z(rng);
      y(i) = 1.0 + 2.0 * X(i, 1) + z(rng);
    }
    raised += sic(ols(X, y)) > sic(ols(X.leftCols(2), y)) ? 1 : 0;
  }
  EXPECT_GE(raised, static_cast<int>(0.9 * seeds));
}

TEST(Distributions, TwoSidedPMatchesHighPrecisionOracle) {
  for (double dof : {1.0, 2.0, 5.0, 13.0, 30.0, 57.0, 120.0, 500.0}) {
    for (double t : {0.0, 0.1, 0.5, 1.0, 1.645, 1.96, 2.5, 3.0, 4.0, 6.0, 10.0}) {
      const cpp_bin_float_50 d(dof), tt(t);
      const double ref = static_cast<double>(
          boost::math::ibeta(d / 2, cpp_bin_float_50(0.5), d / (d + tt * tt)));
      const double got = dist::student_t_two_sided_p(t, dof);
      EXPECT_NEAR(got, ref, 1e-8) << t << ' ' << dof;
      if (ref > 1e-10) EXPECT_NEAR(got, ref, 1e-6 * ref) << t << ' ' << dof;
    }
  }
}

TEST(Marks, ZeroAndLargeT) {
  EXPECT_EQ(mark_from_t(0.0, 50).level, MarkLevel::None);
  EXPECT_EQ(mark_from_t(10.0, 50).level, MarkLevel::Pct1);
  EXPECT_EQ(mark_from_t(-10.0, 50).level, MarkLevel::Pct1);
}

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ardl {

/// Column declared dependent when its QR pivot is below this fraction of the largest pivot.
inline constexpr double kRankTolerance = 1e-10;

/**
 * @brief Ordinary least-squares fit.
 *
 * Keeps the design and response so that restricted models (Wald F) can be
 * re-estimated from the fit alone.
 */
struct OlsFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd residuals;
  double sigma2 = 0.0;  ///< rss / (n - p)
  double rss = 0.0;
  Eigen::MatrixXd covariance;  ///< sigma2 * (X'X)^-1
  int n_obs = 0;
  int n_params = 0;
  std::vector<std::string> column_names;

  Eigen::MatrixXd design;
  Eigen::VectorXd response;

  int dof() const noexcept { return n_obs - n_params; }
  double t_ratio(Eigen::Index j) const { return coefficients(j) / std_errors(j); }
  Eigen::Index index_of(std::string_view name) const;  // throws std::out_of_range
};

/**
 * Least squares via column-pivoted Householder QR (never the normal equations).
 *
 * Throws std::invalid_argument if n <= p, RankDeficientError naming the
 * dependent columns if rank(X) < p at kRankTolerance.
 */
OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> column_names = {});

/// Residual sum of squares only; nullopt when X is rank deficient or n <= p.
/// This is the lag-search hot path, so no covariance is formed.
std::optional<double> ols_rss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/**
 * F statistic for H0: the coefficients at `restricted` are all zero.
 *
 * F = ((RSS_r - RSS_u) / q) / (RSS_u / (n - p)), RSS_r from re-estimating
 * with those columns deleted. An empty set gives 0. Restricting every column
 * is an error.
 */
double wald_f(const OlsFit& fit, const std::vector<int>& restricted);

/// Schwarz criterion n ln(RSS/n) + p ln(n); -infinity for a perfect fit.
double sic(const OlsFit& fit);
double sic(double rss, int n_obs, int n_params);

enum class MarkLevel { Pct1, Pct5, Pct10, None };

/// Significance star from a two-sided Student-t p-value.
struct SignificanceMark {
  MarkLevel level = MarkLevel::None;
  double p_value = 1.0;
  /// Zero standard error with a nonzero coefficient; marked 1% but suspect.
  bool degenerate = false;
};

enum class Significance { Pct1, Pct5, Pct10 };

double alpha_of(Significance s);
std::string_view to_string(Significance s);
Significance parse_significance(std::string_view text);  // "1", "5%", "0.05", ...
std::string_view to_string(MarkLevel level);
/// Conventional table superscript: "a)" for 1%, "b)" for 5%, "c)" for 10%, "" otherwise.
std::string_view superscript(MarkLevel level);

/// True when the mark is at least as strong as `s` (a 1% mark meets 5%).
bool meets(const SignificanceMark& mark, Significance s);

SignificanceMark mark_from_t(double t, double dof);
SignificanceMark mark_from_estimate(double coefficient, double std_error, double dof);

/// One mark per coefficient, from t = b / se with n - p degrees of freedom.
std::vector<SignificanceMark> t_marks(const OlsFit& fit);

}  // namespace ardl

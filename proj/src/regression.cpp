#include "ardl/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ardl/distributions.hpp"
#include "ardl/errors.hpp"

namespace ardl {

Eigen::Index OlsFit::index_of(std::string_view name) const {
  auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) throw std::out_of_range("no column '" + std::string(name) + "' in fit");
  return static_cast<Eigen::Index>(it - column_names.begin());
}

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::vector<std::string> column_names) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n) throw std::invalid_argument("ols: response length does not match design rows");
  if (n <= p) {
    throw std::invalid_argument("ols: need more observations than parameters (n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
  }
  if (column_names.empty()) {
    for (Eigen::Index j = 0; j < p; ++j) column_names.push_back("x" + std::to_string(j));
  }
  if (static_cast<Eigen::Index>(column_names.size()) != p) {
    throw std::invalid_argument("ols: column name count does not match design");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < p) {
    std::vector<std::string> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index j = qr.rank(); j < p; ++j) dependent.push_back(column_names[static_cast<std::size_t>(perm(j))]);
    std::sort(dependent.begin(), dependent.end());
    std::ostringstream msg;
    msg << "design matrix is rank deficient (rank " << qr.rank() << " of " << p << "); dependent columns:";
    for (const auto& d : dependent) msg << ' ' << d;
    throw RankDeficientError(msg.str(), std::move(dependent));
  }

  OlsFit fit;
  fit.n_obs = static_cast<int>(n);
  fit.n_params = static_cast<int>(p);
  fit.column_names = std::move(column_names);
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.rss = fit.residuals.squaredNorm();
  fit.sigma2 = fit.rss / static_cast<double>(n - p);

  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
  const auto& perm = qr.colsPermutation();
  Eigen::MatrixXd xtx_inv = perm * inner * perm.transpose();
  xtx_inv = 0.5 * (xtx_inv + xtx_inv.transpose()).eval();
  fit.covariance = fit.sigma2 * xtx_inv;
  fit.std_errors = fit.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  fit.design = X;
  fit.response = y;
  return fit;
}

std::optional<double> ols_rss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() <= X.cols()) return std::nullopt;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < X.cols()) return std::nullopt;
  // Residual = part of Q'y beyond the first p components.
  Eigen::VectorXd qty = y;
  qty.applyOnTheLeft(qr.householderQ().transpose());
  return qty.tail(X.rows() - X.cols()).squaredNorm();
}

double wald_f(const OlsFit& fit, const std::vector<int>& restricted) {
  if (restricted.empty()) return 0.0;
  const int p = fit.n_params;
  std::vector<bool> drop(static_cast<std::size_t>(p), false);
  for (int j : restricted) {
    if (j < 0 || j >= p) throw std::out_of_range("wald_f: restricted index out of range");
    drop[static_cast<std::size_t>(j)] = true;
  }
  const int q = static_cast<int>(std::count(drop.begin(), drop.end(), true));
  if (q == p) throw std::invalid_argument("wald_f: cannot restrict every column (no intercept would remain)");

  Eigen::MatrixXd Xr(fit.n_obs, p - q);
  for (int j = 0, c = 0; j < p; ++j) {
    if (!drop[static_cast<std::size_t>(j)]) Xr.col(c++) = fit.design.col(j);
  }
  const auto rss_r = ols_rss(Xr, fit.response);
  if (!rss_r) throw RankDeficientError("wald_f: restricted model is rank deficient", {});
  return ((*rss_r - fit.rss) / q) / (fit.rss / fit.dof());
}

double sic(double rss, int n_obs, int n_params) {
  if (rss <= 0.0) return -std::numeric_limits<double>::infinity();
  const double n = n_obs;
  return n * std::log(rss / n) + n_params * std::log(n);
}

double sic(const OlsFit& fit) { return sic(fit.rss, fit.n_obs, fit.n_params); }

double alpha_of(Significance s) {
  switch (s) {
    case Significance::Pct1: return 0.01;
    case Significance::Pct5: return 0.05;
    case Significance::Pct10: return 0.10;
  }
  return 0.05;
}

std::string_view to_string(Significance s) {
  switch (s) {
    case Significance::Pct1: return "1%";
    case Significance::Pct5: return "5%";
    case Significance::Pct10: return "10%";
  }
  return "5%";
}

Significance parse_significance(std::string_view text) {
  if (text == "1" || text == "1%" || text == "0.01") return Significance::Pct1;
  if (text == "5" || text == "5%" || text == "0.05") return Significance::Pct5;
  if (text == "10" || text == "10%" || text == "0.1" || text == "0.10") return Significance::Pct10;
  throw std::invalid_argument("significance must be one of 1%, 5%, 10%; got '" + std::string(text) + "'");
}

std::string_view to_string(MarkLevel level) {
  switch (level) {
    case MarkLevel::Pct1: return "1%";
    case MarkLevel::Pct5: return "5%";
    case MarkLevel::Pct10: return "10%";
    case MarkLevel::None: return "none";
  }
  return "none";
}

std::string_view superscript(MarkLevel level) {
  switch (level) {
    case MarkLevel::Pct1: return "a)";
    case MarkLevel::Pct5: return "b)";
    case MarkLevel::Pct10: return "c)";
    case MarkLevel::None: return "";
  }
  return "";
}

bool meets(const SignificanceMark& mark, Significance s) {
  switch (s) {
    case Significance::Pct1: return mark.level == MarkLevel::Pct1;
    case Significance::Pct5: return mark.level == MarkLevel::Pct1 || mark.level == MarkLevel::Pct5;
    case Significance::Pct10: return mark.level != MarkLevel::None;
  }
  return false;
}

SignificanceMark mark_from_t(double t, double dof) {
  SignificanceMark m;
  m.p_value = dist::student_t_two_sided_p(t, dof);
  if (m.p_value < 0.01) {
    m.level = MarkLevel::Pct1;
  } else if (m.p_value < 0.05) {
    m.level = MarkLevel::Pct5;
  } else if (m.p_value < 0.10) {
    m.level = MarkLevel::Pct10;
  }
  return m;
}

SignificanceMark mark_from_estimate(double coefficient, double std_error, double dof) {
  if (std_error == 0.0) {
    SignificanceMark m;
    if (coefficient != 0.0) {
      m.level = MarkLevel::Pct1;
      m.p_value = 0.0;
      m.degenerate = true;
    }
    return m;
  }
  return mark_from_t(coefficient / std_error, dof);
}

std::vector<SignificanceMark> t_marks(const OlsFit& fit) {
  if (fit.dof() < 1) throw std::invalid_argument("t_marks: need at least one residual degree of freedom");
  std::vector<SignificanceMark> marks;
  marks.reserve(static_cast<std::size_t>(fit.n_params));
  for (Eigen::Index j = 0; j < fit.coefficients.size(); ++j) {
    marks.push_back(mark_from_estimate(fit.coefficients(j), fit.std_errors(j), fit.dof()));
  }
  return marks;
}

}  // namespace ardl

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "windcast/model.hpp"
#include "windcast/optim.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Monahan reparameterization: partial autocorrelations in (-1,1)^k map
// bijectively onto stationary AR coefficient vectors.
VecX ar_from_pacf(const VecX& r);
VecX pacf_from_ar(const VecX& phi);

// Blockwise bijection between the natural parameter vector
//   [theta | p | d | ar | ma | alpha0 | alpha | gamma | beta | delta | xi | nu]
// and an unconstrained optimization vector.  Every natural point produced by
// to_natural satisfies the model constraints by construction, except the
// exponent bounds (0.05, 100] which the objective re-checks.
class ParamTransform {
public:
  ParamTransform(index_t n_theta, index_t n_p, Orders orders);

  index_t size() const { return size_; }
  VecX to_unconstrained(const VecX& natural) const;
  VecX to_natural(const VecX& u) const;

  VecX pack(const ModelParams& params) const;
  ModelParams unpack(const VecX& natural, int truncation) const;

  // Block offsets into the packed vector.
  index_t theta_ofs() const { return 0; }
  index_t p_ofs() const { return m_; }
  index_t d_ofs() const { return m_ + np_; }
  index_t ar_ofs() const { return d_ofs() + 1; }
  index_t ma_ofs() const { return ar_ofs() + j_; }
  index_t alpha0_ofs() const { return ma_ofs() + q_; }
  index_t alpha_ofs() const { return alpha0_ofs() + 1; }
  index_t gamma_ofs() const { return alpha_ofs() + bq_; }
  index_t beta_ofs() const { return gamma_ofs() + bq_; }
  index_t delta_ofs() const { return beta_ofs() + bp_; }
  index_t xi_ofs() const { return delta_ofs() + 1; }
  index_t nu_ofs() const { return xi_ofs() + 1; }

  index_t n_theta() const { return m_; }
  index_t n_p() const { return np_; }

private:
  index_t m_, np_;
  index_t j_, q_, bq_, bp_;
  index_t size_;
};

std::vector<std::string> param_labels(const SeasonalSpec& spec, Orders orders,
                                      ModelKind kind);

// Negative quasi log-likelihood, summed over observations.  +inf when the
// parameter point is rejected (non-finite intermediate, invalid exponents,
// degenerate scale path).
double qml_negloglik(const VecX& w, double t0, const ModelParams& params,
                     const SeasonalSpec& spec);

// Residual decomposition of a series under fixed parameters. spec must carry
// the exponents actually used (params.p overrides when non-empty).
struct ResidualPaths {
  VecX eps, z, sigma, eta;
  double nll_sum = 0.0;
};
ResidualPaths residual_paths(const VecX& w, double t0, const ModelParams& params,
                             const SeasonalSpec& spec);

// Stage-one start values: OLS for the regression block, and for pgen an
// alternating sweep over the exponents (scalar minimization of the RSS, one
// exponent at a time, re-solving the regression after each accepted move).
struct StageOneResult {
  VecX theta;
  VecX p;      // empty for fourier
  VecX eps;    // residuals at the stage-one solution
  double rss = 0.0;
};
StageOneResult stage_one(const VecX& w, double t0, const SeasonalSpec& spec,
                         ModelKind kind, int max_sweeps = 6);

// Likelihood evaluation with stage caching, for the coordinate-wise
// perturbation pattern of finite-difference gradients.  Exposed for tests.
class QmlProblem {
public:
  QmlProblem(VecX w, double t0, const SeasonalSpec& spec, Orders orders,
             ModelKind kind, int truncation = 1000);
  ~QmlProblem();
  QmlProblem(const QmlProblem&) = delete;
  QmlProblem& operator=(const QmlProblem&) = delete;

  index_t size() const { return transform_.size(); }
  const ParamTransform& transform() const { return transform_; }

  // Mean negative log-likelihood (sum / n); the optimizer's objective.
  double operator()(const VecX& u);

  VecX start_unconstrained(const StageOneResult& s1) const;
  ModelParams params_at(const VecX& u) const;
  SeasonalSpec spec_with(const ModelParams& params) const;

  index_t n() const { return w_.size(); }

  // Residual paths at the given point (recomputed, not cached).
  struct Paths {
    VecX eps, z, sigma, eta;
    double nll_sum = 0.0;
  };
  Paths paths_at(const VecX& u) const;

  long long evaluations() const { return evals_; }

private:
  double eval_natural(const VecX& natural);

  VecX w_;
  double t0_;
  SeasonalSpec spec_;
  Orders orders_;
  ModelKind kind_;
  int trunc_;
  ParamTransform transform_;

  // stage caches; each stage remembers its inputs and its upstream version
  struct Stage {
    VecX key;
    long long upstream = -1;
    long long version = 0;
    bool valid = false;
  };
  Stage st_design_, st_eps_, st_lin_, st_scale_, st_nll_;
  std::vector<VecX> marg1_, marg2_;  // per-function seasonal factors
  MatX X_;
  VecX eps_, z_;
  ArrX sd_;
  double nll_sum_ = 0.0;
  struct FracConv;                   // FFT workspace for the fractional filter
  std::unique_ptr<FracConv> conv_;
  long long evals_ = 0;

  void rebuild_design(const VecX& p, const VecX& old_p);
};

struct FitOptions {
  int truncation = 1000;
  int max_iterations = 2000;
  double rel_f_tol = 1e-8;
  double grad_tol = 1e-5;
  bool compute_se = true;
  int stage1_sweeps = 6;
};

FitResult fit(const VecX& w, double t0, const SeasonalSpec& spec,
              Orders orders, ModelKind kind, const FitOptions& opts = {});

// Order selection by BIC over a candidate grid.  Non-converged candidates are
// skipped; ties go to the candidate with fewer free parameters.
struct SelectionEntry {
  Orders orders;
  double bic = 0.0;
  bool converged = false;
  int n_params = 0;
};
struct SelectionResult {
  Orders orders;
  FitResult best;
  std::vector<SelectionEntry> table;
};
SelectionResult select_order(const VecX& w, double t0, const SeasonalSpec& spec,
                             const std::vector<Orders>& candidates,
                             ModelKind kind, const FitOptions& opts = {});

// Wald-style significance table.  Null values: 2 for exponents, 1 for the
// asymmetry parameter xi, 0 for everything else.
struct SignificanceRow {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double null_value = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;
};
std::vector<SignificanceRow> significance_report(const FitResult& fit);

} // namespace windcast

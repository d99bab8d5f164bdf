#pragma once

#include <string>
#include <vector>

#include "windcast/aparch.hpp"
#include "windcast/arfima.hpp"
#include "windcast/seasonal.hpp"
#include "windcast/skewt.hpp"
#include "windcast/types.hpp"

namespace windcast {

// fourier: classical trigonometric mean, all exponents pinned to 2.
// pgen: the exponents join the parameter vector.
enum class ModelKind { fourier, pgen };

inline const char* model_kind_name(ModelKind k) {
  return k == ModelKind::fourier ? "fourier" : "pgen";
}

// Dynamic orders: j AR lags, q MA lags, Q shock lags, P scale lags.
struct Orders {
  int j = 2;
  int q = 1;
  int Q = 1;
  int P = 2;
};

struct ModelParams {
  VecX theta;           // regression coefficients in design-column order
  VecX p;               // packed exponents (empty for fourier)
  ArfimaParams arfima;
  AparchParams aparch;
  SkewTParams skewt;
};

struct FitResult {
  ModelKind kind = ModelKind::fourier;
  Orders orders;
  SeasonalSpec spec;    // carries the fitted exponents for pgen
  ModelParams params;
  std::vector<std::string> labels;  // one per free parameter
  VecX std_errors;      // natural scale; empty unless se_available
  bool se_available = false;
  double loglik = 0.0;  // sum over observations
  double bic = 0.0;     // (-2 loglik + k log n) / n
  VecX eps;             // regression residuals
  VecX z;               // innovations (one-step mean prediction errors)
  VecX sigma;           // conditional scales
  VecX eta;             // standardized residuals z/sigma
  bool converged = false;
  int iterations = 0;
  double t0 = 0.0;      // global time index of the first fitted observation
  index_t n = 0;

  int n_free_params() const { return static_cast<int>(labels.size()); }
};

} // namespace windcast

#include "windcast/skewt.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "windcast/quad.hpp"

namespace windcast {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Density pieces shared by the scalar and vectorized paths.
struct Kernel {
  double xi, nu;
  double sigma_print;   // sqrt(nu/(nu-2)), the scale printed in the density
  double shift, scale;  // standardization map
  double log_const;     // everything outside the (1 + w^2/nu) factor
  double half_exp;      // (nu+1)/2

  explicit Kernel(const SkewTParams& p) : xi(p.xi), nu(p.nu) {
    sigma_print = std::sqrt(nu / (nu - 2.0));
    const auto st = skew_t_standardization(p);
    shift = st.mean_shift;
    scale = st.scale;
    half_exp = 0.5 * (nu + 1.0);
    const double log_t_const = std::lgamma(half_exp) - std::lgamma(0.5 * nu)
                             - 0.5 * std::log(nu * kPi);
    log_const = std::log(scale / sigma_print) + std::log(2.0 / (xi + 1.0 / xi))
              + log_t_const;
  }

  // w is the argument fed to the symmetric t kernel.
  double w_of(double eta) const {
    const double y = (scale * eta + shift) / sigma_print;
    return y >= 0.0 ? y / xi : y * xi;
  }

  double logpdf(double eta) const {
    const double w = w_of(eta);
    return log_const - half_exp * std::log1p(w * w / nu);
  }
};

} // namespace

SkewTParams SkewTParams::make(double xi, double nu) {
  if (!(xi > 0.0)) throw std::invalid_argument("SkewTParams: xi must be positive");
  if (!(nu > 2.0)) throw std::invalid_argument("SkewTParams: nu must exceed 2");
  return SkewTParams{xi, nu};
}

SkewTStandardization skew_t_standardization(const SkewTParams& params) {
  const double xi = params.xi, nu = params.nu;
  if (!(nu > 2.0)) throw std::invalid_argument("skew_t_standardization: nu must exceed 2");
  // Absolute moments of the symmetric t and the two-piece tilting pattern:
  // E[Y^r] = M_r (xi^{r+1} + (-1)^r xi^{-(r+1)}) / (xi + 1/xi).
  const double m1 = 2.0 * std::sqrt(nu) * std::exp(std::lgamma(0.5 * (nu + 1.0))
                  - std::lgamma(0.5 * nu)) / ((nu - 1.0) * std::sqrt(kPi));
  const double m2 = nu / (nu - 2.0);
  const double ey = m1 * (xi - 1.0 / xi);
  const double eyy = m2 * (xi * xi * xi + 1.0 / (xi * xi * xi)) / (xi + 1.0 / xi);
  const double sigma_print = std::sqrt(nu / (nu - 2.0));
  SkewTStandardization st;
  st.mean_shift = sigma_print * ey;
  st.scale = sigma_print * std::sqrt(eyy - ey * ey);
  return st;
}

double skew_t_logpdf(double x, const SkewTParams& params) {
  return Kernel(params).logpdf(x);
}

ArrX skew_t_logpdf(const ArrX& x, const SkewTParams& params) {
  const Kernel k(params);
  const ArrX y = (k.scale * x + k.shift) / k.sigma_print;
  const ArrX w = (y >= 0.0).select(y / k.xi, y * k.xi);
  return k.log_const - k.half_exp * (1.0 + w.square() / k.nu).log();
}

VecX skew_t_sample(const SkewTParams& params, Rng& rng, index_t n) {
  if (n < 1) throw std::invalid_argument("skew_t_sample: n must be positive");
  const auto st = skew_t_standardization(params);
  const double xi = params.xi;
  const double p_right = xi * xi / (1.0 + xi * xi);
  const double sigma_print = std::sqrt(params.nu / (params.nu - 2.0));
  VecX out(n);
  for (index_t i = 0; i < n; ++i) {
    const double side = rng.uniform01();
    const double t = std::abs(rng.student_t(params.nu));
    const double y = side < p_right ? xi * t : -t / xi;
    out[i] = (sigma_print * y - st.mean_shift) / st.scale;
  }
  return out;
}

double asym_power_moment(double gamma, double delta, const SkewTParams& params) {
  if (!(std::abs(gamma) < 1.0))
    throw std::invalid_argument("asym_power_moment: need |gamma| < 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("asym_power_moment: delta must be positive");
  if (delta >= params.nu)
    throw std::invalid_argument("asym_power_moment: moment does not exist (delta >= nu)");

  using Key = std::tuple<double, double, double, double>;
  static std::map<Key, double> cache;
  static std::shared_mutex cache_lock;
  const Key key{gamma, delta, params.xi, params.nu};
  {
    std::shared_lock lock(cache_lock);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const Kernel k(params);
  // (|eta| - gamma*eta)^delta splits into one-sided absolute moments.
  auto pos = [&](double e) { return std::pow(e, delta) * std::exp(k.logpdf(e)); };
  auto neg = [&](double e) { return std::pow(e, delta) * std::exp(k.logpdf(-e)); };
  const double margin = params.nu - delta;
  const double value =
      std::pow(1.0 - gamma, delta) * integrate_halfline(pos, 1e-11, margin)
    + std::pow(1.0 + gamma, delta) * integrate_halfline(neg, 1e-11, margin);

  std::unique_lock lock(cache_lock);
  cache.emplace(key, value);
  return value;
}

} // namespace windcast

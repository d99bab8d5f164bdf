#include "windcast/estimation.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>

#include "windcast/errors.hpp"
#include "windcast/special.hpp"

namespace windcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// tanh clamped away from +-1 so the inverse maps (d, gamma, pacf) stay in
// their open intervals for any finite input.
double tanh1(double u) {
  const double lim = 1.0 - 1e-12;
  const double t = std::tanh(u);
  return t > lim ? lim : (t < -lim ? -lim : t);
}

// exp clamped to a finite positive range so the positivity maps also stay in
// their open intervals for any finite input (companion of tanh1).
double exp1(double u) { return std::exp(std::min(std::max(u, -690.0), 690.0)); }

double safe_log(double v) { return std::log(std::max(v, 1e-300)); }

double nll_from_scale(const VecX& z, const ArrX& sd, double delta,
                      const SkewTParams& skewt) {
  if (!sd.allFinite() || (sd <= 0.0).any()) return kInf;
  const ArrX logsig = sd.log() * (1.0 / delta);
  const ArrX eta = z.array() * (-logsig).exp();
  const double nll = logsig.sum() - skew_t_logpdf(eta, skewt).sum();
  return std::isfinite(nll) ? nll : kInf;
}

bool same_key(const VecX& a, const VecX& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

} // namespace

VecX ar_from_pacf(const VecX& r) {
  const index_t k = r.size();
  VecX a = r;
  VecX prev(k);
  for (index_t m = 1; m < k; ++m) {
    prev.head(m) = a.head(m);
    for (index_t i = 0; i < m; ++i) a[i] = prev[i] - r[m] * prev[m - 1 - i];
    a[m] = r[m];
  }
  return a;
}

VecX pacf_from_ar(const VecX& phi) {
  const index_t k = phi.size();
  VecX a = phi;
  VecX r(k);
  for (index_t m = k - 1; m >= 1; --m) {
    const double rm = a[m];
    if (!(std::abs(rm) < 1.0))
      throw std::invalid_argument("pacf_from_ar: coefficients are not stationary");
    r[m] = rm;
    const double den = 1.0 - rm * rm;
    VecX prev = a.head(m).eval();
    for (index_t i = 0; i < m; ++i) a[i] = (prev[i] + rm * prev[m - 1 - i]) / den;
  }
  if (k > 0) {
    if (!(std::abs(a[0]) < 1.0))
      throw std::invalid_argument("pacf_from_ar: coefficients are not stationary");
    r[0] = a[0];
  }
  return r;
}

ParamTransform::ParamTransform(index_t n_theta, index_t n_p, Orders orders)
    : m_(n_theta), np_(n_p), j_(orders.j), q_(orders.q), bq_(orders.Q), bp_(orders.P) {
  if (m_ < 1) throw std::invalid_argument("ParamTransform: no regression columns");
  if (np_ < 0 || j_ < 0 || q_ < 0 || bq_ < 0 || bp_ < 0)
    throw std::invalid_argument("ParamTransform: negative block size");
  size_ = m_ + np_ + 1 + j_ + q_ + 1 + 2 * bq_ + bp_ + 3;
}

VecX ParamTransform::to_unconstrained(const VecX& natural) const {
  if (natural.size() != size_)
    throw std::invalid_argument("to_unconstrained: size mismatch");
  VecX u(size_);
  u.segment(theta_ofs(), m_) = natural.segment(theta_ofs(), m_);
  for (index_t i = 0; i < np_; ++i) u[p_ofs() + i] = safe_log(natural[p_ofs() + i]);
  u[d_ofs()] = std::atanh(2.0 * natural[d_ofs()]);
  if (j_ > 0) {
    const VecX r = pacf_from_ar(natural.segment(ar_ofs(), j_));
    for (index_t i = 0; i < j_; ++i) u[ar_ofs() + i] = std::atanh(r[i]);
  }
  if (q_ > 0) {
    const VecX r = pacf_from_ar(-natural.segment(ma_ofs(), q_));
    for (index_t i = 0; i < q_; ++i) u[ma_ofs() + i] = std::atanh(r[i]);
  }
  u[alpha0_ofs()] = safe_log(natural[alpha0_ofs()]);
  for (index_t i = 0; i < bq_; ++i) {
    u[alpha_ofs() + i] = safe_log(natural[alpha_ofs() + i]);
    u[gamma_ofs() + i] = std::atanh(natural[gamma_ofs() + i]);
  }
  for (index_t i = 0; i < bp_; ++i) u[beta_ofs() + i] = safe_log(natural[beta_ofs() + i]);
  u[delta_ofs()] = safe_log(natural[delta_ofs()]);
  u[xi_ofs()] = safe_log(natural[xi_ofs()]);
  u[nu_ofs()] = safe_log(natural[nu_ofs()] - 2.0);
  return u;
}

VecX ParamTransform::to_natural(const VecX& u) const {
  if (u.size() != size_)
    throw std::invalid_argument("to_natural: size mismatch");
  VecX nat(size_);
  nat.segment(theta_ofs(), m_) = u.segment(theta_ofs(), m_);
  for (index_t i = 0; i < np_; ++i) nat[p_ofs() + i] = exp1(u[p_ofs() + i]);
  nat[d_ofs()] = 0.5 * tanh1(u[d_ofs()]);
  if (j_ > 0) {
    VecX r(j_);
    for (index_t i = 0; i < j_; ++i) r[i] = tanh1(u[ar_ofs() + i]);
    nat.segment(ar_ofs(), j_) = ar_from_pacf(r);
  }
  if (q_ > 0) {
    VecX r(q_);
    for (index_t i = 0; i < q_; ++i) r[i] = tanh1(u[ma_ofs() + i]);
    nat.segment(ma_ofs(), q_) = -ar_from_pacf(r);
  }
  nat[alpha0_ofs()] = exp1(u[alpha0_ofs()]);
  for (index_t i = 0; i < bq_; ++i) {
    nat[alpha_ofs() + i] = exp1(u[alpha_ofs() + i]);
    nat[gamma_ofs() + i] = tanh1(u[gamma_ofs() + i]);
  }
  for (index_t i = 0; i < bp_; ++i) nat[beta_ofs() + i] = exp1(u[beta_ofs() + i]);
  nat[delta_ofs()] = exp1(u[delta_ofs()]);
  nat[xi_ofs()] = exp1(u[xi_ofs()]);
  // the floor keeps nu strictly above 2 after the addition rounds
  nat[nu_ofs()] = 2.0 + std::max(exp1(u[nu_ofs()]), 1e-12);
  return nat;
}

VecX ParamTransform::pack(const ModelParams& params) const {
  if (params.theta.size() != m_ || params.p.size() != np_ ||
      params.arfima.ar.size() != j_ || params.arfima.ma.size() != q_ ||
      params.aparch.alpha.size() != bq_ || params.aparch.beta.size() != bp_)
    throw std::invalid_argument("pack: parameter block sizes do not match");
  VecX nat(size_);
  nat.segment(theta_ofs(), m_) = params.theta;
  nat.segment(p_ofs(), np_) = params.p;
  nat[d_ofs()] = params.arfima.d;
  nat.segment(ar_ofs(), j_) = params.arfima.ar;
  nat.segment(ma_ofs(), q_) = params.arfima.ma;
  nat[alpha0_ofs()] = params.aparch.alpha0;
  nat.segment(alpha_ofs(), bq_) = params.aparch.alpha;
  nat.segment(gamma_ofs(), bq_) = params.aparch.gamma;
  nat.segment(beta_ofs(), bp_) = params.aparch.beta;
  nat[delta_ofs()] = params.aparch.delta;
  nat[xi_ofs()] = params.skewt.xi;
  nat[nu_ofs()] = params.skewt.nu;
  return nat;
}

ModelParams ParamTransform::unpack(const VecX& natural, int truncation) const {
  if (natural.size() != size_)
    throw std::invalid_argument("unpack: size mismatch");
  ModelParams out;
  out.theta = natural.segment(theta_ofs(), m_);
  out.p = natural.segment(p_ofs(), np_);
  out.arfima = ArfimaParams::make(natural[d_ofs()],
                                  natural.segment(ar_ofs(), j_),
                                  natural.segment(ma_ofs(), q_), truncation);
  out.aparch = AparchParams::make(natural[alpha0_ofs()],
                                  natural.segment(alpha_ofs(), bq_),
                                  natural.segment(gamma_ofs(), bq_),
                                  natural.segment(beta_ofs(), bp_),
                                  natural[delta_ofs()]);
  out.skewt = SkewTParams::make(natural[xi_ofs()], natural[nu_ofs()]);
  return out;
}

std::vector<std::string> param_labels(const SeasonalSpec& spec, Orders orders,
                                      ModelKind kind) {
  std::vector<std::string> labels = spec.column_labels();
  if (kind == ModelKind::pgen) {
    const auto pl = spec.p_labels();
    labels.insert(labels.end(), pl.begin(), pl.end());
  }
  labels.emplace_back("d");
  for (int i = 1; i <= orders.j; ++i) labels.push_back("ar_" + std::to_string(i));
  for (int i = 1; i <= orders.q; ++i) labels.push_back("ma_" + std::to_string(i));
  labels.emplace_back("alpha_0");
  for (int i = 1; i <= orders.Q; ++i) labels.push_back("alpha_" + std::to_string(i));
  for (int i = 1; i <= orders.Q; ++i) labels.push_back("gamma_" + std::to_string(i));
  for (int i = 1; i <= orders.P; ++i) labels.push_back("beta_" + std::to_string(i));
  labels.emplace_back("delta");
  labels.emplace_back("xi");
  labels.emplace_back("nu");
  return labels;
}

double qml_negloglik(const VecX& w, double t0, const ModelParams& params,
                     const SeasonalSpec& spec0) {
  const SeasonalSpec spec = params.p.size() ? spec0.with_p(params.p) : spec0;
  if (params.theta.size() != spec.n_columns())
    throw std::invalid_argument("qml_negloglik: theta length does not match the design");
  const MatX X = design_matrix(spec, t0, w.size());
  const VecX eps = w - X * params.theta;
  const VecX z = filter_to_innovations(eps, params.arfima);
  const ArrX sd = aparch_scale_path(z, params.aparch);
  return nll_from_scale(z, sd, params.aparch.delta, params.skewt);
}

StageOneResult stage_one(const VecX& w, double t0, const SeasonalSpec& spec0,
                         ModelKind kind, int max_sweeps) {
  const index_t n = w.size();
  const index_t m = spec0.n_columns();
  if (n <= m) throw DataError("stage_one: series shorter than the regressor count");

  SeasonalSpec spec = spec0;
  auto profile = [&](const SeasonalSpec& sp, VecX& theta_out) {
    const MatX X = design_matrix(sp, t0, n);
    Eigen::ColPivHouseholderQR<MatX> qr(X);
    if (qr.rank() < X.cols())
      throw DataError("stage_one: design matrix is rank deficient");
    theta_out = qr.solve(w);
    return (w - X * theta_out).squaredNorm();
  };

  StageOneResult out;
  double rss = profile(spec, out.theta);

  if (kind == ModelKind::pgen && spec.n_p() > 0) {
    VecX p = spec.pack_p();
    const double ulo = std::log(0.0505), uhi = std::log(100.0);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      const double rss_before = rss;
      for (index_t i = 0; i < p.size(); ++i) {
        VecX trial = p;
        VecX theta_tmp;
        auto rss_of = [&](double u) {
          trial[i] = std::exp(u);
          return profile(spec.with_p(trial), theta_tmp);
        };
        const double u_star = minimize_scalar(rss_of, ulo, uhi, 1e-3, 80);
        trial[i] = std::exp(u_star);
        VecX theta_new;
        const double rss_new = profile(spec.with_p(trial), theta_new);
        if (rss_new < rss) {
          p = trial;
          spec = spec.with_p(p);
          out.theta = theta_new;
          rss = rss_new;
        }
      }
      if (rss_before - rss <= 1e-10 * std::max(1.0, rss_before)) break;
    }
    out.p = p;
  } else if (kind == ModelKind::pgen) {
    out.p = spec.pack_p();
  }

  out.eps = w - design_matrix(spec, t0, n) * out.theta;
  out.rss = rss;
  return out;
}

// FFT workspace for the truncated fractional-difference convolution. The
// kernel spectrum is cached per d; one forward and one inverse transform
// per application.
struct QmlProblem::FracConv {
  Eigen::FFT<double> fft;
  index_t nfft = 0;
  index_t klen = 0;
  double kernel_d = 0.0;
  bool kernel_ready = false;
  std::vector<std::complex<double>> kernel_fft, xf;
  std::vector<double> rbuf, obuf;

  static index_t next_pow2(index_t v) {
    index_t r = 1;
    while (r < v) r <<= 1;
    return r;
  }

  void prepare(double d, index_t n, int trunc) {
    const index_t want_klen = std::min<index_t>(static_cast<index_t>(trunc) + 1, n);
    const index_t want = next_pow2(n + want_klen);
    if (kernel_ready && want == nfft && want_klen == klen && kernel_d == d) return;
    nfft = want;
    klen = want_klen;
    kernel_d = d;
    const VecX wts = frac_diff_weights(d, klen);
    rbuf.assign(nfft, 0.0);
    std::copy(wts.data(), wts.data() + klen, rbuf.begin());
    fft.fwd(kernel_fft, rbuf);
    kernel_ready = true;
  }

  VecX apply(const VecX& x) {
    const index_t n = x.size();
    rbuf.assign(nfft, 0.0);
    std::copy(x.data(), x.data() + n, rbuf.begin());
    fft.fwd(xf, rbuf);
    for (index_t i = 0; i < nfft; ++i) xf[i] *= kernel_fft[i];
    fft.inv(obuf, xf);
    return Eigen::Map<const VecX>(obuf.data(), n);
  }
};

QmlProblem::QmlProblem(VecX w, double t0, const SeasonalSpec& spec, Orders orders,
                       ModelKind kind, int truncation)
    : w_(std::move(w)), t0_(t0), spec_(spec), orders_(orders), kind_(kind),
      trunc_(truncation),
      transform_(spec.n_columns(), kind == ModelKind::pgen ? spec.n_p() : 0, orders),
      conv_(std::make_unique<FracConv>()) {
  if (w_.size() < 2) throw std::invalid_argument("QmlProblem: series too short");
  if (trunc_ < 1) throw std::invalid_argument("QmlProblem: truncation must be >= 1");
}

QmlProblem::~QmlProblem() = default;

void QmlProblem::rebuild_design(const VecX& p, const VecX& old_p) {
  const index_t n = w_.size();
  const index_t m = spec_.n_columns();
  const bool fresh = (X_.rows() != n);
  if (fresh) {
    X_.resize(n, m);
    X_.col(0).setOnes();
    if (spec_.include_trend)
      for (index_t r = 0; r < n; ++r)
        X_(r, 1) = (t0_ + static_cast<double>(r)) / spec_.t_scale;
    marg1_.assign(static_cast<size_t>(spec_.indicator.rows()) + 2, VecX());
    marg2_.assign(static_cast<size_t>(spec_.indicator.cols()) + 2, VecX());
  }
  const index_t n2 = spec_.p2.size();
  auto exp2 = [&](size_t k) { return p.size() ? p[static_cast<index_t>(k)] : spec_.p2[static_cast<index_t>(k)]; };
  auto exp1 = [&](size_t k) { return p.size() ? p[n2 + static_cast<index_t>(k)] : spec_.p1[static_cast<index_t>(k)]; };

  std::vector<char> dirty(marg1_.size() + marg2_.size(), 0);
  auto marginal = [&](int i, double s, double pv) {
    VecX v(n);
    for (index_t r = 0; r < n; ++r)
      v[r] = basis_function(i, s, t0_ + static_cast<double>(r), pv);
    return v;
  };
  const bool have_old = !fresh && old_p.size() == p.size() && p.size() > 0;
  for (size_t k = 0; k < spec_.active2.size(); ++k) {
    const int i2 = spec_.active2[k];
    if (fresh || !have_old || old_p[static_cast<index_t>(k)] != exp2(k)) {
      if (fresh || !have_old || marg2_[i2].size() != n || old_p[static_cast<index_t>(k)] != exp2(k)) {
        marg2_[i2] = marginal(i2, spec_.s2, exp2(k));
        dirty[marg1_.size() + i2] = 1;
      }
    }
  }
  for (size_t k = 0; k < spec_.active1.size(); ++k) {
    const int i1 = spec_.active1[k];
    if (fresh || !have_old || old_p[n2 + static_cast<index_t>(k)] != exp1(k)) {
      marg1_[i1] = marginal(i1, spec_.s1, exp1(k));
      dirty[i1] = 1;
    }
  }
  index_t col = 1 + (spec_.include_trend ? 1 : 0);
  for (const auto& [i1, i2] : spec_.cells()) {
    const bool need = fresh || (i1 >= 2 && dirty[i1]) || (i2 >= 2 && dirty[marg1_.size() + i2]);
    if (need) {
      if (i1 == 1)
        X_.col(col) = marg2_[i2];
      else if (i2 == 1)
        X_.col(col) = marg1_[i1];
      else
        X_.col(col) = marg1_[i1].cwiseProduct(marg2_[i2]);
    }
    ++col;
  }
}

double QmlProblem::eval_natural(const VecX& nat) {
  const auto& tr = transform_;
  const index_t n = w_.size();
  const index_t m = tr.n_theta(), np = tr.n_p();
  const index_t j = orders_.j, q = orders_.q, Q = orders_.Q, P = orders_.P;

  if (!nat.allFinite()) return kInf;
  const VecX p = nat.segment(tr.p_ofs(), np);
  for (index_t i = 0; i < np; ++i)
    if (!(p[i] > 0.05 && p[i] <= 100.0)) return kInf;

  // design(p)
  if (!st_design_.valid || !same_key(st_design_.key, p)) {
    rebuild_design(p, st_design_.valid ? st_design_.key : VecX());
    st_design_.key = p;
    st_design_.valid = true;
    ++st_design_.version;
  }

  // eps(theta)
  const VecX theta = nat.segment(tr.theta_ofs(), m);
  if (!st_eps_.valid || st_eps_.upstream != st_design_.version ||
      !same_key(st_eps_.key, theta)) {
    eps_ = w_ - X_ * theta;
    st_eps_.key = theta;
    st_eps_.upstream = st_design_.version;
    st_eps_.valid = true;
    ++st_eps_.version;
  }

  // innovations(d, ar, ma)
  VecX lin_key(1 + j + q);
  lin_key[0] = nat[tr.d_ofs()];
  lin_key.segment(1, j) = nat.segment(tr.ar_ofs(), j);
  lin_key.segment(1 + j, q) = nat.segment(tr.ma_ofs(), q);
  if (!st_lin_.valid || st_lin_.upstream != st_eps_.version ||
      !same_key(st_lin_.key, lin_key)) {
    const double d = lin_key[0];
    VecX u;
    if (d == 0.0) {
      u = eps_;
    } else {
      conv_->prepare(d, n, trunc_);
      u = conv_->apply(eps_);
    }
    // AR polynomial: v_t = u_t - sum phi_i u_{t-i}; pre-sample zeros.
    const VecX ar = lin_key.segment(1, j);
    VecX v = u;
    for (index_t i = 1; i <= j; ++i)
      v.tail(n - i) -= ar[i - 1] * u.head(n - i);
    // MA inverse: z_t = v_t - sum theta_i z_{t-i}; sequential.
    const VecX ma = lin_key.segment(1 + j, q);
    if (q == 0) {
      z_ = v;
    } else {
      z_.resize(n);
      const double* mp = ma.data();
      for (index_t t = 0; t < n; ++t) {
        double acc = v[t];
        const index_t lags = std::min<index_t>(q, t);
        for (index_t i = 1; i <= lags; ++i) acc -= mp[i - 1] * z_[t - i];
        z_[t] = acc;
      }
    }
    st_lin_.key = lin_key;
    st_lin_.upstream = st_eps_.version;
    st_lin_.valid = true;
    ++st_lin_.version;
  }

  // scale(alpha0, alpha, gamma, beta, delta)
  VecX sc_key(2 + 2 * Q + P);
  sc_key[0] = nat[tr.alpha0_ofs()];
  sc_key.segment(1, Q) = nat.segment(tr.alpha_ofs(), Q);
  sc_key.segment(1 + Q, Q) = nat.segment(tr.gamma_ofs(), Q);
  sc_key.segment(1 + 2 * Q, P) = nat.segment(tr.beta_ofs(), P);
  sc_key[1 + 2 * Q + P] = nat[tr.delta_ofs()];
  if (!st_scale_.valid || st_scale_.upstream != st_lin_.version ||
      !same_key(st_scale_.key, sc_key)) {
    AparchParams ap;  // unvalidated aggregate; the maps keep it in range
    ap.alpha0 = sc_key[0];
    ap.alpha = sc_key.segment(1, Q);
    ap.gamma = sc_key.segment(1 + Q, Q);
    ap.beta = sc_key.segment(1 + 2 * Q, P);
    ap.delta = sc_key[1 + 2 * Q + P];
    sd_ = aparch_scale_path(z_, ap);
    st_scale_.key = sc_key;
    st_scale_.upstream = st_lin_.version;
    st_scale_.valid = true;
    ++st_scale_.version;
  }

  // density(delta, xi, nu)
  VecX nll_key(3);
  nll_key << nat[tr.delta_ofs()], nat[tr.xi_ofs()], nat[tr.nu_ofs()];
  if (!st_nll_.valid || st_nll_.upstream != st_scale_.version ||
      !same_key(st_nll_.key, nll_key)) {
    SkewTParams stp;
    stp.xi = nll_key[1];
    stp.nu = nll_key[2];
    nll_sum_ = nll_from_scale(z_, sd_, nll_key[0], stp);
    st_nll_.key = nll_key;
    st_nll_.upstream = st_scale_.version;
    st_nll_.valid = true;
    ++st_nll_.version;
  }
  return nll_sum_;
}

double QmlProblem::operator()(const VecX& u) {
  ++evals_;
  if (!u.allFinite()) return kInf;
  const VecX nat = transform_.to_natural(u);
  const double nll = eval_natural(nat);
  return std::isfinite(nll) ? nll / static_cast<double>(w_.size()) : kInf;
}

VecX QmlProblem::start_unconstrained(const StageOneResult& s1) const {
  const auto& tr = transform_;
  VecX nat(tr.size());
  nat.segment(tr.theta_ofs(), tr.n_theta()) = s1.theta;
  if (tr.n_p() > 0) {
    if (s1.p.size() != tr.n_p())
      throw std::invalid_argument("start_unconstrained: exponent count mismatch");
    nat.segment(tr.p_ofs(), tr.n_p()) = s1.p;
  }
  nat[tr.d_ofs()] = 0.1;
  nat.segment(tr.ar_ofs(), orders_.j).setConstant(0.05);
  nat.segment(tr.ma_ofs(), orders_.q).setConstant(0.05);
  const double mean_abs = s1.eps.cwiseAbs().mean();
  nat[tr.alpha0_ofs()] = std::max(0.1 * mean_abs, 1e-8);
  if (orders_.Q > 0)
    nat.segment(tr.alpha_ofs(), orders_.Q).setConstant(0.1 / orders_.Q);
  nat.segment(tr.gamma_ofs(), orders_.Q).setZero();
  if (orders_.P > 0)
    nat.segment(tr.beta_ofs(), orders_.P).setConstant(0.8 / orders_.P);
  nat[tr.delta_ofs()] = 1.0;
  nat[tr.xi_ofs()] = 1.0;
  nat[tr.nu_ofs()] = 8.0;
  return tr.to_unconstrained(nat);
}

ModelParams QmlProblem::params_at(const VecX& u) const {
  return transform_.unpack(transform_.to_natural(u), trunc_);
}

SeasonalSpec QmlProblem::spec_with(const ModelParams& params) const {
  return params.p.size() ? spec_.with_p(params.p) : spec_;
}

ResidualPaths residual_paths(const VecX& w, double t0, const ModelParams& params,
                             const SeasonalSpec& spec0) {
  const SeasonalSpec sp = params.p.size() ? spec0.with_p(params.p) : spec0;
  if (params.theta.size() != sp.n_columns())
    throw std::invalid_argument("residual_paths: theta length does not match the design");
  ResidualPaths out;
  const MatX X = design_matrix(sp, t0, w.size());
  out.eps = w - X * params.theta;
  out.z = filter_to_innovations(out.eps, params.arfima);
  const ArrX sd = aparch_scale_path(out.z, params.aparch);
  out.sigma = sd.pow(1.0 / params.aparch.delta).matrix();
  out.eta = out.z.cwiseQuotient(out.sigma);
  out.nll_sum = nll_from_scale(out.z, sd, params.aparch.delta, params.skewt);
  return out;
}

QmlProblem::Paths QmlProblem::paths_at(const VecX& u) const {
  const ModelParams params = params_at(u);
  const ResidualPaths rp = residual_paths(w_, t0_, params, spec_);
  Paths out;
  out.eps = rp.eps;
  out.z = rp.z;
  out.sigma = rp.sigma;
  out.eta = rp.eta;
  out.nll_sum = rp.nll_sum;
  return out;
}

namespace {

FitResult degenerate_fit(const StageOneResult& s1, const SeasonalSpec& spec,
                         Orders orders, ModelKind kind, const VecX& w, double t0,
                         int truncation) {
  // Zero-residual regression: the likelihood stage is unbounded, so report
  // the exact regression solution with inert dynamics.
  FitResult out;
  out.kind = kind;
  out.orders = orders;
  out.spec = s1.p.size() ? spec.with_p(s1.p) : spec;
  out.params.theta = s1.theta;
  out.params.p = s1.p;
  out.params.arfima = ArfimaParams::make(0.0, VecX::Zero(orders.j),
                                         VecX::Zero(orders.q), truncation);
  out.params.aparch = AparchParams::make(1e-12, VecX::Zero(orders.Q),
                                         VecX::Zero(orders.Q),
                                         VecX::Zero(orders.P), 2.0);
  out.params.skewt = SkewTParams::make(1.0, 8.0);
  out.labels = param_labels(out.spec, orders, kind);
  out.loglik = std::numeric_limits<double>::infinity();
  out.bic = -std::numeric_limits<double>::infinity();
  out.eps = s1.eps;
  out.z = s1.eps;
  out.sigma = VecX::Constant(w.size(), 1e-6);
  out.eta = out.z.cwiseQuotient(out.sigma);
  out.converged = true;
  out.iterations = 0;
  out.t0 = t0;
  out.n = w.size();
  return out;
}

} // namespace

FitResult fit(const VecX& w, double t0, const SeasonalSpec& spec0, Orders orders,
              ModelKind kind, const FitOptions& opts) {
  if (orders.j < 0 || orders.q < 0 || orders.Q < 0 || orders.P < 0)
    throw std::invalid_argument("fit: negative order");
  if (opts.truncation < 1)
    throw std::invalid_argument("fit: truncation must be >= 1");
  const index_t n = w.size();
  ParamTransform tr(spec0.n_columns(), kind == ModelKind::pgen ? spec0.n_p() : 0,
                    orders);
  if (n < 10 * tr.size())
    throw DataError("fit: in-sample length " + std::to_string(n) +
                    " is below 10 observations per parameter (" +
                    std::to_string(tr.size()) + " parameters)");

  StageOneResult s1 = stage_one(w, t0, spec0, kind, opts.stage1_sweeps);

  const double w_scale = std::sqrt(w.squaredNorm() / static_cast<double>(n));
  if (s1.eps.cwiseAbs().mean() <= 1e-10 * (1.0 + w_scale))
    return degenerate_fit(s1, spec0, orders, kind, w, t0, opts.truncation);

  QmlProblem prob(w, t0, spec0, orders, kind, opts.truncation);
  const VecX u0 = prob.start_unconstrained(s1);

  OptimOptions oo;
  oo.max_iterations = opts.max_iterations;
  oo.rel_f_tol = opts.rel_f_tol;
  oo.grad_tol = opts.grad_tol;
  OptimResult res = minimize_bfgs([&prob](const VecX& u) { return prob(u); }, u0, oo);

  FitResult out;
  out.kind = kind;
  out.orders = orders;
  out.params = prob.params_at(res.x);
  out.spec = prob.spec_with(out.params);
  out.labels = param_labels(spec0, orders, kind);
  const auto paths = prob.paths_at(res.x);
  out.loglik = -paths.nll_sum;
  const double k = static_cast<double>(tr.size());
  out.bic = (2.0 * paths.nll_sum + k * std::log(static_cast<double>(n))) /
            static_cast<double>(n);
  out.eps = paths.eps;
  out.z = paths.z;
  out.sigma = paths.sigma;
  out.eta = paths.eta;
  out.converged = res.converged;
  out.iterations = res.iterations;
  out.t0 = t0;
  out.n = n;

  if (opts.compute_se && res.converged) {
    // A step too fine for the likelihood's evaluation noise reads the noise
    // as curvature and flat directions come out slightly negative, so widen
    // the step until the information matrix factorizes positive definite.
    for (const double step : {1e-4, 1e-3, 5e-3, 2e-2}) {
      const MatX H = fd_hessian([&prob](const VecX& u) { return prob(u); },
                                res.x, step);
      Eigen::LDLT<MatX> ldlt(H * static_cast<double>(n));
      if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all())
        continue;
      const MatX cov_u = ldlt.solve(MatX::Identity(tr.size(), tr.size()));
      MatX J(tr.size(), tr.size());
      for (index_t i = 0; i < tr.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(res.x[i]));
        VecX up = res.x, dn = res.x;
        up[i] += h;
        dn[i] -= h;
        J.col(i) = (tr.to_natural(up) - tr.to_natural(dn)) / (2.0 * h);
      }
      const VecX var = (J * cov_u * J.transpose()).diagonal();
      if ((var.array() > 0.0).all() && var.allFinite()) {
        out.std_errors = var.cwiseSqrt();
        out.se_available = true;
        break;
      }
    }
    if (!out.se_available)
      std::cerr << "warning: observed information is not positive definite; "
                   "standard errors unavailable\n";
  }

  try {
    if (stationarity_margin(out.params.aparch, out.params.skewt) >= 1.0)
      std::cerr << "warning: fitted scale recursion is not stationary "
                   "(moment condition >= 1)\n";
  } catch (const std::exception&) {
    std::cerr << "warning: stationarity moment condition undefined at the "
                 "fitted parameters\n";
  }
  return out;
}

SelectionResult select_order(const VecX& w, double t0, const SeasonalSpec& spec,
                             const std::vector<Orders>& candidates, ModelKind kind,
                             const FitOptions& opts) {
  if (candidates.empty())
    throw std::invalid_argument("select_order: empty candidate list");
  FitOptions quick = opts;
  quick.compute_se = false;

  SelectionResult out;
  bool have_best = false;
  int best_idx = -1;
  FitResult best;
  for (size_t c = 0; c < candidates.size(); ++c) {
    const Orders& od = candidates[c];
    FitResult f = fit(w, t0, spec, od, kind, quick);
    SelectionEntry e;
    e.orders = od;
    e.bic = f.bic;
    e.converged = f.converged;
    e.n_params = f.n_free_params();
    out.table.push_back(e);
    if (!f.converged) continue;
    if (!have_best) {
      best = std::move(f);
      best_idx = static_cast<int>(c);
      have_best = true;
      continue;
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(best.bic));
    if (f.bic < best.bic - tol ||
        (std::abs(f.bic - best.bic) <= tol &&
         f.n_free_params() < best.n_free_params()))
      best = std::move(f), best_idx = static_cast<int>(c);
  }
  if (!have_best)
    throw ConvergenceError("select_order: no candidate order converged");
  out.orders = candidates[static_cast<size_t>(best_idx)];
  if (opts.compute_se)
    best = fit(w, t0, spec, out.orders, kind, opts);
  out.best = std::move(best);
  return out;
}

std::vector<SignificanceRow> significance_report(const FitResult& fit) {
  if (!fit.se_available)
    throw std::invalid_argument("significance_report: standard errors unavailable");
  ParamTransform tr(fit.spec.n_columns(), fit.params.p.size(), fit.orders);
  const VecX nat = tr.pack(fit.params);
  if (fit.std_errors.size() != nat.size() ||
      static_cast<index_t>(fit.labels.size()) != nat.size())
    throw std::invalid_argument("significance_report: inconsistent fit result");
  std::vector<SignificanceRow> rows;
  rows.reserve(static_cast<size_t>(nat.size()));
  for (index_t i = 0; i < nat.size(); ++i) {
    SignificanceRow r;
    r.label = fit.labels[static_cast<size_t>(i)];
    r.estimate = nat[i];
    r.std_error = fit.std_errors[i];
    r.null_value = r.label.rfind("p_", 0) == 0 ? 2.0 : (r.label == "xi" ? 1.0 : 0.0);
    r.t_stat = (r.estimate - r.null_value) / r.std_error;
    r.p_value = two_sided_normal_p(r.t_stat);
    rows.push_back(std::move(r));
  }
  return rows;
}

} // namespace windcast

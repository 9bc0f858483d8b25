#include "splitpoint/theory.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "splitpoint/error.hpp"
#include "splitpoint/normal.hpp"

namespace splitpoint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_call(std::string_view head, std::initializer_list<double> args) {
  std::string out(head);
  out += '(';
  bool first = true;
  for (double v : args) {
    if (!first) out += ',';
    out += fmt_num(v);
    first = false;
  }
  out += ')';
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

// ---------------------------------------------------------------------------
// NormalModel

NormalModel::NormalModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0,
          "normal model needs finite mu and sigma > 0");
}

std::string NormalModel::name() const { return fmt_call("normal", {mu_, sigma_}); }

double NormalModel::quantile(double p) const { return mu_ + sigma_ * normal_quantile(p); }

double NormalModel::density(double x) const {
  return normal_pdf((x - mu_) / sigma_) / sigma_;
}

double NormalModel::cdf(double x) const { return normal_cdf((x - mu_) / sigma_); }

double NormalModel::partial_mean_below(double x) const {
  if (x == -kInf) return 0.0;
  if (x == kInf) return mu_;
  const double z = (x - mu_) / sigma_;
  return mu_ * normal_cdf(z) - sigma_ * normal_pdf(z);
}

double NormalModel::partial_second_moment_below(double x) const {
  if (x == -kInf) return 0.0;
  if (x == kInf) return second_moment();
  const double z = (x - mu_) / sigma_;
  const double big_phi = normal_cdf(z);
  const double phi = normal_pdf(z);
  return mu_ * mu_ * big_phi - 2.0 * mu_ * sigma_ * phi +
         sigma_ * sigma_ * (big_phi - z * phi);
}

std::pair<double, double> NormalModel::support() const { return {-kInf, kInf}; }

std::unique_ptr<DistributionModel> NormalModel::affine(double alpha, double beta) const {
  require(alpha > 0.0, "affine map needs alpha > 0");
  return std::make_unique<NormalModel>(alpha * mu_ + beta, alpha * sigma_);
}

// ---------------------------------------------------------------------------
// NormalMixture

NormalMixture::NormalMixture(double weight, double mu1, double sigma1, double mu2,
                             double sigma2)
    : w_(weight), c1_(mu1, sigma1), c2_(mu2, sigma2) {
  require(weight > 0.0 && weight < 1.0, "mixture weight must lie in (0, 1)");
}

std::string NormalMixture::name() const {
  return fmt_call("mixture", {w_, c1_.mu(), c1_.sigma(), c2_.mu(), c2_.sigma()});
}

double NormalMixture::cdf(double x) const {
  return w_ * c1_.cdf(x) + (1.0 - w_) * c2_.cdf(x);
}

double NormalMixture::density(double x) const {
  return w_ * c1_.density(x) + (1.0 - w_) * c2_.density(x);
}

double NormalMixture::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    return std::numeric_limits<double>::quiet_NaN();
  }
  // F(x) is bounded by the component CDFs, so the component quantiles bracket.
  double lo = std::min(c1_.quantile(p), c2_.quantile(p));
  double hi = std::max(c1_.quantile(p), c2_.quantile(p));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double NormalMixture::mean() const { return w_ * c1_.mean() + (1.0 - w_) * c2_.mean(); }

double NormalMixture::second_moment() const {
  return w_ * c1_.second_moment() + (1.0 - w_) * c2_.second_moment();
}

double NormalMixture::partial_mean_below(double x) const {
  return w_ * c1_.partial_mean_below(x) + (1.0 - w_) * c2_.partial_mean_below(x);
}

double NormalMixture::partial_second_moment_below(double x) const {
  return w_ * c1_.partial_second_moment_below(x) +
         (1.0 - w_) * c2_.partial_second_moment_below(x);
}

std::pair<double, double> NormalMixture::support() const { return {-kInf, kInf}; }

std::optional<double> NormalMixture::declared_split_point() const {
  if (c1_.sigma() == c2_.sigma() && (w_ == 0.5 || c1_.mu() == c2_.mu())) return 0.5;
  return std::nullopt;
}

std::unique_ptr<DistributionModel> NormalMixture::affine(double alpha, double beta) const {
  require(alpha > 0.0, "affine map needs alpha > 0");
  return std::make_unique<NormalMixture>(w_, alpha * c1_.mu() + beta, alpha * c1_.sigma(),
                                         alpha * c2_.mu() + beta, alpha * c2_.sigma());
}

double NormalMixture::sample(StreamRng& rng) const {
  const double u = rng.uniform01();
  const double z = normal_quantile(rng.uniform01());
  const NormalModel& c = (u < w_) ? c1_ : c2_;
  return c.mu() + c.sigma() * z;
}

NormalMixture NormalMixture::standardized() const {
  const double sd = std::sqrt(variance());
  const double alpha = 1.0 / sd;
  const double beta = -mean() / sd;
  return NormalMixture(w_, alpha * c1_.mu() + beta, alpha * c1_.sigma(),
                       alpha * c2_.mu() + beta, alpha * c2_.sigma());
}

// ---------------------------------------------------------------------------
// UniformModel

UniformModel::UniformModel(double lo, double hi) : lo_(lo), hi_(hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "uniform model needs finite lo < hi");
}

UniformModel standard_uniform() { return UniformModel(-std::sqrt(3.0), std::sqrt(3.0)); }

std::string UniformModel::name() const { return fmt_call("uniform", {lo_, hi_}); }

double UniformModel::quantile(double p) const { return lo_ + p * (hi_ - lo_); }

double UniformModel::density(double x) const {
  return (x < lo_ || x > hi_) ? 0.0 : 1.0 / (hi_ - lo_);
}

double UniformModel::cdf(double x) const {
  return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double UniformModel::second_moment() const {
  return (lo_ * lo_ + lo_ * hi_ + hi_ * hi_) / 3.0;
}

double UniformModel::partial_mean_below(double x) const {
  const double t = std::clamp(x, lo_, hi_);
  return (t * t - lo_ * lo_) / (2.0 * (hi_ - lo_));
}

double UniformModel::partial_second_moment_below(double x) const {
  const double t = std::clamp(x, lo_, hi_);
  return (t * t * t - lo_ * lo_ * lo_) / (3.0 * (hi_ - lo_));
}

std::unique_ptr<DistributionModel> UniformModel::affine(double alpha, double beta) const {
  require(alpha > 0.0, "affine map needs alpha > 0");
  return std::make_unique<UniformModel>(alpha * lo_ + beta, alpha * hi_ + beta);
}

// ---------------------------------------------------------------------------
// Model specs

ModelPtr parse_model(const std::string& spec) {
  std::string s;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  std::string head = s;
  std::vector<double> args;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw Error(ErrorCode::UnknownModel, "malformed model spec '" + spec + "'");
    head = s.substr(0, open);
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = std::min(body.find(',', pos), body.size());
      const std::string tok = body.substr(pos, comma - pos);
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw Error(ErrorCode::UnknownModel, "bad parameter '" + tok + "' in '" + spec + "'");
      }
      args.push_back(v);
      pos = comma + 1;
    }
  }

  if (head == "normal") {
    if (args.empty()) return std::make_shared<NormalModel>();
    if (args.size() == 2) return std::make_shared<NormalModel>(args[0], args[1]);
  } else if (head == "uniform") {
    if (args.empty()) return std::make_shared<UniformModel>(standard_uniform());
    if (args.size() == 2) return std::make_shared<UniformModel>(args[0], args[1]);
  } else if (head == "mixture") {
    if (args.size() == 5) {
      return std::make_shared<NormalMixture>(args[0], args[1], args[2], args[3], args[4]);
    }
  }
  throw Error(ErrorCode::UnknownModel, "unknown model spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Population cross-over function

namespace {

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "probability must lie in (0, 1), got " + fmt_num(p));
  }
}

double density_at_quantile(const DistributionModel& model, double q, double p) {
  const double f = model.density(q);
  if (!(f > 0.0) || !std::isfinite(1.0 / f)) {
    throw Error(ErrorCode::DensityUnderflow, "density vanishes at Q(" + fmt_num(p) + ")");
  }
  return f;
}

}  // namespace

double crossover(const DistributionModel& model, double p) {
  require_open_unit(p);
  const double q = model.quantile(p);
  const double below = model.partial_mean_below(q);
  return below / p + (model.mean() - below) / (1.0 - p) - 2.0 * q;
}

double split_function(const DistributionModel& model, double p) {
  require_open_unit(p);
  const double below = model.partial_mean(p);
  const double ql = below / p;
  const double qu = (model.mean() - below) / (1.0 - p);
  return p * ql * ql + (1.0 - p) * qu * qu - model.mean() * model.mean();
}

CrossoverEvaluation eval_crossover(const DistributionModel& model, double p) {
  require_open_unit(p);
  CrossoverEvaluation ev;
  ev.p = p;
  ev.q = model.quantile(p);
  const double below = model.partial_mean_below(ev.q);
  const double mu = model.mean();
  ev.q_lower = below / p;
  ev.q_upper = (mu - below) / (1.0 - p);
  ev.g = ev.q_lower + ev.q_upper - 2.0 * ev.q;
  const double f = density_at_quantile(model, ev.q, p);
  ev.g_prime = (ev.q - ev.q_lower) / p - (ev.q - ev.q_upper) / (1.0 - p) - 2.0 / f;
  ev.b = p * ev.q_lower * ev.q_lower + (1.0 - p) * ev.q_upper * ev.q_upper - mu * mu;
  return ev;
}

double theoretical_split_point(const DistributionModel& model, double a, double b) {
  if (!(a > 0.0 && a < b && b < 1.0)) {
    throw Error(ErrorCode::InvalidRange, "need 0 < a < b < 1");
  }
  double lo = a;
  double hi = b;
  const double g_lo = crossover(model, lo);
  const double g_hi = crossover(model, hi);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw Error(ErrorCode::NoBracket, "G(a)=" + fmt_num(g_lo) + ", G(b)=" + fmt_num(g_hi) +
                                          "; need G(a) > 0 > G(b)");
  }
  while (hi - lo >= 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (crossover(model, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// theta_p = A ((W - Q)/p + 2/f) + (1 - A) (W - Q)/(1 - p), A = 1{W < Q}.
double theta_variance(const DistributionModel& model, double p) {
  require_open_unit(p);
  const double q = model.quantile(p);
  const double f = density_at_quantile(model, q, p);
  const double m1 = model.partial_mean_below(q);
  const double m2 = model.partial_second_moment_below(q);
  const double s1 = model.mean() - m1;
  const double s2 = model.second_moment() - m2;
  const double r = 1.0 - p;

  // Centered partial moments E[A (W-Q)], E[A (W-Q)^2] and their upper analogues.
  const double lo1 = m1 - q * p;
  const double lo2 = m2 - 2.0 * q * m1 + q * q * p;
  const double up1 = s1 - q * r;
  const double up2 = s2 - 2.0 * q * s1 + q * q * r;

  const double first = lo1 / p + 2.0 * p / f + up1 / r;
  const double second =
      lo2 / (p * p) + 4.0 * lo1 / (p * f) + 4.0 * p / (f * f) + up2 / (r * r);
  return second - first * first;
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 15>::integrate(f, lo, hi, 25, 1e-13, &err);
}

double theta_variance_numeric(const DistributionModel& model, double p) {
  require_open_unit(p);
  const double q = model.quantile(p);
  const double f = density_at_quantile(model, q, p);
  const auto [s_lo, s_hi] = model.support();

  auto lower = [&](double x) { return (x - q) / p + 2.0 / f; };
  auto upper = [&](double x) { return (x - q) / (1.0 - p); };

  const double e1 = integrate([&](double x) { return lower(x) * model.density(x); }, s_lo, q) +
                    integrate([&](double x) { return upper(x) * model.density(x); }, q, s_hi);
  const double e2 =
      integrate([&](double x) { return lower(x) * lower(x) * model.density(x); }, s_lo, q) +
      integrate([&](double x) { return upper(x) * upper(x) * model.density(x); }, q, s_hi);
  return e2 - e1 * e1;
}

double asymptotic_variance(const DistributionModel& model, double p0) {
  const CrossoverEvaluation ev = eval_crossover(model, p0);
  return theta_variance(model, p0) / (ev.g_prime * ev.g_prime);
}

}  // namespace splitpoint

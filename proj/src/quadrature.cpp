#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "qjunction/errors.hpp"
#include "qjunction/numerics.hpp"

namespace qjunction {

namespace {

// Kronrod 21-point abscissae (positive half, descending) and weights; the odd
// entries 1, 3, ..., 9 are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208031279400, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Interval {
  double a;
  double b;
  Eigen::VectorXd value;
  double error;
  bool tail;
  int depth;
};

struct ByError {
  const std::vector<Interval>* pool;
  bool operator()(std::size_t l, std::size_t r) const {
    const Interval& x = (*pool)[l];
    const Interval& y = (*pool)[r];
    if (x.error != y.error) return x.error < y.error;
    return l > r;  // deterministic tie-break: older intervals first
  }
};

class Integrator {
 public:
  Integrator(const VectorIntegrand& f, int dim, const QuadratureSettings& s)
      : f_(f), dim_(dim), s_(s), fx_(dim), g_(dim), k_(dim) {}

  // Maps a point of the integration variable to the physical abscissa and Jacobian.
  void sample(const Interval& iv, double t, Eigen::VectorXd& out) {
    double x = t;
    double jac = 1.0;
    if (iv.tail) {
      // t = u ∈ (0, 1]; k = k0 - s ln u
      x = tail_origin_ - s_.tail_decay_scale * std::log(t);
      jac = s_.tail_decay_scale / t;
    }
    out.setZero();
    f_(x, out);
    ++evaluations_;
    for (int c = 0; c < dim_; ++c) {
      if (!std::isfinite(out[c])) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "integrand is not finite at k = " << x << " (component " << c << ")";
        throw NumericalError(msg.str());
      }
    }
    out *= jac;
  }

  void rule(Interval& iv) {
    const double center = 0.5 * (iv.a + iv.b);
    const double half = 0.5 * (iv.b - iv.a);
    g_.setZero();
    k_.setZero();
    sample(iv, center, fx_);
    k_ += kWgk[10] * fx_;
    for (int j = 0; j < 10; ++j) {
      const double dx = half * kXgk[static_cast<std::size_t>(j)];
      const double w = kWgk[static_cast<std::size_t>(j)];
      const bool gauss = (j % 2) == 1;
      for (double sign : {-1.0, 1.0}) {
        sample(iv, center + sign * dx, fx_);
        k_ += w * fx_;
        if (gauss) g_ += kWg[static_cast<std::size_t>(j / 2)] * fx_;
      }
    }
    iv.value = half * k_;
    iv.error = (half * (k_ - g_)).cwiseAbs().maxCoeff();
  }

  VectorQuadratureResult run(std::span<const double> nodes, bool with_tail) {
    std::vector<Interval> pool;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      if (nodes[i + 1] > nodes[i]) pool.push_back({nodes[i], nodes[i + 1], {}, 0.0, false, 0});
    }
    if (with_tail) {
      tail_origin_ = nodes.back();
      pool.push_back({0.0, 1.0, {}, 0.0, true, 0});
    }
    VectorQuadratureResult result;
    result.value = Eigen::VectorXd::Zero(dim_);
    if (pool.empty()) return result;

    const long budget = static_cast<long>(s_.max_subdivisions) * static_cast<long>(pool.size());
    std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> queue(ByError{&pool});
    Eigen::VectorXd total = Eigen::VectorXd::Zero(dim_);
    double total_error = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      rule(pool[i]);
      total += pool[i].value;
      total_error += pool[i].error;
      queue.push(i);
    }

    long splits = 0;
    bool converged = true;
    while (total_error > tolerance(total)) {
      if (splits >= budget) {
        converged = false;
        break;
      }
      const std::size_t top = queue.top();
      const Interval parent = pool[top];
      const double mid = 0.5 * (parent.a + parent.b);
      if (!(mid > parent.a && mid < parent.b) ||
          (parent.b - parent.a) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
        converged = false;  // cannot refine any further
        break;
      }
      queue.pop();
      Interval left{parent.a, mid, {}, 0.0, parent.tail, parent.depth + 1};
      Interval right{mid, parent.b, {}, 0.0, parent.tail, parent.depth + 1};
      rule(left);
      rule(right);
      total += left.value + right.value - parent.value;
      total_error += left.error + right.error - parent.error;
      pool[top] = std::move(left);
      queue.push(top);
      pool.push_back(std::move(right));
      queue.push(pool.size() - 1);
      ++splits;
    }

    // Re-sum in a fixed order so the reported value does not carry update drift.
    total.setZero();
    total_error = 0.0;
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      if (pool[l].tail != pool[r].tail) return !pool[l].tail;
      return pool[l].tail ? pool[l].a > pool[r].a : pool[l].a < pool[r].a;
    });
    for (std::size_t i : order) {
      total += pool[i].value;
      total_error += pool[i].error;
    }
    result.value = total;
    result.error_estimate = total_error;
    result.evaluations = evaluations_;
    result.converged = converged || total_error <= tolerance(total);
    return result;
  }

 private:
  double tolerance(const Eigen::VectorXd& total) const {
    return std::max(s_.abs_tol, s_.rel_tol * total.cwiseAbs().maxCoeff());
  }

  const VectorIntegrand& f_;
  int dim_;
  QuadratureSettings s_;
  Eigen::VectorXd fx_, g_, k_;
  double tail_origin_ = 0.0;
  long evaluations_ = 0;
};

QuadratureResult to_scalar(const VectorQuadratureResult& r) {
  return {r.value[0], r.error_estimate, r.evaluations, r.converged};
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw ValidationError("quadrature rel_tol must be > 0");
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw ValidationError("quadrature abs_tol must be > 0");
  if (max_subdivisions < 1) throw ValidationError("quadrature max_subdivisions must be >= 1");
  if (!(tail_decay_scale > 0.0) || !std::isfinite(tail_decay_scale)) {
    throw ValidationError("quadrature tail_decay_scale must be > 0");
  }
}

VectorQuadratureResult integrate_panels(const VectorIntegrand& f, int dim, std::span<const double> nodes,
                                        bool with_tail, const QuadratureSettings& settings) {
  settings.validate();
  if (dim < 1) throw DomainError("integrand dimension must be >= 1");
  if (nodes.empty()) throw DomainError("quadrature needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) throw DomainError("quadrature nodes must be finite");
    if (i > 0 && nodes[i] < nodes[i - 1]) throw DomainError("quadrature nodes must be non-decreasing");
  }
  Integrator integrator(f, dim, settings);
  return integrator.run(nodes, with_tail);
}

QuadratureResult integrate_finite(const ScalarIntegrand& f, double a, double b, const QuadratureSettings& settings,
                                  std::span<const double> breakpoints) {
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> nodes{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) nodes.push_back(p);
  }
  nodes.push_back(hi);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const VectorIntegrand g = [&](double x, Eigen::VectorXd& out) { out[0] = f(x); };
  QuadratureResult r = to_scalar(integrate_panels(g, 1, nodes, false, settings));
  r.value *= sign;
  return r;
}

QuadratureResult integrate_semi_infinite(const ScalarIntegrand& f, const QuadratureSettings& settings) {
  const double s = settings.tail_decay_scale;
  const std::array<double, 2> nodes{0.0, s};
  const VectorIntegrand g = [&](double x, Eigen::VectorXd& out) { out[0] = f(x); };
  return to_scalar(integrate_panels(g, 1, nodes, true, settings));
}

std::vector<double> half_period_breakpoints(double a, double b, double x, std::size_t max_points) {
  std::vector<double> out;
  if (!(x > 0.0) || !(b > a)) return out;
  const double step = std::numbers::pi / (2.0 * x);
  auto j = static_cast<long long>(std::floor(a / step)) + 1;
  for (; out.size() < max_points; ++j) {
    const double k = static_cast<double>(j) * step;
    if (k >= b) break;
    if (k > a) out.push_back(k);
  }
  return out;
}

}  // namespace qjunction

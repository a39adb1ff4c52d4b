#include "uec/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uec {

GrowthGauge GrowthGauge::scaled_log(double c, double b) {
  if (!(c > 0.0) || !(b > 0.0)) throw std::invalid_argument("scaled-log gauge needs c > 0 and b > 0");
  GrowthGauge g;
  g.kind_ = Kind::ScaledLog;
  g.c_ = c;
  g.b_ = b;
  return g;
}

GrowthGauge GrowthGauge::power(double c, double alpha, double b) {
  if (!(c > 0.0) || !(alpha > 0.0) || alpha > 1.0 || !(b >= 0.0)) {
    throw std::invalid_argument("power gauge needs c > 0, 0 < alpha <= 1, b >= 0");
  }
  GrowthGauge g;
  g.kind_ = Kind::Power;
  g.c_ = c;
  g.alpha_ = alpha;
  g.b_ = b;
  return g;
}

GrowthGauge GrowthGauge::iterated_log(double c, double b) {
  if (!(c > 0.0) || !(b > 0.0)) throw std::invalid_argument("iterated-log gauge needs c > 0 and b > 0");
  GrowthGauge g;
  g.kind_ = Kind::IteratedLog;
  g.c_ = c;
  g.b_ = b;
  return g;
}

GrowthGauge GrowthGauge::samples(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) throw std::invalid_argument("sampled gauge needs at least two points");
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].first > pts[i - 1].first)) throw std::invalid_argument("sampled gauge: radii must be distinct");
  }
  if (!(pts.front().second > 0.0)) throw std::invalid_argument("sampled gauge must be positive");
  for (std::size_t i = 1; i < pts.size(); ++i) pts[i].second = std::max(pts[i].second, pts[i - 1].second);
  const auto& a = pts[pts.size() - 2];
  const auto& z = pts.back();
  if (!(z.second > a.second)) {
    throw std::invalid_argument("sampled gauge must increase on its last segment to tend to infinity");
  }
  GrowthGauge g;
  g.kind_ = Kind::Samples;
  g.pts_ = std::move(pts);
  return g;
}

double GrowthGauge::operator()(double r) const {
  switch (kind_) {
    case Kind::ScaledLog:
      return c_ * std::log1p(r) + b_;
    case Kind::Power:
      return c_ * std::pow(r, alpha_) + b_;
    case Kind::IteratedLog:
      return c_ * std::log1p(std::log1p(r)) + b_;
    case Kind::Samples: {
      if (r <= pts_.front().first) return pts_.front().second;
      auto it = std::upper_bound(pts_.begin(), pts_.end(), r,
                                 [](double x, const std::pair<double, double>& p) { return x < p.first; });
      const auto& hi = it == pts_.end() ? pts_.back() : *it;
      const auto& lo = it == pts_.end() ? pts_[pts_.size() - 2] : *(it - 1);
      double t = (r - lo.first) / (hi.first - lo.first);
      return lo.second + t * (hi.second - lo.second);
    }
  }
  return 0.0;
}

std::string GrowthGauge::kind_name(Kind k) {
  switch (k) {
    case Kind::ScaledLog:
      return "scaled-log";
    case Kind::Power:
      return "power";
    case Kind::IteratedLog:
      return "iterated-log";
    case Kind::Samples:
      return "samples";
  }
  return "";
}

GrowthGauge::Kind GrowthGauge::kind_from_name(const std::string& s) {
  if (s == "scaled-log") return Kind::ScaledLog;
  if (s == "power") return Kind::Power;
  if (s == "iterated-log") return Kind::IteratedLog;
  if (s == "samples") return Kind::Samples;
  throw std::invalid_argument("unknown gauge kind '" + s + "'");
}

}  // namespace uec

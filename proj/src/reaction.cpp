// SPDX-License-Identifier: Apache-2.0
#include "bifront/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bifront {

namespace {

double poly_eval(const std::vector<double>& c, double s) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 0;) r = r * s + c[i];
  return r;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * double(i));
  if (d.empty()) d.push_back(0.0);
  return d;
}

std::vector<double> poly_integrate(const std::vector<double>& c) {
  std::vector<double> I(c.size() + 1, 0.0);
  for (size_t i = 0; i < c.size(); ++i) I[i + 1] = c[i] / double(i + 1);
  return I;
}

std::vector<double> poly_mul(const std::vector<double>& p,
                             const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// Largest s in [lo, hi] with pred false, given pred(lo)=false, pred(hi)=true.
double bisect_boundary(const std::function<bool(double)>& pred, double lo,
                       double hi, double tol) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double bisect_root(const std::function<double(double)>& g, double lo,
                   double hi, double tol) {
  double glo = g(lo);
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if ((gm <= 0.0) == (glo <= 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double check_domain(double v) {
  if (v < -1e-12 || v > 1.0 + 1e-12)
    throw DomainError("reaction evaluated outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

char type_label(ReactionType t) {
  switch (t) {
    case ReactionType::Monostable: return 'A';
    case ReactionType::Combustion: return 'B';
    case ReactionType::Bistable: return 'C';
  }
  return '?';
}

// Per-piece derived polynomials; F_offset makes F continuous with F(0) = 0.
struct ReactionPieces {
  struct Piece {
    double lo, hi;
    std::vector<double> coef, dcoef, d2coef, icoef;
    double F_offset = 0.0;
  };
  std::vector<Piece> pieces;

  const Piece& at(double v) const {
    for (const auto& p : pieces)
      if (v <= p.hi) return p;
    return pieces.back();
  }
  double f(double v) const { return poly_eval(at(v).coef, v); }
  double F(double v) const {
    const auto& p = at(v);
    return p.F_offset + poly_eval(p.icoef, v);
  }
  double fp(double v) const { return poly_eval(at(v).dcoef, v); }
  double fpp(double v) const { return poly_eval(at(v).d2coef, v); }
};

namespace {

std::shared_ptr<const ReactionPieces> build_pieces(const ReactionSpec& spec) {
  if (spec.pieces.empty()) throw DomainError("reaction has no pieces");
  auto out = std::make_shared<ReactionPieces>();
  double cover = 0.0;
  double F_acc = 0.0;
  for (const auto& p : spec.pieces) {
    if (std::abs(p.lo - cover) > 1e-14)
      throw DomainError("reaction pieces must cover [0,1] without gaps");
    ReactionPieces::Piece pc;
    pc.lo = p.lo;
    pc.hi = p.hi;
    pc.coef = p.coef.empty() ? std::vector<double>{0.0} : p.coef;
    pc.dcoef = poly_derive(pc.coef);
    pc.d2coef = poly_derive(pc.dcoef);
    pc.icoef = poly_integrate(pc.coef);
    pc.F_offset = F_acc - poly_eval(pc.icoef, pc.lo);
    F_acc = pc.F_offset + poly_eval(pc.icoef, pc.hi);
    cover = p.hi;
    out->pieces.push_back(std::move(pc));
  }
  if (std::abs(cover - 1.0) > 1e-14)
    throw DomainError("reaction pieces must cover [0,1]");
  return out;
}

}  // namespace

ReactionSpec ReactionSpec::polynomial(std::string name, std::vector<double> coef) {
  ReactionSpec s;
  s.name = std::move(name);
  s.pieces.push_back({0.0, 1.0, std::move(coef)});
  return s;
}

ReactionSpec ReactionSpec::piecewise(std::string name, std::vector<double> breaks,
                                     std::vector<std::vector<double>> coefs) {
  if (breaks.size() != coefs.size() + 1)
    throw DomainError("piecewise reaction needs breaks.size() == pieces + 1");
  if (breaks.front() != 0.0 || breaks.back() != 1.0)
    throw DomainError("piecewise breakpoints must start at 0 and end at 1");
  ReactionSpec s;
  s.name = std::move(name);
  for (size_t i = 0; i < coefs.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]))
      throw DomainError("piecewise breakpoints must be strictly increasing");
    s.pieces.push_back({breaks[i], breaks[i + 1], coefs[i]});
  }
  return s;
}

ReactionSpec ReactionSpec::fisher(double m) {
  return polynomial("fisher", {0.0, m, -m});
}

ReactionSpec ReactionSpec::huxley() {
  return polynomial("huxley", {0.0, 0.0, 40.0, -40.0});
}

ReactionSpec ReactionSpec::nagylaki(double sigma) {
  auto c = poly_mul(poly_mul({0.0, 1.0}, {1.0, -1.0}), {1.0, sigma});
  return polynomial("nagylaki", c);
}

ReactionSpec ReactionSpec::cubic_bistable(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("cubic-bistable alpha must lie in (0,1)");
  auto c = poly_mul(poly_mul({0.0, 1.0}, {1.0, -1.0}), {-alpha, 1.0});
  return polynomial("cubic-bistable", c);
}

ReactionSpec ReactionSpec::combustion(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("combustion alpha must lie in (0,1)");
  auto pos = poly_mul({-alpha, 1.0}, {1.0, -1.0});
  ReactionSpec s;
  s.name = "combustion";
  s.pieces.push_back({0.0, alpha, {0.0}});
  s.pieces.push_back({alpha, 1.0, pos});
  return s;
}

ReactionSpec ReactionSpec::catalog(const std::string& name,
                                   std::optional<double> param) {
  if (name == "fisher") return fisher(param.value_or(1.0));
  if (name == "huxley") return huxley();
  if (name == "nagylaki") return nagylaki(param.value_or(5.0));
  if (name == "cubic-bistable") return cubic_bistable(param.value_or(0.5));
  if (name == "combustion") return combustion(param.value_or(0.3));
  throw DomainError("unknown catalog reaction: " + name);
}

double ReactionCalculus::eval_f(double v) const {
  return pieces->f(check_domain(v));
}
double ReactionCalculus::eval_F(double v) const {
  return pieces->F(check_domain(v));
}
double ReactionCalculus::eval_fprime(double v) const {
  return pieces->fp(check_domain(v));
}

ReactionCalculus classify(const ReactionSpec& spec, int grid_size) {
  if (grid_size < 16) throw DomainError("grid_size too small");
  ReactionCalculus calc;
  calc.spec = spec;
  calc.pieces = build_pieces(spec);
  const ReactionPieces& P = *calc.pieces;

  auto f = [&](double v) { return P.f(v); };
  auto F = [&](double v) { return P.F(v); };

  const int N = grid_size;
  double fmax_abs = 0.0;
  for (int i = 0; i <= N; ++i)
    fmax_abs = std::max(fmax_abs, std::abs(f(double(i) / N)));
  if (fmax_abs == 0.0) throw NotClassifiable("reaction is identically zero");
  const double band = 1e-12 * fmax_abs;

  if (std::abs(f(0.0)) > band || std::abs(f(1.0)) > band)
    throw HypothesisHViolated("f(0) = f(1) = 0 required");

  calc.fprime0 = P.pieces.front().dcoef.empty() ? 0.0 : poly_eval(P.pieces.front().dcoef, 0.0);
  calc.fprime1 = poly_eval(P.pieces.back().dcoef, 1.0);
  calc.fsecond0 = poly_eval(P.pieces.front().d2coef, 0.0);
  calc.fsecond1 = poly_eval(P.pieces.back().d2coef, 1.0);

  // Linear-control constant of (H): grid certificate plus endpoint limits.
  double k = std::max(std::abs(calc.fprime0), std::abs(calc.fprime1));
  for (int i = 1; i < N; ++i) {
    double s = double(i) / N;
    double fs = std::abs(f(s));
    k = std::max(k, std::max(fs / s, fs / (1.0 - s)));
  }
  if (!std::isfinite(k))
    throw HypothesisHViolated("no finite linear-control constant on the grid");
  calc.k = k;

  // Interior sign pattern: -1 / 0 / +1 per node.
  int first_pos = N, last_pos = 0, first_neg = N, last_neg = 0;
  int npos = 0, nneg = 0;
  for (int i = 1; i < N; ++i) {
    double fs = f(double(i) / N);
    if (fs > band) {
      ++npos;
      first_pos = std::min(first_pos, i);
      last_pos = std::max(last_pos, i);
    } else if (fs < -band) {
      ++nneg;
      first_neg = std::min(first_neg, i);
      last_neg = std::max(last_neg, i);
    }
  }
  if (npos == 0) throw NotClassifiable("f has no positive part on (0,1)");
  const bool pos_contiguous = (last_pos - first_pos + 1 == npos) && last_pos == N - 1;
  const bool neg_contiguous = nneg == 0 || (last_neg - first_neg + 1 == nneg && first_neg == 1);

  if (nneg == 0 && npos == N - 1) {
    calc.type = ReactionType::Monostable;
  } else if (nneg == 0 && pos_contiguous && first_pos > 1) {
    // zeros on [0, alpha], positive beyond
    calc.type = ReactionType::Combustion;
    double lo = double(first_pos - 1) / N, hi = double(first_pos) / N;
    calc.alpha = bisect_boundary([&](double s) { return f(s) > band; }, lo, hi, 1e-12);
  } else if (nneg > 0 && neg_contiguous && pos_contiguous && last_neg < first_pos &&
             first_pos - last_neg <= 2) {
    calc.type = ReactionType::Bistable;
    calc.alpha = bisect_root(f, double(last_neg) / N, double(first_pos) / N, 1e-12);
  } else {
    throw NotClassifiable("sign pattern of f matches none of the reaction classes");
  }

  calc.F1 = F(1.0);
  calc.balanced = std::abs(calc.F1) <= 1e-13 * std::max(1.0, fmax_abs);
  if (calc.type == ReactionType::Bistable && !calc.balanced && calc.F1 < 0.0)
    throw NotClassifiable("bistable reaction requires a nonnegative integral");

  // Max of f: grid argmax refined by bisection on f' when it brackets.
  int imax = 1;
  double fm = -1.0;
  for (int i = 1; i < N; ++i) {
    double fi = f(double(i) / N);
    if (fi > fm) {
      fm = fi;
      imax = i;
    }
  }
  {
    double lo = double(std::max(1, imax - 1)) / N;
    double hi = double(std::min(N - 1, imax + 1)) / N;
    if (P.fp(lo) > 0.0 && P.fp(hi) < 0.0) {
      calc.v_max = bisect_root([&](double s) { return P.fp(s); }, lo, hi, 1e-14);
    } else {
      calc.v_max = double(imax) / N;
    }
    calc.f_max = f(calc.v_max);
  }

  // Rightmost root in (0,1) of G(v) = F(v) - v f(v).
  auto G = [&](double v) { return F(v) - v * f(v); };
  {
    int bracket = -1;
    double prev = G(1.0 / N);
    for (int i = 2; i < N; ++i) {
      double cur = G(double(i) / N);
      if ((prev <= 0.0) != (cur <= 0.0)) bracket = i;
      prev = cur;
    }
    if (bracket < 0) bracket = N - 1;
    calc.v_plus =
        bisect_root(G, double(bracket - 1) / N, double(bracket) / N, 1e-12);
  }

  if (calc.type == ReactionType::Bistable) {
    if (calc.balanced) {
      calc.v_star = 1.0;
    } else {
      int bracket = -1;
      int i0 = std::max(1, int(std::ceil(calc.alpha * N)) + 1);
      double prev = F(double(i0) / N);
      for (int i = i0 + 1; i < N; ++i) {
        double cur = F(double(i) / N);
        if ((prev <= 0.0) != (cur <= 0.0)) {
          bracket = i;
          break;
        }
        prev = cur;
      }
      calc.v_star = bracket < 0
                        ? 1.0
                        : bisect_root(F, double(bracket - 1) / N,
                                      double(bracket) / N, 1e-12);
    }
  }

  if (calc.type == ReactionType::Monostable && calc.fprime0 > 0.0) {
    double worst = 0.0;
    for (int i = 1; i <= N; ++i) {
      double s = double(i) / N;
      worst = std::max(worst, f(s) - calc.fprime0 * s);
    }
    calc.kpp = worst <= 1e-10 * std::max(1.0, fmax_abs);
  }

  // Unique interior maximum of f on the positive range.
  {
    double lo = calc.type == ReactionType::Monostable ? 0.0 : calc.alpha;
    int up_down = 0, down_up = 0;
    double prev = P.fp(lo + 0.5 * (1.0 - lo) / N);
    for (int i = 1; i < N; ++i) {
      double s = lo + (1.0 - lo) * double(i) / N;
      if (s >= 1.0) break;
      double cur = P.fp(s);
      if (prev > 0.0 && cur < 0.0) ++up_down;
      if (prev < 0.0 && cur > 0.0) ++down_up;
      if (cur != 0.0) prev = cur;
    }
    calc.assumption_f = (up_down == 1 && down_up == 0);
  }

  return calc;
}

// ---------------------------------------------------------------------------

namespace {

SupResult maximize_on_unit(const std::function<double(double)>& g,
                           std::optional<double> limit_at_zero) {
  const int N = 4096;
  double best = -std::numeric_limits<double>::infinity();
  double best_v = 1.0;
  auto consider = [&](double v) {
    double val = g(v);
    if (std::isfinite(val) && val > best) {
      best = val;
      best_v = v;
    }
  };
  for (int i = 0; i <= 60; ++i) consider(std::pow(10.0, -8.0 + 6.0 * i / 60.0));
  for (int i = 1; i <= N; ++i) consider(double(i) / N);
  double lo = std::max(1e-12, best_v - 2.0 / N);
  double hi = std::min(1.0, best_v + 2.0 / N);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + gr * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - gr * (hi - lo);
      g1 = g(x1);
    }
  }
  consider(0.5 * (lo + hi));
  SupResult r;
  r.value = best;
  r.argmax = best_v;
  if (limit_at_zero && *limit_at_zero >= best) {
    r.value = *limit_at_zero;
    r.argmax = 0.0;
  }
  return r;
}

}  // namespace

SupResult sup_ratio(const ReactionCalculus& calc, RatioKind kind) {
  switch (kind) {
    case RatioKind::FOverV:
      return maximize_on_unit([&](double v) { return calc.eval_F(v) / v; }, 0.0);
    case RatioKind::FOverV2:
      return maximize_on_unit(
          [&](double v) { return calc.eval_F(v) / (v * v); }, calc.fprime0 / 2.0);
    case RatioKind::fOverV:
      return maximize_on_unit([&](double v) { return calc.eval_f(v) / v; },
                              calc.fprime0);
  }
  throw DomainError("unknown ratio kind");
}

SupResult sup_lower_main_arg(const ReactionCalculus& calc, const ModelParams& p) {
  double ba = p.ratio();
  return maximize_on_unit(
      [&](double v) {
        double Fv = calc.eval_F(v);
        return ba * ba * (Fv / v) * (Fv / v) + 2.0 / p.a * Fv / (v * v);
      },
      calc.fprime0 / p.a);
}

SupResult sup_upper_main_arg(const ReactionCalculus& calc, const ModelParams& p) {
  double ba = p.ratio();
  return maximize_on_unit(
      [&](double v) {
        double fv = std::max(0.0, calc.eval_f(v));
        return ba * fv + 2.0 * std::sqrt(fv / (p.a * v));
      },
      2.0 * std::sqrt(std::max(0.0, calc.fprime0) / p.a));
}

}  // namespace bifront

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bifront/errors.hpp"
#include "bifront/params.hpp"

namespace bifront {

// One polynomial piece of a reaction term, valid on [lo, hi].  Coefficients
// are in the absolute variable s, ascending order.
struct PolyPiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coef;
};

// A reaction term f on [0,1], polynomial or piecewise polynomial so that its
// antiderivative F is exact.
struct ReactionSpec {
  std::string name;
  std::vector<PolyPiece> pieces;

  // f(s) = m*s*(1-s)
  static ReactionSpec fisher(double m = 1.0);
  // f(s) = 40*s^2*(1-s)
  static ReactionSpec huxley();
  // f(s) = s*(1-s)*(1+sigma*s)
  static ReactionSpec nagylaki(double sigma = 5.0);
  // f(s) = s*(1-s)*(s-alpha); balanced when alpha = 1/2
  static ReactionSpec cubic_bistable(double alpha = 0.5);
  // f(s) = 0 on [0,alpha], (s-alpha)*(1-s) on [alpha,1]
  static ReactionSpec combustion(double alpha = 0.3);

  static ReactionSpec polynomial(std::string name, std::vector<double> coef);
  static ReactionSpec piecewise(std::string name, std::vector<double> breaks,
                                std::vector<std::vector<double>> coefs);
  // Catalog lookup by name ("fisher", "huxley", "nagylaki",
  // "cubic-bistable", "combustion") with one optional shape parameter.
  static ReactionSpec catalog(const std::string& name,
                              std::optional<double> param = {});
};

// A (monostable) > 0 on (0,1); B (combustion) zero on [0,alpha];
// C (bistable) negative on (0,alpha), with nonnegative integral.
enum class ReactionType { Monostable, Combustion, Bistable };

char type_label(ReactionType t);  // 'A', 'B', 'C'

struct ReactionPieces;  // derived piece data (internal)

// Everything the solvers need, derived once from a ReactionSpec.
// Immutable after construction; safe to share across concurrent runs.
class ReactionCalculus {
 public:
  ReactionSpec spec;
  ReactionType type = ReactionType::Monostable;
  double alpha = std::numeric_limits<double>::quiet_NaN();  // B/C only
  double k = 0.0;          // linear-control constant of hypothesis (H)
  double F1 = 0.0;         // F(1)
  double fprime0 = 0.0;    // f'(0+), analytic from the first piece
  double fprime1 = 0.0;    // f'(1-)
  double fsecond0 = 0.0;   // f''(0+)
  double fsecond1 = 0.0;   // f''(1-)
  double f_max = 0.0;      // max of f on [0,1]
  double v_max = 0.0;      // argmax of f
  double v_plus = 0.0;     // largest root in (0,1) of F(v) = v f(v)
  double v_star = std::numeric_limits<double>::quiet_NaN();  // C: F(v*)=0 in (alpha,1]
  bool balanced = false;       // F(1) == 0
  bool kpp = false;            // type A with f(s) <= f'(0) s
  bool assumption_f = false;   // unique local max of f on the positive range

  double eval_f(double v) const;       // DomainError outside [0,1]
  double eval_F(double v) const;       // exact antiderivative, F(0) = 0
  double eval_fprime(double v) const;

  std::shared_ptr<const ReactionPieces> pieces;  // filled by classify()

  char label() const { return type_label(type); }
  // Normalization value at z = 0: 1/2 for type A, alpha otherwise.
  double default_normalization() const {
    return type == ReactionType::Monostable ? 0.5 : alpha;
  }
};

// Classify f and populate the derived calculus.  Roots (alpha, v_plus,
// v_star) are located by sign-change scanning on a grid of `grid_size`
// points and bisection to 1e-12; v_plus takes the rightmost bracket.
ReactionCalculus classify(const ReactionSpec& spec, int grid_size = 10000);

enum class RatioKind { FOverV, FOverV2, fOverV };

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;  // 0 means the sup is the v -> 0+ limit
  bool unbounded = false;
};

// sup over (0,1] of F/v, F/v^2 or f/v, with the v->0+ limits
// (0, f'(0)/2, f'(0)) folded in.
SupResult sup_ratio(const ReactionCalculus& calc, RatioKind kind);

// sup of (b/a)^2 (F/v)^2 + (2/a) F/v^2  (squared lower speed bound, type A).
SupResult sup_lower_main_arg(const ReactionCalculus& calc, const ModelParams& p);
// sup of (b/a) f + 2 sqrt(f/(a v))  (upper speed bound, type A).
SupResult sup_upper_main_arg(const ReactionCalculus& calc, const ModelParams& p);

}  // namespace bifront

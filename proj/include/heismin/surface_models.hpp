#pragma once

// alpha-function models with y-dependent coefficients, their induced metric
// representations, the normal-coordinate normalization and the derived
// geometric quantities (first fundamental form, connection form, maximal
// domains).

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heismin/functions.hpp"
#include "heismin/lienard.hpp"

namespace heismin::models {

enum class Family { Vertical, SpecialI, SpecialII, General };

enum class SurfaceType { Vertical, SpecialI, SpecialII, TypeI, TypeII, TypeIII };

const char* to_string(Family f);
const char* to_string(SurfaceType t);

/// alpha(x, y) given by one of the closed-form Lienard families with
/// coefficients depending on y.
///   SpecialI:  1 / (x + c1(y))
///   SpecialII: 1 / (2x + c1(y))
///   General:   (x + c1(y)) / ((x + c1(y))^2 + c2(y)),  c2 != 0
struct AlphaModel {
  Family family = Family::Vertical;
  YFunction c1;
  YFunction c2;
  Interval y_domain{};

  static AlphaModel vertical(Interval y_domain = {});
  static AlphaModel special_i(YFunction c1, Interval y_domain = {});
  static AlphaModel special_ii(YFunction c1, Interval y_domain = {});
  static AlphaModel general(YFunction c1, YFunction c2, Interval y_domain = {});

  /// The one-variable solution obtained by freezing y.
  lienard::AlphaSolution at(double y) const;
};

double eval_model(const AlphaModel& m, double x, double y, const lienard::Tolerances& tol = {});
/// alpha and its first two x-derivatives at (x, y).
lienard::Jet eval_model_jet(const AlphaModel& m, double x, double y,
                            const lienard::Tolerances& tol = {});

/// Finite window used when a y-domain is unbounded.
Interval sampling_window(const Interval& d, double half_width = 10.0);

/// Type of the model over the strip x_window x y_domain. The coefficient
/// signs and the window position are checked on `samples` y-values.
SurfaceType classify(const AlphaModel& m, const Interval& x_window, int samples = 65);

/// e2-hat = a d/dx + b d/dy in compatible coordinates.
struct MetricRep {
  using Field = std::function<double(double, double)>;

  struct Gauge {
    AlphaModel model;
    YFunction k;
    YFunction h;
  };

  Field a;
  Field b;
  /// y-orientation was reversed to keep b > 0.
  bool flipped = false;
  /// Set for representations built from a model and the (k, h) gauge.
  std::optional<Gauge> gauge;
};

/// Explicit (a, b) for a model and the gauge functions k, h (H = 0). The
/// vertical model gives a = h, b = e^k.
MetricRep metric_rep(const AlphaModel& m, const YFunction& k, const YFunction& h);

/// x~ = x + gamma(y), y~ = psi(y).
struct CoordChange {
  YFunction gamma;
  YFunction psi;
  /// psi^{-1}
  std::function<double(double)> psi_inv;
  bool flipped = false;

  static CoordChange identity();
  std::pair<double, double> apply(double x, double y) const;
  std::pair<double, double> unapply(double xt, double yt) const;
  /// The change going back from (x~, y~) to (x, y).
  CoordChange inverse() const;
};

/// (a, b) read in the new coordinates: a~ = a + b gamma', b~ = b psi'.
MetricRep transform_metric(const MetricRep& rep, const CoordChange& cc);

struct NormalForm {
  SurfaceType surface_type = SurfaceType::Vertical;
  YFunction zeta1;
  std::optional<YFunction> zeta2;
  Interval x_window{};
  /// Range of y~ covered by the normalization.
  Interval y_domain{};

  /// The model with c's replaced by the zetas.
  AlphaModel model() const;
};

struct NormalizeOptions {
  Interval x_window{};
  /// Window in the original y used to tabulate the change; defaults to
  /// sampling_window(m.y_domain).
  std::optional<Interval> y_window;
  /// Reference abscissa used when rep carries no gauge.
  std::optional<double> x_ref;
};

std::pair<NormalForm, CoordChange> normalize(const AlphaModel& m, const MetricRep& rep,
                                             const NormalizeOptions& opts = {});

/// Symmetric 2x2 matrix [[e, f], [f, g]].
struct Sym2 {
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
  double det() const { return e * g - f * f; }
};

Sym2 first_fundamental_form(const NormalForm& nf, double x, double y);

/// Coefficients (w1, w2) of the connection form in dx, dy, with a, b
/// differentiated by central differences.
std::array<double, 2> connection_form(const MetricRep& rep, double x, double y,
                                      double step = 1e-5);

struct Domain {
  std::string name;
  std::function<bool(double, double)> contains;
  /// Curves x = boundary(y) bounding the domain.
  std::vector<std::function<double(double)>> boundaries;
};

std::vector<Domain> maximal_domain(const YFunction& zeta1, const std::optional<YFunction>& zeta2,
                                   SurfaceType type);

}  // namespace heismin::models
